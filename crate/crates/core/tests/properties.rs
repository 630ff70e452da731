//! Property tests for the exact kernel.

use proptest::prelude::*;
use tropsurf::arith::{Int, Rat};
use tropsurf::graph::{graph_from_json, graph_to_json, Meta, TropicalGraph, VertexKind};
use tropsurf::lattice::{gcd_minors2, lattice_index, primitive_vector, IntMatrix, IntVector};
use tropsurf::poly::LaurentPoly;
use tropsurf::polygon::{
    common_refinement, inner_normal_rays, lattice_length_of_face, mixed_volume, LatticePolygon,
};

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-3i64..=3, -3i64..=3), -9i64..=9), 1..5).prop_map(|terms| {
        let terms: Vec<(i64, i64, i64)> = terms
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|((a, b), c)| (a, b, c))
            .collect();
        let f = LaurentPoly::from_i64_terms(&terms);
        if f.is_zero() {
            // duplicate exponents may cancel
            LaurentPoly::from_i64_terms(&[(0, 0, 1)])
        } else {
            f
        }
    })
}

fn small_points() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-5i64..=5, -5i64..=5), 1..8)
}

proptest! {
    #[test]
    fn trop_eval_is_multiplicative(f in small_poly(), g in small_poly(), w in (-7i64..=7, -7i64..=7)) {
        let prod = f.mul(&g);
        prop_assert!(!prod.is_zero());
        prop_assert_eq!(
            prod.trop_eval(w).unwrap(),
            f.trop_eval(w).unwrap() + g.trop_eval(w).unwrap()
        );
    }

    #[test]
    fn gcd_minors2_invariances(cols in prop::collection::vec((-9i64..=9, -9i64..=9, -9i64..=9), 2..=2)) {
        let a = IntVector::from_i64(&[cols[0].0, cols[0].1, cols[0].2]);
        let b = IntVector::from_i64(&[cols[1].0, cols[1].1, cols[1].2]);
        let m = IntMatrix::from_columns(&[a.clone(), b.clone()]);
        let swapped = IntMatrix::from_columns(&[b.clone(), a.clone()]);
        let negated = IntMatrix::from_columns(&[a.neg(), b.clone()]);
        let g = gcd_minors2(&m).unwrap();
        prop_assert_eq!(&g, &gcd_minors2(&swapped).unwrap());
        prop_assert_eq!(&g, &gcd_minors2(&negated).unwrap());
    }

    #[test]
    fn primitive_vector_is_idempotent(v in prop::collection::vec(-20i64..=20, 1..5)) {
        let v = IntVector::from_i64(&v);
        if v.is_zero() {
            prop_assert!(primitive_vector(&v).is_err());
        } else {
            let p = primitive_vector(&v).unwrap();
            prop_assert_eq!(primitive_vector(&p).unwrap(), p);
        }
    }

    #[test]
    fn lattice_index_of_single_vector_is_content(v in prop::collection::vec(-20i64..=20, 1..5)) {
        let v = IntVector::from_i64(&v);
        prop_assume!(!v.is_zero());
        prop_assert_eq!(lattice_index(std::slice::from_ref(&v)).unwrap(), v.content());
    }

    #[test]
    fn lattice_index_square_case_is_det(a in -6i64..=6, b in -6i64..=6, c in -6i64..=6, d in -6i64..=6) {
        let v1 = IntVector::from_i64(&[a, b]);
        let v2 = IntVector::from_i64(&[c, d]);
        prop_assume!(!v1.is_zero() && !v2.is_zero());
        let det = (a * d - b * c).abs();
        prop_assert_eq!(lattice_index(&[v1, v2]).unwrap(), Int::from(det));
    }

    #[test]
    fn mixed_volume_symmetric_translation_invariant(p in small_points(), q in small_points(), dx in -4i64..=4, dy in -4i64..=4) {
        let p = LatticePolygon::hull(&p).unwrap();
        let q = LatticePolygon::hull(&q).unwrap();
        let mv = mixed_volume(&p, &q);
        prop_assert!(mv >= 0);
        prop_assert_eq!(mv, mixed_volume(&q, &p));
        prop_assert_eq!(mv, mixed_volume(&p.translate((dx, dy)), &q));
        // positivity criterion
        let sum = tropsurf::polygon::minkowski_sum(&p, &q);
        let expect_positive = sum.dim() == 2 && p.dim() >= 1 && q.dim() >= 1
            && !(p.dim() == 1 && q.dim() == 1 && mv == 0);
        if p.dim() == 0 || q.dim() == 0 || sum.dim() < 2 {
            prop_assert_eq!(mv, 0);
        } else if p.dim() == 2 || q.dim() == 2 {
            prop_assert!(mv > 0);
        }
        let _ = expect_positive;
    }

    #[test]
    fn refinement_contains_all_rays(p in small_points(), q in small_points()) {
        let p = LatticePolygon::hull(&p).unwrap();
        let q = LatticePolygon::hull(&q).unwrap();
        prop_assume!(p.dim() >= 1 || q.dim() >= 1);
        let fan = common_refinement(&[&p, &q]).unwrap();
        for r in inner_normal_rays(&p).into_iter().chain(inner_normal_rays(&q)) {
            prop_assert!(fan.rays().contains(&r));
        }
    }

    #[test]
    fn polygon_closure(pts in small_points()) {
        let p = LatticePolygon::hull(&pts).unwrap();
        prop_assume!(p.dim() == 2);
        let mut sx = 0i64;
        let mut sy = 0i64;
        for r in inner_normal_rays(&p) {
            let l = lattice_length_of_face(&p, r);
            sx += l * r.1;
            sy += l * -r.0;
        }
        prop_assert_eq!((sx, sy), (0, 0));
    }

    #[test]
    fn graph_json_round_trip(
        points in prop::collection::vec(prop::collection::vec(-9i64..=9, 3..=3), 2..6),
        weights in prop::collection::vec((0i64..=20, 1i64..=4), 1..8),
        seed in any::<u64>()
    ) {
        let mut g = TropicalGraph::new(3, Meta {
            delta: 1,
            pipeline: "test".into(),
            seed,
            forced: false,
            notes: vec!["note".into()],
        });
        for (i, p) in points.iter().enumerate() {
            g.add_vertex(&format!("v{i}"), IntVector::from_i64(p), if i % 2 == 0 {
                VertexKind::Curve
            } else {
                VertexKind::Exceptional
            });
        }
        let n = points.len();
        for (i, (num, den)) in weights.iter().enumerate() {
            let u = i % n;
            let v = (i + 1) % n;
            if u == v { continue; }
            let w = Rat::new(Int::from(*num), Int::from(*den));
            g.add_edge(u, v, w.clone(), w == Rat::new(Int::from(0), Int::from(1)));
        }
        let s = graph_to_json(&g).unwrap();
        let back = graph_from_json(&s).unwrap();
        prop_assert_eq!(g, back);
    }
}
