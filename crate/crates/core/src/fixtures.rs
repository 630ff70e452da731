//! The embedded regression fixtures: worked surface examples, the plane
//! boundary complexes, and the criteria that pin both pipelines to known
//! exact data. The CLI `fixtures` subcommand and the acceptance test suite
//! both run these.

use crate::arith::{rat_to_string, Int, Rat};
use crate::complex::{
    fans_equivalent, pushforward_fan, realize_weighted_complex, BoundaryComplexInput,
    BoundaryDivisor, ComplexCell, WeightedFan,
};
use crate::error::Result;
use crate::generic::{build_generic_graph, certify_generic, GenericInput, GenericOptions};
use crate::graph::{check_balanced, f_vector, make_fan2d, merge_realized, suppress_bivalent,
    TropicalGraph, VertexKind};
use crate::lattice::{IntMatrix, IntVector};
use crate::poly::intersect::{local_intersection, torus_intersection_length};
use crate::poly::{HomPoly, LaurentPoly, ProjPoint};
use crate::polygon::mixed_volume;
use crate::resolution::{
    build_nongeneric_graph, resolve_arrangement, ExcessLocation, ProjArrangement,
    ResolutionModel, ResolutionOptions,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn lp(terms: &[(i64, i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_i64_terms(terms)
}

/// f1 = a1 + a2 s^2 t + a3 s t^2, f2 = b1 st + b2 s + b3 t,
/// f3 = c1 t + c2 s^2 + c3 s t^2, generic coefficients, degree 1.
pub fn generic_surface_one() -> GenericInput {
    GenericInput::new(
        vec![
            lp(&[(0, 0, 3), (2, 1, 5), (1, 2, 7)]),
            lp(&[(1, 1, 11), (1, 0, 13), (0, 1, 17)]),
            lp(&[(0, 1, 19), (2, 0, 23), (1, 2, 29)]),
        ],
        1,
    )
    .unwrap()
}

/// f1 = a1 s^2 + a2 s^3 + a3 t^2, f2 = b1 t^2 + b2 t^3 + b3 s^2,
/// f3 = c1 st + c2 s^3 + c3 t^3 + c4 st^2 + c5 s^2 t.
pub fn generic_surface_two() -> GenericInput {
    GenericInput::new(
        vec![
            lp(&[(2, 0, 3), (3, 0, 5), (0, 2, 7)]),
            lp(&[(0, 2, 11), (0, 3, 13), (2, 0, 17)]),
            lp(&[(1, 1, 19), (3, 0, 23), (0, 3, 29), (1, 2, 31), (2, 1, 37)]),
        ],
        1,
    )
    .unwrap()
}

/// f1 = a1 + a2 s + a3 t, f2 = b1 + b2 t + b3 s^2, f3 = c1 + c2 st.
pub fn generic_surface_three() -> GenericInput {
    generic_surface_three_with(&[3, 5, 7, 11, 13, 17, 19, 23])
}

pub fn generic_surface_three_with(c: &[i64; 8]) -> GenericInput {
    GenericInput::new(
        vec![
            lp(&[(0, 0, c[0]), (1, 0, c[1]), (0, 1, c[2])]),
            lp(&[(0, 0, c[3]), (0, 1, c[4]), (2, 0, c[5])]),
            lp(&[(0, 0, c[6]), (1, 1, c[7])]),
        ],
        1,
    )
    .unwrap()
}

/// The special coefficients f1 = s^2-s^3-t^2, f2 = t^2-t^3-s^2,
/// f3 = 4st-s^3-t^3-3st^2-3s^2t: all three pass through the origin.
pub fn special_nodal_cubics() -> GenericInput {
    GenericInput::new(
        vec![
            lp(&[(2, 0, 1), (3, 0, -1), (0, 2, -1)]),
            lp(&[(0, 2, 1), (0, 3, -1), (2, 0, -1)]),
            lp(&[(1, 1, 4), (3, 0, -1), (0, 3, -1), (1, 2, -3), (2, 1, -3)]),
        ],
        1,
    )
    .unwrap()
}

/// The special coefficients f1 = -1-s+t, f2 = -1+t-s^2, f3 = 2-st.
pub fn special_line_conics() -> GenericInput {
    GenericInput::new(
        vec![
            lp(&[(0, 0, -1), (1, 0, -1), (0, 1, 1)]),
            lp(&[(0, 0, -1), (0, 1, 1), (2, 0, -1)]),
            lp(&[(0, 0, 2), (1, 1, -1)]),
        ],
        1,
    )
    .unwrap()
}

/// Boundary complex of the plane x+y+z+1 = 0 compactified in projective
/// 3-space: the 1-skeleton of the 3-simplex with constant weight one.
pub fn plane_complex() -> BoundaryComplexInput {
    BoundaryComplexInput {
        rank: 3,
        dimension: 2,
        divisors: vec![
            BoundaryDivisor { name: "Dx".into(), valuation: vec![1, 0, 0] },
            BoundaryDivisor { name: "Dy".into(), valuation: vec![0, 1, 0] },
            BoundaryDivisor { name: "Dz".into(), valuation: vec![0, 0, 1] },
            BoundaryDivisor { name: "D0".into(), valuation: vec![-1, -1, -1] },
        ],
        cells: (0..4usize)
            .flat_map(|i| {
                ((i + 1)..4).map(move |j| ComplexCell {
                    divisors: vec![i, j],
                    intersection_number: 1,
                })
            })
            .collect(),
    }
}

/// Boundary complex of the special plane x+y+z = 0 after blowing up the
/// point where the three coordinate lines met: the tripod subdivision with
/// inner vertex the exceptional divisor at (1,1,1).
pub fn plane_blowup_complex() -> BoundaryComplexInput {
    BoundaryComplexInput {
        rank: 3,
        dimension: 2,
        divisors: vec![
            BoundaryDivisor { name: "Dx".into(), valuation: vec![1, 0, 0] },
            BoundaryDivisor { name: "Dy".into(), valuation: vec![0, 1, 0] },
            BoundaryDivisor { name: "Dz".into(), valuation: vec![0, 0, 1] },
            BoundaryDivisor { name: "D0".into(), valuation: vec![-1, -1, -1] },
            BoundaryDivisor { name: "E".into(), valuation: vec![1, 1, 1] },
        ],
        cells: vec![
            ComplexCell { divisors: vec![0, 3], intersection_number: 1 },
            ComplexCell { divisors: vec![1, 3], intersection_number: 1 },
            ComplexCell { divisors: vec![2, 3], intersection_number: 1 },
            ComplexCell { divisors: vec![0, 4], intersection_number: 1 },
            ComplexCell { divisors: vec![1, 4], intersection_number: 1 },
            ComplexCell { divisors: vec![2, 4], intersection_number: 1 },
        ],
    }
}

/// Split fixture for the recombination round trip:
/// f1 = (s - t)(s + t + 1) declared with its factors.
pub fn split_fixture() -> (GenericInput, Vec<LaurentPoly>) {
    let g = lp(&[(1, 0, 1), (0, 1, -1)]);
    let h = lp(&[(1, 0, 1), (0, 1, 1), (0, 0, 1)]);
    let input = GenericInput::new(
        vec![
            g.mul(&h),
            lp(&[(0, 0, 1), (1, 0, 2), (0, 1, 3)]),
            lp(&[(0, 0, 1), (1, 1, 5)]),
        ],
        1,
    )
    .unwrap();
    (input, vec![g, h])
}

// ---------------------------------------------------------------------------
// criterion plumbing

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Check = std::result::Result<(), String>;

fn fail(msg: impl Into<String>) -> Check {
    Err(msg.into())
}

fn seeded(n: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(n)
}

fn pt(v: &[i64]) -> IntVector {
    IntVector::from_i64(v)
}

fn point_vec(v: &IntVector) -> Vec<i64> {
    v.0.iter().map(|x| crate::arith::int_to_i64(x).unwrap()).collect()
}

fn toric_points(g: &TropicalGraph) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = g
        .vertices
        .iter()
        .filter(|v| v.kind != VertexKind::Curve)
        .map(|v| point_vec(&v.point))
        .collect();
    pts.sort();
    pts
}

fn weight_between(g: &TropicalGraph, a: &IntVector, b: &IntVector) -> Option<Rat> {
    let u = g.find_vertex(a)?;
    let v = g.find_vertex(b)?;
    g.edge_weight(u, v).cloned()
}

fn expect_weight(g: &TropicalGraph, a: &[i64], b: &[i64], w: i64) -> Check {
    match weight_between(g, &pt(a), &pt(b)) {
        Some(found) if found == Rat::from_integer(Int::from(w)) => Ok(()),
        Some(found) => fail(format!(
            "edge {a:?}-{b:?} has weight {}, expected {w}",
            rat_to_string(&found)
        )),
        None => fail(format!("edge {a:?}-{b:?} missing (expected weight {w})")),
    }
}

fn err_str<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// the acceptance criteria

fn criterion1() -> Check {
    let mut rng = seeded(1);
    let (g, cert) = err_str(build_generic_graph(
        &generic_surface_one(),
        &GenericOptions::default(),
        &mut rng,
    ))?;
    if !cert.accepted() {
        return fail(format!("certificate rejected: {:?}", cert.violations));
    }
    // nine rays realize to eight distinct vertices with the listed values
    let mut expected: Vec<Vec<i64>> = vec![
        vec![-2, -1, -2],
        vec![-2, -1, -2],
        vec![-5, -3, -4],
        vec![-3, -2, -3],
        vec![-1, -1, -1],
        vec![0, -1, -1],
        vec![0, 1, 1],
        vec![0, 1, 2],
        vec![0, -1, -2],
    ];
    expected.sort();
    let got = toric_points(&g);
    if got != expected {
        return fail(format!("toric vertex multiset mismatch: {got:?}"));
    }
    let merged = merge_realized(&g);
    let distinct = merged.vertices.iter().filter(|v| v.kind != VertexKind::Curve).count();
    if distinct != 8 {
        return fail(format!("{distinct} distinct realized vertices, expected 8"));
    }
    // 19 weighted abstract edges plus the two dashed ones
    let positive = g.positive_edges().count();
    if positive != 19 {
        return fail(format!("{positive} weighted edges, expected 19"));
    }
    let mut zero_pairs: Vec<(Vec<i64>, Vec<i64>)> = g
        .edges
        .iter()
        .filter(|e| e.zero)
        .map(|e| {
            let mut p = [point_vec(&g.vertex(e.u).point),
                point_vec(&g.vertex(e.v).point)];
            p.sort();
            (p[0].clone(), p[1].clone())
        })
        .collect();
    zero_pairs.sort();
    let mut want = vec![
        (vec![0, -1, -1], vec![0, 1, 1]),
        (vec![0, -1, -2], vec![0, 1, 2]),
    ];
    want.sort();
    if zero_pairs != want {
        return fail(format!("zero-flagged edges {zero_pairs:?}"));
    }
    let s = suppress_bivalent(&g);
    if f_vector(&s) != (7, 13) {
        return fail(format!("f-vector {:?}, expected (7, 13)", f_vector(&s)));
    }
    Ok(())
}

fn criterion2() -> Check {
    let mut rng = seeded(2);
    let input = generic_surface_two();
    let polys: Vec<_> = input
        .polys
        .iter()
        .map(|f| f.newton_polygon().unwrap())
        .collect();
    let refs: Vec<_> = polys.iter().collect();
    let fan = err_str(crate::polygon::common_refinement(&refs))?;
    if fan.rays().len() != 8 {
        return fail(format!("{} rays, expected 8", fan.rays().len()));
    }
    let (g, cert) =
        err_str(build_generic_graph(&input, &GenericOptions::default(), &mut rng))?;
    if !cert.accepted() {
        return fail(format!("certificate rejected: {:?}", cert.violations));
    }
    let mut expected: Vec<Vec<i64>> = vec![
        vec![-9, -6, -9],
        vec![-3, -3, -3],
        vec![-6, -9, -9],
        vec![2, 2, 3],
        vec![2, 2, 2],
        vec![2, 2, 3],
    ];
    expected.sort();
    let got = toric_points(&g);
    if got != expected {
        return fail(format!("toric vertices {got:?} (zero vertices must be dropped)"));
    }
    if g.edges.len() != 14 || g.positive_edges().count() != 14 {
        return fail(format!("{} abstract edges, expected 14", g.edges.len()));
    }
    Ok(())
}

fn criterion3() -> Check {
    let mut rng = seeded(3);
    let (g, cert) = err_str(build_generic_graph(
        &generic_surface_three(),
        &GenericOptions::default(),
        &mut rng,
    ))?;
    if !cert.accepted() {
        return fail(format!("certificate rejected: {:?}", cert.violations));
    }
    let s = suppress_bivalent(&g);
    if f_vector(&s) != (5, 8) {
        return fail(format!("f-vector {:?}, expected (5, 8)", f_vector(&s)));
    }
    let e1 = &[1, 0, 0];
    let e2 = &[0, 1, 0];
    let e3 = &[0, 0, 1];
    let d3 = &[-1, -2, -2];
    let d4 = &[-2, -2, -3];
    expect_weight(&s, e1, e2, 2)?;
    expect_weight(&s, e1, e3, 2)?;
    expect_weight(&s, e2, e3, 3)?;
    expect_weight(&s, e1, d3, 2)?;
    expect_weight(&s, e2, d4, 1)?;
    expect_weight(&s, e3, d3, 1)?;
    expect_weight(&s, e3, d4, 1)?;
    expect_weight(&s, d3, d4, 1)?;
    Ok(())
}

fn criterion4() -> Check {
    let arr = err_str(ProjArrangement::from_input(&special_nodal_cubics()))?;
    let (model, diagram) = err_str(resolve_arrangement(&arr, &ResolutionOptions::default()))?;
    if diagram.num_exceptional != 4 {
        return fail(format!(
            "resolution used {} blow-ups, expected 4",
            diagram.num_exceptional
        ));
    }
    let mut coeffs: Vec<i64> = (0..4)
        .map(|j| crate::arith::int_to_i64(model.pullback_coeff(0, j)).unwrap())
        .collect();
    coeffs.sort();
    if coeffs != vec![2, 3, 3, 4] {
        return fail(format!("pull-back of chi_1 has exceptional coefficients {coeffs:?}"));
    }
    for j in 0..4 {
        if !model.pullback_coeff(3, j).is_zero() {
            return fail("the line at infinity does not pass through any center");
        }
    }
    if model.divisor_point(3) != pt(&[-3, -3, -3]) {
        return fail(format!("[Finf] = {}", model.divisor_point(3)));
    }
    let mut e_points: Vec<Vec<i64>> =
        (0..4).map(|j| point_vec(&model.divisor_point(4 + j))).collect();
    e_points.sort();
    if e_points != vec![vec![2, 2, 2], vec![3, 3, 2], vec![3, 3, 2], vec![4, 4, 2]] {
        return fail(format!("exceptional vertices {e_points:?}"));
    }
    let g = err_str(build_nongeneric_graph(&model, 1, 0))?;
    let s = suppress_bivalent(&g);
    if f_vector(&s) != (6, 12) {
        return fail(format!("merged graph f-vector {:?}, expected (6, 12)", f_vector(&s)));
    }
    Ok(())
}

fn criterion5() -> Check {
    let input = special_line_conics();
    let arr = err_str(ProjArrangement::from_input(&input))?;
    let model0 = err_str(ResolutionModel::new(&arr))?;
    let excess = err_str(model0.find_excess_points())?;
    let mut locs: Vec<String> = excess.iter().map(|p| p.location.to_string()).collect();
    locs.sort();
    if locs != vec!["(0:1:0)".to_string(), "(1:2:1)".to_string()] {
        return fail(format!("initial excess points {locs:?}"));
    }
    let (model, diagram) = err_str(resolve_arrangement(&arr, &ResolutionOptions::default()))?;
    if diagram.num_exceptional != 3 {
        return fail(format!("{} exceptional divisors, expected 3", diagram.num_exceptional));
    }
    // identify the exceptionals by their valuation vectors
    let find_e = |v: &[i64]| -> std::result::Result<usize, String> {
        (0..3)
            .map(|j| 4 + j)
            .find(|&d| model.divisor_point(d) == pt(v))
            .ok_or_else(|| format!("no exceptional with vertex {v:?}"))
    };
    let e_a = find_e(&[-1, -1, -1])?; // over (0:1:0)
    let e_b = find_e(&[1, 1, 1])?; // over (1:2:1)
    let e_c = find_e(&[-2, -2, -3])?; // the satellite on the first chain
    let finf = 3usize;
    let mut want: Vec<((usize, usize), i64)> = vec![
        ((0, 1), 1),
        ((0, 2), 1),
        ((1, 2), 2),
        ((0, finf), 1),
        ((2, finf), 1),
        ((2, e_a), 1),
        ((e_a, e_c), 1),
        ((0, e_b), 1),
        ((1, e_b), 1),
        ((2, e_b), 1),
        ((1, e_c), 1),
        ((finf, e_c), 1),
    ];
    want = want
        .into_iter()
        .map(|((a, b), w)| (if a < b { (a, b) } else { (b, a) }, w))
        .collect();
    want.sort();
    let mut got: Vec<((usize, usize), i64)> = diagram
        .intersection_table
        .iter()
        .map(|(&(a, b), v)| ((a, b), crate::arith::int_to_i64(v).unwrap()))
        .collect();
    got.sort();
    if got != want {
        let label = |d: usize| model.divisor_label(d);
        let show = |t: &[((usize, usize), i64)]| -> Vec<String> {
            t.iter().map(|((a, b), w)| format!("{}.{}={}", label(*a), label(*b), w)).collect()
        };
        return fail(format!(
            "intersection table {:?}, expected {:?}",
            show(&got),
            show(&want)
        ));
    }
    let g = err_str(build_nongeneric_graph(&model, 1, 0))?;
    if f_vector(&g) != (7, 12) {
        return fail(format!("graph f-vector {:?}, expected (7, 12)", f_vector(&g)));
    }
    for e in g.positive_edges() {
        let (a, b) = (
            point_vec(&g.vertex(e.u).point),
            point_vec(&g.vertex(e.v).point),
        );
        let is_e2e3 = (a == vec![0, 1, 0] && b == vec![0, 0, 1])
            || (a == vec![0, 0, 1] && b == vec![0, 1, 0]);
        let is_e1inf = (a == vec![1, 0, 0] && b == vec![-1, -2, -2])
            || (a == vec![-1, -2, -2] && b == vec![1, 0, 0]);
        let expected = if is_e2e3 || is_e1inf { 2 } else { 1 };
        if e.weight != Rat::from_integer(Int::from(expected)) {
            return fail(format!(
                "edge {a:?}-{b:?} weight {}, expected {expected}",
                rat_to_string(&e.weight)
            ));
        }
    }
    if g.find_vertex(&pt(&[1, 1, 1])).is_none() {
        return fail("vertex (1,1,1) missing");
    }
    Ok(())
}

fn criterion6() -> Check {
    let fan = err_str(realize_weighted_complex(&plane_complex()))?;
    let expected = tropical_plane_fan();
    if !err_str(fans_equivalent(&fan, &expected))? {
        return fail("realized plane complex differs from the tropical plane");
    }
    if fan.cones.len() != 6 || fan.cones.iter().any(|c| c.weight != Int::from(1)) {
        return fail("tropical plane must have six cones of weight one");
    }
    let fan2 = err_str(realize_weighted_complex(&plane_blowup_complex()))?;
    if fan2.cones.len() != 6 || fan2.cones.iter().any(|c| c.weight != Int::from(1)) {
        return fail("tripod complex must have six cones of weight one");
    }
    let has_e = fan2
        .cones
        .iter()
        .any(|c| c.generators.contains(&pt(&[1, 1, 1])));
    if !has_e {
        return fail("inner vertex (1,1,1) missing from the realized tripod");
    }
    Ok(())
}

fn tropical_plane_fan() -> WeightedFan {
    realize_weighted_complex(&plane_complex()).unwrap()
}

fn criterion7() -> Check {
    let mut fans: Vec<(String, WeightedFan)> = Vec::new();
    let mut rng = seeded(7);
    for (name, input) in [
        ("generic-one", generic_surface_one()),
        ("generic-two", generic_surface_two()),
        ("generic-three", generic_surface_three()),
    ] {
        let (g, _) =
            err_str(build_generic_graph(&input, &GenericOptions::default(), &mut rng))?;
        fans.push((name.to_string(), err_str(make_fan2d(&g))?));
    }
    for (name, input) in [
        ("special-nodal-cubics", special_nodal_cubics()),
        ("special-line-conics", special_line_conics()),
    ] {
        let arr = err_str(ProjArrangement::from_input(&input))?;
        let (model, _) = err_str(resolve_arrangement(&arr, &ResolutionOptions::default()))?;
        let g = err_str(build_nongeneric_graph(&model, 1, 0))?;
        fans.push((name.to_string(), err_str(make_fan2d(&g))?));
    }
    fans.push(("plane".into(), err_str(realize_weighted_complex(&plane_complex()))?));
    fans.push((
        "plane-blowup".into(),
        err_str(realize_weighted_complex(&plane_blowup_complex()))?,
    ));
    for (name, fan) in fans {
        let report = err_str(check_balanced(&fan))?;
        if !report.balanced {
            return fail(format!(
                "{name}: balancing fails at {} ray(s), first at {}",
                report.failures.len(),
                report.failures[0].ray
            ));
        }
    }
    Ok(())
}

fn criterion8() -> Check {
    let mut rng = seeded(8);
    let primes: Vec<i64> = vec![
        101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
        191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257,
    ];
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 20 {
        attempts += 1;
        if attempts > 40 {
            return fail(format!("only {accepted} of 20 draws accepted after 40 attempts"));
        }
        let mut pick = || {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            sign * primes[rng.gen_range(0..primes.len())]
        };
        let coeffs = [pick(), pick(), pick(), pick(), pick(), pick(), pick(), pick()];
        let input = generic_surface_three_with(&coeffs);
        let cert = err_str(certify_generic(&input, &mut rng))?;
        if !cert.accepted() {
            continue;
        }
        accepted += 1;
        let (g1, _) =
            err_str(build_generic_graph(&input, &GenericOptions::default(), &mut rng))?;
        let fan1 = err_str(make_fan2d(&g1))?;
        let arr = err_str(ProjArrangement::from_input(&input))?;
        let (model, _) = err_str(resolve_arrangement(&arr, &ResolutionOptions::default()))?;
        let g2 = err_str(build_nongeneric_graph(&model, 1, 0))?;
        let fan2 = err_str(make_fan2d(&g2))?;
        if !err_str(fans_equivalent(&fan1, &fan2))? {
            return fail(format!(
                "pipelines disagree for coefficients {coeffs:?}"
            ));
        }
    }
    Ok(())
}

fn criterion9() -> Check {
    // one extra blow-up at a rational boundary double point must not change
    // the weighted fan
    for (input, double_point) in [
        (special_line_conics(), ProjPoint::from_i64(0, 1, 1)),
        (special_nodal_cubics(), ProjPoint::from_i64(0, 1, 0)),
    ] {
        let arr = err_str(ProjArrangement::from_input(&input))?;
        let (model, _) = err_str(resolve_arrangement(&arr, &ResolutionOptions::default()))?;
        let base = err_str(make_fan2d(&err_str(build_nongeneric_graph(&model, 1, 0))?))?;
        let mut extended = model.clone();
        err_str(extended.blow_up_at(&ExcessLocation::Projective(double_point.clone())))?;
        let step = extended.steps.last().unwrap();
        if step.mults.len() != 2 {
            return fail(format!(
                "{double_point} lies on {} divisors, wanted a double point",
                step.mults.len()
            ));
        }
        let more = err_str(make_fan2d(&err_str(build_nongeneric_graph(&extended, 1, 0))?))?;
        if !err_str(fans_equivalent(&base, &more))? {
            return fail(format!("extra blow-up at {double_point} changed the fan"));
        }
    }
    Ok(())
}

fn criterion10() -> Check {
    let mut rng = seeded(10);
    let mut accepted = 0;
    for _ in 0..50 {
        // random supports with <= 5 terms and random coefficients
        let mut polys = Vec::new();
        for _ in 0..2 {
            let terms = rng.gen_range(2..=5);
            let mut f = LaurentPoly::zero();
            for _ in 0..terms {
                let a = rng.gen_range(-3..=3);
                let b = rng.gen_range(-3..=3);
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-9..=9);
                }
                f = f.add(&lp(&[(a, b, c)]));
            }
            if f.is_zero() {
                f = lp(&[(0, 0, 1), (1, 0, 1)]);
            }
            polys.push(f);
        }
        let input = match GenericInput::new(polys.clone(), 1) {
            Ok(i) => i,
            Err(_) => continue,
        };
        let cert = err_str(certify_generic(&input, &mut rng))?;
        if !cert.accepted() {
            continue;
        }
        accepted += 1;
        let length = err_str(torus_intersection_length(&polys[0], &polys[1], &mut rng))?;
        let mv = mixed_volume(
            &polys[0].newton_polygon().unwrap(),
            &polys[1].newton_polygon().unwrap(),
        );
        if length != mv as u64 {
            return fail(format!(
                "length {length} != mixed volume {mv} for {} and {}",
                polys[0], polys[1]
            ));
        }
    }
    if accepted < 10 {
        return fail(format!("only {accepted} of 50 random pairs accepted"));
    }
    // Bezout totals through local intersections on an all-rational fixture
    let input = special_line_conics();
    let (h1, _) = err_str(HomPoly::homogenize(&input.polys[0]))?;
    let (h2, _) = err_str(HomPoly::homogenize(&input.polys[1]))?;
    let pts = [
        ProjPoint::from_i64(0, 1, 1),
        ProjPoint::from_i64(1, 2, 1),
        ProjPoint::from_i64(0, 1, 0),
        ProjPoint::from_i64(1, 1, 0),
        ProjPoint::from_i64(1, 0, 0),
    ];
    let mut total = 0u64;
    for p in &pts {
        total += err_str(local_intersection(&h1, &h2, p, &mut rng))?;
    }
    if total != 2 {
        return fail(format!("Bezout total {total} != deg F1 * deg F2 = 2"));
    }
    Ok(())
}

fn criterion11() -> Check {
    // identity push-forward preserves fans
    let fan = tropical_plane_fan();
    let id = IntMatrix::identity(3);
    let pushed = err_str(pushforward_fan(&fan, &id, 1))?;
    if !err_str(fans_equivalent(&fan, &pushed))? {
        return fail("identity push-forward changed the tropical plane");
    }
    let mut rng = seeded(11);
    let (g3, _) = err_str(build_generic_graph(
        &generic_surface_three(),
        &GenericOptions::default(),
        &mut rng,
    ))?;
    let fan3 = err_str(make_fan2d(&g3))?;
    let pushed = err_str(pushforward_fan(&fan3, &id, 1))?;
    if !err_str(fans_equivalent(&fan3, &pushed))? {
        return fail("identity push-forward changed a surface fan");
    }
    // the split/recombination round trip
    let (input, factors) = split_fixture();
    let (split, beta) = err_str(crate::resolution::split_reducible(&input, 0, &factors))?;
    let cert = err_str(certify_generic(&split, &mut rng))?;
    if !cert.accepted() {
        return fail(format!("split system rejected: {:?}", cert.violations));
    }
    let (gs, _) = err_str(build_generic_graph(&split, &GenericOptions::default(), &mut rng))?;
    let fan_split = err_str(make_fan2d(&gs))?;
    let fan_pushed = err_str(pushforward_fan(&fan_split, &beta, 1))?;
    let opts = GenericOptions { force: true, ..Default::default() };
    let (go, _) = err_str(build_generic_graph(&input, &opts, &mut rng))?;
    let fan_orig = err_str(make_fan2d(&go))?;
    if !err_str(fans_equivalent(&fan_pushed, &fan_orig))? {
        return fail("push-forward of the split graph differs from the original");
    }
    Ok(())
}

const NAMES: [&str; 11] = [
    "generic pipeline reproduces the first worked surface",
    "generic pipeline reproduces the second worked surface",
    "generic pipeline reproduces the third worked surface",
    "resolution of the tangential triple origin in four blow-ups",
    "resolution of the two triple points and its intersection table",
    "realized plane boundary complexes",
    "balancing at every ray of every fixture fan",
    "generic and resolution pipelines agree on 20 random draws",
    "an extra blow-up never changes the weighted fan",
    "torus lengths equal mixed volumes under the certificate",
    "push-forward sanity and the split recombination round trip",
];

pub fn run_criterion(id: usize) -> CriterionResult {
    let check = match id {
        1 => criterion1(),
        2 => criterion2(),
        3 => criterion3(),
        4 => criterion4(),
        5 => criterion5(),
        6 => criterion6(),
        7 => criterion7(),
        8 => criterion8(),
        9 => criterion9(),
        10 => criterion10(),
        11 => criterion11(),
        _ => Err("unknown criterion".into()),
    };
    CriterionResult {
        id,
        name: NAMES.get(id - 1).unwrap_or(&"").to_string(),
        passed: check.is_ok(),
        detail: check.err().unwrap_or_default(),
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=11).map(run_criterion).collect()
}
