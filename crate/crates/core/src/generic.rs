//! The generic surface pipeline: certify that the coefficients are generic
//! relative to the supports, then build the weighted tropical graph directly
//! from Newton polygons, the refined normal fan and exact intersection
//! counts.

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::graph::{Meta, TropicalGraph, VertexKind};
use crate::lattice::{gcd_minors2, IntMatrix, IntVector};
use crate::poly::bipoly::{gcd_bivar, is_squarefree, BiPoly};
use crate::poly::intersect::{count_simple_preimages, torus_intersection_length, torus_triple};
use crate::poly::{LaurentPoly, UniPoly};
use crate::polygon::{
    common_refinement, lattice_length_of_face, minkowski_sum, mixed_volume, LatticePolygon, Pt,
    RefinedFan,
};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha20Rng;

/// A surface parameterization: n >= 3 nonzero Laurent polynomials and the
/// degree of the map.
#[derive(Debug, Clone)]
pub struct GenericInput {
    pub polys: Vec<LaurentPoly>,
    pub delta: u64,
}

impl GenericInput {
    pub fn new(polys: Vec<LaurentPoly>, delta: u64) -> Result<Self> {
        if polys.iter().any(LaurentPoly::is_zero) {
            return Err(Error::ZeroPolynomial("parameterization coordinate".into()));
        }
        if delta == 0 {
            return Err(Error::InvalidInput("delta must be positive".into()));
        }
        Ok(GenericInput { polys, delta })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    TripleTorusPoint,
    BoundaryCollision,
    RepeatedFactor,
    MonomialFactor,
    NonIntegralWeight,
}

impl ViolationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationKind::TripleTorusPoint => "triple-torus-point",
            ViolationKind::BoundaryCollision => "boundary-collision",
            ViolationKind::RepeatedFactor => "repeated-factor",
            ViolationKind::MonomialFactor => "monomial-factor",
            ViolationKind::NonIntegralWeight => "nonintegral-weight",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: String,
}

/// Outcome of the genericity checks; accepted iff no violations.
#[derive(Debug, Clone)]
pub struct GenericityCertificate {
    pub violations: Vec<Violation>,
}

impl GenericityCertificate {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The initial form of f in direction w restricted to its edge, as a
/// univariate polynomial in the lattice parameter of the edge.
fn edge_polynomial(f: &LaurentPoly, w: Pt) -> Result<Option<UniPoly>> {
    let init = f.init_form((w.0, w.1))?;
    let support = init.support();
    if support.len() < 2 {
        return Ok(None); // the face is a vertex
    }
    // direction along the edge for inner normal w of a counterclockwise
    // polygon
    let d = crate::polygon::primitive_pt((w.1, -w.0));
    let dot = |a: (i64, i64)| -> i64 { a.0 * d.0 + a.1 * d.1 };
    let base = support.iter().copied().min_by_key(|&a| dot(a)).unwrap();
    // lattice step count: (alpha - base) is a nonnegative multiple of d
    let dd = dot(d);
    let step = |a: (i64, i64)| -> i64 { dot((a.0 - base.0, a.1 - base.1)) / dd };
    let span = support.iter().map(|&a| step(a)).max().unwrap();
    let mut cs = vec![Rat::zero(); span as usize + 1];
    for (&(a, b), c) in init.terms() {
        cs[step((a, b)) as usize] = c.clone();
    }
    Ok(Some(UniPoly::from_coeffs(cs)))
}

/// Checks that the input is generic relative to its support: squarefree
/// coordinates without monomial factors, no pair of curve closures meeting a
/// toric divisor of the refined fan at a common point, no triple of curves
/// with a common torus point, and finite pairwise torus intersections.
/// Rejection is a value, not an error.
pub fn certify_generic(input: &GenericInput, rng: &mut ChaCha20Rng) -> Result<GenericityCertificate> {
    let mut violations = Vec::new();
    let n = input.polys.len();
    let stripped: Vec<LaurentPoly> =
        input.polys.iter().map(|f| f.strip_monomial().0).collect();
    // (a) presentation and squarefreeness
    for (i, f) in input.polys.iter().enumerate() {
        if f.is_monomial() {
            continue; // empty curve; handled by the vertex rule
        }
        if !f.has_negative_exponent() {
            let (a, b) = f.min_exps().unwrap();
            if (a, b) != (0, 0) {
                violations.push(Violation {
                    kind: ViolationKind::MonomialFactor,
                    witness: format!("f{} is divisible by s^{a} t^{b}", i + 1),
                });
            }
        }
        let bi = BiPoly::from_laurent(&stripped[i])?;
        if !is_squarefree(&bi) {
            violations.push(Violation {
                kind: ViolationKind::RepeatedFactor,
                witness: format!("f{} has a repeated factor", i + 1),
            });
        }
    }
    // pairwise proportionality and coprimality where the intersection must be
    // finite
    let polygons: Vec<LatticePolygon> = input
        .polys
        .iter()
        .map(|f| f.newton_polygon())
        .collect::<Result<_>>()?;
    let mut coprime = vec![vec![true; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if stripped[i].is_monomial() || stripped[j].is_monomial() {
                continue;
            }
            if stripped[i] == stripped[j]
                || stripped[i].scale(&-Rat::one()) == stripped[j]
            {
                violations.push(Violation {
                    kind: ViolationKind::RepeatedFactor,
                    witness: format!("f{} and f{} agree up to a monomial", i + 1, j + 1),
                });
                coprime[i][j] = false;
                continue;
            }
            let sum = minkowski_sum(&polygons[i], &polygons[j]);
            let bi = BiPoly::from_laurent(&stripped[i])?;
            let bj = BiPoly::from_laurent(&stripped[j])?;
            if !gcd_bivar(&bi, &bj).is_constant() {
                coprime[i][j] = false;
                if sum.dim() == 2 {
                    violations.push(Violation {
                        kind: ViolationKind::RepeatedFactor,
                        witness: format!(
                            "f{} and f{} share a factor: infinite torus intersection",
                            i + 1,
                            j + 1
                        ),
                    });
                } else {
                    violations.push(Violation {
                        kind: ViolationKind::RepeatedFactor,
                        witness: format!("f{} and f{} share a factor", i + 1, j + 1),
                    });
                }
            }
        }
    }
    // (b) no pair of curve closures meets a toric divisor at a common point
    let with_dim: Vec<&LatticePolygon> = polygons.iter().filter(|p| p.dim() >= 1).collect();
    if !with_dim.is_empty() {
        let fan = common_refinement(&with_dim)?;
        for &ray in fan.rays() {
            for i in 0..n {
                for j in (i + 1)..n {
                    let (Some(ui), Some(uj)) = (
                        edge_polynomial(&input.polys[i], ray)?,
                        edge_polynomial(&input.polys[j], ray)?,
                    ) else {
                        continue;
                    };
                    let (g, _) = ui.gcd(&uj).strip_x();
                    if g.deg().unwrap_or(0) >= 1 {
                        violations.push(Violation {
                            kind: ViolationKind::BoundaryCollision,
                            witness: format!(
                                "curves f{} and f{} meet the toric divisor of ray ({},{})",
                                i + 1,
                                j + 1,
                                ray.0,
                                ray.1
                            ),
                        });
                    }
                }
            }
        }
    }
    // (c) no triple of curves meets in the torus
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if !(coprime[i][j] && coprime[i][k] && coprime[j][k]) {
                    continue;
                }
                let scan = torus_triple(&input.polys[i], &input.polys[j], &input.polys[k], rng)?;
                for (s0, t0) in &scan.rational {
                    violations.push(Violation {
                        kind: ViolationKind::TripleTorusPoint,
                        witness: format!(
                            "f{}, f{}, f{} meet at (s,t) = ({},{})",
                            i + 1,
                            j + 1,
                            k + 1,
                            crate::arith::rat_to_string(s0),
                            crate::arith::rat_to_string(t0)
                        ),
                    });
                }
                if scan.irrational_exists {
                    violations.push(Violation {
                        kind: ViolationKind::TripleTorusPoint,
                        witness: format!(
                            "f{}, f{}, f{} meet at an irrational torus point{}",
                            i + 1,
                            j + 1,
                            k + 1,
                            scan.witness
                                .map(|w| format!(" (factor {w})"))
                                .unwrap_or_default()
                        ),
                    });
                }
            }
        }
    }
    Ok(GenericityCertificate { violations })
}

#[derive(Debug, Clone)]
#[derive(Default)]
pub struct GenericOptions {
    /// Build even when the certificate rejects; recorded in metadata.
    pub force: bool,
    /// Use mixed volumes for curve-curve weights (legal only when accepted).
    pub use_mixed_volume: bool,
    /// Count preimages of a random target and warn when the count differs
    /// from delta.
    pub verify_delta: bool,
    pub seed: u64,
}


/// Divisorial valuation vector of the toric divisor with primitive ray w.
fn toric_vertex(polys: &[LaurentPoly], w: Pt) -> Result<IntVector> {
    let vals: Vec<Int> = polys
        .iter()
        .map(|f| f.trop_eval((w.0, w.1)).map(Int::from))
        .collect::<Result<_>>()?;
    Ok(IntVector(vals))
}

fn check_integral(w: &Rat, edge: &str) -> Result<()> {
    if !w.denom().is_one() {
        return Err(Error::NonIntegralWeight {
            edge: edge.to_string(),
            value: crate::arith::rat_to_string(w),
        });
    }
    Ok(())
}

/// Builds the weighted tropical graph of a generic surface parameterization.
///
/// Vertices are e_i for every coordinate with positive-dimensional Newton
/// polygon plus the nonzero valuation vectors of the refined-fan rays; edges
/// and weights follow the three toric intersection rules. Zero-weight edges
/// between existing vertices are retained but flagged.
pub fn build_generic_graph(
    input: &GenericInput,
    opts: &GenericOptions,
    rng: &mut ChaCha20Rng,
) -> Result<(TropicalGraph, GenericityCertificate)> {
    let cert = certify_generic(input, rng)?;
    if !cert.accepted() && !opts.force {
        return Err(Error::CertificateRejected(cert.violations.len()));
    }
    let n = input.polys.len();
    let delta = Int::from(input.delta);
    let polygons: Vec<LatticePolygon> = input
        .polys
        .iter()
        .map(|f| f.newton_polygon())
        .collect::<Result<_>>()?;
    let with_dim: Vec<&LatticePolygon> = polygons.iter().filter(|p| p.dim() >= 1).collect();
    if with_dim.is_empty() {
        return Err(Error::EmptyInput(
            "all coordinates are monomials; the image is a point of the torus".into(),
        ));
    }
    let fan: RefinedFan = common_refinement(&with_dim)?;
    let mut meta = Meta {
        delta: input.delta,
        pipeline: "generic".into(),
        seed: opts.seed,
        forced: !cert.accepted(),
        notes: Vec::new(),
    };
    if opts.verify_delta {
        let s0 = Rat::from_integer(Int::from(rng.gen_range(2..50)));
        let t0 = Rat::from_integer(Int::from(rng.gen_range(2..50)));
        let target: Vec<Rat> = input.polys.iter().map(|f| f.eval_torus(&s0, &t0)).collect();
        match count_simple_preimages(&input.polys, &target, rng) {
            Some(c) if c == input.delta => {}
            Some(c) => meta.notes.push(format!(
                "declared delta {} but a random target has {} simple preimages",
                input.delta, c
            )),
            None => meta
                .notes
                .push("delta verification inconclusive on the sampled target".into()),
        }
    }
    let mut g = TropicalGraph::new(n, meta);
    let mut curve_vertex: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        if polygons[i].dim() >= 1 {
            let id = g.add_vertex(
                &format!("e{}", i + 1),
                IntVector::unit(n, i),
                VertexKind::Curve,
            );
            curve_vertex[i] = Some(id);
        }
    }
    let rays = fan.rays();
    let mut ray_vertex: Vec<Option<usize>> = vec![None; rays.len()];
    for (idx, &ray) in rays.iter().enumerate() {
        let point = toric_vertex(&input.polys, ray)?;
        if point.is_zero() {
            continue;
        }
        let id = g.add_vertex(&format!("D{}", idx + 1), point, VertexKind::Toric);
        ray_vertex[idx] = Some(id);
    }
    // (ii) consecutive toric divisors
    for (j, k) in fan.consecutive_pairs() {
        if rays.len() == 2 && j == 1 {
            break; // two opposite rays span a single pair
        }
        let (Some(vj), Some(vk)) = (ray_vertex[j], ray_vertex[k]) else {
            continue;
        };
        let cols = IntMatrix::from_columns(&[
            g.vertex(vj).point.clone(),
            g.vertex(vk).point.clone(),
        ]);
        let num = gcd_minors2(&cols)?;
        let det = Int::from(rays[k].0) * Int::from(rays[j].1)
            - Int::from(rays[k].1) * Int::from(rays[j].0);
        let edge_name = format!("(D{},D{})", j + 1, k + 1);
        if num.is_zero() {
            g.add_edge(vj, vk, Rat::zero(), true);
            continue;
        }
        let w = Rat::new(num, det.abs() * &delta);
        check_integral(&w, &edge_name)?;
        g.add_edge(vj, vk, w, false);
    }
    // (iii) curve to toric divisor
    for i in 0..n {
        let Some(ci) = curve_vertex[i] else {
            continue;
        };
        for (idx, &ray) in rays.iter().enumerate() {
            let Some(vd) = ray_vertex[idx] else {
                continue;
            };
            let ll = lattice_length_of_face(&polygons[i], ray);
            if ll == 0 {
                continue; // the ray is not in the normal fan of P_i
            }
            let point = &g.vertex(vd).point;
            let mut gcd_others = Int::zero();
            for (j, c) in point.0.iter().enumerate() {
                if j != i {
                    gcd_others = gcd_others.gcd(c);
                }
            }
            let edge_name = format!("(e{},D{})", i + 1, idx + 1);
            if gcd_others.is_zero() {
                g.add_edge(ci, vd, Rat::zero(), true);
                continue;
            }
            let w = Rat::new(Int::from(ll) * gcd_others, delta.clone());
            check_integral(&w, &edge_name)?;
            g.add_edge(ci, vd, w, false);
        }
    }
    // (iv) curve to curve
    for i in 0..n {
        for j in (i + 1)..n {
            let (Some(ci), Some(cj)) = (curve_vertex[i], curve_vertex[j]) else {
                continue;
            };
            if minkowski_sum(&polygons[i], &polygons[j]).dim() != 2 {
                continue;
            }
            let length = if opts.use_mixed_volume && cert.accepted() {
                mixed_volume(&polygons[i], &polygons[j]) as u64
            } else {
                torus_intersection_length(&input.polys[i], &input.polys[j], rng)?
            };
            let edge_name = format!("(e{},e{})", i + 1, j + 1);
            if length == 0 {
                g.add_edge(ci, cj, Rat::zero(), true);
                continue;
            }
            let w = Rat::new(Int::from(length), delta.clone());
            check_integral(&w, &edge_name)?;
            g.add_edge(ci, cj, w, false);
        }
    }
    g.edges.sort_by_key(|a| (a.u, a.v));
    Ok((g, cert))
}
