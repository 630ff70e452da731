//! Exact intersection numbers for plane curves: local multiplicities through
//! sheared resultants, scheme lengths in the torus, and detection of points
//! lying on three or more curves (including irrational ones).

use super::bipoly::{self, BiPoly};
use super::d5;
use super::homog::{Chart, HomPoly, ProjPoint};
use super::laurent::LaurentPoly;
use super::unipoly::UniPoly;
use crate::arith::Rat;
use crate::error::{Error, Result};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha20Rng;

/// Which variable to eliminate in a resultant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    S,
    T,
}

/// Sylvester resultant of two Laurent polynomials with nonnegative exponents,
/// eliminating the chosen variable. Coefficient rows appear in ascending
/// order, so Res(t - s^2, t; eliminate t) = -s^2.
pub fn resultant(f: &LaurentPoly, g: &LaurentPoly, eliminate: Var) -> Result<LaurentPoly> {
    let fb = BiPoly::from_laurent(f)?;
    let gb = BiPoly::from_laurent(g)?;
    let r = match eliminate {
        Var::T => bipoly::resultant_y(&fb, &gb)?,
        Var::S => bipoly::resultant_x(&fb, &gb)?,
    };
    let terms: Vec<((i64, i64), Rat)> = r
        .0
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let e = match eliminate {
                Var::T => (i as i64, 0),
                Var::S => (0, i as i64),
            };
            (e, c.clone())
        })
        .collect();
    Ok(LaurentPoly::from_terms(terms))
}

fn common_factor_affine(f: &BiPoly, g: &BiPoly) -> bool {
    !bipoly::coprime_bipoly(f, g)
}

/// Common-factor test for ternary homogeneous polynomials: a shared factor is
/// either a power of u or shows up in the u = 1 chart.
fn common_factor_homog(f: &HomPoly, g: &HomPoly) -> bool {
    let fu = f.terms().map(|(&(_, _, c), _)| c).min().unwrap_or(0);
    let gu = g.terms().map(|(&(_, _, c), _)| c).min().unwrap_or(0);
    if fu > 0 && gu > 0 {
        return true;
    }
    common_factor_affine(&f.dehomogenize(Chart::U), &g.dehomogenize(Chart::U))
}

/// Intersection multiplicity of two coprime affine curves at a rational
/// point, computed as the order of vanishing of the resultant after a shear
/// that makes the projection finite. Two distinct shears must agree on the
/// minimal order before the value is accepted.
pub fn local_intersection_affine(
    f: &BiPoly,
    g: &BiPoly,
    p: (&Rat, &Rat),
    rng: &mut ChaCha20Rng,
) -> Result<u64> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("local_intersection".into()));
    }
    if common_factor_affine(f, g) {
        return Err(Error::CommonFactor("local_intersection".into()));
    }
    let f0 = f.translate(p.0, p.1);
    let g0 = g.translate(p.0, p.1);
    let zero = Rat::zero();
    if !f0.eval(&zero, &zero).is_zero() || !g0.eval(&zero, &zero).is_zero() {
        return Ok(0);
    }
    let df = f0.total_degree().unwrap_or(0) as i64;
    let dg = g0.total_degree().unwrap_or(0) as i64;
    let bound = 2 * df * dg + 4;
    let mut best: Option<(u64, i64)> = None; // (min order, shear that gave it)
    let mut tried = std::collections::BTreeSet::new();
    for attempt in 0..40 {
        let c: i64 = if attempt == 0 { 0 } else { rng.gen_range(-bound..=bound) };
        if !tried.insert(c) {
            continue;
        }
        let cr = Rat::from_integer(c.into());
        let fc = f0.shear_x_by_y(&cr);
        let gc = g0.shear_x_by_y(&cr);
        // valid shear: the top coefficient in y is a nonzero constant for both
        let ok = |h: &BiPoly, d: i64| {
            h.deg_y().map(|dy| dy as i64) == Some(d) && h.lc_in_y().deg() == Some(0)
        };
        if !ok(&fc, df) || !ok(&gc, dg) {
            continue;
        }
        let r = bipoly::resultant_y(&fc, &gc)?;
        debug_assert!(!r.is_zero());
        let ord = r.ord_at(&zero) as u64;
        match best {
            Some((m, c0)) if ord == m && c0 != c => return Ok(m),
            Some((m, _)) if ord < m => best = Some((ord, c)),
            None => best = Some((ord, c)),
            _ => {}
        }
    }
    Err(Error::RetriesExhausted("local_intersection".into()))
}

/// Intersection multiplicity I_p(F, G) of two coprime projective curves.
pub fn local_intersection(
    f: &HomPoly,
    g: &HomPoly,
    p: &ProjPoint,
    rng: &mut ChaCha20Rng,
) -> Result<u64> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("local_intersection".into()));
    }
    if common_factor_homog(f, g) {
        return Err(Error::CommonFactor("local_intersection".into()));
    }
    let (chart, (x, y)) = p.chart_coords();
    local_intersection_affine(&f.dehomogenize(chart), &g.dehomogenize(chart), (&x, &y), rng)
}

fn unimodular_candidates(rng: &mut ChaCha20Rng, attempt: usize) -> [[i64; 2]; 2] {
    match attempt {
        0 => [[1, 0], [0, 1]],
        1 => [[1, 0], [1, 1]],
        2 => [[1, 1], [0, 1]],
        _ => {
            let k = rng.gen_range(1..=(2 + attempt as i64));
            let l = rng.gen_range(1..=(2 + attempt as i64));
            [[1, k], [l, k * l + 1]] // determinant 1
        }
    }
}

/// Both-direction boundary conditions for counting torus intersections from
/// resultants: no common points on the coordinate axes away from the origin,
/// and no simultaneous leading-coefficient collapse (escape to infinity).
fn torus_count_conditions(f: &BiPoly, g: &BiPoly) -> bool {
    let axis_clean = |a: UniPoly, b: UniPoly| -> bool {
        if a.is_zero() || b.is_zero() {
            return false;
        }
        let (g, _) = a.gcd(&b).strip_x();
        g.deg() == Some(0)
    };
    axis_clean(f.restrict_y0(), g.restrict_y0())
        && axis_clean(f.lc_in_y(), g.lc_in_y())
        && axis_clean(f.restrict_x0(), g.restrict_x0())
        && axis_clean(f.swap_vars().lc_in_y(), g.swap_vars().lc_in_y())
}

/// Total length of the zero-dimensional scheme (f = g = 0) inside the
/// 2-torus: the number of common roots with both coordinates nonzero,
/// counted with multiplicity.
///
/// Computed from the degrees of both resultants after stripping the
/// contribution of the coordinate axes; a seeded unimodular change of
/// coordinates retries when boundary points contaminate a projection.
pub fn torus_intersection_length(
    f: &LaurentPoly,
    g: &LaurentPoly,
    rng: &mut ChaCha20Rng,
) -> Result<u64> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("torus_intersection_length".into()));
    }
    let (f0, _) = f.strip_monomial();
    let (g0, _) = g.strip_monomial();
    if f0.is_monomial() || g0.is_monomial() {
        // a unit coordinate: empty curve in the torus
        return Ok(0);
    }
    {
        let fb = BiPoly::from_laurent(&f0)?;
        let gb = BiPoly::from_laurent(&g0)?;
        if common_factor_affine(&fb, &gb) {
            return Err(Error::PositiveDimensionalIntersection(
                "curves share a component".into(),
            ));
        }
    }
    for attempt in 0..16 {
        let m = unimodular_candidates(rng, attempt);
        let (fm, _) = f0.substitute_monomial(m).strip_monomial();
        let (gm, _) = g0.substitute_monomial(m).strip_monomial();
        let fb = BiPoly::from_laurent(&fm)?;
        let gb = BiPoly::from_laurent(&gm)?;
        if !torus_count_conditions(&fb, &gb) {
            continue;
        }
        let r1 = bipoly::resultant_y(&fb, &gb)?;
        let r2 = bipoly::resultant_x(&fb, &gb)?;
        let count = |r: &UniPoly| -> u64 { r.strip_x().0.deg().unwrap_or(0) as u64 };
        let (l1, l2) = (count(&r1), count(&r2));
        if l1 == l2 {
            return Ok(l1);
        }
    }
    Err(Error::RetriesExhausted("torus_intersection_length".into()))
}

/// Result of scanning three curves for common points.
#[derive(Debug, Clone, Default)]
pub struct TripleScan {
    /// Rational common points, as chart coordinates.
    pub rational: Vec<(Rat, Rat)>,
    /// A common point exists whose coordinates are irrational.
    pub irrational_exists: bool,
    /// A squarefree witness factor whose roots carry irrational common points.
    pub witness: Option<UniPoly>,
}

fn restrict_x_at(p: &BiPoly, x0: &Rat) -> UniPoly {
    let rec = p.rec_in_y();
    UniPoly::from_coeffs(rec.iter().map(|c| c.eval(x0)).collect())
}

fn collect_fiber_roots(scan: &mut TripleScan, x0: &Rat, t: &UniPoly) {
    if t.is_zero() {
        scan.irrational_exists = true;
        return;
    }
    if t.deg() == Some(0) {
        return;
    }
    let mut remaining = t.clone();
    for (t0, mult) in t.rational_roots() {
        scan.rational.push((x0.clone(), t0.clone()));
        let lin = UniPoly::from_coeffs(vec![-t0, Rat::from_integer(1.into())]);
        for _ in 0..mult {
            remaining = remaining.exact_div(&lin).unwrap();
        }
    }
    if remaining.deg().unwrap_or(0) >= 1 {
        scan.irrational_exists = true;
        if scan.witness.is_none() {
            scan.witness = Some(remaining.squarefree_part());
        }
    }
}

/// Common points of three pairwise coprime affine curves, with exact
/// detection of irrational ones via split moduli. Points on the axes count.
pub fn affine_triple_points(f: &BiPoly, g: &BiPoly, h: &BiPoly) -> Result<TripleScan> {
    let polys = [f, g, h];
    if polys.iter().any(|p| p.is_zero()) {
        return Err(Error::ZeroPolynomial("triple point scan".into()));
    }
    let mut scan = TripleScan::default();
    // nonzero constants have empty zero sets
    if polys.iter().any(|p| p.is_constant()) {
        return Ok(scan);
    }
    let mixed: Vec<&BiPoly> =
        polys.iter().copied().filter(|p| p.deg_y().unwrap_or(0) > 0).collect();
    let pure: Vec<&BiPoly> =
        polys.iter().copied().filter(|p| p.deg_y().unwrap_or(0) == 0).collect();
    // candidate x-coordinates of common points
    let mut q = UniPoly::zero();
    for p in &pure {
        let r = p.restrict_y0();
        q = if q.is_zero() { r } else { q.gcd(&r) };
    }
    if mixed.len() >= 2 {
        let r1 = bipoly::resultant_y(mixed[0], mixed[1])?;
        if r1.is_zero() {
            return Err(Error::CommonFactor("triple point scan".into()));
        }
        q = if q.is_zero() { r1 } else { q.gcd(&r1) };
        if mixed.len() == 3 {
            let r2 = bipoly::resultant_y(mixed[0], mixed[2])?;
            if r2.is_zero() {
                return Err(Error::CommonFactor("triple point scan".into()));
            }
            q = q.gcd(&r2);
        }
    }
    if q.is_zero() || q.deg() == Some(0) {
        return Ok(scan);
    }
    let mut q = q.squarefree_part();
    for (x0, _) in q.clone().rational_roots() {
        let lin = UniPoly::from_coeffs(vec![-x0.clone(), Rat::from_integer(1.into())]);
        q = q.exact_div(&lin).expect("simple root divides");
        let fiber: Vec<UniPoly> = polys.iter().map(|p| restrict_x_at(p, &x0)).collect();
        if fiber.iter().any(|u| u.is_zero()) {
            // a curve contains the whole vertical line; intersect the others
            let others: Vec<&UniPoly> = fiber.iter().filter(|u| !u.is_zero()).collect();
            if others.is_empty() {
                scan.irrational_exists = true;
                continue;
            }
            let mut t = others[0].clone();
            for o in &others[1..] {
                t = t.gcd(o);
            }
            collect_fiber_roots(&mut scan, &x0, &t);
            continue;
        }
        let mut t = fiber[0].clone();
        for u in &fiber[1..] {
            t = t.gcd(u);
        }
        collect_fiber_roots(&mut scan, &x0, &t);
    }
    // candidates with irrational x-coordinate
    if q.deg().unwrap_or(0) >= 1 {
        let tpolys: Vec<Vec<UniPoly>> = polys.iter().map(|p| p.rec_in_y()).collect();
        if let Some(branch) = d5::any_common_root(&tpolys, &q, false) {
            scan.irrational_exists = true;
            scan.witness = Some(branch);
        }
    }
    Ok(scan)
}

/// Image of a torus point under the monomial map with exponent matrix m:
/// a root of f.substitute_monomial(m) maps to a root of f through the
/// column monomials of m.
fn monomial_point_image(a: &Rat, b: &Rat, m: [[i64; 2]; 2]) -> (Rat, Rat) {
    use super::laurent::rat_pow;
    (
        rat_pow(a, m[0][0]) * rat_pow(b, m[1][0]),
        rat_pow(a, m[0][1]) * rat_pow(b, m[1][1]),
    )
}

/// Common points in the torus of three pairwise coprime curves. Exact: both
/// the rational points and the existence of irrational ones are certified.
pub fn torus_triple(
    f: &LaurentPoly,
    g: &LaurentPoly,
    h: &LaurentPoly,
    rng: &mut ChaCha20Rng,
) -> Result<TripleScan> {
    let (f0, _) = f.strip_monomial();
    let (g0, _) = g.strip_monomial();
    let (h0, _) = h.strip_monomial();
    if f0.is_monomial() || g0.is_monomial() || h0.is_monomial() {
        return Ok(TripleScan::default());
    }
    // make all three genuinely bivariate so that the projection to the first
    // coordinate sees every torus point
    for attempt in 0..16 {
        let m = unimodular_candidates(rng, attempt);
        let subs: Vec<LaurentPoly> = [&f0, &g0, &h0]
            .iter()
            .map(|p| p.substitute_monomial(m).strip_monomial().0)
            .collect();
        let bis: Vec<BiPoly> = subs
            .iter()
            .map(BiPoly::from_laurent)
            .collect::<Result<_>>()?;
        if bis
            .iter()
            .any(|p| p.deg_y().unwrap_or(0) == 0 || p.deg_x().unwrap_or(0) == 0)
        {
            continue;
        }
        let r1 = bipoly::resultant_y(&bis[0], &bis[1])?;
        let r2 = bipoly::resultant_y(&bis[0], &bis[2])?;
        if r1.is_zero() || r2.is_zero() {
            return Err(Error::CommonFactor("torus triple scan".into()));
        }
        let (q, _) = r1.gcd(&r2).strip_x();
        let mut scan = TripleScan::default();
        if q.deg() == Some(0) {
            return Ok(scan);
        }
        let mut q = q.squarefree_part();
        for (s0, _) in q.clone().rational_roots() {
            let lin = UniPoly::from_coeffs(vec![-s0.clone(), Rat::from_integer(1.into())]);
            q = q.exact_div(&lin).expect("simple root divides");
            if s0.is_zero() {
                continue;
            }
            let fiber: Vec<UniPoly> = bis.iter().map(|p| restrict_x_at(p, &s0)).collect();
            if fiber.iter().any(|u| u.is_zero()) {
                scan.irrational_exists = true;
                continue;
            }
            let mut t = fiber[0].clone();
            for u in &fiber[1..] {
                t = t.gcd(u);
            }
            let (t, _) = t.strip_x(); // torus: t != 0
            collect_fiber_roots(&mut scan, &s0, &t);
        }
        if q.deg().unwrap_or(0) >= 1 {
            let tpolys: Vec<Vec<UniPoly>> = bis.iter().map(|p| p.rec_in_y()).collect();
            if let Some(branch) = d5::any_common_root(&tpolys, &q, true) {
                scan.irrational_exists = true;
                scan.witness = Some(branch);
            }
        }
        // map rational witnesses back to the original coordinates
        scan.rational = scan
            .rational
            .iter()
            .map(|(a, b)| monomial_point_image(a, b, m))
            .collect();
        scan.rational.sort();
        scan.rational.dedup();
        return Ok(scan);
    }
    Err(Error::RetriesExhausted("torus_triple".into()))
}

/// Exact count of isolated reduced preimages in the torus of `target` under
/// the polynomial map; None when a degeneracy prevents the count. Used as a
/// plausibility check of the declared map degree.
pub fn count_simple_preimages(
    polys: &[LaurentPoly],
    target: &[Rat],
    rng: &mut ChaCha20Rng,
) -> Option<u64> {
    if polys.len() < 2 {
        return None;
    }
    let shifted: Vec<LaurentPoly> = polys
        .iter()
        .zip(target)
        .map(|(f, y)| f.sub_rat(y).strip_monomial().0)
        .collect();
    for attempt in 0..12 {
        let m = unimodular_candidates(rng, attempt);
        let subs: Vec<BiPoly> = shifted
            .iter()
            .map(|p| BiPoly::from_laurent(&p.substitute_monomial(m).strip_monomial().0).ok())
            .collect::<Option<_>>()?;
        if subs
            .iter()
            .any(|p| p.deg_y().unwrap_or(0) == 0 || p.deg_x().unwrap_or(0) == 0)
        {
            continue;
        }
        let r = bipoly::resultant_y(&subs[0], &subs[1]).ok()?;
        if r.is_zero() {
            return None;
        }
        let (q, _) = r.strip_x();
        if q.deg() == Some(0) {
            return Some(0);
        }
        let q = q.squarefree_part();
        let tpolys: Vec<Vec<UniPoly>> = subs.iter().map(|p| p.rec_in_y()).collect();
        let mut total = 0u64;
        for (branch, out) in d5::common_gcd_branches(&tpolys, &q, true) {
            match out {
                d5::BranchGcd::Deg(d) => {
                    total += (branch.deg().unwrap_or(0) as u64) * d as u64;
                }
                d5::BranchGcd::IdenticallyZero => return None,
            }
        }
        return Some(total);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use rand::SeedableRng;

    fn rng() -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(7)
    }

    fn lp(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_i64_terms(terms)
    }

    #[test]
    fn resultant_public_examples() {
        // eliminate t from f = t - s^2, g = t: -s^2
        let f = lp(&[(0, 1, 1), (2, 0, -1)]);
        let g = lp(&[(0, 1, 1)]);
        let r = resultant(&f, &g, Var::T).unwrap();
        assert_eq!(r, lp(&[(2, 0, -1)]));
        let f = lp(&[(0, 1, 1), (0, 0, -1)]);
        let g = lp(&[(0, 1, 1), (0, 0, 1)]);
        assert_eq!(resultant(&f, &g, Var::T).unwrap(), lp(&[(0, 0, -2)]));
        assert!(resultant(&f, &f, Var::T).unwrap().is_zero());
        let c = lp(&[(1, 0, 1)]);
        assert!(matches!(resultant(&c, &c, Var::T), Err(Error::ConstantResultant)));
    }

    #[test]
    fn local_intersection_parabola_line() {
        // t - s^2 and t at the origin: multiplicity 2
        let f = BiPoly::from_i64_terms(&[(0, 1, 1), (2, 0, -1)]);
        let g = BiPoly::from_i64_terms(&[(0, 1, 1)]);
        let z = Rat::zero();
        assert_eq!(local_intersection_affine(&f, &g, (&z, &z), &mut rng()).unwrap(), 2);
        // transverse lines: 1
        let l1 = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 1, 1)]);
        let l2 = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 1, -1)]);
        assert_eq!(local_intersection_affine(&l1, &l2, (&z, &z), &mut rng()).unwrap(), 1);
        // point off the curves: 0
        let one = rat_int(1);
        assert_eq!(local_intersection_affine(&f, &g, (&one, &one), &mut rng()).unwrap(), 0);
        // common factor is an error
        assert!(local_intersection_affine(&f, &f, (&z, &z), &mut rng()).is_err());
    }

    #[test]
    fn local_intersection_tangency_and_symmetry() {
        // t - s^2 and t + s^2 meet at the origin with multiplicity 2
        let f = BiPoly::from_i64_terms(&[(0, 1, 1), (2, 0, -1)]);
        let g = BiPoly::from_i64_terms(&[(0, 1, 1), (2, 0, 1)]);
        let z = Rat::zero();
        assert_eq!(local_intersection_affine(&f, &g, (&z, &z), &mut rng()).unwrap(), 2);
        assert_eq!(local_intersection_affine(&g, &f, (&z, &z), &mut rng()).unwrap(), 2);
    }

    #[test]
    fn bezout_totals_on_rational_fixtures() {
        // parabola and line: tangency 2 at the origin, nothing at infinity
        let f = lp(&[(0, 1, 1), (2, 0, -1)]);
        let g = lp(&[(0, 1, 1)]);
        let (hf, _) = HomPoly::homogenize(&f).unwrap();
        let (hg, _) = HomPoly::homogenize(&g).unwrap();
        let mut total = 0;
        for p in [
            ProjPoint::from_i64(0, 0, 1),
            ProjPoint::from_i64(0, 1, 0),
            ProjPoint::from_i64(1, 0, 0),
        ] {
            total += local_intersection(&hf, &hg, &p, &mut rng()).unwrap();
        }
        assert_eq!(total, 2);
        // two conics through four rational points: Bezout total 4
        let c1 = lp(&[(2, 0, 1), (0, 2, 1), (0, 0, -2)]);
        let c2 = lp(&[(2, 0, 1), (0, 2, -1)]);
        let (h1, _) = HomPoly::homogenize(&c1).unwrap();
        let (h2, _) = HomPoly::homogenize(&c2).unwrap();
        let mut total = 0;
        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            total +=
                local_intersection(&h1, &h2, &ProjPoint::from_i64(a, b, 1), &mut rng()).unwrap();
        }
        assert_eq!(total, 4);
    }

    #[test]
    fn torus_lengths() {
        // 1 + s + t and 1 + 2s + 3t: one common point (-2, 1), both nonzero
        let f = lp(&[(0, 0, 1), (1, 0, 1), (0, 1, 1)]);
        let g = lp(&[(0, 0, 1), (1, 0, 2), (0, 1, 3)]);
        assert_eq!(torus_intersection_length(&f, &g, &mut rng()).unwrap(), 1);
        // f and f + 1 never meet
        let f1 = f.add(&lp(&[(0, 0, 1)]));
        assert_eq!(torus_intersection_length(&f, &f1, &mut rng()).unwrap(), 0);
        // generic pair with supports of the mixed-volume-3 example
        let f2 = lp(&[(0, 0, 11), (0, 1, 13), (2, 0, 17)]);
        let f3 = lp(&[(0, 0, 19), (1, 1, 23)]);
        assert_eq!(torus_intersection_length(&f2, &f3, &mut rng()).unwrap(), 3);
        // common factor errors
        let prod = f.mul(&f2);
        assert!(torus_intersection_length(&prod, &f, &mut rng()).is_err());
        // pair meeting only on the t = 0 axis: torus length 0
        let a = lp(&[(0, 0, -1), (1, 0, 1), (0, 1, 1)]);
        let b = lp(&[(0, 0, -1), (1, 0, 1), (0, 1, 2)]);
        assert_eq!(torus_intersection_length(&a, &b, &mut rng()).unwrap(), 0);
    }

    #[test]
    fn torus_length_matches_mixed_volume_on_generic_pair() {
        use crate::polygon::mixed_volume;
        let f2 = lp(&[(0, 0, 11), (0, 1, 13), (2, 0, 17)]);
        let f3 = lp(&[(0, 0, 19), (1, 1, 23)]);
        let l = torus_intersection_length(&f2, &f3, &mut rng()).unwrap();
        let mv = mixed_volume(&f2.newton_polygon().unwrap(), &f3.newton_polygon().unwrap());
        assert_eq!(l, mv as u64);
    }

    #[test]
    fn triple_scan_rational_witness() {
        // three special curves with the common torus point (1, 2)
        let f1 = lp(&[(0, 0, -1), (1, 0, -1), (0, 1, 1)]);
        let f2 = lp(&[(0, 0, -1), (0, 1, 1), (2, 0, -1)]);
        let f3 = lp(&[(0, 0, 2), (1, 1, -1)]);
        let scan = torus_triple(&f1, &f2, &f3, &mut rng()).unwrap();
        assert_eq!(scan.rational, vec![(rat_int(1), rat_int(2))]);
        assert!(!scan.irrational_exists);
        // generic coefficients: no triple point
        let g1 = lp(&[(0, 0, 3), (1, 0, 5), (0, 1, 7)]);
        let g2 = lp(&[(0, 0, 11), (0, 1, 13), (2, 0, 17)]);
        let g3 = lp(&[(0, 0, 19), (1, 1, 23)]);
        let scan = torus_triple(&g1, &g2, &g3, &mut rng()).unwrap();
        assert!(scan.rational.is_empty() && !scan.irrational_exists);
    }

    #[test]
    fn triple_scan_needs_substitution() {
        // s = 1, t = 2 and s + t = 3 share (1, 2); two of them are univariate
        let f = lp(&[(1, 0, 1), (0, 0, -1)]);
        let g = lp(&[(0, 1, 1), (0, 0, -2)]);
        let h = lp(&[(1, 0, 1), (0, 1, 1), (0, 0, -3)]);
        let scan = torus_triple(&f, &g, &h, &mut rng()).unwrap();
        assert_eq!(scan.rational, vec![(rat_int(1), rat_int(2))]);
    }

    #[test]
    fn triple_scan_irrational() {
        // curves through (sqrt 2, sqrt 2): s^2 - 2, t - s, s t - 2
        let f = BiPoly::from_i64_terms(&[(2, 0, 1), (0, 0, -2)]);
        let g = BiPoly::from_i64_terms(&[(0, 1, 1), (1, 0, -1)]);
        let h = BiPoly::from_i64_terms(&[(1, 1, 1), (0, 0, -2)]);
        let scan = affine_triple_points(&f, &g, &h).unwrap();
        assert!(scan.rational.is_empty());
        assert!(scan.irrational_exists);
        assert!(scan.witness.is_some());
    }

    #[test]
    fn affine_triple_on_axis() {
        // all three through the origin
        let f = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 1, 1)]);
        let g = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 1, -1)]);
        let h = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 2, 1)]);
        let scan = affine_triple_points(&f, &g, &h).unwrap();
        assert_eq!(scan.rational, vec![(rat_int(0), rat_int(0))]);
        assert!(!scan.irrational_exists);
    }

    #[test]
    fn preimage_count_of_birational_map() {
        let polys = vec![
            lp(&[(0, 0, 3), (1, 0, 5), (0, 1, 7)]),
            lp(&[(0, 0, 11), (0, 1, 13), (2, 0, 17)]),
            lp(&[(0, 0, 19), (1, 1, 23)]),
        ];
        let s0 = rat(3, 2);
        let t0 = rat(5, 3);
        let target: Vec<Rat> = polys.iter().map(|f| f.eval_torus(&s0, &t0)).collect();
        let mut r = rng();
        assert_eq!(count_simple_preimages(&polys, &target, &mut r), Some(1));
    }
}
