//! Bivariate polynomials over Q with nonnegative exponents: resultants,
//! gcds, coordinate changes and local multiplicities. These carry the affine
//! chart equations of curves throughout both pipelines.

use super::laurent::LaurentPoly;
use super::unipoly::UniPoly;
use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut map: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
        for (e, c) in terms {
            let entry = map.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        BiPoly { terms: map }
    }

    pub fn from_i64_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(a, b, c)| ((a, b), Rat::from_integer(Int::from(c)))),
        )
    }

    pub fn from_laurent(f: &LaurentPoly) -> Result<Self> {
        if f.has_negative_exponent() {
            return Err(Error::NegativeExponent("polynomial form".into()));
        }
        Ok(BiPoly {
            terms: f
                .terms()
                .map(|(&(a, b), c)| ((a as u32, b as u32), c.clone()))
                .collect(),
        })
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(&(a, b), c)| ((a as i64, b as i64), c.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (*e, c.clone())),
        )
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut terms: Vec<((u32, u32), Rat)> = Vec::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                terms.push(((e1.0 + e2.0, e1.1 + e2.1), c1 * c2));
            }
        }
        BiPoly::from_terms(terms)
    }

    pub fn scale(&self, c: &Rat) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect() }
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * pow_u32(x, a) * pow_u32(y, b);
        }
        acc
    }

    pub fn partial_x(&self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().filter(|(&(a, _), _)| a > 0).map(
            |(&(a, b), c)| ((a - 1, b), c * Rat::from_integer(Int::from(a as i64))),
        ))
    }

    pub fn partial_y(&self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().filter(|(&(_, b), _)| b > 0).map(
            |(&(a, b), c)| ((a, b - 1), c * Rat::from_integer(Int::from(b as i64))),
        ))
    }

    pub fn swap_vars(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect() }
    }

    /// f as a polynomial in y with UniPoly-in-x coefficients (ascending).
    pub fn rec_in_y(&self) -> Vec<UniPoly> {
        let dy = self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0) as usize;
        let mut out = vec![Vec::new(); dy + 1];
        for (&(a, b), c) in &self.terms {
            let v: &mut Vec<(usize, Rat)> = &mut out[b as usize];
            v.push((a as usize, c.clone()));
        }
        out.into_iter()
            .map(|v| {
                let deg = v.iter().map(|&(a, _)| a).max().unwrap_or(0);
                let mut cs = vec![Rat::zero(); deg + 1];
                for (a, c) in v {
                    cs[a] = c;
                }
                UniPoly::from_coeffs(cs)
            })
            .collect()
    }

    pub fn from_rec_in_y(rec: &[UniPoly]) -> BiPoly {
        let mut terms = Vec::new();
        for (b, c) in rec.iter().enumerate() {
            for (a, k) in c.0.iter().enumerate() {
                if !k.is_zero() {
                    terms.push(((a as u32, b as u32), k.clone()));
                }
            }
        }
        BiPoly::from_terms(terms)
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    /// Leading coefficient as a polynomial in y (a UniPoly in x).
    pub fn lc_in_y(&self) -> UniPoly {
        match self.deg_y() {
            None => UniPoly::zero(),
            Some(d) => {
                let rec = self.rec_in_y();
                rec[d as usize].clone()
            }
        }
    }

    /// Restriction to the line y = 0, as a polynomial in x.
    pub fn restrict_y0(&self) -> UniPoly {
        let deg = self
            .terms
            .keys()
            .filter(|&&(_, b)| b == 0)
            .map(|&(a, _)| a)
            .max();
        match deg {
            None => UniPoly::zero(),
            Some(d) => {
                let mut cs = vec![Rat::zero(); d as usize + 1];
                for (&(a, b), c) in &self.terms {
                    if b == 0 {
                        cs[a as usize] = c.clone();
                    }
                }
                UniPoly::from_coeffs(cs)
            }
        }
    }

    pub fn restrict_x0(&self) -> UniPoly {
        self.swap_vars().restrict_y0()
    }

    /// f(x + a, y + b), by Horner in each variable.
    pub fn translate(&self, a: &Rat, b: &Rat) -> BiPoly {
        let mut f = self.clone();
        if !a.is_zero() {
            f = f.subst_x_linear(a);
        }
        if !b.is_zero() {
            f = f.swap_vars().subst_x_linear(b).swap_vars();
        }
        f
    }

    /// f(x + a, y)
    fn subst_x_linear(&self, a: &Rat) -> BiPoly {
        let dx = self.deg_x().unwrap_or(0);
        // Horner: acc = acc*(x+a) + C_i(y), i descending
        let mut acc = BiPoly::zero();
        let shift = BiPoly::from_terms([((1, 0), Rat::one()), ((0, 0), a.clone())]);
        for i in (0..=dx).rev() {
            let ci = BiPoly::from_terms(
                self.terms
                    .iter()
                    .filter(|(&(x, _), _)| x == i)
                    .map(|(&(_, y), c)| ((0u32, y), c.clone())),
            );
            acc = acc.mul(&shift).add(&ci);
        }
        acc
    }

    /// f(x + c*y, y), the integer shear used to put projections in general
    /// position.
    pub fn shear_x_by_y(&self, c: &Rat) -> BiPoly {
        let dx = self.deg_x().unwrap_or(0);
        let mut acc = BiPoly::zero();
        let sub = BiPoly::from_terms([((1, 0), Rat::one()), ((0, 1), c.clone())]);
        for i in (0..=dx).rev() {
            let ci = BiPoly::from_terms(
                self.terms
                    .iter()
                    .filter(|(&(x, _), _)| x == i)
                    .map(|(&(_, y), c)| ((0u32, y), c.clone())),
            );
            acc = acc.mul(&sub).add(&ci);
        }
        acc
    }

    /// Lowest total degree of a term; the multiplicity of the curve at the
    /// origin of the chart.
    pub fn multiplicity_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).min()
    }

    /// Substitution (x, y) -> (x, x*y) followed by division by x^m: the first
    /// blow-up chart, where the exceptional line is x = 0.
    pub fn blowup_chart0(&self) -> (BiPoly, u32) {
        let m = self.multiplicity_at_origin().unwrap_or(0);
        (
            BiPoly {
                terms: self
                    .terms
                    .iter()
                    .map(|(&(a, b), c)| ((a + b - m, b), c.clone()))
                    .collect(),
            },
            m,
        )
    }

    /// Substitution (x, y) -> (x*y, y) followed by division by y^m: the second
    /// blow-up chart, where the exceptional line is y = 0.
    pub fn blowup_chart1(&self) -> (BiPoly, u32) {
        let m = self.multiplicity_at_origin().unwrap_or(0);
        (
            BiPoly {
                terms: self
                    .terms
                    .iter()
                    .map(|(&(a, b), c)| ((a, a + b - m), c.clone()))
                    .collect(),
            },
            m,
        )
    }

    /// Content with respect to y: gcd in Q[x] of the y-coefficients.
    pub fn content_in_y(&self) -> UniPoly {
        let rec = self.rec_in_y();
        let mut g = UniPoly::zero();
        for c in rec {
            if !c.is_zero() {
                g = g.gcd(&c);
            }
            if g.deg() == Some(0) {
                break;
            }
        }
        g
    }
}

fn pow_u32(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Determinant of a square matrix over Z[x] by fraction-free elimination.
fn det_bareiss_int(mut m: Vec<Vec<Vec<Int>>>) -> Vec<Int> {
    use super::unipoly::intpoly;
    let n = m.len();
    if n == 0 {
        return vec![Int::from(1)];
    }
    let mut negate = false;
    let mut prev: Vec<Int> = vec![Int::from(1)];
    for k in 0..n - 1 {
        if m[k][k].is_empty() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_empty()) else {
                return Vec::new();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = intpoly::sub(&intpoly::mul(&m[i][j], &m[k][k]), &intpoly::mul(&m[i][k], &m[k][j]));
                m[i][j] = if num.is_empty() { num } else { intpoly::exact_div(&num, &prev) };
            }
            m[i][k] = Vec::new();
        }
        prev = m[k][k].clone();
    }
    let mut d = std::mem::take(&mut m[n - 1][n - 1]);
    if negate {
        for c in &mut d {
            *c = -c.clone();
        }
    }
    d
}

/// Sylvester resultant eliminating y, with coefficient rows in ascending
/// order: Res(a1 y + a0, b1 y + b0) = a0 b1 - a1 b0.
pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> Result<UniPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("resultant".into()));
    }
    let fr = f.rec_in_y();
    let gr = g.rec_in_y();
    let m = fr.len() - 1;
    let n = gr.len() - 1;
    if m == 0 && n == 0 {
        return Err(Error::ConstantResultant);
    }
    if m == 0 {
        // Res = f^n
        let mut acc = UniPoly::one();
        for _ in 0..n {
            acc = acc.mul(&fr[0]);
        }
        return Ok(acc);
    }
    if n == 0 {
        let mut acc = UniPoly::one();
        for _ in 0..m {
            acc = acc.mul(&gr[0]);
        }
        return Ok(acc);
    }
    // clear denominators: scaling all f-rows by a common denominator and all
    // g-rows by another multiplies the determinant by dfr^n * dgr^m
    let scale_rows = |rec: &[UniPoly]| -> (Vec<Vec<Int>>, Int) {
        use num_integer::Integer;
        let mut den = Int::from(1);
        for c in rec {
            let (_, d) = c.scaled_int_coeffs();
            den = den.lcm(&d);
        }
        let rows = rec
            .iter()
            .map(|c| {
                c.0.iter()
                    .map(|q| q.numer() * (&den / q.denom()))
                    .collect::<Vec<Int>>()
            })
            .map(|mut v| {
                super::unipoly::intpoly::trim(&mut v);
                v
            })
            .collect();
        (rows, den)
    };
    let (fi, dfr) = scale_rows(&fr);
    let (gi, dgr) = scale_rows(&gr);
    let size = m + n;
    let mut mat = vec![vec![Vec::<Int>::new(); size]; size];
    for r in 0..n {
        for (i, c) in fi.iter().enumerate() {
            mat[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in gi.iter().enumerate() {
            mat[n + r][r + j] = c.clone();
        }
    }
    let det = det_bareiss_int(mat);
    // undo the row scaling: divide by dfr^n * dgr^m
    let mut scale = Int::from(1);
    for _ in 0..n {
        scale *= &dfr;
    }
    for _ in 0..m {
        scale *= &dgr;
    }
    Ok(UniPoly::from_coeffs(
        det.into_iter().map(|c| Rat::new(c, scale.clone())).collect(),
    ))
}

pub fn resultant_x(f: &BiPoly, g: &BiPoly) -> Result<UniPoly> {
    resultant_y(&f.swap_vars(), &g.swap_vars())
}

/// Pseudo-remainder of F by G as polynomials in y over Q[x]; any associate
/// works since the caller takes primitive parts.
fn prem_y(f: &[UniPoly], g: &[UniPoly]) -> Vec<UniPoly> {
    let dg = g.len() - 1;
    let lg = g.last().unwrap();
    let mut r: Vec<UniPoly> = f.to_vec();
    loop {
        if r.is_empty() {
            return r;
        }
        let dr = r.len() - 1;
        if dr < dg {
            return r;
        }
        let lr = r.last().unwrap().clone();
        // r := lg * r - lr * y^(dr-dg) * g; the top terms cancel
        let mut nr = vec![UniPoly::zero(); dr + 1];
        for (i, c) in r.iter().enumerate() {
            nr[i] = c.mul(lg);
        }
        for (j, c) in g.iter().enumerate() {
            let idx = j + (dr - dg);
            nr[idx] = nr[idx].sub(&c.mul(&lr));
        }
        while nr.last().map(|c| c.is_zero()).unwrap_or(false) {
            nr.pop();
        }
        debug_assert!(nr.len() < r.len());
        r = nr;
    }
}

fn pp_in_y(rec: &[UniPoly]) -> Vec<UniPoly> {
    let mut g = UniPoly::zero();
    for c in rec {
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    if g.is_zero() {
        return rec.to_vec();
    }
    rec.iter()
        .map(|c| c.exact_div(&g).expect("content divides"))
        .collect()
}

/// gcd of two bivariate polynomials (an associate of it).
pub fn gcd_bivar(f: &BiPoly, g: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let fr = f.rec_in_y();
    let gr = g.rec_in_y();
    let cont_f = f.content_in_y();
    let cont_g = g.content_in_y();
    let cont = cont_f.gcd(&cont_g);
    let mut a = pp_in_y(&fr);
    let mut b = pp_in_y(&gr);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 {
            // primitive and y-free means unit
            let one = vec![UniPoly::one()];
            return mul_rec_by_uni(&one, &cont);
        }
        let r = prem_y(&a, &b);
        if r.is_empty() {
            return mul_rec_by_uni(&pp_in_y(&b), &cont);
        }
        a = b;
        b = pp_in_y(&r);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
    }
}

fn mul_rec_by_uni(rec: &[UniPoly], u: &UniPoly) -> BiPoly {
    let scaled: Vec<UniPoly> = rec.iter().map(|c| c.mul(u)).collect();
    BiPoly::from_rec_in_y(&scaled)
}

/// True when f and g have no common factor of positive degree.
pub fn coprime_bipoly(f: &BiPoly, g: &BiPoly) -> bool {
    if f.is_zero() || g.is_zero() {
        return false;
    }
    gcd_bivar(f, g).is_constant()
}

/// True when f has no repeated factor: gcd(f, f_x, f_y) is constant.
pub fn is_squarefree(f: &BiPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    if f.is_constant() {
        return true;
    }
    let g1 = gcd_bivar(f, &f.partial_x());
    if g1.is_constant() {
        return true;
    }
    gcd_bivar(&g1, &f.partial_y()).is_constant()
}

impl std::fmt::Display for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat_int, rat};

    #[test]
    fn resultant_examples() {
        // f = y - x^2, g = y, eliminate y -> -x^2
        let f = BiPoly::from_i64_terms(&[(0, 1, 1), (2, 0, -1)]);
        let g = BiPoly::from_i64_terms(&[(0, 1, 1)]);
        let r = resultant_y(&f, &g).unwrap();
        assert_eq!(r, UniPoly::from_coeffs(vec![rat_int(0), rat_int(0), rat_int(-1)]));
        // f = y - 1, g = y + 1 -> -2
        let f = BiPoly::from_i64_terms(&[(0, 1, 1), (0, 0, -1)]);
        let g = BiPoly::from_i64_terms(&[(0, 1, 1), (0, 0, 1)]);
        assert_eq!(resultant_y(&f, &g).unwrap(), UniPoly::constant(rat_int(-2)));
        // f = g -> 0
        assert!(resultant_y(&f, &f).unwrap().is_zero());
        // both constant in y -> error
        let c = BiPoly::from_i64_terms(&[(1, 0, 1)]);
        assert!(matches!(resultant_y(&c, &c), Err(Error::ConstantResultant)));
    }

    #[test]
    fn resultant_symmetric_sign() {
        let f = BiPoly::from_i64_terms(&[(0, 2, 1), (1, 0, 1)]); // y^2 + x
        let g = BiPoly::from_i64_terms(&[(0, 1, 3), (2, 0, 1), (0, 0, 2)]);
        let rfg = resultant_y(&f, &g).unwrap();
        let rgf = resultant_y(&g, &f).unwrap();
        // Res(f,g) = (-1)^(mn) Res(g,f)
        assert_eq!(rfg, rgf);
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 1, -1)]); // x - y
        let g = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 1, 1), (0, 0, 1)]); // x + y + 1
        let prod = f.mul(&g);
        let d = gcd_bivar(&prod, &f);
        assert!(!d.is_constant());
        assert!(coprime_bipoly(&f, &g));
        assert!(!coprime_bipoly(&prod, &f));
        assert!(is_squarefree(&prod));
        assert!(!is_squarefree(&f.mul(&prod)));
        // repeated y-free factor
        let h = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 0, -2)]); // x - 2
        assert!(!is_squarefree(&h.mul(&h).mul(&g)));
        // squarefree with a y-free factor
        assert!(is_squarefree(&h.mul(&g)));
    }

    #[test]
    fn translate_and_blowup() {
        // y - x^2 at origin: multiplicity 1; chart 0 strict transform y - x
        let f = BiPoly::from_i64_terms(&[(0, 1, 1), (2, 0, -1)]);
        assert_eq!(f.multiplicity_at_origin(), Some(1));
        let (s0, m) = f.blowup_chart0();
        assert_eq!(m, 1);
        assert_eq!(s0, BiPoly::from_i64_terms(&[(0, 1, 1), (1, 0, -1)]));
        // translate: f(x+1, y+1) = y + 1 - (x+1)^2 = y - x^2 - 2x
        let t = f.translate(&rat_int(1), &rat_int(1));
        assert_eq!(
            t,
            BiPoly::from_i64_terms(&[(0, 1, 1), (2, 0, -1), (1, 0, -2)])
        );
        // shear
        let sh = BiPoly::from_i64_terms(&[(1, 0, 1)]).shear_x_by_y(&rat(1, 2));
        assert_eq!(
            sh,
            BiPoly::from_terms([((1, 0), rat_int(1)), ((0, 1), rat(1, 2))])
        );
    }

    #[test]
    fn multiplicity_of_node() {
        // 4xy - x^3 - y^3 - 3xy^2 - 3x^2y at the origin: multiplicity 2
        let f = BiPoly::from_i64_terms(&[
            (1, 1, 4),
            (3, 0, -1),
            (0, 3, -1),
            (1, 2, -3),
            (2, 1, -3),
        ]);
        assert_eq!(f.multiplicity_at_origin(), Some(2));
    }
}
