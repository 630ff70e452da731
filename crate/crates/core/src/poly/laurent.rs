//! Bivariate Laurent polynomials with exact rational coefficients.

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::polygon::LatticePolygon;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Finite support map from exponent pairs to nonzero coefficients. The zero
/// polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), Rat)>) -> Self {
        let mut map: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for (e, c) in terms {
            let entry = map.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: map }
    }

    /// Convenience constructor from integer-coefficient terms.
    pub fn from_i64_terms(terms: &[(i64, i64, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(a, b, c)| ((a, b), Rat::from_integer(Int::from(c)))),
        )
    }

    pub fn monomial(e: (i64, i64), c: Rat) -> Self {
        Self::from_terms([(e, c)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.terms.keys().copied().collect()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (*e, c.clone())),
        )
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms: Vec<((i64, i64), Rat)> = Vec::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                terms.push(((e1.0 + e2.0, e1.1 + e2.1), c1 * c2));
            }
        }
        LaurentPoly::from_terms(terms)
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect() }
    }

    /// Multiplication by the monomial c * s^a t^b.
    pub fn monomial_scale(&self, e: (i64, i64), c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| ((k.0 + e.0, k.1 + e.1), v * c))
                .collect(),
        }
    }

    pub fn sub_rat(&self, c: &Rat) -> LaurentPoly {
        self.sub(&LaurentPoly::monomial((0, 0), c.clone()))
    }

    /// Exact evaluation at a torus point (both coordinates nonzero).
    pub fn eval_torus(&self, s: &Rat, t: &Rat) -> Rat {
        assert!(!s.is_zero() && !t.is_zero(), "torus point required");
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * rat_pow(s, a) * rat_pow(t, b);
        }
        acc
    }

    pub fn min_exps(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            return None;
        }
        let a = self.terms.keys().map(|e| e.0).min().unwrap();
        let b = self.terms.keys().map(|e| e.1).min().unwrap();
        Some((a, b))
    }

    /// Divides out the monomial s^a t^b with (a, b) the coordinatewise
    /// minimum of the support; returns the shifted polynomial and the shift.
    pub fn strip_monomial(&self) -> (LaurentPoly, (i64, i64)) {
        match self.min_exps() {
            None => (LaurentPoly::zero(), (0, 0)),
            Some((a, b)) => (
                LaurentPoly {
                    terms: self
                        .terms
                        .iter()
                        .map(|(e, c)| ((e.0 - a, e.1 - b), c.clone()))
                        .collect(),
                },
                (a, b),
            ),
        }
    }

    /// min over the support of the pairing with w.
    pub fn trop_eval(&self, w: (i64, i64)) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("trop_eval".into()));
        }
        Ok(self
            .terms
            .keys()
            .map(|&(a, b)| a * w.0 + b * w.1)
            .min()
            .unwrap())
    }

    /// Terms achieving the tropical minimum in direction w.
    pub fn init_form(&self, w: (i64, i64)) -> Result<LaurentPoly> {
        let m = self.trop_eval(w)?;
        Ok(LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(a, b), _)| a * w.0 + b * w.1 == m)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        })
    }

    pub fn newton_polygon(&self) -> Result<LatticePolygon> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("newton_polygon".into()));
        }
        LatticePolygon::hull(&self.support())
    }

    /// Applies the exponent substitution alpha -> M * alpha for a unimodular
    /// 2x2 integer matrix M; a torus automorphism on the polynomial side.
    pub fn substitute_monomial(&self, m: [[i64; 2]; 2]) -> LaurentPoly {
        debug_assert_eq!((m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs(), 1);
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| {
                    (
                        (m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|&(a, b)| a < 0 || b < 0)
    }

    /// Total degree, for polynomials with nonnegative exponents.
    pub fn total_degree(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("total_degree".into()));
        }
        if self.has_negative_exponent() {
            return Err(Error::NegativeExponent("total_degree".into()));
        }
        Ok(self.terms.keys().map(|&(a, b)| a + b).max().unwrap())
    }
}

pub fn rat_pow(x: &Rat, e: i64) -> Rat {
    use num_traits::One;
    if e == 0 {
        return Rat::one();
    }
    let mut base = if e > 0 { x.clone() } else { Rat::one() / x };
    let mut e = e.unsigned_abs();
    let mut acc = Rat::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", crate::arith::rat_to_string(c))?;
            if a != 0 {
                write!(f, "*s^{a}")?;
            }
            if b != 0 {
                write!(f, "*t^{b}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    #[test]
    fn trop_eval_examples() {
        let f = LaurentPoly::from_i64_terms(&[(0, 0, 1), (1, 0, 1)]); // 1 + s
        assert_eq!(f.trop_eval((1, 0)).unwrap(), 0);
        let f = LaurentPoly::from_i64_terms(&[(2, 0, 1), (3, 0, 1), (0, 2, 1)]);
        assert_eq!(f.trop_eval((-1, -1)).unwrap(), -3);
        let f = LaurentPoly::from_i64_terms(&[(2, -1, 1)]); // s^2 t^-1
        assert_eq!(f.trop_eval((5, 7)).unwrap(), 3);
        assert!(LaurentPoly::zero().trop_eval((1, 1)).is_err());
    }

    #[test]
    fn newton_polygons() {
        let c = LaurentPoly::from_i64_terms(&[(0, 0, 3)]);
        let p = c.newton_polygon().unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.vertices(), &[(0, 0)]);
        // b1 st + b2 s + b3 t
        let f = LaurentPoly::from_i64_terms(&[(1, 1, 1), (1, 0, 2), (0, 1, 3)]);
        let p = f.newton_polygon().unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.vertices().len(), 3);
        let f = LaurentPoly::from_i64_terms(&[(0, 0, 1), (2, 0, 1)]); // 1 + s^2
        let p = f.newton_polygon().unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.vertices(), &[(0, 0), (2, 0)]);
    }

    #[test]
    fn init_forms() {
        let f = LaurentPoly::from_i64_terms(&[(0, 0, -1), (1, 0, -1), (0, 1, 1)]);
        let init = f.init_form((0, -1)).unwrap();
        assert_eq!(init, LaurentPoly::from_i64_terms(&[(0, 1, 1)]));
        let init = f.init_form((1, 1)).unwrap();
        assert_eq!(init, LaurentPoly::from_i64_terms(&[(0, 0, -1)]));
    }

    #[test]
    fn strip_and_eval() {
        let f = LaurentPoly::from_i64_terms(&[(2, -1, 5), (3, 0, 7)]);
        let (g, shift) = f.strip_monomial();
        assert_eq!(shift, (2, -1));
        assert_eq!(g, LaurentPoly::from_i64_terms(&[(0, 0, 5), (1, 1, 7)]));
        let v = f.eval_torus(&rat_int(2), &rat_int(3));
        // 5*4/3 + 7*8 = 20/3 + 56
        assert_eq!(v, crate::arith::rat(20 + 168, 3));
    }
}
