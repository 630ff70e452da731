//! Ternary homogeneous polynomials and rational projective points. Charts
//! use the coordinate order (s : t : u), with u the homogenizing variable.

use super::bipoly::BiPoly;
use super::laurent::LaurentPoly;
use super::unipoly::UniPoly;
use crate::arith::Rat;
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Exponents (a, b, c) stand for s^a t^b u^c with a + b + c = degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoly {
    terms: BTreeMap<(u32, u32, u32), Rat>,
    degree: u32,
}

/// Which coordinate is set to 1 when passing to an affine chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// u = 1; chart variables (s, t)
    U,
    /// t = 1; chart variables (s, u)
    T,
    /// s = 1; chart variables (t, u)
    S,
}

impl HomPoly {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32, u32), Rat)>) -> Result<Self> {
        let mut map: BTreeMap<(u32, u32, u32), Rat> = BTreeMap::new();
        for (e, c) in terms {
            let entry = map.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degree = 0;
        for (i, &(a, b, c)) in map.keys().enumerate() {
            let d = a + b + c;
            if i == 0 {
                degree = d;
            } else if d != degree {
                return Err(Error::InvalidInput("non-homogeneous term set".into()));
            }
        }
        Ok(HomPoly { terms: map, degree })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Rat)> {
        self.terms.iter()
    }

    /// The coordinate u itself: the line at infinity.
    pub fn coordinate_u() -> HomPoly {
        HomPoly::from_terms([((0, 0, 1), Rat::one())]).unwrap()
    }

    /// Homogenization of a polynomial with nonnegative exponents; the degree
    /// is the total degree of the input.
    pub fn homogenize(f: &LaurentPoly) -> Result<(HomPoly, u32)> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial("homogenize".into()));
        }
        if f.has_negative_exponent() {
            return Err(Error::NegativeExponent(
                "homogenize (multiply by a monomial to clear denominators)".into(),
            ));
        }
        let d = f.total_degree()? as u32;
        let hom = HomPoly::from_terms(f.terms().map(|(&(a, b), c)| {
            let (a, b) = (a as u32, b as u32);
            ((a, b, d - a - b), c.clone())
        }))?;
        Ok((hom, d))
    }

    /// Restriction to an affine chart, as a bivariate polynomial in the two
    /// remaining coordinates (in (s,t,u) order with the chart variable cut).
    pub fn dehomogenize(&self, chart: Chart) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&(a, b, c), k)| {
            let e = match chart {
                Chart::U => (a, b),
                Chart::T => (a, c),
                Chart::S => (b, c),
            };
            (e, k.clone())
        }))
    }

    /// Setting u = 0: the binary form cutting the points at infinity, as a
    /// polynomial in s with t = 1 plus the multiplicity of the root (1:0:0).
    /// Returns None when the restriction vanishes identically (u divides).
    pub fn restrict_infinity(&self) -> Option<(UniPoly, u32)> {
        let at_inf: Vec<((u32, u32), Rat)> = self
            .terms
            .iter()
            .filter(|(&(_, _, c), _)| c == 0)
            .map(|(&(a, b, _), k)| ((a, b), k.clone()))
            .collect();
        if at_inf.is_empty() {
            return None;
        }
        // form of degree d in (s, t); root at (1:0:0) has order = min b
        let min_b = at_inf.iter().map(|&((_, b), _)| b).min().unwrap();
        let max_a = at_inf.iter().map(|&((a, _), _)| a).max().unwrap() as usize;
        let mut cs = vec![Rat::zero(); max_a + 1];
        for ((a, _), k) in &at_inf {
            cs[*a as usize] += k.clone();
        }
        Some((UniPoly::from_coeffs(cs), min_b))
    }

    pub fn eval_is_zero(&self, p: &ProjPoint) -> bool {
        let mut acc = Rat::zero();
        for (&(a, b, c), k) in &self.terms {
            acc += k * powr(&p.0[0], a) * powr(&p.0[1], b) * powr(&p.0[2], c);
        }
        acc.is_zero()
    }

    /// Order of vanishing at a point: the lowest total degree of the local
    /// expansion after translating the point to a chart origin.
    pub fn multiplicity_at(&self, p: &ProjPoint) -> u32 {
        let (chart, (x, y)) = p.chart_coords();
        let local = self.dehomogenize(chart).translate(&x, &y);
        local.multiplicity_at_origin().unwrap_or(0)
    }
}

fn powr(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// A rational point of the projective plane, coordinates (s : t : u),
/// normalized so the last nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint(pub [Rat; 3]);

impl ProjPoint {
    pub fn new(s: Rat, t: Rat, u: Rat) -> Result<Self> {
        if s.is_zero() && t.is_zero() && u.is_zero() {
            return Err(Error::InvalidInput("projective point (0:0:0)".into()));
        }
        let mut v = [s, t, u];
        let pivot = (0..3).rev().find(|&i| !v[i].is_zero()).unwrap();
        let inv = Rat::one() / v[pivot].clone();
        for c in v.iter_mut() {
            *c *= &inv;
        }
        Ok(ProjPoint(v))
    }

    pub fn from_i64(s: i64, t: i64, u: i64) -> Self {
        ProjPoint::new(
            Rat::from_integer(s.into()),
            Rat::from_integer(t.into()),
            Rat::from_integer(u.into()),
        )
        .unwrap()
    }

    pub fn affine(s: Rat, t: Rat) -> Self {
        ProjPoint::new(s, t, Rat::one()).unwrap()
    }

    /// The standard chart containing the point, with the point's coordinates
    /// in it. Uses the normalization pivot, so the choice is canonical.
    pub fn chart_coords(&self) -> (Chart, (Rat, Rat)) {
        if !self.0[2].is_zero() {
            let inv = Rat::one() / self.0[2].clone();
            (Chart::U, (&self.0[0] * &inv, &self.0[1] * &inv))
        } else if !self.0[1].is_zero() {
            let inv = Rat::one() / self.0[1].clone();
            (Chart::T, (&self.0[0] * &inv, &self.0[2] * &inv))
        } else {
            let inv = Rat::one() / self.0[0].clone();
            (Chart::S, (&self.0[1] * &inv, &self.0[2] * &inv))
        }
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}:{}:{})",
            crate::arith::rat_to_string(&self.0[0]),
            crate::arith::rat_to_string(&self.0[1]),
            crate::arith::rat_to_string(&self.0[2])
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn homogenize_examples() {
        // -1 - s + t -> -u - s + t, degree 1
        let f = LaurentPoly::from_i64_terms(&[(0, 0, -1), (1, 0, -1), (0, 1, 1)]);
        let (h, d) = HomPoly::homogenize(&f).unwrap();
        assert_eq!(d, 1);
        let expect = HomPoly::from_terms([
            ((0, 0, 1), rat_int(-1)),
            ((1, 0, 0), rat_int(-1)),
            ((0, 1, 0), rat_int(1)),
        ])
        .unwrap();
        assert_eq!(h, expect);
        // 2 - s t -> 2u^2 - st, degree 2
        let f = LaurentPoly::from_i64_terms(&[(0, 0, 2), (1, 1, -1)]);
        let (h, d) = HomPoly::homogenize(&f).unwrap();
        assert_eq!(d, 2);
        assert_eq!(
            h,
            HomPoly::from_terms([((0, 0, 2), rat_int(2)), ((1, 1, 0), rat_int(-1))]).unwrap()
        );
        // s -> s, degree 1
        let f = LaurentPoly::from_i64_terms(&[(1, 0, 1)]);
        let (h, d) = HomPoly::homogenize(&f).unwrap();
        assert_eq!(d, 1);
        assert_eq!(h, HomPoly::from_terms([((1, 0, 0), rat_int(1))]).unwrap());
        // negative exponents rejected
        let f = LaurentPoly::from_i64_terms(&[(-1, 0, 1)]);
        assert!(HomPoly::homogenize(&f).is_err());
        // dehomogenizing at u = 1 recovers the input
        let f = LaurentPoly::from_i64_terms(&[(0, 0, 2), (1, 1, -1), (2, 0, 5)]);
        let (h, _) = HomPoly::homogenize(&f).unwrap();
        assert_eq!(h.dehomogenize(Chart::U).to_laurent(), f);
    }

    #[test]
    fn proj_point_normalization() {
        let p = ProjPoint::new(rat_int(2), rat_int(4), rat_int(2)).unwrap();
        assert_eq!(p.0, [rat_int(1), rat_int(2), rat_int(1)]);
        let q = ProjPoint::new(rat_int(0), rat(3, 2), rat_int(0)).unwrap();
        assert_eq!(q.0, [rat_int(0), rat_int(1), rat_int(0)]);
        assert!(ProjPoint::new(rat_int(0), rat_int(0), rat_int(0)).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        // homogenization of 4st - s^3 - t^3 - 3st^2 - 3s^2t at (0:0:1) -> 2
        let f = LaurentPoly::from_i64_terms(&[
            (1, 1, 4),
            (3, 0, -1),
            (0, 3, -1),
            (1, 2, -3),
            (2, 1, -3),
        ]);
        let (h, _) = HomPoly::homogenize(&f).unwrap();
        assert_eq!(h.multiplicity_at(&ProjPoint::from_i64(0, 0, 1)), 2);
        // a line through p has multiplicity 1
        let line = LaurentPoly::from_i64_terms(&[(1, 0, 1), (0, 1, -1)]); // s - t
        let (h, _) = HomPoly::homogenize(&line).unwrap();
        assert_eq!(h.multiplicity_at(&ProjPoint::from_i64(2, 2, 1)), 1);
        // F(p) != 0 -> 0
        assert_eq!(h.multiplicity_at(&ProjPoint::from_i64(1, 2, 1)), 0);
        // invariance under moving the point to another chart
        let (h3, _) = HomPoly::homogenize(&LaurentPoly::from_i64_terms(&[
            (0, 0, -1),
            (1, 0, -1),
            (0, 1, 1),
        ]))
        .unwrap();
        // (1:1:0) is at infinity on -u - s + t... check: -0 -1 + 1 = 0
        assert_eq!(h3.multiplicity_at(&ProjPoint::from_i64(1, 1, 0)), 1);
    }

    #[test]
    fn infinity_restriction() {
        // F2 = -u^2 + tu - s^2: at u=0 the form -s^2; triple root structure
        let f = LaurentPoly::from_i64_terms(&[(0, 0, -1), (0, 1, 1), (2, 0, -1)]);
        let (h, _) = HomPoly::homogenize(&f).unwrap();
        let (form, at_sdir) = h.restrict_infinity().unwrap();
        assert_eq!(form, UniPoly::from_coeffs(vec![rat_int(0), rat_int(0), rat_int(-1)]));
        assert_eq!(at_sdir, 0);
        // u itself restricts to nothing
        assert!(HomPoly::coordinate_u().restrict_infinity().is_none());
    }
}
