//! Dense univariate polynomials over the rationals.

use crate::arith::{divisors_bounded, Int, Rat};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Coefficients in ascending order; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Rat>);

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(vec![Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = UniPoly(vec![c]);
        p.trim();
        p
    }

    pub fn from_coeffs(cs: Vec<Rat>) -> Self {
        let mut p = UniPoly(cs);
        p.trim();
        p
    }

    pub fn monomial(deg: usize, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rat::zero(); deg + 1];
        v[deg] = c;
        UniPoly(v)
    }

    fn trim(&mut self) {
        while self.0.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn lc(&self) -> &Rat {
        self.0.last().expect("lc of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + other.coeff(i));
        }
        UniPoly::from_coeffs(v)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(v)
    }

    pub fn mul_xpow(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rat::zero(); k];
        v.extend(self.0.iter().cloned());
        UniPoly(v)
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divrem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.deg().unwrap();
        let mut r = self.clone();
        let mut q = UniPoly::zero();
        while let Some(dr) = r.deg() {
            if dr < dd {
                break;
            }
            let c = r.lc() / div.lc();
            let shift = dr - dd;
            let term = UniPoly::monomial(shift, c);
            r = r.sub(&term.mul(div));
            q = q.add(&term);
            if r.deg() == Some(dr) {
                // defensive: cancellation must reduce the degree
                r.0.pop();
                r.trim();
            }
        }
        (q, r)
    }

    pub fn exact_div(&self, div: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(div);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = Rat::one() / self.lc();
        self.scale(&inv)
    }

    /// Monic gcd, computed by the primitive pseudo-remainder sequence over
    /// the integers to keep coefficients small.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = intpoly::pp(self.primitive_int_coeffs());
        let mut b = intpoly::pp(other.primitive_int_coeffs());
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = intpoly::prem(&a, &b);
            a = b;
            b = intpoly::pp(r);
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
        }
        UniPoly::from_coeffs(a.into_iter().map(Rat::from_integer).collect()).monic()
    }

    pub fn derivative(&self) -> UniPoly {
        if self.0.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from_integer(Int::from(i as i64 + 1)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Removes the x^k factor; returns (self / x^k, k).
    pub fn strip_x(&self) -> (UniPoly, usize) {
        if self.is_zero() {
            return (UniPoly::zero(), 0);
        }
        let k = self.0.iter().take_while(|c| c.is_zero()).count();
        (UniPoly(self.0[k..].to_vec()), k)
    }

    /// self / gcd(self, self'): same roots, all simple.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.deg() == Some(0) {
            return self.monic();
        }
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Order of vanishing at x = r (0 when f(r) != 0). Errors out on zero input.
    pub fn ord_at(&self, r: &Rat) -> usize {
        assert!(!self.is_zero(), "ord_at of zero polynomial");
        let lin = UniPoly::from_coeffs(vec![-r.clone(), Rat::one()]);
        let mut f = self.clone();
        let mut k = 0;
        loop {
            if !f.eval(r).is_zero() {
                return k;
            }
            f = f.exact_div(&lin).expect("root divides");
            k += 1;
        }
    }

    /// Primitive integer version: clears denominators and content.
    pub(crate) fn primitive_int_coeffs(&self) -> Vec<Int> {
        let mut den = Int::one();
        for c in &self.0 {
            den = den.lcm(c.denom());
        }
        let ints: Vec<Int> = self.0.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut g = Int::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Integer coefficients after clearing denominators, together with the
    /// common denominator: self = (returned poly) / den.
    pub(crate) fn scaled_int_coeffs(&self) -> (Vec<Int>, Int) {
        let mut den = Int::one();
        for c in &self.0 {
            den = den.lcm(c.denom());
        }
        let ints: Vec<Int> = self.0.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        (ints, den)
    }

    /// All rational roots with multiplicities.
    pub fn rational_roots(&self) -> Vec<(Rat, usize)> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut out: Vec<(Rat, usize)> = Vec::new();
        let (mut f, k) = self.strip_x();
        if k > 0 {
            out.push((Rat::zero(), k));
        }
        if f.deg() == Some(0) {
            return out;
        }
        let ints = f.primitive_int_coeffs();
        let a0 = ints[0].clone();
        let an = ints.last().unwrap().clone();
        let cap = 4096;
        let (Some(ps), Some(qs)) = (divisors_bounded(&a0, cap), divisors_bounded(&an, cap)) else {
            // too many divisor candidates; accept linear polynomials only
            if ints.len() == 2 {
                let r = Rat::new(-ints[0].clone(), ints[1].clone());
                out.push((r, 1));
            }
            out.sort_by(|a, b| a.0.cmp(&b.0));
            return out;
        };
        // divisibility filters on the primitive integer form: if p/q is a
        // root then (qx - p) divides it, so (q - p) | F(1), (q + p) | F(-1)
        let h1: Int = ints.iter().sum();
        let hm1: Int = ints
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c.clone() })
            .sum();
        for p in &ps {
            for q in &qs {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let pn = p * Int::from(sign);
                    if !h1.is_zero() {
                        let d = q - &pn;
                        if !d.is_zero() && !(&h1 % &d).is_zero() {
                            continue;
                        }
                    }
                    if !hm1.is_zero() {
                        let d = q + &pn;
                        if !d.is_zero() && !(&hm1 % &d).is_zero() {
                            continue;
                        }
                    }
                    let cand = Rat::new(pn, q.clone());
                    if f.eval(&cand).is_zero() {
                        let mult = f.ord_at(&cand);
                        out.push((cand.clone(), mult));
                        let lin = UniPoly::from_coeffs(vec![-cand, Rat::one()]);
                        for _ in 0..mult {
                            f = f.exact_div(&lin).unwrap();
                        }
                        if f.deg() == Some(0) {
                            out.sort_by(|a, b| a.0.cmp(&b.0));
                            return out;
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Dense integer polynomials: the fraction-free workhorse behind gcds and
/// resultants. Vectors have no trailing zeros; the empty vector is zero.
pub(crate) mod intpoly {
    use crate::arith::Int;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};

    pub fn trim(v: &mut Vec<Int>) {
        while v.last().map(Zero::is_zero).unwrap_or(false) {
            v.pop();
        }
    }

    pub fn mul(a: &[Int], b: &[Int]) -> Vec<Int> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Int::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[Int], b: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] = x.clone();
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(&mut out);
        out
    }

    /// Exact division in Z[x]; panics when the division is not exact.
    pub fn exact_div(a: &[Int], b: &[Int]) -> Vec<Int> {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.is_empty() {
            return Vec::new();
        }
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lb = b.last().unwrap();
        let mut q = vec![Int::zero(); a.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let dr = r.len() - 1;
            let (c, rem) = r.last().unwrap().div_rem(lb);
            debug_assert!(rem.is_zero(), "exact polynomial division");
            let shift = dr - db;
            q[shift] = c.clone();
            for (j, y) in b.iter().enumerate() {
                let t = y * &c;
                r[j + shift] -= t;
            }
            trim(&mut r);
        }
        debug_assert!(r.is_empty(), "exact polynomial division leaves no remainder");
        q
    }

    /// Primitive part with positive leading coefficient.
    pub fn pp(mut v: Vec<Int>) -> Vec<Int> {
        trim(&mut v);
        if v.is_empty() {
            return v;
        }
        let mut g = Int::zero();
        for c in &v {
            g = g.gcd(c);
        }
        if v.last().unwrap().is_negative() {
            g = -g;
        }
        v.into_iter().map(|c| c / &g).collect()
    }

    /// Pseudo-remainder: an associate of (lc_b^k a) mod b.
    pub fn prem(a: &[Int], b: &[Int]) -> Vec<Int> {
        let db = b.len() - 1;
        let lb = b.last().unwrap();
        let mut r = a.to_vec();
        loop {
            trim(&mut r);
            if r.len() <= db || r.is_empty() {
                return r;
            }
            let dr = r.len() - 1;
            let lr = r.last().unwrap().clone();
            let mut nr = vec![Int::zero(); dr + 1];
            for (i, x) in r.iter().enumerate() {
                nr[i] = x * lb;
            }
            for (j, y) in b.iter().enumerate() {
                let t = y * &lr;
                nr[j + (dr - db)] -= t;
            }
            trim(&mut nr);
            debug_assert!(nr.len() < r.len());
            r = nr;
        }
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*x^{i}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let f = p(&[-2, 0, 1]); // x^2 - 2
        let g = p(&[1, 1]); // x + 1
        let (q, r) = f.divrem(&g);
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[-1]));
        let a = p(&[1, 2, 1]); // (x+1)^2
        let b = p(&[1, 1]).mul(&p(&[2, 1]));
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn roots_with_multiplicity() {
        // (x - 1/2)^2 (x + 3) x
        let f = p(&[0, 1])
            .mul(&UniPoly::from_coeffs(vec![rat(-1, 2), rat_int(1)]))
            .mul(&UniPoly::from_coeffs(vec![rat(-1, 2), rat_int(1)]))
            .mul(&p(&[3, 1]));
        let roots = f.rational_roots();
        assert_eq!(
            roots,
            vec![(rat_int(-3), 1), (rat_int(0), 1), (rat(1, 2), 2)]
        );
    }

    #[test]
    fn no_rational_roots() {
        let f = p(&[2, 0, 1]); // x^2 + 2
        assert!(f.rational_roots().is_empty());
    }

    #[test]
    fn ord_and_squarefree() {
        let f = p(&[1, 1]).mul(&p(&[1, 1])).mul(&p(&[-2, 1]));
        assert_eq!(f.ord_at(&rat_int(-1)), 2);
        assert_eq!(f.ord_at(&rat_int(2)), 1);
        assert_eq!(f.ord_at(&rat_int(5)), 0);
        let sf = f.squarefree_part();
        assert_eq!(sf, p(&[1, 1]).mul(&p(&[-2, 1])).monic());
    }
}
