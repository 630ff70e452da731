//! Gcd computations in (Q[s]/(q))[t] with dynamic splitting of the modulus.
//!
//! `q` is monic and squarefree, so Q[s]/(q) is a product of fields. Whenever a
//! leading or trailing coefficient turns out to be a zero divisor, the modulus
//! splits through a gcd and the computation continues on each factor. This
//! decides, exactly and without factoring into irreducibles, whether a family
//! of curves has a common root above some (possibly irrational) root of `q`.

use super::unipoly::UniPoly;
use num_traits::One;

/// Extended gcd: returns (g, u) with u*a = g mod b, g = gcd(a, b) monic.
fn half_ext_gcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut u0 = UniPoly::one();
    let mut u1 = UniPoly::zero();
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let u = u0.sub(&q.mul(&u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u;
    }
    if r0.is_zero() {
        return (UniPoly::zero(), UniPoly::zero());
    }
    let inv_lc = crate::arith::Rat::one() / r0.lc();
    (r0.scale(&inv_lc), u0.scale(&inv_lc))
}

enum Unit {
    Inverse(UniPoly),
    Zero,
    Split(UniPoly, UniPoly),
}

/// Classifies `a` in Q[s]/(q): invertible (with inverse), zero, or a zero
/// divisor that splits the modulus.
fn invert_or_split(a: &UniPoly, q: &UniPoly) -> Unit {
    let (_, a) = a.divrem(q);
    if a.is_zero() {
        return Unit::Zero;
    }
    let (g, u) = half_ext_gcd(&a, q);
    match g.deg() {
        Some(0) => {
            let (_, u) = u.divrem(q);
            Unit::Inverse(u)
        }
        _ => {
            let rest = q.exact_div(&g).expect("gcd divides modulus");
            Unit::Split(g, rest.monic())
        }
    }
}

type TPoly = Vec<UniPoly>;

fn reduce_tpoly(p: &TPoly, q: &UniPoly) -> TPoly {
    let mut out: TPoly = p.iter().map(|c| c.divrem(q).1).collect();
    while out.last().map(|c| c.is_zero()).unwrap_or(false) {
        out.pop();
    }
    out
}

fn tdeg(p: &TPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

fn tpoly_sub_scaled_shift(a: &TPoly, b: &TPoly, c: &UniPoly, shift: usize, q: &UniPoly) -> TPoly {
    let n = a.len().max(b.len() + shift);
    let mut out = vec![UniPoly::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        out[i] = ai.clone();
    }
    for (j, bj) in b.iter().enumerate() {
        let prod = bj.mul(c).divrem(q).1;
        out[j + shift] = out[j + shift].sub(&prod).divrem(q).1;
    }
    while out.last().map(|x| x.is_zero()).unwrap_or(false) {
        out.pop();
    }
    out
}

/// Outcome on one branch of the modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum BranchGcd {
    /// Degree in t of the common gcd of the inputs above every root of the
    /// branch (after dividing out all powers of t when stripping was asked).
    Deg(usize),
    /// Every input vanishes identically on this branch.
    IdenticallyZero,
}

/// For each branch of the (monic, squarefree) modulus, the degree in t of the
/// gcd of `polys`. With `strip_t`, powers of t are divided out first, so a
/// positive reported degree certifies a common root with t != 0.
pub(crate) fn common_gcd_branches(
    polys: &[TPoly],
    modulus: &UniPoly,
    strip_t: bool,
) -> Vec<(UniPoly, BranchGcd)> {
    let mut results = Vec::new();
    let mut tasks: Vec<UniPoly> = vec![modulus.monic()];
    'task: while let Some(q) = tasks.pop() {
        if q.deg() == Some(0) {
            continue;
        }
        let mut list: Vec<TPoly> = polys.iter().map(|p| reduce_tpoly(p, &q)).collect();
        list.retain(|p| !p.is_empty());
        if list.is_empty() {
            results.push((q, BranchGcd::IdenticallyZero));
            continue;
        }
        // fold gcds pairwise
        let mut g = list[0].clone();
        for p in &list[1..] {
            let mut a = g.clone();
            let mut b = p.clone();
            loop {
                a = reduce_tpoly(&a, &q);
                b = reduce_tpoly(&b, &q);
                if b.is_empty() {
                    break;
                }
                if a.is_empty() {
                    std::mem::swap(&mut a, &mut b);
                    break;
                }
                if tdeg(&b) > tdeg(&a) {
                    std::mem::swap(&mut a, &mut b);
                }
                match invert_or_split(b.last().unwrap(), &q) {
                    Unit::Zero => {
                        b.pop();
                    }
                    Unit::Split(q1, q2) => {
                        tasks.push(q1);
                        tasks.push(q2);
                        continue 'task;
                    }
                    Unit::Inverse(inv) => {
                        // full remainder of a by b
                        let mut r = a.clone();
                        loop {
                            r = reduce_tpoly(&r, &q);
                            let (Some(dr), Some(db)) = (tdeg(&r), tdeg(&b)) else {
                                break;
                            };
                            if dr < db {
                                break;
                            }
                            let c = r.last().unwrap().mul(&inv).divrem(&q).1;
                            r = tpoly_sub_scaled_shift(&r, &b, &c, dr - db, &q);
                            if tdeg(&r) == Some(dr) {
                                r.pop(); // defensive trim
                            }
                        }
                        a = b;
                        b = r;
                    }
                }
            }
            g = a;
        }
        // normalize: unit leading coefficient so the degree is uniform
        // across the residue fields of the branch
        loop {
            g = reduce_tpoly(&g, &q);
            if g.is_empty() {
                results.push((q, BranchGcd::IdenticallyZero));
                continue 'task;
            }
            match invert_or_split(g.last().unwrap(), &q) {
                Unit::Zero => {
                    g.pop();
                }
                Unit::Split(q1, q2) => {
                    tasks.push(q1);
                    tasks.push(q2);
                    continue 'task;
                }
                Unit::Inverse(_) => break,
            }
        }
        if !strip_t {
            results.push((q.clone(), BranchGcd::Deg(g.len() - 1)));
            continue 'task;
        }
        // strip powers of t, splitting when a trailing coefficient is a
        // zero divisor
        loop {
            let lead_zeros = g.iter().take_while(|c| c.is_zero()).count();
            g.drain(..lead_zeros);
            if g.is_empty() {
                // gcd was a pure power of t: no nonzero root
                results.push((q, BranchGcd::Deg(0)));
                continue 'task;
            }
            match invert_or_split(&g[0], &q) {
                Unit::Zero => {
                    g[0] = UniPoly::zero();
                }
                Unit::Split(q1, q2) => {
                    tasks.push(q1);
                    tasks.push(q2);
                    continue 'task;
                }
                Unit::Inverse(_) => {
                    results.push((q.clone(), BranchGcd::Deg(g.len() - 1)));
                    continue 'task;
                }
            }
        }
    }
    results
}

/// True iff some branch reports a common root (degree >= 1 after stripping
/// when asked, or identically zero inputs).
pub(crate) fn any_common_root(polys: &[TPoly], modulus: &UniPoly, strip_t: bool) -> Option<UniPoly> {
    for (branch, out) in common_gcd_branches(polys, modulus, strip_t) {
        match out {
            BranchGcd::Deg(d) if d >= 1 => return Some(branch),
            BranchGcd::IdenticallyZero => return Some(branch),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn splits_on_zero_divisors() {
        // modulus (s-1)(s-2); f = t - s, g = t - 1.
        // Above s=1 both vanish at t=1; above s=2 no common root.
        let q = p(&[-1, 1]).mul(&p(&[-2, 1]));
        let f = vec![p(&[0, -1]), p(&[1])]; // -s + t
        let g = vec![p(&[-1]), p(&[1])]; // -1 + t
        let res = common_gcd_branches(&[f, g], &q, true);
        assert_eq!(res.len(), 2);
        let degs: Vec<_> = res.iter().map(|(m, g)| (m.deg().unwrap(), g.clone())).collect();
        assert!(degs.contains(&(1, BranchGcd::Deg(1))));
        assert!(degs.contains(&(1, BranchGcd::Deg(0))));
    }

    #[test]
    fn irrational_common_root_is_seen() {
        // modulus s^2 - 2 (irrational roots); f = g = t - s
        let q = p(&[-2, 0, 1]);
        let f = vec![p(&[0, -1]), p(&[1])];
        let res = common_gcd_branches(&[f.clone(), f], &q, true);
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].1, BranchGcd::Deg(1));
        assert!(any_common_root(
            &[vec![p(&[0, -1]), p(&[1])], vec![p(&[0, -1]), p(&[1])]],
            &q,
            true
        )
        .is_some());
    }

    #[test]
    fn t_power_stripping() {
        // f = t^2 (t - s), g = t (t - s): stripped gcd has degree 1
        let q = p(&[-3, 1]); // s = 3
        let f = vec![UniPoly::zero(), UniPoly::zero(), p(&[0, -1]), p(&[1])];
        let g = vec![UniPoly::zero(), p(&[0, -1]), p(&[1])];
        let res = common_gcd_branches(&[f.clone(), g.clone()], &q, true);
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].1, BranchGcd::Deg(1));
        // without stripping the gcd has degree 2
        let res = common_gcd_branches(&[f, g], &q, false);
        assert_eq!(res[0].1, BranchGcd::Deg(2));
        // pure power of t strips to no nonzero root
        let f = vec![UniPoly::zero(), p(&[1])]; // t
        let g = vec![UniPoly::zero(), UniPoly::zero(), p(&[1])]; // t^2
        let res = common_gcd_branches(&[f, g], &q, true);
        assert_eq!(res[0].1, BranchGcd::Deg(0));
    }

    #[test]
    fn no_common_root() {
        let q = p(&[-5, 1]);
        let f = vec![p(&[1]), p(&[1])]; // t + 1
        let g = vec![p(&[-1]), p(&[1])]; // t - 1
        let res = common_gcd_branches(&[f, g], &q, true);
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].1, BranchGcd::Deg(0));
    }

    #[test]
    fn mixed_degree_split_on_lead() {
        // f = (s-1) t^2 + t: above s=1 the gcd computation must drop degree
        let q = p(&[-1, 1]).mul(&p(&[-4, 1]));
        let f = vec![UniPoly::zero(), p(&[1]), p(&[-1, 1])];
        let g = vec![UniPoly::zero(), p(&[1])]; // t
        let res = common_gcd_branches(&[f, g], &q, false);
        // gcd = t on every branch
        for (_, out) in res {
            assert_eq!(out, BranchGcd::Deg(1));
        }
    }
}
