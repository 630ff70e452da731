//! Exact scalar arithmetic: arbitrary-precision integers and rationals.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Parses "p", "-p" or "p/q" into a reduced rational. Rejects zero denominators.
pub fn rat_parse(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: Int = num
        .parse()
        .map_err(|_| format!("bad integer `{num}` in rational `{s}`"))?;
    let q: Int = den
        .parse()
        .map_err(|_| format!("bad integer `{den}` in rational `{s}`"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in rational `{s}`"));
    }
    Ok(Rat::new(p, q))
}

/// Renders a rational as "p" or "p/q" with positive denominator.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn int_to_i64(n: &Int) -> Option<i64> {
    use num_traits::ToPrimitive;
    n.to_i64()
}

/// The reproducible generator every seeded computation draws from.
pub fn seeded_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn miller_rabin(n: &BigUint, bases: &[u64]) -> bool {
    let one = BigUint::one();
    let two = &one + &one;
    if *n < two {
        return false;
    }
    if n.is_even() {
        return *n == two;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'outer: for &b in bases {
        let b = BigUint::from(b);
        if (&b % n).is_zero() {
            continue;
        }
        let mut x = b.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn is_probable_prime(n: &Int) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    let u = n.magnitude().clone();
    miller_rabin(&u, &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37])
}

fn pollard_rho(n: &BigUint, rng: &mut ChaCha20Rng) -> BigUint {
    let one = BigUint::one();
    let below = |rng: &mut ChaCha20Rng| -> BigUint {
        let bits = n.bits() as usize;
        let words = bits / 64 + 1;
        let mut v = BigUint::zero();
        for _ in 0..words {
            v = (v << 64) + BigUint::from(rng.gen::<u64>());
        }
        v % n
    };
    loop {
        let c = below(rng) + &one;
        let mut x = below(rng);
        let mut y = x.clone();
        let mut d = BigUint::one();
        let f = |v: &BigUint| (v * v + &c) % n;
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if d != one && &d != n {
            return d;
        }
    }
}

/// Full factorization of |n| (n != 0). Trial division for small factors,
/// Pollard rho for the rest.
pub fn factor_int(n: &Int) -> Vec<(Int, u32)> {
    let mut m = n.magnitude().clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let push = |out: &mut Vec<(BigUint, u32)>, p: BigUint| {
        if let Some(e) = out.iter_mut().find(|(q, _)| *q == p) {
            e.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in 2u64.. {
        if p > 1 << 16 {
            break;
        }
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            m /= &bp;
            push(&mut out, bp.clone());
        }
    }
    let mut rng = ChaCha20Rng::seed_from_u64(0x7061_6c6c);
    let mut stack = vec![m];
    while let Some(v) = stack.pop() {
        if v.is_one() {
            continue;
        }
        if miller_rabin(&v, &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]) {
            push(&mut out, v);
            continue;
        }
        let d = pollard_rho(&v, &mut rng);
        stack.push(v / &d);
        stack.push(d);
    }
    out.sort();
    out.into_iter()
        .map(|(p, e)| (Int::from_biguint(Sign::Plus, p), e))
        .collect()
}

/// All positive divisors of |n|, or None when there are more than `cap`.
pub fn divisors_bounded(n: &Int, cap: usize) -> Option<Vec<Int>> {
    if n.is_zero() {
        return None;
    }
    let facs = factor_int(n);
    let mut divs = vec![Int::one()];
    for (p, e) in facs {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = Int::one();
            for _ in 0..=e {
                next.push(d * &pk);
                if next.len() > cap {
                    return None;
                }
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    Some(divs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(rat_parse("3/6").unwrap(), rat(1, 2));
        assert_eq!(rat_parse("-4").unwrap(), rat_int(-4));
        assert_eq!(rat_parse("7/-2").unwrap(), rat(-7, 2));
        assert!(rat_parse("1/0").is_err());
        assert_eq!(rat_to_string(&rat(-7, 2)), "-7/2");
        assert_eq!(rat_to_string(&rat(8, 4)), "2");
    }

    #[test]
    fn factoring() {
        let f = factor_int(&int(2 * 2 * 3 * 97));
        assert_eq!(f, vec![(int(2), 2), (int(3), 1), (int(97), 1)]);
        let d = divisors_bounded(&int(12), 100).unwrap();
        assert_eq!(d, vec![int(1), int(2), int(3), int(4), int(6), int(12)]);
        assert!(is_probable_prime(&int(1_000_003)));
        assert!(!is_probable_prime(&int(1_000_001)));
    }
}
