//! Integer helpers, polynomials over Z and Q, and finite field towers.

mod ff;
mod field;
pub mod fp;
mod poly;
mod polyring;

pub use ff::{find_irreducible, FfElem, FiniteField};
pub use field::Field;
pub use poly::{bareiss_det, resultant, Poly};
pub use polyring::PolyRing;

/// Trial-division factorization, primes increasing.
pub fn factor_integer(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor_integer needs n >= 1");
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n as u128) as i128;
    (r * r == n).then_some(r)
}

/// Squarefree part of a nonzero integer (sign kept).
pub fn squarefree_part(n: i128) -> i128 {
    assert!(n != 0);
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out: u128 = 1;
    let mut d: u128 = 2;
    while d * d <= m {
        let mut e = 0;
        while m.is_multiple_of(d) {
            m /= d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= d;
        }
        d += 1;
    }
    out *= m;
    sign * out as i128
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns (g, x, y) with a*x + b*y = g >= 0.
pub fn xgcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_factor(n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut m = n;
        let mut d = 2;
        while m > 1 {
            if m.is_multiple_of(d) {
                m /= d;
                match out.last_mut() {
                    Some((q, e)) if *q == d => *e += 1,
                    _ => out.push((d, 1)),
                }
            } else {
                d += 1;
            }
        }
        out
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor_integer(1), vec![]);
        assert_eq!(factor_integer(304), vec![(2, 4), (19, 1)]);
        assert_eq!(factor_integer(3481), vec![(59, 2)]);
    }

    #[test]
    fn factor_recomposes_up_to_1e6() {
        for n in 1..=1_000_000u64 {
            let f = factor_integer(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(45), 5);
        assert_eq!(squarefree_part(-6804), -21);
        assert_eq!(squarefree_part(1), 1);
    }

    proptest! {
        #[test]
        fn factor_matches_naive(n in 1u64..200_000) {
            prop_assert_eq!(factor_integer(n), naive_factor(n));
        }

        #[test]
        fn xgcd_bezout(a in -10_000i128..10_000, b in -10_000i128..10_000) {
            let (g, x, y) = xgcd_i128(a, b);
            prop_assert_eq!(a * x + b * y, g);
            prop_assert_eq!(g, gcd_i128(a, b));
        }
    }
}
