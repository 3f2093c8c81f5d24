//! Arithmetic in F_p and F_p[x] on raw `u64` coefficient vectors (lowest degree first).

pub fn reduce(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (g, x, _) = super::xgcd_i128(a as i128, p as i128);
    (g == 1).then(|| reduce(x, p))
}

/// Legendre symbol as 1, -1 or 0.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Square root mod an odd prime (Tonelli-Shanks); `None` for non-residues.
pub fn sqrt(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let mut s = 0;
    let mut t = p - 1;
    while t.is_multiple_of(2) {
        t /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z, p) == -1).unwrap();
    let mut m = s;
    let mut c = pow(z, t, p);
    let mut tt = pow(a, t, p);
    let mut r = pow(a, t.div_ceil(2), p);
    while tt != 1 {
        let mut i = 0;
        let mut t2 = tt;
        while t2 != 1 {
            t2 = mul(t2, t2, p);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = mul(b, b, p);
        }
        m = i;
        c = mul(b, b, p);
        tt = mul(tt, c, p);
        r = mul(r, b, p);
    }
    Some(r)
}

pub fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn deg(a: &[u64]) -> isize {
    a.len() as isize - 1
}

pub fn poly_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

pub fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

pub fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u128 * y as u128) % pp;
        }
    }
    let mut out: Vec<u64> = acc.into_iter().map(|v| v as u64).collect();
    trim(&mut out);
    out
}

pub fn poly_scale(a: &[u64], s: u64, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&c| mul(c, s, p)).collect();
    trim(&mut out);
    out
}

pub fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let ilc = inv(b[db], p).expect("leading coefficient invertible");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = mul(r[i + db], ilc, p);
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                r[i + j] = sub(r[i + j], mul(c, bc, p), p);
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    poly_divrem(a, b, p).1
}

pub fn poly_monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => poly_scale(a, inv(lc, p).unwrap(), p),
    }
}

pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    poly_monic(&x, p)
}

/// Returns (g, s) with g = gcd(a, m) monic and s*a = g mod m.
pub fn poly_xgcd_left(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1, p);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    let lc = *r0.last().expect("gcd of zero polynomials");
    let il = inv(lc, p).unwrap();
    (poly_scale(&r0, il, p), poly_scale(&s0, il, p))
}

pub fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), m, p)
}

pub fn poly_powmod(a: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(a, m, p);
    let mut acc = poly_rem(&[1], m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

pub fn poly_eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| add(mul(acc, x, p), c, p))
}

pub fn poly_derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul(c, i as u64 % p, p))
        .collect();
    trim(&mut out);
    out
}

pub fn is_squarefree(a: &[u64], p: u64) -> bool {
    let d = poly_derivative(a, p);
    if d.is_empty() {
        return a.len() <= 1;
    }
    poly_gcd(a, &d, p).len() == 1
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^(p^i) mod f for i = 0..=k
    let mut powers = vec![poly_rem(&x, f, p)];
    for i in 1..=k {
        let next = poly_powmod(&powers[i - 1], p as u128, f, p);
        powers.push(next);
    }
    if !poly_sub(&powers[k], &powers[0], p).is_empty() {
        return false;
    }
    for (r, _) in super::factor_integer(k as u64) {
        let i = k / r as usize;
        let g = poly_gcd(f, &poly_sub(&powers[i], &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_mod_small_primes() {
        for p in [3u64, 5, 7, 11, 13, 17, 41, 1997] {
            for a in 0..p.min(200) {
                match sqrt(a, p) {
                    Some(r) => assert_eq!(mul(r, r, p), a),
                    None => assert!((0..p).all(|x| mul(x, x, p) != a)),
                }
            }
        }
    }

    #[test]
    fn rabin_matches_root_count_in_degree_two_and_three() {
        for p in [3u64, 5, 7] {
            for c0 in 0..p {
                for c1 in 0..p {
                    let f2 = vec![c0, c1, 1];
                    let has_root = (0..p).any(|x| poly_eval(&f2, x, p) == 0);
                    assert_eq!(is_irreducible(&f2, p), !has_root);
                    for c2 in 0..p {
                        let f3 = vec![c0, c1, c2, 1];
                        let has_root = (0..p).any(|x| poly_eval(&f3, x, p) == 0);
                        assert_eq!(is_irreducible(&f3, p), !has_root);
                    }
                }
            }
        }
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducibles of degree 4 over F_3 is (81 - 9)/4 = 18
        let p = 3u64;
        let mut count = 0;
        for n in 0..81u64 {
            let f = vec![n % 3, (n / 3) % 3, (n / 9) % 3, (n / 27) % 3, 1];
            if is_irreducible(&f, p) {
                count += 1;
            }
        }
        assert_eq!(count, 18);
    }
}
