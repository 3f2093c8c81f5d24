use std::fmt;

use num_bigint::BigUint;
use rand::Rng;

use super::field::Field;
use super::fp;

/// Element of F_{p^k}: exactly k coefficients in the power basis of the field modulus.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FfElem(pub Vec<u64>);

/// F_{p^k} = F_p[t]/(modulus), modulus the lexicographically least monic irreducible.
#[derive(Clone)]
pub struct FiniteField {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    // t^(i*p) mod modulus, i < k: the p-power map is linear over F_p.
    frob_rows: Vec<Vec<u64>>,
    order: BigUint,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.k, self.modulus)
    }
}

/// Lexicographically least monic irreducible of degree k over F_p, with the
/// coefficient of x^(k-1) most significant.
pub fn find_irreducible(p: u64, k: usize) -> Vec<u64> {
    assert!(k >= 1);
    let mut digits = vec![0u64; k];
    loop {
        let mut f = digits.clone();
        f.push(1);
        if fp::is_irreducible(&f, p) {
            return f;
        }
        // increment with digits[0] least significant
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < k, "no irreducible polynomial found");
        }
    }
}

impl FiniteField {
    pub fn new(p: u64, k: usize) -> Self {
        Self::with_modulus(p, find_irreducible(p, k))
    }

    pub fn prime(p: u64) -> Self {
        Self::new(p, 1)
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Self {
        assert!(p > 2 && super::is_prime(p), "need an odd prime, got {p}");
        assert_eq!(modulus.last(), Some(&1), "modulus must be monic");
        assert!(fp::is_irreducible(&modulus, p), "modulus must be irreducible");
        let k = modulus.len() - 1;
        let xp = fp::poly_powmod(&[0, 1], p as u128, &modulus, p);
        let mut rows = Vec::with_capacity(k);
        let mut cur = fp::poly_rem(&[1], &modulus, p);
        for _ in 0..k {
            rows.push(cur.clone());
            cur = fp::poly_mulmod(&cur, &xp, &modulus, p);
        }
        FiniteField {
            p,
            k,
            modulus,
            frob_rows: rows,
            order: BigUint::from(p).pow(k as u32),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn pack(&self, mut v: Vec<u64>) -> FfElem {
        v.resize(self.k, 0);
        FfElem(v)
    }

    fn unpack(a: &FfElem) -> Vec<u64> {
        let mut v = a.0.clone();
        fp::trim(&mut v);
        v
    }

    pub fn from_coeffs(&self, c: &[u64]) -> FfElem {
        let v: Vec<u64> = c.iter().map(|x| x % self.p).collect();
        self.pack(fp::poly_rem(&v, &self.modulus, self.p))
    }

    /// The image of an F_p element.
    pub fn embed(&self, c: u64) -> FfElem {
        self.from_coeffs(&[c])
    }

    /// Some(c) when the element lies in the prime field.
    pub fn as_prime(&self, a: &FfElem) -> Option<u64> {
        a.0[1..].iter().all(|&c| c == 0).then_some(a.0[0])
    }

    pub fn frobenius(&self, a: &FfElem) -> FfElem {
        let mut out = vec![0u64; self.k];
        for (i, &c) in a.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &r) in self.frob_rows[i].iter().enumerate() {
                out[j] = fp::add(out[j], fp::mul(c, r, self.p), self.p);
            }
        }
        FfElem(out)
    }

    /// Norm to F_p, as the product of the Galois conjugates.
    pub fn norm(&self, a: &FfElem) -> u64 {
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..self.k {
            cur = self.frobenius(&cur);
            acc = self.mul(&acc, &cur);
        }
        self.as_prime(&acc).expect("norm lies in the prime field")
    }

    fn mul_generic(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let k = self.k;
        let p = self.p as u128;
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let m = self.modulus[j] as u128;
                prod[i - k + j] = (prod[i - k + j] + (p - c) * m) % p;
            }
        }
        FfElem(prod[..k].iter().map(|&v| v as u64).collect())
    }

    /// mul for p < 2^16: every product is below 2^32, so u64 sums never overflow.
    fn mul_small_p(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let k = self.k;
        let p = self.p;
        let mut prod = [0u64; 128];
        let prod = if 2 * k - 1 <= 128 {
            &mut prod[..2 * k - 1]
        } else {
            return self.mul_generic(a, b);
        };
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i] % p;
            if c == 0 {
                continue;
            }
            let nc = p - c;
            for j in 0..k {
                prod[i - k + j] += nc * self.modulus[j];
            }
        }
        FfElem(prod[..k].iter().map(|&v| v % p).collect())
    }

    /// Every element, in counting order; only for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FfElem> + '_ {
        let total = self.p.pow(self.k as u32);
        (0..total).map(move |mut n| {
            let mut v = vec![0u64; self.k];
            for c in v.iter_mut() {
                *c = n % self.p;
                n /= self.p;
            }
            FfElem(v)
        })
    }
}

impl Field for FiniteField {
    type Elem = FfElem;

    fn zero(&self) -> FfElem {
        FfElem(vec![0; self.k])
    }

    fn one(&self) -> FfElem {
        self.embed(1)
    }

    fn from_i64(&self, v: i64) -> FfElem {
        self.embed(fp::reduce(v as i128, self.p))
    }

    fn is_zero(&self, a: &FfElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        FfElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| fp::add(x, y, self.p))
                .collect(),
        )
    }

    fn sub(&self, a: &FfElem, b: &FfElem) -> FfElem {
        FfElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| fp::sub(x, y, self.p))
                .collect(),
        )
    }

    fn neg(&self, a: &FfElem) -> FfElem {
        FfElem(a.0.iter().map(|&x| fp::sub(0, x, self.p)).collect())
    }

    fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        if self.k == 1 {
            return FfElem(vec![fp::mul(a.0[0], b.0[0], self.p)]);
        }
        if self.p < 1 << 16 {
            self.mul_small_p(a, b)
        } else {
            self.mul_generic(a, b)
        }
    }

    fn inv(&self, a: &FfElem) -> Option<FfElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.k == 1 {
            return fp::inv(a.0[0], self.p).map(|v| FfElem(vec![v]));
        }
        let (g, s) = fp::poly_xgcd_left(&Self::unpack(a), &self.modulus, self.p);
        debug_assert_eq!(g, vec![1]);
        Some(self.pack(s))
    }

    fn order(&self) -> BigUint {
        self.order.clone()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FfElem {
        FfElem((0..self.k).map(|_| rng.gen_range(0..self.p)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn find_irreducible_examples() {
        assert_eq!(find_irreducible(3, 1), vec![0, 1]);
        assert_eq!(find_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(find_irreducible(5, 2), vec![2, 0, 1]);
        // no root in F_5 by enumeration
        assert!((0..5u64).all(|x| (x * x + 2) % 5 != 0));
    }

    #[test]
    fn frobenius_matches_pow_and_has_order_k() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, k) in [(3u64, 4usize), (7, 3), (11, 2), (101, 5)] {
            let f = FiniteField::new(p, k);
            for _ in 0..20 {
                let a = f.random(&mut rng);
                assert_eq!(f.frobenius(&a), f.pow(&a, &BigUint::from(p)));
                let mut b = a.clone();
                for _ in 0..k {
                    b = f.frobenius(&b);
                }
                assert_eq!(b, a);
                // x^(p^k) = x
                assert_eq!(f.pow(&a, &f.order()), a);
            }
        }
    }

    #[test]
    fn sqrt_in_extension() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (p, k) in [(3u64, 2usize), (5, 3), (13, 4), (17, 2)] {
            let f = FiniteField::new(p, k);
            for _ in 0..30 {
                let a = f.random(&mut rng);
                let sq = f.mul(&a, &a);
                let r = f.sqrt(&sq).unwrap();
                assert_eq!(f.mul(&r, &r), sq);
            }
        }
    }

    #[test]
    fn prime_field_elements_are_squares_in_quadratic_extension() {
        let f = FiniteField::new(7, 2);
        for c in 0..7 {
            assert!(f.is_square(&f.embed(c)));
        }
    }

    proptest! {
        #[test]
        fn field_axioms(seed in any::<u64>(), pk in prop::sample::select(vec![(3u64, 3usize), (5, 2), (7, 4), (1997, 3)])) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = FiniteField::new(pk.0, pk.1);
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            let c = f.random(&mut rng);
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.add(&f.sub(&a, &b), &b), a.clone());
            if !f.is_zero(&a) {
                prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            }
        }
    }
}
