use num_bigint::BigUint;
use rand::Rng;

use crate::arith::{FfElem, Field, FiniteField};

/// F[x]/(x^2 + b x + c) for an irreducible quadratic over a finite field F.
pub struct QuadExt<'a> {
    base: &'a FiniteField,
    b: FfElem,
    c: FfElem,
}

impl<'a> QuadExt<'a> {
    /// None when x^2 + b x + c splits over the base.
    pub fn new(base: &'a FiniteField, b: FfElem, c: FfElem) -> Option<Self> {
        let f = base;
        let disc = f.sub(&f.mul(&b, &b), &f.mul(&f.from_i64(4), &c));
        if f.is_square(&disc) {
            return None;
        }
        Some(QuadExt { base, b, c })
    }

    /// Class of the polynomial c0 + c1 x.
    pub fn elem(&self, c0: FfElem, c1: FfElem) -> (FfElem, FfElem) {
        (c0, c1)
    }

    fn conj(&self, a: &(FfElem, FfElem)) -> (FfElem, FfElem) {
        // x -> -b - x
        let f = self.base;
        (f.sub(&a.0, &f.mul(&self.b, &a.1)), f.neg(&a.1))
    }
}

impl Field for QuadExt<'_> {
    type Elem = (FfElem, FfElem);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }

    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        (self.base.from_i64(v), self.base.zero())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.0) && self.base.is_zero(&a.1)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = self.base;
        let hi = f.mul(&a.1, &b.1);
        (
            f.sub(&f.mul(&a.0, &b.0), &f.mul(&self.c, &hi)),
            f.sub(
                &f.add(&f.mul(&a.0, &b.1), &f.mul(&a.1, &b.0)),
                &f.mul(&self.b, &hi),
            ),
        )
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        let c = self.conj(a);
        let n = self.mul(a, &c).0;
        let ni = self.base.inv(&n)?;
        Some((self.base.mul(&c.0, &ni), self.base.mul(&c.1, &ni)))
    }

    fn order(&self) -> BigUint {
        let q = self.base.order();
        &q * &q
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        (self.base.random(rng), self.base.random(rng))
    }
}
