//! Frobenius data: h_p(x) = x^2 - a_p x + s_p over O_E, the rational Weil quartic
//! h4(x) = x^4 - s1 x^3 + s2 x^2 - q s1 x + q^2, and classification flags.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{exact_sqrt, factor_integer, resultant, Poly};
use crate::quadratic::{RQField, RQInt};
use crate::{Error, Result};

/// Frobenius data at one prime: h_p(x) = x^2 - a_p x + s_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobData {
    pub q: u64,
    pub p: u64,
    pub a_p: RQInt,
    pub s_p: RQInt,
    pub disc: RQInt,
}

impl FrobData {
    pub fn new(field: &RQField, q: u64, a_p: RQInt, s_p: RQInt) -> Self {
        let f = factor_integer(q);
        assert_eq!(f.len(), 1, "q = {q} is not a prime power");
        let disc = field.sub(field.square(a_p), s_p.scale(4));
        FrobData {
            q,
            p: f[0].0,
            a_p,
            s_p,
            disc,
        }
    }

    /// h_p(x) = x^2 - a_p x + s_p at an element of O_E.
    pub fn h_at(&self, field: &RQField, u: RQInt) -> RQInt {
        field.add(field.sub(field.square(u), field.mul(self.a_p, u)), self.s_p)
    }

    /// The rational quartic (x^2 - a_p x + s_p)(x^2 - conj(a_p) x + s_p) when s_p = q.
    pub fn weil_quartic(&self, field: &RQField) -> Option<WeilQuartic> {
        (self.s_p == RQInt::int(self.q as i128)).then(|| WeilQuartic {
            s1: field.trace(self.a_p) as i64,
            s2: (field.norm(self.a_p) + 2 * self.q as i128) as i64,
            q: self.q,
        })
    }
}

/// h4(x) = x^4 - s1 x^3 + s2 x^2 - q s1 x + q^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeilQuartic {
    pub s1: i64,
    pub s2: i64,
    pub q: u64,
}

impl WeilQuartic {
    pub fn new(s1: i64, s2: i64, q: u64) -> Self {
        WeilQuartic { s1, s2, q }
    }

    /// Coefficients lowest degree first.
    pub fn coeffs(&self) -> [i128; 5] {
        let q = self.q as i128;
        let s1 = self.s1 as i128;
        [q * q, -q * s1, self.s2 as i128, -s1, 1]
    }

    pub fn poly(&self) -> Poly<BigInt> {
        Poly::new(self.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.coeffs().iter().rev().fold(0, |acc, c| acc * x + c)
    }

    /// Discriminant of y^2 - s1 y + (s2 - 2q), whose roots are a_p and its conjugate.
    pub fn y_discriminant(&self) -> i128 {
        let s1 = self.s1 as i128;
        s1 * s1 - 4 * (self.s2 as i128 - 2 * self.q as i128)
    }

    /// Numeric sanity check that all roots have absolute value sqrt(q).
    pub fn roots_on_circle(&self) -> bool {
        let dy = self.y_discriminant() as f64;
        if dy < -1e-9 {
            return false;
        }
        let r = dy.max(0.0).sqrt();
        let s1 = self.s1 as f64;
        let bound = 2.0 * (self.q as f64).sqrt() + 1e-6;
        [(s1 + r) / 2.0, (s1 - r) / 2.0]
            .iter()
            .all(|y| y.abs() <= bound)
    }

    /// Characteristic polynomial of pi^n: power sums of the roots fed back through
    /// the Newton identities.
    pub fn charpoly_of_power(&self, n: u32) -> Poly<BigInt> {
        let c: Vec<BigInt> = self.coeffs().iter().map(|&v| BigInt::from(v)).collect();
        let top = 4 * n as usize;
        let mut pw: Vec<BigInt> = vec![BigInt::from(4)];
        for j in 1..=top {
            let mut acc = BigInt::zero();
            for i in 1..=4.min(j) {
                if i < j || j > 4 {
                    acc -= &c[4 - i] * &pw[j - i];
                }
            }
            if j <= 4 {
                acc -= BigInt::from(j) * &c[4 - j];
            }
            pw.push(acc);
        }
        let qs: Vec<BigInt> = (1..=4).map(|i| pw[i * n as usize].clone()).collect();
        let mut e = vec![BigInt::from(1)];
        for k in 1..=4usize {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                let term = &e[k - i] * &qs[i - 1];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            debug_assert!((&acc % BigInt::from(k)).is_zero());
            e.push(acc / BigInt::from(k));
        }
        Poly::new(vec![
            e[4].clone(),
            -e[3].clone(),
            e[2].clone(),
            -e[1].clone(),
            BigInt::from(1),
        ])
    }

    /// Irreducibility over Q: no rational root and no split into monic integer quadratics.
    pub fn is_irreducible(&self) -> bool {
        let q2 = (self.q as i128) * (self.q as i128);
        let divisors = divisors_of(q2);
        for &r in &divisors {
            for r in [r, -r] {
                if self.eval(r) == 0 {
                    return false;
                }
            }
        }
        let s1 = self.s1 as i128;
        let s2 = self.s2 as i128;
        let q = self.q as i128;
        for &c in &divisors {
            for c in [c, -c] {
                let f = q2 / c;
                // (x^2 + b x + c)(x^2 + e x + f): b + e = -s1, c + f + b e = s2, b f + c e = -q s1
                if f != c {
                    let num = s1 * (c - q);
                    if num % (f - c) != 0 {
                        continue;
                    }
                    let b = num / (f - c);
                    let e = -s1 - b;
                    if c + f + b * e == s2 && b * f + c * e == -q * s1 {
                        return false;
                    }
                } else if s1 * (c - q) == 0 {
                    // b + e = -s1, b e = s2 - 2c
                    let disc = s1 * s1 - 4 * (s2 - 2 * c);
                    if let Some(r) = exact_sqrt(disc) {
                        if (r - s1) % 2 == 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn divisors_of(n: i128) -> Vec<i128> {
    let mut out = vec![1i128];
    for (p, e) in factor_integer(n as u64) {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = 1i128;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p as i128;
            }
        }
        out = next;
    }
    out
}

/// Result of solving y^2 - s1 y + (s2 - 2q) = 0 in O_E.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApRecovery {
    /// a_p in Z (double root): the surface is not simple over F_p.
    RationalTrace(i128),
    /// The two conjugates, in no particular order.
    Pair(RQInt, RQInt),
}

impl ApRecovery {
    /// Canonical member of the pair: c1 >= 0, then c0 >= 0.
    pub fn canonical(&self) -> RQInt {
        match *self {
            ApRecovery::RationalTrace(t) => RQInt::int(t),
            ApRecovery::Pair(x, y) => {
                let key = |v: &RQInt| (v.c1 < 0, v.c0 < 0);
                if key(&x) <= key(&y) {
                    x
                } else {
                    y
                }
            }
        }
    }

    pub fn contains(&self, a: RQInt) -> bool {
        match *self {
            ApRecovery::RationalTrace(t) => a == RQInt::int(t),
            ApRecovery::Pair(x, y) => a == x || a == y,
        }
    }
}

/// Recover {a_p, conj(a_p)} from the Weil quartic.
pub fn recover_ap(w: &WeilQuartic, field: &RQField) -> Result<ApRecovery> {
    let dy = w.y_discriminant();
    if dy < 0 {
        return Err(Error::WeilBoundViolated(format!(
            "y-discriminant {dy} is negative"
        )));
    }
    let s1 = w.s1 as i128;
    if dy == 0 {
        if s1 % 2 != 0 {
            return Err(Error::NotRM);
        }
        return Ok(ApRecovery::RationalTrace(s1 / 2));
    }
    if exact_sqrt(dy).is_some() {
        // two distinct rational traces: no real multiplication by a field
        return Err(Error::NotRM);
    }
    let root = field.sqrt(RQInt::int(dy)).ok_or(Error::NotRM)?;
    let num = field.add(RQInt::int(s1), root);
    if num.c0 % 2 != 0 || num.c1 % 2 != 0 {
        return Err(Error::NotRM);
    }
    let a = RQInt::new(num.c0 / 2, num.c1 / 2);
    let b = field.conj(a);
    debug_assert_eq!(field.add(a, b), RQInt::int(s1));
    Ok(ApRecovery::Pair(a, b))
}

/// Field Q(sqrt d) containing a_p, read off the Weil quartic.
pub fn detect_field_d(w: &WeilQuartic) -> Option<i64> {
    let dy = w.y_discriminant();
    if dy <= 0 || exact_sqrt(dy).is_some() {
        return None;
    }
    Some(crate::arith::squarefree_part(dy) as i64)
}

/// s1 = q + 1 - N1, s2 = (N2 - q^2 - 1 + s1^2)/2.
pub fn count_to_weil(n1: i64, n2: i64, q: u64) -> Result<WeilQuartic> {
    let qi = q as i128;
    let s1 = qi + 1 - n1 as i128;
    let twice = n2 as i128 - qi * qi - 1 + s1 * s1;
    if twice % 2 != 0 {
        return Err(Error::WeilBoundViolated(format!(
            "N2 - q^2 - 1 + s1^2 = {twice} is odd"
        )));
    }
    let s2 = twice / 2;
    if s1 * s1 > 16 * qi {
        return Err(Error::WeilBoundViolated(format!("|s1| = {} > 4 sqrt(q)", s1.abs())));
    }
    if 4 * s2 > s1 * s1 + 8 * qi {
        return Err(Error::WeilBoundViolated(format!("s2 = {s2} too large")));
    }
    let lower = s2 + 2 * qi;
    if lower < 0 || lower * lower < 4 * qi * s1 * s1 {
        return Err(Error::WeilBoundViolated(format!("s2 = {s2} too small")));
    }
    Ok(WeilQuartic::new(s1 as i64, s2 as i64, q))
}

/// Exponents N for which Q(pi^N) = Q(pi) must be checked.
pub const ABS_SIMPLE_EXPONENTS: [u32; 7] = [2, 3, 4, 5, 6, 10, 12];

/// Absolute simplicity: [Q(pi^N) : Q] = 4 for every N in [`ABS_SIMPLE_EXPONENTS`].
pub fn abs_simple_check(w: &WeilQuartic) -> Result<bool> {
    if !w.is_irreducible() {
        return Err(Error::ReducibleQuartic);
    }
    for n in ABS_SIMPLE_EXPONENTS {
        let g = w.charpoly_of_power(n);
        // h4 irreducible, so g is a power of the minimal polynomial of pi^N
        if resultant(&g, &g.derivative()).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BailReason {
    BadReduction,
    NotOrdinary,
    NotAbsSimple,
    ScalarFrobenius,
    NotRm,
    ApMismatch,
    TorsionFieldTooLarge,
    BudgetExhausted,
    Unsupported,
}

impl fmt::Display for BailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BailReason::BadReduction => "BAD_REDUCTION",
            BailReason::NotOrdinary => "NOT_ORDINARY",
            BailReason::NotAbsSimple => "NOT_ABS_SIMPLE",
            BailReason::ScalarFrobenius => "SCALAR_FROBENIUS",
            BailReason::NotRm => "NOT_RM",
            BailReason::ApMismatch => "AP_MISMATCH",
            BailReason::TorsionFieldTooLarge => "TORSION_FIELD_TOO_LARGE",
            BailReason::BudgetExhausted => "BUDGET_EXHAUSTED",
            BailReason::Unsupported => "UNSUPPORTED",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobClass {
    pub is_scalar: bool,
    pub is_real: bool,
    pub is_ordinary: bool,
    pub is_fp_simple: bool,
    pub is_abs_simple: bool,
    pub bail_reason: Option<BailReason>,
}

impl FrobClass {
    /// "*" for non-ordinary, "**" for ordinary, F_p-simple but not absolutely simple.
    pub fn marks(&self) -> &'static str {
        if !self.is_fp_simple {
            ""
        } else if !self.is_ordinary {
            "*"
        } else if !self.is_abs_simple {
            "**"
        } else {
            ""
        }
    }
}

pub fn classify(field: &RQField, d: &FrobData) -> FrobClass {
    let is_scalar = d.disc.is_zero();
    let is_real = d.a_p.is_zero() && d.s_p == RQInt::int(-(d.q as i128));
    let is_ordinary = field.norm(d.a_p) % d.p as i128 != 0;
    let is_fp_simple = !is_real && !d.a_p.is_rational();
    let is_abs_simple = is_fp_simple
        && d
            .weil_quartic(field)
            .is_some_and(|w| abs_simple_check(&w).unwrap_or(false));
    let bail_reason = if is_scalar {
        Some(BailReason::ScalarFrobenius)
    } else if !is_fp_simple {
        Some(BailReason::NotAbsSimple)
    } else if !is_ordinary {
        Some(BailReason::NotOrdinary)
    } else if !is_abs_simple {
        Some(BailReason::NotAbsSimple)
    } else {
        None
    };
    FrobClass {
        is_scalar,
        is_real,
        is_ordinary,
        is_fp_simple,
        is_abs_simple,
        bail_reason,
    }
}

/// Value of an integer polynomial at 1.
pub fn value_at_one(p: &Poly<BigInt>) -> BigInt {
    p.coeffs().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn golden() -> RQField {
        RQField::from_minpoly("x^2+x-1").unwrap()
    }

    fn el(s: &str) -> RQInt {
        RQInt::parse(s).unwrap()
    }

    #[test]
    fn make_hp_examples() {
        let e = golden();
        assert_eq!(FrobData::new(&e, 59, el("4+4a"), RQInt::int(59)).disc, el("-204+16a"));
        assert_eq!(FrobData::new(&e, 5, el("2+4a"), RQInt::int(5)).disc, RQInt::ZERO);
        assert_eq!(FrobData::new(&e, 19, el("-2"), RQInt::int(19)).disc, RQInt::int(-72));
    }

    #[test]
    fn recover_ap_examples() {
        let e = golden();
        let r = recover_ap(&WeilQuartic::new(4, 102, 59), &e).unwrap();
        assert!(r.contains(el("4+4a")) && r.contains(el("-4a")));
        let r = recover_ap(&WeilQuartic::new(-4, 42, 19), &e).unwrap();
        assert_eq!(r, ApRecovery::RationalTrace(-2));
        let t = 7i64;
        let r = recover_ap(&WeilQuartic::new(2 * t, t * t + 2 * 59, 59), &e).unwrap();
        assert_eq!(r, ApRecovery::RationalTrace(7));
        // a_p in Q(sqrt 2) is not found in Q(sqrt 5)
        let e2 = RQField::standard(2).unwrap();
        let fd = FrobData::new(&e2, 7, RQInt::new(1, 1), RQInt::int(7));
        let w = fd.weil_quartic(&e2).unwrap();
        assert_eq!(recover_ap(&w, &e), Err(Error::NotRM));
        assert_eq!(detect_field_d(&w), Some(2));
    }

    #[test]
    fn recovered_pair_re_expands_to_h4() {
        let e = golden();
        for x0 in -20..=20 {
            for x1 in 1..=12 {
                let a = RQInt::new(x0, x1);
                let q = 1997u64;
                let w = FrobData::new(&e, q, a, RQInt::int(q as i128)).weil_quartic(&e).unwrap();
                let r = recover_ap(&w, &e).unwrap();
                assert!(r.contains(a) && r.contains(e.conj(a)));
                // (x^2 - a x + q)(x^2 - conj(a) x + q) coefficients
                assert_eq!(w.s1 as i128, e.trace(a));
                assert_eq!(w.s2 as i128, e.norm(a) + 2 * q as i128);
            }
        }
    }

    #[test]
    fn classify_examples() {
        let e = golden();
        let c = classify(&e, &FrobData::new(&e, 31, el("-3-5a"), RQInt::int(31)));
        assert!(!c.is_ordinary);
        assert_eq!(c.marks(), "*");
        let c = classify(&e, &FrobData::new(&e, 5, el("2+4a"), RQInt::int(5)));
        assert!(c.is_scalar);
        let c = classify(&e, &FrobData::new(&e, 59, el("4+4a"), RQInt::int(59)));
        assert!(c.is_ordinary && c.is_fp_simple && c.is_abs_simple);
        assert_eq!(c.bail_reason, None);
        let c = classify(&e, &FrobData::new(&e, 7, RQInt::ZERO, RQInt::int(-7)));
        assert!(c.is_real);
    }

    #[test]
    fn abs_simple_examples() {
        let e = golden();
        let w101 = FrobData::new(&e, 101, el("2+4a"), RQInt::int(101)).weil_quartic(&e).unwrap();
        assert_eq!(abs_simple_check(&w101), Ok(false));
        assert_eq!(abs_simple_check(&WeilQuartic::new(4, 102, 59)), Ok(true));
        // (x^2 - q)^2 = x^4 - 2q x^2 + q^2
        assert_eq!(abs_simple_check(&WeilQuartic::new(0, -2 * 3, 3)), Err(Error::ReducibleQuartic));
    }

    #[test]
    fn count_to_weil_examples() {
        let q = 59u64;
        assert_eq!(count_to_weil(60, 59 * 59 + 1, q).unwrap(), WeilQuartic::new(0, 0, q));
        // N2 = q^2 + 1 - (s1^2 - 2 s2) = 3482 - 16 + 204
        assert_eq!(count_to_weil(56, 3670, q).unwrap(), WeilQuartic::new(4, 102, q));
        assert_eq!(count_to_weil(4, 16, 3).unwrap(), WeilQuartic::new(0, 3, 3));
        assert!(count_to_weil(56, 3278, q).is_err());
        assert!(count_to_weil(0, 0, 59).is_err());
    }

    // Resultant route: char poly of pi^N at x0 equals Res_y(h4(y), x0 - y^N).
    fn charpoly_by_resultant(w: &WeilQuartic, n: u32, x0: i64) -> BigInt {
        let mut c = vec![BigInt::zero(); n as usize + 1];
        c[0] = BigInt::from(x0);
        c[n as usize] = -BigInt::one();
        resultant(&w.poly(), &Poly::new(c))
    }

    #[test]
    fn power_charpoly_dual_route() {
        for (s1, s2, q) in [(4i64, 102i64, 59u64), (0, 3, 3), (-3, 10, 11), (2, -2, 5)] {
            let w = WeilQuartic::new(s1, s2, q);
            for n in ABS_SIMPLE_EXPONENTS {
                let g = w.charpoly_of_power(n);
                for x0 in [-3i64, 0, 1, 2, 7] {
                    assert_eq!(g.eval(&BigInt::from(x0)), charpoly_by_resultant(&w, n, x0));
                }
            }
        }
    }

    #[test]
    fn quartic_irreducibility_oracle() {
        // products of two quadratics are reducible
        let red = [WeilQuartic::new(0, -6, 3), WeilQuartic::new(2, 1 + 2 * 7, 7)];
        for w in red {
            assert!(!w.is_irreducible(), "{w:?}");
        }
        assert!(WeilQuartic::new(4, 102, 59).is_irreducible());
    }

    proptest! {
        #[test]
        fn disc_identity(c0 in -50i128..50, c1 in -50i128..50, s0 in -50i128..50, s1 in -50i128..50) {
            let e = golden();
            let a = RQInt::new(c0, c1);
            let s = RQInt::new(s0, s1);
            let d = FrobData::new(&e, 7, a, s);
            prop_assert_eq!(d.disc, e.sub(e.mul(a, a), s.scale(4)));
        }

        #[test]
        fn quartic_from_ap_is_irreducible_iff_ap_irrational(c0 in -30i128..30, c1 in -8i128..8) {
            let e = golden();
            let a = RQInt::new(c0, c1);
            let q = 1009u64;
            let w = FrobData::new(&e, q, a, RQInt::int(q as i128)).weil_quartic(&e).unwrap();
            prop_assert_eq!(w.is_irreducible(), c1 != 0);
        }
    }
}
