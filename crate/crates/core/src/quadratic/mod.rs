//! Real quadratic fields E = Q(sqrt d) of class number one and their rings of integers.
//!
//! Elements are written in a display basis (1, a) where a is the larger real root of a
//! monic integer quadratic x^2 + t x + n with t^2 - 4n equal to the field discriminant.

mod ideal;
mod label;

use std::fmt;

pub use ideal::RQIdeal;
pub use label::{Factorization, PrimeLabel, SplitKind};

use crate::arith::{exact_sqrt, isqrt, squarefree_part};
use crate::{Error, Result};

/// Squarefree d < 100 with Q(sqrt d) of class number one.
pub const CLASS_NUMBER_ONE: &[i64] = &[
    2, 3, 5, 6, 7, 11, 13, 14, 17, 19, 21, 22, 23, 29, 31, 33, 37, 38, 41, 43, 46, 47, 53, 57,
    59, 61, 62, 67, 69, 71, 73, 77, 83, 86, 89, 93, 94, 97,
];

/// c0 + c1*a in the display basis of some [`RQField`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct RQInt {
    pub c0: i128,
    pub c1: i128,
}

impl RQInt {
    pub const ZERO: RQInt = RQInt { c0: 0, c1: 0 };
    pub const ONE: RQInt = RQInt { c0: 1, c1: 0 };
    pub const A: RQInt = RQInt { c0: 0, c1: 1 };

    pub const fn new(c0: i128, c1: i128) -> Self {
        RQInt { c0, c1 }
    }

    pub const fn int(c: i128) -> Self {
        RQInt { c0: c, c1: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    pub fn is_rational(&self) -> bool {
        self.c1 == 0
    }

    pub fn scale(&self, k: i128) -> Self {
        RQInt::new(self.c0 * k, self.c1 * k)
    }

    /// Parse "c0+c1*a" style text ("-3-5*a", "2a", "a", "9+a", "4*a").
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut out = RQInt::ZERO;
        for term in split_terms(&s) {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(term)),
            };
            let sign = if neg { -1 } else { 1 };
            if let Some(coef) = body.strip_suffix('a') {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let v: i128 = if coef.is_empty() {
                    1
                } else {
                    coef.parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient in {s:?}")))?
                };
                out.c1 += sign * v;
            } else {
                let v: i128 = body
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad element {s:?}")))?;
                out.c0 += sign * v;
            }
        }
        Ok(out)
    }
}

fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > start {
            out.push(&s[start..i]);
            start = i;
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for RQInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a_part = |c1: i128| match c1 {
            1 => "a".to_string(),
            -1 => "-a".to_string(),
            c => format!("{c}*a"),
        };
        match (self.c0, self.c1) {
            (c0, 0) => write!(f, "{c0}"),
            (0, c1) => write!(f, "{}", a_part(c1)),
            (c0, c1) if c1 > 0 => write!(f, "{c0}+{}", a_part(c1)),
            (c0, c1) => write!(f, "{c0}{}", a_part(c1)),
        }
    }
}

/// E = Q(sqrt d) with display generator a, root of x^2 + t x + n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RQField {
    d: i64,
    t: i128,
    n: i128,
    disc: i128,
    unit: RQInt,
}

impl RQField {
    /// Field with display generator a root of x^2 + t x + n.
    pub fn new(t: i64, n: i64) -> Result<Self> {
        let (t, n) = (t as i128, n as i128);
        let disc = t * t - 4 * n;
        if disc <= 0 || exact_sqrt(disc).is_some() {
            return Err(Error::UnsupportedField(format!(
                "x^2+{t}x+{n} does not define a real quadratic field"
            )));
        }
        let d = squarefree_part(disc) as i64;
        let field_disc = if d % 4 == 1 { d as i128 } else { 4 * d as i128 };
        if disc != field_disc {
            return Err(Error::UnsupportedField(format!(
                "Z[a] is not the maximal order of Q(sqrt {d})"
            )));
        }
        if !CLASS_NUMBER_ONE.contains(&d) {
            return Err(Error::UnsupportedField(format!(
                "Q(sqrt {d}) is not on the class number one list"
            )));
        }
        let mut field = RQField {
            d,
            t,
            n,
            disc,
            unit: RQInt::ONE,
        };
        field.unit = field.compute_fundamental_unit();
        Ok(field)
    }

    /// The usual generator: (-1 + sqrt d)/2 for d = 1 mod 4, sqrt d otherwise.
    pub fn standard(d: i64) -> Result<Self> {
        if d % 4 == 1 {
            RQField::new(1, (1 - d) / 4)
        } else {
            RQField::new(0, -d)
        }
    }

    /// Parse a minimal polynomial such as "x^2+x-1" or "x^2+3*x+1".
    pub fn from_minpoly(s: &str) -> Result<Self> {
        let (t, n) = parse_minpoly(s)?;
        RQField::new(t, n)
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// (t, n) with a^2 + t a + n = 0.
    pub fn minpoly(&self) -> (i128, i128) {
        (self.t, self.n)
    }

    pub fn minpoly_string(&self) -> String {
        let mut s = String::from("x^2");
        match self.t {
            0 => {}
            1 => s.push_str("+x"),
            -1 => s.push_str("-x"),
            t if t > 0 => s.push_str(&format!("+{t}x")),
            t => s.push_str(&format!("{t}x")),
        }
        match self.n {
            0 => {}
            n if n > 0 => s.push_str(&format!("+{n}")),
            n => s.push_str(&format!("{n}")),
        }
        s
    }

    /// Field discriminant t^2 - 4n.
    pub fn discriminant(&self) -> i128 {
        self.disc
    }

    pub fn fundamental_unit(&self) -> RQInt {
        self.unit
    }

    pub fn add(&self, x: RQInt, y: RQInt) -> RQInt {
        RQInt::new(x.c0 + y.c0, x.c1 + y.c1)
    }

    pub fn sub(&self, x: RQInt, y: RQInt) -> RQInt {
        RQInt::new(x.c0 - y.c0, x.c1 - y.c1)
    }

    pub fn neg(&self, x: RQInt) -> RQInt {
        RQInt::new(-x.c0, -x.c1)
    }

    pub fn mul(&self, x: RQInt, y: RQInt) -> RQInt {
        let aa = x.c1 * y.c1;
        RQInt::new(
            x.c0 * y.c0 - self.n * aa,
            x.c0 * y.c1 + x.c1 * y.c0 - self.t * aa,
        )
    }

    pub fn square(&self, x: RQInt) -> RQInt {
        self.mul(x, x)
    }

    pub fn pow(&self, x: RQInt, e: u32) -> RQInt {
        (0..e).fold(RQInt::ONE, |acc, _| self.mul(acc, x))
    }

    pub fn conj(&self, x: RQInt) -> RQInt {
        RQInt::new(x.c0 - self.t * x.c1, -x.c1)
    }

    pub fn norm(&self, x: RQInt) -> i128 {
        x.c0 * x.c0 - self.t * x.c0 * x.c1 + self.n * x.c1 * x.c1
    }

    pub fn trace(&self, x: RQInt) -> i128 {
        2 * x.c0 - self.t * x.c1
    }

    /// x / y when the quotient lies in O_E.
    pub fn div_exact(&self, x: RQInt, y: RQInt) -> Option<RQInt> {
        let ny = self.norm(y);
        if ny == 0 {
            return None;
        }
        let z = self.mul(x, self.conj(y));
        (z.c0 % ny == 0 && z.c1 % ny == 0).then(|| RQInt::new(z.c0 / ny, z.c1 / ny))
    }

    pub fn divides(&self, y: RQInt, x: RQInt) -> bool {
        self.div_exact(x, y).is_some()
    }

    pub fn is_unit(&self, x: RQInt) -> bool {
        self.norm(x).abs() == 1
    }

    /// Image under the real embedding sending a to the larger root.
    pub fn embed(&self, x: RQInt) -> f64 {
        let a = (-(self.t as f64) + (self.disc as f64).sqrt()) / 2.0;
        x.c0 as f64 + x.c1 as f64 * a
    }

    /// Image under the other real embedding.
    pub fn embed_conj(&self, x: RQInt) -> f64 {
        self.embed(self.conj(x))
    }

    /// Exact square root in O_E, if any.
    pub fn sqrt(&self, x: RQInt) -> Option<RQInt> {
        if x.is_rational() {
            if let Some(r) = exact_sqrt(x.c0) {
                return Some(RQInt::int(r));
            }
            // trace-zero square roots are integer multiples of w
            let w = if self.t % 2 == 0 {
                RQInt::new(self.t / 2, 1)
            } else {
                RQInt::new(self.t, 2)
            };
            let w2 = self.square(w).c0;
            if x.c0 % w2 == 0 {
                return exact_sqrt(x.c0 / w2).map(|k| w.scale(k));
            }
            return None;
        }
        let nx = self.norm(x);
        if nx < 0 {
            return None;
        }
        let r = exact_sqrt(nx)?;
        // y^2 = x with N(y) = s: Tr(y)^2 = Tr(x) + 2s and y = (x + s)/Tr(y)
        for s in [r, -r] {
            let Some(tr) = exact_sqrt(self.trace(x) + 2 * s) else {
                continue;
            };
            if tr == 0 {
                continue;
            }
            let num = self.add(x, RQInt::int(s));
            if num.c0 % tr == 0 && num.c1 % tr == 0 {
                let y = RQInt::new(num.c0 / tr, num.c1 / tr);
                if self.square(y) == x {
                    return Some(y);
                }
            }
        }
        None
    }

    /// Re-express x (given in `from`'s basis) in `to`'s basis.
    pub fn change_display_basis(x: RQInt, from: &RQField, to: &RQField) -> Result<RQInt> {
        if from.d != to.d {
            return Err(Error::FieldMismatch(from.d, to.d));
        }
        // a_from = a_to + (t_to - t_from)/2, both being (-t + sqrt D)/2
        let shift = (to.t - from.t) / 2;
        Ok(RQInt::new(x.c0 + x.c1 * shift, x.c1))
    }

    fn compute_fundamental_unit(&self) -> RQInt {
        // continued fraction of alpha = (P0 + sqrt D)/2, an integral generator of O_E
        let big_d = self.disc;
        let p0 = big_d.rem_euclid(2);
        let sqrt_floor = isqrt(big_d as u128) as i128;
        let alpha = RQInt::new((p0 + self.t) / 2, 1);
        let tr = self.trace(alpha);
        let nm = self.norm(alpha);
        let (mut p, mut q) = (p0, 2i128);
        let (mut h1, mut h2) = (1i128, 0i128);
        let (mut k1, mut k2) = (0i128, 1i128);
        loop {
            let ai = if q > 0 {
                (p + sqrt_floor).div_euclid(q)
            } else {
                (p + sqrt_floor + 1).div_euclid(q)
            };
            let h = ai * h1 + h2;
            let k = ai * k1 + k2;
            (h2, h1) = (h1, h);
            (k2, k1) = (k1, k);
            let norm = h * h - h * k * tr + k * k * nm;
            if norm.abs() == 1 {
                let eta = self.sub(RQInt::int(h), alpha.scale(k));
                let eps = self.conj(eta);
                return if self.embed(eps) > 0.0 {
                    eps
                } else {
                    self.neg(eps)
                };
            }
            p = ai * q - p;
            q = (big_d - p * p) / q;
        }
    }
}

fn parse_minpoly(s: &str) -> Result<(i64, i64)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let body = s
        .strip_prefix("x^2")
        .ok_or_else(|| Error::Parse(format!("minpoly must start with x^2: {s:?}")))?;
    let (mut t, mut n) = (0i64, 0i64);
    if body.is_empty() {
        return Ok((0, 0));
    }
    for term in split_terms(body) {
        let (neg, b) = match term.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, term.strip_prefix('+').unwrap_or(term)),
        };
        let sign = if neg { -1 } else { 1 };
        if let Some(c) = b.strip_suffix('x') {
            let c = c.strip_suffix('*').unwrap_or(c);
            let v: i64 = if c.is_empty() {
                1
            } else {
                c.parse()
                    .map_err(|_| Error::Parse(format!("bad minpoly {s:?}")))?
            };
            t += sign * v;
        } else {
            let v: i64 = b
                .parse()
                .map_err(|_| Error::Parse(format!("bad minpoly {s:?}")))?;
            n += sign * v;
        }
    }
    Ok((t, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> RQField {
        RQField::from_minpoly("x^2+x-1").unwrap()
    }

    #[test]
    fn norm_and_trace_examples() {
        let e = golden();
        assert_eq!(e.norm(RQInt::new(1, 2)), -5);
        assert_eq!(e.norm(RQInt::new(2, 3)), -11);
        assert_eq!(e.norm(RQInt::ONE), 1);
        assert_eq!(e.trace(RQInt::ONE), 2);
        // (1+2a)^2 = 5
        assert_eq!(e.square(RQInt::new(1, 2)), RQInt::int(5));
    }

    #[test]
    fn norm_multiplicative_and_trace_additive_on_box() {
        for e in [golden(), RQField::from_minpoly("x^2+3x+1").unwrap(), RQField::standard(94).unwrap()] {
            for x0 in -10..=10 {
                for x1 in -10..=10 {
                    let x = RQInt::new(x0, x1);
                    for (y0, y1) in [(3, -7), (0, 1), (-5, 2), (10, 10)] {
                        let y = RQInt::new(y0, y1);
                        assert_eq!(e.norm(e.mul(x, y)), e.norm(x) * e.norm(y));
                        assert_eq!(e.trace(e.add(x, y)), e.trace(x) + e.trace(y));
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["-3-5*a", "4*a", "9+a", "-a", "1-a", "0", "17", "-105-52*a"] {
            let x = RQInt::parse(s).unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!(RQInt::parse("2a").unwrap(), RQInt::new(0, 2));
        assert_eq!(RQInt::parse(" 1 + 2 * a ").unwrap(), RQInt::new(1, 2));
        assert!(RQInt::parse("1+b").is_err());
    }

    #[test]
    fn minpoly_parsing() {
        assert_eq!(parse_minpoly("x^2+x-1").unwrap(), (1, -1));
        assert_eq!(parse_minpoly("x^2+3*x+1").unwrap(), (3, 1));
        assert_eq!(parse_minpoly("x^2 + 3x + 1").unwrap(), (3, 1));
        assert_eq!(golden().minpoly_string(), "x^2+x-1");
        assert!(RQField::from_minpoly("x^2-5").is_err()); // Z[sqrt 5] not maximal
        assert!(RQField::from_minpoly("x^2-10").is_err()); // h(Q(sqrt 10)) = 2
    }

    #[test]
    fn fundamental_units() {
        let cases: &[(i64, i128, i128)] = &[
            // d, then eps = x + y*sqrt(d) with 2x, 2y recorded for d = 1 mod 4
            (2, 1, 1),
            (3, 2, 1),
            (7, 8, 3),
            (94, 2143295, 221064),
        ];
        for &(d, x, y) in cases {
            let e = RQField::standard(d).unwrap();
            // standard generator is sqrt d
            assert_eq!(e.fundamental_unit(), RQInt::new(x, y), "d = {d}");
        }
        let e = golden();
        // (1 + sqrt 5)/2 = 1 + a
        assert_eq!(e.fundamental_unit(), RQInt::new(1, 1));
        for d in CLASS_NUMBER_ONE {
            let e = RQField::standard(*d).unwrap();
            let u = e.fundamental_unit();
            assert_eq!(e.norm(u).abs(), 1);
            assert!(e.embed(u) > 1.0);
            assert!(u != RQInt::ONE);
        }
    }

    #[test]
    fn fundamental_unit_is_minimal_by_search() {
        // brute force: smallest unit > 1 has both |c0|,|c1| bounded by eps's own coefficients
        for d in [5i64, 13, 21, 29, 33, 37, 41, 53, 57] {
            let e = RQField::standard(d).unwrap();
            let u = e.fundamental_unit();
            let bound = e.embed(u) - 1e-9;
            for c1 in 1..=u.c1.abs() + 2 {
                for c0 in -(u.c0.abs() + 50)..=(u.c0.abs() + 50) {
                    let x = RQInt::new(c0, c1);
                    if e.norm(x).abs() == 1 && e.embed(x) > 1.0 + 1e-9 {
                        assert!(e.embed(x) >= bound, "smaller unit {x} for d = {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn display_basis_changes() {
        let e1 = golden();
        let e3 = RQField::from_minpoly("x^2+3x+1").unwrap();
        let a = RQField::change_display_basis(RQInt::A, &e1, &e3).unwrap();
        assert_eq!(a, RQInt::new(1, 1));
        assert_eq!(e3.mul(a, a), e3.sub(RQInt::ONE, a)); // a^2 = 1 - a survives
        let s5 = RQField::change_display_basis(RQInt::new(1, 2), &e1, &e3).unwrap();
        assert_eq!(s5, RQInt::new(3, 2));
        assert_eq!(e3.square(s5), RQInt::int(5));
        assert_eq!(RQField::change_display_basis(RQInt::ONE, &e1, &e3).unwrap(), RQInt::ONE);
        let back = RQField::change_display_basis(s5, &e3, &e1).unwrap();
        assert_eq!(back, RQInt::new(1, 2));
        let e2 = RQField::standard(2).unwrap();
        assert_eq!(
            RQField::change_display_basis(RQInt::ONE, &e1, &e2),
            Err(Error::FieldMismatch(5, 2))
        );
    }

    #[test]
    fn exact_square_roots() {
        let e = golden();
        for x0 in -12..=12 {
            for x1 in -12..=12 {
                let y = RQInt::new(x0, x1);
                let sq = e.square(y);
                let r = e.sqrt(sq).unwrap();
                assert!(r == y || r == e.neg(y));
            }
        }
        assert_eq!(e.sqrt(RQInt::int(2)), None);
        assert_eq!(e.sqrt(RQInt::new(0, 1)), None);
        assert_eq!(e.sqrt(RQInt::int(20)), Some(RQInt::new(2, 4)));
        let e2 = RQField::standard(2).unwrap();
        assert_eq!(e2.sqrt(RQInt::int(8)), Some(RQInt::new(0, 2)));
    }
}
