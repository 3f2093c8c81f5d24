//! Genus-2 curves y^2 = F(x) over F_p: reduction checks, point counts, working
//! models and Jacobian group orders.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

use crate::arith::fp;
use crate::frobenius::{count_to_weil, value_at_one, WeilQuartic};
use crate::{Error, Result};

mod group;
mod quadext;

pub use group::{Jacobian, MumfordDiv};
pub use quadext::QuadExt;

/// Largest p^k enumerated by the point counter.
pub const COUNT_BUDGET: u64 = 4_000_000;

/// A hyperelliptic model y^2 + h(x) y = f(x) with integer coefficients (lowest degree first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCurve {
    pub f: Vec<i64>,
    pub h: Vec<i64>,
}

fn parse_coeffs(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))
        })
        .collect()
}

impl RationalCurve {
    pub fn new(f: Vec<i64>, h: Vec<i64>) -> Self {
        RationalCurve { f, h }
    }

    /// Lines "f: c0,c1,...", optional "h: c0,...". A bare coefficient line is read as f.
    pub fn parse(text: &str) -> Result<Self> {
        let mut f = None;
        let mut h = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line.split_once(':') {
                Some(("f", rest)) => f = Some(parse_coeffs(rest)?),
                Some(("h", rest)) => h = parse_coeffs(rest)?,
                Some((k, _)) => return Err(Error::Parse(format!("unknown key {k:?}"))),
                None => f = Some(parse_coeffs(line)?),
            }
        }
        let f = f.ok_or_else(|| Error::Parse("curve file has no f".into()))?;
        Ok(RationalCurve { f, h })
    }

    /// F = 4f + h^2, the model y^2 = F(x) over Z[1/2].
    pub fn f_total(&self) -> Vec<i128> {
        let n = self.f.len().max(2 * self.h.len().saturating_sub(1) + 1);
        let mut out = vec![0i128; n];
        for (i, &c) in self.f.iter().enumerate() {
            out[i] += 4 * c as i128;
        }
        for (i, &a) in self.h.iter().enumerate() {
            for (j, &b) in self.h.iter().enumerate() {
                out[i + j] += a as i128 * b as i128;
            }
        }
        while out.len() > 1 && out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    pub fn reduce(&self, p: u64) -> Result<CurveModel> {
        CurveModel::from_integer(p, &self.f_total())
    }
}

/// y^2 = F(x) over F_p with F squarefree of degree 5 or 6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub p: u64,
    pub f: Vec<u64>,
}

/// p odd, F mod p squarefree of degree 5 or 6.
pub fn good_reduction_check(f: &[i128], p: u64) -> bool {
    if p == 2 || !crate::arith::is_prime(p) {
        return false;
    }
    let mut g: Vec<u64> = f.iter().map(|&c| fp::reduce(c, p)).collect();
    fp::trim(&mut g);
    let d = fp::deg(&g);
    (d == 5 || d == 6) && fp::is_squarefree(&g, p)
}

impl CurveModel {
    pub fn from_integer(p: u64, f: &[i128]) -> Result<Self> {
        if !good_reduction_check(f, p) {
            return Err(Error::BadModel(format!("bad reduction at {p}")));
        }
        let mut g: Vec<u64> = f.iter().map(|&c| fp::reduce(c, p)).collect();
        fp::trim(&mut g);
        Ok(CurveModel { p, f: g })
    }

    /// "p; f0,f1,...,f6"
    pub fn parse_line(s: &str) -> Result<Self> {
        let (p, rest) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected \"p; f0,...\": {s:?}")))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime {p:?}")))?;
        let f: Vec<i128> = parse_coeffs(rest)?.into_iter().map(i128::from).collect();
        Self::from_integer(p, &f)
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    fn lead(&self) -> u64 {
        *self.f.last().unwrap()
    }

    /// #C(F_{p^k}) for k in {1, 2}, by enumeration.
    pub fn count_points(&self, k: u32) -> Result<u64> {
        let p = self.p;
        let size = p.checked_pow(k).filter(|&s| s <= COUNT_BUDGET);
        if size.is_none() || !(1..=2).contains(&k) {
            return Err(Error::BudgetExceeded(format!("point count over F_{p}^{k}")));
        }
        let chi: Vec<i8> = (0..p)
            .map(|a| fp::legendre(a, p) as i8)
            .collect();
        let mut total: i64 = 0;
        if k == 1 {
            for x in 0..p {
                total += 1 + chi[fp::poly_eval(&self.f, x, p) as usize] as i64;
            }
            total += match self.degree() {
                5 => 1,
                _ => 1 + chi[self.lead() as usize] as i64,
            };
        } else {
            // F_{p^2} = F_p(w), w^2 = nr; the quadratic character is that of the norm
            let nr = (2..p).find(|&c| chi[c as usize] == -1).unwrap();
            let mulq = |(a, b): (u64, u64), (c, d): (u64, u64)| {
                (
                    fp::add(fp::mul(a, c, p), fp::mul(fp::mul(b, d, p), nr, p), p),
                    fp::add(fp::mul(a, d, p), fp::mul(b, c, p), p),
                )
            };
            for a in 0..p {
                for b in 0..p {
                    let mut acc = (0u64, 0u64);
                    for &c in self.f.iter().rev() {
                        acc = mulq(acc, (a, b));
                        acc.0 = fp::add(acc.0, c, p);
                    }
                    let norm = fp::sub(
                        fp::mul(acc.0, acc.0, p),
                        fp::mul(nr, fp::mul(acc.1, acc.1, p), p),
                        p,
                    );
                    total += 1 + chi[norm as usize] as i64;
                }
            }
            // every element of F_p is a square in F_{p^2}
            total += if self.degree() == 5 { 1 } else { 2 };
        }
        Ok(total as u64)
    }

    pub fn weil_quartic(&self) -> Result<WeilQuartic> {
        let n1 = self.count_points(1)? as i64;
        let n2 = self.count_points(2)? as i64;
        count_to_weil(n1, n2, self.p)
    }

    /// A model over F_p suited to divisor arithmetic: degree 5 when F has an F_p-root,
    /// else degree 6 with square leading coefficient.
    pub fn working_model(&self) -> Result<WorkingModel> {
        WorkingModel::new(self, ModelPreference::Imaginary)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// one point at infinity, degree 5
    Imaginary,
    /// two rational points at infinity, degree 6, balanced divisors
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelPreference {
    Imaginary,
    Real,
}

/// An F_p-isomorphic model used for Jacobian arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkingModel {
    pub p: u64,
    pub f: Vec<u64>,
    pub kind: ModelKind,
    /// x_old = r + 1/x_new when a point was moved to infinity
    pub shift: Option<u64>,
}

/// t^6 F(r + 1/t) over F_p.
fn invert_at(f: &[u64], r: u64, p: u64) -> Vec<u64> {
    // F(r + s) by Taylor shift, then reverse into degree-6 coefficients
    let mut shifted = vec![0u64; f.len()];
    let mut row = vec![1u64];
    for (i, &c) in f.iter().enumerate() {
        // c (r + s)^i, row = binomials C(i, j)
        for (j, &b) in row.iter().enumerate() {
            let term = fp::mul(fp::mul(c, b % p, p), fp::pow(r, (i - j) as u64, p), p);
            shifted[j] = fp::add(shifted[j], term, p);
        }
        let mut next = vec![1u64; i + 2];
        for j in 1..=i {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    let mut out = vec![0u64; 7];
    for (j, &c) in shifted.iter().enumerate() {
        out[6 - j] = c;
    }
    fp::trim(&mut out);
    out
}

impl WorkingModel {
    pub fn new(c: &CurveModel, pref: ModelPreference) -> Result<WorkingModel> {
        let p = c.p;
        let square = |a: u64| a != 0 && fp::legendre(a, p) == 1;
        if c.degree() == 5 && pref == ModelPreference::Imaginary {
            return Ok(WorkingModel {
                p,
                f: c.f.clone(),
                kind: ModelKind::Imaginary,
                shift: None,
            });
        }
        if pref == ModelPreference::Imaginary {
            if let Some(r) = (0..p).find(|&x| fp::poly_eval(&c.f, x, p) == 0) {
                let f = invert_at(&c.f, r, p);
                debug_assert_eq!(fp::deg(&f), 5);
                return Ok(WorkingModel {
                    p,
                    f,
                    kind: ModelKind::Imaginary,
                    shift: Some(r),
                });
            }
        }
        if c.degree() == 6 && square(c.lead()) {
            return Ok(WorkingModel {
                p,
                f: c.f.clone(),
                kind: ModelKind::Real,
                shift: None,
            });
        }
        if let Some(r) = (0..p).find(|&x| square(fp::poly_eval(&c.f, x, p))) {
            let f = invert_at(&c.f, r, p);
            debug_assert_eq!(fp::deg(&f), 6);
            return Ok(WorkingModel {
                p,
                f,
                kind: ModelKind::Real,
                shift: Some(r),
            });
        }
        Err(Error::BadModel(format!(
            "no rational Weierstrass point and no rational point to move to infinity over F_{p}"
        )))
    }

    pub fn curve(&self) -> CurveModel {
        CurveModel {
            p: self.p,
            f: self.f.clone(),
        }
    }
}

/// #J(F_{p^k}) = prod (1 - alpha_i^k), from the Weil quartic.
pub fn jacobian_order(w: &WeilQuartic, k: u32) -> BigUint {
    let v: BigInt = value_at_one(&w.charpoly_of_power(k));
    assert!(v.is_positive(), "Jacobian order must be positive");
    v.to_biguint().unwrap()
}

/// #J(F_p) from point counts: (N1^2 + N2)/2 - p.
pub fn jacobian_order_from_counts(n1: u64, n2: u64, p: u64) -> u64 {
    (n1 * n1 + n2) / 2 - p
}

pub fn small_order(w: &WeilQuartic) -> u64 {
    jacobian_order(w, 1).to_u64().expect("order fits in u64")
}
