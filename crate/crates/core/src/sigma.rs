//! The integral Frobenius matrix sigma_p over O_E.

use std::fmt;

use crate::frobenius::FrobData;
use crate::orders::OrderSpec;
use crate::quadratic::{RQField, RQIdeal, RQInt};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Scalar,
    Companion,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaMatrix {
    pub m11: RQInt,
    pub m12: RQInt,
    pub m21: RQInt,
    pub m22: RQInt,
    pub provenance: Provenance,
}

impl SigmaMatrix {
    pub fn trace(&self, field: &RQField) -> RQInt {
        field.add(self.m11, self.m22)
    }

    pub fn det(&self, field: &RQField) -> RQInt {
        field.sub(field.mul(self.m11, self.m22), field.mul(self.m12, self.m21))
    }

    pub fn entries(&self) -> [RQInt; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    /// g * self * g^-1 for g with unit determinant.
    pub fn conjugate_by(&self, field: &RQField, g: [RQInt; 4]) -> Result<SigmaMatrix> {
        let det = field.sub(field.mul(g[0], g[3]), field.mul(g[1], g[2]));
        if !field.is_unit(det) {
            return Err(Error::NonIntegralEntry(format!("det {det} is not a unit")));
        }
        let dinv = field
            .div_exact(RQInt::ONE, det)
            .ok_or_else(|| Error::NonIntegralEntry(det.to_string()))?;
        let ginv = [
            field.mul(g[3], dinv),
            field.mul(field.neg(g[1]), dinv),
            field.mul(field.neg(g[2]), dinv),
            field.mul(g[0], dinv),
        ];
        let mm = |x: [RQInt; 4], y: [RQInt; 4]| {
            [
                field.add(field.mul(x[0], y[0]), field.mul(x[1], y[2])),
                field.add(field.mul(x[0], y[1]), field.mul(x[1], y[3])),
                field.add(field.mul(x[2], y[0]), field.mul(x[3], y[2])),
                field.add(field.mul(x[2], y[1]), field.mul(x[3], y[3])),
            ]
        };
        let r = mm(mm(g, self.entries()), ginv);
        Ok(SigmaMatrix {
            m11: r[0],
            m12: r[1],
            m21: r[2],
            m22: r[3],
            provenance: self.provenance,
        })
    }
}

impl fmt::Display for SigmaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m11, self.m12, self.m21, self.m22
        )
    }
}

/// diag(pi, pi) for a Frobenius with pi^2 = q, pi in O_E.
pub fn build_sigma_scalar(field: &RQField, pi: RQInt, q: u64) -> Result<SigmaMatrix> {
    if field.square(pi) != RQInt::int(q as i128) {
        return Err(Error::NonIntegralEntry(format!("({pi})^2 != {q}")));
    }
    Ok(SigmaMatrix {
        m11: pi,
        m12: RQInt::ZERO,
        m21: RQInt::ZERO,
        m22: pi,
        provenance: Provenance::Scalar,
    })
}

/// [[u, -h_p(u)/b], [b, a_p - u]]; the companion matrix when b = 1, u = 0.
pub fn build_sigma(field: &RQField, spec: &OrderSpec) -> Result<SigmaMatrix> {
    let f = &spec.frob;
    let hu = f.h_at(field, spec.u);
    let m12 = field
        .div_exact(hu, spec.b_gen)
        .ok_or_else(|| Error::NonIntegralEntry(format!("-({hu})/({})", spec.b_gen)))?;
    let companion = spec.u.is_zero() && field.is_unit(spec.b_gen);
    Ok(SigmaMatrix {
        m11: spec.u,
        m12: field.neg(m12),
        m21: spec.b_gen,
        m22: field.sub(f.a_p, spec.u),
        provenance: if companion {
            Provenance::Companion
        } else {
            Provenance::General
        },
    })
}

pub fn companion(field: &RQField, f: &FrobData) -> SigmaMatrix {
    SigmaMatrix {
        m11: RQInt::ZERO,
        m12: field.neg(f.s_p),
        m21: RQInt::ONE,
        m22: f.a_p,
        provenance: Provenance::Companion,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaReport {
    pub trace_ok: bool,
    pub det_ok: bool,
    /// (sigma - u)/b has entries in O_E
    pub cofactor_integral: bool,
    pub failures: Vec<String>,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.trace_ok && self.det_ok && self.cofactor_integral
    }
}

/// The cofactor (sigma - u)/b, if integral.
pub fn cofactor(field: &RQField, m: &SigmaMatrix, spec: &OrderSpec) -> Option<[RQInt; 4]> {
    let b = spec.b_gen;
    let e = m.entries();
    let shifted = [field.sub(e[0], spec.u), e[1], e[2], field.sub(e[3], spec.u)];
    let mut out = [RQInt::ZERO; 4];
    for (o, x) in out.iter_mut().zip(shifted) {
        *o = field.div_exact(x, b)?;
    }
    Some(out)
}

pub fn verify_sigma(field: &RQField, m: &SigmaMatrix, spec: &OrderSpec) -> SigmaReport {
    let f = &spec.frob;
    let mut failures = Vec::new();
    let tr = m.trace(field);
    let det = m.det(field);
    let trace_ok = tr == f.a_p;
    if !trace_ok {
        failures.push(format!("trace {tr} != a_p {}", f.a_p));
    }
    let det_ok = det == f.s_p;
    if !det_ok {
        failures.push(format!("det {det} != s_p {}", f.s_p));
    }
    // both -h(u)/b^2 and -(2u - a_p)/b must be integral
    let b = spec.b_gen;
    let hu = f.h_at(field, spec.u);
    let lin = field.sub(spec.u.scale(2), f.a_p);
    let exact = field.div_exact(hu, field.square(b)).is_some()
        && field.div_exact(lin, b).is_some();
    let cofactor_integral = exact && cofactor(field, m, spec).is_some();
    if !cofactor_integral {
        failures.push(format!("(sigma - {})/({b}) is not integral", spec.u));
    }
    SigmaReport {
        trace_ok,
        det_ok,
        cofactor_integral,
        failures,
    }
}

fn check_prime_to_p(field: &RQField, n: &RQIdeal, p: u64) -> Result<()> {
    if field.ideal_add(n, &field.principal(RQInt::int(p as i128))) != RQIdeal::UNIT {
        return Err(Error::NotPrimeToP(p));
    }
    Ok(())
}

/// Frobenius acts on A[n] as a scalar in O_E/n exactly when n | b_p.
pub fn scalar_action_on_torsion(
    field: &RQField,
    n: &RQIdeal,
    b_p: &RQIdeal,
    p: u64,
) -> Result<bool> {
    check_prime_to_p(field, n, p)?;
    Ok(field.ideal_divides(n, b_p))
}

/// The prime splits completely in K(Proj A[n]) exactly when n | b_p.
pub fn splits_completely(field: &RQField, n: &RQIdeal, b_p: &RQIdeal, p: u64) -> Result<bool> {
    scalar_action_on_torsion(field, n, b_p, p)
}
