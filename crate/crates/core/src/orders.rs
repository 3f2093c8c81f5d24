//! Orders O_E[pi] in S in O_L = O_E[x]/(h_p): conductors, the u-search and the
//! basis (1, (pi - u)/b).

use crate::frobenius::FrobData;
use crate::quadratic::{Factorization, PrimeLabel, RQField, RQIdeal, RQInt};
use crate::{Error, Result};

/// Exhaustive u-search limit; beyond it u is assembled by CRT over residue characteristics.
pub const EXHAUSTIVE_U_LIMIT: i128 = 10_000;

/// 2u - a_p in b and u^2 - a_p u + s_p in b^2.
pub fn basis_conditions(field: &RQField, frob: &FrobData, b: &RQIdeal, u: RQInt) -> bool {
    let lin = field.sub(u.scale(2), frob.a_p);
    if !b.contains(lin) {
        return false;
    }
    let b2 = field.ideal_mul(b, b);
    b2.contains(frob.h_at(field, u))
}

/// Conductor data of O_E[pi] in the maximal order O_L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorResult {
    pub b_ol: RQIdeal,
    /// (prime, exponent, label, u witness modulo prime^exponent)
    pub parts: Vec<(RQIdeal, u32, PrimeLabel, RQInt)>,
}

impl ConductorResult {
    pub fn factorization(&self) -> Factorization {
        Factorization::new(self.parts.iter().map(|(_, e, l, _)| (*l, *e)).collect())
    }

    pub fn is_trivial(&self) -> bool {
        self.b_ol.is_unit()
    }
}

/// v_lambda(b_OL) by residue search: the largest e with some u mod lambda^e
/// meeting both basis conditions.
pub fn conductor_exponent_by_search(
    field: &RQField,
    lambda: &RQIdeal,
    frob: &FrobData,
) -> (u32, RQInt) {
    let vdisc = field.elem_valuation(lambda, frob.disc);
    let mut e = 0;
    let mut witness = RQInt::ZERO;
    while 2 * (e + 1) <= vdisc {
        let b = field.ideal_pow(lambda, e + 1);
        let found = b
            .residue_system()
            .find(|&u| basis_conditions(field, frob, &b, u));
        match found {
            Some(u) => {
                e += 1;
                witness = u;
            }
            None => break,
        };
    }
    (e, witness)
}

/// v_lambda(b_OL) and a witness u modulo lambda^e. Odd primes use
/// floor(v_lambda(disc)/2) with u = a_p/2; primes above 2 use the residue search.
pub fn conductor_exponent(
    field: &RQField,
    lambda: &RQIdeal,
    label: &PrimeLabel,
    frob: &FrobData,
) -> Result<(u32, RQInt)> {
    if frob.disc.is_zero() {
        return Err(Error::DiscZero);
    }
    if label.ell == 2 {
        return Ok(conductor_exponent_by_search(field, lambda, frob));
    }
    let e = field.elem_valuation(lambda, frob.disc) / 2;
    if e == 0 {
        return Ok((0, RQInt::ZERO));
    }
    let b = field.ideal_pow(lambda, e);
    let m = b.min_integer();
    // 2 * (m+1)/2 = 1 mod m
    let u = b.reduce(frob.a_p.scale((m + 1) / 2));
    debug_assert!(basis_conditions(field, frob, &b, u));
    Ok((e, u))
}

pub fn compute_bol(field: &RQField, frob: &FrobData) -> Result<ConductorResult> {
    if frob.disc.is_zero() {
        return Err(Error::DiscZero);
    }
    let dideal = field.principal(frob.disc);
    let mut parts = Vec::new();
    let mut b_ol = RQIdeal::UNIT;
    for (lambda, v, label) in field.factor_ideal(&dideal) {
        if v < 2 {
            continue;
        }
        let (e, u) = conductor_exponent(field, &lambda, &label, frob)?;
        if e > 0 {
            b_ol = field.ideal_mul(&b_ol, &field.ideal_pow(&lambda, e));
            parts.push((lambda, e, label, u));
        }
    }
    Ok(ConductorResult { b_ol, parts })
}

/// Representative of u + b minimizing |c1|, then |c0|, preferring c0 >= 0.
pub fn canonical_in_class(b: &RQIdeal, u: RQInt) -> RQInt {
    let (m, c, s) = b.hnf();
    let j0 = (-u.c1).div_euclid(s);
    let mut best: Option<RQInt> = None;
    for j in [j0 - 1, j0, j0 + 1, j0 + 2] {
        let c1 = u.c1 + j * s;
        let x = u.c0 + j * c;
        let i0 = (-x).div_euclid(m);
        for i in [i0, i0 + 1] {
            let cand = RQInt::new(x + i * m, c1);
            let key = |v: &RQInt| (v.c1.abs(), v.c0.abs(), v.c0 < 0, v.c1 < 0);
            if best.is_none_or(|bb| key(&cand) < key(&bb)) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

fn search_u(field: &RQField, b: &RQIdeal, frob: &FrobData) -> Option<RQInt> {
    b.residue_system()
        .find(|&u| basis_conditions(field, frob, b, u))
}

/// u with 2u - a_p in b and h_p(u) in b^2, canonical in its class modulo b.
pub fn find_u(field: &RQField, b: &RQIdeal, frob: &FrobData) -> Result<RQInt> {
    if b.is_unit() {
        return Ok(RQInt::ZERO);
    }
    let u = if b.norm() <= EXHAUSTIVE_U_LIMIT {
        search_u(field, b, frob)
    } else {
        crt_u(field, b, frob)
    }
    .ok_or_else(|| Error::NoWitness(b.to_string()))?;
    Ok(canonical_in_class(b, u))
}

fn crt_u(field: &RQField, b: &RQIdeal, frob: &FrobData) -> Option<RQInt> {
    // group prime powers by residue characteristic; groups have coprime minimal integers
    let mut groups: Vec<(u64, RQIdeal)> = Vec::new();
    for (p, e, label) in field.factor_ideal(b) {
        let pe = field.ideal_pow(&p, e);
        match groups.iter_mut().find(|(l, _)| *l == label.ell) {
            Some((_, g)) => *g = field.ideal_mul(g, &pe),
            None => groups.push((label.ell, pe)),
        }
    }
    let total: i128 = groups.iter().map(|(_, g)| g.min_integer()).product();
    let mut acc = RQInt::ZERO;
    for (_, g) in &groups {
        let ug = search_u(field, g, frob)?;
        let mg = g.min_integer();
        let rest = total / mg;
        let (_, inv, _) = crate::arith::xgcd_i128(rest.rem_euclid(mg), mg);
        let coef = rest * inv.rem_euclid(mg);
        acc = field.add(acc, ug.scale(coef));
    }
    let u = b.reduce(acc);
    basis_conditions(field, frob, b, u).then_some(u)
}

/// All divisors of b_OL, norm-descending.
pub fn order_divisors(field: &RQField, cond: &ConductorResult) -> Vec<RQIdeal> {
    let mut out = vec![RQIdeal::UNIT];
    for (p, e, _, _) in &cond.parts {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = RQIdeal::UNIT;
            for _ in 0..=*e {
                next.push(field.ideal_mul(d, &pk));
                pk = field.ideal_mul(&pk, p);
            }
        }
        out = next;
    }
    out.sort_by(|x, y| y.norm().cmp(&x.norm()).then(x.cmp(y)));
    out
}

/// The order with O_E-basis (1, (pi - u)/b_gen).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderSpec {
    pub b: RQIdeal,
    pub b_gen: RQInt,
    pub u: RQInt,
    pub frob: FrobData,
}

pub fn make_order_spec(field: &RQField, b: &RQIdeal, frob: &FrobData) -> Result<OrderSpec> {
    let u = find_u(field, b, frob)?;
    let b_gen = field.find_generator(b)?;
    Ok(OrderSpec {
        b: *b,
        b_gen,
        u,
        frob: *frob,
    })
}

/// Order spec from explicit printed values, checked against the basis conditions.
pub fn order_spec_from_values(
    field: &RQField,
    frob: &FrobData,
    u: RQInt,
    b_gen: RQInt,
) -> Result<OrderSpec> {
    let b = field.principal(b_gen);
    if !basis_conditions(field, frob, &b, u) {
        return Err(Error::NoWitness(format!("u = {u} fails modulo ({b_gen})")));
    }
    Ok(OrderSpec {
        b,
        b_gen,
        u,
        frob: *frob,
    })
}
