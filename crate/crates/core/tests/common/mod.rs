#![allow(dead_code)]

use std::collections::HashSet;

use frobint::arith::factor_integer;
use frobint::frobenius::{classify, recover_ap, FrobData};
use frobint::jacobian::{jacobian_order, CurveModel, Jacobian, ModelPreference, MumfordDiv, WorkingModel};
use frobint::orders::compute_bol;
use frobint::pipeline::Fixture;
use frobint::quadratic::{Factorization, RQField, RQIdeal, RQInt};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;

pub const TABLES: [&str; 3] = ["table1_N23.tsv", "table2_N125.tsv", "table3_N133.tsv"];

pub fn load(name: &str) -> Fixture {
    Fixture::load(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// Rows whose printed Fac(b_OL) disagrees with the conductor, as (table, p, computed, printed).
pub const PRINTED_DISAGREEMENTS: &[(&str, u64, &str, &str)] = &[
    ("table1_N23.tsv", 101, "(2)^2", "(2)"),
    ("table1_N23.tsv", 271, "(2)*l5", "(2)"),
    ("table1_N23.tsv", 809, "(2)^2", "(2)"),
    ("table1_N23.tsv", 821, "(2)", "(2)^2"),
    ("table1_N23.tsv", 853, "(2)^2", "(2)"),
    ("table1_N23.tsv", 1181, "(2)^2", "(2)"),
    ("table1_N23.tsv", 1453, "(2)^2*l11_1*l11_2", "(2)*l11_1*l11_2"),
    ("table1_N23.tsv", 1613, "(2)^2", "(2)"),
    ("table1_N23.tsv", 1669, "(2)^2", "(2)"),
    ("table1_N23.tsv", 1789, "(2)^2", "(2)"),
    ("table1_N23.tsv", 1861, "(2)^2", "(2)"),
    ("table1_N23.tsv", 1949, "(2)^2", "(2)"),
    ("table2_N125.tsv", 89, "(2)^2", "(2)"),
    ("table2_N125.tsv", 457, "(2)", "(2)^2"),
    ("table2_N125.tsv", 509, "(2)^2", "(2)"),
    ("table2_N125.tsv", 661, "(2)^3*l5", "(2)*l5"),
    ("table2_N125.tsv", 761, "(2)*l5", "(2)^3*l5"),
    ("table3_N133.tsv", 509, "(2)^2", "(2)"),
    ("table3_N133.tsv", 541, "(2)^3", "(2)"),
    ("table3_N133.tsv", 757, "(2)^2", "(2)"),
    ("table3_N133.tsv", 1409, "(2)^2*(3)", "(2)*(3)"),
    ("table3_N133.tsv", 1973, "(2)^2", "(2)"),
];

/// Split characteristics whose labels the tables use the other way round.
pub const LABEL_SWAPS: [(&str, &[u64]); 3] = [
    ("table1_N23.tsv", &[31]),
    ("table2_N125.tsv", &[19, 59]),
    ("table3_N133.tsv", &[11, 109]),
];

/// Is there u with lambda^e | 2u - a_p and lambda^2e | u^2 - a_p u + p?
fn has_local_basis(f: &RQField, frob: &FrobData, lam: &RQIdeal, e: u32) -> bool {
    let le = f.ideal_pow(lam, e);
    let le2 = f.ideal_mul(&le, &le);
    let found = le.residue_system().any(|u| {
        let h = f.add(f.sub(f.square(u), f.mul(frob.a_p, u)), frob.s_p);
        le.contains(f.sub(u.scale(2), frob.a_p)) && le2.contains(h)
    });
    found
}

/// Conductor of O_E[pi] in O_L by a local search at every prime whose square divides disc.
pub fn local_conductor(f: &RQField, frob: &FrobData) -> Factorization {
    let nd = f.norm(frob.disc).unsigned_abs() as u64;
    assert!(nd > 0);
    let mut parts = Vec::new();
    for (ell, _) in factor_integer(nd) {
        for (lam, label) in f.prime_above(ell) {
            let mut e = 0;
            while has_local_basis(f, frob, &lam, e + 1) {
                e += 1;
            }
            if e > 0 {
                parts.push((label, e));
            }
        }
    }
    Factorization::new(parts)
}

/// Small ordinary absolutely simple curves with a_p = c0 +- a and proper b_OL.
pub const ORACLE_CURVES: &[(u64, &[i128])] = &[
    (3, &[0, 1, 2, 0, 0, 1]),
    (3, &[0, 1, 0, 1, 1, 1, 1]),
    (7, &[3, 1, 1, 4, 0, 1]),
    (11, &[3, 2, 2, 4, 0, 1]),
    (11, &[3, 5, 6, 10, 0, 1]),
    (11, &[1, 9, 9, 5, 10, 10, 1]),
];

pub struct Surface {
    pub field: RQField,
    pub frob: FrobData,
    pub model: WorkingModel,
}

pub fn surface(p: u64, f: &[i128], pref: ModelPreference) -> Option<Surface> {
    let c = CurveModel::from_integer(p, f).unwrap();
    let w = c.weil_quartic().unwrap();
    let d = frobint::frobenius::detect_field_d(&w).unwrap();
    let field = RQField::standard(d).unwrap();
    assert_eq!(field.discriminant(), w.y_discriminant());
    let a_p = recover_ap(&w, &field).unwrap().canonical();
    assert_eq!(a_p.c1.abs(), 1);
    let frob = FrobData::new(&field, p, a_p, RQInt::int(p as i128));
    assert!(classify(&field, &frob).bail_reason.is_none());
    let model = WorkingModel::new(&c, pref).ok()?;
    Some(Surface { field, frob, model })
}

/// Closure of a subgroup under a new element.
fn adjoin(jac: &Jacobian, group: &HashSet<MumfordDiv>, r: &MumfordDiv) -> HashSet<MumfordDiv> {
    let mut out = group.clone();
    let mut mult = r.clone();
    while !group.contains(&mult) {
        for s in group {
            out.insert(jac.add(s, &mult));
        }
        mult = jac.add(&mult, r);
    }
    out
}

/// J[l^v] as a full list, over the first F_{p^k} containing it.
fn full_torsion(s: &Surface, ell: u64, v: u32, rng: &mut ChaCha8Rng) -> (Jacobian, Vec<MumfordDiv>) {
    let w = s.frob.weil_quartic(&s.field).unwrap();
    let lb = BigUint::from(ell);
    let lv = BigInt::from(ell.pow(v));
    for k in 1..=12u32 {
        let mut order = jacobian_order(&w, k);
        let mut sylow = BigUint::one();
        while (&order % &lb).is_zero() {
            order /= &lb;
            sylow *= &lb;
        }
        if sylow < BigUint::from(ell.pow(4 * v)) {
            continue;
        }
        assert!(sylow <= BigUint::from(400_000u32), "Sylow subgroup too large");
        let target: usize = sylow.try_into().unwrap();
        let jac = Jacobian::new(&s.model, k as usize);
        let mut group = HashSet::from([jac.zero()]);
        while group.len() < target {
            let r = jac.mul_u(&jac.random(rng), &order);
            if !group.contains(&r) {
                group = adjoin(&jac, &group, &r);
            }
        }
        let tors: Vec<MumfordDiv> = group
            .into_iter()
            .filter(|x| jac.is_zero(&jac.mul(x, &lv)))
            .collect();
        if tors.len() == ell.pow(4 * v) as usize {
            return (jac, tors);
        }
    }
    panic!("J[{ell}^{v}] not found below degree 12");
}

/// x = x0 + x1 a acting on J(F_{p^k}), with a = e (pi + V - c0) where a_p = c0 + e a.
fn act(s: &Surface, jac: &Jacobian, x: RQInt, pt: &MumfordDiv) -> MumfordDiv {
    let k = jac.degree();
    let mut vq = pt.clone();
    for _ in 0..k - 1 {
        vq = jac.frobenius(&vq);
    }
    let vq = jac.mul_small(&vq, s.frob.q as i64);
    let c0 = s.frob.a_p.c0 as i64;
    let e = s.frob.a_p.c1 as i64;
    let t = jac.add(&jac.frobenius(pt), &vq);
    let a_pt = jac.mul_small(&jac.sub(&t, &jac.mul_small(pt, c0)), e);
    jac.add(&jac.mul_small(pt, x.c0 as i64), &jac.mul_small(&a_pt, x.c1 as i64))
}

/// The conductor of End in O_L from every coset c (pi - u0)/beta, c in O_E/b_OL.
pub fn brute_force_conductor(s: &Surface, rng: &mut ChaCha8Rng) -> RQIdeal {
    let f = &s.field;
    let cond = compute_bol(f, &s.frob).unwrap();
    let b = cond.b_ol;
    let b2 = f.ideal_mul(&b, &b);
    let u0 = b
        .residue_system()
        .find(|&u| {
            let h = f.add(f.sub(f.square(u), f.mul(s.frob.a_p, u)), s.frob.s_p);
            b.contains(f.sub(u.scale(2), s.frob.a_p)) && b2.contains(h)
        })
        .unwrap();
    let m = b.min_integer();
    let beta = f.find_generator(&b).unwrap();
    let gamma = f.div_exact(RQInt::int(m), beta).unwrap();
    let mut members: Vec<RQInt> = b.basis().to_vec();
    let tors: Vec<(Jacobian, Vec<MumfordDiv>)> = factor_integer(m as u64)
        .into_iter()
        .map(|(ell, v)| full_torsion(s, ell, v, rng))
        .collect();
    for c in b.residue_system() {
        let x = f.mul(c, gamma);
        let kills = tors.iter().all(|(jac, pts)| {
            pts.iter().all(|q| {
                let r = jac.sub(&jac.frobenius(q), &act(s, jac, u0, q));
                jac.is_zero(&act(s, jac, x, &r))
            })
        });
        if kills {
            members.push(c);
        }
    }
    let ideal = f.ideal_from_gens(&members);
    f.ideal_div(&b, &ideal).unwrap()
}
