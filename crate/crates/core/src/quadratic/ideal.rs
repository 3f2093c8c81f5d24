use std::fmt;

use super::label::{Factorization, PrimeLabel, SplitKind};
use super::{RQField, RQInt};
use crate::arith::{exact_sqrt, factor_integer, fp, gcd_i128, xgcd_i128};
use crate::{Error, Result};

/// Nonzero ideal of O_E = Z[a] in Hermite normal form: Z-basis {m, c + s*a}
/// with m, s > 0 and 0 <= c < m. The norm is m*s.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RQIdeal {
    m: i128,
    c: i128,
    s: i128,
}

impl RQIdeal {
    pub const UNIT: RQIdeal = RQIdeal { m: 1, c: 0, s: 1 };

    pub fn norm(&self) -> i128 {
        self.m * self.s
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// (m, c, s) of the basis {m, c + s*a}.
    pub fn hnf(&self) -> (i128, i128, i128) {
        (self.m, self.c, self.s)
    }

    pub fn basis(&self) -> [RQInt; 2] {
        [RQInt::int(self.m), RQInt::new(self.c, self.s)]
    }

    /// Smallest positive rational integer in the ideal.
    pub fn min_integer(&self) -> i128 {
        self.m
    }

    pub fn contains(&self, x: RQInt) -> bool {
        if x.c1 % self.s != 0 {
            return false;
        }
        let j = x.c1 / self.s;
        (x.c0 - j * self.c) % self.m == 0
    }

    /// Canonical representative of x modulo the ideal:
    /// 0 <= c1 < s and 0 <= c0 < m.
    pub fn reduce(&self, x: RQInt) -> RQInt {
        let c1 = x.c1.rem_euclid(self.s);
        let j = (x.c1 - c1) / self.s;
        let c0 = (x.c0 - j * self.c).rem_euclid(self.m);
        RQInt::new(c0, c1)
    }

    /// All Norm(I) canonical representatives of O_E / I.
    pub fn residue_system(&self) -> impl Iterator<Item = RQInt> + '_ {
        (0..self.s).flat_map(move |c1| (0..self.m).map(move |c0| RQInt::new(c0, c1)))
    }

    fn from_vectors(v: &[RQInt]) -> RQIdeal {
        let mut pivot = (0i128, 0i128);
        let mut m = 0i128;
        for x in v {
            let (x0, x1) = (x.c0, x.c1);
            if x1 == 0 {
                m = gcd_i128(m, x0);
            } else if pivot.1 == 0 {
                m = gcd_i128(m, pivot.0);
                pivot = (x0, x1);
            } else {
                let (g, u, w) = xgcd_i128(pivot.1, x1);
                let new_pivot = (u * pivot.0 + w * x0, g);
                let zero_row = (x1 / g) * pivot.0 - (pivot.1 / g) * x0;
                m = gcd_i128(m, zero_row);
                pivot = new_pivot;
            }
        }
        assert!(m != 0 && pivot.1 != 0, "lattice is not of full rank");
        if pivot.1 < 0 {
            pivot = (-pivot.0, -pivot.1);
        }
        RQIdeal {
            m: m.abs(),
            c: pivot.0.rem_euclid(m.abs()),
            s: pivot.1,
        }
    }
}

impl fmt::Display for RQIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.m, RQInt::new(self.c, self.s))
    }
}

impl RQField {
    pub fn principal(&self, x: RQInt) -> RQIdeal {
        assert!(!x.is_zero(), "zero ideal");
        RQIdeal::from_vectors(&[x, self.mul(x, RQInt::A)])
    }

    pub fn ideal_from_gens(&self, gens: &[RQInt]) -> RQIdeal {
        let mut v = Vec::with_capacity(2 * gens.len());
        for &g in gens {
            v.push(g);
            v.push(self.mul(g, RQInt::A));
        }
        RQIdeal::from_vectors(&v)
    }

    pub fn ideal_mul(&self, i: &RQIdeal, j: &RQIdeal) -> RQIdeal {
        let mut v = Vec::with_capacity(4);
        for x in i.basis() {
            for y in j.basis() {
                v.push(self.mul(x, y));
            }
        }
        RQIdeal::from_vectors(&v)
    }

    pub fn ideal_pow(&self, i: &RQIdeal, e: u32) -> RQIdeal {
        (0..e).fold(RQIdeal::UNIT, |acc, _| self.ideal_mul(&acc, i))
    }

    pub fn ideal_add(&self, i: &RQIdeal, j: &RQIdeal) -> RQIdeal {
        let [a, b] = i.basis();
        let [c, d] = j.basis();
        RQIdeal::from_vectors(&[a, b, c, d])
    }

    pub fn ideal_conj(&self, i: &RQIdeal) -> RQIdeal {
        let [a, b] = i.basis();
        RQIdeal::from_vectors(&[self.conj(a), self.conj(b)])
    }

    /// i divides j, i.e. j is contained in i.
    pub fn ideal_divides(&self, i: &RQIdeal, j: &RQIdeal) -> bool {
        j.basis().iter().all(|&x| i.contains(x))
    }

    /// j / i for i dividing j.
    pub fn ideal_div(&self, j: &RQIdeal, i: &RQIdeal) -> Option<RQIdeal> {
        if !self.ideal_divides(i, j) {
            return None;
        }
        // i * conj(i) = (N(i))
        let n = i.norm();
        let prod = self.ideal_mul(j, &self.ideal_conj(i));
        let v: Vec<RQInt> = prod
            .basis()
            .iter()
            .map(|x| RQInt::new(x.c0 / n, x.c1 / n))
            .collect();
        debug_assert!(prod.basis().iter().all(|x| x.c0 % n == 0 && x.c1 % n == 0));
        Some(RQIdeal::from_vectors(&[v[0], v[1], self.mul(v[0], RQInt::A), self.mul(v[1], RQInt::A)]))
    }

    /// The primes above a rational prime l, labelled.
    pub fn prime_above(&self, ell: u64) -> Vec<(RQIdeal, PrimeLabel)> {
        let (t, n) = self.minpoly();
        let l = ell as i128;
        let tm = t.rem_euclid(l) as u64;
        let nm = n.rem_euclid(l) as u64;
        let roots: Vec<u64> = if ell == 2 {
            (0..2u64)
                .filter(|&x| (x * x + tm * x + nm).is_multiple_of(2))
                .collect()
        } else {
            let disc = fp::reduce(t * t - 4 * n, ell);
            let inv2 = fp::inv(2, ell).unwrap();
            match fp::sqrt(disc, ell) {
                None => Vec::new(),
                Some(r) => {
                    let mt = fp::sub(0, tm, ell);
                    let mut v = vec![
                        fp::mul(fp::add(mt, r, ell), inv2, ell),
                        fp::mul(fp::sub(mt, r, ell), inv2, ell),
                    ];
                    v.sort();
                    v.dedup();
                    v
                }
            }
        };
        let ideal_at = |r: u64| self.ideal_from_gens(&[RQInt::int(l), RQInt::new(-(r as i128), 1)]);
        match roots.as_slice() {
            [] => vec![(
                self.principal(RQInt::int(l)),
                PrimeLabel {
                    ell,
                    kind: SplitKind::Inert,
                },
            )],
            [r] => vec![(
                ideal_at(*r),
                PrimeLabel {
                    ell,
                    kind: SplitKind::Ramified,
                },
            )],
            [r1, r2] => vec![
                (
                    ideal_at(*r1),
                    PrimeLabel {
                        ell,
                        kind: SplitKind::Split(1),
                    },
                ),
                (
                    ideal_at(*r2),
                    PrimeLabel {
                        ell,
                        kind: SplitKind::Split(2),
                    },
                ),
            ],
            _ => unreachable!(),
        }
    }

    pub fn prime_ideal(&self, label: &PrimeLabel) -> Result<RQIdeal> {
        self.prime_above(label.ell)
            .into_iter()
            .find(|(_, l)| l == label)
            .map(|(i, _)| i)
            .ok_or_else(|| Error::Parse(format!("{label} is not a prime of this field")))
    }

    /// Ideal of a labelled factorization.
    pub fn ideal_of(&self, f: &Factorization) -> Result<RQIdeal> {
        let mut acc = RQIdeal::UNIT;
        for (l, e) in f.parts() {
            let p = self.prime_ideal(l)?;
            acc = self.ideal_mul(&acc, &self.ideal_pow(&p, *e));
        }
        Ok(acc)
    }

    /// Largest e with p^e dividing i.
    pub fn valuation(&self, p: &RQIdeal, i: &RQIdeal) -> u32 {
        let mut e = 0;
        let mut cur = *i;
        while let Some(q) = self.ideal_div(&cur, p) {
            e += 1;
            cur = q;
        }
        e
    }

    pub fn elem_valuation(&self, p: &RQIdeal, x: RQInt) -> u32 {
        self.valuation(p, &self.principal(x))
    }

    pub fn factor_ideal(&self, i: &RQIdeal) -> Vec<(RQIdeal, u32, PrimeLabel)> {
        let mut out = Vec::new();
        let mut rest = *i;
        for (ell, _) in factor_integer(i.norm() as u64) {
            for (p, label) in self.prime_above(ell) {
                let e = self.valuation(&p, &rest);
                if e > 0 {
                    rest = self.ideal_div(&rest, &self.ideal_pow(&p, e)).unwrap();
                    out.push((p, e, label));
                }
            }
        }
        debug_assert!(rest.is_unit());
        out
    }

    pub fn factorization(&self, i: &RQIdeal) -> Factorization {
        Factorization::new(
            self.factor_ideal(i)
                .into_iter()
                .map(|(_, e, l)| (l, e))
                .collect(),
        )
    }

    /// Canonical generator of a principal ideal: among all generators, minimal |c1|,
    /// then minimal |c0|, then c0 > 0.
    pub fn find_generator(&self, i: &RQIdeal) -> Result<RQInt> {
        let nrm = i.norm();
        let big_d = self.discriminant();
        let (t, _) = self.minpoly();
        let eps = self.embed(self.fundamental_unit());
        // a balanced associate has |c1| <= sqrt(N)(sqrt(eps) + 1/sqrt(eps))/sqrt(D)
        let bound = ((nrm as f64).sqrt() * (eps.sqrt() + 1.0 / eps.sqrt()) / (big_d as f64).sqrt())
            .ceil() as i128
            + 1;
        let (_, _, s) = i.hnf();
        let mut c1 = 0i128;
        while c1 <= bound {
            let mut found: Vec<RQInt> = Vec::new();
            for cc1 in [c1, -c1] {
                for sign in [1i128, -1] {
                    // c0^2 - t c0 c1 + n c1^2 = sign*N  =>  (2 c0 - t c1)^2 = D c1^2 + 4 sign N
                    let Some(r) = exact_sqrt(big_d * cc1 * cc1 + 4 * sign * nrm) else {
                        continue;
                    };
                    for rr in [r, -r] {
                        let num = rr + t * cc1;
                        if num % 2 != 0 {
                            continue;
                        }
                        let x = RQInt::new(num / 2, cc1);
                        if i.contains(x) {
                            found.push(x);
                        }
                    }
                }
                if c1 == 0 {
                    break;
                }
            }
            if let Some(best) = found
                .into_iter()
                .min_by_key(|x| (x.c0.abs(), x.c0 < 0, x.c1 < 0))
            {
                debug_assert_eq!(self.principal(best), *i);
                return Ok(best);
            }
            c1 += s;
        }
        Err(Error::GeneratorSearchExceeded(i.to_string()))
    }
}
