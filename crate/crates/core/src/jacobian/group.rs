use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;
use rand::Rng;

use super::quadext::QuadExt;
use super::{ModelKind, WorkingModel};
use crate::arith::{FfElem, Field, FiniteField, PolyRing};

type Poly = Vec<FfElem>;

/// Reduced divisor class [u, v, n]: u monic, deg v < deg u, v^2 = F mod u.
/// On degree-6 models n counts the copies of the first point at infinity
/// (balanced representation, 0 <= n <= 2 - deg u); on degree-5 models n = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MumfordDiv {
    pub u: Poly,
    pub v: Poly,
    pub n: i32,
}

impl MumfordDiv {
    pub fn degree(&self) -> usize {
        self.u.len() - 1
    }
}

/// Jac(C)(F_{p^k}) for a working model C.
pub struct Jacobian {
    pub field: FiniteField,
    pub f: Poly,
    pub kind: ModelKind,
    vplus: Poly,
    p: u64,
}

impl Jacobian {
    pub fn new(model: &WorkingModel, k: usize) -> Self {
        let field = FiniteField::new(model.p, k);
        let f: Poly = model.f.iter().map(|&c| field.embed(c)).collect();
        let vplus = match model.kind {
            ModelKind::Imaginary => Vec::new(),
            ModelKind::Real => compute_vplus(&field, &f),
        };
        Jacobian {
            field,
            f,
            kind: model.kind,
            vplus,
            p: model.p,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    fn ring(&self) -> PolyRing<'_, FiniteField> {
        PolyRing::new(&self.field)
    }

    pub fn zero(&self) -> MumfordDiv {
        MumfordDiv {
            u: self.ring().one(),
            v: Vec::new(),
            n: if self.kind == ModelKind::Real { 1 } else { 0 },
        }
    }

    pub fn is_zero(&self, d: &MumfordDiv) -> bool {
        *d == self.zero()
    }

    /// The class of u, v (semi-reduced, v^2 = F mod u), n, if consistent.
    pub fn from_uv(&self, u: Poly, v: Poly, n: i32) -> Option<MumfordDiv> {
        let r = self.ring();
        let u = r.monic(&u);
        if u.is_empty() {
            return None;
        }
        let v = r.rem(&v, &u);
        if !r.rem(&r.sub(&r.mul(&v, &v), &self.f), &u).is_empty() {
            return None;
        }
        Some(self.reduce(u, v, n))
    }

    pub fn neg(&self, d: &MumfordDiv) -> MumfordDiv {
        let r = self.ring();
        let n = match self.kind {
            ModelKind::Imaginary => 0,
            ModelKind::Real => 2 - d.degree() as i32 - d.n,
        };
        MumfordDiv {
            u: d.u.clone(),
            v: r.neg(&d.v),
            n,
        }
    }

    pub fn add(&self, a: &MumfordDiv, b: &MumfordDiv) -> MumfordDiv {
        let r = self.ring();
        let (d1, e1, e2) = r.xgcd(&a.u, &b.u);
        let vs = r.add(&a.v, &b.v);
        let (d, c1, c2) = r.xgcd(&d1, &vs);
        let s1 = r.mul(&c1, &e1);
        let s2 = r.mul(&c1, &e2);
        let s3 = c2;
        let u = r.div_exact(&r.mul(&a.u, &b.u), &r.mul(&d, &d));
        let t = r.add(
            &r.add(&r.mul(&r.mul(&s1, &a.u), &b.v), &r.mul(&r.mul(&s2, &b.u), &a.v)),
            &r.mul(&s3, &r.add(&r.mul(&a.v, &b.v), &self.f)),
        );
        let v = r.rem(&r.div_exact(&t, &d), &u);
        let n = match self.kind {
            ModelKind::Imaginary => 0,
            ModelKind::Real => a.n + b.n + r.deg(&d) as i32 - 1,
        };
        self.reduce(u, v, n)
    }

    pub fn double(&self, a: &MumfordDiv) -> MumfordDiv {
        self.add(a, a)
    }

    pub fn sub(&self, a: &MumfordDiv, b: &MumfordDiv) -> MumfordDiv {
        self.add(a, &self.neg(b))
    }

    /// One reduction step along y = vc, with vc = v mod u.
    fn step(&self, u: &Poly, vc: &Poly, n: i32) -> (Poly, Poly, i32) {
        let r = self.ring();
        let num = r.sub(&self.f, &r.mul(vc, vc));
        let u2 = r.monic(&r.div_exact(&num, u));
        let v2 = r.rem(&r.neg(vc), &u2);
        let n2 = match self.kind {
            ModelKind::Imaginary => 0,
            ModelKind::Real => {
                let total = r.deg(u) + r.deg(&u2);
                let dminus = r.sub(&self.vplus, vc);
                // pole order of y - vc at the first point at infinity
                let a = if dminus.is_empty() {
                    total - r.deg(&r.add(&self.vplus, vc))
                } else {
                    r.deg(&dminus)
                };
                n + a as i32 - r.deg(&u2) as i32
            }
        };
        (u2, v2, n2)
    }

    fn reduce(&self, mut u: Poly, mut v: Poly, mut n: i32) -> MumfordDiv {
        let r = self.ring();
        match self.kind {
            ModelKind::Imaginary => {
                while r.deg(&u) > 2 {
                    let (u2, v2, _) = self.step(&u, &v, 0);
                    u = u2;
                    v = v2;
                }
            }
            ModelKind::Real => {
                for _ in 0..64 {
                    let du = r.deg(&u);
                    let m = 2 - du as i32 - n;
                    let vc = if du > 3 {
                        v.clone()
                    } else if (du == 3 && m < 0) || (du < 3 && n >= 0 && m < 0) {
                        // bring v towards +V: lowers n
                        r.sub(&self.vplus, &r.rem(&r.sub(&self.vplus, &v), &u))
                    } else if du == 3 || n < 0 {
                        let vm = r.neg(&self.vplus);
                        r.sub(&vm, &r.rem(&r.sub(&vm, &v), &u))
                    } else {
                        break;
                    };
                    let (u2, v2, n2) = self.step(&u, &vc, n);
                    u = u2;
                    v = v2;
                    n = n2;
                }
                let du = r.deg(&u) as i32;
                assert!(
                    du <= 2 && n >= 0 && n <= 2 - du,
                    "balanced reduction did not terminate"
                );
            }
        }
        let v = r.rem(&v, &u);
        MumfordDiv { u, v, n }
    }

    pub fn mul_u(&self, d: &MumfordDiv, k: &BigUint) -> MumfordDiv {
        let mut acc = self.zero();
        for i in (0..k.bits()).rev() {
            acc = self.double(&acc);
            if k.bit(i) {
                acc = self.add(&acc, d);
            }
        }
        acc
    }

    pub fn mul(&self, d: &MumfordDiv, k: &BigInt) -> MumfordDiv {
        let m = self.mul_u(d, k.magnitude());
        if k.sign() == Sign::Minus {
            self.neg(&m)
        } else {
            m
        }
    }

    pub fn mul_small(&self, d: &MumfordDiv, k: i64) -> MumfordDiv {
        self.mul(d, &BigInt::from(k))
    }

    /// The p-power Frobenius on coordinates.
    pub fn frobenius(&self, d: &MumfordDiv) -> MumfordDiv {
        let fr = |c: &FfElem| self.field.frobenius(c);
        MumfordDiv {
            u: d.u.iter().map(fr).collect(),
            v: d.v.iter().map(fr).collect(),
            n: d.n,
        }
    }

    /// sum_i c_i pi^i (d)
    pub fn apply_frob_poly(&self, d: &MumfordDiv, coeffs: &[BigInt]) -> MumfordDiv {
        let mut acc = self.zero();
        let mut cur = d.clone();
        for (i, c) in coeffs.iter().enumerate() {
            if i > 0 {
                cur = self.frobenius(&cur);
            }
            if !c.is_zero() {
                acc = self.add(&acc, &self.mul(&cur, c));
            }
        }
        acc
    }

    /// A random class with deg u = 2 (n = 0), sampled through random monic u.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> MumfordDiv {
        loop {
            let b = self.field.random(rng);
            let c = self.field.random(rng);
            if let Some(d) = self.lift_quadratic(&b, &c, rng) {
                return d;
            }
        }
    }

    /// A class with u = x^2 + b x + c and random square root choices, if one exists.
    fn lift_quadratic<R: Rng + ?Sized>(
        &self,
        b: &FfElem,
        c: &FfElem,
        rng: &mut R,
    ) -> Option<MumfordDiv> {
        let f = &self.field;
        let r = self.ring();
        let u = vec![c.clone(), b.clone(), f.one()];
        let v = if let Some(q) = QuadExt::new(f, b.clone(), c.clone()) {
            // F mod u as an element of F[x]/(u)
            let fm = r.rem(&self.f, &u);
            let z = f.zero();
            let e = (fm.first().unwrap_or(&z).clone(), fm.get(1).unwrap_or(&z).clone());
            let s = q.sqrt(&e)?;
            let s = if rng.gen_bool(0.5) { q.neg(&s) } else { s };
            r.trim(vec![s.0, s.1])
        } else {
            let disc = f.sub(&f.mul(b, b), &f.mul(&f.from_i64(4), c));
            let sd = f.sqrt(&disc)?;
            let half = f.inv(&f.from_i64(2))?;
            let r1 = f.mul(&f.sub(&sd, b), &half);
            let r2 = f.mul(&f.sub(&f.neg(&sd), b), &half);
            let sign = |y: FfElem, rng: &mut R| if rng.gen_bool(0.5) { f.neg(&y) } else { y };
            let y1 = sign(f.sqrt(&r.eval(&self.f, &r1))?, rng);
            if r1 == r2 {
                if f.is_zero(&y1) {
                    return None;
                }
                // v = y1 + y' (x - r1), 2 y1 y' = F'(r1)
                let fd = derivative(f, &self.f);
                let yp = f.div(&r.eval(&fd, &r1), &f.mul(&f.from_i64(2), &y1))?;
                r.add(&r.constant(f.sub(&y1, &f.mul(&yp, &r1))), &r.trim(vec![f.zero(), yp]))
            } else {
                let y2 = sign(f.sqrt(&r.eval(&self.f, &r2))?, rng);
                // line through (r1, y1), (r2, y2)
                let slope = f.div(&f.sub(&y1, &y2), &f.sub(&r1, &r2))?;
                r.trim(vec![f.sub(&y1, &f.mul(&slope, &r1)), slope])
            }
        };
        let n = 0;
        let d = self.from_uv(u, v, n)?;
        Some(d)
    }

    /// Every reduced class over F_p; only for k = 1 and small p.
    pub fn enumerate(&self) -> Vec<MumfordDiv> {
        assert_eq!(self.field.degree(), 1, "enumeration only over the prime field");
        let f = &self.field;
        let r = self.ring();
        let elems: Vec<FfElem> = f.elements().collect();
        let mut out = Vec::new();
        let ns = |deg: i32| -> Vec<i32> {
            match self.kind {
                ModelKind::Imaginary => vec![0],
                ModelKind::Real => (0..=2 - deg).collect(),
            }
        };
        for n in ns(0) {
            out.push(MumfordDiv {
                u: r.one(),
                v: Vec::new(),
                n,
            });
        }
        for x0 in &elems {
            let u = r.linear(x0);
            for y in &elems {
                let v = r.constant(y.clone());
                if r.rem(&r.sub(&r.mul(&v, &v), &self.f), &u).is_empty() {
                    for n in ns(1) {
                        out.push(MumfordDiv {
                            u: u.clone(),
                            v: v.clone(),
                            n,
                        });
                    }
                }
            }
        }
        for c in &elems {
            for b in &elems {
                let u = vec![c.clone(), b.clone(), f.one()];
                for v0 in &elems {
                    for v1 in &elems {
                        let v = r.trim(vec![v0.clone(), v1.clone()]);
                        if r.rem(&r.sub(&r.mul(&v, &v), &self.f), &u).is_empty() {
                            out.push(MumfordDiv {
                                u: u.clone(),
                                v,
                                n: 0,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Order of d, given a multiple of it.
    pub fn order_of(&self, d: &MumfordDiv, multiple: &BigUint) -> BigUint {
        let mut ord = multiple.clone();
        for (q, _) in factor_biguint(multiple) {
            let qb = BigUint::from(q);
            while (&ord % &qb).is_zero() {
                let cand = &ord / &qb;
                if self.is_zero(&self.mul_u(d, &cand)) {
                    ord = cand;
                } else {
                    break;
                }
            }
        }
        ord
    }
}

fn derivative(f: &FiniteField, a: &[FfElem]) -> Vec<FfElem> {
    let r = PolyRing::new(f);
    r.trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect(),
    )
}

/// The degree-3 V with V^2 agreeing with F in degrees 3..6 and lc(V) a fixed square root of lc(F).
fn compute_vplus(field: &FiniteField, f: &[FfElem]) -> Vec<FfElem> {
    let lc = field
        .sqrt(&f[6])
        .expect("degree-6 working model needs a square leading coefficient");
    let two = field.from_i64(2);
    let inv2l = field.inv(&field.mul(&two, &lc)).unwrap();
    // V = lc x^3 + a2 x^2 + a1 x + a0, matching x^5, x^4, x^3
    let a2 = field.mul(&f[5], &inv2l);
    let a1 = field.mul(&field.sub(&f[4], &field.mul(&a2, &a2)), &inv2l);
    let a0 = field.mul(
        &field.sub(&f[3], &field.mul(&two, &field.mul(&a2, &a1))),
        &inv2l,
    );
    vec![a0, a1, a2, lc]
}

/// Trial division of a big integer; used only on group orders with small factors.
pub fn factor_biguint(n: &BigUint) -> Vec<(u64, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut q = 2u64;
    while !n.is_zero() && n > BigUint::from(1u32) {
        let qb = BigUint::from(q);
        if &qb * &qb > n {
            let rest: u64 = n.clone().try_into().unwrap_or_else(|_| {
                panic!("cofactor too large for trial division")
            });
            out.push((rest, 1));
            break;
        }
        let mut e = 0;
        while (&n % &qb).is_zero() {
            n /= &qb;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    out
}
