//! Which orders between O_E[pi] and O_L lie in End(J).
//!
//! An element g(pi)/n of Q(pi) is an endomorphism at a prime l != p exactly when
//! g(pi) kills J[l^v], v = v_l(n). The torsion is realised over F_{p^k} where
//! x^k = 1 modulo (h4, l^v), and sampled as W(pi) P for W = (x^k - 1 mod h4)/l^v.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{factor_integer, Poly};
use crate::frobenius::{BailReason, FrobData, WeilQuartic};
use crate::jacobian::{Jacobian, MumfordDiv, WorkingModel};
use crate::orders::{find_u, ConductorResult};
use crate::quadratic::{RQField, RQIdeal, RQInt};
use crate::{Error, Result};

type QElem = [BigRational; 4];

/// g(pi)/n with g of degree <= 3, gcd(content g, n) = 1 and n > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiExpression {
    pub g: [BigInt; 4],
    pub n: BigInt,
}

impl PiExpression {
    pub fn new(g: [BigInt; 4], n: BigInt) -> Self {
        assert!(!n.is_zero());
        let mut c = g.iter().fold(n.clone(), |acc, x| acc.gcd(x));
        if n.is_negative() {
            c = -c;
        }
        PiExpression {
            g: g.map(|x| x / &c),
            n: n / c,
        }
    }

    pub fn rational(c: i128) -> Self {
        Self::new(
            [BigInt::from(c), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            BigInt::one(),
        )
    }

    pub fn pi() -> Self {
        Self::new(
            [BigInt::zero(), BigInt::one(), BigInt::zero(), BigInt::zero()],
            BigInt::one(),
        )
    }

    fn from_q(x: &QElem) -> Self {
        let n = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = [0, 1, 2, 3].map(|i| (&x[i] * BigRational::from(n.clone())).to_integer());
        Self::new(g, n)
    }

    fn to_q(&self) -> QElem {
        [0, 1, 2, 3].map(|i| BigRational::new(self.g[i].clone(), self.n.clone()))
    }

    pub fn is_integral(&self) -> bool {
        self.n.is_one()
    }
}

impl fmt::Display for PiExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for i in (0..4).rev() {
            let c = &self.g[i];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 || !mag.is_one() {
                s.push_str(&mag.to_string());
            }
            s.push_str(&mono);
        }
        if s.is_empty() {
            s.push('0');
        }
        if self.n.is_one() {
            write!(f, "{s}")
        } else {
            write!(f, "({s})/{}", self.n)
        }
    }
}

/// Q[x]/(h4).
#[derive(Clone, Debug)]
struct PiAlgebra {
    h: [BigRational; 5],
}

impl PiAlgebra {
    fn new(w: &WeilQuartic) -> Self {
        PiAlgebra {
            h: w.coeffs().map(|c| BigRational::from(BigInt::from(c))),
        }
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> QElem {
        while c.len() > 4 {
            let top = c.pop().unwrap();
            let d = c.len() - 4;
            for i in 0..4 {
                c[d + i] = &c[d + i] - &top * &self.h[i];
            }
        }
        c.resize(4, BigRational::zero());
        [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]
    }

    fn mul(&self, a: &QElem, b: &QElem) -> QElem {
        let mut out = vec![BigRational::zero(); 7];
        for i in 0..4 {
            for j in 0..4 {
                out[i + j] = &out[i + j] + &a[i] * &b[j];
            }
        }
        self.reduce(out)
    }

    fn add(a: &QElem, b: &QElem) -> QElem {
        [0, 1, 2, 3].map(|i| &a[i] + &b[i])
    }

    fn scale(a: &QElem, s: &BigRational) -> QElem {
        [0, 1, 2, 3].map(|i| &a[i] * s)
    }

    fn constant(c: i128) -> QElem {
        let mut x = [0, 0, 0, 0].map(|_| BigRational::zero());
        x[0] = BigRational::from(BigInt::from(c));
        x
    }
}

/// The embedding E -> Q(pi) sending a_p to pi + q/pi.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    pub field: RQField,
    pub w: WeilQuartic,
    pub a_p: RQInt,
    alg: PiAlgebra,
    gen: QElem,
}

impl FieldEmbedding {
    /// Image of c0 + c1*a.
    fn image_q(&self, x: RQInt) -> QElem {
        let c1 = BigRational::from(BigInt::from(x.c1));
        PiAlgebra::add(&PiAlgebra::constant(x.c0), &PiAlgebra::scale(&self.gen, &c1))
    }

    pub fn image(&self, x: RQInt) -> PiExpression {
        PiExpression::from_q(&self.image_q(x))
    }

    /// Image of the display generator a.
    pub fn gen(&self) -> PiExpression {
        PiExpression::from_q(&self.gen)
    }

    pub fn mul(&self, x: &PiExpression, y: &PiExpression) -> PiExpression {
        PiExpression::from_q(&self.alg.mul(&x.to_q(), &y.to_q()))
    }

    /// e^2 - a_p e + q = 0 in Q(pi) for e = pi.
    fn check(&self) -> bool {
        let (t, n) = self.field.minpoly();
        let g2 = self.alg.mul(&self.gen, &self.gen);
        let lhs = PiAlgebra::add(
            &PiAlgebra::add(&g2, &PiAlgebra::scale(&self.gen, &BigRational::from(BigInt::from(t)))),
            &PiAlgebra::constant(n),
        );
        lhs.iter().all(|c| c.is_zero())
    }
}

/// pi + q/pi with q/pi = -(pi^3 - s1 pi^2 + s2 pi - q s1)/q.
pub fn trace_element(w: &WeilQuartic) -> PiExpression {
    let q = BigInt::from(w.q);
    let s1 = BigInt::from(w.s1);
    let s2 = BigInt::from(w.s2);
    PiExpression::new([&q * &s1, &q - &s2, s1, -BigInt::one()], q)
}

/// Embed the display generator a = (t - c0)/c1, where a_p = c0 + c1*a and t = pi + q/pi.
pub fn embed_field_gen(w: &WeilQuartic, field: &RQField, a_p: RQInt) -> Result<FieldEmbedding> {
    if a_p.c1 == 0 {
        return Err(Error::EmbeddingFailed(format!("a_p = {a_p} is rational")));
    }
    let alg = PiAlgebra::new(w);
    let t = trace_element(w).to_q();
    let shifted = PiAlgebra::add(&t, &PiAlgebra::constant(-a_p.c0));
    let gen = PiAlgebra::scale(&shifted, &BigRational::new(BigInt::one(), BigInt::from(a_p.c1)));
    let emb = FieldEmbedding {
        field: field.clone(),
        w: *w,
        a_p,
        alg,
        gen,
    };
    if !emb.check() {
        return Err(Error::EmbeddingFailed(format!(
            "a_p = {a_p} is not a root of y^2 - {}y + {}",
            w.s1,
            w.s2 - 2 * w.q as i64
        )));
    }
    Ok(emb)
}

/// (pi - u)/b = (pi - u) conj(b) / N(b) inside Q(pi).
pub fn to_pi_numerator(emb: &FieldEmbedding, u: RQInt, b: RQInt) -> PiExpression {
    assert!(!b.is_zero());
    let f = &emb.field;
    let mut num = emb.image_q(f.neg(u));
    num[1] = &num[1] + BigRational::one();
    let prod = emb.alg.mul(&num, &emb.image_q(f.conj(b)));
    let nb = BigRational::from(BigInt::from(f.norm(b)));
    PiExpression::from_q(&PiAlgebra::scale(&prod, &nb.recip()))
}

/// Least k <= kmax with x^k = 1 modulo (h4, n).
pub fn torsion_field_degree(w: &WeilQuartic, n: u64, kmax: u32) -> Option<u32> {
    if n == 1 {
        return Some(1);
    }
    let n = n as i128;
    let h = w.coeffs().map(|c| c.rem_euclid(n));
    let mut x = [0i128, 1, 0, 0];
    for k in 1..=kmax {
        if x == [1, 0, 0, 0] {
            return Some(k);
        }
        // multiply by x
        let top = x[3];
        x = [
            (-top * h[0]).rem_euclid(n),
            (x[0] - top * h[1]).rem_euclid(n),
            (x[1] - top * h[2]).rem_euclid(n),
            (x[2] - top * h[3]).rem_euclid(n),
        ];
    }
    None
}

/// (x^k - 1 mod h4)/l^v as an integer cubic.
fn torsion_map(w: &WeilQuartic, k: u32, lv: u64) -> Option<[BigInt; 4]> {
    let mut xk = vec![BigInt::zero(); k as usize + 1];
    xk[k as usize] = BigInt::one();
    xk[0] = -BigInt::one();
    let r = Poly::new(xk).rem(&w.poly());
    let lv = BigInt::from(lv);
    let mut out = [0, 0, 0, 0].map(|_| BigInt::zero());
    for (i, c) in r.coeffs().iter().enumerate() {
        if !(c % &lv).is_zero() {
            return None;
        }
        out[i] = c / &lv;
    }
    Some(out)
}

/// A generating set of J[l^v] over F_{p^k}.
#[derive(Clone, Debug)]
pub struct TorsionBasis {
    pub ell: u64,
    pub v: u32,
    pub k: u32,
    pub points: Vec<MumfordDiv>,
    pub samples_drawn: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconclusive {
    pub reason: BailReason,
    pub detail: String,
}

impl Inconclusive {
    fn new(reason: BailReason, detail: impl Into<String>) -> Self {
        Inconclusive {
            reason,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Inconclusive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.reason, self.detail)
    }
}

/// Sample J[l^v] inside Jac over F_{p^k} until the samples generate it, i.e. until
/// l^(v-1) times the samples span J[l], which has l^4 elements.
pub fn sample_torsion<R: rand::Rng>(
    jac: &Jacobian,
    w: &WeilQuartic,
    ell: u64,
    v: u32,
    budget: usize,
    span_cap: usize,
    rng: &mut R,
) -> std::result::Result<TorsionBasis, Inconclusive> {
    let k = jac.degree() as u32;
    if v == 0 {
        return Ok(TorsionBasis {
            ell,
            v,
            k,
            points: Vec::new(),
            samples_drawn: 0,
        });
    }
    let lv = ell.pow(v);
    let full = (ell as usize).pow(4);
    if full > span_cap {
        return Err(Inconclusive::new(
            BailReason::BudgetExhausted,
            format!("J[{ell}] has {full} elements, over the span cap"),
        ));
    }
    let wmap = torsion_map(w, k, lv).ok_or_else(|| {
        Inconclusive::new(
            BailReason::TorsionFieldTooLarge,
            format!("J[{lv}] is not rational over F_(p^{k})"),
        )
    })?;
    let low = BigInt::from(ell.pow(v - 1));
    let mut span: HashSet<MumfordDiv> = HashSet::from([jac.zero()]);
    let mut points = Vec::new();
    for drawn in 1..=budget {
        let p = jac.random(rng);
        let q = jac.apply_frob_poly(&p, &wmap);
        let r = jac.mul(&q, &low);
        if span.contains(&r) {
            continue;
        }
        let mut next = HashSet::with_capacity(span.len() * ell as usize);
        let mut mult = jac.zero();
        for _ in 0..ell {
            for s in &span {
                next.insert(jac.add(s, &mult));
            }
            mult = jac.add(&mult, &r);
        }
        span = next;
        points.push(q);
        if span.len() == full {
            return Ok(TorsionBasis {
                ell,
                v,
                k,
                points,
                samples_drawn: drawn,
            });
        }
    }
    Err(Inconclusive::new(
        BailReason::BudgetExhausted,
        format!(
            "{budget} samples spanned {} of {full} points of J[{ell}]",
            span.len()
        ),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Member,
    NonMember,
    Inconclusive(Inconclusive),
}

#[derive(Clone, Debug)]
pub struct MembershipVerdict {
    pub verdict: Verdict,
    pub points_tested: usize,
    /// Largest extension degree used.
    pub field_degree: Option<u32>,
    /// A torsion point not killed, for NonMember.
    pub witness: Option<(u64, u32, MumfordDiv)>,
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EndoOptions {
    pub kmax: u32,
    pub budget: usize,
    pub span_cap: usize,
    pub seed: u64,
}

impl Default for EndoOptions {
    fn default() -> Self {
        EndoOptions {
            kmax: 36,
            budget: 64,
            span_cap: 1 << 20,
            seed: 0x5eed,
        }
    }
}

/// Torsion of one curve, sampled lazily and cached per prime power.
pub struct TorsionOracle {
    model: WorkingModel,
    w: WeilQuartic,
    opts: EndoOptions,
    rng: ChaCha8Rng,
    jacs: HashMap<u32, Jacobian>,
    bases: HashMap<(u64, u32), std::result::Result<TorsionBasis, Inconclusive>>,
}

impl TorsionOracle {
    pub fn new(model: WorkingModel, w: WeilQuartic, opts: EndoOptions) -> Self {
        TorsionOracle {
            model,
            w,
            rng: ChaCha8Rng::seed_from_u64(opts.seed),
            opts,
            jacs: HashMap::new(),
            bases: HashMap::new(),
        }
    }

    pub fn p(&self) -> u64 {
        self.model.p
    }

    pub fn jacobian(&mut self, k: u32) -> &Jacobian {
        let model = &self.model;
        self.jacs
            .entry(k)
            .or_insert_with(|| Jacobian::new(model, k as usize))
    }

    pub fn basis(&mut self, ell: u64, v: u32) -> std::result::Result<TorsionBasis, Inconclusive> {
        if let Some(b) = self.bases.get(&(ell, v)) {
            return b.clone();
        }
        let out = self.compute_basis(ell, v);
        self.bases.insert((ell, v), out.clone());
        out
    }

    fn compute_basis(&mut self, ell: u64, v: u32) -> std::result::Result<TorsionBasis, Inconclusive> {
        let lv = ell
            .checked_pow(v)
            .ok_or_else(|| Inconclusive::new(BailReason::TorsionFieldTooLarge, "l^v overflows"))?;
        let k = torsion_field_degree(&self.w, lv, self.opts.kmax).ok_or_else(|| {
            Inconclusive::new(
                BailReason::TorsionFieldTooLarge,
                format!("J[{lv}] needs an extension of degree > {}", self.opts.kmax),
            )
        })?;
        self.jacobian(k);
        let jac = &self.jacs[&k];
        sample_torsion(
            jac,
            &self.w,
            ell,
            v,
            self.opts.budget,
            self.opts.span_cap,
            &mut self.rng,
        )
    }

    /// Whether g(pi)/n is an endomorphism at every prime l | n other than p.
    pub fn kills_torsion(&mut self, e: &PiExpression) -> MembershipVerdict {
        let p = self.p();
        let n = e
            .n
            .to_u64()
            .expect("denominator of a membership test fits in u64");
        let mut tested = 0;
        let mut degree = None;
        for (ell, v) in factor_integer(n) {
            if ell == p {
                continue;
            }
            let basis = match self.basis(ell, v) {
                Ok(b) => b,
                Err(why) => {
                    return MembershipVerdict {
                        verdict: Verdict::Inconclusive(why),
                        points_tested: tested,
                        field_degree: degree,
                        witness: None,
                    }
                }
            };
            degree = degree.max(Some(basis.k));
            let lv = BigInt::from(ell.pow(v));
            let g: Vec<BigInt> = e.g.iter().map(|c| c.mod_floor(&lv)).collect();
            let jac = self.jacobian(basis.k);
            for pt in &basis.points {
                tested += 1;
                if !jac.is_zero(&jac.apply_frob_poly(pt, &g)) {
                    return MembershipVerdict {
                        verdict: Verdict::NonMember,
                        points_tested: tested,
                        field_degree: degree,
                        witness: Some((ell, v, pt.clone())),
                    };
                }
            }
        }
        MembershipVerdict {
            verdict: Verdict::Member,
            points_tested: tested,
            field_degree: degree,
            witness: None,
        }
    }
}

/// Outcome of the scan at one prime of the conductor of O_L.
#[derive(Clone, Debug)]
pub struct LevelScan {
    pub prime: RQIdeal,
    pub max_exp: u32,
    pub exp: u32,
}

#[derive(Clone, Debug)]
pub struct BpDetermination {
    pub b_p: RQIdeal,
    pub u_p: RQInt,
    pub levels: Vec<LevelScan>,
    pub verdicts: Vec<(RQIdeal, Verdict)>,
}

/// Everything determine_bp needs about one surface.
pub struct EndoContext<'a> {
    pub field: &'a RQField,
    pub frob: FrobData,
    pub emb: FieldEmbedding,
    pub oracle: TorsionOracle,
}

impl<'a> EndoContext<'a> {
    pub fn new(
        field: &'a RQField,
        frob: FrobData,
        model: WorkingModel,
        opts: EndoOptions,
    ) -> Result<Self> {
        let w = frob
            .weil_quartic(field)
            .ok_or_else(|| Error::EmbeddingFailed("s_p differs from q".into()))?;
        let emb = embed_field_gen(&w, field, frob.a_p)?;
        Ok(EndoContext {
            field,
            frob,
            emb,
            oracle: TorsionOracle::new(model, w, opts),
        })
    }

    /// Is (pi - u)/b in End, for b dividing the conductor of O_L?
    pub fn is_member(&mut self, b: &RQIdeal) -> Result<(RQInt, MembershipVerdict)> {
        let u = find_u(self.field, b, &self.frob)?;
        let gen = self.field.find_generator(b)?;
        let e = to_pi_numerator(&self.emb, u, gen);
        Ok((u, self.oracle.kills_torsion(&e)))
    }
}

fn inconclusive_from(e: Error) -> Inconclusive {
    Inconclusive::new(BailReason::Unsupported, e.to_string())
}

/// b_p: raise each prime of the conductor of O_L until (pi - u)/lambda^j leaves End,
/// then confirm the product.
pub fn determine_bp(
    cond: &ConductorResult,
    ctx: &mut EndoContext<'_>,
) -> std::result::Result<BpDetermination, Inconclusive> {
    if cond.is_trivial() {
        return Ok(BpDetermination {
            b_p: RQIdeal::UNIT,
            u_p: RQInt::ZERO,
            levels: Vec::new(),
            verdicts: Vec::new(),
        });
    }
    let field = ctx.field;
    let mut levels = Vec::new();
    let mut verdicts = Vec::new();
    let mut b_p = RQIdeal::UNIT;
    for (lambda, e, _, _) in &cond.parts {
        let mut exp = 0;
        for j in 1..=*e {
            let b = field.ideal_pow(lambda, j);
            let (_, verdict) = ctx.is_member(&b).map_err(inconclusive_from)?;
            verdicts.push((b, verdict.verdict.clone()));
            match verdict.verdict {
                Verdict::Member => exp = j,
                Verdict::NonMember => break,
                Verdict::Inconclusive(why) => return Err(why),
            }
        }
        // divisors of a non-member are never members
        for j in exp + 2..=*e {
            let b = field.ideal_pow(lambda, j);
            let (_, verdict) = ctx.is_member(&b).map_err(inconclusive_from)?;
            if verdict.is_member() {
                return Err(Inconclusive::new(
                    BailReason::Unsupported,
                    format!("{b} is a member but a divisor is not"),
                ));
            }
            verdicts.push((b, verdict.verdict));
        }
        levels.push(LevelScan {
            prime: *lambda,
            max_exp: *e,
            exp,
        });
        b_p = field.ideal_mul(&b_p, &field.ideal_pow(lambda, exp));
    }
    let u_p = find_u(field, &b_p, &ctx.frob).map_err(inconclusive_from)?;
    if !b_p.is_unit() {
        let (_, verdict) = ctx.is_member(&b_p).map_err(inconclusive_from)?;
        if !verdict.is_member() {
            return Err(Inconclusive::new(
                BailReason::Unsupported,
                format!("prime-power levels agree but {b_p} is not a member"),
            ));
        }
    }
    Ok(BpDetermination {
        b_p,
        u_p,
        levels,
        verdicts,
    })
}
