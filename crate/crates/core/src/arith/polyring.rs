use super::field::Field;

/// Polynomials over a [`Field`], as trimmed coefficient vectors (lowest degree first).
pub struct PolyRing<'a, F: Field> {
    pub field: &'a F,
}

impl<'a, F: Field> Clone for PolyRing<'a, F> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<'a, F: Field> Copy for PolyRing<'a, F> {}

type P<F> = Vec<<F as Field>::Elem>;

impl<'a, F: Field> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        PolyRing { field }
    }

    pub fn trim(&self, mut a: P<F>) -> P<F> {
        while a.last().is_some_and(|c| self.field.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn deg(&self, a: &[F::Elem]) -> isize {
        a.len() as isize - 1
    }

    pub fn one(&self) -> P<F> {
        vec![self.field.one()]
    }

    pub fn constant(&self, c: F::Elem) -> P<F> {
        self.trim(vec![c])
    }

    /// x - r
    pub fn linear(&self, r: &F::Elem) -> P<F> {
        vec![self.field.neg(r), self.field.one()]
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> P<F> {
        let f = self.field;
        let n = a.len().max(b.len());
        let z = f.zero();
        let out = (0..n)
            .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.trim(out)
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> P<F> {
        let f = self.field;
        let n = a.len().max(b.len());
        let z = f.zero();
        let out = (0..n)
            .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.trim(out)
    }

    pub fn neg(&self, a: &[F::Elem]) -> P<F> {
        a.iter().map(|c| self.field.neg(c)).collect()
    }

    pub fn scale(&self, a: &[F::Elem], s: &F::Elem) -> P<F> {
        self.trim(a.iter().map(|c| self.field.mul(c, s)).collect())
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> P<F> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let f = self.field;
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        self.trim(out)
    }

    pub fn divrem(&self, a: &[F::Elem], b: &[F::Elem]) -> (P<F>, P<F>) {
        let f = self.field;
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        let ilc = if f.is_one(&b[db]) {
            f.one()
        } else {
            f.inv(&b[db]).unwrap()
        };
        let mut r = self.trim(a.to_vec());
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![f.zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + db], &ilc);
            if !f.is_zero(&c) {
                for (j, bc) in b.iter().enumerate() {
                    r[i + j] = f.sub(&r[i + j], &f.mul(&c, bc));
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &[F::Elem], b: &[F::Elem]) -> P<F> {
        self.divrem(a, b).1
    }

    /// Quotient that must divide exactly.
    pub fn div_exact(&self, a: &[F::Elem], b: &[F::Elem]) -> P<F> {
        let (q, r) = self.divrem(a, b);
        assert!(r.is_empty(), "inexact polynomial division");
        q
    }

    pub fn monic(&self, a: &[F::Elem]) -> P<F> {
        match a.last() {
            None => Vec::new(),
            Some(lc) if self.field.is_one(lc) => a.to_vec(),
            Some(lc) => self.scale(a, &self.field.inv(lc).unwrap()),
        }
    }

    /// Returns (d, s, t) with d = s*a + t*b and d monic (or zero when both are zero).
    pub fn xgcd(&self, a: &[F::Elem], b: &[F::Elem]) -> (P<F>, P<F>, P<F>) {
        let (mut r0, mut r1) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        let (mut s0, mut s1) = (self.one(), Vec::new());
        let (mut t0, mut t1) = (Vec::new(), self.one());
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(lc) => {
                let il = self.field.inv(lc).unwrap();
                (self.scale(&r0, &il), self.scale(&s0, &il), self.scale(&t0, &il))
            }
        }
    }

    pub fn eval(&self, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        let f = self.field;
        a.iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn map(&self, a: &[F::Elem], g: impl Fn(&F::Elem) -> F::Elem) -> P<F> {
        self.trim(a.iter().map(g).collect())
    }
}
