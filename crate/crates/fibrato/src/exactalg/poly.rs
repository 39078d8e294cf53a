//! Univariate polynomials over a field. Coefficients are stored low degree first
//! with no trailing zeros, so the zero polynomial is the empty vector.

use super::ring::{Domain, EuclideanDomain, Field, GcdDomain, Ring};

pub type Poly<E> = Vec<E>;

#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    base: F,
    var: String,
}

impl<F: Field> PolyRing<F> {
    pub fn new(base: F, var: &str) -> Self {
        PolyRing { base, var: var.to_string() }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn trim(&self, mut p: Poly<F::Elem>) -> Poly<F::Elem> {
        while p.last().is_some_and(|c| self.base.is_zero(c)) {
            p.pop();
        }
        p
    }

    pub fn from_coeffs(&self, c: Vec<F::Elem>) -> Poly<F::Elem> {
        self.trim(c)
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.trim(vec![c])
    }

    /// The polynomial `t`.
    pub fn gen(&self) -> Poly<F::Elem> {
        vec![self.base.zero(), self.base.one()]
    }

    /// `t - r`.
    pub fn linear(&self, r: &F::Elem) -> Poly<F::Elem> {
        vec![self.base.neg(r), self.base.one()]
    }

    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F::Elem> {
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = c;
        self.trim(v)
    }

    /// Degree, `None` for zero.
    pub fn degree(&self, p: &Poly<F::Elem>) -> Option<usize> {
        p.len().checked_sub(1)
    }

    pub fn lc(&self, p: &Poly<F::Elem>) -> F::Elem {
        p.last().cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn scale(&self, p: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        self.trim(p.iter().map(|x| self.base.mul(x, c)).collect())
    }

    pub fn monic(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        match p.last() {
            None => Vec::new(),
            Some(l) => {
                let li = self.base.inv(l);
                self.scale(p, &li)
            }
        }
    }

    pub fn eval(&self, p: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        let f = &self.base;
        p.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        let f = &self.base;
        self.trim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.div_rem(a, b).1
    }

    pub fn mul_mod(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &Poly<F::Elem>, mut e: u64, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_mod(&base, &base, m);
            }
        }
        acc
    }

    /// Multiplicity of the root `r`, by repeated exact division by `t - r`.
    pub fn valuation_at(&self, p: &Poly<F::Elem>, r: &F::Elem) -> Option<usize> {
        if p.is_empty() {
            return None;
        }
        let lin = self.linear(r);
        let mut cur = p.clone();
        let mut v = 0;
        loop {
            let (q, rem) = self.div_rem(&cur, &lin);
            if !rem.is_empty() {
                return Some(v);
            }
            cur = q;
            v += 1;
        }
    }

    /// Extended Euclid: `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_empty() {
            return (r0, s0, t0);
        }
        let li = self.base.inv(&self.lc(&r0));
        (self.scale(&r0, &li), self.scale(&s0, &li), self.scale(&t0, &li))
    }
}

impl<F: Field> Ring for PolyRing<F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        vec![self.base.one()]
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => f.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.trim(out)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => f.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => f.neg(y),
                (None, None) => unreachable!(),
            })
            .collect();
        self.trim(out)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let f = &self.base;
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
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        if a.is_empty() {
            return "0".to_string();
        }
        let f = &self.base;
        let mut terms = Vec::new();
        for (k, c) in a.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.fmt_elem(c);
            let mono = match k {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{}", self.var, k),
            };
            terms.push(match (k, cs.as_str()) {
                (0, _) => cs,
                (_, "1") => mono,
                (_, "-1") => format!("-{mono}"),
                _ => format!("{cs}*{mono}"),
            });
        }
        join_signed(&terms)
    }
}

/// Join terms with ` + ` / ` - ` depending on the sign of each.
pub(crate) fn join_signed(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

impl<F: Field> Domain for PolyRing<F> {
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if b.is_empty() {
            return None;
        }
        let (q, r) = self.div_rem(a, b);
        r.is_empty().then_some(q)
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.len() == 1
    }
}

impl<F: Field> GcdDomain for PolyRing<F> {
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = std::mem::replace(&mut y, r);
        }
        self.monic(&x)
    }
    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        self.monic(a)
    }
}

impl<F: Field> EuclideanDomain for PolyRing<F> {
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let f = &self.base;
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let lb_inv = f.inv(b.last().unwrap());
        let mut r = a.clone();
        let mut q = vec![f.zero(); a.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + b.len() - 1], &lb_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&c, bj));
            }
            q[k] = c;
        }
        r.truncate(b.len() - 1);
        (self.trim(q), self.trim(r))
    }
    fn size(&self, a: &Self::Elem) -> Option<usize> {
        self.degree(a)
    }
}
