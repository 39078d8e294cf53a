//! Sparse multivariate polynomials over a field, keyed by exponent vectors.
//! `BTreeMap` order on exponent vectors is lex with the first variable largest,
//! so the last entry is the lex leading term.

use std::collections::BTreeMap;

use super::poly::join_signed;
use super::ring::{Domain, Field, GcdDomain, Ring};

pub type Mono = Vec<u32>;
pub type MPoly<E> = BTreeMap<Mono, E>;

#[derive(Clone, Debug)]
pub struct MultiPolyRing<F: Field> {
    base: F,
    names: Vec<String>,
}

impl<F: Field> MultiPolyRing<F> {
    pub fn new(base: F, names: &[&str]) -> Self {
        MultiPolyRing { base, names: names.iter().map(|s| s.to_string()).collect() }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> MPoly<F::Elem> {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        BTreeMap::from([(e, self.base.one())])
    }

    pub fn constant(&self, c: F::Elem) -> MPoly<F::Elem> {
        if self.base.is_zero(&c) {
            BTreeMap::new()
        } else {
            BTreeMap::from([(vec![0; self.nvars()], c)])
        }
    }

    pub fn term(&self, c: F::Elem, e: Mono) -> MPoly<F::Elem> {
        debug_assert_eq!(e.len(), self.nvars());
        if self.base.is_zero(&c) {
            BTreeMap::new()
        } else {
            BTreeMap::from([(e, c)])
        }
    }

    pub fn scale(&self, p: &MPoly<F::Elem>, c: &F::Elem) -> MPoly<F::Elem> {
        if self.base.is_zero(c) {
            return BTreeMap::new();
        }
        p.iter().map(|(e, x)| (e.clone(), self.base.mul(x, c))).collect()
    }

    pub fn is_constant(&self, p: &MPoly<F::Elem>) -> bool {
        p.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self, p: &MPoly<F::Elem>) -> Option<F::Elem> {
        if !self.is_constant(p) {
            return None;
        }
        Some(p.values().next().cloned().unwrap_or_else(|| self.base.zero()))
    }

    pub fn total_degree(&self, p: &MPoly<F::Elem>) -> Option<u32> {
        p.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, p: &MPoly<F::Elem>, v: usize) -> Option<u32> {
        p.keys().map(|e| e[v]).max()
    }

    pub fn is_homogeneous(&self, p: &MPoly<F::Elem>) -> bool {
        let mut degs = p.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn leading<'a>(&self, p: &'a MPoly<F::Elem>) -> Option<(&'a Mono, &'a F::Elem)> {
        p.last_key_value()
    }

    fn add_term(&self, p: &mut MPoly<F::Elem>, e: Mono, c: F::Elem) {
        use std::collections::btree_map::Entry;
        match p.entry(e) {
            Entry::Vacant(v) => {
                if !self.base.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = self.base.add(o.get(), &c);
                if self.base.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn mul_term(&self, p: &MPoly<F::Elem>, e: &Mono, c: &F::Elem) -> MPoly<F::Elem> {
        p.iter()
            .map(|(pe, pc)| {
                let ne: Mono = pe.iter().zip(e).map(|(a, b)| a + b).collect();
                (ne, self.base.mul(pc, c))
            })
            .collect()
    }

    /// Coefficients with respect to variable `v`: map from exponent of `v` to a
    /// polynomial not involving `v`.
    pub fn coeffs_in(&self, p: &MPoly<F::Elem>, v: usize) -> BTreeMap<u32, MPoly<F::Elem>> {
        let mut out: BTreeMap<u32, MPoly<F::Elem>> = BTreeMap::new();
        for (e, c) in p {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[v], 0);
            out.entry(k).or_default().insert(e2, c.clone());
        }
        out
    }

    fn var_power(&self, v: usize, k: u32) -> Mono {
        let mut e = vec![0; self.nvars()];
        e[v] = k;
        e
    }

    /// Evaluate into another ring along a coefficient map.
    pub fn eval_in<R: Ring>(
        &self,
        p: &MPoly<F::Elem>,
        target: &R,
        values: &[R::Elem],
        coeff: impl Fn(&F::Elem) -> R::Elem,
    ) -> R::Elem {
        let mut acc = target.zero();
        for (e, c) in p {
            let mut t = coeff(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = target.mul(&t, &target.pow(&values[i], k as u64));
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    pub fn eval(&self, p: &MPoly<F::Elem>, values: &[F::Elem]) -> F::Elem {
        self.eval_in(p, &self.base, values, |c| c.clone())
    }

    /// Coefficient-wise map into another field; `None` if some coefficient has no image.
    pub fn map_coeffs<G: Field>(
        &self,
        p: &MPoly<F::Elem>,
        target: &MultiPolyRing<G>,
        f: impl Fn(&F::Elem) -> Option<G::Elem>,
    ) -> Option<MPoly<G::Elem>> {
        let mut out = BTreeMap::new();
        for (e, c) in p {
            let x = f(c)?;
            if !target.base.is_zero(&x) {
                out.insert(e.clone(), x);
            }
        }
        Some(out)
    }

    /// Remainder of `a` under the pseudo-division by `b` in variable `v`.
    fn pseudo_rem(&self, a: &MPoly<F::Elem>, b: &MPoly<F::Elem>, v: usize) -> MPoly<F::Elem> {
        let n = self.degree_in(b, v).unwrap_or(0);
        let bc = self.coeffs_in(b, v);
        let lb = bc[&n].clone();
        let mut r = a.clone();
        while let Some(m) = self.degree_in(&r, v) {
            if m < n || r.is_empty() {
                break;
            }
            let lr = self.coeffs_in(&r, v).remove(&m).unwrap();
            let shift = self.var_power(v, m - n);
            let lhs = self.mul(&lb, &r);
            let rhs = self.mul(&self.mul(&lr, &BTreeMap::from([(shift, self.base.one())])), b);
            r = self.sub(&lhs, &rhs);
        }
        r
    }

    /// Content with respect to `v`: gcd of the coefficients in `v`.
    pub fn content_in(&self, p: &MPoly<F::Elem>, v: usize) -> MPoly<F::Elem> {
        let mut g = BTreeMap::new();
        for c in self.coeffs_in(p, v).values() {
            g = self.gcd(&g, c);
            if self.is_constant(&g) && !g.is_empty() {
                break;
            }
        }
        g
    }

    fn first_var(&self, p: &MPoly<F::Elem>) -> Option<usize> {
        (0..self.nvars()).find(|&v| p.keys().any(|e| e[v] > 0))
    }

    fn primitive_in(&self, p: &MPoly<F::Elem>, v: usize) -> MPoly<F::Elem> {
        let c = self.content_in(p, v);
        self.div_exact(p, &c).expect("content divides")
    }
}

impl<F: Field> Ring for MultiPolyRing<F> {
    type Elem = MPoly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        BTreeMap::new()
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (e, c) in b {
            self.add_term(&mut out, e.clone(), c.clone());
        }
        out
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|(e, c)| (e.clone(), self.base.neg(c))).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (e, c) in b {
            self.add_term(&mut out, e.clone(), self.base.neg(c));
        }
        out
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = BTreeMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Mono = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.add_term(&mut out, e, self.base.mul(ca, cb));
            }
        }
        out
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        if a.is_empty() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (e, c) in a.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{}", self.names[i], k)
                    }
                })
                .collect();
            let cs = self.base.fmt_elem(c);
            let mono = mono.join("*");
            terms.push(if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        join_signed(&terms)
    }
}

impl<F: Field> Domain for MultiPolyRing<F> {
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let (lb_e, lb_c) = self.leading(b)?;
        let lb_e = lb_e.clone();
        let lb_inv = self.base.inv(lb_c);
        let mut r = a.clone();
        let mut q = BTreeMap::new();
        while let Some((le, lc)) = r.last_key_value() {
            if le.iter().zip(&lb_e).any(|(x, y)| x < y) {
                return None;
            }
            let e: Mono = le.iter().zip(&lb_e).map(|(x, y)| x - y).collect();
            let c = self.base.mul(lc, &lb_inv);
            r = self.sub(&r, &self.mul_term(b, &e, &c));
            self.add_term(&mut q, e, c);
        }
        Some(q)
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        !a.is_empty() && self.is_constant(a)
    }
}

impl<F: Field> GcdDomain for MultiPolyRing<F> {
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() {
            return self.normalize(b);
        }
        if b.is_empty() {
            return self.normalize(a);
        }
        let va = self.first_var(a);
        let vb = self.first_var(b);
        let v = match (va, vb) {
            (None, _) | (_, None) => return self.one(),
            (Some(x), Some(y)) => x.min(y),
        };
        // Only one side involves v: reduce to the content of that side.
        if va != Some(v) {
            return self.gcd(a, &self.content_in(b, v));
        }
        if vb != Some(v) {
            return self.gcd(&self.content_in(a, v), b);
        }
        let ca = self.content_in(a, v);
        let cb = self.content_in(b, v);
        let c = self.gcd(&ca, &cb);
        let mut x = self.div_exact(a, &ca).unwrap();
        let mut y = self.div_exact(b, &cb).unwrap();
        if self.degree_in(&x, v) < self.degree_in(&y, v) {
            std::mem::swap(&mut x, &mut y);
        }
        let g = loop {
            let r = self.pseudo_rem(&x, &y, v);
            if r.is_empty() {
                break y;
            }
            if self.degree_in(&r, v) == Some(0) {
                break self.one();
            }
            x = y;
            y = self.primitive_in(&r, v);
        };
        self.normalize(&self.mul(&c, &self.primitive_in(&g, v)))
    }

    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        match self.leading(a) {
            None => BTreeMap::new(),
            Some((_, c)) => {
                let ci = self.base.inv(c);
                self.scale(a, &ci)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{q, Rationals};

    fn ring() -> MultiPolyRing<Rationals> {
        MultiPolyRing::new(Rationals, &["a", "b", "c"])
    }

    #[test]
    fn exact_division_and_failure() {
        let r = ring();
        let (a, b) = (r.var(0), r.var(1));
        let f = r.add(&r.mul(&a, &b), &r.one());
        let g = r.sub(&a, &b);
        let h = r.mul(&f, &g);
        assert_eq!(r.div_exact(&h, &g), Some(f.clone()));
        assert_eq!(r.div_exact(&f, &g), None);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let r = ring();
        let (a, b, c) = (r.var(0), r.var(1), r.var(2));
        let common = r.add(&r.mul(&a, &c), &r.mul(&b, &b));
        let x = r.mul(&common, &r.add(&a, &r.one()));
        let y = r.mul(&common, &r.sub(&r.mul(&b, &c), &a));
        assert_eq!(r.gcd(&x, &y), r.normalize(&common));
        assert_eq!(r.gcd(&a, &b), r.one());
    }

    #[test]
    fn gcd_with_content_only_in_one_argument() {
        let r = ring();
        let (a, b) = (r.var(0), r.var(1));
        let x = r.mul(&r.sub(&b, &r.one()), &r.add(&a, &b));
        let y = r.mul(&r.sub(&b, &r.one()), &r.add(&b, &r.one()));
        assert_eq!(r.gcd(&x, &y), r.sub(&b, &r.one()));
    }

    #[test]
    fn display_and_eval() {
        let r = ring();
        let p = r.sub(&r.mul(&r.var(0), &r.var(0)), &r.scale(&r.var(2), &q(3)));
        assert_eq!(r.fmt_elem(&p), "a^2 - 3*c");
        assert_eq!(r.eval(&p, &[q(2), q(0), q(1)]), q(1));
    }
}
