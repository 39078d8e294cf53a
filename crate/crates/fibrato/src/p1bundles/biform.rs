use serde::Serialize;

use crate::exactalg::multipoly::{MPoly, MultiPolyRing};
use crate::exactalg::parse::parse_poly;
use crate::exactalg::poly::{Poly, PolyRing};
use crate::exactalg::rational::{Rationals, Q};
use crate::exactalg::ring::Field;

use super::BundleError;

/// Binary form of a fixed degree: `coeffs[k]` multiplies `t0^(degree-k) t1^k`.
/// A negative degree is only allowed for the zero form (a structural zero).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BiForm<E> {
    pub degree: i64,
    pub coeffs: Vec<E>,
}

impl<E: Clone> BiForm<E> {
    pub fn zero<F: Field<Elem = E>>(f: &F, degree: i64) -> Self {
        let n = if degree >= 0 { degree as usize + 1 } else { 0 };
        BiForm { degree, coeffs: vec![f.zero(); n] }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        let _ = f;
        BiForm { degree: 0, coeffs: vec![c] }
    }

    pub fn from_coeffs(degree: i64, coeffs: Vec<E>) -> Result<Self, BundleError> {
        let expect = if degree >= 0 { degree as usize + 1 } else { 0 };
        if coeffs.len() != expect {
            return Err(BundleError::FormLength { degree, len: coeffs.len() });
        }
        Ok(BiForm { degree, coeffs })
    }

    /// `t0^a t1^b` scaled by `c`.
    pub fn monomial<F: Field<Elem = E>>(f: &F, c: E, a: usize, b: usize) -> Self {
        let mut z = Self::zero(f, (a + b) as i64);
        z.coeffs[b] = c;
        z
    }

    pub fn t0<F: Field<Elem = E>>(f: &F) -> Self {
        Self::monomial(f, f.one(), 1, 0)
    }

    pub fn t1<F: Field<Elem = E>>(f: &F) -> Self {
        Self::monomial(f, f.one(), 0, 1)
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.coeffs.iter().all(|c| f.is_zero(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        if other.is_zero(f) {
            return self.clone();
        }
        if self.is_zero(f) {
            return other.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degrees");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add(a, b)).collect();
        BiForm { degree: self.degree, coeffs }
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        BiForm { degree: self.degree, coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        BiForm { degree: self.degree, coeffs: self.coeffs.iter().map(|x| f.mul(x, c)).collect() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let degree = self.degree + other.degree;
        let mut out = Self::zero(f, degree);
        if self.degree < 0 || other.degree < 0 {
            return out;
        }
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out.coeffs[i + j] = f.add(&out.coeffs[i + j], &f.mul(a, b));
            }
        }
        out
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x0: &E, x1: &E) -> E {
        let d = self.degree.max(0) as u64;
        let mut acc = f.zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let term = f.mul(c, &f.mul(&f.pow(x0, d - k as u64), &f.pow(x1, k as u64)));
            acc = f.add(&acc, &term);
        }
        acc
    }

    /// Restriction to the chart `t1 = 1`, as a polynomial in `t0`.
    pub fn chart_t1<F: Field<Elem = E>>(&self, pr: &PolyRing<F>) -> Poly<E> {
        let d = self.degree.max(0) as usize;
        let mut v = vec![pr.base().zero(); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[d - k] = c.clone();
        }
        pr.from_coeffs(v)
    }

    /// Restriction to the chart `t0 = 1`, as a polynomial in `t1`.
    pub fn chart_t0<F: Field<Elem = E>>(&self, pr: &PolyRing<F>) -> Poly<E> {
        pr.from_coeffs(self.coeffs.clone())
    }

    /// Form of the given degree whose restriction to `t1 = 1` is `p`.
    pub fn homogenize<F: Field<Elem = E>>(f: &F, p: &Poly<E>, degree: i64) -> Self {
        let mut z = Self::zero(f, degree);
        for (i, c) in p.iter().enumerate() {
            z.coeffs[degree as usize - i] = c.clone();
        }
        z
    }

    pub fn fmt<F: Field<Elem = E>>(&self, f: &F) -> String {
        let mut terms = Vec::new();
        let d = self.degree.max(0) as usize;
        for (k, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let mut mono = Vec::new();
            match d - k {
                0 => {}
                1 => mono.push("t0".to_string()),
                e => mono.push(format!("t0^{e}")),
            }
            match k {
                0 => {}
                1 => mono.push("t1".to_string()),
                e => mono.push(format!("t1^{e}")),
            }
            let mono = mono.join("*");
            let cs = f.fmt_elem(c);
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
        if terms.is_empty() {
            "0".to_string()
        } else {
            crate::exactalg::poly::join_signed(&terms)
        }
    }
}

pub fn form_ring() -> MultiPolyRing<Rationals> {
    MultiPolyRing::new(Rationals, &["t0", "t1"])
}

/// Parse a polynomial string in `t0, t1` as a form of exactly the given degree.
pub fn parse_form(s: &str, degree: i64) -> Result<BiForm<Q>, BundleError> {
    let r = form_ring();
    let p = parse_poly(&r, s).map_err(|e| BundleError::Parse(e.to_string()))?;
    form_from_mpoly(&p, degree).ok_or_else(|| BundleError::NotHomogeneous { text: s.to_string(), degree })
}

pub fn form_from_mpoly(p: &MPoly<Q>, degree: i64) -> Option<BiForm<Q>> {
    let f = Rationals;
    let mut z = BiForm::zero(&f, degree);
    for (e, c) in p {
        if degree < 0 || (e[0] + e[1]) as i64 != degree {
            return None;
        }
        z.coeffs[e[1] as usize] = c.clone();
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::q;
    use crate::exactalg::ring::Ring;

    #[test]
    fn parse_print_multiply() {
        let f = Rationals;
        let a = parse_form("t0 - t1", 1).unwrap();
        let b = parse_form("t0 + t1", 1).unwrap();
        assert_eq!(a.mul(&f, &b).fmt(&f), "t0^2 - t1^2");
        assert!(parse_form("t0^2 + t1", 2).is_err());
        assert!(parse_form("0", -3).unwrap().is_zero(&f));
        assert_eq!(a.eval(&f, &q(2), &q(5)), q(-3));
    }

    #[test]
    fn charts() {
        let f = Rationals;
        let pr = PolyRing::new(f, "t");
        let a = parse_form("2*t0^2*t1 + t1^3", 3).unwrap();
        assert_eq!(pr.fmt_elem(&a.chart_t1(&pr)), "2*t^2 + 1");
        assert_eq!(pr.fmt_elem(&a.chart_t0(&pr)), "t^3 + 2*t");
        assert_eq!(BiForm::homogenize(&f, &a.chart_t1(&pr), 3), a);
    }
}
