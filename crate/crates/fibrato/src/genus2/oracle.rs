//! Local check of the torsion of `S^k(V1) → A_k` at a point of `τ`: over
//! `Q[t]`, with `V1 = <x0, x1>`, one extra generator `y` in degree 2 and the
//! relation `x0^2 = λ x0 x1 − t^s y`.

use std::collections::HashMap;

use crate::exactalg::matrix::Matrix;
use crate::exactalg::poly::{Poly, PolyRing};
use crate::exactalg::rational::{q, Rationals, Q};
use crate::exactalg::ring::Ring;
use crate::exactalg::smith::smith_normal_form;

/// Basis monomials `(e0, e1, j)` of `A_k`: `x0^e0 x1^e1 y^j`, `e0 ≤ 1`.
pub fn local_basis(k: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for j in 0..=k / 2 {
        for e0 in 0..=1u32 {
            if e0 + 2 * j <= k {
                out.push((e0, k - 2 * j - e0, j));
            }
        }
    }
    out
}

struct Reducer<'a> {
    pr: &'a PolyRing<Rationals>,
    lambda: Q,
    ts: Poly<Q>,
    memo: HashMap<(u32, u32, u32), Vec<((u32, u32, u32), Poly<Q>)>>,
}

impl Reducer<'_> {
    /// `x0^a x1^b y^j` as a combination of basis monomials.
    fn reduce(&mut self, a: u32, b: u32, j: u32) -> Vec<((u32, u32, u32), Poly<Q>)> {
        if a <= 1 {
            return vec![((a, b, j), self.pr.one())];
        }
        if let Some(v) = self.memo.get(&(a, b, j)) {
            return v.clone();
        }
        let mut acc: HashMap<(u32, u32, u32), Poly<Q>> = HashMap::new();
        if self.lambda != q(0) {
            let c = self.pr.constant(self.lambda.clone());
            for (m, p) in self.reduce(a - 1, b + 1, j) {
                let e = acc.entry(m).or_insert_with(|| self.pr.zero());
                *e = self.pr.add(e, &self.pr.mul(&c, &p));
            }
        }
        for (m, p) in self.reduce(a - 2, b, j + 1) {
            let e = acc.entry(m).or_insert_with(|| self.pr.zero());
            *e = self.pr.sub(e, &self.pr.mul(&self.ts, &p));
        }
        let v: Vec<_> = acc.into_iter().filter(|(_, p)| !self.pr.is_zero(p)).collect();
        self.memo.insert((a, b, j), v.clone());
        v
    }
}

/// Valuations at `t = 0` of the nonunit invariant factors of `S^k V1 → A_k`,
/// ascending.
pub fn local_torsion_lengths(k: u32, s: u32, lambda: &Q) -> Vec<u64> {
    let pr = PolyRing::new(Rationals, "t");
    let basis = local_basis(k);
    let index: HashMap<_, _> = basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut red = Reducer { pr: &pr, lambda: lambda.clone(), ts: pr.monomial(q(1), s as usize), memo: HashMap::new() };
    let mut m = Matrix::zeros(&pr, basis.len(), (k + 1) as usize);
    for a in 0..=k {
        for (mono, p) in red.reduce(a, k - a, 0) {
            m.set(index[&mono], a as usize, p);
        }
    }
    let snf = smith_normal_form(&pr, &m);
    let zero = Rationals.zero();
    let mut out: Vec<u64> = snf
        .factors
        .iter()
        .filter_map(|f| pr.valuation_at(f, &zero))
        .filter(|&v| v > 0)
        .map(|v| v as u64)
        .collect();
    if snf.factors.len() < basis.len() {
        out.push(u64::MAX);
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus2::numeric::torsion_structure_g2;

    #[test]
    fn basis_size() {
        for k in 0..9 {
            assert_eq!(local_basis(k).len(), k as usize + 1);
        }
    }

    #[test]
    fn small_cases() {
        assert_eq!(local_torsion_lengths(2, 3, &q(1)), vec![3]);
        assert_eq!(local_torsion_lengths(3, 2, &q(0)), vec![2, 2]);
        assert_eq!(local_torsion_lengths(4, 1, &q(5)), vec![1, 1, 2]);
    }

    #[test]
    fn matches_structure() {
        for k in 2..=11 {
            for s in 1..=3 {
                for lambda in [q(0), q(1), q(-3)] {
                    let expected = torsion_structure_g2(k, &[s]).unwrap().local_lengths(s);
                    assert_eq!(local_torsion_lengths(k, s, &lambda), expected, "k={k} s={s}");
                }
            }
        }
    }
}
