//! The constant maps `A`, `B`, `C` attached to a rank-3 bundle `V1 = ⊕ O(a_i)`
//! with basis `x0, x1, x2`.
//!
//! Bases: `Λ^2 V1` is `(x0∧x1, x0∧x2, x1∧x2)`, `S^2 V1` is the lex multiset
//! basis `(x0^2, x0x1, x0x2, x1^2, x1x2, x2^2)`, tensor products use lex pairs
//! with the left factor outer, and `S^2` of anything uses sorted index pairs.

use std::collections::HashMap;

use crate::exactalg::ring::Field;
use crate::p1bundles::bundle::{sym_basis, sym_degrees, wedge_basis, wedge_degrees};
use crate::p1bundles::{BiForm, GradedMap};

use super::Genus3Error;

#[derive(Clone, Debug)]
pub struct StructuredMaps<F: Field> {
    /// `V1 ⊗ Λ^2 V1 → S^2 V1 ⊗ V1`, `c ⊗ (a∧b) ↦ bc ⊗ a − ac ⊗ b`.
    pub a: GradedMap<F>,
    /// `Λ^3 V1 → V1 ⊗ Λ^2 V1`.
    pub b: GradedMap<F>,
    /// `S^2(Λ^2 V1) → S^2(S^2 V1)`, `(a∧b)(c∧d) ↦ (ac)(bd) − (ad)(bc)`.
    pub c: GradedMap<F>,
}

/// Index of the monomial `x_i x_j` in the `S^2 V1` basis.
pub fn sym2_index(i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    // rows of the upper triangle of a 3x3 grid
    [0, 3, 5][i] + (j - i)
}

/// Inverse of [`sym2_index`].
pub fn sym2_pair(k: usize) -> (usize, usize) {
    const PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    PAIRS[k]
}

/// `(index, sign)` of `x_i ∧ x_j` in the `Λ^2 V1` basis, `None` if `i == j`.
pub fn wedge2_index(i: usize, j: usize) -> Option<(usize, i8)> {
    if i == j {
        return None;
    }
    let (lo, hi, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
    Some((lo + hi - 1, s))
}

/// Index of the unordered pair `{p, q}` in the lex basis of `S^2` of an
/// `n`-dimensional space.
pub fn pair_index(n: usize, p: usize, q: usize) -> usize {
    let (p, q) = (p.min(q), p.max(q));
    p * n - p * (p + 1) / 2 + q
}

fn constant_map<F: Field>(
    field: &F,
    source: Vec<i64>,
    target: Vec<i64>,
    coeffs: &HashMap<(usize, usize), i64>,
) -> Result<GradedMap<F>, Genus3Error> {
    let f = field.clone();
    let (s, t) = (source.clone(), target.clone());
    Ok(GradedMap::from_fn(field.clone(), source, target, |i, j| match coeffs.get(&(i, j)) {
        Some(&c) if c != 0 => BiForm::constant(&f, f.from_int(c)),
        _ => BiForm::zero(&f, t[i] - s[j]),
    })?)
}

pub fn build_maps_abc<F: Field>(field: &F, v1: &[i64]) -> Result<StructuredMaps<F>, Genus3Error> {
    if v1.len() != 3 {
        return Err(Genus3Error::InvalidArgument(format!("V1 must have rank 3, got {}", v1.len())));
    }
    let l2 = wedge_degrees(v1, 2);
    let s2 = sym_degrees(v1, 2);
    let pairs = |x: &[i64], y: &[i64]| -> Vec<i64> { x.iter().flat_map(|a| y.iter().map(move |b| a + b)).collect() };

    let mut a = HashMap::new();
    for c in 0..3 {
        for (w, ab) in wedge_basis(3, 2).iter().enumerate() {
            let (x, y) = (ab[0], ab[1]);
            let col = c * 3 + w;
            *a.entry((sym2_index(y, c) * 3 + x, col)).or_insert(0) += 1;
            *a.entry((sym2_index(x, c) * 3 + y, col)).or_insert(0) -= 1;
        }
    }
    let a = constant_map(field, pairs(v1, &l2), pairs(&s2, v1), &a)?;

    let mut b = HashMap::new();
    for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let (w, s) = wedge2_index(y, z).expect("distinct");
        *b.entry((x * 3 + w, 0)).or_insert(0) += s as i64;
    }
    let b = constant_map(field, vec![v1.iter().sum()], pairs(v1, &l2), &b)?;

    let wb = wedge_basis(3, 2);
    let mut c = HashMap::new();
    for (col, pq) in sym_basis(3, 2).iter().enumerate() {
        let (ab, cd) = (&wb[pq[0]], &wb[pq[1]]);
        let (x, y, z, w) = (ab[0], ab[1], cd[0], cd[1]);
        *c.entry((pair_index(6, sym2_index(x, z), sym2_index(y, w)), col)).or_insert(0) += 1;
        *c.entry((pair_index(6, sym2_index(x, w), sym2_index(y, z)), col)).or_insert(0) -= 1;
    }
    let c = constant_map(field, sym_degrees(&l2, 2), sym_degrees(&s2, 2), &c)?;
    Ok(StructuredMaps { a, b, c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::linalg::rank;
    use crate::exactalg::matrix::{mat_mul, Matrix};
    use crate::exactalg::multipoly::MultiPolyRing;
    use crate::exactalg::rational::{q, Rationals};
    use crate::exactalg::ring::Ring;

    fn eval(m: &GradedMap<Rationals>) -> Matrix<crate::exactalg::rational::Q> {
        m.eval(&q(1), &q(1))
    }

    #[test]
    fn index_helpers() {
        let b = sym_basis(3, 2);
        for (k, p) in b.iter().enumerate() {
            assert_eq!(sym2_index(p[0], p[1]), k);
            assert_eq!(sym2_index(p[1], p[0]), k);
        }
        let b6 = sym_basis(6, 2);
        for (k, p) in b6.iter().enumerate() {
            assert_eq!(pair_index(6, p[1], p[0]), k);
        }
        assert_eq!(wedge2_index(2, 0), Some((1, -1)));
    }

    #[test]
    fn shapes() {
        let m = build_maps_abc(&Rationals, &[2, 2, 2]).unwrap();
        assert_eq!((m.a.source_degrees().len(), m.a.target_degrees().len()), (9, 18));
        assert_eq!((m.b.source_degrees().len(), m.b.target_degrees().len()), (1, 9));
        assert_eq!((m.c.source_degrees().len(), m.c.target_degrees().len()), (6, 21));
        assert_eq!(rank(&Rationals, &eval(&m.a)), 8);
        assert_eq!(rank(&Rationals, &eval(&m.c)), 6);
    }

    #[test]
    fn c_on_first_square() {
        let m = build_maps_abc(&Rationals, &[0, 1, 3]).unwrap();
        let col = eval(&m.c).col(0);
        let mut expected = vec![q(0); 21];
        expected[pair_index(6, sym2_index(0, 0), sym2_index(1, 1))] = q(1);
        expected[pair_index(6, sym2_index(0, 1), sym2_index(0, 1))] = q(-1);
        assert_eq!(col, expected);
    }

    #[test]
    fn b_is_three_term_sum() {
        let m = build_maps_abc(&Rationals, &[1, 1, 1]).unwrap();
        let col = eval(&m.b).col(0);
        let mut expected = vec![q(0); 9];
        expected[2] = q(1); // x0 ⊗ x1∧x2
        expected[3 + 1] = q(-1); // x1 ⊗ x2∧x0
        expected[6] = q(1); // x2 ⊗ x0∧x1
        assert_eq!(col, expected);
    }

    #[test]
    fn koszul_composition_vanishes_formally() {
        let names: Vec<String> = (0..6).flat_map(|i| (0..6).map(move |j| format!("s{i}{j}"))).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let r = MultiPolyRing::new(Rationals, &refs);
        let sigma = Matrix::from_fn(6, 6, |i, j| r.var(i * 6 + j));
        let id = Matrix::identity(&r, 3);
        let kron = Matrix::from_fn(18, 18, |i, j| r.mul(sigma.get(i / 3, j / 3), id.get(i % 3, j % 3)));
        let m = build_maps_abc(&Rationals, &[2, 3, 5]).unwrap();
        let lift = |g: &GradedMap<Rationals>| eval(g).map(|c| r.constant(c.clone()));
        let prod = mat_mul(&r, &mat_mul(&r, &kron, &lift(&m.a)), &lift(&m.b));
        assert!(prod.is_zero_with(&r));
        assert_eq!(prod.rows(), 18);
    }
}
