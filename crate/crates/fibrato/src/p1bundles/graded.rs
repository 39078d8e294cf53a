use std::collections::BTreeMap;

use itertools::Itertools;

use crate::exactalg::matrix::Matrix;
use crate::exactalg::poly::{Poly, PolyRing};
use crate::exactalg::ring::Field;

use super::biform::BiForm;
use super::bundle::{sym_basis, sym_degrees, wedge_basis, wedge_degrees, SplitBundle};
use super::BundleError;

/// A map `⊕ O(source[j]) → ⊕ O(target[i])`. Degrees are kept in basis order;
/// entry `(i, j)` is a form of degree `target[i] - source[j]`, and a structural
/// zero when that is negative.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<F: Field> {
    field: F,
    source: Vec<i64>,
    target: Vec<i64>,
    entries: Matrix<BiForm<F::Elem>>,
}

impl<F: Field> GradedMap<F> {
    pub fn new(
        field: F,
        source: Vec<i64>,
        target: Vec<i64>,
        entries: Matrix<BiForm<F::Elem>>,
    ) -> Result<Self, BundleError> {
        if entries.rows() != target.len() || entries.cols() != source.len() {
            return Err(BundleError::Shape(format!(
                "{}x{} entries for {} target and {} source summands",
                entries.rows(),
                entries.cols(),
                target.len(),
                source.len()
            )));
        }
        let mut entries = entries;
        for i in 0..target.len() {
            for j in 0..source.len() {
                let expected = target[i] - source[j];
                let e = entries.get(i, j);
                if e.is_zero(&field) {
                    if e.degree != expected {
                        entries.set(i, j, BiForm::zero(&field, expected));
                    }
                } else if e.degree != expected {
                    return Err(BundleError::DegreeMismatch { row: i, col: j, expected, found: e.degree });
                }
            }
        }
        Ok(GradedMap { field, source, target, entries })
    }

    pub fn from_fn(
        field: F,
        source: Vec<i64>,
        target: Vec<i64>,
        mut f: impl FnMut(usize, usize) -> BiForm<F::Elem>,
    ) -> Result<Self, BundleError> {
        let m = Matrix::from_fn(target.len(), source.len(), &mut f);
        Self::new(field, source, target, m)
    }

    /// A map with constant entries between equal-degree summands.
    pub fn constant(field: F, degrees: Vec<i64>, m: &Matrix<F::Elem>) -> Result<Self, BundleError> {
        let fld = field.clone();
        let target = degrees.clone();
        let src = degrees.clone();
        Self::from_fn(field, degrees, target, |i, j| {
            let d = src[i] - src[j];
            if d == 0 {
                BiForm::constant(&fld, m.get(i, j).clone())
            } else {
                BiForm::zero(&fld, d)
            }
        })
    }

    pub fn identity(field: F, degrees: Vec<i64>) -> Self {
        let m = Matrix::identity(&field, degrees.len());
        Self::constant(field, degrees, &m).expect("identity is graded")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn source_degrees(&self) -> &[i64] {
        &self.source
    }

    pub fn target_degrees(&self) -> &[i64] {
        &self.target
    }

    pub fn source(&self) -> SplitBundle {
        SplitBundle::new(self.source.clone())
    }

    pub fn target(&self) -> SplitBundle {
        SplitBundle::new(self.target.clone())
    }

    pub fn entries(&self) -> &Matrix<BiForm<F::Elem>> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &BiForm<F::Elem> {
        self.entries.get(i, j)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self, BundleError> {
        if inner.target != self.source {
            return Err(BundleError::Shape("composition of maps with mismatched middle bundle".into()));
        }
        let f = &self.field;
        let m = Matrix::from_fn(self.target.len(), inner.source.len(), |i, j| {
            let mut acc = BiForm::zero(f, self.target[i] - inner.source[j]);
            for k in 0..self.source.len() {
                let (a, b) = (self.entry(i, k), inner.entry(k, j));
                if a.is_zero(f) || b.is_zero(f) {
                    continue;
                }
                acc = acc.add(f, &a.mul(f, b));
            }
            acc
        });
        Self::new(f.clone(), inner.source.clone(), self.target.clone(), m)
    }

    /// Tensor product; basis pairs `(a, b)` are ordered lexicographically.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        let pair = |x: &[i64], y: &[i64]| -> Vec<i64> {
            x.iter().cartesian_product(y).map(|(a, b)| a + b).collect()
        };
        let (s2, t2) = (other.source.len(), other.target.len());
        let m = Matrix::from_fn(self.target.len() * t2, self.source.len() * s2, |i, j| {
            self.entry(i / t2, j / s2).mul(f, other.entry(i % t2, j % s2))
        });
        Self::new(f.clone(), pair(&self.source, &other.source), pair(&self.target, &other.target), m)
            .expect("tensor product is graded")
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let f = &self.field;
        let (r1, c1) = (self.target.len(), self.source.len());
        let source: Vec<i64> = self.source.iter().chain(&other.source).copied().collect();
        let target: Vec<i64> = self.target.iter().chain(&other.target).copied().collect();
        let m = Matrix::from_fn(target.len(), source.len(), |i, j| match (i < r1, j < c1) {
            (true, true) => self.entry(i, j).clone(),
            (false, false) => other.entry(i - r1, j - c1).clone(),
            _ => BiForm::zero(f, target[i] - source[j]),
        });
        Self::new(f.clone(), source, target, m).expect("direct sum is graded")
    }

    /// Induced map on `S^n`, in the sorted-multiset bases of source and target.
    pub fn sym_power(&self, n: usize) -> Self {
        let f = &self.field;
        let src_basis = sym_basis(self.source.len(), n);
        let tgt_basis = sym_basis(self.target.len(), n);
        let tgt_index: BTreeMap<&Vec<usize>, usize> = tgt_basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let source = sym_degrees(&self.source, n);
        let target = sym_degrees(&self.target, n);
        let mut m = Matrix::from_fn(target.len(), source.len(), |i, j| BiForm::zero(f, target[i] - source[j]));
        for (j, word) in src_basis.iter().enumerate() {
            // Expand the product of the images of the factors.
            let mut acc: BTreeMap<Vec<usize>, BiForm<F::Elem>> = BTreeMap::new();
            acc.insert(Vec::new(), BiForm::constant(f, f.one()));
            for &s in word {
                let mut next: BTreeMap<Vec<usize>, BiForm<F::Elem>> = BTreeMap::new();
                for (key, c) in &acc {
                    for t in 0..self.target.len() {
                        let e = self.entry(t, s);
                        if e.is_zero(f) {
                            continue;
                        }
                        let mut k = key.clone();
                        let pos = k.partition_point(|&x| x <= t);
                        k.insert(pos, t);
                        let term = c.mul(f, e);
                        next.entry(k)
                            .and_modify(|x| *x = x.add(f, &term))
                            .or_insert(term);
                    }
                }
                acc = next;
            }
            for (key, c) in acc {
                if !c.is_zero(f) {
                    m.set(tgt_index[&key], j, c);
                }
            }
        }
        Self::new(f.clone(), source, target, m).expect("symmetric power is graded")
    }

    /// Induced map on `Λ^k`, in the increasing-subset bases.
    pub fn wedge_power(&self, k: usize) -> Self {
        let f = &self.field;
        let src_basis = wedge_basis(self.source.len(), k);
        let tgt_basis = wedge_basis(self.target.len(), k);
        let source = wedge_degrees(&self.source, k);
        let target = wedge_degrees(&self.target, k);
        let m = Matrix::from_fn(target.len(), source.len(), |i, j| {
            let deg = target[i] - source[j];
            let mut acc = BiForm::zero(f, deg);
            for perm in (0..k).permutations(k) {
                let mut term = BiForm::constant(f, f.one());
                for (a, &b) in perm.iter().enumerate() {
                    term = term.mul(f, self.entry(tgt_basis[i][b], src_basis[j][a]));
                    if term.is_zero(f) {
                        break;
                    }
                }
                if term.is_zero(f) {
                    continue;
                }
                if permutation_is_odd(&perm) {
                    term = term.neg(f);
                }
                acc = acc.add(f, &term);
            }
            acc
        });
        Self::new(f.clone(), source, target, m).expect("exterior power is graded")
    }

    /// Transpose map between the dual bundles.
    pub fn dual(&self) -> Self {
        Self::new(
            self.field.clone(),
            self.target.iter().map(|d| -d).collect(),
            self.source.iter().map(|d| -d).collect(),
            self.entries.transpose(),
        )
        .expect("dual is graded")
    }

    pub fn twist(&self, m: i64) -> Self {
        GradedMap {
            field: self.field.clone(),
            source: self.source.iter().map(|d| d + m).collect(),
            target: self.target.iter().map(|d| d + m).collect(),
            entries: self.entries.clone(),
        }
    }

    /// Keep only the listed source summands, in the given order.
    pub fn select_source(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.target.len()).collect();
        GradedMap {
            field: self.field.clone(),
            source: cols.iter().map(|&j| self.source[j]).collect(),
            target: self.target.clone(),
            entries: self.entries.submatrix(&rows, cols),
        }
    }

    pub fn eval(&self, x0: &F::Elem, x1: &F::Elem) -> Matrix<F::Elem> {
        self.entries.map(|e| e.eval(&self.field, x0, x1))
    }

    /// Matrix over `k[t0]` on the chart `t1 = 1`.
    pub fn chart_t1(&self, pr: &PolyRing<F>) -> Matrix<Poly<F::Elem>> {
        self.entries.map(|e| e.chart_t1(pr))
    }

    /// Matrix over `k[t1]` on the chart `t0 = 1`.
    pub fn chart_t0(&self, pr: &PolyRing<F>) -> Matrix<Poly<F::Elem>> {
        self.entries.map(|e| e.chart_t0(pr))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.entries().iter().all(|e| e.is_zero(&self.field))
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.entries().iter().filter(|e| !e.is_zero(&self.field)).count()
    }
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{q, Rationals};
    use crate::p1bundles::biform::parse_form;

    fn diag(forms: &[(&str, i64)], src: i64) -> GradedMap<Rationals> {
        let f = Rationals;
        let n = forms.len();
        let target: Vec<i64> = forms.iter().map(|(_, d)| src + d).collect();
        GradedMap::from_fn(f, vec![src; n], target, |i, j| {
            if i == j {
                parse_form(forms[i].0, forms[i].1).unwrap()
            } else {
                BiForm::zero(&f, forms[i].1)
            }
        })
        .unwrap()
    }

    #[test]
    fn rejects_wrong_degree() {
        let f = Rationals;
        let m = Matrix::from_vec(1, 1, vec![BiForm::t0(&f)]);
        assert!(matches!(
            GradedMap::new(f, vec![0], vec![2], m),
            Err(BundleError::DegreeMismatch { expected: 2, found: 1, .. })
        ));
    }

    #[test]
    fn sym_square_of_diagonal() {
        let f = Rationals;
        let phi = diag(&[("t0", 1), ("t1", 1)], 0);
        let s2 = phi.sym_power(2);
        assert_eq!(s2.target_degrees(), &[2, 2, 2]);
        assert_eq!(s2.entry(0, 0).fmt(&f), "t0^2");
        assert_eq!(s2.entry(1, 1).fmt(&f), "t0*t1");
        assert_eq!(s2.entry(2, 2).fmt(&f), "t1^2");
        assert_eq!(s2.nonzero_count(), 3);
    }

    #[test]
    fn wedge_square_is_minor() {
        let f = Rationals;
        let m = Matrix::from_vec(2, 2, vec![q(1), q(2), q(3), q(4)]);
        let phi = GradedMap::constant(f, vec![0, 0], &m).unwrap();
        assert_eq!(phi.wedge_power(2).entry(0, 0).coeffs, vec![q(-2)]);
    }

    #[test]
    fn compose_and_kron_shapes() {
        let phi = diag(&[("t0", 1), ("t1", 1)], 0);
        let psi = diag(&[("t0 - t1", 1), ("1", 0)], 1);
        let c = psi.compose(&phi).unwrap();
        assert_eq!(c.target_degrees(), &[2, 1]);
        assert_eq!(c.entry(0, 0).fmt(&Rationals), "t0^2 - t0*t1");
        let k = phi.kron(&GradedMap::identity(Rationals, vec![3, 3]));
        assert_eq!(k.source_degrees(), &[3, 3, 3, 3]);
        assert_eq!(k.nonzero_count(), 4);
        assert!(phi.compose(&phi).is_err());
    }
}
