use itertools::Itertools;

use super::matrix::Matrix;
use super::ring::{Domain, Field, GcdDomain};

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = f.inv(a.get(r, c));
        for j in c..cols {
            let x = f.mul(a.get(r, j), &inv);
            a.set(r, j, x);
        }
        for i in 0..rows {
            if i == r || f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in c..cols {
                if f.is_zero(a.get(r, j)) {
                    continue;
                }
                let x = f.sub(a.get(i, j), &f.mul(&factor, a.get(r, j)));
                a.set(i, j, x);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "inverse of a non-square matrix");
    let (r, pivots) = rref(f, &m.hcat(&Matrix::identity(f, n)));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
}

/// Rank by forward elimination only.
pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = f.inv(a.get(r, c));
        for i in r + 1..rows {
            if f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = f.mul(a.get(i, c), &inv);
            for j in c..cols {
                if f.is_zero(a.get(r, j)) {
                    continue;
                }
                let x = f.sub(a.get(i, j), &f.mul(&factor, a.get(r, j)));
                a.set(i, j, x);
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right kernel, one vector per free column.
pub fn kernel_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (a, pivots) = rref(f, m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a.get(r, fc));
            }
            v
        })
        .collect()
}

/// Determinant over a field by elimination.
pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows(), m.cols(), "determinant of non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(a.get(i, c))) else {
            return f.zero();
        };
        if p != c {
            a.swap_rows(c, p);
            d = f.neg(&d);
        }
        let piv = a.get(c, c).clone();
        d = f.mul(&d, &piv);
        let inv = f.inv(&piv);
        for i in c + 1..n {
            if f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = f.mul(a.get(i, c), &inv);
            for j in c..n {
                let x = f.sub(a.get(i, j), &f.mul(&factor, a.get(c, j)));
                a.set(i, j, x);
            }
        }
    }
    d
}

/// Fraction-free (Bareiss) determinant over an integral domain.
pub fn det_bareiss<D: Domain>(d: &D, m: &Matrix<D::Elem>) -> D::Elem {
    assert_eq!(m.rows(), m.cols(), "determinant of non-square matrix");
    let n = m.rows();
    if n == 0 {
        return d.one();
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = d.one();
    for k in 0..n - 1 {
        if d.is_zero(a.get(k, k)) {
            let Some(p) = (k + 1..n).find(|&i| !d.is_zero(a.get(i, k))) else {
                return d.zero();
            };
            a.swap_rows(k, p);
            sign = !sign;
        }
        let piv = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let num = d.sub(&d.mul(&piv, a.get(i, j)), &d.mul(&aik, a.get(k, j)));
                let x = d.div_exact(&num, &prev).expect("Bareiss division is exact");
                a.set(i, j, x);
            }
            a.set(i, k, d.zero());
        }
        prev = piv;
    }
    let det = a.get(n - 1, n - 1).clone();
    if sign {
        d.neg(&det)
    } else {
        det
    }
}

/// Gcd of k x k minors; distinguishes "all minors vanish" from a genuine value.
#[derive(Clone, Debug, PartialEq)]
pub enum MinorGcd<E> {
    Zero,
    Value(E),
}

impl<E> MinorGcd<E> {
    pub fn value(&self) -> Option<&E> {
        match self {
            MinorGcd::Zero => None,
            MinorGcd::Value(v) => Some(v),
        }
    }
}

/// Gcd of all k x k minors, normalized; stops early once the gcd is a unit.
pub fn minor_gcd<R: GcdDomain>(r: &R, m: &Matrix<R::Elem>, k: usize) -> MinorGcd<R::Elem> {
    assert!(k <= m.rows().min(m.cols()), "minor size exceeds matrix");
    if k == 0 {
        return MinorGcd::Value(r.one());
    }
    let mut g = r.zero();
    for rows in (0..m.rows()).combinations(k) {
        // Skip row sets containing an all-zero row.
        if rows.iter().any(|&i| m.row(i).iter().all(|x| r.is_zero(x))) {
            continue;
        }
        for cols in (0..m.cols()).combinations(k) {
            let minor = det_bareiss(r, &m.submatrix(&rows, &cols));
            if r.is_zero(&minor) {
                continue;
            }
            g = r.gcd(&g, &minor);
            if r.is_unit(&g) {
                return MinorGcd::Value(r.normalize(&g));
            }
        }
    }
    if r.is_zero(&g) {
        MinorGcd::Zero
    } else {
        MinorGcd::Value(r.normalize(&g))
    }
}

/// All nonzero k x k minors with their row and column index sets.
pub fn nonzero_minors<R: Domain>(
    r: &R,
    m: &Matrix<R::Elem>,
    k: usize,
) -> Vec<(Vec<usize>, Vec<usize>, R::Elem)> {
    let mut out = Vec::new();
    for rows in (0..m.rows()).combinations(k) {
        for cols in (0..m.cols()).combinations(k) {
            let minor = det_bareiss(r, &m.submatrix(&rows, &cols));
            if !r.is_zero(&minor) {
                out.push((rows.clone(), cols, minor));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::mat_vec;
    use crate::exactalg::poly::PolyRing;
    use crate::exactalg::rational::{q, Rationals};
    use crate::exactalg::ring::Ring;

    fn qm(rows: usize, cols: usize, v: &[i64]) -> Matrix<crate::exactalg::rational::Q> {
        Matrix::from_vec(rows, cols, v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn inverse_round_trip() {
        let m = qm(3, 3, &[1, 2, 0, 0, 1, 3, 1, 0, 1]);
        let inv = inverse(&Rationals, &m).unwrap();
        assert_eq!(super::super::matrix::mat_mul(&Rationals, &m, &inv), Matrix::identity(&Rationals, 3));
        assert!(inverse(&Rationals, &qm(2, 2, &[1, 2, 2, 4])).is_none());
    }

    #[test]
    fn identity_and_zero_ranks() {
        assert_eq!(rank(&Rationals, &Matrix::identity(&Rationals, 2)), 2);
        assert_eq!(rank(&Rationals, &Matrix::zeros(&Rationals, 3, 5)), 0);
        assert_eq!(rank(&Rationals, &Matrix::zeros(&Rationals, 0, 4)), 0);
        assert!(kernel_basis(&Rationals, &Matrix::identity(&Rationals, 3)).is_empty());
    }

    #[test]
    fn kernel_of_row_one_one() {
        let k = kernel_basis(&Rationals, &qm(1, 2, &[1, 1]));
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = qm(3, 5, &[1, 2, 0, 3, 1, 2, 4, 1, 0, 0, 3, 6, 1, 3, 1]);
        let k = kernel_basis(&Rationals, &m);
        assert_eq!(k.len() + rank(&Rationals, &m), 5);
        for v in &k {
            assert!(mat_vec(&Rationals, &m, v).iter().all(|x| Rationals.is_zero(x)));
        }
    }

    #[test]
    fn bareiss_matches_field_determinant() {
        let m = qm(4, 4, &[2, 0, 1, 3, 1, 1, 0, 2, 0, 4, 1, 1, 3, 1, 2, 0]);
        assert_eq!(det_bareiss(&Rationals, &m), det(&Rationals, &m));
        let s = qm(2, 2, &[0, 1, 1, 0]);
        assert_eq!(det_bareiss(&Rationals, &s), q(-1));
    }

    #[test]
    fn minor_gcd_small_cases() {
        let pr = PolyRing::new(Rationals, "t");
        let t = pr.gen();
        let id = Matrix::identity(&pr, 2);
        assert_eq!(minor_gcd(&pr, &id, 2), MinorGcd::Value(pr.one()));
        let dt = Matrix::from_vec(2, 2, vec![t.clone(), pr.zero(), pr.zero(), t.clone()]);
        assert_eq!(minor_gcd(&pr, &dt, 1), MinorGcd::Value(t));
        let z = Matrix::zeros(&pr, 2, 3);
        assert_eq!(minor_gcd(&pr, &z, 2), MinorGcd::Zero);
    }
}
