use super::matrix::Matrix;
use super::ring::EuclideanDomain;

/// `left * input * right == diag`, with unimodular transforms and a divisibility
/// chain along the diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm<E> {
    pub left: Matrix<E>,
    pub diag: Matrix<E>,
    pub right: Matrix<E>,
    /// Nonzero diagonal entries, normalized, in order.
    pub factors: Vec<E>,
}

impl<E: Clone> SmithForm<E> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

struct Work<'a, R: EuclideanDomain> {
    r: &'a R,
    a: Matrix<R::Elem>,
    left: Matrix<R::Elem>,
    right: Matrix<R::Elem>,
}

impl<R: EuclideanDomain> Work<'_, R> {
    /// row[dst] += c * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, c: &R::Elem) {
        let r = self.r;
        for m in [&mut self.a, &mut self.left] {
            for j in 0..m.cols() {
                let s = m.get(src, j);
                if r.is_zero(s) {
                    continue;
                }
                let x = r.add(m.get(dst, j), &r.mul(c, s));
                m.set(dst, j, x);
            }
        }
    }

    /// col[dst] += c * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, c: &R::Elem) {
        let r = self.r;
        for m in [&mut self.a, &mut self.right] {
            for i in 0..m.rows() {
                let s = m.get(i, src);
                if r.is_zero(s) {
                    continue;
                }
                let x = r.add(m.get(i, dst), &r.mul(c, s));
                m.set(i, dst, x);
            }
        }
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.left.swap_rows(x, y);
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.right.swap_cols(x, y);
    }

    fn scale_row(&mut self, i: usize, u: &R::Elem) {
        let r = self.r;
        for m in [&mut self.a, &mut self.left] {
            for j in 0..m.cols() {
                let x = r.mul(m.get(i, j), u);
                m.set(i, j, x);
            }
        }
    }
}

pub fn smith_normal_form<R: EuclideanDomain>(r: &R, m: &Matrix<R::Elem>) -> SmithForm<R::Elem> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        r,
        a: m.clone(),
        left: Matrix::identity(r, rows),
        right: Matrix::identity(r, cols),
    };
    let mut factors = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            // Pivot: smallest nonzero entry of the trailing block.
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if let Some(s) = r.size(w.a.get(i, j)) {
                        if best.is_none_or(|b| s < b.2) {
                            best = Some((i, j, s));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return finish(w, factors);
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            let piv = w.a.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..rows {
                if r.is_zero(w.a.get(i, k)) {
                    continue;
                }
                let (q, rem) = r.div_rem(w.a.get(i, k), &piv);
                w.row_axpy(i, k, &r.neg(&q));
                clean &= r.is_zero(&rem);
            }
            for j in k + 1..cols {
                if r.is_zero(w.a.get(k, j)) {
                    continue;
                }
                let (q, rem) = r.div_rem(w.a.get(k, j), &piv);
                w.col_axpy(j, k, &r.neg(&q));
                clean &= r.is_zero(&rem);
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let bad = (k + 1..rows).find(|&i| {
                (k + 1..cols).any(|j| r.div_exact(w.a.get(i, j), &piv).is_none())
            });
            match bad {
                Some(i) => w.row_axpy(k, i, &r.one()),
                None => break,
            }
        }
        let piv = w.a.get(k, k).clone();
        let norm = r.normalize(&piv);
        let u = r.div_exact(&norm, &piv).expect("normalization is by a unit");
        w.scale_row(k, &u);
        factors.push(norm);
    }
    finish(w, factors)
}

fn finish<R: EuclideanDomain>(w: Work<'_, R>, factors: Vec<R::Elem>) -> SmithForm<R::Elem> {
    SmithForm { left: w.left, diag: w.a, right: w.right, factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::linalg::{minor_gcd, MinorGcd};
    use crate::exactalg::matrix::{is_diagonal, mat_mul};
    use crate::exactalg::poly::PolyRing;
    use crate::exactalg::rational::{q, Rationals};
    use crate::exactalg::ring::Domain;

    fn pr() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, "t")
    }

    fn p(c: &[i64]) -> Vec<crate::exactalg::rational::Q> {
        pr().from_coeffs(c.iter().map(|&x| q(x)).collect())
    }

    fn check(m: &Matrix<Vec<crate::exactalg::rational::Q>>) -> SmithForm<Vec<crate::exactalg::rational::Q>> {
        let r = pr();
        let s = smith_normal_form(&r, m);
        let prod = mat_mul(&r, &mat_mul(&r, &s.left, m), &s.right);
        assert_eq!(prod, s.diag);
        assert!(is_diagonal(&r, &s.diag));
        for w in s.factors.windows(2) {
            assert!(r.div_exact(&w[1], &w[0]).is_some());
        }
        s
    }

    #[test]
    fn diag_one_t() {
        let m = Matrix::from_vec(2, 2, vec![p(&[1]), p(&[]), p(&[]), p(&[0, 1])]);
        assert_eq!(check(&m).factors, vec![p(&[1]), p(&[0, 1])]);
    }

    #[test]
    fn elementary_divisors_t_t2() {
        // diag(t^2, t) conjugated by unimodular mixing
        let r = pr();
        let d = Matrix::from_vec(2, 2, vec![p(&[0, 0, 1]), p(&[]), p(&[]), p(&[0, 1])]);
        let u = Matrix::from_vec(2, 2, vec![p(&[1]), p(&[2, 1]), p(&[]), p(&[1])]);
        let v = Matrix::from_vec(2, 2, vec![p(&[1]), p(&[]), p(&[3, 0, 1]), p(&[1])]);
        let m = mat_mul(&r, &mat_mul(&r, &u, &d), &v);
        let s = check(&m);
        assert_eq!(s.factors, vec![p(&[0, 1]), p(&[0, 0, 1])]);
        assert_eq!(minor_gcd(&r, &m, 1), MinorGcd::Value(p(&[0, 1])));
    }

    #[test]
    fn coprime_diagonal_merges() {
        let m = Matrix::from_vec(2, 2, vec![p(&[0, 1]), p(&[]), p(&[]), p(&[-1, 1])]);
        let s = check(&m);
        assert_eq!(s.factors, vec![p(&[1]), p(&[0, -1, 1])]);
    }

    #[test]
    fn rectangular_and_zero() {
        let m = Matrix::from_vec(2, 3, vec![p(&[0, 1]), p(&[0, 2]), p(&[]), p(&[0, 0, 1]), p(&[]), p(&[])]);
        let s = check(&m);
        assert_eq!(s.rank(), 2);
        let z = Matrix::zeros(&pr(), 3, 2);
        assert_eq!(check(&z).rank(), 0);
    }
}
