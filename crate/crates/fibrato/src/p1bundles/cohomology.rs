//! Induced maps on `H^0` and `H^1` of twists, in monomial bases.
//!
//! `H^0(O(n))` has basis `t0^(n-k) t1^k`, `k = 0..=n`. `H^1(O(n))` for `n <= -2`
//! has the Čech basis `t0^-a t1^-b` with `a, b >= 1`, `a + b = -n`, ordered by
//! `b = 1..=-n-1`.

use crate::exactalg::matrix::Matrix;
use crate::exactalg::ring::Field;

use super::graded::GradedMap;

fn h0_dim(n: i64) -> usize {
    (n + 1).max(0) as usize
}

fn h1_dim(n: i64) -> usize {
    (-n - 1).max(0) as usize
}

fn offsets(degrees: &[i64], dim: impl Fn(i64) -> usize) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(degrees.len());
    let mut total = 0;
    for &d in degrees {
        off.push(total);
        total += dim(d);
    }
    (off, total)
}

/// Matrix of `H^0(source(m)) → H^0(target(m))`.
pub fn sections_map<F: Field>(phi: &GradedMap<F>, m: i64) -> Matrix<F::Elem> {
    let f = phi.field();
    let (src, tgt) = (phi.source_degrees(), phi.target_degrees());
    let (so, sn) = offsets(src, |d| h0_dim(d + m));
    let (to, tn) = offsets(tgt, |d| h0_dim(d + m));
    let mut out = Matrix::zeros(f, tn, sn);
    for (j, &sd) in src.iter().enumerate() {
        for (i, &td) in tgt.iter().enumerate() {
            if h0_dim(td + m) == 0 {
                continue;
            }
            let e = phi.entry(i, j);
            for k in 0..h0_dim(sd + m) {
                for (l, c) in e.coeffs.iter().enumerate() {
                    if !f.is_zero(c) {
                        let x = f.add(out.get(to[i] + k + l, so[j] + k), c);
                        out.set(to[i] + k + l, so[j] + k, x);
                    }
                }
            }
        }
    }
    out
}

/// Matrix of `H^1(source(m)) → H^1(target(m))`: multiply, then drop monomials
/// with a nonnegative exponent.
pub fn h1_map<F: Field>(phi: &GradedMap<F>, m: i64) -> Matrix<F::Elem> {
    let f = phi.field();
    let (src, tgt) = (phi.source_degrees(), phi.target_degrees());
    let (so, sn) = offsets(src, |d| h1_dim(d + m));
    let (to, tn) = offsets(tgt, |d| h1_dim(d + m));
    let mut out = Matrix::zeros(f, tn, sn);
    for (j, &sd) in src.iter().enumerate() {
        let n = sd + m;
        for (i, &td) in tgt.iter().enumerate() {
            if h1_dim(td + m) == 0 {
                continue;
            }
            let e = phi.entry(i, j);
            let deg = e.degree;
            for b in 1..=(h1_dim(n) as i64) {
                let a = -n - b;
                for (l, c) in e.coeffs.iter().enumerate() {
                    let l = l as i64;
                    if f.is_zero(c) || a - (deg - l) < 1 || b - l < 1 {
                        continue;
                    }
                    let (r, col) = (to[i] + (b - l - 1) as usize, so[j] + (b - 1) as usize);
                    let x = f.add(out.get(r, col), c);
                    out.set(r, col, x);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{q, Rationals};
    use crate::p1bundles::biform::{parse_form, BiForm};

    #[test]
    fn multiplication_by_t0() {
        let f = Rationals;
        let phi = GradedMap::from_fn(f, vec![0], vec![1], |_, _| BiForm::t0(&f)).unwrap();
        let s = sections_map(&phi, 0);
        assert_eq!((s.rows(), s.cols()), (2, 1));
        assert_eq!(s.col(0), vec![q(1), q(0)]);
    }

    #[test]
    fn truncated_multiplication_on_h1() {
        let f = Rationals;
        let phi = GradedMap::from_fn(f, vec![-4], vec![-2], |_, _| parse_form("t0^2", 2).unwrap()).unwrap();
        let h = h1_map(&phi, 0);
        assert_eq!((h.rows(), h.cols()), (1, 3));
        // t0^-3 t1^-1 maps to t0^-1 t1^-1; the others lose a t0 pole.
        assert_eq!(h.row(0), &[q(1), q(0), q(0)]);
    }

    #[test]
    fn serre_duality_transpose() {
        let f = Rationals;
        let phi = GradedMap::from_fn(f, vec![-3, -5], vec![-1, -2], |i, j| {
            let d = [-1, -2][i] - [-3, -5][j];
            let s = ["t0^2 - t0*t1", "t1^4 + 2*t0*t1^3", "t0 + 3*t1", "t0^3"][i * 2 + j];
            parse_form(s, d).unwrap()
        })
        .unwrap();
        for m in -3..4 {
            assert_eq!(h1_map(&phi, m).transpose(), sections_map(&phi.dual(), -m - 2));
        }
    }
}
