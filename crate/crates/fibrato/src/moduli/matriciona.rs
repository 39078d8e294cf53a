//! The presentation of `Ã6` for `V1 = E_[0](2, 1)` and `τ = [0]`-type data
//! `(f0, f1, f2, f3)`, `f_i ∈ H^0(L_i(τ))`: the minimal matrix `M`, the
//! mapping-cone resolution `(α̃, β̃)` it comes from, and the map `F'` on
//! global sections.
//!
//! Labels are elements of the Klein group `{0, 1, 2, 3}` (`L_0 = O`), and
//! `f_k` multiplies label `l` into label `l ^ k`.

use crate::ellbundles::theta::{basis_names, product_label, theta_product};
use crate::exactalg::matrix::Matrix;
use crate::exactalg::multipoly::{MPoly, MultiPolyRing};
use crate::exactalg::rational::{q, Rationals, Q};
use crate::exactalg::ring::{Field, Ring};

use super::ModuliError;

/// `±f_k` entry.
pub type Entry = Option<(i8, usize)>;

/// Labels of the 9 rows of `M` (the source of `F`).
pub const ROW_LABELS: [usize; 9] = [0, 1, 2, 3, 0, 3, 2, 0, 1];
/// Labels of the 16 columns of `M` (the target of `F`).
pub const COL_LABELS: [usize; 16] = [0, 1, 2, 3, 0, 3, 2, 0, 1, 2, 3, 1, 0, 1, 3, 2];

const fn p(k: usize) -> Entry {
    Some((1, k))
}
const fn m(k: usize) -> Entry {
    Some((-1, k))
}
const O: Entry = None;

#[rustfmt::skip]
const M_TABLE: [[Entry; 16]; 9] = [
    [p(0), p(1), p(2), p(3), O,    O,    O,    O,    O,    O,    O,    O,    O,    O,    O,    O   ],
    [O,    p(0), O,    O,    p(1), p(2), p(3), O,    O,    O,    O,    O,    O,    O,    O,    O   ],
    [O,    O,    p(0), O,    O,    p(1), O,    p(2), p(3), O,    O,    O,    O,    O,    O,    O   ],
    [O,    O,    O,    p(0), m(3), O,    p(1), m(3), p(2), O,    O,    O,    O,    O,    O,    O   ],
    [O,    O,    O,    O,    p(0), O,    O,    O,    O,    p(2), p(3), m(1), O,    m(1), O,    O   ],
    [O,    O,    O,    O,    O,    p(0), O,    O,    O,    p(1), O,    p(2), p(3), O,    O,    O   ],
    [O,    O,    O,    O,    O,    O,    p(0), O,    O,    O,    p(1), O,    p(2), p(3), O,    O   ],
    [O,    O,    O,    O,    O,    O,    O,    p(0), O,    m(2), O,    p(1), O,    O,    p(3), m(2)],
    [O,    O,    O,    O,    O,    O,    O,    O,    p(0), O,    O,    O,    p(1), O,    p(2), p(3)],
];

pub fn m_entry(r: usize, c: usize) -> Entry {
    M_TABLE[r][c]
}

/// The ring `Q[f0, f1, f2, f3]`.
pub fn f_ring() -> MultiPolyRing<Rationals> {
    MultiPolyRing::new(Rationals, &["f0", "f1", "f2", "f3"])
}

fn lift(r: &MultiPolyRing<Rationals>, e: Entry) -> MPoly<Q> {
    match e {
        None => r.zero(),
        Some((s, k)) => r.mul(&r.from_int(s as i64), &r.var(k)),
    }
}

/// `M` with formal entries.
pub fn matriciona_m(r: &MultiPolyRing<Rationals>) -> Matrix<MPoly<Q>> {
    Matrix::from_fn(9, 16, |i, j| lift(r, M_TABLE[i][j]))
}

/// Every nonzero `±f_k` in row `r`, column `c` satisfies `row ^ k = col`.
pub fn check_labels() -> Result<(), ModuliError> {
    for (r, row) in M_TABLE.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if let Some((_, k)) = e {
                if product_label(ROW_LABELS[r], *k) != COL_LABELS[c] {
                    return Err(ModuliError::LabelMismatch { row: r, col: c });
                }
            }
        }
    }
    Ok(())
}

/// `α̃ : O(3[0] − τ) → B(3[0]) ⊕ S^2(B)(3[0] − τ)`, 14 entries.
pub fn alpha_tilde(r: &MultiPolyRing<Rationals>) -> Matrix<MPoly<Q>> {
    let mut v = vec![r.zero(); 14];
    for k in 0..4 {
        v[k] = r.var(k);
    }
    for i in [8, 11, 13] {
        v[i] = r.from_int(-1);
    }
    Matrix::from_vec(14, 1, v)
}

/// `β̃ : B(3[0]) ⊕ S^2(B)(3[0] − τ) → S^3(B)(3[0])`, 20 × 14.
///
/// Columns 0..4 are `B`, columns 4..14 the lex basis of `S^2 B`; rows are the
/// lex basis of `S^3 B`. The `S^2` block is multiplication by
/// `f0 e0 + ... + f3 e3`, and the `B` block sends `e_k` to
/// `e_k · (e1^2 + e2^2 + e3^2)`.
pub fn beta_tilde(r: &MultiPolyRing<Rationals>) -> Matrix<MPoly<Q>> {
    let s2 = multisets(4, 2);
    let s3 = multisets(4, 3);
    let index3 = |mut v: Vec<usize>| {
        v.sort_unstable();
        s3.iter().position(|w| *w == v).expect("multiset")
    };
    let mut b = Matrix::zeros(r, 20, 14);
    for (j, pair) in s2.iter().enumerate() {
        for k in 0..4 {
            let row = index3(vec![pair[0], pair[1], k]);
            let x = r.add(b.get(row, 4 + j), &r.var(k));
            b.set(row, 4 + j, x);
        }
    }
    for k in 0..4 {
        for sq in 1..4 {
            b.set(index3(vec![k, sq, sq]), k, r.one());
        }
    }
    b
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::p1bundles::bundle::sym_basis(n, k)
}

/// Pivots for the cancellation that produces `ᵗM`: the unit of `α̃` and one
/// unit per `B` column of `β̃`, as `(row, col)`.
pub const ALPHA_PIVOT: usize = 13;
pub const BETA_PIVOTS: [(usize, usize); 4] = [(9, 0), (10, 1), (16, 2), (19, 3)];

/// Cancel unit entries of the complex `0 → R --α--> R^n --β--> R^m`.
///
/// A unit of `α` at `alpha_pivot` removes that column of `β` (the complex
/// condition `β α = 0` makes the change of basis free on the remaining
/// columns). Each unit `β[r][c]` then removes row `r` and column `c` after
/// clearing column `c`.
pub fn minimalize(
    r: &MultiPolyRing<Rationals>,
    alpha: &Matrix<MPoly<Q>>,
    beta: &Matrix<MPoly<Q>>,
    alpha_pivot: usize,
    beta_pivots: &[(usize, usize)],
) -> Result<Matrix<MPoly<Q>>, ModuliError> {
    let unit = |x: &MPoly<Q>| r.constant_value(x).filter(|c| *c != q(0));
    if unit(alpha.get(alpha_pivot, 0)).is_none() {
        return Err(ModuliError::NotAUnit { row: alpha_pivot, col: 0 });
    }
    let mut b = beta.clone();
    let mut rows: Vec<usize> = (0..b.rows()).collect();
    let mut cols: Vec<usize> = (0..b.cols()).filter(|&j| j != alpha_pivot).collect();
    for &(pr, pc) in beta_pivots {
        let Some(u) = unit(b.get(pr, pc)) else {
            return Err(ModuliError::NotAUnit { row: pr, col: pc });
        };
        let inv = r.constant(Rationals.inv(&u));
        for &i in &rows {
            if i == pr || r.is_zero(b.get(i, pc)) {
                continue;
            }
            let factor = r.mul(b.get(i, pc), &inv);
            for &j in &cols {
                let x = r.sub(b.get(i, j), &r.mul(&factor, b.get(pr, j)));
                b.set(i, j, x);
            }
        }
        rows.retain(|&i| i != pr);
        cols.retain(|&j| j != pc);
    }
    Ok(b.submatrix(&rows, &cols))
}

/// Shape and label data of `F'`.
pub const FPRIME_ROWS: usize = 18;
pub const FPRIME_COLS: usize = 16;

/// `F' : ⊕_16 H^0(L(τ)) → ⊕_9 H^0(L(2τ))` at `τ = [0]`, over any ring
/// holding the parameters `(a, b, c, d)` of `f2^2 = a f0^2 + b f1^2`,
/// `f3^2 = c f0^2 + d f1^2`. Row `2i + e` is coordinate `e` of summand `i`
/// in the basis named by [`basis_names`].
pub fn fprime<R: Ring>(r: &R, params: &[R::Elem; 4]) -> Result<Matrix<R::Elem>, ModuliError> {
    let mut out = Matrix::zeros(r, FPRIME_ROWS, FPRIME_COLS);
    for (i, row) in M_TABLE.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            let Some((s, k)) = *e else { continue };
            let (label, coords) = theta_product(r, k, COL_LABELS[c], params);
            if label != ROW_LABELS[i] {
                return Err(ModuliError::LabelMismatch { row: i, col: c });
            }
            for (t, x) in coords.iter().enumerate() {
                let v = if s < 0 { r.neg(x) } else { x.clone() };
                out.set(2 * i + t, c, v);
            }
        }
    }
    Ok(out)
}

/// Names of the 18 row coordinates of `F'`.
pub fn fprime_row_names() -> Vec<String> {
    ROW_LABELS.iter().flat_map(|&l| basis_names(l)).collect()
}

/// The ring `Q[a, b, c, d]`.
pub fn param_ring() -> MultiPolyRing<Rationals> {
    MultiPolyRing::new(Rationals, &["a", "b", "c", "d"])
}

pub fn fprime_formal(r: &MultiPolyRing<Rationals>) -> Matrix<MPoly<Q>> {
    let params = [r.var(0), r.var(1), r.var(2), r.var(3)];
    fprime(r, &params).expect("labels are consistent")
}
