//! Products of the four sections `f0 ∈ H^0(O([0]))`, `f_i ∈ H^0(L_i([0]))`
//! in fixed bases of `H^0(L(2[0]))`. For `L = O` the basis is `{f0^2, f1^2}`
//! and `f2^2 = a f0^2 + b f1^2`, `f3^2 = c f0^2 + d f1^2`; for `L = L_n` it is
//! `{f0 f_n, f_j f_k}` with `{n, j, k} = {1, 2, 3}`.

use crate::exactalg::ring::Ring;

/// Label of `f_a f_b`: `0` for `O`, `n` for `L_n`, with `L1 ⊕ L2 = L3`.
pub fn product_label(a: usize, b: usize) -> usize {
    assert!(a < 4 && b < 4, "theta index out of range");
    a ^ b
}

pub fn basis_names(label: usize) -> [String; 2] {
    match label {
        0 => ["f0^2".into(), "f1^2".into()],
        n => {
            let mut others = (1..=3).filter(|&x| x != n);
            let (j, k) = (others.next().unwrap(), others.next().unwrap());
            [format!("f0*f{n}"), format!("f{j}*f{k}")]
        }
    }
}

/// Coordinates of `f_a f_b` in the basis of its bundle. `params = [a, b, c, d]`.
pub fn theta_product<R: Ring>(r: &R, a: usize, b: usize, params: &[R::Elem; 4]) -> (usize, [R::Elem; 2]) {
    let label = product_label(a, b);
    let coords = match (label, a.min(b)) {
        (0, _) => match a {
            0 => [r.one(), r.zero()],
            1 => [r.zero(), r.one()],
            2 => [params[0].clone(), params[1].clone()],
            _ => [params[2].clone(), params[3].clone()],
        },
        (_, 0) => [r.one(), r.zero()],
        _ => [r.zero(), r.one()],
    };
    (label, coords)
}
