use std::fmt;

use serde::Serialize;

use super::expr::{Atom, EllLine, NormalForm};
use super::label::PointLabel;
use super::EllError;

/// Splitting case of the rank-3 bundle `V2(-[0])` with determinant `O(τ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum V2Case {
    /// Indecomposable.
    I,
    /// Rank-2 indecomposable plus `L_i`.
    II(usize),
    /// Three lines, `L_i(τ) ⊕ L_j ⊕ L_k`.
    III(usize),
}

impl fmt::Display for V2Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            V2Case::I => write!(f, "I"),
            V2Case::II(i) => write!(f, "II (L{i})"),
            V2Case::III(i) => write!(f, "III (L{i})"),
        }
    }
}

/// Parse `τ` as a point: `[0]`, `general`, `L1..L3`, `M1..M8`, or any label
/// accepted by [`PointLabel::parse`]. Returns the class `τ - [0]`.
pub fn parse_tau(s: &str) -> Result<PointLabel, EllError> {
    match s.trim() {
        "[0]" => Ok(PointLabel::zero()),
        "general" => Ok(PointLabel::free("t")),
        other => PointLabel::parse(other),
    }
}

/// `vanishing[i]` says whether `f_{i+1}` vanishes.
pub fn classify_v2(vanishing: [bool; 3], tau: &PointLabel) -> Result<(V2Case, NormalForm), EllError> {
    let o_tau = EllLine::point(tau.clone());
    let l = |i: usize| EllLine::new(0, PointLabel::two_torsion(i));
    let zeros: Vec<usize> = (1..=3).filter(|&i| vanishing[i - 1]).collect();
    match zeros.as_slice() {
        [] => Ok((V2Case::I, NormalForm::new(vec![Atom::indec(3, o_tau)?]))),
        [i] => {
            let tau_i = o_tau.tensor(&l(*i));
            Ok((V2Case::II(*i), NormalForm::new(vec![Atom::indec(2, tau_i)?, Atom::Line(l(*i))])))
        }
        [_, _] => {
            let i = (1..=3).find(|i| !vanishing[i - 1]).unwrap();
            let mut atoms = vec![Atom::Line(o_tau.tensor(&l(i)))];
            atoms.extend((1..=3).filter(|&j| j != i).map(|j| Atom::Line(l(j))));
            Ok((V2Case::III(i), NormalForm::new(atoms)))
        }
        _ => Err(EllError::NotLocallyFree),
    }
}

/// The condition that `O([0] - τ)` is a nontrivial 2-torsion class.
pub fn tau_is_nontrivial_two_torsion(tau: &PointLabel) -> bool {
    tau.is_two_torsion() && !tau.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table() {
        let t = parse_tau("general").unwrap();
        let (c, nf) = classify_v2([false; 3], &t).unwrap();
        assert_eq!(c, V2Case::I);
        assert_eq!(nf.to_string(), "(sum (E 3 1 t))");
        let (c, nf) = classify_v2([true, false, false], &t).unwrap();
        assert_eq!(c, V2Case::II(1));
        assert_eq!(nf.to_string(), "(sum (line 0 L1) (E 2 1 t+L1))");
        let (c, nf) = classify_v2([false, true, true], &t).unwrap();
        assert_eq!(c, V2Case::III(1));
        assert_eq!(nf.to_string(), "(sum (line 0 L2) (line 0 L3) (line 1 t+L1))");
        assert_eq!(classify_v2([true; 3], &t), Err(EllError::NotLocallyFree));
    }

    #[test]
    fn rank_and_determinant() {
        for tau in ["[0]", "general", "L2", "M5"] {
            let t = parse_tau(tau).unwrap();
            for mask in 0..7u8 {
                let v = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
                let (_, nf) = classify_v2(v, &t).unwrap();
                assert_eq!(nf.rank(), 3);
                assert_eq!(nf.det(), EllLine::point(t.clone()));
            }
        }
    }
}
