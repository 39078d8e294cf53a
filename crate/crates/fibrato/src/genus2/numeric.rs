use serde::Serialize;

use super::Genus2Error;

/// `(χ(O_S), K_S^2)` from the base genus and the degrees of `V1` and `τ`.
pub fn invariants_g2(b: i64, deg_v1: i64, deg_tau: i64) -> (i64, i64) {
    (deg_v1 + (b - 1), 2 * deg_v1 + deg_tau + 8 * (b - 1))
}

/// `(deg V1, deg τ)` realizing the given invariants.
pub fn solve_tuple_degrees(b: i64, chi: i64, ksq: i64) -> Result<(i64, i64), Genus2Error> {
    let deg_v1 = chi - (b - 1);
    let deg_tau = ksq - 2 * deg_v1 - 8 * (b - 1);
    if deg_tau < 0 {
        return Err(Genus2Error::NegativeTau { b, chi, ksq, deg_tau });
    }
    Ok((deg_v1, deg_tau))
}

/// `(rank V_n^+, rank V_n^-)`.
pub fn rank_vn_pm(n: i64, g: i64) -> (i64, i64) {
    assert!(n >= 2, "n must be at least 2");
    let a = n * (g - 1) + 1;
    let b = (n - 1) * (g - 1) - 1;
    if n % 2 == 0 {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn rank_vn(n: i64, g: i64) -> i64 {
    if n == 1 {
        g
    } else {
        (2 * n - 1) * (g - 1)
    }
}

/// `(χ(V_n), deg V_n)` from the relative invariants.
pub fn chi_deg_vn(n: i64, g: i64, b: i64, ksq_rel: i64, chi_rel: i64) -> (i64, i64) {
    assert!(n >= 1, "n must be positive");
    let deg = n * (n - 1) / 2 * ksq_rel + chi_rel;
    (deg + rank_vn(n, g) * (1 - b), deg)
}

pub fn minimal_model_bound(g: i64) -> i64 {
    (2 * g - 3) * (2 * g - 3)
}

/// `O_{multiple·τ}^{count}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionSummand {
    pub multiple: u32,
    pub count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionStructure {
    pub index: u32,
    pub summands: Vec<TorsionSummand>,
    pub degree: u64,
}

impl TorsionStructure {
    /// Local invariant-factor lengths at a point of `τ` of multiplicity `s`.
    pub fn local_lengths(&self, s: u32) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .summands
            .iter()
            .flat_map(|x| std::iter::repeat_n(x.multiple as u64 * s as u64, x.count as usize))
            .collect();
        v.sort_unstable();
        v
    }
}

/// Structure of the torsion in degree `k` (`k = 2n` even part, `k = 2n+1`
/// odd part) for `τ = Σ s_j p_j`.
pub fn torsion_structure_g2(k: u32, s_list: &[u32]) -> Result<TorsionStructure, Genus2Error> {
    if k < 2 {
        return Err(Genus2Error::InvalidArgument(format!("torsion index {k} must be at least 2")));
    }
    let deg_tau: u64 = s_list.iter().map(|&s| s as u64).sum();
    let n = k / 2;
    let mut summands = Vec::new();
    if deg_tau > 0 {
        if k.is_multiple_of(2) {
            summands.push(TorsionSummand { multiple: n, count: 1 });
            summands.extend((1..n).rev().map(|i| TorsionSummand { multiple: i, count: 2 }));
        } else {
            summands.extend((1..=n).rev().map(|i| TorsionSummand { multiple: i, count: 2 }));
        }
    }
    let n = n as u64;
    let degree = if k.is_multiple_of(2) { n * n * deg_tau } else { n * (n + 1) * deg_tau };
    Ok(TorsionStructure { index: k, summands, degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_and_inverse() {
        assert_eq!(invariants_g2(1, 1, 1), (1, 3));
        assert_eq!(invariants_g2(0, 2, 5), (1, 1));
        assert_eq!(invariants_g2(1, 0, 0), (0, 0));
        assert_eq!(solve_tuple_degrees(0, 1, 1).unwrap(), (2, 5));
        assert_eq!(solve_tuple_degrees(1, 1, 3).unwrap(), (1, 1));
        assert_eq!(solve_tuple_degrees(1, 1, 2).unwrap(), (1, 0));
        assert!(solve_tuple_degrees(1, 1, 1).is_err());
    }

    #[test]
    fn rank_table() {
        assert_eq!(rank_vn_pm(2, 2), (3, 0));
        assert_eq!(rank_vn_pm(3, 2), (1, 4));
        for n in 2..10 {
            for g in 2..6 {
                let (p, m) = rank_vn_pm(n, g);
                assert_eq!(p + m, rank_vn(n, g));
            }
        }
    }

    #[test]
    fn fujita_degrees() {
        assert_eq!(chi_deg_vn(3, 2, 0, 9, 2).1, 29);
        assert_eq!(chi_deg_vn(1, 2, 0, 9, 2).1, 2);
        assert_eq!(chi_deg_vn(2, 2, 1, 0, 0), (0, 0));
        assert_eq!(minimal_model_bound(2), 1);
        assert_eq!(minimal_model_bound(3), 9);
        assert_eq!(minimal_model_bound(4), 25);
    }

    #[test]
    fn torsion_degrees() {
        assert_eq!(torsion_structure_g2(4, &[5]).unwrap().degree, 20);
        assert_eq!(torsion_structure_g2(5, &[1]).unwrap().degree, 6);
        let z = torsion_structure_g2(6, &[]).unwrap();
        assert!(z.summands.is_empty() && z.degree == 0);
        assert_eq!(torsion_structure_g2(4, &[3]).unwrap().local_lengths(3), vec![3, 3, 6]);
    }
}
