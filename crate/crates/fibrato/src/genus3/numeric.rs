use serde::Serialize;

use super::Genus3Error;

/// `(χ(O_S), K^2_S)` from the base genus, `deg V1` and `deg τ`.
pub fn invariants_g3(b: i64, deg_v1: i64, deg_tau: i64) -> (i64, i64) {
    let chi = deg_v1 + 2 * (b - 1);
    let ksq = 3 * deg_v1 + deg_tau + 16 * (b - 1);
    (chi, ksq)
}

/// `deg τ` recovered from `(b, χ, K^2)`.
pub fn deg_tau_from_invariants(b: i64, chi: i64, ksq: i64) -> i64 {
    ksq - 3 * chi - 10 * (b - 1)
}

/// Rank of the free `O_τ`-module `T_n`.
pub fn torsion_rank_g3(n: u32) -> Result<u32, Genus3Error> {
    if n < 2 {
        return Err(Genus3Error::InvalidArgument(format!("torsion rank needs n ≥ 2, got {n}")));
    }
    Ok(2 * n - 3)
}

/// Degrees of `L4 = det V1 ⊗ O(−τ)` and `L4' = det V1 ⊗ O(τ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct L4Pair {
    pub l4: i64,
    pub l4_prime: i64,
}

pub fn l4_pair(deg_v1: i64, deg_tau: i64) -> L4Pair {
    L4Pair { l4: deg_v1 - deg_tau, l4_prime: deg_v1 + deg_tau }
}

/// Class of the canonical image in `P(V1)`: relative degree and the degree
/// of the pulled-back base twist `L4^∨`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
    pub relative_degree: u32,
    pub base_twist: i64,
}

pub fn canonical_image_class(deg_v1: i64, deg_tau: i64) -> DivisorClass {
    DivisorClass { relative_degree: 4, base_twist: -l4_pair(deg_v1, deg_tau).l4 }
}

/// `rank V_n = (2n − 1)(g − 1)` for `n ≥ 2`.
pub fn rank_vn_g3(n: u32) -> u32 {
    (2 * n - 1) * 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn frozen_invariants() {
        for d in 0..=3 {
            assert_eq!(invariants_g3(0, 6, d), (4, 2 + d));
        }
        assert_eq!(invariants_g3(1, 1, 0), (1, 3));
        assert_eq!(invariants_g3(1, 0, 0), (0, 0));
    }

    #[test]
    fn torsion_ranks() {
        assert_eq!(torsion_rank_g3(2).unwrap(), 1);
        assert_eq!(torsion_rank_g3(3).unwrap(), 3);
        assert_eq!(torsion_rank_g3(4).unwrap(), 5);
        assert!(torsion_rank_g3(1).is_err());
        // V1 ⊗ T2 ≅ T3
        assert_eq!(3 * torsion_rank_g3(2).unwrap(), torsion_rank_g3(3).unwrap());
    }

    #[test]
    fn line_bundles() {
        assert_eq!(l4_pair(6, 2), L4Pair { l4: 4, l4_prime: 8 });
        assert_eq!(l4_pair(6, 0), L4Pair { l4: 6, l4_prime: 6 });
        assert_eq!(canonical_image_class(6, 0), DivisorClass { relative_degree: 4, base_twist: -6 });
        assert_eq!(canonical_image_class(1, 0).base_twist, -1);
        assert_eq!(rank_vn_g3(3), 10);
        assert_eq!(rank_vn_g3(4), 14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn tau_round_trip(b in 0i64..6, dv in -20i64..40, dt in 0i64..30) {
            let (chi, ksq) = invariants_g3(b, dv, dt);
            prop_assert_eq!(deg_tau_from_invariants(b, chi, ksq), dt);
            let l = l4_pair(dv, dt);
            prop_assert_eq!(l.l4 + l.l4_prime, 2 * dv);
        }
    }
}
