mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn riemann_roch_on_p1(input in twisted_bundle()) {
        riemann_roch(input)?;
    }

    #[test]
    fn serre_duality_on_p1(input in twisted_bundle()) {
        serre_duality(input)?;
    }

    #[test]
    fn splitting_from_profile_round_trip(b in bundle()) {
        profile_round_trip(b)?;
    }

    #[test]
    fn splitting_recovered_from_cokernel(input in split_inclusion()) {
        cokernel_splitting(input)?;
    }

    #[test]
    fn smith_form_over_f7_t(input in poly_matrix()) {
        smith_form(input)?;
    }

    #[test]
    fn torsion_degrees_match_local_oracle(input in torsion_input()) {
        torsion_degrees(input)?;
    }

    #[test]
    fn genus3_rank_identities(input in sigma2_input()) {
        genus3_ranks(input)?;
    }

    #[test]
    fn a_then_b_is_killed_by_sigma2(input in sigma2_input()) {
        a_then_b_vanishes(input)?;
    }

    #[test]
    fn c_fiberwise_injective_at_drops(input in conic_drop_input()) {
        c_injective_at_drop(input)?;
    }
}
