mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gcd_keeps_common_factor(f in poly_strategy(2, 3, 3), g in poly_strategy(2, 3, 3), h in nonconstant(2, 2, 3)) {
        prop_gcd(&f, &g, &h)?;
    }

    #[test]
    fn resultant_detects_common_factor(f in nonconstant(2, 3, 3), g in nonconstant(2, 3, 3), c in poly_strategy(2, 2, 2)) {
        prop_resultant(&f, &g, &c)?;
    }

    #[test]
    fn squarefree_part_is_squarefree(f in nonconstant(3, 2, 3), g in poly_strategy(3, 2, 2)) {
        prop_squarefree(&f, &g)?;
    }

    #[test]
    fn factorization_expands_back(f in nonconstant(2, 3, 3), g in nonconstant(2, 2, 3)) {
        prop_factor(&f.mul(&g))?;
    }

    #[test]
    fn chains_are_regular_and_reduce_inputs(sys in prop::collection::vec(nonconstant(3, 2, 3), 1..=3)) {
        prop_chains(&sys)?;
    }
}
