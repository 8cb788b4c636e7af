mod common;

use common::*;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

fn check(r: Check) -> Result<(), TestCaseError> {
    r.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn killing_identity_holds(g in group(), pick in 0usize..200) {
        check(killing_identity(g, pick))?;
    }

    #[test]
    fn triples_symmetric_and_weyl_invariant(g in group(), i in 0usize..64, j in 0usize..64, k in 0usize..64, w in 0usize..10_000) {
        check(triple_symmetry(g, i, j, k, w))?;
    }

    #[test]
    fn ricci_is_homogeneous(g in group(), seed in prop::collection::vec(positive_rational(), 1..6), c in positive_rational()) {
        check(ricci_homogeneity(g, &seed, &c))?;
    }

    #[test]
    fn ricci_is_weyl_equivariant(g in group(), seed in prop::collection::vec(positive_rational(), 1..6), w in 0usize..10_000) {
        check(weyl_equivariance(g, &seed, w))?;
    }

    #[test]
    fn groebner_bases_self_reduce((gens, lex) in small_system()) {
        check(groebner_self_reduction(&gens, lex))?;
    }

    #[test]
    fn polynomial_arithmetic_is_exact((a, _) in small_system(), (b, _) in small_system()) {
        check(exact_arithmetic(&a[0], &b[0]))?;
    }

    #[test]
    fn sturm_intervals_certified((roots, quad) in rational_roots()) {
        check(sturm_isolation(&poly_with_roots(&roots, quad)))?;
    }
}
