mod common;

use common::{c, random_poly, separated_map};
use fixdyn::{
    analyze, residue_index_closed, residue_index_contour, rnfp_witness, weakly_repelling_witness,
    Complex64, ContourConfig, ExtendedComplex, FixedPointClass, RationalMap, Tolerances,
};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0xc3), failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn indices_sum_to_one(seed in any::<u64>(), d in 2usize..6, polynomial in any::<bool>()) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = separated_map(&mut rng, d, polynomial, 1e-3, &tol);
        let report = analyze(&r, &tol, &ContourConfig::default()).unwrap();
        let sum: Complex64 = report.records.iter().map(|rec| rec.index).sum();
        prop_assert!((sum - 1.0).norm() <= 1e-6, "sum {sum}");
        prop_assert!((report.rfpt_sum - sum).norm() <= 1e-12);
        if polynomial {
            let finite = report.finite_sum.unwrap();
            prop_assert!(finite.norm() <= 1e-6, "finite sum {finite}");
        }
    }

    #[test]
    fn contour_agrees_with_closed_form(seed in any::<u64>(), d in 2usize..5, polynomial in any::<bool>()) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = separated_map(&mut rng, d, polynomial, 0.05, &tol);
        let report = analyze(&r, &tol, &ContourConfig::default()).unwrap();
        for rec in &report.records {
            let ExtendedComplex::Finite(z) = rec.location else { continue };
            let closed = residue_index_closed(rec.multiplier, &tol).unwrap();
            let contour = residue_index_contour(&r, z, &ContourConfig::default(), &tol).unwrap();
            prop_assert!((closed - contour).norm() <= 1e-8 * closed.norm().max(1.0), "{closed} vs {contour}");
        }
    }

    /// `Re ι > 1/2` exactly for attracting points, `< 1/2` for repelling.
    #[test]
    fn class_matches_index_real_part(seed in any::<u64>(), d in 2usize..6, polynomial in any::<bool>()) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = separated_map(&mut rng, d, polynomial, 1e-3, &tol);
        let report = analyze(&r, &tol, &ContourConfig::default()).unwrap();
        for rec in &report.records {
            let re = rec.index.re;
            match rec.class {
                FixedPointClass::Attracting | FixedPointClass::Superattracting => prop_assert!(re > 0.5),
                FixedPointClass::Repelling => prop_assert!(re < 0.5),
                _ => prop_assert!((re - 0.5).abs() <= 0.5 * tol.tau_mult / (1.0 - tol.tau_mult).powi(2) + 1e-12),
            }
        }
    }

    #[test]
    fn polynomials_have_rnfp_witnesses(seed in any::<u64>(), d in 2usize..7) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = separated_map(&mut rng, d, true, 1e-4, &tol);
        let report = analyze(&r, &tol, &ContourConfig::default()).unwrap();
        let w = rnfp_witness(&report, &tol).expect("polynomial without witness");
        let rec = report.records.iter().find(|rec| rec.location == w).unwrap();
        prop_assert!(w.finite().is_some());
        prop_assert!(rec.multiplicity >= 2 || rec.multiplier.re >= 1.0 - tol.tau_mult);
    }

    #[test]
    fn weakly_repelling_witness_exists(seed in any::<u64>(), d in 2usize..6, polynomial in any::<bool>()) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = separated_map(&mut rng, d, polynomial, 1e-4, &tol);
        let report = analyze(&r, &tol, &ContourConfig::default()).unwrap();
        let w = weakly_repelling_witness(&report, &tol).unwrap();
        let rec = report.records.iter().find(|rec| rec.location == w).unwrap();
        prop_assert!(rec.multiplicity >= 2 || rec.multiplier.norm() >= 1.0 - tol.tau_mult);
    }

    #[test]
    fn quadratic_multipliers_sum_to_two(seed in any::<u64>()) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = separated_map(&mut rng, 2, true, 1e-3, &tol);
        let report = analyze(&r, &tol, &ContourConfig::default()).unwrap();
        let sum: Complex64 = report.records.iter().filter(|rec| !rec.location.is_infinite()).map(|rec| rec.multiplier).sum();
        prop_assert!((sum - 2.0).norm() <= 1e-9);
    }

    #[test]
    fn infinity_is_superattracting_for_polynomials(seed in any::<u64>(), d in 2usize..7) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = RationalMap::polynomial(random_poly(&mut rng, d));
        let report = analyze(&r, &tol, &ContourConfig::default());
        // Maps with a clustered finite fixed point are skipped, infinity is checked on the rest.
        if let Ok(report) = report {
            let inf = report.records.iter().find(|rec| rec.location.is_infinite()).unwrap();
            prop_assert!(inf.multiplier.norm() <= 1e-12);
            prop_assert!((inf.index - 1.0).norm() <= 1e-12);
            prop_assert_eq!(inf.class, FixedPointClass::Superattracting);
        }
    }
}

#[test]
fn multiple_fixed_point_is_its_own_witness() {
    let tol = Tolerances::default();
    // z + z^2 has a double fixed point at 0.
    let r = RationalMap::polynomial(fixdyn::Polynomial::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]));
    let report = analyze(&r, &tol, &ContourConfig::default()).unwrap();
    assert_eq!(rnfp_witness(&report, &tol), Some(ExtendedComplex::Finite(c(0.0, 0.0))));
}
