mod common;

use common::{c, random_poly, random_rational, unit_square};
use fixdyn::{
    find_roots, fixed_points, multiplicity_of_fixed_point, multiplier, Complex64, Polynomial,
    RationalMap, Tolerances,
};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0xb2), failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn multiplicities_sum_to_degree_plus_one(seed in any::<u64>(), d in 2usize..7) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = random_rational(&mut rng, d, &tol);
        let total: usize = fixed_points(&r, &tol).unwrap().iter().map(|f| f.multiplicity).sum();
        prop_assert_eq!(total, d + 1);
    }

    #[test]
    fn simple_roots_have_small_residuals(seed in any::<u64>(), d in 1usize..9) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, d);
        for root in find_roots(&p, &tol).unwrap() {
            if root.multiplicity == 1 {
                prop_assert!(p.eval(root.center).norm() <= 1e-8 * p.scale());
            }
        }
    }

    #[test]
    fn roots_reconstruct_the_polynomial(seed in any::<u64>(), d in 1usize..9) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, d);
        let mut expanded = Vec::new();
        for root in find_roots(&p, &tol).unwrap() {
            expanded.extend(std::iter::repeat(root.center).take(root.multiplicity));
        }
        let q = Polynomial::from_roots(&expanded, p.leading());
        prop_assert_eq!(q.degree(), p.degree());
        for (a, b) in p.coeffs().iter().zip(q.coeffs()) {
            prop_assert!((a - b).norm() <= 1e-6 * p.scale());
        }
    }

    #[test]
    fn planted_multiple_roots_are_found(seed in any::<u64>(), m in 2usize..5, extra in 0usize..4) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let center = unit_square(&mut rng);
        let mut roots = vec![center; m];
        while roots.len() < m + extra {
            let z = unit_square(&mut rng) * 2.0;
            if roots.iter().all(|r| (r - z).norm() > 0.2) {
                roots.push(z);
            }
        }
        let p = Polynomial::from_roots(&roots, c(1.0, 0.0));
        let found = find_roots(&p, &tol).unwrap();
        let cluster = found.iter().find(|r| (r.center - center).norm() < 1e-3);
        prop_assert!(cluster.is_some_and(|r| r.multiplicity == m), "{found:?}");
    }

    /// Multiplicity at least 2 exactly when the multiplier is 1, on maps
    /// `z + k (z - a)^m g(z)` with a planted fixed point of order `m`.
    #[test]
    fn multiple_points_have_multiplier_one(seed in any::<u64>(), m in 1usize..4) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = unit_square(&mut rng);
        let other = a + Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..6.28));
        let mut roots = vec![a; m];
        roots.push(other);
        let k = unit_square(&mut rng) + c(0.5, 0.0);
        let p = &Polynomial::identity() + &Polynomial::from_roots(&roots, k);
        let r = RationalMap::polynomial(p);
        let mult = multiplicity_of_fixed_point(&r, a.into(), &tol).unwrap();
        let lam = multiplier(&r, a.into(), &tol).unwrap();
        prop_assert_eq!(mult, m);
        prop_assert_eq!(mult >= 2, (lam - 1.0).norm() <= tol.tau_mult);
    }
}
