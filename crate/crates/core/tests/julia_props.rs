mod common;

use common::{random_poly, unit_square};
use fixdyn::{escape_radius, escape_time, fixed_points, render, Complex64, RationalMap, RenderConfig, Tolerances};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0xe5), failure_persistence: None, ..ProptestConfig::default() }
}

fn small_config(max_iter: u32) -> RenderConfig {
    RenderConfig::new(Complex64::new(0.0, 0.0), 2.0, 32, 24, max_iter).unwrap()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn escape_radius_doubles_modulus(seed in any::<u64>(), d in 2usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, d);
        let r = escape_radius(&p);
        for _ in 0..64 {
            let z = Complex64::from_polar(r * rng.gen_range(1.0..3.0), rng.gen_range(0.0..6.28));
            prop_assert!(p.eval(z).norm() >= 2.0 * z.norm() - 1e-9 * z.norm());
        }
    }

    #[test]
    fn escape_time_steps_down_along_orbits(seed in any::<u64>(), d in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, d);
        let cfg = small_config(200);
        for _ in 0..32 {
            let z = unit_square(&mut rng) * 2.0;
            let n = escape_time(&p, z, &cfg);
            if n > 1 && n < cfg.max_iter {
                prop_assert_eq!(escape_time(&p, p.eval(z), &cfg), n - 1);
            }
        }
    }

    #[test]
    fn orbit_stays_inside_until_escape(seed in any::<u64>(), d in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, d);
        let cfg = small_config(200);
        let r = escape_radius(&p);
        for _ in 0..32 {
            let z0 = unit_square(&mut rng) * r;
            let n = escape_time(&p, z0, &cfg);
            if n == cfg.max_iter {
                continue;
            }
            let mut z = z0;
            for _ in 1..n {
                z = p.eval(z);
                prop_assert!(z.norm() <= r);
            }
            prop_assert!(p.eval(z).norm() > r);
        }
    }

    #[test]
    fn fixed_points_never_escape(seed in any::<u64>(), d in 2usize..6) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, d);
        let cfg = small_config(500);
        for f in fixed_points(&RationalMap::polynomial(p.clone()), &tol).unwrap() {
            let Some(z) = f.point.finite() else { continue };
            // Only points the periodicity test can see as fixed.
            if (p.eval(z) - z).norm() <= 1e-13 * z.norm().max(1.0) {
                prop_assert_eq!(escape_time(&p, z, &cfg), cfg.max_iter);
            }
        }
    }

    #[test]
    fn render_is_deterministic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, 3);
        let cfg = small_config(100);
        let a = render(&p, &cfg).unwrap();
        let b = render(&p, &cfg).unwrap();
        prop_assert_eq!(&a, &b);
        for row in 0..cfg.height {
            for col in 0..cfg.width {
                prop_assert_eq!(a.get(col, row), escape_time(&p, cfg.pixel_center(col, row), &cfg));
            }
        }
    }
}
