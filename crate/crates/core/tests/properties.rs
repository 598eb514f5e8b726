mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use singular_periodic::cone::{cone_check, random_cone_element, ConeOperator};
use singular_periodic::kernel::GridFunction;
use singular_periodic::model::{Nonlinearity, PowerSum};
use singular_periodic::solver::{lambda_grid, solve, Annulus, SolveOptions};

use common::{operator, random_system, unit_system};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constants_are_ordered(seed in any::<u64>()) {
        let spec = random_system(&mut ChaCha8Rng::seed_from_u64(seed));
        let c = operator(&spec, 32).constants().clone();
        prop_assert!(c.sigma > 0.0 && c.sigma < 1.0);
        prop_assert!(c.gamma > 0.0 && c.gamma < c.chi);
        for i in 0..spec.n() {
            prop_assert!(c.sigma <= c.sigma_i[i]);
            prop_assert!((c.green_lower[i] / c.sigma_i[i] - c.green_upper[i]).abs() <= 1e-12 * c.green_upper[i]);
        }
    }

    #[test]
    fn operator_preserves_the_cone(seed in any::<u64>(), log_r in -3.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let op = operator(&random_system(&mut rng), 32);
        let u = random_cone_element(&mut rng, &op.constants().sigma_i, 32, op.omega(), 10f64.powf(log_r)).unwrap();
        prop_assert!(cone_check(&u, op.constants()).in_cone);
        let image = op.apply(&u).unwrap();
        prop_assert!(cone_check(&image, op.constants()).in_cone);
        prop_assert!(image.values().iter().all(|&x| x > 0.0));
    }

    #[test]
    fn operator_is_linear_in_lambda(seed in any::<u64>(), scale in 0.1f64..10.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let op = operator(&random_system(&mut rng), 32);
        let u = random_cone_element(&mut rng, &op.constants().sigma_i, 32, op.omega(), 1.0).unwrap();
        let base = op.apply(&u).unwrap();
        let scaled = op.with_lambda(op.lambda() * scale).unwrap().apply(&u).unwrap();
        prop_assert!(scaled.max_abs_diff(&base.scaled(scale)) <= 1e-12 * scale * base.norm());
    }

    #[test]
    fn norm_is_positively_homogeneous(seed in any::<u64>(), c in 1e-3f64..1e3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_cone_element(&mut rng, &[0.3, 0.5], 16, 1.0, 2.0).unwrap();
        prop_assert!((u.scaled(c).norm() - c * u.norm()).abs() <= 1e-12 * c * u.norm());
    }

    #[test]
    fn projection_lands_in_the_annulus(seed in any::<u64>(), log_r in -4.0f64..4.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let band = Annulus::new(0.1, 10.0).unwrap();
        let mut u = random_cone_element(&mut rng, &[0.4], 16, 1.0, 10f64.powf(log_r)).unwrap();
        let moved = band.project(&mut u);
        prop_assert_eq!(moved, !(0.1..=10.0).contains(&10f64.powf(log_r)));
        prop_assert!(band.contains(u.norm()));
    }

    #[test]
    fn lambda_grid_is_ascending_with_exact_ends(lo in 1e-3f64..1.0, span in 1.01f64..100.0, steps in 2usize..40, log: bool) {
        let hi = lo * span;
        let grid = lambda_grid(lo, hi, steps, log).unwrap();
        prop_assert_eq!(grid.len(), steps);
        prop_assert_eq!(grid[0], lo);
        prop_assert_eq!(grid[steps - 1], hi);
        prop_assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// With `a = b = 1` and `f = x^-p` the unique solution is the constant `lambda^{1/(1+p)}`.
    #[test]
    fn solver_finds_constant_solutions(p in 0.2f64..3.0, lambda in 0.05f64..5.0) {
        let f = Nonlinearity::power_sum(PowerSum::uniform(1, 1.0, p, 0.0, 0.0, 0.0).unwrap());
        let op = ConeOperator::new(&unit_system(f, lambda), 32).unwrap();
        let report = solve(&op, &SolveOptions::default()).unwrap();
        prop_assert_eq!(report.solutions.len(), 1);
        let want = lambda.powf(1.0 / (1.0 + p));
        let s = &report.solutions[0];
        prop_assert!((s.norm - want).abs() <= 1e-8 * want, "norm {} want {}", s.norm, want);
        let flat = GridFunction::constant(32, 1.0, &[want]).unwrap();
        prop_assert!(s.u.max_abs_diff(&flat) <= 1e-8 * want);
    }
}
