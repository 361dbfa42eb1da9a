//! Randomized checks of the MPP flux limiter against a brute-force scan.

mod common;

use common::{check_1d, check_2d, instance_1d, instance_2d, limit_1d, Instance1D};
use mppdg::limiter::compute_gamma_1d;
use mppdg::{evolve, get_problem, BoundPair, CflConfig, Discretization, Params, Scheme1D, SchemeOptions};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn limiter_1d_matches_brute_force(seed in any::<u64>()) {
        let inst = instance_1d(seed);
        prop_assert!(check_1d(&inst).is_ok(), "{:?}: {:?}", inst, check_1d(&inst));
    }

    #[test]
    fn limiter_1d_is_monotone_in_the_bounds(seed in any::<u64>(), widen in 0.0f64..0.5) {
        let inst = instance_1d(seed);
        let (_, tight) = limit_1d(&inst, inst.bounds);
        let wide = BoundPair::new(inst.bounds.lower - widen, inst.bounds.upper + widen);
        let (_, loose) = limit_1d(&inst, wide);
        for (a, b) in tight.theta_x.iter().zip(&loose.theta_x) {
            prop_assert!(b >= a, "widening the bounds lowered theta: {a} -> {b}");
        }
    }

    #[test]
    fn limiter_1d_is_idle_without_antidiffusion(seed in any::<u64>()) {
        let inst = instance_1d(seed);
        let same = Instance1D { high: inst.low.clone(), ..inst };
        let (limited, report) = limit_1d(&same, same.bounds);
        prop_assert_eq!(report.activated, 0);
        prop_assert_eq!(limited.x, same.low.x);
    }

    #[test]
    fn limiter_2d_matches_brute_force(seed in any::<u64>()) {
        let inst = instance_2d(seed);
        prop_assert!(check_2d(&inst).is_ok(), "{:?}: {:?}", inst, check_2d(&inst));
    }
}

#[test]
fn porous_first_step_keeps_first_order_update_in_bounds() {
    for m in [2.0, 3.0, 5.0, 8.0] {
        let params: Params = [("m".to_string(), m)].into();
        let p = get_problem("porous-medium", &params).unwrap().into_1d().unwrap();
        let scheme = Scheme1D::new(p, 80, 3, SchemeOptions::new(3).with_tvb(Some(1.0))).unwrap();
        let u = scheme.project_initial().unwrap();
        let dt = scheme.stable_dt(&u.coeffs, 0.0, &CflConfig::for_degree(3)).unwrap();
        let ubar = u.averages();
        let low = scheme.low_order_fluxes(&ubar);
        let g = compute_gamma_1d(&ubar, &low, scheme.problem.bounds, dt / scheme.grid.h).unwrap();
        assert!(g.max.iter().all(|&v| v >= 0.0) && g.min.iter().all(|&v| v <= 0.0));
    }
}

#[test]
fn limited_porous_run_reports_activity() {
    let p = get_problem("porous-medium", &Params::new()).unwrap().into_1d().unwrap();
    let scheme = Scheme1D::new(p, 40, 3, SchemeOptions::new(3).with_tvb(Some(1.0))).unwrap();
    let mut u = scheme.project_initial().unwrap().coeffs;
    let stats = evolve(&scheme, &mut u, 0.05, &CflConfig::for_degree(3)).unwrap();
    assert!(stats.limiter_activations > 0);
    assert!((0.0..1.0).contains(&stats.min_theta));
    assert!(stats.global_min >= -1e-12);
}
