//! Pricing-level invariants over randomly drawn models and contracts.

mod common;

use heston_tree::backward::{price_vanilla_with, BackwardOptions};
use heston_tree::cli::config::RunConfig;
use heston_tree::lattice::{states_at, successors, transition_probs};
use heston_tree::simulate::{simulate_price_with, SimOptions};
use heston_tree::{
    price_vanilla, simulate_price, Execution, Exercise, GridSpec, HestonParams, PayoffKind, PayoffSpec,
    TruncationMode,
};
use proptest::prelude::*;

/// Feller-compliant parameter sets in the range of the published tables.
fn model() -> impl Strategy<Value = HestonParams> {
    (50.0f64..150.0, 0.1f64..0.5, 0.001f64..0.1, 1.0f64..5.0, 0.02f64..0.2, -0.9f64..0.5)
        .prop_flat_map(|(s0, vol, r, kappa, theta, rho)| {
            let eta_max = (0.999 * (2.0 * kappa * theta).sqrt()).min(0.9);
            (Just((s0, vol, r, kappa, theta, rho)), 0.05f64..=eta_max)
        })
        .prop_map(|((s0, vol, r, kappa, theta, rho), eta)| {
            HestonParams::with_initial_vol(s0, vol, r, kappa, theta, eta, rho).unwrap()
        })
}

fn european(kind: PayoffKind, strike: f64, t: f64) -> PayoffSpec {
    PayoffSpec::european(kind, strike, t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn put_call_parity_holds_on_any_tree(p in model(), strike in 60.0f64..140.0, t in 0.05f64..1.5, n in 2usize..60) {
        let g = GridSpec::new(n, t, &p, TruncationMode::TruncateProb).unwrap();
        let put = price_vanilla(&european(PayoffKind::Put, strike, t), &g, &p).unwrap().price;
        let call = price_vanilla(&european(PayoffKind::Call, strike, t), &g, &p).unwrap().price;
        let forward = p.s0() - strike * (-p.r() * t).exp();
        // Parity is exact when the discounted stock is an exact martingale,
        // i.e. when no reachable state needs its up-probability clamped.
        let clamped = (0..n).any(|k| states_at(k).any(|st| transition_probs(&st, &g, &p).p_clamped()));
        prop_assume!(!clamped);
        prop_assert!((call - put - forward).abs() <= 1e-10 * p.s0(), "call {call} put {put} fwd {forward}");
    }

    #[test]
    fn american_dominates_european_and_intrinsic(p in model(), strike in 60.0f64..140.0, t in 0.05f64..1.0, n in 2usize..50) {
        let g = GridSpec::new(n, t, &p, TruncationMode::TruncateProb).unwrap();
        for kind in [PayoffKind::Put, PayoffKind::Call] {
            let eu = price_vanilla(&european(kind, strike, t), &g, &p).unwrap().price;
            let am = price_vanilla(&PayoffSpec::american(kind, strike, t).unwrap(), &g, &p).unwrap().price;
            let intrinsic = match kind {
                PayoffKind::Put => (strike - p.s0()).max(0.0),
                _ => (p.s0() - strike).max(0.0),
            };
            prop_assert!(am >= eu - 1e-12);
            prop_assert!(am >= intrinsic - 1e-12);
        }
    }

    #[test]
    fn prices_respect_static_bounds(p in model(), strike in 60.0f64..140.0, t in 0.05f64..1.0, n in 2usize..50) {
        let g = GridSpec::new(n, t, &p, TruncationMode::TruncateProb).unwrap();
        let call = price_vanilla(&european(PayoffKind::Call, strike, t), &g, &p).unwrap().price;
        let put = price_vanilla(&european(PayoffKind::Put, strike, t), &g, &p).unwrap().price;
        prop_assert!(call >= 0.0 && call <= p.s0() * (1.0 + 1e-9));
        prop_assert!(put >= 0.0 && put <= strike);
    }

    #[test]
    fn successor_laws_are_probability_distributions(p in model(), t in 0.05f64..1.0, n in 2usize..12, mode_alpha: bool) {
        let mode = if mode_alpha { TruncationMode::TruncateAlpha } else { TruncationMode::TruncateProb };
        let g = GridSpec::new(n, t, &p, mode).unwrap();
        for k in 0..n {
            for s in states_at(k) {
                let succ = successors(&s, &g, &p).unwrap();
                let total: f64 = succ.iter().map(|(_, w)| w).sum();
                prop_assert!((total - 1.0).abs() <= 1e-15);
                if mode == TruncationMode::TruncateProb {
                    prop_assert!(succ.iter().all(|(_, w)| (0.0..=1.0).contains(w)));
                }
            }
        }
    }

    #[test]
    fn execution_mode_never_changes_results(p in model(), strike in 80.0f64..120.0, seed: u64, shards in 1usize..6) {
        let t = 0.25;
        let g = GridSpec::new(40, t, &p, TruncationMode::TruncateProb).unwrap();
        let spec = european(PayoffKind::AsianGeometricCall, strike, t);
        let reference = simulate_price(&spec, &g, &p, 2_500, seed).unwrap();
        for execution in [Execution::Sequential, Execution::Parallel] {
            let opts = SimOptions { execution, shards: Some(shards), validate_states: true };
            let e = simulate_price_with(&spec, &g, &p, 2_500, seed, &opts).unwrap();
            prop_assert_eq!(e.price.to_bits(), reference.price.to_bits());
            prop_assert_eq!(e.std_error.map(f64::to_bits), reference.std_error.map(f64::to_bits));
            let opts = BackwardOptions { execution, ..BackwardOptions::default() };
            let put = european(PayoffKind::Put, strike, t);
            let a = price_vanilla_with(&put, &g, &p, &opts).unwrap().price;
            prop_assert_eq!(a.to_bits(), price_vanilla(&put, &g, &p).unwrap().price.to_bits());
        }
    }

    #[test]
    fn config_text_round_trips(p in model(), strike in 1.0f64..500.0, t in 0.01f64..5.0, n in 1usize..5000, seed: u64, paths in 100u64..10_000_000) {
        let text = format!(
            "s0 = {}\nsqrt_v0 = {}\nr = {}\nkappa = {}\ntheta = {}\neta = {}\nrho = {}\n\
             payoff = asian-arithmetic-call\nstrike = {strike}\nmaturity = {t}\nengine = tree-mc\n\
             n = {n}\npaths = {paths}\nseed = {seed}\ntruncation = alpha\n",
            p.s0(), p.v0().sqrt(), p.r(), p.kappa(), p.theta(), p.eta(), p.rho()
        );
        let cfg = RunConfig::parse(&text).unwrap();
        let again = RunConfig::parse(&cfg.to_config_string()).unwrap();
        prop_assert_eq!(&cfg, &again);
        prop_assert_eq!(cfg.payoff().unwrap().exercise, Exercise::European);
    }
}

#[test]
fn european_put_is_monotone_across_table_rows() {
    let t = 0.25;
    let mut by_spot = Vec::new();
    for s0 in [90.0, 95.0, 100.0, 105.0, 110.0] {
        let p = HestonParams::with_initial_vol(s0, 0.3, 0.05, 3.0, 0.04, 0.1, -0.7).unwrap();
        let g = GridSpec::new(200, t, &p, TruncationMode::TruncateProb).unwrap();
        by_spot.push(price_vanilla(&european(PayoffKind::Put, 100.0, t), &g, &p).unwrap().price);
    }
    assert!(by_spot.windows(2).all(|w| w[1] <= w[0]), "{by_spot:?}");

    let p = HestonParams::with_initial_vol(100.0, 0.3, 0.05, 3.0, 0.04, 0.1, -0.7).unwrap();
    let g = GridSpec::new(200, t, &p, TruncationMode::TruncateProb).unwrap();
    let by_strike: Vec<f64> = [90.0, 95.0, 100.0, 105.0, 110.0]
        .iter()
        .map(|&k| price_vanilla(&european(PayoffKind::Put, k, t), &g, &p).unwrap().price)
        .collect();
    assert!(by_strike.windows(2).all(|w| w[1] >= w[0]), "{by_strike:?}");
}

#[test]
fn oracle_tree_matches_library_in_alpha_mode() {
    for n in [1usize, 3, 6] {
        let tree = common::Tree::new(common::FINITE_DIFFERENCE, n, 0.25, common::Mode::Alpha);
        let params = common::FINITE_DIFFERENCE.library();
        let put = european(PayoffKind::Put, 10.0, 0.25);
        let lib = price_vanilla(&put, &tree.library_grid(), &params).unwrap().price;
        let brute = tree.enumerate(&|s| (10.0 - s).max(0.0), false);
        assert!((lib - brute).abs() < 1e-12, "n={n}: {lib} vs {brute}");
    }
}
