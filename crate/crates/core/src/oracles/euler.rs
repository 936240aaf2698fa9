//! Euler Monte Carlo for the Heston SDE.
//!
//! The log-price is stepped with `(r - v+/2) h + sqrt(v+ h) Z1` and the
//! variance with `kappa (theta - v+) h + eta sqrt(v+ h) Z2`, where
//! `v+ = max(v, 0)` (full truncation) and `Z2 = rho Z1 + sqrt(1 - rho^2) Z3`.
//! Path functionals follow the tree simulator: extremes and averages use the
//! `steps + 1` sampled dates including `t = 0`.

use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::model::HestonParams;
use crate::payoff::{PayoffSpec, PriceEstimate};
use crate::simulate::{check_sim_inputs, functional_payoff, rng_for, run_blocks, SimOptions};

pub fn euler_mc(payoff: &PayoffSpec, params: &HestonParams, steps: usize, num_paths: u64, seed: u64) -> Result<PriceEstimate> {
    euler_mc_with(payoff, params, steps, num_paths, seed, &SimOptions::default())
}

pub fn euler_mc_with(
    payoff: &PayoffSpec,
    params: &HestonParams,
    steps: usize,
    num_paths: u64,
    seed: u64,
    opts: &SimOptions,
) -> Result<PriceEstimate> {
    if steps == 0 {
        return Err(Error::param("steps", "need at least one time step"));
    }
    check_sim_inputs(payoff, payoff.maturity, num_paths)?;
    let t = payoff.maturity;
    let h = t / steps as f64;
    let sqrt_h = h.sqrt();
    let (r, kappa, theta, eta, rho) = (params.r(), params.kappa(), params.theta(), params.eta(), params.rho());
    let rho_bar = (1.0 - rho * rho).sqrt();
    let x0 = params.s0().ln();
    let v0 = params.v0();
    let averages = payoff.kind.is_asian();

    let moments = run_blocks(opts.execution, opts.shards, num_paths, |j| {
        let mut rng = rng_for(seed, j);
        let (mut x, mut v) = (x0, v0);
        let (mut lo, mut hi) = (x0, x0);
        let (mut sum_log, mut sum_s) = (x0, if averages { x0.exp() } else { 0.0 });
        for _ in 0..steps {
            let z1: f64 = StandardNormal.sample(&mut rng);
            let z3: f64 = StandardNormal.sample(&mut rng);
            let vp = v.max(0.0);
            let sd = (vp).sqrt() * sqrt_h;
            x += (r - 0.5 * vp) * h + sd * z1;
            v += kappa * (theta - vp) * h + eta * sd * (rho * z1 + rho_bar * z3);
            lo = lo.min(x);
            hi = hi.max(x);
            if averages {
                sum_log += x;
                sum_s += x.exp();
            }
        }
        let count = (steps + 1) as f64;
        functional_payoff(payoff, x, lo, hi, sum_log / count, sum_s / count)
    });
    Ok(moments.estimate((-r * t).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Execution;
    use crate::oracles::{heston_closed_form, QuadratureConfig};
    use crate::payoff::PayoffKind;

    fn vanilla_model(s0: f64) -> HestonParams {
        HestonParams::with_initial_vol(s0, 0.2, 0.05, 3.0, 0.04, 0.1, -0.7).unwrap()
    }

    #[test]
    fn european_put_matches_closed_form() {
        let p = vanilla_model(100.0);
        let put = PayoffSpec::european(PayoffKind::Put, 100.0, 0.25).unwrap();
        let e = euler_mc(&put, &p, 100, 100_000, 7).unwrap();
        let cf = heston_closed_form(&put, &p, &QuadratureConfig::default()).unwrap();
        assert!((e.price - cf).abs() <= 3.0 * e.std_error.unwrap(), "{e:?} vs {cf}");
    }

    #[test]
    fn discounted_stock_is_a_martingale() {
        let p = HestonParams::new(100.0, 0.09, 0.05, 1.15, 0.348, 0.39, -0.64).unwrap();
        let k = 1e-9;
        let call = PayoffSpec::european(PayoffKind::Call, k, 1.0).unwrap();
        let e = euler_mc(&call, &p, 50, 50_000, 3).unwrap();
        let target = 100.0 - k * (-0.05f64).exp();
        assert!((e.price - target).abs() <= 3.0 * e.std_error.unwrap(), "{e:?}");
    }

    #[test]
    fn constant_volatility_limit() {
        let p = HestonParams::new(100.0, 0.04, 0.05, 2.0, 0.04, 1e-8, 0.0).unwrap();
        let call = PayoffSpec::european(PayoffKind::Call, 105.0, 0.5).unwrap();
        let e = euler_mc(&call, &p, 20, 100_000, 1).unwrap();
        // Black–Scholes with vol 0.2, T = 0.5, K = 105, r = 0.05.
        let bs = 4.581_680_2;
        assert!((e.price - bs).abs() <= 3.0 * e.std_error.unwrap(), "{e:?} vs {bs}");
    }

    #[test]
    fn sharding_does_not_change_the_estimate() {
        let p = vanilla_model(100.0);
        let lb = PayoffSpec::european(PayoffKind::LookbackFixedStrikeCall, 100.0, 0.2).unwrap();
        let base = euler_mc(&lb, &p, 50, 3000, 4).unwrap();
        for shards in [Some(2), Some(5)] {
            let opts = SimOptions { execution: Execution::Sequential, shards, validate_states: false };
            let other = euler_mc_with(&lb, &p, 50, 3000, 4, &opts).unwrap();
            assert_eq!(base, other);
        }
    }

    #[test]
    fn rejects_bad_requests() {
        let p = vanilla_model(100.0);
        let am = PayoffSpec::american(PayoffKind::Put, 100.0, 0.2).unwrap();
        assert!(euler_mc(&am, &p, 10, 1000, 0).is_err());
        let eu = PayoffSpec::european(PayoffKind::Put, 100.0, 0.2).unwrap();
        assert!(euler_mc(&eu, &p, 0, 1000, 0).is_err());
    }
}
