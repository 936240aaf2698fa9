//! Single-contract pricing through any engine.

use crate::backward::{price_lookback_backward, price_vanilla};
use crate::lattice::GridSpec;
use crate::oracles::{euler_mc, heston_closed_form, QuadratureConfig};
use crate::payoff::{PayoffKind, PriceEstimate};
use crate::simulate::simulate_price;

use super::config::{Engine, RunConfig};
use super::csv::CsvRow;
use super::CliError;

/// Prices the contract described by `cfg` with the configured engine.
pub fn price(cfg: &RunConfig) -> Result<PriceEstimate, CliError> {
    cfg.validate()?;
    let params = cfg.params()?;
    let payoff = cfg.payoff()?;
    let grid = || GridSpec::new(cfg.n, cfg.maturity, &params, cfg.truncation);
    let estimate = match cfg.engine {
        Engine::ClosedForm => PriceEstimate::exact(heston_closed_form(&payoff, &params, &QuadratureConfig::default())?),
        Engine::EulerMc => euler_mc(&payoff, &params, cfg.n, cfg.num_paths, cfg.seed)?,
        Engine::TreeMc => simulate_price(&payoff, &grid()?, &params, cfg.num_paths, cfg.seed)?,
        Engine::Backward if cfg.kind == PayoffKind::LookbackFixedStrikePut => {
            price_lookback_backward(&payoff, &grid()?, &params)?
        }
        Engine::Backward => price_vanilla(&payoff, &grid()?, &params)?,
    };
    if !estimate.price.is_finite() {
        return Err(CliError::Engine(crate::Error::Numerical(format!(
            "non-finite price {}",
            estimate.price
        ))));
    }
    Ok(estimate)
}

/// CSV row for a single `price` run.
pub fn csv_row(cfg: &RunConfig, estimate: PriceEstimate) -> CsvRow {
    CsvRow {
        table_id: None,
        s0: cfg.s0,
        sqrt_v0: cfg.sqrt_v0,
        maturity: cfg.maturity,
        strike: cfg.strike,
        rho: cfg.rho,
        engine: cfg.engine.name(),
        n: (cfg.engine != Engine::ClosedForm).then_some(cfg.n),
        estimate,
        reference: None,
    }
}

/// Human-readable one-line result.
pub fn render(cfg: &RunConfig, e: &PriceEstimate) -> String {
    let mut line = format!(
        "{} {} {} S0={} K={} T={}",
        cfg.engine.name(),
        cfg.exercise.name(),
        cfg.kind.name(),
        cfg.s0,
        cfg.strike,
        cfg.maturity
    );
    if cfg.engine != Engine::ClosedForm {
        line.push_str(&format!(" n={}", cfg.n));
    }
    line.push_str(&format!(": {:.4}", e.price));
    if let (Some(se), Some((lo, hi)), Some(paths)) = (e.std_error, e.ci95, e.num_paths) {
        line.push_str(&format!(" (std err {se:.4}, 95% CI [{lo:.4}, {hi:.4}], {paths} paths, seed {})", cfg.seed));
    }
    line
}
