//! Monte Carlo sampled on the chain itself.
//!
//! Each path starts at the root and draws `xi^X`, `xi^Y` from the lattice
//! transition probabilities. Path `j` uses its own ChaCha stream `(seed, j)`,
//! so it is a pure function of the seed and its index. Paths are grouped in
//! fixed blocks of [`BLOCK_PATHS`]; block statistics are merged in block order,
//! which makes the estimate independent of sharding and thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::backward::price_vanilla_with;
use crate::backward::BackwardOptions;
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::lattice::{ChainState, GridSpec, StepKernel};
use crate::model::HestonParams;
use crate::payoff::{Exercise, PayoffKind, PayoffSpec, PriceEstimate};

/// Paths per statistics block.
pub const BLOCK_PATHS: u64 = 1024;

/// Smallest accepted path count.
pub const MIN_PATHS: u64 = 100;

/// Path functionals tracked during a simulation.
///
/// The running extremes are in grid units of the uncorrected log-price walk;
/// the sums include the `t = 0` sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathAccumulator {
    pub walk: i64,
    pub running_min_x: i64,
    pub running_max_x: i64,
    pub sum_log_s: f64,
    pub sum_s: f64,
    pub count: u64,
}

impl PathAccumulator {
    pub fn new(log_s0: f64) -> Self {
        Self {
            walk: 0,
            running_min_x: 0,
            running_max_x: 0,
            sum_log_s: log_s0,
            sum_s: log_s0.exp(),
            count: 1,
        }
    }

    /// Records one step: the increment of the log-price walk and the
    /// (corrected) log-price after it. `with_averages` skips the exponential
    /// when no average is needed.
    #[inline]
    pub fn push(&mut self, xi_x: i8, log_s: f64, with_averages: bool) {
        self.walk += i64::from(xi_x);
        self.running_min_x = self.running_min_x.min(self.walk);
        self.running_max_x = self.running_max_x.max(self.walk);
        if with_averages {
            self.sum_log_s += log_s;
            self.sum_s += log_s.exp();
        }
        self.count += 1;
    }
}

/// Mean and centred sum of squares of a group of samples.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Moments {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let d = other.mean - self.mean;
        self.mean += d * other.count as f64 / n;
        self.m2 += other.m2 + d * d * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn estimate(&self, scale: f64) -> PriceEstimate {
        let se = (self.variance() / self.count as f64).sqrt() * scale;
        PriceEstimate::sampled(self.mean * scale, se, self.count)
    }
}

/// Runs `num_paths` independent samples in fixed blocks and merges them in order.
pub(crate) fn run_blocks<F>(exec: Execution, shards: Option<usize>, num_paths: u64, sample: F) -> Moments
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    let blocks = num_paths.div_ceil(BLOCK_PATHS) as usize;
    let block = |b: usize| {
        let start = b as u64 * BLOCK_PATHS;
        let end = (start + BLOCK_PATHS).min(num_paths);
        let mut m = Moments::default();
        for j in start..end {
            m.push(sample(j));
        }
        m
    };
    let stats: Vec<Moments> = match shards {
        Some(s) if s > 1 => {
            let per = blocks.div_ceil(s);
            map_indexed(exec, s, |i| {
                (i * per..((i + 1) * per).min(blocks)).map(block).collect::<Vec<_>>()
            })
            .into_iter()
            .flatten()
            .collect()
        }
        _ => map_indexed(exec, blocks, block),
    };
    let mut total = Moments::default();
    for m in &stats {
        total.merge(m);
    }
    total
}

/// Options for the simulation engines.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SimOptions {
    pub execution: Execution,
    /// Split the blocks into this many contiguous shards (one task each).
    pub shards: Option<usize>,
    /// Check every visited state against the chain invariants.
    pub validate_states: bool,
}

pub(crate) fn rng_for(seed: u64, path: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    rng
}

pub(crate) fn check_sim_inputs(payoff: &PayoffSpec, grid_maturity: f64, num_paths: u64) -> Result<()> {
    if payoff.exercise == Exercise::American {
        return Err(Error::Unsupported(
            "simulation prices European-style payoffs only".into(),
        ));
    }
    if num_paths < MIN_PATHS {
        return Err(Error::param(
            "num_paths",
            format!("need at least {MIN_PATHS} paths, got {num_paths}"),
        ));
    }
    let t = payoff.maturity;
    if (t - grid_maturity).abs() > 1e-12 * t.max(grid_maturity) {
        return Err(Error::param(
            "maturity",
            format!("payoff maturity {t} differs from grid maturity {grid_maturity}"),
        ));
    }
    Ok(())
}

/// Terminal payoff of a European-style contract from path functionals given
/// in log-price terms: terminal log-price, running extremes, and the time
/// averages of the log-price and of the price.
#[inline]
pub(crate) fn functional_payoff(
    payoff: &PayoffSpec,
    log_s_t: f64,
    log_min: f64,
    log_max: f64,
    mean_log_s: f64,
    mean_s: f64,
) -> f64 {
    let k = payoff.strike;
    match payoff.kind {
        PayoffKind::Put | PayoffKind::Call => payoff.vanilla_intrinsic(log_s_t.exp()),
        PayoffKind::LookbackFixedStrikeCall => (log_max.exp() - k).max(0.0),
        PayoffKind::LookbackFixedStrikePut => (k - log_min.exp()).max(0.0),
        PayoffKind::AsianGeometricCall => (mean_log_s.exp() - k).max(0.0),
        PayoffKind::AsianArithmeticCall => (mean_s - k).max(0.0),
    }
}

/// Payoff of a tree path. Extremes come from the uncorrected walk, averages
/// from the corrected log-price.
#[inline]
fn path_payoff(payoff: &PayoffSpec, acc: &PathAccumulator, log_s_t: f64, log_s0: f64, grid_unit: f64) -> f64 {
    let count = acc.count as f64;
    functional_payoff(
        payoff,
        log_s_t,
        log_s0 + grid_unit * acc.running_min_x as f64,
        log_s0 + grid_unit * acc.running_max_x as f64,
        acc.sum_log_s / count,
        acc.sum_s / count,
    )
}

/// Samples one path of the chain and returns the undiscounted payoff.
fn sample_path(
    kernel: &StepKernel,
    payoff: &PayoffSpec,
    rng: &mut ChaCha8Rng,
    validate: bool,
) -> Result<f64> {
    let grid = &kernel.grid;
    let n = grid.n();
    let dx = grid.dx();
    let averages = payoff.kind.is_asian();
    let mut state = ChainState::ROOT;
    let (mut prev_alpha, mut prev_tilt, mut prev_inv_tilt) = (0.0, 1.0, 1.0);
    let mut acc = PathAccumulator::new(grid.x0());
    let mut log_s = grid.x0();
    for _ in 0..n {
        let node = kernel.node(state.k, state.l, state.m);
        let pr = kernel.probs(&node, prev_alpha, prev_tilt, prev_inv_tilt, state.xi_x, state.xi_y);
        let up_x = rng.random::<f64>() < pr.p;
        let up_y = rng.random::<f64>() < pr.q;
        state.k += 1;
        state.l += usize::from(up_x);
        state.m += usize::from(up_y);
        state.xi_x = if up_x { 1 } else { -1 };
        state.xi_y = if up_y { 1 } else { -1 };
        if validate && !state.is_valid() {
            return Err(Error::Numerical(format!("simulation left the chain: {state:?}")));
        }
        (prev_alpha, prev_tilt, prev_inv_tilt) = (node.alpha, node.tilt, node.inv_tilt);
        log_s = grid.x_at(state.k, state.l) + dx * node.alpha * f64::from(state.xi_x);
        acc.push(state.xi_x, log_s, averages);
    }
    if validate {
        let ok = acc.count == n as u64 + 1
            && acc.running_min_x <= 0
            && acc.running_max_x >= 0
            && acc.walk == 2 * state.l as i64 - n as i64;
        if !ok {
            return Err(Error::Numerical(format!("inconsistent path accumulator: {acc:?}")));
        }
    }
    Ok(path_payoff(payoff, &acc, log_s, grid.x0(), dx))
}

/// Monte-Carlo price of a European-style payoff on the tree.
pub fn simulate_price(
    payoff: &PayoffSpec,
    grid: &GridSpec,
    params: &HestonParams,
    num_paths: u64,
    seed: u64,
) -> Result<PriceEstimate> {
    simulate_price_with(payoff, grid, params, num_paths, seed, &SimOptions::default())
}

pub fn simulate_price_with(
    payoff: &PayoffSpec,
    grid: &GridSpec,
    params: &HestonParams,
    num_paths: u64,
    seed: u64,
    opts: &SimOptions,
) -> Result<PriceEstimate> {
    check_sim_inputs(payoff, grid.maturity(), num_paths)?;
    let kernel = StepKernel::new(grid, params);
    let validate = opts.validate_states;
    let failure = std::sync::OnceLock::new();
    let moments = run_blocks(opts.execution, opts.shards, num_paths, |j| {
        let mut rng = rng_for(seed, j);
        match sample_path(&kernel, payoff, &mut rng, validate) {
            Ok(v) => v,
            Err(e) => {
                let _ = failure.set(e);
                f64::NAN
            }
        }
    });
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(moments.estimate((-params.r() * grid.maturity()).exp()))
}

/// Backward and tree-MC prices of the same European vanilla.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheck {
    pub backward: f64,
    pub monte_carlo: PriceEstimate,
    /// `|backward - mc| <= 3 * std_error`.
    pub agree: bool,
}

pub fn check_vs_backward(
    payoff: &PayoffSpec,
    grid: &GridSpec,
    params: &HestonParams,
    num_paths: u64,
    seed: u64,
) -> Result<CrossCheck> {
    if !payoff.kind.is_vanilla() || payoff.exercise != Exercise::European {
        return Err(Error::Unsupported(
            "cross-check needs a European put or call".into(),
        ));
    }
    let backward = price_vanilla_with(payoff, grid, params, &BackwardOptions::default())?.price;
    let mc = simulate_price(payoff, grid, params, num_paths, seed)?;
    let se = mc.std_error.unwrap_or(0.0);
    Ok(CrossCheck {
        backward,
        monte_carlo: mc,
        agree: (backward - mc.price).abs() <= 3.0 * se,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::TruncationMode;

    fn table9() -> HestonParams {
        HestonParams::new(100.0, 0.16, 0.05, 3.0, 0.04, 0.1, -0.7).unwrap()
    }

    #[test]
    fn moments_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 7919) % 113) as f64 * 0.37).collect();
        let mut all = Moments::default();
        xs.iter().for_each(|&x| all.push(x));
        let mut a = Moments::default();
        let mut b = Moments::default();
        xs[..333].iter().for_each(|&x| a.push(x));
        xs[333..].iter().for_each(|&x| b.push(x));
        a.merge(&b);
        assert_eq!(a.count, all.count);
        assert!((a.mean - all.mean).abs() < 1e-12);
        assert!((a.m2 - all.m2).abs() < 1e-8 * all.m2);
    }

    #[test]
    fn rejects_bad_requests() {
        let p = table9();
        let g = GridSpec::new(50, 0.2, &p, TruncationMode::TruncateProb).unwrap();
        let am = PayoffSpec::american(PayoffKind::Put, 100.0, 0.2).unwrap();
        assert!(matches!(simulate_price(&am, &g, &p, 1000, 0), Err(Error::Unsupported(_))));
        let eu = PayoffSpec::european(PayoffKind::LookbackFixedStrikeCall, 100.0, 0.2).unwrap();
        assert!(matches!(simulate_price(&eu, &g, &p, 99, 0), Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn deterministic_and_shard_independent() {
        let p = table9();
        let g = GridSpec::new(40, 0.2, &p, TruncationMode::TruncateProb).unwrap();
        let payoff = PayoffSpec::european(PayoffKind::AsianArithmeticCall, 100.0, 0.2).unwrap();
        let base = simulate_price(&payoff, &g, &p, 5000, 11).unwrap();
        for (execution, shards) in [
            (Execution::Sequential, None),
            (Execution::Parallel, Some(3)),
            (Execution::Sequential, Some(7)),
        ] {
            let opts = SimOptions { execution, shards, validate_states: false };
            let other = simulate_price_with(&payoff, &g, &p, 5000, 11, &opts).unwrap();
            assert_eq!(base.price.to_bits(), other.price.to_bits());
            assert_eq!(base.std_error.unwrap().to_bits(), other.std_error.unwrap().to_bits());
        }
        let different = simulate_price(&payoff, &g, &p, 5000, 12).unwrap();
        assert_ne!(base.price, different.price);
    }

    #[test]
    fn visited_states_are_legal() {
        let p = table9();
        let g = GridSpec::new(120, 0.5, &p, TruncationMode::TruncateProb).unwrap();
        let payoff = PayoffSpec::european(PayoffKind::LookbackFixedStrikePut, 100.0, 0.5).unwrap();
        let opts = SimOptions { validate_states: true, ..SimOptions::default() };
        assert!(simulate_price_with(&payoff, &g, &p, 2000, 3, &opts).is_ok());
    }

    #[test]
    fn geometric_never_exceeds_arithmetic() {
        let p = table9();
        let g = GridSpec::new(60, 0.5, &p, TruncationMode::TruncateProb).unwrap();
        let geo = PayoffSpec::european(PayoffKind::AsianGeometricCall, 95.0, 0.5).unwrap();
        let ari = PayoffSpec::european(PayoffKind::AsianArithmeticCall, 95.0, 0.5).unwrap();
        let kernel = StepKernel::new(&g, &p);
        for j in 0..500 {
            let a = sample_path(&kernel, &geo, &mut rng_for(5, j), false).unwrap();
            let b = sample_path(&kernel, &ari, &mut rng_for(5, j), false).unwrap();
            assert!(a <= b + 1e-12, "path {j}: {a} > {b}");
        }
        let pg = simulate_price(&geo, &g, &p, 4000, 5).unwrap().price;
        let pa = simulate_price(&ari, &g, &p, 4000, 5).unwrap().price;
        assert!(pg <= pa);
    }

    #[test]
    fn discounted_stock_is_a_martingale() {
        // A call struck near zero pays S_T - K.
        let p = table9();
        let g = GridSpec::new(100, 1.0, &p, TruncationMode::TruncateProb).unwrap();
        let k = 1e-9;
        let payoff = PayoffSpec::european(PayoffKind::Call, k, 1.0).unwrap();
        let e = simulate_price(&payoff, &g, &p, 20_000, 1).unwrap();
        let target = 100.0 - k * (-0.05f64).exp();
        assert!((e.price - target).abs() <= 3.0 * e.std_error.unwrap(), "{e:?}");
    }

    #[test]
    fn zero_strike_lookback_call_exceeds_forward() {
        let p = table9();
        let g = GridSpec::new(100, 0.2, &p, TruncationMode::TruncateProb).unwrap();
        let lb = PayoffSpec::european(PayoffKind::LookbackFixedStrikeCall, 1e-12, 0.2).unwrap();
        let e = simulate_price(&lb, &g, &p, 5000, 2).unwrap();
        // max S >= S_T, so the price dominates e^{-rT} E[S_T] = S0 up to MC error.
        assert!(e.price >= 100.0 - 3.0 * e.std_error.unwrap());
        assert!(e.price > 100.0);
    }

    #[test]
    fn cross_check_agrees_and_is_repeatable() {
        let p = HestonParams::with_initial_vol(100.0, 0.2, 0.05, 3.0, 0.04, 0.1, -0.7).unwrap();
        let g = GridSpec::new(100, 0.0833, &p, TruncationMode::TruncateProb).unwrap();
        let put = PayoffSpec::european(PayoffKind::Put, 100.0, 0.0833).unwrap();
        let a = check_vs_backward(&put, &g, &p, 20_000, 9).unwrap();
        let b = check_vs_backward(&put, &g, &p, 20_000, 9).unwrap();
        assert!(a.agree, "{a:?}");
        assert_eq!(a, b);
    }
}
