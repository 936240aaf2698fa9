//! Self-checks of the engines against the published tables, the semi-closed
//! formula and the structural invariants of the lattice.
//!
//! Each check reports one [`CriterionReport`]. Expensive intermediate results
//! (the European tree prices over the vanilla grid) are cached in the
//! [`Suite`] so that checks sharing them do not recompute.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use crate::backward::price_vanilla;
use crate::error::Result;
use crate::exec::Execution;
use crate::lattice::{successors, transition_probs, x_hat, y_hat, ChainState, GridSpec, TruncationMode};
use crate::model::{sigma2, HestonParams};
use crate::oracles::{euler_mc, heston_call_put, QuadratureConfig};
use crate::payoff::{Exercise, PayoffKind, PayoffSpec, PriceEstimate};
use crate::simulate::{simulate_price, simulate_price_with, SimOptions};
use crate::tables::{self, VanillaRow};

/// Problem sizes for the Monte-Carlo checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    /// Path counts and step counts of the published tables.
    Full,
    /// Reduced path counts (and lookback step count) for quick runs.
    #[default]
    Desk,
}

impl Scale {
    pub fn name(self) -> &'static str {
        match self {
            Scale::Full => "full",
            Scale::Desk => "desk",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "full" => Some(Scale::Full),
            "desk" => Some(Scale::Desk),
            _ => None,
        }
    }
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub summary: String,
    /// One line per offending row or node class.
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} | {} | {} ({:.1} s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.summary,
            self.elapsed.as_secs_f64()
        )
    }
}

pub const CRITERIA: [u8; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

type PriceGrid = Arc<Vec<(f64, f64)>>;

/// Runs the acceptance checks, caching shared work.
#[derive(Debug)]
pub struct Suite {
    scale: Scale,
    seed: u64,
    european: Mutex<HashMap<usize, PriceGrid>>,
    closed_form: OnceLock<Vec<(f64, f64)>>,
}

/// Relative deviation in percent, with the reference in the denominator.
pub fn error_pct(value: f64, reference: f64) -> f64 {
    100.0 * (value - reference) / reference
}

fn vanilla_grid(row: &VanillaRow, n: usize) -> Result<(HestonParams, GridSpec)> {
    let p = tables::vanilla_params(row.s0, row.sqrt_v0, tables::VANILLA_RHO)?;
    let g = GridSpec::new(n, row.maturity, &p, TruncationMode::default())?;
    Ok((p, g))
}

fn report(id: u8, title: &'static str, start: Instant, failures: Vec<String>, summary: String) -> CriterionReport {
    CriterionReport {
        id,
        title,
        passed: failures.is_empty(),
        summary,
        failures,
        elapsed: start.elapsed(),
    }
}

fn error_report(id: u8, title: &'static str, start: Instant, e: crate::error::Error) -> CriterionReport {
    report(id, title, start, vec![format!("engine error: {e}")], format!("engine error: {e}"))
}

impl Suite {
    pub fn new(scale: Scale, seed: u64) -> Self {
        Self {
            scale,
            seed,
            european: Mutex::new(HashMap::new()),
            closed_form: OnceLock::new(),
        }
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    fn cell_seed(&self, cell: usize) -> u64 {
        self.seed.wrapping_add(cell as u64)
    }

    /// `(put, call)` tree prices for every vanilla row at `n` steps, with the
    /// slowest single pricing time.
    fn european_prices(&self, n: usize) -> Result<(PriceGrid, Duration)> {
        if let Some(v) = self.european.lock().expect("cache lock").get(&n) {
            return Ok((v.clone(), Duration::ZERO));
        }
        let mut out = Vec::with_capacity(tables::EUROPEAN_PUTS.len());
        let mut slowest = Duration::ZERO;
        for row in &tables::EUROPEAN_PUTS {
            let (p, g) = vanilla_grid(row, n)?;
            let mut price = |kind| -> Result<f64> {
                let spec = PayoffSpec::european(kind, tables::VANILLA_STRIKE, row.maturity)?;
                let t = Instant::now();
                let v = price_vanilla(&spec, &g, &p)?.price;
                slowest = slowest.max(t.elapsed());
                Ok(v)
            };
            out.push((price(PayoffKind::Put)?, price(PayoffKind::Call)?));
        }
        let arc = Arc::new(out);
        self.european.lock().expect("cache lock").insert(n, arc.clone());
        Ok((arc, slowest))
    }

    /// `(call, put)` semi-closed prices for every vanilla row.
    fn closed_forms(&self) -> Result<&[(f64, f64)]> {
        if let Some(v) = self.closed_form.get() {
            return Ok(v);
        }
        let q = QuadratureConfig::default();
        let mut out = Vec::new();
        for row in &tables::EUROPEAN_PUTS {
            let p = tables::vanilla_params(row.s0, row.sqrt_v0, tables::VANILLA_RHO)?;
            out.push(heston_call_put(tables::VANILLA_STRIKE, row.maturity, &p, &q)?);
        }
        Ok(self.closed_form.get_or_init(|| out))
    }

    pub fn run(&self, id: u8) -> CriterionReport {
        match id {
            1 => self.european_regression(),
            2 => self.put_call_parity(),
            3 => self.american_regression(),
            4 => self.finite_difference_cross_check(),
            5 => self.moment_invariants(),
            6 => self.brute_force_equivalence(),
            7 => self.geometric_asian(),
            8 => self.lookback(),
            9 => self.arithmetic_asian(),
            10 => self.determinism(),
            _ => CriterionReport {
                id,
                title: "unknown criterion",
                passed: false,
                summary: format!("no criterion {id}"),
                failures: vec![format!("no criterion {id}")],
                elapsed: Duration::ZERO,
            },
        }
    }

    pub fn run_all(&self) -> Vec<CriterionReport> {
        CRITERIA.iter().map(|&id| self.run(id)).collect()
    }

    fn european_regression(&self) -> CriterionReport {
        const TITLE: &str = "European vanillas at n=500 within 0.6% of the semi-closed price";
        let start = Instant::now();
        let run = || -> Result<(Vec<String>, String)> {
            let cf = self.closed_forms()?;
            let (fine, slowest) = self.european_prices(500)?;
            let (coarse, _) = self.european_prices(200)?;
            let mut failures = Vec::new();
            let mut worst: f64 = 0.0;
            let (mut mae_200, mut mae_500) = (0.0, 0.0);
            for (i, row) in tables::EUROPEAN_PUTS.iter().enumerate() {
                let (call_cf, put_cf) = cf[i];
                for (label, tree, tree_200, exact) in [
                    ("put", fine[i].0, coarse[i].0, put_cf),
                    ("call", fine[i].1, coarse[i].1, call_cf),
                ] {
                    let e = error_pct(tree, exact);
                    worst = worst.max(e.abs());
                    mae_500 += e.abs();
                    mae_200 += error_pct(tree_200, exact).abs();
                    if e.abs() > 0.6 {
                        failures.push(format!(
                            "{label} S0={} vol={} T={}: tree {tree:.4} vs {exact:.4} ({e:+.3}%)",
                            row.s0, row.sqrt_v0, row.maturity
                        ));
                    }
                }
            }
            let cells = 2.0 * tables::EUROPEAN_PUTS.len() as f64;
            let (mae_200, mae_500) = (mae_200 / cells, mae_500 / cells);
            if mae_500 > mae_200 {
                failures.push(format!(
                    "mean |error| grew from {mae_200:.4}% at n=200 to {mae_500:.4}% at n=500"
                ));
            }
            if slowest.as_secs_f64() >= 5.0 {
                failures.push(format!("slowest n=500 pricing took {:.2} s", slowest.as_secs_f64()));
            }
            Ok((
                failures,
                format!(
                    "max |err| {worst:.3}%, mean |err| {mae_200:.3}% (n=200) -> {mae_500:.3}% (n=500), slowest row {:.2} s",
                    slowest.as_secs_f64()
                ),
            ))
        };
        match run() {
            Ok((f, s)) => report(1, TITLE, start, f, s),
            Err(e) => error_report(1, TITLE, start, e),
        }
    }

    fn put_call_parity(&self) -> CriterionReport {
        const TITLE: &str = "put-call parity on the tree to 1e-8 * S0 at n = 10, 50, 200, 500";
        let start = Instant::now();
        let run = || -> Result<(Vec<String>, String)> {
            let mut failures = Vec::new();
            let mut worst: f64 = 0.0;
            for n in [10, 50, 200, 500] {
                let (prices, _) = self.european_prices(n)?;
                for (row, (put, call)) in tables::EUROPEAN_PUTS.iter().zip(prices.iter()) {
                    let k = tables::VANILLA_STRIKE;
                    let gap = put + row.s0 - call - k * (-0.05 * row.maturity).exp();
                    let rel = gap.abs() / row.s0;
                    worst = worst.max(rel);
                    if rel > 1e-8 {
                        failures.push(format!("n={n} S0={} vol={} T={}: gap {gap:.3e}", row.s0, row.sqrt_v0, row.maturity));
                    }
                }
            }
            Ok((failures, format!("max |gap| / S0 = {worst:.2e}")))
        };
        match run() {
            Ok((f, s)) => report(2, TITLE, start, f, s),
            Err(e) => error_report(2, TITLE, start, e),
        }
    }

    fn american_regression(&self) -> CriterionReport {
        const TITLE: &str = "American puts at n=250 within 0.35% of control-variate prices, mean <= 0.2%";
        let start = Instant::now();
        let run = || -> Result<(Vec<String>, String)> {
            let mut failures = Vec::new();
            let (mut worst, mut total): (f64, f64) = (0.0, 0.0);
            for row in &tables::AMERICAN_PUTS {
                let p = tables::vanilla_params(row.s0, row.sqrt_v0, row.rho)?;
                let g = GridSpec::new(250, row.maturity, &p, TruncationMode::default())?;
                let spec = PayoffSpec::american(PayoffKind::Put, tables::VANILLA_STRIKE, row.maturity)?;
                let v = price_vanilla(&spec, &g, &p)?.price;
                let e = error_pct(v, row.control_variate);
                worst = worst.max(e.abs());
                total += e.abs();
                if e.abs() > 0.35 {
                    failures.push(format!(
                        "S0={} rho={} vol={} T={}: {v:.4} vs {:.4} ({e:+.3}%)",
                        row.s0, row.rho, row.sqrt_v0, row.maturity, row.control_variate
                    ));
                }
            }
            let mean = total / tables::AMERICAN_PUTS.len() as f64;
            if mean > 0.2 {
                failures.push(format!("mean |difference| {mean:.3}% exceeds 0.2%"));
            }
            Ok((failures, format!("max |diff| {worst:.3}%, mean |diff| {mean:.3}%")))
        };
        match run() {
            Ok((f, s)) => report(3, TITLE, start, f, s),
            Err(e) => error_report(3, TITLE, start, e),
        }
    }

    fn finite_difference_cross_check(&self) -> CriterionReport {
        const TITLE: &str = "American puts at n=350 within 0.01 of finite-difference references";
        let start = Instant::now();
        let run = || -> Result<(Vec<String>, String)> {
            let mut failures = Vec::new();
            let mut worst: f64 = 0.0;
            for row in &tables::FD_AMERICAN_PUTS {
                let p = tables::finite_difference_params(row.s0, row.sqrt_v0)?;
                let g = GridSpec::new(350, tables::FD_MATURITY, &p, TruncationMode::default())?;
                let spec = PayoffSpec::american(PayoffKind::Put, tables::FD_STRIKE, tables::FD_MATURITY)?;
                let v = price_vanilla(&spec, &g, &p)?.price;
                let d = (v - row.reference).abs();
                worst = worst.max(d);
                if d > 0.01 {
                    failures.push(format!("S0={} vol={}: {v:.4} vs {:.4}", row.s0, row.sqrt_v0, row.reference));
                }
            }
            Ok((failures, format!("max |diff| {worst:.4}")))
        };
        match run() {
            Ok((f, s)) => report(4, TITLE, start, f, s),
            Err(e) => error_report(4, TITLE, start, e),
        }
    }

    fn moment_invariants(&self) -> CriterionReport {
        const TITLE: &str = "martingale, second-moment and cross-moment identities on an n=100 tree";
        let start = Instant::now();
        let run = || -> Result<(Vec<String>, String)> {
            let row = &tables::EUROPEAN_PUTS[2];
            let p = tables::vanilla_params(row.s0, row.sqrt_v0, tables::VANILLA_RHO)?;
            let mut failures = Vec::new();
            let mut parts = Vec::new();
            for mode in [TruncationMode::TruncateProb, TruncationMode::TruncateAlpha] {
                let g = GridSpec::new(100, row.maturity, &p, mode)?;
                let m = sweep_moments(&g, &p)?;
                if m.martingale > 1e-12 {
                    failures.push(format!("{mode:?}: martingale residual {:.2e}", m.martingale));
                }
                if m.cross > 1e-14 {
                    failures.push(format!("{mode:?}: cross moment {:.2e} (units of dx*dy)", m.cross));
                }
                let mut part = format!(
                    "{mode:?}: martingale {:.1e}, cross {:.1e}, clamped p {} q {}",
                    m.martingale, m.cross, m.clamped, m.clamped_q
                );
                if mode == TruncationMode::TruncateAlpha {
                    for (label, dev) in [("X", m.second_x), ("Y", m.second_y)] {
                        if dev > 1e-12 {
                            failures.push(format!(
                                "second moment of d{label}_hat deviates from eta h max(A_n, sigma^2) by up to {dev:.3e} (relative)"
                            ));
                        }
                    }
                    part.push_str(&format!(
                        ", second moment rel dev X {:.2e} Y {:.2e} (after the first step X {:.2e} Y {:.2e})",
                        m.second_x, m.second_y, m.second_x_after_root, m.second_y_after_root
                    ));
                }
                parts.push(part);
            }
            Ok((failures, parts.join("; ")))
        };
        match run() {
            Ok((f, s)) => report(5, TITLE, start, f, s),
            Err(e) => error_report(5, TITLE, start, e),
        }
    }

    fn brute_force_equivalence(&self) -> CriterionReport {
        const TITLE: &str = "backward prices equal path enumeration (n<=8) and exhaustive stopping (n<=6)";
        let start = Instant::now();
        let run = || -> Result<(Vec<String>, String)> {
            let mut failures = Vec::new();
            let mut worst: f64 = 0.0;
            let cases = [
                (tables::vanilla_params(100.0, 0.2, -0.7)?, 100.0, 0.0833),
                (tables::vanilla_params(90.0, 0.4, -0.1)?, 100.0, 0.5),
                (tables::finite_difference_params(10.0, 0.5)?, 10.0, 0.25),
            ];
            for (p, k, t) in &cases {
                for n in 1..=8 {
                    let g = GridSpec::new(n, *t, p, TruncationMode::default())?;
                    let mut kinds = vec![(PayoffKind::Put, Exercise::European), (PayoffKind::Call, Exercise::European)];
                    if n <= 6 {
                        kinds.push((PayoffKind::Put, Exercise::American));
                        kinds.push((PayoffKind::Call, Exercise::American));
                    }
                    for (kind, ex) in kinds {
                        let spec = PayoffSpec::new(kind, ex, *k, *t)?;
                        let tree = price_vanilla(&spec, &g, p)?.price;
                        let brute = enumerate_paths(&spec, &g, p, ChainState::ROOT)?;
                        let d = (tree - brute).abs();
                        worst = worst.max(d);
                        if d > 1e-12 {
                            failures.push(format!(
                                "{} {} n={n} S0={}: tree {tree:.15} vs enumeration {brute:.15}",
                                ex.name(),
                                kind.name(),
                                p.s0()
                            ));
                        }
                    }
                }
            }
            let secs = start.elapsed().as_secs_f64();
            if secs >= 10.0 {
                failures.push(format!("took {secs:.1} s"));
            }
            Ok((failures, format!("max |diff| {worst:.2e}")))
        };
        match run() {
            Ok((f, s)) => report(6, TITLE, start, f, s),
            Err(e) => error_report(6, TITLE, start, e),
        }
    }

    fn geometric_asian(&self) -> CriterionReport {
        const TITLE: &str = "geometric Asian calls: 95% CI at n=300 covers the semi-closed value";
        let start = Instant::now();
        let paths = match self.scale {
            Scale::Full => 100_000,
            Scale::Desk => 10_000,
        };
        let run = || -> Result<(Vec<String>, String)> {
            let p = tables::geometric_asian_params()?;
            let mut failures = Vec::new();
            let mut total_err = 0.0;
            for (i, row) in tables::GEOMETRIC_ASIAN_CALLS.iter().enumerate() {
                let g = GridSpec::new(300, row.maturity, &p, TruncationMode::default())?;
                let spec = PayoffSpec::european(PayoffKind::AsianGeometricCall, row.strike, row.maturity)?;
                let e = simulate_price(&spec, &g, &p, paths, self.cell_seed(i))?;
                total_err += error_pct(e.price, row.semi_closed).abs();
                if !e.covers(row.semi_closed) {
                    failures.push(ci_line(&format!("T={} K={}", row.maturity, row.strike), &e, row.semi_closed));
                }
            }
            let secs = start.elapsed().as_secs_f64();
            if self.scale == Scale::Desk && secs >= 60.0 {
                failures.push(format!("desk run took {secs:.1} s"));
            }
            let n_rows = tables::GEOMETRIC_ASIAN_CALLS.len();
            Ok((
                failures.clone(),
                format!(
                    "{} paths: {}/{n_rows} intervals cover, mean |err| {:.3}%",
                    paths,
                    n_rows - failures.len(),
                    total_err / n_rows as f64
                ),
            ))
        };
        match run() {
            Ok((f, s)) => report(7, TITLE, start, f, s),
            Err(e) => error_report(7, TITLE, start, e),
        }
    }

    fn lookback(&self) -> CriterionReport {
        let start = Instant::now();
        match self.scale {
            Scale::Desk => {
                const TITLE: &str = "lookback calls: tree-MC CI overlaps Euler-MC CI (n=500, 10^4 paths)";
                let run = || -> Result<(Vec<String>, String)> {
                    let p = tables::lookback_params()?;
                    let mut failures = Vec::new();
                    let mut worst: f64 = 0.0;
                    for (i, row) in tables::LOOKBACK_CALLS.iter().enumerate() {
                        let spec = PayoffSpec::european(PayoffKind::LookbackFixedStrikeCall, row.strike, row.maturity)?;
                        let g = GridSpec::new(500, row.maturity, &p, TruncationMode::default())?;
                        let tree = simulate_price(&spec, &g, &p, 10_000, self.cell_seed(i))?;
                        let euler = euler_mc(&spec, &p, 500, 10_000, self.cell_seed(1000 + i))?;
                        worst = worst.max(error_pct(tree.price, euler.price).abs());
                        let (lo, hi) = euler.ci95.expect("sampled estimate");
                        let (tree_lo, tree_hi) = tree.ci95.expect("sampled estimate");
                        if !tree.overlaps(lo, hi) {
                            failures.push(format!(
                                "T={} K={}: tree {:.4} ({:.4}, {:.4}) vs Euler {:.4} ({lo:.4}, {hi:.4})",
                                row.maturity, row.strike, tree.price, tree_lo, tree_hi, euler.price
                            ));
                        }
                    }
                    let n_rows = tables::LOOKBACK_CALLS.len();
                    Ok((
                        failures.clone(),
                        format!("{}/{n_rows} overlap, max |diff| {worst:.3}%", n_rows - failures.len()),
                    ))
                };
                match run() {
                    Ok((f, s)) => report(8, TITLE, start, f, s),
                    Err(e) => error_report(8, TITLE, start, e),
                }
            }
            Scale::Full => {
                const TITLE: &str = "lookback calls: tree-MC (n=3000, 10^5 paths) within 1.5% of published Euler prices";
                let run = || -> Result<(Vec<String>, String)> {
                    let p = tables::lookback_params()?;
                    let mut failures = Vec::new();
                    let mut worst: f64 = 0.0;
                    for (i, row) in tables::LOOKBACK_CALLS.iter().enumerate() {
                        let spec = PayoffSpec::european(PayoffKind::LookbackFixedStrikeCall, row.strike, row.maturity)?;
                        let g = GridSpec::new(3000, row.maturity, &p, TruncationMode::default())?;
                        let tree = simulate_price(&spec, &g, &p, 100_000, self.cell_seed(i))?;
                        let e = error_pct(tree.price, row.euler);
                        worst = worst.max(e.abs());
                        if e.abs() > 1.5 {
                            failures.push(format!(
                                "T={} K={}: tree {:.4} vs {:.4} ({e:+.3}%)",
                                row.maturity, row.strike, tree.price, row.euler
                            ));
                        }
                    }
                    Ok((failures, format!("max |diff| {worst:.3}%")))
                };
                match run() {
                    Ok((f, s)) => report(8, TITLE, start, f, s),
                    Err(e) => error_report(8, TITLE, start, e),
                }
            }
        }
    }

    fn arithmetic_asian(&self) -> CriterionReport {
        const TITLE: &str = "arithmetic Asian calls: CI at n=300 reaches within 0.5% of the 10^8-path reference";
        let start = Instant::now();
        let paths = match self.scale {
            Scale::Full => 1_000_000,
            Scale::Desk => 100_000,
        };
        let run = || -> Result<(Vec<String>, String)> {
            let p = tables::arithmetic_asian_params()?;
            let t = tables::ARITHMETIC_ASIAN_MATURITY;
            let g = GridSpec::new(300, t, &p, TruncationMode::default())?;
            let mut failures = Vec::new();
            for (i, row) in tables::ARITHMETIC_ASIAN_CALLS.iter().enumerate() {
                let spec = PayoffSpec::european(PayoffKind::AsianArithmeticCall, row.strike, t)?;
                let e = simulate_price(&spec, &g, &p, paths, self.cell_seed(i))?;
                let band = (row.mc_reference * 0.995, row.mc_reference * 1.005);
                if !e.overlaps(band.0, band.1) {
                    failures.push(ci_line(&format!("K={}", row.strike), &e, row.mc_reference));
                }
            }
            let n_rows = tables::ARITHMETIC_ASIAN_CALLS.len();
            Ok((
                failures.clone(),
                format!("{paths} paths: {}/{n_rows} rows reach the 0.5% band", n_rows - failures.len()),
            ))
        };
        match run() {
            Ok((f, s)) => report(9, TITLE, start, f, s),
            Err(e) => error_report(9, TITLE, start, e),
        }
    }

    fn determinism(&self) -> CriterionReport {
        const TITLE: &str = "Monte-Carlo estimates are bit-identical across shard counts and threads";
        let start = Instant::now();
        let run = || -> Result<(Vec<String>, String)> {
            let p = tables::lookback_params()?;
            let g = GridSpec::new(200, 0.5, &p, TruncationMode::default())?;
            let mut failures = Vec::new();
            let configs = [
                SimOptions { execution: Execution::Sequential, shards: None, validate_states: false },
                SimOptions { execution: Execution::Parallel, shards: Some(3), validate_states: false },
                SimOptions { execution: Execution::Parallel, shards: Some(16), validate_states: false },
            ];
            for kind in [PayoffKind::LookbackFixedStrikeCall, PayoffKind::AsianArithmeticCall, PayoffKind::Put] {
                let spec = PayoffSpec::european(kind, 100.0, 0.5)?;
                let runs: Vec<PriceEstimate> = configs
                    .iter()
                    .map(|o| simulate_price_with(&spec, &g, &p, 20_000, self.seed, o))
                    .collect::<Result<_>>()?;
                let same = runs.iter().all(|r| bits(r) == bits(&runs[0]));
                if !same {
                    failures.push(format!("{}: estimates differ across shard configurations: {runs:?}", kind.name()));
                }
                let again = simulate_price_with(&spec, &g, &p, 20_000, self.seed, &configs[2])?;
                if bits(&again) != bits(&runs[0]) {
                    failures.push(format!("{}: repeated run differs", kind.name()));
                }
                let euler: Vec<PriceEstimate> = configs
                    .iter()
                    .map(|o| crate::oracles::euler_mc_with(&spec, &p, 100, 5_000, self.seed, o))
                    .collect::<Result<_>>()?;
                if !euler.iter().all(|r| bits(r) == bits(&euler[0])) {
                    failures.push(format!("{}: Euler estimates differ across shard configurations", kind.name()));
                }
            }
            Ok((failures, format!("3 payoffs x {} shard configurations, tree and Euler", configs.len())))
        };
        match run() {
            Ok((f, s)) => report(10, TITLE, start, f, s),
            Err(e) => error_report(10, TITLE, start, e),
        }
    }
}

fn bits(e: &PriceEstimate) -> (u64, u64) {
    (e.price.to_bits(), e.std_error.unwrap_or(f64::NAN).to_bits())
}

fn ci_line(label: &str, e: &PriceEstimate, reference: f64) -> String {
    let (lo, hi) = e.ci95.expect("sampled estimate");
    format!("{label}: {:.4} ({lo:.4}, {hi:.4}) vs {reference:.4}", e.price)
}

/// Worst residuals of the local identities over every state of a tree.
#[derive(Debug, Clone, Copy, Default)]
pub struct MomentResiduals {
    /// Max relative residual of `E[exp(-rh + X_hat')] = exp(X_hat)` at states
    /// with an unclamped log-price probability.
    pub martingale: f64,
    /// Max relative deviation of `E[(dX_hat)^2]` from `eta h max(A_n, sigma^2)`
    /// at states with an unclamped log-price probability.
    pub second_x: f64,
    /// Same for the volatility factor with `eta (1 - rho^2) h`, at states with
    /// an unclamped volatility-factor probability.
    pub second_y: f64,
    /// `second_x` and `second_y` restricted to states after the first step.
    pub second_x_after_root: f64,
    pub second_y_after_root: f64,
    /// Max absolute centred cross moment, in units of `dx * dy`.
    pub cross: f64,
    /// States whose log-price probability was clamped.
    pub clamped: usize,
    /// States whose volatility-factor probability was clamped.
    pub clamped_q: usize,
}

/// Checks the local identities at every non-terminal state of the tree.
pub fn sweep_moments(grid: &GridSpec, params: &HestonParams) -> Result<MomentResiduals> {
    let mut out = MomentResiduals::default();
    let disc = (-params.r() * grid.h()).exp();
    let eta = params.eta();
    let rho = params.rho();
    for k in 0..grid.n() {
        for state in crate::lattice::states_at(k) {
            let probs = transition_probs(&state, grid, params);
            let x0 = x_hat(&state, grid, params);
            let y0 = y_hat(&state, grid, params);
            let succ = successors(&state, grid, params)?;
            let (mut mart, mut ex, mut ey, mut exx, mut eyy, mut exy) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
            for (s, w) in &succ {
                let dx = x_hat(s, grid, params) - x0;
                let dy = y_hat(s, grid, params) - y0;
                mart += w * disc * (x0 + dx).exp();
                ex += w * dx;
                ey += w * dy;
                exx += w * dx * dx;
                eyy += w * dy * dy;
                exy += w * dx * dy;
            }
            if probs.p_clamped() {
                out.clamped += 1;
            } else {
                out.martingale = out.martingale.max((mart / x0.exp() - 1.0).abs());
            }
            out.cross = out.cross.max((exy - ex * ey).abs() / (grid.dx() * grid.dy()));
            let s2 = sigma2(state.point(grid), params).max(grid.a_n());
            let tx = eta * grid.h() * s2;
            let ty = eta * (1.0 - rho * rho) * grid.h() * s2;
            let (dev_x, dev_y) = ((exx / tx - 1.0).abs(), (eyy / ty - 1.0).abs());
            if !probs.p_clamped() {
                out.second_x = out.second_x.max(dev_x);
                if k > 0 {
                    out.second_x_after_root = out.second_x_after_root.max(dev_x);
                }
            }
            if probs.q == probs.q_raw {
                out.second_y = out.second_y.max(dev_y);
                if k > 0 {
                    out.second_y_after_root = out.second_y_after_root.max(dev_y);
                }
            } else {
                out.clamped_q += 1;
            }
        }
    }
    Ok(out)
}

/// Price by recursion over every path prefix (no recombination): European
/// payoffs are averaged over all `4^n` leaves; American payoffs take the
/// optimal stopping decision separately on every prefix.
pub fn enumerate_paths(payoff: &PayoffSpec, grid: &GridSpec, params: &HestonParams, state: ChainState) -> Result<f64> {
    let stock = x_hat(&state, grid, params).exp();
    let intrinsic = match payoff.kind {
        PayoffKind::Put => (payoff.strike - stock).max(0.0),
        PayoffKind::Call => (stock - payoff.strike).max(0.0),
        _ => {
            return Err(crate::error::Error::Unsupported(
                "path enumeration covers vanillas only".into(),
            ))
        }
    };
    if state.k == grid.n() {
        return Ok(intrinsic);
    }
    let disc = (-params.r() * grid.h()).exp();
    let mut cont = 0.0;
    for (s, w) in successors(&state, grid, params)? {
        if w > 0.0 {
            cont += w * enumerate_paths(payoff, grid, params, s)?;
        }
    }
    let cont = disc * cont;
    Ok(match payoff.exercise {
        Exercise::American => cont.max(intrinsic),
        Exercise::European => cont,
    })
}
