//! Backward dynamic programming on the four-tuple chain.
//!
//! Layer `k` stores one value per chain state `(l, m, xi_x, xi_y)`, laid out
//! as `((l * (k + 1) + m) * 4 + c)` with `c = 2 * [xi_x = +1] + [xi_y = +1]`.
//! The four states sharing a node have the same successors and differ only in
//! their transition probabilities, so each node reads four values of the next
//! layer once. Nodes of one layer are independent and may be swept in parallel.
//!
//! Discounting is applied at every step, so each layer holds values in
//! currency at its own date and American early exercise compares like with
//! like. The stock at a state is `exp(X_hat)`.

use crate::error::{Error, Result};
use crate::exec::{for_each_chunk, Execution};
use crate::lattice::{GridSpec, NodeCoeffs, StepKernel};
use crate::model::HestonParams;
use crate::payoff::{Exercise, PayoffKind, PayoffSpec, PriceEstimate};

/// Knobs for the backward engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackwardOptions {
    pub execution: Execution,
    /// Upper bound on the number of values held in one layer.
    pub max_layer_states: usize,
    /// Largest step count accepted by the lookback recursion, whose cost
    /// grows like `n^4`.
    pub lookback_max_n: usize,
}

impl Default for BackwardOptions {
    fn default() -> Self {
        Self {
            execution: Execution::default(),
            max_layer_states: 1 << 25,
            lookback_max_n: 200,
        }
    }
}

fn check_maturity(payoff: &PayoffSpec, grid: &GridSpec) -> Result<()> {
    let (a, b) = (payoff.maturity, grid.maturity());
    if (a - b).abs() > 1e-12 * a.max(b) {
        return Err(Error::param(
            "maturity",
            format!("payoff maturity {a} differs from grid maturity {b}"),
        ));
    }
    Ok(())
}

/// Node coefficients for every node of layer `k`, row-major in `(l, m)`.
fn layer_nodes(kernel: &StepKernel, k: usize) -> Vec<NodeCoeffs> {
    let mut out = Vec::with_capacity((k + 1) * (k + 1));
    for l in 0..=k {
        for m in 0..=k {
            out.push(kernel.node(k, l, m));
        }
    }
    out
}

#[inline]
fn reachable(level: usize, up: bool, k: usize) -> bool {
    if up {
        level >= 1
    } else {
        level < k
    }
}

/// Prices a European or American put/call by backward induction.
pub fn price_vanilla(payoff: &PayoffSpec, grid: &GridSpec, params: &HestonParams) -> Result<PriceEstimate> {
    price_vanilla_with(payoff, grid, params, &BackwardOptions::default())
}

pub fn price_vanilla_with(
    payoff: &PayoffSpec,
    grid: &GridSpec,
    params: &HestonParams,
    opts: &BackwardOptions,
) -> Result<PriceEstimate> {
    if !payoff.kind.is_vanilla() {
        return Err(Error::Unsupported(format!(
            "backward vanilla engine prices puts and calls, not {}",
            payoff.kind
        )));
    }
    check_maturity(payoff, grid)?;
    let n = grid.n();
    let width = 4 * (n + 1) * (n + 1);
    if width > opts.max_layer_states {
        return Err(Error::Resource(format!(
            "n = {n} needs {width} values per layer, budget is {}",
            opts.max_layer_states
        )));
    }

    let kernel = StepKernel::new(grid, params);
    let american = payoff.exercise == Exercise::American;
    let exec = opts.execution;

    // Terminal layer.
    let mut prev_nodes = layer_nodes(&kernel, n - 1);
    let mut next = vec![0.0; width];
    {
        let prev_nodes = &prev_nodes;
        let kernel = &kernel;
        for_each_chunk(exec, &mut next, 4 * (n + 1), |l, row| {
            for m in 0..=n {
                let s_base = kernel.grid.x_at(n, l).exp();
                for c in 0..4 {
                    let (ux, uy) = (c >> 1 == 1, c & 1 == 1);
                    if !reachable(l, ux, n) || !reachable(m, uy, n) {
                        continue;
                    }
                    let pn = &prev_nodes[(l - ux as usize) * n + (m - uy as usize)];
                    let s = s_base * if ux { pn.tilt } else { pn.inv_tilt };
                    row[m * 4 + c] = payoff.vanilla_intrinsic(s);
                }
            }
        });
    }

    let mut cur = vec![0.0; width];
    for t in (1..n).rev() {
        // Sweep layer t from layer t + 1.
        let cur_nodes = std::mem::take(&mut prev_nodes);
        prev_nodes = layer_nodes(&kernel, t - 1);
        let k = t + 1;
        let layer = &mut cur[..4 * (t + 1) * (t + 1)];
        {
            let next = &next;
            let cur_nodes = &cur_nodes;
            let prev_nodes = &prev_nodes;
            let kernel = &kernel;
            for_each_chunk(exec, layer, 4 * (t + 1), |l, row| {
                let s_base = if american { kernel.grid.x_at(t, l).exp() } else { 0.0 };
                for m in 0..=t {
                    let node = &cur_nodes[l * (t + 1) + m];
                    let v00 = next[(l * (k + 1) + m) * 4];
                    let v01 = next[(l * (k + 1) + m + 1) * 4 + 1];
                    let v10 = next[((l + 1) * (k + 1) + m) * 4 + 2];
                    let v11 = next[((l + 1) * (k + 1) + m + 1) * 4 + 3];
                    for c in 0..4 {
                        let (ux, uy) = (c >> 1 == 1, c & 1 == 1);
                        if !reachable(l, ux, t) || !reachable(m, uy, t) {
                            row[m * 4 + c] = 0.0;
                            continue;
                        }
                        let pn = &prev_nodes[(l - ux as usize) * t + (m - uy as usize)];
                        let xi_x = if ux { 1 } else { -1 };
                        let xi_y = if uy { 1 } else { -1 };
                        let pr = kernel.probs(node, pn.alpha, pn.tilt, pn.inv_tilt, xi_x, xi_y);
                        let (p, q) = (pr.p, pr.q);
                        let cont = kernel.discount
                            * (p * (q * v11 + (1.0 - q) * v10) + (1.0 - p) * (q * v01 + (1.0 - q) * v00));
                        row[m * 4 + c] = if american {
                            let s = s_base * if ux { pn.tilt } else { pn.inv_tilt };
                            cont.max(payoff.vanilla_intrinsic(s))
                        } else {
                            cont
                        };
                    }
                }
            });
        }
        std::mem::swap(&mut cur, &mut next);
    }

    // Root: single state with no previous increment.
    let root = kernel.node(0, 0, 0);
    let pr = kernel.probs(&root, 0.0, 1.0, 1.0, 0, 0);
    let (p, q) = (pr.p, pr.q);
    // Layer 1 has nodes (l, m) in {0, 1}^2, each reached by exactly one state.
    let (v00, v01, v10, v11) = (next[0], next[4 + 1], next[2 * 4 + 2], next[3 * 4 + 3]);
    let mut value =
        kernel.discount * (p * (q * v11 + (1.0 - q) * v10) + (1.0 - p) * (q * v01 + (1.0 - q) * v00));
    if american {
        value = value.max(payoff.vanilla_intrinsic(params.s0()));
    }
    Ok(PriceEstimate::exact(value))
}

/// Prices a fixed-strike lookback put `(K - min S)^+` on the uncorrected
/// log-price walk, tracking the running minimum `z` of the walk in grid units.
pub fn price_lookback_backward(
    payoff: &PayoffSpec,
    grid: &GridSpec,
    params: &HestonParams,
) -> Result<PriceEstimate> {
    price_lookback_backward_with(payoff, grid, params, &BackwardOptions::default())
}

pub fn price_lookback_backward_with(
    payoff: &PayoffSpec,
    grid: &GridSpec,
    params: &HestonParams,
    opts: &BackwardOptions,
) -> Result<PriceEstimate> {
    if payoff.kind != PayoffKind::LookbackFixedStrikePut {
        return Err(Error::Unsupported(format!(
            "backward lookback engine prices fixed-strike lookback puts only, not {}; \
             use the tree Monte-Carlo engine",
            payoff.kind
        )));
    }
    check_maturity(payoff, grid)?;
    let n = grid.n();
    if n > opts.lookback_max_n {
        return Err(Error::Resource(format!(
            "lookback recursion capped at n = {}, got n = {n}; use the tree Monte-Carlo engine",
            opts.lookback_max_n
        )));
    }
    let width = 4 * (n + 1) * (n + 1) * (n + 1);
    if width > opts.max_layer_states {
        return Err(Error::Resource(format!(
            "n = {n} needs {width} values per lookback layer, budget is {}",
            opts.max_layer_states
        )));
    }

    let kernel = StepKernel::new(grid, params);
    let dx = grid.dx();
    let s0 = params.s0();
    let strike = payoff.strike;
    let american = payoff.exercise == Exercise::American;
    let exec = opts.execution;
    // Payoff on the running minimum z (z <= 0 in grid units).
    let intrinsic = move |zi: usize| (strike - s0 * (-(zi as f64) * dx).exp()).max(0.0);

    // Layer k index: ((l * (k+1) + m) * (k+1) + zi) * 4 + c, with zi = -z.
    let mut next = vec![0.0; width];
    for_each_chunk(exec, &mut next[..], 4 * (n + 1) * (n + 1), |_l, row| {
        for m in 0..=n {
            for zi in 0..=n {
                let v = intrinsic(zi);
                for c in 0..4 {
                    row[(m * (n + 1) + zi) * 4 + c] = v;
                }
            }
        }
    });

    let mut cur = vec![0.0; width];
    let mut prev_nodes = if n >= 2 { layer_nodes(&kernel, n - 2) } else { Vec::new() };
    let mut cur_nodes = layer_nodes(&kernel, n - 1);
    for t in (0..n).rev() {
        let k = t + 1;
        let layer = &mut cur[..4 * (t + 1) * (t + 1) * (t + 1)];
        {
            let next = &next;
            let cur_nodes = &cur_nodes;
            let prev_nodes = &prev_nodes;
            let kernel = &kernel;
            let at = move |l: usize, m: usize, zi: usize, c: usize| ((l * (k + 1) + m) * (k + 1) + zi) * 4 + c;
            for_each_chunk(exec, layer, 4 * (t + 1) * (t + 1), |l, row| {
                let walk = 2 * l as i64 - t as i64;
                for m in 0..=t {
                    let node = &cur_nodes[l * (t + 1) + m];
                    for zi in 0..=t {
                        let z = -(zi as i64);
                        let base = (m * (t + 1) + zi) * 4;
                        if z > walk.min(0) {
                            row[base..base + 4].fill(0.0);
                            continue;
                        }
                        // A down-move from the running minimum pushes it one level lower.
                        let zi_down = if z == walk { zi + 1 } else { zi };
                        let v00 = next[at(l, m, zi_down, 0)];
                        let v01 = next[at(l, m + 1, zi_down, 1)];
                        let v10 = next[at(l + 1, m, zi, 2)];
                        let v11 = next[at(l + 1, m + 1, zi, 3)];
                        for c in 0..4 {
                            let (ux, uy) = (c >> 1 == 1, c & 1 == 1);
                            let pr = if t == 0 {
                                if c != 0 {
                                    row[base + c] = 0.0;
                                    continue;
                                }
                                kernel.probs(node, 0.0, 1.0, 1.0, 0, 0)
                            } else {
                                if !reachable(l, ux, t) || !reachable(m, uy, t) {
                                    row[base + c] = 0.0;
                                    continue;
                                }
                                let pn = &prev_nodes[(l - ux as usize) * t + (m - uy as usize)];
                                let xi_x = if ux { 1 } else { -1 };
                                let xi_y = if uy { 1 } else { -1 };
                                kernel.probs(node, pn.alpha, pn.tilt, pn.inv_tilt, xi_x, xi_y)
                            };
                            let (p, q) = (pr.p, pr.q);
                            let cont = kernel.discount
                                * (p * (q * v11 + (1.0 - q) * v10) + (1.0 - p) * (q * v01 + (1.0 - q) * v00));
                            row[base + c] = if american { cont.max(intrinsic(zi)) } else { cont };
                        }
                    }
                }
            });
        }
        std::mem::swap(&mut cur, &mut next);
        if t >= 1 {
            cur_nodes = std::mem::take(&mut prev_nodes);
            if t >= 2 {
                prev_nodes = layer_nodes(&kernel, t - 2);
            }
        }
    }
    Ok(PriceEstimate::exact(next[0]))
}
