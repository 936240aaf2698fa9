//! The recombining two-factor lattice and its four-tuple Markov chain.
//!
//! A chain state is `(k, l, m, xi_x, xi_y)`: time step, number of up-moves of
//! the log-price walk, number of up-moves of the volatility-factor walk, and
//! the last increment of each walk. Grid coordinates are never stored; they
//! are rebuilt from the integers so that equal nodes compare bitwise-equal.
//!
//! The step leaving a node at time `k` uses the correction
//! `alpha = (max(floor, sigma^2(node)) - 1) / 2`, and the corrected log-price
//! after that step is `X + dx * alpha * xi_x`. The up-probability of the
//! log-price walk is chosen so that `exp(-r k h + X_hat_k)` is an exact
//! martingale; the volatility-factor probability matches the drift `mu_y`.

use crate::error::{Error, Result};
use crate::model::{a_n, HestonParams, TransformedPoint};

/// Which guard keeps the transition probabilities inside `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TruncationMode {
    /// Floor `sigma^2` at `A_n` inside the correction; probabilities of the
    /// log-price walk are left unclamped.
    TruncateAlpha,
    /// No floor on the correction; clamp the log-price probability instead.
    #[default]
    TruncateProb,
}

/// Time and space discretisation of the lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n: usize,
    maturity: f64,
    h: f64,
    dx: f64,
    dy: f64,
    x0: f64,
    y0: f64,
    floor: f64,
    mode: TruncationMode,
}

impl GridSpec {
    pub fn new(n: usize, maturity: f64, params: &HestonParams, mode: TruncationMode) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("n", "need at least one time step"));
        }
        if !(maturity.is_finite() && maturity > 0.0) {
            return Err(Error::param("maturity", format!("must be > 0, got {maturity}")));
        }
        let h = maturity / n as f64;
        let eta = params.eta();
        let rho = params.rho();
        let origin = crate::model::to_transformed(params.s0(), params.v0(), params)?;
        Ok(Self {
            n,
            maturity,
            h,
            dx: (eta * h).sqrt(),
            dy: (eta * (1.0 - rho * rho) * h).sqrt(),
            x0: origin.x,
            y0: origin.y,
            floor: a_n(n, maturity, params),
            mode,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn maturity(&self) -> f64 {
        self.maturity
    }
    pub fn h(&self) -> f64 {
        self.h
    }
    pub fn dx(&self) -> f64 {
        self.dx
    }
    pub fn dy(&self) -> f64 {
        self.dy
    }
    pub fn x0(&self) -> f64 {
        self.x0
    }
    pub fn y0(&self) -> f64 {
        self.y0
    }
    pub fn mode(&self) -> TruncationMode {
        self.mode
    }
    /// The `A_n` floor of the correction (used only in `TruncateAlpha` mode).
    pub fn a_n(&self) -> f64 {
        self.floor
    }

    #[inline]
    pub fn x_at(&self, k: usize, l: usize) -> f64 {
        self.x0 + (2 * l as i64 - k as i64) as f64 * self.dx
    }

    #[inline]
    pub fn y_at(&self, k: usize, m: usize) -> f64 {
        self.y0 + (2 * m as i64 - k as i64) as f64 * self.dy
    }
}

/// One state of the chain. `xi_x`, `xi_y` are `0` at the root and `+-1` after.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainState {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub xi_x: i8,
    pub xi_y: i8,
}

impl ChainState {
    pub const ROOT: ChainState = ChainState {
        k: 0,
        l: 0,
        m: 0,
        xi_x: 0,
        xi_y: 0,
    };

    /// Validated constructor: levels in range, increments consistent with the
    /// time index, and the state reachable from the root.
    pub fn new(k: usize, l: usize, m: usize, xi_x: i8, xi_y: i8) -> Result<Self> {
        let s = ChainState { k, l, m, xi_x, xi_y };
        if s.is_valid() {
            Ok(s)
        } else {
            Err(Error::Domain(format!("not a reachable chain state: {s:?}")))
        }
    }

    pub fn is_valid(&self) -> bool {
        if self.l > self.k || self.m > self.k {
            return false;
        }
        if self.k == 0 {
            return self.xi_x == 0 && self.xi_y == 0;
        }
        let ok = |level: usize, xi: i8| match xi {
            1 => level >= 1,
            -1 => level < self.k,
            _ => false,
        };
        ok(self.l, self.xi_x) && ok(self.m, self.xi_y)
    }

    /// Node `(k - 1, l', m')` this state was reached from, obtained by undoing
    /// the recorded increments. `None` at the root.
    pub fn predecessor(&self) -> Option<(usize, usize, usize)> {
        if self.k == 0 {
            return None;
        }
        Some((
            self.k - 1,
            self.l - usize::from(self.xi_x == 1),
            self.m - usize::from(self.xi_y == 1),
        ))
    }

    #[inline]
    pub fn x(&self, grid: &GridSpec) -> f64 {
        grid.x_at(self.k, self.l)
    }

    #[inline]
    pub fn y(&self, grid: &GridSpec) -> f64 {
        grid.y_at(self.k, self.m)
    }

    pub fn point(&self, grid: &GridSpec) -> TransformedPoint {
        TransformedPoint::new(self.x(grid), self.y(grid))
    }
}

/// Conditional up-move probabilities of the two walks.
///
/// `p_raw` / `q_raw` are the values before any clamping; `p` / `q` are the
/// ones the chain actually uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionProbs {
    pub p: f64,
    pub q: f64,
    pub p_raw: f64,
    pub q_raw: f64,
}

impl TransitionProbs {
    pub fn p_clamped(&self) -> bool {
        self.p != self.p_raw
    }

    /// Joint law of `(xi_x, xi_y)` as `[(-,-), (-,+), (+,-), (+,+)]`.
    pub fn joint(&self) -> [f64; 4] {
        let (p, q) = (self.p, self.q);
        [(1.0 - p) * (1.0 - q), (1.0 - p) * q, p * (1.0 - q), p * q]
    }
}

/// Per-node quantities shared by the four states sitting on a node.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NodeCoeffs {
    pub alpha: f64,
    /// `exp(dx * alpha)`; the numerator factor this node contributes to its
    /// successors' up-probabilities.
    pub tilt: f64,
    pub inv_tilt: f64,
    down: f64,
    inv_span: f64,
    inv_two_psi: f64,
    q_drift: f64,
}

/// Precomputed constants for evaluating transitions anywhere on the lattice.
#[derive(Debug, Clone)]
pub(crate) struct StepKernel {
    pub grid: GridSpec,
    rho: f64,
    growth: f64,
    pub discount: f64,
    step_up: f64,
    step_down: f64,
    mu_y_const: f64,
    mu_y_slope: f64,
    q_scale: f64,
}

impl StepKernel {
    pub fn new(grid: &GridSpec, params: &HestonParams) -> Self {
        let (eta, rho, r) = (params.eta(), params.rho(), params.r());
        Self {
            grid: *grid,
            rho,
            growth: (r * grid.h).exp(),
            discount: (-r * grid.h).exp(),
            step_up: grid.dx.exp(),
            step_down: (-grid.dx).exp(),
            mu_y_const: params.kappa() * params.theta() / eta - rho * r,
            mu_y_slope: 0.5 * (rho * eta - 2.0 * params.kappa()),
            q_scale: grid.h.sqrt() / (2.0 * (eta * (1.0 - rho * rho)).sqrt()),
        }
    }

    #[inline]
    pub fn variance_factor(&self, k: usize, l: usize, m: usize) -> f64 {
        self.grid.y_at(k, m) + self.rho * self.grid.x_at(k, l)
    }

    #[inline]
    pub fn alpha_from_factor(&self, v: f64) -> f64 {
        let s2 = v.max(0.0);
        match self.grid.mode {
            TruncationMode::TruncateAlpha => (s2.max(self.grid.floor) - 1.0) * 0.5,
            TruncationMode::TruncateProb => (s2 - 1.0) * 0.5,
        }
    }

    #[inline]
    pub fn alpha(&self, k: usize, l: usize, m: usize) -> f64 {
        self.alpha_from_factor(self.variance_factor(k, l, m))
    }

    #[inline]
    pub fn node(&self, k: usize, l: usize, m: usize) -> NodeCoeffs {
        let v = self.variance_factor(k, l, m);
        let alpha = self.alpha_from_factor(v);
        let psi = 1.0 + alpha;
        let tilt = (self.grid.dx * alpha).exp();
        let inv_tilt = 1.0 / tilt;
        let up = self.step_up * tilt;
        let down = self.step_down * inv_tilt;
        let mu_y = self.mu_y_const + self.mu_y_slope * v;
        NodeCoeffs {
            alpha,
            tilt,
            inv_tilt,
            down,
            inv_span: 1.0 / (up - down),
            inv_two_psi: 0.5 / psi,
            q_drift: self.q_scale * mu_y / psi,
        }
    }

    /// Probabilities for a state on `node` whose previous step used the
    /// correction `prev_alpha` (with `prev_tilt = exp(dx * prev_alpha)` and
    /// its inverse).
    #[inline]
    pub fn probs(
        &self,
        node: &NodeCoeffs,
        prev_alpha: f64,
        prev_tilt: f64,
        prev_inv_tilt: f64,
        xi_x: i8,
        xi_y: i8,
    ) -> TransitionProbs {
        let lean = match xi_x {
            1 => prev_tilt,
            -1 => prev_inv_tilt,
            _ => 1.0,
        };
        let p_raw = (self.growth * lean - node.down) * node.inv_span;
        let q_raw = 0.5 + prev_alpha * f64::from(xi_y) * node.inv_two_psi + node.q_drift;
        let p = match self.grid.mode {
            TruncationMode::TruncateProb => p_raw.clamp(0.0, 1.0),
            TruncationMode::TruncateAlpha => p_raw,
        };
        TransitionProbs {
            p,
            q: q_raw.clamp(0.0, 1.0),
            p_raw,
            q_raw,
        }
    }

    /// Correction applied on the step into `state` (zero at the root).
    #[inline]
    pub fn incoming_alpha(&self, state: &ChainState) -> f64 {
        match state.predecessor() {
            Some((k, l, m)) => self.alpha(k, l, m),
            None => 0.0,
        }
    }

    pub fn state_probs(&self, state: &ChainState) -> TransitionProbs {
        let node = self.node(state.k, state.l, state.m);
        let (pa, pt, pit) = match state.predecessor() {
            Some((k, l, m)) => {
                let prev = self.node(k, l, m);
                (prev.alpha, prev.tilt, prev.inv_tilt)
            }
            None => (0.0, 1.0, 1.0),
        };
        self.probs(&node, pa, pt, pit, state.xi_x, state.xi_y)
    }

    #[inline]
    pub fn x_hat(&self, state: &ChainState) -> f64 {
        state.x(&self.grid) + self.grid.dx * self.incoming_alpha(state) * f64::from(state.xi_x)
    }

    #[inline]
    pub fn y_hat(&self, state: &ChainState) -> f64 {
        state.y(&self.grid) + self.grid.dy * self.incoming_alpha(state) * f64::from(state.xi_y)
    }
}

/// Correction `alpha` used on the step that leaves `state`'s node.
pub fn alpha(state: &ChainState, grid: &GridSpec, params: &HestonParams) -> f64 {
    StepKernel::new(grid, params).alpha(state.k, state.l, state.m)
}

pub fn transition_probs(state: &ChainState, grid: &GridSpec, params: &HestonParams) -> TransitionProbs {
    StepKernel::new(grid, params).state_probs(state)
}

/// Probability that the next log-price increment is `+1`.
pub fn p_up_x(state: &ChainState, grid: &GridSpec, params: &HestonParams) -> f64 {
    transition_probs(state, grid, params).p
}

/// Probability that the next volatility-factor increment is `+1`.
pub fn p_up_y(state: &ChainState, grid: &GridSpec, params: &HestonParams) -> f64 {
    transition_probs(state, grid, params).q
}

/// Corrected (martingale) log-price at `state`.
pub fn x_hat(state: &ChainState, grid: &GridSpec, params: &HestonParams) -> f64 {
    StepKernel::new(grid, params).x_hat(state)
}

/// Corrected volatility factor at `state`.
pub fn y_hat(state: &ChainState, grid: &GridSpec, params: &HestonParams) -> f64 {
    StepKernel::new(grid, params).y_hat(state)
}

/// The four successor states with their conditional probabilities, ordered
/// `(-,-), (-,+), (+,-), (+,+)` in `(xi_x, xi_y)`.
pub fn successors(
    state: &ChainState,
    grid: &GridSpec,
    params: &HestonParams,
) -> Result<[(ChainState, f64); 4]> {
    if state.k >= grid.n() {
        return Err(Error::NoSuccessor { k: state.k });
    }
    let probs = transition_probs(state, grid, params);
    let w = probs.joint();
    let next = |i: usize, j: usize| ChainState {
        k: state.k + 1,
        l: state.l + i,
        m: state.m + j,
        xi_x: 2 * i as i8 - 1,
        xi_y: 2 * j as i8 - 1,
    };
    Ok([
        (next(0, 0), w[0]),
        (next(0, 1), w[1]),
        (next(1, 0), w[2]),
        (next(1, 1), w[3]),
    ])
}

/// Enumerates every reachable state at time `k`.
pub fn states_at(k: usize) -> impl Iterator<Item = ChainState> {
    let incs: &'static [i8] = if k == 0 { &[0] } else { &[-1, 1] };
    (0..=k).flat_map(move |l| {
        (0..=k).flat_map(move |m| {
            incs.iter().flat_map(move |&a| {
                incs.iter().filter_map(move |&b| {
                    let s = ChainState {
                        k,
                        l,
                        m,
                        xi_x: a,
                        xi_y: b,
                    };
                    s.is_valid().then_some(s)
                })
            })
        })
    })
}
