//! Test-only reference implementation of the two-factor tree, written from
//! the scalar formulas with plain `f64` arithmetic and no library lattice code.
#![allow(dead_code)]

use heston_tree::{GridSpec, HestonParams, TruncationMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Prob,
    Alpha,
}

impl Mode {
    pub fn library(self) -> TruncationMode {
        match self {
            Mode::Prob => TruncationMode::TruncateProb,
            Mode::Alpha => TruncationMode::TruncateAlpha,
        }
    }
}

/// Model inputs as plain numbers, `v0` a variance.
#[derive(Debug, Clone, Copy)]
pub struct Model {
    pub s0: f64,
    pub v0: f64,
    pub r: f64,
    pub kappa: f64,
    pub theta: f64,
    pub eta: f64,
    pub rho: f64,
}

impl Model {
    pub fn library(&self) -> HestonParams {
        HestonParams::new(self.s0, self.v0, self.r, self.kappa, self.theta, self.eta, self.rho).unwrap()
    }
}

/// Step probabilities at one chain state.
#[derive(Debug, Clone, Copy)]
pub struct Probs {
    pub p_raw: f64,
    pub p: f64,
    pub q_raw: f64,
    pub q: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct Tree {
    pub model: Model,
    pub mode: Mode,
    pub n: usize,
    pub maturity: f64,
    pub h: f64,
    pub dx: f64,
    pub dy: f64,
    pub x0: f64,
    pub y0: f64,
    pub a_n: f64,
}

impl Tree {
    pub fn new(model: Model, n: usize, maturity: f64, mode: Mode) -> Self {
        let Model { s0, v0, r, kappa, theta, eta, rho } = model;
        let h = maturity / n as f64;
        let x0 = s0.ln();
        Tree {
            model,
            mode,
            n,
            maturity,
            h,
            dx: (eta * h).sqrt(),
            dy: (eta * (1.0 - rho * rho) * h).sqrt(),
            x0,
            y0: v0 / eta - rho * x0,
            a_n: (kappa * theta / eta + rho.abs() * r) * (h / (eta * (1.0 - rho * rho))).sqrt(),
        }
    }

    pub fn library_grid(&self) -> GridSpec {
        GridSpec::new(self.n, self.maturity, &self.model.library(), self.mode.library()).unwrap()
    }

    pub fn x(&self, k: usize, l: usize) -> f64 {
        self.x0 + (2.0 * l as f64 - k as f64) * self.dx
    }

    pub fn y(&self, k: usize, m: usize) -> f64 {
        self.y0 + (2.0 * m as f64 - k as f64) * self.dy
    }

    pub fn factor(&self, k: usize, l: usize, m: usize) -> f64 {
        self.y(k, m) + self.model.rho * self.x(k, l)
    }

    /// Variance factor that the correction at node `(k, l, m)` targets.
    pub fn target_variance(&self, k: usize, l: usize, m: usize) -> f64 {
        let s2 = self.factor(k, l, m).max(0.0);
        match self.mode {
            Mode::Prob => s2,
            Mode::Alpha => s2.max(self.a_n),
        }
    }

    /// Correction used on the step leaving node `(k, l, m)`.
    pub fn alpha(&self, k: usize, l: usize, m: usize) -> f64 {
        (self.target_variance(k, l, m) - 1.0) / 2.0
    }

    /// Probabilities at node `(k, l, m)` entered with increments `(xi_x, xi_y)`
    /// after a step that used correction `a_prev`.
    pub fn probs(&self, k: usize, l: usize, m: usize, a_prev: f64, xi_x: i8, xi_y: i8) -> Probs {
        let Model { r, kappa, theta, eta, rho, .. } = self.model;
        let a = self.alpha(k, l, m);
        let e = self.dx * (1.0 + a);
        let p_raw = ((r * self.h + self.dx * a_prev * f64::from(xi_x)).exp() - (-e).exp()) / (e.exp() - (-e).exp());
        let p = match self.mode {
            Mode::Prob => p_raw.clamp(0.0, 1.0),
            Mode::Alpha => p_raw,
        };
        let mu_y = kappa * theta / eta - rho * r + 0.5 * (rho * eta - 2.0 * kappa) * self.factor(k, l, m);
        let q_raw = 0.5
            + a_prev * f64::from(xi_y) / (2.0 * (1.0 + a))
            + self.h.sqrt() * mu_y / (2.0 * (eta * (1.0 - rho * rho)).sqrt() * (1.0 + a));
        Probs { p_raw, p, q_raw, q: q_raw.clamp(0.0, 1.0) }
    }

    /// Correction used on the step into a state, read off its predecessor node.
    pub fn incoming_alpha(&self, k: usize, l: usize, m: usize, xi_x: i8, xi_y: i8) -> f64 {
        if k == 0 {
            return 0.0;
        }
        let pl = if xi_x == 1 { l - 1 } else { l };
        let pm = if xi_y == 1 { m - 1 } else { m };
        self.alpha(k - 1, pl, pm)
    }

    /// Every state `(l, m, xi_x, xi_y)` of layer `k`.
    pub fn states(&self, k: usize) -> Vec<(usize, usize, i8, i8)> {
        let mut out = Vec::new();
        if k == 0 {
            out.push((0, 0, 0, 0));
            return out;
        }
        for l in 0..=k {
            for m in 0..=k {
                for xi_x in [-1i8, 1] {
                    for xi_y in [-1i8, 1] {
                        let ok_x = if xi_x == 1 { l >= 1 } else { l < k };
                        let ok_y = if xi_y == 1 { m >= 1 } else { m < k };
                        if ok_x && ok_y {
                            out.push((l, m, xi_x, xi_y));
                        }
                    }
                }
            }
        }
        out
    }

    /// Price by walking every one of the `4^n` paths. With `american`, the
    /// holder may stop at any node (root included); maximising over the
    /// continuation at each node of the path tree is the best stopping rule.
    pub fn enumerate(&self, payoff: &dyn Fn(f64) -> f64, american: bool) -> f64 {
        self.walk(0, 0, 0, 0.0, 0, 0, payoff, american)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(&self, k: usize, l: usize, m: usize, a_prev: f64, xi_x: i8, xi_y: i8, payoff: &dyn Fn(f64) -> f64, american: bool) -> f64 {
        let stock = (self.x(k, l) + self.dx * a_prev * f64::from(xi_x)).exp();
        if k == self.n {
            return payoff(stock);
        }
        let pr = self.probs(k, l, m, a_prev, xi_x, xi_y);
        let a = self.alpha(k, l, m);
        let mut cont = 0.0;
        for (ux, px) in [(0usize, 1.0 - pr.p), (1, pr.p)] {
            for (uy, qy) in [(0usize, 1.0 - pr.q), (1, pr.q)] {
                let xi = |u: usize| if u == 1 { 1i8 } else { -1 };
                cont += px * qy * self.walk(k + 1, l + ux, m + uy, a, xi(ux), xi(uy), payoff, american);
            }
        }
        cont *= (-self.model.r * self.h).exp();
        if american {
            cont.max(payoff(stock))
        } else {
            cont
        }
    }
}

/// The S0 = 100, sqrt(v0) = 0.2 row of the European tables.
pub const VANILLA: Model = Model { s0: 100.0, v0: 0.04, r: 0.05, kappa: 3.0, theta: 0.04, eta: 0.1, rho: -0.7 };

/// High-volatility American row.
pub const AMERICAN: Model = Model { s0: 90.0, v0: 0.16, r: 0.05, kappa: 3.0, theta: 0.04, eta: 0.1, rho: -0.1 };

/// Finite-difference row: large vol-of-vol and positive correlation.
pub const FINITE_DIFFERENCE: Model = Model { s0: 10.0, v0: 0.25, r: 0.1, kappa: 5.0, theta: 0.16, eta: 0.9, rho: 0.1 };
