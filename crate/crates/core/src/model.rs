//! Heston parameters and the affine change of variables
//! `x = ln S`, `y = nu/eta - rho x`.
//!
//! In the transformed coordinates both factors are driven by independent
//! Brownian motions and share the single volatility factor
//! `sigma^2(x, y) = (y + rho x)^+ = nu / eta`.

use crate::error::{Error, Result};

/// Risk-neutral Heston model parameters.
///
/// `v0` and `theta` are variances. Construction enforces positivity, `|rho| < 1`
/// and the Feller condition `2 kappa theta >= eta^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HestonParams {
    s0: f64,
    v0: f64,
    r: f64,
    kappa: f64,
    theta: f64,
    eta: f64,
    rho: f64,
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be finite and > 0, got {value}")))
    }
}

impl HestonParams {
    pub fn new(s0: f64, v0: f64, r: f64, kappa: f64, theta: f64, eta: f64, rho: f64) -> Result<Self> {
        positive("s0", s0)?;
        positive("v0", v0)?;
        positive("r", r)?;
        positive("kappa", kappa)?;
        positive("theta", theta)?;
        positive("eta", eta)?;
        if !(rho.is_finite() && rho > -1.0 && rho < 1.0) {
            return Err(Error::param("rho", format!("must lie in (-1, 1), got {rho}")));
        }
        if 2.0 * kappa * theta < eta * eta {
            return Err(Error::param(
                "eta",
                format!(
                    "Feller condition violated: 2*kappa*theta = {} < eta^2 = {}",
                    2.0 * kappa * theta,
                    eta * eta
                ),
            ));
        }
        Ok(Self {
            s0,
            v0,
            r,
            kappa,
            theta,
            eta,
            rho,
        })
    }

    /// Same as [`HestonParams::new`] but takes the initial volatility `sqrt(v0)`,
    /// which is how the published tables quote it.
    pub fn with_initial_vol(
        s0: f64,
        sqrt_v0: f64,
        r: f64,
        kappa: f64,
        theta: f64,
        eta: f64,
        rho: f64,
    ) -> Result<Self> {
        positive("sqrt_v0", sqrt_v0)?;
        Self::new(s0, sqrt_v0 * sqrt_v0, r, kappa, theta, eta, rho)
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }
    pub fn v0(&self) -> f64 {
        self.v0
    }
    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn eta(&self) -> f64 {
        self.eta
    }
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Copy with a different spot, re-validated.
    pub fn with_s0(&self, s0: f64) -> Result<Self> {
        Self::new(s0, self.v0, self.r, self.kappa, self.theta, self.eta, self.rho)
    }
}

/// A point `(x, y)` in log-price / volatility-factor coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformedPoint {
    pub x: f64,
    pub y: f64,
}

impl TransformedPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// `y + rho x`, which equals `nu / eta` on the image of the transformation.
    #[inline]
    pub fn variance_factor(&self, params: &HestonParams) -> f64 {
        self.y + params.rho * self.x
    }

    /// Inverse map back to `(s, nu)`.
    pub fn to_original(&self, params: &HestonParams) -> (f64, f64) {
        (self.x.exp(), params.eta * self.variance_factor(params))
    }
}

pub fn to_transformed(s: f64, nu: f64, params: &HestonParams) -> Result<TransformedPoint> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::Domain(format!("stock price must be > 0, got {s}")));
    }
    let x = s.ln();
    Ok(TransformedPoint {
        x,
        y: nu / params.eta - params.rho * x,
    })
}

/// Drift of the log-price: `r - eta (y + rho x) / 2`.
#[inline]
pub fn mu_x(p: TransformedPoint, params: &HestonParams) -> f64 {
    params.r - 0.5 * params.eta * p.variance_factor(params)
}

/// Drift of the volatility factor.
#[inline]
pub fn mu_y(p: TransformedPoint, params: &HestonParams) -> f64 {
    params.kappa * params.theta / params.eta - params.rho * params.r
        + 0.5 * (params.rho * params.eta - 2.0 * params.kappa) * p.variance_factor(params)
}

/// Squared diffusion factor `(y + rho x)^+`.
#[inline]
pub fn sigma2(p: TransformedPoint, params: &HestonParams) -> f64 {
    p.variance_factor(params).max(0.0)
}

/// Floor applied to `sigma^2` when constructing the provable (truncated) corrections.
/// Shrinks like `sqrt(T / n)`.
pub fn a_n(n: usize, maturity: f64, params: &HestonParams) -> f64 {
    let h = maturity / n as f64;
    let rho = params.rho;
    (params.kappa * params.theta / params.eta + rho.abs() * params.r)
        * (h / (params.eta * (1.0 - rho * rho))).sqrt()
}
