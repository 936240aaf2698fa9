//! Semi-closed Heston price of European vanillas.
//!
//! The two probabilities `P1`, `P2` are Fourier inversions of the
//! characteristic functions written in the form whose complex logarithm stays
//! on the principal branch (`g = (b - i rho eta u - d) / (b - i rho eta u + d)`
//! and `exp(-d T)`). Puts come from put–call parity.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::{integrate, QuadratureConfig};
use crate::error::{Error, Result};
use crate::model::HestonParams;
use crate::payoff::{Exercise, PayoffKind, PayoffSpec};

/// `ln E[exp(i u ln S_T)]`-style exponent for probability `j` (1 or 2),
/// without the `i u ln S0` term.
fn log_cf(u: f64, j: usize, p: &HestonParams, t: f64) -> Complex64 {
    let (kappa, theta, eta, rho, r, v0) = (p.kappa(), p.theta(), p.eta(), p.rho(), p.r(), p.v0());
    let (half, b) = if j == 1 { (0.5, kappa - rho * eta) } else { (-0.5, kappa) };
    let i = Complex64::i();
    let iu = i * u;
    let beta = b - rho * eta * iu;
    let d = (beta * beta - eta * eta * (2.0 * half * iu - u * u)).sqrt();
    let g = (beta - d) / (beta + d);
    let e = (-d * t).exp();
    let eta2 = eta * eta;
    let c = r * iu * t + kappa * theta / eta2 * ((beta - d) * t - 2.0 * ((1.0 - g * e) / (1.0 - g)).ln());
    let dd = (beta - d) / eta2 * (1.0 - e) / (1.0 - g * e);
    c + dd * v0
}

/// European call and put with the given strike and maturity.
pub fn heston_call_put(strike: f64, maturity: f64, params: &HestonParams, quad: &QuadratureConfig) -> Result<(f64, f64)> {
    quad.validate()?;
    if !(strike > 0.0 && maturity > 0.0) {
        return Err(Error::param("strike/maturity", "must both be > 0"));
    }
    let s0 = params.s0();
    let disc_k = strike * (-params.r() * maturity).exp();
    let moneyness = (s0 / strike).ln();
    let integrand = |u: f64| {
        let phase = Complex64::new(0.0, u * moneyness);
        let f1 = (log_cf(u, 1, params, maturity) + phase).exp();
        let f2 = (log_cf(u, 2, params, maturity) + phase).exp();
        ((s0 * f1 - disc_k * f2) / Complex64::new(0.0, u)).re
    };
    let integral = integrate(integrand, 0.0, quad.upper_limit, quad.abs_tol * PI, quad.max_evals)?;
    let call = 0.5 * (s0 - disc_k) + integral / PI;
    let put = call - s0 + disc_k;
    Ok((call, put))
}

/// Price of a European put or call.
pub fn heston_closed_form(payoff: &PayoffSpec, params: &HestonParams, quad: &QuadratureConfig) -> Result<f64> {
    if payoff.exercise != Exercise::European || !payoff.kind.is_vanilla() {
        return Err(Error::Unsupported(format!(
            "closed form prices European puts and calls only, got {} {}",
            payoff.exercise.name(),
            payoff.kind.name()
        )));
    }
    let (call, put) = heston_call_put(payoff.strike, payoff.maturity, params, quad)?;
    Ok(match payoff.kind {
        PayoffKind::Call => call,
        _ => put,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm_cdf(x: f64) -> f64 {
        use statrs::distribution::{ContinuousCDF, Normal};
        Normal::standard().cdf(x)
    }

    fn black_scholes_call(s: f64, k: f64, r: f64, vol: f64, t: f64) -> f64 {
        let d1 = ((s / k).ln() + (r + 0.5 * vol * vol) * t) / (vol * t.sqrt());
        let d2 = d1 - vol * t.sqrt();
        s * norm_cdf(d1) - k * (-r * t).exp() * norm_cdf(d2)
    }

    fn table(s0: f64, vol0: f64) -> HestonParams {
        HestonParams::with_initial_vol(s0, vol0, 0.05, 3.0, 0.04, 0.1, -0.7).unwrap()
    }

    #[test]
    fn published_vanilla_values() {
        let q = QuadratureConfig::default();
        let (_, put) = heston_call_put(100.0, 0.0833, &table(90.0, 0.2), &q).unwrap();
        assert!((put - 9.6533).abs() < 5e-4, "{put}");
        let (call, _) = heston_call_put(100.0, 0.25, &table(100.0, 0.3), &q).unwrap();
        assert!((call - 6.0732).abs() < 5e-4, "{call}");
    }

    #[test]
    fn near_constant_volatility_matches_black_scholes() {
        // v0 = theta and a tiny vol-of-vol freeze the variance; the residual
        // is first order in rho * eta.
        let p = HestonParams::new(100.0, 0.04, 0.05, 2.0, 0.04, 1e-4, 0.3).unwrap();
        let q = QuadratureConfig::default();
        for k in [80.0, 100.0, 125.0] {
            let (call, _) = heston_call_put(k, 0.5, &p, &q).unwrap();
            let bs = black_scholes_call(100.0, k, 0.05, 0.2, 0.5);
            assert!((call - bs).abs() < 1e-4, "K={k}: {call} vs {bs}");
        }
    }

    #[test]
    fn deterministic_and_monotone() {
        let q = QuadratureConfig::default();
        let a = heston_call_put(100.0, 0.5, &table(100.0, 0.4), &q).unwrap();
        let b = heston_call_put(100.0, 0.5, &table(100.0, 0.4), &q).unwrap();
        assert_eq!(a.0.to_bits(), b.0.to_bits());
        let mut last = 0.0;
        for s0 in [90.0, 95.0, 100.0, 105.0, 110.0] {
            let mut by_t = 0.0;
            for t in [0.0833, 0.25, 0.5] {
                let (c, _) = heston_call_put(100.0, t, &table(s0, 0.3), &q).unwrap();
                assert!(c > by_t);
                by_t = c;
            }
            let (c, _) = heston_call_put(100.0, 0.25, &table(s0, 0.3), &q).unwrap();
            assert!(c > last);
            last = c;
        }
    }

    #[test]
    fn rejects_non_vanilla() {
        let q = QuadratureConfig::default();
        let am = PayoffSpec::american(PayoffKind::Put, 100.0, 0.25).unwrap();
        assert!(matches!(heston_closed_form(&am, &table(100.0, 0.2), &q), Err(Error::Unsupported(_))));
        let asian = PayoffSpec::european(PayoffKind::AsianGeometricCall, 100.0, 0.25).unwrap();
        assert!(heston_closed_form(&asian, &table(100.0, 0.2), &q).is_err());
    }

    #[test]
    fn long_maturity_stays_continuous() {
        // Large eta and long T is where the original formulation jumps branches.
        let p = HestonParams::new(100.0, 0.09, 0.05, 1.15, 0.348, 0.39, -0.64).unwrap();
        let q = QuadratureConfig::default();
        let prices: Vec<f64> = [4.0, 5.0, 6.0]
            .iter()
            .map(|&t| heston_call_put(100.0, t, &p, &q).unwrap().0)
            .collect();
        // Reference values from an independent evaluation with adaptive
        // quadrature on [0, inf).
        for (got, want) in prices.iter().zip([45.875_611_698_6, 51.598_746_731_2, 56.477_708_024_1]) {
            assert!((got - want).abs() < 1e-7, "{got} vs {want}");
        }
    }
}
