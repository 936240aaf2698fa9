use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PayoffKind {
    Put,
    Call,
    LookbackFixedStrikePut,
    LookbackFixedStrikeCall,
    AsianGeometricCall,
    AsianArithmeticCall,
}

impl PayoffKind {
    pub fn is_vanilla(self) -> bool {
        matches!(self, PayoffKind::Put | PayoffKind::Call)
    }

    pub fn is_asian(self) -> bool {
        matches!(self, PayoffKind::AsianGeometricCall | PayoffKind::AsianArithmeticCall)
    }

    pub fn is_lookback(self) -> bool {
        matches!(self, PayoffKind::LookbackFixedStrikePut | PayoffKind::LookbackFixedStrikeCall)
    }

    pub fn name(self) -> &'static str {
        match self {
            PayoffKind::Put => "put",
            PayoffKind::Call => "call",
            PayoffKind::LookbackFixedStrikePut => "lookback-put",
            PayoffKind::LookbackFixedStrikeCall => "lookback-call",
            PayoffKind::AsianGeometricCall => "asian-geometric-call",
            PayoffKind::AsianArithmeticCall => "asian-arithmetic-call",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "put" => PayoffKind::Put,
            "call" => PayoffKind::Call,
            "lookback-put" => PayoffKind::LookbackFixedStrikePut,
            "lookback-call" => PayoffKind::LookbackFixedStrikeCall,
            "asian-geometric-call" => PayoffKind::AsianGeometricCall,
            "asian-arithmetic-call" => PayoffKind::AsianArithmeticCall,
            _ => return None,
        })
    }
}

impl fmt::Display for PayoffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Exercise {
    #[default]
    European,
    American,
}

impl Exercise {
    pub fn name(self) -> &'static str {
        match self {
            Exercise::European => "european",
            Exercise::American => "american",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "european" => Some(Exercise::European),
            "american" => Some(Exercise::American),
            _ => None,
        }
    }
}

/// Contract description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffSpec {
    pub kind: PayoffKind,
    pub exercise: Exercise,
    pub strike: f64,
    pub maturity: f64,
}

impl PayoffSpec {
    pub fn new(kind: PayoffKind, exercise: Exercise, strike: f64, maturity: f64) -> Result<Self> {
        if !(strike.is_finite() && strike > 0.0) {
            return Err(Error::param("strike", format!("must be > 0, got {strike}")));
        }
        if !(maturity.is_finite() && maturity > 0.0) {
            return Err(Error::param("maturity", format!("must be > 0, got {maturity}")));
        }
        Ok(Self {
            kind,
            exercise,
            strike,
            maturity,
        })
    }

    pub fn european(kind: PayoffKind, strike: f64, maturity: f64) -> Result<Self> {
        Self::new(kind, Exercise::European, strike, maturity)
    }

    pub fn american(kind: PayoffKind, strike: f64, maturity: f64) -> Result<Self> {
        Self::new(kind, Exercise::American, strike, maturity)
    }

    /// Intrinsic value of a vanilla at stock level `s`.
    #[inline]
    pub(crate) fn vanilla_intrinsic(&self, s: f64) -> f64 {
        match self.kind {
            PayoffKind::Call => (s - self.strike).max(0.0),
            _ => (self.strike - s).max(0.0),
        }
    }
}

/// A price, with sampling error when it comes from a simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceEstimate {
    pub price: f64,
    pub std_error: Option<f64>,
    pub ci95: Option<(f64, f64)>,
    pub num_paths: Option<u64>,
}

/// Normal quantile used for the two-sided 95% interval.
pub const Z95: f64 = 1.96;

impl PriceEstimate {
    pub fn exact(price: f64) -> Self {
        Self {
            price,
            std_error: None,
            ci95: None,
            num_paths: None,
        }
    }

    pub fn sampled(price: f64, std_error: f64, num_paths: u64) -> Self {
        Self {
            price,
            std_error: Some(std_error),
            ci95: Some((price - Z95 * std_error, price + Z95 * std_error)),
            num_paths: Some(num_paths),
        }
    }

    /// Whether the 95% interval contains `value` (exact estimates compare equal only).
    pub fn covers(&self, value: f64) -> bool {
        match self.ci95 {
            Some((lo, hi)) => lo <= value && value <= hi,
            None => self.price == value,
        }
    }

    /// Whether two intervals intersect.
    pub fn overlaps(&self, lo: f64, hi: f64) -> bool {
        let (a, b) = self.ci95.unwrap_or((self.price, self.price));
        a <= hi && lo <= b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ci_is_symmetric() {
        let e = PriceEstimate::sampled(10.0, 0.5, 1000);
        let (lo, hi) = e.ci95.unwrap();
        assert!((lo - (10.0 - 0.98)).abs() < 1e-12);
        assert!((hi - (10.0 + 0.98)).abs() < 1e-12);
        assert!(e.covers(10.9) && !e.covers(11.0));
        assert!(e.overlaps(10.9, 12.0) && !e.overlaps(11.0, 12.0));
    }

    #[test]
    fn validation_and_names() {
        assert!(PayoffSpec::european(PayoffKind::Put, 0.0, 1.0).is_err());
        assert!(PayoffSpec::european(PayoffKind::Put, 100.0, -1.0).is_err());
        for k in [
            PayoffKind::Put,
            PayoffKind::Call,
            PayoffKind::LookbackFixedStrikePut,
            PayoffKind::LookbackFixedStrikeCall,
            PayoffKind::AsianGeometricCall,
            PayoffKind::AsianArithmeticCall,
        ] {
            assert_eq!(PayoffKind::parse(k.name()), Some(k));
        }
        assert_eq!(Exercise::parse("american"), Some(Exercise::American));
    }
}
