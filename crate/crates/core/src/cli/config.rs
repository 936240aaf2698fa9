//! Flat `key = value` run configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Keys:
//!
//! | key | meaning | default |
//! |-----|---------|---------|
//! | `s0`, `sqrt_v0` (or `v0`), `r`, `kappa`, `theta`, `eta`, `rho` | model | required |
//! | `payoff` | `put`, `call`, `lookback-put`, `lookback-call`, `asian-geometric-call`, `asian-arithmetic-call` | `put` |
//! | `exercise` | `european`, `american` | `european` |
//! | `strike`, `maturity` | contract | required |
//! | `engine` | `backward`, `tree-mc`, `euler-mc`, `closed-form` | `backward` |
//! | `n` | time steps | `200` |
//! | `paths` | Monte-Carlo paths | `100000` |
//! | `seed` | RNG seed | `0` |
//! | `truncation` | `prob`, `alpha` | `prob` |
//! | `out` | CSV output path | none |

use std::fmt;
use std::path::PathBuf;

use crate::lattice::TruncationMode;
use crate::model::HestonParams;
use crate::payoff::{Exercise, PayoffKind, PayoffSpec};

/// Pricing engine selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Backward,
    TreeMc,
    EulerMc,
    ClosedForm,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Backward => "backward",
            Engine::TreeMc => "tree-mc",
            Engine::EulerMc => "euler-mc",
            Engine::ClosedForm => "closed-form",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Engine::Backward, Engine::TreeMc, Engine::EulerMc, Engine::ClosedForm]
            .into_iter()
            .find(|e| e.name() == s)
    }

    pub fn is_stochastic(self) -> bool {
        matches!(self, Engine::TreeMc | Engine::EulerMc)
    }
}

pub fn truncation_name(mode: TruncationMode) -> &'static str {
    match mode {
        TruncationMode::TruncateProb => "prob",
        TruncationMode::TruncateAlpha => "alpha",
    }
}

pub fn parse_truncation(s: &str) -> Option<TruncationMode> {
    match s {
        "prob" => Some(TruncationMode::TruncateProb),
        "alpha" => Some(TruncationMode::TruncateAlpha),
        _ => None,
    }
}

/// Problems with a configuration, naming the offending key.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{0}` given twice")]
    Duplicate(String),
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("`{key}`: cannot parse `{value}`")]
    BadValue { key: String, value: String },
    #[error("`{key}`: {reason}")]
    Invalid { key: &'static str, reason: String },
}

/// Everything needed for one `price` run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub s0: f64,
    pub sqrt_v0: f64,
    pub r: f64,
    pub kappa: f64,
    pub theta: f64,
    pub eta: f64,
    pub rho: f64,
    pub kind: PayoffKind,
    pub exercise: Exercise,
    pub strike: f64,
    pub maturity: f64,
    pub engine: Engine,
    pub n: usize,
    pub num_paths: u64,
    pub seed: u64,
    pub truncation: TruncationMode,
    pub output_path: Option<PathBuf>,
}

const KEYS: [&str; 18] = [
    "s0", "sqrt_v0", "v0", "r", "kappa", "theta", "eta", "rho", "payoff", "exercise", "strike", "maturity", "engine", "n",
    "paths", "seed", "truncation", "out",
];

/// Raw key/value pairs in insertion order; later [`Self::set`] calls override.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigMap {
    entries: Vec<(String, String)>,
}

impl ConfigMap {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut map = ConfigMap::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(ConfigError::Syntax { line: i + 1, text: raw.to_string() });
            };
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() {
                return Err(ConfigError::Syntax { line: i + 1, text: raw.to_string() });
            }
            if map.get(k).is_some() {
                return Err(ConfigError::Duplicate(k.to_string()));
            }
            map.insert(k, v)?;
        }
        Ok(map)
    }

    fn insert(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        if !KEYS.contains(&key) {
            return Err(ConfigError::UnknownKey(key.to_string()));
        }
        self.entries.retain(|(k, _)| k != key);
        self.entries.push((key.to_string(), value.to_string()));
        Ok(())
    }

    /// Sets or overrides a key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        if key == "v0" {
            self.entries.retain(|(k, _)| k != "sqrt_v0");
        } else if key == "sqrt_v0" {
            self.entries.retain(|(k, _)| k != "v0");
        }
        self.insert(key, value)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

fn number<T: std::str::FromStr>(map: &ConfigMap, key: &'static str) -> Result<Option<T>, ConfigError> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| ConfigError::BadValue { key: key.to_string(), value: v.to_string() }),
    }
}

fn required(map: &ConfigMap, key: &'static str) -> Result<f64, ConfigError> {
    number(map, key)?.ok_or(ConfigError::Missing(key))
}

fn choice<T>(map: &ConfigMap, key: &'static str, parse: impl Fn(&str) -> Option<T>, default: T) -> Result<T, ConfigError> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => parse(v).ok_or_else(|| ConfigError::BadValue { key: key.to_string(), value: v.to_string() }),
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Self::from_map(&ConfigMap::parse(text)?)
    }

    pub fn from_map(map: &ConfigMap) -> Result<Self, ConfigError> {
        let sqrt_v0 = match (number::<f64>(map, "sqrt_v0")?, number::<f64>(map, "v0")?) {
            (Some(_), Some(_)) => {
                return Err(ConfigError::Invalid { key: "v0", reason: "give either `sqrt_v0` or `v0`, not both".into() })
            }
            (Some(s), None) => s,
            (None, Some(v)) if v > 0.0 => v.sqrt(),
            (None, Some(_)) => return Err(ConfigError::Invalid { key: "v0", reason: "must be > 0".into() }),
            (None, None) => return Err(ConfigError::Missing("sqrt_v0")),
        };
        let cfg = RunConfig {
            s0: required(map, "s0")?,
            sqrt_v0,
            r: required(map, "r")?,
            kappa: required(map, "kappa")?,
            theta: required(map, "theta")?,
            eta: required(map, "eta")?,
            rho: required(map, "rho")?,
            kind: choice(map, "payoff", PayoffKind::parse, PayoffKind::Put)?,
            exercise: choice(map, "exercise", Exercise::parse, Exercise::European)?,
            strike: required(map, "strike")?,
            maturity: required(map, "maturity")?,
            engine: choice(map, "engine", Engine::parse, Engine::Backward)?,
            n: number(map, "n")?.unwrap_or(200),
            num_paths: number(map, "paths")?.unwrap_or(100_000),
            seed: number(map, "seed")?.unwrap_or(0),
            truncation: choice(map, "truncation", parse_truncation, TruncationMode::TruncateProb)?,
            output_path: map.get("out").map(PathBuf::from),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn params(&self) -> Result<HestonParams, ConfigError> {
        HestonParams::with_initial_vol(self.s0, self.sqrt_v0, self.r, self.kappa, self.theta, self.eta, self.rho)
            .map_err(|e| ConfigError::Invalid { key: "model", reason: e.to_string() })
    }

    pub fn payoff(&self) -> Result<PayoffSpec, ConfigError> {
        PayoffSpec::new(self.kind, self.exercise, self.strike, self.maturity)
            .map_err(|e| ConfigError::Invalid { key: "payoff", reason: e.to_string() })
    }

    /// Checks parameter ranges and engine/payoff compatibility.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.params()?;
        self.payoff()?;
        if self.n == 0 {
            return Err(ConfigError::Invalid { key: "n", reason: "need at least one time step".into() });
        }
        let reject = |reason: String| Err(ConfigError::Invalid { key: "engine", reason });
        let contract = format!("{} {}", self.exercise.name(), self.kind.name());
        match self.engine {
            Engine::ClosedForm if !(self.kind.is_vanilla() && self.exercise == Exercise::European) => {
                reject(format!("closed-form prices European puts and calls only, not {contract}"))
            }
            Engine::Backward if !(self.kind.is_vanilla() || self.kind == PayoffKind::LookbackFixedStrikePut) => {
                reject(format!("backward prices puts, calls and lookback puts only, not {contract}"))
            }
            Engine::TreeMc | Engine::EulerMc if self.exercise == Exercise::American => {
                reject(format!("{} prices European-style contracts only, not {contract}", self.engine.name()))
            }
            Engine::TreeMc | Engine::EulerMc if self.num_paths < crate::simulate::MIN_PATHS => {
                Err(ConfigError::Invalid {
                    key: "paths",
                    reason: format!("need at least {} paths", crate::simulate::MIN_PATHS),
                })
            }
            _ => Ok(()),
        }
    }

    /// The effective configuration as a key/value file that parses back to `self`.
    pub fn to_config_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "s0 = {}", self.s0)?;
        writeln!(f, "sqrt_v0 = {}", self.sqrt_v0)?;
        writeln!(f, "r = {}", self.r)?;
        writeln!(f, "kappa = {}", self.kappa)?;
        writeln!(f, "theta = {}", self.theta)?;
        writeln!(f, "eta = {}", self.eta)?;
        writeln!(f, "rho = {}", self.rho)?;
        writeln!(f, "payoff = {}", self.kind.name())?;
        writeln!(f, "exercise = {}", self.exercise.name())?;
        writeln!(f, "strike = {}", self.strike)?;
        writeln!(f, "maturity = {}", self.maturity)?;
        writeln!(f, "engine = {}", self.engine.name())?;
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "paths = {}", self.num_paths)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "truncation = {}", truncation_name(self.truncation))?;
        if let Some(out) = &self.output_path {
            writeln!(f, "out = {}", out.display())?;
        }
        Ok(())
    }
}
