//! Recombining binomial-tree approximation of the Heston stochastic-volatility
//! model.
//!
//! The log-price and a volatility factor are approximated by two correlated
//! random walks on a recombining grid. Each walk remembers its last increment,
//! so the approximating process is the four-tuple Markov chain
//! `(X_k, Y_k, xi^X_k, xi^Y_k)`. Transition probabilities make the discounted
//! stock an exact martingale at every step count.
//!
//! * [`model`]: parameters, change of variables and SDE coefficients.
//! * [`lattice`]: grid, corrections, transition probabilities.
//! * [`backward`]: dynamic-programming pricers (European/American vanillas,
//!   fixed-strike lookback puts).
//! * [`simulate`]: Monte Carlo sampled on the chain itself, for exotics.
//! * [`oracles`]: semi-closed Heston formula and an Euler Monte-Carlo pricer.
//! * [`tables`] and [`cli`]: reference data and the command-line front end.

pub mod backward;
pub mod cli;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod model;
pub mod oracles;
pub mod payoff;
pub mod simulate;
pub mod tables;
pub mod validation;

pub use backward::{price_lookback_backward, price_vanilla};
pub use error::{Error, Result};
pub use exec::Execution;
pub use lattice::{ChainState, GridSpec, TransitionProbs, TruncationMode};
pub use model::{HestonParams, TransformedPoint};
pub use payoff::{Exercise, PayoffKind, PayoffSpec, PriceEstimate};
pub use simulate::simulate_price;
