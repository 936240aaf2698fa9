//! Reference pricers that share no code with the lattice: the semi-closed
//! Heston formula for European vanillas and an Euler scheme for the SDE.

mod closed_form;
mod euler;
mod quadrature;

pub use closed_form::{heston_call_put, heston_closed_form};
pub use euler::{euler_mc, euler_mc_with};
pub use quadrature::{integrate, QuadratureConfig};
