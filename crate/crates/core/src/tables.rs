//! Reference values of the published comparison tables, and the parameter
//! sets they were produced with.
//!
//! Maturities of one month are the printed `0.0833`, not `1/12`.

use crate::error::Result;
use crate::model::HestonParams;

/// European vanilla rows: tree prices at `n = 200, 350, 500` and the
/// semi-closed value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VanillaRow {
    pub s0: f64,
    pub sqrt_v0: f64,
    pub maturity: f64,
    pub tree: [f64; 3],
    pub analytical: f64,
}

/// Step counts of the tree columns of [`EUROPEAN_PUTS`] and [`EUROPEAN_CALLS`].
pub const VANILLA_STEPS: [usize; 3] = [200, 350, 500];

/// American puts against control-variate prices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmericanRow {
    pub s0: f64,
    pub rho: f64,
    pub sqrt_v0: f64,
    pub maturity: f64,
    pub tree_250: f64,
    pub control_variate: f64,
}

/// American puts against fine-grid finite-difference reference values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteDifferenceRow {
    pub sqrt_v0: f64,
    pub s0: f64,
    /// Tree prices at `n = 150, 250, 350`.
    pub tree: [f64; 3],
    pub reference: f64,
}

/// Geometric Asian calls: tree Monte Carlo with `n = 300` at
/// `10^5, 5*10^5, 10^6` paths, the semi-closed value, and the 95% intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricAsianRow {
    pub maturity: f64,
    pub strike: f64,
    pub tree: [f64; 3],
    pub semi_closed: f64,
    pub ci: [(f64, f64); 3],
}

/// Arithmetic Asian calls against a `10^8`-path Monte-Carlo reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArithmeticAsianRow {
    pub strike: f64,
    pub mc_reference: f64,
    /// Relative standard deviation of the crude Monte-Carlo reference, percent.
    pub reference_rel_sd_pct: f64,
    pub tree: f64,
    pub tree_ci: (f64, f64),
}

/// Fixed-strike lookback calls: Euler and tree Monte Carlo, both with 3000
/// steps and `10^5` paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LookbackRow {
    pub maturity: f64,
    pub strike: f64,
    pub euler: f64,
    pub euler_ci: (f64, f64),
    pub tree: f64,
    pub tree_ci: (f64, f64),
}

pub const VANILLA_STRIKE: f64 = 100.0;

/// Parameters of the vanilla tables (strike 100).
pub fn vanilla_params(s0: f64, sqrt_v0: f64, rho: f64) -> Result<HestonParams> {
    HestonParams::with_initial_vol(s0, sqrt_v0, 0.05, 3.0, 0.04, 0.1, rho)
}

pub const VANILLA_RHO: f64 = -0.7;

pub const FD_STRIKE: f64 = 10.0;
pub const FD_MATURITY: f64 = 0.25;

pub fn finite_difference_params(s0: f64, sqrt_v0: f64) -> Result<HestonParams> {
    HestonParams::with_initial_vol(s0, sqrt_v0, 0.1, 5.0, 0.16, 0.9, 0.1)
}

pub fn geometric_asian_params() -> Result<HestonParams> {
    HestonParams::new(100.0, 0.09, 0.05, 1.15, 0.348, 0.39, -0.64)
}

/// The arithmetic Asian table does not print its maturity; one year is used.
pub const ARITHMETIC_ASIAN_MATURITY: f64 = 1.0;

pub fn arithmetic_asian_params() -> Result<HestonParams> {
    HestonParams::new(50.0, 0.01, 0.05, 2.0, 0.01, 0.1, 0.5)
}

pub fn lookback_params() -> Result<HestonParams> {
    HestonParams::new(100.0, 0.16, 0.05, 3.0, 0.04, 0.1, -0.7)
}


/// European puts, strike 100.
pub const EUROPEAN_PUTS: [VanillaRow; 45] = [
    VanillaRow { s0: 90.0, sqrt_v0: 0.2, maturity: 0.0833, tree: [9.6541, 9.6533, 9.6533], analytical: 9.6533 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.2, maturity: 0.0833, tree: [5.2059, 5.2084, 5.2077], analytical: 5.2074 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.2, maturity: 0.0833, tree: [2.0953, 2.096, 2.0965], analytical: 2.0971 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.2, maturity: 0.0833, tree: [0.6082, 0.6047, 0.605], analytical: 0.6053 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.2, maturity: 0.0833, tree: [0.1267, 0.1271, 0.127], analytical: 0.1265 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.3, maturity: 0.0833, tree: [9.9913, 9.99, 9.99], analytical: 9.9905 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.3, maturity: 0.0833, tree: [6.0147, 6.017, 6.0162], analytical: 6.0155 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.3, maturity: 0.0833, tree: [3.1308, 3.1288, 3.129], analytical: 3.1302 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.3, maturity: 0.0833, tree: [1.4001, 1.3955, 1.3955], analytical: 1.3967 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.3, maturity: 0.0833, tree: [0.5365, 0.5374, 0.5372], analytical: 0.5367 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.4, maturity: 0.0833, tree: [10.5687, 10.567, 10.5668], analytical: 10.5668 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.4, maturity: 0.0833, tree: [6.9357, 6.9363, 6.9352], analytical: 6.9335 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.4, maturity: 0.0833, tree: [4.1893, 4.1864, 4.1861], analytical: 4.1852 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.4, maturity: 0.0833, tree: [2.328, 2.3232, 2.3229], analytical: 2.3222 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.4, maturity: 0.0833, tree: [1.1893, 1.1897, 1.1893], analytical: 1.1882 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.2, maturity: 0.25, tree: [9.5736, 9.5693, 9.5694], analytical: 9.5698 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.2, maturity: 0.25, tree: [5.9691, 5.9685, 5.9693], analytical: 5.9692 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.2, maturity: 0.25, tree: [3.3742, 3.3774, 3.3794], analytical: 3.377 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.2, maturity: 0.25, tree: [1.742, 1.7393, 1.7402], analytical: 1.741 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.2, maturity: 0.25, tree: [0.829, 0.8249, 0.8253], analytical: 0.8259 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.3, maturity: 0.25, tree: [10.5941, 10.5879, 10.5882], analytical: 10.5893 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.3, maturity: 0.25, tree: [7.3343, 7.3327, 7.3329], analytical: 7.3316 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.3, maturity: 0.25, tree: [4.8279, 4.8331, 4.834], analytical: 4.831 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.3, maturity: 0.25, tree: [3.042, 3.0379, 3.0391], analytical: 3.0388 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.3, maturity: 0.25, tree: [1.8368, 1.832, 1.8319], analytical: 1.8325 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.4, maturity: 0.25, tree: [11.8375, 11.8281, 11.8288], analytical: 11.8287 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.4, maturity: 0.25, tree: [8.812, 8.8081, 8.807], analytical: 8.8035 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.4, maturity: 0.25, tree: [6.3762, 6.379, 6.3786], analytical: 6.3735 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.4, maturity: 0.25, tree: [4.5066, 4.5005, 4.5004], analytical: 4.4976 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.4, maturity: 0.25, tree: [3.1099, 3.1035, 3.1025], analytical: 3.1011 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.2, maturity: 0.5, tree: [9.7547, 9.7545, 9.7606], analytical: 9.7572 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.2, maturity: 0.5, tree: [6.7258, 6.7248, 6.7185], analytical: 6.7199 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.2, maturity: 0.5, tree: [4.4355, 4.4369, 4.432], analytical: 4.4312 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.2, maturity: 0.5, tree: [2.8077, 2.8159, 2.81], analytical: 2.8107 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.2, maturity: 0.5, tree: [1.7286, 1.7289, 1.7275], analytical: 1.724 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.3, maturity: 0.5, tree: [11.0786, 11.0792, 11.0845], analytical: 11.0807 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.3, maturity: 0.5, tree: [8.2445, 8.2422, 8.2367], analytical: 8.2363 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.3, maturity: 0.5, tree: [5.9835, 5.983, 5.9784], analytical: 5.9763 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.3, maturity: 0.5, tree: [4.245, 4.2504, 4.2449], analytical: 4.2443 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.3, maturity: 0.5, tree: [2.9647, 2.964, 2.9623], analytical: 2.9582 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.4, maturity: 0.5, tree: [12.6195, 12.6199, 12.6231], analytical: 12.6171 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.4, maturity: 0.5, tree: [9.9373, 9.9318, 9.926], analytical: 9.9223 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.4, maturity: 0.5, tree: [7.711, 7.7069, 7.7017], analytical: 7.6965 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.4, maturity: 0.5, tree: [5.9065, 5.9075, 5.9015], analytical: 5.8978 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.4, maturity: 0.5, tree: [4.4841, 4.4806, 4.4779], analytical: 4.4716 },
];

/// European calls, strike 100.
pub const EUROPEAN_CALLS: [VanillaRow; 45] = [
    VanillaRow { s0: 90.0, sqrt_v0: 0.2, maturity: 0.0833, tree: [0.0699, 0.0691, 0.0691], analytical: 0.0691 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.2, maturity: 0.0833, tree: [0.6217, 0.6242, 0.6235], analytical: 0.6232 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.2, maturity: 0.0833, tree: [2.5111, 2.5118, 2.5122], analytical: 2.5129 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.2, maturity: 0.0833, tree: [6.024, 6.0205, 6.0208], analytical: 6.0211 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.2, maturity: 0.0833, tree: [10.5425, 10.5429, 10.5428], analytical: 10.5423 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.3, maturity: 0.0833, tree: [0.4071, 0.4058, 0.4058], analytical: 0.4063 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.3, maturity: 0.0833, tree: [1.4305, 1.4328, 1.432], analytical: 1.4313 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.3, maturity: 0.0833, tree: [3.5466, 3.5446, 3.5448], analytical: 3.546 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.3, maturity: 0.0833, tree: [6.8159, 6.8113, 6.8113], analytical: 6.8125 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.3, maturity: 0.0833, tree: [10.9523, 10.9532, 10.953], analytical: 10.9525 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.4, maturity: 0.0833, tree: [0.9845, 0.9828, 0.9826], analytical: 0.9826 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.4, maturity: 0.0833, tree: [2.3515, 2.3521, 2.351], analytical: 2.3493 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.4, maturity: 0.0833, tree: [4.6051, 4.6022, 4.6019], analytical: 4.601 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.4, maturity: 0.0833, tree: [7.7438, 7.739, 7.7387], analytical: 7.738 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.4, maturity: 0.0833, tree: [11.6051, 11.6055, 11.6051], analytical: 11.604 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.2, maturity: 0.25, tree: [0.8158, 0.8115, 0.8116], analytical: 0.812 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.2, maturity: 0.25, tree: [2.2113, 2.2107, 2.2116], analytical: 2.2114 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.2, maturity: 0.25, tree: [4.6164, 4.6196, 4.6216], analytical: 4.6192 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.2, maturity: 0.25, tree: [7.9842, 7.9815, 7.9824], analytical: 7.9832 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.2, maturity: 0.25, tree: [12.0712, 12.0671, 12.0675], analytical: 12.0682 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.3, maturity: 0.25, tree: [1.8363, 1.8301, 1.8305], analytical: 1.8316 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.3, maturity: 0.25, tree: [3.5766, 3.575, 3.5751], analytical: 3.5738 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.3, maturity: 0.25, tree: [6.0701, 6.0753, 6.0762], analytical: 6.0732 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.3, maturity: 0.25, tree: [9.2842, 9.2802, 9.2813], analytical: 9.281 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.3, maturity: 0.25, tree: [13.079, 13.0742, 13.0741], analytical: 13.0747 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.4, maturity: 0.25, tree: [3.0797, 3.0703, 3.071], analytical: 3.0709 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.4, maturity: 0.25, tree: [5.0542, 5.0503, 5.0493], analytical: 5.0457 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.4, maturity: 0.25, tree: [7.6184, 7.6212, 7.6208], analytical: 7.6157 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.4, maturity: 0.25, tree: [10.7488, 10.7428, 10.7426], analytical: 10.7399 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.4, maturity: 0.25, tree: [14.3521, 14.3457, 14.3447], analytical: 14.3433 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.2, maturity: 0.5, tree: [2.2237, 2.2235, 2.2296], analytical: 2.2262 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.2, maturity: 0.5, tree: [4.1948, 4.1938, 4.1875], analytical: 4.1889 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.2, maturity: 0.5, tree: [6.9045, 6.906, 6.901], analytical: 6.9002 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.2, maturity: 0.5, tree: [10.2767, 10.2849, 10.279], analytical: 10.2797 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.2, maturity: 0.5, tree: [14.1976, 14.1979, 14.1965], analytical: 14.193 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.3, maturity: 0.5, tree: [3.5476, 3.5483, 3.5535], analytical: 3.5497 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.3, maturity: 0.5, tree: [5.7135, 5.7112, 5.7057], analytical: 5.7053 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.3, maturity: 0.5, tree: [8.4525, 8.452, 8.4474], analytical: 8.4453 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.3, maturity: 0.5, tree: [11.714, 11.7194, 11.714], analytical: 11.7133 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.3, maturity: 0.5, tree: [15.4337, 15.433, 15.4313], analytical: 15.4272 },
    VanillaRow { s0: 90.0, sqrt_v0: 0.4, maturity: 0.5, tree: [5.0885, 5.0889, 5.0921], analytical: 5.0861 },
    VanillaRow { s0: 95.0, sqrt_v0: 0.4, maturity: 0.5, tree: [7.4063, 7.4008, 7.395], analytical: 7.3913 },
    VanillaRow { s0: 100.0, sqrt_v0: 0.4, maturity: 0.5, tree: [10.18, 10.1759, 10.1707], analytical: 10.1655 },
    VanillaRow { s0: 105.0, sqrt_v0: 0.4, maturity: 0.5, tree: [13.3755, 13.3765, 13.3705], analytical: 13.3668 },
    VanillaRow { s0: 110.0, sqrt_v0: 0.4, maturity: 0.5, tree: [16.9532, 16.9496, 16.9469], analytical: 16.9406 },
];

pub const AMERICAN_PUTS: [AmericanRow; 36] = [
    AmericanRow { s0: 90.0, rho: -0.1, sqrt_v0: 0.2, maturity: 0.0833, tree_250: 10.0, control_variate: 10.0 },
    AmericanRow { s0: 100.0, rho: -0.1, sqrt_v0: 0.2, maturity: 0.0833, tree_250: 2.1236, control_variate: 2.1254 },
    AmericanRow { s0: 110.0, rho: -0.1, sqrt_v0: 0.2, maturity: 0.0833, tree_250: 0.109, control_variate: 0.1091 },
    AmericanRow { s0: 90.0, rho: -0.7, sqrt_v0: 0.2, maturity: 0.0833, tree_250: 10.0, control_variate: 9.9997 },
    AmericanRow { s0: 100.0, rho: -0.7, sqrt_v0: 0.2, maturity: 0.0833, tree_250: 2.1249, control_variate: 2.1267 },
    AmericanRow { s0: 110.0, rho: -0.7, sqrt_v0: 0.2, maturity: 0.0833, tree_250: 0.1273, control_variate: 0.1274 },
    AmericanRow { s0: 90.0, rho: -0.1, sqrt_v0: 0.4, maturity: 0.0833, tree_250: 10.7123, control_variate: 10.71 },
    AmericanRow { s0: 100.0, rho: -0.1, sqrt_v0: 0.4, maturity: 0.0833, tree_250: 4.2194, control_variate: 4.2158 },
    AmericanRow { s0: 110.0, rho: -0.1, sqrt_v0: 0.4, maturity: 0.0833, tree_250: 1.1666, control_variate: 1.1667 },
    AmericanRow { s0: 90.0, rho: -0.7, sqrt_v0: 0.4, maturity: 0.0833, tree_250: 10.6843, control_variate: 10.6804 },
    AmericanRow { s0: 100.0, rho: -0.7, sqrt_v0: 0.4, maturity: 0.0833, tree_250: 4.2183, control_variate: 4.214 },
    AmericanRow { s0: 110.0, rho: -0.7, sqrt_v0: 0.4, maturity: 0.0833, tree_250: 1.1942, control_variate: 1.1939 },
    AmericanRow { s0: 90.0, rho: -0.1, sqrt_v0: 0.2, maturity: 0.25, tree_250: 10.1713, control_variate: 10.1706 },
    AmericanRow { s0: 100.0, rho: -0.1, sqrt_v0: 0.2, maturity: 0.25, tree_250: 3.4729, control_variate: 3.4747 },
    AmericanRow { s0: 110.0, rho: -0.1, sqrt_v0: 0.2, maturity: 0.25, tree_250: 0.7726, control_variate: 0.7736 },
    AmericanRow { s0: 90.0, rho: -0.7, sqrt_v0: 0.2, maturity: 0.25, tree_250: 10.1222, control_variate: 10.1206 },
    AmericanRow { s0: 100.0, rho: -0.7, sqrt_v0: 0.2, maturity: 0.25, tree_250: 3.479, control_variate: 3.4807 },
    AmericanRow { s0: 110.0, rho: -0.7, sqrt_v0: 0.2, maturity: 0.25, tree_250: 0.8405, control_variate: 0.8416 },
    AmericanRow { s0: 90.0, rho: -0.1, sqrt_v0: 0.4, maturity: 0.25, tree_250: 12.188, control_variate: 12.1819 },
    AmericanRow { s0: 100.0, rho: -0.1, sqrt_v0: 0.4, maturity: 0.25, tree_250: 6.5023, control_variate: 6.4964 },
    AmericanRow { s0: 110.0, rho: -0.1, sqrt_v0: 0.4, maturity: 0.25, tree_250: 3.0952, control_variate: 3.0914 },
    AmericanRow { s0: 90.0, rho: -0.7, sqrt_v0: 0.4, maturity: 0.25, tree_250: 12.1245, control_variate: 12.1122 },
    AmericanRow { s0: 100.0, rho: -0.7, sqrt_v0: 0.4, maturity: 0.25, tree_250: 6.4989, control_variate: 6.4899 },
    AmericanRow { s0: 110.0, rho: -0.7, sqrt_v0: 0.4, maturity: 0.25, tree_250: 3.1512, control_variate: 3.1456 },
    AmericanRow { s0: 90.0, rho: -0.1, sqrt_v0: 0.2, maturity: 0.5, tree_250: 10.6521, control_variate: 10.6478 },
    AmericanRow { s0: 100.0, rho: -0.1, sqrt_v0: 0.2, maturity: 0.5, tree_250: 4.6531, control_variate: 4.6473 },
    AmericanRow { s0: 110.0, rho: -0.1, sqrt_v0: 0.2, maturity: 0.5, tree_250: 1.6857, control_variate: 1.6832 },
    AmericanRow { s0: 90.0, rho: -0.7, sqrt_v0: 0.2, maturity: 0.5, tree_250: 10.5682, control_variate: 10.5637 },
    AmericanRow { s0: 100.0, rho: -0.7, sqrt_v0: 0.2, maturity: 0.5, tree_250: 4.6691, control_variate: 4.6636 },
    AmericanRow { s0: 110.0, rho: -0.7, sqrt_v0: 0.2, maturity: 0.5, tree_250: 1.7899, control_variate: 1.7874 },
    AmericanRow { s0: 90.0, rho: -0.1, sqrt_v0: 0.4, maturity: 0.5, tree_250: 13.3279, control_variate: 13.3142 },
    AmericanRow { s0: 100.0, rho: -0.1, sqrt_v0: 0.4, maturity: 0.5, tree_250: 8.0231, control_variate: 8.0083 },
    AmericanRow { s0: 110.0, rho: -0.1, sqrt_v0: 0.4, maturity: 0.5, tree_250: 4.5554, control_variate: 4.5454 },
    AmericanRow { s0: 90.0, rho: -0.7, sqrt_v0: 0.4, maturity: 0.5, tree_250: 13.2431, control_variate: 13.2172 },
    AmericanRow { s0: 100.0, rho: -0.7, sqrt_v0: 0.4, maturity: 0.5, tree_250: 8.0204, control_variate: 7.9998 },
    AmericanRow { s0: 110.0, rho: -0.7, sqrt_v0: 0.4, maturity: 0.5, tree_250: 4.6328, control_variate: 4.6201 },
];

pub const FD_AMERICAN_PUTS: [FiniteDifferenceRow; 10] = [
    FiniteDifferenceRow { sqrt_v0: 0.25, s0: 8.0, tree: [2.0, 2.0, 2.0], reference: 2.0 },
    FiniteDifferenceRow { sqrt_v0: 0.25, s0: 9.0, tree: [1.1086, 1.1079, 1.1074], reference: 1.1076 },
    FiniteDifferenceRow { sqrt_v0: 0.25, s0: 10.0, tree: [0.5155, 0.519, 0.5193], reference: 0.52 },
    FiniteDifferenceRow { sqrt_v0: 0.25, s0: 11.0, tree: [0.214, 0.214, 0.2134], reference: 0.2137 },
    FiniteDifferenceRow { sqrt_v0: 0.25, s0: 12.0, tree: [0.0825, 0.0822, 0.0828], reference: 0.082 },
    FiniteDifferenceRow { sqrt_v0: 0.5, s0: 8.0, tree: [2.0791, 2.0786, 2.079], reference: 2.0784 },
    FiniteDifferenceRow { sqrt_v0: 0.5, s0: 9.0, tree: [1.3362, 1.3338, 1.3339], reference: 1.3336 },
    FiniteDifferenceRow { sqrt_v0: 0.5, s0: 10.0, tree: [0.7957, 0.7964, 0.7964], reference: 0.796 },
    FiniteDifferenceRow { sqrt_v0: 0.5, s0: 11.0, tree: [0.4495, 0.4501, 0.4485], reference: 0.4483 },
    FiniteDifferenceRow { sqrt_v0: 0.5, s0: 12.0, tree: [0.2435, 0.2435, 0.244], reference: 0.2428 },
];

pub const GEOMETRIC_ASIAN_CALLS: [GeometricAsianRow; 35] = [
    GeometricAsianRow { maturity: 0.2, strike: 90.0, tree: [10.6598, 10.6551, 10.6562], semi_closed: 10.6571, ci: [(10.6135, 10.706), (10.6345, 10.6758), (10.6416, 10.6708)] },
    GeometricAsianRow { maturity: 0.2, strike: 95.0, tree: [6.6006, 6.597, 6.5888], semi_closed: 6.5871, ci: [(6.5609, 6.6402), (6.5793, 6.6147), (6.5763, 6.6014)] },
    GeometricAsianRow { maturity: 0.2, strike: 100.0, tree: [3.4699, 3.4564, 3.451], semi_closed: 3.4478, ci: [(3.4397, 3.5001), (3.4429, 3.4699), (3.4415, 3.4605)] },
    GeometricAsianRow { maturity: 0.2, strike: 105.0, tree: [1.4697, 1.461, 1.4611], semi_closed: 1.4552, ci: [(1.4501, 1.4894), (1.4522, 1.4698), (1.4548, 1.4673)] },
    GeometricAsianRow { maturity: 0.2, strike: 110.0, tree: [0.473, 0.4742, 0.4719], semi_closed: 0.4724, ci: [(0.4623, 0.4838), (0.4694, 0.479), (0.4685, 0.4753)] },
    GeometricAsianRow { maturity: 0.4, strike: 90.0, tree: [11.731, 11.7111, 11.7077], semi_closed: 11.7112, ci: [(11.6678, 11.7941), (11.6829, 11.7394), (11.6877, 11.7277)] },
    GeometricAsianRow { maturity: 0.4, strike: 95.0, tree: [8.0988, 8.1067, 8.0877], semi_closed: 8.0894, ci: [(8.0438, 8.1538), (8.082, 8.1313), (8.0703, 8.1051)] },
    GeometricAsianRow { maturity: 0.4, strike: 100.0, tree: [5.148, 5.1746, 5.1641], semi_closed: 5.1616, ci: [(5.1027, 5.1932), (5.1543, 5.1948), (5.1498, 5.1784)] },
    GeometricAsianRow { maturity: 0.4, strike: 105.0, tree: [3.0414, 3.006, 3.004], semi_closed: 3.0018, ci: [(3.0065, 3.0764), (2.9904, 3.0216), (2.993, 3.015)] },
    GeometricAsianRow { maturity: 0.4, strike: 110.0, tree: [1.5555, 1.5776, 1.5679], semi_closed: 1.5715, ci: [(1.5308, 1.5803), (1.5665, 1.5887), (1.5601, 1.5758)] },
    GeometricAsianRow { maturity: 0.5, strike: 90.0, tree: [12.2974, 12.2495, 12.233], semi_closed: 12.2329, ci: [(12.227, 12.3679), (12.2181, 12.2808), (12.2108, 12.2552)] },
    GeometricAsianRow { maturity: 0.5, strike: 95.0, tree: [8.7711, 8.7668, 8.7753], semi_closed: 8.7553, ci: [(8.7094, 8.8328), (8.7391, 8.7944), (8.7557, 8.7949)] },
    GeometricAsianRow { maturity: 0.5, strike: 100.0, tree: [5.9036, 5.9151, 5.9008], semi_closed: 5.8971, ci: [(5.8516, 5.9556), (5.8919, 5.9384), (5.8843, 5.9172)] },
    GeometricAsianRow { maturity: 0.5, strike: 105.0, tree: [3.715, 3.712, 3.7165], semi_closed: 3.7072, ci: [(3.6735, 3.7566), (3.6934, 3.7306), (3.7034, 3.7297)] },
    GeometricAsianRow { maturity: 0.5, strike: 110.0, tree: [2.1622, 2.1692, 2.1595], semi_closed: 2.1589, ci: [(2.1305, 2.1938), (2.1551, 2.1833), (2.1495, 2.1694)] },
    GeometricAsianRow { maturity: 1.0, strike: 90.0, tree: [14.5646, 14.6087, 14.5937], semi_closed: 14.5779, ci: [(14.4642, 14.665), (14.5638, 14.6536), (14.5619, 14.6255)] },
    GeometricAsianRow { maturity: 1.0, strike: 95.0, tree: [11.6287, 11.5518, 11.5474], semi_closed: 11.5551, ci: [(11.5367, 11.7208), (11.5109, 11.5927), (11.5186, 11.5763)] },
    GeometricAsianRow { maturity: 1.0, strike: 100.0, tree: [8.9708, 8.9378, 8.953], semi_closed: 8.9457, ci: [(8.8888, 9.0528), (8.9013, 8.9744), (8.9272, 8.9789)] },
    GeometricAsianRow { maturity: 1.0, strike: 105.0, tree: [6.8003, 6.7392, 6.7505], semi_closed: 6.7559, ci: [(6.7282, 6.8724), (6.7072, 6.7713), (6.7278, 6.7732)] },
    GeometricAsianRow { maturity: 1.0, strike: 110.0, tree: [5.0161, 4.9878, 4.9704], semi_closed: 4.9722, ci: [(4.9538, 5.0784), (4.9601, 5.0154), (4.9508, 4.9899)] },
    GeometricAsianRow { maturity: 1.5, strike: 90.0, tree: [16.3889, 16.4588, 16.52], semi_closed: 16.503, ci: [(16.2635, 16.5144), (16.4023, 16.5152), (16.48, 16.5599)] },
    GeometricAsianRow { maturity: 1.5, strike: 95.0, tree: [13.7324, 13.7764, 13.769], semi_closed: 13.7625, ci: [(13.615, 13.8498), (13.7239, 13.8289), (13.7319, 13.8061)] },
    GeometricAsianRow { maturity: 1.5, strike: 100.0, tree: [11.3599, 11.3247, 11.3304], semi_closed: 11.3374, ci: [(11.2523, 11.4676), (11.2765, 11.3729), (11.2963, 11.3645)] },
    GeometricAsianRow { maturity: 1.5, strike: 105.0, tree: [9.2487, 9.2187, 9.2076], semi_closed: 9.2245, ci: [(9.1503, 9.3471), (9.1749, 9.2626), (9.1766, 9.2387)] },
    GeometricAsianRow { maturity: 1.5, strike: 110.0, tree: [7.4342, 7.3959, 7.4019], semi_closed: 7.4122, ci: [(7.3457, 7.5226), (7.3563, 7.4355), (7.3739, 7.4299)] },
    GeometricAsianRow { maturity: 2.0, strike: 90.0, tree: [18.0757, 18.1112, 18.0816], semi_closed: 18.0914, ci: [(17.9261, 18.2253), (18.0442, 18.1782), (18.0342, 18.1289)] },
    GeometricAsianRow { maturity: 2.0, strike: 95.0, tree: [15.6133, 15.6021, 15.5211], semi_closed: 15.564, ci: [(15.4721, 15.7544), (15.5392, 15.6651), (15.4767, 15.5654)] },
    GeometricAsianRow { maturity: 2.0, strike: 100.0, tree: [13.3624, 13.3245, 13.2833], semi_closed: 13.2933, ci: [(13.2303, 13.4945), (13.2656, 13.3835), (13.2416, 13.3249)] },
    GeometricAsianRow { maturity: 2.0, strike: 105.0, tree: [11.2855, 11.2862, 11.2627], semi_closed: 11.2728, ci: [(11.1626, 11.4084), (11.2315, 11.3409), (11.224, 11.3013)] },
    GeometricAsianRow { maturity: 2.0, strike: 110.0, tree: [9.4243, 9.484, 9.4901], semi_closed: 9.4921, ci: [(9.3113, 9.5373), (9.4334, 9.5345), (9.4544, 9.5258)] },
    GeometricAsianRow { maturity: 3.0, strike: 90.0, tree: [20.6523, 20.4276, 20.5149], semi_closed: 20.5102, ci: [(20.461, 20.8436), (20.3429, 20.5123), (20.4547, 20.575)] },
    GeometricAsianRow { maturity: 3.0, strike: 95.0, tree: [18.3985, 18.2361, 18.2884], semi_closed: 18.306, ci: [(18.2156, 18.5814), (18.1549, 18.3174), (18.231, 18.3459)] },
    GeometricAsianRow { maturity: 3.0, strike: 100.0, tree: [16.2151, 16.2555, 16.2609], semi_closed: 16.2895, ci: [(16.0417, 16.3885), (16.1781, 16.3329), (16.2062, 16.3157)] },
    GeometricAsianRow { maturity: 3.0, strike: 105.0, tree: [14.5, 14.433, 14.4046], semi_closed: 14.4531, ci: [(14.3343, 14.6656), (14.3594, 14.5067), (14.3525, 14.4566)] },
    GeometricAsianRow { maturity: 3.0, strike: 110.0, tree: [12.6065, 12.8177, 12.7982], semi_closed: 12.7882, ci: [(12.4514, 12.7617), (12.7476, 12.8878), (12.7489, 12.8476)] },
];

pub const ARITHMETIC_ASIAN_CALLS: [ArithmeticAsianRow; 13] = [
    ArithmeticAsianRow { strike: 44.0, mc_reference: 6.92, reference_rel_sd_pct: 0.08, tree: 6.9196, tree_ci: (6.9139, 6.9252) },
    ArithmeticAsianRow { strike: 45.0, mc_reference: 5.97, reference_rel_sd_pct: 0.1, tree: 5.9768, tree_ci: (5.9712, 5.9825) },
    ArithmeticAsianRow { strike: 46.0, mc_reference: 5.03, reference_rel_sd_pct: 0.11, tree: 5.0334, tree_ci: (5.0278, 5.039) },
    ArithmeticAsianRow { strike: 47.0, mc_reference: 4.11, reference_rel_sd_pct: 0.14, tree: 4.1117, tree_ci: (4.1062, 4.1172) },
    ArithmeticAsianRow { strike: 48.0, mc_reference: 3.245, reference_rel_sd_pct: 0.16, tree: 3.2506, tree_ci: (3.2453, 3.2559) },
    ArithmeticAsianRow { strike: 49.0, mc_reference: 2.46, reference_rel_sd_pct: 0.2, tree: 2.4673, tree_ci: (2.4624, 2.4723) },
    ArithmeticAsianRow { strike: 50.0, mc_reference: 1.79, reference_rel_sd_pct: 0.26, tree: 1.7926, tree_ci: (1.7882, 1.797) },
    ArithmeticAsianRow { strike: 51.0, mc_reference: 1.25, reference_rel_sd_pct: 0.31, tree: 1.2541, tree_ci: (1.2503, 1.258) },
    ArithmeticAsianRow { strike: 52.0, mc_reference: 0.84, reference_rel_sd_pct: 0.39, tree: 0.843, tree_ci: (0.8398, 0.8463) },
    ArithmeticAsianRow { strike: 53.0, mc_reference: 0.54, reference_rel_sd_pct: 0.5, tree: 0.5502, tree_ci: (0.5475, 0.5529) },
    ArithmeticAsianRow { strike: 54.0, mc_reference: 0.34, reference_rel_sd_pct: 0.63, tree: 0.3485, tree_ci: (0.3464, 0.3506) },
    ArithmeticAsianRow { strike: 55.0, mc_reference: 0.21, reference_rel_sd_pct: 0.81, tree: 0.2159, tree_ci: (0.2142, 0.2176) },
    ArithmeticAsianRow { strike: 56.0, mc_reference: 0.125, reference_rel_sd_pct: 1.04, tree: 0.1317, tree_ci: (0.1303, 0.133) },
];

pub const LOOKBACK_CALLS: [LookbackRow; 35] = [
    LookbackRow { maturity: 0.2, strike: 90.0, euler: 23.4527, euler_ci: (23.3844, 23.521), tree: 23.4679, tree_ci: (23.3996, 23.5362) },
    LookbackRow { maturity: 0.2, strike: 95.0, euler: 18.5511, euler_ci: (18.4827, 18.6196), tree: 18.5459, tree_ci: (18.4776, 18.6142) },
    LookbackRow { maturity: 0.2, strike: 100.0, euler: 13.5145, euler_ci: (13.4464, 13.5825), tree: 13.6562, tree_ci: (13.5878, 13.7246) },
    LookbackRow { maturity: 0.2, strike: 105.0, euler: 9.2629, euler_ci: (9.1987, 9.3272), tree: 9.262, tree_ci: (9.1978, 9.3262) },
    LookbackRow { maturity: 0.2, strike: 110.0, euler: 6.0746, euler_ci: (6.0185, 6.1306), tree: 6.0899, tree_ci: (6.034, 6.1457) },
    LookbackRow { maturity: 0.4, strike: 90.0, euler: 27.7252, euler_ci: (27.6333, 27.8172), tree: 27.7378, tree_ci: (27.6461, 27.8296) },
    LookbackRow { maturity: 0.4, strike: 95.0, euler: 22.7931, euler_ci: (22.7015, 22.8846), tree: 22.7784, tree_ci: (22.6869, 22.8698) },
    LookbackRow { maturity: 0.4, strike: 100.0, euler: 17.8937, euler_ci: (17.8017, 17.9857), tree: 17.9052, tree_ci: (17.8136, 17.9969) },
    LookbackRow { maturity: 0.4, strike: 105.0, euler: 13.5301, euler_ci: (13.4415, 13.6187), tree: 13.6541, tree_ci: (13.5649, 13.7434) },
    LookbackRow { maturity: 0.4, strike: 110.0, euler: 10.0038, euler_ci: (9.9224, 10.0852), tree: 10.0978, tree_ci: (10.016, 10.1796) },
    LookbackRow { maturity: 0.5, strike: 90.0, euler: 29.1737, euler_ci: (29.0738, 29.2735), tree: 29.2407, tree_ci: (29.1405, 29.3409) },
    LookbackRow { maturity: 0.5, strike: 95.0, euler: 24.2728, euler_ci: (24.1733, 24.3722), tree: 24.3094, tree_ci: (24.2095, 24.4093) },
    LookbackRow { maturity: 0.5, strike: 100.0, euler: 19.4547, euler_ci: (19.3542, 19.5552), tree: 19.5036, tree_ci: (19.4033, 19.6038) },
    LookbackRow { maturity: 0.5, strike: 105.0, euler: 15.1074, euler_ci: (15.0099, 15.2049), tree: 15.0772, tree_ci: (14.9801, 15.1742) },
    LookbackRow { maturity: 0.5, strike: 110.0, euler: 11.4637, euler_ci: (11.373, 11.5544), tree: 11.4401, tree_ci: (11.3498, 11.5305) },
    LookbackRow { maturity: 1.0, strike: 90.0, euler: 34.1211, euler_ci: (33.991, 34.2511), tree: 34.1944, tree_ci: (34.0646, 34.3242) },
    LookbackRow { maturity: 1.0, strike: 95.0, euler: 29.4579, euler_ci: (29.3273, 29.5886), tree: 29.4015, tree_ci: (29.272, 29.5311) },
    LookbackRow { maturity: 1.0, strike: 100.0, euler: 24.6878, euler_ci: (24.5573, 24.8184), tree: 24.7163, tree_ci: (24.5855, 24.847) },
    LookbackRow { maturity: 1.0, strike: 105.0, euler: 20.196, euler_ci: (20.0686, 20.3234), tree: 20.3721, tree_ci: (20.2443, 20.4999) },
    LookbackRow { maturity: 1.0, strike: 110.0, euler: 16.5429, euler_ci: (16.4206, 16.6652), tree: 16.4579, tree_ci: (16.3367, 16.5791) },
    LookbackRow { maturity: 1.5, strike: 90.0, euler: 37.6113, euler_ci: (37.4587, 37.764), tree: 37.8563, tree_ci: (37.7035, 38.0091) },
    LookbackRow { maturity: 1.5, strike: 95.0, euler: 33.2861, euler_ci: (33.1314, 33.4408), tree: 33.0959, tree_ci: (32.9428, 33.2491) },
    LookbackRow { maturity: 1.5, strike: 100.0, euler: 28.5915, euler_ci: (28.438, 28.7451), tree: 28.3913, tree_ci: (28.2386, 28.544) },
    LookbackRow { maturity: 1.5, strike: 105.0, euler: 24.2427, euler_ci: (24.0913, 24.3941), tree: 24.1616, tree_ci: (24.0107, 24.3124) },
    LookbackRow { maturity: 1.5, strike: 110.0, euler: 20.4593, euler_ci: (20.3131, 20.6054), tree: 20.4385, tree_ci: (20.2919, 20.585) },
    LookbackRow { maturity: 2.0, strike: 90.0, euler: 41.0722, euler_ci: (40.8963, 41.2481), tree: 41.0605, tree_ci: (40.8861, 41.235) },
    LookbackRow { maturity: 2.0, strike: 95.0, euler: 36.6204, euler_ci: (36.4454, 36.7953), tree: 36.5932, tree_ci: (36.4185, 36.768) },
    LookbackRow { maturity: 2.0, strike: 100.0, euler: 31.9362, euler_ci: (31.7612, 32.1112), tree: 32.0618, tree_ci: (31.8874, 32.2361) },
    LookbackRow { maturity: 2.0, strike: 105.0, euler: 27.8954, euler_ci: (27.722, 28.0688), tree: 27.7302, tree_ci: (27.5578, 27.9026) },
    LookbackRow { maturity: 2.0, strike: 110.0, euler: 24.0406, euler_ci: (23.8719, 24.2093), tree: 23.8907, tree_ci: (23.7223, 24.0591) },
    LookbackRow { maturity: 3.0, strike: 90.0, euler: 47.0043, euler_ci: (46.7881, 47.2205), tree: 47.0854, tree_ci: (46.8698, 47.301) },
    LookbackRow { maturity: 3.0, strike: 95.0, euler: 42.6606, euler_ci: (42.4453, 42.8759), tree: 42.575, tree_ci: (42.3599, 42.7901) },
    LookbackRow { maturity: 3.0, strike: 100.0, euler: 38.6746, euler_ci: (38.4588, 38.8903), tree: 38.363, tree_ci: (38.1469, 38.579) },
    LookbackRow { maturity: 3.0, strike: 105.0, euler: 34.5038, euler_ci: (34.2898, 34.7177), tree: 34.2793, tree_ci: (34.0657, 34.4929) },
    LookbackRow { maturity: 3.0, strike: 110.0, euler: 30.7339, euler_ci: (30.5229, 30.9449), tree: 30.4407, tree_ci: (30.2312, 30.6502) },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_sets_satisfy_feller() {
        for r in EUROPEAN_PUTS.iter().chain(EUROPEAN_CALLS.iter()) {
            assert!(vanilla_params(r.s0, r.sqrt_v0, VANILLA_RHO).is_ok());
        }
        for r in AMERICAN_PUTS {
            assert!(vanilla_params(r.s0, r.sqrt_v0, r.rho).is_ok());
        }
        for r in FD_AMERICAN_PUTS {
            assert!(finite_difference_params(r.s0, r.sqrt_v0).is_ok());
        }
        assert!(geometric_asian_params().is_ok());
        assert!(arithmetic_asian_params().is_ok());
        assert!(lookback_params().is_ok());
    }

    #[test]
    fn rows_are_internally_consistent() {
        for (p, c) in EUROPEAN_PUTS.iter().zip(EUROPEAN_CALLS.iter()) {
            assert_eq!((p.s0, p.sqrt_v0, p.maturity), (c.s0, c.sqrt_v0, c.maturity));
            // Printed analytical columns satisfy parity to rounding.
            let parity = c.analytical - p.analytical - p.s0 + 100.0 * (-0.05 * p.maturity).exp();
            assert!(parity.abs() < 2e-4, "{p:?}");
        }
        for g in GEOMETRIC_ASIAN_CALLS {
            for (price, (lo, hi)) in g.tree.iter().zip(g.ci) {
                assert!(lo < *price && *price < hi);
            }
        }
        for l in LOOKBACK_CALLS {
            assert!(l.euler_ci.0 < l.euler && l.euler < l.euler_ci.1);
            assert!(l.tree_ci.0 < l.tree && l.tree < l.tree_ci.1);
        }
        for a in ARITHMETIC_ASIAN_CALLS {
            assert!(a.tree_ci.0 < a.tree && a.tree < a.tree_ci.1);
        }
    }
}
