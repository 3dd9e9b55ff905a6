//! # lorcap
//!
//! Lorentzian polynomials, polynomial capacity, and numerical verification of
//! coefficient lower bounds built on them.
//!
//! | Module | Contents |
//! |---|---|
//! | [`poly`] | sparse homogeneous polynomials over exact rationals |
//! | [`lorentzian`] | M-convexity, quadratic signatures, recursive certification, PF2/ULC |
//! | [`capacity`] | `inf_{x>0} P(x)/x^α` by damped Newton on the log objective |
//! | [`bounds`] | capacity–derivative inequality, coefficient bounds, dominating binomial |
//! | [`prob`] | binomial conditioning, Chernoff shift bound, extremal-event oracle, Rényi divergences |
//! | [`cli`] | command-line front end and report format |
//!
//! Library variable indices are zero-based; the command line uses one-based indices.

pub mod bounds;
pub mod capacity;
pub mod cli;
pub mod lorentzian;
pub mod lp;
pub mod math;
pub mod poly;
pub mod prob;
pub mod report;

pub use capacity::{capacity, CapacityResult, CapacityStatus, DirectionVector, SolverOptions};
pub use lorentzian::{is_lorentzian, Certificate};
pub use poly::{ExponentVector, SparsePolynomial, UnivariateCoefficients};
