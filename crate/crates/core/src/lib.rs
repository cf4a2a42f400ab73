//! Counting, minimizing and certifying monochromatic solutions of linear
//! equations `a_1 x_1 + ... + a_k x_k = 0` under two-colorings of `[n]` and
//! `Z_m`.
//!
//! Solutions are ordered tuples and may repeat entries. Proportions are exact
//! rationals; floating point only appears in the Fourier module and in
//! reports.

pub mod analysis;
pub mod colorings;
pub mod domain;
pub mod equation;
mod error;
pub mod exhaustive;
pub mod fourier;
pub mod search;
pub mod solutions;
pub mod verify;

pub use domain::{Color, Coloring, Domain, DomainKind};
pub use equation::{parse_equation, LinearEquation};
pub use error::{Assumption, Error, ParseError, Result};
pub use exhaustive::{exact_min_mu, ExactMin};
pub use solutions::{count_stats, enumerate_solutions, SolutionStats};
