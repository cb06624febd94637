//! Exact and numerical exploration of the Möbius–ν step function.
//!
//! ν(x) = ⌊x⌋ mod 2 is the indicator of the intervals [2k−1, 2k). Its Mellin
//! transform is η(s)/s, and convolving it with the Möbius function gives
//!
//! ```text
//! f_n(x) = Σ_{k ≤ n} μ(k) ν(x/k),
//! ```
//!
//! a step function with integer jumps whose full series equals 0, 1 and −1
//! on [0, 1), [1, 2) and [2, ∞). This crate computes every such object
//! exactly where it is an integer and with first-order error bounds where it
//! is complex-valued, and checks the identities and inequalities that
//! connect them.
//!
//! * [`arith`]: Möbius sieve, Mertens function, ν, absolute partial sums.
//! * [`stepfn`]: point values, profiles and windowed suprema of f_n.
//! * [`analytic`]: η(s) two ways, partial Dirichlet sums, the truncated
//!   integral identity and its residual bound.
//! * [`experiments`]: verification sweeps and growth studies producing
//!   CSV/JSON reports.
//! * [`cli`]: the `mobius-nu` command-line front end.
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability.

pub mod analytic;
pub mod arith;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod stepfn;
pub mod sum;

pub use analytic::{ComplexPoint, EtaEval, ResidualRecord};
pub use arith::{mobius_sieve, MobiusTable, NuValue};
pub use error::{Error, Result};
pub use experiments::{GrowthFit, StudyReport};
pub use stepfn::{StepProfile, SupScanResult};
