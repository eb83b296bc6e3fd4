//! Finite-scale arithmetic and lacunary statistical convergence.
//!
//! A sequence sample `x_1..x_T` is compared against its own values at
//! `gcd(m, n)`; the crate measures how often that deviation exceeds a
//! threshold, either over prefixes `1..=t` or over the blocks of a lacunary
//! scheme, and turns the resulting density curves into finite-scale verdicts.

pub mod cli;
pub mod continuity;
pub mod density;
pub mod error;
pub mod exact;
pub mod kernel;
pub mod lacunary;
pub mod theorems;

pub use density::{Axis, ConvergenceVerdict, EpsilonGrid, Outcome, VerdictPolicy};
pub use error::{Error, Result};
pub use kernel::{deviation, gcd_pair, generate, GeneratorSpec, SeqSample, WitnessModulus};
pub use lacunary::{make_scheme, BlockRatio, LacunaryScheme, SchemeSpec};
