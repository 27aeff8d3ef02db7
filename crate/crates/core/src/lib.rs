//! Exact statistics of runs of ones in binary strings.
//!
//! The number of runs of length `i` over all `2^n` binary strings is computed
//! by closed form, two recursions, a composition sum, and exhaustive
//! enumeration; the composition bijections are built explicitly, and the
//! probabilistic expectations are checked exactly and by seeded sampling.

pub mod bijection;
pub mod bits;
pub mod cli;
pub mod closedform;
pub mod count;
pub mod enumeration;
pub mod error;
pub mod sequences;
pub mod stochastic;

pub use bits::{extract_runs, index_to_string, run_start_positions, BitString, RunSpectrum};
pub use closedform::{ExactRational, RunCountQuery};
pub use count::BigCount;
pub use error::{Error, Result};
