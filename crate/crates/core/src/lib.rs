//! Certified bounds on the Lyapunov exponent of linear switching systems
//! whose modes must each run for a duration inside a segment `[m_j, M_j]`.
//!
//! The crate is organised bottom-up:
//!
//! - [`numlin`]: dense matrix kernel (matrix exponential, spectra,
//!   common-invariant-subspace test).
//! - [`lpcore`]: Minkowski functionals of symmetrized and positive polytopes,
//!   computed by a small dense simplex solver.
//! - [`sysmodel`]: restricted systems, switching laws, products and per-law
//!   lower bounds.
//! - [`engine`]: the multi-polytope construction that yields either a
//!   lower-bound certificate or a polyhedral Lyapunov multinorm, plus the
//!   bisection driver computing an interval for the exponent.
//! - [`cuttail`]: cut-tail points, used to shrink or drop upper bounds `M_j`.
//! - [`oracle`]: brute-force enumeration of periodic laws, random growth
//!   probes and reference fixtures.
//! - [`cli`]: the command-line front end used by the `switchbound` binary.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod cli;
pub mod cuttail;
pub mod engine;
mod error;
pub mod lpcore;
pub mod numlin;
pub mod oracle;
pub mod sysmodel;

pub use error::{Error, Result};
pub use numlin::{Matrix, Vector};
