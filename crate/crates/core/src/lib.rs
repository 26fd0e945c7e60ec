//! Source recovery from space-time samples of linear dynamical systems.
//!
//! A state evolves as `x(n+1) = A* x(n) + ω` with an unknown constant source
//! `ω` in a known subspace `W`, and sensors `b_l` record `<x(n), b_l>`. The
//! crate decides whether a sensor set determines `ω`, searches for such sets,
//! and reconstructs `ω` from the samples, over exact rationals, Gaussian
//! rationals or floats.

pub mod completeness;
pub mod error;
pub mod exec;
pub mod field;
pub mod instances;
pub mod io;
pub mod krylov;
pub mod poly;
pub mod recovery;

pub use error::{Error, Result};
pub use exec::Execution;
