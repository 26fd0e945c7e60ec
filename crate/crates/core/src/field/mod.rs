//! Field-generic scalars, dense matrices and subspace operations.

pub mod elim;
pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use matrix::{
    axpy, dot, inner, is_zero_vec, render_vec, unit, vadd, vclose, vscale, vsub, Mat,
};
pub use num_rational::BigRational;
pub use num_traits::{One, Zero};
pub use scalar::{FieldKind, Float, GaussianRational, Scalar, ToleranceProfile};
pub use subspace::{
    inverse, kernel, orthogonal_projector, range, rank, solve, solve_vec, SubspaceBasis,
};

/// Exact rational scalar, the default field.
pub type Q = BigRational;
