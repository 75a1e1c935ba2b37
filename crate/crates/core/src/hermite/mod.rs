//! Multivariate Hermite interpolation on rectilinear grids.
//!
//! The interpolant is assembled point by point: each support point `a`
//! carries a separable local basis `H_(a,k)` and a unit lower triangular
//! cross-derivative matrix `Lambda_a`, and
//! `f(x) = sum_a H_a(x)^T Lambda_a^{-1} T_a`. The [`oracle`] module solves the
//! same conditions as one dense system for cross-checking.

mod basis;
mod grid;
mod interpolant;
mod lambda;
mod multi_index;
pub mod oracle;
mod polynomial;

pub use basis::{hermite_basis, univariate_basis, HermiteBasisFn};
pub use grid::{NodeMultiplicity, RectilinearGrid};
pub use interpolant::{interpolate_direct, max_degree, HermiteData, HermiteInterpolant};
pub use lambda::{
    forward_substitution_inverse, lambda_inverse, lambda_matrix, neumann_inverse, LambdaMatrix,
    INVERSE_TOLERANCE,
};
pub use multi_index::{reverse_lex_enumerate, MultiIndex, Multiplicity};
pub use oracle::{oracle_solve, InterpolationSolution};
pub use polynomial::Polynomial;
