//! Exact computation in the arithmetic of F_q[θ]: power sums over monic
//! polynomials and their zeta special polynomials, Dirichlet L-series and
//! Dedekind-style Euler products, Newton polygons over the local field
//! K = F_q((1/θ)) with root extraction and ramification classification,
//! the Carlitz exponential and its period, and the digit-permutation
//! action on Z_p.
//!
//! All arithmetic is exact: finite field elements, dense polynomials, and
//! precision-tracked Laurent series whose windows are explicit. Nothing is
//! floating point; valuations are exact rationals.
//!
//! Heavy enumeration kernels (power sums, L-coefficients, Euler products)
//! run data-parallel under the default `parallel` feature and fall back to
//! sequential loops without it. The sequential path is always available as
//! the reference implementation.

pub mod algebra;
pub mod carlitz;
pub mod error;
pub mod json;
pub mod lfun;
pub mod localfield;
pub mod newton;
pub mod sq;
pub mod zeta;
pub(crate) mod par;

pub use error::{Error, Result};
