//! Hermite spline interpolation kernels for image zooming.
//!
//! The crate is split along the processing chain:
//!
//! - [`hermite`]: the closed-form multivariate Hermite interpolant and a
//!   dense-system oracle.
//! - [`kernel`]: constant convolution kernels for a fixed fractional offset,
//!   optionally fused with FIR derivative filters.
//! - [`derivatives`]: FIR and compact (recursive) image derivative filters.
//! - [`imaging`]: image planes, convolution, x2 zoom, decimation and file I/O.
//! - [`baselines`]: nearest, bilinear, bicubic and cubic B-spline kernels.
//! - [`methods`]: every zoom method behind one [`methods::Interpolator`].
//! - [`metrics`]: PSNR and SSIM.
//! - [`eval`]: the cascaded decimate/zoom evaluation protocol and its CSV report.

pub mod baselines;
pub mod derivatives;
pub mod error;
pub mod eval;
pub mod hermite;
pub mod imaging;
pub mod kernel;
pub mod methods;
pub mod metrics;

pub use error::{Error, Result};
