//! Image derivative approximations: explicit FIR central differences and
//! compact implicit schemes.

mod compact;
mod fir;
mod recursive;
mod stack;

pub use compact::{apply_compact, derive_compact_scheme, CompactScheme, MIN_LINE};
pub use fir::{apply_fir, fir_kernels, fir_taps, FirFilter};
pub use recursive::{mirror_period, SymmetricAllPole};
pub use stack::{derivative_stack, DerivativeMode, DerivativeStack};
