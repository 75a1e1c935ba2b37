//! Constant convolution kernels for fixed fractional offsets.

mod fused;
mod stencil;
mod tensor;
mod zoom_set;

pub use fused::{fuse_kernel, FusedKernel};
pub use stencil::{select_stencil, FractionalOffset, StencilSpec, StencilWindow};
pub use tensor::{build_kernel, parse_hkt, write_hkt, HermiteKernelTensor, KernelDump};
pub use zoom_set::{build_zoom_set, ZoomKernel, ZoomKernelSet, ZOOM_OFFSETS};
