//! Image planes, border handling, convolution, x2 zoom and decimation.

mod convolve;
mod decimate;
mod io;
mod plane;
mod zoom;

pub use convolve::{
    convolve2d, correlate2d, correlate_channels, extend_index, filter_axis, Axis, BoundaryPolicy, Kernel2D, Parity,
};
pub use decimate::{decimate2x, LowPass, DEFAULT_LOWPASS_TAPS};
pub use io::{decode_pgm, encode_pgm, load_image, load_pgm, load_png, save_image, save_pgm, save_png, LUMA_WEIGHTS};
pub use plane::{quantize_sample, ImagePlane};
pub use zoom::zoom2x;
