use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::convolve::{filter_axis_any_length, Axis, BoundaryPolicy, Parity};
use super::plane::ImagePlane;

pub const DEFAULT_LOWPASS_TAPS: usize = 13;

/// Symmetric linear-phase low-pass FIR.
#[derive(Clone, Debug, PartialEq)]
pub struct LowPass {
    taps: Vec<f64>,
}

impl LowPass {
    /// Hamming-windowed sinc with cutoff `cutoff` (radians/sample, in
    /// `(0, pi]`), renormalized to unit DC gain.
    pub fn hamming_sinc(len: usize, cutoff: f64) -> Result<Self> {
        if len == 0 || len.is_multiple_of(2) {
            return Err(Error::Config(format!("low-pass length must be odd, got {len}")));
        }
        if !(cutoff > 0.0 && cutoff <= PI) {
            return Err(Error::Config(format!("cutoff {cutoff} outside (0, pi]")));
        }
        let half = (len / 2) as isize;
        let mut taps: Vec<f64> = (-half..=half)
            .map(|m| {
                let ideal = if m == 0 { cutoff / PI } else { (cutoff * m as f64).sin() / (PI * m as f64) };
                let window =
                    if half == 0 { 1.0 } else { 0.54 + 0.46 * (PI * m as f64 / half as f64).cos() };
                ideal * window
            })
            .collect();
        let sum: f64 = taps.iter().sum();
        taps.iter_mut().for_each(|t| *t /= sum);
        Ok(Self { taps })
    }

    /// The anti-aliasing filter for a scale factor of 2 (cutoff `pi / 2`).
    pub fn for_factor_two(len: usize) -> Result<Self> {
        Self::hamming_sinc(len, PI / 2.0)
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    /// Real frequency response (the filter is symmetric) at `omega`.
    pub fn response(&self, omega: f64) -> f64 {
        let half = (self.taps.len() / 2) as isize;
        self.taps.iter().enumerate().map(|(i, t)| t * (omega * (i as isize - half) as f64).cos()).sum()
    }

    pub fn apply(&self, image: &ImagePlane) -> Result<ImagePlane> {
        let center = self.taps.len() / 2;
        let rows = filter_axis_any_length(image, &self.taps, center, Axis::Rows, BoundaryPolicy::Mirror, Parity::Even)?;
        filter_axis_any_length(&rows, &self.taps, center, Axis::Cols, BoundaryPolicy::Mirror, Parity::Even)
    }
}

/// Low-pass then keep rows and columns `0, 2, 4, ...`; the result is
/// `ceil(H/2) x ceil(W/2)`.
pub fn decimate2x(image: &ImagePlane, lowpass: &LowPass) -> Result<ImagePlane> {
    let (h, w) = image.dims();
    if h < 4 || w < 4 {
        return Err(Error::Size(format!("decimation needs at least 4x4, got {h}x{w}")));
    }
    let smooth = lowpass.apply(image)?;
    let (oh, ow) = (h.div_ceil(2), w.div_ceil(2));
    Ok(ImagePlane::from_fn(oh, ow, |r, c| smooth.get(2 * r, 2 * c)))
}
