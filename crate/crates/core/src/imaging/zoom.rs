use crate::derivatives::DerivativeStack;
use crate::error::{Error, Result};
use crate::kernel::ZoomKernelSet;

use super::convolve::{correlate_channels, BoundaryPolicy};
use super::plane::ImagePlane;

/// x2 zoom from three constant kernels: even output samples copy `image`,
/// the other three phases are kernel responses on `stack` (a single plane
/// for fused or baseline kernels, derivative planes for channel kernels).
///
/// `stack` need not hold `image` itself, e.g. spline coefficients.
pub fn zoom2x(image: &ImagePlane, stack: &DerivativeStack, kernels: &ZoomKernelSet) -> Result<ImagePlane> {
    if stack.len() != kernels.channels() {
        return Err(Error::Config(format!(
            "{} input planes for {}-channel zoom kernels",
            stack.len(),
            kernels.channels()
        )));
    }
    if stack.dims() != image.dims() {
        return Err(Error::Shape("stack and image sizes differ".into()));
    }
    let planes: Vec<&ImagePlane> = stack.planes().iter().collect();
    let parities = stack.parities();
    let mut phases = Vec::with_capacity(3);
    for k in kernels.kernels() {
        let ks = k.correlation_kernels()?;
        let refs: Vec<_> = ks.iter().collect();
        phases.push(correlate_channels(&planes, &parities, &refs, BoundaryPolicy::Mirror)?);
    }
    let (h, w) = image.dims();
    let (right, down, rightdown) = (&phases[0], &phases[1], &phases[2]);
    Ok(ImagePlane::from_fn(2 * h, 2 * w, |r, c| {
        let (i, j) = (r / 2, c / 2);
        match (r % 2, c % 2) {
            (0, 0) => image.get(i, j),
            (0, _) => right.get(i, j),
            (_, 0) => down.get(i, j),
            _ => rightdown.get(i, j),
        }
    }))
}
