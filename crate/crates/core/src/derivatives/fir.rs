use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hermite::MultiIndex;
use crate::imaging::{filter_axis, Axis, BoundaryPolicy, ImagePlane, Kernel2D, Parity};

/// Centered finite-difference filter in correlation form:
/// `f^(d)(p) ~ sum_m taps[m] f(p + m - L/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FirFilter {
    taps: Vec<f64>,
    order: usize,
}

impl FirFilter {
    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn center(&self) -> usize {
        self.taps.len() / 2
    }

    pub fn identity() -> Self {
        Self { taps: vec![1.0], order: 0 }
    }

    pub fn apply(&self, image: &ImagePlane, axis: Axis) -> Result<ImagePlane> {
        filter_axis(image, &self.taps, self.center(), axis, BoundaryPolicy::Mirror, Parity::Even)
    }
}

/// Taps of length `len` (odd) solving `sum_m taps[m] m^p = p! [p = d]` for
/// `p = 0..len-1`, with `m` running over `-len/2..=len/2`.
pub fn fir_taps(order: usize, len: usize) -> Result<FirFilter> {
    if len.is_multiple_of(2) {
        return Err(Error::Config(format!("FIR length must be odd, got {len}")));
    }
    if order >= len {
        return Err(Error::Order { order, length: len });
    }
    let half = (len / 2) as i64;
    let vander = DMatrix::from_fn(len, len, |p, m| ((m as i64 - half) as f64).powi(p as i32));
    let mut rhs = DVector::zeros(len);
    rhs[order] = (1..=order).map(|k| k as f64).product();
    let taps = vander
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular(format!("moment system for d={order}, L={len}")))?;
    let mut taps: Vec<f64> = taps.iter().copied().collect();
    // impose the exact parity symmetry on round-off
    let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
    for i in 0..len / 2 {
        let avg = 0.5 * (taps[len - 1 - i] + sign * taps[i]);
        taps[len - 1 - i] = avg;
        taps[i] = sign * avg;
    }
    if order % 2 == 1 {
        taps[len / 2] = 0.0;
    }
    Ok(FirFilter { taps, order })
}

/// Separable application: `vertical` along rows (y), then `horizontal`
/// along columns (x), mirror boundary.
pub fn apply_fir(image: &ImagePlane, vertical: &FirFilter, horizontal: &FirFilter) -> Result<ImagePlane> {
    let tmp = if vertical.order == 0 && vertical.taps.len() == 1 { image.clone() } else { vertical.apply(image, Axis::Rows)? };
    if horizontal.order == 0 && horizontal.taps.len() == 1 {
        Ok(tmp)
    } else {
        horizontal.apply(&tmp, Axis::Cols)
    }
}

/// 2D correlation kernels producing each derivative plane, in the order of
/// `indices` (axis 0 = rows). Order 0 along an axis is the unit impulse.
pub fn fir_kernels(indices: &[MultiIndex], len: usize) -> Result<Vec<Kernel2D>> {
    indices
        .iter()
        .map(|k| {
            if k.dim() != 2 {
                return Err(Error::Shape(format!("{}-d derivative index for a 2D filter", k.dim())));
            }
            let axis = |d: usize| if d == 0 { Ok(FirFilter::identity()) } else { fir_taps(d, len) };
            let (v, h) = (axis(k[0])?, axis(k[1])?);
            Ok(Kernel2D::outer(v.taps(), h.taps(), (v.center() as isize, h.center() as isize)))
        })
        .collect()
}
