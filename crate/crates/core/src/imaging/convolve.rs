//! 2D correlation/convolution with mirror or replicate borders.
//!
//! Mirror extension is whole-sample symmetric (`-1 -> 1`, `n -> n - 2`) and
//! periodic with period `2n - 2`, so kernels of any reach are well defined.
//! Planes holding odd-order derivatives of a mirrored image are themselves
//! antisymmetric about the borders; [`Parity::Odd`] extends them that way.

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::plane::ImagePlane;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundaryPolicy {
    #[default]
    Mirror,
    Replicate,
}

/// Symmetry of a plane across the image borders under mirror extension.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn of_order(order: usize) -> Self {
        if order % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Maps a possibly out-of-range index to `(index, sign)`.
#[inline]
pub fn extend_index(i: isize, n: usize, boundary: BoundaryPolicy, parity: Parity) -> (usize, f64) {
    match boundary {
        BoundaryPolicy::Replicate => (i.clamp(0, n as isize - 1) as usize, 1.0),
        BoundaryPolicy::Mirror => {
            if n == 1 {
                return (0, 1.0);
            }
            let period = 2 * (n as isize - 1);
            let r = i.rem_euclid(period);
            if r < n as isize {
                (r as usize, 1.0)
            } else {
                let sign = if parity == Parity::Odd { -1.0 } else { 1.0 };
                ((period - r) as usize, sign)
            }
        }
    }
}

/// Dense 2D kernel with an anchor: the tap that lines up with the output
/// sample. Orientation (correlation vs convolution) is chosen by the
/// function it is passed to.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel2D {
    rows: usize,
    cols: usize,
    weights: Vec<f64>,
    anchor: (isize, isize),
}

impl Kernel2D {
    pub fn new(rows: usize, cols: usize, weights: Vec<f64>, anchor: (isize, isize)) -> Result<Self> {
        if rows == 0 || cols == 0 || weights.len() != rows * cols {
            return Err(Error::Shape(format!("{} weights for a {rows}x{cols} kernel", weights.len())));
        }
        Ok(Self { rows, cols, weights, anchor })
    }

    /// Odd-sized kernel anchored at its center.
    pub fn centered(rows: usize, cols: usize, weights: Vec<f64>) -> Result<Self> {
        if rows.is_multiple_of(2) || cols.is_multiple_of(2) {
            return Err(Error::Shape(format!("centered kernel needs odd extent, got {rows}x{cols}")));
        }
        Self::new(rows, cols, weights, ((rows / 2) as isize, (cols / 2) as isize))
    }

    pub fn impulse() -> Self {
        Self { rows: 1, cols: 1, weights: vec![1.0], anchor: (0, 0) }
    }

    /// `column[i] * row[j]`, i.e. `column` runs down the rows.
    pub fn outer(column: &[f64], row: &[f64], anchor: (isize, isize)) -> Self {
        let weights = column.iter().flat_map(|a| row.iter().map(move |b| a * b)).collect();
        Self { rows: column.len(), cols: row.len(), weights, anchor }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn anchor(&self) -> (isize, isize) {
        self.anchor
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.weights[r * self.cols + c]
    }

    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Point reflection through the anchor; turns a correlation kernel into
    /// the equivalent convolution kernel and back.
    pub fn flipped(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            weights: self.weights.iter().rev().copied().collect(),
            anchor: (self.rows as isize - 1 - self.anchor.0, self.cols as isize - 1 - self.anchor.1),
        }
    }

    pub fn transposed(&self) -> Self {
        let mut weights = Vec::with_capacity(self.weights.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                weights.push(self.at(r, c));
            }
        }
        Self { rows: self.cols, cols: self.rows, weights, anchor: (self.anchor.1, self.anchor.0) }
    }
}

fn check_extent(image: &ImagePlane, kernel: &Kernel2D) -> Result<()> {
    if kernel.rows > 2 * image.height() + 1 || kernel.cols > 2 * image.width() + 1 {
        return Err(Error::Size(format!(
            "{}x{} kernel exceeds the padded {}x{} image",
            kernel.rows,
            kernel.cols,
            image.height(),
            image.width()
        )));
    }
    Ok(())
}

/// `out(p) = sum_i K[i] I(p + i - anchor)`.
pub fn correlate2d(image: &ImagePlane, kernel: &Kernel2D, boundary: BoundaryPolicy) -> Result<ImagePlane> {
    correlate_channels(&[image], &[(Parity::Even, Parity::Even)], &[kernel], boundary)
}

/// `out(p) = sum_i K[i] I(p - i + anchor)`.
pub fn convolve2d(image: &ImagePlane, kernel: &Kernel2D, boundary: BoundaryPolicy) -> Result<ImagePlane> {
    correlate2d(image, &kernel.flipped(), boundary)
}

/// Sum over channels of `correlate2d(planes[j], kernels[j])`, each plane
/// extended across the borders with its own (row, column) parity.
pub fn correlate_channels(
    planes: &[&ImagePlane],
    parities: &[(Parity, Parity)],
    kernels: &[&Kernel2D],
    boundary: BoundaryPolicy,
) -> Result<ImagePlane> {
    if planes.is_empty() || planes.len() != kernels.len() || planes.len() != parities.len() {
        return Err(Error::Shape(format!(
            "{} planes, {} parities and {} kernels",
            planes.len(),
            parities.len(),
            kernels.len()
        )));
    }
    let (h, w) = planes[0].dims();
    if planes.iter().any(|p| p.dims() != (h, w)) {
        return Err(Error::Shape("channel planes differ in size".into()));
    }
    for (p, k) in planes.iter().zip(kernels) {
        check_extent(p, k)?;
    }

    // per channel and kernel column: source column index and sign for every output column
    let col_maps: Vec<Vec<Vec<(usize, f64)>>> = kernels
        .iter()
        .zip(parities)
        .map(|(k, &(_, col_parity))| {
            (0..k.cols)
                .map(|j| {
                    (0..w)
                        .map(|c| extend_index(c as isize + j as isize - k.anchor.1, w, boundary, col_parity))
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut out = vec![0.0; h * w];
    out.par_chunks_mut(w).enumerate().for_each(|(r, out_row)| {
        for (ch, kernel) in kernels.iter().enumerate() {
            let plane = planes[ch];
            let row_parity = parities[ch].0;
            for i in 0..kernel.rows {
                let (src_r, row_sign) =
                    extend_index(r as isize + i as isize - kernel.anchor.0, h, boundary, row_parity);
                let src = plane.row(src_r);
                for (j, map) in col_maps[ch].iter().enumerate().take(kernel.cols) {
                    let wgt = kernel.at(i, j) * row_sign;
                    if wgt == 0.0 {
                        continue;
                    }
                    for (o, &(sc, sign)) in out_row.iter_mut().zip(map) {
                        *o += wgt * sign * src[sc];
                    }
                }
            }
        }
    });
    ImagePlane::new(h, w, out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Along the vertical direction (varying row index).
    Rows,
    /// Along the horizontal direction (varying column index).
    Cols,
}

/// 1D correlation along one axis: `out(p) = sum_m taps[m] I(p + m - center)`.
pub fn filter_axis(
    image: &ImagePlane,
    taps: &[f64],
    center: usize,
    axis: Axis,
    boundary: BoundaryPolicy,
    parity: Parity,
) -> Result<ImagePlane> {
    let (h, w) = image.dims();
    let n = match axis {
        Axis::Rows => h,
        Axis::Cols => w,
    };
    if taps.len() > 2 * n + 1 {
        return Err(Error::Size(format!("{}-tap filter on an axis of {n} samples", taps.len())));
    }
    filter_axis_any_length(image, taps, center, axis, boundary, parity)
}

/// [`filter_axis`] without the reach check; mirror extension is periodic so
/// any filter length is well defined.
pub(crate) fn filter_axis_any_length(
    image: &ImagePlane,
    taps: &[f64],
    center: usize,
    axis: Axis,
    boundary: BoundaryPolicy,
    parity: Parity,
) -> Result<ImagePlane> {
    let (h, w) = image.dims();
    let n = match axis {
        Axis::Rows => h,
        Axis::Cols => w,
    };
    let map: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|p| {
            (0..taps.len())
                .map(|m| extend_index(p as isize + m as isize - center as isize, n, boundary, parity))
                .collect()
        })
        .collect();
    let mut out = vec![0.0; h * w];
    match axis {
        Axis::Cols => out.par_chunks_mut(w).enumerate().for_each(|(r, row)| {
            let src = image.row(r);
            for (c, o) in row.iter_mut().enumerate() {
                *o = taps.iter().zip(&map[c]).map(|(t, &(i, s))| t * s * src[i]).sum();
            }
        }),
        Axis::Rows => out.par_chunks_mut(w).enumerate().for_each(|(r, row)| {
            for (m, &(sr, s)) in map[r].iter().enumerate() {
                let t = taps[m] * s;
                if t == 0.0 {
                    continue;
                }
                for (o, &v) in row.iter_mut().zip(image.row(sr)) {
                    *o += t * v;
                }
            }
        }),
    }
    ImagePlane::new(h, w, out)
}
