//! Classical interpolators expressed as the same three x2 zoom kernels.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::derivatives::{mirror_period, SymmetricAllPole};
use crate::error::{Error, Result};
use crate::imaging::{ImagePlane, Kernel2D};
use crate::kernel::{select_stencil, FractionalOffset, FusedKernel, ZoomKernel, ZoomKernelSet, ZOOM_OFFSETS};

/// Keys cubic convolution parameter.
pub const KEYS_A: f64 = -0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaselineMethod {
    Nearest,
    Bilinear,
    Bicubic,
    BSpline3,
}

impl BaselineMethod {
    pub const ALL: [BaselineMethod; 4] =
        [BaselineMethod::Nearest, BaselineMethod::Bilinear, BaselineMethod::Bicubic, BaselineMethod::BSpline3];

    pub fn name(self) -> &'static str {
        match self {
            BaselineMethod::Nearest => "nearest",
            BaselineMethod::Bilinear => "bilinear",
            BaselineMethod::Bicubic => "bicubic",
            BaselineMethod::BSpline3 => "bspline3",
        }
    }

    /// Number of taps per axis.
    pub fn support(self) -> usize {
        match self {
            BaselineMethod::Nearest => 1,
            BaselineMethod::Bilinear => 2,
            BaselineMethod::Bicubic | BaselineMethod::BSpline3 => 4,
        }
    }

    /// Whether samples must be turned into spline coefficients first.
    pub fn needs_prefilter(self) -> bool {
        self == BaselineMethod::BSpline3
    }

    /// The generating function evaluated at distance `x` from a node.
    pub fn generator(self, x: f64) -> f64 {
        let t = x.abs();
        match self {
            BaselineMethod::Nearest => {
                if t < 0.5 {
                    1.0
                } else {
                    0.0
                }
            }
            BaselineMethod::Bilinear => (1.0 - t).max(0.0),
            BaselineMethod::Bicubic => {
                let a = KEYS_A;
                if t <= 1.0 {
                    ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0
                } else if t < 2.0 {
                    ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a
                } else {
                    0.0
                }
            }
            BaselineMethod::BSpline3 => {
                if t < 1.0 {
                    2.0 / 3.0 - t * t + 0.5 * t * t * t
                } else if t < 2.0 {
                    (2.0 - t).powi(3) / 6.0
                } else {
                    0.0
                }
            }
        }
    }

    /// First node of the window and its weights for fractional position `q`.
    pub fn weights_1d(self, q: f64) -> (i64, Vec<f64>) {
        let window = select_stencil(q, self.support());
        let weights = if self == BaselineMethod::Nearest {
            vec![1.0]
        } else {
            window.indices().iter().map(|&node| self.generator(q - node as f64)).collect()
        };
        (window.start, weights)
    }
}

impl fmt::Display for BaselineMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaselineMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|m| m.name().eq_ignore_ascii_case(s)).ok_or_else(|| Error::UnknownMethod(s.into()))
    }
}

/// Separable correlation kernel for the (row, col) fractional offset.
pub fn baseline_kernel(method: BaselineMethod, offset: &FractionalOffset) -> Result<Kernel2D> {
    let [fr, fc] = offset.components() else {
        return Err(Error::Shape(format!("{}-d offset for a 2D kernel", offset.dim())));
    };
    let (r0, col) = method.weights_1d(*fr);
    let (c0, row) = method.weights_1d(*fc);
    Ok(Kernel2D::outer(&col, &row, (-r0 as isize, -c0 as isize)))
}

pub fn baseline_zoom_set(method: BaselineMethod) -> Result<ZoomKernelSet> {
    let mut ks = Vec::with_capacity(3);
    for off in ZOOM_OFFSETS {
        let offset = FractionalOffset::new(off.to_vec())?;
        ks.push(ZoomKernel::Plane(FusedKernel::from_kernel(baseline_kernel(method, &offset)?, offset)));
    }
    let rightdown = ks.pop().expect("three kernels");
    let down = ks.pop().expect("three kernels");
    let right = ks.pop().expect("three kernels");
    ZoomKernelSet::new(right, down, rightdown)
}

/// Cubic B-spline interpolation coefficients: inverse of the sampled
/// generator `[1/6, 2/3, 1/6]` along rows, then columns, mirror boundary.
pub fn bspline3_prefilter(image: &ImagePlane) -> Result<ImagePlane> {
    let inv = SymmetricAllPole::from_symmetric_taps(&[1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0])?;
    let filter_rows = |img: &ImagePlane| -> Result<ImagePlane> {
        let w = img.width();
        let data: Vec<f64> = img
            .data()
            .par_chunks(w)
            .flat_map_iter(|line| {
                let mut ext = mirror_period(line);
                inv.apply_periodic(&mut ext);
                ext.truncate(w);
                ext
            })
            .collect();
        ImagePlane::new(img.height(), w, data)
    };
    let along_x = filter_rows(image)?;
    Ok(filter_rows(&along_x.transpose())?.transpose())
}
