//! Named x2 zoom methods behind one interface.

use std::fmt;
use std::str::FromStr;

use crate::baselines::{baseline_zoom_set, bspline3_prefilter, BaselineMethod};
use crate::derivatives::{derivative_stack, DerivativeMode, DerivativeStack};
use crate::error::{Error, Result};
use crate::hermite::Multiplicity;
use crate::imaging::{zoom2x, ImagePlane};
use crate::kernel::{build_zoom_set, ZoomKernelSet};

pub const DEFAULT_STENCIL: usize = 5;
pub const DEFAULT_NU: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Baseline(BaselineMethod),
    Hermite(DerivativeMode),
}

impl Method {
    /// The comparison set: every baseline, then Hermite with FIR3/5/7 and
    /// the compact scheme.
    pub fn standard() -> Vec<Method> {
        let mut all: Vec<Method> = BaselineMethod::ALL.into_iter().map(Method::Baseline).collect();
        all.extend([3, 5, 7].map(|l| Method::Hermite(DerivativeMode::Fir(l))));
        all.push(Method::Hermite(DerivativeMode::Iir));
        all
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Baseline(b) => write!(f, "{b}"),
            Method::Hermite(mode) => write!(f, "hermite-{mode}"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if let Some(mode) = lower.strip_prefix("hermite-") {
            return mode.parse().map(Method::Hermite).map_err(|_| Error::UnknownMethod(s.into()));
        }
        lower.parse().map(Method::Baseline).map_err(|_| Error::UnknownMethod(s.into()))
    }
}

/// A method with its kernels built once, ready to zoom any number of images.
#[derive(Clone, Debug)]
pub struct Interpolator {
    method: Method,
    nu: Multiplicity,
    kernels: ZoomKernelSet,
}

impl Interpolator {
    /// `stencil` and `nu` apply to the Hermite methods only.
    pub fn new(method: Method, stencil: usize, nu: usize) -> Result<Self> {
        if stencil < 2 {
            return Err(Error::Config(format!("stencil size {stencil} < 2")));
        }
        let kernels = match method {
            Method::Baseline(b) => baseline_zoom_set(b)?,
            Method::Hermite(mode) => build_zoom_set(stencil, nu, mode)?,
        };
        Ok(Self { method, nu: Multiplicity::uniform(2, nu)?, kernels })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn kernels(&self) -> &ZoomKernelSet {
        &self.kernels
    }

    /// `2H x 2W` zoom with the input samples kept at even positions.
    pub fn zoom(&self, image: &ImagePlane) -> Result<ImagePlane> {
        let stack = match self.method {
            Method::Baseline(b) if b.needs_prefilter() => DerivativeStack::single(bspline3_prefilter(image)?),
            Method::Hermite(DerivativeMode::Iir) => derivative_stack(image, &self.nu, DerivativeMode::Iir)?,
            _ => DerivativeStack::single(image.clone()),
        };
        zoom2x(image, &stack, &self.kernels)
    }
}
