use crate::derivatives::{fir_kernels, DerivativeMode};
use crate::error::{Error, Result};
use crate::hermite::Multiplicity;
use crate::imaging::Kernel2D;

use super::fused::{fuse_kernel, FusedKernel};
use super::stencil::{FractionalOffset, StencilSpec};
use super::tensor::{build_kernel, HermiteKernelTensor};

/// (row, col) offsets of the right, down and right-down samples of a x2 zoom.
pub const ZOOM_OFFSETS: [[f64; 2]; 3] = [[0.0, 0.5], [0.5, 0.0], [0.5, 0.5]];

/// One of the three zoom kernels.
#[derive(Clone, Debug, PartialEq)]
pub enum ZoomKernel {
    /// Applied to a stack of derivative planes.
    Channels(HermiteKernelTensor),
    /// Applied to a single plane.
    Plane(FusedKernel),
}

impl ZoomKernel {
    pub fn channels(&self) -> usize {
        match self {
            ZoomKernel::Channels(t) => t.channels(),
            ZoomKernel::Plane(_) => 1,
        }
    }

    pub fn offset(&self) -> &FractionalOffset {
        match self {
            ZoomKernel::Channels(t) => t.offset(),
            ZoomKernel::Plane(f) => f.offset(),
        }
    }

    /// Correlation kernels, one per channel.
    pub fn correlation_kernels(&self) -> Result<Vec<Kernel2D>> {
        match self {
            ZoomKernel::Channels(t) => {
                let t = t.oriented(false);
                (0..t.channels()).map(|j| t.channel_kernel(j)).collect()
            }
            ZoomKernel::Plane(f) => Ok(vec![f.kernel().clone()]),
        }
    }

    pub fn to_hkt(&self) -> String {
        match self {
            ZoomKernel::Channels(t) => t.to_hkt(),
            ZoomKernel::Plane(f) => f.to_hkt(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZoomKernelSet {
    pub right: ZoomKernel,
    pub down: ZoomKernel,
    pub rightdown: ZoomKernel,
}

impl ZoomKernelSet {
    /// Checks the offsets and that all three kernels take the same channels.
    pub fn new(right: ZoomKernel, down: ZoomKernel, rightdown: ZoomKernel) -> Result<Self> {
        let set = Self { right, down, rightdown };
        for (k, expect) in set.kernels().iter().zip(ZOOM_OFFSETS) {
            if k.offset().components() != expect {
                return Err(Error::Config(format!(
                    "zoom kernel built for offset {:?}, expected {expect:?}",
                    k.offset().components()
                )));
            }
        }
        let c = set.right.channels();
        if set.down.channels() != c || set.rightdown.channels() != c {
            return Err(Error::Config("zoom kernels disagree on channel count".into()));
        }
        Ok(set)
    }

    pub fn kernels(&self) -> [&ZoomKernel; 3] {
        [&self.right, &self.down, &self.rightdown]
    }

    pub fn channels(&self) -> usize {
        self.right.channels()
    }
}

/// Hermite zoom kernels for a square stencil of `size` and uniform
/// multiplicity `nu`. FIR modes fuse the derivative filters into single
/// planes; the recursive mode keeps one kernel channel per derivative plane.
pub fn build_zoom_set(size: usize, nu: usize, mode: DerivativeMode) -> Result<ZoomKernelSet> {
    let stencil = StencilSpec::uniform(2, size)?;
    let nu = Multiplicity::uniform(2, nu)?;
    let mut out = Vec::with_capacity(3);
    for off in ZOOM_OFFSETS {
        let tensor = build_kernel(&FractionalOffset::new(off.to_vec())?, &stencil, &nu)?;
        out.push(match mode {
            DerivativeMode::Fir(len) => {
                let g = fir_kernels(tensor.indices(), len)?;
                ZoomKernel::Plane(fuse_kernel(&tensor, &g)?)
            }
            DerivativeMode::Iir => ZoomKernel::Channels(tensor),
        });
    }
    let rightdown = out.pop().expect("three kernels");
    let down = out.pop().expect("three kernels");
    let right = out.pop().expect("three kernels");
    ZoomKernelSet::new(right, down, rightdown)
}
