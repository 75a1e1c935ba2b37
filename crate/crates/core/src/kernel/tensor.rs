use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hermite::{
    reverse_lex_enumerate, HermiteInterpolant, MultiIndex, Multiplicity, NodeMultiplicity, RectilinearGrid,
};
use crate::imaging::Kernel2D;

use super::stencil::{select_stencil, FractionalOffset, StencilSpec};

/// Weights of the local Hermite interpolant at a fixed fractional offset,
/// laid out on the integer stencil: one spatial tensor per channel, channels
/// in reverse-lex order of the derivative index.
///
/// Spatial position `i` (per axis) corresponds to the node `origin + i`
/// relative to the pixel the offset is measured from. In the flipped
/// orientation the spatial axes are reversed.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteKernelTensor {
    shape: Vec<usize>,
    origin: Vec<i64>,
    offset: FractionalOffset,
    nu: Multiplicity,
    indices: Vec<MultiIndex>,
    flipped: bool,
    // [spatial (row-major)][channel]
    weights: Vec<f64>,
}

pub fn build_kernel(offset: &FractionalOffset, size: &StencilSpec, nu: &Multiplicity) -> Result<HermiteKernelTensor> {
    let n = offset.dim();
    if size.dim() != n || nu.dim() != n {
        return Err(Error::Shape(format!(
            "offset has {n} axes, stencil {} and multiplicity {}",
            size.dim(),
            nu.dim()
        )));
    }
    let windows: Vec<_> =
        offset.components().iter().zip(size.sizes()).map(|(&q, &len)| select_stencil(q, len)).collect();
    let origin: Vec<i64> = windows.iter().map(|w| w.start).collect();
    let grid = RectilinearGrid::integer(&origin, size.sizes())?;
    let nodes = NodeMultiplicity::constant(&grid, nu)?;
    let interpolant = HermiteInterpolant::new(&grid, &nodes)?;
    let weights: Vec<f64> = interpolant.weights(offset.components()).into_iter().flatten().collect();
    Ok(HermiteKernelTensor {
        shape: size.sizes().to_vec(),
        origin,
        offset: offset.clone(),
        nu: nu.clone(),
        indices: reverse_lex_enumerate(nu),
        flipped: false,
        weights,
    })
}

impl HermiteKernelTensor {
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn channels(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn offset(&self) -> &FractionalOffset {
        &self.offset
    }

    pub fn multiplicity(&self) -> &Multiplicity {
        &self.nu
    }

    pub fn is_flipped(&self) -> bool {
        self.flipped
    }

    /// Node coordinate of spatial index 0 in the unflipped orientation.
    pub fn origin(&self) -> &[i64] {
        &self.origin
    }

    fn spatial_len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn at(&self, spatial: usize, channel: usize) -> f64 {
        self.weights[spatial * self.channels() + channel]
    }

    /// Row-major spatial weights of one channel.
    pub fn channel(&self, j: usize) -> Vec<f64> {
        (0..self.spatial_len()).map(|s| self.at(s, j)).collect()
    }

    pub fn channel_sum(&self, j: usize) -> f64 {
        (0..self.spatial_len()).map(|s| self.at(s, j)).sum()
    }

    /// The same kernel with every spatial axis reversed.
    pub fn to_flipped(&self) -> Self {
        let c = self.channels();
        let total = self.spatial_len();
        let mut weights = vec![0.0; self.weights.len()];
        // reversing every axis of a row-major tensor reverses the flat order
        for s in 0..total {
            let dst = total - 1 - s;
            weights[dst * c..(dst + 1) * c].copy_from_slice(&self.weights[s * c..(s + 1) * c]);
        }
        Self { weights, flipped: !self.flipped, ..self.clone() }
    }

    pub fn oriented(&self, flipped: bool) -> Self {
        if self.flipped == flipped {
            self.clone()
        } else {
            self.to_flipped()
        }
    }

    /// Channel `j` of a 2D tensor as a [`Kernel2D`] whose anchor is the
    /// pixel the offset is measured from. Unflipped tensors give
    /// correlation kernels, flipped ones convolution kernels.
    pub fn channel_kernel(&self, j: usize) -> Result<Kernel2D> {
        if self.dim() != 2 {
            return Err(Error::Shape(format!("{}-d tensor has no 2D channel kernel", self.dim())));
        }
        let (rows, cols) = (self.shape[0], self.shape[1]);
        let anchor = if self.flipped {
            (self.origin[0] as isize + rows as isize - 1, self.origin[1] as isize + cols as isize - 1)
        } else {
            (-self.origin[0] as isize, -self.origin[1] as isize)
        };
        Kernel2D::new(rows, cols, self.channel(j), anchor)
    }

    pub fn to_hkt(&self) -> String {
        let channels: Vec<Vec<f64>> = (0..self.channels()).map(|j| self.channel(j)).collect();
        write_hkt(&self.shape, self.flipped, self.offset.components(), &channels)
    }
}

/// Parsed contents of an HKT kernel dump.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelDump {
    pub shape: Vec<usize>,
    pub flipped: bool,
    pub offset: Vec<f64>,
    pub channels: Vec<Vec<f64>>,
}

/// `HKT <n> <N_1..N_n> <c> <flipped> <offset..>`, then one block per channel
/// with one line per run along the last axis, blocks separated by a blank
/// line. Weights use 17 significant digits so they round-trip exactly.
pub fn write_hkt(shape: &[usize], flipped: bool, offset: &[f64], channels: &[Vec<f64>]) -> String {
    let mut out = String::new();
    let _ = write!(out, "HKT {}", shape.len());
    for n in shape {
        let _ = write!(out, " {n}");
    }
    let _ = write!(out, " {} {}", channels.len(), u8::from(flipped));
    for o in offset {
        let _ = write!(out, " {o}");
    }
    out.push('\n');
    let line = *shape.last().unwrap_or(&1);
    for (j, ch) in channels.iter().enumerate() {
        if j > 0 {
            out.push('\n');
        }
        for run in ch.chunks(line) {
            let cells: Vec<String> = run.iter().map(|w| format!("{w:.16e}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn parse_hkt(text: &str) -> Result<KernelDump> {
    let bad = |why: String| Error::Config(format!("malformed HKT dump: {why}"));
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or_else(|| bad("empty".into()))?.split_whitespace().collect();
    if header.first() != Some(&"HKT") {
        return Err(bad("missing HKT magic".into()));
    }
    let int = |s: Option<&&str>| -> Result<usize> {
        s.ok_or_else(|| bad("short header".into()))?.parse().map_err(|e| bad(format!("{e}")))
    };
    let n = int(header.get(1))?;
    let shape = (0..n).map(|i| int(header.get(2 + i))).collect::<Result<Vec<_>>>()?;
    let c = int(header.get(2 + n))?;
    let flipped = match int(header.get(3 + n))? {
        0 => false,
        1 => true,
        f => return Err(bad(format!("flipped flag {f}"))),
    };
    let offset = header[(4 + n).min(header.len())..]
        .iter()
        .map(|s| s.parse::<f64>().map_err(|e| bad(format!("{e}"))))
        .collect::<Result<Vec<_>>>()?;
    if offset.len() != n {
        return Err(bad(format!("{} offset components for {n} axes", offset.len())));
    }
    let values = lines
        .flat_map(str::split_whitespace)
        .map(|s| s.parse::<f64>().map_err(|e| bad(format!("{e}"))))
        .collect::<Result<Vec<_>>>()?;
    let per: usize = shape.iter().product();
    if values.len() != per * c {
        return Err(bad(format!("{} weights, expected {}", values.len(), per * c)));
    }
    let channels = values.chunks(per.max(1)).map(<[f64]>::to_vec).collect();
    Ok(KernelDump { shape, flipped, offset, channels })
}
