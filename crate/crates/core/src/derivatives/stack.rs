use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hermite::{reverse_lex_enumerate, MultiIndex, Multiplicity};
use crate::imaging::{Axis, ImagePlane, Parity};

use super::compact::{apply_compact, CompactScheme};
use super::fir::{apply_fir, fir_taps, FirFilter};

/// How image derivatives are approximated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivativeMode {
    /// Central-difference FIR of the given odd length.
    Fir(usize),
    /// Compact implicit scheme, solved recursively.
    Iir,
}

impl fmt::Display for DerivativeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivativeMode::Fir(len) => write!(f, "fir{len}"),
            DerivativeMode::Iir => write!(f, "iir"),
        }
    }
}

impl FromStr for DerivativeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if lower == "iir" {
            return Ok(DerivativeMode::Iir);
        }
        match lower.strip_prefix("fir").and_then(|n| n.parse::<usize>().ok()) {
            Some(len) if len % 2 == 1 && len >= 3 => Ok(DerivativeMode::Fir(len)),
            _ => Err(Error::Config(format!("unknown derivative mode `{s}` (fir3, fir5, fir7, iir)"))),
        }
    }
}

/// Derivative planes of an image in reverse-lex order; plane 0 is the image.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeStack {
    planes: Vec<ImagePlane>,
    indices: Vec<MultiIndex>,
}

impl DerivativeStack {
    pub fn new(planes: Vec<ImagePlane>, indices: Vec<MultiIndex>) -> Result<Self> {
        if planes.is_empty() || planes.len() != indices.len() {
            return Err(Error::Shape(format!("{} planes for {} indices", planes.len(), indices.len())));
        }
        if indices.iter().any(|k| k.dim() != 2) {
            return Err(Error::Shape("derivative indices must be 2D".into()));
        }
        let dims = planes[0].dims();
        if planes.iter().any(|p| p.dims() != dims) {
            return Err(Error::Shape("derivative planes differ in size".into()));
        }
        Ok(Self { planes, indices })
    }

    pub fn single(image: ImagePlane) -> Self {
        Self { planes: vec![image], indices: vec![MultiIndex::zero(2)] }
    }

    pub fn planes(&self) -> &[ImagePlane] {
        &self.planes
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.planes[0].dims()
    }

    /// (row, column) symmetry of each plane across the borders.
    pub fn parities(&self) -> Vec<(Parity, Parity)> {
        self.indices.iter().map(|k| (Parity::of_order(k[0]), Parity::of_order(k[1]))).collect()
    }
}

/// Planes `d^{k0+k1} I / dy^{k0} dx^{k1}` for every `k` admitted by `nu`,
/// mixed partials by applying the per-axis operators in sequence.
pub fn derivative_stack(image: &ImagePlane, nu: &Multiplicity, mode: DerivativeMode) -> Result<DerivativeStack> {
    if nu.dim() != 2 {
        return Err(Error::Shape(format!("{}-d multiplicity for an image", nu.dim())));
    }
    let indices = reverse_lex_enumerate(nu);
    let planes = match mode {
        DerivativeMode::Fir(len) => {
            let filter = |d: usize| if d == 0 { Ok(FirFilter::identity()) } else { fir_taps(d, len) };
            indices
                .iter()
                .map(|k| apply_fir(image, &filter(k[0])?, &filter(k[1])?))
                .collect::<Result<Vec<_>>>()?
        }
        DerivativeMode::Iir => {
            let scheme = super::compact::derive_compact_scheme()?;
            indices.iter().map(|k| compact_mixed(image, &scheme, k)).collect::<Result<Vec<_>>>()?
        }
    };
    DerivativeStack::new(planes, indices)
}

fn compact_mixed(image: &ImagePlane, scheme: &CompactScheme, k: &MultiIndex) -> Result<ImagePlane> {
    let tmp = apply_compact(image, scheme, Axis::Rows, k[0])?;
    apply_compact(&tmp, scheme, Axis::Cols, k[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_names() {
        assert_eq!("fir5".parse::<DerivativeMode>().unwrap(), DerivativeMode::Fir(5));
        assert_eq!("IIR".parse::<DerivativeMode>().unwrap(), DerivativeMode::Iir);
        assert!("fir4".parse::<DerivativeMode>().is_err());
        assert!("spline".parse::<DerivativeMode>().is_err());
        assert_eq!(DerivativeMode::Fir(7).to_string(), "fir7");
    }

    #[test]
    fn nu_one_is_the_image() {
        let img = ImagePlane::from_fn(9, 9, |r, c| (r * c) as f64);
        let s = derivative_stack(&img, &Multiplicity::uniform(2, 1).unwrap(), DerivativeMode::Fir(5)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.planes()[0], img);
    }

    #[test]
    fn bilinear_monomial() {
        // I = x y with x the column and y the row coordinate
        let n = 96;
        let img = ImagePlane::from_fn(n, n, |r, c| (r * c) as f64);
        for (mode, lo) in [(DerivativeMode::Fir(5), 2), (DerivativeMode::Iir, 40)] {
            let s = derivative_stack(&img, &Multiplicity::uniform(2, 2).unwrap(), mode).unwrap();
            let idx: Vec<Vec<usize>> = s.indices().iter().map(|k| k.orders().to_vec()).collect();
            assert_eq!(idx, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
            for r in lo..n - lo {
                for c in lo..n - lo {
                    let expect = [(r * c) as f64, r as f64, c as f64, 1.0];
                    for (p, e) in s.planes().iter().zip(expect) {
                        assert!((p.get(r, c) - e).abs() < 1e-8, "{mode} at ({r},{c}): {} vs {e}", p.get(r, c));
                    }
                }
            }
            assert_eq!(s.parities()[1], (Parity::Even, Parity::Odd));
        }
    }

    #[test]
    fn plane_count() {
        let img = ImagePlane::filled(12, 12, 1.0);
        let s = derivative_stack(&img, &Multiplicity::uniform(2, 3).unwrap(), DerivativeMode::Iir).unwrap();
        assert_eq!(s.len(), 9);
        assert_eq!(s.planes()[0], img);
        assert!(s.planes()[1..].iter().all(|p| p.data().iter().all(|v| v.abs() < 1e-12)));
    }
}
