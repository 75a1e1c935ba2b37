use crate::error::{Error, Result};
use crate::imaging::Kernel2D;

use super::stencil::FractionalOffset;
use super::tensor::HermiteKernelTensor;

/// Single-plane kernel equivalent to filtering the image with each
/// derivative filter and then applying the multi-channel Hermite kernel.
/// Stored in correlation orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct FusedKernel {
    kernel: Kernel2D,
    offset: FractionalOffset,
}

impl FusedKernel {
    /// Wraps a ready single-plane correlation kernel.
    pub fn from_kernel(kernel: Kernel2D, offset: FractionalOffset) -> Self {
        Self { kernel, offset }
    }

    pub fn kernel(&self) -> &Kernel2D {
        &self.kernel
    }

    pub fn offset(&self) -> &FractionalOffset {
        &self.offset
    }

    pub fn sum(&self) -> f64 {
        self.kernel.sum()
    }

    pub fn to_hkt(&self) -> String {
        super::tensor::write_hkt(
            &[self.kernel.rows(), self.kernel.cols()],
            false,
            self.offset.components(),
            &[self.kernel.weights().to_vec()],
        )
    }
}

/// `sum_j G_j * K_j`, with `derivs[j]` the correlation kernel producing the
/// derivative plane of channel `j` (an impulse for channel 0).
pub fn fuse_kernel(k: &HermiteKernelTensor, derivs: &[Kernel2D]) -> Result<FusedKernel> {
    if derivs.len() != k.channels() {
        return Err(Error::Shape(format!("{} derivative filters for {} channels", derivs.len(), k.channels())));
    }
    let k = k.oriented(false);
    let chans: Vec<Kernel2D> = (0..k.channels()).map(|j| k.channel_kernel(j)).collect::<Result<_>>()?;

    // offsets of the first tap from the anchor, per channel after full convolution
    let spans: Vec<((isize, isize), (isize, isize))> = chans
        .iter()
        .zip(derivs)
        .map(|(kj, g)| {
            let lo = (-kj.anchor().0 - g.anchor().0, -kj.anchor().1 - g.anchor().1);
            let hi = (lo.0 + (kj.rows() + g.rows()) as isize - 2, lo.1 + (kj.cols() + g.cols()) as isize - 2);
            (lo, hi)
        })
        .collect();
    let lo = spans.iter().fold((isize::MAX, isize::MAX), |a, s| (a.0.min(s.0 .0), a.1.min(s.0 .1)));
    let hi = spans.iter().fold((isize::MIN, isize::MIN), |a, s| (a.0.max(s.1 .0), a.1.max(s.1 .1)));
    let (rows, cols) = ((hi.0 - lo.0 + 1) as usize, (hi.1 - lo.1 + 1) as usize);

    let mut weights = vec![0.0; rows * cols];
    for ((kj, g), (first, _)) in chans.iter().zip(derivs).zip(&spans) {
        let base = ((first.0 - lo.0) as usize, (first.1 - lo.1) as usize);
        for i0 in 0..kj.rows() {
            for i1 in 0..kj.cols() {
                let kw = kj.at(i0, i1);
                if kw == 0.0 {
                    continue;
                }
                for m0 in 0..g.rows() {
                    for m1 in 0..g.cols() {
                        let r = base.0 + i0 + m0;
                        let c = base.1 + i1 + m1;
                        weights[r * cols + c] += kw * g.at(m0, m1);
                    }
                }
            }
        }
    }
    let kernel = Kernel2D::new(rows, cols, weights, (-lo.0, -lo.1))?;
    Ok(FusedKernel { kernel, offset: k.offset().clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::Multiplicity;
    use crate::kernel::{build_kernel, StencilSpec};

    #[test]
    fn single_channel_is_unchanged() {
        let k = build_kernel(
            &FractionalOffset::new(vec![0.5, 0.0]).unwrap(),
            &StencilSpec::uniform(2, 4).unwrap(),
            &Multiplicity::uniform(2, 1).unwrap(),
        )
        .unwrap();
        let fused = fuse_kernel(&k, &[Kernel2D::impulse()]).unwrap();
        assert_eq!(fused.kernel(), &k.channel_kernel(0).unwrap());
    }

    #[test]
    fn channel_count_checked() {
        let k = build_kernel(
            &FractionalOffset::new(vec![0.5, 0.5]).unwrap(),
            &StencilSpec::uniform(2, 3).unwrap(),
            &Multiplicity::uniform(2, 2).unwrap(),
        )
        .unwrap();
        assert!(matches!(fuse_kernel(&k, &[Kernel2D::impulse()]), Err(Error::Shape(_))));
    }

    #[test]
    fn extent_is_full_convolution() {
        let k = build_kernel(
            &FractionalOffset::new(vec![0.5, 0.5]).unwrap(),
            &StencilSpec::uniform(2, 5).unwrap(),
            &Multiplicity::uniform(2, 2).unwrap(),
        )
        .unwrap();
        let d = [0.0, -0.5, 0.0, 0.5, 0.0];
        let id = [0.0, 0.0, 1.0, 0.0, 0.0];
        let g = vec![
            Kernel2D::impulse(),
            Kernel2D::outer(&[1.0], &d, (0, 2)),
            Kernel2D::outer(&d, &[1.0], (2, 0)),
            Kernel2D::outer(&d, &d, (2, 2)),
        ];
        let fused = fuse_kernel(&k, &g).unwrap();
        assert_eq!((fused.kernel().rows(), fused.kernel().cols()), (9, 9));
        // id-padded filters of equal size give the same result
        let g_padded: Vec<Kernel2D> = vec![
            Kernel2D::outer(&id, &id, (2, 2)),
            Kernel2D::outer(&id, &d, (2, 2)),
            Kernel2D::outer(&d, &id, (2, 2)),
            Kernel2D::outer(&d, &d, (2, 2)),
        ];
        let padded = fuse_kernel(&k, &g_padded).unwrap();
        assert_eq!(padded.kernel().anchor(), fused.kernel().anchor());
        assert!(padded.kernel().weights().iter().zip(fused.kernel().weights()).all(|(a, b)| (a - b).abs() < 1e-15));
        assert!((fused.sum() - 1.0).abs() < 1e-12);
    }
}
