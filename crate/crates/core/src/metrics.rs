//! Image quality between a reference and a reconstruction. Both images are
//! quantized to 8 bits first, exactly as they would be stored.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::imaging::ImagePlane;

pub const PEAK: f64 = 255.0;
pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QualityScore {
    /// `f64::INFINITY` for identical images.
    pub psnr: f64,
    pub ssim: f64,
}

fn check_dims(a: &ImagePlane, b: &ImagePlane) -> Result<()> {
    if a.dims() != b.dims() {
        return Err(Error::Shape(format!("comparing {:?} with {:?}", a.dims(), b.dims())));
    }
    Ok(())
}

pub fn psnr(reference: &ImagePlane, test: &ImagePlane) -> Result<f64> {
    check_dims(reference, test)?;
    let (a, b) = (reference.quantized(), test.quantized());
    let sse: f64 = a.data().iter().zip(b.data()).map(|(x, y)| (x - y) * (x - y)).sum();
    let mse = sse / a.data().len() as f64;
    Ok(if mse == 0.0 { f64::INFINITY } else { 10.0 * (PEAK * PEAK / mse).log10() })
}

fn gaussian_window() -> Vec<f64> {
    let half = (SSIM_WINDOW / 2) as f64;
    let g: Vec<f64> =
        (0..SSIM_WINDOW).map(|i| (-(i as f64 - half).powi(2) / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp()).collect();
    let s: f64 = g.iter().sum();
    g.into_iter().map(|v| v / s).collect()
}

/// Separable filtering keeping only positions where the window fits.
fn filter_valid(data: &[f64], h: usize, w: usize, g: &[f64]) -> Vec<f64> {
    let k = g.len();
    let (oh, ow) = (h - k + 1, w - k + 1);
    let mut horiz = vec![0.0; h * ow];
    horiz.par_chunks_mut(ow).enumerate().for_each(|(r, out)| {
        let row = &data[r * w..(r + 1) * w];
        for (c, o) in out.iter_mut().enumerate() {
            *o = g.iter().zip(&row[c..c + k]).map(|(a, b)| a * b).sum();
        }
    });
    let mut out = vec![0.0; oh * ow];
    out.par_chunks_mut(ow).enumerate().for_each(|(r, o)| {
        for (i, gi) in g.iter().enumerate() {
            let src = &horiz[(r + i) * ow..(r + i + 1) * ow];
            for (v, s) in o.iter_mut().zip(src) {
                *v += gi * s;
            }
        }
    });
    out
}

/// Mean SSIM over the valid region of an 11x11 Gaussian window.
pub fn ssim(reference: &ImagePlane, test: &ImagePlane) -> Result<f64> {
    check_dims(reference, test)?;
    let (h, w) = reference.dims();
    if h < SSIM_WINDOW || w < SSIM_WINDOW {
        return Err(Error::Size(format!("SSIM needs at least {SSIM_WINDOW}x{SSIM_WINDOW}, got {h}x{w}")));
    }
    let (a, b) = (reference.quantized(), test.quantized());
    let (x, y) = (a.data(), b.data());
    let g = gaussian_window();
    let prod = |f: &dyn Fn(f64, f64) -> f64| -> Vec<f64> { x.iter().zip(y).map(|(&p, &q)| f(p, q)).collect() };
    let mu_x = filter_valid(x, h, w, &g);
    let mu_y = filter_valid(y, h, w, &g);
    let xx = filter_valid(&prod(&|p, _| p * p), h, w, &g);
    let yy = filter_valid(&prod(&|_, q| q * q), h, w, &g);
    let xy = filter_valid(&prod(&|p, q| p * q), h, w, &g);
    let c1 = (SSIM_K1 * PEAK).powi(2);
    let c2 = (SSIM_K2 * PEAK).powi(2);
    let total: f64 = (0..mu_x.len())
        .map(|i| {
            let (mx, my) = (mu_x[i], mu_y[i]);
            let vx = xx[i] - mx * mx;
            let vy = yy[i] - my * my;
            let cov = xy[i] - mx * my;
            ((2.0 * mx * my + c1) * (2.0 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2))
        })
        .sum();
    Ok(total / mu_x.len() as f64)
}

pub fn quality(reference: &ImagePlane, test: &ImagePlane) -> Result<QualityScore> {
    Ok(QualityScore { psnr: psnr(reference, test)?, ssim: ssim(reference, test)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn texture() -> ImagePlane {
        ImagePlane::from_fn(48, 48, |r, c| {
            128.0 + 50.0 * ((r as f64 * 0.7).sin() * (c as f64 * 0.45).cos()) + ((r * 7 + c * 3) % 11) as f64
        })
    }

    #[test]
    fn psnr_closed_forms() {
        let a = ImagePlane::filled(16, 16, 100.0);
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);
        let b = ImagePlane::filled(16, 16, 116.0);
        assert!((psnr(&a, &b).unwrap() - 10.0 * (65025.0f64 / 256.0).log10()).abs() < 1e-12);
        assert!((psnr(&a, &b).unwrap() - 24.0484).abs() < 1e-4);
        let z = ImagePlane::zeros(4, 4);
        let f = ImagePlane::filled(4, 4, 255.0);
        assert_eq!(psnr(&z, &f).unwrap(), 0.0);
        assert!(psnr(&z, &ImagePlane::zeros(4, 5)).is_err());
    }

    #[test]
    fn psnr_quantizes_first() {
        let a = ImagePlane::filled(8, 8, 10.2);
        let b = ImagePlane::filled(8, 8, 9.6);
        assert_eq!(psnr(&a, &b).unwrap(), f64::INFINITY);
    }

    #[test]
    fn ssim_reference_cases() {
        let t = texture();
        assert!((ssim(&t, &t).unwrap() - 1.0).abs() < 1e-12);
        let inv = t.map(|v| 255.0 - v);
        assert!(ssim(&t, &inv).unwrap() < 0.3);
        let shifted = t.map(|v| v + 1.0);
        assert!(ssim(&t, &shifted).unwrap() > 0.99);
        assert!(ssim(&ImagePlane::zeros(10, 20), &ImagePlane::zeros(10, 20)).is_err());
    }

    #[test]
    fn ssim_symmetric_and_monotone_in_noise() {
        let t = texture();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let noise: Vec<f64> = (0..t.data().len()).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let mut last = 1.0;
        for sigma in [1.0, 2.0, 4.0, 8.0] {
            let noisy = ImagePlane::new(48, 48, t.data().iter().zip(&noise).map(|(v, n)| v + sigma * 1.7 * n).collect())
                .unwrap();
            let s = ssim(&t, &noisy).unwrap();
            assert!((s - ssim(&noisy, &t).unwrap()).abs() < 1e-12);
            assert!((-1.0..=1.0).contains(&s));
            assert!(s < last, "sigma {sigma}: {s} !< {last}");
            last = s;
        }
    }
}
