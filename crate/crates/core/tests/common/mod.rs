#![allow(dead_code)]

use hermite_kernels::derivatives::{derive_compact_scheme, fir_taps, mirror_period, DerivativeStack};
use hermite_kernels::hermite::{reverse_lex_enumerate, Multiplicity};
use hermite_kernels::imaging::ImagePlane;
use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub fn random_image(rng: &mut impl Rng, h: usize, w: usize) -> ImagePlane {
    ImagePlane::from_fn(h, w, |_, _| rng.gen_range(0.0..255.0))
}

/// `d^k/dt^k ((t - t0) / s)^p` at `t`.
pub fn scaled_monomial_derivative(t: f64, t0: f64, s: f64, p: usize, k: usize) -> f64 {
    if k > p {
        return 0.0;
    }
    let c: f64 = (0..k).map(|i| (p - i) as f64).product();
    c * s.powi(-(k as i32)) * ((t - t0) / s).powi((p - k) as i32)
}

/// Image of `((x - c0)/s)^px ((y - r0)/s)^py` with its exact derivative
/// planes for every index admitted by `nu`.
pub fn exact_monomial_stack(h: usize, w: usize, px: usize, py: usize, nu: usize) -> (ImagePlane, DerivativeStack) {
    let (r0, c0) = ((h as f64 - 1.0) / 2.0, (w as f64 - 1.0) / 2.0);
    let s = r0.max(c0);
    let indices = reverse_lex_enumerate(&Multiplicity::uniform(2, nu).unwrap());
    let planes: Vec<ImagePlane> = indices
        .iter()
        .map(|k| {
            ImagePlane::from_fn(h, w, |r, c| {
                scaled_monomial_derivative(r as f64, r0, s, py, k[0])
                    * scaled_monomial_derivative(c as f64, c0, s, px, k[1])
            })
        })
        .collect();
    let image = planes[0].clone();
    (image, DerivativeStack::new(planes, indices).unwrap())
}

pub fn monomial_at(h: usize, w: usize, px: usize, py: usize, r: f64, c: f64) -> f64 {
    let (r0, c0) = ((h as f64 - 1.0) / 2.0, (w as f64 - 1.0) / 2.0);
    let s = r0.max(c0);
    ((c - c0) / s).powi(px as i32) * ((r - r0) / s).powi(py as i32)
}

/// Dense solve of the compact scheme `Q y = R f` on the mirror-periodic
/// extension of `line`, restricted back to the line.
pub fn banded_solve(line: &[f64], order: usize) -> Vec<f64> {
    let scheme = derive_compact_scheme().unwrap();
    let (q, r) = if order == 1 { (scheme.q1(), scheme.r1()) } else { (scheme.q2(), scheme.r2()) };
    let ext = mirror_period(line);
    let p = ext.len();
    let (hq, hr) = ((q.len() / 2) as i64, (r.len() / 2) as i64);
    let wrap = |i: i64| i.rem_euclid(p as i64) as usize;
    let mut a = DMatrix::<f64>::zeros(p, p);
    let mut rhs = DVector::<f64>::zeros(p);
    for i in 0..p as i64 {
        for (t, w) in q.iter().enumerate() {
            a[(i as usize, wrap(i + t as i64 - hq))] += w;
        }
        rhs[i as usize] = r.iter().enumerate().map(|(t, w)| w * ext[wrap(i + t as i64 - hr)]).sum();
    }
    let y = a.lu().solve(&rhs).unwrap();
    y.iter().take(line.len()).copied().collect()
}

/// Max relative error of a first-derivative operator on `sin(w t)`, over
/// samples far from either end.
pub fn derivative_error(op: impl Fn(&[f64]) -> Vec<f64>, omega: f64) -> f64 {
    let n = 400;
    let line: Vec<f64> = (0..n).map(|i| (omega * i as f64 + 0.3).sin()).collect();
    let d = op(&line);
    (150..250).map(|i| (d[i] - omega * (omega * i as f64 + 0.3).cos()).abs()).fold(0.0, f64::max) / omega
}

/// Least-squares slope of `log2 e` against `-log2 omega` over halving
/// frequencies.
pub fn convergence_slope(op: impl Fn(&[f64]) -> Vec<f64>, omegas: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = omegas.iter().map(|&w| (-w.log2(), derivative_error(&op, w).log2())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    -sxy / sxx
}

pub fn fir_line(len: usize) -> impl Fn(&[f64]) -> Vec<f64> {
    let taps = fir_taps(1, len).unwrap().taps().to_vec();
    move |line: &[f64]| {
        let half = taps.len() / 2;
        (0..line.len())
            .map(|i| {
                if i < half || i + half >= line.len() {
                    0.0
                } else {
                    taps.iter().enumerate().map(|(t, w)| w * line[i + t - half]).sum()
                }
            })
            .collect()
    }
}

pub fn compact_line() -> impl Fn(&[f64]) -> Vec<f64> {
    let scheme = derive_compact_scheme().unwrap();
    move |line: &[f64]| scheme.apply_line(line, 1).unwrap()
}

pub fn data_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/images")
}
