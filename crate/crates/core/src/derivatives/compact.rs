//! Implicit (compact) derivative schemes `Q * f^(d) = R * f` with a 5-tap
//! symmetric `Q` and a 7-tap `R`, taps fixed by Taylor moment matching.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::imaging::{Axis, ImagePlane};

use super::recursive::{mirror_period, SymmetricAllPole};

pub const MIN_LINE: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct CompactScheme {
    q1: Vec<f64>,
    r1: Vec<f64>,
    q2: Vec<f64>,
    r2: Vec<f64>,
    inv1: SymmetricAllPole,
    inv2: SymmetricAllPole,
}

fn falling(p: usize, d: usize) -> f64 {
    (0..d).map(|i| (p - i) as f64).product()
}

/// Solves for `Q = [b, a, 1, a, b]` and the free taps of `R` (antisymmetric
/// for odd `d`, symmetric for even) so that the scheme is exact on `x^p` for
/// every `p` up to the number of unknowns.
fn moment_match(d: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let odd = d % 2 == 1;
    // unknowns: a, b, then r_1..r_3 (odd) or r_0..r_3 (even)
    let r_free: Vec<usize> = if odd { vec![1, 2, 3] } else { vec![0, 1, 2, 3] };
    let n = 2 + r_free.len();
    // equations at the powers not annihilated by symmetry
    let powers: Vec<usize> = (0..).filter(|p| p % 2 == d % 2).take(n).collect();
    let pow = |m: f64, e: usize| if e == 0 { 1.0 } else { m.powi(e as i32) };
    let deriv = |m: f64, p: usize| if p < d { 0.0 } else { falling(p, d) * pow(m, p - d) };

    let mut a = DMatrix::zeros(n, n);
    let mut rhs = DVector::zeros(n);
    for (row, &p) in powers.iter().enumerate() {
        // Q side: q[0] = 1 moves to the right-hand side
        rhs[row] = -deriv(0.0, p);
        a[(row, 0)] = deriv(1.0, p) + deriv(-1.0, p);
        a[(row, 1)] = deriv(2.0, p) + deriv(-2.0, p);
        // R side enters with a minus sign
        for (col, &m) in r_free.iter().enumerate() {
            let mf = m as f64;
            let v = if m == 0 {
                pow(0.0, p)
            } else if odd {
                pow(mf, p) - pow(-mf, p)
            } else {
                pow(mf, p) + pow(-mf, p)
            };
            a[(row, 2 + col)] = -v;
        }
    }
    let x = a.lu().solve(&rhs).ok_or_else(|| Error::Singular(format!("compact moment system d={d}")))?;
    let (alpha, beta) = (x[0], x[1]);
    let q = vec![beta, alpha, 1.0, alpha, beta];
    let mut r = vec![0.0; 7];
    for (col, &m) in r_free.iter().enumerate() {
        let v = x[2 + col];
        r[3 + m] = v;
        r[3 - m] = if odd { -v } else { v };
    }
    Ok((q, r))
}

pub fn derive_compact_scheme() -> Result<CompactScheme> {
    let (q1, r1) = moment_match(1)?;
    let (q2, r2) = moment_match(2)?;
    let inv1 = SymmetricAllPole::from_symmetric_taps(&q1)?;
    let inv2 = SymmetricAllPole::from_symmetric_taps(&q2)?;
    Ok(CompactScheme { q1, r1, q2, r2, inv1, inv2 })
}

impl CompactScheme {
    pub fn q1(&self) -> &[f64] {
        &self.q1
    }

    pub fn r1(&self) -> &[f64] {
        &self.r1
    }

    pub fn q2(&self) -> &[f64] {
        &self.q2
    }

    pub fn r2(&self) -> &[f64] {
        &self.r2
    }

    fn single(&self, line: &[f64], second: bool) -> Vec<f64> {
        let (r, inv) = if second { (&self.r2, &self.inv2) } else { (&self.r1, &self.inv1) };
        let n = line.len();
        let ext = mirror_period(line);
        let p = ext.len();
        let mut g: Vec<f64> = (0..p)
            .map(|k| r.iter().enumerate().map(|(t, w)| w * ext[(k + p * 3 + t - 3) % p]).sum())
            .collect();
        inv.apply_periodic(&mut g);
        g.truncate(n);
        g
    }

    /// Derivative of order `order` along one line with mirror boundary.
    /// Orders above 2 chain second- and first-derivative passes.
    pub fn apply_line(&self, line: &[f64], order: usize) -> Result<Vec<f64>> {
        if line.len() < MIN_LINE {
            return Err(Error::Size(format!("compact scheme needs {MIN_LINE} samples, got {}", line.len())));
        }
        let mut out = line.to_vec();
        for _ in 0..order / 2 {
            out = self.single(&out, true);
        }
        if order % 2 == 1 {
            out = self.single(&out, false);
        }
        Ok(out)
    }
}

pub fn apply_compact(image: &ImagePlane, scheme: &CompactScheme, axis: Axis, order: usize) -> Result<ImagePlane> {
    if order == 0 {
        return Ok(image.clone());
    }
    let src = match axis {
        Axis::Cols => image.clone(),
        Axis::Rows => image.transpose(),
    };
    let w = src.width();
    if w < MIN_LINE {
        return Err(Error::Size(format!("compact scheme needs {MIN_LINE} samples per line, got {w}")));
    }
    let lines: Vec<Vec<f64>> = src
        .data()
        .par_chunks(w)
        .map(|line| scheme.apply_line(line, order))
        .collect::<Result<_>>()?;
    let out = ImagePlane::new(src.height(), w, lines.concat())?;
    Ok(match axis {
        Axis::Cols => out,
        Axis::Rows => out.transpose(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_derivative_taps() {
        let s = derive_compact_scheme().unwrap();
        let expect_q = [0.05, 0.5, 1.0, 0.5, 0.05];
        let expect_r = [-1.0 / 600.0, -101.0 / 600.0, -17.0 / 24.0, 0.0, 17.0 / 24.0, 101.0 / 600.0, 1.0 / 600.0];
        for (a, b) in s.q1().iter().zip(expect_q) {
            assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in s.r1().iter().zip(expect_r) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn second_derivative_taps() {
        let s = derive_compact_scheme().unwrap();
        assert!((s.q2()[1] - 334.0 / 899.0).abs() < 1e-12);
        assert!((s.q2()[0] - 43.0 / 1798.0).abs() < 1e-12);
        assert!(s.r2().iter().sum::<f64>().abs() < 1e-12);
        for i in 0..3 {
            assert_eq!(s.r2()[i], s.r2()[6 - i]);
            assert_eq!(s.r1()[i], -s.r1()[6 - i]);
        }
    }

    #[test]
    fn exact_on_monomials_in_the_interior() {
        let s = derive_compact_scheme().unwrap();
        let (n, h) = (128, 64.0);
        for p in 0..=6 {
            let line: Vec<f64> = (0..n).map(|i| ((i as f64 - h) / h).powi(p)).collect();
            let d1 = s.apply_line(&line, 1).unwrap();
            let d2 = s.apply_line(&line, 2).unwrap();
            for i in 60..68 {
                let x = (i as f64 - h) / h;
                let e1 = if p >= 1 { p as f64 * x.powi(p - 1) / h } else { 0.0 };
                let e2 = if p >= 2 { (p * (p - 1)) as f64 * x.powi(p - 2) / (h * h) } else { 0.0 };
                assert!((d1[i] - e1).abs() < 1e-12, "p={p} i={i}: {} vs {e1}", d1[i]);
                assert!((d2[i] - e2).abs() < 1e-12, "p={p} i={i}: {} vs {e2}", d2[i]);
            }
        }
    }

    #[test]
    fn constant_and_ramp_lines() {
        let s = derive_compact_scheme().unwrap();
        let flat = vec![3.0; 20];
        assert!(s.apply_line(&flat, 1).unwrap().iter().all(|v| v.abs() < 1e-12));
        assert!(s.apply_line(&flat, 2).unwrap().iter().all(|v| v.abs() < 1e-12));
        // boundary effects decay geometrically with the pole magnitudes
        let ramp: Vec<f64> = (0..200).map(|i| i as f64).collect();
        let d = s.apply_line(&ramp, 1).unwrap();
        for v in &d[60..140] {
            assert!((v - 1.0).abs() < 1e-8);
        }
        let sq: Vec<f64> = (0..200).map(|i| (i * i) as f64).collect();
        let d2 = s.apply_line(&sq, 2).unwrap();
        for v in &d2[60..140] {
            assert!((v - 2.0).abs() < 1e-8);
        }
    }

    #[test]
    fn short_lines_rejected() {
        let s = derive_compact_scheme().unwrap();
        assert!(matches!(s.apply_line(&[1.0; 7], 1), Err(Error::Size(_))));
        let img = ImagePlane::filled(4, 16, 1.0);
        assert!(apply_compact(&img, &s, Axis::Rows, 1).is_err());
        assert!(apply_compact(&img, &s, Axis::Cols, 1).is_ok());
    }

    #[test]
    fn axes_match_transpose() {
        let s = derive_compact_scheme().unwrap();
        let img = ImagePlane::from_fn(10, 12, |r, c| ((r * 31 + c * 17) % 23) as f64);
        let a = apply_compact(&img, &s, Axis::Rows, 1).unwrap();
        let b = apply_compact(&img.transpose(), &s, Axis::Cols, 1).unwrap().transpose();
        assert!(a.max_abs_diff(&b) < 1e-14);
    }
}
