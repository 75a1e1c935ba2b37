//! Inverse of a symmetric FIR `Q` as a cascade of causal/anti-causal
//! first-order recursions, run on the mirror-periodic extension of a line.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `1 / Q(z)` for a symmetric `Q(z) = q_0 + sum_k q_k (z^k + z^-k)`, factored
/// as `C prod_k (1 - p_k z^-1)(1 - p_k z)` with `|p_k| < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricAllPole {
    poles: Vec<Complex64>,
    gain: f64,
}

fn roots_quadratic(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = (b * b - 4.0 * a * c).sqrt();
    // pick the numerically stable pairing
    let q = if (b.conj() * disc).re >= 0.0 { -0.5 * (b + disc) } else { -0.5 * (b - disc) };
    [q / a, c / q]
}

impl SymmetricAllPole {
    /// `taps` is the full odd-length symmetric filter, center in the middle.
    /// Supports up to 5 taps.
    pub fn from_symmetric_taps(taps: &[f64]) -> Result<Self> {
        let len = taps.len();
        if len.is_multiple_of(2) || len > 5 {
            return Err(Error::Scheme(format!("expected 1, 3 or 5 symmetric taps, got {len}")));
        }
        let m = len / 2;
        if (0..m).any(|i| taps[i] != taps[len - 1 - i]) {
            return Err(Error::Scheme(format!("taps {taps:?} are not symmetric")));
        }
        let q: Vec<f64> = taps[m..].to_vec();
        // Q in w = z + 1/z, using z^2 + z^-2 = w^2 - 2
        let w_roots: Vec<Complex64> = match m {
            0 => vec![],
            1 => vec![Complex64::new(-q[0] / q[1], 0.0)],
            _ if q[2] == 0.0 => vec![Complex64::new(-q[0] / q[1], 0.0)],
            _ => roots_quadratic(
                Complex64::new(q[2], 0.0),
                Complex64::new(q[1], 0.0),
                Complex64::new(q[0] - 2.0 * q[2], 0.0),
            )
            .to_vec(),
        };
        let lead = match w_roots.len() {
            0 => q[0],
            1 => q[1],
            _ => q[2],
        };
        if lead == 0.0 {
            return Err(Error::Scheme("degenerate filter".into()));
        }
        let mut poles = Vec::with_capacity(w_roots.len());
        for w in w_roots {
            // z + 1/z = w  =>  z^2 - w z + 1 = 0; the roots are reciprocal
            let [z1, z2] = roots_quadratic(Complex64::new(1.0, 0.0), -w, Complex64::new(1.0, 0.0));
            let p = if z1.norm() < z2.norm() { z1 } else { z2 };
            if (1.0 - p.norm()).abs() < 1e-9 {
                return Err(Error::Scheme(format!("pole {p} on the unit circle")));
            }
            poles.push(p);
        }
        // each (1 - p z^-1)(1 - p z) = -p (w - w_p)
        let gain = poles.iter().fold(Complex64::new(lead, 0.0), |g, p| g / (-p));
        if gain.im.abs() > 1e-9 * gain.re.abs() {
            return Err(Error::Scheme(format!("complex gain {gain}")));
        }
        Ok(Self { poles, gain: gain.re })
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    /// Solves `Q * y = x` in place for one period `x` of a periodic signal.
    pub fn apply_periodic(&self, x: &mut [f64]) {
        let n = x.len();
        if n == 0 {
            return;
        }
        let mut y: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        for &p in &self.poles {
            let horizon = truncation(p, n);
            let denom = 1.0 - p.powu(n as u32);
            // causal: y[k] = x[k] + p y[k-1]
            let mut acc = Complex64::new(0.0, 0.0);
            let mut pj = Complex64::new(1.0, 0.0);
            for j in 0..horizon {
                acc += pj * y[(n - j % n) % n];
                pj *= p;
            }
            let mut prev = if horizon == n { acc / denom } else { acc };
            let mut causal = vec![Complex64::new(0.0, 0.0); n];
            causal[0] = prev;
            for k in 1..n {
                prev = y[k] + p * prev;
                causal[k] = prev;
            }
            // anti-causal: y[k] = c[k] + p y[k+1]
            let mut acc = Complex64::new(0.0, 0.0);
            let mut pj = Complex64::new(1.0, 0.0);
            for j in 0..horizon {
                acc += pj * causal[(n - 1 + j) % n];
                pj *= p;
            }
            let mut next = if horizon == n { acc / denom } else { acc };
            y[n - 1] = next;
            for k in (0..n - 1).rev() {
                next = causal[k] + p * next;
                y[k] = next;
            }
        }
        let inv = 1.0 / self.gain;
        for (o, v) in x.iter_mut().zip(&y) {
            *o = v.re * inv;
        }
    }
}

/// Number of terms of the geometric initial-condition sum: the whole period
/// unless the pole decays below round-off sooner.
fn truncation(p: Complex64, n: usize) -> usize {
    let r = p.norm();
    if r == 0.0 {
        return 1;
    }
    let k = (f64::EPSILON.ln() / r.ln()).ceil() as usize + 1;
    k.min(n)
}

/// Mirror-periodic extension of a line: `f[0..n]` followed by
/// `f[n-2], ..., f[1]` (period `2n - 2`).
pub fn mirror_period(line: &[f64]) -> Vec<f64> {
    let n = line.len();
    let mut out = line.to_vec();
    if n > 2 {
        out.extend(line[1..n - 1].iter().rev());
    }
    out
}
