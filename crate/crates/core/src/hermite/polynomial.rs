//! Univariate polynomials stored as Taylor coefficients about an origin.
//!
//! `p(x) = sum_k coeffs[k] * (x - origin)^k`. Keeping the origin at the
//! support point a basis function is attached to makes derivatives at that
//! point a coefficient lookup (`m! * coeffs[m]`) and keeps the expansion well
//! conditioned for the small stencils used by the kernels.

/// Dense univariate polynomial, ascending powers of `(x - origin)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    origin: f64,
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(origin: f64, coeffs: Vec<f64>) -> Self {
        let mut p = Self { origin, coeffs };
        p.trim();
        p
    }

    /// Coefficients in powers of `x` itself.
    pub fn from_power_coeffs(coeffs: Vec<f64>) -> Self {
        Self::new(0.0, coeffs)
    }

    pub fn constant(origin: f64, value: f64) -> Self {
        Self::new(origin, vec![value])
    }

    /// `scale * (x - root)` expanded about `origin`.
    pub fn linear(origin: f64, root: f64, scale: f64) -> Self {
        Self::new(origin, vec![scale * (origin - root), scale])
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(0.0);
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = x - self.origin;
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c)
    }

    /// `d^order p / dx^order` evaluated at `x`, from the coefficients.
    pub fn eval_derivative(&self, order: usize, x: f64) -> f64 {
        if order == 0 {
            return self.eval(x);
        }
        if order > self.degree() {
            return 0.0;
        }
        let u = x - self.origin;
        let mut acc = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate().skip(order).rev() {
            acc = acc * u + c * falling_factorial(k, order);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::constant(self.origin, 0.0);
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect();
        Self::new(self.origin, coeffs)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.origin, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let rhs = if other.origin == self.origin { other.clone() } else { other.shifted(self.origin) };
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(self.origin, out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(self.origin, 1.0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Same polynomial re-expanded about `new_origin` (Taylor shift).
    pub fn shifted(&self, new_origin: f64) -> Self {
        let d = new_origin - self.origin;
        // synthetic division repeated: Horner-style Taylor shift
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                c[j] += d * c[j + 1];
            }
        }
        Self::new(new_origin, c)
    }
}

pub(crate) fn falling_factorial(k: usize, m: usize) -> f64 {
    ((k + 1 - m)..=k).fold(1.0, |acc, v| acc * v as f64)
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, v| acc * v as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_derivatives() {
        // (x - 1)^3 about origin 1
        let p = Polynomial::new(1.0, vec![0.0, 0.0, 0.0, 1.0]);
        assert_eq!(p.eval(3.0), 8.0);
        assert_eq!(p.eval_derivative(1, 3.0), 12.0);
        assert_eq!(p.eval_derivative(2, 3.0), 12.0);
        assert_eq!(p.eval_derivative(3, 3.0), 6.0);
        assert_eq!(p.eval_derivative(4, 3.0), 0.0);
        assert_eq!(p.derivative().derivative().eval(3.0), 12.0);
    }

    #[test]
    fn shift_preserves_values() {
        let p = Polynomial::from_power_coeffs(vec![1.0, -2.0, 0.5, 3.0]);
        let q = p.shifted(1.5);
        for &x in &[-1.0, 0.0, 0.3, 2.0, 4.0] {
            assert!((p.eval(x) - q.eval(x)).abs() < 1e-12);
        }
        assert_eq!(q.shifted(0.0).coeffs().len(), 4);
        for (a, b) in q.shifted(0.0).coeffs().iter().zip(p.coeffs()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn product_of_linears() {
        let a = Polynomial::linear(0.0, 1.0, 1.0);
        assert_eq!(a.pow(2).coeffs(), &[1.0, -2.0, 1.0]);
        let b = Polynomial::linear(0.5, 2.0, -1.0);
        let prod = a.mul(&b).shifted(0.0);
        // (x - 1)(2 - x) = -x^2 + 3x - 2
        for (got, want) in prod.coeffs().iter().zip(&[-2.0, 3.0, -1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }
}
