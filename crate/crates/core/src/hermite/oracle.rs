//! Brute-force route: solve every interpolation condition at once.
//!
//! Assembles the dense system `d_a^m (sum_b sum_k x_b^k H_(b,k)) = t_a^m`
//! over all support points and solves it by LU, without using the block
//! structure or the `Lambda` inverses of the closed form.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

use super::basis::{hermite_basis, HermiteBasisFn};
use super::grid::{NodeMultiplicity, RectilinearGrid};
use super::interpolant::HermiteData;
use super::multi_index::{reverse_lex_enumerate, MultiIndex};

/// Coefficients `x_a^k` of `f = sum x_a^k H_(a,k)`.
pub struct InterpolationSolution {
    basis: Vec<HermiteBasisFn>,
    coefficients: Vec<f64>,
    conditions: Vec<(Vec<f64>, MultiIndex)>,
}

impl InterpolationSolution {
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.basis.iter().zip(&self.coefficients).map(|(b, c)| c * b.eval(x)).sum()
    }

    /// Largest `|d_a^m f - t_a^m|` over all conditions.
    pub fn max_residual(&self, data: &HermiteData) -> f64 {
        let targets = data.values().iter().flatten();
        self.conditions
            .iter()
            .zip(targets)
            .map(|((a, m), &t)| {
                let v: f64 =
                    self.basis.iter().zip(&self.coefficients).map(|(b, c)| c * b.derivative_at(m, a)).sum();
                (v - t).abs()
            })
            .fold(0.0, f64::max)
    }
}

pub fn oracle_solve(
    grid: &RectilinearGrid,
    nu: &NodeMultiplicity,
    data: &HermiteData,
) -> Result<InterpolationSolution> {
    let mut basis = Vec::new();
    let mut conditions = Vec::new();
    for p in grid.point_indices() {
        let a = grid.coords(&p);
        for k in reverse_lex_enumerate(&nu.at(&p)) {
            basis.push(hermite_basis(grid, nu, &p, &k)?);
            conditions.push((a.clone(), k));
        }
    }
    let rhs: Vec<f64> = data.values().iter().flatten().copied().collect();
    if rhs.len() != conditions.len() {
        return Err(Error::MissingCondition(format!("{} of {} conditions", rhs.len(), conditions.len())));
    }
    let size = conditions.len();
    let system = DMatrix::from_fn(size, size, |row, col| {
        let (a, m) = &conditions[row];
        basis[col].derivative_at(m, a)
    });
    let lu = system.lu();
    let solution = lu
        .solve(&DVector::from_vec(rhs))
        .ok_or_else(|| Error::Singular(format!("{size}x{size} condition system")))?;
    Ok(InterpolationSolution { basis, coefficients: solution.iter().copied().collect(), conditions })
}
