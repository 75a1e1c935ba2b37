use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

use super::basis::HermiteBasisFn;
use super::grid::{NodeMultiplicity, RectilinearGrid};
use super::lambda::{lambda_from_basis, lambda_inverse, local_basis, LambdaMatrix};
use super::multi_index::{reverse_lex_enumerate, MultiIndex};

/// Interpolation conditions `t_a^k`, one reverse-lex ordered vector per
/// support point (points in row-major order).
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteData {
    values: Vec<Vec<f64>>,
}

impl HermiteData {
    pub fn new(grid: &RectilinearGrid, nu: &NodeMultiplicity, values: Vec<Vec<f64>>) -> Result<Self> {
        let points = grid.point_indices();
        if values.len() != points.len() {
            return Err(Error::MissingCondition(format!(
                "data for {} of {} support points",
                values.len(),
                points.len()
            )));
        }
        for (p, v) in points.iter().zip(&values) {
            let c = nu.at(p).cardinality();
            if v.len() != c {
                return Err(Error::MissingCondition(format!(
                    "point {p:?} has {} of {c} conditions",
                    v.len()
                )));
            }
        }
        Ok(Self { values })
    }

    /// Samples `f(coords, k)` for every point and every admissible `k`.
    pub fn from_fn(
        grid: &RectilinearGrid,
        nu: &NodeMultiplicity,
        mut f: impl FnMut(&[f64], &MultiIndex) -> f64,
    ) -> Self {
        let values = grid
            .point_indices()
            .iter()
            .map(|p| {
                let x = grid.coords(p);
                reverse_lex_enumerate(&nu.at(p)).iter().map(|k| f(&x, k)).collect()
            })
            .collect();
        Self { values }
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn at(&self, point: usize) -> &[f64] {
        &self.values[point]
    }
}

struct LocalTerm {
    basis: Vec<HermiteBasisFn>,
    lambda: LambdaMatrix,
    lambda_inv: DMatrix<f64>,
}

/// Precomputed closed-form interpolant `f(x) = sum_a H_a(x)^T Lambda_a^{-1} T_a`.
pub struct HermiteInterpolant {
    grid: RectilinearGrid,
    nu: NodeMultiplicity,
    terms: Vec<LocalTerm>,
}

impl HermiteInterpolant {
    pub fn new(grid: &RectilinearGrid, nu: &NodeMultiplicity) -> Result<Self> {
        let terms = grid
            .point_indices()
            .iter()
            .map(|p| {
                let basis = local_basis(grid, nu, p)?;
                let lambda = lambda_from_basis(&basis)?;
                let lambda_inv = lambda_inverse(&lambda)?;
                Ok(LocalTerm { basis, lambda, lambda_inv })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid: grid.clone(), nu: nu.clone(), terms })
    }

    pub fn grid(&self) -> &RectilinearGrid {
        &self.grid
    }

    pub fn multiplicity(&self) -> &NodeMultiplicity {
        &self.nu
    }

    pub fn lambda(&self, point: usize) -> &LambdaMatrix {
        &self.terms[point].lambda
    }

    pub fn lambda_inverse(&self, point: usize) -> &DMatrix<f64> {
        &self.terms[point].lambda_inv
    }

    pub fn basis(&self, point: usize) -> &[HermiteBasisFn] {
        &self.terms[point].basis
    }

    /// Row vectors `H_a(x)^T Lambda_a^{-1}`, one per support point. Dotting
    /// them with the data vectors gives the interpolated value.
    pub fn weights(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.terms
            .iter()
            .map(|t| {
                let h = DVector::from_iterator(t.basis.len(), t.basis.iter().map(|b| b.eval(x)));
                (t.lambda_inv.transpose() * h).iter().copied().collect()
            })
            .collect()
    }

    pub fn eval(&self, data: &HermiteData, x: &[f64]) -> Result<f64> {
        if x.len() != self.grid.dim() {
            return Err(Error::Shape(format!("{}-d point for a {}-d grid", x.len(), self.grid.dim())));
        }
        if data.values().len() != self.terms.len() {
            return Err(Error::MissingCondition(format!(
                "data for {} of {} support points",
                data.values().len(),
                self.terms.len()
            )));
        }
        let mut acc = 0.0;
        for (w, t) in self.weights(x).iter().zip(data.values()) {
            if w.len() != t.len() {
                return Err(Error::MissingCondition(format!("{} of {} conditions", t.len(), w.len())));
            }
            acc += w.iter().zip(t).map(|(a, b)| a * b).sum::<f64>();
        }
        Ok(acc)
    }
}

/// Value of the unique Hermite interpolant at `x`.
pub fn interpolate_direct(
    grid: &RectilinearGrid,
    nu: &NodeMultiplicity,
    data: &HermiteData,
    x: &[f64],
) -> Result<f64> {
    HermiteInterpolant::new(grid, nu)?.eval(data, x)
}

/// Per-axis and total maximum degree of the interpolating polynomial:
/// `max_a min_{b != a} {nu(a) - nu(b)} - 1 + sum_a nu(a)` on each axis,
/// summed. A single node contributes no offset term.
pub fn max_degree(nu_per_axis: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let per_axis: Vec<usize> = nu_per_axis
        .iter()
        .map(|nu| {
            let offset = (0..nu.len())
                .filter_map(|a| {
                    (0..nu.len()).filter(|&b| b != a).map(|b| nu[a] as i64 - nu[b] as i64).min()
                })
                .max()
                .unwrap_or(0);
            (offset + nu.iter().sum::<usize>() as i64 - 1).max(0) as usize
        })
        .collect();
    let total = per_axis.iter().sum();
    (per_axis, total)
}
