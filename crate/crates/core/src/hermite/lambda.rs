use nalgebra::DMatrix;

use crate::error::{Error, Result};

use super::basis::{hermite_basis, HermiteBasisFn};
use super::grid::{NodeMultiplicity, RectilinearGrid};
use super::multi_index::{reverse_lex_enumerate, MultiIndex};

/// Agreement required between the two inversion routes.
pub const INVERSE_TOLERANCE: f64 = 1e-12;

/// Cross-derivative matrix of the local basis at one support point.
///
/// Entry `(i, j)` is `d^{k_i} H_(a, k_j)` evaluated at `a`, with rows and
/// columns in reverse-lexicographic order. The matrix is unit lower
/// triangular and `I - L` is nilpotent.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaMatrix {
    indices: Vec<MultiIndex>,
    entries: DMatrix<f64>,
}

impl LambdaMatrix {
    /// Validates the unit lower triangular structure.
    pub fn from_entries(indices: Vec<MultiIndex>, entries: DMatrix<f64>) -> Result<Self> {
        let c = indices.len();
        if entries.nrows() != c || entries.ncols() != c {
            return Err(Error::Shape(format!(
                "{}x{} matrix for {c} indices",
                entries.nrows(),
                entries.ncols()
            )));
        }
        for i in 0..c {
            if entries[(i, i)] != 1.0 {
                return Err(Error::Consistency(format!("diagonal entry {i} is {}", entries[(i, i)])));
            }
            for j in i + 1..c {
                if entries[(i, j)] != 0.0 {
                    return Err(Error::Consistency(format!("entry ({i},{j}) above the diagonal is nonzero")));
                }
            }
        }
        Ok(Self { indices, entries })
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }
}

/// Builds `Lambda_a` from the basis functions attached to `a` (in
/// reverse-lex order). Entries that vanish analytically (above the diagonal
/// and for incomparable index pairs) are checked against rounding and then
/// stored as exact zeros; the diagonal is stored as exact ones.
pub(crate) fn lambda_from_basis(basis: &[HermiteBasisFn]) -> Result<LambdaMatrix> {
    let c = basis.len();
    let anchor = basis[0].anchor().to_vec();
    let indices: Vec<MultiIndex> = basis.iter().map(|b| b.index().clone()).collect();
    let raw = DMatrix::from_fn(c, c, |i, j| basis[j].derivative_at(&indices[i], &anchor));
    let scale = raw.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-10 * scale;
    let mut entries = DMatrix::zeros(c, c);
    for i in 0..c {
        for j in 0..c {
            let v = raw[(i, j)];
            if i == j {
                if (v - 1.0).abs() > tol {
                    return Err(Error::Consistency(format!("diagonal entry {} is {v}", indices[i])));
                }
                entries[(i, j)] = 1.0;
            } else if indices[j].le_componentwise(&indices[i]) {
                entries[(i, j)] = v;
            } else if v.abs() > tol {
                return Err(Error::Consistency(format!(
                    "d^{} H_(a,{}) = {v} should vanish",
                    indices[i], indices[j]
                )));
            }
        }
    }
    LambdaMatrix::from_entries(indices, entries)
}

pub(crate) fn local_basis(
    grid: &RectilinearGrid,
    nu: &NodeMultiplicity,
    point: &[usize],
) -> Result<Vec<HermiteBasisFn>> {
    reverse_lex_enumerate(&nu.at(point))
        .iter()
        .map(|k| hermite_basis(grid, nu, point, k))
        .collect()
}

pub fn lambda_matrix(grid: &RectilinearGrid, nu: &NodeMultiplicity, point: &[usize]) -> Result<LambdaMatrix> {
    lambda_from_basis(&local_basis(grid, nu, point)?)
}

/// `Lambda^{-1}` by forward substitution, cross-checked against the finite
/// Neumann series `sum_{i=0}^{c-1} (I - Lambda)^i`, relative to the
/// largest entry.
pub fn lambda_inverse(lambda: &LambdaMatrix) -> Result<DMatrix<f64>> {
    let forward = forward_substitution_inverse(lambda.entries());
    let neumann = neumann_inverse(lambda.entries());
    let diff = (&forward - &neumann).abs().max();
    let scale = forward.abs().max().max(1.0);
    if diff > INVERSE_TOLERANCE * scale {
        return Err(Error::Consistency(format!(
            "forward substitution and Neumann series differ by {diff:e}"
        )));
    }
    Ok(forward)
}

pub fn forward_substitution_inverse(l: &DMatrix<f64>) -> DMatrix<f64> {
    let c = l.nrows();
    let mut inv = DMatrix::zeros(c, c);
    for col in 0..c {
        for row in col..c {
            let mut acc = if row == col { 1.0 } else { 0.0 };
            for k in col..row {
                acc -= l[(row, k)] * inv[(k, col)];
            }
            inv[(row, col)] = acc / l[(row, row)];
        }
    }
    inv
}

pub fn neumann_inverse(l: &DMatrix<f64>) -> DMatrix<f64> {
    let c = l.nrows();
    let nil = DMatrix::identity(c, c) - l;
    let mut term = DMatrix::identity(c, c);
    let mut sum = term.clone();
    for _ in 1..c {
        term = &term * &nil;
        sum += &term;
    }
    sum
}
