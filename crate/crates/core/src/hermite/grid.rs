use crate::error::{Error, Result};

use super::multi_index::Multiplicity;

/// Support points on `A_1 x ... x A_n`, each axis strictly increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct RectilinearGrid {
    axes: Vec<Vec<f64>>,
}

impl RectilinearGrid {
    pub fn new(axes: Vec<Vec<f64>>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidGrid("grid needs at least one axis".into()));
        }
        for (i, axis) in axes.iter().enumerate() {
            validate_axis(axis).map_err(|e| match e {
                Error::InvalidGrid(msg) => Error::InvalidGrid(format!("axis {i}: {msg}")),
                other => other,
            })?;
        }
        Ok(Self { axes })
    }

    /// Integer nodes `start, start + 1, ..., start + len - 1` on every axis.
    pub fn integer(starts: &[i64], lens: &[usize]) -> Result<Self> {
        Self::new(
            starts
                .iter()
                .zip(lens)
                .map(|(&s, &l)| (0..l as i64).map(|i| (s + i) as f64).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Vec<f64>] {
        &self.axes
    }

    pub fn axis(&self, i: usize) -> &[f64] {
        &self.axes[i]
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Vec::len).collect()
    }

    pub fn num_points(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    /// Node indices of every support point, row-major (last axis fastest).
    pub fn point_indices(&self) -> Vec<Vec<usize>> {
        let shape = self.shape();
        let mut out = Vec::with_capacity(self.num_points());
        let mut cur = vec![0usize; shape.len()];
        loop {
            out.push(cur.clone());
            let mut axis = shape.len();
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                cur[axis] += 1;
                if cur[axis] < shape[axis] {
                    break;
                }
                cur[axis] = 0;
            }
        }
    }

    pub fn coords(&self, point: &[usize]) -> Vec<f64> {
        point.iter().enumerate().map(|(i, &j)| self.axes[i][j]).collect()
    }
}

pub(crate) fn validate_axis(axis: &[f64]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::InvalidGrid("axis has no nodes".into()));
    }
    if axis.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidGrid("non-finite node".into()));
    }
    for w in axis.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidGrid(format!(
                "nodes must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Multiplicity function `nu_i : A_i -> N` for every axis of a grid.
///
/// `nu(a) = (nu_1(a_1), ..., nu_n(a_n))`, so the multiplicity of a point
/// depends only on its per-axis node indices.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeMultiplicity {
    per_axis: Vec<Vec<usize>>,
}

impl NodeMultiplicity {
    pub fn new(grid: &RectilinearGrid, per_axis: Vec<Vec<usize>>) -> Result<Self> {
        if per_axis.len() != grid.dim() {
            return Err(Error::InvalidMultiplicity(format!(
                "{} axes of multiplicities for a {}-d grid",
                per_axis.len(),
                grid.dim()
            )));
        }
        for (i, (nu, axis)) in per_axis.iter().zip(grid.axes()).enumerate() {
            if nu.len() != axis.len() {
                return Err(Error::InvalidMultiplicity(format!(
                    "axis {i}: {} multiplicities for {} nodes",
                    nu.len(),
                    axis.len()
                )));
            }
            if nu.contains(&0) {
                return Err(Error::InvalidMultiplicity(format!("axis {i}: zero multiplicity")));
            }
        }
        Ok(Self { per_axis })
    }

    /// Same `nu` at every support point.
    pub fn constant(grid: &RectilinearGrid, nu: &Multiplicity) -> Result<Self> {
        if nu.dim() != grid.dim() {
            return Err(Error::InvalidMultiplicity(format!(
                "{}-component multiplicity for a {}-d grid",
                nu.dim(),
                grid.dim()
            )));
        }
        Self::new(grid, grid.axes().iter().enumerate().map(|(i, a)| vec![nu[i]; a.len()]).collect())
    }

    pub fn axis(&self, i: usize) -> &[usize] {
        &self.per_axis[i]
    }

    pub fn at(&self, point: &[usize]) -> Multiplicity {
        Multiplicity::new(point.iter().enumerate().map(|(i, &j)| self.per_axis[i][j]).collect())
            .expect("validated at construction")
    }

    /// `prod_i sum_{a in A_i} nu_i(a)`, the total number of conditions.
    pub fn condition_count(&self) -> usize {
        self.per_axis.iter().map(|nu| nu.iter().sum::<usize>()).product()
    }

    pub fn is_constant(&self) -> bool {
        self.per_axis.iter().all(|nu| nu.windows(2).all(|w| w[0] == w[1]))
    }
}
