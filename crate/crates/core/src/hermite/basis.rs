use crate::error::{Error, Result};

use super::grid::{validate_axis, NodeMultiplicity, RectilinearGrid};
use super::multi_index::MultiIndex;
use super::polynomial::{factorial, Polynomial};

/// `H_a(x) = prod_{c != a} ((x - c) / (a - c))^{nu(c)}`, expanded about `a`.
///
/// `multiplicities[j]` is the zero order imposed at node `j`; the entry for
/// the anchor itself is ignored. With a constant multiplicity this is the
/// classic `((x - c)/(a - c))^nu` product.
pub fn univariate_basis(axis: &[f64], anchor: usize, multiplicities: &[usize]) -> Result<Polynomial> {
    validate_axis(axis)?;
    if anchor >= axis.len() {
        return Err(Error::IndexOutOfRange(format!(
            "anchor node {anchor} on an axis of {} nodes",
            axis.len()
        )));
    }
    if multiplicities.len() != axis.len() {
        return Err(Error::InvalidMultiplicity(format!(
            "{} multiplicities for {} nodes",
            multiplicities.len(),
            axis.len()
        )));
    }
    let a = axis[anchor];
    let mut acc = Polynomial::constant(a, 1.0);
    for (j, (&c, &nu)) in axis.iter().zip(multiplicities).enumerate() {
        if j == anchor {
            continue;
        }
        acc = acc.mul(&Polynomial::linear(a, c, 1.0 / (a - c)).pow(nu));
    }
    Ok(acc)
}

/// One separable Hermite basis function `H_(a,k)`.
#[derive(Clone, Debug)]
pub struct HermiteBasisFn {
    anchor: Vec<f64>,
    index: MultiIndex,
    factors: Vec<Polynomial>,
    // per axis: (node c, 1 / (a - c), zero order at c)
    roots: Vec<Vec<(f64, f64, usize)>>,
}

impl HermiteBasisFn {
    pub fn anchor(&self) -> &[f64] {
        &self.anchor
    }

    pub fn index(&self) -> &MultiIndex {
        &self.index
    }

    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    /// Evaluated in product form, which keeps full relative precision where
    /// the expanded high-degree coefficients would cancel.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 1.0;
        for (i, &xi) in x.iter().enumerate() {
            let k = self.index[i];
            let mut v = (xi - self.anchor[i]).powi(k as i32) / factorial(k);
            for &(c, inv, nu) in &self.roots[i] {
                v *= ((xi - c) * inv).powi(nu as i32);
            }
            acc *= v;
        }
        acc
    }

    /// `d^order H / dx^order` at `x`, exact on coefficients.
    pub fn derivative_at(&self, order: &MultiIndex, x: &[f64]) -> f64 {
        self.factors
            .iter()
            .zip(x)
            .zip(order.orders())
            .map(|((p, &xi), &m)| p.eval_derivative(m, xi))
            .product()
    }
}

/// `H_(a,k)(x) = prod_i (x_i - a_i)^{k_i} H_{a_i}(x_i) / k_i!`.
pub fn hermite_basis(
    grid: &RectilinearGrid,
    nu: &NodeMultiplicity,
    point: &[usize],
    k: &MultiIndex,
) -> Result<HermiteBasisFn> {
    if point.len() != grid.dim() || k.dim() != grid.dim() {
        return Err(Error::Shape(format!(
            "point/index of dimension {}/{} on a {}-d grid",
            point.len(),
            k.dim(),
            grid.dim()
        )));
    }
    let local = nu.at(point);
    if !local.admits(k) {
        return Err(Error::IndexOutOfRange(format!(
            "derivative index {k} outside [0, nu - 1] for nu = {:?}",
            local.values()
        )));
    }
    let mut factors = Vec::with_capacity(grid.dim());
    let mut roots = Vec::with_capacity(grid.dim());
    for (i, &node) in point.iter().enumerate() {
        let axis = grid.axis(i);
        let a = axis[node];
        roots.push(
            axis.iter()
                .zip(nu.axis(i))
                .enumerate()
                .filter(|&(j, _)| j != node)
                .map(|(_, (&c, &m))| (c, 1.0 / (a - c), m))
                .collect(),
        );
        let h = univariate_basis(grid.axis(i), node, nu.axis(i))?;
        let mut shifted = vec![0.0; k[i]];
        shifted.extend(h.coeffs().iter().map(|c| c / factorial(k[i])));
        factors.push(Polynomial::new(h.origin(), shifted));
    }
    Ok(HermiteBasisFn { anchor: grid.coords(point), index: k.clone(), factors, roots })
}
