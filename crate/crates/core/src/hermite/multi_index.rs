use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Derivative orders, one per axis.
///
/// `Ord` is the degree reverse-lexicographic order: lower total degree first,
/// and among equal totals the index with the larger entry at the last
/// differing axis comes first. This is a linear extension of the
/// componentwise partial order, so sorting by it keeps every `k <= m` pair
/// with `k` ahead of `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(orders: Vec<usize>) -> Self {
        Self(orders)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn orders(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le_componentwise(&self, other: &Self) -> bool {
        assert_eq!(self.dim(), other.dim(), "multi-index dimension mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Neither `self <= other` nor `other <= self`.
    pub fn incomparable(&self, other: &Self) -> bool {
        !self.le_componentwise(other) && !other.le_componentwise(self)
    }

    pub fn odd_along(&self, axis: usize) -> bool {
        self.0[axis] % 2 == 1
    }
}

impl std::ops::Index<usize> for MultiIndex {
    type Output = usize;

    fn index(&self, axis: usize) -> &usize {
        &self.0[axis]
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.dim() != other.dim() {
            return self.dim().cmp(&other.dim());
        }
        match self.total().cmp(&other.total()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                // larger entry at the last differing axis sorts first
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// Number of matched conditions per axis at one support point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiplicity(Vec<usize>);

impl Multiplicity {
    pub fn new(nu: Vec<usize>) -> Result<Self> {
        if nu.is_empty() {
            return Err(Error::InvalidMultiplicity("empty multiplicity vector".into()));
        }
        if let Some(i) = nu.iter().position(|&v| v == 0) {
            return Err(Error::InvalidMultiplicity(format!(
                "component {i} is zero; every multiplicity must be >= 1"
            )));
        }
        Ok(Self(nu))
    }

    /// The same multiplicity along each of `n` axes.
    pub fn uniform(n: usize, nu: usize) -> Result<Self> {
        Self::new(vec![nu; n])
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `c = prod nu_i`, the number of conditions per support point.
    pub fn cardinality(&self) -> usize {
        self.0.iter().product()
    }

    pub fn admits(&self, k: &MultiIndex) -> bool {
        k.dim() == self.dim() && k.orders().iter().zip(&self.0).all(|(k, nu)| k < nu)
    }
}

impl std::ops::Index<usize> for Multiplicity {
    type Output = usize;

    fn index(&self, axis: usize) -> &usize {
        &self.0[axis]
    }
}

/// All `k` in `[0, nu - 1]`, sorted in degree reverse-lexicographic order.
pub fn reverse_lex_enumerate(nu: &Multiplicity) -> Vec<MultiIndex> {
    let n = nu.dim();
    let mut out = Vec::with_capacity(nu.cardinality());
    let mut current = vec![0usize; n];
    loop {
        out.push(MultiIndex::new(current.clone()));
        let mut axis = 0;
        loop {
            if axis == n {
                out.sort();
                return out;
            }
            current[axis] += 1;
            if current[axis] < nu[axis] {
                break;
            }
            current[axis] = 0;
            axis += 1;
        }
    }
}
