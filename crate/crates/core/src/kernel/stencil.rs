use crate::error::{Error, Result};

/// Fractional part of the query position along each axis, in `[0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalOffset(Vec<f64>);

impl FractionalOffset {
    pub fn new(frac: Vec<f64>) -> Result<Self> {
        if frac.is_empty() {
            return Err(Error::Config("offset needs at least one component".into()));
        }
        if let Some(v) = frac.iter().find(|v| !(0.0..1.0).contains(*v)) {
            return Err(Error::Config(format!("offset component {v} outside [0, 1)")));
        }
        Ok(Self(frac))
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Number of local support points per axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StencilSpec(Vec<usize>);

impl StencilSpec {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::Config(format!("invalid stencil sizes {sizes:?}")));
        }
        Ok(Self(sizes))
    }

    pub fn uniform(n: usize, size: usize) -> Result<Self> {
        Self::new(vec![size; n])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Consecutive integer nodes `start, ..., start + len - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StencilWindow {
    pub start: i64,
    pub len: usize,
}

impl StencilWindow {
    pub fn indices(&self) -> Vec<i64> {
        (self.start..self.start + self.len as i64).collect()
    }
}

/// Local support around query coordinate `q` on the integer grid.
///
/// Odd sizes center on the nearest node (ties round up); even sizes take
/// `size / 2` nodes on each side of `floor(q)`, i.e.
/// `floor(q) - size/2 + 1 ..= floor(q) + size/2`.
pub fn select_stencil(q: f64, size: usize) -> StencilWindow {
    assert!(size >= 1, "stencil size must be positive");
    let start = if size % 2 == 1 {
        let center = (q + 0.5).floor() as i64;
        center - (size as i64 - 1) / 2
    } else {
        q.floor() as i64 - size as i64 / 2 + 1
    };
    StencilWindow { start, len: size }
}
