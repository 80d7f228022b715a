//! Uniform Cartesian grids: the sampled-function carrier shared by the
//! measure, potential and test-function machinery.

use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
// needed for the pure no_std build; std builds resolve these inherently
#[allow(unused_imports)]
use num_traits::Float;

/// Axis-aligned box in ℝⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundingBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoundingBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(Error::Grid("box endpoints must have equal nonzero length"));
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a < b)) {
            return Err(Error::Grid("box must have nonempty interior"));
        }
        Ok(BoundingBox { lo, hi })
    }

    /// Centered cube [-half, half]ⁿ.
    pub fn centered_cube(n: usize, half: f64) -> Self {
        BoundingBox {
            lo: vec![-half; n],
            hi: vec![half; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn diameter(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| (b - a) * (b - a))
            .sum::<f64>()
            .sqrt()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(xi, (a, b))| *xi >= *a && *xi <= *b)
    }
}

/// Real-valued function sampled at the cell centers of a uniform grid.
///
/// Cell (i₁,…,iₙ) has center lo_j + (i_j + 1/2)h and volume hⁿ; values are
/// stored row-major with the last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub bbox: BoundingBox,
    pub h: f64,
    pub dims: Vec<usize>,
    pub values: Vec<f64>,
}

impl GridFunction {
    /// Zero-initialized grid; `h` must tile every axis an integral number
    /// of times.
    pub fn zeros(bbox: BoundingBox, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::Grid("cell size must be positive"));
        }
        let mut dims = Vec::with_capacity(bbox.dim());
        for (a, b) in bbox.lo.iter().zip(&bbox.hi) {
            let count = (b - a) / h;
            let rounded = count.round();
            if (count - rounded).abs() > 1e-9 * rounded.max(1.0) || rounded < 1.0 {
                return Err(Error::Grid("cell size does not tile the box"));
            }
            dims.push(rounded as usize);
        }
        let total: usize = dims.iter().product();
        Ok(GridFunction {
            bbox,
            h,
            dims,
            values: vec![0.0; total],
        })
    }

    /// Sample `f` at every cell center.
    pub fn from_fn<F: FnMut(&[f64]) -> f64>(bbox: BoundingBox, h: f64, mut f: F) -> Result<Self> {
        let mut g = Self::zeros(bbox, h)?;
        let n = g.dim();
        let mut x = vec![0.0; n];
        for idx in 0..g.values.len() {
            g.center_of(idx, &mut x);
            g.values[idx] = f(&x);
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Lebesgue volume of one cell, hⁿ.
    pub fn cell_volume(&self) -> f64 {
        self.h.powi(self.dim() as i32)
    }

    /// Write the center of flat cell `idx` into `out`.
    pub fn center_of(&self, idx: usize, out: &mut [f64]) {
        let mut rem = idx;
        for j in (0..self.dims.len()).rev() {
            let i = rem % self.dims[j];
            rem /= self.dims[j];
            out[j] = self.bbox.lo[j] + (i as f64 + 0.5) * self.h;
        }
    }

    /// Flat index of the cell containing `x`, or None outside the box.
    pub fn cell_containing(&self, x: &[f64]) -> Option<usize> {
        let mut idx = 0usize;
        for j in 0..self.dims.len() {
            let t = (x[j] - self.bbox.lo[j]) / self.h;
            if t < 0.0 || t > self.dims[j] as f64 {
                return None;
            }
            let i = (t.floor() as usize).min(self.dims[j] - 1);
            idx = idx * self.dims[j] + i;
        }
        Some(idx)
    }

    /// Value at the cell containing `x`; 0 outside the box.
    pub fn value_at(&self, x: &[f64]) -> f64 {
        self.cell_containing(x).map_or(0.0, |i| self.values[i])
    }

    /// Multi-index of flat cell `idx`.
    pub fn multi_index(&self, idx: usize) -> Vec<usize> {
        let mut rem = idx;
        let mut mi = vec![0usize; self.dims.len()];
        for j in (0..self.dims.len()).rev() {
            mi[j] = rem % self.dims[j];
            rem /= self.dims[j];
        }
        mi
    }

    /// Flat index from a multi-index.
    pub fn flat_index(&self, mi: &[usize]) -> usize {
        let mut idx = 0usize;
        for (j, &i) in mi.iter().enumerate() {
            idx = idx * self.dims[j] + i;
        }
        idx
    }

    /// Geometry equality: same box, cell size and dims.
    pub fn same_geometry(&self, other: &GridFunction) -> bool {
        self.bbox == other.bbox && self.h == other.h && self.dims == other.dims
    }
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}
