//! Uniform periodic grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest admissible number of samples.
pub const MIN_SAMPLES: usize = 8;

/// A uniform grid `x_i = x_min + i·dx`, `i = 0..n`, interpreted as one period
/// of a periodic domain of length `n·dx`.
///
/// The periodic cell stands in for the real line: every state handled by the
/// library decays exponentially, so a cell a few soliton widths wider than
/// the support behaves like the line up to exponentially small errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_min: f64,
    dx: f64,
    n: usize,
}

impl Grid {
    /// Creates a grid, validating `n >= 8`, `dx > 0` and finiteness.
    pub fn new(x_min: f64, dx: f64, n: usize) -> Result<Self> {
        if n < MIN_SAMPLES {
            return Err(Error::Domain(format!("grid needs at least {MIN_SAMPLES} samples, got {n}")));
        }
        if !(dx.is_finite() && dx > 0.0) || !x_min.is_finite() {
            return Err(Error::Domain(format!("invalid grid spacing {dx} or origin {x_min}")));
        }
        Ok(Self { x_min, dx, n })
    }

    /// A grid of `n` samples covering `[-length/2, length/2)`.
    ///
    /// ```
    /// use soliton_core::Grid;
    /// let g = Grid::centered(4096, 80.0).unwrap();
    /// assert_eq!(g.x(2048), 0.0);
    /// assert_eq!(g.length(), 80.0);
    /// ```
    pub fn centered(n: usize, length: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Domain(format!("invalid domain length {length}")));
        }
        Self::new(-0.5 * length, length / n as f64, n)
    }

    /// Left end of the grid.
    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    /// Sample spacing.
    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Number of samples.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Period `n·dx`.
    pub fn length(&self) -> f64 {
        self.n as f64 * self.dx
    }

    /// Position of sample `i`.
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    /// Right end of the periodic cell, `x_min + n·dx`.
    pub fn x_end(&self) -> f64 {
        self.x_min + self.length()
    }

    /// All sample positions.
    pub fn xs(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    /// Angular wavenumbers in discrete-Fourier-transform order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.n;
        let scale = 2.0 * std::f64::consts::PI / self.length();
        (0..n)
            .map(|k| {
                let m = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
                // The Nyquist mode is ambiguous; treating it as zero keeps odd
                // derivatives of real data real.
                if n % 2 == 0 && k == n / 2 {
                    0.0
                } else {
                    m * scale
                }
            })
            .collect()
    }

    /// Whether the domain is wide enough for states whose slowest spatial
    /// decay rate is `min_decay` (`n·dx ≥ 20/min_decay`).
    pub fn is_wide_enough(&self, min_decay: f64) -> bool {
        min_decay > 0.0 && self.length() >= 20.0 / min_decay
    }
}
