//! Complex fields sampled on a grid, with CSV serialization.

use std::io::{BufRead, Write};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fmt::f17;
use crate::grid::Grid;

/// Relative tail magnitude below which a field counts as localized.
pub const TAIL_TOLERANCE: f64 = 1e-6;

/// A complex-valued state `u(x)` sampled on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    grid: Grid,
    values: Vec<C64>,
}

impl GridField {
    /// Wraps samples, checking the length and finiteness.
    pub fn new(grid: Grid, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::Schema(format!(
                "field has {} samples but the grid has {}",
                values.len(),
                grid.n()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Numeric(format!("non-finite field value at sample {i}")));
        }
        Ok(Self { grid, values })
    }

    /// The zero field.
    pub fn zeros(grid: Grid) -> Self {
        Self { grid, values: vec![C64::new(0.0, 0.0); grid.n()] }
    }

    /// Samples `f` at every grid point.
    ///
    /// ```
    /// use soliton_core::{Grid, GridField};
    /// use num_complex::Complex64;
    /// let g = Grid::centered(256, 20.0).unwrap();
    /// let q0 = GridField::from_fn(g, |x| Complex64::new(2.0 / (2.0 * x).cosh(), 0.0));
    /// assert!((q0.l2_norm().powi(2) - 4.0).abs() < 1e-10);
    /// ```
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> C64) -> Self {
        let values = (0..grid.n()).map(|i| f(grid.x(i))).collect();
        Self { grid, values }
    }

    /// The underlying grid.
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// The samples.
    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Consumes the field and returns its samples.
    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    /// Whether every sample is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    /// Trapezoid (equivalently, periodic rectangle) L² norm.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dx()).sqrt()
    }

    /// Maximum modulus.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// L² distance to another field on the same grid.
    pub fn l2_distance(&self, other: &GridField) -> f64 {
        let s: f64 = self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm_sqr()).sum();
        (s * self.grid.dx()).sqrt()
    }

    /// Sup distance to another field on the same grid.
    pub fn sup_distance(&self, other: &GridField) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Pointwise sum `self + c·other`.
    pub fn axpy(&self, c: C64, other: &GridField) -> GridField {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + c * b).collect();
        GridField { grid: self.grid, values }
    }

    /// Whether the boundary samples fall below `1e-6·max|u|`.
    ///
    /// This is a diagnostic; operations never reject a field because of it.
    pub fn is_localized(&self) -> bool {
        let sup = self.sup_norm();
        if sup == 0.0 {
            return true;
        }
        let n = self.values.len();
        let tail = self.values[0].norm().max(self.values[n - 1].norm());
        tail <= TAIL_TOLERANCE * sup
    }

    /// Writes the field as CSV with header `x,re,im`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,re,im")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(w, "{},{},{}", f17(self.grid.x(i)), f17(v.re), f17(v.im))?;
        }
        Ok(())
    }

    /// CSV text of the field.
    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }

    /// Reads a field from CSV with header `x,re,im`.
    ///
    /// The grid is inferred from the `x` column, which must be uniform to
    /// within `1e-9` relative spacing error.
    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| Error::Schema("empty CSV input".into()))??;
        let cols: Vec<&str> = header.trim().split(',').map(str::trim).collect();
        if cols != ["x", "re", "im"] {
            return Err(Error::Schema(format!("expected header `x,re,im`, found `{}`", header.trim())));
        }
        let mut xs = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Schema(format!("row {} has {} columns, expected 3", lineno + 2, parts.len())));
            }
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Schema(format!("row {}: cannot parse `{}`", lineno + 2, s.trim())))
            };
            xs.push(parse(parts[0])?);
            values.push(C64::new(parse(parts[1])?, parse(parts[2])?));
        }
        let n = xs.len();
        if n < crate::grid::MIN_SAMPLES {
            return Err(Error::Schema(format!("CSV has {n} rows; at least {} required", crate::grid::MIN_SAMPLES)));
        }
        let dx = (xs[n - 1] - xs[0]) / (n - 1) as f64;
        for (i, x) in xs.iter().enumerate() {
            if (x - (xs[0] + i as f64 * dx)).abs() > 1e-9 * dx.abs().max(1.0) * (i as f64 + 1.0) {
                return Err(Error::Schema(format!("non-uniform x column at row {}", i + 2)));
            }
        }
        let grid = Grid::new(xs[0], dx, n).map_err(|e| Error::Schema(e.to_string()))?;
        GridField::new(grid, values).map_err(|e| Error::Schema(e.to_string()))
    }
}
