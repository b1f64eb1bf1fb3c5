//! Discrete Sobolev norms on periodic grids.

use crate::error::{Error, Result};
use crate::field::GridField;
use crate::spectral;

/// Discrete `H^s` norm `(Σ_k (1+k²)^s |û(k)|² Δk/2π)^{1/2}`.
///
/// The normalization is Parseval's: for `s = 0` the result equals the
/// periodic-trapezoid L² norm. The Nyquist mode carries `|k| = π/dx`.
///
/// ```
/// use soliton_core::{hs_norm, Grid, GridField};
/// use num_complex::Complex64;
/// let g = Grid::centered(512, 30.0).unwrap();
/// let q0 = GridField::from_fn(g, |x| Complex64::new(2.0 / (2.0 * x).cosh(), 0.0));
/// assert!((hs_norm(&q0, 0.0).unwrap() - 2.0).abs() < 1e-10);
/// ```
pub fn hs_norm(u: &GridField, s: f64) -> Result<f64> {
    if !(s > -0.5) {
        return Err(Error::Domain(format!("H^s norm needs s > -1/2, got {s}")));
    }
    let grid = u.grid();
    let n = grid.n();
    let spec = spectral::fft(u.values());
    let scale = 2.0 * std::f64::consts::PI / grid.length();
    let total: f64 = spec
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let m = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
            let kk = m * scale;
            (1.0 + kk * kk).powf(s) * c.norm_sqr()
        })
        .sum();
    Ok((total * grid.dx() / n as f64).sqrt())
}
