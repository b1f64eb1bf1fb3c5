//! The energies `E_s` and the trace formulas.
//!
//! The transmission coefficient encodes every conserved quantity. On the
//! real line,
//!
//! ```text
//! ‖u‖²_{L²} = (1/π) ∫_ℝ ln|T(ξ/2)| dξ + 4 Σ_k Im z_k,
//! E_s(u)    = (1/π) ∫_ℝ (1+ξ²)^s ln|T(ξ/2)| dξ + 2 Σ_k Ξ_s(2z_k),
//! Ξ_s(w)    = Im ∫_0^w (1+ζ²)^s dζ,
//! ```
//!
//! with the sums over eigenvalues counted with multiplicity. Deforming the
//! integral onto the imaginary axis gives a form that needs no eigenvalues:
//!
//! ```text
//! E_s = (2/π) sin(πs) ∫_1^∞ (τ²−1)^s [−ln|T(iτ/2)| + Σ_{j=0}^{2} (−1)^j H_{2j} τ^{−2j−1}] dτ
//!       + Σ_{j=0}^{2} C(s, j) H_{2j},
//! ```
//!
//! valid for `−1/2 < s < 3` as long as no eigenvalue lies on `i[1/2, ∞)`.
//! For integer `s` the integral vanishes and `E_s` is the stated
//! combination of Hamiltonians; `E_0 = ‖u‖²`.

use gauss_quad::{GaussJacobi, GaussLegendre};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use soliton_core::{Error, GridField, Result};
use soliton_scattering::{locate_spectrum_with, spectrum::DEFAULT_SAMPLES, Region, Scatterer};

use crate::hamiltonian::hamiltonians;

/// `|T⁻¹|` below this at a ray sample signals an eigenvalue on the ray.
pub const RAY_POLE_THRESHOLD: f64 = 1e-3;
/// Real-line integrals stop once `|ln|T||` falls below this.
pub const TAIL_TOLERANCE: f64 = 1e-9;
/// Upper end of the ray integral.
pub const TAU_MAX: f64 = 128.0;

/// Default search region for eigenvalues in the trace formulas.
pub fn default_region() -> Region {
    Region::new(-5.0, 5.0, 0.05, 5.0).expect("valid default region")
}

/// Generalized binomial coefficient `C(s, j)`.
fn binom(s: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, k| acc * (s - k as f64) / (k + 1) as f64)
}

fn check_order(s: f64) -> Result<()> {
    if !(s > -0.5 && s < 3.0) {
        return Err(Error::Domain(format!("E_s is available for -1/2 < s < 3 (got s = {s})")));
    }
    Ok(())
}

/// Whether `s` is a non-negative integer.
fn integer_order(s: f64) -> Option<usize> {
    (s >= 0.0 && s.fract() == 0.0).then_some(s as usize)
}

/// `E_s(u)` from the ray form, using a reusable engine.
pub fn energy_es_with(sc: &Scatterer, s: f64) -> Result<f64> {
    check_order(s)?;
    let h = hamiltonians(sc.field());
    let h_even = [h[0], h[2], h[4]];
    let series: f64 = (0..3).map(|j| binom(s, j) * h_even[j]).sum();
    if integer_order(s).is_some() || sc.field().is_zero() {
        return Ok(series);
    }
    // Nodes: Gauss–Jacobi on [1, 2] absorbs (τ − 1)^s; Gauss–Legendre on
    // dyadic panels [2^k, 2^{k+1}] beyond.
    let mut nodes: Vec<(f64, f64)> = Vec::new();
    let jac = GaussJacobi::new(24, 0.0, s).map_err(|e| Error::Numeric(format!("Gauss-Jacobi rule: {e:?}")))?;
    for (x, w) in jac.iter() {
        let tau = (x + 3.0) / 2.0;
        nodes.push((tau, w * 2f64.powf(-s - 1.0) * (tau + 1.0).powf(s)));
    }
    let gl = GaussLegendre::new(16).map_err(|e| Error::Numeric(format!("Gauss-Legendre rule: {e:?}")))?;
    let mut a = 2.0;
    while a < TAU_MAX {
        let b = 2.0 * a;
        for (x, w) in gl.iter() {
            let tau = 0.5 * (a + b) + 0.5 * (b - a) * x;
            nodes.push((tau, 0.5 * (b - a) * w * (tau * tau - 1.0).powf(s)));
        }
        a = b;
    }
    let integral: f64 = nodes
        .par_iter()
        .map(|(tau, w)| {
            let z = C64::new(0.0, 0.5 * tau);
            let t_inv = sc.transmission_inv(z)?;
            if t_inv.norm() < RAY_POLE_THRESHOLD {
                return Err(Error::PoleOnRay(z.im));
            }
            let asym: f64 = (0..3).map(|j| (-1f64).powi(j as i32) * h_even[j] * tau.powi(-2 * j as i32 - 1)).sum();
            Ok(w * (t_inv.norm().ln() + asym))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .sum();
    Ok(2.0 / std::f64::consts::PI * (std::f64::consts::PI * s).sin() * integral + series)
}

/// The conserved energy `E_s(u)`, `−1/2 < s < 3`.
///
/// ```
/// use soliton_core::{Grid, GridField};
/// use soliton_conserved::energy_es;
/// let u = GridField::zeros(Grid::centered(64, 20.0).unwrap());
/// assert_eq!(energy_es(&u, 0.5).unwrap(), 0.0);
/// ```
pub fn energy_es(u: &GridField, s: f64) -> Result<f64> {
    energy_es_with(&Scatterer::new(u), s)
}

/// `Ξ_s(w) = Im ∫_0^w (1+ζ²)^s dζ` along the straight segment.
pub fn xi_s(s: f64, w: C64) -> Result<f64> {
    if w.re.abs() < 1e-12 && w.im >= 1.0 {
        return Err(Error::PoleOnRay(0.5 * w.im));
    }
    let gl = GaussLegendre::new(16).map_err(|e| Error::Numeric(format!("Gauss-Legendre rule: {e:?}")))?;
    const PANELS: usize = 16;
    let mut acc = C64::new(0.0, 0.0);
    for p in 0..PANELS {
        let (a, b) = (p as f64 / PANELS as f64, (p + 1) as f64 / PANELS as f64);
        for (x, wt) in gl.iter() {
            let t = 0.5 * (a + b) + 0.5 * (b - a) * x;
            let zeta = w * t;
            acc += (1.0 + zeta * zeta).powf(s) * w * (0.5 * (b - a) * wt);
        }
    }
    Ok(acc.im)
}

/// `∫_ℝ weight(ξ) ln|T(ξ/2)| dξ`, integrated outward in unit panels until
/// `|ln|T||` drops below [`TAIL_TOLERANCE`] (or the grid's Nyquist band is
/// exhausted).
pub fn real_line_integral(sc: &Scatterer, weight: &(dyn Fn(f64) -> f64 + Sync)) -> Result<f64> {
    if sc.field().is_zero() {
        return Ok(0.0);
    }
    let gl = GaussLegendre::new(16).map_err(|e| Error::Numeric(format!("Gauss-Legendre rule: {e:?}")))?;
    let xi_max = 2.0 * std::f64::consts::PI / sc.field().grid().dx();
    const BATCH: usize = 8;
    let mut total = 0.0;
    let mut start = 0.0;
    loop {
        // One batch of unit panels on each side of the origin.
        let mut nodes = Vec::with_capacity(2 * BATCH * 16);
        for p in 0..BATCH {
            let a = start + p as f64;
            for (x, w) in gl.iter() {
                let xi = a + 0.5 + 0.5 * x;
                nodes.push((xi, 0.5 * w));
                nodes.push((-xi, 0.5 * w));
            }
        }
        let vals: Vec<(f64, f64, f64)> = nodes
            .par_iter()
            .map(|(xi, w)| {
                let t_inv = sc.transmission_inv(C64::new(0.5 * xi, 0.0))?;
                Ok((*xi, *w, -t_inv.norm().ln()))
            })
            .collect::<Result<_>>()?;
        total += vals.iter().map(|(xi, w, l)| w * weight(*xi) * l).sum::<f64>();
        start += BATCH as f64;
        let edge = vals.iter().filter(|(xi, _, _)| xi.abs() > start - 1.0).map(|(_, _, l)| l.abs()).fold(0.0, f64::max);
        if edge < TAIL_TOLERANCE || start > xi_max {
            return Ok(total);
        }
    }
}

/// `E_s(u)` from the real-line form with explicit eigenvalue contributions
/// (eigenvalues searched in `region`). Agrees with [`energy_es`].
pub fn energy_es_real_line(u: &GridField, s: f64, region: &Region) -> Result<f64> {
    check_order(s)?;
    let sc = Scatterer::new(u);
    let continuous = real_line_integral(&sc, &|xi| (1.0 + xi * xi).powf(s))? / std::f64::consts::PI;
    let report = locate_spectrum_with(&sc, region, DEFAULT_SAMPLES)?;
    let mut discrete = 0.0;
    for z in report.roots_flat() {
        discrete += 2.0 * xi_s(s, 2.0 * z)?;
    }
    Ok(continuous + discrete)
}

/// Split of the mass trace formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceParts {
    /// `‖u‖²`.
    pub mass: f64,
    /// `(1/π) ∫ ln|T(ξ/2)| dξ`.
    pub continuous: f64,
    /// `4 Σ Im z_k`.
    pub discrete: f64,
}

impl TraceParts {
    /// `|mass − continuous − discrete|`.
    pub fn residual(&self) -> f64 {
        (self.mass - self.continuous - self.discrete).abs()
    }
}

/// Both sides of the mass trace formula, with eigenvalues searched in
/// `region`.
pub fn trace_parts(u: &GridField, region: &Region) -> Result<TraceParts> {
    let sc = Scatterer::new(u);
    let mass = u.l2_norm().powi(2);
    let continuous = real_line_integral(&sc, &|_| 1.0)? / std::f64::consts::PI;
    let discrete = if u.is_zero() {
        0.0
    } else {
        let report = locate_spectrum_with(&sc, region, DEFAULT_SAMPLES)?;
        4.0 * report.roots_flat().iter().map(|z| z.im).sum::<f64>()
    };
    Ok(TraceParts { mass, continuous, discrete })
}

/// `|‖u‖² − (1/π)∫ ln|T(ξ/2)| dξ − 4 Σ Im z_k|`, eigenvalues searched in
/// [`default_region`].
pub fn trace_residual(u: &GridField) -> Result<f64> {
    Ok(trace_parts(u, &default_region())?.residual())
}
