//! Effective single-soliton parameters of a two-soliton state.
//!
//! When `|α₀|` is large the state is close to two solitons with
//! eigenvalues `z± = (z₁+z₂)/2 ± σ₀/2`, centres `x±` and phases `θ±`. For
//! distinct eigenvalues far apart these tend to the original `z₁`, `z₂`;
//! near a double eigenvalue they describe the two bumps into which the
//! double soliton splits.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use soliton_core::{Error, Result};

use crate::params::TwoSolParams;

/// Below this `|α₀|` the state is a single bump and no split is defined.
pub const TWO_BUMP_THRESHOLD: f64 = 4.0;

/// Effective parameters of the two bumps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveParams {
    /// Eigenvalue of the right bump.
    pub z_plus: C64,
    /// Eigenvalue of the left bump.
    pub z_minus: C64,
    /// Centre of the right bump.
    pub x_plus: f64,
    /// Centre of the left bump.
    pub x_minus: f64,
    /// Phase of the right bump, in `[0, π)`.
    pub theta_plus: f64,
    /// Phase of the left bump, in `[0, π)`.
    pub theta_minus: f64,
    /// Splitting parameter `α₀ = γ₀₀ sinh((z₁−z₂)γ₀₀)/((z₁−z₂)γ₀₀)`.
    pub alpha0: C64,
    /// `σ₀ = cosh((z₁−z₂)γ₀₀)/α₀ = z₊ − z₋`.
    pub sigma0: C64,
    /// `γ₀₀ = a₂β₂ + a₃β₃`.
    pub gamma00: C64,
    /// Centre of mass.
    pub x0: f64,
    /// Mean phase.
    pub theta: f64,
}

/// `(a₂, a₃)`: `γ₀₀ = a₂β₂ + a₃β₃`.
pub fn gamma_coefficients(z1: C64, z2: C64) -> (C64, C64) {
    let i = C64::i();
    let s = (z1 + z2).im;
    let a2 = i * (z1 + z2) - i * (z1 * z1 + z2 * z2).im / s;
    let a3 = i * (z1 * z1 + z1 * z2 + z2 * z2) - i * (z1.powu(3) + z2.powu(3)).im / s;
    (a2, a3)
}

/// `γ₀₀` of the state.
pub fn gamma00(p: &TwoSolParams) -> C64 {
    let (a2, a3) = gamma_coefficients(p.z1, p.z2);
    a2 * p.beta[2] + a3 * p.beta[3]
}

/// `α₀` of the state; `|α₀| ≥ 4` is the two-bump regime.
pub fn alpha0(p: &TwoSolParams) -> C64 {
    let g = gamma00(p);
    let d = (p.z1 - p.z2) * g;
    if d.norm() < 1e-8 {
        g * (1.0 + d * d / 6.0)
    } else {
        g * d.sinh() / d
    }
}

/// Centre of mass `x₀` of the state.
pub fn center_of_mass(p: &TwoSolParams) -> f64 {
    let (z1, z2) = (p.z1, p.z2);
    let s = (z1 + z2).im;
    -p.beta[1] - (p.beta[2] * (z1 * z1 + z2 * z2).im + p.beta[3] * (z1.powu(3) + z2.powu(3)).im) / s
}

/// Effective parameters, or [`Error::SingleBump`] when `|α₀| < 4`.
///
/// ```
/// use num_complex::Complex64 as C;
/// use soliton_twosoliton::{effective_params, TwoSolParams};
/// // Double eigenvalue: α₀ = γ₀₀ and σ₀ = 1/γ₀₀.
/// let p = TwoSolParams::new(C::i(), C::i(), [0.0, 0.0, 0.0, 25.0]).unwrap();
/// let e = effective_params(&p).unwrap();
/// assert!((e.alpha0 - e.gamma00).norm() < 1e-12);
/// assert!((e.sigma0 * e.gamma00 - 1.0).norm() < 1e-12);
/// ```
pub fn effective_params(p: &TwoSolParams) -> Result<EffectiveParams> {
    let (z1, z2) = (p.z1, p.z2);
    let [b0, b1, b2, b3] = p.beta;
    let g00 = gamma00(p);
    let al0 = alpha0(p);
    if !(al0.norm() >= TWO_BUMP_THRESHOLD) {
        return Err(Error::SingleBump(al0.norm()));
    }
    let sg0 = ((z1 - z2) * g00).cosh() / al0;
    let zc = 0.5 * (z1 + z2);
    let (zp, zm) = (zc + 0.5 * sg0, zc - 0.5 * sg0);
    if !(zp.im > 0.0 && zm.im > 0.0) {
        return Err(Error::Numeric(format!("effective eigenvalues {zp}, {zm} left the upper half-plane")));
    }
    let s = (z1 + z2).im;
    let x0 = center_of_mass(p);
    let l = (z1 - z2.conj()).norm().ln() + (2.0 * al0.norm()).ln();
    let xp = x0 + l / (2.0 * zp.im);
    let xm = x0 - l / (2.0 * zm.im);
    let xs = [p.free_center(z1), p.free_center(z2)];
    let th: Vec<f64> = [z1, z2]
        .iter()
        .zip(xs)
        .map(|(z, x)| b0 + (b1 + x) * z.re + b2 * (z * z).re + b3 * z.powu(3).re)
        .collect();
    let theta = 0.5 * (th[0] + th[1] + (z1.im * z2.re - z2.im * z1.re) / s * (xs[0] - xs[1]));
    let thp = theta + (xp - x0) * zp.re + 0.5 * (al0.arg() + (zp - zm.conj()).arg());
    let thm = theta + (xm - x0) * zm.re - 0.5 * ((-al0).arg() + (zm - zp.conj()).arg());
    Ok(EffectiveParams {
        z_plus: zp,
        z_minus: zm,
        x_plus: xp,
        x_minus: xm,
        theta_plus: thp.rem_euclid(PI),
        theta_minus: thm.rem_euclid(PI),
        alpha0: al0,
        sigma0: sg0,
        gamma00: g00,
        x0,
        theta,
    })
}

/// Asymptotic position shift of the soliton attached to `z_j` when it is
/// far from the other one: `±(ln|z_j − z̄_k| − ln|z_j − z_k|)/(2 Im z_j)`,
/// with `+` when soliton `j` lies to the right.
pub fn separated_shift(zj: C64, zk: C64, j_on_right: bool) -> f64 {
    let shift = ((zj - zk.conj()).norm().ln() - (zj - zk).norm().ln()) / (2.0 * zj.im);
    if j_on_right {
        shift
    } else {
        -shift
    }
}
