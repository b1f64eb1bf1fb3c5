//! Closed-form evaluation of two-soliton states.
//!
//! With `γ_j = −i(β(z_j) + z_j x)`, `G = (γ₁+γ₂)/2`, `d = γ₁ − γ₂` and
//! `α = (d/(z₁−z₂))·sinh(d)/d`, the field is `Q = 2A₀/D₀` where
//!
//! ```text
//! A₀ = 2 Im(z₁+z₂)(e^{2G} cosh d̄ + e^{−2Ḡ} cosh d)
//!      − i α (z₁−z₂)² e^{−2Ḡ} − i ᾱ (z̄₁−z̄₂)² e^{2G}
//!      + i c (ᾱ e^{2G} + α e^{−2Ḡ}),
//! D₀ = 2(|cosh 2G|² + |sinh 2G|² + |cosh d|²) + 2c|α|²,
//! c  = |z₁+z₂|² − 4 Re(z₁z₂).
//! ```
//!
//! `α` is smooth across `z₁ = z₂`, where `d/(z₁−z₂)` becomes
//! `−i(β'(z) + x)`, so double eigenvalues need no limit. Both `A₀` and `D₀`
//! are evaluated after factoring out `e^{2m}`, `m = max(|Re 2G|, |Re d|)`,
//! so no intermediate quantity overflows.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use soliton_core::{Grid, GridField, Result};

use crate::params::TwoSolParams;

/// `cosh(w)·e^{−m}` for `|Re w| ≤ m`.
fn cosh_scaled(w: C64, m: f64) -> C64 {
    0.5 * ((w - m).exp() + (-w - m).exp())
}

/// `sinh(w)·e^{−m}` for `|Re w| ≤ m`.
fn sinh_scaled(w: C64, m: f64) -> C64 {
    0.5 * ((w - m).exp() - (-w - m).exp())
}

/// `sinh(d)/d · e^{−m}` for `|Re d| ≤ m`.
fn sinhc_scaled(d: C64, m: f64) -> C64 {
    if d.norm() < 1e-4 {
        (1.0 + d * d / 6.0) * (-m).exp()
    } else {
        sinh_scaled(d, m) / d
    }
}

/// The two-soliton field at `x`.
///
/// ```
/// use num_complex::Complex64 as C;
/// use soliton_twosoliton::{closed_form_q, TwoSolParams};
/// // Double eigenvalue at i with β = 0: the field is 4 at the origin.
/// let p = TwoSolParams::new(C::i(), C::i(), [0.0; 4]).unwrap();
/// assert!((closed_form_q(&p, 0.0) - C::new(4.0, 0.0)).norm() < 1e-14);
/// ```
pub fn closed_form_q(p: &TwoSolParams, x: f64) -> C64 {
    let (z1, z2) = (p.z1, p.z2);
    let mi = C64::new(0.0, -1.0);
    let g1 = mi * (p.beta_at(z1) + z1 * x);
    let g2 = mi * (p.beta_at(z2) + z2 * x);
    let g = 0.5 * (g1 + g2);
    let d = g1 - g2;
    let h = z1 - z2;
    let dd = if h.norm() == 0.0 { mi * (p.beta_derivative_at(z1) + x) } else { d / h };
    let m = (2.0 * g.re).abs().max(d.re.abs());
    // α·e^{−m}
    let al = dd * sinhc_scaled(d, m);
    let c = (z1 + z2).norm_sqr() - 4.0 * (z1 * z2).re;
    let e2g = (2.0 * g - m).exp();
    let em2g = (-2.0 * g.conj() - m).exp();
    let i = C64::i();
    let s = (z1 + z2).im;
    let a0 = 2.0 * s * (e2g * cosh_scaled(d.conj(), m) + em2g * cosh_scaled(d, m))
        - i * al * h * h * em2g
        - i * al.conj() * (h * h).conj() * e2g
        + i * c * (al.conj() * e2g + al * em2g);
    let d0 = 2.0
        * (cosh_scaled(2.0 * g, m).norm_sqr() + sinh_scaled(2.0 * g, m).norm_sqr() + cosh_scaled(d, m).norm_sqr())
        + 2.0 * c * al.norm_sqr();
    2.0 * a0 / d0
}

/// The two-soliton field sampled on `grid`.
pub fn closed_form_field(p: &TwoSolParams, grid: Grid) -> Result<GridField> {
    let values: Vec<C64> = (0..grid.n()).into_par_iter().map(|k| closed_form_q(p, grid.x(k))).collect();
    GridField::new(grid, values)
}
