//! Two-soliton dynamics along the NLS and mKdV flows.
//!
//! Along a flow the spectrum is fixed and `γ₀₀` moves linearly, so
//! `L(t) = (z₁ − z₂)γ₀₀(t)` traces a line with velocity `v`. Since
//! `α₀ = γ₀₀ sinh(L)/L`, the dynamics are governed by how this line meets
//! the points `iπℤ` where `sinh L` vanishes:
//!
//! * **double** — `z₁ = z₂`; `α₀ = γ₀₀` and the two bumps separate
//!   logarithmically in `|γ₀₀|`;
//! * **split velocities** — `L` crosses the imaginary axis at a large
//!   angle (`|Re v| ≥ |Im v|`). The encounter is *resonant* when the line
//!   passes close to a point of `iπℤ`;
//! * **split scales** — `L` runs nearly parallel to the imaginary axis. The
//!   lattice `iπℤ` then looks denser by the factor `|Re v̂|`, so closeness
//!   is measured on that scale;
//! * **quasiperiodic** — `L` moves exactly parallel to the imaginary axis,
//!   and the bump pattern is periodic with period `π/|v|`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use soliton_core::{fmt::f17, Grid, Result};
use soliton_evolution::{flow_phase, Flow};

use crate::bumps::{bump_analysis, BumpReport};
use crate::closed_form::closed_form_field;
use crate::effective::{effective_params, gamma_coefficients, gamma00, EffectiveParams};
use crate::params::TwoSolParams;

/// Relative threshold below which a distance to `iπℤ` counts as resonant.
pub const RESONANCE_FRACTION: f64 = 0.1;

/// Qualitative regime of a two-soliton trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Coinciding eigenvalues.
    Double,
    /// Split velocities, passing close to a resonance.
    SplitVelocityResonant,
    /// Split velocities, away from resonances.
    SplitVelocityNonresonant,
    /// Split scales, passing close to a resonance.
    SplitScaleResonant,
    /// Split scales, away from resonances.
    SplitScaleNonresonant,
    /// Periodic bump pattern.
    Quasiperiodic,
    /// `γ₀₀` does not move under the flow.
    Static,
}

impl Regime {
    /// Label used in CSV output.
    pub fn label(self) -> &'static str {
        match self {
            Regime::Double => "double",
            Regime::SplitVelocityResonant => "split-velocity-resonant",
            Regime::SplitVelocityNonresonant => "split-velocity-nonresonant",
            Regime::SplitScaleResonant => "split-scale-resonant",
            Regime::SplitScaleNonresonant => "split-scale-nonresonant",
            Regime::Quasiperiodic => "quasiperiodic",
            Regime::Static => "static",
        }
    }
}

/// Parameters after time `t` of `flow`.
pub fn params_at(p: &TwoSolParams, flow: Flow, t: f64) -> Result<TwoSolParams> {
    let moved = flow_phase(&p.to_phase_point()?, flow.order(), t)?;
    let mut out = TwoSolParams::from_phase_point(&moved)?;
    // Keep the caller's labelling of the two eigenvalues.
    out.z1 = p.z1;
    out.z2 = p.z2;
    Ok(out)
}

/// Velocity of `γ₀₀` under `flow`.
pub fn gamma00_velocity(p: &TwoSolParams, flow: Flow) -> Result<C64> {
    let later = params_at(p, flow, 1.0)?;
    let (a2, a3) = gamma_coefficients(p.z1, p.z2);
    Ok(a2 * (later.beta[2] - p.beta[2]) + a3 * (later.beta[3] - p.beta[3]))
}

/// Velocity of `L = (z₁ − z₂)γ₀₀` under `flow`.
pub fn resonance_velocity(p: &TwoSolParams, flow: Flow) -> Result<C64> {
    Ok((p.z1 - p.z2) * gamma00_velocity(p, flow)?)
}

/// Smallest distance from the segment `L([t0, t1])` to `iπℤ`.
pub fn resonance_distance(p: &TwoSolParams, flow: Flow, t0: f64, t1: f64) -> Result<f64> {
    let dz = p.z1 - p.z2;
    let v = resonance_velocity(p, flow)?;
    let a = dz * gamma00(p) + v * t0;
    let b = dz * gamma00(p) + v * t1;
    let seg = b - a;
    let lo = (a.im.min(b.im) / PI).floor() as i64 - 1;
    let hi = (a.im.max(b.im) / PI).ceil() as i64 + 1;
    Ok((lo..=hi)
        .map(|k| {
            let q = C64::new(0.0, PI * k as f64);
            let s = if seg.norm_sqr() > 0.0 { ((q - a) * seg.conj()).re / seg.norm_sqr() } else { 0.0 };
            (a + seg * s.clamp(0.0, 1.0) - q).norm()
        })
        .fold(f64::INFINITY, f64::min))
}

/// Regime of the trajectory of `p` under `flow` over `[t0, t1]`.
pub fn classify(p: &TwoSolParams, flow: Flow, t0: f64, t1: f64) -> Result<Regime> {
    if p.is_double() {
        return Ok(Regime::Double);
    }
    let v = resonance_velocity(p, flow)?;
    if v.norm() < 1e-14 {
        return Ok(Regime::Static);
    }
    if v.re.abs() <= 1e-12 * v.norm() {
        return Ok(Regime::Quasiperiodic);
    }
    let dist = resonance_distance(p, flow, t0, t1)?;
    let cos = v.re.abs() / v.norm();
    let split_velocity = v.re.abs() >= v.im.abs();
    let resonant = dist < RESONANCE_FRACTION * (PI * cos).min(1.0);
    Ok(match (split_velocity, resonant) {
        (true, true) => Regime::SplitVelocityResonant,
        (true, false) => Regime::SplitVelocityNonresonant,
        (false, true) => Regime::SplitScaleResonant,
        (false, false) => Regime::SplitScaleNonresonant,
    })
}

/// Period of the bump pattern in the quasiperiodic regime, `π/|v|`.
pub fn quasiperiod(p: &TwoSolParams, flow: Flow) -> Result<Option<f64>> {
    match classify(p, flow, 0.0, 0.0)? {
        Regime::Quasiperiodic => Ok(Some(PI / resonance_velocity(p, flow)?.norm())),
        _ => Ok(None),
    }
}

/// State of the trajectory at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint {
    /// Time.
    pub t: f64,
    /// Parameters at time `t`.
    pub params: TwoSolParams,
    /// Effective parameters, absent in the single-bump regime.
    pub effective: Option<EffectiveParams>,
    /// Bumps of the closed-form field.
    pub bumps: BumpReport,
}

/// A sampled two-soliton trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Regime over the sampled time span.
    pub regime: Regime,
    /// One entry per requested time.
    pub points: Vec<TrajectoryPoint>,
}

impl Trajectory {
    /// CSV with header `t,x_plus,x_minus,amp_plus,amp_minus,regime`.
    ///
    /// Positions and amplitudes are those of the rightmost (`plus`) and
    /// leftmost (`minus`) measured bumps; a single bump fills both.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,x_plus,x_minus,amp_plus,amp_minus,regime\n");
        for p in &self.points {
            let (xp, xm, ap, am) = match (p.bumps.bumps.last(), p.bumps.bumps.first()) {
                (Some(r), Some(l)) => (r.location, l.location, r.amplitude, l.amplitude),
                _ => (f64::NAN, f64::NAN, f64::NAN, f64::NAN),
            };
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                f17(p.t),
                f17(xp),
                f17(xm),
                f17(ap),
                f17(am),
                self.regime.label()
            ));
        }
        s
    }

    /// Distance between the outermost bumps at each time (0 for one bump).
    pub fn separations(&self) -> Vec<f64> {
        self.points
            .iter()
            .map(|p| match (p.bumps.bumps.last(), p.bumps.bumps.first()) {
                (Some(r), Some(l)) => r.location - l.location,
                _ => f64::NAN,
            })
            .collect()
    }
}

/// Samples the trajectory of `p` under `flow` at `times`, evaluating the
/// closed form on `grid`.
pub fn trajectory(p: &TwoSolParams, flow: Flow, times: &[f64], grid: Grid) -> Result<Trajectory> {
    let t0 = times.iter().copied().fold(f64::INFINITY, f64::min);
    let t1 = times.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let regime = if times.is_empty() { classify(p, flow, 0.0, 0.0)? } else { classify(p, flow, t0, t1)? };
    let points = times
        .iter()
        .map(|&t| {
            let params = params_at(p, flow, t)?;
            let field = closed_form_field(&params, grid)?;
            Ok(TrajectoryPoint { t, params, effective: effective_params(&params).ok(), bumps: bump_analysis(&field, None) })
        })
        .collect::<Result<_>>()?;
    Ok(Trajectory { regime, points })
}
