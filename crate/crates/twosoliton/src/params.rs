//! Parameters of a two-soliton state.

use num_complex::Complex64 as C64;
use soliton_core::{Error, PhasePoint, Result};

/// Smallest admissible `Im z`.
pub const MIN_IM: f64 = 0.05;
/// Largest admissible `Im z`.
pub const MAX_IM: f64 = 5.0;

/// A two-soliton state: eigenvalues `z1`, `z2` (possibly equal) and the
/// cubic parameter polynomial `β(z) = β₀ + β₁z + β₂z² + β₃z³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSolParams {
    /// First eigenvalue.
    pub z1: C64,
    /// Second eigenvalue.
    pub z2: C64,
    /// `β₀..β₃`.
    pub beta: [f64; 4],
}

impl TwoSolParams {
    /// Validates `Im z1, Im z2 ∈ [0.05, 5]` and finiteness.
    pub fn new(z1: C64, z2: C64, beta: [f64; 4]) -> Result<Self> {
        for z in [z1, z2] {
            if !(z.re.is_finite() && (MIN_IM..=MAX_IM).contains(&z.im)) {
                return Err(Error::Domain(format!("eigenvalue {z} outside Im z ∈ [{MIN_IM}, {MAX_IM}]")));
            }
        }
        if beta.iter().any(|b| !b.is_finite()) {
            return Err(Error::Domain("non-finite β coefficient".into()));
        }
        Ok(Self { z1, z2, beta })
    }

    /// `β(z)`.
    pub fn beta_at(&self, z: C64) -> C64 {
        self.beta.iter().rev().fold(C64::new(0.0, 0.0), |acc, &b| acc * z + b)
    }

    /// `β'(z)`.
    pub fn beta_derivative_at(&self, z: C64) -> C64 {
        C64::new(self.beta[1], 0.0) + 2.0 * self.beta[2] * z + 3.0 * self.beta[3] * z * z
    }

    /// Whether the eigenvalues coincide.
    pub fn is_double(&self) -> bool {
        (self.z1 - self.z2).norm() == 0.0
    }

    /// The same state as a phase-space point.
    pub fn to_phase_point(&self) -> Result<PhasePoint> {
        PhasePoint::from_roots_and_beta(&[self.z1, self.z2], &self.beta)
    }

    /// Reads a two-soliton phase-space point; `β` must have at most four
    /// coefficients.
    pub fn from_phase_point(point: &PhasePoint) -> Result<Self> {
        if point.n() != 2 {
            return Err(Error::Domain(format!("expected a two-soliton point, got N = {}", point.n())));
        }
        let roots = point.spectrum().roots_flat()?;
        let coeffs = point.beta().coeffs();
        if coeffs.len() > 4 {
            return Err(Error::Domain("β of a two-soliton state has at most four coefficients".into()));
        }
        let mut beta = [0.0; 4];
        beta[..coeffs.len()].copy_from_slice(coeffs);
        Self::new(roots[0], roots[1], beta)
    }

    /// Centre of the soliton attached to `z` alone: `x = −Im(β(z) − β₀)/Im z`.
    pub fn free_center(&self, z: C64) -> f64 {
        -(self.beta_at(z) - self.beta[0]).im / z.im
    }
}
