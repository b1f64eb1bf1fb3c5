//! Exact flows on soliton coordinates.
//!
//! The `n`-th flow of the hierarchy leaves the spectrum fixed and moves the
//! parameter polynomial linearly: `β̇(z) = 2^{n−1} zⁿ` modulo `P_𝐳 P_𝐳̄`.
//! NLS is `n = 2` and mKdV is `n = 3`.

use soliton_core::{reduce_mod_char, PhasePoint, Result};

/// The two evolution equations supported as PDEs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flow {
    /// `i u_t + u_xx + 2|u|²u = 0`.
    Nls,
    /// `u_t + u_xxx + 6|u|²u_x = 0`.
    Mkdv,
}

impl Flow {
    /// Index of the flow in the hierarchy.
    pub fn order(self) -> u32 {
        match self {
            Flow::Nls => 2,
            Flow::Mkdv => 3,
        }
    }

    /// Lower-case name.
    pub fn name(self) -> &'static str {
        match self {
            Flow::Nls => "nls",
            Flow::Mkdv => "mkdv",
        }
    }
}

impl std::str::FromStr for Flow {
    type Err = soliton_core::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nls" => Ok(Flow::Nls),
            "mkdv" => Ok(Flow::Mkdv),
            other => Err(soliton_core::Error::Schema(format!("unknown flow '{other}' (expected nls or mkdv)"))),
        }
    }
}

/// Velocity of `β` under the `n`-th flow: `2^{n−1} zⁿ` reduced modulo
/// `P_𝐳 P_𝐳̄`.
pub fn phase_velocity(point: &PhasePoint, n: u32) -> soliton_core::BetaPoly {
    let mut p = vec![0.0; n as usize + 1];
    p[n as usize] = 2f64.powi(n as i32 - 1);
    reduce_mod_char(&p, point.spectrum())
}

/// The point reached after time `t` along the `n`-th flow.
///
/// ```
/// use num_complex::Complex64 as C;
/// use soliton_core::PhasePoint;
/// use soliton_evolution::flow_phase;
/// // NLS at z = i: κ(t) = κ − 2it.
/// let p = PhasePoint::single(C::i(), C::new(0.5, 0.0)).unwrap();
/// let q = flow_phase(&p, 2, 0.25).unwrap();
/// assert!((q.beta().kappa(C::i()) - C::new(0.5, -0.5)).norm() < 1e-14);
/// ```
pub fn flow_phase(point: &PhasePoint, n: u32, t: f64) -> Result<PhasePoint> {
    let v = phase_velocity(point, n);
    point.with_beta(point.beta().add_scaled(t, &v))
}
