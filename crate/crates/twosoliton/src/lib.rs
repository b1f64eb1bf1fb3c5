//! Two-soliton states in closed form.
//!
//! * [`closed_form_q`] evaluates the field of two solitons, including the
//!   double-eigenvalue case, without overflow;
//! * [`effective_params`] describes the state as two approximate solitons;
//! * [`bump_analysis`] measures the bumps of any localized field;
//! * [`trajectory`] follows a state along the NLS or mKdV flow and
//!   classifies its dynamics.

pub mod bumps;
pub mod closed_form;
pub mod effective;
pub mod params;
pub mod trajectory;

pub use bumps::{bump_analysis, Bump, BumpReport};
pub use closed_form::{closed_form_field, closed_form_q};
pub use effective::{alpha0, center_of_mass, effective_params, gamma00, separated_shift, EffectiveParams};
pub use params::TwoSolParams;
pub use trajectory::{classify, params_at, quasiperiod, trajectory, Regime, Trajectory, TrajectoryPoint};
