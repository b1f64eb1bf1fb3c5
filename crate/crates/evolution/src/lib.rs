//! Time evolution for the focusing NLS and mKdV equations.
//!
//! * [`flow_phase`] moves soliton coordinates exactly along a flow of the
//!   hierarchy;
//! * [`evolve`] integrates the PDEs pseudospectrally;
//! * [`stability_experiment`] measures how a perturbed soliton state stays
//!   close to the soliton manifold.

pub mod flow;
pub mod solver;
pub mod stability;

pub use flow::{flow_phase, phase_velocity, Flow};
pub use solver::{evolve, EvolveConfig};
pub use stability::{default_region, stability_experiment, Perturbation, StabilityReport};
