//! Solitons of the focusing cubic NLS hierarchy.
//!
//! This crate gathers the workspace libraries under one roof:
//!
//! * [`core`] — grids, fields, symmetric spectral coordinates and the
//!   scattering polynomial `β`;
//! * [`scattering`] — Jost solutions, the transmission coefficient and
//!   eigenvalue location;
//! * [`backlund`] — adding and removing solitons with the Gram formula;
//! * [`conserved`] — Hamiltonians, fractional energies and trace formulas;
//! * [`twosoliton`] — the closed-form two-soliton, its effective parameters
//!   and bump dynamics;
//! * [`evolution`] — NLS and mKdV solvers, the phase flow and the
//!   stability experiment.
//!
//! The guide chapters below are compiled as documentation tests, so every
//! snippet in the book is checked by `cargo test`.

pub use soliton_backlund as backlund;
pub use soliton_conserved as conserved;
pub use soliton_core as core;
pub use soliton_evolution as evolution;
pub use soliton_scattering as scattering;
pub use soliton_twosoliton as twosoliton;

pub use soliton_backlund::{add_solitons, remove_solitons};
pub use soliton_core::{Complex64, Error, Grid, GridField, PhasePoint, Result};

/// The guide, compiled so that its snippets run as documentation tests.
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    pub mod fields {}
    #[doc = include_str!("../../../book/src/scattering.md")]
    pub mod scattering {}
    #[doc = include_str!("../../../book/src/backlund.md")]
    pub mod backlund {}
    #[doc = include_str!("../../../book/src/energies.md")]
    pub mod energies {}
    #[doc = include_str!("../../../book/src/two-soliton.md")]
    pub mod two_soliton {}
    #[doc = include_str!("../../../book/src/evolution.md")]
    pub mod evolution {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
