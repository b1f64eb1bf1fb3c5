//! Conserved quantities of the focusing NLS hierarchy.
//!
//! * [`hamiltonian`]: the densities `H₀ … H₄`;
//! * [`energy_es`]: the energy `E_s`, computed from the transmission
//!   coefficient on the imaginary axis;
//! * [`trace_residual`]: the defect of the mass trace formula, a
//!   self-consistency check for the scattering machinery;
//! * [`EnergyReport`]: all of the above in one JSON-serializable record.

pub mod energy;
pub mod hamiltonian;

pub use energy::{
    default_region, energy_es, energy_es_real_line, energy_es_with, real_line_integral, trace_parts,
    trace_residual, xi_s, TraceParts,
};
pub use hamiltonian::{hamiltonian, hamiltonians};

use serde_json::{json, Map, Value};
use soliton_core::{fmt, GridField, Result};
use soliton_scattering::Scatterer;

/// Hamiltonians, selected energies and the trace residual of one field.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    /// `[H₀, …, H₄]`.
    pub h: [f64; 5],
    /// `(s, E_s)` pairs.
    pub es: Vec<(f64, f64)>,
    /// Defect of the mass trace formula.
    pub trace_residual: f64,
}

impl EnergyReport {
    /// Computes the report for the orders `s_values`.
    pub fn compute(u: &GridField, s_values: &[f64]) -> Result<Self> {
        let sc = Scatterer::new(u);
        let es = s_values.iter().map(|&s| Ok((s, energy_es_with(&sc, s)?))).collect::<Result<_>>()?;
        Ok(Self { h: hamiltonians(u), es, trace_residual: trace_residual(u)? })
    }

    /// JSON form `{"H": [...], "Es": {"<s>": value, ...}, "trace_residual": ...}`.
    pub fn to_json(&self) -> Value {
        let es: Map<String, Value> = self.es.iter().map(|(s, e)| (format!("{s}"), fmt::json_num(*e))).collect();
        json!({
            "H": self.h.iter().map(|v| fmt::json_num(*v)).collect::<Vec<_>>(),
            "Es": es,
            "trace_residual": fmt::json_num(self.trace_residual),
        })
    }
}
