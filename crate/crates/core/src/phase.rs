//! Phase-space points `(𝐬, β)` of pure `N`-solitons.

use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use crate::beta::{BetaPoly, Node};
use crate::error::{Error, Result};
use crate::fmt::{as_f64, json_complex, json_num};
use crate::sym::SpectrumSym;

/// Coordinates of a pure `N`-soliton: spectrum in power sums plus the real
/// parameter polynomial `β` with `2N` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoint {
    spectrum: SpectrumSym,
    beta: BetaPoly,
}

impl PhasePoint {
    /// Pairs a spectrum with a parameter polynomial of length `2N`.
    pub fn new(spectrum: SpectrumSym, beta: BetaPoly) -> Result<Self> {
        if beta.len() != 2 * spectrum.n() {
            return Err(Error::Schema(format!(
                "β must have {} coefficients for N = {}, got {}",
                2 * spectrum.n(),
                spectrum.n(),
                beta.len()
            )));
        }
        Ok(Self { spectrum, beta })
    }

    /// A single soliton with eigenvalue `z` and scattering parameter `κ`.
    ///
    /// The soliton is centred at `Re κ / Im z` with phase `Im κ`.
    pub fn single(z: C64, kappa: C64) -> Result<Self> {
        let spectrum = SpectrumSym::from_roots(&[z])?;
        let beta = BetaPoly::interpolate(&[Node { z, kappa, dkappa: None }])?;
        Self::new(spectrum, beta)
    }

    /// Distinct simple eigenvalues with prescribed scattering parameters.
    pub fn from_roots_and_kappas(roots: &[C64], kappas: &[C64]) -> Result<Self> {
        if roots.len() != kappas.len() {
            return Err(Error::Schema("roots and kappas differ in length".into()));
        }
        let spectrum = SpectrumSym::from_roots(roots)?;
        let nodes: Vec<Node> =
            roots.iter().zip(kappas).map(|(&z, &kappa)| Node { z, kappa, dkappa: None }).collect();
        Self::new(spectrum, BetaPoly::interpolate(&nodes)?)
    }

    /// Roots with a zero-padded or truncated `β` of the right length.
    pub fn from_roots_and_beta(roots: &[C64], beta: &[f64]) -> Result<Self> {
        let spectrum = SpectrumSym::from_roots(roots)?;
        let mut b = beta.to_vec();
        b.resize(2 * spectrum.n(), 0.0);
        Self::new(spectrum, BetaPoly::new(b)?)
    }

    /// Number of eigenvalues counted with multiplicity.
    pub fn n(&self) -> usize {
        self.spectrum.n()
    }

    /// Spectrum coordinates.
    pub fn spectrum(&self) -> &SpectrumSym {
        &self.spectrum
    }

    /// Parameter polynomial.
    pub fn beta(&self) -> &BetaPoly {
        &self.beta
    }

    /// Replaces `β`, keeping the spectrum.
    pub fn with_beta(&self, beta: BetaPoly) -> Result<Self> {
        Self::new(self.spectrum.clone(), beta)
    }

    /// JSON form `{"N": …, "s": [[re, im], …], "beta": […]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n(),
            "s": self.spectrum.power_sums().iter().map(|&z| json_complex(z)).collect::<Vec<_>>(),
            "beta": self.beta.coeffs().iter().map(|&b| json_num(b)).collect::<Vec<_>>(),
        })
    }

    /// Parses the JSON form written by [`PhasePoint::to_json`].
    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("N")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Schema("phase point needs an integer field `N`".into()))? as usize;
        let s = v
            .get("s")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("phase point needs an array field `s`".into()))?
            .iter()
            .map(parse_complex)
            .collect::<Result<Vec<_>>>()?;
        let beta = v
            .get("beta")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("phase point needs an array field `beta`".into()))?
            .iter()
            .map(|b| as_f64(b).ok_or_else(|| Error::Schema("β entries must be numbers".into())))
            .collect::<Result<Vec<_>>>()?;
        if s.len() != n {
            return Err(Error::Schema(format!("`s` has {} entries but N = {n}", s.len())));
        }
        let spectrum = SpectrumSym::from_power_sums(s).map_err(|e| Error::Schema(e.to_string()))?;
        Self::new(spectrum, BetaPoly::new(beta).map_err(|e| Error::Schema(e.to_string()))?)
    }
}

/// Parses a JSON pair `[re, im]`.
pub fn parse_complex(v: &Value) -> Result<C64> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => match (as_f64(re), as_f64(im)) {
            (Some(re), Some(im)) => Ok(C64::new(re, im)),
            _ => Err(Error::Schema("complex entries must be numeric pairs".into())),
        },
        _ => Err(Error::Schema("complex numbers are written as [re, im]".into())),
    }
}
