//! Scattering parameters of eigenvalues.
//!
//! At an eigenvalue `z_j` the Jost solutions are parallel:
//! `ψ_l = −e^{2κ_j} ψ_r`. In renormalized form this reads
//! `e^{2κ_j} = −e^{−2iz_j x} φ_c(x)/χ_c(x)` for either component `c` and any
//! `x`. The ratio is evaluated where `|φ|·|χ|` is largest, which keeps both
//! factors far from underflow.

use num_complex::Complex64 as C64;
use soliton_core::{BetaPoly, Error, GridField, Node, Result};

use crate::jost::{Scatterer, WavePair};
use crate::spectrum::SpectrumReport;

/// Scattering data of one eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenData {
    /// The eigenvalue.
    pub z: C64,
    /// Multiplicity (1 or 2).
    pub multiplicity: usize,
    /// Scattering parameter `κ`, defined modulo `iπ`.
    pub kappa: C64,
    /// `dκ/dz` at a double eigenvalue.
    pub dkappa: Option<C64>,
    /// Grid point where the ratio was evaluated.
    pub x_star: f64,
}

/// Grid index maximizing `|φ|·|χ|` and the component maximizing
/// `|φ_c|·|χ_c|` there.
fn anchor(left: &WavePair, right: &WavePair) -> (usize, usize) {
    let n = left.comp1.len();
    let weight = |i: usize| {
        let l = left.comp1[i].norm().hypot(left.comp2[i].norm());
        let r = right.comp1[i].norm().hypot(right.comp2[i].norm());
        l * r
    };
    let i = (0..n).max_by(|&a, &b| weight(a).total_cmp(&weight(b))).unwrap_or(0);
    let c0 = left.comp1[i].norm() * right.comp1[i].norm();
    let c1 = left.comp2[i].norm() * right.comp2[i].norm();
    (i, if c0 >= c1 { 0 } else { 1 })
}

fn comp(w: &WavePair, c: usize, i: usize) -> C64 {
    if c == 0 {
        w.comp1[i]
    } else {
        w.comp2[i]
    }
}

/// Scattering data of every eigenvalue in a report, using a reusable engine.
pub fn eigen_data(sc: &Scatterer, report: &SpectrumReport) -> Result<Vec<EigenData>> {
    let grid = *sc.field().grid();
    report
        .roots
        .iter()
        .map(|root| {
            let z = root.z;
            if root.multiplicity > 2 {
                return Err(Error::Precondition(format!(
                    "eigenvalue {z} has multiplicity {}; at most 2 is supported",
                    root.multiplicity
                )));
            }
            let (l, r, jets) = if root.multiplicity == 2 {
                let (l, r, dl, dr) = sc.jost_jet(z)?;
                (l, r, Some((dl, dr)))
            } else {
                let (l, r) = sc.jost_pair(z)?;
                (l, r, None)
            };
            let (i, c) = anchor(&l, &r);
            let x = grid.x(i);
            let (phi, chi) = (comp(&l, c, i), comp(&r, c, i));
            if phi.norm() == 0.0 || chi.norm() == 0.0 {
                return Err(Error::Numeric(format!("vanishing Jost solution at eigenvalue {z}")));
            }
            let kappa = -C64::i() * z * x + 0.5 * (-phi / chi).ln();
            let dkappa = jets.map(|(dl, dr)| {
                -C64::i() * x + 0.5 * (comp(&dl, c, i) / phi - comp(&dr, c, i) / chi)
            });
            Ok(EigenData { z, multiplicity: root.multiplicity, kappa, dkappa, x_star: x })
        })
        .collect()
}

/// Scattering parameters `κ_j` of the eigenvalues in `report` and the real
/// polynomial `β` with `κ_j = iβ(z_j)`.
///
/// The returned `κ_j` are `iβ(z_j)`, i.e. the measured values moved to the
/// branch selected by the interpolation. Double eigenvalues contribute a
/// derivative condition as well.
pub fn extract_scattering_data(v: &GridField, report: &SpectrumReport) -> Result<(Vec<C64>, BetaPoly)> {
    extract_with(&Scatterer::new(v), report)
}

/// [`extract_scattering_data`] with a reusable engine.
pub fn extract_with(sc: &Scatterer, report: &SpectrumReport) -> Result<(Vec<C64>, BetaPoly)> {
    if report.roots.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let data = eigen_data(sc, report)?;
    let nodes: Vec<Node> = data.iter().map(|d| Node { z: d.z, kappa: d.kappa, dkappa: d.dkappa }).collect();
    let beta = BetaPoly::interpolate(&nodes)?;
    let kappas = data.iter().map(|d| beta.kappa(d.z)).collect();
    Ok((kappas, beta))
}
