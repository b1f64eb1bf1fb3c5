//! Unbounded waves: the holomorphic families that seed the Bäcklund kernel.
//!
//! For a spectral parameter `z` that is not an eigenvalue and a scattering
//! parameter `κ`, the combination `ψ = e^{−κ} ψ_l + e^{κ} ψ_r` grows in both
//! directions. In terms of the renormalized Jost solutions `φ = e^{izx}ψ_l`
//! and `χ = e^{−izx}ψ_r` it reads `ψ = e^{a} φ + e^{−a} χ` with
//! `a = −κ − izx`. Only the direction of `ψ` at each point matters for the
//! Bäcklund transform, so it is stored rescaled to unit length.

use num_complex::Complex64 as C64;
use soliton_core::{BetaPoly, Error, GridField, Result};
use soliton_scattering::{Renorm, Scatterer, WavePair};

use crate::gram::Element;

/// `|T⁻¹(z)|` below this means `z` is treated as an eigenvalue.
pub const EIGENVALUE_THRESHOLD: f64 = 1e-6;

/// Waves of one background at a list of spectral parameters, with
/// `z`-derivative jets at double eigenvalues.
///
/// Each wave and its jet share the same per-point scale factor, so the
/// pair spans the same space as the true holomorphic family and its
/// derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveSet {
    /// Spectral parameters.
    pub z: Vec<C64>,
    /// Waves, in gauge-normalized form.
    pub waves: Vec<WavePair>,
    /// `z`-derivatives for double entries.
    pub jets: Vec<Option<WavePair>>,
}

impl WaveSet {
    /// Basis description used by the Gram routines.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = Vec::new();
        for (j, z) in self.z.iter().enumerate() {
            out.push(Element { z: *z, jet: false, base: 0 });
            let base = out.len() - 1;
            out[base].base = base;
            if self.jets[j].is_some() {
                out.push(Element { z: *z, jet: true, base });
            }
        }
        out
    }

    /// Basis vectors at grid index `i`, in the order of [`WaveSet::elements`].
    pub fn vectors_at(&self, i: usize) -> Vec<[C64; 2]> {
        let mut out = Vec::with_capacity(2 * self.z.len());
        for (w, jet) in self.waves.iter().zip(&self.jets) {
            out.push(w.at(i));
            if let Some(j) = jet {
                out.push(j.at(i));
            }
        }
        out
    }

    /// Number of eigenvalues counted with multiplicity.
    pub fn count(&self) -> usize {
        self.z.len() + self.jets.iter().filter(|j| j.is_some()).count()
    }
}

/// Rescales `vecs[0]` to unit length and applies the same factor to the rest.
pub(crate) fn normalize_group(vecs: &mut [[C64; 2]]) {
    let n = vecs[0][0].norm().hypot(vecs[0][1].norm());
    if n > 0.0 && n.is_finite() {
        for v in vecs.iter_mut() {
            v[0] /= n;
            v[1] /= n;
        }
    }
}

fn pack(grid: soliton_core::Grid, z: C64, rows: Vec<[C64; 2]>) -> WavePair {
    WavePair {
        grid,
        comp1: rows.iter().map(|r| r[0]).collect(),
        comp2: rows.iter().map(|r| r[1]).collect(),
        renorm: Renorm::Gauge,
        z,
    }
}

/// The wave `e^{−iβ(z)} ψ_l + e^{iβ(z)} ψ_r` of the engine's field at `z`,
/// and, when `jet` is set, its `z`-derivative.
pub fn wave_with_jet(sc: &Scatterer, z: C64, beta: &BetaPoly, jet: bool) -> Result<(WavePair, Option<WavePair>)> {
    let t = sc.transmission_inv(z)?;
    if t.norm() < EIGENVALUE_THRESHOLD {
        return Err(Error::Spectral(format!("{z} is an eigenvalue of the background (|T^-1| = {:e})", t.norm())));
    }
    let grid = *sc.field().grid();
    let kappa = beta.kappa(z);
    let i = C64::i();
    let mut rows = Vec::with_capacity(grid.n());
    let mut jet_rows = Vec::with_capacity(if jet { grid.n() } else { 0 });
    if jet {
        let (l, r, dl, dr) = sc.jost_jet(z)?;
        let dbeta = beta.eval_derivative(z);
        for k in 0..grid.n() {
            let x = grid.x(k);
            let a = -kappa - i * z * x;
            let (ep, em) = ((a - a.re.abs()).exp(), (-a - a.re.abs()).exp());
            let (phi, chi, dphi, dchi) = (l.at(k), r.at(k), dl.at(k), dr.at(k));
            let mut v = [[C64::new(0.0, 0.0); 2]; 2];
            for c in 0..2 {
                v[0][c] = ep * phi[c] + em * chi[c];
                v[1][c] = ep * (-i * dbeta * phi[c] + dphi[c] - i * x * phi[c])
                    + em * (i * dbeta * chi[c] + dchi[c] + i * x * chi[c]);
            }
            normalize_group(&mut v);
            rows.push(v[0]);
            jet_rows.push(v[1]);
        }
    } else {
        let (l, r) = sc.jost_pair(z)?;
        for k in 0..grid.n() {
            let a = -kappa - i * z * grid.x(k);
            let (ep, em) = ((a - a.re.abs()).exp(), (-a - a.re.abs()).exp());
            let (phi, chi) = (l.at(k), r.at(k));
            let mut v = [[ep * phi[0] + em * chi[0], ep * phi[1] + em * chi[1]]];
            normalize_group(&mut v);
            rows.push(v[0]);
        }
    }
    let wave = pack(grid, z, rows);
    let jet = if jet { Some(pack(grid, z, jet_rows)) } else { None };
    Ok((wave, jet))
}

/// The unbounded wave `e^{−κ} ψ_l + e^{κ} ψ_r` of `𝓛(u)` at `z`, rescaled
/// to unit length at every grid point.
///
/// ```
/// use num_complex::Complex64 as C;
/// use soliton_core::{Grid, GridField};
/// use soliton_backlund::unbounded_wave;
/// // On the vacuum the wave at z = i is (e^{x}, e^{−x}) up to a scalar.
/// let u = GridField::zeros(Grid::centered(64, 10.0).unwrap());
/// let w = unbounded_wave(&u, C::i(), C::new(0.0, 0.0)).unwrap();
/// let x = u.grid().x(40);
/// let ratio = w.comp1[40] / w.comp2[40];
/// assert!((ratio - (2.0 * x).exp()).norm() < 1e-12 * (2.0 * x).exp());
/// ```
pub fn unbounded_wave(u: &GridField, z: C64, kappa: C64) -> Result<WavePair> {
    if !(z.im > 0.0) {
        return Err(Error::Domain(format!("spectral parameter {z} must lie in the upper half-plane")));
    }
    // β is any real polynomial with iβ(z) = κ; the constant-plus-linear one
    // is exact at a single point.
    let beta = BetaPoly::interpolate(&[soliton_core::Node { z, kappa, dkappa: None }])?;
    let sc = Scatterer::new(u);
    Ok(wave_with_jet(&sc, z, &beta, false)?.0)
}
