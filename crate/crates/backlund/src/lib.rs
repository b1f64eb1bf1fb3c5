//! Iterated Bäcklund transforms for the focusing NLS hierarchy.
//!
//! * [`add_solitons`] attaches `N` solitons with prescribed spectrum and
//!   parameter polynomial `β` to a background field;
//! * [`remove_solitons`] strips the eigenvalues inside a rectangle and
//!   reports their coordinates, so that adding them back reproduces the
//!   input;
//! * [`propagate_wave`] maps waves of the background to waves of the
//!   augmented field.
//!
//! All three evaluate a small Gram system at every grid point. A double
//! eigenvalue is handled exactly by adding the `z`-derivative of the wave to
//! the basis.
//!
//! ```
//! use num_complex::Complex64 as C;
//! use soliton_core::{Grid, GridField, PhasePoint};
//! use soliton_backlund::add_solitons;
//!
//! let vacuum = GridField::zeros(Grid::centered(256, 30.0).unwrap());
//! let point = PhasePoint::single(C::i(), C::new(0.0, 0.0)).unwrap();
//! let q0 = add_solitons(&vacuum, &point).unwrap();
//! let g = q0.grid();
//! for (k, v) in q0.values().iter().enumerate() {
//!     let exact = 2.0 / (2.0 * g.x(k)).cosh();
//!     assert!((v - exact).norm() < 1e-10);
//! }
//! ```

pub mod gram;
pub mod wave;

pub use gram::{Element, MAX_CONDITION};
pub use wave::{unbounded_wave, wave_with_jet, WaveSet};

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use soliton_core::{BetaPoly, Error, GridField, PhasePoint, Result, Root};
use soliton_scattering::{
    eigen_data, locate_spectrum_with, spectrum::DEFAULT_SAMPLES, Region, Renorm, Scatterer, WavePair,
};

/// Spread used to split eigenvalues of multiplicity three or more.
pub const SPLIT_RADIUS: f64 = 1e-3;

/// Margin around the added eigenvalues used by [`enclosing_region`].
pub const BACKGROUND_MARGIN: f64 = 0.25;

/// Roots with multiplicity at most two; higher multiplicities are split
/// into distinct nearby roots.
fn supported_roots(point: &PhasePoint) -> Result<Vec<Root>> {
    let mut out = Vec::new();
    for r in point.spectrum().roots()? {
        if r.multiplicity <= 2 {
            out.push(r);
        } else {
            let m = r.multiplicity;
            for k in 0..m {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                out.push(Root { z: r.z + C64::from_polar(SPLIT_RADIUS, angle), multiplicity: 1 });
            }
        }
    }
    Ok(out)
}

/// Rectangle enclosing all roots with a margin, kept in the upper half-plane.
pub fn enclosing_region(roots: &[Root]) -> Result<Region> {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for r in roots {
        x0 = x0.min(r.z.re);
        x1 = x1.max(r.z.re);
        y0 = y0.min(r.z.im);
        y1 = y1.max(r.z.im);
    }
    let bottom = (y0 - BACKGROUND_MARGIN).max(0.5 * y0);
    Region::new(x0 - BACKGROUND_MARGIN, x1 + BACKGROUND_MARGIN, bottom, y1 + BACKGROUND_MARGIN)
}

/// Waves of the engine's field at the eigenvalues of `point`.
fn wave_set(sc: &Scatterer, roots: &[Root], beta: &BetaPoly) -> Result<WaveSet> {
    let mut set = WaveSet { z: vec![], waves: vec![], jets: vec![] };
    for r in roots {
        let (w, j) = wave_with_jet(sc, r.z, beta, r.multiplicity == 2)?;
        set.z.push(r.z);
        set.waves.push(w);
        set.jets.push(j);
    }
    Ok(set)
}

/// Waves seeding the addition of `point` to `u` (no background check).
pub fn waves_for(u: &GridField, point: &PhasePoint) -> Result<WaveSet> {
    wave_set(&Scatterer::new(u), &supported_roots(point)?, point.beta())
}

/// `u + correction` evaluated pointwise in parallel.
fn apply(u: &GridField, set: &WaveSet) -> Result<GridField> {
    let elems = set.elements();
    let values: Vec<C64> = (0..u.grid().n())
        .into_par_iter()
        .map(|i| Ok(u.values()[i] + gram::correction(&elems, &set.vectors_at(i))?))
        .collect::<Result<_>>()?;
    GridField::new(*u.grid(), values)
}

/// Checks that `u` has no eigenvalue near the roots about to be added.
fn check_background(sc: &Scatterer, roots: &[Root]) -> Result<()> {
    if sc.field().is_zero() {
        return Ok(());
    }
    let region = enclosing_region(roots)?;
    match locate_spectrum_with(sc, &region, DEFAULT_SAMPLES) {
        Ok(r) if r.count == 0 => Ok(()),
        Ok(r) => Err(Error::Precondition(format!(
            "background already has {} eigenvalue(s) in [{}, {}] x [{}, {}]",
            r.count, region.x0, region.x1, region.y0, region.y1
        ))),
        Err(Error::ZeroOnContour { re, im, .. }) => Err(Error::Precondition(format!(
            "background has an eigenvalue near {re}{im:+}i, close to the added spectrum"
        ))),
        Err(e) => Err(e),
    }
}

/// Adds the solitons described by `point` to the background `u`.
///
/// The eigenvalues of `point` must not be eigenvalues of `u`, and `u` must
/// have no spectrum in a neighbourhood of them.
pub fn add_solitons(u: &GridField, point: &PhasePoint) -> Result<GridField> {
    let sc = Scatterer::new(u);
    let roots = supported_roots(point)?;
    check_background(&sc, &roots)?;
    apply(u, &wave_set(&sc, &roots, point.beta())?)
}

/// Removes every eigenvalue of `v` inside `region`.
///
/// Returns the remaining field `u` and the coordinates of the removed
/// solitons, so that `add_solitons(u, point)` reproduces `v`.
pub fn remove_solitons(v: &GridField, region: &Region) -> Result<(GridField, PhasePoint)> {
    let sc = Scatterer::new(v);
    let report = locate_spectrum_with(&sc, region, DEFAULT_SAMPLES)?;
    if report.count == 0 {
        return Err(Error::EmptySpectrum);
    }
    let data = eigen_data(&sc, &report)?;
    let nodes: Vec<soliton_core::Node> =
        data.iter().map(|d| soliton_core::Node { z: d.z, kappa: d.kappa, dkappa: d.dkappa }).collect();
    let beta = BetaPoly::interpolate(&nodes)?;
    let spectrum = report.spectrum.clone().ok_or(Error::EmptySpectrum)?;
    let point = PhasePoint::new(spectrum, beta)?;

    // Eigenfunctions of v: the left Jost solution left of the point where
    // both Jost solutions are largest, the right one beyond it. They are
    // parallel there, so the switch is a per-point rescaling.
    let grid = *v.grid();
    let mut set = WaveSet { z: vec![], waves: vec![], jets: vec![] };
    let i = C64::i();
    for d in &data {
        let split = ((d.x_star - grid.x_min()) / grid.dx()).round() as usize;
        let mut rows = Vec::with_capacity(grid.n());
        let mut jet_rows = Vec::new();
        if let Some(dk) = d.dkappa {
            let (l, r, dl, dr) = sc.jost_jet(d.z)?;
            for k in 0..grid.n() {
                let x = grid.x(k);
                let mut g = [[C64::new(0.0, 0.0); 2]; 2];
                for c in 0..2 {
                    if k < split {
                        let phi = l.at(k)[c];
                        g[0][c] = phi;
                        g[1][c] = dl.at(k)[c] - i * x * phi;
                    } else {
                        let chi = r.at(k)[c];
                        g[0][c] = chi;
                        g[1][c] = (2.0 * dk + i * x) * chi + dr.at(k)[c];
                    }
                }
                wave::normalize_group(&mut g);
                rows.push(g[0]);
                jet_rows.push(g[1]);
            }
        } else {
            let (l, r) = sc.jost_pair(d.z)?;
            for k in 0..grid.n() {
                let mut g = [if k < split { l.at(k) } else { r.at(k) }];
                wave::normalize_group(&mut g);
                rows.push(g[0]);
            }
        }
        let pack = |rows: Vec<[C64; 2]>| WavePair {
            grid,
            comp1: rows.iter().map(|r| r[0]).collect(),
            comp2: rows.iter().map(|r| r[1]).collect(),
            renorm: Renorm::Gauge,
            z: d.z,
        };
        set.z.push(d.z);
        set.waves.push(pack(rows));
        set.jets.push(d.dkappa.map(|_| pack(jet_rows)));
    }
    Ok((apply(v, &set)?, point))
}

/// Image of a `z`-wave of `u` under the Bäcklund map that adds `point`:
/// a `z`-wave of `add_solitons(u, point)`.
///
/// Fails with a pole error when `z` is the conjugate of an eigenvalue.
/// The probe keeps its normalization: a renormalized left Jost solution of
/// `u` is mapped to `Π(z − z̄_l)` times the renormalized left Jost solution
/// of the new field.
pub fn propagate_wave(u: &GridField, point: &PhasePoint, probe: &WavePair) -> Result<WavePair> {
    let roots = supported_roots(point)?;
    let z = probe.z;
    // The map is regular at the eigenvalues themselves (where it annihilates
    // the seed waves) and singular only at their conjugates.
    let gap = roots.iter().map(|r| (z - r.z.conj()).norm()).fold(f64::INFINITY, f64::min);
    if gap < 1e-9 {
        return Err(Error::Pole);
    }
    if probe.comp1.len() != u.grid().n() || probe.comp2.len() != u.grid().n() {
        return Err(Error::Schema("probe length does not match the grid".into()));
    }
    let set = wave_set(&Scatterer::new(u), &roots, point.beta())?;
    let elems = set.elements();
    let prefactor: C64 = roots.iter().map(|r| (z - r.z.conj()).powu(r.multiplicity as u32)).product();
    let rows: Vec<[C64; 2]> = (0..u.grid().n())
        .into_par_iter()
        .map(|i| {
            let out = gram::project_out(&elems, &set.vectors_at(i), z, probe.at(i))?;
            Ok([prefactor * out[0], prefactor * out[1]])
        })
        .collect::<Result<_>>()?;
    Ok(WavePair {
        grid: *u.grid(),
        comp1: rows.iter().map(|r| r[0]).collect(),
        comp2: rows.iter().map(|r| r[1]).collect(),
        renorm: probe.renorm,
        z,
    })
}

/// Trace of the pointwise matrix `A(x)` of the addition of `point` to `u`,
/// which equals `2 Σ Im z_j` identically.
pub fn gram_trace(u: &GridField, point: &PhasePoint) -> Result<Vec<f64>> {
    let set = waves_for(u, point)?;
    let elems = set.elements();
    (0..u.grid().n())
        .into_par_iter()
        .map(|i| gram::trace(&elems, &set.vectors_at(i)))
        .collect()
}
