//! The orbital-stability experiment: perturb a pure soliton state, evolve it,
//! and track its distance to the soliton manifold by removing and re-adding
//! the solitons at every record time.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use soliton_backlund::{add_solitons, enclosing_region, remove_solitons};
use soliton_core::{fmt::f17, hs_norm, Error, Grid, GridField, PhasePoint, Result, Root};
use soliton_scattering::Region;

use crate::solver::{evolve, EvolveConfig};

/// Largest admissible perturbation size.
pub const MAX_EPS: f64 = 0.1;

/// Shape of the perturbation `g` (normalized to unit L² norm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Perturbation {
    /// `e^{−(x−c)²}`.
    Gaussian {
        /// Centre.
        center: f64,
    },
    /// `sech(x − c)`.
    SechBump {
        /// Centre.
        center: f64,
    },
    /// Random complex Fourier modes with `|k| ≤ 2` under a Gaussian envelope
    /// `e^{−x²/32}`, drawn from a seeded generator.
    BandLimitedNoise {
        /// Generator seed.
        seed: u64,
    },
}

impl Perturbation {
    /// Parses `gaussian`, `sech-bump` or `band-limited-noise`; the seed
    /// applies to the noise only.
    pub fn parse(name: &str, seed: u64) -> Result<Self> {
        match name {
            "gaussian" => Ok(Perturbation::Gaussian { center: 0.0 }),
            "sech-bump" => Ok(Perturbation::SechBump { center: 0.0 }),
            "band-limited-noise" => Ok(Perturbation::BandLimitedNoise { seed }),
            other => Err(Error::Schema(format!(
                "unknown perturbation '{other}' (expected gaussian, sech-bump or band-limited-noise)"
            ))),
        }
    }

    /// Short name of the shape.
    pub fn name(&self) -> &'static str {
        match self {
            Perturbation::Gaussian { .. } => "gaussian",
            Perturbation::SechBump { .. } => "sech-bump",
            Perturbation::BandLimitedNoise { .. } => "band-limited-noise",
        }
    }

    /// The perturbation sampled on `grid`, with unit L² norm.
    pub fn sample(&self, grid: Grid) -> Result<GridField> {
        let raw = match *self {
            Perturbation::Gaussian { center } => {
                GridField::from_fn(grid, |x| C64::new((-(x - center) * (x - center)).exp(), 0.0))
            }
            Perturbation::SechBump { center } => GridField::from_fn(grid, |x| C64::new(1.0 / (x - center).cosh(), 0.0)),
            Perturbation::BandLimitedNoise { seed } => {
                const MODES: usize = 16;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let modes: Vec<(f64, C64)> = (0..MODES)
                    .map(|j| {
                        let k = -2.0 + 4.0 * j as f64 / (MODES - 1) as f64;
                        (k, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    })
                    .collect();
                GridField::from_fn(grid, |x| {
                    let s: C64 = modes.iter().map(|(k, c)| c * C64::from_polar(1.0, k * x)).sum();
                    s * (-x * x / 32.0).exp()
                })
            }
        };
        let norm = hs_norm(&raw, 0.0)?;
        if !(norm > 0.0) {
            return Err(Error::Numeric("perturbation vanishes on the grid".into()));
        }
        Ok(raw.axpy(C64::new(1.0 / norm - 1.0, 0.0), &raw))
    }
}

/// Result of [`stability_experiment`]; all arrays are aligned with `times`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Perturbation size.
    pub eps: f64,
    /// Record times.
    pub times: Vec<f64>,
    /// `‖w(t) − ṽ(t)‖_{L²}` with `ṽ` the pure soliton rebuilt from `w(t)`.
    pub manifold_distance: Vec<f64>,
    /// `‖u(t)‖_{L²}` of the field left after removing the solitons.
    pub residual_mass: Vec<f64>,
    /// Largest deviation of the power sums from their value at `t = 0`.
    pub spectrum_drift: Vec<f64>,
    /// `ok`, or the kind of the error that made the removal fail.
    pub flags: Vec<String>,
}

impl StabilityReport {
    /// CSV with header `t,dist,residual_mass,spectrum_drift,flag`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,dist,residual_mass,spectrum_drift,flag\n");
        for i in 0..self.times.len() {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                f17(self.times[i]),
                f17(self.manifold_distance[i]),
                f17(self.residual_mass[i]),
                f17(self.spectrum_drift[i]),
                self.flags[i]
            ));
        }
        s
    }

    /// Largest manifold distance over the successful records.
    pub fn max_distance(&self) -> f64 {
        self.manifold_distance.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max)
    }

    /// Largest spectrum drift over the successful records.
    pub fn max_drift(&self) -> f64 {
        self.spectrum_drift.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max)
    }

    /// Largest deviation of the residual mass from its initial value,
    /// relative to the initial value.
    pub fn residual_mass_variation(&self) -> f64 {
        let m0 = self.residual_mass.first().copied().unwrap_or(f64::NAN);
        self.residual_mass.iter().map(|m| (m - m0).abs() / m0).fold(0.0, f64::max)
    }

    /// Whether every record time succeeded.
    pub fn all_ok(&self) -> bool {
        self.flags.iter().all(|f| f == "ok")
    }
}

/// Default removal region: a rectangle around the spectrum of `point`.
pub fn default_region(point: &PhasePoint) -> Result<Region> {
    let roots: Vec<Root> = point.spectrum().roots()?;
    enclosing_region(&roots)
}

/// Runs the stability experiment on `grid`.
///
/// The initial state is `add_solitons(0, point) + eps·g`. At each record
/// time of `cfg` (and at `t = 0`) the solitons inside `region` are removed
/// and re-added to the vacuum. A failed removal is recorded in-band with
/// `NaN` entries and the error kind as flag.
pub fn stability_experiment(
    grid: Grid,
    point: &PhasePoint,
    eps: f64,
    perturbation: Perturbation,
    cfg: &EvolveConfig,
    region: Option<Region>,
) -> Result<StabilityReport> {
    if !(0.0..=MAX_EPS).contains(&eps) {
        return Err(Error::Domain(format!("perturbation size must lie in [0, {MAX_EPS}], got {eps}")));
    }
    let region = match region {
        Some(r) => r,
        None => default_region(point)?,
    };
    let pure = add_solitons(&GridField::zeros(grid), point)?;
    let w0 = pure.axpy(C64::new(eps, 0.0), &perturbation.sample(grid)?);
    let mut times = vec![0.0];
    let mut snapshots = vec![w0.clone()];
    let record = if cfg.record_times.is_empty() { vec![cfg.t_final] } else { cfg.record_times.clone() };
    let later: Vec<f64> = record.into_iter().filter(|t| *t != 0.0).collect();
    if !later.is_empty() {
        let run = EvolveConfig { record_times: later.clone(), ..cfg.clone() };
        snapshots.extend(evolve(&w0, &run)?);
        times.extend(later);
    }
    let mut report = StabilityReport {
        eps,
        times,
        manifold_distance: vec![],
        residual_mass: vec![],
        spectrum_drift: vec![],
        flags: vec![],
    };
    let mut s0: Option<Vec<C64>> = None;
    for w in &snapshots {
        match manifold_projection(w, &region) {
            Ok((dist, mass, sums)) => {
                let base = s0.get_or_insert_with(|| sums.clone());
                let drift = if base.len() == sums.len() {
                    base.iter().zip(&sums).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
                } else {
                    f64::INFINITY
                };
                report.manifold_distance.push(dist);
                report.residual_mass.push(mass);
                report.spectrum_drift.push(drift);
                report.flags.push("ok".into());
            }
            Err(e) => {
                report.manifold_distance.push(f64::NAN);
                report.residual_mass.push(f64::NAN);
                report.spectrum_drift.push(f64::NAN);
                report.flags.push(e.kind().into());
            }
        }
    }
    Ok(report)
}

/// Distance to the rebuilt pure soliton, residual mass and power sums.
fn manifold_projection(w: &GridField, region: &Region) -> Result<(f64, f64, Vec<C64>)> {
    let (u, point) = remove_solitons(w, region)?;
    let rebuilt = add_solitons(&GridField::zeros(*w.grid()), &point)?;
    Ok((w.l2_distance(&rebuilt), hs_norm(&u, 0.0)?, point.spectrum().power_sums().to_vec()))
}
