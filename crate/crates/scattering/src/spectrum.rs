//! Counting and locating eigenvalues by contour integrals of `T⁻¹`.
//!
//! The zeros of the holomorphic function `f = T⁻¹` inside a region `K` are
//! the eigenvalues of the Lax operator in `K`, counted with multiplicity.
//! Their power sums are
//!
//! ```text
//! s_k = (1/2πi) ∮_{∂K} ζ^k f'(ζ)/f(ζ) dζ,     k = 0, 1, …
//! ```
//!
//! and `s_0` is the number of eigenvalues.

use gauss_quad::GaussLegendre;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde_json::{json, Value};
use soliton_core::{fmt, Error, GridField, Result, Root, SpectrumSym};

use crate::jost::Scatterer;

/// Default number of contour samples.
pub const DEFAULT_SAMPLES: usize = 256;
/// Largest number of contour samples tried before giving up.
pub const MAX_SAMPLES: usize = 4096;
/// `|T⁻¹|` below this on the contour means an eigenvalue is too close.
pub const CONTOUR_ZERO: f64 = 1e-6;
/// Largest accepted distance of the winding number from an integer.
pub const WINDING_TOLERANCE: f64 = 0.05;
/// Step of the central differences for `dT⁻¹/dz`.
pub const DIFF_STEP: f64 = 1e-5;
/// Target residual `|T⁻¹|` of Newton refinement.
pub const NEWTON_RESIDUAL: f64 = 1e-9;

/// A zero of `T⁻¹` whose Newton distance `|f/f'|` from a contour node is
/// below this counts as lying on the contour.
pub const CONTOUR_CLEARANCE: f64 = 0.02;

/// Nodes per Gauss–Legendre panel.
const PANEL_NODES: usize = 16;

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]` in the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    /// Left edge.
    pub x0: f64,
    /// Right edge.
    pub x1: f64,
    /// Bottom edge (must be positive).
    pub y0: f64,
    /// Top edge.
    pub y1: f64,
}

impl Region {
    /// Validated rectangle.
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        let finite = [x0, x1, y0, y1].iter().all(|v| v.is_finite());
        if !finite || !(x0 < x1) || !(y0 < y1) {
            return Err(Error::Domain(format!("invalid region [{x0}, {x1}] x [{y0}, {y1}]")));
        }
        if !(y0 > 0.0) {
            return Err(Error::Domain(format!("region must lie in the upper half-plane (y0 = {y0})")));
        }
        Ok(Self { x0, x1, y0, y1 })
    }

    /// Whether `z` lies strictly inside.
    pub fn contains(&self, z: C64) -> bool {
        z.re > self.x0 && z.re < self.x1 && z.im > self.y0 && z.im < self.y1
    }

    /// Corners in counter-clockwise order starting at the bottom left.
    pub fn corners(&self) -> [C64; 4] {
        [
            C64::new(self.x0, self.y0),
            C64::new(self.x1, self.y0),
            C64::new(self.x1, self.y1),
            C64::new(self.x0, self.y1),
        ]
    }

    /// `[x0, x1, y0, y1]`.
    pub fn to_array(&self) -> [f64; 4] {
        [self.x0, self.x1, self.y0, self.y1]
    }

    /// Quadrature nodes `ζ` and weights `dζ` of the boundary (counter-clockwise)
    /// with roughly `samples` nodes distributed in proportion to side length.
    pub fn contour(&self, samples: usize) -> Vec<(C64, C64)> {
        let corners = self.corners();
        let perimeter = 2.0 * ((self.x1 - self.x0) + (self.y1 - self.y0));
        let rule = GaussLegendre::new(PANEL_NODES).expect("valid Gauss-Legendre degree");
        let mut out = Vec::with_capacity(samples + 4 * PANEL_NODES);
        for k in 0..4 {
            let a = corners[k];
            let b = corners[(k + 1) % 4];
            let side = (b - a).norm();
            let panels = ((samples as f64 * side / perimeter / PANEL_NODES as f64).round() as usize).max(1);
            for p in 0..panels {
                let pa = a + (b - a) * (p as f64 / panels as f64);
                let pb = a + (b - a) * ((p + 1) as f64 / panels as f64);
                let half = (pb - pa) * 0.5;
                let mid = (pa + pb) * 0.5;
                for (t, w) in rule.iter() {
                    out.push((mid + half * *t, half * *w));
                }
            }
        }
        out
    }
}

/// Outcome of [`locate_spectrum`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    /// Number of eigenvalues in the region, with multiplicity.
    pub count: usize,
    /// Power sums of the eigenvalues (absent when `count = 0`).
    pub spectrum: Option<SpectrumSym>,
    /// Refined eigenvalues with multiplicities.
    pub roots: Vec<Root>,
    /// The searched region.
    pub region: Region,
    /// Number of contour samples of the accepted integral.
    pub contour_samples: usize,
}

impl SpectrumReport {
    /// Eigenvalues repeated according to multiplicity.
    pub fn roots_flat(&self) -> Vec<C64> {
        self.roots.iter().flat_map(|r| std::iter::repeat(r.z).take(r.multiplicity)).collect()
    }

    /// JSON form `{"count", "roots", "s", "region"}`.
    pub fn to_json(&self) -> Value {
        let roots: Vec<Value> = self.roots_flat().into_iter().map(fmt::json_complex).collect();
        let s: Vec<Value> = self
            .spectrum
            .as_ref()
            .map(|s| s.power_sums().iter().map(|c| fmt::json_complex(*c)).collect())
            .unwrap_or_default();
        json!({
            "count": self.count,
            "roots": roots,
            "s": s,
            "region": self.region.to_array().iter().map(|v| fmt::json_num(*v)).collect::<Vec<_>>(),
        })
    }
}

/// Complex central-difference derivative of `T⁻¹` at fixed refinement levels.
fn derivative(sc: &Scatterer, z: C64, levels: (usize, usize)) -> Result<C64> {
    let h = DIFF_STEP;
    let fp = sc.transmission_inv_at_levels(z + h, levels)?;
    let fm = sc.transmission_inv_at_levels(z - h, levels)?;
    Ok((fp - fm) / (2.0 * h))
}

/// Moments `(1/2πi)∮ ζ^k f'/f dζ` for `k = 0..=kmax`.
fn moments(sc: &Scatterer, region: &Region, samples: usize, kmax: usize) -> Result<Vec<C64>> {
    let nodes = region.contour(samples);
    let values: Vec<(C64, C64)> = nodes
        .par_iter()
        .map(|(zeta, _)| {
            let (f, levels) = sc.transmission_inv_with_levels(*zeta)?;
            if f.norm() < CONTOUR_ZERO {
                return Err(Error::ZeroOnContour { re: zeta.re, im: zeta.im, modulus: f.norm() });
            }
            let df = derivative(sc, *zeta, levels)?;
            if f.norm() < CONTOUR_CLEARANCE * df.norm() {
                return Err(Error::ZeroOnContour { re: zeta.re, im: zeta.im, modulus: f.norm() });
            }
            Ok((f, df))
        })
        .collect::<Result<_>>()?;
    let mut m = vec![C64::new(0.0, 0.0); kmax + 1];
    for ((zeta, w), (f, df)) in nodes.iter().zip(values) {
        let g = df / f * w;
        let mut p = C64::new(1.0, 0.0);
        for mk in m.iter_mut() {
            *mk += p * g;
            p *= zeta;
        }
    }
    let scale = C64::new(0.0, 2.0 * std::f64::consts::PI);
    Ok(m.into_iter().map(|v| v / scale).collect())
}

/// Newton iteration on `T⁻¹` from `z0`, stopping at residual
/// [`NEWTON_RESIDUAL`] or when progress stalls.
fn newton(sc: &Scatterer, z0: C64) -> Result<C64> {
    let mut z = z0;
    let mut best = (f64::INFINITY, z0);
    for _ in 0..30 {
        let (f, levels) = sc.transmission_inv_with_levels(z)?;
        if f.norm() < best.0 {
            best = (f.norm(), z);
        }
        if f.norm() < NEWTON_RESIDUAL {
            break;
        }
        let df = derivative(sc, z, levels)?;
        if df.norm() == 0.0 || !df.is_finite() {
            break;
        }
        let step = f / df;
        if step.norm() > 0.1 || !(z - step).im.is_finite() || (z - step).im <= 0.0 {
            break;
        }
        z -= step;
        if step.norm() < 1e-15 * (1.0 + z.norm()) {
            let f = sc.transmission_inv(z)?;
            if f.norm() < best.0 {
                best = (f.norm(), z);
            }
            break;
        }
    }
    Ok(best.1)
}

/// Counts and locates the eigenvalues of `𝓛(u)` inside `region`.
///
/// ```
/// use soliton_core::{Grid, GridField};
/// use soliton_scattering::{locate_spectrum, Region};
/// let u = GridField::zeros(Grid::centered(64, 20.0).unwrap());
/// let report = locate_spectrum(&u, &Region::new(-1.0, 1.0, 0.5, 2.0).unwrap()).unwrap();
/// assert_eq!(report.count, 0);
/// ```
pub fn locate_spectrum(u: &GridField, region: &Region) -> Result<SpectrumReport> {
    locate_spectrum_with(&Scatterer::new(u), region, DEFAULT_SAMPLES)
}

/// [`locate_spectrum`] with a reusable engine and an initial sample count.
pub fn locate_spectrum_with(sc: &Scatterer, region: &Region, samples: usize) -> Result<SpectrumReport> {
    let region = Region::new(region.x0, region.x1, region.y0, region.y1)?;
    let mut samples = samples.max(4 * PANEL_NODES);
    let (count, samples) = loop {
        let m0 = moments(sc, &region, samples, 0)?[0];
        let count = m0.re.round();
        let residual = (m0 - count).norm();
        if residual < WINDING_TOLERANCE && count >= 0.0 {
            break (count as usize, samples);
        }
        if samples * 2 > MAX_SAMPLES {
            return Err(Error::Resolution { residual, samples });
        }
        samples *= 2;
    };
    if count == 0 {
        return Ok(SpectrumReport { count, spectrum: None, roots: vec![], region, contour_samples: samples });
    }
    let m = moments(sc, &region, samples, count)?;
    let raw = SpectrumSym::from_power_sums(m[1..].to_vec())?;
    let clustered = raw.roots()?;
    let mut roots = Vec::with_capacity(clustered.len());
    for r in clustered {
        let z = if r.multiplicity == 1 { newton(sc, r.z)? } else { r.z };
        roots.push(Root { z, multiplicity: r.multiplicity });
    }
    let flat: Vec<C64> = roots.iter().flat_map(|r| std::iter::repeat(r.z).take(r.multiplicity)).collect();
    let spectrum = SpectrumSym::from_roots(&flat)?;
    roots.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    Ok(SpectrumReport { count, spectrum: Some(spectrum), roots, region, contour_samples: samples })
}
