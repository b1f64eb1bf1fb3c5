//! Jost solutions of the Zakharov–Shabat system.
//!
//! The spectral problem for the Lax operator `𝓛(u)` reads
//!
//! ```text
//! ψ₁' = −iz ψ₁ + u ψ₂,      ψ₂' = iz ψ₂ − ū ψ₁.
//! ```
//!
//! The left Jost solution behaves like `e^{−izx}(1, 0)` as `x → −∞`, and
//! the right one like `e^{izx}(0, 1)` as `x → +∞`. Both grow exponentially,
//! so they are integrated in renormalized form:
//!
//! ```text
//! φ = e^{izx} ψ_l:   φ₁' = u φ₂,              φ₂' = 2iz φ₂ − ū φ₁,   φ(x_min) = (1, 0)
//! χ = e^{−izx} ψ_r:  χ₁' = −2iz χ₁ + u χ₂,    χ₂' = −ū χ₁,           χ(x_end) = (0, 1)
//! ```
//!
//! For `Im z ≥ 0` both systems are bounded in their direction of
//! integration. Their Wronskian `φ₁χ₂ − φ₂χ₁` equals `det(ψ_l, ψ_r) = T(z)⁻¹`
//! at every point, because the exponential factors cancel.
//!
//! # Integrator
//!
//! Classical fourth-order Runge–Kutta with step doubling: each step of size
//! `H` is compared with two steps of size `H/2`. The difference gives a
//! local error estimate, and the two half steps are combined with the full
//! step by Richardson extrapolation. Values of `u` between samples come from
//! band-limited (FFT) interpolation, which is spectrally accurate for the
//! smooth periodic fields handled here. If any estimate exceeds the
//! tolerance, the whole sweep is repeated at half the step size.

use std::sync::{Arc, OnceLock};

use num_complex::Complex64 as C64;
use soliton_core::{spectral, Error, Grid, GridField, Result};

/// Finest refinement level. Level `L` uses steps `dx/2^(L−1)`.
pub const MAX_LEVEL: usize = 7;

/// Options of the Jost integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostOptions {
    /// Bound on the per-step local error estimate, relative to `max(1, |y|)`.
    pub tol: f64,
    /// Coarsest refinement level tried (level 1 steps at the grid spacing).
    pub min_level: usize,
    /// Finest refinement level tried.
    pub max_level: usize,
}

impl Default for JostOptions {
    fn default() -> Self {
        Self { tol: 1e-10, min_level: 1, max_level: MAX_LEVEL }
    }
}

/// Which exponential factor has been removed from a wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Renorm {
    /// Stored as `e^{izx}ψ` (left Jost solution).
    Left,
    /// Stored as `e^{−izx}ψ` (right Jost solution).
    Right,
    /// Stored up to an unspecified nonzero scalar at each grid point.
    Gauge,
    /// Stored as is.
    None,
}

/// A two-component function on the grid at spectral parameter `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct WavePair {
    /// Grid the components are sampled on.
    pub grid: Grid,
    /// First component.
    pub comp1: Vec<C64>,
    /// Second component.
    pub comp2: Vec<C64>,
    /// Stored normalization.
    pub renorm: Renorm,
    /// Spectral parameter.
    pub z: C64,
}

impl WavePair {
    /// Components at grid index `i`.
    pub fn at(&self, i: usize) -> [C64; 2] {
        [self.comp1[i], self.comp2[i]]
    }

    /// Un-renormalized components at grid index `i` (may overflow far from
    /// the origin).
    pub fn raw_at(&self, i: usize) -> [C64; 2] {
        let x = self.grid.x(i);
        let f = match self.renorm {
            Renorm::Left => (-C64::i() * self.z * x).exp(),
            Renorm::Right => (C64::i() * self.z * x).exp(),
            Renorm::Gauge | Renorm::None => C64::new(1.0, 0.0),
        };
        [f * self.comp1[i], f * self.comp2[i]]
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Outcome of a sweep: the final state and optionally the state at every
/// grid point passed.
struct Sweep {
    end: [C64; 2],
    record: Vec<[C64; 2]>,
}

enum SweepError {
    Refine,
    Fatal(Error),
}

/// Jost-solution engine for one potential.
///
/// Interpolated copies of the potential are built lazily and cached, so one
/// engine should be reused for all spectral parameters of the same field.
/// The engine is `Sync`; distinct `z` values may be processed concurrently.
#[derive(Debug)]
pub struct Scatterer {
    field: GridField,
    opts: JostOptions,
    zero: bool,
    fine: Vec<OnceLock<Arc<Vec<C64>>>>,
}

impl Scatterer {
    /// Engine with default options.
    pub fn new(field: &GridField) -> Self {
        Self::with_options(field, JostOptions::default())
    }

    /// Engine with explicit options.
    pub fn with_options(field: &GridField, opts: JostOptions) -> Self {
        Self {
            field: field.clone(),
            opts,
            zero: field.is_zero(),
            fine: (0..=MAX_LEVEL).map(|_| OnceLock::new()).collect(),
        }
    }

    /// The potential.
    pub fn field(&self) -> &GridField {
        &self.field
    }

    /// Integrator options.
    pub fn options(&self) -> JostOptions {
        self.opts
    }

    /// Interpolated potential for level `level` (refinement factor
    /// `2^(level+1)`).
    fn fine(&self, level: usize) -> Arc<Vec<C64>> {
        self.fine[level]
            .get_or_init(|| Arc::new(spectral::upsample(self.field.values(), 1 << (level + 1))))
            .clone()
    }

    fn check_z(z: C64) -> Result<()> {
        if !(z.im >= 0.0) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain(format!("spectral parameter {z} must satisfy Im z >= 0")));
        }
        Ok(())
    }

    /// Integrates one side from its end of the cell to grid index `stop`.
    fn sweep(
        &self,
        z: C64,
        side: Side,
        stop: usize,
        level: usize,
        record: bool,
        tol: f64,
    ) -> Result<Sweep, SweepError> {
        let grid = self.field.grid();
        let n = grid.n();
        let factor = 1usize << (level + 1);
        let fine = self.fine(level);
        let m = fine.len();
        let delta = grid.dx() / factor as f64;
        let two_iz = 2.0 * C64::i() * z;
        let (start, mut y, dir) = match side {
            Side::Left => (0usize, [C64::new(1.0, 0.0), C64::new(0.0, 0.0)], 1i64),
            Side::Right => (n, [C64::new(0.0, 0.0), C64::new(1.0, 0.0)], -1i64),
        };
        let rhs = |u: C64, y: [C64; 2]| -> [C64; 2] {
            match side {
                Side::Left => [u * y[1], two_iz * y[1] - u.conj() * y[0]],
                Side::Right => [-two_iz * y[0] + u * y[1], -u.conj() * y[0]],
            }
        };
        let rk4 = |y: [C64; 2], u0: C64, um: C64, u1: C64, h: f64| -> [C64; 2] {
            let k1 = rhs(u0, y);
            let k2 = rhs(um, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
            let k3 = rhs(um, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
            let k4 = rhs(u1, [y[0] + h * k3[0], y[1] + h * k3[1]]);
            [
                y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            ]
        };
        let steps = (stop as i64 - start as i64).unsigned_abs() as usize * factor / 4;
        let steps_per_sample = factor / 4;
        let mut record_buf = Vec::new();
        if record {
            record_buf.reserve(steps / steps_per_sample + 1);
            record_buf.push(y);
        }
        let u_at = |p: i64| fine[p.rem_euclid(m as i64) as usize];
        let mut p = (start * factor) as i64;
        let hc = 4.0 * delta * dir as f64;
        let hf = 0.5 * hc;
        for step in 0..steps {
            let u = [u_at(p), u_at(p + dir), u_at(p + 2 * dir), u_at(p + 3 * dir), u_at(p + 4 * dir)];
            let coarse = rk4(y, u[0], u[2], u[4], hc);
            let half = rk4(y, u[0], u[1], u[2], hf);
            let fine_y = rk4(half, u[2], u[3], u[4], hf);
            let d0 = (fine_y[0] - coarse[0]) / 15.0;
            let d1 = (fine_y[1] - coarse[1]) / 15.0;
            let scale = 1.0f64.max(fine_y[0].norm().max(fine_y[1].norm()));
            let est = d0.norm().max(d1.norm()) / scale;
            if !est.is_finite() || !scale.is_finite() || scale > 1e150 {
                return Err(SweepError::Fatal(Error::Numeric(format!(
                    "renormalized Jost solution overflowed at z = {z} (is the potential localized?)"
                ))));
            }
            if est > tol {
                return Err(SweepError::Refine);
            }
            y = [fine_y[0] + d0, fine_y[1] + d1];
            p += 4 * dir;
            if record && (step + 1) % steps_per_sample == 0 {
                record_buf.push(y);
            }
        }
        Ok(Sweep { end: y, record: record_buf })
    }

    /// Sweeps at the coarsest level meeting the tolerance, returning the
    /// level used.
    fn sweep_adaptive(&self, z: C64, side: Side, stop: usize, record: bool) -> Result<(Sweep, usize)> {
        let lo = self.opts.min_level.max(1);
        let hi = self.opts.max_level.min(MAX_LEVEL).max(lo);
        for level in lo..=hi {
            match self.sweep(z, side, stop, level, record, self.opts.tol) {
                Ok(s) => return Ok((s, level)),
                Err(SweepError::Fatal(e)) => return Err(e),
                Err(SweepError::Refine) => continue,
            }
        }
        Err(Error::Numeric(format!(
            "Jost integrator could not meet tolerance {:e} at z = {z} with refinement level {hi}",
            self.opts.tol
        )))
    }

    /// Sweeps at a prescribed level, ignoring the error estimate.
    fn sweep_fixed(&self, z: C64, side: Side, stop: usize, level: usize, record: bool) -> Result<Sweep> {
        match self.sweep(z, side, stop, level.clamp(1, MAX_LEVEL), record, f64::INFINITY) {
            Ok(s) => Ok(s),
            Err(SweepError::Fatal(e)) => Err(e),
            Err(SweepError::Refine) => unreachable!("infinite tolerance never requests refinement"),
        }
    }

    fn midpoint(&self) -> usize {
        self.field.grid().n() / 2
    }

    /// `T(z)⁻¹` as the Wronskian of the Jost pair at the grid midpoint,
    /// together with the refinement levels used (left, right).
    pub fn transmission_inv_with_levels(&self, z: C64) -> Result<(C64, (usize, usize))> {
        Self::check_z(z)?;
        if self.zero {
            return Ok((C64::new(1.0, 0.0), (1, 1)));
        }
        let mid = self.midpoint();
        let (l, ll) = self.sweep_adaptive(z, Side::Left, mid, false)?;
        let (r, lr) = self.sweep_adaptive(z, Side::Right, mid, false)?;
        Ok((wronskian(l.end, r.end), (ll, lr)))
    }

    /// `T(z)⁻¹` at prescribed refinement levels.
    ///
    /// Using the same levels at neighbouring points makes the discrete map
    /// `z ↦ T⁻¹` smooth, which finite-difference derivatives rely on.
    pub fn transmission_inv_at_levels(&self, z: C64, levels: (usize, usize)) -> Result<C64> {
        Self::check_z(z)?;
        if self.zero {
            return Ok(C64::new(1.0, 0.0));
        }
        let mid = self.midpoint();
        let l = self.sweep_fixed(z, Side::Left, mid, levels.0, false)?;
        let r = self.sweep_fixed(z, Side::Right, mid, levels.1, false)?;
        Ok(wronskian(l.end, r.end))
    }

    /// `T(z)⁻¹` for `Im z ≥ 0` (the real axis included).
    pub fn transmission_inv(&self, z: C64) -> Result<C64> {
        self.transmission_inv_with_levels(z).map(|(t, _)| t)
    }

    /// Renormalized left and right Jost solutions on the whole grid,
    /// together with the refinement levels used.
    pub fn jost_pair_with_levels(&self, z: C64) -> Result<(WavePair, WavePair, (usize, usize))> {
        Self::check_z(z)?;
        let grid = *self.field.grid();
        let n = grid.n();
        if self.zero {
            return Ok((vacuum(grid, z, Side::Left), vacuum(grid, z, Side::Right), (1, 1)));
        }
        let (l, ll) = self.sweep_adaptive(z, Side::Left, n, true)?;
        let (r, lr) = self.sweep_adaptive(z, Side::Right, 0, true)?;
        Ok((pack(grid, z, Side::Left, l.record, n), pack(grid, z, Side::Right, r.record, n), (ll, lr)))
    }

    /// Renormalized Jost pair at prescribed levels.
    pub fn jost_pair_at_levels(&self, z: C64, levels: (usize, usize)) -> Result<(WavePair, WavePair)> {
        Self::check_z(z)?;
        let grid = *self.field.grid();
        let n = grid.n();
        if self.zero {
            return Ok((vacuum(grid, z, Side::Left), vacuum(grid, z, Side::Right)));
        }
        let l = self.sweep_fixed(z, Side::Left, n, levels.0, true)?;
        let r = self.sweep_fixed(z, Side::Right, 0, levels.1, true)?;
        Ok((pack(grid, z, Side::Left, l.record, n), pack(grid, z, Side::Right, r.record, n)))
    }

    /// Renormalized left and right Jost solutions on the whole grid.
    pub fn jost_pair(&self, z: C64) -> Result<(WavePair, WavePair)> {
        self.jost_pair_with_levels(z).map(|(l, r, _)| (l, r))
    }

    /// Jost pair at `z` and its `z`-derivative, from the fourth-order
    /// holomorphic stencil `f' ≈ [f(z+h) − f(z−h) − i(f(z+ih) − f(z−ih))]/(4h)`
    /// with `h = 1e−3` at fixed refinement levels.
    ///
    /// Returns `(left, right, d_left, d_right)`, all renormalized.
    pub fn jost_jet(&self, z: C64) -> Result<(WavePair, WavePair, WavePair, WavePair)> {
        const H: f64 = 1e-3;
        let (l, r, levels) = self.jost_pair_with_levels(z)?;
        let grid = *self.field.grid();
        if self.zero {
            let zero = |renorm| WavePair {
                grid,
                comp1: vec![C64::new(0.0, 0.0); grid.n()],
                comp2: vec![C64::new(0.0, 0.0); grid.n()],
                renorm,
                z,
            };
            return Ok((l, r, zero(Renorm::Left), zero(Renorm::Right)));
        }
        let offsets = [C64::new(H, 0.0), C64::new(-H, 0.0), C64::new(0.0, H), C64::new(0.0, -H)];
        let pairs = offsets
            .iter()
            .map(|o| self.jost_pair_at_levels(z + o, levels))
            .collect::<Result<Vec<_>>>()?;
        let combine = |get: &dyn Fn(&(WavePair, WavePair)) -> &WavePair, renorm| {
            let c = |f: &dyn Fn(&WavePair) -> &Vec<C64>| -> Vec<C64> {
                (0..grid.n())
                    .map(|i| {
                        let v: Vec<C64> = pairs.iter().map(|p| f(get(p))[i]).collect();
                        (v[0] - v[1] - C64::i() * (v[2] - v[3])) / (4.0 * H)
                    })
                    .collect()
            };
            WavePair { grid, comp1: c(&|w| &w.comp1), comp2: c(&|w| &w.comp2), renorm, z }
        };
        let dl = combine(&|p| &p.0, Renorm::Left);
        let dr = combine(&|p| &p.1, Renorm::Right);
        Ok((l, r, dl, dr))
    }
}

fn wronskian(phi: [C64; 2], chi: [C64; 2]) -> C64 {
    phi[0] * chi[1] - phi[1] * chi[0]
}

fn vacuum(grid: Grid, z: C64, side: Side) -> WavePair {
    let n = grid.n();
    let (a, b, renorm) = match side {
        Side::Left => (C64::new(1.0, 0.0), C64::new(0.0, 0.0), Renorm::Left),
        Side::Right => (C64::new(0.0, 0.0), C64::new(1.0, 0.0), Renorm::Right),
    };
    WavePair { grid, comp1: vec![a; n], comp2: vec![b; n], renorm, z }
}

fn pack(grid: Grid, z: C64, side: Side, mut record: Vec<[C64; 2]>, n: usize) -> WavePair {
    // Left sweeps record indices 0..=n, right sweeps n..=0; keep 0..n.
    match side {
        Side::Left => {
            record.truncate(n);
        }
        Side::Right => {
            record.reverse();
            record.truncate(n);
        }
    }
    let renorm = match side {
        Side::Left => Renorm::Left,
        Side::Right => Renorm::Right,
    };
    WavePair {
        grid,
        comp1: record.iter().map(|y| y[0]).collect(),
        comp2: record.iter().map(|y| y[1]).collect(),
        renorm,
        z,
    }
}
