//! Implementation of the subcommands.

use std::io::BufReader;
use std::path::Path;

use num_complex::Complex64 as C64;
use serde_json::{json, Value};
use soliton_backlund::{add_solitons, remove_solitons};
use soliton_conserved::EnergyReport;
use soliton_core::fmt::{json_complex, json_num, to_pretty};
use soliton_core::{Error, Grid, GridField, PhasePoint, Result};
use soliton_evolution::{evolve, stability_experiment, EvolveConfig, Flow, Perturbation};
use soliton_scattering::{locate_spectrum, Region};
use soliton_twosoliton::{
    alpha0, closed_form_field, effective_params, trajectory, EffectiveParams, TwoSolParams,
};

use crate::args::{parse_grid, parse_region, Common, Params};

/// Default grid: 4096 points on a domain of length 80.
const DEFAULT_GRID: (usize, f64) = (4096, 80.0);

/// Artifacts produced by a command.
pub struct Output {
    /// Primary artifact (`--out` or standard output).
    pub main: String,
    /// Secondary JSON artifact (`--json-out`).
    pub json: Option<String>,
}

impl Output {
    fn main(main: String) -> Self {
        Self { main, json: None }
    }
}

fn grid(common: &Common) -> Result<Grid> {
    match &common.grid {
        Some(t) => parse_grid(t),
        None => Grid::centered(DEFAULT_GRID.0, DEFAULT_GRID.1),
    }
}

fn flow(common: &Common) -> Result<Flow> {
    common.flow.as_deref().unwrap_or("nls").parse()
}

fn read_field(path: Option<&Path>) -> Result<GridField> {
    let path = path.ok_or_else(|| Error::Schema("this command needs --in <field.csv>".into()))?;
    let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    GridField::read_csv(BufReader::new(file))
}

fn read_point(path: &Path) -> Result<PhasePoint> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    PhasePoint::from_json(&serde_json::from_str::<Value>(&text)?)
}

/// Phase point from `--point`, or from the `z`/`kappa` parameters.
fn point_from(common: &Common, params: &mut Params, file: Option<&Path>) -> Result<PhasePoint> {
    if let Some(path) = file.or(common.point.as_deref()) {
        return read_point(path);
    }
    let zs = params
        .complexes("z")?
        .ok_or_else(|| Error::Schema("give the solitons with --point, or with --z and --kappa".into()))?;
    let kappas = params.complexes("kappa")?.unwrap_or_else(|| vec![C64::new(0.0, 0.0); zs.len()]);
    if kappas.len() != zs.len() {
        return Err(Error::Schema(format!("{} eigenvalue(s) but {} κ value(s)", zs.len(), kappas.len())));
    }
    PhasePoint::from_roots_and_kappas(&zs, &kappas)
}

fn region(common: &Common, default: Option<Region>) -> Result<Region> {
    match (&common.region, default) {
        (Some(t), _) => parse_region(t),
        (None, Some(r)) => Ok(r),
        (None, None) => Err(Error::Schema("this command needs --region x0,x1,y0,y1".into())),
    }
}

fn two_sol_params(params: &mut Params) -> Result<TwoSolParams> {
    let z1 = params.complex("z1")?;
    let z2 = params.complex("z2")?;
    let beta = match params.reals("beta")? {
        None => [0.0; 4],
        Some(b) if b.len() <= 4 => {
            let mut out = [0.0; 4];
            out[..b.len()].copy_from_slice(&b);
            out
        }
        Some(_) => return Err(Error::Schema("beta has at most four coefficients".into())),
    };
    TwoSolParams::new(z1, z2, beta).map_err(|e| Error::Schema(e.to_string()))
}

fn effective_json(e: &EffectiveParams) -> Value {
    json!({
        "z_plus": json_complex(e.z_plus),
        "z_minus": json_complex(e.z_minus),
        "x_plus": json_num(e.x_plus),
        "x_minus": json_num(e.x_minus),
        "theta_plus": json_num(e.theta_plus),
        "theta_minus": json_num(e.theta_minus),
        "alpha0": json_complex(e.alpha0),
        "sigma0": json_complex(e.sigma0),
        "gamma00": json_complex(e.gamma00),
        "x0": json_num(e.x0),
        "theta": json_num(e.theta),
    })
}

/// `make-soliton`: phase point → field on the vacuum.
pub fn make_soliton(common: &Common, mut params: Params) -> Result<Output> {
    let point = point_from(common, &mut params, common.input.as_deref())?;
    params.finish()?;
    let field = add_solitons(&GridField::zeros(grid(common)?), &point)?;
    Ok(Output::main(field.to_csv_string()))
}

/// `spectrum`: field → eigenvalues in a region.
pub fn spectrum(common: &Common, params: Params) -> Result<Output> {
    params.finish()?;
    let u = read_field(common.input.as_deref())?;
    let report = locate_spectrum(&u, &region(common, None)?)?;
    Ok(Output::main(to_pretty(&report.to_json())))
}

/// `add`: background field plus solitons.
pub fn add(common: &Common, mut params: Params) -> Result<Output> {
    let point = point_from(common, &mut params, None)?;
    params.finish()?;
    let u = read_field(common.input.as_deref())?;
    Ok(Output::main(add_solitons(&u, &point)?.to_csv_string()))
}

/// `remove`: strips the eigenvalues in a region.
pub fn remove(common: &Common, params: Params) -> Result<Output> {
    params.finish()?;
    let v = read_field(common.input.as_deref())?;
    let (u, point) = remove_solitons(&v, &region(common, None)?)?;
    Ok(Output { main: u.to_csv_string(), json: Some(to_pretty(&point.to_json())) })
}

/// `energies`: Hamiltonians, fractional energies and trace residual.
pub fn energies(common: &Common, mut params: Params) -> Result<Output> {
    let s = params.reals("s")?.unwrap_or_default();
    params.finish()?;
    let u = read_field(common.input.as_deref())?;
    Ok(Output::main(to_pretty(&EnergyReport::compute(&u, &s)?.to_json())))
}

/// `two-soliton`: closed-form field and effective parameters.
pub fn two_soliton(common: &Common, mut params: Params) -> Result<Output> {
    let p = two_sol_params(&mut params)?;
    params.finish()?;
    let field = closed_form_field(&p, grid(common)?)?;
    let effective = match effective_params(&p) {
        Ok(e) => effective_json(&e),
        Err(Error::SingleBump(a)) => json!({ "single_bump": true, "alpha0_modulus": json_num(a) }),
        Err(e) => return Err(e),
    };
    let doc = json!({
        "z1": json_complex(p.z1),
        "z2": json_complex(p.z2),
        "beta": p.beta.iter().map(|&b| json_num(b)).collect::<Vec<_>>(),
        "alpha0": json_complex(alpha0(&p)),
        "effective": effective,
    });
    Ok(Output { main: field.to_csv_string(), json: Some(to_pretty(&doc)) })
}

/// `trajectory`: bump positions along a flow.
pub fn trajectory_cmd(common: &Common, mut params: Params) -> Result<Output> {
    let p = two_sol_params(&mut params)?;
    let t0 = params.real("t0", 0.0)?;
    let t1 = params.real("t1", 1.0)?;
    let steps = params.real("steps", 10.0)?;
    params.finish()?;
    if !(steps >= 1.0 && steps.fract() == 0.0) {
        return Err(Error::Schema("steps must be a positive integer".into()));
    }
    let steps = steps as usize;
    let times: Vec<f64> = (0..=steps).map(|k| t0 + (t1 - t0) * k as f64 / steps as f64).collect();
    let tr = trajectory(&p, flow(common)?, &times, grid(common)?)?;
    Ok(Output::main(tr.to_csv()))
}

/// `evolve`: integrates a field to time `t`.
pub fn evolve_cmd(common: &Common, mut params: Params) -> Result<Output> {
    let flow = flow(common)?;
    let t = params.required_real("t")?;
    let mut cfg = EvolveConfig::new(flow, t);
    cfg.dt = params.real("dt", cfg.dt)?;
    params.finish()?;
    let u = read_field(common.input.as_deref())?;
    let out = evolve(&u, &cfg)?;
    Ok(Output::main(out[out.len() - 1].to_csv_string()))
}

/// `stability`: the orbital-stability experiment.
pub fn stability(common: &Common, mut params: Params) -> Result<Output> {
    let point = point_from(common, &mut params, None)?;
    let eps = params.required_real("eps")?;
    let shape = params.take("shape").unwrap_or_else(|| "gaussian".into());
    let t = params.real("t", 10.0)?;
    let records = params.real("records", 10.0)?;
    let flow = flow(common)?;
    let mut cfg = EvolveConfig::new(flow, t);
    cfg.dt = params.real("dt", cfg.dt)?;
    params.finish()?;
    if !(records >= 1.0 && records.fract() == 0.0) {
        return Err(Error::Schema("records must be a positive integer".into()));
    }
    let records = records as usize;
    cfg.record_times = (1..=records).map(|k| t * k as f64 / records as f64).collect();
    let perturbation = Perturbation::parse(&shape, common.seed.unwrap_or(0))?;
    let region = common.region.as_deref().map(parse_region).transpose()?;
    let report = stability_experiment(grid(common)?, &point, eps, perturbation, &cfg, region)?;
    Ok(Output::main(report.to_csv()))
}
