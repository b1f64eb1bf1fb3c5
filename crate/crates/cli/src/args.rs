//! Parsing of command-line values and of the parameter document.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use num_complex::Complex64 as C64;
use serde_json::Value;
use soliton_core::{Error, Grid, Result};
use soliton_scattering::Region;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Input file (GridField CSV, or PhasePoint JSON for make-soliton).
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Secondary JSON artifact (removed solitons, effective parameters).
    #[arg(long, value_name = "PATH")]
    pub json_out: Option<PathBuf>,
    /// Grid as `n,length`, centred at the origin.
    #[arg(long, value_name = "N,LEN")]
    pub grid: Option<String>,
    /// Evolution equation.
    #[arg(long, value_name = "nls|mkdv")]
    pub flow: Option<String>,
    /// Seed of random perturbations.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Spectral rectangle `x0,x1,y0,y1`.
    #[arg(long, value_name = "X0,X1,Y0,Y1", allow_hyphen_values = true)]
    pub region: Option<String>,
    /// JSON object of parameters.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Parameter override `key=value` (repeatable).
    #[arg(long = "param", value_name = "KEY=VALUE", allow_hyphen_values = true)]
    pub params: Vec<String>,
    /// Eigenvalue, e.g. `i` or `0.3+1.2i` (repeatable).
    #[arg(long = "z", allow_hyphen_values = true)]
    pub z: Vec<String>,
    /// Scattering parameter κ for the matching `--z` (repeatable).
    #[arg(long = "kappa", allow_hyphen_values = true)]
    pub kappa: Vec<String>,
    /// PhasePoint JSON describing the solitons to add.
    #[arg(long, value_name = "PATH")]
    pub point: Option<PathBuf>,
}

/// Parses a complex number such as `2`, `i`, `-0.5i`, `0.3+1.2i` or `1e-3-2i`.
pub fn parse_complex(text: &str) -> Result<C64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Schema(format!("cannot parse complex number '{text}'"));
    if s.is_empty() {
        return Err(bad());
    }
    let number = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(C64::new(s.parse::<f64>().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<f64>().map_err(|_| bad())?, number(&body[k..])?),
        None => (0.0, number(body)?),
    };
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(C64::new(re, im))
}

/// Comma-separated reals.
pub fn parse_reals(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Schema(format!("cannot parse number '{t}'")))
        })
        .collect()
}

/// `n,length` grid centred at the origin.
pub fn parse_grid(text: &str) -> Result<Grid> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [n, len] = parts.as_slice() else {
        return Err(Error::Schema(format!("grid must be 'n,length', got '{text}'")));
    };
    let n: usize = n.parse().map_err(|_| Error::Schema(format!("grid size '{n}' is not an integer")))?;
    let len: f64 = len.parse().map_err(|_| Error::Schema(format!("grid length '{len}' is not a number")))?;
    Grid::centered(n, len).map_err(|e| Error::Schema(e.to_string()))
}

/// `x0,x1,y0,y1` rectangle.
pub fn parse_region(text: &str) -> Result<Region> {
    match parse_reals(text)?.as_slice() {
        [x0, x1, y0, y1] => Region::new(*x0, *x1, *y0, *y1).map_err(|e| Error::Schema(e.to_string())),
        _ => Err(Error::Schema(format!("region must be 'x0,x1,y0,y1', got '{text}'"))),
    }
}

/// Parameters from `--config` overridden by `--param`; every key must be
/// consumed by the command.
#[derive(Debug, Default)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    /// Collects the parameter document of `common`.
    pub fn collect(common: &Common) -> Result<Self> {
        let mut values = BTreeMap::new();
        if let Some(path) = &common.config {
            let text = std::fs::read_to_string(path)?;
            let doc: Value = serde_json::from_str(&text)?;
            let obj = doc.as_object().ok_or_else(|| Error::Schema("config must be a JSON object".into()))?;
            for (k, v) in obj {
                values.insert(k.clone(), flatten(v)?);
            }
        }
        for p in &common.params {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Error::Schema(format!("parameter '{p}' is not of the form key=value")))?;
            values.insert(k.trim().to_owned(), v.trim().to_owned());
        }
        if !common.z.is_empty() {
            values.insert("z".into(), common.z.join(","));
        }
        if !common.kappa.is_empty() {
            values.insert("kappa".into(), common.kappa.join(","));
        }
        Ok(Self { values })
    }

    /// Removes and returns a raw value.
    pub fn take(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    /// Removes a real value, with a default.
    pub fn real(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.take(key) {
            None => Ok(default),
            Some(t) => match parse_reals(&t)?.as_slice() {
                [v] => Ok(*v),
                _ => Err(Error::Schema(format!("parameter '{key}' must be a single number"))),
            },
        }
    }

    /// Removes a required real value.
    pub fn required_real(&mut self, key: &str) -> Result<f64> {
        let v = self.real(key, f64::NAN)?;
        if v.is_nan() {
            return Err(Error::Schema(format!("missing parameter '{key}'")));
        }
        Ok(v)
    }

    /// Removes a list of reals.
    pub fn reals(&mut self, key: &str) -> Result<Option<Vec<f64>>> {
        self.take(key).map(|t| parse_reals(&t)).transpose()
    }

    /// Removes a list of complex numbers.
    pub fn complexes(&mut self, key: &str) -> Result<Option<Vec<C64>>> {
        self.take(key).map(|t| t.split(',').map(parse_complex).collect()).transpose()
    }

    /// Removes a required complex number.
    pub fn complex(&mut self, key: &str) -> Result<C64> {
        match self.complexes(key)?.as_deref() {
            Some([z]) => Ok(*z),
            Some(_) => Err(Error::Schema(format!("parameter '{key}' must be a single complex number"))),
            None => Err(Error::Schema(format!("missing parameter '{key}'"))),
        }
    }

    /// Fails if any parameter was not consumed.
    pub fn finish(self) -> Result<()> {
        match self.values.keys().next() {
            None => Ok(()),
            Some(k) => Err(Error::Schema(format!("unknown parameter '{k}'"))),
        }
    }
}

/// Config values as parameter strings: arrays join with commas, complex
/// pairs `[re, im]` inside arrays become `re+imi`.
fn flatten(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Array(items) => items
            .iter()
            .map(|item| match item {
                Value::Array(pair) if pair.len() == 2 => {
                    let z = soliton_core::phase::parse_complex(item)?;
                    Ok(format!("{}{:+}i", z.re, z.im))
                }
                other => flatten(other),
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.join(",")),
        _ => Err(Error::Schema(format!("unsupported config value {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_numbers_parse() {
        let cases = [
            ("i", C64::new(0.0, 1.0)),
            ("-i", C64::new(0.0, -1.0)),
            ("2i", C64::new(0.0, 2.0)),
            ("0", C64::new(0.0, 0.0)),
            ("-1.5", C64::new(-1.5, 0.0)),
            ("0.3+1.2i", C64::new(0.3, 1.2)),
            ("0.3-i", C64::new(0.3, -1.0)),
            ("1e-3+2e-1i", C64::new(1e-3, 0.2)),
            ("-2e+1-3i", C64::new(-20.0, -3.0)),
            (" 1 + 2i ", C64::new(1.0, 2.0)),
        ];
        for (t, z) in cases {
            assert_eq!(parse_complex(t).unwrap(), z, "{t}");
        }
        for bad in ["", "x", "1+2j", "ii", "1+2i3"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn grids_and_regions_parse() {
        let g = parse_grid("512,30").unwrap();
        assert_eq!(g.n(), 512);
        assert!((g.length() - 30.0).abs() < 1e-12);
        assert!(parse_grid("512").is_err());
        let r = parse_region("-1,1,0.5,2").unwrap();
        assert_eq!(r.to_array(), [-1.0, 1.0, 0.5, 2.0]);
        assert!(parse_region("-1,1,-0.5,2").is_err());
    }
}
