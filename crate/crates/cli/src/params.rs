//! `key=value,...` parameter lists for `scan`.
//!
//! Integer lists are written `2:3:5` or as inclusive ranges `2..10`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::str::FromStr;

use swcert_core::analysis::ScanGrid;

use crate::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("parameter '{item}' is not of the form key=value"))
            })?;
            let k = k.trim().to_string();
            if values.insert(k.clone(), v.trim().to_string()).is_some() {
                return Err(CliError::Usage(format!("parameter '{k}' given twice")));
            }
        }
        Ok(Params { values })
    }

    /// Rejects any key outside `allowed`.
    pub fn restrict(&self, allowed: &[&str]) -> CliResult<()> {
        match self.values.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::UnknownFlag(k.clone())),
            None => Ok(()),
        }
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.raw(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| CliError::Usage(format!("cannot parse {key}={v}")))
            })
            .transpose()
    }

    pub fn require<T: FromStr>(&self, key: &str) -> CliResult<T> {
        self.get(key)?
            .ok_or_else(|| CliError::MissingRequired(format!("parameter '{key}'")))
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> CliResult<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    pub fn usize_list(&self, key: &str) -> CliResult<Option<Vec<usize>>> {
        self.raw(key).map(|v| parse_usize_list(key, v)).transpose()
    }

    pub fn require_usize_list(&self, key: &str) -> CliResult<Vec<usize>> {
        self.usize_list(key)?
            .ok_or_else(|| CliError::MissingRequired(format!("parameter '{key}'")))
    }

    /// `points` evenly spaced values of `variable` from `from` to `to`.
    pub fn grid(&self, variable: &str, from: f64, to: f64, points: usize) -> CliResult<ScanGrid> {
        let lo = self.get_or("from", from)?;
        let hi = self.get_or("to", to)?;
        let n = self.get_or("points", points)?;
        ScanGrid::linspace(variable, lo, hi, n).map_err(|e| CliError::Usage(e.to_string()))
    }
}

fn parse_usize_list(key: &str, v: &str) -> CliResult<Vec<usize>> {
    let bad = || CliError::Usage(format!("cannot parse {key}={v} as an integer list"));
    if let Some((a, b)) = v.split_once("..") {
        let a: usize = a.parse().map_err(|_| bad())?;
        let b: usize = b.parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    v.split(':').map(|x| x.parse().map_err(|_| bad())).collect()
}

fn check_dims(dims: &[usize]) -> CliResult<()> {
    match dims.iter().find(|&&d| d < 2) {
        Some(d) => Err(CliError::Usage(format!("dimension {d} < 2"))),
        None if dims.is_empty() => Err(CliError::Usage("empty dimension list".into())),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Curve {
    #[value(name = "fig1")]
    Fig1,
    #[value(name = "figA1")]
    FigA1,
    #[value(name = "figA3")]
    FigA3,
    #[value(name = "figA4")]
    FigA4,
    #[value(name = "cmin-bound")]
    CminBound,
    #[value(name = "levy")]
    Levy,
}

/// A fully validated scan request.
#[derive(Clone, Debug, PartialEq)]
pub enum ScanSpec {
    /// Isotropic threshold against the bias `eps_min`.
    Fig1 {
        dim: usize,
        ms: Vec<usize>,
        ks: Vec<usize>,
        grid: ScanGrid,
    },
    /// Bias tolerance against dimension.
    FigA1 {
        dims: Vec<usize>,
        m: usize,
        p: f64,
    },
    /// Thermal threshold against the drift angle.
    FigA3 {
        dim: usize,
        beta: f64,
        grid: ScanGrid,
    },
    /// Thermal threshold against the inverse temperature.
    FigA4 {
        dim: usize,
        theta: f64,
        grid: ScanGrid,
    },
    CminBound {
        dims: Vec<usize>,
    },
    Levy {
        dim: usize,
        trials: usize,
        grid: ScanGrid,
    },
}

impl ScanSpec {
    pub fn from_params(curve: Curve, p: &Params) -> CliResult<Self> {
        let spec = match curve {
            Curve::Fig1 => {
                p.restrict(&["dim", "m", "k", "from", "to", "points"])?;
                let dim: usize = p.require("dim")?;
                check_dims(&[dim])?;
                let ms = p
                    .usize_list("m")?
                    .unwrap_or_else(|| (2..=dim + 1).collect());
                let ks = p.usize_list("k")?.unwrap_or_else(|| (1..dim).collect());
                if ms.iter().any(|&m| m < 2) || ks.iter().any(|&k| k == 0 || k >= dim) {
                    return Err(CliError::Usage(format!("need m >= 2 and 1 <= k < {dim}")));
                }
                let grid = p.grid("eps_min", 0.0, 1.0 / dim as f64, 101)?;
                ScanSpec::Fig1 { dim, ms, ks, grid }
            }
            Curve::FigA1 => {
                p.restrict(&["dims", "m", "p"])?;
                let dims = p.require_usize_list("dims")?;
                check_dims(&dims)?;
                let m = p.get_or("m", 2usize)?;
                let noise = p.get_or("p", 0.0f64)?;
                if m < 2 || !(0.0..=1.0).contains(&noise) {
                    return Err(CliError::Usage("need m >= 2 and 0 <= p <= 1".into()));
                }
                ScanSpec::FigA1 { dims, m, p: noise }
            }
            Curve::FigA3 => {
                p.restrict(&["dim", "beta", "from", "to", "points"])?;
                let dim: usize = p.require("dim")?;
                check_dims(&[dim])?;
                let beta = p.require("beta")?;
                let grid = p.grid("theta", 0.0, 2.0 * PI, 101)?;
                ScanSpec::FigA3 { dim, beta, grid }
            }
            Curve::FigA4 => {
                p.restrict(&["dim", "theta", "from", "to", "points"])?;
                let dim: usize = p.require("dim")?;
                check_dims(&[dim])?;
                let theta = p.require("theta")?;
                let grid = p.grid("beta", 0.0, 2.0, 101)?;
                ScanSpec::FigA4 { dim, theta, grid }
            }
            Curve::CminBound => {
                p.restrict(&["dims"])?;
                let dims = p.require_usize_list("dims")?;
                check_dims(&dims)?;
                ScanSpec::CminBound { dims }
            }
            Curve::Levy => {
                p.restrict(&["dim", "trials", "from", "to", "points"])?;
                let dim: usize = p.require("dim")?;
                check_dims(&[dim])?;
                let trials = p.get_or("trials", 0usize)?;
                let grid = p.grid("eps", 0.01, 0.2, 20)?;
                ScanSpec::Levy { dim, trials, grid }
            }
        };
        Ok(spec)
    }

    pub fn is_stochastic(&self) -> bool {
        matches!(self, ScanSpec::Levy { trials, .. } if *trials > 0)
    }
}
