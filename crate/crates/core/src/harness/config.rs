use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flux::{DiffusiveFluxConfig, FluxForm};
use crate::operator::SchemeOptions;
use crate::problem::{get_problem, Params, Problem};
use crate::time::CflConfig;

/// Moment limiter choice for a run.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tvb {
    /// Whatever the problem prescribes.
    #[default]
    Auto,
    Off,
    M(f64),
}

impl FromStr for Tvb {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "auto" => Ok(Tvb::Auto),
            "off" | "none" => Ok(Tvb::Off),
            v => match v.parse::<f64>() {
                Ok(m) if m >= 0.0 && m.is_finite() => Ok(Tvb::M(m)),
                _ => Err(Error::invalid(format!(
                    "tvb must be auto, off or a non-negative number, got `{s}`"
                ))),
            },
        }
    }
}

impl fmt::Display for Tvb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tvb::Auto => f.write_str("auto"),
            Tvb::Off => f.write_str("off"),
            Tvb::M(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub problem: String,
    pub params: Params,
    /// Polynomial degree `k`.
    pub order: usize,
    /// Cells in 1D, or along x in 2D.
    pub cells: usize,
    /// Cells along y in 2D; defaults to `cells`.
    pub cells_y: Option<usize>,
    /// Final time; defaults to the problem's.
    pub tfinal: Option<f64>,
    pub cflc: Option<f64>,
    pub cfld: Option<f64>,
    /// `h^(4/3)` convective time step for `k = 3`.
    pub p3_scaling: bool,
    pub mpp: bool,
    pub tvb: Tvb,
    pub flux_form: FluxForm,
    /// Directory receiving report.json and solution.csv.
    pub out: Option<PathBuf>,
    /// Recorded in the report; seeds randomized instance generation in tests.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            problem: "linear-1d".into(),
            params: Params::new(),
            order: 2,
            cells: 64,
            cells_y: None,
            tfinal: None,
            cflc: None,
            cfld: None,
            p3_scaling: false,
            mpp: true,
            tvb: Tvb::Auto,
            flux_form: FluxForm::Standard,
            out: None,
            seed: 0,
        }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "on" | "true" | "yes" | "1" => Ok(true),
        "off" | "false" | "no" | "0" => Ok(false),
        _ => Err(Error::invalid(format!("{key} expects on or off, got `{v}`"))),
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::invalid(format!("{key}: cannot parse `{v}`")))
}

/// Splits `key=value`, trimming both sides.
pub(crate) fn split_pair(s: &str) -> Result<(&str, &str)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| Error::invalid(format!("expected key=value, got `{s}`")))?;
    let (k, v) = (k.trim(), v.trim());
    if k.is_empty() {
        return Err(Error::invalid(format!("empty key in `{s}`")));
    }
    Ok((k, v))
}

impl RunConfig {
    pub fn new(problem: impl Into<String>, order: usize, cells: usize) -> Self {
        Self {
            problem: problem.into(),
            order,
            cells,
            ..Default::default()
        }
    }

    /// Sets one option by its command-line name (`order`, `cells`, `param`, ...).
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.replace('_', "-").as_str() {
            "problem" => self.problem = value.to_string(),
            "param" => {
                let (k, v) = split_pair(value)?;
                self.params.insert(k.to_string(), parse_num(k, v)?);
            }
            "order" => self.order = parse_num(key, value)?,
            "cells" => self.cells = parse_num(key, value)?,
            "cells-y" => self.cells_y = Some(parse_num(key, value)?),
            "tfinal" => self.tfinal = Some(parse_num(key, value)?),
            "cflc" => self.cflc = Some(parse_num(key, value)?),
            "cfld" => self.cfld = Some(parse_num(key, value)?),
            "p3-scaling" => self.p3_scaling = parse_bool(key, value)?,
            "mpp" => self.mpp = parse_bool(key, value)?,
            "tvb" => self.tvb = value.parse()?,
            "flux-form" => self.flux_form = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            "seed" => self.seed = parse_num(key, value)?,
            _ => return Err(Error::invalid(format!("unknown option `{key}`"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of `self`. Blank lines and `#` comments
    /// are skipped; `param` may repeat.
    pub fn apply_config_str(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = split_pair(line).map_err(|e| Error::invalid(format!("line {}: {e}", n + 1)))?;
            self.set(k, v)
                .map_err(|e| Error::invalid(format!("line {}: {e}", n + 1)))?;
        }
        Ok(())
    }

    pub fn from_config_file(path: &Path) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_config_str(&std::fs::read_to_string(path)?)?;
        Ok(cfg)
    }

    /// Builds the problem and checks every override against it.
    pub fn validate(&self) -> Result<Problem> {
        let problem = get_problem(&self.problem, &self.params)?;
        if self.order > 3 {
            return Err(Error::invalid(format!("order must be 0..=3, got {}", self.order)));
        }
        if self.cells == 0 || self.cells_y == Some(0) {
            return Err(Error::invalid("cell counts must be positive"));
        }
        if problem.dimension() == 1 && self.cells_y.is_some() {
            return Err(Error::invalid(format!("`{}` is one-dimensional; drop cells-y", self.problem)));
        }
        if let Some(t) = self.tfinal {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::invalid(format!("tfinal must be finite and non-negative, got {t}")));
            }
        }
        self.cfl().validate()?;
        self.scheme_options(&problem).diffusive.validate()?;
        Ok(problem)
    }

    pub fn cfl(&self) -> CflConfig {
        let base = CflConfig::for_degree(self.order);
        CflConfig {
            cflc: self.cflc.unwrap_or(base.cflc),
            cfld: self.cfld.unwrap_or(base.cfld),
            p3_time_scaling: self.p3_scaling,
        }
    }

    /// TVB parameter actually used for `problem`.
    pub fn effective_tvb(&self, problem: &Problem) -> Option<f64> {
        match self.tvb {
            Tvb::Auto => problem.tvb(),
            Tvb::Off => None,
            Tvb::M(m) => Some(m),
        }
    }

    pub fn scheme_options(&self, problem: &Problem) -> SchemeOptions {
        SchemeOptions {
            mpp: self.mpp,
            tvb: self.effective_tvb(problem),
            diffusive: DiffusiveFluxConfig {
                form: self.flux_form,
                ..DiffusiveFluxConfig::for_degree(self.order)
            },
        }
    }

    pub fn final_time(&self, problem: &Problem) -> f64 {
        self.tfinal.unwrap_or_else(|| problem.final_time())
    }
}
