//! Sweep configuration: defaults, an optional TOML file, and command-line
//! overrides, merged in that order.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Result, SweepError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Exact,
    /// Mean field with diagonal (basic) parity projection.
    Mf,
    /// Exact parity projection after variation.
    Pmf,
    /// Parity projection before variation.
    Pmfv,
    /// Asymptotic boson (RPA) formulas.
    Rpa,
    /// Finite-Ω projected pair states.
    Prpa,
    /// The `S_z` eigenstates `|K⟩`, one row per `K`.
    Kstates,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Exact,
        Method::Mf,
        Method::Pmf,
        Method::Pmfv,
        Method::Rpa,
        Method::Prpa,
        Method::Kstates,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Mf => "mf",
            Method::Pmf => "pmf",
            Method::Pmfv => "pmfv",
            Method::Rpa => "rpa",
            Method::Prpa => "prpa",
            Method::Kstates => "kstates",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s.trim())
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Emit {
    #[default]
    Table,
    /// The table plus a gnuplot script next to it.
    Plotscript,
}

impl FromStr for Emit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "table" => Ok(Emit::Table),
            "plotscript" => Ok(Emit::Plotscript),
            other => Err(format!(
                "unknown emit mode `{other}` (expected table or plotscript)"
            )),
        }
    }
}

/// `steps` evenly spaced couplings from `min` to `max` inclusive, in units of ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VxGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl VxGrid {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.max
                } else {
                    self.min + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub omega: usize,
    pub eps: f64,
    pub chi_list: Vec<f64>,
    pub vx_grid: VxGrid,
    pub methods: Vec<Method>,
    pub output_path: Option<PathBuf>,
    pub emit: Emit,
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            omega: 50,
            eps: 1.0,
            chi_list: vec![0.5],
            vx_grid: VxGrid {
                min: 0.0,
                max: 3.0,
                steps: 300,
            },
            methods: vec![Method::Exact],
            output_path: None,
            emit: Emit::Table,
            jobs: None,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.omega < 2 {
            return Err(SweepError::config("omega", "must be at least 2"));
        }
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(SweepError::config(
                "eps",
                format!("must be positive, got {}", self.eps),
            ));
        }
        if self.chi_list.is_empty() {
            return Err(SweepError::config("chi", "needs at least one value"));
        }
        if let Some(chi) = self
            .chi_list
            .iter()
            .find(|c| !(c.is_finite() && c.abs() <= 1.0))
        {
            return Err(SweepError::config(
                "chi",
                format!("{chi} is outside [-1, 1]"),
            ));
        }
        let g = &self.vx_grid;
        if g.steps < 1 {
            return Err(SweepError::config("steps", "must be at least 1"));
        }
        if !(g.min.is_finite() && g.min >= 0.0) {
            return Err(SweepError::config(
                "vx_min",
                format!("must be >= 0, got {}", g.min),
            ));
        }
        if !(g.max.is_finite() && g.max >= g.min) {
            return Err(SweepError::config(
                "vx_max",
                format!("must be >= vx_min, got {}", g.max),
            ));
        }
        if self.methods.is_empty() {
            return Err(SweepError::config("methods", "needs at least one method"));
        }
        if self.jobs == Some(0) {
            return Err(SweepError::config("jobs", "must be at least 1"));
        }
        if self.emit == Emit::Plotscript && self.output_path.is_none() {
            return Err(SweepError::config(
                "out",
                "plotscript output needs a data file path",
            ));
        }
        Ok(())
    }
}

/// Every setting as optional, shared by the TOML file and the command line.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub omega: Option<usize>,
    pub eps: Option<f64>,
    pub chi: Option<Vec<f64>>,
    pub vx_min: Option<f64>,
    pub vx_max: Option<f64>,
    pub steps: Option<usize>,
    pub methods: Option<Vec<String>>,
    pub out: Option<PathBuf>,
    pub emit: Option<String>,
    pub jobs: Option<usize>,
}

impl PartialConfig {
    pub fn from_toml_str(text: &str, path: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| SweepError::ConfigFile {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| SweepError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text, path)
    }

    /// Values set in `other` win.
    pub fn overlay(self, other: PartialConfig) -> PartialConfig {
        PartialConfig {
            omega: other.omega.or(self.omega),
            eps: other.eps.or(self.eps),
            chi: other.chi.or(self.chi),
            vx_min: other.vx_min.or(self.vx_min),
            vx_max: other.vx_max.or(self.vx_max),
            steps: other.steps.or(self.steps),
            methods: other.methods.or(self.methods),
            out: other.out.or(self.out),
            emit: other.emit.or(self.emit),
            jobs: other.jobs.or(self.jobs),
        }
    }

    /// Applies the set fields on top of `base` and validates the result.
    pub fn apply_to(self, base: SweepConfig) -> Result<SweepConfig> {
        let mut cfg = base;
        if let Some(v) = self.omega {
            cfg.omega = v;
        }
        if let Some(v) = self.eps {
            cfg.eps = v;
        }
        if let Some(v) = self.chi {
            cfg.chi_list = v;
        }
        if let Some(v) = self.vx_min {
            cfg.vx_grid.min = v;
        }
        if let Some(v) = self.vx_max {
            cfg.vx_grid.max = v;
        }
        if let Some(v) = self.steps {
            cfg.vx_grid.steps = v;
        }
        if let Some(list) = self.methods {
            cfg.methods = parse_methods(&list)?;
        }
        if let Some(v) = self.out {
            cfg.output_path = Some(v);
        }
        if let Some(v) = self.emit {
            cfg.emit = v
                .parse()
                .map_err(|e: String| SweepError::config("emit", e))?;
        }
        if let Some(v) = self.jobs {
            cfg.jobs = Some(v);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses method names, dropping repeats but keeping first-seen order.
pub fn parse_methods(list: &[String]) -> Result<Vec<Method>> {
    let mut out = Vec::new();
    for name in list
        .iter()
        .flat_map(|s| s.split(','))
        .filter(|s| !s.trim().is_empty())
    {
        let m: Method = name
            .parse()
            .map_err(|e: String| SweepError::config("methods", e))?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}
