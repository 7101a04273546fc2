//! TOML run configuration.
//!
//! ```toml
//! [potential]
//! m = 0.6
//! envelope = { kind = "power", a0 = 0.5 }
//! coefficients = { kind = "inverse-square" }
//! p = { kind = "constant", value = 1.0 }
//! decay_class = { kind = "power-decay", a0 = 0.5 }
//!
//! [run]
//! eps_grid = { start = 0.4, stop = 0.05, count = 5 }
//! a = 0.5
//!
//! [oracle]
//! enabled = true
//! pad = 0.5
//!
//! [output]
//! format = "csv"
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use spectral_tail::potential::validate_family;
use spectral_tail::{
    BranchFamily, CoefficientP, Coefficients, DecayClass, Eigenbasis, Envelope, OraclePolicy,
};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub potential: PotentialConfig,
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub oracle: OracleSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    pub envelope: Envelope,
    pub coefficients: Coefficients,
    pub p: CoefficientP,
    pub decay_class: DecayClass,
    /// Summability exponent: `sum_j alpha_j(0)^m < inf`.
    pub m: f64,
    #[serde(default)]
    pub eigenbasis: Eigenbasis,
}

/// Geometric grid from `start` to `stop` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpsGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl EpsGrid {
    pub fn validate(&self) -> Result<(), CliError> {
        let ok = self.start > 0.0 && self.stop > 0.0 && self.start.is_finite() && self.stop.is_finite();
        if !ok || self.count == 0 {
            return Err(CliError::Config(format!(
                "eps grid needs positive finite endpoints and count >= 1, got {}:{}:{}",
                self.start, self.stop, self.count
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        let ratio = self.stop / self.start;
        (0..self.count)
            .map(|k| match k {
                0 => self.start,
                k if k == self.count - 1 => self.stop,
                k => self.start * ratio.powf(k as f64 / last),
            })
            .collect()
    }
}

impl std::str::FromStr for EpsGrid {
    type Err = String;

    /// `START:STOP:COUNT`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(format!("expected START:STOP:COUNT, got {s:?}"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        Ok(Self {
            start: num(start)?,
            stop: num(stop)?,
            count: count.trim().parse().map_err(|e| format!("{count:?}: {e}"))?,
        })
    }
}

fn default_a() -> f64 {
    spectral_tail::partition::DEFAULT_A
}

fn default_constant() -> f64 {
    3.0
}

fn default_samples() -> usize {
    400
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_grid: Option<EpsGrid>,
    /// Explicit list of levels; takes precedence over `eps_grid`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_list: Option<Vec<f64>>,
    #[serde(default = "default_a")]
    pub a: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refine_depth: Option<usize>,
    #[serde(default = "default_constant")]
    pub c1: f64,
    #[serde(default = "default_constant")]
    pub c2: f64,
    /// Sample count for the hypothesis checks.
    #[serde(default = "default_samples")]
    pub samples: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            eps: None,
            eps_grid: None,
            eps_list: None,
            a: default_a(),
            refine_depth: None,
            c1: default_constant(),
            c2: default_constant(),
            samples: default_samples(),
        }
    }
}

fn yes() -> bool {
    true
}

fn default_pad() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    #[serde(default = "yes")]
    pub enabled: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default = "default_pad")]
    pub pad: f64,
    #[serde(default = "yes")]
    pub richardson: bool,
}

impl Default for OracleSection {
    fn default() -> Self {
        Self { enabled: true, h: None, pad: default_pad(), richardson: true }
    }
}

impl OracleSection {
    pub fn policy(&self) -> OraclePolicy {
        OraclePolicy { h: self.h, pad: self.pad, richardson: self.richardson }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Range checks that do not need a computation.
    pub fn validate(&self) -> Result<(), CliError> {
        self.family()?;
        self.potential.p.validate()?;
        let run = &self.run;
        if let Some(eps) = run.eps {
            check_eps(eps)?;
        }
        if let Some(grid) = &run.eps_grid {
            grid.validate()?;
        }
        if let Some(list) = &run.eps_list {
            list.iter().try_for_each(|&e| check_eps(e))?;
        }
        if !(run.a > 0.0 && run.a < 1.0) {
            return Err(CliError::Config(format!("run.a must lie in (0, 1), got {}", run.a)));
        }
        if run.refine_depth == Some(0) {
            return Err(CliError::Config("run.refine_depth must be >= 1".into()));
        }
        if !(run.c1 >= 0.0 && run.c2 >= 0.0) {
            return Err(CliError::Config(format!("run.c1 and run.c2 must be >= 0, got {} and {}", run.c1, run.c2)));
        }
        if run.samples < 2 {
            return Err(CliError::Config(format!("run.samples must be >= 2, got {}", run.samples)));
        }
        if let Some(h) = self.oracle.h {
            if !(h > 0.0 && h.is_finite()) {
                return Err(CliError::Config(format!("oracle.h must be > 0, got {h}")));
            }
        }
        if !(self.oracle.pad > 0.0 && self.oracle.pad.is_finite()) {
            return Err(CliError::Config(format!("oracle.pad must be > 0, got {}", self.oracle.pad)));
        }
        Ok(())
    }

    pub fn family(&self) -> Result<BranchFamily, CliError> {
        let p = &self.potential;
        Ok(BranchFamily::new(p.envelope.clone(), p.coefficients.clone(), p.decay_class, p.m)?
            .with_eigenbasis(p.eigenbasis))
    }

    /// The levels to evaluate: `eps_list`, then `eps_grid`, then `eps`.
    pub fn levels(&self) -> Option<Vec<f64>> {
        let run = &self.run;
        run.eps_list
            .clone()
            .or_else(|| run.eps_grid.map(|g| g.points()))
            .or_else(|| run.eps.map(|e| vec![e]))
    }

    pub fn validation_report(&self) -> Result<spectral_tail::potential::ValidationReport, CliError> {
        Ok(validate_family(&self.family()?, &self.potential.p, self.run.samples)?)
    }
}

pub fn check_eps(eps: f64) -> Result<(), CliError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(CliError::Config(format!("eps must be a positive finite number, got {eps}")));
    }
    Ok(())
}
