//! Flat `key = value` configuration files.
//!
//! The format is a line-oriented list of assignments with `#` comments and
//! blank lines, deliberately parseable without any dependency:
//!
//! ```text
//! # channel
//! alpha = 10.0
//! beta  = 0.5
//! h     = 3.141592653589793
//! modes = 10
//!
//! graph = linear
//! nu    = 0.5
//! boundary_graph = navier
//! gamma = 1.0
//!
//! forcing = shear_ramp
//! delta   = 0.01
//! dt      = 1e-4
//! t_end   = 1.0
//! integrator = rk4
//! ```
//!
//! Duplicate keys are rejected so a file cannot silently contradict itself.

use crate::constitutive::{BoundaryGraphModel, GraphModel};
use crate::galerkin::{Forcing, GalerkinConfig, Integrator};
use crate::params::SlipParams;
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: duplicate key `{key}`")]
    Duplicate { line: usize, key: String },
    #[error("missing required key `{0}`")]
    Missing(String),
    #[error("key `{key}`: cannot parse `{value}` as {ty}")]
    Parse {
        key: String,
        value: String,
        ty: &'static str,
    },
    #[error("key `{key}`: unknown value `{value}` (expected one of {expected})")]
    UnknownValue {
        key: String,
        value: String,
        expected: &'static str,
    },
    #[error("invalid combination: {0}")]
    Invalid(String),
}

/// Parsed key/value assignments.
#[derive(Debug, Clone, Default)]
pub struct FlatConfig {
    entries: BTreeMap<String, String>,
}

impl FlatConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let content = content.trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line,
                    text: content.to_string(),
                });
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(ConfigError::Syntax {
                    line,
                    text: content.to_string(),
                });
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(ConfigError::Duplicate { line, key });
            }
        }
        Ok(Self { entries })
    }

    pub fn from_file<P: AsRef<Path>>(path: P) -> Result<Self, std::io::Error> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str, ConfigError> {
        self.get(key).ok_or_else(|| ConfigError::Missing(key.into()))
    }

    pub fn require_f64(&self, key: &str) -> Result<f64, ConfigError> {
        parse_f64(key, self.require(key)?)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        match self.get(key) {
            Some(v) => parse_f64(key, v),
            None => Ok(default),
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, ConfigError> {
        match self.get(key) {
            Some(v) => v.parse().map_err(|_| ConfigError::Parse {
                key: key.into(),
                value: v.into(),
                ty: "usize",
            }),
            None => Ok(default),
        }
    }

    /// Assemble a Galerkin run configuration.
    ///
    /// Keys: `alpha`, `beta`, `h`, `modes`, `dt`, `t_end`, `integrator`
    /// (`rk4` | `backward_euler`), `forcing` (`none` | `shear_ramp` |
    /// `periodic_pressure`) with `delta` / `period`, `graph` (`linear` |
    /// `powerlaw`) with `nu`, `alpha_star`, `r`, optional `eps` for the
    /// regularized wrapper, and `boundary_graph` (`navier` | `powerslip`)
    /// with `gamma`, `q`.
    pub fn galerkin_config(&self) -> Result<GalerkinConfig, ConfigError> {
        let params = SlipParams::new(
            self.require_f64("alpha")?,
            self.require_f64("beta")?,
            self.f64_or("h", std::f64::consts::PI)?,
        )
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let n_modes = self.usize_or("modes", 10)?;
        let graph = self.graph_model()?;
        let boundary_graph = self.boundary_graph_model()?;
        let forcing = match self.get("forcing").unwrap_or("none") {
            "none" => Forcing::None,
            "shear_ramp" => Forcing::ShearRamp {
                delta: self.require_f64("delta")?,
            },
            "periodic_pressure" => Forcing::PeriodicPressure {
                period: self.require_f64("period")?,
            },
            other => {
                return Err(ConfigError::UnknownValue {
                    key: "forcing".into(),
                    value: other.into(),
                    expected: "none | shear_ramp | periodic_pressure",
                })
            }
        };
        let integrator = match self.get("integrator").unwrap_or("rk4") {
            "rk4" => Integrator::Rk4,
            "backward_euler" => Integrator::BackwardEuler,
            other => {
                return Err(ConfigError::UnknownValue {
                    key: "integrator".into(),
                    value: other.into(),
                    expected: "rk4 | backward_euler",
                })
            }
        };
        Ok(GalerkinConfig {
            params,
            n_modes,
            graph,
            boundary_graph,
            forcing,
            dt: self.require_f64("dt")?,
            t_end: self.require_f64("t_end")?,
            integrator,
        })
    }

    /// Constitutive graph from `graph`, `nu`, `alpha_star`, `r`, `eps`.
    pub fn graph_model(&self) -> Result<GraphModel, ConfigError> {
        let base = match self.require("graph")? {
            "linear" => GraphModel::linear(self.require_f64("nu")?),
            "powerlaw" => GraphModel::power_law(
                self.require_f64("nu")?,
                self.f64_or("alpha_star", 0.0)?,
                self.require_f64("r")?,
            ),
            other => {
                return Err(ConfigError::UnknownValue {
                    key: "graph".into(),
                    value: other.into(),
                    expected: "linear | powerlaw",
                })
            }
        }
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        match self.get("eps") {
            Some(v) => GraphModel::regularized(base, parse_f64("eps", v)?)
                .map_err(|e| ConfigError::Invalid(e.to_string())),
            None => Ok(base),
        }
    }

    /// Boundary graph from `boundary_graph`, `gamma`, `q`; defaults to the
    /// unit Navier response used by the explicit scenarios.
    pub fn boundary_graph_model(&self) -> Result<BoundaryGraphModel, ConfigError> {
        match self.get("boundary_graph").unwrap_or("navier") {
            "navier" => BoundaryGraphModel::navier_linear(self.f64_or("gamma", 1.0)?)
                .map_err(|e| ConfigError::Invalid(e.to_string())),
            "powerslip" => BoundaryGraphModel::power_law_slip(
                self.f64_or("gamma", 1.0)?,
                self.require_f64("q")?,
            )
            .map_err(|e| ConfigError::Invalid(e.to_string())),
            other => Err(ConfigError::UnknownValue {
                key: "boundary_graph".into(),
                value: other.into(),
                expected: "navier | powerslip",
            }),
        }
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    value.parse().map_err(|_| ConfigError::Parse {
        key: key.into(),
        value: value.into(),
        ty: "f64",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# a comment
alpha = 10.0
beta  = 0.5   # trailing comment
h     = 3.141592653589793
graph = linear
nu    = 0.5
forcing = shear_ramp
delta = 0.01
dt    = 1e-4
t_end = 1.0
";

    #[test]
    fn parses_galerkin_config() {
        let cfg = FlatConfig::parse(SAMPLE).unwrap();
        let gc = cfg.galerkin_config().unwrap();
        assert_eq!(gc.params.alpha, 10.0);
        assert_eq!(gc.n_modes, 10);
        assert_eq!(gc.integrator, Integrator::Rk4);
        assert!(matches!(gc.forcing, Forcing::ShearRamp { delta } if delta == 0.01));
        assert!(matches!(gc.graph, GraphModel::Linear { nu } if nu == 0.5));
    }

    #[test]
    fn rejects_duplicates_and_syntax_errors() {
        assert!(matches!(
            FlatConfig::parse("alpha = 1\nalpha = 2\n"),
            Err(ConfigError::Duplicate { line: 2, .. })
        ));
        assert!(matches!(
            FlatConfig::parse("alpha 1\n"),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn regularized_graph_from_eps_key() {
        let cfg =
            FlatConfig::parse("graph = powerlaw\nnu = 1.0\nr = 3.0\neps = 0.1\n").unwrap();
        assert!(matches!(
            cfg.graph_model().unwrap(),
            GraphModel::Regularized { .. }
        ));
    }

    #[test]
    fn missing_keys_are_reported() {
        let cfg = FlatConfig::parse("alpha = 1.0\n").unwrap();
        assert_eq!(
            cfg.galerkin_config().unwrap_err(),
            ConfigError::Missing("beta".into())
        );
    }

    #[test]
    fn unknown_enum_values_are_reported() {
        let cfg = FlatConfig::parse(
            "alpha = 1\nbeta = 1\ngraph = cubic\nnu = 1\ndt = 0.1\nt_end = 1\n",
        )
        .unwrap();
        assert!(matches!(
            cfg.galerkin_config(),
            Err(ConfigError::UnknownValue { .. })
        ));
    }
}
