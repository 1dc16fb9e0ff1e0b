//! Parameter files and the effective configuration of a run.

use std::path::Path;

use serde::{Deserialize, Serialize};

use cosmohedra::exactgeom::{fmt_rat, parse_rat, rat};
use cosmohedra::polygon::{Diagonal, SubPolygon};
use cosmohedra::realization::{default_params, BRule, RealizationParams};
use cosmohedra::uloop::{default_loop_params, LoopParams};
use cosmohedra::Rat;

use crate::CliError;

/// `ε` used for the one-loop polytopes when none is given.
pub const DEFAULT_LOOP_EPSILON: (i64, i64) = (1, 10);

/// Weight override for one augmented diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub diagonal: Diagonal,
    pub value: String,
}

/// Override of `b` for one sub-polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonEntry {
    pub polygon: SubPolygon,
    pub value: String,
}

/// Shifts one coordinate of one computed vertex, for fault injection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perturbation {
    pub vertex: usize,
    pub coordinate: usize,
    pub delta: String,
}

/// Contents of a `--params` JSON file. Every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub a: Vec<WeightEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_rule: Option<BRule>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub b: Vec<PolygonEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturb: Option<Perturbation>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "loop")]
    pub loop_params: Option<LoopParams>,
}

impl ParamsFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved inputs of one command.
#[derive(Debug, Clone)]
pub struct Config {
    pub n: usize,
    pub file: ParamsFile,
    pub epsilon: Option<Rat>,
    pub seed: u64,
}

fn parse(s: &str, what: &str) -> Result<Rat, CliError> {
    parse_rat(s).map_err(|e| CliError::Usage(format!("{what}: {e}")))
}

impl Config {
    /// Effective `ε`: the command-line override, then the file, else `None`.
    fn epsilon_override(&self) -> Result<Option<Rat>, CliError> {
        match (&self.epsilon, &self.file.epsilon) {
            (Some(e), _) => Ok(Some(e.clone())),
            (None, Some(s)) => parse(s, "epsilon").map(Some),
            (None, None) => Ok(None),
        }
    }

    /// Cosmohedron parameters: the defaults for `n` with any overrides applied.
    pub fn cosmo_params(&self) -> Result<RealizationParams, CliError> {
        let mut p = default_params(self.n);
        if let Some(rule) = self.file.b_rule {
            p.b_rule = rule;
        }
        for w in &self.file.a {
            if !p.a.contains_key(&w.diagonal) {
                return Err(CliError::Usage(format!(
                    "diagonal {} is not in the polygon for n={}",
                    w.diagonal, self.n
                )));
            }
            p.a.insert(w.diagonal, parse(&w.value, "a")?);
        }
        for b in &self.file.b {
            if !b.polygon.is_subset(&SubPolygon::full(self.n)) {
                return Err(CliError::Usage(format!(
                    "polygon {} is not in the polygon for n={}",
                    b.polygon, self.n
                )));
            }
            p.b_overrides.insert(b.polygon, parse(&b.value, "b")?);
        }
        let eps = match (self.epsilon_override()?, p.epsilon_bound()) {
            (Some(e), _) => e,
            (None, Some(bound)) => bound / rat(2, 1),
            (None, None) => p.epsilon.clone(),
        };
        Ok(p.with_epsilon(eps))
    }

    /// One-loop parameters: the file's, else the default family at `ε`.
    pub fn loop_params(&self) -> Result<LoopParams, CliError> {
        if let Some(lp) = &self.file.loop_params {
            if lp.n != self.n {
                return Err(CliError::Usage(format!(
                    "loop parameters are for n={}, not n={}",
                    lp.n, self.n
                )));
            }
            return Ok(lp.clone());
        }
        let (p, q) = DEFAULT_LOOP_EPSILON;
        let eps = self.epsilon_override()?.unwrap_or_else(|| rat(p, q));
        Ok(default_loop_params(self.n, &eps))
    }

    /// The perturbation to apply to computed vertices, if any.
    pub fn perturbation(&self) -> Result<Option<(usize, usize, Rat)>, CliError> {
        self.file
            .perturb
            .as_ref()
            .map(|p| Ok((p.vertex, p.coordinate, parse(&p.delta, "perturb.delta")?)))
            .transpose()
    }

    /// A complete parameter file describing this run, usable as a template.
    pub fn effective_file(&self) -> Result<ParamsFile, CliError> {
        let p = self.cosmo_params()?;
        Ok(ParamsFile {
            n: Some(self.n),
            epsilon: Some(fmt_rat(&p.epsilon)),
            a: p.a
                .iter()
                .map(|(d, v)| WeightEntry {
                    diagonal: *d,
                    value: fmt_rat(v),
                })
                .collect(),
            b_rule: Some(p.b_rule),
            b: p.b_overrides
                .iter()
                .map(|(q, v)| PolygonEntry {
                    polygon: *q,
                    value: fmt_rat(v),
                })
                .collect(),
            perturb: self.file.perturb.clone(),
            loop_params: Some(self.loop_params()?),
        })
    }
}
