//! TOML run and suite configuration.
//!
//! Tables are flattened to dotted keys (`[grid] n_cells = 64` is `grid.n_cells`).
//! The `[problem]` table selects a preset; every other key overrides one field
//! of it. Unknown keys are rejected.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use toml::Value;

use super::convergence::ConvergenceStudy;
use super::problems::{Flow2DSpec, ProblemSpec};
use crate::eos::{Eos, EosKind};
use crate::equilibrium::SolverChoice;
use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::reconstruction::LimiterConfig;
use crate::solver::SchemeKind;

/// Flattened key-value view of a config document that tracks which keys were read.
#[derive(Debug)]
pub struct FlatConfig {
    values: BTreeMap<String, Value>,
    used: RefCell<BTreeSet<String>>,
}

fn flatten(prefix: &str, table: &toml::Table, out: &mut BTreeMap<String, Value>) {
    for (k, v) in table {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Table(t) => flatten(&key, t, out),
            other => {
                out.insert(key, other.clone());
            }
        }
    }
}

impl FlatConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::config(e.to_string()))?;
        let mut values = BTreeMap::new();
        flatten("", &table, &mut values);
        Ok(Self {
            values,
            used: RefCell::default(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    fn get(&self, key: &str) -> Option<&Value> {
        let v = self.values.get(key);
        if v.is_some() {
            self.used.borrow_mut().insert(key.to_string());
        }
        v
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Float(x)) => Ok(Some(*x)),
            Some(Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(v) => Err(Error::config(format!("{key} must be a number, got {v}"))),
        }
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as usize)),
            Some(v) => Err(Error::config(format!(
                "{key} must be a non-negative integer, got {v}"
            ))),
        }
    }

    pub fn bool(&self, key: &str) -> Result<Option<bool>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Boolean(b)) => Ok(Some(*b)),
            Some(v) => Err(Error::config(format!("{key} must be true or false, got {v}"))),
        }
    }

    pub fn str(&self, key: &str) -> Result<Option<&str>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.as_str())),
            Some(v) => Err(Error::config(format!("{key} must be a string, got {v}"))),
        }
    }

    pub fn parsed<T: std::str::FromStr<Err = Error>>(&self, key: &str) -> Result<Option<T>> {
        self.str(key)?.map(str::parse).transpose()
    }

    fn array(&self, key: &str) -> Result<Option<&Vec<Value>>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Array(a)) => Ok(Some(a)),
            Some(v) => Err(Error::config(format!("{key} must be an array, got {v}"))),
        }
    }

    pub fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some(a) = self.array(key)? else {
            return Ok(None);
        };
        a.iter()
            .map(|v| match v {
                Value::Float(x) => Ok(*x),
                Value::Integer(i) => Ok(*i as f64),
                v => Err(Error::config(format!("{key} entries must be numbers, got {v}"))),
            })
            .collect::<Result<_>>()
            .map(Some)
    }

    pub fn usize_list(&self, key: &str) -> Result<Option<Vec<usize>>> {
        let Some(a) = self.array(key)? else {
            return Ok(None);
        };
        a.iter()
            .map(|v| match v {
                Value::Integer(i) if *i > 0 => Ok(*i as usize),
                v => Err(Error::config(format!(
                    "{key} entries must be positive integers, got {v}"
                ))),
            })
            .collect::<Result<_>>()
            .map(Some)
    }

    pub fn str_list(&self, key: &str) -> Result<Option<Vec<String>>> {
        let Some(a) = self.array(key)? else {
            return Ok(None);
        };
        a.iter()
            .map(|v| match v {
                Value::String(s) => Ok(s.clone()),
                v => Err(Error::config(format!("{key} entries must be strings, got {v}"))),
            })
            .collect::<Result<_>>()
            .map(Some)
    }

    /// Fail on any key that was never read.
    pub fn reject_unused(&self) -> Result<()> {
        let used = self.used.borrow();
        let unknown: Vec<&str> = self
            .values
            .keys()
            .filter(|k| !used.contains(*k))
            .map(String::as_str)
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(Error::config(format!("unknown keys: {}", unknown.join(", "))))
        }
    }
}

/// A single run: the problem and where to write snapshots.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    /// Snapshot CSV path; snapshots at intermediate times get `_t<time>` inserted before the extension.
    pub output_path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub study: ConvergenceStudy,
    pub output_path: Option<PathBuf>,
}

/// Build the preset named in `[problem]` and apply every override.
pub fn problem_from(cfg: &FlatConfig) -> Result<ProblemSpec> {
    let name = cfg
        .str("problem.name")?
        .ok_or_else(|| Error::config("missing problem.name"))?
        .to_string();
    let mut p = ProblemSpec::preset(
        &name,
        cfg.f64("problem.mach")?,
        cfg.f64("problem.amplitude")?,
        cfg.usize("grid.n_cells")?,
    )?;
    if let Some(init) = cfg.parsed("problem.init")? {
        p.init = init;
    }

    let kind: Option<EosKind> = cfg.parsed("eos.kind")?;
    let gamma = cfg.f64("eos.gamma")?;
    let p_inf = cfg.f64("eos.p_inf")?;
    if kind.is_some() || gamma.is_some() || p_inf.is_some() {
        p.eos = Eos::new(
            kind.unwrap_or(p.eos.kind()),
            gamma.unwrap_or(p.eos.gamma()),
            p_inf.unwrap_or(p.eos.p_inf()),
        )?;
    }
    if let Some(s) = cfg.str("potential")? {
        p.potential = Potential::parse(s)?;
    }

    if let Some(x) = cfg.f64("anchor.rho")? {
        p.anchor.rho = x;
    }
    if let Some(x) = cfg.f64("anchor.v")? {
        p.anchor.v = x;
    }
    if let Some(x) = cfg.f64("anchor.p")? {
        p.anchor.p = x;
    }
    if let Some(x) = cfg.f64("anchor.x")? {
        p.anchor.x = x;
    }
    if let Some(x) = cfg.f64("perturbation.width")? {
        p.perturbation.width = x;
    }
    if let Some(x) = cfg.f64("perturbation.center")? {
        p.perturbation.center = x;
    }

    if let Some(x) = cfg.f64("equilibrium.tol")? {
        p.scheme.equilibrium.tol = x;
    }
    if let Some(n) = cfg.usize("equilibrium.max_iter")? {
        p.scheme.equilibrium.max_iter = n;
    }
    if let Some(s) = cfg.str("equilibrium.solver")? {
        p.scheme.equilibrium.solver = match s {
            "auto" => SolverChoice::Auto,
            "ideal" => SolverChoice::IdealGas,
            "general" => SolverChoice::General,
            other => return Err(Error::config(format!("unknown equilibrium.solver {other:?}"))),
        };
    }

    if let Some(g) = cfg.parsed("grid.geometry")? {
        p.geometry = g;
    }
    if let Some(x) = cfg.f64("grid.x_min")? {
        p.x_min = x;
    }
    if let Some(x) = cfg.f64("grid.x_max")? {
        p.x_max = x;
    }
    let ny = cfg.usize("grid.ny")?;
    let y_min = cfg.f64("grid.y_min")?;
    let y_max = cfg.f64("grid.y_max")?;
    if ny.is_some() || y_min.is_some() || y_max.is_some() {
        let base = p.flow_2d.unwrap_or(Flow2DSpec {
            y_min: 0.0,
            y_max: 1.0,
            ny: 32,
        });
        p.flow_2d = Some(Flow2DSpec {
            y_min: y_min.unwrap_or(base.y_min),
            y_max: y_max.unwrap_or(base.y_max),
            ny: ny.unwrap_or(base.ny),
        });
    }

    let recon_scheme: Option<SchemeKind> = cfg.parsed("recon.scheme")?;
    let source_scheme: Option<SchemeKind> = cfg.parsed("source.scheme")?;
    match (recon_scheme, source_scheme) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::config(
                "recon.scheme and source.scheme must agree; mixing them breaks the flux-source balance",
            ))
        }
        (Some(k), _) | (None, Some(k)) => p.scheme.scheme = k,
        (None, None) => {}
    }
    let order = cfg.usize("recon.order")?;
    let limiter = cfg.str("recon.limiter")?;
    let theta = cfg.f64("recon.theta")?;
    if order.is_some() || limiter.is_some() || theta.is_some() {
        let order = order.map_or(p.scheme.limiter.order, |o| o.min(u8::MAX as usize) as u8);
        let theta = match (theta, limiter) {
            (Some(t), _) => t,
            (None, Some(name)) => LimiterConfig::theta_for(name)?,
            (None, None) => p.scheme.limiter.theta,
        };
        p.scheme.limiter = LimiterConfig::new(order, theta)?;
    }
    if let Some(c) = cfg.bool("recon.clip")? {
        p.scheme.clip = c;
    }
    if let Some(f) = cfg.parsed("flux.kind")? {
        p.scheme.flux = f;
    }
    if let Some(g) = cfg.parsed("source.grad_phi")? {
        p.scheme.grad_phi = g;
    }

    if let Some(x) = cfg.f64("time.cfl")? {
        p.run.cfl = x;
    }
    if let Some(x) = cfg.f64("time.t_end")? {
        p.run.t_end = x;
    }
    if let Some(n) = cfg.usize("time.rk_order")? {
        p.run.rk_order = n.min(u8::MAX as usize) as u8;
    }
    if let Some(t) = cfg.f64_list("output.times")? {
        p.run.output_times = t;
    }
    if let Some(b) = cfg.parsed("bc.left")? {
        p.bc.0 = b;
    }
    if let Some(b) = cfg.parsed("bc.right")? {
        p.bc.1 = b;
    }
    for key in ["bc.bottom", "bc.top"] {
        if let Some(b) = cfg.parsed::<crate::solver::BoundaryKind>(key)? {
            if b != crate::solver::BoundaryKind::Frozen {
                return Err(Error::config(format!(
                    "{key}: only frozen boundaries are supported in y"
                )));
            }
        }
    }
    p.run.validate()?;
    Ok(p)
}

impl RunConfig {
    pub fn from_flat(cfg: &FlatConfig) -> Result<Self> {
        let problem = problem_from(cfg)?;
        let output_path = cfg.str("output.path")?.map(PathBuf::from);
        cfg.reject_unused()?;
        Ok(Self { problem, output_path })
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        Self::from_flat(&FlatConfig::parse(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_flat(&FlatConfig::load(path)?)
    }
}

impl SuiteConfig {
    pub fn from_flat(cfg: &FlatConfig) -> Result<Self> {
        let problem = problem_from(cfg)?;
        let mut study = ConvergenceStudy::standard_ladder(problem);
        if let Some(l) = cfg.usize_list("suite.levels")? {
            study.levels = l;
        }
        if let Some(n) = cfg.usize("suite.reference_cells")? {
            study.reference_cells = n;
        }
        if let Some(s) = cfg.str_list("suite.schemes")? {
            study.schemes = s.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        }
        if let Some(q) = cfg.parsed("suite.quantity")? {
            study.quantity = q;
        }
        if let Some(w) = cfg.parsed("suite.norm")? {
            study.weight = w;
        }
        let output_path = cfg
            .str("suite.output")?
            .or(cfg.str("output.path")?)
            .map(PathBuf::from);
        cfg.reject_unused()?;
        Ok(Self { study, output_path })
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        Self::from_flat(&FlatConfig::parse(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_flat(&FlatConfig::load(path)?)
    }
}
