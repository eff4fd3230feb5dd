//! Run configuration: a TOML file with one section per concern.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::{DuopolyParam, Param, Quantity};
use crate::model_core::{
    ChannelParams, CompetitionMode, ContractKind, ContractSpec, DuopolyParams, GreeningSign, TaxPolicy,
};
use crate::solver::{RscLeaderObjective, SolverConfig};

/// The bundled base calibration.
pub const BASE_CFG: &str = include_str!("../../config/base.cfg");

/// A configuration problem, anchored to a line of the source when possible.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub source: String,
    pub line: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(l) => write!(f, "{}:{}: {}", self.source, l, self.message),
            None => write!(f, "{}: {}", self.source, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractSection {
    pub kinds: Vec<String>,
    #[serde(default = "default_psi")]
    pub psi: f64,
    #[serde(default = "default_pi_bar")]
    pub pi_bar: f64,
    #[serde(default = "default_phi")]
    pub phi: f64,
    #[serde(default = "yes")]
    pub optimize_phi: bool,
    #[serde(default)]
    pub rsc_leader: RscLeaderObjective,
}

fn default_psi() -> f64 {
    0.68
}
fn default_pi_bar() -> f64 {
    2500.0
}
fn default_phi() -> f64 {
    0.33
}
fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaxSection {
    pub theta0: f64,
    /// Explicit tax levels; overrides the `t_min..t_max` range.
    #[serde(default)]
    pub grid: Option<Vec<f64>>,
    #[serde(default)]
    pub t_min: f64,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    #[serde(default = "default_t_steps")]
    pub t_steps: usize,
    /// Tax levels for D_CENT, CSC, RSC and LTT in the greening ordering report.
    #[serde(default = "default_prop9")]
    pub prop9_levels: [f64; 4],
}

fn default_t_max() -> f64 {
    12.0
}
fn default_t_steps() -> usize {
    49
}
fn default_prop9() -> [f64; 4] {
    [6.0, 2.0, 6.0, 6.0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    /// Retained share used for RSC in sweeps.
    #[serde(default)]
    pub psi: Option<f64>,
    #[serde(default = "default_quantities")]
    pub quantities: Vec<String>,
}

fn default_quantities() -> Vec<String> {
    ["w", "p", "theta", "q", "pi_al", "pi_ap", "u_ap", "sw"].map(String::from).to_vec()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DuopolySweepSection {
    pub parameter: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DuopolySection {
    pub mode: CompetitionMode,
    #[serde(default)]
    pub beta1: f64,
    #[serde(default)]
    pub beta2: f64,
    #[serde(default)]
    pub xi1: f64,
    #[serde(default)]
    pub xi2: f64,
    #[serde(default = "one")]
    pub r1: f64,
    #[serde(default = "one")]
    pub r2: f64,
    #[serde(default)]
    pub greening_sign: GreeningSign,
    #[serde(default)]
    pub landing_fee: f64,
    #[serde(default = "default_duopoly_kinds")]
    pub kinds: Vec<String>,
    /// Fee at which closed forms are compared with the oracle.
    #[serde(default = "default_duopoly_w")]
    pub w: f64,
    #[serde(default)]
    pub sweep: Option<DuopolySweepSection>,
}

fn one() -> f64 {
    1.0
}
fn default_duopoly_kinds() -> Vec<String> {
    vec!["D_CENT".into(), "RSC".into()]
}
fn default_duopoly_w() -> f64 {
    40.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { format: OutputFormat::Csv, dir: default_dir() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    #[serde(default = "default_random_sets")]
    pub random_sets: usize,
    /// Relative perturbation applied to Δ₂ before the closed-form FOC regression.
    #[serde(default)]
    pub mutate_delta2: f64,
}

fn default_random_sets() -> usize {
    200
}

impl Default for VerifySection {
    fn default() -> Self {
        VerifySection { random_sets: default_random_sets(), mutate_delta2: 0.0 }
    }
}

/// The whole configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    pub params: ChannelParams,
    pub contract: ContractSection,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub tax: Option<TaxSection>,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub duopoly: Option<DuopolySection>,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub verify: VerifySection,
}

/// What a subcommand will execute, fully resolved.
#[derive(Debug, Clone, PartialEq)]
pub enum RunMode {
    Solve { contracts: Vec<ContractSpec> },
    Sweep { contracts: Vec<ContractSpec>, param: Param, grid: Vec<f64>, quantities: Vec<Quantity> },
    Tax { contracts: Vec<ContractSpec>, theta0: f64, grid: Vec<f64>, prop9_levels: [f64; 4] },
    Duopoly { params: DuopolyParams, kinds: Vec<ContractKind>, w: f64, sweep: Option<(DuopolyParam, Vec<f64>)> },
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Sweep,
    Tax,
    Duopoly,
    Verify,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

/// Line of the first `key =` (or `[key]`) in the source, for semantic errors.
fn line_of_key(text: &str, key: &str) -> Option<usize> {
    text.lines().position(|l| {
        let t = l.trim_start();
        t.strip_prefix(key).is_some_and(|rest| rest.trim_start().starts_with('='))
            || t.trim_end() == format!("[{key}]")
    })
    .map(|k| k + 1)
}

fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    crate::analysis::linspace(lo, hi, steps)
}

impl RunConfig {
    /// Parses configuration text. `source` names it in error messages.
    pub fn parse(text: &str, source: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| ConfigError {
            source: source.into(),
            line: e.span().map(|s| line_of(text, s.start)),
            message: e.message().trim().to_string(),
        })?;
        cfg.check(text, source)?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
            source: path.display().to_string(),
            line: None,
            message: format!("cannot read: {e}"),
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn base() -> Self {
        Self::parse(BASE_CFG, "base.cfg").expect("bundled config parses")
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    fn check(&self, text: &str, source: &str) -> Result<(), ConfigError> {
        let err = |key: &str, message: String| ConfigError { source: source.into(), line: line_of_key(text, key), message };
        self.params.validate().map_err(|e| err("params", e.to_string()))?;
        for k in &self.contract.kinds {
            ContractKind::parse(k).ok_or_else(|| err("kinds", format!("unknown contract kind '{k}'")))?;
        }
        if self.contract.kinds.is_empty() {
            return Err(err("kinds", "at least one contract kind is required".into()));
        }
        if let Some(s) = &self.sweep {
            Param::parse(&s.parameter).ok_or_else(|| err("parameter", format!("unknown parameter '{}'", s.parameter)))?;
            for q in &s.quantities {
                quantity(q).ok_or_else(|| err("quantities", format!("unknown quantity '{q}'")))?;
            }
            if s.steps == 0 || !(s.max >= s.min) || (s.steps > 1 && s.max == s.min) {
                return Err(err("steps", "sweep needs steps >= 1 and max > min (or one step)".into()));
            }
        }
        if let Some(t) = &self.tax {
            if t.grid.as_ref().is_some_and(|g| g.is_empty()) || (t.grid.is_none() && t.t_steps == 0) {
                return Err(err("tax", "tax grid is empty".into()));
            }
            if !(t.theta0 > 0.0) {
                return Err(err("theta0", "theta0 must be positive".into()));
            }
        }
        if let Some(d) = &self.duopoly {
            for k in &d.kinds {
                ContractKind::parse(k).ok_or_else(|| err("kinds", format!("unknown contract kind '{k}'")))?;
            }
            if let Some(s) = &d.sweep {
                DuopolyParam::parse(&s.parameter)
                    .ok_or_else(|| err("parameter", format!("unknown duopoly parameter '{}'", s.parameter)))?;
            }
            self.duopoly_params().validate().map_err(|e| err("duopoly", e.to_string()))?;
        }
        Ok(())
    }

    /// Contract kinds in configuration order, optionally filtered by a comma-separated list.
    pub fn kinds(&self, filter: Option<&str>) -> Result<Vec<ContractKind>, String> {
        let all: Vec<ContractKind> = self.contract.kinds.iter().filter_map(|k| ContractKind::parse(k)).collect();
        match filter {
            None => Ok(all),
            Some(list) => list
                .split(',')
                .map(|s| ContractKind::parse(s).ok_or_else(|| format!("unknown contract '{s}'")))
                .collect(),
        }
    }

    pub fn spec(&self, kind: ContractKind, psi: f64) -> ContractSpec {
        let mut s = ContractSpec::for_kind(kind, psi, self.contract.pi_bar);
        if kind == ContractKind::Csc && !self.contract.optimize_phi {
            s.phi = Some(self.contract.phi);
        }
        s
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig { rsc_objective: self.contract.rsc_leader, ..self.solver }
    }

    pub fn duopoly_params(&self) -> DuopolyParams {
        let p = &self.params;
        let d = self.duopoly.clone().unwrap_or(DuopolySection {
            mode: CompetitionMode::PriceCompetition,
            beta1: 0.0,
            beta2: 0.0,
            xi1: 0.0,
            xi2: 0.0,
            r1: 1.0,
            r2: 1.0,
            greening_sign: GreeningSign::Mirrored,
            landing_fee: 0.0,
            kinds: vec![],
            w: 40.0,
            sweep: None,
        });
        DuopolyParams {
            alpha: p.alpha,
            beta: p.beta,
            xi: p.xi,
            i: p.i,
            c_ap: p.c_ap,
            mu: p.mu,
            w_prime: p.w_prime,
            mode: d.mode,
            beta1: d.beta1,
            beta2: d.beta2,
            xi1: d.xi1,
            xi2: d.xi2,
            r1: d.r1,
            r2: d.r2,
            greening_sign: d.greening_sign,
            landing_fee: d.landing_fee,
        }
    }

    /// Resolves the execution mode of `cmd`; the section it needs must be present.
    pub fn for_command(&self, cmd: Command, filter: Option<&str>) -> Result<RunMode, String> {
        let specs = |psi: f64| -> Result<Vec<ContractSpec>, String> {
            Ok(self.kinds(filter)?.into_iter().map(|k| self.spec(k, psi)).collect())
        };
        match cmd {
            Command::Solve => Ok(RunMode::Solve { contracts: specs(self.contract.psi)? }),
            Command::Sweep => {
                let s = self.sweep.as_ref().ok_or("sweep needs a [sweep] section")?;
                let param = Param::parse(&s.parameter).ok_or("bad sweep parameter")?;
                let contracts = specs(s.psi.unwrap_or(self.contract.psi))?;
                let tax = self.tax.as_ref().map(|t| TaxPolicy { t: 0.0, theta0: t.theta0 });
                let contracts = match (param, tax) {
                    (Param::T | Param::Theta0, Some(tp)) => contracts
                        .into_iter()
                        .filter(|c| c.kind != ContractKind::Cent)
                        .map(|c| c.with_tax(tp))
                        .collect(),
                    (Param::T | Param::Theta0, None) => return Err("sweeping t or theta0 needs a [tax] section".into()),
                    _ => contracts,
                };
                Ok(RunMode::Sweep {
                    contracts,
                    param,
                    grid: grid(s.min, s.max, s.steps),
                    quantities: s.quantities.iter().filter_map(|q| quantity(q)).collect(),
                })
            }
            Command::Tax => {
                let t = self.tax.as_ref().ok_or("tax needs a [tax] section")?;
                let contracts = specs(self.contract.psi)?.into_iter().filter(|c| c.kind != ContractKind::Cent).collect();
                let g = t.grid.clone().unwrap_or_else(|| grid(t.t_min, t.t_max, t.t_steps));
                Ok(RunMode::Tax { contracts, theta0: t.theta0, grid: g, prop9_levels: t.prop9_levels })
            }
            Command::Duopoly => {
                let d = self.duopoly.as_ref().ok_or("duopoly needs a [duopoly] section")?;
                let kinds = match filter {
                    Some(_) => self.kinds(filter)?,
                    None => d.kinds.iter().filter_map(|k| ContractKind::parse(k)).collect(),
                };
                let sweep = d.sweep.as_ref().and_then(|s| {
                    DuopolyParam::parse(&s.parameter).map(|p| (p, grid(s.min, s.max, s.steps)))
                });
                Ok(RunMode::Duopoly { params: self.duopoly_params(), kinds, w: d.w, sweep })
            }
            Command::Verify => Ok(RunMode::Verify),
        }
    }
}

pub fn quantity(name: &str) -> Option<Quantity> {
    use Quantity::*;
    [
        Fee, Fare, Theta, Demand, AirlineProfit, AirportProfit, AirportUtility, Welfare, ChannelProfit,
        ConsumerSurplus, TaxRevenue, LumpSum,
    ]
    .into_iter()
    .find(|q| q.name() == name.trim())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_parses() {
        let c = RunConfig::base();
        assert_eq!(c.params, ChannelParams::base());
        assert_eq!(c.kinds(None).unwrap().len(), 5);
        assert_eq!(c.contract.psi, 0.68);
    }

    #[test]
    fn round_trip() {
        let c = RunConfig::base();
        assert_eq!(RunConfig::parse(&c.to_toml(), "rt").unwrap(), c);
    }

    #[test]
    fn syntax_error_has_line() {
        let text = BASE_CFG.replacen("beta = 0.5", "beta = = 0.5", 1);
        let e = RunConfig::parse(&text, "x.cfg").unwrap_err();
        let want = BASE_CFG.lines().position(|l| l.starts_with("beta = 0.5")).unwrap() + 1;
        assert_eq!(e.line, Some(want), "{e}");
    }

    #[test]
    fn unknown_kind_has_line() {
        let text = BASE_CFG.replacen("\"LTT\"]", "\"XYZ\"]", 1);
        let e = RunConfig::parse(&text, "x.cfg").unwrap_err();
        assert!(e.to_string().contains("XYZ"));
        assert!(e.line.is_some());
    }

    #[test]
    fn missing_section_for_command() {
        let mut c = RunConfig::base();
        c.sweep = None;
        assert!(c.for_command(Command::Sweep, None).is_err());
        assert!(matches!(c.for_command(Command::Solve, Some("rsc,ltt")), Ok(RunMode::Solve { contracts }) if contracts.len() == 2));
    }
}
