//! Seeded generation of synthetic task datasets.
//!
//! Two calibration modes are supported. [`Mode::AppendixD`] derives every
//! cell target from the agent's baseline profile adjusted by the domain
//! modifiers (offsets for rates, factors for time and resources).
//! [`Mode::TableCalibrated`] reads per-cell targets from the published
//! benchmark tables in [`crate::benchmark`].
//!
//! Each cell is drawn from its own random stream (see [`substream`]), so
//! the output is a pure function of the configuration and independent of
//! which cells are generated.

mod defaults;
mod sampler;
mod stream;
mod targets;

use std::fmt;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::model::{
    AdaptabilityCell, AgentId, AgentProfile, ComplexityWeights, CostModel, DomainConfig, DomainId,
    TaskRecord,
};

pub use defaults::{agent_profile as reference_profile, domain_config as reference_domain};
pub use stream::{adaptability_substream, fnv1a, substream};
pub use targets::{cell_targets, CellTargets, KpiTarget};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_N_TEST: usize = 50;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("invalid configuration: {}", .0.join("; "))]
    InvalidConfig(Vec<String>),
    #[error("calibration failed for {agent} x {domain}: {message}")]
    Calibration {
        agent: String,
        domain: String,
        message: String,
    },
}

impl SimError {
    pub(crate) fn calibration(agent: &AgentId, domain: &DomainId, message: impl Into<String>) -> Self {
        SimError::Calibration {
            agent: agent.to_string(),
            domain: domain.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {message}")]
    Parse { path: String, message: String },
    #[error(transparent)]
    Invalid(#[from] SimError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    AppendixD,
    #[default]
    TableCalibrated,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::AppendixD => "appendix-d",
            Mode::TableCalibrated => "table-calibrated",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "appendix-d" => Ok(Mode::AppendixD),
            "table-calibrated" => Ok(Mode::TableCalibrated),
            other => Err(format!("unknown mode {other:?}; expected appendix-d or table-calibrated")),
        }
    }
}

/// Inclusive range of step counts drawn with relative `weight`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepBand {
    pub min: u32,
    pub max: u32,
    pub weight: f64,
}

/// Mixture of uniform step-count bands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepMix {
    pub bands: Vec<StepBand>,
}

impl Default for StepMix {
    fn default() -> Self {
        StepMix {
            bands: vec![
                StepBand { min: 1, max: 5, weight: 0.4 },
                StepBand { min: 6, max: 15, weight: 0.4 },
                StepBand { min: 16, max: 30, weight: 0.2 },
            ],
        }
    }
}

impl StepMix {
    fn total_weight(&self) -> f64 {
        self.bands.iter().map(|b| b.weight).sum()
    }

    pub fn mean_steps(&self) -> f64 {
        let w = self.total_weight();
        self.bands
            .iter()
            .map(|b| b.weight / w * f64::from(b.min + b.max) / 2.0)
            .sum()
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> u32 {
        let mut u = rng.random::<f64>() * self.total_weight();
        let mut band = self.bands[self.bands.len() - 1];
        for b in &self.bands {
            if u < b.weight {
                band = *b;
                break;
            }
            u -= b.weight;
        }
        rng.random_range(band.min..=band.max)
    }

    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.bands.is_empty() {
            out.push("step_mix: at least one band required".into());
        }
        for b in &self.bands {
            if b.min < 1 || b.min > b.max {
                out.push(format!("step_mix: band {}..={} is empty or starts below 1", b.min, b.max));
            }
            if !(b.weight > 0.0 && b.weight.is_finite()) {
                out.push(format!("step_mix: band {}..={} weight must be > 0", b.min, b.max));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentEntry {
    pub id: AgentId,
    #[serde(flatten)]
    pub profile: AgentProfile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainEntry {
    pub id: DomainId,
    #[serde(flatten)]
    pub config: DomainConfig,
}

/// Everything that determines a generated dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub cost_model: CostModel,
    #[serde(default)]
    pub complexity_weights: ComplexityWeights,
    #[serde(default)]
    pub step_mix: StepMix,
    pub agents: Vec<AgentEntry>,
    pub domains: Vec<DomainEntry>,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

impl Default for SimConfig {
    /// The reference setup: four agents, five domains, 3000 tasks, seed 42.
    fn default() -> Self {
        SimConfig {
            seed: DEFAULT_SEED,
            mode: Mode::default(),
            cost_model: CostModel::default(),
            complexity_weights: ComplexityWeights::default(),
            step_mix: StepMix::default(),
            agents: AgentId::BUILTIN
                .iter()
                .map(|a| AgentEntry {
                    id: a.clone(),
                    profile: defaults::agent_profile(a).expect("builtin agent"),
                })
                .collect(),
            domains: DomainId::BUILTIN
                .iter()
                .map(|d| DomainEntry {
                    id: d.clone(),
                    config: defaults::domain_config(d).expect("builtin domain"),
                })
                .collect(),
        }
    }
}

impl SimConfig {
    pub fn from_toml_str(s: &str) -> Result<Self, String> {
        toml::from_str(s).map_err(|e| e.to_string())
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config is serializable")
    }

    /// Reads and validates a TOML configuration file.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let p = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: p.clone(), source })?;
        let cfg = Self::from_toml_str(&text).map_err(|message| ConfigError::Parse { path: p, message })?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Keeps only the listed domains, in their original order.
    pub fn restrict_domains(&mut self, keep: &[DomainId]) {
        self.domains.retain(|d| keep.contains(&d.id));
    }

    pub fn total_tasks(&self) -> usize {
        self.agents.len() * self.domains.iter().map(|d| d.config.task_count as usize).sum::<usize>()
    }

    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.agents.is_empty() {
            out.push("at least one agent required".into());
        }
        if self.domains.is_empty() {
            out.push("at least one domain required".into());
        }
        for (i, a) in self.agents.iter().enumerate() {
            if self.agents[..i].iter().any(|b| b.id == a.id) {
                out.push(format!("agent {} listed twice", a.id));
            }
            out.extend(a.profile.problems().into_iter().map(|m| format!("agent {}: {m}", a.id)));
        }
        for (i, d) in self.domains.iter().enumerate() {
            if self.domains[..i].iter().any(|b| b.id == d.id) {
                out.push(format!("domain {} listed twice", d.id));
            }
            out.extend(d.config.problems().into_iter().map(|m| format!("domain {}: {m}", d.id)));
        }
        out.extend(self.cost_model.problems());
        if !self.complexity_weights.is_valid() {
            out.push("complexity weights must be > 0".into());
        }
        out.extend(self.step_mix.problems());
        out
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let p = self.problems();
        if p.is_empty() {
            Ok(())
        } else {
            Err(SimError::InvalidConfig(p))
        }
    }

    pub fn agent(&self, id: &AgentId) -> Option<&AgentEntry> {
        self.agents.iter().find(|a| &a.id == id)
    }

    /// Domain settings for `id`, or [`DomainConfig::neutral`] if absent.
    pub fn domain_config_or_neutral(&self, id: &DomainId) -> DomainConfig {
        self.domain(id).map(|d| d.config.clone()).unwrap_or_else(DomainConfig::neutral)
    }

    pub fn domain(&self, id: &DomainId) -> Option<&DomainEntry> {
        self.domains.iter().find(|d| &d.id == id)
    }

    /// Effective targets for one configured cell.
    pub fn targets(&self, agent: &AgentEntry, domain: &DomainEntry) -> Result<CellTargets, SimError> {
        cell_targets(self, &agent.id, &agent.profile, &domain.id, &domain.config)
    }
}

/// Records of one agent × domain cell.
pub fn generate_cell(
    config: &SimConfig,
    agent: &AgentEntry,
    domain: &DomainEntry,
) -> Result<Vec<TaskRecord>, SimError> {
    let targets = config.targets(agent, domain)?;
    let mut rng = substream(config.seed, &agent.id, &domain.id);
    Ok(sampler::sample_cell(
        &mut rng,
        &sampler::CellSpec {
            agent: &agent.id,
            domain: &domain.id,
            n: domain.config.task_count as usize,
            targets: &targets,
            steps: &config.step_mix,
            token_equivalent: config.cost_model.token_equivalent,
        },
    ))
}

/// The full dataset, agent-major then domain order.
pub fn generate(config: &SimConfig) -> Result<Vec<TaskRecord>, SimError> {
    config.validate()?;
    let mut out = Vec::with_capacity(config.total_tasks());
    for a in &config.agents {
        for d in &config.domains {
            out.extend(generate_cell(config, a, d)?);
        }
    }
    Ok(out)
}

/// Zero-shot and few-shot completion on `n_test` held-out tasks per cell.
pub fn generate_adaptability(config: &SimConfig, n_test: usize) -> Result<Vec<AdaptabilityCell>, SimError> {
    if n_test == 0 {
        return Err(SimError::InvalidConfig(vec!["n_test must be >= 1".into()]));
    }
    config.validate()?;
    let mut out = Vec::with_capacity(config.agents.len() * config.domains.len());
    for a in &config.agents {
        for d in &config.domains {
            let t = config.targets(a, d)?;
            let mut rng = adaptability_substream(config.seed, &a.id, &d.id);
            let zero = sampler::quota(&mut rng, n_test, t.zero_shot) as f64 / n_test as f64;
            let few = sampler::quota(&mut rng, n_test, t.few_shot) as f64 / n_test as f64;
            let m = crate::metrics::adaptability(zero, few).ok();
            out.push(AdaptabilityCell {
                agent: a.id.clone(),
                domain: d.id.clone(),
                gcr_zero_shot: zero,
                gcr_few_shot: few,
                ad: few - zero,
                ar: m.map(|m| m.ar),
            });
        }
    }
    Ok(out)
}
