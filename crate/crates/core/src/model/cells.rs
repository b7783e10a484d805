use serde::{Deserialize, Serialize};

use super::ids::{AgentId, DomainId};

/// All metrics for one agent × domain slice.
///
/// Metrics that are undefined for the slice (no tool opportunities, no
/// successes, no multi-step tasks, ...) are `None` rather than zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricCell {
    pub agent: AgentId,
    pub domain: DomainId,
    pub n_tasks: u32,
    pub n_successes: u32,
    /// Percent.
    pub gcr: f64,
    pub aix: f64,
    pub aix_weighted: f64,
    /// Seconds.
    pub dtt_mean: f64,
    pub dtt_median: f64,
    pub dtt_p95: f64,
    pub dtt_efficiency: Option<f64>,
    pub ces: Option<f64>,
    pub ces_efficiency: Option<f64>,
    /// Percent.
    pub mtr: Option<f64>,
    pub tdi_raw: Option<f64>,
    pub tdi_norm: Option<f64>,
    pub oas: Option<f64>,
    pub oas_weighted: Option<f64>,
    /// Percent.
    pub crs: Option<f64>,
    pub cqi: Option<f64>,
    /// KPI total in the domain's native unit.
    pub kpi_value: f64,
    /// Dollars, cent precision.
    pub kpi_monetary: f64,
    /// Dollars, cent precision.
    pub op_cost: f64,
    pub bie: Option<f64>,
    /// Percent.
    pub roi: Option<f64>,
}

/// Zero-shot vs few-shot completion for one cell. Rates are proportions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaptabilityCell {
    pub agent: AgentId,
    pub domain: DomainId,
    pub gcr_zero_shot: f64,
    pub gcr_few_shot: f64,
    pub ad: f64,
    /// Percent; `None` when the zero-shot rate is 0.
    pub ar: Option<f64>,
}
