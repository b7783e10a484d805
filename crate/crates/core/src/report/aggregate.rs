use serde::{Deserialize, Serialize};

use super::ReportError;
use crate::metrics::{self, MetricError, Usd};
use crate::model::{AgentId, ComplexityWeights, CostModel, DomainConfig, DomainId, MetricCell, TaskRecord};

/// Evaluation parameters shared by every cell.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvalSettings {
    pub cost_model: CostModel,
    pub weights: ComplexityWeights,
    /// Human baseline turnaround, seconds.
    pub baseline_dtt: Option<f64>,
    /// Human baseline resources per task.
    pub baseline_ces: Option<f64>,
}

fn optional<T>(r: metrics::Result<T>) -> metrics::Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(MetricError::EmptySlice(_) | MetricError::NoSuccesses | MetricError::DivideByZero) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Every metric for the records of one agent × domain cell.
pub fn aggregate_cell(
    records: &[TaskRecord],
    settings: &EvalSettings,
    domain_cfg: &DomainConfig,
) -> Result<MetricCell, ReportError> {
    let first = records.first().ok_or(ReportError::EmptyCell)?;
    let (agent, domain) = (first.agent.clone(), first.domain.clone());
    if let Some(r) = records.iter().find(|r| r.agent != agent || r.domain != domain) {
        return Err(ReportError::MixedCell(format!(
            "task {} belongs to {} x {}, not {agent} x {domain}",
            r.task_id, r.agent, r.domain
        )));
    }
    let ctx = |source: MetricError| ReportError::Metric {
        agent: agent.to_string(),
        domain: domain.to_string(),
        source,
    };
    let cm = &settings.cost_model;

    let dtt = metrics::dtt_summary(records, settings.baseline_dtt).map_err(ctx)?;
    let ces = optional(metrics::ces(records, cm)).map_err(ctx)?;
    let tdi_raw = optional(metrics::tdi_records(records)).map_err(ctx)?;
    let kpi_value: f64 = records.iter().map(|r| r.kpi_contribution).sum();
    let monetary = metrics::kpi_to_monetary(domain_cfg, kpi_value).map_err(ctx)?;
    let cost = metrics::operational_cost(records, cm);

    Ok(MetricCell {
        agent: agent.clone(),
        domain: domain.clone(),
        n_tasks: records.len() as u32,
        n_successes: records.iter().filter(|r| r.success).count() as u32,
        gcr: metrics::gcr(records).map_err(ctx)?,
        aix: metrics::aix_mean(records).map_err(ctx)?,
        aix_weighted: metrics::aix_weighted(records, &settings.weights).map_err(ctx)?,
        dtt_mean: dtt.mean,
        dtt_median: dtt.median,
        dtt_p95: dtt.p95,
        dtt_efficiency: dtt.efficiency,
        ces,
        ces_efficiency: match (settings.baseline_ces, ces) {
            (Some(b), Some(c)) => metrics::efficiency_ratio(b, c),
            _ => None,
        },
        mtr: optional(metrics::mtr(records)).map_err(ctx)?,
        tdi_raw,
        tdi_norm: tdi_raw.map(metrics::tdi_normalize).transpose().map_err(ctx)?,
        oas: optional(metrics::oas_records(records)).map_err(ctx)?,
        oas_weighted: optional(metrics::oas_weighted_records(records)).map_err(ctx)?,
        crs: optional(metrics::crs(records, metrics::DEFAULT_MIN_CHAIN)).map_err(ctx)?,
        cqi: optional(metrics::cqi_records(records)).map_err(ctx)?,
        kpi_value,
        kpi_monetary: monetary.to_dollars(),
        op_cost: cost.to_dollars(),
        bie: optional(metrics::bie(monetary, cost)).map_err(ctx)?,
        roi: optional(metrics::roi(monetary, cost)).map_err(ctx)?,
    })
}

/// Splits records into cells, keeping first-appearance order of agents
/// and, within each agent, of domains.
pub fn group_cells(records: &[TaskRecord]) -> Vec<((AgentId, DomainId), Vec<TaskRecord>)> {
    let mut agents: Vec<AgentId> = Vec::new();
    let mut domains: Vec<DomainId> = Vec::new();
    for r in records {
        if !agents.contains(&r.agent) {
            agents.push(r.agent.clone());
        }
        if !domains.contains(&r.domain) {
            domains.push(r.domain.clone());
        }
    }
    let mut out = Vec::new();
    for a in &agents {
        for d in &domains {
            let cell: Vec<TaskRecord> = records
                .iter()
                .filter(|r| &r.agent == a && &r.domain == d)
                .cloned()
                .collect();
            if !cell.is_empty() {
                out.push(((a.clone(), d.clone()), cell));
            }
        }
    }
    out
}

/// Aggregates every cell present in `records`. `domain_cfg` supplies the
/// KPI conversion for each domain.
pub fn aggregate_grid<F>(
    records: &[TaskRecord],
    settings: &EvalSettings,
    domain_cfg: F,
) -> Result<Vec<MetricCell>, ReportError>
where
    F: Fn(&DomainId) -> DomainConfig,
{
    group_cells(records)
        .into_iter()
        .map(|((_, d), cell)| aggregate_cell(&cell, settings, &domain_cfg(&d)))
        .collect()
}

/// One agent's metrics across all domains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverallRow {
    pub agent: AgentId,
    pub n_tasks: u32,
    pub n_successes: u32,
    pub gcr: f64,
    pub aix: f64,
    pub aix_weighted: f64,
    pub dtt_mean: f64,
    pub dtt_median: f64,
    pub dtt_p95: f64,
    pub dtt_efficiency: Option<f64>,
    pub ces: Option<f64>,
    pub ces_efficiency: Option<f64>,
    pub mtr: Option<f64>,
    pub tdi_raw: Option<f64>,
    pub tdi_norm: Option<f64>,
    pub oas: Option<f64>,
    pub oas_weighted: Option<f64>,
    pub crs: Option<f64>,
    pub cqi: Option<f64>,
    pub bie: Option<f64>,
    pub roi: Option<f64>,
    /// Dollars summed over domains.
    pub total_monetary: f64,
    /// Dollars summed over domains.
    pub total_op_cost: f64,
}

fn weighted(pairs: &[(f64, f64)]) -> f64 {
    let w: f64 = pairs.iter().map(|p| p.0).sum();
    pairs.iter().map(|(wi, v)| wi * v).sum::<f64>() / w
}

fn weighted_opt(pairs: &[(f64, Option<f64>)]) -> Option<f64> {
    let present: Vec<(f64, f64)> = pairs
        .iter()
        .filter_map(|(w, v)| v.map(|v| (*w, v)))
        .filter(|(w, _)| *w > 0.0)
        .collect();
    (!present.is_empty()).then(|| weighted(&present))
}

/// Task-count-weighted rollup of one agent's cells. `counts` lists the
/// expected domains with their weights; CES is weighted by each cell's
/// successful tasks instead.
pub fn aggregate_overall(cells: &[MetricCell], counts: &[(DomainId, u32)]) -> Result<OverallRow, ReportError> {
    let agent = cells.first().map(|c| c.agent.clone()).ok_or(ReportError::EmptyCell)?;
    let mut chosen = Vec::with_capacity(counts.len());
    let mut missing = Vec::new();
    for (d, n) in counts {
        match cells.iter().find(|c| c.agent == agent && &c.domain == d) {
            Some(c) => chosen.push((f64::from(*n), c)),
            None => missing.push(d.to_string()),
        }
    }
    if !missing.is_empty() || chosen.is_empty() {
        return Err(ReportError::IncompleteGrid(format!(
            "{agent} has no cell for: {}",
            missing.join(", ")
        )));
    }

    let w = |f: fn(&MetricCell) -> f64| weighted(&chosen.iter().map(|(n, c)| (*n, f(c))).collect::<Vec<_>>());
    let wo = |f: fn(&MetricCell) -> Option<f64>| {
        weighted_opt(&chosen.iter().map(|(n, c)| (*n, f(c))).collect::<Vec<_>>())
    };
    let ces = weighted_opt(
        &chosen
            .iter()
            .map(|(_, c)| (f64::from(c.n_successes), c.ces))
            .collect::<Vec<_>>(),
    );
    let usd = |f: fn(&MetricCell) -> f64| chosen.iter().map(|(_, c)| Usd::from_dollars(f(c))).sum::<Usd>().to_dollars();

    Ok(OverallRow {
        agent,
        n_tasks: chosen.iter().map(|(_, c)| c.n_tasks).sum(),
        n_successes: chosen.iter().map(|(_, c)| c.n_successes).sum(),
        gcr: w(|c| c.gcr),
        aix: w(|c| c.aix),
        aix_weighted: w(|c| c.aix_weighted),
        dtt_mean: w(|c| c.dtt_mean),
        dtt_median: w(|c| c.dtt_median),
        dtt_p95: w(|c| c.dtt_p95),
        dtt_efficiency: wo(|c| c.dtt_efficiency),
        ces,
        ces_efficiency: wo(|c| c.ces_efficiency),
        mtr: wo(|c| c.mtr),
        tdi_raw: wo(|c| c.tdi_raw),
        tdi_norm: wo(|c| c.tdi_norm),
        oas: wo(|c| c.oas),
        oas_weighted: wo(|c| c.oas_weighted),
        crs: wo(|c| c.crs),
        cqi: wo(|c| c.cqi),
        bie: wo(|c| c.bie),
        roi: wo(|c| c.roi),
        total_monetary: usd(|c| c.kpi_monetary),
        total_op_cost: usd(|c| c.op_cost),
    })
}

/// Overall rows for every agent in `cells`, in first-appearance order.
pub fn aggregate_all(cells: &[MetricCell], counts: &[(DomainId, u32)]) -> Result<Vec<OverallRow>, ReportError> {
    let mut agents: Vec<AgentId> = Vec::new();
    for c in cells {
        if !agents.contains(&c.agent) {
            agents.push(c.agent.clone());
        }
    }
    agents
        .iter()
        .map(|a| {
            let mine: Vec<MetricCell> = cells.iter().filter(|c| &c.agent == a).cloned().collect();
            aggregate_overall(&mine, counts)
        })
        .collect()
}

/// Domain weights taken from the cells themselves: each domain's task
/// count in the first agent that has it.
pub fn observed_counts(cells: &[MetricCell]) -> Vec<(DomainId, u32)> {
    let mut out: Vec<(DomainId, u32)> = Vec::new();
    for c in cells {
        if !out.iter().any(|(d, _)| d == &c.domain) {
            out.push((c.domain.clone(), c.n_tasks));
        }
    }
    out
}
