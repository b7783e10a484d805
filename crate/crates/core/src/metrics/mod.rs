//! The eleven outcome metrics, the operational cost model and the
//! economic measures derived from it.
//!
//! Everything here is a pure function of its inputs. Percent-valued
//! metrics (GCR, MTR, CRS, ROI) are returned in `[0, 100]` units; every
//! other ratio is returned in its native unit.

mod money;

use crate::model::{
    CollabScores, ComplexityWeights, CostModel, DomainConfig, RaterPanel, TaskRecord, ToolEvent,
};

pub use money::Usd;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    #[error("empty input: {0}")]
    EmptySlice(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no successful tasks; efficiency score undefined")]
    NoSuccesses,
    #[error("zero-shot completion rate is 0; adaptation rate undefined")]
    DegenerateBaseline,
    #[error("operational cost is zero")]
    DivideByZero,
}

pub type Result<T> = std::result::Result<T, MetricError>;

fn invalid(msg: impl Into<String>) -> MetricError {
    MetricError::InvalidInput(msg.into())
}

/// Goal completion rate, percent.
pub fn gcr(records: &[TaskRecord]) -> Result<f64> {
    if records.is_empty() {
        return Err(MetricError::EmptySlice("gcr"));
    }
    let ok = records.iter().filter(|r| r.success).count();
    Ok(100.0 * ok as f64 / records.len() as f64)
}

/// Autonomy of a single task: share of steps without a human intervention.
pub fn aix(total_steps: u32, interventions: u64) -> Result<f64> {
    if total_steps == 0 {
        return Err(invalid("total_steps must be >= 1"));
    }
    if interventions > u64::from(total_steps) {
        return Err(invalid(format!(
            "{interventions} interventions exceed {total_steps} steps"
        )));
    }
    Ok(1.0 - interventions as f64 / f64::from(total_steps))
}

pub fn task_aix(r: &TaskRecord) -> Result<f64> {
    aix(r.total_steps, r.interventions.total())
}

/// Mean per-task autonomy over a slice.
pub fn aix_mean(records: &[TaskRecord]) -> Result<f64> {
    aix_weighted(records, &ComplexityWeights::UNIFORM)
}

/// Complexity-weighted mean of per-task autonomy.
pub fn aix_weighted(records: &[TaskRecord], w: &ComplexityWeights) -> Result<f64> {
    if records.is_empty() {
        return Err(MetricError::EmptySlice("aix_weighted"));
    }
    if !w.is_valid() {
        return Err(invalid("complexity weights must be > 0"));
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for r in records {
        let wt = w.weight_for(r.total_steps);
        num += wt * task_aix(r)?;
        den += wt;
    }
    Ok(num / den)
}

/// Decision turnaround of one task: elapsed time minus human wait, seconds.
pub fn dtt(r: &TaskRecord) -> Result<f64> {
    let v = (r.t_end - r.t_start) - r.human_wait;
    if !v.is_finite() || v < 0.0 {
        return Err(invalid(format!(
            "task {}: negative turnaround ({v}) from inconsistent timing",
            r.task_id
        )));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DttSummary {
    pub mean: f64,
    pub median: f64,
    /// Nearest-rank 95th percentile.
    pub p95: f64,
    /// `baseline / median`, present only with a baseline.
    pub efficiency: Option<f64>,
}

/// Nearest-rank percentile of sorted data: the `ceil(q * n)`-th value.
pub fn nearest_rank(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let rank = ((q * n as f64).ceil() as usize).clamp(1, n);
    sorted[rank - 1]
}

pub fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

pub fn dtt_summary(records: &[TaskRecord], baseline_dtt: Option<f64>) -> Result<DttSummary> {
    if records.is_empty() {
        return Err(MetricError::EmptySlice("dtt_summary"));
    }
    let mut v = records.iter().map(dtt).collect::<Result<Vec<_>>>()?;
    v.sort_by(f64::total_cmp);
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    let median = median(&v);
    let efficiency = match baseline_dtt {
        Some(b) if b > 0.0 && median > 0.0 => Some(b / median),
        Some(b) if b > 0.0 => None,
        Some(b) => return Err(invalid(format!("baseline DTT must be > 0, got {b}"))),
        None => None,
    };
    Ok(DttSummary {
        mean,
        median,
        p95: nearest_rank(&v, 0.95),
        efficiency,
    })
}

/// Resource units of one task: tokens plus token-equivalent tool calls.
pub fn task_resources(r: &TaskRecord, cm: &CostModel) -> f64 {
    r.tokens as f64 + r.api_calls as f64 * cm.token_equivalent
}

/// Cognitive efficiency: resources of successful tasks per success.
/// Lower is better. Failed tasks contribute neither resources nor count.
pub fn ces(records: &[TaskRecord], cm: &CostModel) -> Result<f64> {
    let (sum, n) = records
        .iter()
        .filter(|r| r.success)
        .fold((0.0, 0usize), |(s, n), r| (s + task_resources(r, cm), n + 1));
    if n == 0 {
        return Err(MetricError::NoSuccesses);
    }
    Ok(sum / n as f64)
}

/// `baseline / agent`; higher means more efficient than the baseline.
pub fn efficiency_ratio(baseline: f64, agent: f64) -> Option<f64> {
    (baseline > 0.0 && agent > 0.0).then(|| baseline / agent)
}

/// Tool dexterity over a list of opportunities, raw `[-1, 1]`.
pub fn tdi(events: &[ToolEvent]) -> Result<f64> {
    if events.is_empty() {
        return Err(MetricError::EmptySlice("tdi"));
    }
    Ok(crate::model::tool_score_sum(events) / events.len() as f64)
}

/// Tool dexterity pooled over every opportunity in a slice.
pub fn tdi_records(records: &[TaskRecord]) -> Result<f64> {
    let opps: usize = records.iter().map(|r| r.tool_opportunities()).sum();
    if opps == 0 {
        return Err(MetricError::EmptySlice("tdi"));
    }
    let sum: f64 = records.iter().map(|r| r.tool_score_sum()).sum();
    Ok(sum / opps as f64)
}

pub fn tdi_normalize(raw: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&raw) {
        return Err(invalid(format!("tdi {raw} outside [-1, 1]")));
    }
    Ok((raw + 1.0) / 2.0)
}

/// Mean evaluator score on the 1–10 scale.
pub fn oas(scores: &[f64]) -> Result<f64> {
    if scores.is_empty() {
        return Err(MetricError::EmptySlice("oas"));
    }
    if let Some(bad) = scores.iter().find(|s| !(1.0..=10.0).contains(*s)) {
        return Err(invalid(format!("evaluator score {bad} outside [1, 10]")));
    }
    Ok(scores.iter().sum::<f64>() / scores.len() as f64)
}

/// 40/30/20/10 dimension-weighted score averaged over the raters.
pub fn oas_weighted(panel: &RaterPanel) -> Result<f64> {
    if !panel.is_valid() {
        return Err(invalid("rater scores must be in 1..=10"));
    }
    let n = panel.raters.len() as f64;
    Ok(panel.raters.iter().map(|r| r.weighted()).sum::<f64>() / n)
}

/// Evaluations of a slice: one per rater per scored output, each the
/// rater's unweighted dimension mean.
pub fn oas_records(records: &[TaskRecord]) -> Result<f64> {
    let scores: Vec<f64> = records
        .iter()
        .filter_map(|r| r.rater_scores.as_ref())
        .flat_map(|p| p.raters.iter().map(|r| r.mean()))
        .collect();
    oas(&scores)
}

pub fn oas_weighted_records(records: &[TaskRecord]) -> Result<f64> {
    let v = records
        .iter()
        .filter_map(|r| r.rater_scores.as_ref())
        .map(oas_weighted)
        .collect::<Result<Vec<_>>>()?;
    if v.is_empty() {
        return Err(MetricError::EmptySlice("oas_weighted"));
    }
    Ok(v.iter().sum::<f64>() / v.len() as f64)
}

/// Mean of every dimension score across every session, 1–5.
pub fn cqi(sessions: &[CollabScores]) -> Result<f64> {
    if sessions.is_empty() {
        return Err(MetricError::EmptySlice("cqi"));
    }
    if sessions.iter().any(|s| !s.is_valid()) {
        return Err(invalid("collaboration scores must be in 1..=5"));
    }
    let total: u32 = sessions
        .iter()
        .flat_map(|s| s.dimensions())
        .map(u32::from)
        .sum();
    Ok(f64::from(total) / (sessions.len() * 5) as f64)
}

pub fn cqi_records(records: &[TaskRecord]) -> Result<f64> {
    let s: Vec<CollabScores> = records.iter().filter_map(|r| r.collab_scores).collect();
    cqi(&s)
}

/// A task counts as resilient when it hit an initial error, recovered
/// without human correction and still succeeded.
pub fn is_resilient(r: &TaskRecord) -> bool {
    r.chain.had_initial_error && r.chain.self_recovered && r.success
}

/// Multi-step task resilience, percent of all multi-step tasks.
pub fn mtr(records: &[TaskRecord]) -> Result<f64> {
    let multi: Vec<&TaskRecord> = records.iter().filter(|r| r.chain.is_multistep).collect();
    if multi.is_empty() {
        return Err(MetricError::EmptySlice("mtr: no multi-step tasks"));
    }
    let ok = multi.iter().filter(|r| is_resilient(r)).count();
    Ok(100.0 * ok as f64 / multi.len() as f64)
}

pub const DEFAULT_MIN_CHAIN: u32 = 3;

/// Chain robustness, percent of chains with at least `min_steps` steps.
pub fn crs(records: &[TaskRecord], min_steps: u32) -> Result<f64> {
    let (ok, n) = records
        .iter()
        .filter(|r| r.chain.chain_len >= min_steps)
        .fold((0usize, 0usize), |(ok, n), r| {
            (ok + usize::from(r.chain.chain_success), n + 1)
        });
    if n == 0 {
        return Err(MetricError::EmptySlice("crs: no qualifying chains"));
    }
    Ok(100.0 * ok as f64 / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adaptability {
    /// Few-shot minus zero-shot, proportion.
    pub ad: f64,
    /// Delta relative to zero-shot, percent.
    pub ar: f64,
}

fn check_proportion(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(invalid(format!("{name} {v} outside [0, 1]")))
    }
}

pub fn adaptability_delta(zero_shot: f64, few_shot: f64) -> Result<f64> {
    check_proportion("zero-shot rate", zero_shot)?;
    check_proportion("few-shot rate", few_shot)?;
    Ok(few_shot - zero_shot)
}

pub fn adaptability(zero_shot: f64, few_shot: f64) -> Result<Adaptability> {
    let ad = adaptability_delta(zero_shot, few_shot)?;
    if zero_shot == 0.0 {
        return Err(MetricError::DegenerateBaseline);
    }
    Ok(Adaptability {
        ad,
        ar: 100.0 * ad / zero_shot,
    })
}

/// Token + API-call + human-oversight cost of every task, failed ones
/// included.
pub fn operational_cost(records: &[TaskRecord], cm: &CostModel) -> Usd {
    let tokens: u64 = records.iter().map(|r| r.tokens).sum();
    let calls: u64 = records.iter().map(|r| r.api_calls).sum();
    let iv: u64 = records.iter().map(|r| r.interventions.total()).sum();
    Usd::times(cm.token_price, tokens)
        + Usd::times(cm.api_call_price, calls)
        + Usd::times(cm.intervention_price, iv)
}

/// KPI value in the domain's native unit converted to dollars, computed in
/// exact decimal (KPI to 1e-6 units, conversion to 1e-6 dollars).
pub fn kpi_to_monetary(domain: &DomainConfig, kpi_value: f64) -> Result<Usd> {
    if !(kpi_value >= 0.0) || !kpi_value.is_finite() {
        return Err(invalid(format!("kpi value {kpi_value} must be >= 0")));
    }
    if !(domain.kpi_conversion >= 0.0) {
        return Err(invalid("kpi_conversion must be >= 0"));
    }
    let kpi_micro = (kpi_value * 1e6).round() as i128;
    let conv_micro = (domain.kpi_conversion * 1e6).round() as i128;
    // micro * micro = 1e-12 dollars; scale to nano-dollars, half-up
    let pico = kpi_micro * conv_micro;
    Ok(Usd::from_nanos((pico + 500) / 1000))
}

/// Business value per dollar of operational cost.
pub fn bie(kpi_monetary: Usd, op_cost: Usd) -> Result<f64> {
    if !op_cost.is_positive() {
        return Err(MetricError::DivideByZero);
    }
    Ok(kpi_monetary.nanos() as f64 / op_cost.nanos() as f64)
}

/// Return on investment, percent.
pub fn roi(kpi_monetary: Usd, op_cost: Usd) -> Result<f64> {
    Ok(100.0 * (bie(kpi_monetary, op_cost)? - 1.0))
}
