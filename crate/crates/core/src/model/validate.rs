use std::fmt;

use super::record::{ComplexityLevel, TaskRecord};

/// Which record invariant a [`Violation`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Timestamps,
    HumanWait,
    InterventionBound,
    StepCount,
    Counts,
    RaterRange,
    CollabRange,
    RecoveryRequiresError,
    ChainLevel,
    ErrorTypeConsistency,
    Kpi,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Timestamps => "timestamps",
            Rule::HumanWait => "human_wait bound",
            Rule::InterventionBound => "intervention bound",
            Rule::StepCount => "step count",
            Rule::Counts => "non-negative counts",
            Rule::RaterRange => "rater score range",
            Rule::CollabRange => "collaboration score range",
            Rule::RecoveryRequiresError => "self_recovered requires had_initial_error",
            Rule::ChainLevel => "chain complexity level",
            Rule::ErrorTypeConsistency => "error_type consistency",
            Rule::Kpi => "kpi_contribution",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub field: &'static str,
    pub rule: Rule,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}): {}", self.field, self.rule.as_str(), self.detail)
    }
}

fn push(out: &mut Vec<Violation>, field: &'static str, rule: Rule, detail: String) {
    out.push(Violation { field, rule, detail });
}

/// Checks every record invariant. Never panics; returns one entry per
/// violated rule and an empty list for a consistent record.
pub fn validate(r: &TaskRecord) -> Vec<Violation> {
    let mut out = Vec::new();

    let finite = r.t_start.is_finite() && r.t_end.is_finite() && r.human_wait.is_finite();
    if !finite || r.t_end < r.t_start {
        push(
            &mut out,
            "t_end",
            Rule::Timestamps,
            format!("t_end {} precedes t_start {}", r.t_end, r.t_start),
        );
    } else if r.human_wait < 0.0 || r.human_wait > r.t_end - r.t_start {
        push(
            &mut out,
            "human_wait",
            Rule::HumanWait,
            format!(
                "human_wait {} outside [0, {}]",
                r.human_wait,
                r.t_end - r.t_start
            ),
        );
    }

    if r.total_steps < 1 {
        push(&mut out, "total_steps", Rule::StepCount, "must be >= 1".into());
    }
    let iv = r.interventions.total();
    if iv > u64::from(r.total_steps) {
        push(
            &mut out,
            "interventions",
            Rule::InterventionBound,
            format!("{iv} interventions exceed {} steps", r.total_steps),
        );
    }

    if let Some(panel) = &r.rater_scores {
        if !panel.is_valid() {
            push(&mut out, "rater_scores", Rule::RaterRange, "scores must be in 1..=10".into());
        }
    }
    if let Some(c) = &r.collab_scores {
        if !c.is_valid() {
            push(&mut out, "collab_scores", Rule::CollabRange, "scores must be in 1..=5".into());
        }
    }

    let ch = &r.chain;
    if ch.self_recovered && !ch.had_initial_error {
        push(
            &mut out,
            "chain.self_recovered",
            Rule::RecoveryRequiresError,
            "recovery recorded without an initial error".into(),
        );
    }
    if ch.error_type.is_some() != ch.had_initial_error {
        push(
            &mut out,
            "chain.error_type",
            Rule::ErrorTypeConsistency,
            "error_type must be present exactly when had_initial_error".into(),
        );
    }
    if ch.complexity_level != ComplexityLevel::for_chain_len(ch.chain_len) {
        push(
            &mut out,
            "chain.complexity_level",
            Rule::ChainLevel,
            format!(
                "{} does not match chain_len {}",
                ch.complexity_level.as_str(),
                ch.chain_len
            ),
        );
    }

    if !r.kpi_contribution.is_finite() {
        push(&mut out, "kpi_contribution", Rule::Kpi, "must be finite".into());
    }

    out
}
