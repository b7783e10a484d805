use serde::{Deserialize, Serialize};

use super::ids::{AgentId, DomainId};

/// Rubric outcome of a single tool-use opportunity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ToolOutcome {
    OptimalUse,
    Misuse,
    IgnoredBetterTool,
    NoToolNeeded,
}

impl ToolOutcome {
    pub fn score(self) -> f64 {
        match self {
            ToolOutcome::OptimalUse => 1.0,
            ToolOutcome::Misuse => -1.0,
            ToolOutcome::IgnoredBetterTool => -0.5,
            ToolOutcome::NoToolNeeded => 0.0,
        }
    }
}

/// One scored tool-use opportunity. The score is a pure function of the
/// outcome, so only the outcome is stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ToolEvent {
    pub outcome: ToolOutcome,
}

impl ToolEvent {
    pub const fn new(outcome: ToolOutcome) -> Self {
        Self { outcome }
    }

    pub fn score(&self) -> f64 {
        self.outcome.score()
    }
}

/// Sum of rubric scores over a list of events.
pub fn tool_score_sum(events: &[ToolEvent]) -> f64 {
    // Scores are multiples of 0.5, so summing in half-units is exact.
    let halves: i64 = events
        .iter()
        .map(|e| match e.outcome {
            ToolOutcome::OptimalUse => 2,
            ToolOutcome::Misuse => -2,
            ToolOutcome::IgnoredBetterTool => -1,
            ToolOutcome::NoToolNeeded => 0,
        })
        .sum();
    halves as f64 / 2.0
}

/// Canonical event list with `opportunities` events summing to `score_sum`.
///
/// The canonical form holds at most one `IgnoredBetterTool`, and never both
/// `OptimalUse` and `Misuse`; events are ordered optimal, misuse, ignored,
/// none. Any achievable `(opportunities, score_sum)` pair has exactly one
/// canonical list. Returns `None` when the pair is not achievable.
pub fn canonical_tool_events(opportunities: usize, score_sum: f64) -> Option<Vec<ToolEvent>> {
    let halves = score_sum * 2.0;
    if !halves.is_finite() || halves.fract() != 0.0 {
        return None;
    }
    let halves = halves as i64;
    let ignored = usize::from(halves.rem_euclid(2) == 1);
    // optimal - misuse, in whole points, after accounting for the -0.5
    let net = (halves + ignored as i64) / 2;
    let (optimal, misuse) = if net >= 0 {
        (net as usize, 0)
    } else {
        (0, net.unsigned_abs() as usize)
    };
    let used = optimal + misuse + ignored;
    if used > opportunities {
        return None;
    }
    let none = opportunities - used;
    let mut out = Vec::with_capacity(opportunities);
    out.extend(std::iter::repeat_n(ToolEvent::new(ToolOutcome::OptimalUse), optimal));
    out.extend(std::iter::repeat_n(ToolEvent::new(ToolOutcome::Misuse), misuse));
    out.extend(std::iter::repeat_n(
        ToolEvent::new(ToolOutcome::IgnoredBetterTool),
        ignored,
    ));
    out.extend(std::iter::repeat_n(ToolEvent::new(ToolOutcome::NoToolNeeded), none));
    Some(out)
}

/// Human interventions by category.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interventions {
    pub clarification: u32,
    pub error_correction: u32,
    pub approval_gate: u32,
}

impl Interventions {
    pub const fn new(clarification: u32, error_correction: u32, approval_gate: u32) -> Self {
        Self {
            clarification,
            error_correction,
            approval_gate,
        }
    }

    pub fn total(&self) -> u64 {
        u64::from(self.clarification) + u64::from(self.error_correction) + u64::from(self.approval_gate)
    }
}

/// One rater's 1–10 scores on the four quality dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RaterScores {
    pub correctness: u8,
    pub completeness: u8,
    pub relevance: u8,
    pub presentation: u8,
}

impl RaterScores {
    pub const fn new(correctness: u8, completeness: u8, relevance: u8, presentation: u8) -> Self {
        Self {
            correctness,
            completeness,
            relevance,
            presentation,
        }
    }

    pub const fn uniform(v: u8) -> Self {
        Self::new(v, v, v, v)
    }

    pub fn dimensions(&self) -> [u8; 4] {
        [
            self.correctness,
            self.completeness,
            self.relevance,
            self.presentation,
        ]
    }

    /// Unweighted mean of the four dimensions.
    pub fn mean(&self) -> f64 {
        self.dimensions().iter().map(|&v| f64::from(v)).sum::<f64>() / 4.0
    }

    /// 40/30/20/10 weighted quality score.
    pub fn weighted(&self) -> f64 {
        0.4 * f64::from(self.correctness)
            + 0.3 * f64::from(self.completeness)
            + 0.2 * f64::from(self.relevance)
            + 0.1 * f64::from(self.presentation)
    }
}

pub const RATERS_PER_PANEL: usize = 3;

/// Three independent raters scoring one output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RaterPanel {
    pub raters: [RaterScores; RATERS_PER_PANEL],
}

impl RaterPanel {
    pub const fn new(raters: [RaterScores; RATERS_PER_PANEL]) -> Self {
        Self { raters }
    }

    pub fn is_valid(&self) -> bool {
        self.raters
            .iter()
            .flat_map(|r| r.dimensions())
            .all(|v| (1..=10).contains(&v))
    }
}

/// 1–5 Likert ratings of one collaborative session.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CollabScores {
    pub communication_clarity: u8,
    pub responsiveness: u8,
    pub contextual_awareness: u8,
    pub helpful_suggestions: u8,
    pub overall_satisfaction: u8,
}

impl CollabScores {
    pub const fn new(comm: u8, resp: u8, ctx: u8, sugg: u8, sat: u8) -> Self {
        Self {
            communication_clarity: comm,
            responsiveness: resp,
            contextual_awareness: ctx,
            helpful_suggestions: sugg,
            overall_satisfaction: sat,
        }
    }

    pub const fn uniform(v: u8) -> Self {
        Self::new(v, v, v, v, v)
    }

    pub fn dimensions(&self) -> [u8; 5] {
        [
            self.communication_clarity,
            self.responsiveness,
            self.contextual_awareness,
            self.helpful_suggestions,
            self.overall_satisfaction,
        ]
    }

    pub fn is_valid(&self) -> bool {
        self.dimensions().iter().all(|v| (1..=5).contains(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ErrorType {
    AmbiguousInput,
    IntermediateStepFailure,
    ToolApiError,
    ContextLoss,
}

impl ErrorType {
    pub const ALL: [ErrorType; 4] = [
        ErrorType::AmbiguousInput,
        ErrorType::IntermediateStepFailure,
        ErrorType::ToolApiError,
        ErrorType::ContextLoss,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorType::AmbiguousInput => "ambiguous_input",
            ErrorType::IntermediateStepFailure => "intermediate_step_failure",
            ErrorType::ToolApiError => "tool_api_error",
            ErrorType::ContextLoss => "context_loss",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.as_str() == s)
    }
}

/// Chain complexity level. Chains shorter than three steps are not scored
/// for robustness and carry `L1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComplexityLevel {
    L1,
    L2,
    L3,
}

impl ComplexityLevel {
    pub fn for_chain_len(len: u32) -> Self {
        match len {
            0..=5 => ComplexityLevel::L1,
            6..=10 => ComplexityLevel::L2,
            _ => ComplexityLevel::L3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ComplexityLevel::L1 => "L1",
            ComplexityLevel::L2 => "L2",
            ComplexityLevel::L3 => "L3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "L1" => Some(ComplexityLevel::L1),
            "L2" => Some(ComplexityLevel::L2),
            "L3" => Some(ComplexityLevel::L3),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainOutcome {
    pub is_multistep: bool,
    pub had_initial_error: bool,
    pub error_type: Option<ErrorType>,
    pub self_recovered: bool,
    pub chain_len: u32,
    pub complexity_level: ComplexityLevel,
    pub chain_success: bool,
}

impl ChainOutcome {
    /// A clean chain of `len` steps: no error, level derived from length.
    pub fn clean(len: u32, chain_success: bool) -> Self {
        Self {
            is_multistep: len >= 2,
            had_initial_error: false,
            error_type: None,
            self_recovered: false,
            chain_len: len,
            complexity_level: ComplexityLevel::for_chain_len(len),
            chain_success,
        }
    }

    /// Initial error, recovered without human correction.
    pub fn is_resilient(&self) -> bool {
        self.had_initial_error && self.self_recovered
    }
}

/// One executed task with every raw observable the metrics need.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub task_id: String,
    pub agent: AgentId,
    pub domain: DomainId,
    pub success: bool,
    pub total_steps: u32,
    pub interventions: Interventions,
    pub t_start: f64,
    pub t_end: f64,
    pub human_wait: f64,
    pub tokens: u64,
    pub api_calls: u64,
    pub tool_events: Vec<ToolEvent>,
    pub rater_scores: Option<RaterPanel>,
    pub collab_scores: Option<CollabScores>,
    pub chain: ChainOutcome,
    pub kpi_contribution: f64,
}

impl TaskRecord {
    /// A minimal successful single-step record, handy as a builder seed.
    pub fn new(task_id: impl Into<String>, agent: AgentId, domain: DomainId) -> Self {
        Self {
            task_id: task_id.into(),
            agent,
            domain,
            success: true,
            total_steps: 1,
            interventions: Interventions::default(),
            t_start: 0.0,
            t_end: 0.0,
            human_wait: 0.0,
            tokens: 0,
            api_calls: 0,
            tool_events: Vec::new(),
            rater_scores: None,
            collab_scores: None,
            chain: ChainOutcome::clean(1, true),
            kpi_contribution: 0.0,
        }
    }

    pub fn elapsed(&self) -> f64 {
        self.t_end - self.t_start
    }

    pub fn tool_opportunities(&self) -> usize {
        self.tool_events.len()
    }

    pub fn tool_score_sum(&self) -> f64 {
        tool_score_sum(&self.tool_events)
    }
}
