//! Domain types shared by the simulator, metrics, statistics and reporting.

mod cells;
mod config;
mod ids;
mod record;
pub mod task_csv;
mod validate;

pub use cells::{AdaptabilityCell, MetricCell};
pub use config::{
    AgentProfile, ComplexityWeights, CostModel, DomainConfig, DomainModifiers, KpiUnit,
    MetricParam,
};
pub use ids::{AgentId, DomainId, EmptyId};
pub use record::{
    canonical_tool_events, tool_score_sum, ChainOutcome, CollabScores, ComplexityLevel, ErrorType,
    Interventions, RaterPanel, RaterScores, TaskRecord, ToolEvent, ToolOutcome, RATERS_PER_PANEL,
};
pub use validate::{validate, Rule, Violation};
