//! Cell and overall aggregation, dataset export, text tables, chart data
//! and the statistical report.

mod aggregate;
mod analysis;
mod charts;
pub mod datasets;
mod tables;

pub use aggregate::{
    aggregate_all, aggregate_cell, aggregate_grid, aggregate_overall, group_cells, observed_counts, EvalSettings,
    OverallRow,
};
pub use analysis::{
    analyze_cells, analyze_tasks, cell_groups, metric_correlations, rater_agreement, task_groups, CellInterval,
    DomainAgreement, EffectPair, Grouping, StatReport,
};
pub use charts::{chart_data, normalize, render_svg, ChartData, ChartInputs, ChartKind, ChartRow};
pub use datasets::{business_rows, export_datasets, BusinessRow, DatasetPaths};
pub use tables::{adaptability_table, business_table, domain_table, gcr_matrix, overall_table, TextTable};

use crate::metrics::MetricError;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("cell has no records")]
    EmptyCell,
    #[error("mixed cell: {0}")]
    MixedCell(String),
    #[error("{agent} x {domain}: {source}")]
    Metric {
        agent: String,
        domain: String,
        #[source]
        source: MetricError,
    },
    #[error("incomplete grid: {0}")]
    IncompleteGrid(String),
    #[error("{file}, row {row}, column `{column}`: {message}")]
    Parse {
        file: String,
        row: usize,
        column: String,
        message: String,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{file}: {message}")]
    Schema { file: String, message: String },
}

impl ReportError {
    /// True for failures of the file system rather than of the data.
    pub fn is_io(&self) -> bool {
        matches!(self, ReportError::Io { .. })
    }
}
