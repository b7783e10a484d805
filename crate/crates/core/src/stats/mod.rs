//! ANOVA, Tukey HSD, effect sizes, correlation, interval estimates and
//! inter-rater agreement.

mod agreement;
mod anova;
mod chisq;
mod correlation;
pub mod distributions;
mod effect;
mod tukey;
mod wilson;

pub use agreement::{fleiss_kappa, fleiss_kappa_counts, krippendorff_alpha};
pub use anova::{one_way_anova, AnovaTable};
pub use chisq::{chi_square_independence, ChiSquare};
pub use correlation::{pearson, pearson_matrix, CorrelationMatrix};
pub use effect::{cohens_d, EffectSize, Magnitude};
pub use tukey::{tukey_hsd, TukeyPair, DEFAULT_ALPHA};
pub use wilson::{wilson_interval, WilsonInterval, DEFAULT_Z};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, StatsError>;

/// A labelled sample, e.g. the per-domain GCR values of one agent.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub label: String,
    pub values: Vec<f64>,
}

impl Sample {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Self {
        Sample { label: label.into(), values }
    }
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sum of squared deviations from the mean.
pub(crate) fn sum_sq_dev(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum()
}

pub(crate) fn check_groups(groups: &[Sample]) -> Result<()> {
    if groups.len() < 2 {
        return Err(StatsError::InvalidInput("need at least two groups".into()));
    }
    for g in groups {
        if g.values.len() < 2 {
            return Err(StatsError::InvalidInput(format!(
                "group {} has fewer than two observations",
                g.label
            )));
        }
        if g.values.iter().any(|v| !v.is_finite()) {
            return Err(StatsError::InvalidInput(format!(
                "group {} contains a non-finite value",
                g.label
            )));
        }
    }
    Ok(())
}
