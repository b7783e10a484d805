//! Generation-time parameter sets and the cost model.

use serde::{Deserialize, Serialize};

/// Location and dispersion of one metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricParam {
    pub mean: f64,
    #[serde(default)]
    pub std: f64,
}

impl MetricParam {
    pub const fn new(mean: f64, std: f64) -> Self {
        Self { mean, std }
    }
}

/// Baseline behaviour of one agent architecture, in metric-native units:
/// proportions in `[0, 1]` for gcr/aix/mtr/crs/ad, raw `[-1, 1]` for tdi,
/// seconds for dtt, resource units for ces, 1–10 for oas and 1–5 for cqi.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentProfile {
    pub gcr: MetricParam,
    pub aix: MetricParam,
    pub dtt: MetricParam,
    pub ces: MetricParam,
    pub mtr: MetricParam,
    pub tdi: MetricParam,
    pub oas: MetricParam,
    pub crs: MetricParam,
    pub cqi: MetricParam,
    pub ad: MetricParam,
}

impl AgentProfile {
    /// Violated invariants, one message each.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let all = [
            ("gcr", self.gcr),
            ("aix", self.aix),
            ("dtt", self.dtt),
            ("ces", self.ces),
            ("mtr", self.mtr),
            ("tdi", self.tdi),
            ("oas", self.oas),
            ("crs", self.crs),
            ("cqi", self.cqi),
            ("ad", self.ad),
        ];
        for (name, p) in all {
            if !(p.std >= 0.0) || !p.mean.is_finite() {
                out.push(format!("{name}: std must be >= 0 and mean finite"));
            }
        }
        for (name, p) in [("gcr", self.gcr), ("aix", self.aix), ("mtr", self.mtr), ("crs", self.crs)] {
            if !(0.0..=1.0).contains(&p.mean) {
                out.push(format!("{name}: mean {} outside [0, 1]", p.mean));
            }
        }
        if !(-1.0..=1.0).contains(&self.ad.mean) {
            out.push(format!("ad: mean {} outside [-1, 1]", self.ad.mean));
        }
        if !(-1.0..=1.0).contains(&self.tdi.mean) {
            out.push(format!("tdi: mean {} outside [-1, 1]", self.tdi.mean));
        }
        if !(1.0..=10.0).contains(&self.oas.mean) {
            out.push(format!("oas: mean {} outside [1, 10]", self.oas.mean));
        }
        if !(1.0..=5.0).contains(&self.cqi.mean) {
            out.push(format!("cqi: mean {} outside [1, 5]", self.cqi.mean));
        }
        for (name, p) in [("dtt", self.dtt), ("ces", self.ces)] {
            if !(p.mean > 0.0) {
                out.push(format!("{name}: mean must be > 0"));
            }
        }
        out
    }
}

/// Per-domain difficulty adjustments. Offsets are additive, factors
/// multiplicative; unpublished ones default to neutral.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DomainModifiers {
    pub gcr: f64,
    pub aix: f64,
    pub dtt: f64,
    pub ces: f64,
    pub mtr: f64,
    pub tdi: f64,
    pub oas: f64,
    pub crs: f64,
    pub cqi: f64,
    pub ad: f64,
}

impl Default for DomainModifiers {
    fn default() -> Self {
        Self {
            gcr: 0.0,
            aix: 0.0,
            dtt: 1.0,
            ces: 1.0,
            mtr: 0.0,
            tdi: 0.0,
            oas: 0.0,
            crs: 0.0,
            cqi: 0.0,
            ad: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KpiUnit {
    Dollars,
    PercentagePoints,
    Hours,
}

impl KpiUnit {
    pub fn as_str(self) -> &'static str {
        match self {
            KpiUnit::Dollars => "dollars",
            KpiUnit::PercentagePoints => "percentage_points",
            KpiUnit::Hours => "hours",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "dollars" => Some(KpiUnit::Dollars),
            "percentage_points" => Some(KpiUnit::PercentagePoints),
            "hours" => Some(KpiUnit::Hours),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainConfig {
    pub task_count: u32,
    #[serde(default)]
    pub modifiers: DomainModifiers,
    pub kpi_unit: KpiUnit,
    /// Dollars per KPI unit.
    pub kpi_conversion: f64,
    /// Mean KPI units credited to one successful task when no cell total
    /// is being calibrated against.
    #[serde(default)]
    pub kpi_per_success: f64,
}

impl DomainConfig {
    /// Settings for a domain the configuration does not know: no
    /// modifiers, KPI already in dollars.
    pub fn neutral() -> Self {
        DomainConfig {
            task_count: 1,
            modifiers: DomainModifiers::default(),
            kpi_unit: KpiUnit::Dollars,
            kpi_conversion: 1.0,
            kpi_per_success: 0.0,
        }
    }

    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.task_count == 0 {
            out.push("task_count must be > 0".to_string());
        }
        if !(self.modifiers.dtt > 0.0) || !(self.modifiers.ces > 0.0) {
            out.push("multiplicative factors (dtt, ces) must be > 0".to_string());
        }
        if !(self.kpi_conversion >= 0.0) {
            out.push("kpi_conversion must be >= 0".to_string());
        }
        if !(self.kpi_per_success >= 0.0) {
            out.push("kpi_per_success must be >= 0".to_string());
        }
        out
    }
}

/// Prices used for operational cost and the token equivalent of one
/// tool/API call used by the efficiency score.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CostModel {
    pub token_price: f64,
    pub api_call_price: f64,
    pub intervention_price: f64,
    pub token_equivalent: f64,
}

impl Default for CostModel {
    fn default() -> Self {
        Self {
            token_price: 0.00002,
            api_call_price: 0.01,
            intervention_price: 5.0,
            token_equivalent: 1000.0,
        }
    }
}

impl CostModel {
    pub fn problems(&self) -> Vec<String> {
        [
            ("token_price", self.token_price),
            ("api_call_price", self.api_call_price),
            ("intervention_price", self.intervention_price),
            ("token_equivalent", self.token_equivalent),
        ]
        .into_iter()
        .filter(|(_, v)| !(*v >= 0.0 && v.is_finite()))
        .map(|(n, _)| format!("{n} must be a finite value >= 0"))
        .collect()
    }
}

/// Step-count band weights for complexity-weighted autonomy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ComplexityWeights {
    /// 1–5 steps.
    pub simple: f64,
    /// 6–15 steps.
    pub medium: f64,
    /// 16+ steps.
    pub complex: f64,
}

impl Default for ComplexityWeights {
    fn default() -> Self {
        Self {
            simple: 1.0,
            medium: 1.5,
            complex: 2.0,
        }
    }
}

impl ComplexityWeights {
    pub const UNIFORM: ComplexityWeights = ComplexityWeights {
        simple: 1.0,
        medium: 1.0,
        complex: 1.0,
    };

    pub fn weight_for(&self, total_steps: u32) -> f64 {
        match total_steps {
            0..=5 => self.simple,
            6..=15 => self.medium,
            _ => self.complex,
        }
    }

    pub fn is_valid(&self) -> bool {
        [self.simple, self.medium, self.complex]
            .iter()
            .all(|w| *w > 0.0 && w.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_bands() {
        let w = ComplexityWeights::default();
        assert_eq!(w.weight_for(1), 1.0);
        assert_eq!(w.weight_for(5), 1.0);
        assert_eq!(w.weight_for(6), 1.5);
        assert_eq!(w.weight_for(15), 1.5);
        assert_eq!(w.weight_for(16), 2.0);
    }

    #[test]
    fn cost_model_rejects_negative_prices() {
        let cm = CostModel {
            token_price: -1.0,
            ..CostModel::default()
        };
        assert_eq!(cm.problems().len(), 1);
        assert!(CostModel::default().problems().is_empty());
    }

    #[test]
    fn domain_config_rejects_zero_factor() {
        let d = DomainConfig {
            task_count: 0,
            modifiers: DomainModifiers {
                dtt: 0.0,
                ..Default::default()
            },
            kpi_unit: KpiUnit::Dollars,
            kpi_conversion: 1.0,
            kpi_per_success: 0.0,
        };
        assert_eq!(d.problems().len(), 2);
    }
}
