//! The reference agent profiles and domain configurations.

use crate::model::{
    AgentId, AgentProfile, DomainConfig, DomainId, DomainModifiers, KpiUnit, MetricParam,
};

const fn p(mean: f64, std: f64) -> MetricParam {
    MetricParam::new(mean, std)
}

#[allow(clippy::too_many_arguments)]
const fn profile(
    gcr: f64,
    aix: f64,
    dtt: MetricParam,
    ces: MetricParam,
    mtr: f64,
    tdi: f64,
    oas: f64,
    crs: f64,
    cqi: f64,
    ad: f64,
) -> AgentProfile {
    AgentProfile {
        gcr: p(gcr, 0.08),
        aix: p(aix, 0.10),
        dtt,
        ces,
        mtr: p(mtr, 0.05),
        tdi: p(tdi, 0.10),
        oas: p(oas, 0.50),
        crs: p(crs, 0.05),
        cqi: p(cqi, 0.30),
        ad: p(ad, 0.03),
    }
}

/// Baseline profiles. The ReAct gcr/aix/dtt/ces parameters are the
/// published ones; the other agents' are the overall results with the
/// task-weighted domain offsets removed.
pub fn agent_profile(agent: &AgentId) -> Option<AgentProfile> {
    Some(match agent {
        AgentId::ReAct => profile(0.82, 0.85, p(180.0, 45.0), p(2200.0, 400.0), 0.2373, 0.1528, 7.76, 0.6333, 3.85, 0.22),
        AgentId::CoT => profile(0.835, 0.942, p(209.0, 52.0), p(2796.0, 508.0), 0.2333, 0.0882, 8.18, 0.688, 4.12, 0.24),
        AgentId::ToolAugmented => profile(0.868, 0.889, p(163.0, 41.0), p(1982.0, 360.0), 0.2747, 0.3798, 8.11, 0.684, 3.84, 0.17),
        AgentId::Hybrid => profile(0.905, 0.963, p(155.0, 39.0), p(2139.0, 389.0), 0.288, 0.288, 8.58, 0.7733, 4.28, 0.254),
        AgentId::Other(_) => return None,
    })
}

fn modifiers(gcr: f64, aix: f64, dtt: f64, ces: f64) -> DomainModifiers {
    DomainModifiers { gcr, aix, dtt, ces, ..DomainModifiers::default() }
}

pub fn domain_config(domain: &DomainId) -> Option<DomainConfig> {
    let (task_count, m, kpi_unit, kpi_conversion, kpi_per_success) = match domain {
        DomainId::Healthcare => (200, modifiers(-0.03, -0.05, 1.15, 1.20), KpiUnit::Dollars, 1.0, 78.0),
        DomainId::Finance => (150, modifiers(-0.05, -0.08, 1.25, 1.30), KpiUnit::PercentagePoints, 1000.0, 0.125),
        DomainId::Marketing => (100, modifiers(0.04, 0.02, 0.85, 0.90), KpiUnit::PercentagePoints, 800.0, 0.12),
        DomainId::Legal => (120, modifiers(-0.06, -0.10, 1.35, 1.40), KpiUnit::Hours, 150.0, 0.375),
        DomainId::CustomerService => (180, modifiers(0.02, 0.03, 0.95, 0.95), KpiUnit::PercentagePoints, 500.0, 0.124),
        DomainId::Other(_) => return None,
    };
    Some(DomainConfig { task_count, modifiers: m, kpi_unit, kpi_conversion, kpi_per_success })
}
