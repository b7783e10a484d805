//! Effective per-cell targets for both calibration modes.

use super::{defaults, Mode, SimConfig, SimError};
use crate::benchmark;
use crate::model::{AgentId, AgentProfile, DomainConfig, DomainId};

/// How KPI contributions are generated for a cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KpiTarget {
    /// Mean KPI units per successful task.
    PerSuccess(f64),
    /// Exact cell total, split over the successful tasks.
    Total(f64),
}

/// What a generated cell is calibrated to, in metric-native units
/// (proportions for gcr, aix, mtr and crs; raw `[-1, 1]` tdi).
#[derive(Debug, Clone, PartialEq)]
pub struct CellTargets {
    pub gcr: f64,
    pub aix: f64,
    pub dtt: f64,
    pub dtt_cv: f64,
    pub ces: f64,
    pub ces_cv: f64,
    pub mtr: f64,
    pub tdi: f64,
    pub oas: f64,
    pub crs: f64,
    pub cqi: f64,
    pub kpi: KpiTarget,
    pub zero_shot: f64,
    pub few_shot: f64,
}

fn cv(mean: f64, std: f64) -> f64 {
    if mean > 0.0 {
        (std / mean).max(0.0)
    } else {
        0.0
    }
}

fn appendix_d(profile: &AgentProfile, domain: &DomainConfig) -> CellTargets {
    let m = &domain.modifiers;
    let gcr = profile.gcr.mean + m.gcr;
    CellTargets {
        gcr,
        aix: profile.aix.mean + m.aix,
        dtt: profile.dtt.mean * m.dtt,
        dtt_cv: cv(profile.dtt.mean, profile.dtt.std),
        ces: profile.ces.mean * m.ces,
        ces_cv: cv(profile.ces.mean, profile.ces.std),
        mtr: profile.mtr.mean + m.mtr,
        tdi: profile.tdi.mean + m.tdi,
        oas: profile.oas.mean + m.oas,
        crs: profile.crs.mean + m.crs,
        cqi: profile.cqi.mean + m.cqi,
        kpi: KpiTarget::PerSuccess(domain.kpi_per_success),
        few_shot: gcr,
        zero_shot: gcr - (profile.ad.mean + m.ad),
    }
}

/// Success-weighted mean of the reference domain CES factors for one
/// agent, so that scaled cells roll up to the agent's overall CES.
fn ces_normalizer(agent: usize) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (j, d) in DomainId::BUILTIN.iter().enumerate() {
        let succ = benchmark::CELLS[agent][j].gcr / 100.0 * f64::from(benchmark::TASK_COUNTS[j]);
        let f = defaults::domain_config(d).map_or(1.0, |c| c.modifiers.ces);
        num += succ * f;
        den += succ;
    }
    num / den
}

fn table_calibrated(
    agent: &AgentId,
    domain: &DomainId,
    profile: &AgentProfile,
) -> Result<CellTargets, SimError> {
    let missing = || SimError::calibration(agent, domain, "no published targets for this cell");
    let i = benchmark::agent_index(agent).ok_or_else(missing)?;
    let j = benchmark::domain_index(domain).ok_or_else(missing)?;
    let cell = benchmark::CELLS[i][j];
    let overall = benchmark::OVERALL[i];
    let adapt = benchmark::ADAPTABILITY[i][j];
    let business = benchmark::BUSINESS[i][j];
    let ces_factor = defaults::domain_config(domain).map_or(1.0, |c| c.modifiers.ces);

    Ok(CellTargets {
        gcr: cell.gcr / 100.0,
        aix: cell.aix,
        dtt: cell.dtt,
        dtt_cv: cv(profile.dtt.mean, profile.dtt.std),
        ces: overall.ces * ces_factor / ces_normalizer(i),
        ces_cv: cv(profile.ces.mean, profile.ces.std),
        mtr: overall.mtr / 100.0,
        tdi: 2.0 * overall.tdi_norm - 1.0,
        oas: cell.oas,
        crs: overall.crs / overall.gcr * cell.gcr / 100.0,
        cqi: overall.cqi,
        kpi: KpiTarget::Total(business.kpi_value),
        zero_shot: adapt.zero_shot,
        few_shot: adapt.few_shot,
    })
}

/// Effective targets for one cell, checked for feasibility.
pub fn cell_targets(
    config: &SimConfig,
    agent: &AgentId,
    profile: &AgentProfile,
    domain: &DomainId,
    domain_cfg: &DomainConfig,
) -> Result<CellTargets, SimError> {
    let t = match config.mode {
        Mode::AppendixD => appendix_d(profile, domain_cfg),
        Mode::TableCalibrated => table_calibrated(agent, domain, profile)?,
    };
    check(&t).map_err(|msg| SimError::calibration(agent, domain, msg))?;
    Ok(t)
}

fn check(t: &CellTargets) -> Result<(), String> {
    let unit = |name: &str, v: f64| {
        if (0.0..=1.0).contains(&v) {
            Ok(())
        } else {
            Err(format!("{name} target {v:.4} outside [0, 1]"))
        }
    };
    unit("gcr", t.gcr)?;
    unit("aix", t.aix)?;
    unit("mtr", t.mtr)?;
    unit("crs", t.crs)?;
    unit("zero-shot gcr", t.zero_shot)?;
    unit("few-shot gcr", t.few_shot)?;
    if t.mtr > t.gcr {
        return Err(format!("mtr target {:.4} exceeds gcr target {:.4}", t.mtr, t.gcr));
    }
    if t.crs > t.gcr {
        return Err(format!("crs target {:.4} exceeds gcr target {:.4}", t.crs, t.gcr));
    }
    if !(-1.0..=1.0).contains(&t.tdi) {
        return Err(format!("tdi target {:.4} outside [-1, 1]", t.tdi));
    }
    if !(1.0..=10.0).contains(&t.oas) {
        return Err(format!("oas target {:.4} outside [1, 10]", t.oas));
    }
    if !(1.0..=5.0).contains(&t.cqi) {
        return Err(format!("cqi target {:.4} outside [1, 5]", t.cqi));
    }
    for (name, v) in [("dtt", t.dtt), ("ces", t.ces)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(format!("{name} target {v} must be positive"));
        }
    }
    for (name, v) in [("dtt std", t.dtt_cv), ("ces std", t.ces_cv)] {
        if !v.is_finite() {
            return Err(format!("{name} is not finite"));
        }
    }
    match t.kpi {
        KpiTarget::PerSuccess(v) | KpiTarget::Total(v) if !(v.is_finite() && v >= 0.0) => {
            Err(format!("kpi target {v} must be >= 0"))
        }
        _ => Ok(()),
    }
}
