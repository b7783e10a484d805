//! Aligned plain-text tables.

use super::aggregate::OverallRow;
use super::datasets::{fixed, BusinessRow};
use crate::model::{AdaptabilityCell, AgentId, DomainId, MetricCell};

/// A titled grid of strings. The first column is left-aligned, the rest
/// right-aligned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextTable {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TextTable {
    pub fn new(title: impl Into<String>, header: &[&str]) -> Self {
        TextTable {
            title: title.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let ncol = self.header.len();
        let mut width = vec![0usize; ncol];
        for r in std::iter::once(&self.header).chain(&self.rows) {
            for (j, cell) in r.iter().enumerate() {
                width[j] = width[j].max(cell.chars().count());
            }
        }
        let line = |r: &[String]| {
            let cells: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    if j == 0 {
                        format!("{c:<w$}", w = width[j])
                    } else {
                        format!("{c:>w$}", w = width[j])
                    }
                })
                .collect();
            cells.join("  ").trim_end().to_string()
        };
        let total: usize = width.iter().sum::<usize>() + 2 * ncol.saturating_sub(1);
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        out.push_str(&line(&self.header));
        out.push('\n');
        out.push_str(&"-".repeat(total));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

fn opt(v: Option<f64>, d: usize) -> String {
    v.map(|x| fixed(x, d)).unwrap_or_else(|| "-".into())
}

/// Overall performance, averaged across domains.
pub fn overall_table(rows: &[OverallRow]) -> TextTable {
    let mut t = TextTable::new(
        "Overall performance (task-weighted across domains)",
        &["Agent", "GCR (%)", "AIx", "DTT (s)", "CES", "MTR (%)", "TDI (norm)", "OAS", "CRS (%)", "CQI"],
    );
    for r in rows {
        t.push(vec![
            r.agent.to_string(),
            fixed(r.gcr, 2),
            fixed(r.aix, 4),
            fixed(r.dtt_mean, 2),
            opt(r.ces, 2),
            opt(r.mtr, 2),
            opt(r.tdi_norm, 4),
            opt(r.oas, 2),
            opt(r.crs, 2),
            opt(r.cqi, 2),
        ]);
    }
    t
}

/// Per-domain GCR, AIx, DTT and OAS.
pub fn domain_table(cells: &[MetricCell]) -> TextTable {
    let mut t = TextTable::new(
        "Domain-specific performance",
        &["Agent", "Domain", "GCR (%)", "AIx", "DTT (s)", "OAS"],
    );
    for c in cells {
        t.push(vec![
            c.agent.to_string(),
            c.domain.to_string(),
            fixed(c.gcr, 2),
            fixed(c.aix, 4),
            fixed(c.dtt_mean, 2),
            opt(c.oas, 2),
        ]);
    }
    t
}

/// Zero-shot vs few-shot completion.
pub fn adaptability_table(cells: &[AdaptabilityCell]) -> TextTable {
    let mut t = TextTable::new(
        "Zero-shot vs few-shot performance",
        &["Agent", "Domain", "Zero-shot GCR", "Few-shot GCR", "AD", "AR (%)"],
    );
    for c in cells {
        t.push(vec![
            c.agent.to_string(),
            c.domain.to_string(),
            fixed(c.gcr_zero_shot, 4),
            fixed(c.gcr_few_shot, 4),
            fixed(c.ad, 4),
            opt(c.ar, 2),
        ]);
    }
    t
}

/// KPI value, monetary value, operational cost, BIE and ROI per cell.
pub fn business_table(rows: &[BusinessRow]) -> TextTable {
    let mut t = TextTable::new(
        "Business impact efficiency and ROI",
        &["Agent", "Domain", "KPI unit", "KPI value", "Monetary ($)", "Op cost ($)", "BIE", "ROI (%)"],
    );
    for r in rows {
        t.push(vec![
            r.agent.to_string(),
            r.domain.to_string(),
            r.kpi_unit.as_str().to_string(),
            fixed(r.kpi_value, 2),
            fixed(r.kpi_monetary, 2),
            fixed(r.op_cost, 2),
            opt(r.bie, 2),
            opt(r.roi, 2),
        ]);
    }
    t
}

/// Agents × domains GCR matrix. Missing cells print as `-`.
pub fn gcr_matrix(cells: &[MetricCell]) -> TextTable {
    let mut agents: Vec<&AgentId> = Vec::new();
    let mut domains: Vec<&DomainId> = Vec::new();
    for c in cells {
        if !agents.contains(&&c.agent) {
            agents.push(&c.agent);
        }
        if !domains.contains(&&c.domain) {
            domains.push(&c.domain);
        }
    }
    let header: Vec<String> = std::iter::once("Agent".to_string())
        .chain(domains.iter().map(|d| d.to_string()))
        .collect();
    let mut t = TextTable {
        title: "Goal completion rate (%) by agent and domain".into(),
        header,
        rows: Vec::new(),
    };
    for a in agents {
        let mut row = vec![a.to_string()];
        for d in &domains {
            let v = cells.iter().find(|c| &c.agent == a && &c.domain == *d).map(|c| c.gcr);
            row.push(opt(v, 2));
        }
        t.push(row);
    }
    t
}
