//! Statistical comparison of agents: ANOVA, Tukey HSD, effect sizes,
//! correlations, Wilson intervals, chi-square and rater agreement.

use std::fmt::Write as _;

use super::datasets::fixed;
use super::tables::TextTable;
use crate::model::{AgentId, DomainId, MetricCell, TaskRecord};
use crate::stats::{
    self, chi_square_independence, cohens_d, krippendorff_alpha, one_way_anova, pearson_matrix, tukey_hsd,
    wilson_interval, AnovaTable, ChiSquare, CorrelationMatrix, EffectSize, Sample, StatsError, TukeyPair,
    WilsonInterval,
};

/// What one observation in an agent's sample is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    /// One GCR value per domain cell.
    Cells,
    /// One success indicator (0 or 100) per task.
    Tasks,
}

impl Grouping {
    pub fn as_str(self) -> &'static str {
        match self {
            Grouping::Cells => "cell",
            Grouping::Tasks => "task",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectPair {
    pub group_a: String,
    pub group_b: String,
    /// `None` when both samples have zero spread.
    pub effect: Option<EffectSize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellInterval {
    pub agent: AgentId,
    pub domain: DomainId,
    pub successes: u64,
    pub n: u64,
    pub interval: WilsonInterval,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainAgreement {
    pub domain: DomainId,
    /// Tasks carrying a rater panel.
    pub items: usize,
    /// Interval Krippendorff alpha over per-rater mean scores.
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatReport {
    pub grouping: Grouping,
    pub groups: Vec<Sample>,
    pub anova: AnovaTable,
    pub tukey: Vec<TukeyPair>,
    pub effects: Vec<EffectPair>,
    pub correlation: Option<CorrelationMatrix>,
    /// Metric columns left out of the correlation matrix because they were
    /// absent in some cell or constant.
    pub dropped_columns: Vec<String>,
    pub intervals: Vec<CellInterval>,
    /// Success × agent independence; `None` if the table has an empty
    /// row or column.
    pub chi_square: Option<ChiSquare>,
    pub agreement: Vec<DomainAgreement>,
}

fn agents_of(cells: &[MetricCell]) -> Vec<AgentId> {
    let mut out: Vec<AgentId> = Vec::new();
    for c in cells {
        if !out.contains(&c.agent) {
            out.push(c.agent.clone());
        }
    }
    out
}

/// Per-agent samples of per-domain GCR.
pub fn cell_groups(cells: &[MetricCell]) -> Vec<Sample> {
    agents_of(cells)
        .into_iter()
        .map(|a| {
            let v = cells.iter().filter(|c| c.agent == a).map(|c| c.gcr).collect();
            Sample::new(a.to_string(), v)
        })
        .collect()
}

/// Per-agent samples of task success, scaled to 0/100 so group means read
/// as GCR percentages.
pub fn task_groups(records: &[TaskRecord]) -> Vec<Sample> {
    let mut agents: Vec<&AgentId> = Vec::new();
    for r in records {
        if !agents.contains(&&r.agent) {
            agents.push(&r.agent);
        }
    }
    agents
        .into_iter()
        .map(|a| {
            let v = records
                .iter()
                .filter(|r| &r.agent == a)
                .map(|r| if r.success { 100.0 } else { 0.0 })
                .collect();
            Sample::new(a.to_string(), v)
        })
        .collect()
}

type Column = (&'static str, fn(&MetricCell) -> Option<f64>);

const CORRELATION_COLUMNS: [Column; 9] = [
    ("GCR", |c| Some(c.gcr)),
    ("AIx", |c| Some(c.aix)),
    ("DTT", |c| Some(c.dtt_mean)),
    ("CES", |c| c.ces),
    ("MTR", |c| c.mtr),
    ("TDI", |c| c.tdi_norm),
    ("OAS", |c| c.oas),
    ("CRS", |c| c.crs),
    ("CQI", |c| c.cqi),
];

/// Correlations between cell-level metrics, plus the names of columns
/// that had to be dropped.
pub fn metric_correlations(cells: &[MetricCell]) -> (Option<CorrelationMatrix>, Vec<String>) {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for (name, get) in CORRELATION_COLUMNS {
        let col: Option<Vec<f64>> = cells.iter().map(get).collect();
        match col {
            Some(v) if v.iter().any(|x| *x != v[0]) => kept.push(Sample::new(name, v)),
            _ => dropped.push(name.to_string()),
        }
    }
    if kept.len() < 2 || cells.len() < 3 {
        return (None, dropped);
    }
    (pearson_matrix(&kept).ok(), dropped)
}

fn intervals(cells: &[MetricCell]) -> stats::Result<Vec<CellInterval>> {
    cells
        .iter()
        .map(|c| {
            let (s, n) = (u64::from(c.n_successes), u64::from(c.n_tasks));
            Ok(CellInterval {
                agent: c.agent.clone(),
                domain: c.domain.clone(),
                successes: s,
                n,
                interval: wilson_interval(s, n, stats::DEFAULT_Z)?,
            })
        })
        .collect()
}

fn success_table(cells: &[MetricCell]) -> Option<ChiSquare> {
    let table: Vec<Vec<u64>> = agents_of(cells)
        .iter()
        .map(|a| {
            let (s, n) = cells
                .iter()
                .filter(|c| &c.agent == a)
                .fold((0u64, 0u64), |(s, n), c| (s + u64::from(c.n_successes), n + u64::from(c.n_tasks)));
            vec![s, n - s]
        })
        .collect();
    chi_square_independence(&table).ok()
}

/// Rater agreement per domain. Each task with a rater panel is one unit;
/// each rater's value is the mean of their four dimension scores.
pub fn rater_agreement(records: &[TaskRecord]) -> Vec<DomainAgreement> {
    let mut domains: Vec<&DomainId> = Vec::new();
    for r in records {
        if !domains.contains(&&r.domain) {
            domains.push(&r.domain);
        }
    }
    domains
        .into_iter()
        .map(|d| {
            let units: Vec<Vec<Option<f64>>> = records
                .iter()
                .filter(|r| &r.domain == d)
                .filter_map(|r| r.rater_scores.as_ref())
                .map(|p| p.raters.iter().map(|s| Some(s.mean())).collect())
                .collect();
            DomainAgreement {
                domain: d.clone(),
                items: units.len(),
                alpha: krippendorff_alpha(&units).ok(),
            }
        })
        .collect()
}

fn comparisons(groups: &[Sample]) -> stats::Result<(AnovaTable, Vec<TukeyPair>, Vec<EffectPair>)> {
    let anova = one_way_anova(groups)?;
    let tukey = tukey_hsd(groups, stats::DEFAULT_ALPHA)?;
    let mut effects = Vec::new();
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            let effect = match cohens_d(&groups[i].values, &groups[j].values) {
                Ok(e) => Some(e),
                Err(StatsError::DegenerateData(_)) => None,
                Err(e) => return Err(e),
            };
            effects.push(EffectPair {
                group_a: groups[i].label.clone(),
                group_b: groups[j].label.clone(),
                effect,
            });
        }
    }
    Ok((anova, tukey, effects))
}

/// Compares agents using one GCR value per domain cell.
pub fn analyze_cells(cells: &[MetricCell]) -> stats::Result<StatReport> {
    let groups = cell_groups(cells);
    let (anova, tukey, effects) = comparisons(&groups)?;
    let (correlation, dropped_columns) = metric_correlations(cells);
    Ok(StatReport {
        grouping: Grouping::Cells,
        groups,
        anova,
        tukey,
        effects,
        correlation,
        dropped_columns,
        intervals: intervals(cells)?,
        chi_square: success_table(cells),
        agreement: Vec::new(),
    })
}

/// Compares agents using per-task success indicators. `cells` must be the
/// aggregation of the same records; it feeds the correlation matrix and
/// the intervals.
pub fn analyze_tasks(records: &[TaskRecord], cells: &[MetricCell]) -> stats::Result<StatReport> {
    let groups = task_groups(records);
    let (anova, tukey, effects) = comparisons(&groups)?;
    let (correlation, dropped_columns) = metric_correlations(cells);
    Ok(StatReport {
        grouping: Grouping::Tasks,
        groups,
        anova,
        tukey,
        effects,
        correlation,
        dropped_columns,
        intervals: intervals(cells)?,
        chi_square: success_table(cells),
        agreement: rater_agreement(records),
    })
}

fn p(v: f64) -> String {
    if v < 1e-4 {
        format!("{v:.2e}")
    } else {
        fixed(v, 4)
    }
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

impl StatReport {
    fn anova_rows(&self) -> Vec<Vec<String>> {
        let a = &self.anova;
        vec![
            vec![
                "Between groups".into(),
                fixed(a.ss_between, 4),
                a.df_between.to_string(),
                fixed(a.ms_between, 4),
                fixed(a.f_stat, 4),
                p(a.p_value),
            ],
            vec![
                "Within groups".into(),
                fixed(a.ss_within, 4),
                a.df_within.to_string(),
                fixed(a.ms_within, 4),
                String::new(),
                String::new(),
            ],
            vec![
                "Total".into(),
                fixed(a.ss_total, 4),
                (a.df_between + a.df_within).to_string(),
                String::new(),
                String::new(),
                String::new(),
            ],
        ]
    }

    fn tukey_rows(&self) -> Vec<Vec<String>> {
        self.tukey
            .iter()
            .map(|t| {
                vec![
                    t.group_a.clone(),
                    t.group_b.clone(),
                    fixed(t.mean_diff, 4),
                    fixed(t.q_stat, 4),
                    p(t.p_value),
                    t.significant.to_string(),
                ]
            })
            .collect()
    }

    fn effect_rows(&self) -> Vec<Vec<String>> {
        self.effects
            .iter()
            .map(|e| {
                let (d, m) = match e.effect {
                    Some(x) => (fixed(x.d, 4), x.magnitude.as_str().to_string()),
                    None => (String::new(), "undefined".into()),
                };
                vec![e.group_a.clone(), e.group_b.clone(), d, m]
            })
            .collect()
    }

    fn interval_rows(&self) -> Vec<Vec<String>> {
        self.intervals
            .iter()
            .map(|c| {
                vec![
                    c.agent.to_string(),
                    c.domain.to_string(),
                    c.successes.to_string(),
                    c.n.to_string(),
                    fixed(c.successes as f64 / c.n as f64, 4),
                    fixed(c.interval.lo, 4),
                    fixed(c.interval.hi, 4),
                ]
            })
            .collect()
    }

    fn correlation_rows(&self) -> Option<(Vec<String>, Vec<Vec<String>>)> {
        let m = self.correlation.as_ref()?;
        let header = std::iter::once("metric".to_string()).chain(m.labels.iter().cloned()).collect();
        let rows = m
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                std::iter::once(l.clone())
                    .chain((0..m.labels.len()).map(|j| fixed(m.get(i, j), 4)))
                    .collect()
            })
            .collect();
        Some((header, rows))
    }

    fn agreement_rows(&self) -> Vec<Vec<String>> {
        self.agreement
            .iter()
            .map(|a| {
                vec![
                    a.domain.to_string(),
                    a.items.to_string(),
                    a.alpha.map(|x| fixed(x, 4)).unwrap_or_default(),
                ]
            })
            .collect()
    }

    /// Plain-text report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "Statistical analysis of goal completion ({} grouping)\n",
            self.grouping.as_str()
        );

        let mut g = TextTable::new("Groups", &["Agent", "n", "Mean"]);
        for s in &self.groups {
            g.push(vec![s.label.clone(), s.values.len().to_string(), fixed(stats_mean(&s.values), 4)]);
        }
        out.push_str(&g.render());
        out.push('\n');

        let mut t = TextTable::new("One-way ANOVA", &["Source", "SS", "df", "MS", "F", "p"]);
        self.anova_rows().into_iter().for_each(|r| t.push(r));
        out.push_str(&t.render());
        out.push('\n');

        let mut t = TextTable::new("Tukey HSD (alpha 0.05)", &["Group A", "Group B", "Mean diff", "q", "p", "Significant"]);
        self.tukey_rows().into_iter().for_each(|r| t.push(r));
        out.push_str(&t.render());
        out.push('\n');

        let mut t = TextTable::new("Effect sizes (Cohen's d, A - B)", &["Group A", "Group B", "d", "Magnitude"]);
        self.effect_rows().into_iter().for_each(|r| t.push(r));
        out.push_str(&t.render());
        out.push('\n');

        match self.correlation_rows() {
            Some((header, rows)) => {
                let h: Vec<&str> = header.iter().map(String::as_str).collect();
                let mut t = TextTable::new("Pearson correlations between cell metrics", &h);
                rows.into_iter().for_each(|r| t.push(r));
                out.push_str(&t.render());
            }
            None => out.push_str("Pearson correlations between cell metrics\n(not enough varying metrics)\n"),
        }
        if !self.dropped_columns.is_empty() {
            let _ = writeln!(out, "omitted (absent or constant): {}", self.dropped_columns.join(", "));
        }
        out.push('\n');

        let mut t = TextTable::new(
            "Goal completion 95% Wilson intervals",
            &["Agent", "Domain", "Successes", "n", "Rate", "Low", "High"],
        );
        self.interval_rows().into_iter().for_each(|r| t.push(r));
        out.push_str(&t.render());
        out.push('\n');

        match &self.chi_square {
            Some(c) => {
                let _ = writeln!(
                    out,
                    "Chi-square test of success x agent: chi2 = {}, df = {}, p = {}",
                    fixed(c.chi2, 4),
                    c.df,
                    p(c.p_value)
                );
            }
            None => out.push_str("Chi-square test of success x agent: undefined (empty row or column)\n"),
        }

        if !self.agreement.is_empty() {
            out.push('\n');
            let mut t = TextTable::new("Rater agreement (Krippendorff alpha, interval)", &["Domain", "Items", "Alpha"]);
            self.agreement_rows().into_iter().for_each(|r| t.push(r));
            out.push_str(&t.render());
        }
        out
    }

    /// `(file name, contents)` for each CSV section.
    pub fn csv_files(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("stats_anova.csv", csv_string(&["source", "ss", "df", "ms", "f", "p"], &self.anova_rows())),
            (
                "stats_tukey.csv",
                csv_string(&["group_a", "group_b", "mean_diff", "q", "p", "significant"], &self.tukey_rows()),
            ),
            (
                "stats_effect_sizes.csv",
                csv_string(&["group_a", "group_b", "cohens_d", "magnitude"], &self.effect_rows()),
            ),
            (
                "stats_intervals.csv",
                csv_string(&["agent", "domain", "successes", "n", "rate", "wilson_lo", "wilson_hi"], &self.interval_rows()),
            ),
        ];
        if let Some((header, rows)) = self.correlation_rows() {
            let h: Vec<&str> = header.iter().map(String::as_str).collect();
            out.push(("stats_correlation.csv", csv_string(&h, &rows)));
        }
        if !self.agreement.is_empty() {
            out.push(("stats_agreement.csv", csv_string(&["domain", "items", "alpha"], &self.agreement_rows())));
        }
        out
    }
}

fn stats_mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmark;

    fn published_cells() -> Vec<MetricCell> {
        let mut out = Vec::new();
        for a in AgentId::BUILTIN {
            for d in DomainId::BUILTIN {
                let row = benchmark::cell(&a, &d).unwrap();
                let n = benchmark::task_count(&d).unwrap();
                let k = (row.gcr / 100.0 * f64::from(n)).round() as u32;
                out.push(MetricCell {
                    agent: a.clone(),
                    domain: d.clone(),
                    n_tasks: n,
                    n_successes: k,
                    gcr: row.gcr,
                    aix: row.aix,
                    aix_weighted: row.aix,
                    dtt_mean: row.dtt,
                    dtt_median: row.dtt,
                    dtt_p95: row.dtt,
                    dtt_efficiency: None,
                    ces: None,
                    ces_efficiency: None,
                    mtr: None,
                    tdi_raw: None,
                    tdi_norm: None,
                    oas: Some(row.oas),
                    oas_weighted: None,
                    crs: None,
                    cqi: None,
                    kpi_value: 0.0,
                    kpi_monetary: 0.0,
                    op_cost: 0.0,
                    bie: None,
                    roi: None,
                });
            }
        }
        out
    }

    #[test]
    fn published_domain_values_give_stable_statistics() {
        // Recomputed from the per-domain GCR table, not the reported ANOVA.
        let r = analyze_cells(&published_cells()).unwrap();
        assert!((r.anova.f_stat - 2.8448).abs() < 1e-3, "{}", r.anova.f_stat);
        assert!((r.anova.p_value - 0.0706).abs() < 1e-3);
        assert_eq!(r.tukey.len(), 6);
        let hybrid_vs_react = r
            .effects
            .iter()
            .find(|e| e.group_a == "ReAct" && e.group_b == "Hybrid")
            .and_then(|e| e.effect)
            .unwrap();
        assert!((hybrid_vs_react.d + 2.037).abs() < 1e-2, "{}", hybrid_vs_react.d);
    }

    #[test]
    fn correlation_keeps_present_columns() {
        let r = analyze_cells(&published_cells()).unwrap();
        let m = r.correlation.unwrap();
        assert_eq!(m.labels, vec!["GCR", "AIx", "DTT", "OAS"]);
        for i in 0..4 {
            assert_eq!(m.get(i, i), 1.0);
            for j in 0..4 {
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        assert!(r.dropped_columns.contains(&"CES".to_string()));
    }

    #[test]
    fn constant_gcr_is_degenerate() {
        let mut cells = published_cells();
        for c in &mut cells {
            c.gcr = 80.0;
        }
        assert!(matches!(analyze_cells(&cells), Err(StatsError::DegenerateData(_))));
    }

    #[test]
    fn text_and_csv_sections() {
        let r = analyze_cells(&published_cells()).unwrap();
        let text = r.to_text();
        assert!(text.contains("One-way ANOVA"));
        assert!(text.contains("Tukey HSD"));
        let files = r.csv_files();
        let names: Vec<&str> = files.iter().map(|f| f.0).collect();
        assert!(names.contains(&"stats_correlation.csv"));
        let tukey = &files.iter().find(|f| f.0 == "stats_tukey.csv").unwrap().1;
        assert_eq!(tukey.lines().count(), 7);
    }
}
