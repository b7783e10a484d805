//! Chart datasets and a minimal static SVG renderer.

use std::fmt::Write as _;

use super::aggregate::OverallRow;
use super::datasets::fixed;
use super::ReportError;
use crate::model::{AdaptabilityCell, AgentId, DomainId, MetricCell};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartKind {
    Radar,
    GcrHeatmap,
    AixDttScatter,
    CesBars,
    ResilienceBars,
    AdaptabilityLines,
    BieBars,
    RoiBars,
}

impl ChartKind {
    pub const ALL: [ChartKind; 8] = [
        ChartKind::Radar,
        ChartKind::GcrHeatmap,
        ChartKind::AixDttScatter,
        ChartKind::CesBars,
        ChartKind::ResilienceBars,
        ChartKind::AdaptabilityLines,
        ChartKind::BieBars,
        ChartKind::RoiBars,
    ];

    /// File stem for the emitted chart.
    pub fn file_stem(self) -> &'static str {
        match self {
            ChartKind::Radar => "chart_radar",
            ChartKind::GcrHeatmap => "chart_gcr_heatmap",
            ChartKind::AixDttScatter => "chart_aix_dtt_scatter",
            ChartKind::CesBars => "chart_ces_bars",
            ChartKind::ResilienceBars => "chart_resilience_bars",
            ChartKind::AdaptabilityLines => "chart_adaptability_lines",
            ChartKind::BieBars => "chart_bie_bars",
            ChartKind::RoiBars => "chart_roi_bars",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartRow {
    pub label: String,
    pub values: Vec<f64>,
}

/// A rectangular chart dataset: one row per series, one column per
/// category, with axis labels and the unit of the values.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartData {
    pub kind: ChartKind,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub unit: String,
    pub columns: Vec<String>,
    pub rows: Vec<ChartRow>,
}

impl ChartData {
    pub fn value(&self, row: &str, column: &str) -> Option<f64> {
        let j = self.columns.iter().position(|c| c == column)?;
        self.rows.iter().find(|r| r.label == row).map(|r| r.values[j])
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["series".to_string()];
        header.extend(self.columns.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for r in &self.rows {
            let mut rec = vec![r.label.clone()];
            rec.extend(r.values.iter().map(|v| fixed(*v, 4)));
            w.write_record(&rec).expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("flush")).expect("utf8");
        format!(
            "# {}\n# x: {}\n# y: {} ({})\n{body}",
            self.title, self.x_label, self.y_label, self.unit
        )
    }
}

/// Inputs shared by all chart kinds.
#[derive(Debug, Clone, Copy)]
pub struct ChartInputs<'a> {
    pub cells: &'a [MetricCell],
    pub overall: &'a [OverallRow],
    pub adaptability: &'a [AdaptabilityCell],
}

struct Grid<'a> {
    agents: Vec<AgentId>,
    domains: Vec<DomainId>,
    cells: &'a [MetricCell],
}

impl<'a> Grid<'a> {
    fn new(cells: &'a [MetricCell]) -> Result<Self, ReportError> {
        let mut agents: Vec<AgentId> = Vec::new();
        let mut domains: Vec<DomainId> = Vec::new();
        for c in cells {
            if !agents.contains(&c.agent) {
                agents.push(c.agent.clone());
            }
            if !domains.contains(&c.domain) {
                domains.push(c.domain.clone());
            }
        }
        if agents.is_empty() {
            return Err(ReportError::IncompleteGrid("no cells".into()));
        }
        let mut missing = Vec::new();
        for a in &agents {
            for d in &domains {
                if !cells.iter().any(|c| &c.agent == a && &c.domain == d) {
                    missing.push(format!("{a} x {d}"));
                }
            }
        }
        if !missing.is_empty() {
            return Err(ReportError::IncompleteGrid(format!("missing cells: {}", missing.join(", "))));
        }
        Ok(Grid { agents, domains, cells })
    }

    fn cell(&self, a: &AgentId, d: &DomainId) -> &MetricCell {
        self.cells.iter().find(|c| &c.agent == a && &c.domain == d).expect("grid checked")
    }

    fn matrix(&self, f: impl Fn(&MetricCell) -> Option<f64>, what: &str) -> Result<Vec<ChartRow>, ReportError> {
        self.agents
            .iter()
            .map(|a| {
                let values = self
                    .domains
                    .iter()
                    .map(|d| {
                        f(self.cell(a, d)).ok_or_else(|| {
                            ReportError::IncompleteGrid(format!("{what} absent for {a} x {d}"))
                        })
                    })
                    .collect::<Result<Vec<f64>, _>>()?;
                Ok(ChartRow { label: a.to_string(), values })
            })
            .collect()
    }

    fn domain_labels(&self) -> Vec<String> {
        self.domains.iter().map(|d| d.to_string()).collect()
    }
}

fn overall_for<'a>(overall: &'a [OverallRow], agents: &[AgentId]) -> Result<Vec<&'a OverallRow>, ReportError> {
    agents
        .iter()
        .map(|a| {
            overall
                .iter()
                .find(|o| &o.agent == a)
                .ok_or_else(|| ReportError::IncompleteGrid(format!("no overall row for {a}")))
        })
        .collect()
}

/// Min–max normalization so that 1.0 is the best agent; `lower_is_better`
/// flips the scale. A metric on which all agents tie maps to 1.0.
pub fn normalize(values: &[f64], lower_is_better: bool) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values
        .iter()
        .map(|v| {
            if hi == lo {
                1.0
            } else if lower_is_better {
                (hi - v) / (hi - lo)
            } else {
                (v - lo) / (hi - lo)
            }
        })
        .collect()
}

type Getter = fn(&OverallRow) -> Option<f64>;

const RADAR_METRICS: [(&str, Getter, bool); 9] = [
    ("GCR", |o| Some(o.gcr), false),
    ("AIx", |o| Some(o.aix), false),
    ("DTT", |o| Some(o.dtt_mean), true),
    ("CES", |o| o.ces, true),
    ("MTR", |o| o.mtr, false),
    ("TDI", |o| o.tdi_norm, false),
    ("OAS", |o| o.oas, false),
    ("CRS", |o| o.crs, false),
    ("CQI", |o| o.cqi, false),
];

pub fn chart_data(inputs: &ChartInputs<'_>, kind: ChartKind) -> Result<ChartData, ReportError> {
    let grid = Grid::new(inputs.cells)?;
    let overall = overall_for(inputs.overall, &grid.agents)?;
    let agent_labels: Vec<String> = grid.agents.iter().map(|a| a.to_string()).collect();

    let data = |title: &str, x: &str, y: &str, unit: &str, columns: Vec<String>, rows: Vec<ChartRow>| ChartData {
        kind,
        title: title.into(),
        x_label: x.into(),
        y_label: y.into(),
        unit: unit.into(),
        columns,
        rows,
    };

    Ok(match kind {
        ChartKind::Radar => {
            let mut columns = Vec::new();
            let mut per_metric = Vec::new();
            for (name, get, inverted) in RADAR_METRICS {
                let vals: Option<Vec<f64>> = overall.iter().map(|o| get(o)).collect();
                if let Some(v) = vals {
                    columns.push(name.to_string());
                    per_metric.push(normalize(&v, inverted));
                }
            }
            let rows = agent_labels
                .iter()
                .enumerate()
                .map(|(i, a)| ChartRow { label: a.clone(), values: per_metric.iter().map(|m| m[i]).collect() })
                .collect();
            data("Normalized overall performance", "metric", "normalized score (1 = best)", "ratio", columns, rows)
        }
        ChartKind::GcrHeatmap => data(
            "Goal completion rate by agent and domain",
            "domain",
            "agent",
            "percent",
            grid.domain_labels(),
            grid.matrix(|c| Some(c.gcr), "gcr")?,
        ),
        ChartKind::AixDttScatter => data(
            "Autonomy vs decision turnaround",
            "AIx",
            "DTT",
            "ratio; seconds",
            vec!["AIx".into(), "DTT".into()],
            overall
                .iter()
                .zip(&agent_labels)
                .map(|(o, a)| ChartRow { label: a.clone(), values: vec![o.aix, o.dtt_mean] })
                .collect(),
        ),
        ChartKind::CesBars => data(
            "Cognitive efficiency by domain",
            "domain",
            "resource units per successful task",
            "units",
            grid.domain_labels(),
            grid.matrix(|c| c.ces, "ces")?,
        ),
        ChartKind::ResilienceBars => {
            let rows = overall
                .iter()
                .zip(&agent_labels)
                .map(|(o, a)| {
                    match (o.mtr, o.crs) {
                        (Some(m), Some(c)) => Ok(ChartRow { label: a.clone(), values: vec![m, c] }),
                        _ => Err(ReportError::IncompleteGrid(format!("mtr/crs absent for {a}"))),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            data("Multi-step resilience and chain robustness", "metric", "rate", "percent", vec!["MTR".into(), "CRS".into()], rows)
        }
        ChartKind::AdaptabilityLines => {
            let rows = grid
                .agents
                .iter()
                .map(|a| {
                    let mine: Vec<&AdaptabilityCell> =
                        inputs.adaptability.iter().filter(|c| &c.agent == a).collect();
                    if mine.is_empty() {
                        return Err(ReportError::IncompleteGrid(format!("no adaptability cells for {a}")));
                    }
                    let n = mine.len() as f64;
                    let zero = 100.0 * mine.iter().map(|c| c.gcr_zero_shot).sum::<f64>() / n;
                    let few = 100.0 * mine.iter().map(|c| c.gcr_few_shot).sum::<f64>() / n;
                    Ok(ChartRow { label: a.to_string(), values: vec![zero, few] })
                })
                .collect::<Result<Vec<_>, _>>()?;
            data(
                "Zero-shot to few-shot completion",
                "setting",
                "goal completion rate",
                "percent",
                vec!["zero-shot".into(), "few-shot".into()],
                rows,
            )
        }
        ChartKind::BieBars => data(
            "Business impact efficiency by domain",
            "domain",
            "value per dollar of cost",
            "ratio",
            grid.domain_labels(),
            grid.matrix(|c| c.bie, "bie")?,
        ),
        ChartKind::RoiBars => data(
            "Return on investment by domain",
            "domain",
            "ROI",
            "percent",
            grid.domain_labels(),
            grid.matrix(|c| c.roi, "roi")?,
        ),
    })
}

const W: f64 = 720.0;
const H: f64 = 440.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn n(x: f64) -> String {
    fixed(x, 2)
}

struct Svg {
    body: String,
}

impl Svg {
    fn new(title: &str) -> Self {
        let mut body = String::new();
        let _ = writeln!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
            w = W,
            h = H
        );
        let _ = writeln!(body, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(
            body,
            r#"<text x="{}" y="24" text-anchor="middle" font-size="16">{}</text>"#,
            n(W / 2.0),
            esc(title)
        );
        Svg { body }
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}"/>"#,
            n(x1), n(y1), n(x2), n(y2)
        );
    }

    fn text(&mut self, x: f64, y: f64, anchor: &str, s: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{}" y="{}" text-anchor="{anchor}">{}</text>"#,
            n(x), n(y), esc(s)
        );
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}"/>"#,
            n(x), n(y), n(w.max(0.0)), n(h.max(0.0))
        );
    }

    fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, closed: bool) {
        let p: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", n(*x), n(*y))).collect();
        let tag = if closed { "polygon" } else { "polyline" };
        let _ = writeln!(
            self.body,
            r#"<{tag} points="{}" fill="none" stroke="{stroke}" stroke-width="2"/>"#,
            p.join(" ")
        );
    }

    fn circle(&mut self, x: f64, y: f64, fill: &str) {
        let _ = writeln!(self.body, r#"<circle cx="{}" cy="{}" r="5" fill="{fill}"/>"#, n(x), n(y));
    }

    fn legend(&mut self, labels: &[String]) {
        for (i, l) in labels.iter().enumerate() {
            let y = TOP + 10.0 + 20.0 * i as f64;
            self.rect(W - RIGHT + 20.0, y - 10.0, 12.0, 12.0, PALETTE[i % PALETTE.len()]);
            self.text(W - RIGHT + 38.0, y, "start", l);
        }
    }

    fn axes(&mut self, x_label: &str, y_label: &str) {
        self.line(LEFT, H - BOTTOM, W - RIGHT, H - BOTTOM, "black");
        self.line(LEFT, TOP, LEFT, H - BOTTOM, "black");
        self.text((LEFT + W - RIGHT) / 2.0, H - 20.0, "middle", x_label);
        let _ = writeln!(
            self.body,
            r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
            n((TOP + H - BOTTOM) / 2.0),
            n((TOP + H - BOTTOM) / 2.0),
            esc(y_label)
        );
    }

    fn y_ticks(&mut self, lo: f64, hi: f64) -> impl Fn(f64) -> f64 {
        let span = if hi > lo { hi - lo } else { 1.0 };
        let map = move |v: f64| H - BOTTOM - (v - lo) / span * (H - BOTTOM - TOP);
        for i in 0..=4 {
            let v = lo + span * f64::from(i) / 4.0;
            let y = map(v);
            self.line(LEFT - 4.0, y, LEFT, y, "black");
            self.text(LEFT - 6.0, y + 4.0, "end", &n(v));
        }
        map
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn value_range(d: &ChartData, include_zero: bool) -> (f64, f64) {
    let mut lo = d.rows.iter().flat_map(|r| r.values.iter().copied()).fold(f64::INFINITY, f64::min);
    let mut hi = d.rows.iter().flat_map(|r| r.values.iter().copied()).fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if include_zero {
        lo = lo.min(0.0);
        hi = hi.max(0.0);
    }
    if hi == lo {
        hi = lo + 1.0;
    }
    (lo, hi)
}

fn bars(d: &ChartData) -> String {
    let mut s = Svg::new(&d.title);
    s.axes(&d.x_label, &format!("{} ({})", d.y_label, d.unit));
    let (lo, hi) = value_range(d, true);
    let map = s.y_ticks(lo, hi);
    let groups = d.columns.len().max(1) as f64;
    let group_w = (W - LEFT - RIGHT) / groups;
    let bar_w = group_w * 0.8 / d.rows.len().max(1) as f64;
    for (j, col) in d.columns.iter().enumerate() {
        let gx = LEFT + group_w * j as f64 + group_w * 0.1;
        for (i, r) in d.rows.iter().enumerate() {
            let (y0, y1) = (map(0.0), map(r.values[j]));
            s.rect(gx + bar_w * i as f64, y0.min(y1), bar_w, (y0 - y1).abs(), PALETTE[i % PALETTE.len()]);
        }
        s.text(LEFT + group_w * (j as f64 + 0.5), H - BOTTOM + 16.0, "middle", col);
    }
    s.legend(&d.rows.iter().map(|r| r.label.clone()).collect::<Vec<_>>());
    s.finish()
}

fn heatmap(d: &ChartData) -> String {
    let mut s = Svg::new(&d.title);
    let (lo, hi) = value_range(d, false);
    let cw = (W - LEFT - RIGHT) / d.columns.len().max(1) as f64;
    let ch = (H - TOP - BOTTOM) / d.rows.len().max(1) as f64;
    for (i, r) in d.rows.iter().enumerate() {
        s.text(LEFT - 6.0, TOP + ch * (i as f64 + 0.5) + 4.0, "end", &r.label);
        for (j, v) in r.values.iter().enumerate() {
            let t = (v - lo) / (hi - lo);
            let g = (255.0 - 155.0 * t).round() as u8;
            let fill = format!("#{:02x}{:02x}{:02x}", g, 230u8, g);
            s.rect(LEFT + cw * j as f64, TOP + ch * i as f64, cw, ch, &fill);
            s.text(LEFT + cw * (j as f64 + 0.5), TOP + ch * (i as f64 + 0.5) + 4.0, "middle", &n(*v));
        }
    }
    for (j, c) in d.columns.iter().enumerate() {
        s.text(LEFT + cw * (j as f64 + 0.5), H - BOTTOM + 16.0, "middle", c);
    }
    s.text((LEFT + W - RIGHT) / 2.0, H - 20.0, "middle", &format!("{} ({})", d.x_label, d.unit));
    s.finish()
}

fn scatter(d: &ChartData) -> String {
    let mut s = Svg::new(&d.title);
    s.axes(&d.x_label, &d.y_label);
    let xs: Vec<f64> = d.rows.iter().map(|r| r.values[0]).collect();
    let ys: Vec<f64> = d.rows.iter().map(|r| r.values[1]).collect();
    let (xlo, xhi) = pad(&xs);
    let (ylo, yhi) = pad(&ys);
    let map_y = s.y_ticks(ylo, yhi);
    let map_x = |v: f64| LEFT + (v - xlo) / (xhi - xlo) * (W - LEFT - RIGHT);
    for i in 0..=4 {
        let v = xlo + (xhi - xlo) * f64::from(i) / 4.0;
        s.text(map_x(v), H - BOTTOM + 16.0, "middle", &fixed(v, 3));
    }
    for (i, r) in d.rows.iter().enumerate() {
        let (x, y) = (map_x(r.values[0]), map_y(r.values[1]));
        s.circle(x, y, PALETTE[i % PALETTE.len()]);
        s.text(x + 8.0, y - 8.0, "start", &r.label);
    }
    s.finish()
}

fn pad(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { lo.abs().max(1.0) };
    (lo - 0.1 * span, hi + 0.1 * span)
}

fn lines(d: &ChartData) -> String {
    let mut s = Svg::new(&d.title);
    s.axes(&d.x_label, &format!("{} ({})", d.y_label, d.unit));
    let (lo, hi) = value_range(d, false);
    let map = s.y_ticks(lo, hi);
    let k = d.columns.len().max(2) as f64 - 1.0;
    let map_x = |j: usize| LEFT + 40.0 + j as f64 / k * (W - LEFT - RIGHT - 80.0);
    for (j, c) in d.columns.iter().enumerate() {
        s.text(map_x(j), H - BOTTOM + 16.0, "middle", c);
    }
    for (i, r) in d.rows.iter().enumerate() {
        let pts: Vec<(f64, f64)> = r.values.iter().enumerate().map(|(j, v)| (map_x(j), map(*v))).collect();
        s.polyline(&pts, PALETTE[i % PALETTE.len()], false);
        for (x, y) in pts {
            s.circle(x, y, PALETTE[i % PALETTE.len()]);
        }
    }
    s.legend(&d.rows.iter().map(|r| r.label.clone()).collect::<Vec<_>>());
    s.finish()
}

fn radar(d: &ChartData) -> String {
    let mut s = Svg::new(&d.title);
    let (cx, cy) = ((W - RIGHT) / 2.0 + 20.0, (H + TOP - 20.0) / 2.0);
    let radius = (H - TOP - BOTTOM) / 2.0 + 10.0;
    let k = d.columns.len().max(1);
    let at = |j: usize, v: f64| {
        let a = -std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * j as f64 / k as f64;
        (cx + radius * v * a.cos(), cy + radius * v * a.sin())
    };
    for ring in [0.25, 0.5, 0.75, 1.0] {
        let pts: Vec<(f64, f64)> = (0..k).map(|j| at(j, ring)).collect();
        s.polyline(&pts, "#cccccc", true);
    }
    for (j, c) in d.columns.iter().enumerate() {
        let (x, y) = at(j, 1.0);
        s.line(cx, cy, x, y, "#999999");
        let (lx, ly) = at(j, 1.12);
        s.text(lx, ly + 4.0, "middle", c);
    }
    for (i, r) in d.rows.iter().enumerate() {
        let pts: Vec<(f64, f64)> = r.values.iter().enumerate().map(|(j, v)| at(j, *v)).collect();
        s.polyline(&pts, PALETTE[i % PALETTE.len()], true);
    }
    s.legend(&d.rows.iter().map(|r| r.label.clone()).collect::<Vec<_>>());
    s.finish()
}

/// Static SVG rendering of a chart dataset.
pub fn render_svg(d: &ChartData) -> String {
    match d.kind {
        ChartKind::Radar => radar(d),
        ChartKind::GcrHeatmap => heatmap(d),
        ChartKind::AixDttScatter => scatter(d),
        ChartKind::AdaptabilityLines => lines(d),
        ChartKind::CesBars | ChartKind::ResilienceBars | ChartKind::BieBars | ChartKind::RoiBars => bars(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_endpoints() {
        assert_eq!(normalize(&[3.0, 1.0, 2.0], false), vec![1.0, 0.0, 0.5]);
        assert_eq!(normalize(&[3.0, 1.0, 2.0], true), vec![0.0, 1.0, 0.5]);
        assert_eq!(normalize(&[2.0, 2.0], false), vec![1.0, 1.0]);
    }

    #[test]
    fn svg_escapes_text() {
        let d = ChartData {
            kind: ChartKind::CesBars,
            title: "A & B <x>".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            unit: "u".into(),
            columns: vec!["c".into()],
            rows: vec![ChartRow { label: "r".into(), values: vec![-1.0] }],
        };
        let svg = render_svg(&d);
        assert!(svg.contains("A &amp; B &lt;x&gt;"));
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}
