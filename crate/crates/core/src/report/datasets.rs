//! The five published CSV datasets.
//!
//! | file | one row per |
//! |---|---|
//! | `data_task_level.csv` | task |
//! | `data_aggregate_metrics.csv` | agent × domain cell |
//! | `data_overall_metrics.csv` | agent |
//! | `data_adaptability.csv` | agent × domain cell |
//! | `data_business_impact.csv` | agent × domain cell |
//!
//! Percent, second and dollar columns carry 2 decimals; ratios and scores
//! carry 4. Absent metrics are empty fields.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::aggregate::OverallRow;
use super::ReportError;
use crate::model::{task_csv, AdaptabilityCell, AgentId, DomainConfig, DomainId, KpiUnit, MetricCell, TaskRecord};

pub const TASK_FILE: &str = "data_task_level.csv";
pub const AGGREGATE_FILE: &str = "data_aggregate_metrics.csv";
pub const OVERALL_FILE: &str = "data_overall_metrics.csv";
pub const ADAPTABILITY_FILE: &str = "data_adaptability.csv";
pub const BUSINESS_FILE: &str = "data_business_impact.csv";

/// Economic view of one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BusinessRow {
    pub agent: AgentId,
    pub domain: DomainId,
    pub kpi_unit: KpiUnit,
    pub kpi_value: f64,
    pub kpi_monetary: f64,
    pub op_cost: f64,
    pub bie: Option<f64>,
    pub roi: Option<f64>,
}

/// Business rows for `cells`, with units looked up per domain.
pub fn business_rows<F>(cells: &[MetricCell], domain_cfg: F) -> Vec<BusinessRow>
where
    F: Fn(&DomainId) -> DomainConfig,
{
    cells
        .iter()
        .map(|c| BusinessRow {
            agent: c.agent.clone(),
            domain: c.domain.clone(),
            kpi_unit: domain_cfg(&c.domain).kpi_unit,
            kpi_value: c.kpi_value,
            kpi_monetary: c.kpi_monetary,
            op_cost: c.op_cost,
            bie: c.bie,
            roi: c.roi,
        })
        .collect()
}

enum Val {
    Int(u64),
    Num(f64, usize),
    Opt(Option<f64>, usize),
    Text(String),
}

/// Fixed-precision decimal without a negative zero.
pub fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// `x` as it reads back after being written with `decimals` places.
pub fn quantize(x: f64, decimals: usize) -> f64 {
    fixed(x, decimals).parse().expect("formatted float parses")
}

fn render(v: &Val) -> String {
    match v {
        Val::Int(i) => i.to_string(),
        Val::Num(x, d) => fixed(*x, *d),
        Val::Opt(Some(x), d) => fixed(*x, *d),
        Val::Opt(None, _) => String::new(),
        Val::Text(s) => s.clone(),
    }
}

fn write_table<W: Write>(w: W, header: &[&str], rows: Vec<Vec<Val>>) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for row in rows {
        out.write_record(row.iter().map(render))?;
    }
    out.flush()?;
    Ok(())
}

struct Table {
    file: String,
    index: HashMap<String, usize>,
    rows: Vec<csv::StringRecord>,
}

struct Row<'a> {
    table: &'a Table,
    n: usize,
}

impl Table {
    fn read<R: Read>(r: R, file: &str, required: &[&str]) -> Result<Self, ReportError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
        let csv_err = |e: csv::Error| ReportError::Parse {
            file: file.to_string(),
            row: 0,
            column: String::new(),
            message: e.to_string(),
        };
        let headers = rdr.headers().map_err(csv_err)?.clone();
        let index: HashMap<String, usize> = headers.iter().enumerate().map(|(i, h)| (h.to_string(), i)).collect();
        for col in required {
            if !index.contains_key(*col) {
                return Err(ReportError::Parse {
                    file: file.to_string(),
                    row: 0,
                    column: col.to_string(),
                    message: "missing column".into(),
                });
            }
        }
        let rows = rdr.records().collect::<Result<Vec<_>, _>>().map_err(csv_err)?;
        Ok(Table { file: file.to_string(), index, rows })
    }

    fn iter(&self) -> impl Iterator<Item = Row<'_>> {
        (0..self.rows.len()).map(move |n| Row { table: self, n })
    }
}

impl Row<'_> {
    fn err(&self, column: &str, message: impl Into<String>) -> ReportError {
        ReportError::Parse {
            file: self.table.file.clone(),
            row: self.n + 1,
            column: column.to_string(),
            message: message.into(),
        }
    }

    fn raw(&self, column: &str) -> &str {
        let i = self.table.index[column];
        self.table.rows[self.n].get(i).unwrap_or("")
    }

    fn text(&self, column: &str) -> Result<String, ReportError> {
        let v = self.raw(column);
        if v.is_empty() {
            return Err(self.err(column, "empty value"));
        }
        Ok(v.to_string())
    }

    fn agent(&self) -> Result<AgentId, ReportError> {
        self.text("agent")?.parse().map_err(|_| self.err("agent", "empty label"))
    }

    fn domain(&self) -> Result<DomainId, ReportError> {
        self.text("domain")?.parse().map_err(|_| self.err("domain", "empty label"))
    }

    fn int(&self, column: &str) -> Result<u32, ReportError> {
        let v = self.raw(column);
        v.parse().map_err(|_| self.err(column, format!("{v:?} is not a count")))
    }

    fn num(&self, column: &str) -> Result<f64, ReportError> {
        self.opt(column)?.ok_or_else(|| self.err(column, "empty value"))
    }

    fn opt(&self, column: &str) -> Result<Option<f64>, ReportError> {
        let v = self.raw(column);
        if v.is_empty() {
            return Ok(None);
        }
        match v.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Some(x)),
            _ => Err(self.err(column, format!("{v:?} is not a number"))),
        }
    }
}

pub const AGGREGATE_COLUMNS: [&str; 25] = [
    "agent", "domain", "n_tasks", "n_successes", "gcr_pct", "aix", "aix_weighted", "dtt_mean_s",
    "dtt_median_s", "dtt_p95_s", "dtt_efficiency", "ces", "ces_efficiency", "mtr_pct", "tdi_raw",
    "tdi_norm", "oas", "oas_weighted", "crs_pct", "cqi", "kpi_value", "kpi_monetary_usd",
    "op_cost_usd", "bie", "roi_pct",
];

fn cell_values(c: &MetricCell) -> Vec<Val> {
    vec![
        Val::Text(c.agent.to_string()),
        Val::Text(c.domain.to_string()),
        Val::Int(c.n_tasks.into()),
        Val::Int(c.n_successes.into()),
        Val::Num(c.gcr, 2),
        Val::Num(c.aix, 4),
        Val::Num(c.aix_weighted, 4),
        Val::Num(c.dtt_mean, 2),
        Val::Num(c.dtt_median, 2),
        Val::Num(c.dtt_p95, 2),
        Val::Opt(c.dtt_efficiency, 4),
        Val::Opt(c.ces, 2),
        Val::Opt(c.ces_efficiency, 4),
        Val::Opt(c.mtr, 2),
        Val::Opt(c.tdi_raw, 4),
        Val::Opt(c.tdi_norm, 4),
        Val::Opt(c.oas, 4),
        Val::Opt(c.oas_weighted, 4),
        Val::Opt(c.crs, 2),
        Val::Opt(c.cqi, 4),
        Val::Num(c.kpi_value, 4),
        Val::Num(c.kpi_monetary, 2),
        Val::Num(c.op_cost, 2),
        Val::Opt(c.bie, 4),
        Val::Opt(c.roi, 2),
    ]
}

pub fn write_cells<W: Write>(w: W, cells: &[MetricCell]) -> csv::Result<()> {
    write_table(w, &AGGREGATE_COLUMNS, cells.iter().map(cell_values).collect())
}

pub fn read_cells<R: Read>(r: R, file: &str) -> Result<Vec<MetricCell>, ReportError> {
    let t = Table::read(r, file, &AGGREGATE_COLUMNS)?;
    t.iter()
        .map(|row| {
            Ok(MetricCell {
                agent: row.agent()?,
                domain: row.domain()?,
                n_tasks: row.int("n_tasks")?,
                n_successes: row.int("n_successes")?,
                gcr: row.num("gcr_pct")?,
                aix: row.num("aix")?,
                aix_weighted: row.num("aix_weighted")?,
                dtt_mean: row.num("dtt_mean_s")?,
                dtt_median: row.num("dtt_median_s")?,
                dtt_p95: row.num("dtt_p95_s")?,
                dtt_efficiency: row.opt("dtt_efficiency")?,
                ces: row.opt("ces")?,
                ces_efficiency: row.opt("ces_efficiency")?,
                mtr: row.opt("mtr_pct")?,
                tdi_raw: row.opt("tdi_raw")?,
                tdi_norm: row.opt("tdi_norm")?,
                oas: row.opt("oas")?,
                oas_weighted: row.opt("oas_weighted")?,
                crs: row.opt("crs_pct")?,
                cqi: row.opt("cqi")?,
                kpi_value: row.num("kpi_value")?,
                kpi_monetary: row.num("kpi_monetary_usd")?,
                op_cost: row.num("op_cost_usd")?,
                bie: row.opt("bie")?,
                roi: row.opt("roi_pct")?,
            })
        })
        .collect()
}

/// The cell as it reads back from the aggregate file.
pub fn quantize_cell(c: &MetricCell) -> MetricCell {
    let mut buf = Vec::new();
    write_cells(&mut buf, std::slice::from_ref(c)).expect("in-memory write");
    read_cells(buf.as_slice(), "<memory>").expect("own output parses").remove(0)
}

pub const OVERALL_COLUMNS: [&str; 23] = [
    "agent", "n_tasks", "n_successes", "gcr_pct", "aix", "aix_weighted", "dtt_mean_s", "dtt_median_s",
    "dtt_p95_s", "dtt_efficiency", "ces", "ces_efficiency", "mtr_pct", "tdi_raw", "tdi_norm", "oas",
    "oas_weighted", "crs_pct", "cqi", "bie", "roi_pct", "total_monetary_usd", "total_op_cost_usd",
];

fn overall_values(o: &OverallRow) -> Vec<Val> {
    vec![
        Val::Text(o.agent.to_string()),
        Val::Int(o.n_tasks.into()),
        Val::Int(o.n_successes.into()),
        Val::Num(o.gcr, 2),
        Val::Num(o.aix, 4),
        Val::Num(o.aix_weighted, 4),
        Val::Num(o.dtt_mean, 2),
        Val::Num(o.dtt_median, 2),
        Val::Num(o.dtt_p95, 2),
        Val::Opt(o.dtt_efficiency, 4),
        Val::Opt(o.ces, 2),
        Val::Opt(o.ces_efficiency, 4),
        Val::Opt(o.mtr, 2),
        Val::Opt(o.tdi_raw, 4),
        Val::Opt(o.tdi_norm, 4),
        Val::Opt(o.oas, 4),
        Val::Opt(o.oas_weighted, 4),
        Val::Opt(o.crs, 2),
        Val::Opt(o.cqi, 4),
        Val::Opt(o.bie, 4),
        Val::Opt(o.roi, 2),
        Val::Num(o.total_monetary, 2),
        Val::Num(o.total_op_cost, 2),
    ]
}

pub fn write_overall<W: Write>(w: W, rows: &[OverallRow]) -> csv::Result<()> {
    write_table(w, &OVERALL_COLUMNS, rows.iter().map(overall_values).collect())
}

pub fn read_overall<R: Read>(r: R, file: &str) -> Result<Vec<OverallRow>, ReportError> {
    let t = Table::read(r, file, &OVERALL_COLUMNS)?;
    t.iter()
        .map(|row| {
            Ok(OverallRow {
                agent: row.agent()?,
                n_tasks: row.int("n_tasks")?,
                n_successes: row.int("n_successes")?,
                gcr: row.num("gcr_pct")?,
                aix: row.num("aix")?,
                aix_weighted: row.num("aix_weighted")?,
                dtt_mean: row.num("dtt_mean_s")?,
                dtt_median: row.num("dtt_median_s")?,
                dtt_p95: row.num("dtt_p95_s")?,
                dtt_efficiency: row.opt("dtt_efficiency")?,
                ces: row.opt("ces")?,
                ces_efficiency: row.opt("ces_efficiency")?,
                mtr: row.opt("mtr_pct")?,
                tdi_raw: row.opt("tdi_raw")?,
                tdi_norm: row.opt("tdi_norm")?,
                oas: row.opt("oas")?,
                oas_weighted: row.opt("oas_weighted")?,
                crs: row.opt("crs_pct")?,
                cqi: row.opt("cqi")?,
                bie: row.opt("bie")?,
                roi: row.opt("roi_pct")?,
                total_monetary: row.num("total_monetary_usd")?,
                total_op_cost: row.num("total_op_cost_usd")?,
            })
        })
        .collect()
}

pub const ADAPTABILITY_COLUMNS: [&str; 6] = ["agent", "domain", "gcr_zero_shot", "gcr_few_shot", "ad", "ar_pct"];

pub fn write_adaptability<W: Write>(w: W, cells: &[AdaptabilityCell]) -> csv::Result<()> {
    let rows = cells
        .iter()
        .map(|c| {
            vec![
                Val::Text(c.agent.to_string()),
                Val::Text(c.domain.to_string()),
                Val::Num(c.gcr_zero_shot, 4),
                Val::Num(c.gcr_few_shot, 4),
                Val::Num(c.ad, 4),
                Val::Opt(c.ar, 2),
            ]
        })
        .collect();
    write_table(w, &ADAPTABILITY_COLUMNS, rows)
}

pub fn read_adaptability<R: Read>(r: R, file: &str) -> Result<Vec<AdaptabilityCell>, ReportError> {
    let t = Table::read(r, file, &ADAPTABILITY_COLUMNS)?;
    t.iter()
        .map(|row| {
            Ok(AdaptabilityCell {
                agent: row.agent()?,
                domain: row.domain()?,
                gcr_zero_shot: row.num("gcr_zero_shot")?,
                gcr_few_shot: row.num("gcr_few_shot")?,
                ad: row.num("ad")?,
                ar: row.opt("ar_pct")?,
            })
        })
        .collect()
}

pub const BUSINESS_COLUMNS: [&str; 8] =
    ["agent", "domain", "kpi_unit", "kpi_value", "kpi_monetary_usd", "op_cost_usd", "bie", "roi_pct"];

pub fn write_business<W: Write>(w: W, rows: &[BusinessRow]) -> csv::Result<()> {
    let rows = rows
        .iter()
        .map(|b| {
            vec![
                Val::Text(b.agent.to_string()),
                Val::Text(b.domain.to_string()),
                Val::Text(b.kpi_unit.as_str().to_string()),
                Val::Num(b.kpi_value, 4),
                Val::Num(b.kpi_monetary, 2),
                Val::Num(b.op_cost, 2),
                Val::Opt(b.bie, 4),
                Val::Opt(b.roi, 2),
            ]
        })
        .collect();
    write_table(w, &BUSINESS_COLUMNS, rows)
}

pub fn read_business<R: Read>(r: R, file: &str) -> Result<Vec<BusinessRow>, ReportError> {
    let t = Table::read(r, file, &BUSINESS_COLUMNS)?;
    t.iter()
        .map(|row| {
            let unit = row.text("kpi_unit")?;
            Ok(BusinessRow {
                agent: row.agent()?,
                domain: row.domain()?,
                kpi_unit: KpiUnit::parse(&unit).ok_or_else(|| row.err("kpi_unit", format!("unknown unit {unit:?}")))?,
                kpi_value: row.num("kpi_value")?,
                kpi_monetary: row.num("kpi_monetary_usd")?,
                op_cost: row.num("op_cost_usd")?,
                bie: row.opt("bie")?,
                roi: row.opt("roi_pct")?,
            })
        })
        .collect()
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> ReportError {
    ReportError::Io { path: path.display().to_string(), message: e.to_string() }
}

/// Creates `path` and hands a buffered writer to `f`.
pub fn write_file<F>(path: &Path, f: F) -> Result<(), ReportError>
where
    F: FnOnce(&mut BufWriter<File>) -> Result<(), Box<dyn std::error::Error>>,
{
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w).map_err(|e| io_err(path, e))?;
    w.flush().map_err(|e| io_err(path, e))
}

pub fn open_file(path: &Path) -> Result<File, ReportError> {
    File::open(path).map_err(|e| io_err(path, e))
}

/// Paths written by [`export_datasets`].
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetPaths {
    pub tasks: PathBuf,
    pub aggregate: PathBuf,
    pub overall: PathBuf,
    pub adaptability: PathBuf,
    pub business: PathBuf,
}

impl DatasetPaths {
    pub fn in_dir(dir: &Path) -> Self {
        DatasetPaths {
            tasks: dir.join(TASK_FILE),
            aggregate: dir.join(AGGREGATE_FILE),
            overall: dir.join(OVERALL_FILE),
            adaptability: dir.join(ADAPTABILITY_FILE),
            business: dir.join(BUSINESS_FILE),
        }
    }
}

pub fn write_tasks_file(path: &Path, records: &[TaskRecord]) -> Result<(), ReportError> {
    write_file(path, |w| Ok(task_csv::write_tasks(w, records)?))
}

pub fn read_tasks_file(path: &Path) -> Result<Vec<TaskRecord>, ReportError> {
    let f = open_file(path)?;
    task_csv::read_tasks(f).map_err(|e| match e {
        task_csv::TaskCsvError::Io(e) => io_err(path, e),
        other => ReportError::Schema { file: path.display().to_string(), message: other.to_string() },
    })
}

pub fn write_cells_file(path: &Path, cells: &[MetricCell]) -> Result<(), ReportError> {
    write_file(path, |w| Ok(write_cells(w, cells)?))
}

pub fn read_cells_file(path: &Path) -> Result<Vec<MetricCell>, ReportError> {
    read_cells(open_file(path)?, &path.display().to_string())
}

pub fn write_overall_file(path: &Path, rows: &[OverallRow]) -> Result<(), ReportError> {
    write_file(path, |w| Ok(write_overall(w, rows)?))
}

pub fn read_overall_file(path: &Path) -> Result<Vec<OverallRow>, ReportError> {
    read_overall(open_file(path)?, &path.display().to_string())
}

pub fn write_adaptability_file(path: &Path, cells: &[AdaptabilityCell]) -> Result<(), ReportError> {
    write_file(path, |w| Ok(write_adaptability(w, cells)?))
}

pub fn read_adaptability_file(path: &Path) -> Result<Vec<AdaptabilityCell>, ReportError> {
    read_adaptability(open_file(path)?, &path.display().to_string())
}

pub fn write_business_file(path: &Path, rows: &[BusinessRow]) -> Result<(), ReportError> {
    write_file(path, |w| Ok(write_business(w, rows)?))
}

pub fn read_business_file(path: &Path) -> Result<Vec<BusinessRow>, ReportError> {
    read_business(open_file(path)?, &path.display().to_string())
}

/// Writes all five datasets into `dir`, creating it if needed.
pub fn export_datasets(
    dir: &Path,
    records: &[TaskRecord],
    cells: &[MetricCell],
    overall: &[OverallRow],
    adaptability: &[AdaptabilityCell],
    business: &[BusinessRow],
) -> Result<DatasetPaths, ReportError> {
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let paths = DatasetPaths::in_dir(dir);
    write_tasks_file(&paths.tasks, records)?;
    write_cells_file(&paths.aggregate, cells)?;
    write_overall_file(&paths.overall, overall)?;
    write_adaptability_file(&paths.adaptability, adaptability)?;
    write_business_file(&paths.business, business)?;
    Ok(paths)
}
