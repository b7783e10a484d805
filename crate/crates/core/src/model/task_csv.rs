//! Canonical task-level CSV (`data_task_level.csv`).
//!
//! One row per [`TaskRecord`]. Optional rater and collaboration panels are
//! written as empty strings when absent. Tool events are stored as an
//! opportunity count plus a score sum; parsing rebuilds the canonical event
//! list (see [`canonical_tool_events`]).

use std::io::{Read, Write};

use super::record::{
    canonical_tool_events, ChainOutcome, CollabScores, ComplexityLevel, ErrorType, Interventions,
    RaterPanel, RaterScores, TaskRecord,
};

pub const TASK_COLUMNS: [&str; 40] = [
    "task_id",
    "agent",
    "domain",
    "success",
    "total_steps",
    "iv_clarify",
    "iv_correct",
    "iv_approve",
    "t_start_s",
    "t_end_s",
    "human_wait_s",
    "tokens",
    "api_calls",
    "tool_opps",
    "tool_score_sum",
    "r1_correct",
    "r1_complete",
    "r1_relevant",
    "r1_present",
    "r2_correct",
    "r2_complete",
    "r2_relevant",
    "r2_present",
    "r3_correct",
    "r3_complete",
    "r3_relevant",
    "r3_present",
    "cq_comm",
    "cq_resp",
    "cq_ctx",
    "cq_sugg",
    "cq_sat",
    "is_multistep",
    "had_error",
    "error_type",
    "self_recovered",
    "chain_len",
    "chain_level",
    "chain_success",
    "kpi_contribution",
];

#[derive(Debug, thiserror::Error)]
pub enum TaskCsvError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("missing column `{0}`")]
    MissingColumn(&'static str),
    #[error("row {row}, column `{column}`: {message}")]
    Field {
        row: usize,
        column: &'static str,
        message: String,
    },
}

fn fmt_bool(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Writes records with a header row.
pub fn write_tasks<W: Write>(w: W, records: &[TaskRecord]) -> Result<(), TaskCsvError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(TASK_COLUMNS)?;
    let mut row: Vec<String> = Vec::with_capacity(TASK_COLUMNS.len());
    for r in records {
        row.clear();
        row.push(r.task_id.clone());
        row.push(r.agent.to_string());
        row.push(r.domain.to_string());
        row.push(fmt_bool(r.success).into());
        row.push(r.total_steps.to_string());
        row.push(r.interventions.clarification.to_string());
        row.push(r.interventions.error_correction.to_string());
        row.push(r.interventions.approval_gate.to_string());
        row.push(r.t_start.to_string());
        row.push(r.t_end.to_string());
        row.push(r.human_wait.to_string());
        row.push(r.tokens.to_string());
        row.push(r.api_calls.to_string());
        row.push(r.tool_opportunities().to_string());
        row.push(r.tool_score_sum().to_string());
        match &r.rater_scores {
            Some(p) => {
                for rater in &p.raters {
                    row.extend(rater.dimensions().iter().map(|v| v.to_string()));
                }
            }
            None => row.extend(std::iter::repeat_n(String::new(), 12)),
        }
        match &r.collab_scores {
            Some(c) => row.extend(c.dimensions().iter().map(|v| v.to_string())),
            None => row.extend(std::iter::repeat_n(String::new(), 5)),
        }
        let ch = &r.chain;
        row.push(fmt_bool(ch.is_multistep).into());
        row.push(fmt_bool(ch.had_initial_error).into());
        row.push(ch.error_type.map(|e| e.as_str()).unwrap_or("").into());
        row.push(fmt_bool(ch.self_recovered).into());
        row.push(ch.chain_len.to_string());
        row.push(ch.complexity_level.as_str().into());
        row.push(fmt_bool(ch.chain_success).into());
        row.push(r.kpi_contribution.to_string());
        wr.write_record(&row)?;
    }
    wr.flush()?;
    Ok(())
}

struct RowReader<'a> {
    rec: &'a csv::StringRecord,
    idx: &'a [usize; 40],
    row: usize,
}

impl RowReader<'_> {
    fn raw(&self, col: usize) -> &str {
        self.rec.get(self.idx[col]).unwrap_or("").trim()
    }

    fn err(&self, col: usize, message: impl Into<String>) -> TaskCsvError {
        TaskCsvError::Field {
            row: self.row,
            column: TASK_COLUMNS[col],
            message: message.into(),
        }
    }

    fn parse<T: std::str::FromStr>(&self, col: usize) -> Result<T, TaskCsvError>
    where
        T::Err: std::fmt::Display,
    {
        let s = self.raw(col);
        s.parse::<T>()
            .map_err(|e| self.err(col, format!("cannot parse {s:?}: {e}")))
    }

    fn float(&self, col: usize) -> Result<f64, TaskCsvError> {
        let v: f64 = self.parse(col)?;
        if !v.is_finite() {
            return Err(self.err(col, "value must be finite"));
        }
        Ok(v)
    }

    fn boolean(&self, col: usize) -> Result<bool, TaskCsvError> {
        match self.raw(col) {
            "true" | "1" | "True" | "TRUE" => Ok(true),
            "false" | "0" | "False" | "FALSE" => Ok(false),
            other => Err(self.err(col, format!("expected boolean, got {other:?}"))),
        }
    }

    fn is_empty(&self, col: usize) -> bool {
        self.raw(col).is_empty()
    }
}

fn col(name: &str) -> usize {
    TASK_COLUMNS.iter().position(|c| *c == name).expect("known column")
}

fn parse_row(rd: &RowReader<'_>) -> Result<TaskRecord, TaskCsvError> {
    let task_id = rd.raw(0).to_string();
    if task_id.is_empty() {
        return Err(rd.err(0, "task_id must not be empty"));
    }
    let agent = rd.raw(1).parse().map_err(|_| rd.err(1, "agent must not be empty"))?;
    let domain = rd.raw(2).parse().map_err(|_| rd.err(2, "domain must not be empty"))?;

    let tool_opps: usize = rd.parse(col("tool_opps"))?;
    let tool_sum = rd.float(col("tool_score_sum"))?;
    let tool_events = canonical_tool_events(tool_opps, tool_sum).ok_or_else(|| {
        rd.err(
            col("tool_score_sum"),
            format!("score sum {tool_sum} not achievable with {tool_opps} opportunities"),
        )
    })?;

    let r1 = col("r1_correct");
    let rater_cols = r1..r1 + 12;
    let rater_scores = if rater_cols.clone().all(|c| rd.is_empty(c)) {
        None
    } else {
        let mut raters = [RaterScores::uniform(0); 3];
        for (i, rater) in raters.iter_mut().enumerate() {
            let b = r1 + 4 * i;
            *rater = RaterScores::new(rd.parse(b)?, rd.parse(b + 1)?, rd.parse(b + 2)?, rd.parse(b + 3)?);
        }
        Some(RaterPanel::new(raters))
    };

    let c0 = col("cq_comm");
    let collab_scores = if (c0..c0 + 5).all(|c| rd.is_empty(c)) {
        None
    } else {
        Some(CollabScores::new(
            rd.parse(c0)?,
            rd.parse(c0 + 1)?,
            rd.parse(c0 + 2)?,
            rd.parse(c0 + 3)?,
            rd.parse(c0 + 4)?,
        ))
    };

    let et_col = col("error_type");
    let error_type = if rd.is_empty(et_col) {
        None
    } else {
        Some(
            ErrorType::parse(rd.raw(et_col))
                .ok_or_else(|| rd.err(et_col, format!("unknown error type {:?}", rd.raw(et_col))))?,
        )
    };
    let lvl_col = col("chain_level");
    let complexity_level = ComplexityLevel::parse(rd.raw(lvl_col))
        .ok_or_else(|| rd.err(lvl_col, format!("unknown level {:?}", rd.raw(lvl_col))))?;

    Ok(TaskRecord {
        task_id,
        agent,
        domain,
        success: rd.boolean(3)?,
        total_steps: rd.parse(4)?,
        interventions: Interventions::new(rd.parse(5)?, rd.parse(6)?, rd.parse(7)?),
        t_start: rd.float(8)?,
        t_end: rd.float(9)?,
        human_wait: rd.float(10)?,
        tokens: rd.parse(11)?,
        api_calls: rd.parse(12)?,
        tool_events,
        rater_scores,
        collab_scores,
        chain: ChainOutcome {
            is_multistep: rd.boolean(col("is_multistep"))?,
            had_initial_error: rd.boolean(col("had_error"))?,
            error_type,
            self_recovered: rd.boolean(col("self_recovered"))?,
            chain_len: rd.parse(col("chain_len"))?,
            complexity_level,
            chain_success: rd.boolean(col("chain_success"))?,
        },
        kpi_contribution: rd.float(col("kpi_contribution"))?,
    })
}

/// Parses a task-level CSV. Rows are numbered from 1 (the header is row 0).
/// Column order in the file is free; every canonical column must be present.
pub fn read_tasks<R: Read>(r: R) -> Result<Vec<TaskRecord>, TaskCsvError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(r);
    let headers = rdr.headers()?.clone();
    let mut idx = [0usize; 40];
    for (i, name) in TASK_COLUMNS.iter().enumerate() {
        idx[i] = headers
            .iter()
            .position(|h| h.trim() == *name)
            .ok_or(TaskCsvError::MissingColumn(name))?;
    }
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let rd = RowReader {
            rec: &rec,
            idx: &idx,
            row: i + 1,
        };
        out.push(parse_row(&rd)?);
    }
    Ok(out)
}

/// True when the header row carries the task-level schema.
pub fn is_task_header(headers: &csv::StringRecord) -> bool {
    TASK_COLUMNS
        .iter()
        .all(|c| headers.iter().any(|h| h.trim() == *c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AgentId, DomainId, ToolEvent, ToolOutcome};

    fn sample() -> TaskRecord {
        let mut r = TaskRecord::new("T0001", AgentId::Hybrid, DomainId::CustomerService);
        r.success = false;
        r.total_steps = 12;
        r.interventions = Interventions::new(1, 0, 2);
        r.t_start = 3600.0;
        r.t_end = 3912.125;
        r.human_wait = 41.5;
        r.tokens = 2311;
        r.api_calls = 2;
        r.tool_events = vec![
            ToolEvent::new(ToolOutcome::OptimalUse),
            ToolEvent::new(ToolOutcome::IgnoredBetterTool),
            ToolEvent::new(ToolOutcome::NoToolNeeded),
        ];
        r.rater_scores = Some(RaterPanel::new([
            RaterScores::new(8, 7, 9, 6),
            RaterScores::new(7, 7, 8, 8),
            RaterScores::new(9, 8, 8, 7),
        ]));
        r.chain = ChainOutcome {
            is_multistep: true,
            had_initial_error: true,
            error_type: Some(ErrorType::ContextLoss),
            self_recovered: true,
            chain_len: 12,
            complexity_level: ComplexityLevel::L3,
            chain_success: false,
        };
        r.kpi_contribution = 0.123456;
        r
    }

    #[test]
    fn header_matches_schema_order() {
        let mut buf = Vec::new();
        write_tasks(&mut buf, &[]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.trim_end(), TASK_COLUMNS.join(","));
    }

    #[test]
    fn canonical_record_round_trips() {
        let r = sample();
        let mut buf = Vec::new();
        write_tasks(&mut buf, std::slice::from_ref(&r)).unwrap();
        let back = read_tasks(buf.as_slice()).unwrap();
        assert_eq!(back, vec![r]);
    }

    #[test]
    fn absent_panels_are_empty_strings() {
        let mut r = sample();
        r.rater_scores = None;
        let mut buf = Vec::new();
        write_tasks(&mut buf, std::slice::from_ref(&r)).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.lines().nth(1).unwrap().contains(",,,,,,,,,,,,"));
        assert_eq!(read_tasks(buf.as_slice()).unwrap()[0].rater_scores, None);
    }

    #[test]
    fn bad_field_names_row_and_column() {
        let mut buf = Vec::new();
        write_tasks(&mut buf, &[sample()]).unwrap();
        let text = String::from_utf8(buf).unwrap().replace(",2311,", ",lots,");
        match read_tasks(text.as_bytes()) {
            Err(TaskCsvError::Field { row, column, .. }) => {
                assert_eq!(row, 1);
                assert_eq!(column, "tokens");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_column_is_reported() {
        let text = "task_id,agent\nx,ReAct\n";
        assert!(matches!(
            read_tasks(text.as_bytes()),
            Err(TaskCsvError::MissingColumn("domain"))
        ));
    }
}
