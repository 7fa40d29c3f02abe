//! Bound sweeps over a range of deletion counts.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use delball_core::balanced::MemoCounter;
use delball_core::bounds::{BoundColumn, BoundReport, ReportSubject, Reporter};
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Input(format!(
                "unknown format {s:?}, expected csv or json"
            ))),
        }
    }
}

/// Inclusive range of deletion counts, written `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TRange {
    pub start: i64,
    pub end: i64,
}

impl FromStr for TRange {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let bad = || CliError::Input(format!("cannot parse t range {s:?}, expected a..b"));
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
            None => (s, s),
        };
        let start = a.trim().parse().map_err(|_| bad())?;
        let end = b.trim().parse().map_err(|_| bad())?;
        if start > end {
            return Err(bad());
        }
        Ok(TRange { start, end })
    }
}

impl fmt::Display for TRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

pub fn parse_columns(s: &str) -> CliResult<Vec<BoundColumn>> {
    let mut cols = s
        .split(',')
        .filter(|c| !c.trim().is_empty())
        .map(|c| c.parse::<BoundColumn>().map_err(CliError::from))
        .collect::<CliResult<Vec<_>>>()?;
    if cols.is_empty() {
        return Err(CliError::Input("no columns requested".into()));
    }
    cols.sort();
    cols.dedup();
    Ok(cols)
}

pub fn default_columns() -> Vec<BoundColumn> {
    BoundColumn::ALL[1..].to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub q: u32,
    pub n: i64,
    pub r: i64,
    pub t_range: TRange,
    /// Canonical order, no duplicates.
    pub columns: Vec<BoundColumn>,
    /// `None` writes to standard output.
    pub output: Option<PathBuf>,
    pub format: Format,
}

pub struct SweepResult {
    pub reports: Vec<BoundReport>,
    pub text: String,
    pub memo: MemoCounter,
}

impl SweepSpec {
    pub fn validate(&self) -> CliResult<()> {
        if self.q < 2 {
            return Err(CliError::Input(format!(
                "alphabet size {} is below 2",
                self.q
            )));
        }
        if self.r < 1 || self.r > self.n {
            return Err(CliError::Input(format!(
                "need 1 <= r <= n, got r={}, n={}",
                self.r, self.n
            )));
        }
        if self.t_range.start < 0 || self.t_range.end > self.n {
            return Err(CliError::Input(format!(
                "t range {} is outside [0, {}]",
                self.t_range, self.n
            )));
        }
        if self.columns.is_empty() {
            return Err(CliError::Input("no columns requested".into()));
        }
        Ok(())
    }

    /// Reports in ascending `t`, sharing one memo across rows.
    pub fn evaluate(&self) -> CliResult<(Vec<BoundReport>, MemoCounter)> {
        self.validate()?;
        let with_exact = self.columns.contains(&BoundColumn::Exact);
        let subject = ReportSubject::Params {
            q: self.q,
            n: self.n,
            r: self.r,
        };
        let mut reporter = Reporter::new();
        let reports = (self.t_range.start..=self.t_range.end)
            .map(|t| reporter.report(&subject, t, with_exact))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((reports, reporter.balanced_stats()))
    }

    pub fn render(&self, reports: &[BoundReport]) -> CliResult<String> {
        match self.format {
            Format::Csv => render_csv(&self.columns, reports),
            Format::Json => render_json(&self.columns, reports),
        }
    }

    pub fn run(&self) -> CliResult<SweepResult> {
        let (reports, memo) = self.evaluate()?;
        let text = self.render(&reports)?;
        if let Some(path) = &self.output {
            std::fs::write(path, &text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(SweepResult {
            reports,
            text,
            memo,
        })
    }
}

pub fn render_csv(columns: &[BoundColumn], reports: &[BoundReport]) -> CliResult<String> {
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    let mut header = vec!["t"];
    header.extend(columns.iter().map(|c| c.name()));
    out.write_record(&header).map_err(io)?;
    for rep in reports {
        let mut record = vec![rep.t.to_string()];
        record.extend(rep.row(columns).into_iter().map(Option::unwrap_or_default));
        out.write_record(&record).map_err(io)?;
    }
    let bytes = out.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

pub fn render_json(columns: &[BoundColumn], reports: &[BoundReport]) -> CliResult<String> {
    let rows: Vec<Value> = reports
        .iter()
        .map(|rep| {
            let mut row = Map::new();
            row.insert("t".into(), Value::from(rep.t));
            for (c, v) in columns.iter().zip(rep.row(columns)) {
                row.insert(c.name().into(), v.map_or(Value::Null, Value::String));
            }
            Value::Object(row)
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&rows).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    Ok(text)
}
