//! Intermediate files passed between subcommands.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::lexemb::Side;
use crate::patchio::Label;

use super::CliError;

/// One row of `fragments.tsv`: `<patch_id>\t<Buggy|Patched>\t<fragment>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentRow {
    pub patch_id: String,
    pub side: Side,
    pub text: String,
}

pub fn write_fragments(rows: &[FragmentRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&r.patch_id);
        out.push('\t');
        out.push_str(r.side.as_str());
        out.push('\t');
        // fragments are single-line already; tabs would break the columns
        out.push_str(&r.text.replace('\t', " "));
        out.push('\n');
    }
    out
}

pub fn parse_fragments(text: &str) -> Result<Vec<FragmentRow>, CliError> {
    let mut rows = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let bad = |m: &str| CliError::Format(format!("fragments line {}: {m}", i + 1));
        let mut parts = line.splitn(3, '\t');
        let id = parts.next().filter(|s| !s.is_empty()).ok_or_else(|| bad("missing id"))?;
        let side: Side = parts
            .next()
            .ok_or_else(|| bad("missing side"))?
            .parse()
            .map_err(|e: String| bad(&e))?;
        if side == Side::Crossed {
            return Err(bad("fragments are Buggy or Patched"));
        }
        let text = parts.next().ok_or_else(|| bad("missing fragment"))?;
        if !seen.insert((id.to_string(), side)) {
            return Err(bad("duplicate (id, side)"));
        }
        rows.push(FragmentRow {
            patch_id: id.to_string(),
            side,
            text: text.to_string(),
        });
    }
    Ok(rows)
}

pub fn read_fragments(path: &Path) -> Result<Vec<FragmentRow>, CliError> {
    parse_fragments(&read_text(path)?)
}

/// One row of `scores.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    pub patch_id: String,
    pub benchmark: String,
    pub tool: String,
    pub bug_id: String,
    pub label: Label,
    pub cosine: f64,
    pub euclidean: f64,
}

pub fn read_scores(path: &Path) -> Result<Vec<ScoreRow>, CliError> {
    parse_scores(&read_text(path)?)
}

pub fn parse_scores(text: &str) -> Result<Vec<ScoreRow>, CliError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in reader.deserialize() {
        let row: ScoreRow = rec.map_err(|e| CliError::Format(format!("scores: {e}")))?;
        if !row.cosine.is_finite() || !row.euclidean.is_finite() {
            return Err(CliError::Format(format!("scores: non-finite score for {}", row.patch_id)));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Small CSV builder that writes rows in memory, so a failed command never
/// leaves half-written reports.
pub struct Table {
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header).expect("in-memory write");
        Table { writer }
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).expect("in-memory write");
    }

    pub fn finish(self) -> String {
        let bytes = self.writer.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("csv of utf-8 fields")
    }
}
