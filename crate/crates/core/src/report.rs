//! JSON and CSV exports of classification records and the run manifest.
//!
//! Exports hold no floating-point values and no timing, so they are
//! byte-identical across runs and thread counts. Timing lives in the
//! manifest only.

use serde::{Deserialize, Serialize};

use crate::classifier::{ClassificationRecord, ConfigError, Counts, OverlatticeFamily};
use crate::error::{Error, Result};
use crate::lattice::AdeConfiguration;

pub const SCHEMA: u32 = 1;

pub const CSV_HEADER: [&str; 9] =
    ["config", "rank", "status", "simple", "families", "b2_surface", "b2_hilb2", "moduli_dim", "tags"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportRecord {
    pub config: AdeConfiguration,
    pub rank: u32,
    pub status: String,
    pub simple: bool,
    pub families: Vec<OverlatticeFamily>,
    pub b2_surface: i32,
    pub b2_hilb2: i32,
    pub moduli_dim: i32,
    pub tags: Vec<String>,
}

impl From<&ClassificationRecord> for ExportRecord {
    fn from(r: &ClassificationRecord) -> Self {
        ExportRecord {
            config: r.config.clone(),
            rank: r.rank(),
            status: r.status.to_string(),
            simple: r.simple,
            families: r.families.clone(),
            b2_surface: r.b2_surface,
            b2_hilb2: r.b2_hilb2,
            moduli_dim: r.moduli_dim,
            tags: r.tags.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportError {
    pub config: AdeConfiguration,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportDocument {
    pub schema: u32,
    pub tags_partial: bool,
    pub records: Vec<ExportRecord>,
    pub errors: Vec<ExportError>,
}

impl ExportDocument {
    pub fn new(outcomes: &[std::result::Result<ClassificationRecord, ConfigError>], tags_partial: bool) -> Self {
        let mut records = Vec::new();
        let mut errors = Vec::new();
        for o in outcomes {
            match o {
                Ok(r) => records.push(ExportRecord::from(r)),
                Err(e) => errors.push(ExportError { config: e.config.clone(), error: e.error.to_string() }),
            }
        }
        ExportDocument { schema: SCHEMA, tags_partial, records, errors }
    }
}

pub fn to_json(doc: &ExportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

pub fn record_to_json(record: &ExportRecord) -> String {
    serde_json::to_string_pretty(record).expect("serializable")
}

pub fn from_json(text: &str) -> Result<ExportDocument> {
    let doc: ExportDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse { input: "json".into(), reason: e.to_string() })?;
    if doc.schema != SCHEMA {
        return Err(Error::Parse { input: "json".into(), reason: format!("unsupported schema {}", doc.schema) });
    }
    Ok(doc)
}

fn encode_families(fs: &[OverlatticeFamily]) -> String {
    fs.iter()
        .map(|f| format!("{}:{}:{}:{}", f.index, f.subgroup, f.length, f.verdict))
        .collect::<Vec<_>>()
        .join(";")
}

fn decode_families(s: &str) -> Result<Vec<OverlatticeFamily>> {
    let bad = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|f| {
            let parts: Vec<&str> = f.splitn(4, ':').collect();
            if parts.len() != 4 {
                return Err(bad("family needs four fields"));
            }
            Ok(OverlatticeFamily {
                index: parts[0].parse().map_err(|_| bad("index"))?,
                subgroup: parts[1].to_string(),
                length: parts[2].parse().map_err(|_| bad("length"))?,
                verdict: parts[3].to_string(),
            })
        })
        .collect()
}

/// One row per successful record.
pub fn to_csv(doc: &ExportDocument) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in &doc.records {
        w.write_record([
            r.config.to_string(),
            r.rank.to_string(),
            r.status.clone(),
            r.simple.to_string(),
            encode_families(&r.families),
            r.b2_surface.to_string(),
            r.b2_hilb2.to_string(),
            r.moduli_dim.to_string(),
            r.tags.join(";"),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn from_csv(text: &str) -> Result<Vec<ExportRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let perr = |line: usize, reason: String| Error::Table { path: "csv".into(), line, reason };
    let header = rdr.headers().map_err(|e| perr(1, e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(perr(1, "unexpected header".into()));
    }
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| perr(line, e.to_string()))?;
        let int = |k: usize| row[k].parse::<i32>().map_err(|e| perr(line, e.to_string()));
        out.push(ExportRecord {
            config: row[0].parse().map_err(|e: Error| perr(line, e.to_string()))?,
            rank: row[1].parse().map_err(|e: std::num::ParseIntError| perr(line, e.to_string()))?,
            status: row[2].to_string(),
            simple: row[3].parse().map_err(|e: std::str::ParseBoolError| perr(line, e.to_string()))?,
            families: decode_families(&row[4])?,
            b2_surface: int(5)?,
            b2_hilb2: int(6)?,
            moduli_dim: int(7)?,
            tags: if row[8].is_empty() { Vec::new() } else { row[8].split(';').map(str::to_string).collect() },
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableInput {
    pub path: String,
    pub sha256: String,
}

/// Provenance of one run, written next to the exports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub max_rank: u32,
    pub budget: u64,
    pub symmetry: bool,
    pub jobs: usize,
    pub xiao_table: Option<TableInput>,
    pub tags_partial: bool,
    pub counts: Counts,
    pub wall_time_ms: u128,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{classify, ReferenceData};

    #[test]
    fn formats_round_trip() {
        let refs = ReferenceData::builtin();
        let outcomes: Vec<_> = ["A1^8", "A2^6", "A1^16", "D4+E8"]
            .iter()
            .map(|s| Ok(classify(&s.parse().unwrap(), &refs).unwrap()))
            .collect();
        let doc = ExportDocument::new(&outcomes, true);
        let json = to_json(&doc);
        assert_eq!(from_json(&json).unwrap(), doc);
        assert_eq!(from_csv(&to_csv(&doc)).unwrap(), doc.records);
    }
}
