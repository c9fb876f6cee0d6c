//! Classification of configurations: realizability, torus quotients,
//! irreducibility and simplicity.

use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::glue::{overlattice_candidates, SearchLimits};
use crate::lattice::AdeConfiguration;
use crate::nikulin::{embedding_verdict_with, Conventions, EmbeddingVerdict};

pub const SMOOTH_COVER_TAG: &str = "smooth-quasi-etale-cover";

fn parse_all(names: &[&str]) -> Vec<AdeConfiguration> {
    names.iter().map(|n| n.parse().expect("built-in name")).collect()
}

/// Configurations whose minimal resolution is covered by a complex torus.
pub const FUJIKI: [&str; 10] = [
    "A1^16",
    "A2^9",
    "A1^6+A3^4",
    "A1^5+A2^4+A5",
    "A1^2+A3^3+D4^2",
    "A1^3+D4^4",
    "A1+A2^2+A3^3+D5",
    "A1+A2^4+D4+E6",
    "A1+A3^6",
    "A2^4+A3^2+A5",
];

/// Branch configurations of the four maximal-type symplectic actions, with
/// the acting group.
pub const S_SET: [(&str, &str); 4] = [
    ("A5", "A1^4+A2^3+A4^2"),
    ("A6", "A1+A2^2+A3^2+A4^2"),
    ("L2(7)", "A1+A2^3+A3^2+A6"),
    ("M20", "A1+A2^3+A4^2+D4"),
];

/// Rank-19 configurations containing the `A5` branch configuration that
/// embed primitively.
pub const T_SET: [&str; 5] = [
    "A1+A2^3+A4^2+D4",
    "A1^2+A2^2+A4^2+D5",
    "A1^2+A2^3+A4+D7",
    "A1^3+A2+A4^2+E6",
    "A1^3+A2^2+A4+E8",
];

/// Branch configuration of the symplectic involution.
pub const INVOLUTION: (&str, &str) = ("Z/2", "A1^8");

/// User-supplied list of branch configurations of smooth quasi-etale covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiaoTable {
    pub entries: Vec<(AdeConfiguration, Option<String>)>,
    pub sha256: String,
}

impl XiaoTable {
    /// Parses one configuration per line with an optional `# label`.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, label) = match line.split_once('#') {
                Some((n, l)) => (n.trim(), Some(l.trim().to_string()).filter(|l| !l.is_empty())),
                None => (line, None),
            };
            let config: AdeConfiguration = name.parse().map_err(|e: Error| Error::Table {
                path: source.to_string(),
                line: i + 1,
                reason: e.to_string(),
            })?;
            entries.push((config, label));
        }
        let sha256 = hex::encode(Sha256::digest(text.as_bytes()));
        Ok(XiaoTable { entries, sha256 })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }
}

#[derive(Debug, Clone)]
pub struct ReferenceData {
    pub fujiki_list: Vec<AdeConfiguration>,
    pub s_set: Vec<(String, AdeConfiguration)>,
    pub t_set: Vec<AdeConfiguration>,
    pub xiao_table: Option<XiaoTable>,
}

impl ReferenceData {
    pub fn builtin() -> Self {
        let r = ReferenceData {
            fujiki_list: parse_all(&FUJIKI),
            s_set: S_SET.iter().map(|(g, n)| (g.to_string(), n.parse().unwrap())).collect(),
            t_set: parse_all(&T_SET),
            xiao_table: None,
        };
        r.check().expect("built-in reference data");
        r
    }

    pub fn with_xiao_table(mut self, table: XiaoTable) -> Self {
        self.xiao_table = Some(table);
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.fujiki_list.len() != 10 {
            return Err(Error::Argument("torus list must have 10 entries".into()));
        }
        for (i, c) in self.fujiki_list.iter().enumerate() {
            let ok = if i < 4 { (16..=18).contains(&c.rank()) } else { c.rank() == 19 };
            if !ok {
                return Err(Error::Argument(format!("torus entry {c} has rank {}", c.rank())));
            }
        }
        let mut s: Vec<&AdeConfiguration> = self.s_set.iter().map(|(_, c)| c).collect();
        let mut t: Vec<&AdeConfiguration> = self.t_set.iter().collect();
        s.sort();
        t.sort();
        if s.windows(2).any(|w| w[0] == w[1]) || t.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Argument("repeated entry in exclusion sets".into()));
        }
        Ok(())
    }

    /// Union of the two exclusion sets for simplicity, deduplicated.
    pub fn exclusions(&self) -> Vec<AdeConfiguration> {
        let mut v: Vec<AdeConfiguration> =
            self.s_set.iter().map(|(_, c)| c.clone()).chain(self.t_set.iter().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn is_fujiki(&self, config: &AdeConfiguration) -> bool {
        self.fujiki_list.contains(config)
    }

    pub fn is_excluded(&self, config: &AdeConfiguration) -> bool {
        self.s_set.iter().any(|(_, c)| c == config) || self.t_set.contains(config)
    }

    /// Labels of cover configurations equal to `config`.
    pub fn cover_labels(&self, config: &AdeConfiguration) -> Vec<String> {
        match &self.xiao_table {
            Some(t) => t
                .entries
                .iter()
                .filter(|(c, _)| c == config)
                .map(|(_, l)| l.clone().unwrap_or_default())
                .collect(),
            None => {
                let mut out: Vec<String> =
                    self.s_set.iter().filter(|(_, c)| c == config).map(|(g, _)| g.clone()).collect();
                if config.to_string() == INVOLUTION.1 {
                    out.push(INVOLUTION.0.to_string());
                }
                out
            }
        }
    }

    pub fn tags_partial(&self) -> bool {
        self.xiao_table.is_none()
    }
}

pub fn is_fujiki(config: &AdeConfiguration) -> bool {
    ReferenceData::builtin().is_fujiki(config)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Status {
    NotRealizable,
    PrimitiveOnly,
    Irreducible,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::NotRealizable => "NotRealizable",
            Status::PrimitiveOnly => "PrimitiveOnly",
            Status::Irreducible => "Irreducible",
        })
    }
}

/// One overlattice candidate and its embedding verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlatticeFamily {
    pub index: u64,
    pub subgroup: String,
    pub length: u32,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub config: AdeConfiguration,
    pub status: Status,
    pub simple: bool,
    /// Candidates with a positive verdict.
    pub families: Vec<OverlatticeFamily>,
    /// Every candidate examined, trivial subgroup first.
    pub candidates: Vec<(OverlatticeFamily, EmbeddingVerdict)>,
    pub b2_surface: i32,
    pub b2_hilb2: i32,
    pub moduli_dim: i32,
    pub tags: Vec<String>,
}

impl ClassificationRecord {
    pub fn rank(&self) -> u32 {
        self.config.rank()
    }

    pub fn is_realizable(&self) -> bool {
        self.status != Status::NotRealizable
    }

    pub fn trivial_embeds(&self) -> bool {
        self.candidates.first().is_some_and(|(f, v)| f.index == 1 && v.embeds())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub struct ClassifyOptions {
    pub limits: SearchLimits,
    pub conventions: Conventions,
}


pub fn classify(config: &AdeConfiguration, refs: &ReferenceData) -> Result<ClassificationRecord> {
    classify_with(config, refs, &ClassifyOptions::default())
}

pub fn classify_with(
    config: &AdeConfiguration,
    refs: &ReferenceData,
    opts: &ClassifyOptions,
) -> Result<ClassificationRecord> {
    if config.rank() > 19 {
        return Err(Error::Argument(format!("{config} has rank {} > 19", config.rank())));
    }
    let rank = config.rank();
    let mut candidates = Vec::new();
    for c in overlattice_candidates(config, opts.limits)? {
        let verdict = embedding_verdict_with(rank, &c.induced_form, &opts.conventions);
        let fam = OverlatticeFamily {
            index: c.index,
            subgroup: c.subgroup.description(),
            length: c.induced_form.length(),
            verdict: verdict.label(),
        };
        candidates.push((fam, verdict));
    }
    let families: Vec<OverlatticeFamily> = candidates.iter().filter(|(_, v)| v.embeds()).map(|(f, _)| f.clone()).collect();
    let status = if families.is_empty() {
        Status::NotRealizable
    } else if refs.is_fujiki(config) {
        Status::PrimitiveOnly
    } else {
        Status::Irreducible
    };
    let mut record = ClassificationRecord {
        config: config.clone(),
        status,
        simple: false,
        families,
        candidates,
        b2_surface: 22 - rank as i32,
        b2_hilb2: 23 - rank as i32,
        moduli_dim: 20 - rank as i32,
        tags: Vec::new(),
    };
    record.simple = simple_test(&record, refs);
    tag_record(&mut record, refs);
    Ok(record)
}

pub fn simple_test(record: &ClassificationRecord, refs: &ReferenceData) -> bool {
    record.status == Status::Irreducible && record.trivial_embeds() && !refs.is_excluded(&record.config)
}

fn tag_record(record: &mut ClassificationRecord, refs: &ReferenceData) {
    record.tags.retain(|t| !t.starts_with(SMOOTH_COVER_TAG));
    if !record.is_realizable() || (refs.xiao_table.is_none() && refs.is_fujiki(&record.config)) {
        return;
    }
    for label in refs.cover_labels(&record.config) {
        record.tags.push(if label.is_empty() { SMOOTH_COVER_TAG.to_string() } else { format!("{SMOOTH_COVER_TAG}:{label}") });
    }
}

/// Re-applies cover tags, e.g. after loading a table.
pub fn tag_smooth_cover_configs(records: &mut [ClassificationRecord], refs: &ReferenceData) {
    for r in records.iter_mut() {
        tag_record(r, refs);
    }
}

/// A configuration whose classification failed.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub config: AdeConfiguration,
    pub error: Error,
}

/// Classifies every configuration on `jobs` worker threads; the output
/// follows the input order.
pub fn classify_all(
    configs: &[AdeConfiguration],
    refs: &ReferenceData,
    opts: &ClassifyOptions,
    jobs: usize,
) -> Vec<std::result::Result<ClassificationRecord, ConfigError>> {
    let work = || {
        configs
            .par_iter()
            .map(|c| classify_with(c, refs, opts).map_err(|error| ConfigError { config: c.clone(), error }))
            .collect()
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partition {
    pub l_real: Vec<AdeConfiguration>,
    pub l_kum: Vec<AdeConfiguration>,
    pub l_irr: Vec<AdeConfiguration>,
    pub l_simple: Vec<AdeConfiguration>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub total: usize,
    pub real: usize,
    pub kum: usize,
    pub irr: usize,
    pub simple: usize,
    pub tagged: usize,
    pub errors: usize,
}

impl Partition {
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (self.l_real.len(), self.l_kum.len(), self.l_irr.len(), self.l_simple.len())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, k, i, s) = self.counts();
        write!(f, "real={r} kum={k} irr={i} simple={s}")
    }
}

/// Splits records into realizable, torus, irreducible and simple lists.
/// Refuses when any configuration failed.
pub fn partition(
    outcomes: &[std::result::Result<ClassificationRecord, ConfigError>],
    refs: &ReferenceData,
) -> Result<Partition> {
    let failed = outcomes.iter().filter(|o| o.is_err()).count();
    if failed > 0 {
        return Err(Error::Incomplete(failed));
    }
    let mut p = Partition::default();
    for r in outcomes.iter().flatten() {
        if !r.is_realizable() {
            continue;
        }
        p.l_real.push(r.config.clone());
        if refs.is_fujiki(&r.config) {
            p.l_kum.push(r.config.clone());
        } else {
            p.l_irr.push(r.config.clone());
            if simple_test(r, refs) {
                p.l_simple.push(r.config.clone());
            }
        }
    }
    Ok(p)
}

pub fn counts(outcomes: &[std::result::Result<ClassificationRecord, ConfigError>], refs: &ReferenceData) -> Counts {
    let records: Vec<&ClassificationRecord> = outcomes.iter().flatten().collect();
    Counts {
        total: outcomes.len(),
        real: records.iter().filter(|r| r.is_realizable()).count(),
        kum: records.iter().filter(|r| r.is_realizable() && refs.is_fujiki(&r.config)).count(),
        irr: records.iter().filter(|r| r.status == Status::Irreducible).count(),
        simple: records.iter().filter(|r| r.simple).count(),
        tagged: records.iter().filter(|r| r.tags.iter().any(|t| t.starts_with(SMOOTH_COVER_TAG))).count(),
        errors: outcomes.len() - records.len(),
    }
}

/// Embeddable overlattices of `A1^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A1Row {
    pub k: u32,
    pub status: Status,
    /// `(index, simple)` per family.
    pub families: Vec<(u64, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A1Report {
    pub rows: Vec<A1Row>,
    pub families: usize,
    pub irreducible: usize,
    pub simple: usize,
}

pub fn a1_family_report(refs: &ReferenceData, opts: &ClassifyOptions) -> Result<A1Report> {
    let mut rows = Vec::new();
    for k in 1..=16 {
        let config: AdeConfiguration = if k == 1 { "A1".parse()? } else { format!("A1^{k}").parse()? };
        let r = classify_with(&config, refs, opts)?;
        let families = r
            .candidates
            .iter()
            .filter(|(_, v)| v.embeds())
            .map(|(f, _)| (f.index, f.index == 1 && r.simple))
            .collect();
        rows.push(A1Row { k, status: r.status, families });
    }
    let families = rows.iter().map(|r| r.families.len()).sum();
    let irreducible = rows.iter().filter(|r| r.status == Status::Irreducible).map(|r| r.families.len()).sum();
    let simple = rows.iter().flat_map(|r| &r.families).filter(|f| f.1).count();
    Ok(A1Report { rows, families, irreducible, simple })
}
