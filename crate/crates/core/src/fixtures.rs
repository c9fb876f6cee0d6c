//! Built-in reference fixtures with known answers, grouped by source:
//! the overlattice table, the rank-19 list, the `A1^k` families, the torus
//! list and the negative boundary case.

use crate::classifier::{a1_family_report, classify_with, ClassifyOptions, ReferenceData, Status};
use crate::error::{Error, Result};
use crate::glue::{generated_subgroup, locate_subgroup};
use crate::lattice::{AdeConfiguration, AdeType};

/// One row of the overlattice table: summands in table order, the glue
/// generators in the same coordinates, and the expected group.
#[derive(Debug, Clone, Copy)]
pub struct GlueRow {
    pub gamma: &'static [(&'static str, usize)],
    pub generators: &'static [&'static [u8]],
    pub group: &'static str,
}

/// Components are discriminant residues, so `[kV]_n` on `A_m` is `k (m+1)/n`.
pub const GLUE_TABLE: [GlueRow; 15] = [
    GlueRow { gamma: &[("A1", 8)], generators: &[&[1, 1, 1, 1, 1, 1, 1, 1]], group: "Z/2" },
    GlueRow {
        gamma: &[("A1", 12)],
        generators: &[&[1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0], &[1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1]],
        group: "(Z/2)^2",
    },
    GlueRow {
        gamma: &[("A1", 14)],
        generators: &[
            &[1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
            &[1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0],
            &[1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1],
        ],
        group: "(Z/2)^3",
    },
    GlueRow {
        gamma: &[("A1", 15)],
        generators: &[
            &[1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0],
            &[1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0],
            &[1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0],
            &[1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
        ],
        group: "(Z/2)^4",
    },
    GlueRow {
        gamma: &[("A1", 16)],
        generators: &[
            &[1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
            &[1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0],
            &[1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0],
            &[1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
            &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        ],
        group: "(Z/2)^5",
    },
    GlueRow { gamma: &[("A2", 6)], generators: &[&[1, 1, 1, 1, 1, 1]], group: "Z/3" },
    GlueRow {
        gamma: &[("A2", 8)],
        generators: &[&[1, 1, 1, 1, 1, 1, 0, 0], &[2, 2, 1, 1, 0, 0, 1, 1]],
        group: "(Z/3)^2",
    },
    GlueRow {
        gamma: &[("A2", 9)],
        generators: &[&[1, 1, 1, 1, 1, 1, 0, 0, 0], &[2, 2, 2, 0, 0, 0, 1, 1, 1], &[1, 2, 0, 1, 2, 0, 1, 2, 0]],
        group: "(Z/3)^3",
    },
    GlueRow { gamma: &[("A4", 4)], generators: &[&[1, 2, 1, 2]], group: "Z/5" },
    GlueRow { gamma: &[("A6", 3)], generators: &[&[1, 2, 3]], group: "Z/7" },
    GlueRow { gamma: &[("A3", 4), ("A1", 2)], generators: &[&[1, 1, 1, 1, 1, 1]], group: "Z/4" },
    GlueRow {
        gamma: &[("A3", 4), ("A1", 4)],
        generators: &[&[1, 1, 1, 1, 1, 1, 0, 0], &[2, 2, 0, 0, 1, 1, 1, 1]],
        group: "Z/2 x Z/4",
    },
    GlueRow { gamma: &[("A3", 6)], generators: &[&[1, 1, 1, 1, 2, 0], &[0, 2, 3, 1, 1, 1]], group: "(Z/4)^2" },
    GlueRow {
        gamma: &[("A3", 4), ("A1", 6)],
        generators: &[
            &[1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
            &[2, 2, 0, 0, 1, 1, 1, 1, 0, 0],
            &[0, 2, 2, 0, 1, 1, 0, 0, 1, 1],
        ],
        group: "(Z/2)^2 x Z/4",
    },
    GlueRow { gamma: &[("A7", 2), ("A3", 1), ("A1", 1)], generators: &[&[1, 3, 1, 1]], group: "Z/8" },
];

impl GlueRow {
    pub fn name(&self) -> String {
        self.config().to_string()
    }

    pub fn config(&self) -> AdeConfiguration {
        AdeConfiguration::new(self.summands())
    }

    fn summands(&self) -> Vec<AdeType> {
        self.gamma
            .iter()
            .flat_map(|(t, k)| {
                let c: AdeConfiguration = t.parse().expect("valid type");
                std::iter::repeat_n(c.summands()[0], *k)
            })
            .collect()
    }

    /// Generators moved to canonical summand order.
    pub fn canonical_generators(&self) -> Vec<Vec<u8>> {
        let types = self.summands();
        let mut perm: Vec<usize> = (0..types.len()).collect();
        perm.sort_by_key(|&i| types[i]);
        self.generators.iter().map(|g| perm.iter().map(|&i| g[i]).collect()).collect()
    }
}

/// Rank-19 configurations containing the `A5` branch configuration; only
/// the last five embed primitively.
pub const RANK19_LIST: [&str; 18] = [
    "A4^2+A2^3+A1^5",
    "A4^2+A2^4+A1^3",
    "A4^2+A3+A2^2+A1^4",
    "A5+A4+A2^3+A1^4",
    "D5+A4+A2^3+A1^4",
    "A4^2+A3+A2^3+A1^2",
    "A4^3+A2^2+A1^3",
    "A6+A4+A2^3+A1^3",
    "E6+A4+A2^3+A1^3",
    "A5+A4^2+A2+A1^4",
    "A7+A4+A2^2+A1^4",
    "E7+A4+A2^2+A1^4",
    "A9+A2^3+A1^4",
    "D4+A4^2+A2^3+A1",
    "D5+A4^2+A2^2+A1^2",
    "D7+A4+A2^3+A1^2",
    "E6+A4^2+A2+A1^3",
    "E8+A4+A2^2+A1^3",
];

pub const RANK19_POSITIVE: usize = 5;

/// Expected `A1^k` families as `(k, indices, simple index)`.
pub fn a1_expectations() -> Vec<(u32, Vec<u64>, Option<u64>)> {
    (1..=16)
        .map(|k| match k {
            1..=7 => (k, vec![1], Some(1)),
            8..=11 => (k, vec![1, 2], Some(1)),
            12 => (k, vec![2, 4], None),
            13..=15 => (k, vec![1 << (k - 11)], None),
            _ => (k, vec![32], None),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureResult {
    pub group: &'static str,
    pub name: String,
    pub passed: bool,
    pub incomplete: bool,
    pub detail: String,
}

impl FixtureResult {
    fn check(group: &'static str, name: String, outcome: Result<std::result::Result<(), String>>) -> Self {
        match outcome {
            Ok(Ok(())) => FixtureResult { group, name, passed: true, incomplete: false, detail: String::new() },
            Ok(Err(detail)) => FixtureResult { group, name, passed: false, incomplete: false, detail },
            Err(e) => FixtureResult {
                group,
                name,
                passed: false,
                incomplete: matches!(e, Error::SearchIncomplete { .. }),
                detail: e.to_string(),
            },
        }
    }
}

pub fn check_glue_row(row: &GlueRow, opts: &ClassifyOptions) -> Result<std::result::Result<(), String>> {
    let config = row.config();
    let h = generated_subgroup(&config, &row.canonical_generators())?;
    if h.description() != row.group {
        return Ok(Err(format!("generated group is {}, expected {}", h.description(), row.group)));
    }
    match locate_subgroup(&config, &h, opts.limits)? {
        Some(_) => Ok(Ok(())),
        None => Ok(Err("search does not return this subgroup".into())),
    }
}

pub fn check_rank19(position: usize, opts: &ClassifyOptions) -> Result<std::result::Result<(), String>> {
    let refs = ReferenceData::builtin();
    let config: AdeConfiguration = RANK19_LIST[position].parse()?;
    let r = classify_with(&config, &refs, opts)?;
    let (family, verdict) = &r.candidates[0];
    let expected = position >= RANK19_LIST.len() - RANK19_POSITIVE;
    if verdict.embeds() == expected && family.index == 1 {
        Ok(Ok(()))
    } else {
        Ok(Err(format!("trivial verdict {verdict}, expected {}", if expected { "embeds" } else { "fails" })))
    }
}

pub fn check_a1_families(opts: &ClassifyOptions) -> Result<Vec<(u32, std::result::Result<(), String>)>> {
    let refs = ReferenceData::builtin();
    let report = a1_family_report(&refs, opts)?;
    let mut out = Vec::new();
    for (row, (k, indices, simple)) in report.rows.iter().zip(a1_expectations()) {
        let got: Vec<u64> = row.families.iter().map(|f| f.0).collect();
        let got_simple = row.families.iter().find(|f| f.1).map(|f| f.0);
        let status = if k == 16 { Status::PrimitiveOnly } else { Status::Irreducible };
        let res = if got == indices && got_simple == simple && row.status == status {
            Ok(())
        } else {
            Err(format!("families {got:?} simple {got_simple:?} status {}", row.status))
        };
        out.push((k, res));
    }
    let totals = (report.families, report.irreducible, report.simple);
    out.push((0, if totals == (21, 20, 11) { Ok(()) } else { Err(format!("totals {totals:?}")) }));
    Ok(out)
}

/// The `(Z/3)^3` overlattice of `A2^9+A1` must not embed.
pub fn check_boundary_negative(opts: &ClassifyOptions) -> Result<std::result::Result<(), String>> {
    let refs = ReferenceData::builtin();
    let r = classify_with(&"A2^9+A1".parse()?, &refs, opts)?;
    match r.candidates.iter().find(|(f, _)| f.subgroup == "(Z/3)^3") {
        Some((_, v)) if !v.embeds() => Ok(Ok(())),
        Some((_, v)) => Ok(Err(format!("verdict {v}"))),
        None => Ok(Err("no (Z/3)^3 candidate".into())),
    }
}

pub fn check_torus(config: &AdeConfiguration, opts: &ClassifyOptions) -> Result<std::result::Result<(), String>> {
    let r = classify_with(config, &ReferenceData::builtin(), opts)?;
    if r.status == Status::PrimitiveOnly {
        Ok(Ok(()))
    } else {
        Ok(Err(format!("status {}", r.status)))
    }
}

/// Runs every built-in fixture.
pub fn verify_fixtures(opts: &ClassifyOptions) -> Vec<FixtureResult> {
    let mut out = Vec::new();
    for row in &GLUE_TABLE {
        out.push(FixtureResult::check("glue-table", row.name(), check_glue_row(row, opts)));
    }
    for (i, name) in RANK19_LIST.iter().enumerate() {
        out.push(FixtureResult::check("rank19", name.to_string(), check_rank19(i, opts)));
    }
    match check_a1_families(opts) {
        Ok(rows) => {
            for (k, res) in rows {
                let name = if k == 0 { "totals".to_string() } else { format!("A1^{k}") };
                out.push(FixtureResult::check("a1-families", name, Ok(res)));
            }
        }
        Err(e) => out.push(FixtureResult::check("a1-families", "all".into(), Err(e))),
    }
    out.push(FixtureResult::check("boundary-negative", "A1+A2^9".into(), check_boundary_negative(opts)));
    for c in &ReferenceData::builtin().fujiki_list {
        out.push(FixtureResult::check("torus", c.to_string(), check_torus(c, opts)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_canonicalized() {
        let row = &GLUE_TABLE[14];
        assert_eq!(row.name(), "A1+A3+A7^2");
        assert_eq!(row.canonical_generators(), vec![vec![1, 1, 1, 3]]);
    }

    #[test]
    fn small_rows_pass() {
        let opts = ClassifyOptions::default();
        for row in &GLUE_TABLE[..3] {
            assert_eq!(check_glue_row(row, &opts).unwrap(), Ok(()), "{}", row.name());
        }
    }
}
