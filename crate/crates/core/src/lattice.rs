//! ADE root lattices, configurations and their Gram matrices.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank of a configuration that can sit inside the K3 lattice.
pub const MAX_RANK: u32 = 19;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

/// A single irreducible root lattice `A_n`, `D_n` or `E_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AdeType {
    family: Family,
    index: u32,
}

impl AdeType {
    pub fn new(family: Family, index: u32) -> Result<Self> {
        let ok = match family {
            Family::A => index >= 1,
            Family::D => index >= 4,
            Family::E => (6..=8).contains(&index),
        };
        if ok {
            Ok(AdeType { family, index })
        } else {
            Err(Error::InvalidType { family: family.letter(), index })
        }
    }

    pub fn a(n: u32) -> Self {
        Self::new(Family::A, n).expect("A_n needs n >= 1")
    }

    pub fn d(n: u32) -> Self {
        Self::new(Family::D, n).expect("D_n needs n >= 4")
    }

    pub fn e(n: u32) -> Self {
        Self::new(Family::E, n).expect("E_n needs n in 6..=8")
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn rank(self) -> u32 {
        self.index
    }

    /// Order of the discriminant group `L^v / L`.
    pub fn discriminant_order(self) -> u64 {
        match self.family {
            Family::A => self.index as u64 + 1,
            Family::D => 4,
            Family::E => 9 - self.index as u64,
        }
    }

    /// Edges of the Dynkin diagram, vertices numbered from 0.
    pub fn dynkin_edges(self) -> Vec<(usize, usize)> {
        let n = self.index as usize;
        match self.family {
            Family::A => (1..n).map(|i| (i - 1, i)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((2, n - 1));
                e
            }
        }
    }

    /// Gram matrix of the negative definite root lattice.
    pub fn gram_block(self) -> Vec<Vec<i64>> {
        let n = self.index as usize;
        let mut g = vec![vec![0i64; n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = -2;
        }
        for (i, j) in self.dynkin_edges() {
            g[i][j] = 1;
            g[j][i] = 1;
        }
        g
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

/// A multiset of ADE types, kept sorted in canonical summand order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdeConfiguration {
    summands: Vec<AdeType>,
    rank: u32,
}

impl AdeConfiguration {
    pub fn new(mut summands: Vec<AdeType>) -> Self {
        summands.sort();
        let rank = summands.iter().map(|t| t.rank()).sum();
        AdeConfiguration { summands, rank }
    }

    pub fn summands(&self) -> &[AdeType] {
        &self.summands
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Distinct summand types with their multiplicities, in canonical order.
    pub fn blocks(&self) -> Vec<(AdeType, usize)> {
        let mut out: Vec<(AdeType, usize)> = Vec::new();
        for &t in &self.summands {
            match out.last_mut() {
                Some((u, m)) if *u == t => *m += 1,
                _ => out.push((t, 1)),
            }
        }
        out
    }

    pub fn canonical_name(&self) -> String {
        self.to_string()
    }

    pub fn discriminant_order(&self) -> u64 {
        self.summands.iter().map(|t| t.discriminant_order()).product()
    }

    pub fn gram_matrix(&self) -> GramMatrix {
        let n = self.rank as usize;
        let mut entries = vec![vec![0i64; n]; n];
        let mut off = 0;
        for t in &self.summands {
            let b = t.gram_block();
            for (i, row) in b.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    entries[off + i][off + j] = v;
                }
            }
            off += b.len();
        }
        GramMatrix { entries }
    }

    /// True if `self` is obtained from `other` by adding summands.
    pub fn contains(&self, other: &AdeConfiguration) -> bool {
        let mut rest = self.summands.clone();
        for t in &other.summands {
            match rest.iter().position(|u| u == t) {
                Some(i) => {
                    rest.remove(i);
                }
                None => return false,
            }
        }
        true
    }
}

impl Ord for AdeConfiguration {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.summands.iter().rev().cmp(other.summands.iter().rev()))
    }
}

impl PartialOrd for AdeConfiguration {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AdeConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (t, m)) in self.blocks().into_iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            if m == 1 {
                write!(f, "{t}")?;
            } else {
                write!(f, "{t}^{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for AdeConfiguration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
        if s.is_empty() {
            return Err(err("empty name"));
        }
        let mut summands = Vec::new();
        for part in s.split('+') {
            let mut chars = part.chars();
            let family = match chars.next() {
                Some('A') => Family::A,
                Some('D') => Family::D,
                Some('E') => Family::E,
                _ => return Err(err("summand must start with A, D or E")),
            };
            let rest = chars.as_str();
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, Some(e)),
                None => (rest, None),
            };
            let index = parse_positive(idx).ok_or_else(|| err("bad index"))?;
            let exp = match exp {
                Some(e) => parse_positive(e).ok_or_else(|| err("bad exponent"))?,
                None => 1,
            };
            let t = AdeType::new(family, index).map_err(|e| err(&e.to_string()))?;
            summands.extend(std::iter::repeat_n(t, exp as usize));
        }
        Ok(AdeConfiguration::new(summands))
    }
}

fn parse_positive(s: &str) -> Option<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || s.starts_with('0') {
        return None;
    }
    s.parse().ok().filter(|&v| v > 0 && v <= 1000)
}

impl Serialize for AdeConfiguration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.canonical_name())
    }
}

impl<'de> Deserialize<'de> for AdeConfiguration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Symmetric integer matrix of a negative definite root lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    entries: Vec<Vec<i64>>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

/// All ADE types of rank at most `max_rank`, in canonical order.
pub fn ade_types(max_rank: u32) -> Vec<AdeType> {
    let mut v: Vec<AdeType> = (1..=max_rank).map(AdeType::a).collect();
    v.extend((4..=max_rank).map(AdeType::d));
    v.extend((6..=max_rank.min(8)).map(AdeType::e));
    v
}

/// Every configuration of rank between 1 and `max_rank`, sorted.
pub fn enumerate_configurations(max_rank: u32) -> Result<Vec<AdeConfiguration>> {
    if !(1..=MAX_RANK).contains(&max_rank) {
        return Err(Error::Argument(format!("max_rank must lie in 1..={MAX_RANK}, got {max_rank}")));
    }
    let types = ade_types(max_rank);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    grow(&types, 0, max_rank, &mut stack, &mut out);
    out.sort();
    Ok(out)
}

fn grow(
    types: &[AdeType],
    start: usize,
    budget: u32,
    stack: &mut Vec<AdeType>,
    out: &mut Vec<AdeConfiguration>,
) {
    for (i, &t) in types.iter().enumerate().skip(start) {
        if t.rank() > budget {
            continue;
        }
        stack.push(t);
        out.push(AdeConfiguration::new(stack.clone()));
        grow(types, i, budget - t.rank(), stack, out);
        stack.pop();
    }
}
