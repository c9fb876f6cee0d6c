//! Primitive embeddings of negative definite even lattices into the K3
//! lattice, decided from rank and discriminant form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fqf::{legendre, FiniteQuadraticForm, Q};

/// The even unimodular lattice of signature (3, 19).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingTarget;

impl EmbeddingTarget {
    pub const RANK: u32 = 22;
    pub const SIGNATURE: (u32, u32) = (3, 19);
}

/// Which half-valued summand split off at p = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HalfSplit {
    /// An order-2 element with `q = 1/2`.
    Plus,
    /// An order-2 element with `q = -1/2`.
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EmbeddingVerdict {
    EmbedsByCorollary,
    EmbedsBoundary { primes: Vec<u64>, half_split: Option<HalfSplit> },
    FailsRank,
    FailsLength,
    FailsOddPrime(u64),
    FailsTwoAdic,
}

impl EmbeddingVerdict {
    pub fn embeds(&self) -> bool {
        matches!(self, EmbeddingVerdict::EmbedsByCorollary | EmbeddingVerdict::EmbedsBoundary { .. })
    }

    /// Short stable label used in exports.
    pub fn label(&self) -> String {
        match self {
            EmbeddingVerdict::EmbedsByCorollary => "embeds".into(),
            EmbeddingVerdict::EmbedsBoundary { primes, half_split } => {
                let ps: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
                let half = match half_split {
                    Some(HalfSplit::Plus) => "+half",
                    Some(HalfSplit::Minus) => "-half",
                    None => "",
                };
                format!("embeds-boundary[{}]{half}", ps.join(","))
            }
            EmbeddingVerdict::FailsRank => "fails-rank".into(),
            EmbeddingVerdict::FailsLength => "fails-length".into(),
            EmbeddingVerdict::FailsOddPrime(p) => format!("fails-p{p}"),
            EmbeddingVerdict::FailsTwoAdic => "fails-p2".into(),
        }
    }
}

impl fmt::Display for EmbeddingVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// How the determinant of the p-adic lattice attached to the form is
/// compared with `|A|` at boundary primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoAdicRule {
    /// `|A| = +-det` up to 2-adic unit squares.
    PlusMinus,
    /// `sign * |A| = det` up to 2-adic unit squares.
    Exact(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conventions {
    /// Odd primes compare `odd_sign * |A|` with the determinant.
    pub odd_sign: i64,
    pub two_adic: TwoAdicRule,
    pub accept_plus_half: bool,
    pub accept_minus_half: bool,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions { odd_sign: -1, two_adic: TwoAdicRule::PlusMinus, accept_plus_half: true, accept_minus_half: true }
    }
}

pub fn length_precondition(rank: u32, form: &FiniteQuadraticForm) -> std::result::Result<(), EmbeddingVerdict> {
    if rank > 19 {
        return Err(EmbeddingVerdict::FailsRank);
    }
    if form.length() > EmbeddingTarget::RANK - rank {
        return Err(EmbeddingVerdict::FailsLength);
    }
    Ok(())
}

pub fn embeds_by_corollary(rank: u32, form: &FiniteQuadraticForm) -> bool {
    rank <= 19 && form.length() + rank <= 21
}

fn p_free(n: u64, p: u64) -> u64 {
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n
}

pub fn boundary_test(rank: u32, form: &FiniteQuadraticForm) -> Result<EmbeddingVerdict> {
    boundary_test_with(rank, form, &Conventions::default())
}

pub fn boundary_test_with(rank: u32, form: &FiniteQuadraticForm, conv: &Conventions) -> Result<EmbeddingVerdict> {
    let profile = form.length_profile();
    if rank > 19 || profile.total_length + rank != EmbeddingTarget::RANK {
        return Err(Error::OffBoundary { rank, length: profile.total_length });
    }
    let order = form.order();
    let boundary = boundary_primes(rank, form);
    let mut half_split = None;
    for &p in &boundary {
        let class = form.square_class_discriminant(p);
        let m = p_free(order, p);
        if p != 2 {
            let lhs = conv.odd_sign * (m % p) as i64;
            if legendre(lhs * class.unit as i64, p as i64) != 1 {
                return Ok(EmbeddingVerdict::FailsOddPrime(p));
            }
            continue;
        }
        // a -1/2 split is preferred so the label does not depend on generators
        let values = form.half_split_values();
        let sign = if values.contains(&Q::new(3, 2)) && conv.accept_minus_half {
            Some(HalfSplit::Minus)
        } else if values.contains(&Q::new(1, 2)) && conv.accept_plus_half {
            Some(HalfSplit::Plus)
        } else {
            None
        };
        if sign.is_some() {
            half_split = sign;
            continue;
        }
        let prod = ((m % 8) * class.unit % 8) as i64;
        let ok = match conv.two_adic {
            TwoAdicRule::PlusMinus => prod == 1 || prod == 7,
            TwoAdicRule::Exact(s) => (s * prod).rem_euclid(8) == 1,
        };
        if !ok {
            return Ok(EmbeddingVerdict::FailsTwoAdic);
        }
    }
    Ok(EmbeddingVerdict::EmbedsBoundary { primes: boundary, half_split })
}

pub fn embedding_verdict(rank: u32, form: &FiniteQuadraticForm) -> EmbeddingVerdict {
    embedding_verdict_with(rank, form, &Conventions::default())
}

pub fn embedding_verdict_with(rank: u32, form: &FiniteQuadraticForm, conv: &Conventions) -> EmbeddingVerdict {
    if let Err(v) = length_precondition(rank, form) {
        return v;
    }
    if embeds_by_corollary(rank, form) {
        return EmbeddingVerdict::EmbedsByCorollary;
    }
    boundary_test_with(rank, form, conv).expect("length equals 22 - rank here")
}

/// Primes at which `l(form_p) = 22 - rank`.
pub fn boundary_primes(rank: u32, form: &FiniteQuadraticForm) -> Vec<u64> {
    form.length_profile()
        .per_prime
        .iter()
        .filter(|(_, &l)| l + rank == EmbeddingTarget::RANK)
        .map(|(&p, _)| p)
        .collect()
}
