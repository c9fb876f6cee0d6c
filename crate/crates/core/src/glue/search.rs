//! Enumeration of root-free isotropic subgroups up to symmetry.
//!
//! Subgroups are grown one prime step at a time: from a representative `H`
//! we adjoin an admissible `x` with `p x` in `H` and keep `<H, x>` when all
//! of its new elements are admissible. Candidates are filtered by the
//! pointwise stabilizer of `H`, then de-duplicated against earlier
//! representatives by an invariant key and an explicit equivalence test.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::symmetry::Symmetry;
use super::{GlueElement, Layout};
use crate::error::{Error, Result};
use crate::fqf::{ade_discriminant_form, factorize, FiniteQuadraticForm, Q};
use crate::lattice::AdeConfiguration;

/// Default cap on the number of subgroup candidates examined per
/// configuration.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub budget: u64,
    pub symmetry: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { budget: DEFAULT_BUDGET, symmetry: true }
    }
}

impl SearchLimits {
    pub fn with_budget(budget: u64) -> Self {
        SearchLimits { budget, ..Self::default() }
    }
}

/// A subgroup `H` of the discriminant group all of whose nonzero elements
/// are admissible glue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropicSubgroup {
    generators: Vec<GlueElement>,
    elements: Vec<GlueElement>,
    codes: Vec<u32>,
    structure: Vec<u64>,
    maximal: bool,
}

impl IsotropicSubgroup {
    pub fn generators(&self) -> &[GlueElement] {
        &self.generators
    }

    /// Nonzero members.
    pub fn elements(&self) -> &[GlueElement] {
        &self.elements
    }

    /// Codes of all members including zero, sorted.
    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    pub fn order(&self) -> u64 {
        self.codes.len() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.codes.len() == 1
    }

    /// Invariant factors `d_1 | d_2 | ...`.
    pub fn structure(&self) -> &[u64] {
        &self.structure
    }

    /// No admissible element extends this subgroup.
    pub fn is_maximal(&self) -> bool {
        self.maximal
    }

    /// Group structure such as `1`, `Z/8` or `(Z/2)^2 x Z/4`.
    pub fn description(&self) -> String {
        if self.structure.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.structure.len() {
            let d = self.structure[i];
            let mut j = i;
            while j < self.structure.len() && self.structure[j] == d {
                j += 1;
            }
            parts.push(if j - i == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{}", j - i) });
            i = j;
        }
        parts.join(" x ")
    }
}

impl fmt::Display for IsotropicSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description())?;
        if !self.generators.is_empty() {
            f.write_str(" = <")?;
            for (i, g) in self.generators.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{g}")?;
            }
            f.write_str(">")?;
        }
        Ok(())
    }
}

/// An overlattice `L' = L + H` of the configuration's root lattice.
#[derive(Debug, Clone)]
pub struct OverlatticeCandidate {
    pub base: AdeConfiguration,
    pub subgroup: IsotropicSubgroup,
    pub induced_form: FiniteQuadraticForm,
    pub index: u64,
}

pub(crate) fn element_order_key(e: &GlueElement) -> (u32, Q, Vec<u8>) {
    (e.order(), e.min_coset_norm(), e.components().to_vec())
}

/// Invariant factors of a finite abelian group from its element orders.
fn structure_from_orders(orders: &[u32]) -> Vec<u64> {
    let n = orders.len() as u64;
    let mut exps_by_prime = Vec::new();
    for (p, _) in factorize(n) {
        let mut exps = Vec::new();
        let mut prev = 0u32;
        for k in 1.. {
            let pk = p.pow(k) as u32;
            let count = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
            let r = factorize(count).into_iter().find(|f| f.0 == p).map_or(0, |f| f.1);
            let ge_k = r - prev;
            if ge_k == 0 {
                break;
            }
            exps.push(ge_k);
            prev = r;
        }
        // exps[k-1] = number of cyclic factors of order at least p^k
        let mut list = Vec::new();
        for (k, &cnt) in exps.iter().enumerate() {
            let next = exps.get(k + 1).copied().unwrap_or(0);
            for _ in 0..cnt - next {
                list.push(p.pow(k as u32 + 1));
            }
        }
        exps_by_prime.push(list);
    }
    let len = exps_by_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for v in exps_by_prime {
        let mut v = v;
        v.sort();
        for (k, &o) in v.iter().rev().enumerate() {
            out[len - 1 - k] *= o;
        }
    }
    out
}

struct Rep {
    elems: Vec<u32>,
    gens: Vec<u32>,
    maximal: bool,
}

fn build_subgroup(layout: &Layout, gens: &[u32], elems: Vec<u32>, maximal: bool) -> IsotropicSubgroup {
    let orders: Vec<u32> = elems.iter().map(|&x| layout.order_of(x)).collect();
    IsotropicSubgroup {
        generators: gens.iter().map(|&x| layout.element(x)).collect(),
        elements: elems[1..].iter().map(|&x| layout.element(x)).collect(),
        codes: elems,
        structure: structure_from_orders(&orders),
        maximal,
    }
}

/// Codes of the subgroup generated by `gens`, sorted, zero first.
fn closure(layout: &Layout, gens: &[u32]) -> Vec<u32> {
    let mut set: HashSet<u32> = HashSet::from([0]);
    let mut frontier = vec![0u32];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = layout.add(x, g);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    let mut v: Vec<u32> = set.into_iter().collect();
    v.sort_unstable();
    v
}

pub(crate) struct SearchOutcome {
    pub layout: Layout,
    pub symmetry: Symmetry,
    reps: Vec<Rep>,
}

pub(crate) fn run_search(config: &AdeConfiguration, limits: SearchLimits) -> Result<SearchOutcome> {
    let layout = Layout::new(config);
    let symmetry = Symmetry::new(&layout, limits.symmetry);
    let table = layout.admissible_table();
    let mut adm: Vec<u32> = (0..layout.size()).filter(|&x| table[x as usize]).collect();
    let keys: HashMap<u32, (u32, Q, Vec<u8>)> =
        adm.iter().map(|&x| (x, element_order_key(&layout.element(x)))).collect();
    adm.sort_by(|a, b| keys[a].cmp(&keys[b]));

    let mut reps = vec![Rep { elems: vec![0], gens: vec![], maximal: true }];
    let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    buckets.insert(symmetry.invariant(&layout, &[0]), vec![0]);
    let mut nodes = 0u64;
    let mut r = 0;
    while r < reps.len() {
        let h = reps[r].elems.clone();
        let filter = symmetry.pointwise_filter(&layout, &h);
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut extended = false;
        for &x in &adm {
            if h.binary_search(&x).is_ok() || !filter.accepts(&layout, x) {
                continue;
            }
            let mut multiples = vec![x];
            let mut y = layout.add(x, x);
            while h.binary_search(&y).is_err() {
                multiples.push(y);
                y = layout.add(y, x);
            }
            let k = multiples.len() as u64 + 1;
            if factorize(k).len() != 1 || factorize(k)[0].1 != 1 {
                continue;
            }
            let mut grown = h.clone();
            let mut ok = true;
            'close: for &m in &multiples {
                for &g in &h {
                    let e = layout.add(g, m);
                    if !table[e as usize] {
                        ok = false;
                        break 'close;
                    }
                    grown.push(e);
                }
            }
            if !ok {
                continue;
            }
            extended = true;
            grown.sort_unstable();
            if !seen.insert(grown.clone()) {
                continue;
            }
            nodes += 1;
            if nodes > limits.budget {
                return Err(Error::SearchIncomplete { config: config.to_string(), budget: limits.budget });
            }
            let key = symmetry.invariant(&layout, &grown);
            let bucket = buckets.entry(key).or_default();
            if bucket.iter().any(|&i| symmetry.equivalent(&layout, &reps[i].elems, &grown)) {
                continue;
            }
            bucket.push(reps.len());
            let mut gens = reps[r].gens.clone();
            gens.push(x);
            reps.push(Rep { elems: grown, gens, maximal: true });
        }
        reps[r].maximal = !extended;
        r += 1;
    }
    Ok(SearchOutcome { layout, symmetry, reps })
}

impl SearchOutcome {
    pub(crate) fn subgroups(&self) -> Vec<IsotropicSubgroup> {
        self.reps.iter().map(|r| build_subgroup(&self.layout, &r.gens, r.elems.clone(), r.maximal)).collect()
    }
}

/// All root-free isotropic subgroups up to symmetry, trivial one first.
pub fn search_isotropic_subgroups(
    config: &AdeConfiguration,
    limits: SearchLimits,
) -> Result<Vec<IsotropicSubgroup>> {
    Ok(run_search(config, limits)?.subgroups())
}

/// The subgroup generated by the given component vectors. Fails when a
/// nonzero member is not admissible glue.
pub fn generated_subgroup(config: &AdeConfiguration, gens: &[Vec<u8>]) -> Result<IsotropicSubgroup> {
    let layout = Layout::new(config);
    let codes: Vec<u32> = gens
        .iter()
        .map(|g| GlueElement::new(config, g.clone()).map(|_| layout.encode(g)))
        .collect::<Result<_>>()?;
    let elems = closure(&layout, &codes);
    let table = layout.admissible_table();
    if let Some(&bad) = elems[1..].iter().find(|&&x| !table[x as usize]) {
        return Err(Error::NotIsotropic(layout.element(bad).to_string()));
    }
    let maximal = (0..layout.size()).all(|x| {
        elems.binary_search(&x).is_ok() || !table[x as usize] || {
            let grown = closure(&layout, &[codes.as_slice(), &[x]].concat());
            grown[1..].iter().any(|&y| !table[y as usize])
        }
    });
    Ok(build_subgroup(&layout, &codes, elems, maximal))
}

/// Position of the search representative equivalent to `subgroup`.
pub fn locate_subgroup(
    config: &AdeConfiguration,
    subgroup: &IsotropicSubgroup,
    limits: SearchLimits,
) -> Result<Option<usize>> {
    let outcome = run_search(config, limits)?;
    Ok(outcome
        .reps
        .iter()
        .position(|r| outcome.symmetry.equivalent(&outcome.layout, &r.elems, subgroup.codes())))
}

/// Overlattice candidates with their induced forms, trivial one first.
pub fn overlattice_candidates(
    config: &AdeConfiguration,
    limits: SearchLimits,
) -> Result<Vec<OverlatticeCandidate>> {
    let outcome = run_search(config, limits)?;
    let base = ade_discriminant_form(config);
    outcome
        .subgroups()
        .into_iter()
        .zip(&outcome.reps)
        .map(|(subgroup, rep)| {
            let h: Vec<Vec<i64>> = rep.gens.iter().map(|&x| outcome.layout.form_coordinates(x)).collect();
            let induced_form = base.isotropic_quotient(&h)?;
            Ok(OverlatticeCandidate {
                base: config.clone(),
                index: subgroup.order(),
                subgroup,
                induced_form,
            })
        })
        .collect()
}
