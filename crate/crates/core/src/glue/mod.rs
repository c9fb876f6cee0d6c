//! Glue elements in the discriminant group of an ADE configuration.
//!
//! Each summand's discriminant group is encoded by small integer codes:
//! `A_n` by `j mod n+1`, `E6` by `j mod 3`, `E7` by `j mod 2`, and `D_n` by
//! `0`, `1` (spinor), `2` (vector), `3` (cospinor). For odd `n` the `D_n`
//! codes add in `Z/4`, for even `n` as bit vectors.

mod search;
mod symmetry;

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fqf::{mod2, Q};
use crate::lattice::{AdeConfiguration, AdeType, Family};

pub use search::{
    generated_subgroup, locate_subgroup, overlattice_candidates, search_isotropic_subgroups, IsotropicSubgroup, OverlatticeCandidate,
    SearchLimits, DEFAULT_BUDGET,
};
pub use symmetry::Symmetry;

/// Discriminant group of one summand with its q-values, coset minima and
/// diagram automorphisms.
#[derive(Debug, Clone)]
pub struct LocalGroup {
    ty: AdeType,
    add: Vec<Vec<u8>>,
    order: Vec<u32>,
    q: Vec<Q>,
    norm: Vec<Q>,
    auts: Vec<Vec<u8>>,
}

impl LocalGroup {
    pub fn new(ty: AdeType) -> Self {
        let n = ty.index() as i64;
        let size = ty.discriminant_order() as usize;
        let mut add = vec![vec![0u8; size]; size];
        let even_d = ty.family() == Family::D && n % 2 == 0;
        for (a, row) in add.iter_mut().enumerate() {
            for (b, v) in row.iter_mut().enumerate() {
                *v = if even_d { (a ^ b) as u8 } else { ((a + b) % size) as u8 };
            }
        }
        let order = (0..size)
            .map(|a| if even_d { if a == 0 { 1 } else { 2 } } else { (size / a.gcd(&size)) as u32 })
            .collect();
        let q = (0..size as i64)
            .map(|j| {
                mod2(match (ty.family(), n) {
                    (Family::A, _) => Q::new(-j * j * n, n + 1),
                    (Family::D, _) if j == 0 => Q::from_integer(0),
                    (Family::D, _) if j == 2 => Q::from_integer(-1),
                    (Family::D, _) => Q::new(-n, 4),
                    (Family::E, 6) => Q::new(-4 * j * j, 3),
                    (Family::E, 7) => Q::new(-3 * j * j, 2),
                    _ => Q::from_integer(0),
                })
            })
            .collect();
        let norm = (0..size as u32).map(|j| min_coset_norm(ty, j).unwrap()).collect();
        let ident: Vec<u8> = (0..size as u8).collect();
        let mut auts = vec![ident.clone()];
        match ty.family() {
            Family::A if n >= 2 => auts.push((0..size).map(|j| ((size - j) % size) as u8).collect()),
            Family::E if n == 6 => auts.push(vec![0, 2, 1]),
            Family::D if n == 4 => {
                for p in [[1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]] {
                    auts.push(vec![0, p[0], p[1], p[2]]);
                }
            }
            Family::D => auts.push(vec![0, 3, 2, 1]),
            _ => {}
        }
        LocalGroup { ty, add, order, q, norm, auts }
    }

    pub fn ty(&self) -> AdeType {
        self.ty
    }

    pub fn size(&self) -> usize {
        self.add.len()
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    pub fn order_of(&self, a: u8) -> u32 {
        self.order[a as usize]
    }

    pub fn q(&self, a: u8) -> Q {
        self.q[a as usize]
    }

    pub fn norm(&self, a: u8) -> Q {
        self.norm[a as usize]
    }

    /// Diagram automorphisms acting on codes; the identity comes first.
    pub fn automorphisms(&self) -> &[Vec<u8>] {
        &self.auts
    }

    /// Smallest code in the automorphism orbit of `a`.
    pub fn orbit_min(&self, a: u8) -> u8 {
        self.auts.iter().map(|s| s[a as usize]).min().unwrap()
    }

    pub fn orbit_size(&self, a: u8) -> u64 {
        let mut v: Vec<u8> = self.auts.iter().map(|s| s[a as usize]).collect();
        v.sort();
        v.dedup();
        v.len() as u64
    }

    /// Coordinates of a code in the generators used by `ade_discriminant_form`.
    pub fn form_coordinates(&self, a: u8) -> Vec<i64> {
        match (self.ty.family(), self.ty.index()) {
            (Family::E, 8) => vec![],
            (Family::D, n) if n % 2 == 0 => vec![(a & 1) as i64, (a >> 1 & 1) as i64],
            _ => vec![a as i64],
        }
    }
}

/// Least `|v.v|` over the coset `v + L` of the class `j` in `L^v / L`.
pub fn min_coset_norm(ty: AdeType, j: u32) -> Result<Q> {
    let size = ty.discriminant_order() as u32;
    if j >= size {
        return Err(Error::Argument(format!("class {j} out of range for {ty}")));
    }
    if j == 0 {
        return Ok(Q::from_integer(0));
    }
    let n = ty.index() as i64;
    let j = j as i64;
    Ok(match ty.family() {
        Family::A => Q::new(j * (n + 1 - j), n + 1),
        Family::D if j == 2 => Q::from_integer(1),
        Family::D => Q::new(n, 4),
        Family::E if n == 6 => Q::new(4, 3),
        Family::E => Q::new(3, 2),
    })
}

/// Mixed-radix encoding of the discriminant group of a configuration.
#[derive(Debug, Clone)]
pub struct Layout {
    config: AdeConfiguration,
    locals: Vec<Arc<LocalGroup>>,
    stride: Vec<u32>,
    size: u32,
}

impl Layout {
    pub fn new(config: &AdeConfiguration) -> Self {
        let mut locals: Vec<Arc<LocalGroup>> = Vec::new();
        for &t in config.summands() {
            match locals.last() {
                Some(l) if l.ty == t => locals.push(l.clone()),
                _ => locals.push(Arc::new(LocalGroup::new(t))),
            }
        }
        let mut stride = Vec::with_capacity(locals.len());
        let mut size = 1u32;
        for l in &locals {
            stride.push(size);
            size *= l.size() as u32;
        }
        Layout { config: config.clone(), locals, stride, size }
    }

    pub fn config(&self) -> &AdeConfiguration {
        &self.config
    }

    pub fn len(&self) -> usize {
        self.locals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locals.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn local(&self, c: usize) -> &LocalGroup {
        &self.locals[c]
    }

    pub fn digit(&self, x: u32, c: usize) -> u8 {
        ((x / self.stride[c]) % self.locals[c].size() as u32) as u8
    }

    pub fn decode(&self, x: u32) -> Vec<u8> {
        (0..self.len()).map(|c| self.digit(x, c)).collect()
    }

    pub fn encode(&self, digits: &[u8]) -> u32 {
        digits.iter().zip(&self.stride).map(|(&d, &s)| d as u32 * s).sum()
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let mut out = 0;
        for c in 0..self.len() {
            out += self.locals[c].add(self.digit(x, c), self.digit(y, c)) as u32 * self.stride[c];
        }
        out
    }

    pub fn order_of(&self, x: u32) -> u32 {
        (0..self.len()).fold(1, |acc, c| acc.lcm(&self.locals[c].order_of(self.digit(x, c))))
    }

    pub fn element(&self, x: u32) -> GlueElement {
        GlueElement::from_digits(self, self.decode(x))
    }

    /// Coordinates of an element in the generators of the configuration's
    /// discriminant form.
    pub fn form_coordinates(&self, x: u32) -> Vec<i64> {
        (0..self.len()).flat_map(|c| self.locals[c].form_coordinates(self.digit(x, c))).collect()
    }

    /// Admissibility of every element, indexed by its code.
    pub fn admissible_table(&self) -> Vec<bool> {
        let n = self.len();
        let den = self
            .locals
            .iter()
            .fold(1i64, |acc, l| acc.lcm(&(l.size() as i64)).lcm(&4));
        let qs: Vec<Vec<i64>> = self
            .locals
            .iter()
            .map(|l| (0..l.size()).map(|a| (l.q[a] * den).to_integer()).collect())
            .collect();
        let ns: Vec<Vec<i64>> = self
            .locals
            .iter()
            .map(|l| (0..l.size()).map(|a| (l.norm[a] * den).to_integer()).collect())
            .collect();
        let mut out = vec![false; self.size as usize];
        let mut digits = vec![0usize; n];
        let (mut qsum, mut nsum) = (0i64, 0i64);
        for (x, slot) in out.iter_mut().enumerate() {
            if x > 0 {
                let mut c = 0;
                loop {
                    let old = digits[c];
                    let new = if old + 1 == self.locals[c].size() { 0 } else { old + 1 };
                    qsum += qs[c][new] - qs[c][old];
                    nsum += ns[c][new] - ns[c][old];
                    digits[c] = new;
                    if new != 0 {
                        break;
                    }
                    c += 1;
                }
            }
            if x > 0 && qsum.rem_euclid(2 * den) == 0 && nsum > 2 * den {
                *slot = self.order_of(x as u32) <= 8;
            }
        }
        out
    }
}

/// An element of the discriminant group of a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GlueElement {
    components: Vec<u8>,
    order: u32,
    q_value: Q,
    min_coset_norm: Q,
}

impl GlueElement {
    fn from_digits(layout: &Layout, components: Vec<u8>) -> Self {
        let mut order = 1u32;
        let mut qv = Q::from_integer(0);
        let mut norm = Q::from_integer(0);
        for (c, &d) in components.iter().enumerate() {
            let l = layout.local(c);
            order = order.lcm(&l.order_of(d));
            qv += l.q(d);
            norm += l.norm(d);
        }
        GlueElement { components, order, q_value: mod2(qv), min_coset_norm: norm }
    }

    /// Builds an element from one code per summand (canonical summand order).
    pub fn new(config: &AdeConfiguration, components: Vec<u8>) -> Result<Self> {
        let layout = Layout::new(config);
        if components.len() != layout.len() {
            return Err(Error::Argument(format!(
                "{} components given for {} summands",
                components.len(),
                layout.len()
            )));
        }
        for (c, &d) in components.iter().enumerate() {
            if d as usize >= layout.local(c).size() {
                return Err(Error::Argument(format!("code {d} out of range for summand {c}")));
            }
        }
        Ok(Self::from_digits(&layout, components))
    }

    pub fn components(&self) -> &[u8] {
        &self.components
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn q_value(&self) -> Q {
        self.q_value
    }

    pub fn min_coset_norm(&self) -> Q {
        self.min_coset_norm
    }

    pub fn is_admissible(&self) -> bool {
        self.q_value == Q::from_integer(0) && self.min_coset_norm > Q::from_integer(2) && self.order <= 8
    }
}

impl fmt::Display for GlueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

pub fn is_admissible(e: &GlueElement) -> bool {
    e.is_admissible()
}

/// Admissible elements up to symmetry, each with the size of its orbit.
pub fn admissible_elements(config: &AdeConfiguration) -> Vec<(GlueElement, u64)> {
    let layout = Layout::new(config);
    let sym = Symmetry::new(&layout, true);
    let table = layout.admissible_table();
    let mut out: Vec<(GlueElement, u64)> = (0..layout.size())
        .filter(|&x| table[x as usize] && sym.is_canonical_element(&layout, x))
        .map(|x| (layout.element(x), sym.element_orbit_size(&layout, x)))
        .collect();
    out.sort_by_key(|a| search::element_order_key(&a.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> AdeConfiguration {
        s.parse().unwrap()
    }

    #[test]
    fn closed_form_minima() {
        assert_eq!(min_coset_norm(AdeType::a(3), 1).unwrap(), Q::new(3, 4));
        assert_eq!(min_coset_norm(AdeType::a(7), 4).unwrap(), Q::from_integer(2));
        assert_eq!(min_coset_norm(AdeType::e(7), 1).unwrap(), Q::new(3, 2));
        assert!(min_coset_norm(AdeType::a(2), 3).is_err());
    }

    #[test]
    fn local_q_values() {
        let a1 = LocalGroup::new(AdeType::a(1));
        assert_eq!(a1.q(1), Q::new(3, 2));
        let d5 = LocalGroup::new(AdeType::d(5));
        assert_eq!(d5.q(2), Q::from_integer(1));
        assert_eq!(d5.q(1), d5.q(3));
        let e6 = LocalGroup::new(AdeType::e(6));
        assert_eq!(e6.q(1), Q::new(2, 3));
        assert_eq!(e6.q(2), Q::new(2, 3));
        let e7 = LocalGroup::new(AdeType::e(7));
        assert_eq!(e7.q(1), Q::new(1, 2));
        for t in [AdeType::a(5), AdeType::d(4), AdeType::d(7), AdeType::e(6)] {
            let l = LocalGroup::new(t);
            for a in 0..l.size() as u8 {
                assert_eq!(l.q(a), l.norm(a) * -1 - (l.norm(a) * -1 / 2).floor() * 2, "{t} {a}");
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        let e = GlueElement::new(&cfg("A1^8"), vec![1; 8]).unwrap();
        assert!(e.is_admissible());
        assert_eq!(e.q_value(), Q::from_integer(0));
        let e = GlueElement::new(&cfg("A1^4"), vec![1; 4]).unwrap();
        assert!(!e.is_admissible());
        let e = GlueElement::new(&cfg("A7"), vec![4]).unwrap();
        assert_eq!(e.q_value(), Q::from_integer(0));
        assert!(!is_admissible(&e));
    }

    #[test]
    fn admissible_orbits() {
        let a = admissible_elements(&cfg("A1^8"));
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].0.components(), &[1; 8]);
        assert_eq!(a[0].1, 1);
        let a = admissible_elements(&cfg("A2^6"));
        assert_eq!(a.len(), 1);
        assert!(a[0].0.components().iter().all(|&c| c != 0));
        assert_eq!(a[0].1, 64);
        assert!(admissible_elements(&cfg("A1^7")).is_empty());
        let a = admissible_elements(&cfg("A1^2+A7^2"));
        assert!(a.iter().any(|(e, _)| e.order() == 4));
    }

    #[test]
    fn table_matches_elements() {
        for name in ["A1^9", "A3^2+A1^3", "D4^2+A1^2", "A5+A2^2+A1", "E7+D6+A1"] {
            let layout = Layout::new(&cfg(name));
            let t = layout.admissible_table();
            for x in 0..layout.size() {
                assert_eq!(t[x as usize], layout.element(x).is_admissible(), "{name} {x}");
            }
        }
    }
}
