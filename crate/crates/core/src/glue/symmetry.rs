//! The symmetry group of a configuration acting on its discriminant group:
//! permutations of equal summands combined with diagram automorphisms of
//! each summand (`A_n` and `E6` negation, `D_n` spinor swap, `D4` triality).

use std::collections::HashMap;

use super::Layout;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Exchange coordinates `c` and `c + 1`.
    Swap(usize),
    /// Apply the `k`-th diagram automorphism at coordinate `c`.
    Aut(usize, usize),
}

#[derive(Debug, Clone)]
pub struct Symmetry {
    enabled: bool,
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

/// Accepts only one element per orbit of the pointwise stabilizer of a
/// subgroup: inside each class of coordinates carrying identical columns,
/// values must be minimal under the column stabilizer and non-decreasing.
pub(crate) struct PointwiseFilter {
    classes: Vec<(Vec<usize>, Vec<u8>)>,
}

impl PointwiseFilter {
    pub(crate) fn accepts(&self, layout: &Layout, x: u32) -> bool {
        for (coords, minmap) in &self.classes {
            let mut prev = 0u8;
            for &c in coords {
                let v = layout.digit(x, c);
                if minmap[v as usize] != v || v < prev {
                    return false;
                }
                prev = v;
            }
        }
        true
    }
}

impl Symmetry {
    pub fn new(layout: &Layout, enabled: bool) -> Self {
        let mut block_of = Vec::with_capacity(layout.len());
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for c in 0..layout.len() {
            let same = enabled && c > 0 && layout.local(c).ty() == layout.local(c - 1).ty();
            if !same {
                blocks.push(Vec::new());
            }
            blocks.last_mut().unwrap().push(c);
            block_of.push(blocks.len() - 1);
        }
        Symmetry { enabled, block_of, blocks }
    }

    pub fn enabled(&self) -> bool {
        self.enabled
    }

    fn auts<'a>(&self, layout: &'a Layout, c: usize) -> &'a [Vec<u8>] {
        let all = layout.local(c).automorphisms();
        if self.enabled {
            all
        } else {
            &all[..1]
        }
    }

    fn orbit_min(&self, layout: &Layout, c: usize, v: u8) -> u8 {
        self.auts(layout, c).iter().map(|s| s[v as usize]).min().unwrap()
    }

    pub fn canonical_element(&self, layout: &Layout, x: u32) -> u32 {
        let mut digits = layout.decode(x);
        for block in &self.blocks {
            let mut vals: Vec<u8> = block.iter().map(|&c| self.orbit_min(layout, c, digits[c])).collect();
            vals.sort();
            for (&c, v) in block.iter().zip(vals) {
                digits[c] = v;
            }
        }
        layout.encode(&digits)
    }

    pub fn is_canonical_element(&self, layout: &Layout, x: u32) -> bool {
        self.canonical_element(layout, x) == x
    }

    pub fn element_orbit_size(&self, layout: &Layout, x: u32) -> u64 {
        let mut total = 1u64;
        for block in &self.blocks {
            let mut counts: HashMap<u8, u64> = HashMap::new();
            let mut local = 1u64;
            for &c in block {
                let v = self.orbit_min(layout, c, layout.digit(x, c));
                *counts.entry(v).or_default() += 1;
                let mut img: Vec<u8> = self.auts(layout, c).iter().map(|s| s[v as usize]).collect();
                img.sort();
                img.dedup();
                local *= img.len() as u64;
            }
            let mut multinomial = 1u64;
            let mut placed = 0u64;
            for k in counts.values() {
                for i in 1..=*k {
                    placed += 1;
                    multinomial = multinomial * placed / i;
                }
            }
            total *= multinomial * local;
        }
        total
    }

    /// Generators of the group, as moves on elements.
    pub fn generators(&self, layout: &Layout) -> Vec<Move> {
        let mut out = Vec::new();
        for block in &self.blocks {
            for w in block.windows(2) {
                out.push(Move::Swap(w[0]));
            }
            let c = block[0];
            for k in 1..self.auts(layout, c).len() {
                out.push(Move::Aut(c, k));
            }
        }
        out
    }

    pub fn apply(&self, layout: &Layout, mv: Move, x: u32) -> u32 {
        let mut d = layout.decode(x);
        match mv {
            Move::Swap(c) => d.swap(c, c + 1),
            Move::Aut(c, k) => d[c] = self.auts(layout, c)[k][d[c] as usize],
        }
        layout.encode(&d)
    }

    fn columns(layout: &Layout, h: &[u32]) -> Vec<Vec<u8>> {
        (0..layout.len()).map(|c| h.iter().map(|&x| layout.digit(x, c)).collect()).collect()
    }

    pub(crate) fn pointwise_filter(&self, layout: &Layout, h: &[u32]) -> PointwiseFilter {
        let cols = Self::columns(layout, h);
        let mut classes: Vec<(Vec<usize>, Vec<u8>)> = Vec::new();
        let mut index: HashMap<(usize, &[u8]), usize> = HashMap::new();
        for c in 0..layout.len() {
            let key = (self.block_of[c], cols[c].as_slice());
            let slot = *index.entry(key).or_insert_with(|| {
                let stab: Vec<&Vec<u8>> = self
                    .auts(layout, c)
                    .iter()
                    .filter(|s| cols[c].iter().all(|&v| s[v as usize] == v))
                    .collect();
                let minmap = (0..layout.local(c).size())
                    .map(|v| stab.iter().map(|s| s[v]).min().unwrap())
                    .collect();
                classes.push((Vec::new(), minmap));
                classes.len() - 1
            });
            classes[slot].0.push(c);
        }
        PointwiseFilter { classes }
    }

    /// A key that agrees on equivalent subgroups.
    pub(crate) fn invariant(&self, layout: &Layout, h: &[u32]) -> Vec<u32> {
        if !self.enabled {
            return h.to_vec();
        }
        let sep = u32::MAX;
        let mut types: Vec<Vec<u32>> = h
            .iter()
            .map(|&x| {
                let mut t = Vec::new();
                for block in &self.blocks {
                    let mut v: Vec<u32> = block
                        .iter()
                        .map(|&c| self.orbit_min(layout, c, layout.digit(x, c)) as u32)
                        .collect();
                    v.sort();
                    t.extend(v);
                    t.push(sep);
                }
                t
            })
            .collect();
        types.sort();
        let cols = Self::columns(layout, h);
        let mut cinv: Vec<Vec<u32>> = (0..layout.len())
            .map(|c| {
                let mut v: Vec<u32> = cols[c].iter().map(|&a| self.orbit_min(layout, c, a) as u32).collect();
                v.sort();
                v.insert(0, self.block_of[c] as u32);
                v
            })
            .collect();
        cinv.sort();
        let mut key = vec![h.len() as u32];
        for t in types {
            key.extend(t);
        }
        for c in cinv {
            key.push(sep);
            key.extend(c);
        }
        key
    }

    /// Decides whether some group element maps the subgroup `h1` onto `h2`.
    pub(crate) fn equivalent(&self, layout: &Layout, h1: &[u32], h2: &[u32]) -> bool {
        if h1.len() != h2.len() {
            return false;
        }
        if !self.enabled {
            return h1 == h2;
        }
        let m = h1.len();
        let cols1 = Self::columns(layout, h1);
        let cols2 = Self::columns(layout, h2);
        let cinv = |cols: &Vec<Vec<u8>>, c: usize| {
            let mut v: Vec<u8> = cols[c].iter().map(|&a| self.orbit_min(layout, c, a)).collect();
            v.sort();
            v
        };
        let inv1: Vec<Vec<u8>> = (0..layout.len()).map(|c| cinv(&cols1, c)).collect();
        let inv2: Vec<Vec<u8>> = (0..layout.len()).map(|c| cinv(&cols2, c)).collect();
        // greedy information set of h1
        let mut info = Vec::new();
        let mut keys: Vec<Vec<u8>> = vec![Vec::new(); m];
        let distinct = |keys: &Vec<Vec<u8>>| {
            let mut k = keys.clone();
            k.sort();
            k.dedup();
            k.len()
        };
        while distinct(&keys) < m {
            let mut best = (0, 0);
            for c in 0..layout.len() {
                if info.contains(&c) {
                    continue;
                }
                let trial: Vec<Vec<u8>> = keys
                    .iter()
                    .zip(&cols1[c])
                    .map(|(k, &v)| {
                        let mut k = k.clone();
                        k.push(v);
                        k
                    })
                    .collect();
                let d = distinct(&trial);
                if d > best.0 {
                    best = (d, c);
                }
            }
            let c = best.1;
            for (k, &v) in keys.iter_mut().zip(&cols1[c]) {
                k.push(v);
            }
            info.push(c);
        }
        let ctx = Ctx { sym: self, layout, cols1: &cols1, cols2: &cols2, inv1: &inv1, inv2: &inv2, info: &info };
        let mut used = vec![false; layout.len()];
        let mut k1 = vec![Vec::new(); m];
        let mut k2 = vec![Vec::new(); m];
        ctx.search(0, &mut used, &mut k1, &mut k2)
    }
}

struct Ctx<'a> {
    sym: &'a Symmetry,
    layout: &'a Layout,
    cols1: &'a [Vec<u8>],
    cols2: &'a [Vec<u8>],
    inv1: &'a [Vec<u8>],
    inv2: &'a [Vec<u8>],
    info: &'a [usize],
}

impl Ctx<'_> {
    fn search(&self, depth: usize, used: &mut [bool], k1: &mut [Vec<u8>], k2: &mut [Vec<u8>]) -> bool {
        if depth == self.info.len() {
            return self.finish(k1, k2);
        }
        let c = self.info[depth];
        let block = &self.sym.blocks[self.sym.block_of[c]];
        let auts = self.sym.auts(self.layout, c);
        for &d in block {
            if used[d] || self.inv1[c] != self.inv2[d] {
                continue;
            }
            for s in auts {
                for (k, &v) in k1.iter_mut().zip(&self.cols1[c]) {
                    k.push(s[v as usize]);
                }
                for (k, &v) in k2.iter_mut().zip(&self.cols2[d]) {
                    k.push(v);
                }
                let mut a: Vec<&Vec<u8>> = k1.iter().collect();
                let mut b: Vec<&Vec<u8>> = k2.iter().collect();
                a.sort();
                b.sort();
                if a == b {
                    used[d] = true;
                    if self.refines(depth + 1, used, k1, k2) && self.search(depth + 1, used, k1, k2) {
                        return true;
                    }
                    used[d] = false;
                }
                for k in k1.iter_mut() {
                    k.pop();
                }
                for k in k2.iter_mut() {
                    k.pop();
                }
            }
        }
        false
    }

    /// Unmatched columns must agree block by block on the multiset of
    /// (row key, value class) pairs.
    fn refines(&self, depth: usize, used: &[bool], k1: &[Vec<u8>], k2: &[Vec<u8>]) -> bool {
        let mut ids: HashMap<&Vec<u8>, u32> = HashMap::new();
        for k in k1 {
            let n = ids.len() as u32;
            ids.entry(k).or_insert(n);
        }
        let id1: Vec<u32> = k1.iter().map(|k| ids[k]).collect();
        let mut id2 = Vec::with_capacity(k2.len());
        for k in k2 {
            match ids.get(k) {
                Some(&i) => id2.push(i),
                None => return false,
            }
        }
        let signature = |c: usize, cols: &[Vec<u8>], id: &[u32]| {
            let mut v: Vec<(u32, u8)> =
                id.iter().zip(&cols[c]).map(|(&i, &x)| (i, self.sym.orbit_min(self.layout, c, x))).collect();
            v.sort_unstable();
            v
        };
        let matched = &self.info[..depth];
        for block in &self.sym.blocks {
            let mut a: Vec<Vec<(u32, u8)>> = block
                .iter()
                .filter(|c| !matched.contains(c))
                .map(|&c| signature(c, self.cols1, &id1))
                .collect();
            let mut b: Vec<Vec<(u32, u8)>> =
                block.iter().filter(|&&d| !used[d]).map(|&d| signature(d, self.cols2, &id2)).collect();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return false;
            }
        }
        true
    }

    fn finish(&self, k1: &[Vec<u8>], k2: &[Vec<u8>]) -> bool {
        let pos: HashMap<&Vec<u8>, usize> = k2.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let psi: Vec<usize> = k1.iter().map(|k| pos[k]).collect();
        let canon = |c: usize, col: Vec<u8>| -> Vec<u8> {
            self.sym
                .auts(self.layout, c)
                .iter()
                .map(|s| col.iter().map(|&v| s[v as usize]).collect::<Vec<u8>>())
                .min()
                .unwrap()
        };
        for block in &self.sym.blocks {
            let mut a: Vec<Vec<u8>> = block.iter().map(|&c| canon(c, self.cols1[c].clone())).collect();
            let mut b: Vec<Vec<u8>> = block
                .iter()
                .map(|&d| canon(d, psi.iter().map(|&i| self.cols2[d][i]).collect()))
                .collect();
            a.sort();
            b.sort();
            if a != b {
                return false;
            }
        }
        true
    }
}
