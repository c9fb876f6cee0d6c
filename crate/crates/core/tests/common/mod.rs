//! Helpers shared by the oracle tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::HashMap;

use adek3::fqf::Q;
use adek3::glue::{min_coset_norm, LocalGroup};
use adek3::{AdeType, Family};

pub fn rational_inverse(g: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = g.len();
    let mut a: Vec<Vec<Q>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&v| Q::from_integer(v)).collect();
            r.extend((0..n).map(|j| Q::from_integer((i == j) as i64)));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != Q::from_integer(0)).unwrap();
        a.swap(c, p);
        let pivot = a[c][c];
        for v in a[c].iter_mut() {
            *v /= pivot;
        }
        for r in 0..n {
            if r != c && a[r][c] != Q::from_integer(0) {
                let f = a[r][c];
                for k in 0..2 * n {
                    let d = a[c][k] * f;
                    a[r][k] -= d;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// All nonzero integer vectors `k` with `k^T m k <= bound` (Fincke-Pohst).
pub fn short_vectors(m: &[Vec<f64>], bound: f64) -> Vec<Vec<i64>> {
    let n = m.len();
    // m = R^T R, stored as q[i][i] = R_ii^2 and q[i][j] = R_ij / R_ii.
    let mut q = m.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(q: &[Vec<f64>], i: usize, rest: f64, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let n = q.len();
        let c: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
        let r = (rest / q[i][i]).max(0.0).sqrt();
        for v in (c - r - 1e-9).ceil() as i64..=(c + r + 1e-9).floor() as i64 {
            x[i] = v;
            let used = q[i][i] * (v as f64 - c).powi(2);
            if i == 0 {
                if x.iter().any(|&t| t != 0) {
                    out.push(x.clone());
                }
            } else {
                rec(q, i - 1, rest - used, x, out);
            }
        }
        x[i] = 0;
    }
    rec(&q, n - 1, bound, &mut x, &mut out);
    out
}

/// Minimal norm per coset of the dual lattice, keyed by the fractional part
/// of the dual vector in root coordinates.
pub fn coset_minima(ty: AdeType) -> HashMap<Vec<Q>, Q> {
    let g = ty.gram_block();
    let n = g.len();
    let neg: Vec<Vec<i64>> = g.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
    let inv = rational_inverse(&neg);
    let mf: Vec<Vec<f64>> = inv.iter().map(|r| r.iter().map(|v| *v.numer() as f64 / *v.denom() as f64).collect()).collect();
    let mut best: HashMap<Vec<Q>, Q> = HashMap::new();
    best.insert(vec![Q::from_integer(0); n], Q::from_integer(0));
    for k in short_vectors(&mf, 2.5) {
        let coords: Vec<Q> = (0..n).map(|i| (0..n).map(|j| inv[i][j] * k[j]).sum()).collect();
        let norm: Q = (0..n).map(|i| coords[i] * k[i]).sum();
        let key: Vec<Q> = coords.iter().map(|c| c.fract() + if *c < Q::from_integer(0) && !c.is_integer() { 1 } else { 0 }).collect();
        let e = best.entry(key).or_insert(norm);
        if norm < *e {
            *e = norm;
        }
    }
    best
}

/// Compares the closed-form coset minima of `ty` with the shortest vectors of
/// each coset of the dual lattice.
pub fn check_coset_minima(ty: AdeType) -> Result<(), String> {
    let size = ty.discriminant_order() as u32;
    let found = coset_minima(ty);
    if found.len() as u32 != size {
        return Err(format!("{ty}: {} of {size} classes have a vector of norm <= 5/2", found.len()));
    }
    let mut brute: Vec<Q> = found.values().copied().collect();
    let mut closed: Vec<Q> = (0..size).map(|j| min_coset_norm(ty, j).unwrap()).collect();
    brute.sort();
    closed.sort();
    if brute != closed {
        return Err(format!("{ty}: minima {brute:?} vs closed forms {closed:?}"));
    }
    let local = LocalGroup::new(ty);
    for j in 0..size as u8 {
        let s = local.q(j) + local.norm(j);
        if !s.is_integer() || s.to_integer() % 2 != 0 {
            return Err(format!("{ty} class {j}: q does not reduce to minus the norm"));
        }
    }
    if ty.family() == Family::A {
        // the fundamental weight of node j-1 lies in class j
        let n = ty.index() as usize;
        let neg: Vec<Vec<i64>> = ty.gram_block().iter().map(|r| r.iter().map(|v| -v).collect()).collect();
        let inv = rational_inverse(&neg);
        for j in 1..=n {
            let key: Vec<Q> = (0..n).map(|i| inv[i][j - 1].fract()).collect();
            if found[&key] != min_coset_norm(ty, j as u32).unwrap() {
                return Err(format!("{ty} class {j}: closed form is not the minimum of its coset"));
            }
        }
    }
    Ok(())
}
