//! Finite quadratic forms `(A, q)` with `q` valued in `Q/2Z`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::lattice::{AdeConfiguration, AdeType, Family};
use crate::modular::{left_kernel, subquotient, ChainRing};

pub type Q = Rational64;

pub fn mod1(x: Q) -> Q {
    x - x.floor()
}

pub fn mod2(x: Q) -> Q {
    let two = Q::from_integer(2);
    x - (x / two).floor() * two
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// A finite quadratic form presented by independent cyclic generators.
///
/// `q_values[i]` lives in `[0, 2)` and `pairing[i][j]` in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    orders: Vec<u64>,
    q_values: Vec<Q>,
    pairing: Vec<Vec<Q>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthProfile {
    pub total_length: u32,
    pub per_prime: BTreeMap<u64, u32>,
}

impl LengthProfile {
    pub fn at(&self, p: u64) -> u32 {
        self.per_prime.get(&p).copied().unwrap_or(0)
    }
}

/// Orthogonal summand of a p-primary form in a Jordan splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JordanBlock {
    /// `<theta / p^exp>`; `theta` is the numerator of `q`, reduced into
    /// `(-p^exp, p^exp]`.
    Cyclic { exp: u32, theta: i64 },
    /// Even 2-adic block of rank two: hyperbolic `u` or the anisotropic `v`.
    Even { exp: u32, hyperbolic: bool },
}

/// Unit part of the determinant of the p-adic lattice attached to a form.
/// For odd `p` the unit is reduced mod `p`, for `p = 2` mod 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareClass {
    pub p: u64,
    pub unit: u64,
}

impl SquareClass {
    pub fn is_square(&self) -> bool {
        if self.p == 2 {
            self.unit % 8 == 1
        } else {
            legendre(self.unit as i64, self.p as i64) == 1
        }
    }
}

pub fn legendre(a: i64, p: i64) -> i32 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut r = 1i64;
    let mut b = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn summand_pieces(t: AdeType) -> (Vec<u64>, Vec<Q>, Vec<Vec<Q>>) {
    let n = t.index() as i64;
    match (t.family(), t.index()) {
        (Family::A, _) => (vec![n as u64 + 1], vec![q(-n, n + 1)], vec![vec![q(-n, n + 1)]]),
        (Family::D, i) if i % 2 == 1 => (vec![4], vec![q(-n, 4)], vec![vec![q(-n, 4)]]),
        (Family::D, _) => (
            vec![2, 2],
            vec![q(-n, 4), q(-1, 1)],
            vec![vec![q(-n, 4), q(-1, 2)], vec![q(-1, 2), q(-1, 1)]],
        ),
        (Family::E, 6) => (vec![3], vec![q(-4, 3)], vec![vec![q(-4, 3)]]),
        (Family::E, 7) => (vec![2], vec![q(-3, 2)], vec![vec![q(-3, 2)]]),
        _ => (vec![], vec![], vec![]),
    }
}

/// Discriminant form of a configuration: one generator per A/E summand with
/// nontrivial group, two (spinor, vector) per even D summand.
pub fn ade_discriminant_form(config: &AdeConfiguration) -> FiniteQuadraticForm {
    let mut f = FiniteQuadraticForm::trivial();
    for &t in config.summands() {
        let (o, qv, b) = summand_pieces(t);
        f = f.orthogonal_sum(&FiniteQuadraticForm::from_parts(o, qv, b));
    }
    f
}

impl FiniteQuadraticForm {
    pub fn trivial() -> Self {
        FiniteQuadraticForm { orders: vec![], q_values: vec![], pairing: vec![] }
    }

    fn from_parts(orders: Vec<u64>, q_values: Vec<Q>, pairing: Vec<Vec<Q>>) -> Self {
        FiniteQuadraticForm {
            orders,
            q_values: q_values.into_iter().map(mod2).collect(),
            pairing: pairing.into_iter().map(|r| r.into_iter().map(mod1).collect()).collect(),
        }
    }

    /// Validated constructor; generators are assumed independent.
    pub fn new(orders: Vec<u64>, q_values: Vec<Q>, pairing: Vec<Vec<Q>>) -> Result<Self> {
        let n = orders.len();
        if q_values.len() != n || pairing.len() != n || pairing.iter().any(|r| r.len() != n) {
            return Err(Error::Argument("generator data of mismatched sizes".into()));
        }
        let f = Self::from_parts(orders, q_values, pairing);
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        let n = self.orders.len();
        for i in 0..n {
            if self.orders[i] == 0 {
                return Err(Error::Argument("generator of order 0".into()));
            }
            let oi = Q::from_integer(self.orders[i] as i64);
            if mod1(self.q_values[i] - self.pairing[i][i]) != Q::from_integer(0) {
                return Err(Error::Argument(format!("q and b disagree on generator {i}")));
            }
            if mod2(self.q_values[i] * oi * oi) != Q::from_integer(0) {
                return Err(Error::Argument(format!("q not defined on generator {i}")));
            }
            for j in 0..n {
                if self.pairing[i][j] != self.pairing[j][i] {
                    return Err(Error::Argument("pairing not symmetric".into()));
                }
                if mod1(self.pairing[i][j] * oi) != Q::from_integer(0) {
                    return Err(Error::Argument(format!("ord(g{i}) b(g{i}, g{j}) not integral")));
                }
            }
        }
        Ok(())
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn q_values(&self) -> &[Q] {
        &self.q_values
    }

    pub fn pairing(&self) -> &[Vec<Q>] {
        &self.pairing
    }

    pub fn num_generators(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn q_of(&self, x: &[i64]) -> Q {
        let mut s = Q::from_integer(0);
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            s += self.q_values[i] * x[i] * x[i];
            for j in i + 1..x.len() {
                s += self.pairing[i][j] * (2 * x[i] * x[j]);
            }
        }
        mod2(s)
    }

    pub fn b_of(&self, x: &[i64], y: &[i64]) -> Q {
        let mut s = Q::from_integer(0);
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                s += self.pairing[i][j] * (x[i] * y[j]);
            }
        }
        mod1(s)
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let n = self.orders.len();
        let m = other.orders.len();
        let mut pairing = vec![vec![Q::from_integer(0); n + m]; n + m];
        for i in 0..n {
            pairing[i][..n].copy_from_slice(&self.pairing[i]);
        }
        for i in 0..m {
            pairing[n + i][n..].copy_from_slice(&other.pairing[i]);
        }
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let mut q_values = self.q_values.clone();
        q_values.extend(&other.q_values);
        FiniteQuadraticForm { orders, q_values, pairing }
    }

    /// Form on the elements `gens` (with their orders), which must be
    /// independent.
    fn restricted(&self, gens: &[Vec<i64>], orders: Vec<u64>) -> Self {
        let q_values = gens.iter().map(|g| self.q_of(g)).collect();
        let pairing = gens.iter().map(|g| gens.iter().map(|h| self.b_of(g, h)).collect()).collect();
        FiniteQuadraticForm { orders, q_values, pairing }
    }

    /// Splits every generator into prime-power components, sorted by prime
    /// and then by decreasing exponent. Returns the new form together with
    /// the coordinates of each old generator in the new basis.
    pub fn normalize(&self) -> (Self, Vec<Vec<i64>>) {
        let n = self.orders.len();
        let mut comps: Vec<(u64, u32, usize, i64)> = Vec::new();
        for (i, &o) in self.orders.iter().enumerate() {
            for (p, e) in factorize(o) {
                let pe = p.pow(e);
                comps.push((p, e, i, (o / pe) as i64));
            }
        }
        comps.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(a.2.cmp(&b.2)));
        let mut gens = Vec::with_capacity(comps.len());
        let mut orders = Vec::with_capacity(comps.len());
        let mut map = vec![vec![0i64; comps.len()]; n];
        for (k, &(p, e, i, cof)) in comps.iter().enumerate() {
            let mut g = vec![0i64; n];
            g[i] = cof;
            gens.push(g);
            let pe = p.pow(e);
            orders.push(pe);
            map[i][k] = ChainRing::new(p, e).unit_inverse(cof);
        }
        (self.restricted(&gens, orders), map)
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = factorize(self.order()).into_iter().map(|(p, _)| p).collect();
        ps.sort();
        ps
    }

    pub fn p_primary_part(&self, p: u64) -> Self {
        let (nf, _) = self.normalize();
        let keep: Vec<usize> = (0..nf.orders.len()).filter(|&i| nf.orders[i] % p == 0).collect();
        FiniteQuadraticForm {
            orders: keep.iter().map(|&i| nf.orders[i]).collect(),
            q_values: keep.iter().map(|&i| nf.q_values[i]).collect(),
            pairing: keep.iter().map(|&i| keep.iter().map(|&j| nf.pairing[i][j]).collect()).collect(),
        }
    }

    pub fn length_profile(&self) -> LengthProfile {
        let (nf, _) = self.normalize();
        let mut per_prime = BTreeMap::new();
        for &o in &nf.orders {
            let p = factorize(o)[0].0;
            *per_prime.entry(p).or_insert(0u32) += 1;
        }
        let total_length = per_prime.values().copied().max().unwrap_or(0);
        LengthProfile { total_length, per_prime }
    }

    pub fn length(&self) -> u32 {
        self.length_profile().total_length
    }

    /// Invariant factors `d_1 | d_2 | ...` of the group, all greater than 1.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let (nf, _) = self.normalize();
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &o in &nf.orders {
            by_prime.entry(factorize(o)[0].0).or_default().push(o);
        }
        let len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
        let mut out = vec![1u64; len];
        for v in by_prime.values() {
            let mut v = v.clone();
            v.sort();
            for (k, &o) in v.iter().rev().enumerate() {
                out[len - 1 - k] *= o;
            }
        }
        out
    }

    /// The induced form on `H^perp / H` for the subgroup generated by `h`.
    pub fn isotropic_quotient(&self, h: &[Vec<i64>]) -> Result<Self> {
        let zero = Q::from_integer(0);
        for (i, x) in h.iter().enumerate() {
            if x.len() != self.orders.len() {
                return Err(Error::Argument("element of wrong length".into()));
            }
            if self.q_of(x) != zero {
                return Err(Error::NotIsotropic(format!("{x:?} has q = {}", self.q_of(x))));
            }
            for y in &h[..i] {
                if self.b_of(x, y) != zero {
                    return Err(Error::NotIsotropic(format!("{x:?} and {y:?} pair nontrivially")));
                }
            }
        }
        let (nf, map) = self.normalize();
        let hn: Vec<Vec<i64>> = h
            .iter()
            .map(|x| {
                let mut y = vec![0i64; nf.orders.len()];
                for (i, &xi) in x.iter().enumerate() {
                    for (k, &m) in map[i].iter().enumerate() {
                        y[k] += xi * m;
                    }
                }
                y.iter().zip(&nf.orders).map(|(&v, &o)| v.rem_euclid(o as i64)).collect()
            })
            .collect();
        let mut result = FiniteQuadraticForm::trivial();
        for p in nf.primes() {
            let idx: Vec<usize> = (0..nf.orders.len()).filter(|&i| nf.orders[i] % p == 0).collect();
            let exps: Vec<u32> = idx.iter().map(|&i| factorize(nf.orders[i])[0].1).collect();
            let e = *exps.iter().max().unwrap();
            let ring = ChainRing::new(p, e);
            let n = idx.len();
            let hp: Vec<Vec<i64>> = hn.iter().map(|x| idx.iter().map(|&i| x[i]).collect()).collect();
            let pe = ring.modulus();
            // column j holds p^e b(g_i, h_j) as an integer mod p^e
            let c: Vec<Vec<i64>> = (0..n)
                .map(|a| {
                    hp.iter()
                        .map(|x| {
                            let mut s = zero;
                            for (b, &xb) in x.iter().enumerate() {
                                s += nf.pairing[idx[a]][idx[b]] * xb;
                            }
                            let v = mod1(s) * pe;
                            debug_assert!(v.is_integer());
                            v.to_integer()
                        })
                        .collect()
                })
                .collect();
            let perp = left_kernel(&ring, &c, hp.len());
            let mut rel = hp.clone();
            for (a, &ea) in exps.iter().enumerate() {
                let mut r = vec![0i64; n];
                r[a] = p.pow(ea) as i64;
                rel.push(r);
            }
            let sub = FiniteQuadraticForm {
                orders: idx.iter().map(|&i| nf.orders[i]).collect(),
                q_values: idx.iter().map(|&i| nf.q_values[i]).collect(),
                pairing: idx.iter().map(|&i| idx.iter().map(|&j| nf.pairing[i][j]).collect()).collect(),
            };
            let gens = subquotient(&ring, &perp, &rel, n);
            let vecs: Vec<Vec<i64>> = gens
                .iter()
                .map(|(v, _)| v.iter().zip(&sub.orders).map(|(&x, &o)| x.rem_euclid(o as i64)).collect())
                .collect();
            let ords: Vec<u64> = gens.iter().map(|&(_, g)| p.pow(g)).collect();
            result = result.orthogonal_sum(&sub.restricted(&vecs, ords));
        }
        Ok(result)
    }

    /// Greedy orthogonal splitting of the p-primary part into Jordan blocks.
    pub fn jordan_split(&self, p: u64) -> Vec<JordanBlock> {
        let sub = self.p_primary_part(p);
        let n = sub.orders.len();
        let mut basis: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut ords: Vec<u64> = sub.orders.clone();
        let mut blocks = Vec::new();
        let num = |x: Q, pe: u64| -> i64 {
            let v = x * pe as i64;
            debug_assert!(v.is_integer());
            v.to_integer()
        };
        while !basis.is_empty() {
            let top = *ords.iter().max().unwrap();
            let e = factorize(top)[0].1;
            let ring = ChainRing::new(p, e);
            let at_top: Vec<usize> = (0..basis.len()).filter(|&i| ords[i] == top).collect();
            let unit = |x: &Vec<i64>| num(sub.b_of(x, x), top) % p as i64 != 0;
            let mut chosen: Option<usize> = at_top.iter().copied().find(|&i| unit(&basis[i]));
            if chosen.is_none() && p != 2 {
                'outer: for (a, &i) in at_top.iter().enumerate() {
                    for &j in &at_top[a + 1..] {
                        let s: Vec<i64> = basis[i].iter().zip(&basis[j]).map(|(x, y)| x + y).collect();
                        if unit(&s) {
                            basis[i] = s;
                            chosen = Some(i);
                            break 'outer;
                        }
                    }
                }
            }
            if let Some(i) = chosen {
                let x = basis.remove(i);
                ords.remove(i);
                let bxx = num(sub.b_of(&x, &x), top);
                let inv = ring.unit_inverse(bxx);
                for g in basis.iter_mut() {
                    let c = ring.reduce(num(sub.b_of(g, &x), top) * inv);
                    for (gk, xk) in g.iter_mut().zip(&x) {
                        *gk -= c * xk;
                    }
                }
                let mut theta = num(sub.q_of(&x), top).rem_euclid(2 * top as i64);
                if theta > top as i64 {
                    theta -= 2 * top as i64;
                }
                blocks.push(JordanBlock::Cyclic { exp: e, theta });
                continue;
            }
            // p = 2 and no odd element at the top scale: split an even pair
            let mut pair = None;
            'find: for (a, &i) in at_top.iter().enumerate() {
                for &j in &at_top[a + 1..] {
                    if num(sub.b_of(&basis[i], &basis[j]), top) % 2 != 0 {
                        pair = Some((i, j));
                        break 'find;
                    }
                }
            }
            let (i, j) = pair.expect("degenerate 2-primary form");
            let y = basis.remove(j);
            let x = basis.remove(i);
            ords.remove(j);
            ords.remove(i);
            let alpha = num(sub.q_of(&x), top).rem_euclid(2 * top as i64);
            let gamma = num(sub.q_of(&y), top).rem_euclid(2 * top as i64);
            let (a, t, c) = (
                num(sub.b_of(&x, &x), top),
                num(sub.b_of(&x, &y), top),
                num(sub.b_of(&y, &y), top),
            );
            let det_inv = ring.unit_inverse(a * c - t * t);
            for g in basis.iter_mut() {
                let gx = num(sub.b_of(g, &x), top);
                let gy = num(sub.b_of(g, &y), top);
                // solve [[a, t], [t, c]] (c1, c2) = (gx, gy)
                let c1 = ring.reduce((c * gx - t * gy) % ring.modulus() * det_inv);
                let c2 = ring.reduce((a * gy - t * gx) % ring.modulus() * det_inv);
                for k in 0..g.len() {
                    g[k] -= c1 * x[k] + c2 * y[k];
                }
            }
            let hyperbolic = (alpha * gamma).rem_euclid(8) == 0;
            blocks.push(JordanBlock::Even { exp: e, hyperbolic });
        }
        blocks
    }

    /// Unit part of `det K(q_p)` for the p-adic lattice `K(q_p)` of rank
    /// `l(q_p)` whose discriminant form is the p-part of `self`.
    pub fn square_class_discriminant(&self, p: u64) -> SquareClass {
        let modulus: i64 = if p == 2 { 8 } else { p as i64 };
        let mut unit = 1i64;
        for b in self.jordan_split(p) {
            let u = match b {
                JordanBlock::Cyclic { theta, .. } => theta,
                JordanBlock::Even { hyperbolic: true, .. } => -1,
                JordanBlock::Even { hyperbolic: false, .. } => 3,
            };
            unit = (unit * u).rem_euclid(modulus);
        }
        SquareClass { p, unit: unit as u64 }
    }

    /// The values among `1/2` and `3/2` taken by order-2 elements. Each such
    /// element splits off an orthogonal summand `<+-1/2>`. The result does
    /// not depend on the choice of generators.
    pub fn half_split_values(&self) -> Vec<Q> {
        let (nf, _) = self.normalize();
        let two: Vec<usize> = (0..nf.orders.len()).filter(|&i| nf.orders[i] % 2 == 0).collect();
        let l = two.len();
        if l > 24 {
            return Vec::new();
        }
        let halves = [q(1, 2), q(3, 2)];
        let mut found = Vec::new();
        for mask in 1u32..(1 << l) {
            let mut x = vec![0i64; nf.orders.len()];
            for (k, &i) in two.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    x[i] = (nf.orders[i] / 2) as i64;
                }
            }
            let v = nf.q_of(&x);
            if halves.contains(&v) && !found.contains(&v) {
                found.push(v);
                if found.len() == 2 {
                    break;
                }
            }
        }
        found.sort();
        found
    }

    /// Signature mod 8 read off from the Gauss sum `sum exp(pi i q(x))`.
    pub fn gauss_sum_signature(&self) -> Result<u32> {
        let size = self.order();
        if size > 1_000_000 {
            return Err(Error::Argument(format!("|A| = {size} exceeds the Gauss sum limit")));
        }
        let n = self.orders.len();
        let mut den: i64 = 1;
        for i in 0..n {
            den = den.lcm(self.q_values[i].denom());
            for j in 0..n {
                den = den.lcm(self.pairing[i][j].denom());
            }
        }
        let m2 = 2 * den;
        let qs: Vec<i64> = self.q_values.iter().map(|v| (v * den).to_integer()).collect();
        let bs: Vec<Vec<i64>> =
            self.pairing.iter().map(|r| r.iter().map(|v| (v * den).to_integer()).collect()).collect();
        let mut counts = vec![0u64; m2 as usize];
        let mut digits = vec![0u64; n];
        let mut beta = vec![0i64; n];
        let mut s = 0i64;
        'outer: loop {
            counts[s as usize] += 1;
            let mut k = 0;
            loop {
                if k == n {
                    break 'outer;
                }
                s = (s + qs[k] + 2 * beta[k]).rem_euclid(m2);
                for j in 0..n {
                    beta[j] = (beta[j] + bs[k][j]).rem_euclid(den);
                }
                digits[k] += 1;
                if digits[k] == self.orders[k] {
                    digits[k] = 0;
                    k += 1;
                } else {
                    break;
                }
            }
        }
        let (mut re, mut im) = (Kahan::default(), Kahan::default());
        for (r, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let phi = PI * r as f64 / den as f64;
            re.add(c as f64 * phi.cos());
            im.add(c as f64 * phi.sin());
        }
        let (re, im) = (re.sum, im.sum);
        let magnitude = re.hypot(im);
        let expected = (size as f64).sqrt();
        if ((magnitude - expected) / expected).abs() > 1e-6 {
            return Err(Error::Degenerate { magnitude, expected });
        }
        let eighths = (im.atan2(re) / (PI / 4.0)).round() as i64;
        Ok(eighths.rem_euclid(8) as u32)
    }
}

#[derive(Default)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

impl fmt::Display for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("trivial");
        }
        for (i, o) in self.orders.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "Z/{o}[{}]", self.q_values[i])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(s: &str) -> FiniteQuadraticForm {
        ade_discriminant_form(&s.parse().unwrap())
    }

    #[test]
    fn table_values() {
        let a1 = form("A1");
        assert_eq!(a1.orders(), &[2]);
        assert_eq!(a1.q_values()[0], q(3, 2));
        let d4 = form("D4");
        assert_eq!(d4.orders(), &[2, 2]);
        assert_eq!(d4.q_values(), &[q(1, 1), q(1, 1)]);
        assert_eq!(d4.pairing()[0][1], q(1, 2));
        let e6 = form("E6");
        assert_eq!(e6.q_values()[0], q(2, 3));
        assert!(form("E8").is_trivial());
    }

    #[test]
    fn lengths() {
        let lp = form("A1^8").length_profile();
        assert_eq!(lp.total_length, 8);
        assert_eq!(lp.at(2), 8);
        assert_eq!(form("E8").length(), 0);
        let lp = form("A5+A2").length_profile();
        assert_eq!((lp.at(2), lp.at(3), lp.total_length), (1, 2, 2));
    }

    #[test]
    fn primary_parts() {
        let f = form("A2+A1");
        let p3 = f.p_primary_part(3);
        assert_eq!(p3.orders(), &[3]);
        assert_eq!(p3.q_values()[0], mod2(q(-2, 3)));
        assert!(f.p_primary_part(5).is_trivial());
        let a5 = form("A5");
        assert_eq!(a5.p_primary_part(2).orders(), &[2]);
        assert_eq!(a5.p_primary_part(3).orders(), &[3]);
    }

    #[test]
    fn nikulin_lattice_quotient() {
        let f = form("A1^8");
        let h = vec![vec![1i64; 8]];
        let g = f.isotropic_quotient(&h).unwrap();
        assert_eq!(g.order(), 64);
        assert_eq!(g.length(), 6);
        assert_eq!(f.isotropic_quotient(&[]).unwrap().order(), 256);
        assert!(f.isotropic_quotient(&[vec![1, 1, 0, 0, 0, 0, 0, 0]]).is_err());
    }

    #[test]
    fn cyclic_quotient() {
        // A7 + A1: glue (2,1) has q = -7/2 - 1/2 = -4
        let f = form("A1+A7");
        let g = f.isotropic_quotient(&[vec![1, 2]]).unwrap();
        assert_eq!(g.order(), 1);
        let f = form("A3");
        let g = f.isotropic_quotient(&[vec![2]]);
        assert!(g.is_err());
    }

    #[test]
    fn gauss_sums() {
        assert_eq!(form("A1").gauss_sum_signature().unwrap(), 7);
        assert_eq!(form("E8").gauss_sum_signature().unwrap(), 0);
        assert_eq!(form("A2^9").gauss_sum_signature().unwrap(), 6);
        assert_eq!(form("D4+E6").gauss_sum_signature().unwrap(), 6);
    }

    #[test]
    fn square_classes() {
        let a1 = form("A1").square_class_discriminant(2);
        assert_eq!(a1.unit, 7);
        let u = FiniteQuadraticForm::new(vec![2, 2], vec![q(0, 1), q(0, 1)], vec![vec![q(0, 1), q(1, 2)], vec![q(1, 2), q(0, 1)]])
            .unwrap();
        assert_eq!(u.jordan_split(2), vec![JordanBlock::Even { exp: 1, hyperbolic: true }]);
        assert_eq!(u.square_class_discriminant(2).unit, 7);
        let d4 = form("D4");
        assert_eq!(d4.jordan_split(2), vec![JordanBlock::Even { exp: 1, hyperbolic: false }]);
        assert!(form("E8").square_class_discriminant(3).is_square());
        assert!(d4.half_split_values().is_empty());
        assert_eq!(form("A1").half_split_values(), vec![q(3, 2)]);
        assert_eq!(form("A1^2").half_split_values(), vec![q(3, 2)]);
        assert_eq!(form("A1+A3").half_split_values(), vec![q(1, 2), q(3, 2)]);
    }

    #[test]
    fn invariant_factor_lists() {
        assert_eq!(form("A1^3+A3").invariant_factors(), vec![2, 2, 2, 4]);
        assert_eq!(form("A2+A1").invariant_factors(), vec![6]);
    }
}
