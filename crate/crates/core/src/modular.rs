//! Linear algebra over the chain ring `Z/p^e`.
//!
//! Matrices are dense `Vec<Vec<i64>>` with entries reduced into `0..p^e`.
//! Every ideal of the ring is `p^k`, so a Smith form with unit transforms
//! always exists and is computed by picking pivots of minimal valuation.

pub type Mat = Vec<Vec<i64>>;

#[derive(Debug, Clone, Copy)]
pub struct ChainRing {
    p: i64,
    e: u32,
    modulus: i64,
}

impl ChainRing {
    pub fn new(p: u64, e: u32) -> Self {
        ChainRing { p: p as i64, e, modulus: (p as i64).pow(e) }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn pow(&self, k: u32) -> i64 {
        self.p.pow(k)
    }

    pub fn reduce(&self, x: i64) -> i64 {
        x.rem_euclid(self.modulus)
    }

    /// `v_p(x)` capped at `e`; zero has valuation `e`.
    pub fn val(&self, x: i64) -> u32 {
        let mut x = self.reduce(x);
        if x == 0 {
            return self.e;
        }
        let mut k = 0;
        while x % self.p == 0 {
            x /= self.p;
            k += 1;
        }
        k
    }

    pub fn unit_inverse(&self, u: i64) -> i64 {
        let (mut a, mut b) = (self.reduce(u), self.modulus);
        let (mut x0, mut x1) = (1i64, 0i64);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        debug_assert_eq!(a, 1, "{u} is not a unit mod {}", self.modulus);
        self.reduce(x0)
    }

    fn mul(&self, a: i64, b: i64) -> i64 {
        ((a as i128 * b as i128).rem_euclid(self.modulus as i128)) as i64
    }
}

/// `u * m * v = diag(p^d[0], p^d[1], ...)`, with `v_inv = v^-1`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub d: Vec<u32>,
    pub u: Mat,
    pub v: Mat,
    pub v_inv: Mat,
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn smith(ring: &ChainRing, m: &Mat, cols: usize) -> Smith {
    let rows = m.len();
    let mut a: Mat = m.iter().map(|r| r.iter().map(|&x| ring.reduce(x)).collect()).collect();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);
    let mut d = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                let k = ring.val(x);
                if k < ring.e && best.is_none_or(|b| k < b.0) {
                    best = Some((k, i, j));
                }
            }
        }
        let Some((k, i, j)) = best else {
            d.extend(std::iter::repeat_n(ring.e, rows.min(cols) - t));
            break;
        };
        a.swap(t, i);
        u.swap(t, i);
        if j != t {
            for row in a.iter_mut() {
                row.swap(t, j);
            }
            for row in v.iter_mut() {
                row.swap(t, j);
            }
            v_inv.swap(t, j);
        }
        let pk = ring.pow(k);
        let inv = ring.unit_inverse(a[t][t] / pk);
        for x in a[t].iter_mut() {
            *x = ring.mul(*x, inv);
        }
        for x in u[t].iter_mut() {
            *x = ring.mul(*x, inv);
        }
        for r in 0..rows {
            if r == t || a[r][t] == 0 {
                continue;
            }
            let f = a[r][t] / pk;
            for c in 0..cols {
                a[r][c] = ring.reduce(a[r][c] - ring.mul(f, a[t][c]));
            }
            for c in 0..rows {
                u[r][c] = ring.reduce(u[r][c] - ring.mul(f, u[t][c]));
            }
        }
        for c in t + 1..cols {
            if a[t][c] == 0 {
                continue;
            }
            let f = a[t][c] / pk;
            for row in a.iter_mut() {
                row[c] = ring.reduce(row[c] - ring.mul(f, row[t]));
            }
            for row in v.iter_mut() {
                row[c] = ring.reduce(row[c] - ring.mul(f, row[t]));
            }
            for x in 0..cols {
                v_inv[t][x] = ring.reduce(v_inv[t][x] + ring.mul(f, v_inv[c][x]));
            }
        }
        d.push(k);
    }
    Smith { d, u, v, v_inv }
}

fn row_times(ring: &ChainRing, x: &[i64], m: &Mat, cols: usize) -> Vec<i64> {
    let mut out = vec![0i64; cols];
    for (xi, row) in x.iter().zip(m) {
        if *xi == 0 {
            continue;
        }
        for (o, &r) in out.iter_mut().zip(row) {
            *o = ring.reduce(*o + ring.mul(*xi, r));
        }
    }
    out
}

/// Generators of `{x in R^n : x * c = 0}` for an `n x k` matrix `c`.
pub fn left_kernel(ring: &ChainRing, c: &Mat, k: usize) -> Vec<Vec<i64>> {
    let n = c.len();
    let s = smith(ring, c, k);
    let mut gens = Vec::new();
    for i in 0..n {
        let scale = match s.d.get(i) {
            Some(&di) if di < ring.e => ring.pow(ring.e - di),
            _ => 1,
        };
        if scale == ring.modulus {
            continue;
        }
        gens.push(s.u[i].iter().map(|&x| ring.mul(x, scale)).collect());
    }
    gens
}

/// Independent generators of `P / R` inside `R^n`, each with its order
/// exponent. `R` must be contained in `P`.
pub fn subquotient(ring: &ChainRing, p_gens: &Mat, r_gens: &Mat, n: usize) -> Vec<(Vec<i64>, u32)> {
    if p_gens.is_empty() {
        return Vec::new();
    }
    let s = smith(ring, p_gens, n);
    let basis: Vec<(usize, u32)> = s
        .d
        .iter()
        .enumerate()
        .filter(|(_, &di)| di < ring.e)
        .map(|(i, &di)| (i, di))
        .collect();
    let kdim = basis.len();
    let mut rel: Mat = Vec::new();
    for r in r_gens {
        let y = row_times(ring, r, &s.v, n);
        let mut c = vec![0i64; kdim];
        for (slot, &(i, di)) in basis.iter().enumerate() {
            let pd = ring.pow(di);
            assert_eq!(y[i] % pd, 0, "relation not inside the submodule");
            c[slot] = y[i] / pd;
        }
        rel.push(c);
    }
    for (slot, &(_, di)) in basis.iter().enumerate() {
        let mut row = vec![0i64; kdim];
        row[slot] = ring.pow(ring.e - di);
        rel.push(row);
    }
    let s2 = smith(ring, &rel, kdim);
    let mut out = Vec::new();
    for j in 0..kdim {
        let g = s2.d[j];
        if g == 0 {
            continue;
        }
        let x = &s2.v_inv[j];
        let mut amb = vec![0i64; n];
        for (slot, &(i, di)) in basis.iter().enumerate() {
            let coef = ring.mul(x[slot], ring.pow(di));
            if coef == 0 {
                continue;
            }
            for (a, &w) in amb.iter_mut().zip(&s.v_inv[i]) {
                *a = ring.reduce(*a + ring.mul(coef, w));
            }
        }
        out.push((amb, g));
    }
    out
}
