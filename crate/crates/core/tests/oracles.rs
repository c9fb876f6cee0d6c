//! Independent oracles for the closed forms and verdicts used by the library.

mod common;

use std::collections::{BTreeMap, HashMap};

use adek3::fqf::{mod2, Q};
use adek3::glue::{overlattice_candidates, Layout, SearchLimits};
use adek3::lattice::ade_types;
use adek3::nikulin::embedding_verdict;
use adek3::{ade_discriminant_form, enumerate_configurations, FiniteQuadraticForm};

#[test]
fn coset_minima_match_shortest_vectors() {
    for ty in ade_types(8) {
        if let Err(e) = common::check_coset_minima(ty) {
            panic!("{e}");
        }
    }
}

fn bareiss_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

#[test]
fn gram_determinants_match_discriminant_orders() {
    for c in enumerate_configurations(10).unwrap() {
        let det = bareiss_det(c.gram_matrix().entries());
        let sign = if c.rank() % 2 == 0 { 1 } else { -1 };
        assert_eq!(det, sign * c.discriminant_order() as i128, "{c}");
    }
}

#[test]
fn enumeration_matches_generating_function() {
    // coefficients of prod over ADE types of 1 / (1 - x^rank)
    let mut coef = [0u64; 20];
    coef[0] = 1;
    for r in 1..=19usize {
        let types = 1 + (r >= 4) as usize + (6..=8).contains(&r) as usize;
        for _ in 0..types {
            for k in r..=19 {
                coef[k] += coef[k - r];
            }
        }
    }
    let all = enumerate_configurations(19).unwrap();
    assert_eq!(all.len() as u64, coef[1..].iter().sum::<u64>());
    assert_eq!(all.len(), 7573);
    let mut by_rank = [0u64; 20];
    for c in &all {
        by_rank[c.rank() as usize] += 1;
    }
    assert_eq!(by_rank[1..], coef[1..]);
    assert_eq!(&by_rank[1..5], &[1, 2, 3, 6][..]);
}

#[test]
fn gauss_sum_signature_is_minus_rank() {
    let mut checked = 0;
    for c in enumerate_configurations(19).unwrap() {
        if c.discriminant_order() > 1_000_000 {
            continue;
        }
        let sig = ade_discriminant_form(&c).gauss_sum_signature().unwrap();
        assert_eq!(sig, (8 - c.rank() % 8) % 8, "{c}");
        checked += 1;
    }
    assert!(checked > 7000);
}

fn form_histogram(form: &FiniteQuadraticForm) -> BTreeMap<Q, u64> {
    let orders = form.orders();
    let mut hist = BTreeMap::new();
    let mut x = vec![0i64; orders.len()];
    loop {
        *hist.entry(form.q_of(&x)).or_insert(0) += 1;
        let mut k = 0;
        while k < x.len() {
            x[k] += 1;
            if x[k] < orders[k] as i64 {
                break;
            }
            x[k] = 0;
            k += 1;
        }
        if k == x.len() {
            return hist;
        }
    }
}

/// q-value histogram of `H^perp / H`, computed directly on the code layout.
fn subquotient_histogram(layout: &Layout, h: &[u32]) -> BTreeMap<Q, u64> {
    let q = |x: u32| -> Q { (0..layout.len()).map(|c| layout.local(c).q(layout.digit(x, c))).sum() };
    let qs: Vec<Q> = (0..layout.size()).map(q).collect();
    let mut hist = BTreeMap::new();
    for x in 0..layout.size() {
        let perp = h.iter().all(|&g| {
            let b = (qs[layout.add(x, g) as usize] - qs[x as usize] - qs[g as usize]) / 2;
            b.is_integer()
        });
        if perp {
            *hist.entry(mod2(qs[x as usize])).or_insert(0) += 1;
        }
    }
    for v in hist.values_mut() {
        *v /= h.len() as u64;
    }
    hist
}

fn normalized(hist: BTreeMap<Q, u64>) -> BTreeMap<Q, u64> {
    let mut out = BTreeMap::new();
    for (k, v) in hist {
        *out.entry(mod2(k)).or_insert(0) += v;
    }
    out
}

#[test]
fn induced_forms_match_subquotients() {
    for c in enumerate_configurations(12).unwrap() {
        if c.discriminant_order() > 4096 {
            continue;
        }
        let layout = Layout::new(&c);
        for cand in overlattice_candidates(&c, SearchLimits::default()).unwrap() {
            assert_eq!(cand.index, cand.subgroup.order());
            assert_eq!(cand.induced_form.order() * cand.index * cand.index, c.discriminant_order(), "{c}");
            let direct = subquotient_histogram(&layout, cand.subgroup.codes());
            assert_eq!(normalized(form_histogram(&cand.induced_form)), direct, "{c} {}", cand.subgroup.description());
        }
    }
}

/// q-value histograms (scaled by `den`, mod `2 den`) of every positive even
/// ternary lattice of determinant `d`, up to duplicates.
fn ternary_histograms(d: i64, den: i64) -> Vec<BTreeMap<i64, u64>> {
    let mut out = Vec::new();
    let mut a = 1;
    while 4 * a * a * a <= d {
        let mut b = a;
        while 4 * a * b * b <= d {
            for f in -a..=a {
                for e in -a..=a {
                    for g in -b..=b {
                        let m = 4 * a * b - f * f;
                        let rest = -2 * a * g * g + 2 * f * g * e - 2 * b * e * e;
                        if m <= 0 || (d - rest) % (2 * m) != 0 {
                            continue;
                        }
                        let c = (d - rest) / (2 * m);
                        if c < b {
                            continue;
                        }
                        let h = ternary_histogram(&[[2 * a, f, e], [f, 2 * b, g], [e, g, 2 * c]], d, den);
                        if !out.contains(&h) {
                            out.push(h);
                        }
                    }
                }
            }
            b += 1;
        }
        a += 1;
    }
    out
}

fn ternary_histogram(g: &[[i64; 3]; 3], d: i64, den: i64) -> BTreeMap<i64, u64> {
    let mut adj = [[0i64; 3]; 3];
    for (i, row) in adj.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let r: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let s: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let minor = g[r[0]][s[0]] * g[r[1]][s[1]] - g[r[0]][s[1]] * g[r[1]][s[0]];
            *v = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    // the dual lattice mod the lattice is generated by the adjugate columns / d
    let gens: Vec<[i64; 3]> = (0..3).map(|j| [0, 1, 2].map(|i| adj[i][j].rem_euclid(d))).collect();
    let mut seen = std::collections::HashSet::from([[0i64; 3]]);
    let mut stack = vec![[0i64; 3]];
    let mut hist = BTreeMap::new();
    while let Some(x) = stack.pop() {
        let qn: i64 = (0..3).map(|i| x[i] * (0..3).map(|j| g[i][j] * x[j]).sum::<i64>()).sum();
        let v = Q::new(qn, d * d) * den;
        *hist.entry(v.to_integer().rem_euclid(2 * den)).or_insert(0u64) += 1;
        for gj in &gens {
            let y = [0, 1, 2].map(|i| (x[i] + gj[i]) % d);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    assert_eq!(seen.len() as i64, d);
    hist
}

/// A rank-19 candidate embeds primitively iff some positive ternary lattice
/// has discriminant form `-q`. The ternary side is enumerated directly.
#[test]
fn rank19_verdicts_match_ternary_lattices() {
    let mut cache: HashMap<u64, Vec<BTreeMap<i64, u64>>> = HashMap::new();
    let mut checked = 0;
    let mut positive = 0;
    for c in enumerate_configurations(19).unwrap() {
        if c.rank() != 19 || c.discriminant_order() > 4_000 {
            continue;
        }
        let layout = Layout::new(&c);
        for cand in overlattice_candidates(&c, SearchLimits::default()).unwrap() {
            if cand.induced_form.length() > 3 {
                continue;
            }
            let d = cand.induced_form.order();
            let den = 24 * d as i64;
            let direct = subquotient_histogram(&layout, cand.subgroup.codes());
            let mut target = BTreeMap::new();
            for (k, v) in direct {
                let s = (-k * den).to_integer().rem_euclid(2 * den);
                *target.entry(s).or_insert(0) += v;
            }
            let forms = cache.entry(d).or_insert_with(|| ternary_histograms(d as i64, den));
            let exists = forms.contains(&target);
            let verdict = embedding_verdict(19, &cand.induced_form);
            assert_eq!(exists, verdict.embeds(), "{c} H={} verdict={verdict}", cand.subgroup.description());
            checked += 1;
            positive += exists as u32;
        }
    }
    eprintln!("checked {checked} positive {positive}");
    assert!(checked > 100, "checked {checked}");
    assert!(positive > 10, "positive {positive}");
}
