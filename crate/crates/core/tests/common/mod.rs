//! Independent reference computations used by the integration tests.
//!
//! Nothing here calls into the library's numerical routines: tensors are
//! sparse word maps, signatures come from the closed-form iterated-integral
//! sums, and p-variation is found by enumeration.

#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use roughspace::PiecewiseLinearPath;

pub type WordMap = BTreeMap<Vec<usize>, f64>;

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Truncated product of two word maps.
pub fn word_mul(a: &WordMap, b: &WordMap, level: usize) -> WordMap {
    let mut out = WordMap::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() <= level {
                let mut w = u.clone();
                w.extend_from_slice(v);
                *out.entry(w).or_insert(0.0) += x * y;
            }
        }
    }
    out
}

/// `exp(v)` as a word map: coefficient of `i_1…i_k` is `v_{i_1}⋯v_{i_k} / k!`.
pub fn word_exp(v: &[f64], level: usize) -> WordMap {
    let mut out = WordMap::new();
    out.insert(vec![], 1.0);
    let mut frontier: Vec<(Vec<usize>, f64)> = vec![(vec![], 1.0)];
    for k in 1..=level {
        let mut next = Vec::new();
        for (w, c) in &frontier {
            for (i, vi) in v.iter().enumerate() {
                let mut w2 = w.clone();
                w2.push(i + 1);
                next.push((w2, c * vi / k as f64));
            }
        }
        for (w, c) in &next {
            out.insert(w.clone(), *c);
        }
        frontier = next;
    }
    out
}

/// Signature of a piecewise linear path as a word map, by multiplying
/// segment exponentials in the naive sparse representation.
pub fn word_signature(path: &PiecewiseLinearPath, level: usize) -> WordMap {
    let mut acc = WordMap::new();
    acc.insert(vec![], 1.0);
    for w in path.points().windows(2) {
        acc = word_mul(&acc, &word_exp(&diff(&w[1], &w[0]), level), level);
    }
    acc
}

/// Level-two signature from the closed form
/// `S^{ij} = Σ_{a<b} v_a^i v_b^j + ½ Σ_a v_a^i v_a^j`.
pub fn level_two(increments: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let mut s = vec![vec![0.0; dim]; dim];
    let mut running = vec![0.0; dim];
    for v in increments {
        for i in 0..dim {
            for j in 0..dim {
                s[i][j] += running[i] * v[j] + 0.5 * v[i] * v[j];
            }
        }
        for i in 0..dim {
            running[i] += v[i];
        }
    }
    s
}

/// Sup of `Σ ‖x_{b} − x_{a}‖^p` over all subsets of the given points that keep
/// both ends, by enumeration; returns the p-th root.
pub fn brute_pvar(points: &[Vec<f64>], p: f64) -> f64 {
    let m = points.len();
    if m < 2 {
        return 0.0;
    }
    let inner = m - 2;
    assert!(inner < 24, "enumeration too large");
    let mut best = 0.0f64;
    for mask in 0u32..(1u32 << inner) {
        let mut prev = 0;
        let mut sum = 0.0;
        for i in 1..m {
            if i == m - 1 || mask & (1 << (i - 1)) != 0 {
                sum += norm(&diff(&points[i], &points[prev])).powf(p);
                prev = i;
            }
        }
        best = best.max(sum);
    }
    best.powf(1.0 / p)
}

/// `Σ ‖x_{t_{j+1}} − x_{t_j}‖^p` over the given sorted times, p-th root.
pub fn partition_pvar(path: &PiecewiseLinearPath, times: &[f64], p: f64) -> f64 {
    let pts: Vec<Vec<f64>> = times.iter().map(|&t| path.eval(t)).collect();
    pts.windows(2)
        .map(|w| norm(&diff(&w[1], &w[0])).powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

/// Sum of segment lengths.
pub fn length(path: &PiecewiseLinearPath) -> f64 {
    path.points()
        .windows(2)
        .map(|w| norm(&diff(&w[1], &w[0])))
        .sum()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Increments in `[-1, 1]^dim`, at least one segment.
pub fn increments(dim: usize, max_segments: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-1.0..1.0f64, dim), 1..=max_segments)
}

/// Random path on `[0, 1]` with non-uniform breakpoint times.
pub fn path(dim: usize, max_segments: usize) -> impl Strategy<Value = PiecewiseLinearPath> {
    increments(dim, max_segments)
        .prop_flat_map(|incs| {
            let n = incs.len();
            (Just(incs), prop::collection::vec(0.1..1.0f64, n))
        })
        .prop_map(move |(incs, durations)| {
            let total: f64 = durations.iter().sum();
            let mut times = vec![0.0];
            let mut points = vec![vec![0.0; dim]];
            for (i, (v, d)) in incs.iter().zip(&durations).enumerate() {
                let t = if i + 1 == incs.len() {
                    1.0
                } else {
                    times[i] + d / total
                };
                times.push(t);
                points.push(points[i].iter().zip(v).map(|(a, b)| a + b).collect());
            }
            PiecewiseLinearPath::new(dim, 1.0, times, points).unwrap()
        })
}
