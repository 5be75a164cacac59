//! Seeded random piecewise linear paths for sweeps and property checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::path::PiecewiseLinearPath;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Path on `[0, 1]` with `segments` increments uniform in `[-1, 1]^dim` and
/// random (non-uniform) breakpoint times.
pub fn random_path<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    segments: usize,
) -> PiecewiseLinearPath {
    let increments: Vec<Vec<f64>> = (0..segments)
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let mut durations: Vec<f64> = (0..segments).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = durations.iter().sum();
    durations.iter_mut().for_each(|d| *d /= total);
    let mut times = vec![0.0];
    let mut points = vec![vec![0.0; dim]];
    for (i, (v, d)) in increments.iter().zip(&durations).enumerate() {
        let t = if i + 1 == segments {
            1.0
        } else {
            times.last().unwrap() + d
        };
        times.push(t);
        let prev: &Vec<f64> = points.last().unwrap();
        points.push(prev.iter().zip(v).map(|(a, b)| a + b).collect());
    }
    PiecewiseLinearPath::new(dim, 1.0, times, points).expect("valid random path")
}

/// A uniformly random unit vector.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 && n <= 1.0 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Random paths with dimension in `1..=max_dim` and `1..=max_segments` segments.
pub fn random_corpus(
    seed: u64,
    count: usize,
    max_dim: usize,
    max_segments: usize,
) -> Vec<PiecewiseLinearPath> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let dim = rng.gen_range(1..=max_dim);
            let n = rng.gen_range(1..=max_segments);
            random_path(&mut rng, dim, n)
        })
        .collect()
}
