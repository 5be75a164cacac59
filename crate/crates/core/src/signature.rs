//! Exact signatures of piecewise linear paths.
//!
//! The signature of a straight segment with increment `v` is `exp(v)`, so by
//! Chen's identity the signature of a piecewise linear path is the ordered
//! product of the segment exponentials. No quadrature is involved.
//!
//! Consecutive increments that are parallel to working precision are summed
//! before exponentiating, since `exp(a v) exp(b v) = exp((a + b) v)`. This keeps
//! retraced segments such as `γ_{nv} ⋆ γ_{−nv}` exactly trivial instead of
//! leaving cancellation error of order `n^N / N!` in the top level.

use crate::error::{Error, Result};
use crate::path::{norm, sub, PiecewiseLinearPath};
use crate::tensor::GroupElement;

/// True when every 2x2 minor of `[a b]` vanishes up to rounding.
fn parallel(a: &[f64], b: &[f64]) -> bool {
    let mut cross = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let m = a[i] * b[j] - a[j] * b[i];
            cross += m * m;
        }
    }
    let scale = 4.0 * f64::EPSILON * norm(a) * norm(b);
    cross.sqrt() <= scale
}

/// Increments of consecutive points with parallel neighbours summed and exact
/// zeros dropped.
fn merged_increments(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for w in points.windows(2) {
        let v = sub(&w[1], &w[0]);
        if v.iter().all(|&c| c == 0.0) {
            continue;
        }
        match out.last_mut() {
            Some(last) if parallel(last, &v) => {
                last.iter_mut().zip(&v).for_each(|(a, b)| *a += b);
                if last.iter().all(|&c| c == 0.0) {
                    out.pop();
                }
            }
            _ => out.push(v),
        }
    }
    out
}

/// Chen product of `exp(x_{i+1} - x_i)` over consecutive points.
pub(crate) fn signature_of_points(dim: usize, points: &[Vec<f64>], level: usize) -> GroupElement {
    merged_increments(points)
        .iter()
        .fold(GroupElement::identity(dim, level), |acc, v| {
            acc.mul_unchecked(&GroupElement::exp_vector(level, v))
        })
}

/// `S_{0,T}(X)` truncated at `level`; the constant path gives `1`.
pub fn signature(path: &PiecewiseLinearPath, level: usize) -> GroupElement {
    signature_of_points(path.dim(), path.points(), level)
}

/// `S_{s,t}(X)`, including the fractional segments at either end.
pub fn signature_segment(
    path: &PiecewiseLinearPath,
    s: f64,
    t: f64,
    level: usize,
) -> Result<GroupElement> {
    let (_, points) = path.points_between(s, t)?;
    Ok(signature_of_points(path.dim(), &points, level))
}

/// `S_{0,t}(X)` for every `t` of a sorted mesh in `[0, T]`.
pub fn signature_trajectory(
    path: &PiecewiseLinearPath,
    level: usize,
    mesh: &[f64],
) -> Result<Vec<GroupElement>> {
    let sorted = mesh.windows(2).all(|w| w[0] <= w[1]);
    let inside = mesh.iter().all(|&t| 0.0 <= t && t <= path.horizon());
    if !sorted || !inside {
        return Err(Error::UnsortedMesh);
    }
    let mut out = Vec::with_capacity(mesh.len());
    let mut acc = GroupElement::identity(path.dim(), level);
    let mut prev = 0.0;
    for &t in mesh {
        acc = acc.mul_unchecked(&signature_segment(path, prev, t, level)?);
        out.push(acc.clone());
        prev = t;
    }
    Ok(out)
}
