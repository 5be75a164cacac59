//! Piecewise linear paths in `R^d` started at the origin.
//!
//! A path is stored as its breakpoints `0 = t_0 < … < t_n = T` and the points
//! `x_0 = 0, …, x_n`. The constant path `o` has `n = 0`: a single breakpoint at
//! time zero at the origin.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cosine threshold distance used to decide (anti-)collinearity of adjacent segments.
pub const COLLINEAR_TOL: f64 = 1e-9;

/// Relative size below which the sum of two cancelling segments counts as zero.
const CANCEL_TOL: f64 = 1e-12;

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b) / (norm(a) * norm(b))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PathFile", into = "PathFile")]
pub struct PiecewiseLinearPath {
    dim: usize,
    horizon: f64,
    times: Vec<f64>,
    points: Vec<Vec<f64>>,
}

/// On-disk JSON layout.
#[derive(Serialize, Deserialize)]
struct PathFile {
    dim: usize,
    horizon: f64,
    times: Vec<f64>,
    points: Vec<Vec<f64>>,
}

impl TryFrom<PathFile> for PiecewiseLinearPath {
    type Error = Error;

    fn try_from(f: PathFile) -> Result<Self> {
        PiecewiseLinearPath::new(f.dim, f.horizon, f.times, f.points)
    }
}

impl From<PiecewiseLinearPath> for PathFile {
    fn from(p: PiecewiseLinearPath) -> Self {
        PathFile {
            dim: p.dim,
            horizon: p.horizon,
            times: p.times,
            points: p.points,
        }
    }
}

impl PiecewiseLinearPath {
    pub fn new(dim: usize, horizon: f64, times: Vec<f64>, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidHorizon(horizon));
        }
        if times.is_empty() || times.len() != points.len() {
            return Err(Error::InvalidTimes(format!(
                "{} times for {} points",
                times.len(),
                points.len()
            )));
        }
        if let Some(bad) = points.iter().find(|x| x.len() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: bad.len(),
            });
        }
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Parse("non-finite coordinate".into()));
        }
        if points[0].iter().any(|&x| x != 0.0) {
            return Err(Error::NotAtOrigin);
        }
        if times[0] != 0.0 {
            return Err(Error::InvalidTimes("first time must be 0".into()));
        }
        if times.len() > 1 && *times.last().unwrap() != horizon {
            return Err(Error::InvalidTimes(
                "last time must equal the horizon".into(),
            ));
        }
        if times
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::InvalidTimes(
                "times must be strictly increasing".into(),
            ));
        }
        Ok(PiecewiseLinearPath {
            dim,
            horizon,
            times,
            points,
        })
    }

    /// The constant path `o`.
    pub fn constant(dim: usize, horizon: f64) -> Result<Self> {
        Self::new(dim, horizon, vec![0.0], vec![vec![0.0; dim]])
    }

    /// `γ_v(t) = (t/T) v`.
    pub fn line(v: &[f64], horizon: f64) -> Result<Self> {
        Self::new(
            v.len(),
            horizon,
            vec![0.0, horizon],
            vec![vec![0.0; v.len()], v.to_vec()],
        )
    }

    /// Path on `[0, 1]` with the given segment vectors, each taking equal time.
    pub fn from_increments(dim: usize, increments: &[Vec<f64>]) -> Result<Self> {
        Self::from_increments_on(dim, 1.0, increments)
    }

    pub fn from_increments_on(dim: usize, horizon: f64, increments: &[Vec<f64>]) -> Result<Self> {
        let n = increments.len();
        let mut times = Vec::with_capacity(n + 1);
        let mut points = Vec::with_capacity(n + 1);
        times.push(0.0);
        points.push(vec![0.0; dim]);
        for (i, v) in increments.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: v.len(),
                });
            }
            times.push(if i + 1 == n {
                horizon
            } else {
                horizon * (i + 1) as f64 / n as f64
            });
            points.push(add(points.last().unwrap(), v));
        }
        Self::new(dim, horizon, times, points)
    }

    /// Constant-speed concatenation of segments whose consecutive vectors are
    /// orthogonal and non-zero.
    pub fn axis_path(vectors: &[Vec<f64>]) -> Result<Self> {
        let dim = vectors
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::OutOfRange("axis path needs at least one vector".into()))?;
        for (i, v) in vectors.iter().enumerate() {
            if norm(v) == 0.0 {
                return Err(Error::ZeroSegment(i));
            }
        }
        for (i, pair) in vectors.windows(2).enumerate() {
            if pair[1].len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: pair[1].len(),
                });
            }
            if dot(&pair[0], &pair[1]).abs() > 1e-12 * norm(&pair[0]) * norm(&pair[1]) {
                return Err(Error::NotOrthogonal { index: i });
            }
        }
        Ok(Self::from_increments(dim, vectors)?.constant_speed())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn num_segments(&self) -> usize {
        self.times.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.points.iter().all(|x| x.iter().all(|&c| c == 0.0))
    }

    pub fn endpoint(&self) -> &[f64] {
        self.points.last().unwrap()
    }

    /// Segment vectors `v_i = x_i - x_{i-1}`; durations are discarded.
    pub fn segments(&self) -> Vec<Vec<f64>> {
        self.points.windows(2).map(|w| sub(&w[1], &w[0])).collect()
    }

    /// Position at time `t`, clamped to `[0, T]`.
    pub fn eval(&self, t: f64) -> Vec<f64> {
        if self.times.len() == 1 || t <= 0.0 {
            return self.points[0].clone();
        }
        if t >= self.horizon {
            return self.endpoint().to_vec();
        }
        // first index with times[i] > t
        let i = self.times.partition_point(|&s| s <= t);
        let (t0, t1) = (self.times[i - 1], self.times[i]);
        if t == t0 {
            return self.points[i - 1].clone();
        }
        let lambda = (t - t0) / (t1 - t0);
        self.points[i - 1]
            .iter()
            .zip(&self.points[i])
            .map(|(a, b)| a + lambda * (b - a))
            .collect()
    }

    /// Breakpoints inside `[s, t]` together with the (interpolated) endpoints.
    pub fn points_between(&self, s: f64, t: f64) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
        if !(0.0 <= s && s <= t && t <= self.horizon) {
            return Err(Error::InvalidInterval { s, t });
        }
        let mut times = vec![s];
        let mut points = vec![self.eval(s)];
        for (&u, x) in self.times.iter().zip(&self.points) {
            if u > s && u < t {
                times.push(u);
                points.push(x.clone());
            }
        }
        if t > s {
            times.push(t);
            points.push(self.eval(t));
        }
        Ok((times, points))
    }

    /// Total length `Σ ‖v_i‖`.
    pub fn one_variation(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| norm(&sub(&w[1], &w[0])))
            .sum()
    }

    /// `X ⋆ Y`: `X` at double speed on `[0, T/2]`, then `Y` translated to start
    /// at `X`'s endpoint on `[T/2, T]`. Concatenation with `o` returns the other
    /// operand.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.horizon != other.horizon {
            return Err(Error::InvalidHorizon(other.horizon));
        }
        if self.num_segments() == 0 {
            return Ok(other.clone());
        }
        if other.num_segments() == 0 {
            return Ok(self.clone());
        }
        let half = 0.5 * self.horizon;
        let mut times: Vec<f64> = self.times.iter().map(|t| 0.5 * t).collect();
        times.extend(other.times[1..].iter().map(|t| half + 0.5 * t));
        let shift = self.endpoint().to_vec();
        let mut points = self.points.clone();
        points.extend(other.points[1..].iter().map(|y| add(&shift, y)));
        Self::new(self.dim, self.horizon, times, points)
    }

    /// `t ↦ x_{T-t} - x_T`.
    pub fn reverse(&self) -> Self {
        if self.is_constant() {
            return self.clone();
        }
        let end = self.endpoint().to_vec();
        PiecewiseLinearPath {
            dim: self.dim,
            horizon: self.horizon,
            times: self.times.iter().rev().map(|&t| self.horizon - t).collect(),
            points: self.points.iter().rev().map(|x| sub(x, &end)).collect(),
        }
    }

    /// Same path on `[0, horizon]` by linear time change.
    pub fn with_horizon(&self, horizon: f64) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidHorizon(horizon));
        }
        let scale = horizon / self.horizon;
        let mut times: Vec<f64> = self.times.iter().map(|t| t * scale).collect();
        if times.len() > 1 {
            *times.last_mut().unwrap() = horizon;
        }
        Self::new(self.dim, horizon, times, self.points.clone())
    }

    /// Constant-speed reparameterisation: `‖X‖_{1-var;[0,t]} = (t/T) ‖X‖_{1-var}`.
    ///
    /// Zero-length segments are dropped; the points of the remaining segments
    /// are kept bit-for-bit. A path of zero length is returned unchanged.
    pub fn constant_speed(&self) -> Self {
        let lengths: Vec<f64> = self
            .points
            .windows(2)
            .map(|w| norm(&sub(&w[1], &w[0])))
            .collect();
        let total: f64 = lengths.iter().sum();
        if total == 0.0 {
            return self.clone();
        }
        let mut times = vec![0.0];
        let mut points = vec![self.points[0].clone()];
        let mut acc = 0.0;
        let last_positive = lengths.iter().rposition(|&l| l > 0.0).unwrap();
        for (i, &len) in lengths.iter().enumerate() {
            if len == 0.0 {
                continue;
            }
            acc += len;
            let t = if i == last_positive {
                self.horizon
            } else {
                self.horizon * acc / total
            };
            if t > *times.last().unwrap() {
                times.push(t);
                points.push(self.points[i + 1].clone());
            } else {
                *points.last_mut().unwrap() = self.points[i + 1].clone();
            }
        }
        PiecewiseLinearPath {
            dim: self.dim,
            horizon: self.horizon,
            times,
            points,
        }
    }

    /// Irreducible representative with the same signature, at constant speed.
    pub fn tree_reduce(&self) -> Self {
        self.tree_reduce_with(COLLINEAR_TOL)
    }

    /// Reduces the segment list by local rewrites until no adjacent pair is
    /// collinear: zero segments are dropped, collinear neighbours are replaced
    /// by their sum, and a sum that cancels to zero is dropped. A stack makes
    /// cascading cancellations a single pass.
    pub fn tree_reduce_with(&self, tol: f64) -> Self {
        let mut stack: Vec<Vec<f64>> = Vec::new();
        for v in self.segments() {
            if norm(&v) == 0.0 {
                continue;
            }
            let mut current = Some(v);
            while let (Some(top), Some(v)) = (stack.last(), current.as_ref()) {
                let c = cosine(top, v);
                if c > -1.0 + tol && c < 1.0 - tol {
                    break;
                }
                let sum = add(top, v);
                let scale = norm(top).max(norm(v));
                stack.pop();
                current = (norm(&sum) > CANCEL_TOL * scale).then_some(sum);
            }
            if let Some(v) = current {
                stack.push(v);
            }
        }
        Self::from_increments_on(self.dim, self.horizon, &stack)
            .expect("reduced segments have the path dimension")
            .constant_speed()
    }

    /// No zero segment and no adjacent pair with `cos ∠(v_i, v_{i+1}) ≤ -1 + tol`.
    pub fn is_irreducible(&self, tol: f64) -> bool {
        let segs = self.segments();
        if segs.iter().any(|v| norm(v) == 0.0) {
            return false;
        }
        segs.windows(2).all(|w| cosine(&w[0], &w[1]) > -1.0 + tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("path serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// CSV with header `t,x1,…,xd`, one row per breakpoint.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["t".to_string()];
        header.extend((1..=self.dim).map(|i| format!("x{i}")));
        w.write_record(&header).expect("in-memory write");
        for (t, x) in self.times.iter().zip(&self.points) {
            let mut row = vec![t.to_string()];
            row.extend(x.iter().map(f64::to_string));
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }

    /// Parses [`to_csv`](Self::to_csv) output. The horizon is the last time, or
    /// 1 for a single-row (constant) path.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header = r.headers()?.clone();
        if header.get(0).map(str::trim) != Some("t") || header.len() < 2 {
            return Err(Error::Parse("CSV header must be t,x1,...,xd".into()));
        }
        let dim = header.len() - 1;
        let mut times = Vec::new();
        let mut points = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let vals = rec
                .iter()
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad number {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            times.push(vals[0]);
            points.push(vals[1..].to_vec());
        }
        let horizon = match times.len() {
            0 => return Err(Error::Parse("CSV has no rows".into())),
            1 => 1.0,
            _ => *times.last().unwrap(),
        };
        Self::new(dim, horizon, times, points)
    }

    /// Reads a path file; `.csv` files use the CSV layout, anything else JSON.
    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)?;
        if is_csv(path) {
            Self::from_csv(&text)
        } else {
            Self::from_json(&text)
        }
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = if is_csv(path) {
            self.to_csv()
        } else {
            self.to_json()
        };
        fs::write(path, text)?;
        Ok(())
    }
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}
