//! Truncated free tensor algebra `T^(N)(R^d)`.
//!
//! Coefficients are stored densely, level by level, with the words of each
//! level in lexicographic order. Letters are 1-based: the word `(1, 2)` is the
//! basis tensor `e1 ⊗ e2`. A word of length `k` over `d` letters sits at
//! offset `(d^0 + … + d^(k-1)) + Σ_j (l_j - 1) d^(k-1-j)`.
//!
//! Level norms are Euclidean (ℓ² over the words of the level), which are
//! admissible tensor norms for `R^d`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A word over the alphabet `{1, …, d}`; the empty word indexes the scalar part.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<&[usize]> for Word {
    fn from(letters: &[usize]) -> Self {
        Word(letters.to_vec())
    }
}

impl<const K: usize> From<[usize; K]> for Word {
    fn from(letters: [usize; K]) -> Self {
        Word(letters.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "()" {
            return Ok(Word::empty());
        }
        s.split(',')
            .map(|tok| {
                let letter: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad letter {tok:?} in word {s:?}")))?;
                if letter == 0 {
                    return Err(Error::Parse(format!("letters are 1-based, got 0 in {s:?}")));
                }
                Ok(letter)
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Number of words of length `< k` over `dim` letters, i.e. where level `k` starts.
fn level_offset(dim: usize, k: usize) -> usize {
    (0..k).map(|j| dim.pow(j as u32)).sum()
}

/// An element of `T^(N)(R^d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedTensor {
    dim: usize,
    level: usize,
    coeffs: Vec<f64>,
}

impl TruncatedTensor {
    /// The zero tensor. Panics if `dim == 0`.
    pub fn zero(dim: usize, level: usize) -> Self {
        assert!(dim > 0, "tensor dimension must be positive");
        TruncatedTensor {
            dim,
            level,
            coeffs: vec![0.0; level_offset(dim, level + 1)],
        }
    }

    /// The unit `1`.
    pub fn one(dim: usize, level: usize) -> Self {
        let mut t = Self::zero(dim, level);
        t.coeffs[0] = 1.0;
        t
    }

    /// Builds a tensor from dense coefficients in storage order.
    pub fn from_coeffs(dim: usize, level: usize, coeffs: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let expected = level_offset(dim, level + 1);
        if coeffs.len() != expected {
            return Err(Error::Parse(format!(
                "expected {expected} coefficients for d={dim}, N={level}, got {}",
                coeffs.len()
            )));
        }
        Ok(TruncatedTensor { dim, level, coeffs })
    }

    /// Embeds a vector of `R^d` at level one.
    pub fn from_vector(level: usize, v: &[f64]) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let mut t = Self::zero(v.len(), level);
        if level >= 1 {
            t.coeffs[1..=v.len()].copy_from_slice(v);
        }
        Ok(t)
    }

    /// The basis vector `e_letter` at level one.
    pub fn letter(dim: usize, level: usize, letter: usize) -> Result<Self> {
        let mut t = Self::zero(dim, level);
        t.set(&Word::new(vec![letter]), 1.0)?;
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn scalar(&self) -> f64 {
        self.coeffs[0]
    }

    /// Coefficients of the words of length exactly `k`. Panics if `k > N`.
    pub fn level_coeffs(&self, k: usize) -> &[f64] {
        let start = level_offset(self.dim, k);
        &self.coeffs[start..start + self.dim.pow(k as u32)]
    }

    fn level_coeffs_mut(&mut self, k: usize) -> &mut [f64] {
        let start = level_offset(self.dim, k);
        let len = self.dim.pow(k as u32);
        &mut self.coeffs[start..start + len]
    }

    fn index_of(&self, word: &Word) -> Result<Option<usize>> {
        let mut idx = 0usize;
        for &l in word.letters() {
            if l == 0 || l > self.dim {
                return Err(Error::LetterOutOfRange {
                    letter: l,
                    dim: self.dim,
                });
            }
            idx = idx * self.dim + (l - 1);
        }
        if word.len() > self.level {
            return Ok(None);
        }
        Ok(Some(level_offset(self.dim, word.len()) + idx))
    }

    /// Coefficient `⟨self, word⟩`; words longer than `N` read as zero.
    pub fn coeff(&self, word: &Word) -> Result<f64> {
        Ok(self.index_of(word)?.map_or(0.0, |i| self.coeffs[i]))
    }

    pub fn set(&mut self, word: &Word, value: f64) -> Result<()> {
        match self.index_of(word)? {
            Some(i) => {
                self.coeffs[i] = value;
                Ok(())
            }
            None => Err(Error::LevelOutOfRange {
                level: word.len(),
                max: self.level,
            }),
        }
    }

    /// All words of length `≤ N` with their coefficients, in storage order.
    pub fn words(&self) -> impl Iterator<Item = (Word, f64)> + '_ {
        (0..=self.level).flat_map(move |k| {
            let dim = self.dim;
            self.level_coeffs(k)
                .iter()
                .enumerate()
                .map(move |(mut idx, &c)| {
                    let mut letters = vec![0; k];
                    for slot in letters.iter_mut().rev() {
                        *slot = idx % dim + 1;
                        idx /= dim;
                    }
                    (Word(letters), c)
                })
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(())
    }

    /// Truncated tensor product; the coefficient of `w` is `Σ_{w = uv} a[u] b[v]`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.dim, self.level);
        for n in 0..=self.level {
            let out_start = level_offset(self.dim, n);
            for k in 0..=n {
                let a = self.level_coeffs(k);
                let b = rhs.level_coeffs(n - k);
                let bl = b.len();
                for (i, &ai) in a.iter().enumerate() {
                    if ai == 0.0 {
                        continue;
                    }
                    let row = &mut out.coeffs[out_start + i * bl..out_start + (i + 1) * bl];
                    for (o, &bj) in row.iter_mut().zip(b) {
                        *o += ai * bj;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a + b))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a - b))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        TruncatedTensor {
            dim: self.dim,
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, lambda: f64) -> Self {
        TruncatedTensor {
            dim: self.dim,
            level: self.level,
            coeffs: self.coeffs.iter().map(|&c| c * lambda).collect(),
        }
    }

    /// `π_i`: keeps only the words of length `i` (result stays at level `N`).
    pub fn project_level(&self, i: usize) -> Result<Self> {
        if i > self.level {
            return Err(Error::LevelOutOfRange {
                level: i,
                max: self.level,
            });
        }
        let mut out = Self::zero(self.dim, self.level);
        out.level_coeffs_mut(i)
            .copy_from_slice(self.level_coeffs(i));
        Ok(out)
    }

    /// `π^(n)`: drops the words longer than `n`, returning an element of `T^(n)`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n > self.level {
            return Err(Error::LevelOutOfRange {
                level: n,
                max: self.level,
            });
        }
        Ok(TruncatedTensor {
            dim: self.dim,
            level: n,
            coeffs: self.coeffs[..level_offset(self.dim, n + 1)].to_vec(),
        })
    }

    /// Euclidean norm of `π_i(self)`. Panics if `i > N`.
    pub fn level_norm(&self, i: usize) -> f64 {
        self.level_coeffs(i)
            .iter()
            .map(|c| c * c)
            .sum::<f64>()
            .sqrt()
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Truncated exponential `Σ_{k≤N} x^{⊗k}/k!`.
    pub fn exp(&self) -> Result<GroupElement> {
        if self.scalar() != 0.0 {
            return Err(Error::NonZeroScalar(self.scalar()));
        }
        let mut sum = Self::one(self.dim, self.level);
        let mut term = Self::one(self.dim, self.level);
        for k in 1..=self.level {
            term = term.mul_unchecked(self).scale(1.0 / k as f64);
            sum = sum.zip_with(&term, |a, b| a + b);
        }
        sum.coeffs[0] = 1.0;
        Ok(GroupElement(sum))
    }

    /// Truncated logarithm `Σ_{k≤N} (-1)^{k+1} (x - 1)^{⊗k}/k`.
    pub fn log(&self) -> Result<Self> {
        if self.scalar() != 1.0 {
            return Err(Error::NonUnitScalar(self.scalar()));
        }
        let mut y = self.clone();
        y.coeffs[0] = 0.0;
        let mut sum = Self::zero(self.dim, self.level);
        let mut power = y.clone();
        for k in 1..=self.level {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sum = sum.zip_with(&power, |a, b| a + sign * b / k as f64);
            power = power.mul_unchecked(&y);
        }
        Ok(sum)
    }

    /// Serialises as one `letters:coefficient` line per word, e.g. `1,2:0.5`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (w, c) in self.words() {
            out.push_str(&format!("{w}:{c}\n"));
        }
        out
    }

    /// Parses the line format of [`to_text`](Self::to_text). Missing words are zero;
    /// dimension and level are the largest letter and word length present.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (w, c) = line
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("missing ':' in {line:?}")))?;
            let word: Word = w.parse()?;
            let c: f64 = c
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient in {line:?}")))?;
            entries.push((word, c));
        }
        let dim = entries
            .iter()
            .flat_map(|(w, _)| w.letters().iter().copied())
            .max()
            .unwrap_or(1);
        let level = entries.iter().map(|(w, _)| w.len()).max().unwrap_or(0);
        let mut t = Self::zero(dim, level);
        for (w, c) in entries {
            t.set(&w, c)?;
        }
        Ok(t)
    }
}

/// An element of `G^(N)`: a tensor whose scalar coefficient is exactly one.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement(TruncatedTensor);

impl TryFrom<TruncatedTensor> for GroupElement {
    type Error = Error;

    fn try_from(t: TruncatedTensor) -> Result<Self> {
        if t.scalar() != 1.0 {
            return Err(Error::NonUnitScalar(t.scalar()));
        }
        Ok(GroupElement(t))
    }
}

impl GroupElement {
    pub fn identity(dim: usize, level: usize) -> Self {
        GroupElement(TruncatedTensor::one(dim, level))
    }

    /// `exp(v)` for a vector `v`, i.e. the signature of a straight segment.
    /// The level-`k` block is `v^{⊗k}/k!`.
    pub fn exp_vector(level: usize, v: &[f64]) -> Self {
        let dim = v.len();
        let mut t = TruncatedTensor::one(dim, level);
        for k in 1..=level {
            let prev_start = level_offset(dim, k - 1);
            let prev_len = dim.pow(k as u32 - 1);
            let start = level_offset(dim, k);
            let inv_k = 1.0 / k as f64;
            for i in 0..prev_len {
                let p = t.coeffs[prev_start + i] * inv_k;
                for (j, &vj) in v.iter().enumerate() {
                    t.coeffs[start + i * dim + j] = p * vj;
                }
            }
        }
        GroupElement(t)
    }

    pub fn tensor(&self) -> &TruncatedTensor {
        &self.0
    }

    pub fn into_tensor(self) -> TruncatedTensor {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn level(&self) -> usize {
        self.0.level
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(GroupElement(self.0.mul(&rhs.0)?))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Self) -> Self {
        GroupElement(self.0.mul_unchecked(&rhs.0))
    }

    pub fn log(&self) -> TruncatedTensor {
        self.0.log().expect("group element has unit scalar")
    }

    /// Inverse via the terminating Neumann series `Σ_{k≤N} (1 - g)^{⊗k}`.
    pub fn inverse(&self) -> Self {
        let mut y = self.0.scale(-1.0);
        y.coeffs[0] = 0.0;
        let mut sum = TruncatedTensor::one(self.dim(), self.level());
        let mut power = TruncatedTensor::one(self.dim(), self.level());
        for _ in 1..=self.level() {
            power = power.mul_unchecked(&y);
            sum = sum.zip_with(&power, |a, b| a + b);
        }
        sum.coeffs[0] = 1.0;
        GroupElement(sum)
    }

    pub fn truncate(&self, n: usize) -> Result<Self> {
        Ok(GroupElement(self.0.truncate(n)?))
    }

    /// `max_{1≤i≤N} ‖π_i(g)‖^{1/i}`.
    pub fn homogeneous_norm(&self) -> f64 {
        (1..=self.level())
            .map(|i| self.0.level_norm(i).powf(1.0 / i as f64))
            .fold(0.0, f64::max)
    }

    /// Checks `⟨g,u⟩⟨g,v⟩ = ⟨g, u ⧢ v⟩` for every pair of non-empty words with
    /// `|u| + |v| ≤ N`, up to the absolute tolerance `tol`.
    pub fn is_group_like(&self, tol: f64) -> bool {
        let n = self.level();
        let words: Vec<(Word, f64)> = self.0.words().filter(|(w, _)| !w.is_empty()).collect();
        for (i, (u, cu)) in words.iter().enumerate() {
            for (v, cv) in &words[i..] {
                if u.len() + v.len() > n {
                    continue;
                }
                let rhs: f64 = shuffle_product(u, v)
                    .iter()
                    .map(|(w, &m)| m as f64 * self.0.coeff(w).expect("letters in range"))
                    .sum();
                if (cu * cv - rhs).abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// The shuffle product `u ⧢ v` as a multiset of words.
pub fn shuffle_product(u: &Word, v: &Word) -> BTreeMap<Word, u64> {
    fn go(u: &[usize], v: &[usize], prefix: &mut Vec<usize>, out: &mut BTreeMap<Word, u64>) {
        if u.is_empty() || v.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            *out.entry(Word(w)).or_insert(0) += 1;
            return;
        }
        prefix.push(u[0]);
        go(&u[1..], v, prefix, out);
        prefix.pop();
        prefix.push(v[0]);
        go(u, &v[1..], prefix, out);
        prefix.pop();
    }
    let mut out = BTreeMap::new();
    go(u.letters(), v.letters(), &mut Vec::new(), &mut out);
    out
}

/// `Σ_{n=1..N} 2^{-n} min(1, ‖π_n(g - h)‖)`, a metric on `G^(N)` inducing the
/// product topology of the levels.
pub fn product_metric_dist(g: &GroupElement, h: &GroupElement) -> Result<f64> {
    let diff = g.tensor().sub(h.tensor())?;
    Ok((1..=diff.level())
        .map(|n| 0.5f64.powi(n as i32) * diff.level_norm(n).min(1.0))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, level: usize, i: usize) -> TruncatedTensor {
        TruncatedTensor::letter(dim, level, i).unwrap()
    }

    fn w<const K: usize>(l: [usize; K]) -> Word {
        Word::from(l)
    }

    #[test]
    fn product_of_degree_one_terms() {
        let one = TruncatedTensor::one(2, 2);
        let a = one.add(&e(2, 2, 1)).unwrap();
        let b = one.add(&e(2, 2, 2)).unwrap();
        let prod = a.mul(&b).unwrap();
        let mut expected = TruncatedTensor::one(2, 2);
        expected.set(&w([1]), 1.0).unwrap();
        expected.set(&w([2]), 1.0).unwrap();
        expected.set(&w([1, 2]), 1.0).unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn unit_is_identity() {
        let g = GroupElement::exp_vector(3, &[0.3, -1.2]);
        let one = TruncatedTensor::one(2, 3);
        assert_eq!(g.tensor().mul(&one).unwrap(), *g.tensor());
        assert_eq!(one.mul(g.tensor()).unwrap(), *g.tensor());
    }

    #[test]
    fn exp_times_exp_of_negative_is_one() {
        let v = TruncatedTensor::from_vector(4, &[1.0, 1.0]).unwrap();
        let a = v.exp().unwrap();
        let b = v.scale(-1.0).exp().unwrap();
        let prod = a.mul(&b).unwrap();
        let diff = prod
            .tensor()
            .max_abs_diff(&TruncatedTensor::one(2, 4))
            .unwrap();
        assert!(diff < 1e-12, "{diff}");
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let a = TruncatedTensor::one(2, 3);
        assert!(matches!(
            a.mul(&TruncatedTensor::one(3, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            a.add(&TruncatedTensor::one(2, 2)),
            Err(Error::LevelMismatch { .. })
        ));
    }

    #[test]
    fn add_and_scale() {
        let s = e(2, 2, 1).add(&e(2, 2, 2)).unwrap();
        assert_eq!(s.coeff(&w([1])).unwrap(), 1.0);
        assert_eq!(s.coeff(&w([2])).unwrap(), 1.0);
        assert_eq!(e(2, 2, 1).scale(0.0), TruncatedTensor::zero(2, 2));
        let g = GroupElement::exp_vector(3, &[0.7, 0.1]).into_tensor();
        assert_eq!(g.add(&g.scale(-1.0)).unwrap(), TruncatedTensor::zero(2, 3));
    }

    #[test]
    fn exp_series_values() {
        let v = TruncatedTensor::from_vector(2, &[2.0, 3.0]).unwrap();
        let g = v.exp().unwrap();
        assert_eq!(g.tensor().coeff(&w([1, 2])).unwrap(), 3.0);
        assert_eq!(g.tensor().coeff(&w([2, 2])).unwrap(), 4.5);
        assert_eq!(
            TruncatedTensor::zero(3, 4).exp().unwrap(),
            GroupElement::identity(3, 4)
        );
        let g = e(2, 3, 1).exp().unwrap();
        assert!((g.tensor().coeff(&w([1, 1, 1])).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!(matches!(
            TruncatedTensor::one(2, 2).exp(),
            Err(Error::NonZeroScalar(_))
        ));
    }

    #[test]
    fn exp_vector_matches_series() {
        let v = [0.4, -1.3, 2.2];
        let fast = GroupElement::exp_vector(5, &v);
        let slow = TruncatedTensor::from_vector(5, &v).unwrap().exp().unwrap();
        assert!(fast.tensor().max_abs_diff(slow.tensor()).unwrap() < 1e-14);
    }

    #[test]
    fn log_values() {
        assert_eq!(
            GroupElement::identity(2, 3).log(),
            TruncatedTensor::zero(2, 3)
        );
        for level in 1..=6 {
            let x = e(2, level, 1);
            let back = x.exp().unwrap().log();
            assert!(back.max_abs_diff(&x).unwrap() < 1e-15);
        }
        // exp(e1) exp(e2) at level 2: e1 + e2 + (e1e2 - e2e1)/2
        let g = e(2, 2, 1)
            .exp()
            .unwrap()
            .mul(&e(2, 2, 2).exp().unwrap())
            .unwrap();
        let l = g.log();
        let mut expected = TruncatedTensor::zero(2, 2);
        expected.set(&w([1]), 1.0).unwrap();
        expected.set(&w([2]), 1.0).unwrap();
        expected.set(&w([1, 2]), 0.5).unwrap();
        expected.set(&w([2, 1]), -0.5).unwrap();
        assert!(l.max_abs_diff(&expected).unwrap() < 1e-15);
        assert!(matches!(
            TruncatedTensor::zero(2, 2).log(),
            Err(Error::NonUnitScalar(_))
        ));
    }

    #[test]
    fn inverse_values() {
        let one = GroupElement::identity(2, 4);
        assert_eq!(one.inverse(), one);
        let v = [0.5, -2.0];
        let inv = GroupElement::exp_vector(4, &v).inverse();
        let neg = GroupElement::exp_vector(4, &[-0.5, 2.0]);
        assert!(inv.tensor().max_abs_diff(neg.tensor()).unwrap() < 1e-12);
    }

    #[test]
    fn projections() {
        let g = GroupElement::exp_vector(3, &[1.5, -0.5]);
        assert_eq!(
            g.tensor().project_level(0).unwrap(),
            TruncatedTensor::one(2, 3)
        );
        assert_eq!(
            g.tensor().project_level(1).unwrap(),
            TruncatedTensor::from_vector(3, &[1.5, -0.5]).unwrap()
        );
        assert_eq!(g.tensor().truncate(3).unwrap(), *g.tensor());
        assert_eq!(g.tensor().truncate(1).unwrap().level(), 1);
        assert!(g.tensor().project_level(4).is_err());
        assert!(g.tensor().truncate(4).is_err());
    }

    #[test]
    fn shuffle_examples() {
        let s = shuffle_product(&w([1]), &w([2]));
        assert_eq!(s, BTreeMap::from([(w([1, 2]), 1), (w([2, 1]), 1)]));
        let s = shuffle_product(&w([1]), &w([1]));
        assert_eq!(s, BTreeMap::from([(w([1, 1]), 2)]));
        let s = shuffle_product(&w([1, 2]), &w([3]));
        assert_eq!(
            s,
            BTreeMap::from([(w([1, 2, 3]), 1), (w([1, 3, 2]), 1), (w([3, 1, 2]), 1)])
        );
        let s = shuffle_product(&Word::empty(), &w([2, 1]));
        assert_eq!(s, BTreeMap::from([(w([2, 1]), 1)]));
    }

    #[test]
    fn group_like_examples() {
        assert!(GroupElement::identity(2, 4).is_group_like(1e-12));
        let mut bad = TruncatedTensor::one(2, 2);
        bad.set(&w([1]), 1.0).unwrap();
        bad.set(&w([1, 1]), 1.0).unwrap();
        let bad = GroupElement::try_from(bad).unwrap();
        assert!(!bad.is_group_like(1e-10));
        assert!(GroupElement::exp_vector(4, &[0.3, 0.2, -0.9]).is_group_like(1e-12));
    }

    #[test]
    fn homogeneous_norm_values() {
        assert_eq!(GroupElement::identity(2, 3).homogeneous_norm(), 0.0);
        let g = GroupElement::exp_vector(2, &[1.0, 0.0]);
        assert_eq!(g.homogeneous_norm(), 1.0);
        let v = [3.0, 4.0];
        assert!(GroupElement::exp_vector(4, &v).homogeneous_norm() >= 5.0);
    }

    #[test]
    fn product_metric_values() {
        let g = GroupElement::exp_vector(3, &[0.2, 0.1]);
        assert_eq!(product_metric_dist(&g, &g).unwrap(), 0.0);
        let d = product_metric_dist(
            &GroupElement::identity(2, 1),
            &GroupElement::exp_vector(1, &[1.0, 0.0]),
        )
        .unwrap();
        assert_eq!(d, 0.5);
        let far = GroupElement::exp_vector(6, &[100.0, -50.0]);
        assert!(product_metric_dist(&far, &GroupElement::identity(2, 6)).unwrap() <= 1.0);
    }

    #[test]
    fn text_format() {
        let mut t = TruncatedTensor::zero(2, 2);
        t.set(&Word::empty(), 1.0).unwrap();
        t.set(&w([1, 2]), 0.5).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("():1\n1:0\n2:0\n1,1:0\n1,2:0.5\n"));
        assert_eq!(TruncatedTensor::from_text(&text).unwrap(), t);
        assert!(TruncatedTensor::from_text("1,x:2").is_err());
        assert!(TruncatedTensor::from_text("0:2").is_err());
    }

    #[test]
    fn words_enumerate_in_storage_order() {
        let t = TruncatedTensor::zero(2, 2);
        let ws: Vec<String> = t.words().map(|(w, _)| w.to_string()).collect();
        assert_eq!(ws, ["()", "1", "2", "1,1", "1,2", "2,1", "2,2"]);
    }
}
