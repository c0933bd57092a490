//! Finite-support real sequences.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A finite-support sequence indexed from 1. Entries are kept sorted by
/// index, without explicit zeros; the empty list is the zero vector.
///
/// Serializes as a JSON array of `[index, value]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, f64)>", into = "Vec<(u64, f64)>")]
pub struct SparseVector {
    entries: Vec<(u64, f64)>,
}

impl TryFrom<Vec<(u64, f64)>> for SparseVector {
    type Error = Error;
    fn try_from(entries: Vec<(u64, f64)>) -> Result<Self> {
        SparseVector::new(entries)
    }
}

impl From<SparseVector> for Vec<(u64, f64)> {
    fn from(v: SparseVector) -> Self {
        v.entries
    }
}

impl SparseVector {
    /// Builds a vector from `(index, value)` pairs. Indices must be
    /// strictly increasing and at least 1; values must be finite and
    /// nonzero.
    pub fn new(entries: Vec<(u64, f64)>) -> Result<Self> {
        let mut prev = 0u64;
        for &(i, v) in &entries {
            if i == 0 {
                return Err(Error::domain("indices start at 1"));
            }
            if i <= prev {
                return Err(Error::domain(format!(
                    "indices must be strictly increasing, got {i} after {prev}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::domain(format!("non-finite value at index {i}")));
            }
            if v == 0.0 {
                return Err(Error::domain(format!("explicit zero entry at index {i}")));
            }
            prev = i;
        }
        Ok(SparseVector { entries })
    }

    /// Builds a vector from unsorted pairs, dropping zeros and summing
    /// duplicate indices.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, f64)>) -> Result<Self> {
        let mut map = std::collections::BTreeMap::<u64, f64>::new();
        for (i, v) in pairs {
            if i == 0 {
                return Err(Error::domain("indices start at 1"));
            }
            *map.entry(i).or_insert(0.0) += v;
        }
        let entries = map.into_iter().filter(|&(_, v)| v != 0.0).collect();
        SparseVector::new(entries)
    }

    pub fn zero() -> Self {
        SparseVector { entries: Vec::new() }
    }

    /// The canonical basis vector `e_n`.
    pub fn unit(n: u64) -> Self {
        assert!(n >= 1, "indices start at 1");
        SparseVector { entries: vec![(n, 1.0)] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u64, f64)] {
        &self.entries
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|&(_, v)| v)
    }

    /// Largest index in the support, 0 for the zero vector.
    pub fn max_index(&self) -> u64 {
        self.entries.last().map_or(0, |&(i, _)| i)
    }

    /// The coordinate at index `n` (0 where unsupported).
    pub fn coordinate(&self, n: u64) -> f64 {
        self.entries
            .binary_search_by_key(&n, |&(i, _)| i)
            .map_or(0.0, |pos| self.entries[pos].1)
    }

    pub fn scale(&self, c: f64) -> Self {
        if c == 0.0 {
            return SparseVector::zero();
        }
        SparseVector {
            entries: self.entries.iter().map(|&(i, v)| (i, c * v)).collect(),
        }
    }

    pub fn add(&self, other: &SparseVector) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, u)), Some(&&(j, v))) => {
                    if i < j {
                        out.push((i, u));
                        a.next();
                    } else if j < i {
                        out.push((j, v));
                        b.next();
                    } else {
                        let s = u + v;
                        if s != 0.0 {
                            out.push((i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(&&e), None) => {
                    out.push(e);
                    a.next();
                }
                (None, Some(&&e)) => {
                    out.push(e);
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVector { entries: out }
    }

    pub fn sub(&self, other: &SparseVector) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Coordinate projection `P_n`: restriction to indices `<= n`.
    pub fn project(&self, n: u64) -> Self {
        SparseVector {
            entries: self.entries.iter().copied().filter(|&(i, _)| i <= n).collect(),
        }
    }

    /// The complementary restriction `(I - P_n)`: indices `> n`.
    pub fn tail(&self, n: u64) -> Self {
        SparseVector {
            entries: self.entries.iter().copied().filter(|&(i, _)| i > n).collect(),
        }
    }
}

/// The `ℓ_p` norm `(Σ|x_n|^p)^{1/p}` for `p >= 1`.
pub fn lp_norm(p: f64, x: &SparseVector) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::domain(format!("lp norm requires p >= 1, got {p}")));
    }
    if x.is_zero() {
        return Ok(0.0);
    }
    // Scale by the sup norm to avoid overflow for large exponents.
    let m = x.values().map(f64::abs).fold(0.0, f64::max);
    let sum: f64 = x.values().map(|v| (v.abs() / m).powf(p)).sum();
    Ok(m * sum.powf(1.0 / p))
}
