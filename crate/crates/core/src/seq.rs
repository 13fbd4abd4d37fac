//! Finite-support sequence vectors.
//!
//! A [`SeqVector`] stores a finitely supported real sequence indexed by
//! positive integers; every index that is not stored is exactly zero. The
//! representation is canonical: explicit zeros are pruned on construction,
//! so structural equality coincides with mathematical equality and
//! serialized vectors are reproducible byte for byte.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which sequence norm to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lp {
    /// Sum of absolute values.
    L1,
    /// Euclidean norm.
    L2,
    /// Largest absolute value.
    LInf,
}

/// A finite-support sequence: a sorted map from positive index to nonzero value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeqVector {
    entries: BTreeMap<usize, f64>,
}

impl SeqVector {
    /// The zero vector.
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a vector from `(index, value)` pairs, pruning exact zeros.
    ///
    /// Indices must be positive; repeated indices keep the last value.
    ///
    /// # Panics
    /// Panics on index 0, mirroring out-of-bounds indexing.
    pub fn from_entries<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, f64)>,
    {
        let mut entries = BTreeMap::new();
        for (index, value) in pairs {
            assert!(index >= 1, "sequence indices are 1-based, got 0");
            if value == 0.0 {
                entries.remove(&index);
            } else {
                entries.insert(index, value);
            }
        }
        Self { entries }
    }

    /// The standard basis vector with a single 1 at `index`.
    pub fn basis(index: usize) -> Self {
        Self::from_entries([(index, 1.0)])
    }

    /// Value at `index` (0 when absent).
    pub fn get(&self, index: usize) -> f64 {
        self.entries.get(&index).copied().unwrap_or(0.0)
    }

    /// Sets one coordinate, keeping the form canonical.
    pub fn set(&mut self, index: usize, value: f64) {
        assert!(index >= 1, "sequence indices are 1-based, got 0");
        if value == 0.0 {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
    }

    /// Iterates the support in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().map(|(&i, &v)| (i, v))
    }

    /// Number of stored (nonzero) coordinates.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Largest index in the support, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(sum |v_i|^p)^{1/p}` for finite p, `max |v_i|` for p = infinity.
    ///
    /// Returns 0 for the zero vector.
    pub fn norm(&self, p: Lp) -> f64 {
        // Folds start at +0.0: the stdlib float Sum seeds with -0.0, which
        // would leak a negative zero into serialized certificates.
        match p {
            Lp::L1 => self.entries.values().fold(0.0, |acc, v| acc + v.abs()),
            Lp::L2 => self.entries.values().fold(0.0, |acc, v| acc + v * v).sqrt(),
            Lp::LInf => self
                .entries
                .values()
                .fold(0.0_f64, |acc, v| acc.max(v.abs())),
        }
    }

    /// Euclidean norm; the norm every witness bound in this crate is stated in.
    pub fn norm2(&self) -> f64 {
        self.norm(Lp::L2)
    }

    /// Inner product over the common support.
    pub fn inner(&self, other: &SeqVector) -> f64 {
        // Walk the smaller support, probe the larger.
        let (small, large) = if self.support_len() <= other.support_len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().fold(0.0, |acc, (i, v)| acc + v * large.get(i))
    }

    /// `self + factor * other`, re-canonicalized.
    pub fn add_scaled(&self, factor: f64, other: &SeqVector) -> SeqVector {
        let mut entries = self.entries.clone();
        for (i, v) in other.iter() {
            let combined = entries.get(&i).copied().unwrap_or(0.0) + factor * v;
            if combined == 0.0 {
                entries.remove(&i);
            } else {
                entries.insert(i, combined);
            }
        }
        SeqVector { entries }
    }

    pub fn add(&self, other: &SeqVector) -> SeqVector {
        self.add_scaled(1.0, other)
    }

    pub fn sub(&self, other: &SeqVector) -> SeqVector {
        self.add_scaled(-1.0, other)
    }

    /// `factor * self`.
    pub fn scale(&self, factor: f64) -> SeqVector {
        if factor == 0.0 {
            return SeqVector::zero();
        }
        SeqVector {
            entries: self
                .entries
                .iter()
                .map(|(&i, &v)| (i, factor * v))
                .filter(|&(_, v)| v != 0.0)
                .collect(),
        }
    }

    /// `self / ||self||_2`, or an error for the zero vector.
    ///
    /// Divides per entry rather than multiplying by the reciprocal: exact
    /// ratios (3/5, a/a) then stay exact.
    pub fn normalized(&self) -> Result<SeqVector> {
        let n = self.norm2();
        if n == 0.0 {
            return Err(Error::ZeroOperator);
        }
        Ok(SeqVector {
            entries: self.entries.iter().map(|(&i, &v)| (i, v / n)).collect(),
        })
    }

    /// Checks that every stored value (and hence every norm) is finite.
    pub fn validate_finite(&self) -> Result<()> {
        for (i, v) in self.iter() {
            if !v.is_finite() {
                return Err(Error::OverflowDetected(format!(
                    "non-finite entry {v} at index {i}"
                )));
            }
        }
        Ok(())
    }
}

impl FromIterator<(usize, f64)> for SeqVector {
    fn from_iter<I: IntoIterator<Item = (usize, f64)>>(iter: I) -> Self {
        Self::from_entries(iter)
    }
}

impl fmt::Display for SeqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, v)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(pairs: &[(usize, f64)]) -> SeqVector {
        SeqVector::from_entries(pairs.iter().copied())
    }

    #[test]
    fn norm_three_four_five() {
        let v = sv(&[(1, 3.0), (2, 4.0)]);
        assert_eq!(v.norm(Lp::L2), 5.0);
    }

    #[test]
    fn norms_of_zero_vector() {
        let v = SeqVector::zero();
        assert_eq!(v.norm(Lp::L1), 0.0);
        assert_eq!(v.norm(Lp::L2), 0.0);
        assert_eq!(v.norm(Lp::LInf), 0.0);
    }

    #[test]
    fn l1_and_linf() {
        // Direct summation: |1| + |-2| + |2| = 5, max = 2.
        let v = sv(&[(1, 1.0), (2, -2.0), (3, 2.0)]);
        assert_eq!(v.norm(Lp::L1), 5.0);
        assert_eq!(v.norm(Lp::LInf), 2.0);
    }

    #[test]
    fn inner_orthonormal_basis() {
        let e3 = SeqVector::basis(3);
        let e4 = SeqVector::basis(4);
        assert_eq!(e3.inner(&e3), 1.0);
        assert_eq!(e3.inner(&e4), 0.0);
    }

    #[test]
    fn inner_common_support() {
        let v = sv(&[(1, 2.0), (2, 3.0)]);
        let w = sv(&[(2, 5.0)]);
        assert_eq!(v.inner(&w), 15.0);
        assert_eq!(w.inner(&v), 15.0);
    }

    #[test]
    fn inner_with_self_is_norm_squared() {
        let v = sv(&[(1, 1.5), (7, -2.25), (19, 0.125)]);
        let n = v.norm2();
        assert!((v.inner(&v) - n * n).abs() <= 1e-15 * n * n);
    }

    #[test]
    fn zeros_are_pruned() {
        let v = sv(&[(1, 0.0), (2, 1.0), (3, -0.0)]);
        assert_eq!(v.support_len(), 1);
        assert_eq!(v.get(1), 0.0);
        // Cancellation prunes too.
        let w = v.add_scaled(-1.0, &v);
        assert!(w.is_zero());
    }

    #[test]
    fn add_scaled_and_scale() {
        let v = sv(&[(1, 1.0), (2, 2.0)]);
        let w = sv(&[(2, 1.0), (5, -1.0)]);
        let u = v.add_scaled(2.0, &w);
        assert_eq!(u, sv(&[(1, 1.0), (2, 4.0), (5, -2.0)]));
        assert_eq!(v.scale(-0.5), sv(&[(1, -0.5), (2, -1.0)]));
        assert!(v.scale(0.0).is_zero());
    }

    #[test]
    fn normalized_unit_norm() {
        let v = sv(&[(1, 3.0), (2, 4.0)]);
        let u = v.normalized().unwrap();
        assert!((u.norm2() - 1.0).abs() < 1e-15);
        assert!(SeqVector::zero().normalized().is_err());
    }

    #[test]
    fn serde_uses_string_indices() {
        let v = sv(&[(1, 0.5), (12, -3.0)]);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"1":0.5,"12":-3.0}"#);
        let back: SeqVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn validate_finite_flags_inf() {
        let v = sv(&[(1, f64::INFINITY)]);
        assert!(v.validate_finite().is_err());
        assert!(sv(&[(1, 1.0)]).validate_finite().is_ok());
    }
}
