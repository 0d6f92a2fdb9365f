use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

/// Multi-index in `ℤ^k` with the componentwise partial order.
///
/// Elements of the presented algebras always carry two components; the
/// multi-index machinery also accepts other lengths.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn new(d1: i64, d2: i64) -> Self {
        MultiDegree(vec![d1, d2])
    }

    pub fn from_slice(c: &[i64]) -> Self {
        MultiDegree(c.to_vec())
    }

    pub fn zeros(k: usize) -> Self {
        MultiDegree(vec![0; k])
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn d1(&self) -> i64 {
        self.0[0]
    }

    pub fn d2(&self) -> i64 {
        self.0.get(1).copied().unwrap_or(0)
    }

    fn zip_all(&self, other: &Self, f: impl Fn(i64, i64) -> bool) -> bool {
        assert_eq!(self.len(), other.len(), "multi-index length mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| f(*a, *b))
    }

    /// Componentwise `≤`.
    pub fn le(&self, other: &Self) -> bool {
        self.zip_all(other, |a, b| a <= b)
    }

    /// Componentwise strict `<` in every component.
    pub fn lt_all(&self, other: &Self) -> bool {
        self.zip_all(other, |a, b| a < b)
    }

    /// Componentwise maximum `∨`.
    pub fn join(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "multi-index length mismatch");
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        MultiDegree(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|a| *a >= 0)
    }

    /// Componentwise `⌈d/2⌉`.
    pub fn half_ceil(&self) -> Self {
        MultiDegree(self.0.iter().map(|a| (a + 1).div_euclid(2)).collect())
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        assert_eq!(self.len(), rhs.len(), "multi-index length mismatch");
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: MultiDegree) -> MultiDegree {
        &self + &rhs
    }
}

impl Sub for &MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: &MultiDegree) -> MultiDegree {
        assert_eq!(self.len(), rhs.len(), "multi-index length mismatch");
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: MultiDegree) -> MultiDegree {
        &self - &rhs
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        if self.0.len() == 1 {
            write!(f, "({},)", parts[0])
        } else {
            write!(f, "({})", parts.join(","))
        }
    }
}

impl fmt::Debug for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
