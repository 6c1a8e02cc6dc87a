//! Splitting types of vector bundles on the projective line.
//!
//! A bundle `⊕ O(aᵢ)` is recorded by its multiset of degrees. All results
//! here are arithmetic predicates on those multisets.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplittingError {
    #[error("a splitting type needs at least one entry")]
    Empty,
    #[error("bad splitting type `{0}`: expected comma-separated integers")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

/// Degrees `a₁ ≥ a₂ ≥ … ` of a bundle `⊕ O(aᵢ)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SplittingType(Vec<i64>);

impl SplittingType {
    pub fn new(mut entries: Vec<i64>) -> Result<Self, SplittingError> {
        if entries.is_empty() {
            return Err(SplittingError::Empty);
        }
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SplittingType(entries))
    }

    /// `O^{⊕n}`.
    pub fn trivial(n: usize) -> Result<Self, SplittingError> {
        Self::new(vec![0; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Number of strictly positive entries.
    pub fn rank_plus(&self) -> usize {
        self.0.iter().filter(|&&a| a > 0).count()
    }

    pub fn count_zero(&self) -> usize {
        self.0.iter().filter(|&&a| a == 0).count()
    }

    pub fn count_negative(&self) -> usize {
        self.0.iter().filter(|&&a| a < 0).count()
    }

    pub fn dual(&self) -> Self {
        SplittingType::new(self.0.iter().map(|a| -a).collect()).unwrap()
    }

    /// `⊗ O(k)`.
    pub fn twist(&self, k: i64) -> Self {
        SplittingType(self.0.iter().map(|a| a + k).collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        SplittingType::new(self.0.iter().chain(&other.0).copied().collect()).unwrap()
    }

    fn with_zeros(&self, m: usize) -> Self {
        self.direct_sum(&SplittingType(vec![0; m]))
    }
}

impl FromStr for SplittingType {
    type Err = SplittingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| SplittingError::Parse(s.to_string()))?;
        Self::new(entries)
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SplittingType{self}")
    }
}

/// `dim Ext¹(⊕O(aᵢ), ⊕O(bⱼ)) = Σ max(0, aᵢ − bⱼ − 1)`.
pub fn ext1_dim(quotient: &SplittingType, sub: &SplittingType) -> u64 {
    quotient
        .0
        .iter()
        .flat_map(|a| sub.0.iter().map(move |b| (a - b - 1).max(0) as u64))
        .sum()
}

/// Consistency of `0 → O → E1 → E2 → 0` with the given split flag.
///
/// A split sequence has `E1 = E2 ⊕ O`. A nonsplit one needs a nonzero
/// extension class and loses exactly one positive summand.
pub fn extension_rank_plus_rule(e1: &SplittingType, e2: &SplittingType, split: bool) -> bool {
    if e2.rank() + 1 != e1.rank() || e2.degree() != e1.degree() {
        return false;
    }
    if split {
        *e1 == e2.with_zeros(1) && e1.rank_plus() == e2.rank_plus()
    } else {
        e2.rank_plus() + 1 == e1.rank_plus() && ext1_dim(e2, &SplittingType(vec![0])) > 0
    }
}

/// Consistency of `0 → E2 → E1 → O^{⊕m} → 0` with the given split flag.
///
/// Positive parts of the duals can only shrink, and stay equal exactly in
/// the split case `E1 = E2 ⊕ O^{⊕m}`.
pub fn quotient_by_trivials_rule(e1: &SplittingType, e2: &SplittingType, m: usize, split: bool) -> bool {
    if m == 0 || e2.rank() + m != e1.rank() || e2.degree() != e1.degree() {
        return false;
    }
    let (d1, d2) = (e1.dual().rank_plus(), e2.dual().rank_plus());
    if split {
        *e1 == e2.with_zeros(m) && d1 == d2
    } else {
        d2 < d1 && ext1_dim(&SplittingType(vec![0]), e2) > 0
    }
}

/// `B ≅ L⁻¹ ⊗ B*` for `L = O(d)`: the multiset is stable under `b ↦ −b − d`.
pub fn selfdual_shape(b: &SplittingType, d: i64) -> bool {
    b.dual().twist(-d) == *b
}

/// `rk⁺ ≤ r + 1`, or `rk⁺ ≤ r` when the curve misses the boundary.
pub fn rank_plus_bound_check(s: &SplittingType, r: usize, boundary_free: bool) -> bool {
    let bound = if boundary_free { r } else { r + 1 };
    s.rank_plus() <= bound
}
