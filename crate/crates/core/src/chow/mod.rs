//! Truncated Chow rings of projective spaces, the quadric threefold and
//! projective bundles, with Chern class arithmetic.
//!
//! A projective bundle `P(E) → Y` uses the convention `π_* O(1) = E`, so the
//! hyperplane class `ξ` satisfies `Σᵢ (−1)ⁱ π*cᵢ(E) ξ^{e−i} = 0` and
//! `ω_{X/Y} = π*det E ⊗ O(−e)`.

mod bundle;
mod numerics;
pub mod program;

pub use bundle::{appendix_a_p3, appendix_a_q3, appendix_a_value, BundleClass, NormalConvention};
pub use numerics::{contact_class_identity, projbundle_divisor_class, verify_contact_numerics};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("classes live in different rings")]
    RingMismatch,
    #[error("unsupported ring: {0}")]
    Unsupported(String),
    #[error("expected a class of degree {expected}, got {found}")]
    DegreeMismatch { expected: String, found: String },
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),
    #[error("inconsistent ranks: {0}")]
    InconsistentRanks(String),
    #[error("chern program: {0}")]
    Program(String),
}

/// A ring descriptor. Classes hold it behind an `Arc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChowRing {
    /// `ℤ[h]/(h^{n+1})`.
    ProjectiveSpace { n: usize },
    /// Powers of the hyperplane class on `Q³ ⊂ P⁴`; `∫ h³ = 2`.
    QuadricThreefold,
    /// `P(E)` over `base` with `rank E = rank` and `chern = [c₁(E), …, c_e(E)]`.
    ProjBundle {
        base: Arc<ChowRing>,
        rank: usize,
        chern: Vec<ChowClass>,
    },
}

impl ChowRing {
    pub fn projective_space(n: usize) -> Arc<Self> {
        Arc::new(ChowRing::ProjectiveSpace { n })
    }

    pub fn quadric_threefold() -> Arc<Self> {
        Arc::new(ChowRing::QuadricThreefold)
    }

    /// The ring of `P(E)` for a bundle `E` on a power ring.
    pub fn proj_bundle(e: &BundleClass) -> Result<Arc<Self>, ChowError> {
        if e.rank() == 0 {
            return Err(ChowError::InvalidBundle("projectivization of a rank-0 bundle".into()));
        }
        let chern = (1..=e.rank()).map(|i| e.chern(i)).collect();
        Ok(Arc::new(ChowRing::ProjBundle {
            base: e.ring().clone(),
            rank: e.rank(),
            chern,
        }))
    }

    pub fn dim(&self) -> usize {
        match self {
            ChowRing::ProjectiveSpace { n } => *n,
            ChowRing::QuadricThreefold => 3,
            ChowRing::ProjBundle { base, rank, .. } => base.dim() + rank - 1,
        }
    }

    pub fn is_power_ring(&self) -> bool {
        !matches!(self, ChowRing::ProjBundle { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Data {
    /// Coefficients of `hᵏ`, `k = 0..=dim`.
    Powers(Vec<i64>),
    /// Base classes multiplying `ξʲ`, `j = 0..rank`.
    Xi(Vec<ChowClass>),
}

/// An element of a Chow ring with integer coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct ChowClass {
    ring: Arc<ChowRing>,
    data: Data,
}

impl ChowClass {
    pub fn zero(ring: &Arc<ChowRing>) -> Self {
        let data = match &**ring {
            ChowRing::ProjBundle { base, rank, .. } => Data::Xi(vec![ChowClass::zero(base); *rank]),
            r => Data::Powers(vec![0; r.dim() + 1]),
        };
        ChowClass {
            ring: ring.clone(),
            data,
        }
    }

    pub fn one(ring: &Arc<ChowRing>) -> Self {
        Self::integer(ring, 1)
    }

    pub fn integer(ring: &Arc<ChowRing>, c: i64) -> Self {
        match &**ring {
            ChowRing::ProjBundle { base, .. } => ChowClass::pullback(ring, &ChowClass::integer(base, c)).unwrap(),
            _ => Self::from_coeffs(ring, &[c]).unwrap(),
        }
    }

    /// `Σ cₖ hᵏ` on a power ring; terms above the dimension are dropped.
    pub fn from_coeffs(ring: &Arc<ChowRing>, coeffs: &[i64]) -> Result<Self, ChowError> {
        if !ring.is_power_ring() {
            return Err(ChowError::Unsupported("coefficient lists need a power ring".into()));
        }
        let mut v = vec![0; ring.dim() + 1];
        for (k, c) in coeffs.iter().enumerate().take(ring.dim() + 1) {
            v[k] = *c;
        }
        Ok(ChowClass {
            ring: ring.clone(),
            data: Data::Powers(v),
        })
    }

    /// The hyperplane class `h` of a power ring.
    pub fn hyperplane(ring: &Arc<ChowRing>) -> Result<Self, ChowError> {
        Self::from_coeffs(ring, &[0, 1])
    }

    /// The tautological class `ξ` of a projective bundle.
    pub fn xi(ring: &Arc<ChowRing>) -> Result<Self, ChowError> {
        Self::xi_power(ring, 1)
    }

    /// `ξᵏ`, reduced.
    pub fn xi_power(ring: &Arc<ChowRing>, k: usize) -> Result<Self, ChowError> {
        let ChowRing::ProjBundle { base, rank, .. } = &**ring else {
            return Err(ChowError::Unsupported("ξ exists only on projective bundles".into()));
        };
        let mut acc = ChowClass::one(ring);
        let mut xi_raw = vec![ChowClass::zero(base); rank + 1];
        xi_raw[1] = ChowClass::one(base);
        for _ in 0..k {
            acc = acc.mul_raw(&xi_raw);
        }
        Ok(acc)
    }

    /// `π*` of a base class into a projective bundle ring.
    pub fn pullback(ring: &Arc<ChowRing>, c: &ChowClass) -> Result<Self, ChowError> {
        match &**ring {
            ChowRing::ProjBundle { base, rank, .. } => {
                if *base != c.ring {
                    return Err(ChowError::RingMismatch);
                }
                let mut v = vec![ChowClass::zero(base); *rank];
                v[0] = c.clone();
                Ok(ChowClass {
                    ring: ring.clone(),
                    data: Data::Xi(v),
                })
            }
            _ => Err(ChowError::Unsupported("pullback needs a projective bundle".into())),
        }
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    /// Coefficients of `hᵏ` on a power ring.
    pub fn coeffs(&self) -> Option<&[i64]> {
        match &self.data {
            Data::Powers(v) => Some(v),
            Data::Xi(_) => None,
        }
    }

    /// Base coefficients of `ξʲ` on a projective bundle.
    pub fn xi_coeffs(&self) -> Option<&[ChowClass]> {
        match &self.data {
            Data::Xi(v) => Some(v),
            Data::Powers(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::Powers(v) => v.iter().all(|&c| c == 0),
            Data::Xi(v) => v.iter().all(ChowClass::is_zero),
        }
    }

    /// Homogeneous part of degree `k`.
    pub fn component(&self, k: usize) -> Self {
        match &self.data {
            Data::Powers(v) => {
                let mut out = vec![0; v.len()];
                if k < v.len() {
                    out[k] = v[k];
                }
                ChowClass {
                    ring: self.ring.clone(),
                    data: Data::Powers(out),
                }
            }
            Data::Xi(v) => ChowClass {
                ring: self.ring.clone(),
                data: Data::Xi(
                    v.iter()
                        .enumerate()
                        .map(|(j, c)| {
                            if j <= k {
                                c.component(k - j)
                            } else {
                                ChowClass::zero(&c.ring)
                            }
                        })
                        .collect(),
                ),
            },
        }
    }

    /// Degree-0 part as an integer.
    pub fn constant_term(&self) -> i64 {
        match &self.data {
            Data::Powers(v) => v[0],
            Data::Xi(v) => v[0].constant_term(),
        }
    }

    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.component(k) == *self
    }

    fn same_ring(&self, other: &Self) -> Result<(), ChowError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(ChowError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ChowError> {
        self.same_ring(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ChowError> {
        self.same_ring(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64 + Copy) -> Self {
        let data = match (&self.data, &other.data) {
            (Data::Powers(a), Data::Powers(b)) => Data::Powers(a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect()),
            (Data::Xi(a), Data::Xi(b)) => Data::Xi(a.iter().zip(b).map(|(x, y)| x.zip_with(y, f)).collect()),
            _ => unreachable!("same ring implies same shape"),
        };
        ChowClass {
            ring: self.ring.clone(),
            data,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        let data = match &self.data {
            Data::Powers(v) => Data::Powers(v.iter().map(|c| c * k).collect()),
            Data::Xi(v) => Data::Xi(v.iter().map(|c| c.scale(k)).collect()),
        };
        ChowClass {
            ring: self.ring.clone(),
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ChowError> {
        self.same_ring(other)?;
        Ok(match &other.data {
            Data::Powers(b) => {
                let Data::Powers(a) = &self.data else { unreachable!() };
                let n = a.len();
                let mut out = vec![0; n];
                for (i, x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
                    for (j, y) in b.iter().enumerate().take(n - i) {
                        out[i + j] += x * y;
                    }
                }
                ChowClass {
                    ring: self.ring.clone(),
                    data: Data::Powers(out),
                }
            }
            Data::Xi(b) => self.mul_raw(b),
        })
    }

    /// Multiply a bundle class by `Σ bⱼ ξʲ` (any length) and reduce.
    fn mul_raw(&self, b: &[ChowClass]) -> Self {
        let ChowRing::ProjBundle { base, rank, chern } = &*self.ring else {
            unreachable!()
        };
        let Data::Xi(a) = &self.data else { unreachable!() };
        let mut full = vec![ChowClass::zero(base); a.len() + b.len()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                full[i + j] = full[i + j].add(&x.mul(y).unwrap()).unwrap();
            }
        }
        // ξ^e = Σ_{i ≥ 1} (−1)^{i+1} cᵢ ξ^{e−i}
        let e = *rank;
        for j in (e..full.len()).rev() {
            let top = std::mem::replace(&mut full[j], ChowClass::zero(base));
            if top.is_zero() {
                continue;
            }
            for (i, c) in chern.iter().enumerate() {
                let i = i + 1;
                let term = top.mul(c).unwrap();
                let term = if i % 2 == 1 { term } else { term.neg() };
                full[j - i] = full[j - i].add(&term).unwrap();
            }
        }
        full.truncate(e);
        ChowClass {
            ring: self.ring.clone(),
            data: Data::Xi(full),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = ChowClass::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    /// Inverse of a class with constant term 1, as the truncated geometric
    /// series in `1 − c`.
    pub fn inverse(&self) -> Result<Self, ChowError> {
        if self.constant_term() != 1 {
            return Err(ChowError::InvalidBundle(format!(
                "cannot invert a class with constant term {}",
                self.constant_term()
            )));
        }
        let x = ChowClass::one(&self.ring).sub(self)?;
        let mut acc = ChowClass::one(&self.ring);
        let mut p = ChowClass::one(&self.ring);
        for _ in 0..self.ring.dim() {
            p = p.mul(&x)?;
            acc = acc.add(&p)?;
        }
        Ok(acc)
    }

    /// Degree of the top-dimensional part. Lower-degree parts are ignored
    /// with a warning.
    pub fn integrate(&self) -> i64 {
        let dim = self.ring.dim();
        let top = self.component(dim);
        if top != *self {
            log::warn!("integrating a class with nonzero parts below degree {dim}; they are ignored");
        }
        top.integrate_top()
    }

    fn integrate_top(&self) -> i64 {
        match (&*self.ring, &self.data) {
            (ChowRing::ProjectiveSpace { n }, Data::Powers(v)) => v[*n],
            (ChowRing::QuadricThreefold, Data::Powers(v)) => 2 * v[3],
            (ChowRing::ProjBundle { rank, .. }, Data::Xi(v)) => v[rank - 1].integrate_top(),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match &self.data {
            Data::Powers(v) => {
                for (k, &c) in v.iter().enumerate().filter(|(_, c)| **c != 0) {
                    parts.push(match k {
                        0 => c.to_string(),
                        1 => format!("{c}*h"),
                        _ => format!("{c}*h^{k}"),
                    });
                }
            }
            Data::Xi(v) => {
                for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    parts.push(match j {
                        0 => format!("({c})"),
                        1 => format!("({c})*xi"),
                        _ => format!("({c})*xi^{j}"),
                    });
                }
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChowClass({self})")
    }
}
