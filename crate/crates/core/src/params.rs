//! Parameters shared by the chart constructions and the class identities.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid construction parameters: {0}")]
pub struct ParamsError(pub String);

/// Shape of a contact construction.
///
/// The contact variety has dimension `2r + 1`; `s` counts the line bundles
/// `Mᵢ` (0 for the cotangent construction),
/// `m` the number of boundary coordinates on the base chart and `base_dim`
/// the dimension of the base `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub r: usize,
    pub s: usize,
    pub m: usize,
    pub base_dim: usize,
    /// Degrees of the `Mᵢ` on `Y = P^{base_dim}`; length `s`.
    #[serde(default)]
    pub m_degrees: Vec<i64>,
    /// Degrees of the components of the boundary `B ⊂ Y`.
    #[serde(default)]
    pub boundary_degrees: Vec<i64>,
}

impl ConstructionParams {
    /// Cotangent-type construction: `s = 0`, `base_dim = r + 1`.
    pub fn standard(r: usize, m: usize) -> Self {
        ConstructionParams {
            r,
            s: 0,
            m,
            base_dim: r + 1,
            m_degrees: vec![],
            boundary_degrees: vec![],
        }
    }

    /// Construction with `s ≥ 1` line bundles: `base_dim = r − s + 1`.
    pub fn nonstandard(r: usize, s: usize, m: usize) -> Self {
        ConstructionParams {
            r,
            s,
            m,
            base_dim: (r + 1).saturating_sub(s),
            m_degrees: vec![0; s],
            boundary_degrees: vec![],
        }
    }

    pub fn with_m_degrees(mut self, degrees: Vec<i64>) -> Self {
        self.m_degrees = degrees;
        self
    }

    pub fn with_boundary_degrees(mut self, degrees: Vec<i64>) -> Self {
        self.boundary_degrees = degrees;
        self
    }

    pub fn validate_standard(&self) -> Result<(), ParamsError> {
        if self.s != 0 {
            return Err(ParamsError(format!("standard construction needs s = 0, got {}", self.s)));
        }
        if self.base_dim != self.r + 1 {
            return Err(ParamsError(format!(
                "standard construction needs base_dim = r + 1 = {}, got {}",
                self.r + 1,
                self.base_dim
            )));
        }
        self.check_m()
    }

    pub fn validate_nonstandard(&self) -> Result<(), ParamsError> {
        if self.s < 1 || self.s > self.r {
            return Err(ParamsError(format!("need 1 ≤ s ≤ r, got s = {}, r = {}", self.s, self.r)));
        }
        if self.base_dim != self.r + 1 - self.s {
            return Err(ParamsError(format!(
                "need base_dim = r − s + 1 = {}, got {}",
                self.r + 1 - self.s,
                self.base_dim
            )));
        }
        self.check_m()
    }

    fn check_m(&self) -> Result<(), ParamsError> {
        if self.m > self.base_dim {
            return Err(ParamsError(format!(
                "m = {} exceeds base_dim = {}",
                self.m, self.base_dim
            )));
        }
        Ok(())
    }
}
