//! Logarithmic differential calculus on an affine chart.
//!
//! A chart is a list of coordinates, some of which are *boundary*
//! coordinates cutting out a normal crossing divisor. One-forms are expanded
//! in the log coframe (`dlog x` for boundary coordinates, `dx` otherwise)
//! and vector fields in the dual frame (`x ∂x` resp. `∂x`).

mod checks;
mod field;
mod form;
mod subst;

pub use checks::{
    contact_check, dehomogenize, dual_formula_check, symplectic_check, ContactMode, ContactReport,
    SymplecticReport, Verdict,
};
pub use field::LogVectorField;
pub use form::{LogForm, Weight};
pub use subst::{Image, Substitution};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ratfunc::{RatFuncError, Variables};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogCalcError {
    #[error("objects live on different charts")]
    ChartMismatch,
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("unknown chart variable `{0}`")]
    UnknownVariable(String),
    #[error("dimension mismatch: expected {expected}, chart has {found}")]
    DimensionMismatch { expected: String, found: usize },
    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("expected a form of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("coefficient {coeff} has a pole along the boundary")]
    NonLogCoefficient { coeff: String },
    #[error("image of `{var}` is not a log map: {reason}")]
    NonLogImage { var: String, reason: String },
    #[error("form is not homogeneous of weight 1 on the cone chart")]
    NotConic,
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
}

/// Coordinates on an affine patch, the boundary among them, and optional
/// `Gₘ`-weights.
#[derive(Clone, PartialEq, Eq)]
pub struct Chart {
    vars: Variables,
    is_boundary: Vec<bool>,
    weights: Option<Vec<i64>>,
}

impl Chart {
    pub fn new<S: AsRef<str>, T: AsRef<str>>(vars: &[S], boundary: &[T]) -> Result<Self, LogCalcError> {
        if vars.is_empty() {
            return Err(LogCalcError::InvalidChart("no coordinates".into()));
        }
        let vars = Variables::new(vars)?;
        let mut is_boundary = vec![false; vars.len()];
        for b in boundary {
            let i = vars
                .index_of(b.as_ref())
                .ok_or_else(|| LogCalcError::InvalidChart(format!("boundary `{}` is not a coordinate", b.as_ref())))?;
            if is_boundary[i] {
                return Err(LogCalcError::InvalidChart(format!("boundary `{}` listed twice", b.as_ref())));
            }
            is_boundary[i] = true;
        }
        Ok(Chart {
            vars,
            is_boundary,
            weights: None,
        })
    }

    /// Attach weights; unlisted coordinates get weight 0.
    pub fn with_weights<S: AsRef<str>>(mut self, weights: &[(S, i64)]) -> Result<Self, LogCalcError> {
        let mut w = vec![0; self.vars.len()];
        for (name, k) in weights {
            let i = self.index(name.as_ref())?;
            w[i] = *k;
        }
        self.weights = Some(w);
        Ok(self)
    }

    pub fn with_weight_map(self, weights: &BTreeMap<String, i64>) -> Result<Self, LogCalcError> {
        let list: Vec<(&str, i64)> = weights.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        self.with_weights(&list)
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn name(&self, i: usize) -> &str {
        self.vars.name(i)
    }

    pub fn index(&self, name: &str) -> Result<usize, LogCalcError> {
        self.vars
            .index_of(name)
            .ok_or_else(|| LogCalcError::UnknownVariable(name.to_string()))
    }

    pub fn is_boundary(&self, i: usize) -> bool {
        self.is_boundary[i]
    }

    pub fn boundary_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.is_boundary[i]).collect()
    }

    pub fn boundary_names(&self) -> Vec<&str> {
        self.boundary_indices().into_iter().map(|i| self.name(i)).collect()
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights.as_ref().map_or(0, |w| w[i])
    }

    /// Label of the `i`-th basis covector.
    pub fn covector_label(&self, i: usize) -> String {
        if self.is_boundary[i] {
            format!("dlog {}", self.name(i))
        } else {
            format!("d{}", self.name(i))
        }
    }

    /// Label of the `i`-th frame vector.
    pub fn frame_label(&self, i: usize) -> String {
        if self.is_boundary[i] {
            format!("{0}*d/d{0}", self.name(i))
        } else {
            format!("d/d{}", self.name(i))
        }
    }

    pub(crate) fn ensure_same(&self, other: &Chart) -> Result<(), LogCalcError> {
        if self == other {
            Ok(())
        } else {
            Err(LogCalcError::ChartMismatch)
        }
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({:?}; boundary {:?}", self.vars, self.boundary_names())?;
        if let Some(w) = &self.weights {
            write!(f, "; weights {w:?}")?;
        }
        write!(f, ")")
    }
}
