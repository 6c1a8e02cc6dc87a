//! Exact multivariate polynomials and rational functions over ℚ.
//!
//! Every coefficient function in the rest of the crate is a
//! [`RationalFunction`]. Values are immutable and kept in canonical form:
//! numerator and denominator are coprime and the denominator is monic with
//! respect to the graded lexicographic order on the declared variables.

mod gcd;
mod parse;
mod poly;
mod rational;

pub use gcd::gcd;
pub use parse::{parse, parse_in};
pub use poly::{Monomial, Polynomial};
pub use rational::{ArithOp, RationalFunction};

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

/// Rational numbers used as coefficients everywhere.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatFuncError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable universes differ: [{0}] vs [{1}]")]
    VariableMismatch(String, String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("substitution makes the denominator identically zero")]
    ZeroDenominator,
    #[error("no image given for variable `{0}`")]
    MissingImage(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// An ordered, duplicate-free list of variable names shared by a family of
/// polynomials.
///
/// Cloning is cheap; equality first checks pointer identity.
#[derive(Clone, Eq)]
pub struct Variables(Arc<[String]>);

impl Variables {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, RatFuncError> {
        let mut seen = std::collections::HashSet::new();
        for n in names {
            if !seen.insert(n.as_ref()) {
                return Err(RatFuncError::DuplicateVariable(n.as_ref().to_string()));
            }
        }
        Ok(Variables(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn empty() -> Self {
        Variables(Arc::from(Vec::<String>::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// Appends `extra` after the existing names.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self, RatFuncError> {
        let mut all: Vec<String> = self.0.to_vec();
        all.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Variables::new(&all)
    }

    /// A name not already present, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index_of(&name).is_some() {
            name.push('_');
        }
        name
    }

    pub(crate) fn ensure_same(&self, other: &Variables) -> Result<(), RatFuncError> {
        if self == other {
            Ok(())
        } else {
            Err(RatFuncError::VariableMismatch(self.0.join(","), other.0.join(",")))
        }
    }
}

impl PartialEq for Variables {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl std::hash::Hash for Variables {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl fmt::Debug for Variables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}
