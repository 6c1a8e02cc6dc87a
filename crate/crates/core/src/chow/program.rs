//! JSON programs for the `chern` command.
//!
//! ```json
//! {"ring": {"kind": "P", "n": 3},
//!  "steps": [{"op": "tangent"},
//!            {"op": "log", "degrees": [2], "convention": "OD(D)"},
//!            {"op": "twist", "t": "-h"},
//!            {"op": "c", "i": 3},
//!            {"op": "integrate"}]}
//! ```

use std::fmt;
use std::sync::Arc;

use serde::Deserialize;

use super::{BundleClass, ChowClass, ChowError, ChowRing, NormalConvention};
use crate::ratfunc;

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum RingSpec {
    P { n: usize },
    Q3,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum Step {
    /// Tangent bundle of the ring's variety.
    Tangent,
    /// Bundle `⊕ O(aᵢ)`.
    Split { degrees: Vec<i64> },
    /// Remove log poles along hypersurfaces of the given degrees.
    Log { degrees: Vec<i64>, convention: String },
    /// Tensor with the line bundle whose first Chern class is `t`.
    Twist { t: String },
    Dual,
    /// Take `cᵢ` of the current bundle.
    C { i: usize },
    /// Degree of the current class.
    Integrate,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernProgram {
    pub ring: RingSpec,
    pub steps: Vec<Step>,
}

/// Result of running a program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Bundle(BundleClass),
    Class(ChowClass),
    Integer(i64),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bundle(b) => write!(f, "rank {} bundle, c = {}", b.rank(), b.total()),
            Value::Class(c) => write!(f, "{c}"),
            Value::Integer(n) => write!(f, "{n}"),
        }
    }
}

impl Value {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Bundle(b) => serde_json::json!({
                "rank": b.rank(),
                "total_chern": b.total().to_string(),
            }),
            Value::Class(c) => serde_json::json!({ "class": c.to_string() }),
            Value::Integer(n) => serde_json::json!({ "integer": n }),
        }
    }
}

/// Parse program text; schema errors carry the JSON pointer of the fault.
pub fn parse_program(text: &str) -> Result<ChernProgram, ChowError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ChowError::Program(format!("at {path}: {}", e.into_inner()))
    })
}

/// A polynomial in `h` with integer coefficients, as a class.
pub fn parse_class(ring: &Arc<ChowRing>, text: &str) -> Result<ChowClass, ChowError> {
    let f = ratfunc::parse(text, &["h"]).map_err(|e| ChowError::Program(format!("`{text}`: {e}")))?;
    if !f.is_polynomial() {
        return Err(ChowError::Program(format!("`{text}` is not a polynomial in h")));
    }
    let p = f.numerator();
    let mut coeffs = vec![0i64; p.total_degree() as usize + 1];
    for (m, c) in p.terms() {
        if !c.is_integer() {
            return Err(ChowError::Program(format!("`{text}` has a non-integer coefficient")));
        }
        let k = m.exponents()[0] as usize;
        coeffs[k] = i64::try_from(c.to_integer())
            .map_err(|_| ChowError::Program(format!("coefficient in `{text}` is too large")))?;
    }
    ChowClass::from_coeffs(ring, &coeffs)
}

impl ChernProgram {
    pub fn ring(&self) -> Arc<ChowRing> {
        match self.ring {
            RingSpec::P { n } => ChowRing::projective_space(n),
            RingSpec::Q3 => ChowRing::quadric_threefold(),
        }
    }

    pub fn run(&self) -> Result<Value, ChowError> {
        let ring = self.ring();
        let mut value: Option<Value> = None;
        for (k, step) in self.steps.iter().enumerate() {
            let fail = |msg: &str| ChowError::Program(format!("step {k}: {msg}"));
            let bundle = |v: &Option<Value>| match v {
                Some(Value::Bundle(b)) => Ok(b.clone()),
                _ => Err(fail("needs a bundle")),
            };
            value = Some(match step {
                Step::Tangent => Value::Bundle(BundleClass::tangent(&ring)?),
                Step::Split { degrees } => Value::Bundle(BundleClass::split(&ring, degrees)?),
                Step::Log { degrees, convention } => {
                    let conv = NormalConvention::from_label(convention)
                        .ok_or_else(|| fail(&format!("unknown convention `{convention}`")))?;
                    Value::Bundle(bundle(&value)?.remove_log_poles(degrees, conv)?)
                }
                Step::Twist { t } => Value::Bundle(bundle(&value)?.twist(&parse_class(&ring, t)?)?),
                Step::Dual => Value::Bundle(bundle(&value)?.dual()),
                Step::C { i } => Value::Class(bundle(&value)?.chern(*i)),
                Step::Integrate => match &value {
                    Some(Value::Class(c)) => Value::Integer(c.integrate()),
                    _ => return Err(fail("needs a class")),
                },
            });
        }
        value.ok_or_else(|| ChowError::Program("empty program".into()))
    }
}
