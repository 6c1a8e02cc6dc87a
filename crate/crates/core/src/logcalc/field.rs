use std::fmt;

use super::{Chart, LogCalcError};
use crate::ratfunc::RationalFunction;

/// A section of the log tangent sheaf, expanded in the log frame
/// (`x ∂x` for boundary coordinates, `∂x` otherwise).
#[derive(Clone, PartialEq)]
pub struct LogVectorField {
    chart: Chart,
    coeffs: Vec<RationalFunction>,
}

impl LogVectorField {
    pub fn zero(chart: &Chart) -> Self {
        LogVectorField {
            chart: chart.clone(),
            coeffs: vec![RationalFunction::zero(chart.vars()); chart.dim()],
        }
    }

    /// Coefficients indexed by chart variable.
    pub fn new(chart: &Chart, coeffs: Vec<RationalFunction>) -> Result<Self, LogCalcError> {
        if coeffs.len() != chart.dim() {
            return Err(LogCalcError::ArityMismatch {
                expected: chart.dim(),
                found: coeffs.len(),
            });
        }
        let boundary = chart.boundary_indices();
        for c in &coeffs {
            chart.vars().ensure_same(c.vars())?;
            if !c.is_regular_along(&boundary) {
                return Err(LogCalcError::NonLogCoefficient { coeff: c.to_string() });
            }
        }
        Ok(LogVectorField {
            chart: chart.clone(),
            coeffs,
        })
    }

    /// Coefficients given by variable name; unnamed ones are zero.
    pub fn from_named(chart: &Chart, coeffs: &[(&str, RationalFunction)]) -> Result<Self, LogCalcError> {
        let mut all = vec![RationalFunction::zero(chart.vars()); chart.dim()];
        for (name, c) in coeffs {
            all[chart.index(name)?] = c.clone();
        }
        Self::new(chart, all)
    }

    /// The `i`-th frame vector.
    pub fn frame(chart: &Chart, i: usize) -> Self {
        let mut f = Self::zero(chart);
        f.coeffs[i] = RationalFunction::one(chart.vars());
        f
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn coeff(&self, i: usize) -> &RationalFunction {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RationalFunction::is_zero)
    }

    /// Coefficients against the plain derivations `∂ᵢ`.
    pub fn plain_coeffs(&self) -> Vec<RationalFunction> {
        (0..self.chart.dim())
            .map(|i| {
                if self.chart.is_boundary(i) {
                    &self.coeffs[i] * &RationalFunction::var(self.chart.vars(), i)
                } else {
                    self.coeffs[i].clone()
                }
            })
            .collect()
    }

    /// Re-express plain derivation coefficients in the log frame.
    pub fn from_plain(chart: &Chart, plain: Vec<RationalFunction>) -> Result<Self, LogCalcError> {
        let coeffs = plain
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                if chart.is_boundary(i) {
                    &c / &RationalFunction::var(chart.vars(), i)
                } else {
                    c
                }
            })
            .collect();
        Self::new(chart, coeffs)
    }

    /// Derivative of a function along the field.
    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction, LogCalcError> {
        self.chart.vars().ensure_same(f.vars())?;
        let mut acc = RationalFunction::zero(f.vars());
        for (i, a) in self.plain_coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc = &acc + &(a * &f.derivative(i));
        }
        Ok(acc)
    }

    /// Commutator `[self, other]`, computed on plain derivations
    /// `Σ (Xⱼ ∂ⱼYᵢ − Yⱼ ∂ⱼXᵢ) ∂ᵢ` and rewritten in the log frame.
    pub fn lie_bracket(&self, other: &Self) -> Result<Self, LogCalcError> {
        self.chart.ensure_same(&other.chart)?;
        let p = self.plain_coeffs();
        let q = other.plain_coeffs();
        let n = self.chart.dim();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = RationalFunction::zero(self.chart.vars());
            for j in 0..n {
                if !p[j].is_zero() {
                    c = &c + &(&p[j] * &q[i].derivative(j));
                }
                if !q[j].is_zero() {
                    c = &c - &(&q[j] * &p[i].derivative(j));
                }
            }
            out.push(c);
        }
        Self::from_plain(&self.chart, out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, LogCalcError> {
        self.chart.ensure_same(&other.chart)?;
        Ok(LogVectorField {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, f: &RationalFunction) -> Result<Self, LogCalcError> {
        Self::new(&self.chart, self.coeffs.iter().map(|a| a * f).collect())
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.chart == other.chart && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.equals(b))
    }
}

impl fmt::Display for LogVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c}) {}", self.chart.frame_label(i)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for LogVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogVectorField({self})")
    }
}
