use std::collections::HashMap;

use super::{Chart, LogCalcError, LogForm, LogVectorField, Weight};
use crate::ratfunc::RationalFunction;

/// Nondegeneracy verdict read off a top coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Nonzero constant.
    Nondegenerate,
    /// Identically zero.
    Degenerate,
    /// Nonconstant; vanishing cannot be decided from the coefficient alone.
    Indeterminate,
}

impl Verdict {
    fn of(c: &RationalFunction) -> Self {
        if c.is_zero() {
            Verdict::Degenerate
        } else if c.is_constant() {
            Verdict::Nondegenerate
        } else {
            Verdict::Indeterminate
        }
    }
}

/// How the contact condition was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactMode {
    /// `θ ∧ (dθ)^r` on a `2r+1`-dimensional chart.
    Direct,
    /// `(dθ)^{r+1}` on a `2r+2`-dimensional chart of the cone, where `θ`
    /// has weight 1.
    Conic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContactReport {
    pub top_coefficient: RationalFunction,
    pub verdict: Verdict,
    pub mode: ContactMode,
    /// `r = 0`: accepted, but below the rank a contact structure requires.
    pub degenerate_rank: bool,
}

impl ContactReport {
    pub fn is_contact(&self) -> bool {
        self.verdict == Verdict::Nondegenerate
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticReport {
    pub top_coefficient: RationalFunction,
    pub closed: bool,
    pub verdict: Verdict,
}

impl SymplecticReport {
    pub fn is_symplectic(&self) -> bool {
        self.closed && self.verdict == Verdict::Nondegenerate
    }
}

fn expect_degree(form: &LogForm, k: usize) -> Result<(), LogCalcError> {
    if form.degree() == k {
        Ok(())
    } else {
        Err(LogCalcError::DegreeMismatch {
            expected: k,
            found: form.degree(),
        })
    }
}

/// Contact condition for a one-form of rank `r`.
///
/// On a `2r+1`-dimensional chart the top coefficient of `θ ∧ (dθ)^r` is
/// returned. On a `2r+2`-dimensional chart `θ` is read as the weight-one
/// form on the cone over the contact manifold and the top coefficient of
/// `(dθ)^{r+1}` is returned instead.
pub fn contact_check(theta: &LogForm, r: usize) -> Result<ContactReport, LogCalcError> {
    expect_degree(theta, 1)?;
    let dim = theta.chart().dim();
    let dtheta = theta.d();
    let (mode, top) = if dim == 2 * r + 1 {
        (ContactMode::Direct, theta.wedge(&dtheta.wedge_power(r)?)?)
    } else if dim == 2 * r + 2 {
        if theta.scale_weight()? != Weight::Homogeneous(1) {
            return Err(LogCalcError::NotConic);
        }
        (ContactMode::Conic, dtheta.wedge_power(r + 1)?)
    } else {
        return Err(LogCalcError::DimensionMismatch {
            expected: format!("{} or {}", 2 * r + 1, 2 * r + 2),
            found: dim,
        });
    };
    let top_coefficient = top.top_coefficient();
    Ok(ContactReport {
        verdict: Verdict::of(&top_coefficient),
        top_coefficient,
        mode,
        degenerate_rank: r == 0,
    })
}

/// Closedness and top power of a two-form on a `2n`-dimensional chart.
pub fn symplectic_check(omega: &LogForm, n: usize) -> Result<SymplecticReport, LogCalcError> {
    expect_degree(omega, 2)?;
    let dim = omega.chart().dim();
    if dim != 2 * n {
        return Err(LogCalcError::DimensionMismatch {
            expected: (2 * n).to_string(),
            found: dim,
        });
    }
    let top_coefficient = omega.wedge_power(n)?.top_coefficient();
    Ok(SymplecticReport {
        closed: omega.d().is_zero(),
        verdict: Verdict::of(&top_coefficient),
        top_coefficient,
    })
}

/// Both sides of `dη(X, Y) = X(η(Y)) − Y(η(X)) − η([X, Y])`, computed
/// independently.
pub fn dual_formula_check(
    eta: &LogForm,
    x: &LogVectorField,
    y: &LogVectorField,
) -> Result<(RationalFunction, RationalFunction), LogCalcError> {
    expect_degree(eta, 1)?;
    let lhs = eta.d().evaluate(&[x, y])?;
    let eta_x = eta.evaluate(&[x])?;
    let eta_y = eta.evaluate(&[y])?;
    let bracket = x.lie_bracket(y)?;
    let rhs = &(&x.apply(&eta_y)? - &y.apply(&eta_x)?) - &eta.evaluate(&[&bracket])?;
    Ok((lhs, rhs))
}

/// Restrict a form to the slice `var = 1`, dropping the coordinate.
pub fn dehomogenize(form: &LogForm, var: &str) -> Result<LogForm, LogCalcError> {
    let chart = form.chart();
    let k = chart.index(var)?;
    let keep: Vec<usize> = (0..chart.dim()).filter(|&i| i != k).collect();
    if keep.is_empty() {
        return Err(LogCalcError::InvalidChart("cannot drop the only coordinate".into()));
    }
    let names: Vec<&str> = keep.iter().map(|&i| chart.name(i)).collect();
    let boundary: Vec<&str> = keep
        .iter()
        .filter(|&&i| chart.is_boundary(i))
        .map(|&i| chart.name(i))
        .collect();
    let mut slice = Chart::new(&names, &boundary)?;
    if let Some(w) = chart.weights() {
        let list: Vec<(&str, i64)> = keep.iter().map(|&i| (chart.name(i), w[i])).collect();
        slice = slice.with_weights(&list)?;
    }
    let mut map = HashMap::new();
    for (new, &old) in keep.iter().enumerate() {
        map.insert(chart.name(old).to_string(), RationalFunction::var(slice.vars(), new));
    }
    map.insert(var.to_string(), RationalFunction::one(slice.vars()));
    let mut out = LogForm::zero(&slice, form.degree()).with_value_weight(form.value_weight());
    for (idx, c) in form.terms() {
        if idx.contains(&k) {
            continue;
        }
        let renum: Vec<usize> = idx.iter().map(|&i| if i > k { i - 1 } else { i }).collect();
        out.insert_raw(renum, c.substitute(&map, slice.vars())?);
    }
    Ok(out)
}
