use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{Chart, LogCalcError, LogVectorField};
use crate::ratfunc::{RationalFunction, Variables};

/// Outcome of the `Gₘ`-weight test on a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Homogeneous(i64),
    Inhomogeneous,
    /// The zero form has every weight.
    ZeroForm,
}

/// A log differential form on a chart.
///
/// Terms are keyed by strictly increasing tuples of coordinate indices,
/// standing for the wedge of the corresponding basis covectors.
#[derive(Clone, PartialEq)]
pub struct LogForm {
    chart: Chart,
    degree: usize,
    terms: BTreeMap<Vec<usize>, RationalFunction>,
    value_weight: i64,
}

/// Sign of the permutation sorting `a ++ b`, or `None` if they overlap.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut odd = false;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            if (a.len() - i) % 2 == 1 {
                odd = !odd;
            }
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, odd))
}

impl LogForm {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        LogForm {
            chart: chart.clone(),
            degree,
            terms: BTreeMap::new(),
            value_weight: 0,
        }
    }

    /// Build from `(covector indices, coefficient)` pairs. Index lists need
    /// not be sorted; repeated indices give zero.
    pub fn from_terms(
        chart: &Chart,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, RationalFunction)>,
    ) -> Result<Self, LogCalcError> {
        let boundary = chart.boundary_indices();
        let mut form = LogForm::zero(chart, degree);
        for (mut idx, coeff) in terms {
            if idx.len() != degree {
                return Err(LogCalcError::DegreeMismatch {
                    expected: degree,
                    found: idx.len(),
                });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= chart.dim()) {
                return Err(LogCalcError::UnknownVariable(format!("#{bad}")));
            }
            chart.vars().ensure_same(coeff.vars())?;
            if !coeff.is_regular_along(&boundary) {
                return Err(LogCalcError::NonLogCoefficient {
                    coeff: coeff.to_string(),
                });
            }
            let mut odd = false;
            for a in 0..idx.len() {
                for b in a + 1..idx.len() {
                    if idx[a] > idx[b] {
                        odd = !odd;
                    }
                }
            }
            idx.sort_unstable();
            if idx.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let coeff = if odd { -&coeff } else { coeff };
            form.add_term(idx, coeff);
        }
        Ok(form)
    }

    /// A function viewed as a 0-form.
    pub fn function(chart: &Chart, f: RationalFunction) -> Result<Self, LogCalcError> {
        Self::from_terms(chart, 0, [(vec![], f)])
    }

    /// The `i`-th basis covector.
    pub fn basis(chart: &Chart, i: usize) -> Self {
        let mut form = LogForm::zero(chart, 1);
        form.add_term(vec![i], RationalFunction::one(chart.vars()));
        form
    }

    /// `dlog x`; `x` must be a boundary coordinate.
    pub fn dlog(chart: &Chart, var: &str) -> Result<Self, LogCalcError> {
        let i = chart.index(var)?;
        if !chart.is_boundary(i) {
            return Err(LogCalcError::InvalidChart(format!("`{var}` is not a boundary coordinate")));
        }
        Ok(Self::basis(chart, i))
    }

    /// `dx`; for a boundary coordinate this is `x · dlog x`.
    pub fn dvar(chart: &Chart, var: &str) -> Result<Self, LogCalcError> {
        let i = chart.index(var)?;
        let f = RationalFunction::var(chart.vars(), i);
        Ok(Self::function(chart, f)?.d())
    }

    pub fn with_value_weight(mut self, w: i64) -> Self {
        self.value_weight = w;
        self
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn vars(&self) -> &Variables {
        self.chart.vars()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn value_weight(&self) -> i64 {
        self.value_weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &RationalFunction)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, idx: &[usize]) -> RationalFunction {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.vars()))
    }

    /// Coefficient of the wedge of all basis covectors in chart order.
    pub fn top_coefficient(&self) -> RationalFunction {
        let full: Vec<usize> = (0..self.chart.dim()).collect();
        self.coefficient(&full)
    }

    fn add_term(&mut self, idx: Vec<usize>, coeff: RationalFunction) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(c) => {
                let sum = &*c + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&idx);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(idx, coeff);
            }
        }
    }

    fn same_shape(&self, other: &Self) -> Result<(), LogCalcError> {
        self.chart.ensure_same(&other.chart)?;
        if self.degree != other.degree {
            return Err(LogCalcError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LogCalcError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LogCalcError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    /// Multiply every coefficient by a function.
    pub fn scale(&self, f: &RationalFunction) -> Result<Self, LogCalcError> {
        self.chart.vars().ensure_same(f.vars())?;
        if !f.is_regular_along(&self.chart.boundary_indices()) {
            return Err(LogCalcError::NonLogCoefficient { coeff: f.to_string() });
        }
        Ok(self.map_coeffs(|c| c * f))
    }

    fn map_coeffs(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        let mut out = LogForm {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(v));
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, LogCalcError> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = LogForm::zero(&self.chart, self.degree + other.degree)
            .with_value_weight(self.value_weight + other.value_weight);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((idx, odd)) = merge_sign(a, b) {
                    let c = ca * cb;
                    out.add_term(idx, if odd { -&c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `k`-fold wedge power; the 0-th power is the constant 1.
    pub fn wedge_power(&self, k: usize) -> Result<Self, LogCalcError> {
        let mut acc = LogForm::function(&self.chart, RationalFunction::one(self.vars()))?;
        for _ in 0..k {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Log differential of a function, in the log coframe.
    pub(crate) fn differential(chart: &Chart, f: &RationalFunction) -> Vec<(usize, RationalFunction)> {
        (0..chart.dim())
            .filter_map(|i| {
                let df = f.derivative(i);
                let c = if chart.is_boundary(i) {
                    &df * &RationalFunction::var(chart.vars(), i)
                } else {
                    df
                };
                (!c.is_zero()).then_some((i, c))
            })
            .collect()
    }

    /// Exterior derivative. Basis covectors are closed.
    pub fn d(&self) -> Self {
        let mut out = LogForm::zero(&self.chart, self.degree + 1).with_value_weight(self.value_weight);
        for (idx, f) in &self.terms {
            for (i, c) in Self::differential(&self.chart, f) {
                if let Some((merged, odd)) = merge_sign(&[i], idx) {
                    out.add_term(merged, if odd { -&c } else { c });
                }
            }
        }
        out
    }

    /// Alternating evaluation on `fields`, with
    /// `(e¹∧…∧eᵏ)(X₁,…,Xₖ) = det(eⁱ(Xⱼ))`.
    pub fn evaluate(&self, fields: &[&LogVectorField]) -> Result<RationalFunction, LogCalcError> {
        if fields.len() != self.degree {
            return Err(LogCalcError::ArityMismatch {
                expected: self.degree,
                found: fields.len(),
            });
        }
        for x in fields {
            self.chart.ensure_same(x.chart())?;
        }
        let mut acc = RationalFunction::zero(self.vars());
        for (idx, c) in &self.terms {
            let m: Vec<Vec<RationalFunction>> = idx
                .iter()
                .map(|&i| fields.iter().map(|x| x.coeff(i).clone()).collect())
                .collect();
            acc = &acc + &(c * &determinant(m));
        }
        Ok(acc)
    }

    /// Interior product `ι_X` of a field into the form.
    pub fn contract(&self, field: &LogVectorField) -> Result<Self, LogCalcError> {
        self.chart.ensure_same(field.chart())?;
        if self.degree == 0 {
            return Ok(LogForm::zero(&self.chart, 0));
        }
        let mut out = LogForm::zero(&self.chart, self.degree - 1).with_value_weight(self.value_weight);
        for (idx, c) in &self.terms {
            for (pos, &i) in idx.iter().enumerate() {
                let a = field.coeff(i);
                if a.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                let t = c * a;
                out.add_term(rest, if pos % 2 == 1 { -&t } else { t });
            }
        }
        Ok(out)
    }

    /// `Gₘ`-weight of the form: every coordinate `xᵢ` is replaced by
    /// `u^{wᵢ} xᵢ` for a fresh parameter `u`, so `dlog xᵢ` is unchanged and
    /// `dxᵢ` becomes `u^{wᵢ} dxᵢ`. Returns `k` when the result is `u^k` times
    /// the original form.
    pub fn scale_weight(&self) -> Result<Weight, LogCalcError> {
        let weights = self
            .chart
            .weights()
            .ok_or_else(|| LogCalcError::InvalidChart("no weights declared".into()))?;
        if self.terms.is_empty() {
            return Ok(Weight::ZeroForm);
        }
        let vars = self.vars();
        let u_name = vars.fresh_name("u");
        let ext = vars.extended(&[u_name.as_str()])?;
        let u_index = vars.len();
        let u = RationalFunction::var(&ext, u_index);
        let mut images = HashMap::new();
        for i in 0..vars.len() {
            let x = RationalFunction::var(&ext, i);
            images.insert(vars.name(i).to_string(), &u.pow(weights[i]) * &x);
        }
        let mut found = None;
        for (idx, c) in &self.terms {
            let scaled = c.substitute(&images, &ext)?;
            let frame: i64 = idx
                .iter()
                .filter(|&&i| !self.chart.is_boundary(i))
                .map(|&i| weights[i])
                .sum();
            let ratio = &(&scaled * &u.pow(frame)) / &c.embed(&ext)?;
            let (unit, exps) = ratio.split_monomial(&[u_index]);
            if !unit.is_one() {
                return Ok(Weight::Inhomogeneous);
            }
            let k = exps.first().map_or(0, |&(_, e)| e);
            match found {
                None => found = Some(k),
                Some(prev) if prev != k => return Ok(Weight::Inhomogeneous),
                _ => {}
            }
        }
        Ok(Weight::Homogeneous(found.unwrap()))
    }

    /// Forms agree term by term.
    pub fn equals(&self, other: &Self) -> bool {
        self.chart == other.chart
            && self.degree == other.degree
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .all(|(k, v)| other.terms.get(k).is_some_and(|w| v.equals(w)))
    }

    pub(crate) fn insert_raw(&mut self, idx: Vec<usize>, coeff: RationalFunction) {
        self.add_term(idx, coeff);
    }
}

/// Determinant by fraction-free expansion along the first column.
fn determinant(m: Vec<Vec<RationalFunction>>) -> RationalFunction {
    let n = m.len();
    if n == 0 {
        panic!("determinant of an empty matrix needs a variable universe");
    }
    let vars = m[0][0].vars().clone();
    fn rec(m: &[Vec<RationalFunction>], rows: &mut Vec<usize>, col: usize, vars: &Variables) -> RationalFunction {
        if col == m.len() {
            return RationalFunction::one(vars);
        }
        let mut acc = RationalFunction::zero(vars);
        for pos in 0..rows.len() {
            let r = rows[pos];
            if m[r][col].is_zero() {
                continue;
            }
            rows.remove(pos);
            let minor = rec(m, rows, col + 1, vars);
            rows.insert(pos, r);
            let t = &m[r][col] * &minor;
            acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }
    let mut rows: Vec<usize> = (0..n).collect();
    rec(&m, &mut rows, 0, &vars)
}

impl fmt::Display for LogForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if idx.is_empty() {
                write!(f, "({c})")?;
                continue;
            }
            let basis: Vec<String> = idx.iter().map(|&i| self.chart.covector_label(i)).collect();
            if c.is_one() {
                write!(f, "{}", basis.join(" ∧ "))?;
            } else {
                write!(f, "({c}) {}", basis.join(" ∧ "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LogForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogForm[{}]({})", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_signs() {
        assert_eq!(merge_sign(&[1], &[0]), Some((vec![0, 1], true)));
        assert_eq!(merge_sign(&[0, 2], &[1]), Some((vec![0, 1, 2], true)));
        assert_eq!(merge_sign(&[1, 2], &[0]), Some((vec![0, 1, 2], false)));
        assert_eq!(merge_sign(&[0], &[0]), None);
    }

    #[test]
    fn from_terms_sorts_with_sign() {
        let chart = Chart::new(&["x", "y"], &[] as &[&str]).unwrap();
        let one = RationalFunction::one(chart.vars());
        let f = LogForm::from_terms(&chart, 2, [(vec![1, 0], one.clone())]).unwrap();
        assert_eq!(f.coefficient(&[0, 1]), -&one);
        let z = LogForm::from_terms(&chart, 2, [(vec![1, 1], one)]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn boundary_pole_rejected() {
        let chart = Chart::new(&["z", "t"], &["z"]).unwrap();
        let f = crate::ratfunc::parse_in("t/z", chart.vars()).unwrap();
        assert!(matches!(
            LogForm::from_terms(&chart, 1, [(vec![1], f)]),
            Err(LogCalcError::NonLogCoefficient { .. })
        ));
    }
}
