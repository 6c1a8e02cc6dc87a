use crate::logcalc::{Chart, LogCalcError, LogForm};
use crate::params::ConstructionParams;
use crate::ratfunc::RationalFunction;

use super::ConstructionError;

/// Appended to coordinate names on the second chart of an atlas.
pub const PRIME_SUFFIX: &str = "p";

fn numbered(prefix: &str, n: usize, suffix: &str) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}{suffix}")).collect()
}

/// `Σ cᵢ · eⁱ` with `cᵢ` a chart coordinate and `eⁱ` a basis covector.
fn linear_form(chart: &Chart, pairs: &[(String, String)]) -> Result<LogForm, LogCalcError> {
    let terms = pairs
        .iter()
        .map(|(coeff, cov)| {
            Ok((
                vec![chart.index(cov)?],
                RationalFunction::var(chart.vars(), chart.index(coeff)?),
            ))
        })
        .collect::<Result<Vec<_>, LogCalcError>>()?;
    Ok(LogForm::from_terms(chart, 1, terms)?.with_value_weight(1))
}

pub(crate) fn standard_chart(params: &ConstructionParams, suffix: &str) -> Result<Chart, ConstructionError> {
    let n = params.base_dim;
    let ys = numbered("y", n, suffix);
    let xs = numbered("x", n, suffix);
    let vars: Vec<&String> = ys.iter().chain(&xs).collect();
    let weights: Vec<(&String, i64)> = ys.iter().map(|y| (y, 0)).chain(xs.iter().map(|x| (x, 1))).collect();
    Ok(Chart::new(&vars, &ys[..params.m])?.with_weights(&weights)?)
}

pub(crate) fn nonstandard_chart(params: &ConstructionParams, suffix: &str) -> Result<Chart, ConstructionError> {
    let (b, s) = (params.base_dim, params.s);
    let ys = numbered("y", b, suffix);
    let zs = numbered("z", s, suffix);
    let ts = numbered("t", s, suffix);
    let xs = numbered("x", b, suffix);
    let vars: Vec<&String> = ys.iter().chain(&zs).chain(&ts).chain(&xs).collect();
    let boundary: Vec<&String> = ys[..params.m].iter().chain(&zs).collect();
    let weights: Vec<(&String, i64)> = ys
        .iter()
        .map(|y| (y, 0))
        .chain(zs.iter().chain(&ts).chain(&xs).map(|v| (v, 1)))
        .collect();
    Ok(Chart::new(&vars, &boundary)?.with_weights(&weights)?)
}

pub(crate) fn standard_form_on(chart: &Chart, n: usize) -> Result<LogForm, ConstructionError> {
    let suffix = chart_suffix(chart);
    let pairs: Vec<(String, String)> = numbered("x", n, suffix)
        .into_iter()
        .zip(numbered("y", n, suffix))
        .collect();
    Ok(linear_form(chart, &pairs)?)
}

pub(crate) fn nonstandard_form_on(chart: &Chart, params: &ConstructionParams) -> Result<LogForm, ConstructionError> {
    let suffix = chart_suffix(chart);
    let mut pairs: Vec<(String, String)> = numbered("t", params.s, suffix)
        .into_iter()
        .zip(numbered("z", params.s, suffix))
        .collect();
    pairs.extend(numbered("x", params.base_dim, suffix).into_iter().zip(numbered("y", params.base_dim, suffix)));
    let mut form = linear_form(chart, &pairs)?;
    for t in numbered("t", params.s, suffix) {
        form = form.sub(&LogForm::dvar(chart, &t)?.with_value_weight(1))?;
    }
    Ok(form)
}

fn chart_suffix(chart: &Chart) -> &'static str {
    if chart.name(0).ends_with(PRIME_SUFFIX) {
        PRIME_SUFFIX
    } else {
        ""
    }
}

/// `Σ_{i≤m} xᵢ dlog yᵢ + Σ_{i>m} xᵢ dyᵢ` on `(y₁..y_{r+1}, x₁..x_{r+1})`
/// with boundary `y₁..y_m` and the fiber coordinates of weight 1.
pub fn standard_form(params: &ConstructionParams) -> Result<(Chart, LogForm), ConstructionError> {
    params.validate_standard()?;
    let chart = standard_chart(params, "")?;
    let form = standard_form_on(&chart, params.base_dim)?;
    Ok((chart, form))
}

/// `Σᵢ (tᵢ dlog zᵢ − dtᵢ) + Σ_{j≤m} xⱼ dlog yⱼ + Σ_{j>m} xⱼ dyⱼ` on
/// `(y.., z₁..z_s, t₁..t_s, x..)` with boundary `y₁..y_m, z₁..z_s` and
/// weight 1 on `z, t, x`.
pub fn nonstandard_form(params: &ConstructionParams) -> Result<(Chart, LogForm), ConstructionError> {
    params.validate_nonstandard()?;
    let chart = nonstandard_chart(params, "")?;
    let form = nonstandard_form_on(&chart, params)?;
    Ok((chart, form))
}

/// `Σ pᵢ dqⁱ + t dlog z − dt` on `(q¹..qⁿ, p₁..pₙ, t, z)` with boundary `z`
/// and weight 1 on `p, t, z`.
pub fn jet_b_contact_form(n: usize) -> Result<(Chart, LogForm), ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::Params(crate::params::ParamsError("need n ≥ 1".into())));
    }
    let qs = numbered("q", n, "");
    let ps = numbered("p", n, "");
    let (t, z) = ("t".to_string(), "z".to_string());
    let vars: Vec<&String> = qs.iter().chain(&ps).chain([&t, &z]).collect();
    let weights: Vec<(&String, i64)> = qs
        .iter()
        .map(|q| (q, 0))
        .chain(ps.iter().chain([&t, &z]).map(|v| (v, 1)))
        .collect();
    let chart = Chart::new(&vars, &[&z])?.with_weights(&weights)?;
    let mut pairs: Vec<(String, String)> = ps.into_iter().zip(qs).collect();
    pairs.push((t.clone(), z));
    let form = linear_form(&chart, &pairs)?.sub(&LogForm::dvar(&chart, &t)?.with_value_weight(1))?;
    Ok((chart, form))
}
