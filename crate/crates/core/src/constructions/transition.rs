use std::collections::{BTreeMap, HashMap};

use crate::logcalc::{Chart, LogForm, Substitution};
use crate::params::ConstructionParams;
use crate::ratfunc::{parse_in, RationalFunction};

use super::atlas::{Atlas, Transition};
use super::forms::{nonstandard_chart, nonstandard_form_on, standard_chart, standard_form_on, PRIME_SUFFIX};
use super::ConstructionError;

/// Whether the `−Σ g_l⁻¹ (∂g_l) t_l` term is applied to the fiber
/// coordinates of a non-standard transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Correction {
    Included,
    Dropped,
}

fn parse_all<S: AsRef<str>>(chart: &Chart, texts: &[S]) -> Result<Vec<RationalFunction>, ConstructionError> {
    texts.iter().map(|t| Ok(parse_in(t.as_ref(), chart.vars())?)).collect()
}

/// Error unless `f` only involves the coordinates `0..base`.
fn ensure_on_base(chart: &Chart, f: &RationalFunction, base: usize) -> Result<(), ConstructionError> {
    let other = (base..chart.dim()).find(|&i| f.numerator().involves(i) || f.denominator().involves(i));
    match other {
        Some(i) => Err(ConstructionError::CoordinateChange(format!(
            "`{f}` involves the fiber coordinate `{}`",
            chart.name(i)
        ))),
        None => Ok(()),
    }
}

/// Log-frame components over the base coordinates of `d ψ` (or `dlog ψ`).
fn log_row(chart: &Chart, psi: &RationalFunction, base: usize, log: bool) -> Result<Vec<RationalFunction>, ConstructionError> {
    let d = LogForm::function(chart, psi.clone())?.d();
    (0..base)
        .map(|i| {
            let c = d.coefficient(&[i]);
            Ok(if log { c.checked_div(psi)? } else { c })
        })
        .collect()
}

/// Gauss–Jordan inverse over rational functions.
fn invert(mut a: Vec<Vec<RationalFunction>>) -> Result<Vec<Vec<RationalFunction>>, ConstructionError> {
    let n = a.len();
    let vars = a[0][0].vars().clone();
    let mut inv: Vec<Vec<RationalFunction>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| RationalFunction::int(&vars, i64::from(i == j)))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| ConstructionError::CoordinateChange("Jacobian determinant vanishes".into()))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = a[col][j].checked_div(&p)?;
            inv[col][j] = inv[col][j].checked_div(&p)?;
        }
        for r in (0..n).filter(|&r| r != col) {
            let f = a[r][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
            }
        }
    }
    Ok(inv)
}

/// Fiber images `x'_k = Σᵢ (K⁻¹)ᵢₖ (xᵢ − cᵢ)` where `K` is the log Jacobian of
/// the base change and `cᵢ` the correction.
fn fiber_images(
    chart: &Chart,
    base_images: &[RationalFunction],
    base: usize,
    m: usize,
    x_offset: usize,
    correction: &[RationalFunction],
) -> Result<Vec<RationalFunction>, ConstructionError> {
    let jacobian = base_images
        .iter()
        .enumerate()
        .map(|(k, psi)| log_row(chart, psi, base, k < m))
        .collect::<Result<Vec<_>, _>>()?;
    let inv = invert(jacobian)?;
    let shifted: Vec<RationalFunction> = (0..base)
        .map(|i| &RationalFunction::var(chart.vars(), x_offset + i) - &correction[i])
        .collect();
    Ok((0..base)
        .map(|k| {
            (0..base).fold(RationalFunction::zero(chart.vars()), |acc, i| &acc + &(&inv[i][k] * &shifted[i]))
        })
        .collect())
}

fn check_base_change(
    chart: &Chart,
    base_images: &[RationalFunction],
    base: usize,
) -> Result<(), ConstructionError> {
    if base_images.len() != base {
        return Err(ConstructionError::CoordinateChange(format!(
            "{} images given for {base} base coordinates",
            base_images.len()
        )));
    }
    for f in base_images {
        ensure_on_base(chart, f, base)?;
    }
    Ok(())
}

fn build(source: &Chart, target: &Chart, images: Vec<RationalFunction>) -> Result<Substitution, ConstructionError> {
    let map: HashMap<String, RationalFunction> = (0..target.dim())
        .map(|i| target.name(i).to_string())
        .zip(images)
        .collect();
    Ok(Substitution::from_functions(source, target, &map)?)
}

/// `(y, x) ↦ (y', x')` for a base change `y'ᵢ = ψᵢ(y)`, with the fiber
/// coordinates transformed by the inverse transpose of the log Jacobian.
///
/// `base_change[i]` is `ψᵢ` written in the coordinates of the unprimed
/// chart.
pub fn standard_transition<S: AsRef<str>>(
    params: &ConstructionParams,
    base_change: &[S],
) -> Result<Substitution, ConstructionError> {
    params.validate_standard()?;
    let source = standard_chart(params, "")?;
    let target = standard_chart(params, PRIME_SUFFIX)?;
    let n = params.base_dim;
    let psi = parse_all(&source, base_change)?;
    check_base_change(&source, &psi, n)?;
    let zero = vec![RationalFunction::zero(source.vars()); n];
    let xs = fiber_images(&source, &psi, n, params.m, n, &zero)?;
    build(&source, &target, psi.into_iter().chain(xs).collect())
}

/// `(y, z, t, x) ↦ (y', z', t', x')` with `z'ₗ = gₗ zₗ`, `t'ₗ = tₗ`,
/// `y' = ψ(y)` and `x' = K⁻ᵀ (x − Σₗ tₗ gₗ⁻¹ ∂gₗ)`, where `K` is the log
/// Jacobian of `ψ`.
pub fn nonstandard_transition<S: AsRef<str>, T: AsRef<str>>(
    params: &ConstructionParams,
    g: &[S],
    base_change: &[T],
    correction: Correction,
) -> Result<Substitution, ConstructionError> {
    params.validate_nonstandard()?;
    let source = nonstandard_chart(params, "")?;
    let target = nonstandard_chart(params, PRIME_SUFFIX)?;
    let (b, s, m) = (params.base_dim, params.s, params.m);
    let psi = parse_all(&source, base_change)?;
    check_base_change(&source, &psi, b)?;
    let gs = parse_all(&source, g)?;
    if gs.len() != s {
        return Err(ConstructionError::CoordinateChange(format!(
            "{} transition functions given for s = {s}",
            gs.len()
        )));
    }
    let boundary = source.boundary_indices();
    for gl in &gs {
        ensure_on_base(&source, gl, b)?;
        if !gl.is_unit_along(&boundary) || !gl.is_unit_at_origin() {
            return Err(ConstructionError::NonUnit(gl.to_string()));
        }
    }
    let var = |i: usize| RationalFunction::var(source.vars(), i);
    let mut shift = vec![RationalFunction::zero(source.vars()); b];
    if correction == Correction::Included {
        for (l, gl) in gs.iter().enumerate() {
            let t = var(b + s + l);
            for (i, c) in log_row(&source, gl, b, true)?.into_iter().enumerate() {
                shift[i] = &shift[i] + &(&t * &c);
            }
        }
    }
    let xs = fiber_images(&source, &psi, b, m, b + 2 * s, &shift)?;
    let zs = gs.iter().enumerate().map(|(l, gl)| gl * &var(b + l));
    let ts = (0..s).map(|l| var(b + s + l));
    build(&source, &target, psi.into_iter().chain(zs).chain(ts).chain(xs).collect())
}

fn two_chart_atlas(
    source: &Chart,
    target: &Chart,
    source_form: LogForm,
    target_form: LogForm,
    substitution: Substitution,
) -> Result<Atlas, ConstructionError> {
    let charts = BTreeMap::from([("U".to_string(), source.clone()), ("U'".to_string(), target.clone())]);
    let forms = BTreeMap::from([("U".to_string(), source_form), ("U'".to_string(), target_form)]);
    let transitions = vec![Transition {
        from: "U".into(),
        to: "U'".into(),
        substitution,
    }];
    Atlas::new(charts, forms, transitions)
}

/// Charts `U`, `U'` carrying the standard form and the transition of
/// [`standard_transition`].
pub fn standard_atlas<S: AsRef<str>>(params: &ConstructionParams, base_change: &[S]) -> Result<Atlas, ConstructionError> {
    let sub = standard_transition(params, base_change)?;
    let (source, target) = (sub.source().clone(), sub.target().clone());
    let n = params.base_dim;
    two_chart_atlas(
        &source,
        &target,
        standard_form_on(&source, n)?,
        standard_form_on(&target, n)?,
        sub,
    )
}

/// Charts `U`, `U'` carrying the non-standard form and the transition of
/// [`nonstandard_transition`].
pub fn nonstandard_atlas<S: AsRef<str>, T: AsRef<str>>(
    params: &ConstructionParams,
    g: &[S],
    base_change: &[T],
    correction: Correction,
) -> Result<Atlas, ConstructionError> {
    let sub = nonstandard_transition(params, g, base_change, correction)?;
    let (source, target) = (sub.source().clone(), sub.target().clone());
    two_chart_atlas(
        &source,
        &target,
        nonstandard_form_on(&source, params)?,
        nonstandard_form_on(&target, params)?,
        sub,
    )
}
