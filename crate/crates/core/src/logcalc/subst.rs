use std::collections::HashMap;

use super::{Chart, LogCalcError, LogForm};
use crate::ratfunc::RationalFunction;

/// Image of one target coordinate, written in source coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Image {
    /// `unit · Π xⱼ^{eⱼ}` over source boundary coordinates `xⱼ`.
    UnitMonomial {
        unit: RationalFunction,
        exponents: Vec<(usize, i64)>,
    },
    Plain(RationalFunction),
}

impl Image {
    fn value(&self, source: &Chart) -> RationalFunction {
        match self {
            Image::Plain(f) => f.clone(),
            Image::UnitMonomial { unit, exponents } => exponents.iter().fold(unit.clone(), |acc, &(j, e)| {
                &acc * &RationalFunction::var(source.vars(), j).pow(e)
            }),
        }
    }
}

/// A coordinate change from `source` to `target`: each target coordinate is
/// a function of the source ones, with boundary coordinates mapped to units
/// times boundary monomials. Forms on `target` pull back to `source`.
#[derive(Debug, Clone, PartialEq)]
pub struct Substitution {
    source: Chart,
    target: Chart,
    images: Vec<Image>,
    values: Vec<RationalFunction>,
    coframe: Vec<LogForm>,
}

impl Substitution {
    /// `images` gives every target coordinate by name.
    pub fn new(source: &Chart, target: &Chart, images: Vec<(String, Image)>) -> Result<Self, LogCalcError> {
        let mut slots: Vec<Option<Image>> = vec![None; target.dim()];
        for (name, img) in images {
            let i = target.index(&name)?;
            if slots[i].is_some() {
                return Err(LogCalcError::NonLogImage {
                    var: name,
                    reason: "given twice".into(),
                });
            }
            slots[i] = Some(img);
        }
        let source_boundary = source.boundary_indices();
        let mut images = Vec::with_capacity(target.dim());
        for (i, slot) in slots.into_iter().enumerate() {
            let name = target.name(i).to_string();
            let bad = |reason: &str| LogCalcError::NonLogImage {
                var: name.clone(),
                reason: reason.to_string(),
            };
            let img = slot.ok_or_else(|| bad("no image given"))?;
            match (&img, target.is_boundary(i)) {
                (Image::UnitMonomial { unit, exponents }, true) => {
                    source.vars().ensure_same(unit.vars())?;
                    if !unit.is_unit_along(&source_boundary) || !unit.is_unit_at_origin() {
                        return Err(bad(&format!("`{unit}` is not a unit along the boundary")));
                    }
                    if exponents.iter().any(|&(j, _)| j >= source.dim() || !source.is_boundary(j)) {
                        return Err(bad("monomial involves a non-boundary coordinate"));
                    }
                }
                (Image::Plain(f), false) => {
                    source.vars().ensure_same(f.vars())?;
                    if !f.is_regular_along(&source_boundary) {
                        return Err(bad(&format!("`{f}` has a pole along the boundary")));
                    }
                }
                (Image::Plain(_), true) => return Err(bad("boundary coordinate needs a unit times a monomial")),
                (Image::UnitMonomial { .. }, false) => {
                    return Err(bad("unit-monomial image given for a non-boundary coordinate"))
                }
            }
            images.push(img);
        }
        let values: Vec<RationalFunction> = images.iter().map(|img| img.value(source)).collect();
        let coframe = images
            .iter()
            .zip(&values)
            .map(|(img, value)| match img {
                Image::UnitMonomial { unit, exponents } => {
                    let mut form = LogForm::zero(source, 1);
                    for (j, c) in LogForm::differential(source, unit) {
                        form.insert_raw(vec![j], &c / unit);
                    }
                    for &(j, e) in exponents {
                        form.insert_raw(vec![j], RationalFunction::int(source.vars(), e));
                    }
                    form
                }
                Image::Plain(_) => {
                    let mut form = LogForm::zero(source, 1);
                    for (j, c) in LogForm::differential(source, value) {
                        form.insert_raw(vec![j], c);
                    }
                    form
                }
            })
            .collect();
        Ok(Substitution {
            source: source.clone(),
            target: target.clone(),
            images,
            values,
            coframe,
        })
    }

    /// Build from plain functions, splitting off the boundary monomial of
    /// each boundary image.
    pub fn from_functions(
        source: &Chart,
        target: &Chart,
        map: &HashMap<String, RationalFunction>,
    ) -> Result<Self, LogCalcError> {
        let boundary = source.boundary_indices();
        let mut images = Vec::new();
        for i in 0..target.dim() {
            let name = target.name(i);
            let f = map.get(name).ok_or_else(|| LogCalcError::NonLogImage {
                var: name.to_string(),
                reason: "no image given".into(),
            })?;
            let img = if target.is_boundary(i) {
                if f.is_zero() {
                    return Err(LogCalcError::NonLogImage {
                        var: name.to_string(),
                        reason: "image is zero".into(),
                    });
                }
                let (unit, exponents) = f.split_monomial(&boundary);
                Image::UnitMonomial { unit, exponents }
            } else {
                Image::Plain(f.clone())
            };
            images.push((name.to_string(), img));
        }
        Self::new(source, target, images)
    }

    pub fn identity(chart: &Chart) -> Self {
        let map = (0..chart.dim())
            .map(|i| (chart.name(i).to_string(), RationalFunction::var(chart.vars(), i)))
            .collect();
        Self::from_functions(chart, chart, &map).expect("identity is a log map")
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn target(&self) -> &Chart {
        &self.target
    }

    pub fn images(&self) -> &[Image] {
        &self.images
    }

    /// Target coordinates as functions of the source ones.
    pub fn values(&self) -> &[RationalFunction] {
        &self.values
    }

    /// `f ∘ σ` for a function `f` on the target.
    pub fn pull_function(&self, f: &RationalFunction) -> Result<RationalFunction, LogCalcError> {
        let images: Vec<Option<&RationalFunction>> = self.values.iter().map(Some).collect();
        Ok(f.substitute_indexed(&images, self.source.vars())?)
    }

    pub fn pullback(&self, form: &LogForm) -> Result<LogForm, LogCalcError> {
        self.target.ensure_same(form.chart())?;
        let mut out = LogForm::zero(&self.source, form.degree()).with_value_weight(form.value_weight());
        for (idx, c) in form.terms() {
            let coeff = self.pull_function(c)?;
            let mut term = LogForm::zero(&self.source, 0);
            term.insert_raw(vec![], coeff);
            for &i in idx {
                term = term.wedge(&self.coframe[i])?;
            }
            for (k, v) in term.terms() {
                out.insert_raw(k.to_vec(), v.clone());
            }
        }
        let boundary = self.source.boundary_indices();
        for (_, c) in out.terms() {
            if !c.is_regular_along(&boundary) {
                return Err(LogCalcError::NonLogImage {
                    var: "*".into(),
                    reason: format!("pulled-back coefficient `{c}` has a boundary pole"),
                });
            }
        }
        Ok(out)
    }

    /// `self` followed by `then`: source of `self` to target of `then`.
    pub fn compose(&self, then: &Substitution) -> Result<Substitution, LogCalcError> {
        self.target.ensure_same(&then.source)?;
        let mut map = HashMap::new();
        for (i, v) in then.values.iter().enumerate() {
            map.insert(then.target.name(i).to_string(), self.pull_function(v)?);
        }
        Self::from_functions(&self.source, &then.target, &map)
    }
}
