//! JSON form of an [`Atlas`].
//!
//! ```json
//! {"charts": {"U": {"vars": ["y1", "x1"], "boundary": ["y1"], "weights": {"x1": 1}}},
//!  "value_weight": 1,
//!  "forms": {"U": [{"coeff": "x1", "covectors": ["dlog y1"]}]},
//!  "transitions": [{"from": "U", "to": "U'",
//!                   "images": {"y1p": {"unit": "1 + y2", "monomial": {"y1": 1}},
//!                              "x1p": "x1"}}]}
//! ```
//!
//! Image keys are coordinates of `to`, written in the coordinates of `from`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::logcalc::{Chart, Image, LogForm, Substitution};
use crate::ratfunc::{parse_in, RationalFunction};

use super::{Atlas, ConstructionError, Transition};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub vars: Vec<String>,
    #[serde(default)]
    pub boundary: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    pub covectors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageSpec {
    Plain(String),
    UnitMonomial {
        unit: String,
        #[serde(default)]
        monomial: BTreeMap<String, i64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSpec {
    pub from: String,
    pub to: String,
    pub images: BTreeMap<String, ImageSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtlasSpec {
    pub charts: BTreeMap<String, ChartSpec>,
    #[serde(default)]
    pub value_weight: i64,
    #[serde(default)]
    pub forms: BTreeMap<String, Vec<TermSpec>>,
    #[serde(default)]
    pub transitions: Vec<TransitionSpec>,
}

fn escape(segment: &str) -> String {
    segment.replace('~', "~0").replace('/', "~1")
}

fn pointer(parts: &[&str]) -> String {
    parts.iter().map(|p| format!("/{}", escape(p))).collect()
}

fn schema_err(parts: &[&str], message: impl ToString) -> ConstructionError {
    ConstructionError::Schema {
        pointer: pointer(parts),
        message: message.to_string(),
    }
}

/// Parse the JSON text of an atlas; structural errors carry the JSON
/// pointer of the offending value.
pub fn parse_atlas_spec(text: &str) -> Result<AtlasSpec, ConstructionError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer: String = e
            .path()
            .iter()
            .filter_map(|seg| match seg {
                serde_path_to_error::Segment::Seq { index } => Some(format!("/{index}")),
                serde_path_to_error::Segment::Map { key } => Some(format!("/{}", escape(key))),
                serde_path_to_error::Segment::Enum { variant } => Some(format!("/{}", escape(variant))),
                serde_path_to_error::Segment::Unknown => None,
            })
            .collect();
        ConstructionError::Schema {
            pointer,
            message: e.into_inner().to_string(),
        }
    })
}

/// Parse and validate an atlas.
pub fn load_atlas(text: &str) -> Result<Atlas, ConstructionError> {
    parse_atlas_spec(text)?.build()
}

/// JSON text of an atlas.
pub fn emit_atlas(atlas: &Atlas) -> String {
    serde_json::to_string_pretty(&AtlasSpec::from_atlas(atlas)).expect("atlas specs serialize")
}

fn parse_expr(chart: &Chart, text: &str, at: &[&str]) -> Result<RationalFunction, ConstructionError> {
    parse_in(text, chart.vars()).map_err(|e| schema_err(at, e))
}

/// Chart index of a covector label `dlog v` or `dv`.
fn covector_index(chart: &Chart, label: &str) -> Result<usize, String> {
    let (name, log) = match label.strip_prefix("dlog ") {
        Some(rest) => (rest.trim(), true),
        None => match label.strip_prefix('d') {
            Some(rest) => (rest.trim(), false),
            None => return Err(format!("`{label}` is not a covector label")),
        },
    };
    let i = chart
        .index(name)
        .map_err(|_| format!("`{label}` names no chart coordinate"))?;
    match (log, chart.is_boundary(i)) {
        (true, false) => Err(format!("`{label}`: `{name}` is not a boundary coordinate")),
        (false, true) => Err(format!("`{label}`: use `dlog {name}` for a boundary coordinate")),
        _ => Ok(i),
    }
}

impl AtlasSpec {
    pub fn build(&self) -> Result<Atlas, ConstructionError> {
        let mut charts = BTreeMap::new();
        for (name, spec) in &self.charts {
            let mut chart = Chart::new(&spec.vars, &spec.boundary).map_err(|e| schema_err(&["charts", name], e))?;
            if let Some(w) = &spec.weights {
                chart = chart
                    .with_weight_map(w)
                    .map_err(|e| schema_err(&["charts", name, "weights"], e))?;
            }
            charts.insert(name.clone(), chart);
        }
        let mut forms = BTreeMap::new();
        for (name, terms) in &self.forms {
            let chart = charts
                .get(name)
                .ok_or_else(|| schema_err(&["forms", name], "no chart of this name"))?;
            let degree = terms.first().map_or(1, |t| t.covectors.len());
            let mut parsed = Vec::with_capacity(terms.len());
            for (k, term) in terms.iter().enumerate() {
                let ks = k.to_string();
                let coeff = parse_expr(chart, &term.coeff, &["forms", name, &ks, "coeff"])?;
                let mut idx = Vec::with_capacity(term.covectors.len());
                for (j, label) in term.covectors.iter().enumerate() {
                    let js = j.to_string();
                    idx.push(
                        covector_index(chart, label)
                            .map_err(|m| schema_err(&["forms", name, &ks, "covectors", &js], m))?,
                    );
                }
                parsed.push((idx, coeff));
            }
            let form = LogForm::from_terms(chart, degree, parsed)
                .map_err(|e| schema_err(&["forms", name], e))?
                .with_value_weight(self.value_weight);
            forms.insert(name.clone(), form);
        }
        let mut transitions = Vec::new();
        for (k, spec) in self.transitions.iter().enumerate() {
            let ks = k.to_string();
            let at = |parts: &[&str]| -> Vec<String> {
                ["transitions", ks.as_str()].iter().chain(parts).map(|p| p.to_string()).collect()
            };
            let source = charts
                .get(&spec.from)
                .ok_or_else(|| schema_err(&strs(&at(&["from"])), format!("unknown chart `{}`", spec.from)))?;
            let target = charts
                .get(&spec.to)
                .ok_or_else(|| schema_err(&strs(&at(&["to"])), format!("unknown chart `{}`", spec.to)))?;
            let mut images = Vec::new();
            for (var, img) in &spec.images {
                let here = at(&["images", var]);
                let here: Vec<&str> = here.iter().map(String::as_str).collect();
                let image = match img {
                    ImageSpec::Plain(f) => Image::Plain(parse_expr(source, f, &here)?),
                    ImageSpec::UnitMonomial { unit, monomial } => {
                        let unit = parse_expr(source, unit, &[here.as_slice(), &["unit"]].concat())?;
                        let exponents = monomial
                            .iter()
                            .map(|(v, &e)| {
                                source
                                    .index(v)
                                    .map(|j| (j, e))
                                    .map_err(|e| schema_err(&[here.as_slice(), &["monomial", v]].concat(), e))
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        Image::UnitMonomial { unit, exponents }
                    }
                };
                images.push((var.clone(), image));
            }
            let substitution =
                Substitution::new(source, target, images).map_err(|e| schema_err(&strs(&at(&["images"])), e))?;
            transitions.push(Transition {
                from: spec.from.clone(),
                to: spec.to.clone(),
                substitution,
            });
        }
        Atlas::new(charts, forms, transitions)
    }

    pub fn from_atlas(atlas: &Atlas) -> Self {
        let charts = atlas
            .charts()
            .iter()
            .map(|(name, c)| {
                let weights = c.weights().map(|w| {
                    (0..c.dim()).map(|i| (c.name(i).to_string(), w[i])).collect()
                });
                let spec = ChartSpec {
                    vars: (0..c.dim()).map(|i| c.name(i).to_string()).collect(),
                    boundary: c.boundary_names().into_iter().map(String::from).collect(),
                    weights,
                };
                (name.clone(), spec)
            })
            .collect();
        let forms = atlas
            .forms()
            .iter()
            .map(|(name, f)| {
                let terms = f
                    .terms()
                    .map(|(idx, c)| TermSpec {
                        coeff: c.to_string(),
                        covectors: idx.iter().map(|&i| f.chart().covector_label(i)).collect(),
                    })
                    .collect();
                (name.clone(), terms)
            })
            .collect();
        let transitions = atlas
            .transitions()
            .iter()
            .map(|t| {
                let (source, target) = (t.substitution.source(), t.substitution.target());
                let images = t
                    .substitution
                    .images()
                    .iter()
                    .enumerate()
                    .map(|(i, img)| {
                        let spec = match img {
                            Image::Plain(f) => ImageSpec::Plain(f.to_string()),
                            Image::UnitMonomial { unit, exponents } => ImageSpec::UnitMonomial {
                                unit: unit.to_string(),
                                monomial: exponents
                                    .iter()
                                    .map(|&(j, e)| (source.name(j).to_string(), e))
                                    .collect(),
                            },
                        };
                        (target.name(i).to_string(), spec)
                    })
                    .collect();
                TransitionSpec {
                    from: t.from.clone(),
                    to: t.to.clone(),
                    images,
                }
            })
            .collect();
        AtlasSpec {
            charts,
            value_weight: atlas.forms().values().next().map_or(0, LogForm::value_weight),
            forms,
            transitions,
        }
    }
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}
