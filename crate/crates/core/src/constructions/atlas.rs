use std::collections::BTreeMap;

use crate::logcalc::{Chart, LogForm, Substitution};

use super::ConstructionError;

/// A coordinate change from chart `from` to chart `to`. Forms on `to` pull
/// back to `from`.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub from: String,
    pub to: String,
    pub substitution: Substitution,
}

impl Transition {
    pub fn label(&self) -> String {
        format!("{} -> {}", self.from, self.to)
    }
}

/// Named charts, one form per chart, and transitions between them.
#[derive(Debug, Clone, PartialEq)]
pub struct Atlas {
    charts: BTreeMap<String, Chart>,
    forms: BTreeMap<String, LogForm>,
    transitions: Vec<Transition>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionCheck {
    pub transition: String,
    pub holds: bool,
    /// Why the check failed.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GluingReport {
    pub checks: Vec<TransitionCheck>,
}

impl GluingReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&TransitionCheck> {
        self.checks.iter().find(|c| !c.holds)
    }
}

impl Atlas {
    pub fn new(
        charts: BTreeMap<String, Chart>,
        forms: BTreeMap<String, LogForm>,
        transitions: Vec<Transition>,
    ) -> Result<Self, ConstructionError> {
        let err = |m: String| Err(ConstructionError::Atlas(m));
        for (name, form) in &forms {
            match charts.get(name) {
                None => return err(format!("form given for unknown chart `{name}`")),
                Some(c) if c != form.chart() => return err(format!("form for `{name}` lives on another chart")),
                _ => {}
            }
        }
        let mut weights = forms.values().map(LogForm::value_weight);
        if let Some(w) = weights.next() {
            if weights.any(|v| v != w) {
                return err("forms have different value weights".into());
            }
        }
        for t in &transitions {
            for (end, chart) in [(&t.from, t.substitution.source()), (&t.to, t.substitution.target())] {
                match charts.get(end) {
                    None => return err(format!("transition `{}` names unknown chart `{end}`", t.label())),
                    Some(c) if c != chart => {
                        return err(format!("transition `{}` does not match chart `{end}`", t.label()))
                    }
                    _ => {}
                }
            }
        }
        Ok(Atlas {
            charts,
            forms,
            transitions,
        })
    }

    pub fn charts(&self) -> &BTreeMap<String, Chart> {
        &self.charts
    }

    pub fn forms(&self) -> &BTreeMap<String, LogForm> {
        &self.forms
    }

    pub fn form(&self, chart: &str) -> Option<&LogForm> {
        self.forms.get(chart)
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Replace the substitution of the `index`-th transition.
    pub fn with_transition(mut self, index: usize, substitution: Substitution) -> Result<Self, ConstructionError> {
        let t = self
            .transitions
            .get_mut(index)
            .ok_or_else(|| ConstructionError::Atlas(format!("no transition #{index}")))?;
        t.substitution = substitution;
        Self::new(self.charts, self.forms, self.transitions)
    }

    /// For every transition, the pullback of the form on `to` must equal the
    /// form on `from`.
    pub fn check_gluing(&self) -> GluingReport {
        let checks = self
            .transitions
            .iter()
            .map(|t| {
                let label = t.label();
                let fail = |detail: String| TransitionCheck {
                    transition: label.clone(),
                    holds: false,
                    detail: Some(detail),
                };
                let (Some(src), Some(dst)) = (self.forms.get(&t.from), self.forms.get(&t.to)) else {
                    return fail("a chart carries no form".into());
                };
                match t.substitution.pullback(dst).and_then(|p| p.sub(src)) {
                    Ok(diff) if diff.is_zero() => TransitionCheck {
                        transition: label.clone(),
                        holds: true,
                        detail: None,
                    },
                    Ok(diff) => fail(format!("pullback minus form = {diff}")),
                    Err(e) => fail(e.to_string()),
                }
            })
            .collect();
        GluingReport { checks }
    }
}
