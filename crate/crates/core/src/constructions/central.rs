use std::collections::HashMap;

use crate::logcalc::{Chart, LogCalcError, LogVectorField};
use crate::ratfunc::RationalFunction;

/// `[xᵢ∂ᵢ, Y]` restricted to the stratum where every boundary coordinate
/// vanishes. Zero for every log field `Y` when `xᵢ` is a boundary
/// coordinate, so the frame fields `xᵢ∂ᵢ` are central on the stratum.
pub fn centrality_defect(chart: &Chart, i: usize, field: &LogVectorField) -> Result<LogVectorField, LogCalcError> {
    if i >= chart.dim() || !chart.is_boundary(i) {
        return Err(LogCalcError::InvalidChart(format!("#{i} is not a boundary coordinate")));
    }
    let bracket = LogVectorField::frame(chart, i).lie_bracket(field)?;
    let zero: HashMap<String, RationalFunction> = (0..chart.dim())
        .map(|j| {
            let image = if chart.is_boundary(j) {
                RationalFunction::zero(chart.vars())
            } else {
                RationalFunction::var(chart.vars(), j)
            };
            (chart.name(j).to_string(), image)
        })
        .collect();
    let restricted = bracket
        .coeffs()
        .iter()
        .map(|c| c.substitute(&zero, chart.vars()))
        .collect::<Result<Vec<_>, _>>()?;
    LogVectorField::new(chart, restricted)
}
