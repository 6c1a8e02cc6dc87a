//! Explicit charts, transition laws and algebras for the contact
//! constructions, and the driver that runs every verification.

mod atlas;
mod central;
mod forms;
mod lie;
pub mod schema;
mod sampler;
mod suite;
mod transition;

pub use atlas::{Atlas, GluingReport, Transition, TransitionCheck};
pub use central::centrality_defect;
pub use forms::{jet_b_contact_form, nonstandard_form, standard_form, PRIME_SUFFIX};
pub use lie::{heisenberg, heisenberg_with_form, quotient_by_isotropic, LieAlgebraTable};
pub use suite::{paper_suite, ConventionChoice, Provenance, ReportEntry, Status, SuiteOptions, Summary, VerificationReport};
pub use transition::{
    nonstandard_atlas, nonstandard_transition, standard_atlas, standard_transition, Correction,
};

use thiserror::Error;

use crate::logcalc::LogCalcError;
use crate::p1bundles::{SplittingError, SplittingType};
use crate::params::ParamsError;
use crate::ratfunc::RatFuncError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    LogCalc(#[from] LogCalcError),
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
    #[error("coordinate change: {0}")]
    CoordinateChange(String),
    #[error("transition function `{0}` is not a unit on the base")]
    NonUnit(String),
    #[error("atlas: {0}")]
    Atlas(String),
    #[error("Lie algebra: {0}")]
    Lie(String),
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

/// `O^{⊕(s−1)} ⊕ O(1)^{⊕(n−s+1)}`, the restriction of `T_{Pⁿ}(−log H)` to a
/// line for an arrangement `H` of `s` hyperplanes in general position.
pub fn arrangement_splitting(n: usize, s: usize) -> Result<SplittingType, SplittingError> {
    if s < 1 || s > n {
        return Err(SplittingError::Invalid(format!("need 1 ≤ s ≤ n, got n = {n}, s = {s}")));
    }
    let entries = std::iter::repeat_n(1, n - s + 1).chain(std::iter::repeat_n(0, s - 1));
    SplittingType::new(entries.collect())
}
