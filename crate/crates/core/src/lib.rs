//! Exact symbolic verification of logarithmic contact structures.

pub mod ratfunc;
pub mod logcalc;
pub mod p1bundles;
pub mod params;
pub mod chow;
pub mod constructions;
