use std::sync::Arc;

use super::{BundleClass, ChowClass, ChowError, ChowRing, NormalConvention};
use crate::params::ConstructionParams;

/// `[Dᵢ] = ξ − π*c₁(Mᵢ)` on a projective bundle.
pub fn projbundle_divisor_class(ring: &Arc<ChowRing>, c1_m: &ChowClass) -> Result<ChowClass, ChowError> {
    let xi = ChowClass::xi(ring)?;
    xi.sub(&ChowClass::pullback(ring, c1_m)?)
}

/// Checks `K_X + D + (r+1)ξ = 0` on `X = P(E) → Y = P^d`, `d = base_dim`.
///
/// `E` has total Chern class `Π (1 + mᵢh) · c(T_Y(−log B))` and rank
/// `2s + d`. The canonical class is `K_X = π*K_Y − eξ + π*c₁(E)` and the
/// boundary `D = Σᵢ (ξ − π*c₁(Mᵢ)) + π*B`. An error is returned unless
/// `e = r + s + 1`, i.e. unless `dim X = 2r + 1`.
pub fn verify_contact_numerics(params: &ConstructionParams) -> Result<bool, ChowError> {
    let (r, s, d) = (params.r, params.s, params.base_dim);
    if params.m_degrees.len() != s {
        return Err(ChowError::InconsistentRanks(format!(
            "{} degrees given for s = {s} line bundles",
            params.m_degrees.len()
        )));
    }
    let e = 2 * s + d;
    if e != r + s + 1 {
        return Err(ChowError::InconsistentRanks(format!(
            "rank E = {e} but dim X = 2r + 1 needs rank r + s + 1 = {}",
            r + s + 1
        )));
    }
    let base = ChowRing::projective_space(d);
    let line_sum = BundleClass::split(&base, &params.m_degrees)?;
    let log_tangent = BundleClass::log_tangent(&base, &params.boundary_degrees, NormalConvention::NormalBundle)?;
    let padding = BundleClass::trivial(&base, e - s - d);
    let bundle = line_sum.direct_sum(&log_tangent)?.direct_sum(&padding)?;
    contact_class_identity(&bundle, &params.m_degrees, &params.boundary_degrees, r)
}

/// `K_X + D + (r+1)ξ = 0` on `X = P(E)` over a projective space, where `D`
/// is the sum of the divisors `ξ − π*c₁(Mᵢ)` for `Mᵢ = O(mᵢ)` and the
/// pullback of a boundary with components of the given degrees.
pub fn contact_class_identity(
    bundle: &BundleClass,
    m_degrees: &[i64],
    boundary_degrees: &[i64],
    r: usize,
) -> Result<bool, ChowError> {
    let base = bundle.ring();
    let ChowRing::ProjectiveSpace { n: d } = **base else {
        return Err(ChowError::Unsupported("base must be a projective space".into()));
    };
    let e = bundle.rank();
    let h = ChowClass::hyperplane(base)?;
    let x = ChowRing::proj_bundle(bundle)?;
    let xi = ChowClass::xi(&x)?;
    let pull = |c: &ChowClass| ChowClass::pullback(&x, c);
    let k_y = h.scale(-(d as i64 + 1));
    let k_x = pull(&k_y)?
        .sub(&xi.scale(e as i64))?
        .add(&pull(&bundle.chern(1))?)?;
    let mut boundary = pull(&h.scale(boundary_degrees.iter().sum()))?;
    for &m in m_degrees {
        boundary = boundary.add(&projbundle_divisor_class(&x, &h.scale(m))?)?;
    }
    let total = k_x.add(&boundary)?.add(&xi.scale(r as i64 + 1))?;
    Ok(total.is_zero())
}
