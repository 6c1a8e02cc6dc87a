use std::sync::Arc;

use logcontact::chow::program::parse_program;
use logcontact::chow::{
    appendix_a_p3, appendix_a_q3, appendix_a_value, projbundle_divisor_class, verify_contact_numerics,
    BundleClass, ChowClass, ChowError, ChowRing, NormalConvention,
};
use logcontact::params::ConstructionParams;
use proptest::prelude::*;

/// Truncated products of integer polynomials in `h`, written independently
/// of the engine.
fn series_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= n {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn series_inv(a: &[i64], n: usize) -> Vec<i64> {
    assert_eq!(a[0], 1);
    let mut out = vec![0; n + 1];
    out[0] = 1;
    for k in 1..=n {
        out[k] = -(1..=k).map(|i| a.get(i).copied().unwrap_or(0) * out[k - i]).sum::<i64>();
    }
    out
}

fn series_pow(a: &[i64], k: usize, n: usize) -> Vec<i64> {
    (0..k).fold(vec![1], |acc, _| series_mul(&acc, a, n))
}

fn pad(mut v: Vec<i64>, n: usize) -> Vec<i64> {
    v.resize(n + 1, 0);
    v
}

fn p(n: usize) -> Arc<ChowRing> {
    ChowRing::projective_space(n)
}

fn class(ring: &Arc<ChowRing>, coeffs: &[i64]) -> ChowClass {
    ChowClass::from_coeffs(ring, coeffs).unwrap()
}

fn coeffs(c: &ChowClass) -> Vec<i64> {
    c.coeffs().unwrap().to_vec()
}

fn bundle(ring: &Arc<ChowRing>, rank: usize, total: &[i64]) -> BundleClass {
    BundleClass::new(rank, class(ring, total)).unwrap()
}

#[test]
fn tangent_bundles() {
    assert_eq!(coeffs(BundleClass::tangent(&p(3)).unwrap().total()), [1, 4, 6, 4]);
    assert_eq!(coeffs(BundleClass::tangent(&p(1)).unwrap().total()), [1, 2]);
    let q = ChowRing::quadric_threefold();
    let tq = BundleClass::tangent(&q).unwrap();
    let oracle = series_mul(&series_pow(&[1, 1], 5, 3), &series_inv(&[1, 2], 3), 3);
    assert_eq!(coeffs(tq.total()), oracle);
    assert_eq!(oracle, [1, 3, 4, 2]);
    assert_eq!(tq.rank(), 3);
    // Euler characteristic of Q³ is 4.
    assert_eq!(tq.chern(3).integrate(), 4);
    assert_eq!(BundleClass::tangent(&p(3)).unwrap().chern(3).integrate(), 4);
}

#[test]
fn tangent_of_projective_bundle_is_unsupported() {
    let e = BundleClass::split(&p(1), &[0, 1]).unwrap();
    let x = ChowRing::proj_bundle(&e).unwrap();
    assert!(matches!(BundleClass::tangent(&x), Err(ChowError::Unsupported(_))));
}

#[test]
fn whitney_examples() {
    let ring = p(3);
    let total = BundleClass::split(&ring, &[0, 1]).unwrap();
    let sub = BundleClass::trivial(&ring, 1);
    let q = BundleClass::whitney_quotient(&total, &sub).unwrap();
    assert_eq!((q.rank(), coeffs(q.total())), (1, vec![1, 1, 0, 0]));

    let t = BundleClass::tangent(&ring).unwrap();
    let n = BundleClass::line(&ChowClass::hyperplane(&ring).unwrap().scale(2)).unwrap();
    let k = BundleClass::whitney_sub(&t, &n).unwrap();
    assert_eq!(coeffs(k.total()), [1, 2, 2, 0]);
    assert_eq!(k.rank(), 2);

    let e = bundle(&ring, 3, &[1, 2, -1, 5]);
    let same = BundleClass::whitney_quotient(&e, &BundleClass::trivial(&ring, 0)).unwrap();
    assert_eq!(same, e);
}

#[test]
fn whitney_rejects_bad_input() {
    let ring = p(3);
    let small = BundleClass::trivial(&ring, 1);
    let big = BundleClass::split(&ring, &[1, 1]).unwrap();
    assert!(matches!(
        BundleClass::whitney_sub(&small, &big),
        Err(ChowError::InconsistentRanks(_))
    ));
    assert!(BundleClass::new(2, class(&ring, &[2, 1])).is_err());
}

#[test]
fn twist_examples() {
    let ring = p(3);
    let h = ChowClass::hyperplane(&ring).unwrap();
    let l = BundleClass::line(&h.scale(2)).unwrap();
    assert_eq!(coeffs(l.twist(&h.scale(-3)).unwrap().total()), [1, -1, 0, 0]);
    let trivial = BundleClass::trivial(&ring, 2);
    assert_eq!(
        coeffs(trivial.twist(&h.scale(3)).unwrap().total()),
        series_pow(&[1, 3], 2, 3)
    );
    let e = bundle(&ring, 3, &[1, 2, 2]);
    assert_eq!(coeffs(&e.twist(&h.neg()).unwrap().chern(3)), [0, 0, 0, -1]);
}

/// `c(E ⊗ L) = Σᵢ cᵢ(E) (1 + t)^{r−i}` for `t = c₁(L)`.
fn twist_oracle(rank: usize, total: &[i64], t: i64, n: usize) -> Vec<i64> {
    let mut out = vec![0; n + 1];
    for (i, &c) in total.iter().enumerate().take(rank + 1) {
        let mut ci = vec![0; i + 1];
        ci[i] = c;
        let term = series_mul(&ci, &series_pow(&[1, t], rank - i, n), n);
        for k in 0..=n {
            out[k] += term[k];
        }
    }
    out
}

#[test]
fn twist_matches_root_expansion_on_non_split_class() {
    let ring = p(3);
    let h = ChowClass::hyperplane(&ring).unwrap();
    for total in [[1, 2, 2, 0], [1, 0, 3, -1], [1, -2, 5, 7]] {
        for t in -3..=3 {
            let e = bundle(&ring, 3, &total);
            assert_eq!(coeffs(e.twist(&h.scale(t)).unwrap().total()), twist_oracle(3, &total, t, 3));
        }
    }
}

#[test]
fn twist_matches_chern_roots_on_split_bundles() {
    let ring = p(3);
    let h = ChowClass::hyperplane(&ring).unwrap();
    let mut count = 0;
    for rank in 1..=4usize {
        let mut degrees = vec![-3i64; rank];
        loop {
            if degrees.windows(2).all(|w| w[0] >= w[1]) {
                let e = BundleClass::split(&ring, &degrees).unwrap();
                for t in -3..=3 {
                    let roots = degrees.iter().fold(vec![1], |acc, &a| series_mul(&acc, &[1, a + t], 3));
                    let twisted = e.twist(&h.scale(t)).unwrap();
                    assert_eq!(coeffs(twisted.total()), pad(roots, 3), "{degrees:?} ⊗ O({t})");
                    count += 1;
                }
            }
            let Some(k) = degrees.iter().rposition(|&a| a < 3) else { break };
            degrees[k] += 1;
            for a in &mut degrees[k + 1..] {
                *a = -3;
            }
        }
    }
    assert!(count > 1000);
}

#[test]
fn twist_rejects_non_divisor_class() {
    let ring = p(3);
    let e = BundleClass::trivial(&ring, 2);
    assert!(matches!(
        e.twist(&class(&ring, &[0, 1, 1])),
        Err(ChowError::DegreeMismatch { .. })
    ));
}

#[test]
fn dual_flips_odd_classes() {
    let ring = p(3);
    let e = bundle(&ring, 3, &[1, 2, 3, 4]);
    assert_eq!(coeffs(e.dual().total()), [1, -2, 3, -4]);
    assert_eq!(e.dual().dual(), e);
}

#[test]
fn log_tangent_examples() {
    let ring = p(3);
    let lt = BundleClass::log_tangent(&ring, &[2], NormalConvention::NormalBundle).unwrap();
    assert_eq!(coeffs(lt.total()), [1, 2, 2, 0]);
    assert_eq!(lt.rank(), 3);
    let empty = BundleClass::log_tangent(&ring, &[], NormalConvention::StructureSheaf).unwrap();
    assert_eq!(empty, BundleClass::tangent(&ring).unwrap());
    let od = BundleClass::log_tangent(&ring, &[2], NormalConvention::StructureSheaf).unwrap();
    assert_eq!(coeffs(od.total()), series_mul(&[1, 4, 6, 4], &[1, -2], 3));
    assert!(BundleClass::log_tangent(&ring, &[0], NormalConvention::NormalBundle).is_err());
}

#[test]
fn log_tangent_of_hyperplane_arrangements() {
    for n in 0..=6usize {
        let ring = p(n);
        for s in 0..=n {
            let ones = vec![1; s];
            let lt = BundleClass::log_tangent(&ring, &ones, NormalConvention::NormalBundle).unwrap();
            assert_eq!(coeffs(lt.total()), series_pow(&[1, 1], n + 1 - s, n), "n={n} s={s}");
            assert_eq!(lt.rank(), n);
        }
    }
}

#[test]
fn integration() {
    assert_eq!(class(&p(3), &[0, 0, 0, 1]).integrate(), 1);
    assert_eq!(class(&ChowRing::quadric_threefold(), &[0, 0, 0, 1]).integrate(), 2);
    assert_eq!(class(&p(3), &[5, 1, 0, 7]).integrate(), 7);
}

#[test]
fn appendix_values() {
    assert_eq!(appendix_a_p3(), -1);
    let ring = p(3);
    assert_eq!(appendix_a_value(&ring, &[], NormalConvention::NormalBundle).unwrap(), 1);
    assert_eq!(appendix_a_value(&ring, &[1, 1], NormalConvention::NormalBundle).unwrap(), 0);
    assert_eq!(appendix_a_value(&ring, &[2], NormalConvention::StructureSheaf).unwrap(), -5);
    assert_eq!(appendix_a_q3(), (-2, -4));
}

/// `∫ c₃(F ⊗ L)` computed from the twist oracle for a rank-3 class on a
/// power ring with `∫ h³ = deg`.
fn hand_appendix(total: &[i64], deg: i64) -> i64 {
    twist_oracle(3, total, -1, 3)[3] * deg
}

#[test]
fn appendix_values_match_hand_oracle() {
    let tq = series_mul(&series_pow(&[1, 1], 5, 3), &series_inv(&[1, 2], 3), 3);
    let q_nd = series_mul(&tq, &series_inv(&[1, 1], 3), 3);
    let q_sd = series_mul(&tq, &[1, -1], 3);
    assert_eq!(hand_appendix(&q_nd, 2), -2);
    assert_eq!(hand_appendix(&q_sd, 2), -4);
    let p_nd = series_mul(&series_pow(&[1, 1], 4, 3), &series_inv(&[1, 2], 3), 3);
    assert_eq!(hand_appendix(&p_nd, 1), appendix_a_p3());
}

#[test]
fn rank_two_bundles_have_no_c3() {
    let ring = p(3);
    let err = BundleClass::new(2, class(&ring, &[1, 2, 2, 1])).unwrap_err();
    assert!(matches!(err, ChowError::InvalidBundle(_)));
    let h = ChowClass::hyperplane(&ring).unwrap();
    for a in -3..=3 {
        for b in -3..=3 {
            let f = BundleClass::split(&ring, &[a, b]).unwrap();
            for t in -3..=3 {
                assert!(f.twist(&h.scale(t)).unwrap().chern(3).is_zero());
            }
        }
    }
    let q = ChowRing::quadric_threefold();
    assert!(BundleClass::new(2, class(&q, &[1, 0, 0, 1])).is_err());
}

#[test]
fn grothendieck_relation_reduces_to_zero() {
    let base = p(2);
    for degrees in [vec![0, 1], vec![2, -1, 0], vec![1, 1, 1, 3]] {
        let e = BundleClass::split(&base, &degrees).unwrap();
        let x = ChowRing::proj_bundle(&e).unwrap();
        let r = e.rank();
        let mut rel = ChowClass::zero(&x);
        for i in 0..=r {
            let term = ChowClass::pullback(&x, &e.chern(i)).unwrap().mul(&ChowClass::xi_power(&x, r - i).unwrap()).unwrap();
            rel = rel.add(&if i % 2 == 0 { term } else { term.neg() }).unwrap();
        }
        assert!(rel.is_zero(), "{degrees:?}");
        let pt = ChowClass::pullback(&x, &class(&base, &[0, 0, 1])).unwrap();
        assert_eq!(ChowClass::xi_power(&x, r - 1).unwrap().mul(&pt).unwrap().integrate(), 1);
    }
}

#[test]
fn hirzebruch_surface_self_intersection() {
    // P(O ⊕ O(1)) over P¹: ξ² = c₁ ξ, so ∫ ξ² = 1.
    let e = BundleClass::split(&p(1), &[0, 1]).unwrap();
    let x = ChowRing::proj_bundle(&e).unwrap();
    assert_eq!(ChowClass::xi(&x).unwrap().pow(2).integrate(), 1);
    assert_eq!(x.dim(), 2);
}

#[test]
fn pushforward_follows_segre_classes() {
    // π_* ξ^{e−1+k} = [c(E*)⁻¹]_k.
    let n = 3;
    let base = p(n);
    for degrees in [vec![1, 0], vec![2, -1, 1], vec![3, 1, 0, -2]] {
        let e = BundleClass::split(&base, &degrees).unwrap();
        let x = ChowRing::proj_bundle(&e).unwrap();
        let r = e.rank();
        let dual = degrees.iter().fold(vec![1], |acc, &a| series_mul(&acc, &[1, -a], n));
        let segre = series_inv(&dual, n);
        for k in 0..=n {
            let h_rest = class(&base, &pad([vec![0; n - k], vec![1]].concat(), n));
            let c = ChowClass::xi_power(&x, r - 1 + k).unwrap().mul(&ChowClass::pullback(&x, &h_rest).unwrap()).unwrap();
            assert_eq!(c.integrate(), segre[k], "{degrees:?} k={k}");
        }
    }
}

#[test]
fn divisor_classes_on_projective_bundles() {
    let base = p(1);
    let e = BundleClass::split(&base, &[1, 1, 2]).unwrap();
    let x = ChowRing::proj_bundle(&e).unwrap();
    let xi = ChowClass::xi(&x).unwrap();
    let h = ChowClass::hyperplane(&base).unwrap();
    assert_eq!(projbundle_divisor_class(&x, &ChowClass::zero(&base)).unwrap(), xi);
    let d3 = projbundle_divisor_class(&x, &h.scale(3)).unwrap();
    assert_eq!(d3, xi.sub(&ChowClass::pullback(&x, &h.scale(3)).unwrap()).unwrap());
    let d1 = projbundle_divisor_class(&x, &h).unwrap();
    assert_eq!(d1.sub(&d3).unwrap(), ChowClass::pullback(&x, &h.scale(2)).unwrap());
    assert!(projbundle_divisor_class(&base, &h).is_err());
}

#[test]
fn contact_numerics_examples() {
    for m in 1..=3 {
        let params = ConstructionParams::nonstandard(1, 1, 0).with_m_degrees(vec![m]);
        assert!(verify_contact_numerics(&params).unwrap());
    }
    let cotangent = ConstructionParams {
        base_dim: 3,
        ..ConstructionParams::standard(2, 0)
    }
    .with_boundary_degrees(vec![1]);
    assert!(verify_contact_numerics(&cotangent).unwrap());
    let mut bad = ConstructionParams::nonstandard(1, 1, 0).with_m_degrees(vec![1]);
    bad.base_dim = 2;
    assert!(matches!(verify_contact_numerics(&bad), Err(ChowError::InconsistentRanks(_))));
    let short = ConstructionParams::nonstandard(2, 2, 0).with_m_degrees(vec![1]);
    assert!(matches!(verify_contact_numerics(&short), Err(ChowError::InconsistentRanks(_))));
}

#[test]
fn contact_numerics_grid() {
    for r in 1..=3usize {
        for s in 0..=r {
            let mut tuples: Vec<Vec<i64>> = vec![vec![]];
            for _ in 0..s {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| (-2..=3).map(move |a| [t.clone(), vec![a]].concat()))
                    .collect();
            }
            for degrees in tuples {
                for boundary in [vec![], vec![1], vec![1, 2]] {
                    let params = ConstructionParams {
                        r,
                        s,
                        m: 0,
                        base_dim: r - s + 1,
                        m_degrees: degrees.clone(),
                        boundary_degrees: boundary,
                    };
                    assert!(verify_contact_numerics(&params).unwrap(), "{params:?}");
                }
            }
        }
    }
}

#[test]
fn chern_program_reproduces_pipeline() {
    let text = r#"{"ring": {"kind": "P", "n": 3}, "steps": [{"op": "tangent"}, {"op": "log", "degrees": [2], "convention": "OD(D)"}, {"op": "twist", "t": "-h"}, {"op": "c", "i": 3}, {"op": "integrate"}]}"#;
    let value = parse_program(text).unwrap().run().unwrap();
    assert_eq!(value.to_string(), "-1");
    let q = r#"{"ring": {"kind": "Q3"}, "steps": [{"op": "tangent"}, {"op": "log", "degrees": [1], "convention": "OD"}, {"op": "twist", "t": "-h"}, {"op": "c", "i": 3}, {"op": "integrate"}]}"#;
    assert_eq!(parse_program(q).unwrap().run().unwrap().to_string(), "-4");
}

#[test]
fn chern_program_errors_carry_location() {
    let bad = r#"{"ring": {"kind": "P", "n": 3}, "steps": [{"op": "tangent"}, {"op": "frobnicate"}]}"#;
    let err = parse_program(bad).unwrap_err().to_string();
    assert!(err.contains("steps[1]"), "{err}");
    let worse = r#"{"ring": {"kind": "P", "n": 3}, "steps": [{"op": "c", "i": 1}]}"#;
    assert!(parse_program(worse).unwrap().run().is_err());
    let twist = r#"{"ring": {"kind": "P", "n": 3}, "steps": [{"op": "tangent"}, {"op": "twist", "t": "h/2"}]}"#;
    assert!(parse_program(twist).unwrap().run().is_err());
}

fn power_class(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, n + 1)
}

fn bundle_ring() -> Arc<ChowRing> {
    ChowRing::proj_bundle(&BundleClass::split(&p(2), &[2, 0, -1]).unwrap()).unwrap()
}

fn xi_class() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(power_class(2), 3)
}

fn build_xi(x: &Arc<ChowRing>, parts: &[Vec<i64>]) -> ChowClass {
    let base = p(2);
    parts.iter().enumerate().fold(ChowClass::zero(x), |acc, (j, b)| {
        let term = ChowClass::pullback(x, &class(&base, b)).unwrap().mul(&ChowClass::xi_power(x, j).unwrap()).unwrap();
        acc.add(&term).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_ring_axioms(a in power_class(4), b in power_class(4), c in power_class(4)) {
        let ring = p(4);
        let (a, b, c) = (class(&ring, &a), class(&ring, &b), class(&ring, &c));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(coeffs(&a.mul(&b).unwrap()), series_mul(&coeffs(&a), &coeffs(&b), 4));
    }

    #[test]
    fn bundle_ring_axioms(a in xi_class(), b in xi_class(), c in xi_class()) {
        let x = bundle_ring();
        let (a, b, c) = (build_xi(&x, &a), build_xi(&x, &b), build_xi(&x, &c));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let top = x.dim() + 1;
        prop_assert!(a.mul(&ChowClass::xi_power(&x, top).unwrap()).unwrap().component(top).is_zero());
    }

    #[test]
    fn whitney_round_trip(sub in power_class(3), quot in power_class(3)) {
        let ring = p(3);
        let mut sub = sub; sub[0] = 1;
        let mut quot = quot; quot[0] = 1;
        let s = bundle(&ring, 3, &sub);
        let q = bundle(&ring, 3, &quot);
        let total = s.direct_sum(&q).unwrap();
        prop_assert_eq!(BundleClass::whitney_quotient(&total, &s).unwrap(), q.clone());
        prop_assert_eq!(BundleClass::whitney_sub(&total, &q).unwrap(), s);
    }

    #[test]
    fn twist_round_trip(total in power_class(3), t in -4i64..=4) {
        let ring = p(3);
        let mut total = total; total[0] = 1;
        let e = bundle(&ring, 3, &total);
        let h = ChowClass::hyperplane(&ring).unwrap().scale(t);
        prop_assert_eq!(e.twist(&h).unwrap().twist(&h.neg()).unwrap(), e);
    }

    #[test]
    fn inverse_is_inverse(c in power_class(5)) {
        let ring = p(5);
        let mut c = c; c[0] = 1;
        let c = class(&ring, &c);
        prop_assert!(c.mul(&c.inverse().unwrap()).unwrap() == ChowClass::one(&ring));
    }
}
