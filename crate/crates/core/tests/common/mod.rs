#![allow(dead_code)]

use logcontact::ratfunc::{Monomial, Polynomial, Rational, RationalFunction, Variables};
use num_bigint::BigInt;
use proptest::prelude::*;

pub type TermSpec = Vec<(Vec<u32>, i64)>;

/// Random sparse polynomial data in `n` variables, total degree at most `max_deg`.
pub fn terms(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = TermSpec> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), -4i64..=4),
        0..=max_terms,
    )
    .prop_map(move |ts| {
        ts.into_iter()
            .map(|(mut e, c)| {
                while e.iter().sum::<u32>() > max_deg {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    e[i] -= 1;
                }
                (e, c)
            })
            .collect()
    })
}

pub fn poly(vars: &Variables, spec: &TermSpec) -> Polynomial {
    let mut acc = Polynomial::zero(vars);
    for (e, c) in spec {
        let m = Polynomial::monomial(vars, Monomial::from_exponents(e.clone()), Rational::from_integer(BigInt::from(*c)));
        acc = &acc + &m;
    }
    acc
}

pub fn rf(vars: &Variables, spec: &TermSpec) -> RationalFunction {
    RationalFunction::from_poly(poly(vars, spec))
}

/// Random fraction with a denominator that is never zero.
pub fn frac(vars: &Variables, num: &TermSpec, den: &TermSpec) -> RationalFunction {
    let mut d = poly(vars, den);
    if d.is_zero() {
        d = Polynomial::one(vars);
    }
    RationalFunction::new(poly(vars, num), d).unwrap()
}

/// `c + p` with `c ≠ 0` and `p` without constant term: a unit along every
/// coordinate hyperplane.
pub fn unit(vars: &Variables, c: i64, spec: &TermSpec) -> RationalFunction {
    let c = if c == 0 { 1 } else { c };
    let mut p = Polynomial::from_int(vars, c);
    for (e, k) in spec {
        if e.iter().all(|&x| x == 0) {
            continue;
        }
        let m = Polynomial::monomial(vars, Monomial::from_exponents(e.clone()), Rational::from_integer(BigInt::from(*k)));
        p = &p + &m;
    }
    RationalFunction::from_poly(p)
}
