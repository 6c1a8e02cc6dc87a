//! Multivariate GCD over ℚ by recursive primitive pseudo-remainder
//! sequences.
//!
//! A polynomial is viewed as univariate in its first occurring variable with
//! coefficients in the remaining ones; contents are computed recursively.
//! Inputs here are small, so no modular machinery is used.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::{Monomial, Polynomial, Rational};

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic().0;
    }
    if b.is_zero() {
        return a.monic().0;
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.vars());
    }
    if a.is_monomial() && b.is_monomial() {
        return monomial_gcd(a, b);
    }
    if b.div_exact(a).is_some() {
        return a.monic().0;
    }
    if a.div_exact(b).is_some() {
        return b.monic().0;
    }
    if coprime_by_specialization(a, b) {
        return Polynomial::one(a.vars());
    }
    let n = a.vars().len();
    let v = (0..n)
        .filter(|&i| a.involves(i) || b.involves(i))
        .min_by_key(|&i| a.degree_in(i).max(b.degree_in(i)))
        .expect("non-constant polynomial involves a variable");
    gcd_in(a, b, v).monic().0
}

/// Keep `v` and evaluate every other variable at `point`.
fn specialize(p: &Polynomial, v: usize, point: &[i64]) -> Polynomial {
    let mut terms = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut value = c.clone();
        for (j, &e) in m.exponents().iter().enumerate() {
            if j != v && e > 0 {
                value *= Rational::from_integer(BigInt::from(point[j]).pow(e));
            }
        }
        let mut e = vec![0; m.exponents().len()];
        e[v] = m.exponents()[v];
        let entry = terms.entry(Monomial(e)).or_insert_with(|| Rational::from_integer(0.into()));
        *entry += value;
    }
    terms.retain(|_, c| !c.is_zero());
    Polynomial::from_terms(p.vars(), terms)
}

/// `true` only when `a` and `b` are provably coprime.
///
/// If `lc_v(a)` and `lc_v(b)` survive a specialization of the other
/// variables, the specialized gcd has degree at least `deg_v gcd(a, b)`, so
/// a constant univariate gcd for every shared variable `v` proves
/// coprimality.
fn coprime_by_specialization(a: &Polynomial, b: &Polynomial) -> bool {
    let n = a.vars().len();
    for v in (0..n).filter(|&v| a.involves(v) && b.involves(v)) {
        let (la, lb) = (a.coeff_in(v, a.degree_in(v)), b.coeff_in(v, b.degree_in(v)));
        let found = (0..4i64).find_map(|attempt| {
            let point: Vec<i64> = (0..n as i64).map(|j| 2 + ((3 * j + 7 * attempt) % 11)).collect();
            let keeps = |lc: &Polynomial| !specialize(lc, v, &point).is_zero();
            (keeps(&la) && keeps(&lb)).then_some(point)
        });
        let Some(point) = found else { return false };
        let (sa, sb) = (specialize(a, v, &point), specialize(b, v, &point));
        if gcd_in(&sa, &sb, v).degree_in(v) > 0 {
            return false;
        }
    }
    true
}

fn monomial_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (ma, _) = a.leading_term().unwrap();
    let (mb, _) = b.leading_term().unwrap();
    let e = ma
        .exponents()
        .iter()
        .zip(mb.exponents())
        .map(|(x, y)| *x.min(y))
        .collect();
    Polynomial::monomial(a.vars(), super::Monomial(e), super::Rational::from_integer(1.into()))
}

/// Content with respect to variable `v` (a polynomial free of `v`) and the
/// primitive part.
fn content_primitive(p: &Polynomial, v: usize) -> (Polynomial, Polynomial) {
    let deg = p.degree_in(v);
    let mut content = Polynomial::zero(p.vars());
    for k in 0..=deg {
        let c = p.coeff_in(v, k);
        if c.is_zero() {
            continue;
        }
        content = gcd(&content, &c);
        if content.is_one() {
            break;
        }
    }
    let prim = p
        .div_exact(&content)
        .expect("content divides the polynomial");
    (content, prim)
}

fn gcd_in(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let (ca, pa) = content_primitive(a, v);
    let (cb, pb) = content_primitive(b, v);
    let c = gcd(&ca, &cb);
    if pa.degree_in(v) == 0 || pb.degree_in(v) == 0 {
        return c;
    }
    let (f, g) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let g = subresultant_prs(f, g, v).unwrap_or_else(|(f, g)| primitive_prs(f, g, v));
    &c * &g
}

/// Last nonzero subresultant of a primitive pair, made primitive in `v`.
/// Hands the pair back if an exact division fails.
fn subresultant_prs(f: Polynomial, g: Polynomial, v: usize) -> Result<Polynomial, (Polynomial, Polynomial)> {
    let (a0, b0) = (f.clone(), g.clone());
    let one = Polynomial::one(f.vars());
    let (mut f, mut g) = (f, g);
    let (mut lc, mut h) = (one.clone(), one.clone());
    loop {
        let delta = f.degree_in(v) - g.degree_in(v);
        let r = exact_pseudo_remainder(&f, &g, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return Ok(one);
        }
        let Some(next) = r.div_exact(&(&lc * &h.pow(delta))) else {
            return Err((a0, b0));
        };
        f = g;
        g = next;
        lc = f.coeff_in(v, f.degree_in(v));
        h = if delta == 0 {
            h
        } else {
            match lc.pow(delta).div_exact(&h.pow(delta - 1)) {
                Some(h) => h,
                None => return Err((a0, b0)),
            }
        };
    }
    Ok(content_primitive(&g, v).1.primitive_integer())
}

fn primitive_prs(mut f: Polynomial, mut g: Polynomial, v: usize) -> Polynomial {
    loop {
        let r = pseudo_remainder(&f, &g, v);
        if r.is_zero() {
            return g;
        }
        if r.degree_in(v) == 0 {
            return Polynomial::one(f.vars());
        }
        let (_, pr) = content_primitive(&r, v);
        f = g;
        g = pr.primitive_integer();
    }
}

/// `lc(g)^{δ+1} f mod g` in `v`, with `δ = deg f − deg g`.
fn exact_pseudo_remainder(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let dg = g.degree_in(v);
    let lcg = g.coeff_in(v, dg);
    let mut steps = f.degree_in(v) - dg + 1;
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lcr = r.coeff_in(v, dr);
        r = &(&r * &lcg) - &(&lcr * &g.shift(v, dr - dg));
        steps -= 1;
    }
    &r * &lcg.pow(steps)
}

fn pseudo_remainder(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let dg = g.degree_in(v);
    let lcg = g.coeff_in(v, dg);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lcr = r.coeff_in(v, dr);
        r = &(&r * &lcg) - &(&lcr * &g.shift(v, dr - dg));
        r = r.primitive_integer();
    }
    r
}
