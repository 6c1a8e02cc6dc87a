use std::collections::HashMap;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::logcalc::{Chart, LogForm, LogVectorField, Substitution};
use crate::ratfunc::{Monomial, Polynomial, Rational, RationalFunction, Variables};

/// Seeded generator of small random calculus objects.
pub(crate) struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub(crate) fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn term(&mut self, vars: &Variables, max_deg: u32, constant: bool) -> Polynomial {
        let n = vars.len();
        let mut exps = vec![0u32; n];
        let deg = self.rng.gen_range(u32::from(!constant)..=max_deg);
        for _ in 0..deg {
            exps[self.rng.gen_range(0..n)] += 1;
        }
        let c = loop {
            let c = self.rng.gen_range(-4i64..=4);
            if c != 0 {
                break c;
            }
        };
        Polynomial::monomial(vars, Monomial::from_exponents(exps), Rational::from_integer(BigInt::from(c)))
    }

    pub(crate) fn poly(&mut self, vars: &Variables, max_deg: u32, max_terms: usize) -> Polynomial {
        let k = self.rng.gen_range(0..=max_terms);
        (0..k).fold(Polynomial::zero(vars), |acc, _| &acc + &self.term(vars, max_deg, true))
    }

    pub(crate) fn function(&mut self, vars: &Variables, max_deg: u32, max_terms: usize) -> RationalFunction {
        RationalFunction::from_poly(self.poly(vars, max_deg, max_terms))
    }

    /// `c + p` with `c ≠ 0` and `p` of degree at least 1.
    pub(crate) fn unit(&mut self, vars: &Variables) -> RationalFunction {
        let c = loop {
            let c = self.rng.gen_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        let k = self.rng.gen_range(0..=2);
        let p = (0..k).fold(Polynomial::from_int(vars, c), |acc, _| &acc + &self.term(vars, 1, false));
        RationalFunction::from_poly(p)
    }

    /// Polynomial coefficient divided by an occasional unit.
    fn coefficient(&mut self, chart: &Chart) -> RationalFunction {
        let num = self.function(chart.vars(), 2, 2);
        if self.rng.gen_bool(0.3) {
            &num / &self.unit(chart.vars())
        } else {
            num
        }
    }

    pub(crate) fn form(&mut self, chart: &Chart, degree: usize, max_terms: usize) -> LogForm {
        let n = chart.dim();
        let k = self.rng.gen_range(1..=max_terms);
        let terms: Vec<(Vec<usize>, RationalFunction)> = (0..k)
            .map(|_| {
                let idx = (0..degree).map(|_| self.rng.gen_range(0..n)).collect();
                (idx, self.coefficient(chart))
            })
            .collect();
        LogForm::from_terms(chart, degree, terms).expect("polynomial over unit coefficients are regular")
    }

    pub(crate) fn field(&mut self, chart: &Chart) -> LogVectorField {
        let coeffs = (0..chart.dim()).map(|_| self.function(chart.vars(), 2, 3)).collect();
        LogVectorField::new(chart, coeffs).expect("polynomial coefficients are regular")
    }

    /// A self-map of `chart` fixing the origin: boundary coordinates go to a
    /// unit times a boundary monomial, the others to polynomials without
    /// constant term.
    pub(crate) fn substitution(&mut self, chart: &Chart) -> Substitution {
        let boundary = chart.boundary_indices();
        let mut map = HashMap::new();
        for i in 0..chart.dim() {
            let img = if chart.is_boundary(i) {
                let mut img = self.unit(chart.vars());
                for &j in &boundary {
                    let e = self.rng.gen_range(0i64..=2);
                    img = &img * &RationalFunction::var(chart.vars(), j).pow(e);
                }
                img
            } else {
                let k = self.rng.gen_range(1..=2);
                let p = (0..k).fold(Polynomial::zero(chart.vars()), |acc, _| &acc + &self.term(chart.vars(), 2, false));
                RationalFunction::from_poly(p)
            };
            map.insert(chart.name(i).to_string(), img);
        }
        Substitution::from_functions(chart, chart, &map).expect("unit-monomial images define a log map")
    }

    pub(crate) fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
