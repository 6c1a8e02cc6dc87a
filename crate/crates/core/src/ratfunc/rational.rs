use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{gcd, Polynomial, RatFuncError, Rational, Variables};

/// Field operation selector for [`RationalFunction::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A quotient of polynomials in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Build `num / den` in canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, RatFuncError> {
        num.vars().ensure_same(den.vars())?;
        if den.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero(num.vars());
        }
        if let Some(c) = den.constant_value() {
            let inv = c.recip();
            return RationalFunction {
                num: num.scale(&inv),
                den: Polynomial::one(den.vars()),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let (den, lc) = den.monic();
        let num = num.scale(&lc.recip());
        RationalFunction { num, den }
    }

    pub fn zero(vars: &Variables) -> Self {
        RationalFunction {
            num: Polynomial::zero(vars),
            den: Polynomial::one(vars),
        }
    }

    pub fn one(vars: &Variables) -> Self {
        Self::from_poly(Polynomial::one(vars))
    }

    pub fn from_int(vars: &Variables, c: i64) -> Self {
        Self::from_poly(Polynomial::from_int(vars, c))
    }

    pub fn constant(vars: &Variables, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(vars, c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.vars());
        RationalFunction { num: p, den }
    }

    pub fn var(vars: &Variables, i: usize) -> Self {
        Self::from_poly(Polynomial::var(vars, i))
    }

    pub fn var_named(vars: &Variables, name: &str) -> Result<Self, RatFuncError> {
        Ok(Self::from_poly(Polynomial::var_named(vars, name)?))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn vars(&self) -> &Variables {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(c)` when this is the constant `c`.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Integer value, when constant and integral.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.constant_value()
            .filter(|c| c.is_integer())
            .map(|c| c.to_integer())
    }

    /// Field arithmetic selected by `op`.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self, RatFuncError> {
        self.vars().ensure_same(other.vars())?;
        Ok(match op {
            ArithOp::Add => self.add_impl(other, true),
            ArithOp::Sub => self.add_impl(other, false),
            ArithOp::Mul => self.mul_impl(other),
            ArithOp::Div => {
                let inv = other.checked_inv()?;
                self.mul_impl(&inv)
            }
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, RatFuncError> {
        self.arith(other, ArithOp::Div)
    }

    pub fn checked_inv(&self) -> Result<Self, RatFuncError> {
        if self.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        let (den, lc) = self.num.monic();
        Ok(RationalFunction {
            num: self.den.scale(&lc.recip()),
            den,
        })
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero rational function")
    }

    fn add_impl(&self, other: &Self, plus: bool) -> Self {
        let combine = |a: &Polynomial, b: &Polynomial| if plus { a + b } else { a - b };
        if self.den == other.den {
            return Self::normalize(combine(&self.num, &other.num), self.den.clone());
        }
        if self.den.is_one() {
            return Self::normalize(
                combine(&(&self.num * &other.den), &other.num),
                other.den.clone(),
            );
        }
        if other.den.is_one() {
            return Self::normalize(
                combine(&self.num, &(&other.num * &self.den)),
                self.den.clone(),
            );
        }
        let g = gcd(&self.den, &other.den);
        let a_cof = self.den.div_exact(&g).unwrap();
        let b_cof = other.den.div_exact(&g).unwrap();
        let num = combine(&(&self.num * &b_cof), &(&other.num * &a_cof));
        Self::normalize(num, &self.den * &b_cof)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars());
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let (den, lc) = (&d1 * &d2).monic();
        RationalFunction {
            num: (&n1 * &n2).scale(&lc.recip()),
            den,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Self {
        if k >= 0 {
            RationalFunction {
                num: self.num.pow(k as u32),
                den: self.den.pow(k as u32),
            }
        } else {
            self.inv().pow(-k)
        }
    }

    /// ∂/∂x_i by the quotient rule.
    pub fn derivative(&self, i: usize) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative(i));
        }
        let num = &(&self.num.derivative(i) * &self.den) - &(&self.num * &self.den.derivative(i));
        Self::normalize(num, &self.den * &self.den)
    }

    /// ∂/∂`var`, looked up by name.
    pub fn partial_derivative(&self, var: &str) -> Result<Self, RatFuncError> {
        let i = self
            .vars()
            .index_of(var)
            .ok_or_else(|| RatFuncError::UnknownVariable(var.to_string()))?;
        Ok(self.derivative(i))
    }

    /// Substitute `images[i]` for the `i`-th variable; all images live in
    /// `target`. Variables that do not occur may map to `None`.
    pub fn substitute_indexed(
        &self,
        images: &[Option<&RationalFunction>],
        target: &Variables,
    ) -> Result<Self, RatFuncError> {
        let n = self.vars().len();
        assert_eq!(images.len(), n);
        let mut nums = Vec::with_capacity(n);
        let mut dens = Vec::with_capacity(n);
        for i in 0..n {
            let used = self.num.involves(i) || self.den.involves(i);
            match images[i] {
                Some(img) => {
                    img.vars().ensure_same(target)?;
                    nums.push(img.num.clone());
                    dens.push(img.den.clone());
                }
                None if used => {
                    return Err(RatFuncError::MissingImage(self.vars().name(i).to_string()))
                }
                None => {
                    nums.push(Polynomial::zero(target));
                    dens.push(Polynomial::one(target));
                }
            }
        }
        // p(n/d) = p~ / prod d_i^{deg_i p}, homogenizing each variable separately.
        let eval = |p: &Polynomial| -> (Polynomial, Polynomial) {
            let degs: Vec<u32> = (0..n).map(|i| p.degree_in(i)).collect();
            let mut acc = Polynomial::zero(target);
            for (m, c) in p.terms() {
                let mut t = Polynomial::constant(target, c.clone());
                for i in 0..n {
                    let e = m.exponents()[i];
                    if e > 0 {
                        t = &t * &nums[i].pow(e);
                    }
                    if degs[i] > e && !dens[i].is_one() {
                        t = &t * &dens[i].pow(degs[i] - e);
                    }
                }
                acc = &acc + &t;
            }
            let mut scale = Polynomial::one(target);
            for i in 0..n {
                if degs[i] > 0 && !dens[i].is_one() {
                    scale = &scale * &dens[i].pow(degs[i]);
                }
            }
            (acc, scale)
        };
        let (pn, sn) = eval(&self.num);
        let (pd, sd) = eval(&self.den);
        if pd.is_zero() {
            return Err(RatFuncError::ZeroDenominator);
        }
        Ok(Self::normalize(&pn * &sd, &pd * &sn))
    }

    /// Substitute by variable name. Every variable occurring in `self` needs
    /// an image; images live in `target`.
    pub fn substitute(
        &self,
        map: &HashMap<String, RationalFunction>,
        target: &Variables,
    ) -> Result<Self, RatFuncError> {
        let images: Vec<Option<&RationalFunction>> =
            self.vars().names().iter().map(|n| map.get(n)).collect();
        self.substitute_indexed(&images, target)
    }

    /// Rewrite over another universe, matching variables by name.
    pub fn embed(&self, target: &Variables) -> Result<Self, RatFuncError> {
        Ok(RationalFunction {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
    }

    /// True iff `self - other` is zero, decided by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        if self.vars() != other.vars() {
            return false;
        }
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    /// Split off the largest monomial in the variables `among`:
    /// `self = unit * prod x_i^{e_i}` where neither numerator nor denominator
    /// of `unit` is divisible by any of those variables.
    pub fn split_monomial(&self, among: &[usize]) -> (RationalFunction, Vec<(usize, i64)>) {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let mut exps = Vec::new();
        for &i in among {
            let a = num.var_valuation(i);
            let b = den.var_valuation(i);
            if a > 0 {
                num = num.unshift(i, a);
            }
            if b > 0 {
                den = den.unshift(i, b);
            }
            let e = a as i64 - b as i64;
            if e != 0 {
                exps.push((i, e));
            }
        }
        (RationalFunction { num, den }, exps)
    }

    /// Neither numerator nor denominator is divisible by any of the variables.
    pub fn is_unit_along(&self, among: &[usize]) -> bool {
        !self.is_zero()
            && among
                .iter()
                .all(|&i| self.num.var_valuation(i) == 0 && self.den.var_valuation(i) == 0)
    }

    /// Numerator and denominator have nonzero constant terms, so the
    /// function is invertible near the origin.
    pub fn is_unit_at_origin(&self) -> bool {
        !self.num.constant_term().is_zero() && !self.den.constant_term().is_zero()
    }

    /// Denominator has no factor among the given variables.
    pub fn is_regular_along(&self, among: &[usize]) -> bool {
        among.iter().all(|&i| self.den.var_valuation(i) == 0)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(self.vars() == rhs.vars(), "variable universe mismatch");
        self.add_impl(rhs, true)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(self.vars() == rhs.vars(), "variable universe mismatch");
        self.add_impl(rhs, false)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(self.vars() == rhs.vars(), "variable universe mismatch");
        self.mul_impl(rhs)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("rational function division")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.is_constant() && self.num.constant_value().is_some_and(|c| c.is_integer()) {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self)
    }
}

/// Convenience: `Rational` from a small integer.
pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl RationalFunction {
    /// Shorthand for `from_int(vars, 1).scale(c)` with integer `c`.
    pub fn int(vars: &Variables, c: i64) -> Self {
        if c == 0 {
            return Self::zero(vars);
        }
        Self::constant(vars, rat(c))
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Leading coefficient of the numerator (denominator is monic).
    pub fn leading_coeff(&self) -> Rational {
        if self.is_zero() {
            Rational::zero()
        } else {
            self.num.leading_coeff()
        }
    }

    pub fn is_unit_constant(&self) -> bool {
        self.constant_value().is_some_and(|c| !c.is_zero() && c.abs().is_one())
    }
}



#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse_in;

    fn vs(names: &[&str]) -> Variables {
        Variables::new(names).unwrap()
    }

    fn p(text: &str, v: &Variables) -> RationalFunction {
        parse_in(text, v).unwrap()
    }

    #[test]
    fn arith_examples() {
        let v = vs(&["x", "y", "h"]);
        assert_eq!(
            p("x/y", &v).arith(&p("1", &v), ArithOp::Add).unwrap(),
            p("(x+y)/y", &v)
        );
        assert!(p("1/(1+h)", &v).arith(&p("1+h", &v), ArithOp::Mul).unwrap().is_one());
        assert_eq!(
            p("x^2 - y^2", &v).arith(&p("x - y", &v), ArithOp::Div).unwrap(),
            p("x + y", &v)
        );
        assert_eq!(
            p("x", &v).arith(&RationalFunction::zero(&v), ArithOp::Div),
            Err(RatFuncError::DivisionByZero)
        );
    }

    #[test]
    fn derivative_examples() {
        let v = vs(&["x", "y"]);
        assert_eq!(p("x^2*y", &v).partial_derivative("x").unwrap(), p("2*x*y", &v));
        assert_eq!(p("1/y", &v).partial_derivative("y").unwrap(), p("-1/y^2", &v));
        assert_eq!(p("1 + x*y", &v).partial_derivative("x").unwrap(), p("y", &v));
        assert_eq!(
            p("x", &v).partial_derivative("w"),
            Err(RatFuncError::UnknownVariable("w".into()))
        );
    }

    #[test]
    fn substitute_examples() {
        let v = vs(&["x", "y"]);
        let u = vs(&["u"]);
        let mut map = HashMap::new();
        map.insert("x".to_string(), p("u + 1", &u));
        map.insert("y".to_string(), p("u", &u));
        assert_eq!(p("x*y", &v).substitute(&map, &u).unwrap(), p("u^2 + u", &u));

        let mut id = HashMap::new();
        id.insert("x".to_string(), p("x", &v));
        id.insert("y".to_string(), p("y", &v));
        assert_eq!(p("1/x", &v).substitute(&id, &v).unwrap(), p("1/x", &v));

        let mut swap = HashMap::new();
        swap.insert("x".to_string(), p("y", &v));
        swap.insert("y".to_string(), p("x", &v));
        assert_eq!(p("x/y", &v).substitute(&swap, &v).unwrap(), p("y/x", &v));

        let mut bad = HashMap::new();
        bad.insert("x".to_string(), p("y", &v));
        bad.insert("y".to_string(), p("y", &v));
        assert_eq!(
            p("1/(x - y)", &v).substitute(&bad, &v),
            Err(RatFuncError::ZeroDenominator)
        );
    }

    #[test]
    fn equals_examples() {
        let v = vs(&["x", "y", "h"]);
        assert!(p("(x^2 - y^2)/(x - y)", &v).equals(&p("x + y", &v)));
        assert!(!p("1/(1+h)", &v).equals(&p("1 - h", &v)));
        assert!(p("0/5", &v).equals(&RationalFunction::zero(&v)));
    }

    #[test]
    fn monic_denominator() {
        let v = vs(&["x"]);
        let f = p("3/(2*x + 4)", &v);
        assert!(f.denominator().leading_coeff().is_one());
        assert_eq!(f, p("(3/2)/(x + 2)", &v));
    }

    #[test]
    fn split_monomial_factor() {
        let v = vs(&["y", "z"]);
        let f = p("y^2*(1 + z)/(y*(2 + z))", &v);
        let (unit, exps) = f.split_monomial(&[0]);
        assert_eq!(exps, vec![(0, 1)]);
        assert!(unit.is_unit_along(&[0]));
        assert_eq!(unit, p("(1+z)/(2+z)", &v));
    }
}
