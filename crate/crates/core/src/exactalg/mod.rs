//! Exact arithmetic: big-rational coefficients, sparse Laurent polynomials,
//! factored rational functions and q-numbers.

mod poly;
mod ratfun;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use poly::{rat, LaurentPoly, Monomial, Rational, Variable};
pub use ratfun::{normalize_factor, RationalFunction};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution of undeclared variable {0}")]
    UndeclaredVariable(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("not a Laurent polynomial: {0}")]
    NotPolynomial(String),
}

/// Declared variable set of a computation; substitutions are checked against it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VariableSet(BTreeSet<Variable>);

impl VariableSet {
    pub fn params() -> Self {
        VariableSet([Variable::Q, Variable::T].into_iter().collect())
    }

    pub fn with_slots(vertex: usize, count: u32) -> Self {
        let mut s = Self::params();
        s.add_slots(vertex, count);
        s
    }

    pub fn add_slots(&mut self, vertex: usize, count: u32) {
        for k in 1..=count {
            self.0.insert(Variable::slot(vertex, k));
        }
    }

    pub fn contains(&self, v: &Variable) -> bool {
        self.0.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Variable> {
        self.0.iter()
    }
}

/// Substitutes variables of `f` by rational functions; every key and every
/// variable of `f` must belong to `declared`.
pub fn substitute(
    f: &RationalFunction,
    map: &HashMap<Variable, RationalFunction>,
    declared: &VariableSet,
) -> Result<RationalFunction, AlgError> {
    for v in map.keys().chain(f.variables().iter()) {
        if !declared.contains(v) {
            return Err(AlgError::UndeclaredVariable(v.to_string()));
        }
    }
    f.substitute(map)
}

/// Exact division of the polynomial form of `f` by `g`.
///
/// `Ok(Some(quotient))` iff `g` divides; an error if `f` is not a Laurent polynomial.
pub fn exact_divide(f: &RationalFunction, g: &LaurentPoly) -> Result<Option<LaurentPoly>, AlgError> {
    if g.is_zero() {
        return Err(AlgError::DivisionByZero);
    }
    let p = f.as_laurent().ok_or_else(|| AlgError::NotPolynomial(f.to_string()))?;
    Ok(p.exact_div(g))
}

/// Balanced quantum integer `[n] = (q^n - q^-n)/(q - q^-1)`.
pub fn q_int(n: i64) -> LaurentPoly {
    if n < 0 {
        return q_int(-n).neg();
    }
    LaurentPoly::from_terms((0..n).map(|k| (Monomial::var(Variable::Q, (n - 1 - 2 * k) as i32), rat(1))))
}

pub fn q_factorial(n: u32) -> LaurentPoly {
    (1..=n as i64).fold(LaurentPoly::one(), |acc, k| acc.mul(&q_int(k)))
}

/// Balanced Gaussian binomial; zero outside `0 <= k <= l`.
pub fn q_binomial(l: i64, k: i64) -> LaurentPoly {
    if k < 0 || l < 0 || k > l {
        return LaurentPoly::zero();
    }
    // Pascal: [l k] = q^-k [l-1 k] + q^(l-k) [l-1 k-1]
    let mut row = vec![LaurentPoly::one()];
    for n in 1..=l {
        let mut next = Vec::with_capacity(n as usize + 1);
        for j in 0..=n {
            let a = if j < n { row[j as usize].mul(&LaurentPoly::q_pow(-j as i32)) } else { LaurentPoly::zero() };
            let b = if j > 0 { row[j as usize - 1].mul(&LaurentPoly::q_pow((n - j) as i32)) } else { LaurentPoly::zero() };
            next.push(a.add(&b));
        }
        row = next;
    }
    row[k as usize].clone()
}

/// One-sided quantum integer `(1 - q^-2n)/(1 - q^-2)`; kept for comparison
/// against the balanced convention.
pub fn q_int_one_sided(n: i64) -> LaurentPoly {
    assert!(n >= 0);
    LaurentPoly::from_terms((0..n).map(|k| (Monomial::var(Variable::Q, (-2 * k) as i32), rat(1))))
}

pub fn q_binomial_one_sided(l: i64, k: i64) -> LaurentPoly {
    if k < 0 || k > l {
        return LaurentPoly::zero();
    }
    let fact = |n: i64| (1..=n).fold(LaurentPoly::one(), |acc, j| acc.mul(&q_int_one_sided(j)));
    fact(l).exact_div(&fact(k).mul(&fact(l - k))).expect("Gaussian binomials are polynomial")
}

/// A scalar times a product of Laurent-polynomial factors with integer
/// multiplicities (negative multiplicities are denominator factors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredProduct {
    pub scalar: RationalFunction,
    pub factors: Vec<(LaurentPoly, i32)>,
}

impl FactoredProduct {
    pub fn one() -> Self {
        FactoredProduct { scalar: RationalFunction::one(), factors: Vec::new() }
    }

    pub fn push(&mut self, p: LaurentPoly, k: i32) {
        if k != 0 {
            self.factors.push((p, k));
        }
    }

    /// Numerator/denominator factor pair `num/den`.
    pub fn push_ratio(&mut self, num: LaurentPoly, den: LaurentPoly) {
        self.push(num, 1);
        self.push(den, -1);
    }

    pub fn scale(&mut self, c: &RationalFunction) {
        self.scalar = self.scalar.mul(c);
    }

    pub fn extend(&mut self, other: &FactoredProduct) {
        self.scalar = self.scalar.mul(&other.scalar);
        self.factors.extend(other.factors.iter().cloned());
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty() && self.scalar.is_one()
    }

    /// Scalar part and multiset of primitive factors (see [`normalize_factor`]);
    /// equal canonical forms imply equal values.
    pub fn canonical(&self) -> (RationalFunction, BTreeMap<LaurentPoly, i32>) {
        let mut scalar = self.scalar.clone();
        let mut map: BTreeMap<LaurentPoly, i32> = BTreeMap::new();
        for (p, k) in &self.factors {
            let (c, m, p1) = normalize_factor(p);
            let unit = RationalFunction::from(LaurentPoly::term(m, c));
            scalar = scalar.mul(&unit.pow(*k).expect("nonzero factor"));
            if !p1.is_one() {
                *map.entry(p1).or_insert(0) += k;
            }
        }
        map.retain(|_, k| *k != 0);
        (scalar, map)
    }

    pub fn expand(&self) -> Result<RationalFunction, AlgError> {
        let mut num = LaurentPoly::one();
        let mut den = Vec::new();
        for (p, k) in &self.factors {
            if *k > 0 {
                num = num.mul(&p.pow(*k as u32));
            } else {
                den.push((p.clone(), (-k) as u32));
            }
        }
        Ok(RationalFunction::from_factors(num, &den)?.mul(&self.scalar))
    }
}

impl fmt::Display for FactoredProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.scalar.is_one() || self.factors.is_empty() {
            write!(f, "{}", self.scalar)?;
            first = false;
        }
        for (p, k) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if *k == 1 {
                write!(f, "({})", p)?;
            } else {
                write!(f, "({})^{}", p, k)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_binomials() {
        assert_eq!(q_binomial(2, 1), LaurentPoly::q_pow(1).add(&LaurentPoly::q_pow(-1)));
        assert_eq!(
            q_binomial(3, 1),
            LaurentPoly::q_pow(2).add(&LaurentPoly::one()).add(&LaurentPoly::q_pow(-2))
        );
        assert_eq!(q_binomial(5, 0), LaurentPoly::one());
        assert!(q_binomial(2, 3).is_zero());
        for l in 0..6 {
            for k in 0..=l {
                let lhs = q_binomial(l, k).mul(&q_factorial(k as u32)).mul(&q_factorial((l - k) as u32));
                assert_eq!(lhs, q_factorial(l as u32));
            }
        }
    }

    #[test]
    fn telescoping_quotient() {
        let q = LaurentPoly::var(Variable::Q);
        let f = RationalFunction::new(q.mul(&q).sub(&LaurentPoly::one()), q.sub(&LaurentPoly::one())).unwrap();
        assert_eq!(f.as_laurent(), Some(&q.add(&LaurentPoly::one())));
    }

    #[test]
    fn undeclared_substitution_rejected() {
        let f = RationalFunction::var(Variable::slot(0, 1));
        let mut map = HashMap::new();
        map.insert(Variable::slot(3, 1), RationalFunction::one());
        let declared = VariableSet::with_slots(0, 2);
        assert!(matches!(substitute(&f, &map, &declared), Err(AlgError::UndeclaredVariable(_))));
    }
}
