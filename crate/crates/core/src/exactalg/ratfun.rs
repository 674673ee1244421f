use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};

use super::poly::{LaurentPoly, Monomial, Rational, Variable};
use super::AlgError;

/// Splits `p = c * m * p1` with `p1` primitive (coprime integer coefficients,
/// positive leading coefficient, no monomial content).
pub fn normalize_factor(p: &LaurentPoly) -> (Rational, Monomial, LaurentPoly) {
    let m = p.monomial_content();
    let p0 = p.mul_monomial(&m.inverse());
    let mut c = p0.scalar_content();
    if p0.leading().map(|t| t.1.is_negative()).unwrap_or(false) {
        c = -c;
    }
    let p1 = p0.scale(&c.recip());
    (c, m, p1)
}

/// Quotient of a Laurent polynomial by a product of normalized polynomial factors.
///
/// Canonical form: every denominator factor is primitive with positive leading
/// coefficient and no monomial content; no factor divides the numerator; the
/// factor list is sorted. Zero has an empty denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: Vec<(LaurentPoly, u32)>,
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        RationalFunction { num: p, den: Vec::new() }
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        LaurentPoly::zero().into()
    }

    pub fn one() -> Self {
        LaurentPoly::one().into()
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::constant(c).into()
    }

    pub fn int(n: i64) -> Self {
        LaurentPoly::int(n).into()
    }

    pub fn var(v: Variable) -> Self {
        LaurentPoly::var(v).into()
    }

    pub fn q_pow(e: i32) -> Self {
        LaurentPoly::q_pow(e).into()
    }

    /// `num / den`, canonicalized.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgError> {
        RationalFunction::from(num).div(&RationalFunction::from(den))
    }

    /// Builds `num / prod(den_i^k_i)` from (not yet normalized) factors.
    pub fn from_factors(num: LaurentPoly, den: &[(LaurentPoly, u32)]) -> Result<Self, AlgError> {
        let mut num = num;
        let mut factors: BTreeMap<LaurentPoly, u32> = BTreeMap::new();
        for (p, k) in den {
            if p.is_zero() {
                return Err(AlgError::DivisionByZero);
            }
            let (c, m, p1) = normalize_factor(p);
            let inv = Monomial::one().div(&m.pow(*k as i32));
            num = num.mul_term(&inv, &num_traits::pow(c.recip(), *k as usize));
            if p1.as_constant().is_none() {
                *factors.entry(p1).or_insert(0) += k;
            }
        }
        let mut f = RationalFunction { num, den: factors.into_iter().collect() };
        f.cancel();
        Ok(f)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(LaurentPoly, u32)] {
        &self.den
    }

    /// The expanded denominator.
    pub fn denominator(&self) -> LaurentPoly {
        let mut d = LaurentPoly::one();
        for (p, k) in &self.den {
            d = d.mul(&p.pow(*k));
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_laurent().and_then(|p| p.as_constant())
    }

    pub fn involves_slots(&self) -> bool {
        self.num.involves_slots() || self.den.iter().any(|(p, _)| p.involves_slots())
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut v = self.num.variables();
        for (p, _) in &self.den {
            v.extend(p.variables());
        }
        v.sort();
        v.dedup();
        v
    }

    /// Removes every denominator factor that divides the numerator.
    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut kept = Vec::with_capacity(self.den.len());
        for (p, k) in std::mem::take(&mut self.den) {
            let mut k = k;
            while k > 0 {
                match self.num.exact_div(&p) {
                    Some(qt) => {
                        self.num = qt;
                        k -= 1;
                    }
                    None => break,
                }
            }
            if k > 0 {
                kept.push((p, k));
            }
        }
        self.den = kept;
    }

    /// Canonical form; idempotent. Values are kept canonical by every operation.
    pub fn canonical(&self) -> Self {
        let mut f = self.clone();
        f.cancel();
        f
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut f = RationalFunction { num: self.num.mul(p), den: self.den.clone() };
        if p.as_term().is_none() {
            f.cancel();
        } else if f.num.is_zero() {
            f.den.clear();
        }
        f
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // cancel each side's denominator against the other's numerator first
        let mut a = RationalFunction { num: self.num.clone(), den: other.den.clone() };
        a.cancel();
        let mut b = RationalFunction { num: other.num.clone(), den: self.den.clone() };
        b.cancel();
        let mut den: BTreeMap<LaurentPoly, u32> = BTreeMap::new();
        for (p, k) in a.den.into_iter().chain(b.den) {
            *den.entry(p).or_insert(0) += k;
        }
        RationalFunction { num: a.num.mul(&b.num), den: den.into_iter().collect() }
    }

    pub fn inverse(&self) -> Result<Self, AlgError> {
        if self.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Self::from_factors(self.denominator(), &[(self.num.clone(), 1)])
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgError> {
        if other.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        if let Some((m, c)) = other.num.as_term() {
            let inv = RationalFunction::from(LaurentPoly::term(m.inverse(), c.recip()));
            let den_as_num = RationalFunction::from(other.denominator());
            return Ok(self.mul(&inv).mul(&den_as_num));
        }
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, k: i32) -> Result<Self, AlgError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::sum([self.clone(), other.clone()])
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::sum([self.clone(), other.neg()])
    }

    /// Sum over a common denominator (the lcm of the factor multisets), cancelled once.
    pub fn sum<I: IntoIterator<Item = RationalFunction>>(terms: I) -> Self {
        let terms: Vec<RationalFunction> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        if terms.len() == 1 {
            return terms.into_iter().next().unwrap();
        }
        let mut lcm: BTreeMap<LaurentPoly, u32> = BTreeMap::new();
        for t in &terms {
            for (p, k) in &t.den {
                let e = lcm.entry(p.clone()).or_insert(0);
                *e = (*e).max(*k);
            }
        }
        // group terms by their complementary multiplier to share products
        let mut groups: HashMap<Vec<(LaurentPoly, u32)>, LaurentPoly> = HashMap::new();
        for t in terms {
            let have: BTreeMap<&LaurentPoly, u32> = t.den.iter().map(|(p, k)| (p, *k)).collect();
            let missing: Vec<(LaurentPoly, u32)> = lcm
                .iter()
                .filter_map(|(p, k)| {
                    let d = k - have.get(p).copied().unwrap_or(0);
                    (d > 0).then(|| (p.clone(), d))
                })
                .collect();
            let e = groups.entry(missing).or_insert_with(LaurentPoly::zero);
            *e = e.add(&t.num);
        }
        let mut num = LaurentPoly::zero();
        let mut keys: Vec<_> = groups.into_iter().collect();
        keys.sort_by(|a, b| a.0.cmp(&b.0));
        for (missing, partial) in keys {
            let mut m = partial;
            for (p, k) in &missing {
                m = m.mul(&p.pow(*k));
            }
            num = num.add(&m);
        }
        let mut f = RationalFunction { num, den: lcm.into_iter().collect() };
        f.cancel();
        f
    }

    /// Equality by cross-multiplication over the lcm of the denominators.
    pub fn equals(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let a: BTreeMap<&LaurentPoly, u32> = self.den.iter().map(|(p, k)| (p, *k)).collect();
        let b: BTreeMap<&LaurentPoly, u32> = other.den.iter().map(|(p, k)| (p, *k)).collect();
        let mut lhs = self.num.clone();
        let mut rhs = other.num.clone();
        for (p, k) in &a {
            let kb = b.get(p).copied().unwrap_or(0);
            if *k > kb {
                rhs = rhs.mul(&p.pow(k - kb));
            }
        }
        for (p, k) in &b {
            let ka = a.get(p).copied().unwrap_or(0);
            if *k > ka {
                lhs = lhs.mul(&p.pow(k - ka));
            }
        }
        lhs == rhs
    }

    /// Renames variables (e.g. a permutation of slots); keeps canonical form.
    pub fn rename<F: Fn(Variable) -> Variable>(&self, f: &F) -> Self {
        let mut num = self.num.rename(f);
        let mut den: BTreeMap<LaurentPoly, u32> = BTreeMap::new();
        for (p, k) in &self.den {
            let (c, m, p1) = normalize_factor(&p.rename(f));
            num = num.mul_term(&m.pow(-(*k as i32)), &num_traits::pow(c.recip(), *k as usize));
            *den.entry(p1).or_insert(0) += k;
        }
        RationalFunction { num, den: den.into_iter().collect() }
    }

    /// Substitution by scaled monomials (relabelings, specializations such as `t -> 1`).
    pub fn substitute_monomial(&self, map: &HashMap<Variable, (Rational, Monomial)>) -> Result<Self, AlgError> {
        let num = self.num.substitute_monomial(map);
        let den: Vec<(LaurentPoly, u32)> =
            self.den.iter().map(|(p, k)| (p.substitute_monomial(map), *k)).collect();
        Self::from_factors(num, &den)
    }

    /// General substitution of variables by rational functions.
    pub fn substitute(&self, map: &HashMap<Variable, RationalFunction>) -> Result<Self, AlgError> {
        let num = subst_poly(&self.num, map)?;
        let mut out = num;
        for (p, k) in &self.den {
            let d = subst_poly(p, map)?;
            if d.is_zero() {
                return Err(AlgError::DivisionByZero);
            }
            out = out.div(&d.pow(*k as i32)?)?;
        }
        Ok(out)
    }

    /// Laurent polynomial form, or an error naming the leftover denominator.
    pub fn into_laurent(self) -> Result<LaurentPoly, AlgError> {
        if self.den.is_empty() {
            Ok(self.num)
        } else {
            Err(AlgError::NotPolynomial(self.to_string()))
        }
    }
}

fn subst_poly(p: &LaurentPoly, map: &HashMap<Variable, RationalFunction>) -> Result<RationalFunction, AlgError> {
    let mut terms = Vec::with_capacity(p.len());
    let mut cache: HashMap<(Variable, i32), RationalFunction> = HashMap::new();
    for (m, c) in p.terms() {
        let mut t = RationalFunction::constant(c.clone());
        let mut rest = Monomial::one();
        for &(v, e) in m.exponents() {
            match map.get(&v) {
                Some(val) => {
                    let pw = match cache.get(&(v, e)) {
                        Some(x) => x.clone(),
                        None => {
                            let x = val.pow(e)?;
                            cache.insert((v, e), x.clone());
                            x
                        }
                    };
                    t = t.mul(&pw);
                }
                None => rest = rest.mul(&Monomial::var(v, e)),
            }
        }
        terms.push(t.mul_poly(&LaurentPoly::monomial(rest)));
    }
    Ok(RationalFunction::sum(terms))
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (i, (p, k)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *k == 1 {
                write!(f, "({})", p)?;
            } else {
                write!(f, "({})^{}", p, k)?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> LaurentPoly {
        LaurentPoly::var(Variable::slot(0, i))
    }

    #[test]
    fn sym_of_quadratic_kernel_cancels() {
        // (q^-2 x1 - x2)/(x1 - x2) + (q^-2 x2 - x1)/(x2 - x1) = 1 + q^-2
        let a = x(1).mul(&LaurentPoly::q_pow(-2)).sub(&x(2));
        let b = x(2).mul(&LaurentPoly::q_pow(-2)).sub(&x(1));
        let f = RationalFunction::new(a, x(1).sub(&x(2))).unwrap();
        let g = RationalFunction::new(b, x(2).sub(&x(1))).unwrap();
        let s = f.add(&g);
        assert_eq!(s.as_laurent(), Some(&LaurentPoly::one().add(&LaurentPoly::q_pow(-2))));
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert!(RationalFunction::new(x(1), x(1).sub(&x(1))).is_err());
    }

    #[test]
    fn cross_multiplication_equality() {
        let d = x(1).sub(&x(2));
        let f = RationalFunction::new(x(1).mul(&d), d.mul(&x(2))).unwrap();
        let g = RationalFunction::new(x(1), x(2)).unwrap();
        assert!(f.equals(&g));
        assert_eq!(f, g);
    }
}
