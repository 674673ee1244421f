use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::AlgError;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A ring variable: the two torus parameters, then slot variables `x_{vertex,index}`.
///
/// The derived order (q < t < slots by vertex, then index) is the global
/// variable enumeration used for monomial ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    Q,
    T,
    Slot { vertex: u32, index: u32 },
}

impl Variable {
    pub fn slot(vertex: usize, index: u32) -> Variable {
        Variable::Slot { vertex: vertex as u32, index }
    }

    pub fn is_param(&self) -> bool {
        !matches!(self, Variable::Slot { .. })
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Q => write!(f, "q"),
            Variable::T => write!(f, "t"),
            Variable::Slot { vertex, index } => write!(f, "x{}_{}", vertex, index),
        }
    }
}

/// Laurent monomial with sparse exponents, sorted by variable. Ordered graded-lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Variable, i32); 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Variable, e: i32) -> Self {
        let mut m = Monomial::one();
        if e != 0 {
            m.0.push((v, e));
        }
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (Variable, i32)>>(it: I) -> Self {
        let mut acc: BTreeMap<Variable, i32> = BTreeMap::new();
        for (v, e) in it {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(Variable, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: Variable) -> i32 {
        self.0.iter().find(|(w, _)| *w == v).map(|p| p.1).unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inverse())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&(_, e)| e >= 0)
    }

    pub fn rename<F: Fn(Variable) -> Variable>(&self, f: &F) -> Monomial {
        let mut v: SmallVec<[(Variable, i32); 6]> = self.0.iter().map(|&(x, e)| (f(x), e)).collect();
        v.sort_by_key(|a| a.0);
        let mut out: SmallVec<[(Variable, i32); 6]> = SmallVec::with_capacity(v.len());
        for (x, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == x => last.1 += e,
                _ => out.push((x, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    /// Splits off the factor in the given variable: returns (exponent of v, rest).
    pub fn split(&self, v: Variable) -> (i32, Monomial) {
        let mut rest = self.clone();
        let mut e = 0;
        rest.0.retain(|p| {
            if p.0 == v {
                e = p.1;
                false
            } else {
                true
            }
        });
        (e, rest)
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.0.iter().map(|p| p.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // lex: earlier variables are more significant
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse Laurent polynomial with rational coefficients.
///
/// Terms are kept sorted with the leading (graded-lex largest) monomial first,
/// with no zero coefficients, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, rat(1))
    }

    pub fn var(v: Variable) -> Self {
        Self::monomial(Monomial::var(v, 1))
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(Monomial::var(Variable::Q, e))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(x) => *x += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(rat(0)),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    /// `Some((c, m))` if this is a single term.
    pub fn as_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            Some((&self.terms[0].0, &self.terms[0].1))
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> = self.terms.iter().flat_map(|(m, _)| m.variables()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn involves_slots(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.variables().any(|v| !v.is_param()))
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        // multiplication by a monomial preserves the graded-lex order
        LaurentPoly { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((m, c)) = other.as_term() {
            return self.mul_term(m, c);
        }
        if let Some((m, c)) = self.as_term() {
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn product<'a, I: IntoIterator<Item = &'a LaurentPoly>>(it: I) -> Self {
        let mut out = Self::one();
        for p in it {
            out = out.mul(p);
        }
        out
    }

    /// Componentwise minimum of exponents over all terms (the monomial content).
    pub fn monomial_content(&self) -> Monomial {
        let mut acc: BTreeMap<Variable, i32> = BTreeMap::new();
        for (m, _) in &self.terms {
            for v in m.variables() {
                acc.insert(v, 0);
            }
        }
        for (v, e) in acc.iter_mut() {
            *e = self.terms.iter().map(|(m, _)| m.exponent(*v)).min().unwrap_or(0);
        }
        Monomial::from_pairs(acc)
    }

    /// Positive rational `c` with `self / c` having coprime integer coefficients.
    pub fn scalar_content(&self) -> Rational {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return rat(1);
        }
        Rational::new(g, l)
    }

    pub fn rename<F: Fn(Variable) -> Variable>(&self, f: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.rename(f), c.clone())))
    }

    /// Substitutes each variable by a scaled monomial.
    pub fn substitute_monomial(&self, map: &HashMap<Variable, (Rational, Monomial)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut mono = Monomial::one();
            for &(v, e) in m.exponents() {
                match map.get(&v) {
                    Some((s, n)) => {
                        if e >= 0 {
                            coef *= num_traits::pow(s.clone(), e as usize);
                        } else {
                            coef /= num_traits::pow(s.clone(), (-e) as usize);
                        }
                        mono = mono.mul(&n.pow(e));
                    }
                    None => mono = mono.mul(&Monomial::var(v, e)),
                }
            }
            match acc.get_mut(&mono) {
                Some(x) => *x += coef,
                None => {
                    acc.insert(mono, coef);
                }
            }
        }
        Self::from_map(acc)
    }

    /// Exact quotient `self / g` in the Laurent ring, or `None` when `g` does not divide.
    pub fn exact_div(&self, g: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!g.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((m, c)) = g.as_term() {
            return Some(self.mul_term(&m.inverse(), &c.recip()));
        }
        let mf = self.monomial_content();
        let mg = g.monomial_content();
        let f0 = self.mul_monomial(&mf.inverse());
        let g0 = g.mul_monomial(&mg.inverse());
        if !linear_root_test(&f0, &g0) {
            return None;
        }
        let q = poly_div(&f0, &g0)?;
        Some(q.mul_monomial(&mf.div(&mg)))
    }

    pub fn is_divisible_by(&self, g: &LaurentPoly) -> bool {
        self.exact_div(g).is_some()
    }

    /// Total degree range in the slot variables only.
    pub fn max_exponent(&self, v: Variable) -> i32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn min_exponent(&self, v: Variable) -> i32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).min().unwrap_or(0)
    }
}

/// Quick exact necessary test: when `g` is a binomial `a*v*M1 + b*M2` linear in a
/// variable `v` absent from `M2`, `g | f` iff `f` vanishes at `v = -b*M2/(a*M1)`.
fn linear_root_test(f: &LaurentPoly, g: &LaurentPoly) -> bool {
    if g.len() != 2 {
        return true;
    }
    let (m1, a) = (&g.terms[0].0, &g.terms[0].1);
    let (m2, b) = (&g.terms[1].0, &g.terms[1].1);
    for (ma, ca, mb, cb) in [(m1, a, m2, b), (m2, b, m1, a)] {
        for &(v, e) in ma.exponents() {
            if e == 1 && mb.exponent(v) == 0 {
                let (_, rest) = ma.split(v);
                let root_mono = mb.div(&rest);
                let root_coef = -(cb / ca);
                let mut map = HashMap::new();
                map.insert(v, (root_coef, root_mono));
                return f.substitute_monomial(&map).is_zero();
            }
        }
    }
    true
}

/// Polynomial long division of polynomials (no negative exponents) w.r.t. graded lex.
fn poly_div(f: &LaurentPoly, g: &LaurentPoly) -> Option<LaurentPoly> {
    let mut rem: BTreeMap<Monomial, Rational> = f.terms.iter().cloned().collect();
    let (lm, lc) = g.terms[0].clone();
    let mut quot: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = rem.pop_last() {
        let qm = m.div(&lm);
        if !qm.is_polynomial() {
            return None;
        }
        let qc = &c / &lc;
        for (gm, gc) in g.terms.iter().skip(1) {
            let key = gm.mul(&qm);
            let delta = gc * &qc;
            match rem.get_mut(&key) {
                Some(x) => {
                    *x -= delta;
                    if x.is_zero() {
                        rem.remove(&key);
                    }
                }
                None => {
                    rem.insert(key, -delta);
                }
            }
        }
        quot.push((qm, qc));
    }
    // quotient terms were produced in decreasing order
    Some(LaurentPoly { terms: quot })
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Variable {
    type Err = AlgError;

    /// `q`, `t` or `x{vertex}_{index}`.
    fn from_str(s: &str) -> Result<Self, AlgError> {
        let bad = || AlgError::Parse(s.to_string());
        match s {
            "q" => Ok(Variable::Q),
            "t" => Ok(Variable::T),
            _ => {
                let (v, i) = s.strip_prefix('x').and_then(|r| r.split_once('_')).ok_or_else(bad)?;
                let index: u32 = i.parse().map_err(|_| bad())?;
                if index == 0 {
                    return Err(bad());
                }
                Ok(Variable::slot(v.parse().map_err(|_| bad())?, index))
            }
        }
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = AlgError;

    /// Parses the `Display` format: `2*q^-1*x0_1^2 - 3/2*t + 1`.
    fn from_str(s: &str) -> Result<Self, AlgError> {
        let bad = || AlgError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for c in compact.chars() {
            if (c == '+' || c == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = c == '-';
            } else if (c == '+' || c == '-') && cur.is_empty() {
                neg ^= c == '-';
            } else {
                cur.push(c);
            }
        }
        if cur.is_empty() {
            return Err(bad());
        }
        terms.push((neg, cur));
        let mut out = LaurentPoly::zero();
        for (neg, term) in terms {
            let mut coef = rat(if neg { -1 } else { 1 });
            let mut mono = Monomial::one();
            for factor in term.split('*') {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coef *= factor.parse::<Rational>().map_err(|_| bad())?;
                } else {
                    let (v, e) = match factor.split_once('^') {
                        Some((v, e)) => (v, e.parse::<i32>().map_err(|_| bad())?),
                        None => (factor, 1),
                    };
                    mono = mono.mul(&Monomial::var(v.parse()?, e));
                }
            }
            out = out.add(&LaurentPoly::term(mono, coef));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> LaurentPoly {
        LaurentPoly::var(Variable::slot(0, i))
    }

    #[test]
    fn grlex_orders_by_degree_then_params_first() {
        let q = Monomial::var(Variable::Q, 1);
        let x1 = Monomial::var(Variable::slot(0, 1), 1);
        let x1sq = Monomial::var(Variable::slot(0, 1), 2);
        assert!(x1sq > q);
        assert!(q > x1);
        assert!(Monomial::var(Variable::slot(0, 1), 1) > Monomial::var(Variable::slot(0, 2), 1));
    }

    #[test]
    fn division_roundtrip() {
        let a = x(1).sub(&x(2).mul(&LaurentPoly::q_pow(2)));
        let b = x(1).add(&x(3)).add(&LaurentPoly::q_pow(-1));
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&b), Some(a));
        assert_eq!(b.exact_div(&x(1).sub(&x(2))), None);
    }

    #[test]
    fn laurent_division_strips_monomials() {
        let g = x(1).sub(&x(2));
        let f = g.mul(&LaurentPoly::monomial(Monomial::var(Variable::slot(0, 1), -3)));
        let qt = f.exact_div(&g.mul_monomial(&Monomial::var(Variable::Q, 2))).unwrap();
        assert_eq!(qt, LaurentPoly::monomial(Monomial::from_pairs([(Variable::Q, -2), (Variable::slot(0, 1), -3)])));
    }
}
