//! Relation and identity checkers. Every check reduces to an exact residual:
//! zero proves the identity, anything else is reported as the witness.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::characters::{dim_y_series_with, graded_dimension_check, graded_dimension_check_from, SeriesError};
use crate::exactalg::{
    q_binomial, q_binomial_one_sided, q_factorial, q_int, rat, AlgError, FactoredProduct, LaurentPoly, Monomial,
    RationalFunction, Variable,
};
use crate::quiver::{
    builtin, triple_quiver, validate_weight_function, DimensionVector, Parity, Quiver, QuiverError,
    QuiverWithWeights, WeightFunction,
};
use crate::roots::{FiniteType, Root};
use crate::shuffle::{
    build_kernel, build_kernel_mutated, delta, hall_littlewood, sym_full, x, Algebra, KernelKind, KernelMutation,
    ShuffleElement, ShuffleError,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Shuffle(#[from] ShuffleError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown suite `{0}` (known: {known})", known = SUITES.join(", "))]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, VerifyError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Proved,
    Refuted,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    /// `"0"` when proved, the nonzero residual when refuted.
    pub witness: Option<String>,
    pub ms: u64,
}

impl CheckReport {
    pub fn proved(&self) -> bool {
        self.verdict == Verdict::Proved
    }
}

struct Check {
    id: String,
    params: BTreeMap<String, Value>,
    start: Instant,
}

impl Check {
    fn new(id: impl Into<String>) -> Self {
        Check { id: id.into(), params: BTreeMap::new(), start: Instant::now() }
    }

    fn param(mut self, k: &str, v: impl Serialize) -> Self {
        self.set(k, v);
        self
    }

    fn set(&mut self, k: &str, v: impl Serialize) {
        self.params.insert(k.to_string(), json!(v));
    }

    fn report(self, verdict: Verdict, witness: Option<String>) -> CheckReport {
        CheckReport {
            id: self.id,
            params: self.params,
            verdict,
            witness,
            ms: self.start.elapsed().as_millis() as u64,
        }
    }

    /// Proved iff `residual` is zero.
    fn residual(self, residual: &RationalFunction) -> CheckReport {
        if residual.is_zero() {
            self.report(Verdict::Proved, Some("0".into()))
        } else {
            self.report(Verdict::Refuted, Some(residual.to_string()))
        }
    }

    fn witness(self, witness: Option<String>) -> CheckReport {
        match witness {
            None => self.report(Verdict::Proved, Some("0".into())),
            Some(w) => self.report(Verdict::Refuted, Some(w)),
        }
    }

    fn skip(mut self, reason: &str) -> CheckReport {
        self.set("reason", reason);
        self.report(Verdict::Skipped, None)
    }
}

fn qt(a: i64, m: i64) -> RationalFunction {
    LaurentPoly::monomial(Monomial::from_pairs([(Variable::Q, a as i32), (Variable::T, m as i32)])).into()
}

fn label(qw: &QuiverWithWeights, i: usize) -> &str {
    &qw.quiver.vertices[i]
}

fn algebra_tag(alg: &Algebra) -> String {
    let mut s = format!("{}:{}", alg.kind, alg.qw.name);
    if let Some(m) = alg.mutation {
        s.push_str(&format!(":{:?}", m));
    }
    s
}

// ---------------------------------------------------------------------------
// Drinfeld relations

/// Mode-coefficient form of the quadratic relation between `e_i(z)` and `e_j(w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DrinfeldForm {
    /// `q^a e_{i,r+1}e_{j,s} - t^m e_{i,r}e_{j,s+1} = σ(e_{j,s}e_{i,r+1} - q^a t^m e_{j,s+1}e_{i,r})`
    Deformed { a: i64, m: i64, sign: i64 },
    /// `e_{i,r}e_{j,s} = σ e_{j,s}e_{i,r}`
    Commute { sign: i64 },
}

pub fn drinfeld_form(alg: &Algebra, i: usize, j: usize) -> Result<DrinfeldForm> {
    let n = alg.rank();
    for v in [i, j] {
        if v >= n {
            return Err(VerifyError::UnknownVertex(v));
        }
    }
    let a = alg.qw.cartan.a[i][j];
    let m = if i == j { 0 } else { alg.qw.cartan.m[i][j] };
    Ok(match alg.kind {
        KernelKind::Bullet | KernelKind::Diamond => {
            // the t-degree of the cross factor: total t-weight of the arrows i -> j
            let q = &alg.qw.quiver;
            let m = match alg.kind {
                KernelKind::Diamond if i != j => (0..q.arrows.len())
                    .filter(|&h| q.arrows[h].source == i && q.arrows[h].target == j)
                    .map(|h| alg.qw.weight(h).t_exp as i64)
                    .sum(),
                _ => 0,
            };
            if a == 0 && i != j {
                DrinfeldForm::Commute { sign: 1 }
            } else {
                DrinfeldForm::Deformed { a, m, sign: 1 }
            }
        }
        KernelKind::Super => {
            let odd = |v| alg.qw.parity(v) == Parity::Odd;
            let sign = if odd(i) && odd(j) { -1 } else { 1 };
            if a == 0 {
                DrinfeldForm::Commute { sign }
            } else {
                DrinfeldForm::Deformed { a, m, sign }
            }
        }
        KernelKind::Star | KernelKind::Circ => {
            return Err(VerifyError::Precondition(format!("no Drinfeld presentation for the {} kernel", alg.kind)))
        }
    })
}

struct Products<'a> {
    alg: &'a Algebra,
    memo: HashMap<(usize, i32, usize, i32), RationalFunction>,
}

impl Products<'_> {
    fn get(&mut self, i: usize, r: i32, j: usize, s: i32) -> Result<RationalFunction> {
        if let Some(v) = self.memo.get(&(i, r, j, s)) {
            return Ok(v.clone());
        }
        let p = self.alg.mul(&self.alg.generator(i, r, 1)?, &self.alg.generator(j, s, 1)?)?.value;
        self.memo.insert((i, r, j, s), p.clone());
        Ok(p)
    }
}

/// Certifies the quadratic relation for all modes `r, s` in `window`.
pub fn check_drinfeld(alg: &Algebra, i: usize, j: usize, window: (i32, i32)) -> Result<CheckReport> {
    let form = drinfeld_form(alg, i, j)?;
    let mut check = Check::new(format!("drinfeld:{}:{}-{}", algebra_tag(alg), label(&alg.qw, i), label(&alg.qw, j)))
        .param("window", [window.0, window.1])
        .param("form", format!("{:?}", form));
    let mut p = Products { alg, memo: HashMap::new() };
    for r in window.0..=window.1 {
        for s in window.0..=window.1 {
            let res = match form {
                DrinfeldForm::Deformed { a, m, sign } => {
                    let lhs = qt(a, 0).mul(&p.get(i, r + 1, j, s)?).sub(&qt(0, m).mul(&p.get(i, r, j, s + 1)?));
                    let rhs = p.get(j, s, i, r + 1)?.sub(&qt(a, m).mul(&p.get(j, s + 1, i, r)?));
                    lhs.sub(&rhs.scale(&rat(sign)))
                }
                DrinfeldForm::Commute { sign } => p.get(i, r, j, s)?.sub(&p.get(j, s, i, r)?.scale(&rat(sign))),
            };
            if !res.is_zero() {
                check.set("r", r);
                check.set("s", s);
                return Ok(check.residual(&res));
            }
        }
    }
    Ok(check.residual(&RationalFunction::zero()))
}

// ---------------------------------------------------------------------------
// Formal words and supercommutators

/// A homogeneous linear combination of words `e_{i_1} e_{i_2} ⋯` with coefficients in `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordExpr {
    pub terms: BTreeMap<Vec<usize>, LaurentPoly>,
    pub weight: Vec<i64>,
}

impl WordExpr {
    pub fn letter(n: usize, i: usize) -> Self {
        let mut weight = vec![0; n];
        weight[i] = 1;
        WordExpr { terms: [(vec![i], LaurentPoly::one())].into_iter().collect(), weight }
    }

    pub fn word(n: usize, w: &[usize], c: LaurentPoly) -> Self {
        let mut weight = vec![0; n];
        for &i in w {
            weight[i] += 1;
        }
        WordExpr { terms: [(w.to_vec(), c)].into_iter().collect(), weight }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            let e = out.terms.entry(w.clone()).or_insert_with(LaurentPoly::zero);
            *e = e.add(c);
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c);
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Vec<usize>, LaurentPoly> = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let w: Vec<usize> = w1.iter().chain(w2).copied().collect();
                let e = terms.entry(w).or_insert_with(LaurentPoly::zero);
                *e = e.add(&c1.mul(c2));
            }
        }
        terms.retain(|_, c| !c.is_zero());
        WordExpr { terms, weight: self.weight.iter().zip(&other.weight).map(|(a, b)| a + b).collect() }
    }

    pub fn parity(&self, qw: &QuiverWithWeights) -> i64 {
        self.weight.iter().enumerate().map(|(i, w)| w * qw.parity(i).bit()).sum::<i64>().rem_euclid(2)
    }

    /// `[[a, b]] = ab - (-1)^{|a||b|} q^{(wt a : wt b)} ba`.
    pub fn supercommutator(&self, other: &Self, qw: &QuiverWithWeights) -> Self {
        let pairing: i64 = (0..self.weight.len())
            .flat_map(|k| (0..other.weight.len()).map(move |l| (k, l)))
            .map(|(k, l)| self.weight[k] * other.weight[l] * qw.cartan.a[k][l])
            .sum();
        let sign = if self.parity(qw) * other.parity(qw) == 1 { 1 } else { -1 };
        let twist = LaurentPoly::q_pow(pairing as i32).scale(&rat(sign));
        self.concat(other).add(&other.concat(self).scale(&twist))
    }
}

/// `Σ c_w e_{w_1,0} ⋯ e_{w_k,0}` in the shuffle algebra.
pub fn evaluate_words(alg: &Algebra, expr: &WordExpr) -> Result<RationalFunction> {
    let mut memo: HashMap<Vec<usize>, ShuffleElement> = HashMap::new();
    let mut total = Vec::new();
    for (w, c) in &expr.terms {
        let mut k = w.len();
        while k > 0 && !memo.contains_key(&w[..k]) {
            k -= 1;
        }
        let mut acc = if k == 0 { alg.unit() } else { memo[&w[..k]].clone() };
        for l in k..w.len() {
            acc = alg.mul(&acc, &alg.generator(w[l], 0, 1)?)?;
            memo.insert(w[..=l].to_vec(), acc.clone());
        }
        total.push(acc.value.mul_poly(c));
    }
    Ok(RationalFunction::sum(total))
}

// ---------------------------------------------------------------------------
// Serre relations

/// Which realization of the divided powers `e^{(h)}` enters the cubic relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DividedPower {
    /// `(e_{i,0})^{∘h} / [h]!`, the q-divided power relative to the product.
    Product,
    /// The generator `(x_{i,1}⋯x_{i,h})^0 = 1` in degree `hα_i`.
    Generator,
}

fn divided_power(alg: &Algebra, i: usize, h: u32, kind: DividedPower) -> Result<ShuffleElement> {
    if h == 0 {
        return Ok(alg.unit());
    }
    Ok(match kind {
        DividedPower::Generator => alg.generator(i, 0, h)?,
        DividedPower::Product => {
            let e = alg.generator(i, 0, 1)?;
            let mut acc = e.clone();
            for _ in 1..h {
                acc = alg.mul(&acc, &e)?;
            }
            acc.scale(&RationalFunction::from(q_factorial(h)).inverse()?)
        }
    })
}

/// `Σ_{h+k=l} (-1)^h e^{(h)} ∘ e_j ∘ e^{(k)}` with `l = 1 - a_ij`.
pub fn serre_cubic_residual(alg: &Algebra, i: usize, j: usize, kind: DividedPower) -> Result<RationalFunction> {
    let l = (1 - alg.qw.cartan.a[i][j]) as u32;
    let ej = alg.generator(j, 0, 1)?;
    let mut terms = Vec::new();
    for h in 0..=l {
        let left = alg.mul(&divided_power(alg, i, h, kind)?, &ej)?;
        let t = alg.mul(&left, &divided_power(alg, i, l - h, kind)?)?;
        terms.push(if h % 2 == 0 { t.value } else { t.value.neg() });
    }
    Ok(RationalFunction::sum(terms))
}

pub fn check_serre_cubic(alg: &Algebra, i: usize, j: usize) -> Result<CheckReport> {
    let n = alg.rank();
    for v in [i, j] {
        if v >= n {
            return Err(VerifyError::UnknownVertex(v));
        }
    }
    if i == j {
        return Err(VerifyError::Precondition("the cubic relation needs i != j".into()));
    }
    let a = alg.qw.cartan.a[i][j];
    let check = Check::new(format!("serre-cubic:{}:{}-{}", algebra_tag(alg), label(&alg.qw, i), label(&alg.qw, j)))
        .param("a_ij", a);
    if alg.kind == KernelKind::Super {
        let check = check.param("relation", "[[e_i,[[e_i,e_j]]]]");
        if alg.qw.parity(i) != Parity::Even || a == 0 {
            return Ok(check.skip("needs an even vertex i adjacent to j"));
        }
        let (ei, ej) = (WordExpr::letter(n, i), WordExpr::letter(n, j));
        let expr = ei.supercommutator(&ei.supercommutator(&ej, &alg.qw), &alg.qw);
        return Ok(check.residual(&evaluate_words(alg, &expr)?));
    }
    if a >= 0 {
        return Ok(check.skip("a_ij >= 0: no cubic relation"));
    }
    let mut check = check.param("l", 1 - a).param("divided_powers", DividedPower::Product);
    let generator_variant = serre_cubic_residual(alg, i, j, DividedPower::Generator)?;
    check.set("generator_variant_vanishes", generator_variant.is_zero());
    Ok(check.residual(&serre_cubic_residual(alg, i, j, DividedPower::Product)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuarticForm {
    P,
    Q,
    /// `Q` with the last denominator `(qa-b_1)(c-qb_1)(c-qb_2)`, mirroring the fourth term of `P`.
    QAmended,
}

/// `Sym_b(P(a,b_1,b_2,c)/(b_1-b_2))` (or with `Q`), with `[2]_q` replaced by `two`.
pub fn quartic_rational(form: QuarticForm, two: &LaurentPoly) -> Result<RationalFunction> {
    let q = LaurentPoly::var(Variable::Q);
    let (a, b1, b2, c) = (x(0, 1), x(1, 1), x(1, 2), x(2, 1));
    // (q u - v) and (u - q v)
    let up = |u: &LaurentPoly, v: &LaurentPoly| q.mul(u).sub(v);
    let dn = |u: &LaurentPoly, v: &LaurentPoly| u.sub(&q.mul(v));
    let frac = |num: Vec<LaurentPoly>, den: Vec<LaurentPoly>| -> Result<RationalFunction> {
        let mut fp = FactoredProduct::one();
        for p in num {
            fp.push(p, 1);
        }
        for p in den {
            fp.push(p, -1);
        }
        Ok(fp.expand()?)
    };
    let terms = match form {
        QuarticForm::P => vec![
            frac(vec![up(&a, &b2)], vec![dn(&a, &b2)])?,
            frac(vec![up(&c, &b1)], vec![dn(&c, &b1)])?,
            frac(vec![up(&a, &b2), up(&c, &b1)], vec![dn(&a, &b2), dn(&c, &b1)])?.mul_poly(&two.neg()),
            frac(vec![up(&a, &b2), up(&c, &b1), up(&c, &b2)], vec![dn(&a, &b2), dn(&c, &b1), dn(&c, &b2)])?,
            frac(vec![up(&a, &b1), up(&a, &b2), up(&c, &b1)], vec![dn(&a, &b1), dn(&a, &b2), dn(&c, &b1)])?,
        ],
        QuarticForm::Q | QuarticForm::QAmended => vec![
            frac(vec![dn(&a, &b1)], vec![up(&a, &b1)])?,
            frac(vec![up(&c, &b1)], vec![dn(&c, &b1)])?,
            frac(vec![dn(&a, &b1), up(&c, &b1)], vec![up(&a, &b1), dn(&c, &b1)])?.mul_poly(&two.neg()),
            frac(vec![dn(&a, &b1), dn(&a, &b2), up(&c, &b1)], vec![up(&a, &b1), up(&a, &b2), dn(&c, &b1)])?,
            if form == QuarticForm::Q {
                frac(vec![dn(&a, &b1), up(&c, &b1), up(&c, &b2)], vec![up(&a, &b1), dn(&a, &b1), dn(&c, &b2)])?
            } else {
                frac(vec![dn(&a, &b1), up(&c, &b1), up(&c, &b2)], vec![up(&a, &b1), dn(&c, &b1), dn(&c, &b2)])?
            },
        ],
    };
    let integrand = RationalFunction::sum(terms).div(&b1.sub(&b2).into())?;
    Ok(sym_full(&integrand, 1, 2))
}

pub fn check_serre_quartic_rational(form: QuarticForm) -> Result<CheckReport> {
    let check = Check::new(format!("serre-quartic-rational:{:?}", form));
    Ok(check.residual(&quartic_rational(form, &q_int(2))?))
}

/// The five-term form of `[[e_i,[[e_{i+1},[[e_i,e_{i-1}]]]]]]`; `drop` omits the word
/// `e_{i-1,i,i+1,i}`.
pub fn quartic_display(n: usize, i: usize, drop: bool) -> WordExpr {
    let (ip, im) = ((i + 1) % n, (i + n - 1) % n);
    let one = LaurentPoly::one();
    let mut e = WordExpr::word(n, &[i, ip, i, im], one.clone())
        .add(&WordExpr::word(n, &[i, ip, im, i], q_int(2).neg()))
        .add(&WordExpr::word(n, &[i, im, i, ip], one.clone()))
        .add(&WordExpr::word(n, &[ip, i, im, i], one.clone()));
    if !drop {
        e = e.add(&WordExpr::word(n, &[im, i, ip, i], one));
    }
    e
}

/// The nested supercommutator expanded from the weights and parities.
pub fn quartic_expansion(qw: &QuiverWithWeights, i: usize) -> WordExpr {
    let n = qw.rank();
    let (ip, im) = ((i + 1) % n, (i + n - 1) % n);
    let l = |v| WordExpr::letter(n, v);
    let inner = l(i).supercommutator(&l(im), qw);
    l(i).supercommutator(&l(ip).supercommutator(&inner, qw), qw)
}

/// Applies `e_i e_i = 0` and `e_{i-1} e_{i+1} = e_{i+1} e_{i-1}` to every word.
pub fn reduce_quartic_words(expr: &WordExpr, n: usize, i: usize) -> WordExpr {
    let (ip, im) = ((i + 1) % n, (i + n - 1) % n);
    let mut out = WordExpr { terms: BTreeMap::new(), weight: expr.weight.clone() };
    for (w, c) in &expr.terms {
        if w.windows(2).any(|p| p[0] == i && p[1] == i) {
            continue;
        }
        let mut w = w.clone();
        for k in 0..w.len().saturating_sub(1) {
            if w[k] == im && w[k + 1] == ip {
                w.swap(k, k + 1);
            }
        }
        out = out.add(&WordExpr { terms: [(w, c.clone())].into_iter().collect(), weight: expr.weight.clone() });
    }
    out
}

/// Whether the odd vertex `i` has even neighbours that are not adjacent to each other.
pub fn quartic_hypothesis(qw: &QuiverWithWeights, i: usize) -> bool {
    let n = qw.rank();
    let (ip, im) = ((i + 1) % n, (i + n - 1) % n);
    qw.parity(i) == Parity::Odd
        && qw.parity(ip) == Parity::Even
        && qw.parity(im) == Parity::Even
        && qw.cartan.a[im][ip] == 0
}

/// The quartic relation at the odd vertex `i`. With `strict`, the hypothesis on the
/// neighbours is enforced and the expansion is cross-checked against the five-term form.
pub fn check_serre_quartic_shuffle(qw: &QuiverWithWeights, i: usize, strict: bool) -> Result<CheckReport> {
    let n = qw.rank();
    if !qw.is_super() {
        return Err(VerifyError::Precondition("the quartic relation needs a super quiver".into()));
    }
    if i >= n {
        return Err(VerifyError::UnknownVertex(i));
    }
    let hyp = quartic_hypothesis(qw, i);
    if strict && !hyp {
        return Err(VerifyError::Precondition(format!(
            "vertex {} is not odd with non-adjacent even neighbours",
            label(qw, i)
        )));
    }
    let alg = Algebra::new(qw.clone(), KernelKind::Super)?;
    let expansion = quartic_expansion(qw, i);
    let mut check = Check::new(format!(
        "serre-quartic:{}:{}{}",
        qw.name,
        label(qw, i),
        if strict { "" } else { ":relaxed" }
    ))
    .param("hypothesis", hyp)
    .param("words", expansion.terms.len());
    let residual = evaluate_words(&alg, &expansion)?;
    if !residual.is_zero() || !strict {
        return Ok(check.residual(&residual));
    }
    let display = quartic_display(n, i, false);
    let reduced = reduce_quartic_words(&expansion, n, i);
    let matches = reduced == display;
    check.set("matches_five_term_form", matches);
    if !matches {
        let diff = reduced.add(&display.scale(&LaurentPoly::int(-1)));
        return Ok(check.witness(Some(format!("expansion differs from the five-term form by {:?}", diff.terms))));
    }
    Ok(check.residual(&evaluate_words(&alg, &display)?))
}

// ---------------------------------------------------------------------------
// The Appendix-A function F(l, n)

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinomialConvention {
    Balanced,
    OneSided,
}

/// `F(x_1..x_l, n) = Σ_h (-1)^h q^{nh} [l h] Sym_x(Δ_l ∏_{r≤h}(q^{l-1-n}x_r - 1) ∏_{s>h}(x_s - q^{l-1-n}))`
/// and whether it is free of the `x`.
pub fn appendix_f_with(l: u32, n: i32, conv: BinomialConvention) -> Result<(RationalFunction, bool)> {
    let c = LaurentPoly::q_pow(l as i32 - 1 - n);
    let mut poly = LaurentPoly::zero();
    for h in 0..=l {
        let binom = match conv {
            BinomialConvention::Balanced => q_binomial(l as i64, h as i64),
            BinomialConvention::OneSided => q_binomial_one_sided(l as i64, h as i64),
        };
        let mut term = binom.mul(&LaurentPoly::q_pow(n * h as i32));
        if h % 2 == 1 {
            term = term.neg();
        }
        for r in 1..=h {
            term = term.mul(&c.mul(&x(0, r)).sub(&LaurentPoly::one()));
        }
        for s in h + 1..=l {
            term = term.mul(&x(0, s).sub(&c));
        }
        poly = poly.add(&term);
    }
    let value = sym_full(&delta(0, l)?.mul_poly(&poly), 0, l);
    let free = !value.involves_slots();
    Ok((value, free))
}

pub fn appendix_f(l: u32, n: i32) -> Result<(RationalFunction, bool)> {
    appendix_f_with(l, n, BinomialConvention::Balanced)
}

/// `(1-q^-2) F(l,n) - q^-1 F(l-1,n-1)(q^n-q^-n)(q^l-q^-l)`.
pub fn appendix_recursion_residual(f_ln: &RationalFunction, f_prev: &RationalFunction, l: u32, n: i32) -> RationalFunction {
    let qd = |k: i32| LaurentPoly::q_pow(k).sub(&LaurentPoly::q_pow(-k));
    let lhs = f_ln.mul_poly(&LaurentPoly::one().sub(&LaurentPoly::q_pow(-2)));
    let rhs = f_prev.mul_poly(&LaurentPoly::q_pow(-1).mul(&qd(n)).mul(&qd(l as i32)));
    lhs.sub(&rhs)
}

/// x-independence of `F(l,n)`, the recursion, and `F(l,0) = 0`.
pub fn check_appendix_a(l: u32, n: i32, conv: BinomialConvention) -> Result<CheckReport> {
    let mut check = Check::new(format!("appendixA:F({},{}){}", l, n, match conv {
        BinomialConvention::Balanced => "",
        BinomialConvention::OneSided => ":one-sided",
    }))
    .param("l", l)
    .param("n", n)
    .param("binomials", conv);
    let (f, free) = appendix_f_with(l, n, conv)?;
    check.set("x_independent", free);
    if !free {
        return Ok(check.witness(Some(f.to_string())));
    }
    check.set("value", f.to_string());
    if l >= 1 {
        let (prev, prev_free) = appendix_f_with(l - 1, n - 1, conv)?;
        if !prev_free {
            return Ok(check.witness(Some(prev.to_string())));
        }
        let res = appendix_recursion_residual(&f, &prev, l, n);
        if !res.is_zero() {
            check.set("failing", "recursion");
            return Ok(check.residual(&res));
        }
    }
    if n == 0 && l >= 1 {
        check.set("failing", "F(l,0)");
        return Ok(check.residual(&f));
    }
    Ok(check.residual(&RationalFunction::zero()))
}

/// `[l h] = q^-h [l-1 h] + q^(l-h) [l-1 h-1]` for `1 <= l <= lmax`.
pub fn check_pascal(lmax: i64) -> CheckReport {
    let check = Check::new("pascal:balanced").param("lmax", lmax);
    for l in 1..=lmax {
        for h in 0..=l {
            let rhs = LaurentPoly::q_pow(-h as i32)
                .mul(&q_binomial(l - 1, h))
                .add(&LaurentPoly::q_pow((l - h) as i32).mul(&q_binomial(l - 1, h - 1)));
            let res = q_binomial(l, h).sub(&rhs);
            if !res.is_zero() {
                return check.param("l", l).param("h", h).residual(&res.into());
            }
        }
    }
    check.residual(&RationalFunction::zero())
}

// ---------------------------------------------------------------------------
// Kernel derivations

/// Removes the unpaired loops of weight `q^-2`, leaving the double quiver.
pub fn strip_extra_loops(qw: &QuiverWithWeights) -> QuiverWithWeights {
    let q = &qw.quiver;
    let keep: Vec<usize> = (0..q.arrows.len())
        .filter(|&h| q.partner(h).is_some() || !(q.arrows[h].is_loop() && qw.weight(h).q_exp == -2))
        .collect();
    let index: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &h)| (h, k)).collect();
    let quiver = Quiver {
        vertices: q.vertices.clone(),
        arrows: keep.iter().map(|&h| q.arrows[h].clone()).collect(),
        pairs: q.pairs.iter().map(|(a, b)| (index[a], index[b])).collect(),
        parity: q.parity.clone(),
    };
    let mut out = qw.clone();
    out.name = qw.name.strip_prefix("triple:").unwrap_or(&qw.name).to_string();
    out.weights = WeightFunction(keep.iter().map(|&h| qw.weight(h)).collect());
    out.quiver = quiver;
    out
}

fn weight_monomial(q_exp: i32, t_exp: i32) -> Monomial {
    Monomial::from_pairs([(Variable::Q, q_exp), (Variable::T, t_exp)])
}

/// `(1 - x_{i,r} / (c x_{j,s}))^k`
fn push_one_minus(fp: &mut FactoredProduct, i: usize, r: u32, c: &Monomial, j: usize, s: u32, k: i32) {
    let m = Monomial::from_pairs([(Variable::slot(i, r), 1), (Variable::slot(j, s), -1)]).div(c);
    fp.push(LaurentPoly::one().sub(&LaurentPoly::monomial(m)), k);
}

/// `-x_{i,r} c / x_{j,s}`
fn push_ratio_monomial(fp: &mut FactoredProduct, i: usize, r: u32, c: &Monomial, j: usize, s: u32) {
    let m = Monomial::from_pairs([(Variable::slot(i, r), 1), (Variable::slot(j, s), -1)]).mul(c);
    fp.push(LaurentPoly::term(m, rat(-1)), 1);
}

#[derive(Clone, Debug, PartialEq)]
pub enum SubOutcome {
    Proved,
    Refuted(RationalFunction),
    Skipped(String),
}

fn compare(lhs: &FactoredProduct, rhs: &FactoredProduct) -> Result<SubOutcome> {
    if lhs.canonical() == rhs.canonical() {
        return Ok(SubOutcome::Proved);
    }
    let res = lhs.expand()?.sub(&rhs.expand()?);
    Ok(if res.is_zero() { SubOutcome::Proved } else { SubOutcome::Refuted(res) })
}

fn ranges(alpha: &DimensionVector, gamma: &DimensionVector, i: usize) -> (std::ops::RangeInclusive<u32>, std::ops::RangeInclusive<u32>) {
    (1..=alpha.get(i), alpha.get(i) + 1..=alpha.get(i) + gamma.get(i))
}

/// The three kernel identities for one `(α, γ)`; `mutation` corrupts `ζ⋄`.
pub fn kernel_derivation(
    qw: &QuiverWithWeights,
    alpha: &DimensionVector,
    gamma: &DimensionVector,
    mutation: Option<KernelMutation>,
) -> Result<[SubOutcome; 3]> {
    let double = strip_extra_loops(qw);
    let flags = validate_weight_function(&double.quiver, &double.weights)?;
    if !flags.homogeneous || double.is_super() {
        return Err(VerifyError::Precondition("kernel derivations need a homogeneous weight function".into()));
    }
    let triple = triple_quiver(&double);
    let q = &double.quiver;
    let n = double.rank();
    let diamond = build_kernel_mutated(KernelKind::Diamond, &double, alpha, gamma, mutation)?.value;

    // (1) ζ⋄ = q^{-2Σ a_i c_i} ζ* Ω C_β / (C_α C_γ)
    let mut rhs = build_kernel(KernelKind::Star, &triple, alpha, gamma)?.value;
    let norm: u32 = (0..n).map(|i| alpha.get(i) * gamma.get(i)).sum();
    rhs.scale(&RationalFunction::q_pow(-2 * norm as i32));
    for h in q.base_arrows() {
        let (i, j) = (q.arrows[h].source, q.arrows[h].target);
        let hp = q.partner(h).ok_or_else(|| VerifyError::Precondition("unpaired arrow".into()))?;
        let (wh, whp) = (double.weight(h), double.weight(hp));
        let c = weight_monomial(wh.q_exp, wh.t_exp);
        let (fi, si) = ranges(alpha, gamma, i);
        let (fj, sj) = ranges(alpha, gamma, j);
        for r in fi.clone() {
            for s in sj.clone() {
                push_ratio_monomial(&mut rhs, i, r, &weight_monomial(whp.q_exp - wh.q_exp, -wh.t_exp), j, s);
                push_one_minus(&mut rhs, i, r, &c, j, s, -1);
            }
        }
        for r in si {
            for s in fj.clone() {
                push_one_minus(&mut rhs, i, r, &c, j, s, -1);
            }
        }
    }
    let sub1 = compare(&diamond, &rhs)?;

    // (2) ζ∘ = [S(X̄*[1])]^-1 [S(u*[1]<2>)] [Ω] [S(u*[1])]^-1
    let sub2 = match build_kernel(KernelKind::Circ, &double, alpha, gamma) {
        Ok(circ) => {
            let mut rhs = FactoredProduct::one();
            for h in q.double_arrows() {
                let (i, j) = (q.arrows[h].source, q.arrows[h].target);
                let w = double.weight(h);
                let c = weight_monomial(w.q_exp, w.t_exp);
                let (fi, _) = ranges(alpha, gamma, i);
                let (_, sj) = ranges(alpha, gamma, j);
                for s in fi {
                    for t in sj.clone() {
                        push_one_minus(&mut rhs, i, s, &c, j, t, -1);
                        if i < j {
                            push_ratio_monomial(&mut rhs, i, s, &c.inverse(), j, t);
                        }
                    }
                }
            }
            for i in 0..n {
                let (fi, si) = ranges(alpha, gamma, i);
                for s in fi {
                    for t in si.clone() {
                        push_one_minus(&mut rhs, i, s, &weight_monomial(2, 0), i, t, 1);
                        push_one_minus(&mut rhs, i, s, &Monomial::one(), i, t, -1);
                    }
                }
            }
            compare(&circ.value, &rhs)?
        }
        Err(e) => SubOutcome::Skipped(e.to_string()),
    };

    // (3) ζ⋄|_{t=1} = ζ• under normal weights
    let sub3 = if !flags.normal {
        SubOutcome::Skipped("weight function is not normal".into())
    } else {
        let bullet = build_kernel(KernelKind::Bullet, &double, alpha, gamma)?.value;
        let map: HashMap<Variable, (crate::exactalg::Rational, Monomial)> =
            [(Variable::T, (rat(1), Monomial::one()))].into_iter().collect();
        let mut at_one = FactoredProduct::one();
        at_one.scale(&diamond.scalar.substitute_monomial(&map)?);
        for (p, k) in &diamond.factors {
            at_one.push(p.substitute_monomial(&map), *k);
        }
        compare(&at_one, &bullet)?
    };
    Ok([sub1, sub2, sub3])
}

pub const KERNEL_SUBCHECKS: [&str; 3] = ["conjugation", "characters", "t-specialization"];

/// All dimension vectors with entries `<= bound`.
pub fn dimension_vectors(n: usize, bound: u32) -> Vec<DimensionVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<u32>| (0..=bound).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out.into_iter().map(DimensionVector).collect()
}

pub fn check_kernel_derivation(
    qw: &QuiverWithWeights,
    alpha: &DimensionVector,
    gamma: &DimensionVector,
) -> Result<CheckReport> {
    let subs = kernel_derivation(qw, alpha, gamma, None)?;
    let mut check = Check::new(format!("kernels:{}:{}:{}", qw.name, alpha, gamma));
    let mut witness = None;
    for (name, s) in KERNEL_SUBCHECKS.iter().zip(&subs) {
        let v = match s {
            SubOutcome::Proved => "proved".to_string(),
            SubOutcome::Refuted(w) => {
                witness.get_or_insert_with(|| w.to_string());
                "refuted".into()
            }
            SubOutcome::Skipped(why) => format!("skipped: {}", why),
        };
        check.set(name, v);
    }
    Ok(check.witness(witness))
}

/// One report per sub-check, aggregated over all `α, γ` with entries `<= bound`.
pub fn kernel_derivation_reports(
    qw: &QuiverWithWeights,
    bound: u32,
    mutation: Option<KernelMutation>,
) -> Result<Vec<CheckReport>> {
    let vs = dimension_vectors(qw.rank(), bound);
    let start = Instant::now();
    let mut outcomes: Vec<(DimensionVector, DimensionVector, [SubOutcome; 3])> = Vec::new();
    for a in &vs {
        for g in &vs {
            outcomes.push((a.clone(), g.clone(), kernel_derivation(qw, a, g, mutation)?));
        }
    }
    let ms = start.elapsed().as_millis() as u64;
    let tag = mutation.map(|m| format!(":{:?}", m)).unwrap_or_default();
    Ok((0..3)
        .map(|k| {
            let mut check = Check::new(format!("kernels:{}:{}{}", qw.name, KERNEL_SUBCHECKS[k], tag))
                .param("bound", bound)
                .param("cases", outcomes.len());
            let skipped = outcomes.iter().filter(|o| matches!(o.2[k], SubOutcome::Skipped(_))).count();
            check.set("skipped_cases", skipped);
            let refuted = outcomes.iter().find_map(|(a, g, s)| match &s[k] {
                SubOutcome::Refuted(w) => Some((a, g, w)),
                _ => None,
            });
            let mut r = match refuted {
                Some((a, g, w)) => {
                    check.set("alpha", a.to_string());
                    check.set("gamma", g.to_string());
                    check.residual(w)
                }
                None if skipped == outcomes.len() => {
                    let why = match &outcomes[0].2[k] {
                        SubOutcome::Skipped(w) => w.clone(),
                        _ => unreachable!(),
                    };
                    check.skip(&why)
                }
                None => check.residual(&RationalFunction::zero()),
            };
            r.ms = ms;
            r
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Hall–Littlewood and divided powers

/// Normalized `hall_littlewood((n^r))` equals `(x_1⋯x_r)^n`.
pub fn check_hl_rectangular(r: u32, n: i32) -> Result<CheckReport> {
    let check = Check::new(format!("hl:rectangular:{}^{}", n, r)).param("r", r).param("n", n);
    let (_, norm) = hall_littlewood(&vec![n; r as usize], r)?;
    let target = LaurentPoly::monomial(Monomial::from_pairs((1..=r).map(|s| (Variable::slot(0, s), n))));
    Ok(check.residual(&norm.sub(&target.into())))
}

/// `Sym(x^{(n^r)} Δ_r) = q^{-r(r-1)/2} [r]! (x_1⋯x_r)^n`; without `q_power` the
/// factor `q^{-r(r-1)/2}` is omitted.
pub fn check_divided_power(r: u32, n: i32, q_power: bool) -> Result<CheckReport> {
    let check = Check::new(format!("hl:divided-power:{}^{}{}", n, r, if q_power { "" } else { ":without-q-power" }))
        .param("r", r)
        .param("n", n)
        .param("q_power", if q_power { format!("q^{}", -((r * r.saturating_sub(1)) as i32) / 2) } else { "1".into() });
    let m = LaurentPoly::monomial(Monomial::from_pairs((1..=r).map(|s| (Variable::slot(0, s), n))));
    let lhs = sym_full(&delta(0, r)?.mul_poly(&m), 0, r);
    let mut rhs = q_factorial(r).mul(&m);
    if q_power {
        rhs = rhs.mul(&LaurentPoly::q_pow(-((r * r.saturating_sub(1)) as i32) / 2));
    }
    Ok(check.residual(&lhs.sub(&rhs.into())))
}

// ---------------------------------------------------------------------------
// Graded dimensions

pub fn check_dims(ft: FiniteType, qmax: u32, zmax: i64) -> Result<CheckReport> {
    dims_report(ft, qmax, zmax, false)
}

fn dims_report(ft: FiniteType, qmax: u32, zmax: i64, wrong_kac: bool) -> Result<CheckReport> {
    let check = Check::new(format!("dims:{}{}", ft, if wrong_kac { ":wrong-kac" } else { "" }))
        .param("qmax", qmax)
        .param("zmax", zmax);
    let report = if wrong_kac {
        let rank = ft.rank() as i64;
        let kac = move |r: &Root| {
            if r.is_imaginary() {
                LaurentPoly::var(Variable::Q).add(&LaurentPoly::int(rank + 1))
            } else {
                LaurentPoly::one()
            }
        };
        graded_dimension_check_from(ft, qmax, zmax, dim_y_series_with(ft, qmax, zmax, &kac)?)?
    } else {
        graded_dimension_check(ft, qmax, zmax)?
    };
    let check = check.param("coefficients", report.rows.len());
    let witness = report.rows.iter().find(|r| !r.agree).map(|r| {
        format!("q^{} z^{:?}: dimY {} form4 {} pbw {}", r.q, r.z, r.dim_y, r.form4, r.pbw)
    });
    Ok(check.witness(witness))
}

// ---------------------------------------------------------------------------
// Suites

pub const SUITES: &[&str] = &["drinfeld-all", "serre-all", "super-all", "appendixA", "kernels", "dims", "hl", "all"];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Replaces the default quivers of the Drinfeld, Serre and super suites.
    pub quiver: Option<QuiverWithWeights>,
    pub window: (i32, i32),
    pub qmax: u32,
    pub zmax: i64,
    pub kernel_bound: u32,
    pub appendix_lmax: u32,
    pub appendix_nmax: i32,
    pub threads: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            quiver: None,
            window: (-2, 2),
            qmax: 6,
            zmax: 6,
            kernel_bound: 2,
            appendix_lmax: 4,
            appendix_nmax: 3,
            threads: None,
        }
    }
}

type Task = Box<dyn Fn() -> Result<Vec<CheckReport>> + Send + Sync>;

fn one<F: Fn() -> Result<CheckReport> + Send + Sync + 'static>(f: F) -> Task {
    Box::new(move || Ok(vec![f()?]))
}

fn drinfeld_tasks(alg: Algebra, window: (i32, i32)) -> Vec<Task> {
    let n = alg.rank();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let alg = alg.clone();
            out.push(one(move || check_drinfeld(&alg, i, j, window)));
        }
    }
    out
}

fn cubic_tasks(alg: Algebra) -> Vec<Task> {
    let n = alg.rank();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let even = alg.kind != KernelKind::Super || alg.qw.parity(i) == Parity::Even;
            if i != j && even && alg.qw.cartan.a[i][j] != 0 {
                let alg = alg.clone();
                out.push(one(move || check_serre_cubic(&alg, i, j)));
            }
        }
    }
    out
}

fn super_tasks(qw: &QuiverWithWeights, window: (i32, i32)) -> Result<Vec<Task>> {
    let alg = Algebra::new(qw.clone(), KernelKind::Super)?;
    let mut out = drinfeld_tasks(alg.clone(), window);
    out.extend(cubic_tasks(alg));
    out.extend(quartic_tasks(qw));
    Ok(out)
}

fn quartic_tasks(qw: &QuiverWithWeights) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    for i in 0..qw.rank() {
        if quartic_hypothesis(qw, i) {
            let qw = qw.clone();
            out.push(one(move || check_serre_quartic_shuffle(&qw, i, true)));
        }
    }
    if out.is_empty() {
        let name = qw.name.clone();
        out.push(one(move || {
            Ok(Check::new(format!("serre-quartic:{}", name)).skip("no odd vertex with non-adjacent even neighbours"))
        }));
    }
    out
}

fn default_or(config: &SuiteConfig, name: &str) -> Result<QuiverWithWeights> {
    match &config.quiver {
        Some(q) => Ok(q.clone()),
        None => Ok(builtin(name)?),
    }
}

/// Kernel kinds whose Drinfeld and Serre relations apply to `qw`.
fn kinds_for(qw: &QuiverWithWeights) -> Vec<KernelKind> {
    [KernelKind::Bullet, KernelKind::Diamond, KernelKind::Super]
        .into_iter()
        .filter(|&k| Algebra::new(qw.clone(), k).is_ok())
        .collect()
}

fn suite_tasks(id: &str, config: &SuiteConfig) -> Result<Vec<Task>> {
    let window = config.window;
    let mut tasks: Vec<Task> = Vec::new();
    match id {
        "drinfeld-all" => match &config.quiver {
            Some(qw) => {
                let kinds = kinds_for(qw);
                if kinds.is_empty() {
                    return Err(VerifyError::Precondition(format!("no kernel applies to `{}`", qw.name)));
                }
                for k in kinds {
                    tasks.extend(drinfeld_tasks(Algebra::new(qw.clone(), k)?, window));
                }
            }
            None => {
                tasks.extend(drinfeld_tasks(Algebra::new(builtin("a2")?, KernelKind::Bullet)?, window));
                for name in ["triple:a1", "triple:a2"] {
                    tasks.extend(drinfeld_tasks(Algebra::new(builtin(name)?, KernelKind::Diamond)?, window));
                }
                tasks.extend(drinfeld_tasks(Algebra::new(builtin("super:2|1:++-")?, KernelKind::Super)?, window));
            }
        },
        "serre-all" => {
            match &config.quiver {
                Some(qw) => {
                    for k in kinds_for(qw) {
                        tasks.extend(cubic_tasks(Algebra::new(qw.clone(), k)?));
                    }
                    if qw.is_super() {
                        tasks.extend(quartic_tasks(qw));
                    }
                }
                None => {
                    for name in ["a2", "a3", "kronecker"] {
                        tasks.extend(cubic_tasks(Algebra::new(builtin(name)?, KernelKind::Bullet)?));
                    }
                    tasks.extend(cubic_tasks(Algebra::new(builtin("super:2|1:++-")?, KernelKind::Super)?));
                    tasks.extend(quartic_tasks(&builtin("super:2|2:++--")?));
                }
            }
            for form in [QuarticForm::P, QuarticForm::Q, QuarticForm::QAmended] {
                tasks.push(one(move || check_serre_quartic_rational(form)));
            }
            tasks.push(one(|| Ok(check_pascal(6))));
        }
        "super-all" => {
            let qw = default_or(config, "super:2|1:++-")?;
            if !qw.is_super() {
                return Err(VerifyError::Precondition(format!("`{}` is not a super quiver", qw.name)));
            }
            tasks.extend(super_tasks(&qw, window)?);
        }
        "appendixA" => {
            for l in 1..=config.appendix_lmax {
                for n in -config.appendix_nmax..=config.appendix_nmax {
                    tasks.push(one(move || check_appendix_a(l, n, BinomialConvention::Balanced)));
                }
            }
            tasks.push(one(|| Ok(check_pascal(6))));
        }
        "kernels" => {
            let bound = config.kernel_bound;
            for name in ["a2", "triple:a1"] {
                let qw = builtin(name)?;
                tasks.push(Box::new(move || kernel_derivation_reports(&qw, bound, None)));
            }
        }
        "dims" => {
            let (qmax, zmax) = (config.qmax, config.zmax);
            for ft in [FiniteType::A(1), FiniteType::A(2)] {
                tasks.push(one(move || check_dims(ft, qmax, zmax)));
            }
        }
        "hl" => {
            for r in 1..=4u32 {
                for n in -3..=3 {
                    tasks.push(one(move || check_hl_rectangular(r, n)));
                    tasks.push(one(move || check_divided_power(r, n, true)));
                }
            }
        }
        "all" => {
            for s in SUITES.iter().filter(|&&s| s != "all") {
                tasks.extend(suite_tasks(s, config)?);
            }
        }
        other => return Err(VerifyError::UnknownSuite(other.to_string())),
    }
    Ok(tasks)
}

/// Number of worker threads: the config, then `TOROIDAL_THREADS`, then rayon's default.
pub fn thread_count(config: &SuiteConfig) -> Option<usize> {
    config.threads.or_else(|| std::env::var("TOROIDAL_THREADS").ok().and_then(|v| v.parse().ok())).filter(|&n| n > 0)
}

fn run_tasks(tasks: Vec<Task>, threads: Option<usize>) -> Result<Vec<CheckReport>> {
    let run = || tasks.par_iter().map(|t| t()).collect::<Vec<Result<Vec<CheckReport>>>>();
    let results = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| VerifyError::Precondition(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

/// Runs a named bundle of checks; reports are ordered by id. Any input error aborts
/// the whole suite.
pub fn run_suite(id: &str, config: &SuiteConfig) -> Result<Vec<CheckReport>> {
    run_tasks(suite_tasks(id, config)?, thread_count(config))
}

/// No refuted member (skipped members do not fail a suite).
pub fn suite_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.verdict != Verdict::Refuted)
}

/// Mutated inputs every checker must refute.
pub fn negative_controls(config: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let window = config.window;
    let a2 = Algebra::new(builtin("a2")?, KernelKind::Bullet)?;
    let tri = Algebra::new(builtin("triple:a2")?, KernelKind::Diamond)?;
    let sup = Algebra::new(builtin("super:2|1:++-")?, KernelKind::Super)?;
    let super_even = (0..sup.rank()).find(|&i| sup.qw.parity(i) == Parity::Even).expect("gl(2|1) has an even vertex");
    let sup_neighbour = (super_even + 1) % sup.rank();
    let mut tasks: Vec<Task> = Vec::new();
    {
        let m = a2.mutated(KernelMutation::CrossShift(1));
        tasks.push(one(move || check_drinfeld(&m, 0, 1, window)));
        let m = a2.mutated(KernelMutation::DiagonalShift(1));
        tasks.push(one(move || check_drinfeld(&m, 0, 0, window)));
        let m = tri.mutated(KernelMutation::CrossShift(1));
        tasks.push(one(move || check_drinfeld(&m, 0, 1, window)));
        let m = sup.mutated(KernelMutation::CrossShift(1));
        tasks.push(one(move || check_drinfeld(&m, super_even, sup_neighbour, window)));
        let m = a2.mutated(KernelMutation::CrossShift(1));
        tasks.push(one(move || check_serre_cubic(&m, 0, 1)));
        let m = sup.mutated(KernelMutation::DiagonalShift(1));
        tasks.push(one(move || check_serre_cubic(&m, super_even, sup_neighbour)));
    }
    tasks.push(one(|| {
        let check = Check::new("serre-quartic-rational:P:[2]->2");
        Ok(check.residual(&quartic_rational(QuarticForm::P, &LaurentPoly::int(2))?))
    }));
    tasks.push(one(|| {
        let qw = builtin("super:2|2:++--")?;
        let alg = Algebra::new(qw.clone(), KernelKind::Super)?;
        let i = (0..qw.rank()).find(|&i| quartic_hypothesis(&qw, i)).expect("gl(2|2) has such a vertex");
        let check = Check::new(format!("serre-quartic:{}:{}:dropped-term", qw.name, label(&qw, i)));
        Ok(check.residual(&evaluate_words(&alg, &quartic_display(qw.rank(), i, true))?))
    }));
    for l in 2..=4u32 {
        tasks.push(one(move || check_appendix_a(l, 0, BinomialConvention::OneSided)));
    }
    tasks.push(Box::new(|| {
        let qw = builtin("a2")?;
        let reports = kernel_derivation_reports(&qw, 1, Some(KernelMutation::DiagonalShift(1)))?;
        Ok(reports.into_iter().filter(|r| !r.id.contains("characters")).collect())
    }));
    let (qmax, zmax) = (config.qmax.min(4), config.zmax.min(4));
    tasks.push(one(move || dims_report(FiniteType::A(1), qmax, zmax, true)));
    for r in 2..=3u32 {
        tasks.push(one(move || check_divided_power(r, 1, false)));
    }
    let mut reports = run_tasks(tasks, thread_count(config))?;
    for r in &mut reports {
        r.id = format!("control:{}", r.id);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_small_values() {
        let (f, free) = appendix_f(1, 2).unwrap();
        assert!(free);
        let expect = LaurentPoly::q_pow(2).sub(&LaurentPoly::q_pow(-2));
        assert_eq!(f.as_laurent(), Some(&expect));
        let (f0, _) = appendix_f(0, 5).unwrap();
        assert!(f0.is_one());
    }

    #[test]
    fn a2_bullet_drinfeld() {
        let alg = Algebra::new(builtin("a2").unwrap(), KernelKind::Bullet).unwrap();
        assert!(check_drinfeld(&alg, 0, 1, (-1, 1)).unwrap().proved());
        assert!(check_drinfeld(&alg, 1, 1, (-1, 1)).unwrap().proved());
    }
}
