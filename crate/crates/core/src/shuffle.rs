//! Shuffle algebras: kernels, symmetrization over shuffles, the shuffle product,
//! divided-power generators and Hall–Littlewood specializations.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactalg::{
    q_factorial, AlgError, FactoredProduct, LaurentPoly, Monomial, RationalFunction, Variable,
};
use crate::quiver::{validate_weight_function, DimensionVector, Parity, QuiverWithWeights};

pub use crate::exactalg::q_binomial;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ShuffleError {
    #[error("kernel kind `{0}` does not apply: {1}")]
    KindMismatch(KernelKind, String),
    #[error("missing weight data: {0}")]
    MissingWeights(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("symmetry certification failed in degree {0}")]
    NotSymmetric(String),
    #[error("polynomiality certification failed: {0}")]
    NotPolynomial(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelKind {
    Bullet,
    Star,
    Diamond,
    Circ,
    Super,
}

impl KernelKind {
    pub const ALL: [KernelKind; 5] =
        [KernelKind::Bullet, KernelKind::Star, KernelKind::Diamond, KernelKind::Circ, KernelKind::Super];

    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Bullet => "bullet",
            KernelKind::Star => "star",
            KernelKind::Diamond => "diamond",
            KernelKind::Circ => "circ",
            KernelKind::Super => "super",
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        KernelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown kernel kind `{}`", s))
    }
}

/// Deliberate corruptions used by negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelMutation {
    /// Shifts the q-exponent in the numerator of every same-vertex factor.
    DiagonalShift(i32),
    /// Shifts the q-exponent in the numerator of every cross-vertex factor.
    CrossShift(i32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub kind: KernelKind,
    pub alpha: DimensionVector,
    pub gamma: DimensionVector,
    pub value: FactoredProduct,
}

pub fn x(i: usize, r: u32) -> LaurentPoly {
    LaurentPoly::var(Variable::slot(i, r))
}

fn qt(q: i32, t: i32) -> Monomial {
    Monomial::from_pairs([(Variable::Q, q), (Variable::T, t)])
}

/// `c * x` for a monomial `c` in `q, t`.
fn sx(c: &Monomial, i: usize, r: u32) -> LaurentPoly {
    x(i, r).mul_monomial(c)
}

/// `1 - x_{i,r} / (c x_{j,s})` as a Laurent polynomial.
fn one_minus_ratio(i: usize, r: u32, c: &Monomial, j: usize, s: u32) -> LaurentPoly {
    let m = Monomial::from_pairs([(Variable::slot(i, r), 1), (Variable::slot(j, s), -1)]).div(c);
    LaurentPoly::one().sub(&LaurentPoly::monomial(m))
}

fn first(alpha: &DimensionVector, i: usize) -> std::ops::RangeInclusive<u32> {
    1..=alpha.get(i)
}

fn second(alpha: &DimensionVector, gamma: &DimensionVector, i: usize) -> std::ops::RangeInclusive<u32> {
    alpha.get(i) + 1..=alpha.get(i) + gamma.get(i)
}

fn check_degrees(qw: &QuiverWithWeights, alpha: &DimensionVector, gamma: &DimensionVector) -> Result<(), ShuffleError> {
    if alpha.len() != qw.rank() || gamma.len() != qw.rank() {
        return Err(ShuffleError::DegreeMismatch(format!(
            "dimension vectors {} and {} do not match {} vertices",
            alpha,
            gamma,
            qw.rank()
        )));
    }
    Ok(())
}

/// The kernel `ζ_{α,γ}` of the given kind, as a factored product
/// (first factor in slots `1..a_i`, second in `a_i+1..b_i`).
pub fn build_kernel(
    kind: KernelKind,
    qw: &QuiverWithWeights,
    alpha: &DimensionVector,
    gamma: &DimensionVector,
) -> Result<Kernel, ShuffleError> {
    build_kernel_mutated(kind, qw, alpha, gamma, None)
}

pub fn build_kernel_mutated(
    kind: KernelKind,
    qw: &QuiverWithWeights,
    alpha: &DimensionVector,
    gamma: &DimensionVector,
    mutation: Option<KernelMutation>,
) -> Result<Kernel, ShuffleError> {
    check_degrees(qw, alpha, gamma)?;
    check_kind(kind, qw)?;
    let (dshift, cshift) = match mutation {
        Some(KernelMutation::DiagonalShift(k)) => (k, 0),
        Some(KernelMutation::CrossShift(k)) => (0, k),
        None => (0, 0),
    };
    let n = qw.rank();
    let q = &qw.quiver;
    let mut fp = FactoredProduct::one();
    let diagonal = |fp: &mut FactoredProduct| {
        for i in 0..n {
            for r in first(alpha, i) {
                for s in second(alpha, gamma, i) {
                    fp.push_ratio(sx(&qt(-2 + dshift, 0), i, r).sub(&x(i, s)), x(i, r).sub(&x(i, s)));
                }
            }
        }
    };
    match kind {
        KernelKind::Bullet => {
            for i in 0..n {
                for j in i + 1..n {
                    let a = qw.cartan.a[i][j] as i32;
                    if a == 0 {
                        continue;
                    }
                    for r in first(alpha, i) {
                        for s in second(alpha, gamma, j) {
                            fp.push_ratio(
                                sx(&qt(-a + cshift, 0), i, r).sub(&x(j, s)),
                                x(i, r).sub(&sx(&qt(-a, 0), j, s)),
                            );
                        }
                    }
                }
            }
            diagonal(&mut fp);
        }
        KernelKind::Star => {
            for (h, ar) in q.arrows.iter().enumerate() {
                let w = qw.weight(h);
                let c = qt(w.q_exp - cshift, w.t_exp);
                let (i, j) = (ar.source, ar.target);
                for r in second(alpha, gamma, i) {
                    for s in first(alpha, j) {
                        fp.push(one_minus_ratio(i, r, &c, j, s), 1);
                    }
                }
            }
            for i in 0..n {
                for s in first(alpha, i) {
                    for r in second(alpha, gamma, i) {
                        fp.push(one_minus_ratio(i, r, &Monomial::one(), i, s), -1);
                    }
                }
            }
        }
        KernelKind::Diamond => {
            for (h, hp) in q.pairs.iter().copied() {
                let (wh, whp) = (qw.weight(h), qw.weight(hp));
                let (i, j) = (q.arrows[h].source, q.arrows[h].target);
                for r in first(alpha, i) {
                    for s in second(alpha, gamma, j) {
                        fp.push_ratio(
                            sx(&qt(whp.q_exp + cshift, 0), i, r).sub(&sx(&qt(0, -whp.t_exp), j, s)),
                            x(i, r).sub(&sx(&qt(wh.q_exp, wh.t_exp), j, s)),
                        );
                    }
                }
            }
            diagonal(&mut fp);
        }
        KernelKind::Circ => {
            for h in q.double_arrows() {
                let w = qw.weight(h);
                let (i, j) = (q.arrows[h].source, q.arrows[h].target);
                for r in first(alpha, i) {
                    for s in second(alpha, gamma, j) {
                        let f = if i < j {
                            // 1 - q_h x_{j,s} / x_{i,r}
                            one_minus_ratio(j, s, &qt(-w.q_exp - cshift, -w.t_exp), i, r)
                        } else {
                            one_minus_ratio(i, r, &qt(w.q_exp + cshift, w.t_exp), j, s)
                        };
                        fp.push(f, -1);
                    }
                }
            }
            diagonal(&mut fp);
        }
        KernelKind::Super => {
            let cartan = &qw.cartan;
            for ar in q.arrows.iter().filter(|a| !a.is_loop()) {
                let (i, j) = (ar.source, ar.target);
                if i > j {
                    continue;
                }
                let a = cartan.a[i][j] as i32;
                let m = cartan.m[i][j] as i32;
                let sign = if qw.parity(i) == Parity::Odd && qw.parity(j) == Parity::Odd { -1 } else { 1 };
                // ζ_{i,j}(u, v), u = x_{i,r} (second factor), v = x_{j,s} (first factor)
                for r in second(alpha, gamma, i) {
                    for s in first(alpha, j) {
                        fp.push_ratio(
                            sx(&qt(a + cshift, 0), i, r).sub(&sx(&qt(0, m), j, s)),
                            x(i, r).sub(&sx(&qt(a, m), j, s)),
                        );
                        if sign < 0 {
                            fp.scale(&RationalFunction::int(-1));
                        }
                    }
                }
            }
            for i in 0..n {
                let even = qw.parity(i) == Parity::Even;
                let a_ii = cartan.a[i][i] as i32;
                for s in first(alpha, i) {
                    for r in second(alpha, gamma, i) {
                        if even {
                            // ζ_{i,i}(u, v) = (q^{2 s_i} u - v)/(u - v) with u = x_{i,r}
                            fp.push_ratio(sx(&qt(a_ii + dshift, 0), i, r).sub(&x(i, s)), x(i, r).sub(&x(i, s)));
                        } else {
                            // odd vertices: 1/(x_first - x_second)
                            fp.push(x(i, s).sub(&x(i, r)), -1);
                        }
                    }
                }
            }
        }
    }
    Ok(Kernel { kind, alpha: alpha.clone(), gamma: gamma.clone(), value: fp })
}

fn check_kind(kind: KernelKind, qw: &QuiverWithWeights) -> Result<(), ShuffleError> {
    let q = &qw.quiver;
    if qw.weights.0.len() != q.arrows.len() {
        return Err(ShuffleError::MissingWeights(format!("{} arrows but {} weights", q.arrows.len(), qw.weights.0.len())));
    }
    match kind {
        KernelKind::Super => {
            if !qw.is_super() {
                return Err(ShuffleError::KindMismatch(kind, "quiver is not a super quiver".into()));
            }
        }
        _ if qw.is_super() => {
            return Err(ShuffleError::KindMismatch(kind, "super quivers use the super kernel".into()));
        }
        KernelKind::Bullet => {
            if !qw.cartan.is_kac_moody() {
                return Err(ShuffleError::KindMismatch(kind, "quiver is not of Kac–Moody type".into()));
            }
            if q.is_double() {
                let flags = validate_weight_function(q, &qw.weights)
                    .map_err(|e| ShuffleError::MissingWeights(e.to_string()))?;
                if !flags.normal {
                    return Err(ShuffleError::KindMismatch(kind, "weight function is not normal".into()));
                }
            }
        }
        KernelKind::Diamond | KernelKind::Circ => {
            let flags =
                validate_weight_function(q, &qw.weights).map_err(|e| ShuffleError::MissingWeights(e.to_string()))?;
            if !flags.homogeneous {
                return Err(ShuffleError::KindMismatch(kind, "weight function is not homogeneous".into()));
            }
            if kind == KernelKind::Circ && q.double_arrows().iter().any(|&h| q.arrows[h].is_loop()) {
                return Err(ShuffleError::KindMismatch(kind, "double quiver has loops".into()));
            }
        }
        KernelKind::Star => {}
    }
    Ok(())
}

/// Per-vertex shuffles of `(a_i, c_i)`: each entry maps old slot index (1-based) to new.
pub fn shuffles(alpha: &DimensionVector, gamma: &DimensionVector) -> Vec<Vec<Vec<u32>>> {
    let per_vertex: Vec<Vec<Vec<u32>>> = (0..alpha.len())
        .map(|i| {
            let (a, b) = (alpha.get(i), alpha.get(i) + gamma.get(i));
            combinations(b, a)
                .into_iter()
                .map(|subset| {
                    let rest: Vec<u32> = (1..=b).filter(|s| !subset.contains(s)).collect();
                    let mut map = vec![0u32; b as usize + 1];
                    for (k, &s) in subset.iter().chain(rest.iter()).enumerate() {
                        map[k + 1] = s;
                    }
                    map
                })
                .collect()
        })
        .collect();
    let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for choices in per_vertex {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in &choices {
                let mut p = prefix.clone();
                p.push(c.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn combinations(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn rec(start: u32, n: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == k {
            out.push(cur.clone());
            return;
        }
        for s in start..=n {
            if n - s + 1 < k - cur.len() as u32 {
                break;
            }
            cur.push(s);
            rec(s + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn apply_slot_map(f: &RationalFunction, maps: &[Vec<u32>]) -> RationalFunction {
    f.rename(&|v| match v {
        Variable::Slot { vertex, index } => {
            let m = &maps[vertex as usize];
            if (index as usize) < m.len() {
                Variable::Slot { vertex, index: m[index as usize] }
            } else {
                v
            }
        }
        other => other,
    })
}

/// `Σ_{w ∈ W_{α,γ}} w(f)`.
pub fn sym_over_shuffles(
    f: &RationalFunction,
    alpha: &DimensionVector,
    gamma: &DimensionVector,
) -> Result<RationalFunction, ShuffleError> {
    if alpha.len() != gamma.len() {
        return Err(ShuffleError::DegreeMismatch("α and γ have different lengths".into()));
    }
    let beta = alpha.add(gamma);
    for v in f.variables() {
        if let Variable::Slot { vertex, index } = v {
            if vertex as usize >= beta.len() || index > beta.get(vertex as usize) {
                return Err(ShuffleError::DegreeMismatch(format!("slot {} exceeds degree {}", v, beta)));
            }
        }
    }
    let terms: Vec<RationalFunction> = shuffles(alpha, gamma).iter().map(|w| apply_slot_map(f, w)).collect();
    Ok(RationalFunction::sum(terms))
}

/// Sum over all permutations of the slots `1..=r` of one vertex.
pub fn sym_full(f: &RationalFunction, vertex: usize, r: u32) -> RationalFunction {
    let mut terms = Vec::new();
    for perm in permutations(r) {
        terms.push(f.rename(&|v| match v {
            Variable::Slot { vertex: w, index } if w as usize == vertex && index >= 1 && index <= r => {
                Variable::Slot { vertex: w, index: perm[index as usize - 1] }
            }
            other => other,
        }));
    }
    RationalFunction::sum(terms)
}

pub fn permutations(r: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for k in 1..=r {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// A graded component of a shuffle algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleElement {
    pub degree: DimensionVector,
    pub value: RationalFunction,
}

impl ShuffleElement {
    pub fn unit(n: usize) -> Self {
        ShuffleElement { degree: DimensionVector::zero(n), value: RationalFunction::one() }
    }

    pub fn scalar(n: usize, c: RationalFunction) -> Self {
        ShuffleElement { degree: DimensionVector::zero(n), value: c }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        ShuffleElement { degree: self.degree.clone(), value: self.value.mul(c) }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ShuffleError> {
        if self.degree != other.degree {
            return Err(ShuffleError::DegreeMismatch(format!("{} + {}", self.degree, other.degree)));
        }
        Ok(ShuffleElement { degree: self.degree.clone(), value: self.value.add(&other.value) })
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// `(e_{i,n})^{(r)} ↦ (x_{i,1} ⋯ x_{i,r})^n` in degree `r α_i`.
pub fn generator(n_vertices: usize, i: usize, n: i32, r: u32) -> Result<ShuffleElement, ShuffleError> {
    if r == 0 {
        return Err(ShuffleError::InvalidGenerator("r must be positive".into()));
    }
    if i >= n_vertices {
        return Err(ShuffleError::InvalidGenerator(format!("vertex index {} out of range", i)));
    }
    let m = Monomial::from_pairs((1..=r).map(|s| (Variable::slot(i, s), n)));
    Ok(ShuffleElement { degree: DimensionVector::multiple(n_vertices, i, r), value: LaurentPoly::monomial(m).into() })
}

/// A shuffle algebra: a quiver with weights and a fixed kernel kind.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub qw: QuiverWithWeights,
    pub kind: KernelKind,
    pub mutation: Option<KernelMutation>,
    /// Certify per-vertex symmetry and polynomiality of every product.
    pub certify: bool,
}

impl Algebra {
    pub fn new(qw: QuiverWithWeights, kind: KernelKind) -> Result<Self, ShuffleError> {
        check_kind(kind, &qw)?;
        Ok(Algebra { qw, kind, mutation: None, certify: true })
    }

    pub fn mutated(&self, m: KernelMutation) -> Self {
        Algebra { mutation: Some(m), ..self.clone() }
    }

    pub fn rank(&self) -> usize {
        self.qw.rank()
    }

    pub fn kernel(&self, alpha: &DimensionVector, gamma: &DimensionVector) -> Result<Kernel, ShuffleError> {
        build_kernel_mutated(self.kind, &self.qw, alpha, gamma, self.mutation)
    }

    pub fn generator(&self, i: usize, n: i32, r: u32) -> Result<ShuffleElement, ShuffleError> {
        generator(self.rank(), i, n, r)
    }

    pub fn unit(&self) -> ShuffleElement {
        ShuffleElement::unit(self.rank())
    }

    /// `f ∘ g = Sym(ζ_{α,γ} · f ⊗ g)` with `g` moved into the high slots.
    pub fn mul(&self, f: &ShuffleElement, g: &ShuffleElement) -> Result<ShuffleElement, ShuffleError> {
        let (alpha, gamma) = (&f.degree, &g.degree);
        check_degrees(&self.qw, alpha, gamma)?;
        let beta = alpha.add(gamma);
        if f.is_zero() || g.is_zero() {
            return Ok(ShuffleElement { degree: beta, value: RationalFunction::zero() });
        }
        let shift: Vec<Vec<u32>> = (0..self.rank())
            .map(|i| (0..=gamma.get(i)).map(|s| if s == 0 { 0 } else { s + alpha.get(i) }).collect())
            .collect();
        let g_high = apply_slot_map(&g.value, &shift);
        let kernel = self.kernel(alpha, gamma)?.value.expand()?;
        let integrand = kernel.mul(&f.value).mul(&g_high);
        let value = sym_over_shuffles(&integrand, alpha, gamma)?;
        let out = ShuffleElement { degree: beta, value };
        if self.certify {
            self.certify_element(&out)?;
        }
        Ok(out)
    }

    pub fn mul_all(&self, elems: &[ShuffleElement]) -> Result<ShuffleElement, ShuffleError> {
        let mut acc = self.unit();
        for e in elems {
            acc = if acc.degree.is_zero() && acc.value.is_one() { e.clone() } else { self.mul(&acc, e)? };
        }
        Ok(acc)
    }

    /// Per-vertex symmetry and absence of same-vertex (wheel) denominators,
    /// except between slots of odd vertices in super algebras.
    pub fn certify_element(&self, e: &ShuffleElement) -> Result<(), ShuffleError> {
        certify_symmetric(&e.value, &e.degree)?;
        for (p, _) in e.value.denominator_factors() {
            let vars = p.variables();
            let slot_vertices: Vec<u32> = vars
                .iter()
                .filter_map(|v| match v {
                    Variable::Slot { vertex, .. } => Some(*vertex),
                    _ => None,
                })
                .collect();
            let same_vertex = slot_vertices.len() >= 2 && slot_vertices.iter().all(|&v| v == slot_vertices[0]);
            if same_vertex {
                let i = slot_vertices[0] as usize;
                let allowed = self.kind == KernelKind::Super && self.qw.parity(i) == Parity::Odd;
                if !allowed {
                    return Err(ShuffleError::NotPolynomial(format!(
                        "denominator factor ({}) survives symmetrization in degree {}",
                        p, e.degree
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn certify_symmetric(f: &RationalFunction, degree: &DimensionVector) -> Result<(), ShuffleError> {
    for i in 0..degree.len() {
        for k in 1..degree.get(i) {
            let g = f.rename(&|v| match v {
                Variable::Slot { vertex, index } if vertex as usize == i && index == k => {
                    Variable::Slot { vertex, index: k + 1 }
                }
                Variable::Slot { vertex, index } if vertex as usize == i && index == k + 1 => {
                    Variable::Slot { vertex, index: k }
                }
                other => other,
            });
            if g != *f && !g.equals(f) {
                return Err(ShuffleError::NotSymmetric(degree.to_string()));
            }
        }
    }
    Ok(())
}

/// `Δ_r = ∏_{s<t} (q^-2 x_s - x_t)/(x_s - x_t)` in the slots of one vertex.
pub fn delta(vertex: usize, r: u32) -> Result<RationalFunction, AlgError> {
    let mut fp = FactoredProduct::one();
    for s in 1..=r {
        for t in s + 1..=r {
            fp.push_ratio(x(vertex, s).mul(&LaurentPoly::q_pow(-2)).sub(&x(vertex, t)), x(vertex, s).sub(&x(vertex, t)));
        }
    }
    fp.expand()
}

/// Raw and q-power-normalized `Sym(x^λ Δ_r) / ∏_n [i_n]!`.
pub fn hall_littlewood(lambda: &[i32], r: u32) -> Result<(RationalFunction, RationalFunction), ShuffleError> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(ShuffleError::InvalidPartition(format!("{:?} is not weakly decreasing", lambda)));
    }
    if lambda.len() > r as usize {
        return Err(ShuffleError::InvalidPartition(format!("{:?} has more than {} parts", lambda, r)));
    }
    let mut parts = lambda.to_vec();
    if parts.len() < r as usize {
        if parts.last().map(|&p| p < 0).unwrap_or(false) {
            return Err(ShuffleError::InvalidPartition(format!("{:?}: padding by zeros would break the order", lambda)));
        }
        parts.resize(r as usize, 0);
    }
    let mono = Monomial::from_pairs(parts.iter().enumerate().map(|(k, &e)| (Variable::slot(0, k as u32 + 1), e)));
    let integrand = delta(0, r)?.mul_poly(&LaurentPoly::monomial(mono));
    let mut raw = sym_full(&integrand, 0, r);
    let mut k = 0;
    while k < parts.len() {
        let mut l = k;
        while l < parts.len() && parts[l] == parts[k] {
            l += 1;
        }
        raw = raw.div(&q_factorial((l - k) as u32).into())?;
        k = l;
    }
    let normalized = normalize_q_power(&raw);
    Ok((raw, normalized))
}

/// Divides by the q-part of the term of lowest q-degree.
pub fn normalize_q_power(f: &RationalFunction) -> RationalFunction {
    let num = f.numerator();
    match num.terms().iter().map(|(m, _)| m.exponent(Variable::Q)).min() {
        Some(e) => f.mul_poly(&LaurentPoly::q_pow(-e)),
        None => f.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::builtin;

    fn dv(v: &[u32]) -> DimensionVector {
        DimensionVector(v.to_vec())
    }

    #[test]
    fn bullet_single_vertex_kernel() {
        let a1 = builtin("a1").unwrap();
        let k = build_kernel(KernelKind::Bullet, &a1, &dv(&[1]), &dv(&[1])).unwrap();
        let expect = RationalFunction::new(
            x(0, 1).mul(&LaurentPoly::q_pow(-2)).sub(&x(0, 2)),
            x(0, 1).sub(&x(0, 2)),
        )
        .unwrap();
        assert!(k.value.expand().unwrap().equals(&expect));
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(&dv(&[2]), &dv(&[1])).len(), 3);
        assert_eq!(shuffles(&dv(&[1, 1]), &dv(&[1, 2])).len(), 6);
        let s = sym_over_shuffles(&RationalFunction::one(), &dv(&[2]), &dv(&[1])).unwrap();
        assert_eq!(s.as_constant(), Some(crate::exactalg::rat(3)));
    }

    #[test]
    fn e0_squared() {
        let alg = Algebra::new(builtin("a1").unwrap(), KernelKind::Bullet).unwrap();
        let e = alg.generator(0, 0, 1).unwrap();
        let p = alg.mul(&e, &e).unwrap();
        assert_eq!(p.value.as_laurent(), Some(&LaurentPoly::one().add(&LaurentPoly::q_pow(-2))));
    }

    #[test]
    fn super_odd_square_vanishes() {
        let qw = builtin("super:2|1:++-").unwrap();
        let odd = (0..qw.rank()).find(|&i| qw.parity(i) == Parity::Odd).unwrap();
        let k = build_kernel(KernelKind::Super, &qw, &DimensionVector::unit(3, odd), &DimensionVector::unit(3, odd)).unwrap();
        let expect = RationalFunction::new(LaurentPoly::one(), x(odd, 1).sub(&x(odd, 2))).unwrap();
        assert!(k.value.expand().unwrap().equals(&expect));
        let alg = Algebra::new(qw, KernelKind::Super).unwrap();
        for n in -1..=1 {
            let e = alg.generator(odd, n, 1).unwrap();
            assert!(alg.mul(&e, &e).unwrap().is_zero());
        }
    }

    #[test]
    fn hall_littlewood_small() {
        let (raw, _) = hall_littlewood(&[1, 0], 2).unwrap();
        let expect = x(0, 1).add(&x(0, 2)).mul(&LaurentPoly::q_pow(-2));
        assert_eq!(raw.as_laurent(), Some(&expect));
        let (raw, norm) = hall_littlewood(&[], 0).unwrap();
        assert!(raw.is_one() && norm.is_one());
        let (_, norm) = hall_littlewood(&[2, 2, 2], 3).unwrap();
        let m = Monomial::from_pairs((1..=3).map(|s| (Variable::slot(0, s), 2)));
        assert_eq!(norm.as_laurent(), Some(&LaurentPoly::monomial(m)));
        assert!(hall_littlewood(&[0, 1], 2).is_err());
    }

    #[test]
    fn kernels_are_invariant_under_block_permutations() {
        let a2 = builtin("a2").unwrap();
        let tri = crate::quiver::triple_quiver(&a2);
        let (al, ga) = (dv(&[2, 1]), dv(&[1, 2]));
        for (kind, qw) in [
            (KernelKind::Bullet, &a2),
            (KernelKind::Diamond, &a2),
            (KernelKind::Circ, &a2),
            (KernelKind::Star, &tri),
        ] {
            let k = build_kernel(kind, qw, &al, &ga).unwrap().value.expand().unwrap();
            let swap_first = k.rename(&|v| match v {
                Variable::Slot { vertex: 0, index: 1 } => Variable::slot(0, 2),
                Variable::Slot { vertex: 0, index: 2 } => Variable::slot(0, 1),
                o => o,
            });
            let swap_second = k.rename(&|v| match v {
                Variable::Slot { vertex: 1, index: 2 } => Variable::slot(1, 3),
                Variable::Slot { vertex: 1, index: 3 } => Variable::slot(1, 2),
                o => o,
            });
            assert!(swap_first.equals(&k), "{kind}");
            assert!(swap_second.equals(&k), "{kind}");
        }
    }

    #[test]
    fn unit_is_neutral_and_zero_degree_kernel_is_one() {
        let a2 = builtin("a2").unwrap();
        let k = build_kernel(KernelKind::Bullet, &a2, &dv(&[0, 0]), &dv(&[1, 1])).unwrap();
        assert!(k.value.expand().unwrap().is_one());
        let alg = Algebra::new(a2, KernelKind::Bullet).unwrap();
        let f = alg.generator(1, 2, 2).unwrap();
        assert_eq!(alg.mul(&alg.unit(), &f).unwrap(), f);
    }
}
