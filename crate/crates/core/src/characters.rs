//! Truncated `(q, z)`-series, the plethystic exponential, and three independent
//! computations of graded dimensions of the loop algebra's enveloping algebra.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{LaurentPoly, Variable};
use crate::roots::{kac_polynomial, loop_root_multiset, FiniteType, Root};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series has a nonzero constant term")]
    ConstantTerm,
    #[error("coefficient overflow")]
    Overflow,
    #[error("enumeration exceeds the cap of {0} monomials")]
    TooLarge(u64),
    #[error("truncation bounds differ")]
    BoundsMismatch,
    #[error("z-vector has length {0}, expected {1}")]
    BadDegree(usize, usize),
}

/// A monomial `q^q z^z` with `z` over the affine simple roots.
pub type Bidegree = (u32, Vec<i64>);

/// Sparse series in `q` and `z`, truncated at `q`-degree `qmax` and z-height `zmax`
/// (sum of the coordinates over the affine simple roots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    pub qmax: u32,
    pub zmax: i64,
    pub nz: usize,
    terms: BTreeMap<Bidegree, i128>,
}

fn height(z: &[i64]) -> i64 {
    z.iter().sum()
}

impl GradedSeries {
    pub fn zero(nz: usize, qmax: u32, zmax: i64) -> Self {
        GradedSeries { qmax, zmax, nz, terms: BTreeMap::new() }
    }

    pub fn one(nz: usize, qmax: u32, zmax: i64) -> Self {
        let mut s = Self::zero(nz, qmax, zmax);
        s.terms.insert((0, vec![0; nz]), 1);
        s
    }

    pub fn in_bounds(&self, q: u32, z: &[i64]) -> bool {
        q <= self.qmax && height(z) <= self.zmax && z.iter().all(|&c| c >= 0)
    }

    /// Adds `c q^q z^z`; terms outside the truncation are dropped.
    pub fn add_term(&mut self, q: u32, z: Vec<i64>, c: i128) -> Result<(), SeriesError> {
        if z.len() != self.nz {
            return Err(SeriesError::BadDegree(z.len(), self.nz));
        }
        if c == 0 || !self.in_bounds(q, &z) {
            return Ok(());
        }
        let key = (q, z);
        let v = self.terms.get(&key).copied().unwrap_or(0).checked_add(c).ok_or(SeriesError::Overflow)?;
        if v == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
        Ok(())
    }

    pub fn coefficient(&self, q: u32, z: &[i64]) -> i128 {
        self.terms.get(&(q, z.to_vec())).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Bidegree, &i128)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_bounds(&self, other: &Self) -> Result<(), SeriesError> {
        if (self.qmax, self.zmax, self.nz) != (other.qmax, other.zmax, other.nz) {
            return Err(SeriesError::BoundsMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_bounds(other)?;
        let mut out = self.clone();
        for ((q, z), c) in &other.terms {
            out.add_term(*q, z.clone(), *c)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_bounds(other)?;
        let mut out = Self::zero(self.nz, self.qmax, self.zmax);
        for ((q1, z1), c1) in &self.terms {
            for ((q2, z2), c2) in &other.terms {
                let z: Vec<i64> = z1.iter().zip(z2).map(|(a, b)| a + b).collect();
                if !out.in_bounds(q1 + q2, &z) {
                    continue;
                }
                out.add_term(q1 + q2, z, c1.checked_mul(*c2).ok_or(SeriesError::Overflow)?)?;
            }
        }
        Ok(out)
    }

    /// Terms of z-height exactly `h`.
    fn at_height(&self, h: i64) -> impl Iterator<Item = (&Bidegree, &i128)> {
        self.terms.iter().filter(move |((_, z), _)| height(z) == h)
    }
}

/// `(1 - m)^{-a}` truncated, for a monomial `m` of positive z-height.
fn geometric_power(q: u32, z: &[i64], a: i128, like: &GradedSeries) -> Result<GradedSeries, SeriesError> {
    let mut out = GradedSeries::one(like.nz, like.qmax, like.zmax);
    // coefficient of m^j is a(a+1)…(a+j-1)/j!
    let mut c: i128 = 1;
    for j in 1i128.. {
        let zj: Vec<i64> = z.iter().map(|x| x * j as i64).collect();
        let qj = (q as i128 * j) as u32;
        if !like.in_bounds(qj, &zj) {
            break;
        }
        c = c.checked_mul(a + j - 1).ok_or(SeriesError::Overflow)? / j;
        if c == 0 {
            break;
        }
        out.add_term(qj, zj, c)?;
    }
    Ok(out)
}

/// `Exp(Σ a_{α,β} q^α z^β) = ∏ (1 - q^α z^β)^{-a_{α,β}}` within the truncation.
pub fn plethystic_exp(s: &GradedSeries) -> Result<GradedSeries, SeriesError> {
    if s.terms.keys().any(|(_, z)| height(z) == 0) {
        return Err(SeriesError::ConstantTerm);
    }
    let mut out = GradedSeries::one(s.nz, s.qmax, s.zmax);
    for ((q, z), a) in &s.terms {
        out = out.mul(&geometric_power(*q, z, *a, s)?)?;
    }
    Ok(out)
}

/// Inverse of [`plethystic_exp`] on series with constant term 1, solved height by height.
pub fn plethystic_log(f: &GradedSeries) -> Result<GradedSeries, SeriesError> {
    if f.coefficient(0, &vec![0; f.nz]) != 1 || f.terms.keys().any(|(q, z)| height(z) == 0 && *q > 0) {
        return Err(SeriesError::ConstantTerm);
    }
    let mut s = GradedSeries::zero(f.nz, f.qmax, f.zmax);
    for h in 1..=f.zmax {
        let e = plethystic_exp(&s)?;
        let keys: BTreeSet<Bidegree> =
            f.at_height(h).chain(e.at_height(h)).map(|(k, _)| k.clone()).collect();
        for (q, z) in keys {
            let c = f.coefficient(q, &z).checked_sub(e.coefficient(q, &z)).ok_or(SeriesError::Overflow)?;
            s.add_term(q, z, c)?;
        }
    }
    Ok(s)
}

fn affine(r: &Root, theta: &[i64]) -> Vec<i64> {
    r.affine_coords(theta)
}

/// Largest δ-coefficient that can appear below z-height `zmax`.
fn delta_bound(ft: FiniteType, zmax: i64) -> i64 {
    zmax.max(0) / (ft.rank() as i64 + 1) + 1
}

/// `Σ_{β∈Δ_+} Σ q^{2α} z^{β+bδ} + Σ_{β∈Δ_-} Σ q^{2α} z^{β+(b+1)δ} + Σ (q^2 + rk) q^{2α} z^{(b+1)δ}`.
pub fn form4_series(ft: FiniteType, qmax: u32, zmax: i64) -> Result<GradedSeries, SeriesError> {
    let (n, theta, roots) = (ft.rank(), ft.highest_root(), ft.positive_roots());
    let mut s = GradedSeries::zero(n + 1, qmax, zmax);
    for alpha in 0..=qmax / 2 {
        let q = 2 * alpha;
        for b in 0..=delta_bound(ft, zmax) {
            for r in &roots {
                s.add_term(q, affine(&r.shift(b), &theta), 1)?;
                s.add_term(q, affine(&r.neg().shift(b + 1), &theta), 1)?;
            }
            let d = affine(&Root::imaginary(n, b + 1), &theta);
            s.add_term(q + 2, d.clone(), 1)?;
            s.add_term(q, d, n as i128)?;
        }
    }
    Ok(s)
}

/// `Σ_{β∈Δ_Q} Σ_α p_β(q^2) q^{2α} z^β` with the Kac polynomials of [`kac_polynomial`].
pub fn dim_y_series(ft: FiniteType, qmax: u32, zmax: i64) -> Result<GradedSeries, SeriesError> {
    let (n, roots) = (ft.rank(), ft.positive_roots());
    dim_y_series_with(ft, qmax, zmax, &|r| kac_polynomial(r, &roots, n).expect("enumerated roots are loop roots"))
}

/// As [`dim_y_series`] with caller-supplied Kac polynomials.
pub fn dim_y_series_with(
    ft: FiniteType,
    qmax: u32,
    zmax: i64,
    kac: &dyn Fn(&Root) -> LaurentPoly,
) -> Result<GradedSeries, SeriesError> {
    let (n, theta, roots) = (ft.rank(), ft.highest_root(), ft.positive_roots());
    let mut s = GradedSeries::zero(n + 1, qmax, zmax);
    for (root, _) in loop_root_multiset(&roots, n, delta_bound(ft, zmax)) {
        let p = kac(&root);
        let z = affine(&root, &theta);
        for (m, c) in p.terms() {
            let e = m.exponent(Variable::Q);
            let c: i128 = c.to_integer().try_into().map_err(|_| SeriesError::Overflow)?;
            for alpha in 0..=qmax / 2 {
                s.add_term((2 * e) as u32 + 2 * alpha, z.clone(), c)?;
            }
        }
    }
    Ok(s)
}

/// A basis element of the positive half, with its bidegree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PbwBasisElement {
    /// `e_β ⊗ σ^a t^b` for a real loop root `β + bδ`, or the `index`-th Cartan element at `β = 0`.
    RootVector { root: Root, power: u32, index: usize },
    /// `c_{α,b}` with `α, b > 0`.
    Central { alpha: u32, b: i64 },
}

impl PbwBasisElement {
    pub fn bidegree(&self, ft: FiniteType) -> Bidegree {
        let theta = ft.highest_root();
        match self {
            PbwBasisElement::RootVector { root, power, .. } => (2 * power, affine(root, &theta)),
            PbwBasisElement::Central { alpha, b } => (2 * alpha, affine(&Root::imaginary(ft.rank(), *b), &theta)),
        }
    }
}

pub fn pbw_basis(ft: FiniteType, qmax: u32, zmax: i64) -> Vec<PbwBasisElement> {
    let (n, theta, roots) = (ft.rank(), ft.highest_root(), ft.positive_roots());
    let fits = |q: u32, r: &Root| q <= qmax && height(&affine(r, &theta)) <= zmax;
    let mut out = Vec::new();
    for a in 0..=qmax / 2 {
        for b in 0..=delta_bound(ft, zmax) {
            for r in &roots {
                for root in [r.shift(b), r.neg().shift(b + 1)] {
                    if fits(2 * a, &root) {
                        out.push(PbwBasisElement::RootVector { root, power: a, index: 0 });
                    }
                }
            }
            let d = Root::imaginary(n, b + 1);
            if fits(2 * a, &d) {
                for index in 0..n {
                    out.push(PbwBasisElement::RootVector { root: d.clone(), power: a, index });
                }
            }
            if fits(2 * a + 2, &d) {
                out.push(PbwBasisElement::Central { alpha: a + 1, b: b + 1 });
            }
        }
    }
    out.sort();
    out
}

pub const PBW_CAP: u64 = 50_000_000;

/// Graded dimensions of the symmetric algebra on [`pbw_basis`], by enumerating
/// every monomial within the bounds once.
pub fn pbw_series(ft: FiniteType, qmax: u32, zmax: i64, cap: u64) -> Result<GradedSeries, SeriesError> {
    let degrees: Vec<Bidegree> = pbw_basis(ft, qmax, zmax).iter().map(|e| e.bidegree(ft)).collect();
    let nz = ft.rank() + 1;
    let mut tally: BTreeMap<Bidegree, i128> = BTreeMap::new();
    let mut visited = 0u64;
    fn rec(
        start: usize,
        q: u32,
        z: &mut Vec<i64>,
        degrees: &[Bidegree],
        bounds: (u32, i64),
        tally: &mut BTreeMap<Bidegree, i128>,
        visited: &mut u64,
        cap: u64,
    ) -> Result<(), SeriesError> {
        *visited += 1;
        if *visited > cap {
            return Err(SeriesError::TooLarge(cap));
        }
        *tally.entry((q, z.clone())).or_insert(0) += 1;
        for k in start..degrees.len() {
            let (dq, dz) = &degrees[k];
            if q + dq > bounds.0 || height(z) + height(dz) > bounds.1 {
                continue;
            }
            for (a, b) in z.iter_mut().zip(dz) {
                *a += b;
            }
            rec(k, q + dq, z, degrees, bounds, tally, visited, cap)?;
            for (a, b) in z.iter_mut().zip(dz) {
                *a -= b;
            }
        }
        Ok(())
    }
    rec(0, 0, &mut vec![0; nz], &degrees, (qmax, zmax), &mut tally, &mut visited, cap)?;
    let mut s = GradedSeries::zero(nz, qmax, zmax);
    for ((q, z), c) in tally {
        s.add_term(q, z, c)?;
    }
    Ok(s)
}

/// The PBW count in a single bidegree.
pub fn pbw_dimension(ft: FiniteType, q: u32, z: &[i64]) -> Result<i128, SeriesError> {
    if z.len() != ft.rank() + 1 {
        return Err(SeriesError::BadDegree(z.len(), ft.rank() + 1));
    }
    Ok(pbw_series(ft, q, height(z), PBW_CAP)?.coefficient(q, z))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsRow {
    pub q: u32,
    pub z: Vec<i64>,
    pub dim_y: i128,
    pub form4: i128,
    pub pbw: i128,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsReport {
    pub type_name: String,
    pub qmax: u32,
    pub zmax: i64,
    pub rows: Vec<DimsRow>,
    pub all_agree: bool,
}

/// Compares `Exp` of the Kac-polynomial series, `Exp` of the form4 series and the
/// PBW count coefficient by coefficient.
pub fn graded_dimension_check(ft: FiniteType, qmax: u32, zmax: i64) -> Result<DimsReport, SeriesError> {
    graded_dimension_check_from(ft, qmax, zmax, dim_y_series(ft, qmax, zmax)?)
}

pub fn graded_dimension_check_from(
    ft: FiniteType,
    qmax: u32,
    zmax: i64,
    dim_y_series: GradedSeries,
) -> Result<DimsReport, SeriesError> {
    let dim_y = plethystic_exp(&dim_y_series)?;
    let form4 = plethystic_exp(&form4_series(ft, qmax, zmax)?)?;
    let pbw = pbw_series(ft, qmax, zmax, PBW_CAP)?;
    let keys: BTreeSet<Bidegree> =
        dim_y.terms().chain(form4.terms()).chain(pbw.terms()).map(|(k, _)| k.clone()).collect();
    let mut keys: Vec<Bidegree> = keys.into_iter().collect();
    keys.sort_by(|a, b| height(&a.1).cmp(&height(&b.1)).then_with(|| b.1.cmp(&a.1)).then(a.0.cmp(&b.0)));
    let rows: Vec<DimsRow> = keys
        .into_iter()
        .map(|(q, z)| {
            let (a, b, c) = (dim_y.coefficient(q, &z), form4.coefficient(q, &z), pbw.coefficient(q, &z));
            DimsRow { q, z, dim_y: a, form4: b, pbw: c, agree: a == b && b == c }
        })
        .collect();
    let all_agree = rows.iter().all(|r| r.agree);
    Ok(DimsReport { type_name: ft.to_string(), qmax, zmax, rows, all_agree })
}
