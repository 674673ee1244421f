//! Finite root systems, the loop-root set `Δ_Q` and Kac-polynomial values.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactalg::{rat, LaurentPoly, Monomial, Variable};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("not a generalized Cartan matrix: {0}")]
    NotCartan(String),
    #[error("Cartan matrix is not of finite type")]
    NotFinite,
    #[error("not a loop root: {0}")]
    NotLoopRoot(String),
    #[error("unsupported type `{0}` (supported: a1, a2, a3)")]
    UnsupportedType(String),
}

/// `Σ coords_i α_i + delta δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
    pub delta: i64,
}

impl Root {
    pub fn simple(n: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[i] = 1;
        Root { coords, delta: 0 }
    }

    pub fn imaginary(n: usize, b: i64) -> Self {
        Root { coords: vec![0; n], delta: b }
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_imaginary(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Self {
        Root { coords: self.coords.iter().map(|c| -c).collect(), delta: -self.delta }
    }

    pub fn shift(&self, b: i64) -> Self {
        Root { coords: self.coords.clone(), delta: self.delta + b }
    }

    /// Coordinates over the affine simple roots `α_0, α_1, …`, using `δ = α_0 + θ`.
    pub fn affine_coords(&self, theta: &[i64]) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.coords.len() + 1);
        out.push(self.delta);
        out.extend(self.coords.iter().zip(theta).map(|(c, t)| c + self.delta * t));
        out
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in self.coords.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(format!("a{}", i + 1)),
                -1 => parts.push(format!("-a{}", i + 1)),
                _ => parts.push(format!("{}a{}", c, i + 1)),
            }
        }
        match self.delta {
            0 => {}
            1 => parts.push("d".into()),
            b => parts.push(format!("{}d", b)),
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join("+").replace("+-", "-"))
    }
}

/// Simply-laced finite types supported at desk scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
}

impl FiniteType {
    pub fn rank(self) -> usize {
        match self {
            FiniteType::A(n) => n,
        }
    }

    pub fn cartan(self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    }

    pub fn positive_roots(self) -> Vec<Root> {
        positive_roots(&self.cartan(), i64::MAX).expect("builtin types are finite")
    }

    /// Highest root `θ`, so that `δ = α_0 + θ`.
    pub fn highest_root(self) -> Vec<i64> {
        self.positive_roots().into_iter().max_by_key(|r| r.height()).expect("nonempty").coords
    }
}

impl FromStr for FiniteType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, RootError> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(FiniteType::A(1)),
            "a2" => Ok(FiniteType::A(2)),
            "a3" => Ok(FiniteType::A(3)),
            _ => Err(RootError::UnsupportedType(s.to_string())),
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "a{}", n),
        }
    }
}

fn check_cartan(c: &[Vec<i64>]) -> Result<(), RootError> {
    let n = c.len();
    for (i, row) in c.iter().enumerate() {
        if row.len() != n {
            return Err(RootError::NotCartan("matrix is not square".into()));
        }
        if row[i] != 2 {
            return Err(RootError::NotCartan(format!("diagonal entry {} is {}", i, row[i])));
        }
        for j in 0..n {
            if i != j && (row[j] > 0 || (row[j] == 0) != (c[j][i] == 0)) {
                return Err(RootError::NotCartan(format!("bad off-diagonal entry ({}, {})", i, j)));
            }
        }
    }
    Ok(())
}

/// Sylvester's criterion on the symmetrized matrix (exact, Bareiss elimination).
fn is_positive_definite(c: &[Vec<i64>]) -> bool {
    let n = c.len();
    let mut m: Vec<Vec<i128>> = c.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] <= 0 {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    true
}

/// Positive roots of height `<= height_bound`, by closing the simple roots under root strings.
pub fn positive_roots(cartan: &[Vec<i64>], height_bound: i64) -> Result<Vec<Root>, RootError> {
    check_cartan(cartan)?;
    if !is_positive_definite(cartan) {
        return Err(RootError::NotFinite);
    }
    let n = cartan.len();
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut level: Vec<Vec<i64>> = (0..n).map(|i| Root::simple(n, i).coords).collect();
    let mut h = 1;
    while !level.is_empty() && h <= height_bound {
        all.extend(level.iter().cloned());
        let mut next = BTreeSet::new();
        for beta in &level {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing >= 1 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        level = next.into_iter().collect();
        h += 1;
    }
    let mut out: Vec<Root> = all.into_iter().map(|coords| Root { coords, delta: 0 }).collect();
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coords.cmp(&a.coords)));
    Ok(out)
}

/// `Δ_Q = (Δ_+ + ℕδ) ⊔ (Δ_- + ℤ_{>0}δ) ⊔ ℤ_{>0}δ`, truncated to δ-coefficient `<= z_bound`,
/// each root paired with its multiplicity (`1` for real roots, the rank for `nδ`).
pub fn loop_root_multiset(finite_positive_roots: &[Root], rank: usize, z_bound: i64) -> Vec<(Root, u64)> {
    let mut out = Vec::new();
    for b in 0..=z_bound {
        for r in finite_positive_roots {
            out.push((r.shift(b), 1));
        }
        if b >= 1 {
            for r in finite_positive_roots {
                out.push((r.neg().shift(b), 1));
            }
            out.push((Root::imaginary(rank, b), rank as u64));
        }
    }
    out
}

fn is_finite_root(coords: &[i64], finite_positive_roots: &[Root]) -> bool {
    finite_positive_roots.iter().any(|r| r.coords == coords || r.coords.iter().zip(coords).all(|(a, b)| *a == -b))
}

/// Kac polynomial of a loop root: `1` on real roots, `q + rank` on `nδ`.
pub fn kac_polynomial(r: &Root, finite_positive_roots: &[Root], rank: usize) -> Result<LaurentPoly, RootError> {
    if r.coords.len() != rank {
        return Err(RootError::NotLoopRoot(r.to_string()));
    }
    if r.is_imaginary() {
        if r.delta <= 0 {
            return Err(RootError::NotLoopRoot(r.to_string()));
        }
        return Ok(LaurentPoly::from_terms([
            (Monomial::var(Variable::Q, 1), rat(1)),
            (Monomial::one(), rat(rank as i64)),
        ]));
    }
    let positive = r.coords.iter().all(|&c| c >= 0);
    let ok = is_finite_root(&r.coords, finite_positive_roots) && (r.delta >= 1 || (r.delta == 0 && positive));
    if !ok {
        return Err(RootError::NotLoopRoot(r.to_string()));
    }
    Ok(LaurentPoly::one())
}
