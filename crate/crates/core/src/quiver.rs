//! Quivers, weight functions, Cartan data and the gl(m|n) super quiver.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate id `{0}`")]
    Duplicate(String),
    #[error("arrow `{0}` has no partner h'")]
    Unpaired(String),
    #[error("invalid pairing: {0}")]
    BadPair(String),
    #[error("invalid parity sequence: {0}")]
    BadParity(String),
    #[error("malformed quiver specification: {0}")]
    Parse(String),
    #[error("unknown builtin quiver `{0}`")]
    UnknownBuiltin(String),
    #[error("malformed dimension vector `{0}`")]
    BadDimension(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A finite quiver. The vertex list order is the total order `<` used by every
/// kernel. `pairs` records the bijection `h -> h'` of a double quiver explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub pairs: Vec<(usize, usize)>,
    pub parity: Vec<Parity>,
}

impl Quiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, usize, usize)]) -> Quiver {
        Quiver {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|&(id, s, t)| Arrow { id: id.to_string(), source: s, target: t })
                .collect(),
            pairs: Vec::new(),
            parity: vec![Parity::Even; vertices.len()],
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize, QuiverError> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| QuiverError::UnknownVertex(id.to_string()))
    }

    pub fn partner(&self, h: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == h {
                Some(b)
            } else if b == h {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Arrows of `Q_1`: first members of pairs, or all arrows if the quiver is not doubled.
    pub fn base_arrows(&self) -> Vec<usize> {
        if self.pairs.is_empty() {
            (0..self.arrows.len()).collect()
        } else {
            self.pairs.iter().map(|p| p.0).collect()
        }
    }

    /// Arrows of the double quiver `Q̄_1` (members of pairs).
    pub fn double_arrows(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort();
        v
    }

    /// Unpaired loops of a triple quiver (the `ω_i`).
    pub fn extra_loops(&self) -> Vec<usize> {
        if self.pairs.is_empty() {
            return Vec::new();
        }
        (0..self.arrows.len()).filter(|&h| self.arrows[h].is_loop() && self.partner(h).is_none()).collect()
    }

    pub fn is_double(&self) -> bool {
        !self.pairs.is_empty()
    }
}

/// Torus character `q^q_exp t^t_exp` of an arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Weight {
    pub q_exp: i32,
    pub t_exp: i32,
}

impl Weight {
    pub fn new(q_exp: i32, t_exp: i32) -> Self {
        Weight { q_exp, t_exp }
    }
}

/// Per-arrow weights, indexed like `Quiver::arrows`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightFunction(pub Vec<Weight>);

impl WeightFunction {
    pub fn get(&self, h: usize) -> Weight {
        self.0[h]
    }
}

/// Symmetric matrix `a_ij` and skew matrix `m_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub a: Vec<Vec<i64>>,
    pub m: Vec<Vec<i64>>,
}

impl CartanData {
    /// Kac–Moody data from `Q_1`; `m_ij = ±1` for `i<j` / `i>j` when `a_ij != 0`, else 0.
    pub fn from_quiver(q: &Quiver) -> CartanData {
        let n = q.len();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for h in q.base_arrows() {
            let ar = &q.arrows[h];
            if ar.is_loop() {
                a[ar.source][ar.source] -= 2;
            } else {
                a[ar.source][ar.target] -= 1;
                a[ar.target][ar.source] -= 1;
            }
        }
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && a[i][j] != 0 {
                    m[i][j] = if i < j { 1 } else { -1 };
                }
            }
        }
        CartanData { a, m }
    }

    pub fn is_kac_moody(&self) -> bool {
        let n = self.a.len();
        (0..n).all(|i| self.a[i][i] == 2 && (0..n).all(|j| i == j || self.a[i][j] <= 0))
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }
}

/// Parity sequence `s ∈ {±1}^(m+n)` with `m` entries equal to `+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParitySequence {
    pub s: Vec<i64>,
    pub m: usize,
    pub n: usize,
}

impl ParitySequence {
    pub fn new(s: Vec<i64>) -> Result<Self, QuiverError> {
        if s.iter().any(|&x| x != 1 && x != -1) {
            return Err(QuiverError::BadParity("entries must be +1 or -1".into()));
        }
        let m = s.iter().filter(|&&x| x == 1).count();
        let n = s.len() - m;
        if m + n < 3 {
            return Err(QuiverError::BadParity("the cyclic quiver needs m+n >= 3".into()));
        }
        if m * n == 1 {
            return Err(QuiverError::BadParity("type (1,1) is excluded".into()));
        }
        Ok(ParitySequence { s, m, n })
    }

    /// Parses `++-` or `1,1,-1`.
    pub fn parse(text: &str) -> Result<Self, QuiverError> {
        let t = text.trim();
        let s: Vec<i64> = if t.chars().all(|c| c == '+' || c == '-') {
            t.chars().map(|c| if c == '+' { 1 } else { -1 }).collect()
        } else {
            t.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| QuiverError::BadParity(text.to_string())))
                .collect::<Result<_, _>>()?
        };
        Self::new(s)
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    fn at(&self, i: usize) -> i64 {
        self.s[i % self.s.len()]
    }

    /// Vertex `i` uses `s_i` and `s_{i+1}`; it is odd iff they differ.
    pub fn parity(&self, i: usize) -> Parity {
        if self.at(i) == -self.at(i + 1) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// `(α_i:α_j) = (s_i+s_{i+1})δ_ij − s_i δ_{i,j+1} − s_j δ_{i+1,j}` on `Z/(m+n)`.
    pub fn bilinear(&self, i: usize, j: usize) -> i64 {
        let n = self.len();
        let d = |x: usize, y: usize| if x % n == y % n { 1 } else { 0 };
        (self.at(i) + self.at(i + 1)) * d(i, j) - self.at(i) * d(i, j + 1) - self.at(j) * d(i + 1, j)
    }

    pub fn cartan(&self) -> CartanData {
        let n = self.len();
        let a = (0..n).map(|i| (0..n).map(|j| self.bilinear(i, j)).collect()).collect();
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            let j = (i + 1) % n;
            m[i][j] = -self.at(i + 1);
            m[j][i] = self.at(i + 1);
        }
        CartanData { a, m }
    }
}

/// A quiver together with its weights and Cartan data; the unit the kernels consume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverWithWeights {
    pub name: String,
    pub quiver: Quiver,
    pub weights: WeightFunction,
    pub cartan: CartanData,
    pub parity_sequence: Option<ParitySequence>,
}

impl QuiverWithWeights {
    pub fn new(name: &str, quiver: Quiver, weights: WeightFunction) -> Self {
        let cartan = CartanData::from_quiver(&quiver);
        QuiverWithWeights { name: name.to_string(), quiver, weights, cartan, parity_sequence: None }
    }

    pub fn rank(&self) -> usize {
        self.quiver.len()
    }

    pub fn is_super(&self) -> bool {
        self.parity_sequence.is_some()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.quiver.parity[i]
    }

    pub fn weight(&self, h: usize) -> Weight {
        self.weights.get(h)
    }
}

/// Non-negative slot counts per vertex, aligned with the vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimensionVector(pub Vec<u32>);

impl DimensionVector {
    pub fn zero(n: usize) -> Self {
        DimensionVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        Self::multiple(n, i, 1)
    }

    pub fn multiple(n: usize, i: usize, k: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = k;
        DimensionVector(v)
    }

    pub fn parse(text: &str, n: usize) -> Result<Self, QuiverError> {
        let parts: Result<Vec<u32>, _> = text.split(',').map(|x| x.trim().parse::<u32>()).collect();
        match parts {
            Ok(v) if v.len() == n => Ok(DimensionVector(v)),
            _ => Err(QuiverError::BadDimension(text.to_string())),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn add(&self, other: &Self) -> Self {
        DimensionVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `Q̄`: every arrow `h` gets a reversed partner `h'`.
pub fn double_quiver(q: &Quiver) -> Quiver {
    let mut out = Quiver { vertices: q.vertices.clone(), arrows: Vec::new(), pairs: Vec::new(), parity: q.parity.clone() };
    let base: Vec<&Arrow> = q.base_arrows().into_iter().map(|h| &q.arrows[h]).collect();
    for ar in &base {
        out.arrows.push((*ar).clone());
    }
    for (k, ar) in base.iter().enumerate() {
        out.arrows.push(Arrow { id: format!("{}'", ar.id), source: ar.target, target: ar.source });
        out.pairs.push((k, base.len() + k));
    }
    out
}

/// Double quiver with normal weights `{q^{2+a_ij}, ..., q^{-a_ij}}` on the arrows
/// `i -> j` (`i < j`) of `Q_1`, `q_{h'} = q^2/q_h`, `t_h = t`, `t_{h'} = t^{-1}`.
pub fn with_normal_weights(name: &str, q: &Quiver) -> Result<QuiverWithWeights, QuiverError> {
    let dq = double_quiver(q);
    let mut weights = vec![Weight::default(); dq.arrows.len()];
    let mut total: BTreeMap<(usize, usize), i32> = BTreeMap::new();
    for &(h, _) in &dq.pairs {
        let ar = &dq.arrows[h];
        if ar.source >= ar.target {
            return Err(QuiverError::BadPair(format!(
                "arrow `{}` must go from a smaller to a larger vertex for normal weights",
                ar.id
            )));
        }
        *total.entry((ar.source, ar.target)).or_insert(0) += 1;
    }
    let mut seen: BTreeMap<(usize, usize), i32> = BTreeMap::new();
    for &(h, hp) in &dq.pairs {
        let key = (dq.arrows[h].source, dq.arrows[h].target);
        let a = -total[&key];
        let k = seen.entry(key).or_insert(0);
        let e = 2 + a + 2 * *k;
        weights[h] = Weight::new(e, 1);
        weights[hp] = Weight::new(2 - e, -1);
        *k += 1;
    }
    Ok(QuiverWithWeights::new(name, dq, WeightFunction(weights)))
}

/// `Q̃`: the double quiver plus a loop `ω_i` per vertex with `q_ω = q^-2`, `t_ω = 1`.
pub fn triple_quiver(qw: &QuiverWithWeights) -> QuiverWithWeights {
    let mut out = qw.clone();
    if !out.quiver.is_double() {
        out.quiver = double_quiver(&qw.quiver);
        let n0 = qw.quiver.arrows.len();
        let mut w = qw.weights.0.clone();
        for h in 0..n0 {
            let wh = qw.weights.get(h);
            w.push(Weight::new(2 - wh.q_exp, -wh.t_exp));
        }
        out.weights = WeightFunction(w);
    }
    for i in 0..out.quiver.len() {
        out.quiver.arrows.push(Arrow { id: format!("w{}", out.quiver.vertices[i]), source: i, target: i });
        out.weights.0.push(Weight::new(-2, 0));
    }
    out.name = format!("triple:{}", qw.name);
    out
}

/// The cyclic super quiver of a parity sequence and its standard weights.
pub fn build_super_quiver(p: &ParitySequence) -> QuiverWithWeights {
    let n = p.len();
    let vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    let mut weights = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        let s_next = p.at(i + 1) as i32;
        arrows.push(Arrow { id: format!("x{}", i), source: i, target: j });
        weights.push(Weight::new(s_next, -s_next));
        arrows.push(Arrow { id: format!("y{}", i), source: j, target: i });
        weights.push(Weight::new(s_next, s_next));
        pairs.push((arrows.len() - 2, arrows.len() - 1));
    }
    for i in 0..n {
        if p.parity(i) == Parity::Even {
            arrows.push(Arrow { id: format!("w{}", i), source: i, target: i });
            weights.push(Weight::new(-2 * p.at(i) as i32, 0));
        }
    }
    let quiver = Quiver { vertices, arrows, pairs, parity: (0..n).map(|i| p.parity(i)).collect() };
    let name = format!("super:{}|{}:{}", p.m, p.n, p.s.iter().map(|&x| if x == 1 { '+' } else { '-' }).collect::<String>());
    QuiverWithWeights {
        name,
        quiver,
        weights: WeightFunction(weights),
        cartan: p.cartan(),
        parity_sequence: Some(p.clone()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightFlags {
    pub homogeneous: bool,
    pub normal: bool,
}

/// Homogeneity (`q_h q_{h'} = q^2`, `t_h t_{h'} = 1`) and normality of a double quiver's weights.
/// Unpaired loops of weight `q^-2` (the `ω_i` of a triple quiver) are ignored.
pub fn validate_weight_function(q: &Quiver, wf: &WeightFunction) -> Result<WeightFlags, QuiverError> {
    if wf.0.len() != q.arrows.len() {
        return Err(QuiverError::Parse("weight count differs from arrow count".into()));
    }
    for (h, ar) in q.arrows.iter().enumerate() {
        if q.partner(h).is_none() && !(ar.is_loop() && wf.get(h) == Weight::new(-2, 0)) {
            return Err(QuiverError::Unpaired(ar.id.clone()));
        }
    }
    let homogeneous = q.pairs.iter().all(|&(h, hp)| {
        let (a, b) = (wf.get(h), wf.get(hp));
        a.q_exp + b.q_exp == 2 && a.t_exp + b.t_exp == 0
    });
    let mut normal = homogeneous;
    let mut by_pair: BTreeMap<(usize, usize), Vec<i32>> = BTreeMap::new();
    for &(h, _) in &q.pairs {
        let ar = &q.arrows[h];
        if ar.source >= ar.target {
            normal = false;
        }
        let key = (ar.source.min(ar.target), ar.source.max(ar.target));
        by_pair.entry(key).or_default().push(wf.get(h).q_exp);
    }
    for (_, mut exps) in by_pair {
        exps.sort();
        let a = -(exps.len() as i32);
        let want: Vec<i32> = (0..exps.len() as i32).map(|k| 2 + a + 2 * k).collect();
        if exps != want {
            normal = false;
        }
    }
    Ok(WeightFlags { homogeneous, normal })
}

fn a_quiver(n: usize) -> Quiver {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let arrows: Vec<(String, usize, usize)> = (0..n.saturating_sub(1)).map(|i| (format!("h{}", i + 1), i, i + 1)).collect();
    let arefs: Vec<(&str, usize, usize)> = arrows.iter().map(|(id, s, t)| (id.as_str(), *s, *t)).collect();
    Quiver::new(&refs, &arefs)
}

pub fn kronecker_quiver() -> Quiver {
    Quiver::new(&["1", "2"], &[("h1", 0, 1), ("h2", 0, 1)])
}

/// Builtin library: `a1`, `a2`, `a3`, `kronecker`, `triple:<name>`, `super:m|n:<pattern>`.
pub fn builtin(name: &str) -> Result<QuiverWithWeights, QuiverError> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("triple:") {
        return Ok(triple_quiver(&builtin(rest)?));
    }
    if let Some(rest) = name.strip_prefix("super:") {
        let (mn, pattern) = rest.split_once(':').ok_or_else(|| QuiverError::UnknownBuiltin(name.to_string()))?;
        let p = ParitySequence::parse(pattern)?;
        let (m, n) = mn.split_once('|').ok_or_else(|| QuiverError::UnknownBuiltin(name.to_string()))?;
        let (m, n): (usize, usize) = (
            m.parse().map_err(|_| QuiverError::UnknownBuiltin(name.to_string()))?,
            n.parse().map_err(|_| QuiverError::UnknownBuiltin(name.to_string()))?,
        );
        if (m, n) != (p.m, p.n) {
            return Err(QuiverError::BadParity(format!("pattern `{}` is not of type ({},{})", pattern, m, n)));
        }
        return Ok(build_super_quiver(&p));
    }
    let q = match name {
        "a1" => a_quiver(1),
        "a2" => a_quiver(2),
        "a3" => a_quiver(3),
        "kronecker" => kronecker_quiver(),
        _ => return Err(QuiverError::UnknownBuiltin(name.to_string())),
    };
    with_normal_weights(name, &q)
}

pub const BUILTINS: &[&str] = &[
    "a1",
    "a2",
    "a3",
    "kronecker",
    "triple:a1",
    "triple:a2",
    "triple:a3",
    "triple:kronecker",
    "super:2|1:++-",
    "super:2|2:++--",
];

#[derive(Deserialize)]
#[serde(untagged)]
enum IdValue {
    Str(String),
    Int(i64),
}

impl IdValue {
    fn into_string(self) -> String {
        match self {
            IdValue::Str(s) => s,
            IdValue::Int(i) => i.to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowSpec {
    id: IdValue,
    src: IdValue,
    tgt: IdValue,
    #[serde(default)]
    q_exp: i32,
    #[serde(default)]
    t_exp: i32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverSpec {
    vertices: Vec<IdValue>,
    #[serde(default)]
    arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pairs: Vec<(IdValue, IdValue)>,
    #[serde(default)]
    parity: HashMap<String, u8>,
}

#[derive(Deserialize)]
struct SuperSpec {
    s: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum QuiverFile {
    Super { #[serde(rename = "super")] sup: SuperSpec },
    Plain(QuiverSpec),
}

/// Parses the JSON quiver format (or the `{"super":{"s":[...]}}` shorthand).
pub fn parse_quiver_json(text: &str) -> Result<QuiverWithWeights, QuiverError> {
    let file: QuiverFile = serde_json::from_str(text).map_err(|e| QuiverError::Parse(e.to_string()))?;
    let spec = match file {
        QuiverFile::Super { sup } => return Ok(build_super_quiver(&ParitySequence::new(sup.s)?)),
        QuiverFile::Plain(spec) => spec,
    };
    let vertices: Vec<String> = spec.vertices.into_iter().map(IdValue::into_string).collect();
    for (k, v) in vertices.iter().enumerate() {
        if vertices[..k].contains(v) {
            return Err(QuiverError::Duplicate(v.clone()));
        }
    }
    let index = |id: &str| vertices.iter().position(|v| v == id).ok_or_else(|| QuiverError::UnknownVertex(id.to_string()));
    let mut arrows = Vec::new();
    let mut weights = Vec::new();
    for a in spec.arrows {
        let id = a.id.into_string();
        if arrows.iter().any(|x: &Arrow| x.id == id) {
            return Err(QuiverError::Duplicate(id));
        }
        let source = index(&a.src.into_string())?;
        let target = index(&a.tgt.into_string())?;
        arrows.push(Arrow { id, source, target });
        weights.push(Weight::new(a.q_exp, a.t_exp));
    }
    let arrow_index = |id: &str| arrows.iter().position(|x| x.id == id).ok_or_else(|| QuiverError::UnknownArrow(id.to_string()));
    let mut pairs = Vec::new();
    let mut used = vec![false; arrows.len()];
    for (h, hp) in spec.pairs {
        let (h, hp) = (arrow_index(&h.into_string())?, arrow_index(&hp.into_string())?);
        if used[h] || used[hp] || h == hp {
            return Err(QuiverError::BadPair(format!("arrow `{}` paired twice", arrows[h].id)));
        }
        if arrows[h].source != arrows[hp].target || arrows[h].target != arrows[hp].source {
            return Err(QuiverError::BadPair(format!("`{}'` does not reverse `{}`", arrows[hp].id, arrows[h].id)));
        }
        used[h] = true;
        used[hp] = true;
        pairs.push((h, hp));
    }
    let mut parity = vec![Parity::Even; vertices.len()];
    for (v, p) in spec.parity {
        let i = index(&v)?;
        parity[i] = match p {
            0 => Parity::Even,
            1 => Parity::Odd,
            _ => return Err(QuiverError::Parse(format!("parity of `{}` must be 0 or 1", v))),
        };
    }
    let quiver = Quiver { vertices, arrows, pairs, parity };
    Ok(QuiverWithWeights::new("file", quiver, WeightFunction(weights)))
}
