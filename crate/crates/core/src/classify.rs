//! Recognition of the five poset families whose Hibi rings have class group `Z²`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{unimodular_inverse, Matrix};
use crate::poset::PosetHat;
use crate::weight::{multiset, Weight};
use crate::Int;

/// A family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type")]
pub enum Family {
    I { m: usize, n: usize },
    II { l: usize, m: usize, n: usize },
    III { l: usize, m: usize, n: usize },
    IV { m: usize, n: usize },
    V { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parameters out of range for type {0}")]
pub struct ParamError(pub String);

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::I { .. } => "I",
            Family::II { .. } => "II",
            Family::III { .. } => "III",
            Family::IV { .. } => "IV",
            Family::V { .. } => "V",
        }
    }

    /// Checks the ranges `m ≥ 0, n ≥ 1` (I), `m ≥ 1` (II), `m ≥ 2` (III),
    /// `m, n ≥ 1` (IV); type V accepts every `n`.
    pub fn validate(&self) -> Result<(), ParamError> {
        let ok = match *self {
            Family::I { n, .. } => n >= 1,
            Family::II { m, .. } => m >= 1,
            Family::III { m, .. } => m >= 2,
            Family::IV { m, n } => m >= 1 && n >= 1,
            Family::V { .. } => true,
        };
        if ok {
            Ok(())
        } else {
            Err(ParamError(self.to_string()))
        }
    }

    /// Builds a family member from a tag and a parameter list in the order
    /// `(m, n)`, `(l, m, n)` or `(n)`.
    pub fn from_tag(tag: &str, params: &[usize]) -> Result<Family, ParamError> {
        let f = match (tag, params) {
            ("I", &[m, n]) => Family::I { m, n },
            ("II", &[l, m, n]) => Family::II { l, m, n },
            ("III", &[l, m, n]) => Family::III { l, m, n },
            ("IV", &[m, n]) => Family::IV { m, n },
            ("V", &[n]) => Family::V { n },
            _ => return Err(ParamError(format!("{tag} with {params:?}"))),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            Family::I { m, n } | Family::IV { m, n } => vec![m, n],
            Family::II { l, m, n } | Family::III { l, m, n } => vec![l, m, n],
            Family::V { n } => vec![n],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::I { m, n } => write!(f, "I(m={m},n={n})"),
            Family::II { l, m, n } => write!(f, "II(l={l},m={m},n={n})"),
            Family::III { l, m, n } => write!(f, "III(l={l},m={m},n={n})"),
            Family::IV { m, n } => write!(f, "IV(m={m},n={n})"),
            Family::V { n } => write!(f, "V(n={n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    AsGiven,
    Flipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TypeParams {
    pub family: Family,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Rejection {
    #[error("Hasse graph is disconnected")]
    Disconnected,
    #[error("class group rank is {rank}, not 2")]
    Rank { rank: usize },
    #[error("vertex {vertex} has degree 1")]
    Pendant { vertex: String },
    #[error("polynomial extension: edge {edge} lies on every maximal chain")]
    PolynomialExtension { edge: String },
    #[error("poset is not pure, so the Hibi ring is not Gorenstein")]
    NotGorenstein,
    #[error("no matching family")]
    NoMatch,
}

/// A generated family member with the two edges whose classes form the
/// figure's basis `β_a = (1,0)`, `β_b = (0,1)`.
#[derive(Debug, Clone)]
pub struct Generated {
    pub poset: PosetHat,
    pub a: usize,
    pub b: usize,
}

impl Generated {
    /// Spanning tree hint: every edge except `a` and `b`.
    pub fn tree_hint(&self) -> Vec<usize> {
        (0..self.poset.num_edges()).filter(|&k| k != self.a && k != self.b).collect()
    }
}

struct Builder {
    names: Vec<String>,
    covers: Vec<(String, String)>,
}

const LO: &str = "";
const HI: &str = "^";

impl Builder {
    fn new() -> Self {
        Builder { names: Vec::new(), covers: Vec::new() }
    }

    /// Adds a chain `from < p1 < … < p_len < to`, where `""` and `"^"` stand
    /// for `0̂` and `1̂`. Returns the interior names.
    fn chain(&mut self, prefix: &str, from: &str, len: usize, to: &str) -> Vec<String> {
        let inner: Vec<String> = (1..=len).map(|i| format!("{prefix}{i}")).collect();
        self.names.extend(inner.iter().cloned());
        let mut all = vec![from.to_string()];
        all.extend(inner.iter().cloned());
        all.push(to.to_string());
        for w in all.windows(2) {
            if w[0] != LO && w[1] != HI {
                self.covers.push((w[0].clone(), w[1].clone()));
            }
        }
        inner
    }

    fn point(&mut self, name: &str) -> String {
        self.names.push(name.to_string());
        name.to_string()
    }

    fn finish(self) -> PosetHat {
        PosetHat::new(&self.names, &self.covers).expect("generated posets are valid")
    }
}

fn find_edge(p: &PosetHat, lower: &str, upper: &str) -> usize {
    let v = |s: &str| match s {
        LO => p.bottom(),
        HI => p.top(),
        name => p.vertex(name).expect("named vertex exists"),
    };
    p.edge_between(v(lower), v(upper)).expect("edge exists")
}

fn last_or<'a>(xs: &'a [String], default: &'a str) -> &'a str {
    xs.last().map_or(default, String::as_str)
}

fn first_or<'a>(xs: &'a [String], default: &'a str) -> &'a str {
    xs.first().map_or(default, String::as_str)
}

/// Builds the family member; element names follow the drawing's chains.
pub fn generate(f: Family) -> Result<Generated, ParamError> {
    f.validate()?;
    let mut b = Builder::new();
    let (a_edge, b_edge): ((String, String), (String, String));
    match f {
        Family::I { m, n } => {
            let left = b.chain("x", LO, m + n + 1, HI);
            let trunk = b.chain("y", LO, m, "w");
            b.point("w");
            b.chain("u", "w", n, HI);
            let second = b.chain("v", "w", n, HI);
            let _ = trunk;
            a_edge = (LO.into(), first_or(&left, HI).into());
            b_edge = (last_or(&second, "w").into(), HI.into());
        }
        Family::II { l, m, n } => {
            let total = l + m + n + 1;
            let left: Vec<String> = (1..=total).map(|i| format!("x{i}")).collect();
            let right: Vec<String> = (1..=total).map(|i| format!("y{i}")).collect();
            b.chain("x", LO, total, HI);
            b.chain("y", LO, total, HI);
            // Cross chain from rank l+1 on the right to rank l+m+1 on the left.
            let from = right[l].clone();
            let to = left[l + m].clone();
            b.chain("z", &from, m - 1, &to);
            a_edge = (LO.into(), left[0].clone());
            b_edge = (right[total - 1].clone(), HI.into());
        }
        Family::III { l, m, n } => {
            let left = b.chain("x", LO, l + m + n + 1, HI);
            let below = b.chain("y", LO, l, "v");
            let _ = below;
            b.point("v");
            b.point("w");
            b.chain("u", "v", m - 1, "w");
            let second = b.chain("t", "v", m - 1, "w");
            b.chain("z", "w", n, HI);
            a_edge = (LO.into(), left[0].clone());
            b_edge = (last_or(&second, "v").into(), "w".into());
        }
        Family::IV { m, n } => {
            let lower_left = b.chain("x", LO, m, "v");
            b.chain("y", LO, m, "v");
            b.point("v");
            b.chain("u", "v", n, HI);
            let upper_right = b.chain("t", "v", n, HI);
            a_edge = (LO.into(), first_or(&lower_left, "v").into());
            b_edge = (last_or(&upper_right, "v").into(), HI.into());
        }
        Family::V { n } => {
            let c1 = b.chain("x", LO, n + 1, HI);
            let c2 = b.chain("y", LO, n + 1, HI);
            b.chain("z", LO, n + 1, HI);
            a_edge = (LO.into(), c1[0].clone());
            b_edge = (LO.into(), c2[0].clone());
        }
    }
    let poset = b.finish();
    let a = find_edge(&poset, &a_edge.0, &a_edge.1);
    let bb = find_edge(&poset, &b_edge.0, &b_edge.1);
    Ok(Generated { poset, a, b: bb })
}

/// The weight multiset of the family in the basis `β_a, β_b`.
pub fn expected_weight_table(f: Family) -> Vec<(Weight, usize)> {
    let e = |x: Int, y: Int, k: usize| (Weight(vec![x, y]), k);
    let mut t = match f {
        Family::I { m, n } => vec![e(1, 0, m + n + 2), e(0, 1, n + 1), e(-1, 0, m + 1), e(-1, -1, n + 1)],
        Family::II { l, m, n } => vec![
            e(1, 0, l + m + 1),
            e(0, 1, m + n + 1),
            e(-1, 0, l + 1),
            e(0, -1, n + 1),
            e(-1, -1, m),
        ],
        Family::III { l, m, n } => vec![e(1, 0, l + m + n + 2), e(0, 1, m), e(-1, 0, l + n + 2), e(-1, -1, m)],
        Family::IV { m, n } => vec![e(1, 0, m + 1), e(0, 1, n + 1), e(-1, 0, m + 1), e(0, -1, n + 1)],
        Family::V { n } => vec![e(1, 0, n + 2), e(0, 1, n + 2), e(-1, -1, n + 2)],
    };
    t.retain(|(_, k)| *k > 0);
    t.sort();
    t
}

/// Canonical description of the Hasse graph as branches between special
/// vertices (`0̂`, `1̂`, and vertices of degree ≠ 2).
pub fn branch_signature(p: &PosetHat) -> Vec<String> {
    let nv = p.num_vertices();
    let special: Vec<bool> = (0..nv).map(|v| v == p.bottom() || v == p.top() || p.degree(v) != 2).collect();
    let others: Vec<usize> = (0..nv).filter(|&v| special[v] && v != p.bottom() && v != p.top()).collect();
    // Branches as (start, end, step string).
    let mut branches: Vec<(usize, usize, String)> = Vec::new();
    let mut used = vec![false; p.num_edges()];
    for s in (0..nv).filter(|&v| special[v]) {
        for &k0 in p.incident(s) {
            if used[k0] {
                continue;
            }
            let (mut v, mut k) = (s, k0);
            let mut steps = String::new();
            loop {
                used[k] = true;
                let e = p.edge(k);
                steps.push(if e.lower == v { 'U' } else { 'D' });
                v = e.other(v);
                if special[v] {
                    break;
                }
                k = *p.incident(v).iter().find(|&&j| j != k).expect("degree-2 vertex");
            }
            branches.push((s, v, steps));
        }
    }
    let mut best: Option<Vec<String>> = None;
    for perm in permutations(others.len()) {
        let label = |v: usize| -> String {
            if v == p.bottom() {
                "B".into()
            } else if v == p.top() {
                "T".into()
            } else {
                let i = others.iter().position(|&o| o == v).expect("special vertex");
                format!("S{}", perm[i])
            }
        };
        let mut sig: Vec<String> = branches
            .iter()
            .map(|(s, e, steps)| {
                let fwd = format!("{}:{}:{}", label(*s), steps, label(*e));
                let rev_steps: String =
                    steps.chars().rev().map(|c| if c == 'U' { 'D' } else { 'U' }).collect();
                let bwd = format!("{}:{}:{}", label(*e), rev_steps, label(*s));
                fwd.min(bwd)
            })
            .collect();
        sig.sort();
        if best.as_ref().map_or(true, |b| sig < *b) {
            best = Some(sig);
        }
    }
    best.unwrap_or_default()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Candidate parameters read off from ranks of the special vertices.
fn candidates(p: &PosetHat) -> Vec<Family> {
    let ranks = p.ranks();
    let len = ranks[p.top()];
    let interior_special: Vec<usize> =
        (1..p.top()).filter(|&v| p.degree(v) > 2).collect();
    let mut out = Vec::new();
    let sub = |a: usize, b: usize| a.checked_sub(b);
    match interior_special.as_slice() {
        [] => {
            if let Some(n) = sub(len, 2) {
                out.push(Family::V { n });
            }
        }
        [v] => {
            let r = ranks[*v];
            if let (Some(m), Some(n)) = (sub(r, 1), sub(len, r + 1)) {
                out.push(Family::IV { m, n });
                out.push(Family::I { m, n });
            }
        }
        [x, y] => {
            let (v, w) = if p.up_edges(*x).len() == 2 { (*x, *y) } else { (*y, *x) };
            if let (Some(l), Some(m), Some(n)) = (sub(ranks[v], 1), sub(ranks[w], ranks[v]), sub(len, ranks[w] + 1)) {
                out.push(Family::II { l, m, n });
                out.push(Family::III { l, m, n });
            }
        }
        _ => {}
    }
    out.retain(|f| f.validate().is_ok());
    out
}

/// Matches a poset to one of the families, trying the order dual second.
pub fn classify(p: &PosetHat) -> Result<TypeParams, Rejection> {
    if !p.is_connected() {
        return Err(Rejection::Disconnected);
    }
    let nv = p.num_vertices();
    let ne = p.num_edges();
    if ne + 1 != nv + 2 {
        return Err(Rejection::Rank { rank: (ne + 1).saturating_sub(nv) });
    }
    if let Some(e) = p.polynomial_extension_edge() {
        return Err(Rejection::PolynomialExtension { edge: PosetHat::edge_label(e) });
    }
    if let Some(v) = (0..nv).find(|&v| p.degree(v) < 2) {
        return Err(Rejection::Pendant { vertex: p.name(v).to_string() });
    }
    if !p.is_pure() {
        return Err(Rejection::NotGorenstein);
    }
    let flipped = p.flip();
    for (q, orientation) in [(p, Orientation::AsGiven), (&flipped, Orientation::Flipped)] {
        let sig = branch_signature(q);
        for family in candidates(q) {
            let g = generate(family).expect("candidate parameters validated");
            if branch_signature(&g.poset) == sig {
                return Ok(TypeParams { family, orientation });
            }
        }
    }
    Err(Rejection::NoMatch)
}

/// A unimodular `g` with `g · actual = expected` as multisets, if one exists.
/// The search fixes two independent actual weights and tries every pair of
/// expected values as their images.
pub fn find_unimodular_match(actual: &[Weight], expected: &[Weight]) -> Option<Matrix<Int>> {
    if actual.len() != expected.len() || actual.iter().any(|w| w.rank() != 2) {
        return None;
    }
    let want = multiset(expected);
    let distinct: Vec<Weight> = multiset(actual).into_iter().map(|(w, _)| w).collect();
    let (u1, u2) = distinct.iter().enumerate().find_map(|(i, a)| {
        distinct[i + 1..].iter().find_map(|b| {
            let det = a.0[0] * b.0[1] - a.0[1] * b.0[0];
            (det != 0).then(|| (a.clone(), b.clone()))
        })
    })?;
    let source = Matrix::from_rows(vec![vec![u1.0[0], u2.0[0]], vec![u1.0[1], u2.0[1]]], 2);
    let det = u1.0[0] * u2.0[1] - u1.0[1] * u2.0[0];
    let targets: Vec<Weight> = want.iter().map(|(w, _)| w.clone()).collect();
    for e1 in &targets {
        for e2 in &targets {
            // g = E · S⁻¹ must be integral; S⁻¹ = adj(S) / det.
            let img = Matrix::from_rows(vec![vec![e1.0[0], e2.0[0]], vec![e1.0[1], e2.0[1]]], 2);
            let adj = Matrix::from_rows(
                vec![vec![*source.get(1, 1), -*source.get(0, 1)], vec![-*source.get(1, 0), *source.get(0, 0)]],
                2,
            );
            let scaled = img.mul(&adj);
            if scaled.to_rows().iter().flatten().any(|x| x % det != 0) {
                continue;
            }
            let g = Matrix::from_rows(
                scaled.to_rows().into_iter().map(|r| r.into_iter().map(|x| x / det).collect()).collect(),
                2,
            );
            if unimodular_inverse(&g).is_none() {
                continue;
            }
            let mapped: Vec<Weight> = actual.iter().map(|w| Weight(g.mul_vec(w.coords()))).collect();
            if multiset(&mapped) == want {
                return Some(g);
            }
        }
    }
    None
}

/// Expands a (value, multiplicity) table into a flat weight list.
pub fn expand(table: &[(Weight, usize)]) -> Vec<Weight> {
    table.iter().flat_map(|(w, k)| std::iter::repeat(w.clone()).take(*k)).collect()
}
