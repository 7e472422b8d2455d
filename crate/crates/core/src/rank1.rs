//! Gorenstein toric rings with class group `Z`: the β-invariant, windows of
//! consecutive classes, extremal mutations and the exchange graph.

use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::weight::Weight;
use crate::Int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Rank1Error {
    #[error("weights must be rank one")]
    NotRankOne,
    #[error("zero weight")]
    ZeroWeight,
    #[error("need at least two positive and two negative weights")]
    TooFewSigns,
    #[error("weights have common divisor {0}")]
    NotPrimitive(Int),
    #[error("weights sum to {0}, not 0 (not Gorenstein)")]
    NotGorenstein(Int),
    #[error("extremal mutations need exactly four weights, got {0}")]
    WrongDimension(usize),
    #[error("window has {got} classes, expected {want}")]
    WrongSize { got: usize, want: usize },
    #[error("exchange-graph edges need exactly four weights; vertices only")]
    EdgesUnsupported { vertices: Vec<Window> },
}

/// Validated rank-one weight system, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rank1Weights {
    pub weights: Vec<Int>,
    /// Number of negative weights.
    pub s: usize,
}

impl Rank1Weights {
    pub fn new(mut weights: Vec<Int>) -> Result<Self, Rank1Error> {
        if weights.contains(&0) {
            return Err(Rank1Error::ZeroWeight);
        }
        weights.sort_unstable();
        let s = weights.iter().filter(|&&x| x < 0).count();
        if s < 2 || weights.len() - s < 2 {
            return Err(Rank1Error::TooFewSigns);
        }
        let g = weights.iter().fold(0, |acc: Int, x| acc.gcd(x));
        if g != 1 {
            return Err(Rank1Error::NotPrimitive(g));
        }
        let sum: Int = weights.iter().sum();
        if sum != 0 {
            return Err(Rank1Error::NotGorenstein(sum));
        }
        Ok(Rank1Weights { weights, s })
    }

    pub fn from_class_weights(ws: &[Weight]) -> Result<Self, Rank1Error> {
        if ws.iter().any(|w| w.rank() != 1) {
            return Err(Rank1Error::NotRankOne);
        }
        Self::new(ws.iter().map(|w| w.coords()[0]).collect())
    }

    pub fn negatives(&self) -> &[Int] {
        &self.weights[..self.s]
    }

    pub fn positives(&self) -> &[Int] {
        &self.weights[self.s..]
    }

    pub fn as_weights(&self) -> Vec<Weight> {
        self.weights.iter().map(|&x| Weight(vec![x])).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BetaReport {
    pub beta: Int,
    /// Closed MCM interval `[−β+1, β−1]`.
    pub mcm_lo: Int,
    pub mcm_hi: Int,
}

pub fn beta_invariant(w: &Rank1Weights) -> BetaReport {
    let beta = -w.negatives().iter().sum::<Int>();
    BetaReport { beta, mcm_lo: 1 - beta, mcm_hi: beta - 1 }
}

/// Consecutive divisor classes `{lo, …, lo+size−1}` (classes of `T(a)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Window {
    pub lo: Int,
    pub size: usize,
}

impl Window {
    pub fn hi(&self) -> Int {
        self.lo + self.size as Int - 1
    }

    pub fn classes(&self) -> Vec<Int> {
        (self.lo..=self.hi()).collect()
    }

    pub fn contains(&self, a: Int) -> bool {
        self.lo <= a && a <= self.hi()
    }

    /// Characters `χ = −a` of the summands `T(a) = M_{−a}`.
    pub fn characters(&self) -> Vec<Weight> {
        self.classes().into_iter().map(|a| Weight(vec![-a])).collect()
    }
}

/// `{0, …, β−1}`; every translate of it gives a splitting NCCR and nothing
/// else basic does.
pub fn base_window(w: &Rank1Weights) -> Window {
    Window { lo: 0, size: beta_invariant(w).beta as usize }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum End {
    Low,
    High,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mutation {
    pub from: Window,
    pub end: End,
    /// The class being replaced.
    pub removed: Int,
    pub window: Window,
    /// Class of the kernel of the approximation (the new summand).
    pub kernel: Int,
    /// Classes of the two middle terms, ascending.
    pub middle: [Int; 2],
}

/// Replaces the lowest (or highest) class of the window.
pub fn mutate_window(win: Window, end: End, w: &Rank1Weights) -> Result<Mutation, Rank1Error> {
    if w.weights.len() != 4 {
        return Err(Rank1Error::WrongDimension(w.weights.len()));
    }
    let beta = beta_invariant(w).beta;
    if win.size as Int != beta {
        return Err(Rank1Error::WrongSize { got: win.size, want: beta as usize });
    }
    let m = match end {
        End::Low => {
            let c = win.lo;
            let (n1, n2) = (-w.negatives()[0], -w.negatives()[1]);
            Mutation {
                from: win,
                end,
                removed: c,
                window: Window { lo: c + 1, size: win.size },
                kernel: c + beta,
                middle: sorted([c + n1, c + n2]),
            }
        }
        End::High => {
            let h = win.hi();
            let (p1, p2) = (w.positives()[0], w.positives()[1]);
            Mutation {
                from: win,
                end,
                removed: h,
                window: Window { lo: win.lo - 1, size: win.size },
                kernel: h - beta,
                middle: sorted([h - p1, h - p2]),
            }
        }
    };
    debug_assert!(m.window.contains(m.kernel) && m.middle.iter().all(|&x| m.window.contains(x)));
    Ok(m)
}

fn sorted(mut a: [Int; 2]) -> [Int; 2] {
    a.sort_unstable();
    a
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeEdge {
    pub a: usize,
    pub b: usize,
    /// The class exchanged (removed from `a`, replaced by `b`'s new class).
    pub class: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeGraph {
    pub vertices: Vec<Window>,
    pub edges: Vec<ExchangeEdge>,
    pub generators_only: bool,
}

/// Windows containing class 0 (`generators_only`) or all windows with
/// `|lo| ≤ radius`, joined by extremal mutations.
pub fn exchange_graph(w: &Rank1Weights, generators_only: bool, radius: Int) -> Result<ExchangeGraph, Rank1Error> {
    let beta = beta_invariant(w).beta;
    let vertices: Vec<Window> = if generators_only {
        // M(a) = T(−a) ⊕ … ⊕ T(−a+β−1), a = 0..β−1.
        (0..beta).map(|a| Window { lo: -a, size: beta as usize }).collect()
    } else {
        (-radius..=radius).map(|lo| Window { lo, size: beta as usize }).collect()
    };
    if w.weights.len() != 4 {
        return Err(Rank1Error::EdgesUnsupported { vertices });
    }
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        let m = mutate_window(*v, End::Low, w)?;
        if let Some(j) = vertices.iter().position(|u| *u == m.window) {
            edges.push(ExchangeEdge { a: i, b: j, class: m.removed });
        }
    }
    Ok(ExchangeGraph { vertices, edges, generators_only })
}

impl ExchangeGraph {
    fn label(&self, i: usize) -> String {
        let v = self.vertices[i];
        if self.generators_only {
            format!("M({})", -v.lo)
        } else {
            format!("T[{}..{}]", v.lo, v.hi())
        }
    }

    /// True when the graph is a simple path through every vertex.
    pub fn is_path(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 || self.edges.len() != n - 1 {
            return false;
        }
        let mut deg = vec![0usize; n];
        for e in &self.edges {
            if e.a == e.b {
                return false;
            }
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        // A tree with maximum degree 2 is a path; connectivity follows from
        // n−1 edges and no cycle, checked by union-find.
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut v: usize) -> usize {
            while p[v] != v {
                v = p[v];
            }
            v
        }
        for e in &self.edges {
            let (x, y) = (root(&mut parent, e.a), root(&mut parent, e.b));
            if x == y {
                return false;
            }
            parent[x] = y;
        }
        deg.iter().all(|&d| d <= 2)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from(if self.generators_only { "graph EG0 {\n" } else { "graph EG {\n" });
        for (i, v) in self.vertices.iter().enumerate() {
            let classes: Vec<String> = v.classes().iter().map(|a| format!("T({a})")).collect();
            let _ = writeln!(out, "  \"{}\" [tooltip=\"{}\"];", self.label(i), classes.join(" + "));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  \"{}\" -- \"{}\" [label=\"T({})\"];", self.label(e.a), self.label(e.b), e.class);
        }
        out.push_str("}\n");
        out
    }
}

/// Weights of the Segre product of two chains: `1` and `−1`, each `m+1` times.
pub fn segre_weights(m: usize) -> Rank1Weights {
    let mut w = vec![1; m + 1];
    w.extend(std::iter::repeat(-1).take(m + 1));
    Rank1Weights::new(w).expect("Segre weights are valid for every m ≥ 1")
}
