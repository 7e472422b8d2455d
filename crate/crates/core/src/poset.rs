//! Finite posets with adjoined minimum and maximum, and their Hasse graphs.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Display name of the adjoined minimum.
pub const BOTTOM: &str = "0̂";
/// Display name of the adjoined maximum.
pub const TOP: &str = "1̂";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown element `{name}`")]
    UnknownElement { line: usize, name: String },
    #[error("element `{0}` declared twice")]
    DuplicateElement(String),
    #[error("element name `{0}` is reserved or malformed")]
    BadName(String),
    #[error("cover `{0} < {0}` relates an element to itself")]
    SelfCover(String),
    #[error("cover `{0} < {1}` declared twice")]
    DuplicateCover(String, String),
    #[error("cover relation has a cycle through `{0}`")]
    Cycle(String),
    #[error("cover `{0} < {1}` is implied by transitivity")]
    RedundantCover(String, String),
    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),
}

/// A Hasse edge `lower ≺ upper`, as vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub lower: usize,
    pub upper: usize,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if self.lower == v {
            self.upper
        } else {
            self.lower
        }
    }
}

/// `P ∪ {0̂, 1̂}` with its Hasse graph.
///
/// Vertex `0` is `0̂`, the last vertex is `1̂`, and interior elements sit in
/// between in natural sort order. Edge indices are fixed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetHat {
    names: Vec<String>,
    edges: Vec<Edge>,
    /// Interior covers in declaration order, as (lower, upper) vertex ids.
    covers: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PurityReport {
    pub pure: bool,
    pub chain_length: Option<usize>,
}

/// A chordless cycle of the Hasse graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    /// Vertices in cyclic order, starting at the smallest index.
    pub vertex_cycle: Vec<usize>,
    /// `edges[k]` joins `vertex_cycle[k]` and `vertex_cycle[k + 1]` (cyclically).
    pub edges: Vec<usize>,
    /// Edges traversed upward, sorted.
    pub x_plus: Vec<usize>,
    /// Edges traversed downward, sorted.
    pub x_minus: Vec<usize>,
}

impl Circuit {
    /// The cotree edges among `x_plus` and `x_minus`.
    pub fn z_split(&self, tree: &TreeSelection) -> (Vec<usize>, Vec<usize>) {
        let co: BTreeSet<usize> = tree.cotree_edges.iter().copied().collect();
        let pick = |xs: &[usize]| xs.iter().copied().filter(|e| co.contains(e)).collect();
        (pick(&self.x_plus), pick(&self.x_minus))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeSelection {
    /// Sorted edge ids of the spanning tree.
    pub tree_edges: Vec<usize>,
    /// Sorted edge ids outside the tree; these index class-group coordinates.
    pub cotree_edges: Vec<usize>,
}

/// Compares strings so that embedded digit runs sort numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut ai, mut bi) = (a.char_indices().peekable(), b.char_indices().peekable());
    loop {
        match (ai.peek().copied(), bi.peek().copied()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((i, ca)), Some((j, cb))) => {
                if ca.is_ascii_digit() && cb.is_ascii_digit() {
                    let ea = a[i..].find(|c: char| !c.is_ascii_digit()).map_or(a.len(), |k| i + k);
                    let eb = b[j..].find(|c: char| !c.is_ascii_digit()).map_or(b.len(), |k| j + k);
                    let (da, db) = (a[i..ea].trim_start_matches('0'), b[j..eb].trim_start_matches('0'));
                    let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                    while ai.peek().is_some_and(|&(k, _)| k < ea) {
                        ai.next();
                    }
                    while bi.peek().is_some_and(|&(k, _)| k < eb) {
                        bi.next();
                    }
                } else {
                    if ca != cb {
                        return ca.cmp(&cb);
                    }
                    ai.next();
                    bi.next();
                }
            }
        }
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != BOTTOM
        && name != TOP
        && !name.chars().any(|c| c.is_whitespace() || matches!(c, '<' | '#' | ':' | ','))
}

impl PosetHat {
    /// Builds `P̂` from interior element names and cover pairs `(lower, upper)`.
    ///
    /// Edges are numbered by walking the covers in order: for `x < y`, first
    /// `0̂–x` if `x` is minimal and not yet joined, then `x–y`, then `y–1̂` if
    /// `y` is maximal and not yet joined. Isolated elements come last.
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self, PosetError> {
        Self::build(
            elements.iter().map(|s| s.as_ref().to_string()).collect(),
            covers
                .iter()
                .map(|(a, b)| (0, a.as_ref().to_string(), b.as_ref().to_string()))
                .collect(),
        )
    }

    fn build(elements: Vec<String>, covers: Vec<(usize, String, String)>) -> Result<Self, PosetError> {
        let mut interior = elements;
        for name in &interior {
            if !valid_name(name) {
                return Err(PosetError::BadName(name.clone()));
            }
        }
        interior.sort_by(|a, b| natural_cmp(a, b));
        for w in interior.windows(2) {
            if w[0] == w[1] {
                return Err(PosetError::DuplicateElement(w[0].clone()));
            }
        }
        let mut names = Vec::with_capacity(interior.len() + 2);
        names.push(BOTTOM.to_string());
        names.extend(interior);
        names.push(TOP.to_string());
        let top = names.len() - 1;
        let index: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();

        let mut cover_ids = Vec::with_capacity(covers.len());
        let mut seen = BTreeSet::new();
        for (line, a, b) in &covers {
            let lookup = |n: &String| {
                index
                    .get(n.as_str())
                    .copied()
                    .filter(|&i| i != 0 && i != top)
                    .ok_or_else(|| PosetError::UnknownElement { line: *line, name: n.clone() })
            };
            let (x, y) = (lookup(a)?, lookup(b)?);
            if x == y {
                return Err(PosetError::SelfCover(a.clone()));
            }
            if !seen.insert((x, y)) {
                return Err(PosetError::DuplicateCover(a.clone(), b.clone()));
            }
            cover_ids.push((x, y));
        }

        let nv = names.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); nv];
        let mut has_down = vec![false; nv];
        for &(x, y) in &cover_ids {
            up[x].push(y);
            has_down[y] = true;
        }
        // Acyclicity by Kahn's algorithm on the interior covers.
        let mut indeg = vec![0usize; nv];
        for &(_, y) in &cover_ids {
            indeg[y] += 1;
        }
        let mut queue: VecDeque<usize> = (1..top).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(v) = queue.pop_front() {
            done += 1;
            for &w in &up[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if done != top - 1 {
            let v = (1..top).find(|&v| indeg[v] > 0).expect("cycle vertex");
            return Err(PosetError::Cycle(names[v].clone()));
        }
        // Hasse condition: y must not be reachable from x through another child.
        for &(x, y) in &cover_ids {
            let mut stack: Vec<usize> = up[x].iter().copied().filter(|&c| c != y).collect();
            let mut visited = vec![false; nv];
            while let Some(v) = stack.pop() {
                if v == y {
                    return Err(PosetError::RedundantCover(names[x].clone(), names[y].clone()));
                }
                if !std::mem::replace(&mut visited[v], true) {
                    stack.extend(up[v].iter().copied());
                }
            }
        }

        let mut edges = Vec::new();
        let mut joined_bottom = vec![false; nv];
        let mut joined_top = vec![false; nv];
        for &(x, y) in &cover_ids {
            if !has_down[x] && !joined_bottom[x] {
                joined_bottom[x] = true;
                edges.push(Edge { lower: 0, upper: x });
            }
            edges.push(Edge { lower: x, upper: y });
            if up[y].is_empty() && !joined_top[y] {
                joined_top[y] = true;
                edges.push(Edge { lower: y, upper: top });
            }
        }
        for v in 1..top {
            if !has_down[v] && up[v].is_empty() {
                edges.push(Edge { lower: 0, upper: v });
                edges.push(Edge { lower: v, upper: top });
            }
        }
        if top == 1 {
            edges.push(Edge { lower: 0, upper: 1 });
        }
        let mut incident = vec![Vec::new(); nv];
        for (k, e) in edges.iter().enumerate() {
            incident[e.lower].push(k);
            incident[e.upper].push(k);
        }
        Ok(PosetHat { names, edges, covers: cover_ids, incident })
    }

    /// Parses the `elements:` / `cover: x < y` text format.
    pub fn parse(text: &str) -> Result<Self, PosetError> {
        let mut elements: Option<Vec<String>> = None;
        let mut covers = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: &str| PosetError::Syntax { line: line_no, message: message.to_string() };
            let (key, rest) = line.split_once(':').ok_or_else(|| syntax("expected `key: value`"))?;
            match key.trim() {
                "elements" => {
                    if elements.is_some() {
                        return Err(syntax("second `elements:` line"));
                    }
                    elements = Some(rest.split_whitespace().map(str::to_string).collect());
                }
                "cover" => {
                    let (a, b) = rest.split_once('<').ok_or_else(|| syntax("expected `cover: x < y`"))?;
                    let (a, b) = (a.trim(), b.trim());
                    if a.is_empty() || b.is_empty() || a.contains(char::is_whitespace) || b.contains(char::is_whitespace) {
                        return Err(syntax("expected `cover: x < y`"));
                    }
                    covers.push((line_no, a.to_string(), b.to_string()));
                }
                other => return Err(syntax(&format!("unknown key `{other}`"))),
            }
        }
        let elements = elements.ok_or(PosetError::Syntax { line: 0, message: "missing `elements:` line".into() })?;
        Self::build(elements, covers)
    }

    /// Emits the text format; parsing the output gives back an equal value.
    pub fn serialize(&self) -> String {
        let mut out = String::from("elements:");
        for name in &self.names[1..self.names.len() - 1] {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for &(x, y) in &self.covers {
            out.push_str(&format!("cover: {} < {}\n", self.names[x], self.names[y]));
        }
        out
    }

    /// The order dual; `0̂` and `1̂` trade places.
    pub fn flip(&self) -> Self {
        let interior = self.names[1..self.names.len() - 1].to_vec();
        let covers = self
            .covers
            .iter()
            .map(|&(x, y)| (0, self.names[y].clone(), self.names[x].clone()))
            .collect();
        Self::build(interior, covers).expect("dual of a valid poset is valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// `d = |P| + 1`.
    pub fn d(&self) -> usize {
        self.names.len() - 1
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.names.len() - 1
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> Edge {
        self.edges[k]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Edge ids incident to `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    /// Edges from `v` to elements covering it.
    pub fn up_edges(&self, v: usize) -> Vec<usize> {
        self.incident[v].iter().copied().filter(|&k| self.edges[k].lower == v).collect()
    }

    /// Edges from `v` to elements it covers.
    pub fn down_edges(&self, v: usize) -> Vec<usize> {
        self.incident[v].iter().copied().filter(|&k| self.edges[k].upper == v).collect()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.incident[u].iter().copied().find(|&k| self.edges[k].other(u) == v)
    }

    /// Human-readable edge label, `e1`-based.
    pub fn edge_label(k: usize) -> String {
        format!("e{}", k + 1)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.num_vertices()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &k in &self.incident[v] {
                let w = self.edges[k].other(v);
                if !std::mem::replace(&mut seen[w], true) {
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Vertices in an order where every cover goes forward.
    fn topological_order(&self) -> Vec<usize> {
        let nv = self.num_vertices();
        let mut indeg: Vec<usize> = (0..nv).map(|v| self.down_edges(v).len()).collect();
        let mut order = Vec::with_capacity(nv);
        let mut queue: VecDeque<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for k in self.up_edges(v) {
                let w = self.edges[k].upper;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// (shortest, longest) number of edges on a cover path from `0̂` to each vertex.
    pub fn chain_lengths(&self) -> Vec<(usize, usize)> {
        let nv = self.num_vertices();
        let mut out = vec![(usize::MAX, 0usize); nv];
        out[0] = (0, 0);
        for v in self.topological_order() {
            for k in self.up_edges(v) {
                let w = self.edges[k].upper;
                out[w].0 = out[w].0.min(out[v].0 + 1);
                out[w].1 = out[w].1.max(out[v].1 + 1);
            }
        }
        out
    }

    /// Rank of each vertex (longest chain from `0̂`); meaningful for pure posets.
    pub fn ranks(&self) -> Vec<usize> {
        self.chain_lengths().into_iter().map(|(_, hi)| hi).collect()
    }

    pub fn purity(&self) -> PurityReport {
        let (lo, hi) = self.chain_lengths()[self.top()];
        if lo == hi {
            PurityReport { pure: true, chain_length: Some(hi) }
        } else {
            PurityReport { pure: false, chain_length: None }
        }
    }

    pub fn is_pure(&self) -> bool {
        self.purity().pure
    }

    /// The first edge lying on every maximal chain, if any.
    pub fn polynomial_extension_edge(&self) -> Option<usize> {
        (0..self.num_edges()).find(|&skip| {
            let mut seen = vec![false; self.num_vertices()];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for k in self.up_edges(v) {
                    if k == skip {
                        continue;
                    }
                    let w = self.edges[k].upper;
                    if !std::mem::replace(&mut seen[w], true) {
                        stack.push(w);
                    }
                }
            }
            !seen[self.top()]
        })
    }

    /// All chordless cycles, each listed once.
    pub fn chordless_circuits(&self) -> Vec<Circuit> {
        let nv = self.num_vertices();
        let adj: Vec<Vec<usize>> = (0..nv)
            .map(|v| {
                let mut ns: Vec<usize> = self.incident[v].iter().map(|&k| self.edges[k].other(v)).collect();
                ns.sort_unstable();
                ns
            })
            .collect();
        let mut cycles = Vec::new();
        for root in 0..nv {
            let mut path = vec![root];
            let mut on_path = vec![false; nv];
            on_path[root] = true;
            self.extend_cycles(root, &adj, &mut path, &mut on_path, &mut cycles);
        }
        cycles
            .into_iter()
            .filter(|cyc| self.is_chordless(cyc))
            .map(|cyc| self.make_circuit(cyc))
            .collect()
    }

    fn extend_cycles(
        &self,
        root: usize,
        adj: &[Vec<usize>],
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().expect("non-empty path");
        for &w in &adj[last] {
            if w == root && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            }
            if w > root && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                self.extend_cycles(root, adj, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }

    fn is_chordless(&self, cyc: &[usize]) -> bool {
        let len = cyc.len();
        for i in 0..len {
            for j in i + 2..len {
                if i == 0 && j == len - 1 {
                    continue;
                }
                if self.edge_between(cyc[i], cyc[j]).is_some() {
                    return false;
                }
            }
        }
        true
    }

    fn make_circuit(&self, cyc: Vec<usize>) -> Circuit {
        let len = cyc.len();
        let mut edges = Vec::with_capacity(len);
        let mut x_plus = Vec::new();
        let mut x_minus = Vec::new();
        for i in 0..len {
            let (a, b) = (cyc[i], cyc[(i + 1) % len]);
            let k = self.edge_between(a, b).expect("consecutive cycle vertices are adjacent");
            edges.push(k);
            if self.edges[k].lower == a {
                x_plus.push(k);
            } else {
                x_minus.push(k);
            }
        }
        x_plus.sort_unstable();
        x_minus.sort_unstable();
        Circuit { vertex_cycle: cyc, edges, x_plus, x_minus }
    }

    /// A spanning tree: the hint if given (validated), else BFS from `0̂`
    /// scanning incident edges in index order.
    pub fn spanning_tree(&self, hint: Option<&[usize]>) -> Result<TreeSelection, PosetError> {
        let tree: BTreeSet<usize> = match hint {
            Some(h) => {
                let set: BTreeSet<usize> = h.iter().copied().collect();
                self.validate_tree(&set, h.len())?;
                set
            }
            None => {
                let mut seen = vec![false; self.num_vertices()];
                let mut tree = BTreeSet::new();
                let mut queue = VecDeque::from([0usize]);
                seen[0] = true;
                while let Some(v) = queue.pop_front() {
                    for &k in &self.incident[v] {
                        let w = self.edges[k].other(v);
                        if !std::mem::replace(&mut seen[w], true) {
                            tree.insert(k);
                            queue.push_back(w);
                        }
                    }
                }
                tree
            }
        };
        let cotree = (0..self.num_edges()).filter(|k| !tree.contains(k)).collect();
        Ok(TreeSelection { tree_edges: tree.into_iter().collect(), cotree_edges: cotree })
    }

    fn validate_tree(&self, set: &BTreeSet<usize>, given: usize) -> Result<(), PosetError> {
        let bad = |m: String| Err(PosetError::InvalidTree(m));
        if set.len() != given {
            return bad("repeated edge".into());
        }
        if let Some(&k) = set.iter().find(|&&k| k >= self.num_edges()) {
            return bad(format!("no edge {}", Self::edge_label(k)));
        }
        if set.len() != self.num_vertices() - 1 {
            return bad(format!("need {} edges, got {}", self.num_vertices() - 1, set.len()));
        }
        // Union-find over the chosen edges detects cycles; with |V|-1 edges
        // and no cycle the selection spans.
        let mut parent: Vec<usize> = (0..self.num_vertices()).collect();
        fn find(p: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while p[r] != r {
                r = p[r];
            }
            let mut v = v;
            while p[v] != r {
                let next = p[v];
                p[v] = r;
                v = next;
            }
            r
        }
        for &k in set {
            let e = self.edges[k];
            let (a, b) = (find(&mut parent, e.lower), find(&mut parent, e.upper));
            if a == b {
                return bad(format!("edge {} closes a cycle", Self::edge_label(k)));
            }
            parent[a] = b;
        }
        Ok(())
    }
}

impl fmt::Display for PosetHat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEC22: &str = "elements: p1 p2 p3 p4 p5\ncover: p1 < p2\ncover: p3 < p4\ncover: p3 < p5\n";

    #[test]
    fn example_edges_follow_cover_order() {
        let p = PosetHat::parse(SEC22).unwrap();
        assert_eq!(p.num_vertices(), 7);
        assert_eq!(p.num_edges(), 8);
        let named: Vec<(&str, &str)> =
            p.edges().iter().map(|e| (p.name(e.lower), p.name(e.upper))).collect();
        assert_eq!(
            named,
            vec![
                ("0̂", "p1"),
                ("p1", "p2"),
                ("p2", "1̂"),
                ("0̂", "p3"),
                ("p3", "p4"),
                ("p4", "1̂"),
                ("p3", "p5"),
                ("p5", "1̂")
            ]
        );
    }

    #[test]
    fn empty_poset() {
        let p = PosetHat::parse("elements:\n").unwrap();
        assert_eq!(p.num_vertices(), 2);
        assert_eq!(p.num_edges(), 1);
        assert_eq!(p.purity(), PurityReport { pure: true, chain_length: Some(1) });
    }

    #[test]
    fn redundant_cover_rejected() {
        let text = "elements: a b c\ncover: a < b\ncover: b < c\ncover: a < c\n";
        assert_eq!(
            PosetHat::parse(text),
            Err(PosetError::RedundantCover("a".into(), "c".into()))
        );
    }

    #[test]
    fn cycles_and_syntax_rejected() {
        let text = "elements: a b\ncover: a < b\ncover: b < a\n";
        assert!(matches!(PosetHat::parse(text), Err(PosetError::Cycle(_))));
        assert!(matches!(
            PosetHat::parse("elements: a\ncover a < b\n"),
            Err(PosetError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            PosetHat::parse("elements: a\ncover: a < b\n"),
            Err(PosetError::UnknownElement { line: 2, .. })
        ));
    }

    #[test]
    fn purity() {
        let p = PosetHat::parse(SEC22).unwrap();
        assert_eq!(p.purity(), PurityReport { pure: true, chain_length: Some(3) });
        let q = PosetHat::parse("elements: a b c\ncover: a < b\n").unwrap();
        assert!(!q.is_pure());
    }

    #[test]
    fn example_circuits() {
        let p = PosetHat::parse(SEC22).unwrap();
        let mut found: Vec<(Vec<usize>, Vec<usize>)> = p
            .chordless_circuits()
            .into_iter()
            .map(|c| {
                // Orient so that the side containing the lowest edge is "up".
                if c.x_plus.first() < c.x_minus.first() {
                    (c.x_plus, c.x_minus)
                } else {
                    (c.x_minus, c.x_plus)
                }
            })
            .collect();
        found.sort();
        let mut want = vec![
            (vec![0, 1, 2], vec![3, 4, 5]),
            (vec![0, 1, 2], vec![3, 6, 7]),
            (vec![4, 5], vec![6, 7]),
        ];
        want.sort();
        assert_eq!(found, want);
    }

    #[test]
    fn chordless_filter_drops_chorded_cycles() {
        // Three simple cycles; the hexagon 0̂-a-d-1̂-c-b has the chord a–c.
        let text = "elements: a b c d\ncover: a < c\ncover: a < d\ncover: b < c\n";
        let p = PosetHat::parse(text).unwrap();
        let cs = p.chordless_circuits();
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.vertex_cycle.len() == 4));
    }

    #[test]
    fn spanning_trees() {
        let p = PosetHat::parse(SEC22).unwrap();
        let t = p.spanning_tree(None).unwrap();
        assert_eq!(t.cotree_edges, vec![5, 7]);
        let t = p.spanning_tree(Some(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert_eq!(t.cotree_edges, vec![0, 7]);
        assert!(p.spanning_tree(Some(&[0, 1, 2, 3, 4, 5])).is_err());
        assert!(p.spanning_tree(Some(&[0, 1])).is_err());
    }

    #[test]
    fn polynomial_extension() {
        let chain = PosetHat::parse("elements: a b\ncover: a < b\n").unwrap();
        assert_eq!(chain.polynomial_extension_edge(), Some(0));
        let p = PosetHat::parse(SEC22).unwrap();
        assert_eq!(p.polynomial_extension_edge(), None);
    }

    #[test]
    fn serialize_roundtrip_and_flip() {
        let p = PosetHat::parse(SEC22).unwrap();
        assert_eq!(PosetHat::parse(&p.serialize()).unwrap(), p);
        let f = p.flip();
        assert_eq!(f.num_edges(), 8);
        assert_eq!(f.flip().chordless_circuits().len(), 3);
    }

    #[test]
    fn natural_order() {
        let mut v = vec!["p10", "p2", "p1", "a", "p01x"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, vec!["a", "p1", "p01x", "p2", "p10"]);
    }
}
