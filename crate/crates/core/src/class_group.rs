//! The σ-matrix of a cone and the divisor class group it presents.

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{hermite_rows, smith_normal_form, solve_integer, unimodular_inverse, Matrix};
use crate::poset::{PosetHat, TreeSelection};
use crate::weight::Weight;
use crate::Int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassGroupError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("ray on line {0} repeats an earlier ray")]
    DuplicateRay(usize),
    #[error("rays span a rank {rank} lattice inside dimension {dim}")]
    RankDeficient { rank: usize, dim: usize },
    #[error("class group has torsion (invariant factors {0:?})")]
    Torsion(Vec<Int>),
    #[error("a Hibi σ-matrix needs a spanning tree to fix the class-group basis")]
    TreeRequired,
    #[error("cotree edges do not form a basis of the class group")]
    BadTree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaSource {
    Hibi,
    RawCone,
}

/// One row per prime divisor: the ray generator read as a linear form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaMatrix {
    pub rows: Matrix<Int>,
    pub source: SigmaSource,
}

impl SigmaMatrix {
    pub fn num_divisors(&self) -> usize {
        self.rows.rows()
    }

    pub fn dim(&self) -> usize {
        self.rows.cols()
    }
}

/// How the coordinates of the class group were chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassBasis {
    /// The classes of these edges are the standard basis vectors.
    Cotree(Vec<usize>),
    /// Hermite normal form of the class map (positive pivots, reduced above).
    Hermite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroupData {
    pub rank: usize,
    /// Invariant factors different from 1; always empty on success.
    pub torsion: Vec<Int>,
    /// `weights[i]` is the class of the i-th prime divisor.
    pub weights: Vec<Weight>,
    pub basis: ClassBasis,
}

impl ClassGroupData {
    /// Class of `Σ a_i D_i`.
    pub fn class_of(&self, a: &[Int]) -> Weight {
        assert_eq!(a.len(), self.weights.len(), "one coefficient per divisor");
        let mut out = Weight::zero(self.rank);
        for (ai, w) in a.iter().zip(&self.weights) {
            out = &out + &w.scale(*ai);
        }
        out
    }

    /// Divisors grouped by class up to sign, one line per group, e.g.
    /// `D_e1 = D_e2 = -D_e4` or `D_e5 = -D_e1 - D_e8`. A group that does not
    /// contain a basis divisor ends with its expression in the basis.
    pub fn relations(&self, label: impl Fn(usize) -> String) -> Vec<String> {
        let basis: Vec<usize> = match &self.basis {
            ClassBasis::Cotree(c) => c.clone(),
            ClassBasis::Hermite => Vec::new(),
        };
        let names: Vec<String> = (0..self.weights.len()).map(|k| format!("D_{}", label(k))).collect();
        let mut seen = vec![false; self.weights.len()];
        let mut lines = Vec::new();
        for i in 0..self.weights.len() {
            if seen[i] {
                continue;
            }
            let rep = &self.weights[i];
            let neg = -rep;
            let same: Vec<usize> = (i..self.weights.len()).filter(|&k| self.weights[k] == *rep).collect();
            let opposite: Vec<usize> =
                if rep.is_zero() { Vec::new() } else { (i..self.weights.len()).filter(|&k| self.weights[k] == neg).collect() };
            let mut parts: Vec<String> = same.iter().map(|&k| names[k].clone()).collect();
            parts.extend(opposite.iter().map(|&k| format!("-{}", names[k])));
            let has_basis = same.iter().chain(&opposite).any(|k| basis.contains(k));
            if !basis.is_empty() && !has_basis {
                let vars: Vec<&str> = basis.iter().map(|&b| names[b].as_str()).collect();
                parts.push(crate::divisorial::linear_form(rep.coords(), &vars));
            }
            for &k in same.iter().chain(&opposite) {
                seen[k] = true;
            }
            if parts.len() > 1 {
                lines.push(parts.join(" = "));
            }
        }
        lines
    }

    /// True when the weights sum to zero.
    pub fn is_gorenstein(&self) -> bool {
        self.class_of(&vec![1; self.weights.len()]).is_zero()
    }
}

/// `σ_e = x_i − x_j` for `e = {p_i ≺ p_j}`, or `x_i` when `p_j = 1̂`.
pub fn sigma_matrix(p: &PosetHat) -> SigmaMatrix {
    let d = p.d();
    let mut rows = Matrix::zeros(p.num_edges(), d);
    for (k, e) in p.edges().iter().enumerate() {
        rows.set(k, e.lower, 1);
        if e.upper != p.top() {
            rows.set(k, e.upper, -1);
        }
    }
    SigmaMatrix { rows, source: SigmaSource::Hibi }
}

/// Parses `dim: d` followed by `ray: c1 ... cd` lines.
pub fn parse_cone(text: &str) -> Result<SigmaMatrix, ClassGroupError> {
    let mut dim: Option<usize> = None;
    let mut rays: Vec<Vec<Int>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let syntax = |m: &str| ClassGroupError::Syntax { line, message: m.to_string() };
        let (key, rest) = body.split_once(':').ok_or_else(|| syntax("expected `key: value`"))?;
        match key.trim() {
            "dim" => {
                if dim.is_some() {
                    return Err(syntax("second `dim:` line"));
                }
                let d: usize = rest.trim().parse().map_err(|_| syntax("bad dimension"))?;
                if d == 0 {
                    return Err(syntax("dimension must be positive"));
                }
                dim = Some(d);
            }
            "ray" => {
                let d = dim.ok_or_else(|| syntax("`ray:` before `dim:`"))?;
                let ray: Vec<Int> = rest
                    .split_whitespace()
                    .map(str::parse)
                    .collect::<Result<_, _>>()
                    .map_err(|_| syntax("bad integer in ray"))?;
                if ray.len() != d {
                    return Err(syntax(&format!("ray has {} coordinates, expected {d}", ray.len())));
                }
                if ray.iter().all(|&c| c == 0) {
                    return Err(syntax("zero ray"));
                }
                if rays.contains(&ray) {
                    return Err(ClassGroupError::DuplicateRay(line));
                }
                rays.push(ray);
            }
            other => return Err(syntax(&format!("unknown key `{other}`"))),
        }
    }
    let d = dim.ok_or(ClassGroupError::Syntax { line: 0, message: "missing `dim:` line".into() })?;
    let rows = Matrix::from_rows(rays, d);
    let rank = smith_normal_form(&rows).rank();
    if rank < d {
        return Err(ClassGroupError::RankDeficient { rank, dim: d });
    }
    Ok(SigmaMatrix { rows, source: SigmaSource::RawCone })
}

/// `coker(Z^d → Z^n)` via Smith normal form, with every divisor expressed
/// in the chosen basis.
pub fn class_group(s: &SigmaMatrix, tree: Option<&TreeSelection>) -> Result<ClassGroupData, ClassGroupError> {
    let smith = smith_normal_form(&s.rows);
    let rank_sigma = smith.rank();
    if rank_sigma < s.dim() {
        return Err(ClassGroupError::RankDeficient { rank: rank_sigma, dim: s.dim() });
    }
    let torsion: Vec<Int> = smith.diag.iter().copied().filter(|&d| d > 1).collect();
    if !torsion.is_empty() {
        return Err(ClassGroupError::Torsion(torsion));
    }
    let n = s.num_divisors();
    let r = n - rank_sigma;
    // Rows of U past the rank map Z^n onto the free cokernel.
    let class_map = Matrix::from_rows((rank_sigma..n).map(|i| smith.u.row(i).to_vec()).collect(), n);

    let (coords, basis) = match (s.source, tree) {
        (SigmaSource::Hibi, None) => return Err(ClassGroupError::TreeRequired),
        (_, Some(t)) => {
            if t.cotree_edges.len() != r || t.cotree_edges.iter().any(|&k| k >= n) {
                return Err(ClassGroupError::BadTree);
            }
            let b = class_map.select_columns(&t.cotree_edges);
            let inv = unimodular_inverse(&b).ok_or(ClassGroupError::BadTree)?;
            (inv.mul(&class_map), ClassBasis::Cotree(t.cotree_edges.clone()))
        }
        (SigmaSource::RawCone, None) => (hermite_rows(&class_map).h, ClassBasis::Hermite),
    };
    let weights = (0..n).map(|k| Weight(coords.column(k))).collect();
    Ok(ClassGroupData { rank: r, torsion, weights, basis })
}

/// Class group of a Hibi ring under a spanning tree (default BFS tree when
/// `hint` is `None`).
pub fn hibi_class_group(
    p: &PosetHat,
    hint: Option<&[usize]>,
) -> Result<(TreeSelection, ClassGroupData), crate::Error> {
    let tree = p.spanning_tree(hint)?;
    let cg = class_group(&sigma_matrix(p), Some(&tree))?;
    Ok((tree, cg))
}

/// True iff `a − b` lies in the image of σ, i.e. `T(a) ≅ T(b)`.
pub fn same_class(a: &[Int], b: &[Int], s: &SigmaMatrix) -> bool {
    let diff: Vec<Int> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    solve_integer(&s.rows, &diff).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEC22: &str = "elements: p1 p2 p3 p4 p5\ncover: p1 < p2\ncover: p3 < p4\ncover: p3 < p5\n";

    fn w(v: &[Int]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn example_weights_in_cotree_basis() {
        let p = PosetHat::parse(SEC22).unwrap();
        let (_, cg) = hibi_class_group(&p, Some(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert_eq!(cg.rank, 2);
        let want = [[1, 0], [1, 0], [1, 0], [-1, 0], [-1, -1], [-1, -1], [0, 1], [0, 1]];
        assert_eq!(cg.weights, want.iter().map(|x| w(x)).collect::<Vec<_>>());
        assert!(cg.is_gorenstein());
    }

    #[test]
    fn sigma_rows() {
        let p = PosetHat::parse(SEC22).unwrap();
        let s = sigma_matrix(&p);
        assert_eq!(s.rows.row(0), &[1, -1, 0, 0, 0, 0]);
        assert_eq!(s.rows.row(2), &[0, 0, 1, 0, 0, 0]);
        let empty = sigma_matrix(&PosetHat::parse("elements:").unwrap());
        assert_eq!(empty.rows.to_rows(), vec![vec![1]]);
    }

    #[test]
    fn z1_example_cone() {
        let s = parse_cone("dim: 3\nray: 1 -1 1\nray: 0 1 1\nray: -1 0 1\nray: -1 -1 1\n").unwrap();
        let cg = class_group(&s, None).unwrap();
        assert_eq!(cg.rank, 1);
        assert_eq!(cg.weights, vec![w(&[1]), w(&[-2]), w(&[4]), w(&[-3])]);
    }

    #[test]
    fn cone_errors() {
        assert_eq!(
            parse_cone("dim: 3\nray: 1 0 0\nray: 0 1 0\nray: 1 1 0\n"),
            Err(ClassGroupError::RankDeficient { rank: 2, dim: 3 })
        );
        assert_eq!(parse_cone("dim: 2\nray: 1 0\nray: 1 0\n"), Err(ClassGroupError::DuplicateRay(3)));
        let smooth = parse_cone("dim: 2\nray: 1 0\nray: 0 1\n").unwrap();
        assert_eq!(class_group(&smooth, None).unwrap().rank, 0);
        let torsion = parse_cone("dim: 2\nray: 1 0\nray: 1 2\n").unwrap();
        assert_eq!(class_group(&torsion, None), Err(ClassGroupError::Torsion(vec![2])));
    }

    #[test]
    fn same_class_examples() {
        let p = PosetHat::parse(SEC22).unwrap();
        let s = sigma_matrix(&p);
        let e = |k: usize| (0..8).map(|i| Int::from(i == k)).collect::<Vec<_>>();
        assert!(same_class(&e(0), &e(1), &s));
        assert!(!same_class(&e(0), &e(7), &s));
    }
}
