//! Exact membership in finitely generated affine semigroups of `Z` and `Z²`.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_integer::Integer;

use crate::linalg::{solve_integer, Matrix};
use crate::weight::Weight;
use crate::Int;

type P = (Int, Int);

fn cross(a: P, b: P) -> Int {
    a.0 * b.1 - a.1 * b.0
}

fn dot(a: P, b: P) -> Int {
    a.0 * b.0 + a.1 * b.1
}

fn primitive(v: P) -> P {
    let g = v.0.gcd(&v.1);
    (v.0 / g, v.1 / g)
}

/// Upper half (including the positive x-axis) sorts before the lower half.
fn half(v: P) -> u8 {
    if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
        0
    } else {
        1
    }
}

/// Total order of nonzero vectors by angle in `[0, 2π)`.
pub(crate) fn angle_cmp(a: P, b: P) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

/// Is `target` a non-negative integer combination of `generators`?
///
/// Panics if the rank is not 1 or 2.
pub fn semigroup_member(target: &Weight, generators: &[Weight]) -> bool {
    match target.rank() {
        1 => member_1d(target.coords()[0], &generators.iter().map(|g| g.coords()[0]).collect::<Vec<_>>()),
        2 => member_2d(
            (target.coords()[0], target.coords()[1]),
            &generators.iter().map(|g| (g.coords()[0], g.coords()[1])).collect::<Vec<_>>(),
        ),
        r => panic!("semigroup membership implemented for rank 1 and 2, got {r}"),
    }
}

fn member_1d(target: Int, gens: &[Int]) -> bool {
    let pos: Vec<Int> = gens.iter().copied().filter(|&g| g > 0).collect();
    let neg: Vec<Int> = gens.iter().copied().filter(|&g| g < 0).map(|g| -g).collect();
    match (pos.is_empty(), neg.is_empty()) {
        (true, true) => target == 0,
        (false, false) => {
            let g = gens.iter().fold(0, |acc: Int, &x| acc.gcd(&x));
            target % g == 0
        }
        (false, true) => target >= 0 && reachable_sum(target, &pos),
        (true, false) => target <= 0 && reachable_sum(-target, &neg),
    }
}

fn reachable_sum(t: Int, parts: &[Int]) -> bool {
    let t = t as usize;
    let mut ok = vec![false; t + 1];
    ok[0] = true;
    for v in 1..=t {
        ok[v] = parts.iter().any(|&p| (p as usize) <= v && ok[v - p as usize]);
    }
    ok[t]
}

enum ConeShape {
    /// The cone is all of `R²` or a line: the semigroup is the generated group.
    Group,
    /// Height function `n` positive on every generator off the line spanned
    /// by `line` (if any); generators on that line come in both directions.
    Graded { normal: P, line: Option<P> },
}

fn shape(dirs: &[P]) -> ConeShape {
    if dirs.len() == 1 {
        return ConeShape::Graded { normal: dirs[0], line: None };
    }
    let k = dirs.len();
    let mut wide = None;
    let mut straight = Vec::new();
    for i in 0..k {
        let (a, b) = (dirs[i], dirs[(i + 1) % k]);
        let c = cross(a, b);
        if c < 0 {
            wide = Some((a, b));
        } else if c == 0 && dot(a, b) < 0 {
            straight.push((a, b));
        }
    }
    if let Some((end, start)) = wide {
        // The cone runs counterclockwise from `start` to `end`.
        let inward_start = (-start.1, start.0);
        let inward_end = (end.1, -end.0);
        let normal = primitive((inward_start.0 + inward_end.0, inward_start.1 + inward_end.1));
        return ConeShape::Graded { normal, line: None };
    }
    match straight.len() {
        0 => ConeShape::Group,
        1 => {
            let (_, start) = straight[0];
            ConeShape::Graded { normal: (-start.1, start.0), line: Some(start) }
        }
        _ => ConeShape::Group,
    }
}

fn member_2d(target: P, gens: &[P]) -> bool {
    let gens: Vec<P> = gens.iter().copied().filter(|&g| g != (0, 0)).collect();
    if gens.is_empty() {
        return target == (0, 0);
    }
    let mut dirs: Vec<P> = gens.iter().map(|&g| primitive(g)).collect();
    dirs.sort_by(|&a, &b| angle_cmp(a, b));
    dirs.dedup();
    match shape(&dirs) {
        ConeShape::Group => {
            let m = Matrix::from_rows(vec![gens.iter().map(|g| g.0).collect(), gens.iter().map(|g| g.1).collect()], gens.len());
            solve_integer(&m, &[target.0, target.1]).is_some()
        }
        ConeShape::Graded { normal, line } => graded_member(target, &gens, normal, line),
    }
}

/// Dynamic programming over heights `0..=⟨n, target⟩`, with points taken
/// modulo the subgroup generated by the generators of height zero.
fn graded_member(target: P, gens: &[P], normal: P, line: Option<P>) -> bool {
    let height = dot(normal, target);
    if height < 0 {
        return false;
    }
    let (v, step) = match line {
        Some(v) => {
            // Generators on the line are multiples k·v; they generate g·Z·v.
            let g = gens
                .iter()
                .filter(|&&q| dot(normal, q) == 0)
                .fold(0, |acc: Int, &q| acc.gcd(&(dot(q, v) / dot(v, v))));
            (v, g)
        }
        None => ((0, 0), 0),
    };
    let reduce = |p: P| -> P {
        if step == 0 {
            return p;
        }
        let period = step * dot(v, v);
        let k = Integer::div_floor(&dot(v, p), &period);
        (p.0 - k * step * v.0, p.1 - k * step * v.1)
    };
    let lifts: Vec<(usize, P)> = gens
        .iter()
        .filter_map(|&q| {
            let h = dot(normal, q);
            (h > 0).then_some((h as usize, q))
        })
        .collect();
    let height = height as usize;
    let mut layers: Vec<HashSet<P>> = vec![HashSet::new(); height + 1];
    layers[0].insert(reduce((0, 0)));
    for h in 0..height {
        if layers[h].is_empty() {
            continue;
        }
        let current: Vec<P> = layers[h].iter().copied().collect();
        for p in current {
            for &(dh, q) in &lifts {
                if h + dh <= height {
                    layers[h + dh].insert(reduce((p.0 + q.0, p.1 + q.1)));
                }
            }
        }
    }
    layers[height].contains(&reduce(target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[Int]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn half_plane() {
        let gens = [w(&[1, 0]), w(&[-1, 0]), w(&[0, -1])];
        assert!(semigroup_member(&w(&[7, -3]), &gens));
        assert!(!semigroup_member(&w(&[7, 3]), &gens));
    }

    #[test]
    fn pointed() {
        let gens = [w(&[2, 0]), w(&[0, 3])];
        assert!(semigroup_member(&w(&[2, 3]), &gens));
        assert!(!semigroup_member(&w(&[1, 0]), &gens));
        assert!(semigroup_member(&w(&[0, 0]), &gens));
    }

    #[test]
    fn whole_plane_and_line() {
        let gens = [w(&[2, 0]), w(&[0, 2]), w(&[-2, -2])];
        assert!(semigroup_member(&w(&[-4, 6]), &gens));
        assert!(!semigroup_member(&w(&[1, 0]), &gens));
        let line = [w(&[2, 2]), w(&[-3, -3])];
        assert!(semigroup_member(&w(&[-1, -1]), &line));
        assert!(!semigroup_member(&w(&[1, 0]), &line));
    }

    #[test]
    fn half_plane_with_sparse_line() {
        // Line subgroup 2Z·(1,0); off-line generator (1,1).
        let gens = [w(&[2, 0]), w(&[-2, 0]), w(&[1, 1])];
        assert!(semigroup_member(&w(&[1, 1]), &gens));
        assert!(semigroup_member(&w(&[-1, 1]), &gens));
        assert!(!semigroup_member(&w(&[0, 1]), &gens));
        assert!(!semigroup_member(&w(&[1, 0]), &gens));
    }

    #[test]
    fn rank_one() {
        assert!(semigroup_member(&w(&[7]), &[w(&[2]), w(&[3])]));
        assert!(!semigroup_member(&w(&[1]), &[w(&[2]), w(&[3])]));
        assert!(!semigroup_member(&w(&[-1]), &[w(&[2]), w(&[3])]));
        assert!(semigroup_member(&w(&[-1]), &[w(&[2]), w(&[-3])]));
        assert!(!semigroup_member(&w(&[1]), &[w(&[2]), w(&[-4])]));
    }
}
