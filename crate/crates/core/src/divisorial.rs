//! Conic divisorial-ideal classes: the circuit polytope and the
//! strongly-critical-character test.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::class_group::ClassGroupData;
use crate::lp::{maximize, LpOutcome};
use crate::poset::{Circuit, TreeSelection};
use crate::scalar::{from_i64, Scalar};
use crate::weight::Weight;
use crate::Int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConicError {
    #[error("inequality system is unbounded in coordinate {0}")]
    Unbounded(usize),
    #[error("inequality system is infeasible")]
    Infeasible,
}

/// `lo ≤ ⟨coeffs, z⟩ ≤ hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub coeffs: Vec<Int>,
    pub lo: Int,
    pub hi: Int,
}

impl Inequality {
    pub fn holds(&self, z: &[Int]) -> bool {
        let v: Int = self.coeffs.iter().zip(z).map(|(a, b)| a * b).sum();
        self.lo <= v && v <= self.hi
    }

    /// `lo <= a*x + b*y <= hi` with the given variable names.
    pub fn render<S: AsRef<str>>(&self, vars: &[S]) -> String {
        format!("{} <= {} <= {}", self.lo, linear_form(&self.coeffs, vars), self.hi)
    }
}

/// `2*z1 - z8` style rendering of an integer linear form.
pub fn linear_form<S: AsRef<str>>(coeffs: &[Int], vars: &[S]) -> String {
    let mut out = String::new();
    for (c, v) in coeffs.iter().zip(vars) {
        if *c == 0 {
            continue;
        }
        let sign = if *c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if *c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if c.abs() != 1 {
            out.push_str(&format!("{}*", c.abs()));
        }
        out.push_str(v.as_ref());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConicPolytope {
    pub rank: usize,
    pub ineqs: Vec<Inequality>,
}

impl ConicPolytope {
    pub fn contains(&self, z: &Weight) -> bool {
        self.ineqs.iter().all(|q| q.holds(z.coords()))
    }
}

/// One inequality per circuit, normalized so the first nonzero coefficient is
/// positive; repeated coefficient vectors keep the tightest bounds.
pub fn conic_polytope(circuits: &[Circuit], tree: &TreeSelection, cg: &ClassGroupData) -> ConicPolytope {
    let r = cg.rank;
    let mut ineqs: Vec<Inequality> = Vec::new();
    for c in circuits {
        let (zp, zm) = c.z_split(tree);
        let mut coeffs = vec![0; r];
        for (k, e) in tree.cotree_edges.iter().enumerate() {
            if zp.contains(e) {
                coeffs[k] += 1;
            }
            if zm.contains(e) {
                coeffs[k] -= 1;
            }
        }
        let mut lo = 1 - c.x_minus.len() as Int;
        let mut hi = c.x_plus.len() as Int - 1;
        match coeffs.iter().find(|&&x| x != 0) {
            None => continue,
            Some(&first) if first < 0 => {
                coeffs.iter_mut().for_each(|x| *x = -*x);
                (lo, hi) = (-hi, -lo);
            }
            Some(_) => {}
        }
        match ineqs.iter_mut().find(|q| q.coeffs == coeffs) {
            Some(q) => {
                q.lo = q.lo.max(lo);
                q.hi = q.hi.min(hi);
            }
            None => ineqs.push(Inequality { coeffs, lo, hi }),
        }
    }
    ConicPolytope { rank: r, ineqs }
}

/// Integer bounds `[floor(min z_j), ceil(max z_j)]` for each coordinate.
pub fn bounding_box(cp: &ConicPolytope) -> Result<Vec<(Int, Int)>, ConicError> {
    let r = cp.rank;
    // Variables: z+ (r), z- (r), one upper and one lower slack per inequality.
    let m = cp.ineqs.len();
    let nv = 2 * r + 2 * m;
    let q = |v: Int| Ratio::<i128>::from_integer(v as i128);
    let mut a = Vec::with_capacity(2 * m);
    let mut b = Vec::with_capacity(2 * m);
    for (i, ineq) in cp.ineqs.iter().enumerate() {
        for (slack, bound, sign) in [(2 * r + 2 * i, ineq.hi, 1), (2 * r + 2 * i + 1, ineq.lo, -1)] {
            let mut row = vec![q(0); nv];
            for (j, &c) in ineq.coeffs.iter().enumerate() {
                row[j] = q(c);
                row[r + j] = q(-c);
            }
            row[slack] = q(sign);
            a.push(row);
            b.push(q(bound));
        }
    }
    let mut out = Vec::with_capacity(r);
    for j in 0..r {
        let mut ends = [0 as Int; 2];
        for (slot, dir) in [(0usize, -1), (1, 1)] {
            let mut c = vec![q(0); nv];
            c[j] = q(dir);
            c[r + j] = q(-dir);
            match maximize(&a, &b, &c) {
                LpOutcome::Optimal { value, .. } => {
                    // max(dir * z_j) = value.
                    let v = if dir > 0 { value.floor() } else { -value.floor() };
                    ends[slot] = *v.numer() as Int;
                }
                LpOutcome::Unbounded => return Err(ConicError::Unbounded(j)),
                LpOutcome::Infeasible => return Err(ConicError::Infeasible),
            }
        }
        out.push((ends[0], ends[1]));
    }
    Ok(out)
}

/// All lattice points of the polytope, lexicographically sorted.
pub fn enumerate_conic(cp: &ConicPolytope) -> Result<Vec<Weight>, ConicError> {
    if cp.rank == 0 {
        return Ok(vec![Weight::zero(0)]);
    }
    let bounds = bounding_box(cp)?;
    Ok(box_points(&bounds).into_iter().filter(|z| cp.contains(z)).collect())
}

/// Every integer point of a box, lexicographically sorted.
pub fn box_points(bounds: &[(Int, Int)]) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in bounds {
        let mut next = Vec::new();
        for prefix in &out {
            for v in lo..=hi {
                let mut p: Vec<Int> = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(Weight).collect()
}

/// Conic classes of an arbitrary weight system: the classes `z` of conic
/// modules `M_z = M_{−χ}` with `χ` strongly critical, i.e. `−z` strongly
/// critical. Searches the box `|z_j| ≤ Σ_i |β_ij|`, which contains them all.
pub fn conic_classes_from_weights(weights: &[Weight]) -> Vec<Weight> {
    let r = weights.first().map_or(0, Weight::rank);
    let bounds: Vec<(Int, Int)> = (0..r)
        .map(|j| {
            let s: Int = weights.iter().map(|w| w.coords()[j].abs()).sum();
            (-s, s)
        })
        .collect();
    box_points(&bounds).into_iter().filter(|z| strongly_critical_conic(&-z, weights)).collect()
}

/// Is `chi = Σ δ_i β_i` for some `δ_i ∈ (−1, 0]`?
///
/// With `u = −δ ∈ [0, 1)` this is feasibility of `B u = −χ` with a positive
/// margin `t ≤ 1 − u_i`, decided by one exact LP maximizing `t`.
pub fn strongly_critical_conic(chi: &Weight, weights: &[Weight]) -> bool {
    strongly_critical_with::<i128>(chi, weights)
}

/// The same test carried out over rationals with numerator type `T`.
pub fn strongly_critical_with<T: Scalar>(chi: &Weight, weights: &[Weight]) -> bool {
    let n = weights.len();
    let r = chi.rank();
    let q = |v: Int| Ratio::<T>::from_integer(from_i64(v));
    // Variables: u_0..u_{n-1}, t, s_0..s_{n-1}.
    let nv = 2 * n + 1;
    let mut a = Vec::with_capacity(r + n);
    let mut b = Vec::with_capacity(r + n);
    for c in 0..r {
        let mut row = vec![Ratio::zero(); nv];
        for (i, w) in weights.iter().enumerate() {
            row[i] = q(w.coords()[c]);
        }
        a.push(row);
        b.push(q(-chi.coords()[c]));
    }
    for i in 0..n {
        let mut row = vec![Ratio::zero(); nv];
        row[i] = Ratio::one();
        row[n] = Ratio::one();
        row[n + 1 + i] = Ratio::one();
        a.push(row);
        b.push(Ratio::one());
    }
    let mut c = vec![Ratio::zero(); nv];
    c[n] = Ratio::one();
    match maximize(&a, &b, &c) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        LpOutcome::Infeasible => false,
        LpOutcome::Unbounded => unreachable!("t is capped by u_i + t ≤ 1"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_group::hibi_class_group;
    use crate::poset::PosetHat;

    const SEC22: &str = "elements: p1 p2 p3 p4 p5\ncover: p1 < p2\ncover: p3 < p4\ncover: p3 < p5\n";

    fn ineq(c: &[Int], lo: Int, hi: Int) -> Inequality {
        Inequality { coeffs: c.to_vec(), lo, hi }
    }

    #[test]
    fn example_polytope() {
        let p = PosetHat::parse(SEC22).unwrap();
        let (tree, cg) = hibi_class_group(&p, Some(&[1, 2, 3, 4, 5, 6])).unwrap();
        let cp = conic_polytope(&p.chordless_circuits(), &tree, &cg);
        let mut got = cp.ineqs.clone();
        got.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
        let mut want = vec![ineq(&[1, 0], -2, 2), ineq(&[0, 1], -1, 1), ineq(&[1, -1], -2, 2)];
        want.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
        assert_eq!(got, want);
        assert_eq!(enumerate_conic(&cp).unwrap().len(), 13);
    }

    #[test]
    fn unbounded_is_an_error() {
        let cp = ConicPolytope { rank: 2, ineqs: vec![ineq(&[1, 0], -1, 1)] };
        assert_eq!(enumerate_conic(&cp), Err(ConicError::Unbounded(1)));
    }

    #[test]
    fn strongly_critical_small() {
        let ws: Vec<Weight> = [[1, 0], [1, 0], [1, 0], [-1, 0], [-1, -1], [-1, -1], [0, 1], [0, 1]]
            .iter()
            .map(|x| Weight::from(*x))
            .collect();
        assert!(strongly_critical_conic(&Weight::from([0, 0]), &ws));
        assert!(!strongly_critical_conic(&Weight::from([3, 0]), &ws));
        assert!(strongly_critical_conic(&Weight::from([2, 1]), &ws));
        assert!(!strongly_critical_conic(&Weight::from([2, -1]), &ws));
    }
}
