//! Exact two-phase simplex over rationals, with Bland's anti-cycling rule.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome<T: Scalar> {
    Optimal { value: Ratio<T>, x: Vec<Ratio<T>> },
    Infeasible,
    Unbounded,
}

struct Tableau<T: Scalar> {
    rows: Vec<Vec<Ratio<T>>>,
    basis: Vec<usize>,
    /// Reduced costs followed by minus the current objective value.
    obj: Vec<Ratio<T>>,
}

impl<T: Scalar> Tableau<T> {
    fn width(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() / p.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let k = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - k.clone() * y.clone();
            }
        }
        if !self.obj[c].is_zero() {
            let k = self.obj[c].clone();
            for (x, y) in self.obj.iter_mut().zip(&pivot_row) {
                *x = x.clone() - k.clone() * y.clone();
            }
        }
        self.basis[r] = c;
    }

    fn set_objective(&mut self, c: &[Ratio<T>]) {
        let w = self.width();
        self.obj = vec![Ratio::zero(); w + 1];
        self.obj[..c.len()].clone_from_slice(c);
        for (i, &b) in self.basis.iter().enumerate() {
            if b < c.len() && !c[b].is_zero() {
                let k = c[b].clone();
                for (x, y) in self.obj.iter_mut().zip(&self.rows[i]) {
                    *x = x.clone() - k.clone() * y.clone();
                }
            }
        }
    }

    /// Returns false when the objective is unbounded.
    fn optimize(&mut self, eligible: usize) -> bool {
        loop {
            let Some(enter) = (0..eligible).find(|&j| self.obj[j].is_positive()) else {
                return true;
            };
            let w = self.width();
            let mut leave: Option<(usize, Ratio<T>)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = row[w].clone() / row[enter].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }

    fn value(&self) -> Ratio<T> {
        -self.obj[self.width()].clone()
    }
}

/// Maximizes `c·x` subject to `A x = b`, `x >= 0`.
pub fn maximize<T: Scalar>(a: &[Vec<Ratio<T>>], b: &[Ratio<T>], c: &[Ratio<T>]) -> LpOutcome<T> {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m, "rhs length mismatch");

    // Phase 1: artificial basis on sign-normalized rows.
    let mut rows = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), n, "constraint width mismatch");
        let flip = b[i].is_negative();
        let mut full: Vec<Ratio<T>> = row
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        for k in 0..m {
            full.push(if k == i { Ratio::one() } else { Ratio::zero() });
        }
        full.push(if flip { -b[i].clone() } else { b[i].clone() });
        rows.push(full);
    }
    let mut tab = Tableau {
        rows,
        basis: (n..n + m).collect(),
        obj: vec![Ratio::zero(); n + m + 1],
    };
    let mut phase1 = vec![Ratio::zero(); n];
    phase1.extend(std::iter::repeat(-Ratio::<T>::one()).take(m));
    tab.set_objective(&phase1);
    tab.optimize(n + m);
    if tab.value().is_negative() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for row in tab.rows.iter_mut() {
        let rhs = row[n + m].clone();
        row.truncate(n);
        row.push(rhs);
    }
    tab.obj = vec![Ratio::zero(); n + 1];
    tab.set_objective(c);
    if !tab.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Ratio::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        x[bv] = tab.rows[i][n].clone();
    }
    LpOutcome::Optimal { value: tab.value(), x }
}
