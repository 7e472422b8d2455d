//! Rank-one MCM classes via the chamber decomposition of one-parameter
//! subgroups.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::semigroup::{angle_cmp, semigroup_member};
use crate::weight::Weight;
use crate::Int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McmError {
    #[error("class group rank {0} is outside the supported range 1..=2")]
    UnsupportedRank(usize),
    #[error("criterion hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("non-MCM cones are only defined for Λ_∅ and Λ_•• chambers")]
    SingleDotChamber,
    #[error("weights do not span the class group")]
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChamberKind {
    /// A lone ray or a closed cone.
    #[serde(rename = "empty")]
    Empty,
    /// Exactly one boundary ray belongs to the class.
    #[serde(rename = "dot")]
    Dot,
    /// An open cone.
    #[serde(rename = "double-dot")]
    DoubleDot,
}

impl ChamberKind {
    pub fn symbol(&self) -> &'static str {
        match self {
            ChamberKind::Empty => "Λ_∅",
            ChamberKind::Dot => "Λ_•",
            ChamberKind::DoubleDot => "Λ_••",
        }
    }
}

/// A maximal set of one-parameter subgroups with the same `T_λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chamber {
    /// Divisor indices `i` with `⟨λ, β_i⟩ < 0`.
    pub t_set: Vec<usize>,
    pub kind: ChamberKind,
    /// An integer direction inside the chamber.
    pub witness: Vec<Int>,
    /// 0, 1 or 2; a lone ray counts as closed on both sides.
    pub boundary_rays_included: u8,
    /// Clockwise and counterclockwise boundary rays (equal for a lone ray).
    pub from: Vec<Int>,
    pub to: Vec<Int>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChamberDecomposition {
    pub chambers: Vec<Chamber>,
    /// Whether `|T| > 1` on every Λ_∅ and `|T| > 2` on every Λ_••.
    pub hypothesis_holds: bool,
    pub violations: Vec<String>,
}

/// The affine semigroup `offset + N·generators` of characters that fail the
/// criterion for one chamber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonMcmCone {
    pub offset: Weight,
    pub generators: Vec<Weight>,
}

impl NonMcmCone {
    pub fn contains(&self, chi: &Weight) -> bool {
        semigroup_member(&(chi - &self.offset), &self.generators)
    }
}

fn t_set(weights: &[Weight], lambda: &[Int]) -> Vec<usize> {
    (0..weights.len()).filter(|&i| weights[i].dot(lambda) < 0).collect()
}

pub fn chamber_decomposition(weights: &[Weight]) -> Result<ChamberDecomposition, McmError> {
    let r = weights.first().map_or(0, Weight::rank);
    let chambers = match r {
        1 => [1, -1]
            .into_iter()
            .map(|s| Chamber {
                t_set: t_set(weights, &[s]),
                kind: ChamberKind::Empty,
                witness: vec![s],
                boundary_rays_included: 2,
                from: vec![s],
                to: vec![s],
            })
            .collect(),
        2 => planar_chambers(weights)?,
        _ => return Err(McmError::UnsupportedRank(r)),
    };
    let mut violations = Vec::new();
    for c in &chambers {
        let need = match c.kind {
            ChamberKind::Empty => 1,
            ChamberKind::DoubleDot => 2,
            ChamberKind::Dot => continue,
        };
        if c.t_set.len() <= need {
            violations.push(format!(
                "{} chamber at {:?} has |T| = {} (needs > {need})",
                c.kind.symbol(),
                c.witness,
                c.t_set.len()
            ));
        }
    }
    Ok(ChamberDecomposition { hypothesis_holds: violations.is_empty(), chambers, violations })
}

#[derive(Clone)]
enum Piece {
    Ray(usize),
    /// Open sector between ray k and ray k+1.
    Sector(usize),
}

fn planar_chambers(weights: &[Weight]) -> Result<Vec<Chamber>, McmError> {
    let mut rays: Vec<(Int, Int)> = Vec::new();
    for w in weights {
        let (a, b) = (w.coords()[0], w.coords()[1]);
        if a == 0 && b == 0 {
            continue;
        }
        let g = a.gcd(&b);
        rays.push((-b / g, a / g));
        rays.push((b / g, -a / g));
    }
    rays.sort_by(|&x, &y| angle_cmp(x, y));
    rays.dedup();
    let k = rays.len();
    if k < 4 {
        return Err(McmError::Degenerate);
    }
    let dir = |p: &Piece| -> Vec<Int> {
        match *p {
            Piece::Ray(i) => vec![rays[i].0, rays[i].1],
            Piece::Sector(i) => {
                let (a, b) = (rays[i], rays[(i + 1) % k]);
                vec![a.0 + b.0, a.1 + b.1]
            }
        }
    };
    let pieces: Vec<Piece> = (0..k).flat_map(|i| [Piece::Ray(i), Piece::Sector(i)]).collect();
    let ts: Vec<Vec<usize>> = pieces.iter().map(|p| t_set(weights, &dir(p))).collect();
    let np = pieces.len();
    // Rotate so that a class boundary sits at position 0.
    let start = (0..np)
        .find(|&i| ts[i] != ts[(i + np - 1) % np])
        .expect("at least two distinct sign patterns");
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for off in 0..np {
        let i = (start + off) % np;
        match groups.last_mut() {
            Some(g) if ts[*g.last().expect("non-empty")] == ts[i] => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    // The class containing directions just counterclockwise of (1, 0) comes first.
    let first_piece = if rays[0] == (1, 0) { 1 } else { np - 1 };
    let lead = groups.iter().position(|g| g.contains(&first_piece)).expect("piece is grouped");
    groups.rotate_left(lead);

    let mut out = Vec::with_capacity(groups.len());
    for g in groups {
        let first = &pieces[g[0]];
        let last = &pieces[*g.last().expect("non-empty")];
        let ray_of = |p: &Piece, ccw_end: bool| -> Vec<Int> {
            match *p {
                Piece::Ray(i) => vec![rays[i].0, rays[i].1],
                Piece::Sector(i) => {
                    let j = if ccw_end { (i + 1) % k } else { i };
                    vec![rays[j].0, rays[j].1]
                }
            }
        };
        let from_closed = matches!(first, Piece::Ray(_));
        let to_closed = matches!(last, Piece::Ray(_));
        let (kind, included) = if g.len() == 1 && from_closed {
            (ChamberKind::Empty, 2)
        } else {
            match (from_closed, to_closed) {
                (true, true) => (ChamberKind::Empty, 2),
                (false, false) => (ChamberKind::DoubleDot, 0),
                _ => (ChamberKind::Dot, 1),
            }
        };
        let witness_piece = g
            .iter()
            .map(|&i| &pieces[i])
            .find(|p| matches!(p, Piece::Sector(_)))
            .unwrap_or(first);
        out.push(Chamber {
            t_set: ts[g[0]].clone(),
            kind,
            witness: dir(witness_piece),
            boundary_rays_included: included,
            from: ray_of(first, false),
            to: ray_of(last, true),
        });
    }
    Ok(out)
}

pub fn non_mcm_cone(c: &Chamber, weights: &[Weight]) -> Result<NonMcmCone, McmError> {
    if c.kind == ChamberKind::Dot {
        return Err(McmError::SingleDotChamber);
    }
    let r = weights.first().map_or(0, Weight::rank);
    let in_t: BTreeSet<usize> = c.t_set.iter().copied().collect();
    let mut offset = Weight::zero(r);
    let mut gens = BTreeSet::new();
    for (i, w) in weights.iter().enumerate() {
        if in_t.contains(&i) {
            gens.insert(w.clone());
        } else {
            offset = &offset - w;
            gens.insert(-w);
        }
    }
    Ok(NonMcmCone { offset, generators: gens.into_iter().collect() })
}

/// Decides MCM-ness of `M_χ` for a fixed weight system.
#[derive(Debug, Clone)]
pub enum McmOracle {
    /// Rank one: `M_χ` is MCM iff `χ ∈ [−β+1, β−1]`.
    Interval { beta: Int },
    /// Rank two: MCM iff `χ` avoids every Λ_∅ / Λ_•• non-MCM cone.
    Chambers { decomposition: ChamberDecomposition, cones: Vec<NonMcmCone> },
}

impl McmOracle {
    /// Builds the oracle; requires a Gorenstein weight system and, in rank
    /// two, the criterion hypothesis.
    pub fn new(weights: &[Weight]) -> Result<Self, McmError> {
        let r = weights.first().map_or(0, Weight::rank);
        match r {
            1 => {
                let beta = -weights.iter().map(|w| w.coords()[0]).filter(|&x| x < 0).sum::<Int>();
                Ok(McmOracle::Interval { beta })
            }
            2 => {
                let decomposition = chamber_decomposition(weights)?;
                if !decomposition.hypothesis_holds {
                    return Err(McmError::Hypothesis(decomposition.violations.join("; ")));
                }
                let cones = decomposition
                    .chambers
                    .iter()
                    .filter(|c| c.kind != ChamberKind::Dot)
                    .map(|c| non_mcm_cone(c, weights))
                    .collect::<Result<_, _>>()?;
                Ok(McmOracle::Chambers { decomposition, cones })
            }
            _ => Err(McmError::UnsupportedRank(r)),
        }
    }

    pub fn is_mcm(&self, chi: &Weight) -> bool {
        match self {
            McmOracle::Interval { beta } => {
                let a = chi.coords()[0];
                -beta < a && a < *beta
            }
            McmOracle::Chambers { cones, .. } => cones.iter().all(|c| !c.contains(chi)),
        }
    }
}

/// One-shot MCM test; prefer [`McmOracle`] for repeated queries.
pub fn is_mcm(chi: &Weight, weights: &[Weight]) -> Result<bool, McmError> {
    Ok(McmOracle::new(weights)?.is_mcm(chi))
}

/// All MCM classes inside the box `bounds[j] = (lo, hi)`, lexicographically sorted.
pub fn mcm_region(weights: &[Weight], bounds: &[(Int, Int)]) -> Result<Vec<Weight>, McmError> {
    let oracle = McmOracle::new(weights)?;
    Ok(crate::divisorial::box_points(bounds).into_iter().filter(|z| oracle.is_mcm(z)).collect())
}
