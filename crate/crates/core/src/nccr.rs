//! Splitting NCCR candidates `⊕_{χ∈L} M_χ`: MCM-ness of the endomorphism
//! ring and finite global dimension certificates.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::class_group::hibi_class_group;
use crate::classify::{classify, expand, expected_weight_table, find_unimodular_match, Family, ParamError, TypeParams};
use crate::divisorial::{conic_polytope, enumerate_conic};
use crate::mcm::McmOracle;
use crate::poset::PosetHat;
use crate::rank1::{base_window, Rank1Weights};
use crate::weight::Weight;
use crate::Int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NccrError {
    #[error("no weight pairs positively with direction {0:?}")]
    NoPositiveWeight(Vec<Int>),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("character set is empty")]
    EmptySet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Family { family: Family },
    Window { lo: Int, size: usize },
    User,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterSet {
    /// Sorted and free of repeats.
    pub chars: Vec<Weight>,
    pub provenance: Provenance,
}

impl CharacterSet {
    pub fn new(chars: Vec<Weight>, provenance: Provenance) -> Result<Self, NccrError> {
        if chars.is_empty() {
            return Err(NccrError::EmptySet);
        }
        let set: BTreeSet<Weight> = chars.into_iter().collect();
        Ok(CharacterSet { chars: set.into_iter().collect(), provenance })
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn contains(&self, chi: &Weight) -> bool {
        self.chars.binary_search(chi).is_ok()
    }

    /// Coordinatewise (min, max).
    pub fn bounding_box(&self) -> Vec<(Int, Int)> {
        let r = self.chars[0].rank();
        (0..r)
            .map(|j| {
                let vals = self.chars.iter().map(|c| c.coords()[j]);
                (vals.clone().min().unwrap_or(0), vals.max().unwrap_or(0))
            })
            .collect()
    }
}

/// The box `[0, A] × [0, B]` attached to each family.
pub fn build_l(f: Family) -> Result<CharacterSet, NccrError> {
    f.validate()?;
    let (a, b) = match f {
        Family::I { m, n } => (m + n + 1, n),
        Family::II { l, m, n } => (l + m, m + n),
        Family::III { l, m, n } => (l + m + n + 1, m - 1),
        Family::IV { m, n } => (m, n),
        Family::V { n } => (n + 1, n + 1),
    };
    let chars = crate::divisorial::box_points(&[(0, a as Int), (0, b as Int)]);
    CharacterSet::new(chars, Provenance::Family { family: f })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndReport {
    pub pairs_checked: usize,
    /// First `(χ, χ′, χ′ − χ)` with a non-MCM difference.
    pub failure: Option<(Weight, Weight, Weight)>,
}

impl EndReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// `Hom(M_χ, M_χ′) ≅ M_{χ′−χ}`: checks every ordered pair.
pub fn end_is_mcm(l: &CharacterSet, oracle: &McmOracle) -> EndReport {
    let mut checked = 0;
    for a in &l.chars {
        for b in &l.chars {
            checked += 1;
            let diff = b - a;
            if !oracle.is_mcm(&diff) {
                return EndReport { pairs_checked: checked, failure: Some((a.clone(), b.clone(), diff)) };
            }
        }
    }
    EndReport { pairs_checked: checked, failure: None }
}

/// `⟨λ, χ⟩ < ⟨λ, ν⟩` for every `ν ∈ L`.
pub fn separated(chi: &Weight, l: &[Weight], lambda: &[Int]) -> bool {
    let c = chi.dot(lambda);
    l.iter().all(|nu| c < nu.dot(lambda))
}

/// `χ + Σ c_k w_k` over positively pairing weight values `w_k` with
/// `0 ≤ c_k ≤ mult(w_k)` and `Σ c_k ≥ 1`; sorted, without repeats.
pub fn koszul_terms(chi: &Weight, lambda: &[Int], weights: &[Weight]) -> Result<Vec<Weight>, NccrError> {
    let mut mult: BTreeMap<&Weight, usize> = BTreeMap::new();
    for w in weights.iter().filter(|w| w.dot(lambda) > 0) {
        *mult.entry(w).or_default() += 1;
    }
    if mult.is_empty() {
        return Err(NccrError::NoPositiveWeight(lambda.to_vec()));
    }
    let mut sums: BTreeSet<Weight> = BTreeSet::from([Weight::zero(chi.rank())]);
    for (w, k) in mult {
        let mut next = BTreeSet::new();
        for s in &sums {
            let mut acc = s.clone();
            next.insert(acc.clone());
            for _ in 0..k {
                acc = &acc + w;
                next.insert(acc.clone());
            }
        }
        sums = next;
    }
    sums.remove(&Weight::zero(chi.rank()));
    Ok(sums.iter().map(|s| chi + s).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStep {
    pub chi: Weight,
    pub lambda: Vec<Int>,
    pub dependencies: Vec<Weight>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GldimCertificate {
    pub steps: Vec<CertificateStep>,
    pub goal: Vec<Weight>,
}

impl GldimCertificate {
    /// One JSON object per line, one line per step.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("steps serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_json_lines(text: &str) -> Result<Vec<CertificateStep>, serde_json::Error> {
        text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GldimFailure {
    pub uncovered: Vec<Weight>,
    /// Why each uncovered character could not be admitted.
    pub reasons: Vec<(Weight, String)>,
}

fn primitive(v: Vec<Int>) -> Option<Vec<Int>> {
    let g = v.iter().fold(0, |acc: Int, x| acc.gcd(x));
    (g != 0).then(|| v.into_iter().map(|x| x / g).collect())
}

/// Inward edge normals of the convex hull of planar points.
fn hull_normals(points: &[Weight]) -> Vec<Vec<Int>> {
    let mut pts: Vec<(Int, Int)> = points.iter().map(|p| (p.coords()[0], p.coords()[1])).collect();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return Vec::new();
    }
    let cross = |o: (Int, Int), a: (Int, Int), b: (Int, Int)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(Int, Int)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(Int, Int)>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    let k = hull.len();
    (0..k)
        .filter_map(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % k]);
            // Counterclockwise hull: inward normal is the left perpendicular.
            primitive(vec![-(b.1 - a.1), b.0 - a.0])
        })
        .collect()
}

/// Candidate separating directions for `chi`: axis and diagonal directions,
/// hull normals of `L`, and the direction from `chi` to the nearest point of
/// `L`'s bounding box.
pub fn default_directions(chi: &Weight, l: &CharacterSet) -> Vec<Vec<Int>> {
    let r = chi.rank();
    let mut dirs: Vec<Vec<Int>> = match r {
        1 => vec![vec![1], vec![-1]],
        _ => [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1)]
            .iter()
            .map(|&(a, b)| vec![a, b])
            .collect(),
    };
    if r == 2 {
        dirs.extend(hull_normals(&l.chars));
    }
    let bbox = l.bounding_box();
    let toward: Vec<Int> = chi.coords().iter().zip(&bbox).map(|(&c, &(lo, hi))| c.clamp(lo, hi) - c).collect();
    if let Some(d) = primitive(toward) {
        dirs.push(d);
    }
    let mut seen = BTreeSet::new();
    dirs.retain(|d| seen.insert(d.clone()));
    dirs
}

/// Chebyshev distance from `chi` to the box, then coordinates.
fn admission_key(chi: &Weight, bbox: &[(Int, Int)]) -> (Int, Weight) {
    let dist = chi
        .coords()
        .iter()
        .zip(bbox)
        .map(|(&c, &(lo, hi))| (lo - c).max(c - hi).max(0))
        .max()
        .unwrap_or(0);
    (dist, chi.clone())
}

struct Fixpoint<'a> {
    l: &'a CharacterSet,
    weights: &'a [Weight],
    directions: Option<&'a [Vec<Int>]>,
    established: BTreeSet<Weight>,
    steps: Vec<CertificateStep>,
}

impl Fixpoint<'_> {
    fn try_admit(&self, chi: &Weight) -> Result<CertificateStep, String> {
        let dirs = match self.directions {
            Some(d) => d.to_vec(),
            None => default_directions(chi, self.l),
        };
        let mut reason = String::from("no candidate direction separates it from L");
        for lambda in dirs {
            if !separated(chi, &self.l.chars, &lambda) {
                continue;
            }
            let Ok(terms) = koszul_terms(chi, &lambda, self.weights) else { continue };
            match terms.iter().find(|t| !self.established.contains(*t)) {
                None => return Ok(CertificateStep { chi: chi.clone(), lambda, dependencies: terms }),
                Some(t) => reason = format!("direction {lambda:?}: Koszul term {t} not established"),
            }
        }
        Err(reason)
    }

    /// Admits characters in order until nothing changes; returns the last
    /// rejection reason for everything left over.
    fn run(&mut self, mut pending: Vec<Weight>) -> Vec<(Weight, String)> {
        loop {
            let mut progress = false;
            let mut rest = Vec::new();
            let mut reasons = Vec::new();
            for chi in pending {
                match self.try_admit(&chi) {
                    Ok(step) => {
                        self.established.insert(chi);
                        self.steps.push(step);
                        progress = true;
                    }
                    Err(why) => {
                        reasons.push((chi.clone(), why));
                        rest.push(chi);
                    }
                }
            }
            pending = rest;
            if !progress || pending.is_empty() {
                return reasons;
            }
        }
    }
}

/// Searches for a replayable proof that every goal character has finite
/// projective dimension, by separation and Koszul induction from `L`.
///
/// The goal characters are tried first; if some remain, the search widens to
/// a window around `goal ∪ L` and the result is pruned to what the goal needs.
pub fn certify_gldim(
    l: &CharacterSet,
    weights: &[Weight],
    goal: &[Weight],
    directions: Option<&[Vec<Int>]>,
) -> Result<GldimCertificate, GldimFailure> {
    let bbox = l.bounding_box();
    let goal_set: BTreeSet<Weight> = goal.iter().cloned().collect();
    let mut pending: Vec<Weight> = goal_set.iter().filter(|c| !l.contains(c)).cloned().collect();
    pending.sort_by_key(|c| admission_key(c, &bbox));

    let mut fp = Fixpoint { l, weights, directions, established: l.chars.iter().cloned().collect(), steps: Vec::new() };
    fp.run(pending.clone());
    if goal_set.iter().all(|c| fp.established.contains(c)) {
        return Ok(GldimCertificate { steps: fp.steps, goal: goal_set.into_iter().collect() });
    }

    // Wider search over a window.
    let r = l.chars[0].rank();
    let reach: Vec<Int> = (0..r).map(|j| weights.iter().map(|w| w.coords()[j].abs()).sum()).collect();
    let mut window: Vec<(Int, Int)> = bbox.clone();
    for g in &goal_set {
        for (j, b) in window.iter_mut().enumerate() {
            b.0 = b.0.min(g.coords()[j]);
            b.1 = b.1.max(g.coords()[j]);
        }
    }
    for (b, d) in window.iter_mut().zip(&reach) {
        b.0 -= d;
        b.1 += d;
    }
    let mut all: Vec<Weight> =
        crate::divisorial::box_points(&window).into_iter().filter(|c| !l.contains(c)).collect();
    all.sort_by_key(|c| admission_key(c, &bbox));
    let mut wide = Fixpoint { l, weights, directions, established: l.chars.iter().cloned().collect(), steps: Vec::new() };
    let reasons = wide.run(all);
    let uncovered: Vec<Weight> = goal_set.iter().filter(|c| !wide.established.contains(*c)).cloned().collect();
    if !uncovered.is_empty() {
        let reasons = reasons.into_iter().filter(|(c, _)| uncovered.contains(c)).collect();
        return Err(GldimFailure { uncovered, reasons });
    }
    // Keep only the steps the goal depends on, in admission order.
    let by_chi: BTreeMap<Weight, usize> = wide.steps.iter().enumerate().map(|(i, s)| (s.chi.clone(), i)).collect();
    let mut needed = BTreeSet::new();
    let mut stack: Vec<Weight> = goal_set.iter().filter(|c| !l.contains(c)).cloned().collect();
    while let Some(c) = stack.pop() {
        if let Some(&i) = by_chi.get(&c) {
            if needed.insert(i) {
                stack.extend(wide.steps[i].dependencies.iter().filter(|d| !l.contains(d)).cloned());
            }
        }
    }
    let steps = needed.into_iter().map(|i| wide.steps[i].clone()).collect();
    Ok(GldimCertificate { steps, goal: goal_set.into_iter().collect() })
}

/// Checks a certificate against `L` and the weights.
pub fn replay(steps: &[CertificateStep], l: &CharacterSet, weights: &[Weight], goal: &[Weight]) -> Result<(), String> {
    let mut known: BTreeSet<Weight> = l.chars.iter().cloned().collect();
    for (i, s) in steps.iter().enumerate() {
        if !separated(&s.chi, &l.chars, &s.lambda) {
            return Err(format!("step {i}: {} is not separated by {:?}", s.chi, s.lambda));
        }
        let terms = koszul_terms(&s.chi, &s.lambda, weights).map_err(|e| format!("step {i}: {e}"))?;
        if terms != s.dependencies {
            return Err(format!("step {i}: dependency list differs from the Koszul terms"));
        }
        if let Some(t) = terms.iter().find(|t| !known.contains(*t)) {
            return Err(format!("step {i}: term {t} is not yet established"));
        }
        known.insert(s.chi.clone());
    }
    match goal.iter().find(|g| !known.contains(*g)) {
        Some(g) => Err(format!("goal character {g} is not covered")),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    NotGorenstein,
    PolynomialExtension { edge: String },
    Unsupported { reason: String },
    EndNotMcm,
    GldimUncertified,
}

/// Everything the verification pipeline produced, stage by stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NccrReport {
    pub verdict: Verdict,
    pub class_group_rank: usize,
    pub classification: Option<TypeParams>,
    /// Maps default-tree coordinates to the family's basis (rank two only).
    pub basis_change: Option<Vec<Vec<Int>>>,
    /// Divisor weights in the coordinates used for `L`.
    pub weights: Vec<Weight>,
    pub l: Option<CharacterSet>,
    pub end: Option<EndReport>,
    pub conic: Vec<Weight>,
    pub certificate: Option<GldimCertificate>,
    pub failure: Option<GldimFailure>,
}

impl NccrReport {
    fn rejected(verdict: Verdict, rank: usize) -> Self {
        NccrReport {
            verdict,
            class_group_rank: rank,
            classification: None,
            basis_change: None,
            weights: Vec::new(),
            l: None,
            end: None,
            conic: Vec::new(),
            certificate: None,
            failure: None,
        }
    }
}

/// Runs purity, classification, `L`, the MCM check on `End(M_L)` and the
/// global-dimension certificate over all conic classes.
///
/// Finite projective dimension on conic classes is what gets certified; its
/// extension to every character is a known theorem and is not re-derived.
pub fn verify_nccr(p: &PosetHat) -> Result<NccrReport, crate::Error> {
    let rank = (p.num_edges() + 1).saturating_sub(p.num_vertices());
    if !p.is_pure() {
        return Ok(NccrReport::rejected(Verdict::NotGorenstein, rank));
    }
    if let Some(e) = p.polynomial_extension_edge() {
        return Ok(NccrReport::rejected(Verdict::PolynomialExtension { edge: PosetHat::edge_label(e) }, rank));
    }
    let (tree, cg) = hibi_class_group(p, None)?;
    let circuits = p.chordless_circuits();
    let cp = conic_polytope(&circuits, &tree, &cg);
    let conic = enumerate_conic(&cp)?;
    match rank {
        1 => {
            let w = Rank1Weights::from_class_weights(&cg.weights)?;
            let window = base_window(&w);
            let l = CharacterSet::new(window.characters(), Provenance::Window { lo: window.lo, size: window.size })?;
            let mut report = NccrReport::rejected(Verdict::Verified, rank);
            report.weights = cg.weights.clone();
            finish(report, l, &cg.weights, conic)
        }
        2 => {
            let tp = match classify(p) {
                Ok(tp) => tp,
                Err(why) => {
                    return Ok(NccrReport::rejected(Verdict::Unsupported { reason: why.to_string() }, rank));
                }
            };
            let expected = expand(&expected_weight_table(tp.family));
            let g = find_unimodular_match(&cg.weights, &expected).ok_or_else(|| {
                crate::Error::Internal(format!("weights of {} do not match the family table", tp.family))
            })?;
            let map = |w: &Weight| Weight(g.mul_vec(w.coords()));
            let weights: Vec<Weight> = cg.weights.iter().map(map).collect();
            let mut conic: Vec<Weight> = conic.iter().map(map).collect();
            conic.sort();
            let l = build_l(tp.family)?;
            let mut report = NccrReport::rejected(Verdict::Verified, rank);
            report.classification = Some(tp);
            report.basis_change = Some(g.to_rows());
            report.weights = weights.clone();
            finish(report, l, &weights, conic)
        }
        r => Ok(NccrReport::rejected(
            Verdict::Unsupported { reason: format!("class group rank {r}; only ranks 1 and 2 are handled") },
            rank,
        )),
    }
}

fn finish(mut report: NccrReport, l: CharacterSet, weights: &[Weight], conic: Vec<Weight>) -> Result<NccrReport, crate::Error> {
    let oracle = McmOracle::new(weights)?;
    let end = end_is_mcm(&l, &oracle);
    report.conic = conic;
    if !end.ok() {
        report.verdict = Verdict::EndNotMcm;
        report.end = Some(end);
        report.l = Some(l);
        return Ok(report);
    }
    report.end = Some(end);
    match certify_gldim(&l, weights, &report.conic, None) {
        Ok(cert) => report.certificate = Some(cert),
        Err(fail) => {
            report.verdict = Verdict::GldimUncertified;
            report.failure = Some(fail);
        }
    }
    report.l = Some(l);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[Int]) -> Weight {
        Weight(v.to_vec())
    }

    fn type_one_small() -> Vec<Weight> {
        crate::classify::expand(&crate::classify::expected_weight_table(Family::I { m: 0, n: 1 }))
    }

    #[test]
    fn koszul_examples() {
        let ws = type_one_small();
        assert_eq!(koszul_terms(&w(&[0, -1]), &[0, 1], &ws).unwrap(), vec![w(&[0, 0]), w(&[0, 1])]);
        assert_eq!(
            koszul_terms(&w(&[-1, 0]), &[1, 0], &ws).unwrap(),
            vec![w(&[0, 0]), w(&[1, 0]), w(&[2, 0])]
        );
        let iv = crate::classify::expand(&crate::classify::expected_weight_table(Family::IV { m: 1, n: 1 }));
        assert_eq!(koszul_terms(&w(&[0, 0]), &[1, 1], &iv).unwrap().len(), 8);
        assert!(koszul_terms(&w(&[0]), &[1], &[w(&[-1])]).is_err());
    }

    #[test]
    fn separation_examples() {
        let l = build_l(Family::I { m: 0, n: 1 }).unwrap();
        assert!(separated(&w(&[0, -1]), &l.chars, &[0, 1]));
        assert!(separated(&w(&[-1, 0]), &l.chars, &[1, 0]));
        assert!(!separated(&w(&[1, 1]), &l.chars, &[1, 0]));
    }

    #[test]
    fn empty_goal_gives_empty_certificate() {
        let l = build_l(Family::IV { m: 1, n: 1 }).unwrap();
        let ws = crate::classify::expand(&crate::classify::expected_weight_table(Family::IV { m: 1, n: 1 }));
        let cert = certify_gldim(&l, &ws, &l.chars, None).unwrap();
        assert!(cert.steps.is_empty());
    }

    #[test]
    fn hull_normals_of_square() {
        let mut n = hull_normals(&[w(&[0, 0]), w(&[1, 0]), w(&[0, 1]), w(&[1, 1])]);
        n.sort();
        assert_eq!(n, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
    }
}
