//! Shared fixtures and independent oracles for the integration tests.
//!
//! Everything here is written against first principles (BFS, polygon
//! containment, subset sums) rather than the library's own algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::PathBuf;

use hibi_nccr::classify::{expand, find_unimodular_match};
use hibi_nccr::nccr::CertificateStep;
use hibi_nccr::{expected_weight_table, hibi_class_group, Family, Int, PosetHat, Weight};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn read_corpus(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(name)).unwrap_or_else(|e| panic!("reading corpus/{name}: {e}"))
}

pub fn load_poset(name: &str) -> PosetHat {
    PosetHat::parse(&read_corpus(name)).unwrap_or_else(|e| panic!("parsing corpus/{name}: {e}"))
}

/// Every `.poset` file of the bundled corpus, sorted by name.
pub fn corpus_posets() -> Vec<(String, PosetHat)> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".poset"))
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), load_poset(&n))).collect()
}

/// Corpus files of the five families with their parameters.
pub fn family_corpus() -> Vec<(&'static str, Family)> {
    vec![
        ("type1_m0_n1.poset", Family::I { m: 0, n: 1 }),
        ("type1_m1_n1.poset", Family::I { m: 1, n: 1 }),
        ("type1_m2_n3.poset", Family::I { m: 2, n: 3 }),
        ("type2_l1_m1_n1.poset", Family::II { l: 1, m: 1, n: 1 }),
        ("type3_l0_m2_n0.poset", Family::III { l: 0, m: 2, n: 0 }),
        ("type3_l1_m2_n1.poset", Family::III { l: 1, m: 2, n: 1 }),
        ("type4_m1_n1.poset", Family::IV { m: 1, n: 1 }),
        ("type4_m2_n3.poset", Family::IV { m: 2, n: 3 }),
        ("type5_n0.poset", Family::V { n: 0 }),
        ("type5_n1.poset", Family::V { n: 1 }),
        ("type5_n2.poset", Family::V { n: 2 }),
    ]
}

pub fn w(v: &[Int]) -> Weight {
    Weight(v.to_vec())
}

/// Default-tree weights of a rank-two poset mapped into the family's basis,
/// together with the map.
pub fn figure_weights(p: &PosetHat, f: Family) -> (Vec<Weight>, hibi_nccr::IntMatrix) {
    let (_, cg) = hibi_class_group(p, None).expect("class group");
    let g = find_unimodular_match(&cg.weights, &expand(&expected_weight_table(f))).expect("weights match family table");
    (cg.weights.iter().map(|x| Weight(g.mul_vec(x.coords()))).collect(), g)
}

// ---------------------------------------------------------------------------
// Polygons
// ---------------------------------------------------------------------------

/// Closed simple polygon containment (boundary included), exact integers.
pub fn in_polygon(p: (Int, Int), poly: &[(Int, Int)]) -> bool {
    let k = poly.len();
    let mut inside = false;
    for i in 0..k {
        let (a, b) = (poly[i], poly[(i + 1) % k]);
        let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
        let within = p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1);
        if cross == 0 && within {
            return true;
        }
        // Even–odd rule with a half-open crossing test on y.
        if (a.1 > p.1) != (b.1 > p.1) {
            // x-coordinate of the crossing compared to p.0, without division.
            let num = (b.0 - a.0) * (p.1 - a.1) + a.0 * (b.1 - a.1);
            let den = b.1 - a.1;
            let crosses_right = if den > 0 { num > p.0 * den } else { num < p.0 * den };
            if crosses_right {
                inside = !inside;
            }
        }
    }
    inside
}

pub fn lattice_points_in(poly: &[(Int, Int)], bounds: [(Int, Int); 2]) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    for x in bounds[0].0..=bounds[0].1 {
        for y in bounds[1].0..=bounds[1].1 {
            if in_polygon((x, y), poly) {
                out.insert(w(&[x, y]));
            }
        }
    }
    out
}

pub fn polygon_box(poly: &[(Int, Int)], margin: Int) -> [(Int, Int); 2] {
    let xs = poly.iter().map(|p| p.0);
    let ys = poly.iter().map(|p| p.1);
    [
        (xs.clone().min().unwrap() - margin, xs.max().unwrap() + margin),
        (ys.clone().min().unwrap() - margin, ys.max().unwrap() + margin),
    ]
}

/// MCM regions as drawn for each family, in the figure basis.
pub fn figure_mcm_polygon(f: Family) -> Option<Vec<(Int, Int)>> {
    let i = |v: usize| v as Int;
    match f {
        Family::I { m, n } => {
            let (m, n) = (i(m), i(n));
            Some(vec![
                (m + 2 * n + 1, n),
                (m + n + 1, 0),
                (m + n + 1, -n),
                (-(m + 2 * n + 1), -n),
                (-(m + n + 1), 0),
                (-(m + n + 1), n),
            ])
        }
        Family::II { l, m, n } => {
            let (a, b) = (i(l + m), i(m + n));
            Some(vec![(a, b), (-a, b), (-a, -b), (a, -b)])
        }
        Family::V { n } => {
            let k = i(n) + 1;
            Some(vec![
                (k, 2 * k),
                (k, k),
                (2 * k, k),
                (k, 0),
                (k, -k),
                (0, -k),
                (-k, -2 * k),
                (-k, -k),
                (-2 * k, -k),
                (-k, 0),
                (-k, k),
                (0, k),
            ])
        }
        Family::III { .. } | Family::IV { .. } => None,
    }
}

/// Closed-form conic polytope of each family as `(coeffs, bound)` meaning
/// `|⟨coeffs, c⟩| ≤ bound`, in the figure basis.
pub fn closed_form_conic(f: Family) -> Vec<([Int; 2], Int)> {
    let i = |v: usize| v as Int;
    match f {
        Family::I { m, n } => vec![([1, 0], i(m + n + 1)), ([0, 1], i(n)), ([1, -1], i(m + n + 1))],
        Family::II { l, m, n } => vec![([1, 0], i(l + m)), ([0, 1], i(m + n)), ([1, -1], i(l + m + n + 1))],
        Family::III { l, m, n } => vec![([1, 0], i(l + m + n + 1)), ([0, 1], i(m) - 1), ([1, -1], i(l + m + n + 1))],
        Family::IV { m, n } => vec![([1, 0], i(m)), ([0, 1], i(n))],
        Family::V { n } => vec![([1, 0], i(n + 1)), ([0, 1], i(n + 1)), ([1, -1], i(n + 1))],
    }
}

pub fn closed_form_contains(f: Family, z: &Weight) -> bool {
    closed_form_conic(f).iter().all(|(c, b)| (c[0] * z.0[0] + c[1] * z.0[1]).abs() <= *b)
}

// ---------------------------------------------------------------------------
// Semigroup membership by breadth-first search
// ---------------------------------------------------------------------------

/// Reachability of `target` from the origin by adding generators, exploring
/// only points with every coordinate in `[-bound, bound]`.
pub fn bfs_member(target: &[Int], gens: &[Vec<Int>], bound: Int) -> bool {
    let start = vec![0; target.len()];
    let mut seen: HashSet<Vec<Int>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        if p == target {
            return true;
        }
        for g in gens {
            let q: Vec<Int> = p.iter().zip(g).map(|(a, b)| a + b).collect();
            if q.iter().all(|c| c.abs() <= bound) && seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Certificate replay
// ---------------------------------------------------------------------------

/// Terms of the Koszul complex in positive degrees: `χ + Σ_{i∈S} β_i` over
/// non-empty index sets `S` of positively pairing weights.
pub fn koszul_by_subsets(chi: &Weight, lambda: &[Int], weights: &[Weight]) -> BTreeSet<Weight> {
    let pos: Vec<&Weight> = weights.iter().filter(|b| b.dot(lambda) > 0).collect();
    assert!(pos.len() < 24, "subset enumeration is for small inputs");
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << pos.len()) {
        let mut v = chi.clone();
        for (k, b) in pos.iter().enumerate() {
            if mask >> k & 1 == 1 {
                v = &v + b;
            }
        }
        out.insert(v);
    }
    out
}

/// Replays a certificate from scratch: every step's character must be
/// strictly below `L` along its direction and every Koszul term must already
/// be established. Returns the set of established characters.
pub fn independent_replay(
    steps: &[CertificateStep],
    l: &[Weight],
    weights: &[Weight],
) -> Result<BTreeSet<Weight>, String> {
    let mut known: BTreeSet<Weight> = l.iter().cloned().collect();
    for (i, s) in steps.iter().enumerate() {
        let c = s.chi.dot(&s.lambda);
        if !l.iter().all(|nu| c < nu.dot(&s.lambda)) {
            return Err(format!("step {i}: not separated"));
        }
        let terms = koszul_by_subsets(&s.chi, &s.lambda, weights);
        let listed: BTreeSet<Weight> = s.dependencies.iter().cloned().collect();
        if terms != listed {
            return Err(format!("step {i}: dependencies differ from the Koszul terms"));
        }
        if let Some(t) = terms.iter().find(|t| !known.contains(*t)) {
            return Err(format!("step {i}: {t} not established"));
        }
        known.insert(s.chi.clone());
    }
    Ok(known)
}

// ---------------------------------------------------------------------------
// Random posets
// ---------------------------------------------------------------------------

/// A random poset on `k` elements: a random strict order, reduced to covers.
pub fn random_poset<R: Rng>(rng: &mut R, k: usize, density: f64) -> PosetHat {
    let names: Vec<String> = (1..=k).map(|i| format!("p{i}")).collect();
    let mut less = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            less[i][j] = rng.gen_bool(density);
        }
    }
    // Transitive closure, then keep only covers.
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                if less[i][m] && less[m][j] {
                    less[i][j] = true;
                }
            }
        }
    }
    let mut covers = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if less[i][j] && !(0..k).any(|m| less[i][m] && less[m][j]) {
                covers.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    covers.shuffle(rng);
    PosetHat::new(&names, &covers).expect("random order is a valid poset")
}

/// The same poset with elements renamed by a random permutation.
pub fn relabel<R: Rng>(rng: &mut R, p: &PosetHat) -> PosetHat {
    let interior: Vec<String> = p.names()[1..p.num_vertices() - 1].to_vec();
    let mut fresh: Vec<String> = (0..interior.len()).map(|i| format!("q{i}")).collect();
    fresh.shuffle(rng);
    let rename = |s: &str| fresh[interior.iter().position(|x| x == s).expect("interior name")].clone();
    let covers: Vec<(String, String)> =
        p.covers().iter().map(|&(a, b)| (rename(p.name(a)), rename(p.name(b)))).collect();
    PosetHat::new(&fresh, &covers).expect("relabelled poset is valid")
}

/// A random spanning tree of the Hasse graph (Kruskal over a shuffled order).
pub fn random_tree<R: Rng>(rng: &mut R, p: &PosetHat) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.num_edges()).collect();
    order.shuffle(rng);
    let mut parent: Vec<usize> = (0..p.num_vertices()).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            v = p[v];
        }
        v
    }
    let mut tree = Vec::new();
    for k in order {
        let e = p.edge(k);
        let (a, b) = (find(&mut parent, e.lower), find(&mut parent, e.upper));
        if a != b {
            parent[a] = b;
            tree.push(k);
        }
    }
    tree
}

/// Connected random posets only (the Hasse graph of `P̂` is always connected,
/// so this just filters degenerate draws with no elements).
pub fn random_connected<R: Rng>(rng: &mut R, k: usize) -> PosetHat {
    let density = rng.gen_range(0.2..0.7);
    random_poset(rng, k, density)
}
