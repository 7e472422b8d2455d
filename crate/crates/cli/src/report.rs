//! One report per subcommand, rendered as TSV or JSON.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use anyhow::{bail, Result};
use serde::Serialize;

use hibi_nccr::class_group::ClassBasis;
use hibi_nccr::classify::{expand, find_unimodular_match, Orientation};
use hibi_nccr::divisorial::conic_classes_from_weights;
use hibi_nccr::mcm::{ChamberDecomposition, McmError};
use hibi_nccr::nccr::{replay, GldimCertificate, Verdict};
use hibi_nccr::poset::PurityReport;
use hibi_nccr::rank1::{base_window, beta_invariant, mutate_window, End, Rank1Error, Rank1Weights, Window};
use hibi_nccr::{
    chamber_decomposition, classify as classify_poset, conic_polytope, enumerate_conic, exchange_graph,
    expected_weight_table, generate as generate_family, multiset, verify_nccr, Family, Int, IntMatrix, McmOracle,
    PosetHat, TypeParams, Weight,
};

use crate::input::{Loaded, Source};
use crate::{Format, Output};

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn render<T: Serialize>(format: Format, value: &T, tsv: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => json(value),
        Format::Tsv => tsv(),
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    if items.is_empty() {
        return "-".into();
    }
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn tsv_point(w: &Weight) -> String {
    join(w.coords(), "\t")
}

#[derive(Serialize)]
struct InputInfo {
    path: String,
    kind: &'static str,
    /// Vertices of the Hasse graph including `0̂` and `1̂` (posets only).
    vertices: Option<usize>,
    divisors: usize,
    dim: usize,
}

fn input_info(l: &Loaded) -> InputInfo {
    let n = l.class_group.weights.len();
    match &l.source {
        Source::Poset { poset, .. } => InputInfo {
            path: l.path.clone(),
            kind: "poset",
            vertices: Some(poset.num_vertices()),
            divisors: n,
            dim: poset.d(),
        },
        Source::Cone { dim, rays } => {
            InputInfo { path: l.path.clone(), kind: "cone", vertices: None, divisors: *rays, dim: *dim }
        }
    }
}

/// Coordinate names: `z<k>` for cotree edge `e<k>`, otherwise `c1, c2, …`.
fn coordinate_names(l: &Loaded) -> Vec<String> {
    match &l.class_group.basis {
        ClassBasis::Cotree(edges) => edges.iter().map(|&k| format!("z{}", k + 1)).collect(),
        ClassBasis::Hermite => (1..=l.class_group.rank).map(|j| format!("c{j}")).collect(),
    }
}

#[derive(Serialize)]
struct WeightCount {
    weight: Weight,
    count: usize,
}

fn weight_counts(ws: &[Weight]) -> Vec<WeightCount> {
    multiset(ws).into_iter().map(|(weight, count)| WeightCount { weight, count }).collect()
}

fn multiset_text(ws: &[Weight]) -> String {
    join(&multiset(ws).iter().map(|(w, k)| format!("{w}x{k}")).collect::<Vec<_>>(), " ")
}

/// Conic classes in the class-group coordinates of the input.
fn conic_points(l: &Loaded) -> Result<Vec<Weight>> {
    match l.poset() {
        Some((p, tree)) => {
            let cp = conic_polytope(&p.chordless_circuits(), tree, &l.class_group);
            Ok(enumerate_conic(&cp)?)
        }
        None => Ok(conic_classes_from_weights(&l.class_group.weights)),
    }
}

#[derive(Serialize)]
struct Classification {
    #[serde(rename = "type")]
    tag: &'static str,
    params: Vec<usize>,
    orientation: Orientation,
    family: String,
}

impl From<TypeParams> for Classification {
    fn from(tp: TypeParams) -> Self {
        Classification {
            tag: tp.family.tag(),
            params: tp.family.params(),
            orientation: tp.orientation,
            family: tp.family.to_string(),
        }
    }
}

fn orientation_text(o: Orientation) -> &'static str {
    match o {
        Orientation::AsGiven => "as-given",
        Orientation::Flipped => "flipped",
    }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct DivisorInfo {
    label: String,
    lower: Option<String>,
    upper: Option<String>,
    weight: Weight,
}

#[derive(Serialize)]
struct InequalityInfo {
    coeffs: Vec<Int>,
    lo: Int,
    hi: Int,
    text: String,
}

#[derive(Serialize)]
struct AnalyzeReport {
    input: InputInfo,
    purity: Option<PurityReport>,
    gorenstein: bool,
    polynomial_extension_edge: Option<String>,
    tree_edges: Option<Vec<String>>,
    class_group_rank: usize,
    torsion: Vec<Int>,
    basis: Vec<String>,
    divisors: Vec<DivisorInfo>,
    relations: Vec<String>,
    weight_multiset: Vec<WeightCount>,
    conic_polytope: Option<Vec<InequalityInfo>>,
    conic_count: usize,
    classification: Option<Classification>,
    classification_rejected: Option<String>,
}

pub fn analyze(l: &Loaded, format: Format) -> Result<Output> {
    let cg = &l.class_group;
    let vars = coordinate_names(l);
    let label = |k: usize| l.divisor_label(k);
    let divisors: Vec<DivisorInfo> = cg
        .weights
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let (lower, upper) = match l.poset() {
                Some((p, _)) => {
                    let e = p.edge(k);
                    (Some(p.name(e.lower).to_string()), Some(p.name(e.upper).to_string()))
                }
                None => (None, None),
            };
            DivisorInfo { label: label(k), lower, upper, weight: w.clone() }
        })
        .collect();
    let basis: Vec<String> = match &cg.basis {
        ClassBasis::Cotree(edges) => edges.iter().map(|&k| label(k)).collect(),
        ClassBasis::Hermite => vec!["hermite".into()],
    };
    let gorenstein = cg.is_gorenstein();
    let mut report = AnalyzeReport {
        input: input_info(l),
        purity: None,
        gorenstein,
        polynomial_extension_edge: None,
        tree_edges: None,
        class_group_rank: cg.rank,
        torsion: cg.torsion.clone(),
        basis,
        divisors,
        relations: cg.relations(label),
        weight_multiset: weight_counts(&cg.weights),
        conic_polytope: None,
        conic_count: conic_points(l)?.len(),
        classification: None,
        classification_rejected: None,
    };
    if let Some((p, tree)) = l.poset() {
        report.purity = Some(p.purity());
        report.polynomial_extension_edge = p.polynomial_extension_edge().map(PosetHat::edge_label);
        report.tree_edges = Some(tree.tree_edges.iter().map(|&k| label(k)).collect());
        let cp = conic_polytope(&p.chordless_circuits(), tree, cg);
        report.conic_polytope = Some(
            cp.ineqs
                .iter()
                .map(|q| InequalityInfo { coeffs: q.coeffs.clone(), lo: q.lo, hi: q.hi, text: q.render(&vars) })
                .collect(),
        );
        if cg.rank == 2 {
            match classify_poset(p) {
                Ok(tp) => report.classification = Some(tp.into()),
                Err(why) => report.classification_rejected = Some(why.to_string()),
            }
        }
    }
    let text = render(format, &report, || {
        let mut s = String::new();
        let _ = writeln!(s, "input\t{}", report.input.path);
        let _ = writeln!(s, "kind\t{}", report.input.kind);
        if let Some(v) = report.input.vertices {
            let _ = writeln!(s, "vertices\t{v}");
        }
        let _ = writeln!(s, "divisors\t{}", report.input.divisors);
        let _ = writeln!(s, "dim\t{}", report.input.dim);
        if let Some(pr) = report.purity {
            let _ = writeln!(s, "pure\t{}", pr.pure);
        }
        let _ = writeln!(s, "gorenstein\t{}", report.gorenstein);
        if report.input.kind == "poset" {
            let _ = writeln!(s, "polynomial_extension_edge\t{}", report.polynomial_extension_edge.as_deref().unwrap_or("-"));
        }
        if let Some(t) = &report.tree_edges {
            let _ = writeln!(s, "tree\t{}", join(t, ","));
        }
        let _ = writeln!(s, "basis\t{}", join(&report.basis, ","));
        let _ = writeln!(s, "class_group_rank\t{}", report.class_group_rank);
        let _ = writeln!(s, "torsion\t{}", join(&report.torsion, ","));
        for d in &report.divisors {
            let ends = match (&d.lower, &d.upper) {
                (Some(a), Some(b)) => format!("\t{a}\t{b}"),
                _ => String::new(),
            };
            let _ = writeln!(s, "divisor\t{}{}\t{}", d.label, ends, d.weight);
        }
        for r in &report.relations {
            let _ = writeln!(s, "relation\t{r}");
        }
        let _ = writeln!(s, "weights\t{}", multiset_text(&cg.weights));
        if let Some(ineqs) = &report.conic_polytope {
            for q in ineqs {
                let _ = writeln!(s, "conic_inequality\t{}", q.text);
            }
        }
        let _ = writeln!(s, "conic_count\t{}", report.conic_count);
        if let Some(c) = &report.classification {
            let _ = writeln!(s, "classification\t{}\t{}", c.family, orientation_text(c.orientation));
        }
        if let Some(r) = &report.classification_rejected {
            let _ = writeln!(s, "classification\trejected\t{r}");
        }
        s
    });
    Ok(Output { text, negative: !gorenstein })
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
enum ClassifyResult {
    Classified {
        #[serde(flatten)]
        classification: Classification,
        /// Figure weight table of the family.
        weight_table: Vec<WeightCount>,
        /// Maps tree-basis coordinates to the figure's basis.
        basis_change: Option<Vec<Vec<Int>>>,
    },
    Rejected {
        reason: String,
    },
}

#[derive(Serialize)]
struct ClassifyReport {
    input: InputInfo,
    result: ClassifyResult,
}

pub fn classify(l: &Loaded, format: Format) -> Result<Output> {
    let Some((p, _)) = l.poset() else { bail!("classify needs a poset file, got a cone file") };
    let result = match classify_poset(p) {
        Ok(tp) => {
            let table = expected_weight_table(tp.family);
            let g = find_unimodular_match(&l.class_group.weights, &expand(&table));
            ClassifyResult::Classified {
                classification: tp.into(),
                weight_table: table.into_iter().map(|(weight, count)| WeightCount { weight, count }).collect(),
                basis_change: g.map(|g| g.to_rows()),
            }
        }
        Err(why) => ClassifyResult::Rejected { reason: why.to_string() },
    };
    let negative = matches!(result, ClassifyResult::Rejected { .. });
    let report = ClassifyReport { input: input_info(l), result };
    let text = render(format, &report, || match &report.result {
        ClassifyResult::Classified { classification: c, weight_table, .. } => {
            let mut s = String::new();
            let _ = writeln!(s, "type\t{}", c.tag);
            let _ = writeln!(s, "params\t{}", join(&c.params, ","));
            let _ = writeln!(s, "orientation\t{}", orientation_text(c.orientation));
            let _ = writeln!(s, "family\t{}", c.family);
            let table: Vec<String> = weight_table.iter().map(|wc| format!("{}x{}", wc.weight, wc.count)).collect();
            let _ = writeln!(s, "weight_table\t{}", table.join(" "));
            s
        }
        ClassifyResult::Rejected { reason } => format!("rejected\t{reason}\n"),
    });
    Ok(Output { text, negative })
}

// ---------------------------------------------------------------------------
// conic
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ConicReport {
    input: InputInfo,
    coordinates: Vec<String>,
    points: Vec<Weight>,
}

pub fn conic(l: &Loaded, format: Format) -> Result<Output> {
    let points = conic_points(l)?;
    let report = ConicReport { input: input_info(l), coordinates: coordinate_names(l), points };
    let text = render(format, &report, || report.points.iter().map(|z| tsv_point(z) + "\n").collect());
    Ok(Output { text, negative: false })
}

// ---------------------------------------------------------------------------
// mcm-region
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Cell {
    point: Weight,
    mcm: bool,
    conic: bool,
}

#[derive(Serialize)]
struct McmRegionReport {
    input: InputInfo,
    coordinates: Vec<String>,
    basis_change: Option<Vec<Vec<Int>>>,
    weights: Vec<WeightCount>,
    bounds: Vec<(Int, Int)>,
    chambers: Option<ChamberDecomposition>,
    problem: Option<String>,
    mcm_count: usize,
    conic_count: usize,
    cells: Vec<Cell>,
}

fn cell_text(c: &Cell) -> &'static str {
    match (c.mcm, c.conic) {
        (true, true) => "mcm+conic",
        (true, false) => "mcm",
        (false, false) => "none",
        // Would contradict conic ⊆ MCM; shown rather than hidden.
        (false, true) => "conic",
    }
}

pub fn mcm_region(l: &Loaded, bounds: Option<Vec<(Int, Int)>>, figure_basis: bool, format: Format) -> Result<Output> {
    let cg = &l.class_group;
    let r = cg.rank;
    if r != 1 && r != 2 {
        bail!("mcm-region handles class group rank 1 or 2, this input has rank {r}");
    }
    let mut weights = cg.weights.clone();
    let mut conic = conic_points(l)?;
    let mut coordinates = coordinate_names(l);
    let mut basis_change = None;
    if figure_basis {
        let Some((p, _)) = l.poset() else { bail!("--figure-basis needs a poset file") };
        let tp = classify_poset(p).map_err(|why| anyhow::anyhow!("--figure-basis: poset does not classify ({why})"))?;
        let g: IntMatrix = find_unimodular_match(&weights, &expand(&expected_weight_table(tp.family)))
            .ok_or_else(|| anyhow::anyhow!("no unimodular map onto the {} table", tp.family))?;
        let map = |w: &Weight| Weight(g.mul_vec(w.coords()));
        weights = weights.iter().map(map).collect();
        conic = conic.iter().map(map).collect();
        coordinates = vec!["c1".into(), "c2".into()];
        basis_change = Some(g.to_rows());
    }
    let conic: BTreeSet<Weight> = conic.into_iter().collect();
    let bounds = match bounds {
        Some(b) if b.len() == r => b,
        Some(b) => bail!("--box gives {} ranges but the class group has rank {r}", b.len()),
        None => (0..r)
            .map(|j| {
                let lo = conic.iter().map(|z| z.coords()[j]).min().unwrap_or(0);
                let hi = conic.iter().map(|z| z.coords()[j]).max().unwrap_or(0);
                (2 * lo - 1, 2 * hi + 1)
            })
            .collect(),
    };
    let mut report = McmRegionReport {
        input: input_info(l),
        coordinates,
        basis_change,
        weights: weight_counts(&weights),
        bounds: bounds.clone(),
        chambers: None,
        problem: None,
        mcm_count: 0,
        conic_count: 0,
        cells: Vec::new(),
    };
    if !cg.is_gorenstein() {
        report.problem = Some("weights do not sum to zero (not Gorenstein)".into());
    } else {
        if r == 2 {
            report.chambers = Some(chamber_decomposition(&weights)?);
        }
        match McmOracle::new(&weights) {
            Ok(oracle) => {
                report.cells = hibi_nccr::divisorial::box_points(&bounds)
                    .into_iter()
                    .map(|z| Cell { mcm: oracle.is_mcm(&z), conic: conic.contains(&z), point: z })
                    .collect();
                report.mcm_count = report.cells.iter().filter(|c| c.mcm).count();
                report.conic_count = report.cells.iter().filter(|c| c.conic).count();
            }
            Err(McmError::Hypothesis(v)) => report.problem = Some(format!("criterion hypothesis fails: {v}")),
            Err(e) => return Err(e.into()),
        }
    }
    let negative = report.problem.is_some();
    let text = render(format, &report, || {
        let mut s = String::new();
        if let Some(p) = &report.problem {
            let _ = writeln!(s, "# {p}");
            return s;
        }
        if r == 1 {
            let _ = writeln!(s, "{}\tclass", report.coordinates[0]);
            for c in &report.cells {
                let _ = writeln!(s, "{}\t{}", c.point, cell_text(c));
            }
            return s;
        }
        let (x0, x1) = bounds[0];
        let (y0, y1) = bounds[1];
        let width = (x1 - x0 + 1) as usize;
        let _ = write!(s, "{}\\{}", report.coordinates[1], report.coordinates[0]);
        for x in x0..=x1 {
            let _ = write!(s, "\t{x}");
        }
        s.push('\n');
        // Cells are sorted by (c1, c2); print rows from the top c2 down.
        for y in (y0..=y1).rev() {
            let _ = write!(s, "{y}");
            for i in 0..width {
                let idx = i * (y1 - y0 + 1) as usize + (y - y0) as usize;
                let _ = write!(s, "\t{}", cell_text(&report.cells[idx]));
            }
            s.push('\n');
        }
        s
    });
    Ok(Output { text, negative })
}

// ---------------------------------------------------------------------------
// nccr
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct EndSummary {
    pairs_checked: usize,
    failure: Option<(Weight, Weight, Weight)>,
}

#[derive(Serialize)]
struct CertificateSummary {
    steps: usize,
    goal: usize,
}

#[derive(Serialize)]
struct NccrVerifyReport {
    input: InputInfo,
    verdict: Verdict,
    class_group_rank: usize,
    classification: Option<Classification>,
    basis_change: Option<Vec<Vec<Int>>>,
    weights: Vec<WeightCount>,
    l: Option<Vec<Weight>>,
    l_size: usize,
    end: Option<EndSummary>,
    conic_count: usize,
    certificate: Option<CertificateSummary>,
    uncovered: Vec<Weight>,
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Verified => "verified".into(),
        Verdict::NotGorenstein => "not-gorenstein".into(),
        Verdict::PolynomialExtension { edge } => format!("polynomial-extension\t{edge}"),
        Verdict::Unsupported { reason } => format!("unsupported\t{reason}"),
        Verdict::EndNotMcm => "end-not-mcm".into(),
        Verdict::GldimUncertified => "gldim-uncertified".into(),
    }
}

pub fn nccr_verify(l: &Loaded, format: Format) -> Result<(Output, Option<String>)> {
    let Some((p, _)) = l.poset() else { bail!("nccr verify needs a poset file; use `z1` for rank-one cones") };
    let rep = verify_nccr(p)?;
    let cert: Option<&GldimCertificate> = rep.certificate.as_ref();
    let report = NccrVerifyReport {
        input: input_info(l),
        verdict: rep.verdict.clone(),
        class_group_rank: rep.class_group_rank,
        classification: rep.classification.map(Into::into),
        basis_change: rep.basis_change.clone(),
        weights: weight_counts(&rep.weights),
        l: rep.l.as_ref().map(|s| s.chars.clone()),
        l_size: rep.l.as_ref().map_or(0, |s| s.len()),
        end: rep.end.as_ref().map(|e| EndSummary { pairs_checked: e.pairs_checked, failure: e.failure.clone() }),
        conic_count: rep.conic.len(),
        certificate: cert.map(|c| CertificateSummary { steps: c.steps.len(), goal: c.goal.len() }),
        uncovered: rep.failure.as_ref().map(|f| f.uncovered.clone()).unwrap_or_default(),
    };
    let text = render(format, &report, || {
        let mut s = String::new();
        let _ = writeln!(s, "input\t{}", report.input.path);
        let _ = writeln!(s, "verdict\t{}", verdict_text(&report.verdict));
        let _ = writeln!(s, "class_group_rank\t{}", report.class_group_rank);
        if let Some(c) = &report.classification {
            let _ = writeln!(s, "classification\t{}\t{}", c.family, orientation_text(c.orientation));
        }
        if let Some(g) = &report.basis_change {
            let rows: Vec<String> = g.iter().map(|r| join(r, " ")).collect();
            let _ = writeln!(s, "basis_change\t{}", rows.join("; "));
        }
        if !rep.weights.is_empty() {
            let _ = writeln!(s, "weights\t{}", multiset_text(&rep.weights));
        }
        if let Some(chars) = &report.l {
            let _ = writeln!(s, "l_size\t{}", report.l_size);
            let _ = writeln!(s, "l\t{}", join(chars, " "));
        }
        if let Some(e) = &report.end {
            let _ = writeln!(s, "end_pairs_checked\t{}", e.pairs_checked);
            if let Some((a, b, d)) = &e.failure {
                let _ = writeln!(s, "end_failure\t{a}\t{b}\t{d}");
            }
        }
        if report.l.is_some() {
            let _ = writeln!(s, "conic_count\t{}", report.conic_count);
        }
        if let Some(c) = &report.certificate {
            let _ = writeln!(s, "certificate_steps\t{}", c.steps);
            let _ = writeln!(s, "certificate_goal\t{}", c.goal);
        }
        if !report.uncovered.is_empty() {
            let _ = writeln!(s, "uncovered\t{}", join(&report.uncovered, " "));
        }
        s
    });
    let negative = rep.verdict != Verdict::Verified;
    Ok((Output { text, negative }, cert.map(GldimCertificate::to_json_lines)))
}

#[derive(Serialize)]
struct ReplayReport {
    input: InputInfo,
    steps: usize,
    accepted: bool,
    error: Option<String>,
}

pub fn nccr_replay(l: &Loaded, certificate: &str, format: Format) -> Result<Output> {
    let Some((p, _)) = l.poset() else { bail!("nccr replay needs a poset file") };
    let steps = GldimCertificate::from_json_lines(certificate)?;
    let rep = verify_nccr(p)?;
    let Some(set) = rep.l.as_ref() else {
        bail!("no character set for this poset (verdict {})", verdict_text(&rep.verdict))
    };
    let outcome = replay(&steps, set, &rep.weights, &rep.conic);
    let report = ReplayReport { input: input_info(l), steps: steps.len(), accepted: outcome.is_ok(), error: outcome.err() };
    let text = render(format, &report, || {
        let mut s = format!("steps\t{}\n", report.steps);
        match &report.error {
            None => s.push_str("replay\taccepted\n"),
            Some(e) => {
                let _ = writeln!(s, "replay\trejected\t{e}");
            }
        }
        s
    });
    Ok(Output { text, negative: !report.accepted })
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

pub fn generate(tag: &str, l: Option<usize>, m: Option<usize>, n: Option<usize>) -> Result<Output> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow::anyhow!("type {tag} needs --{name}"));
    let params = match tag {
        "I" | "IV" => vec![need(m, "m")?, need(n, "n")?],
        "II" | "III" => vec![need(l, "l")?, need(m, "m")?, need(n, "n")?],
        "V" => vec![need(n, "n")?],
        other => bail!("unknown type `{other}`; expected one of I, II, III, IV, V"),
    };
    let family = Family::from_tag(tag, &params)?;
    let g = generate_family(family)?;
    let mut text = format!("# {family}\n");
    let _ = writeln!(
        text,
        "# figure basis: {} = (1,0), {} = (0,1)",
        PosetHat::edge_label(g.a),
        PosetHat::edge_label(g.b)
    );
    text.push_str(&g.poset.serialize());
    Ok(Output { text, negative: false })
}

// ---------------------------------------------------------------------------
// z1
// ---------------------------------------------------------------------------

fn rank_one_weights(l: &Loaded) -> Result<std::result::Result<Rank1Weights, Rank1Error>> {
    if l.class_group.rank != 1 {
        bail!("z1 commands need class group rank 1, this input has rank {}", l.class_group.rank);
    }
    Ok(Rank1Weights::from_class_weights(&l.class_group.weights))
}

fn rejected(format: Format, l: &Loaded, err: &Rank1Error) -> Output {
    #[derive(Serialize)]
    struct Rejected<'a> {
        input: InputInfo,
        rejected: &'a str,
    }
    let reason = err.to_string();
    let text = render(format, &Rejected { input: input_info(l), rejected: &reason }, || format!("rejected\t{reason}\n"));
    Output { text, negative: true }
}

#[derive(Serialize)]
struct Z1Report {
    input: InputInfo,
    /// Class of each prime divisor, in input order.
    divisor_weights: Vec<Int>,
    /// The same weights sorted.
    weights: Vec<Int>,
    beta: Int,
    mcm_interval: (Int, Int),
    conic: Vec<Int>,
    conic_within_mcm: bool,
    base_window: Vec<Int>,
    base_characters: Vec<Int>,
}

pub fn z1_analyze(l: &Loaded, format: Format) -> Result<Output> {
    let w = match rank_one_weights(l)? {
        Ok(w) => w,
        Err(e) => return Ok(rejected(format, l, &e)),
    };
    let b = beta_invariant(&w);
    let conic: Vec<Int> = conic_classes_from_weights(&w.as_weights()).iter().map(|z| z.coords()[0]).collect();
    let win = base_window(&w);
    let report = Z1Report {
        input: input_info(l),
        divisor_weights: l.class_group.weights.iter().map(|c| c.coords()[0]).collect(),
        weights: w.weights.clone(),
        beta: b.beta,
        mcm_interval: (b.mcm_lo, b.mcm_hi),
        conic_within_mcm: conic.iter().all(|&z| b.mcm_lo <= z && z <= b.mcm_hi),
        conic,
        base_window: win.classes(),
        base_characters: win.characters().iter().map(|c| c.coords()[0]).collect(),
    };
    let text = render(format, &report, || {
        let mut s = String::new();
        let _ = writeln!(s, "input\t{}", report.input.path);
        let _ = writeln!(s, "divisor_weights\t{}", join(&report.divisor_weights, " "));
        let _ = writeln!(s, "weights\t{}", join(&report.weights, " "));
        let _ = writeln!(s, "beta\t{}", report.beta);
        let _ = writeln!(s, "mcm_interval\t{}\t{}", report.mcm_interval.0, report.mcm_interval.1);
        let _ = writeln!(s, "conic\t{}", join(&report.conic, " "));
        let _ = writeln!(s, "conic_within_mcm\t{}", report.conic_within_mcm);
        let _ = writeln!(s, "base_window\t{}", join(&report.base_window, " "));
        s
    });
    Ok(Output { text, negative: false })
}

pub fn z1_exchange_graph(l: &Loaded, generators_only: bool, radius: Int, format: Format) -> Result<Output> {
    let w = match rank_one_weights(l)? {
        Ok(w) => w,
        Err(e) => return Ok(rejected(format, l, &e)),
    };
    match exchange_graph(&w, generators_only, radius) {
        Ok(g) => {
            let text = render(format, &g, || g.to_dot());
            Ok(Output { text, negative: false })
        }
        Err(Rank1Error::EdgesUnsupported { vertices }) => {
            // Vertices are still meaningful; mutations are not defined here.
            let g = hibi_nccr::rank1::ExchangeGraph { vertices, edges: Vec::new(), generators_only };
            let mut text = render(format, &g, || g.to_dot());
            if format == Format::Tsv {
                text.push_str("// edges need exactly four weights (dimension 3); vertices only\n");
            }
            Ok(Output { text, negative: true })
        }
        Err(e) => Ok(rejected(format, l, &e)),
    }
}

pub fn z1_mutate(l: &Loaded, lo: Int, end: End, format: Format) -> Result<Output> {
    let w = match rank_one_weights(l)? {
        Ok(w) => w,
        Err(e) => return Ok(rejected(format, l, &e)),
    };
    let size = beta_invariant(&w).beta as usize;
    let m = match mutate_window(Window { lo, size }, end, &w) {
        Ok(m) => m,
        Err(e) => return Ok(rejected(format, l, &e)),
    };
    let text = render(format, &m, || {
        let mut s = String::new();
        let _ = writeln!(s, "from\t{}", join(&m.from.classes(), " "));
        let _ = writeln!(s, "removed\t{}", m.removed);
        let _ = writeln!(s, "kernel\t{}", m.kernel);
        let _ = writeln!(s, "middle\t{}", join(&m.middle, " "));
        let _ = writeln!(s, "to\t{}", join(&m.window.classes(), " "));
        s
    });
    Ok(Output { text, negative: false })
}
