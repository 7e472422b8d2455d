//! Reading poset and cone files, and parsing option values.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hibi_nccr::class_group::{class_group, parse_cone, ClassGroupData};
use hibi_nccr::poset::{PosetHat, TreeSelection};
use hibi_nccr::{hibi_class_group, Int};

/// A parsed input with its class group.
pub struct Loaded {
    pub path: String,
    pub source: Source,
    pub class_group: ClassGroupData,
}

pub enum Source {
    Poset { poset: PosetHat, tree: TreeSelection },
    Cone { dim: usize, rays: usize },
}

impl Loaded {
    pub fn read(path: &Path, tree: Option<&[usize]>) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let shown = path.display().to_string();
        if is_cone_file(&text) {
            if tree.is_some() {
                bail!("--tree applies to poset files only");
            }
            let sigma = parse_cone(&text).with_context(|| format!("parsing cone file {shown}"))?;
            let class_group = class_group(&sigma, None).with_context(|| format!("class group of {shown}"))?;
            let source = Source::Cone { dim: sigma.dim(), rays: sigma.num_divisors() };
            return Ok(Loaded { path: shown, source, class_group });
        }
        let poset = PosetHat::parse(&text).with_context(|| format!("parsing poset file {shown}"))?;
        let (tree, class_group) = hibi_class_group(&poset, tree).with_context(|| format!("class group of {shown}"))?;
        Ok(Loaded { path: shown, source: Source::Poset { poset, tree }, class_group })
    }

    pub fn poset(&self) -> Option<(&PosetHat, &TreeSelection)> {
        match &self.source {
            Source::Poset { poset, tree } => Some((poset, tree)),
            Source::Cone { .. } => None,
        }
    }

    /// `e3` for poset edges, `D3` style index `3` for cone rays (1-based).
    pub fn divisor_label(&self, k: usize) -> String {
        match self.source {
            Source::Poset { .. } => PosetHat::edge_label(k),
            Source::Cone { .. } => format!("{}", k + 1),
        }
    }
}

/// The first meaningful line decides the format.
fn is_cone_file(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("dim:") || l.starts_with("ray:"))
}

/// Edge indices given on the command line.
#[derive(Debug, Clone)]
pub struct EdgeList(pub Vec<usize>);

/// Per-coordinate `(lo, hi)` ranges given on the command line.
#[derive(Debug, Clone)]
pub struct BoxBounds(pub Vec<(Int, Int)>);

/// `e2,e3,e7` → edge indices `[1, 2, 6]`.
pub fn parse_tree(s: &str) -> Result<EdgeList, String> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.strip_prefix('e')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .map(|n| n - 1)
                .ok_or_else(|| format!("`{tok}` is not an edge label like e3"))
        })
        .collect::<Result<_, _>>()
        .map(EdgeList)
}

/// `a,b,c,d` → `[(a,b), (c,d)]`; an even number of integers, each pair `lo <= hi`.
pub fn parse_box(s: &str) -> Result<BoxBounds, String> {
    let vals: Vec<Int> = s
        .split(',')
        .map(|t| t.trim().parse::<Int>().map_err(|_| format!("`{t}` is not an integer")))
        .collect::<Result<_, _>>()?;
    if vals.is_empty() || vals.len() % 2 != 0 {
        return Err("expected lo,hi pairs, e.g. -4,4,-2,2".into());
    }
    let pairs: Vec<(Int, Int)> = vals.chunks(2).map(|c| (c[0], c[1])).collect();
    if let Some((lo, hi)) = pairs.iter().find(|(lo, hi)| lo > hi) {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(BoxBounds(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn option_parsers() {
        assert_eq!(parse_tree("e2,e3").unwrap().0, vec![1, 2]);
        assert!(parse_tree("e0").is_err());
        assert!(parse_tree("2").is_err());
        assert_eq!(parse_box("-4,4,-2,2").unwrap().0, vec![(-4, 4), (-2, 2)]);
        assert!(parse_box("1,2,3").is_err());
        assert!(parse_box("3,1").is_err());
    }

    #[test]
    fn format_sniffing() {
        assert!(is_cone_file("# cone\ndim: 3\nray: 1 0 0\n"));
        assert!(!is_cone_file("elements: a b\n"));
    }
}
