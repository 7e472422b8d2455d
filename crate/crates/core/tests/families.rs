//! Family generation and classification round trips, including flipped
//! posets and relabelled ones.

mod common;

use common::*;
use hibi_nccr::classify::{Orientation, Rejection};
use hibi_nccr::{classify, generate, Family};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_families() -> Vec<Family> {
    let mut out = Vec::new();
    for m in 0..=3 {
        for n in 1..=3 {
            out.push(Family::I { m, n });
        }
    }
    for l in 0..=2 {
        for m in 1..=2 {
            for n in 0..=2 {
                out.push(Family::II { l, m, n });
            }
        }
    }
    for l in 0..=2 {
        for m in 2..=3 {
            for n in 0..=2 {
                out.push(Family::III { l, m, n });
            }
        }
    }
    for m in 1..=3 {
        for n in 1..=3 {
            out.push(Family::IV { m, n });
        }
    }
    for n in 0..=3 {
        out.push(Family::V { n });
    }
    out
}

/// Reversing the order reverses the parameter list of types II–IV; type I
/// keeps its parameters (and is reported as flipped), type V is symmetric.
fn reversed(f: Family) -> Family {
    match f {
        Family::II { l, m, n } => Family::II { l: n, m, n: l },
        Family::III { l, m, n } => Family::III { l: n, m, n: l },
        Family::IV { m, n } => Family::IV { m: n, n: m },
        other => other,
    }
}

#[test]
fn generated_members_classify_as_themselves() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in small_families() {
        let g = generate(f).unwrap();
        let tp = classify(&g.poset).unwrap_or_else(|e| panic!("{f}: {e}"));
        assert_eq!(tp.family, f);
        assert_eq!(tp.orientation, Orientation::AsGiven, "{f}");
        let renamed = relabel(&mut rng, &g.poset);
        assert_eq!(classify(&renamed).map(|t| t.family), Ok(f), "{f} relabelled");
        let flipped = classify(&g.poset.flip()).unwrap_or_else(|e| panic!("{f} flipped: {e}"));
        assert_eq!(flipped.family, reversed(f), "{f} flipped");
        let want = if matches!(f, Family::I { .. }) { Orientation::Flipped } else { Orientation::AsGiven };
        assert_eq!(flipped.orientation, want, "{f} flipped");
    }
}

#[test]
fn corpus_files_match_their_names() {
    for (file, f) in family_corpus() {
        assert_eq!(classify(&load_poset(file)).map(|t| t.family), Ok(f), "{file}");
    }
}

#[test]
fn flip_is_an_involution() {
    for (name, p) in corpus_posets() {
        assert_eq!(p.flip().flip(), p, "{name}");
        assert_eq!(p.flip().is_pure(), p.is_pure(), "{name}");
    }
}

#[test]
fn invalid_parameters_and_rejections() {
    assert!(generate(Family::I { m: 0, n: 0 }).is_err());
    assert!(generate(Family::III { l: 0, m: 1, n: 0 }).is_err());
    assert!(Family::from_tag("VI", &[1]).is_err());
    assert!(Family::from_tag("II", &[1, 1]).is_err());
    assert_eq!(Family::from_tag("II", &[1, 2, 3]).unwrap(), Family::II { l: 1, m: 2, n: 3 });

    assert_eq!(classify(&load_poset("nonpure.poset")), Err(Rejection::Rank { rank: 1 }));
    let nonpure2 = hibi_nccr::PosetHat::new(&["a", "b", "c", "d"], &[("a", "b")]).unwrap();
    assert_eq!(classify(&nonpure2), Err(Rejection::NotGorenstein));
    assert!(matches!(classify(&load_poset("polyext.poset")), Err(Rejection::Rank { rank: 1 })));
    let cone_over = hibi_nccr::PosetHat::new(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("a", "d")]).unwrap();
    assert_eq!(classify(&cone_over), Err(Rejection::PolynomialExtension { edge: "e1".into() }));
    assert!(matches!(classify(&load_poset("segre2_m2.poset")), Err(Rejection::Rank { rank: 1 })));
    assert!(matches!(classify(&load_poset("segre3.poset")), Ok(_)));
}
