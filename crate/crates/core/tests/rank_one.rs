//! Class group `Z`: the β-invariant, windows and mutations on random
//! four-weight systems.

mod common;

use common::*;
use hibi_nccr::divisorial::conic_classes_from_weights;
use hibi_nccr::nccr::{certify_gldim, replay, Provenance};
use hibi_nccr::rank1::{End, Rank1Error};
use hibi_nccr::{beta_invariant, end_is_mcm, exchange_graph, mutate_window, CharacterSet, Int, McmOracle, Rank1Weights, Window};
use num_integer::Integer;
use proptest::prelude::*;

/// Two negative and two positive weights, summing to zero, coprime.
fn four_weights() -> impl Strategy<Value = Rank1Weights> {
    (1i64..6, 1i64..6, 1i64..6).prop_filter_map("valid weight system", |(a, b, c)| {
        let d = a + b - c;
        if d < 1 || a.gcd(&b).gcd(&c).gcd(&d) != 1 {
            return None;
        }
        Rank1Weights::new(vec![-a, -b, c, d]).ok()
    })
}

fn window_set(win: Window) -> CharacterSet {
    CharacterSet::new(win.characters(), Provenance::Window { lo: win.lo, size: win.size }).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mcm_interval_is_symmetric_of_width_beta(w in four_weights()) {
        let b = beta_invariant(&w);
        let oracle = McmOracle::new(&w.as_weights()).unwrap();
        let mcm: Vec<Int> = (-30..=30).filter(|&a| oracle.is_mcm(&hibi_nccr::Weight(vec![a]))).collect();
        prop_assert_eq!(mcm, (b.mcm_lo..=b.mcm_hi).collect::<Vec<_>>());
        prop_assert_eq!(b.beta, w.positives().iter().sum::<Int>());
    }

    #[test]
    fn windows_of_size_beta_are_exactly_the_mcm_endomorphism_rings(w in four_weights(), lo in -8i64..8) {
        let beta = beta_invariant(&w).beta as usize;
        let oracle = McmOracle::new(&w.as_weights()).unwrap();
        let exact = Window { lo, size: beta };
        let wide = Window { lo, size: beta + 1 };
        prop_assert!(end_is_mcm(&window_set(exact), &oracle).ok());
        prop_assert!(!end_is_mcm(&window_set(wide), &oracle).ok());
    }

    #[test]
    fn windows_certify_conic_classes(w in four_weights(), lo in -3i64..3) {
        let beta = beta_invariant(&w).beta as usize;
        let l = window_set(Window { lo, size: beta });
        let weights = w.as_weights();
        let goal = conic_classes_from_weights(&weights);
        let cert = certify_gldim(&l, &weights, &goal, None).map_err(|f| TestCaseError::fail(format!("{f:?}")))?;
        prop_assert!(replay(&cert.steps, &l, &weights, &goal).is_ok());
        let known = independent_replay(&cert.steps, &l.chars, &weights).map_err(TestCaseError::fail)?;
        prop_assert!(goal.iter().all(|g| known.contains(g)));
    }

    #[test]
    fn mutations_are_exact_and_invertible(w in four_weights(), lo in -10i64..10) {
        let beta = beta_invariant(&w).beta;
        let win = Window { lo, size: beta as usize };
        for end in [End::Low, End::High] {
            let m = mutate_window(win, end, &w).unwrap();
            // 0 → kernel → middle → removed → 0 is homogeneous.
            prop_assert_eq!(m.middle[0] + m.middle[1], m.kernel + m.removed);
            prop_assert!(m.window.contains(m.kernel) && !m.window.contains(m.removed));
            prop_assert!(m.middle.iter().all(|&x| m.window.contains(x) && x != m.kernel));
            let back = mutate_window(m.window, if end == End::Low { End::High } else { End::Low }, &w).unwrap();
            prop_assert_eq!(back.window, win);
        }
    }

    #[test]
    fn generator_exchange_graph_is_a_path(w in four_weights()) {
        let g = exchange_graph(&w, true, 0).unwrap();
        prop_assert_eq!(g.vertices.len() as Int, beta_invariant(&w).beta);
        prop_assert!(g.is_path());
        prop_assert!(g.vertices.iter().all(|v| v.contains(0)));
    }
}

#[test]
fn invalid_weight_systems_are_rejected() {
    assert!(matches!(Rank1Weights::new(vec![1, -1, 0]), Err(Rank1Error::ZeroWeight)));
    assert!(matches!(Rank1Weights::new(vec![1, 1, -2]), Err(Rank1Error::TooFewSigns)));
    assert!(matches!(Rank1Weights::new(vec![2, 2, -2, -2]), Err(Rank1Error::NotPrimitive(2))));
    assert!(matches!(Rank1Weights::new(vec![1, 2, -1, -1]), Err(Rank1Error::NotGorenstein(1))));
}

#[test]
fn wrong_window_size_and_dimension() {
    let w = Rank1Weights::new(vec![1, -2, 4, -3]).unwrap();
    assert!(matches!(mutate_window(Window { lo: 0, size: 4 }, End::Low, &w), Err(Rank1Error::WrongSize { got: 4, want: 5 })));
    let s = hibi_nccr::rank1::segre_weights(2);
    assert!(matches!(mutate_window(Window { lo: 0, size: 3 }, End::Low, &s), Err(Rank1Error::WrongDimension(6))));
    match exchange_graph(&s, true, 0) {
        Err(Rank1Error::EdgesUnsupported { vertices }) => assert_eq!(vertices.len(), 3),
        other => panic!("{other:?}"),
    }
}
