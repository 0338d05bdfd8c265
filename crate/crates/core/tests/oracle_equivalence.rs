mod common;

use popular_roommates::election::{oracle_popular_matchings, DEFAULT_ENUMERATION_BOUND};
use popular_roommates::generator::{gen_instance, GenConfig};
use popular_roommates::search::{
    candidate_uncovered_sets, check_u, check_u_traced, max_size_popular, solve, CheckOptions,
    SolveMode, SolveOptions, SolveResult,
};
use popular_roommates::stable::{find_stable, is_stable};
use popular_roommates::verifier::verify_popular;
use popular_roommates::{Error, Instance, VertexSet};

/// Sparse and dense shapes, odd and even orders.
const SHAPES: &[(usize, usize, f64)] = &[
    (3, 2, 0.7),
    (5, 3, 0.6),
    (5, 4, 0.5),
    (6, 4, 0.5),
    (7, 4, 0.5),
    (7, 5, 0.6),
    (7, 5, 0.8),
    (7, 6, 0.4),
];

fn sample(per_shape: u64) -> impl Iterator<Item = Instance> {
    SHAPES.iter().enumerate().flat_map(move |(k, &(n, c, p))| {
        let cfg = GenConfig::new(n, c, p, 500 + k as u64);
        (0..per_shape).map(move |i| gen_instance(&cfg, i).unwrap())
    })
}

#[test]
fn stable_solver_agrees_with_enumeration() {
    for inst in sample(150) {
        let found = find_stable(&inst);
        assert_eq!(found.is_some(), common::stable_exists(&inst), "{inst}");
        if let Some(m) = found {
            assert!(common::is_stable(&inst, &common::mate_of(&m)), "{inst}");
            assert!(is_stable(&inst, &m).unwrap());
        }
    }
}

#[test]
fn check_u_agrees_with_oracle_on_every_admissible_set() {
    let mut positives = 0;
    for inst in sample(120) {
        let oracle = common::Popularity::new(&inst);
        let popular = oracle.popular(&inst);
        let has_stable = find_stable(&inst).is_some();
        for u in candidate_uncovered_sets(&inst, inst.n()) {
            let expected = popular
                .iter()
                .any(|m| common::uncovered(m) == u && !(has_stable && common::is_stable(&inst, m)));
            let options = CheckOptions {
                assume_no_stable: true,
            };
            let got = check_u_traced(&inst, &u, options, &mut |_| {}).unwrap();
            assert_eq!(got.is_some(), expected, "U={} on\n{inst}", inst.fmt_set(&u));
            if let Some(m) = got {
                positives += 1;
                assert_eq!(m.uncovered(), u);
                assert!(oracle.is_popular(&inst, &common::mate_of(&m)));
                assert!(!is_stable(&inst, &m).unwrap());
            }
        }
    }
    assert!(positives >= 20, "only {positives} positive cases");
}

#[test]
fn solve_decides_existence_for_odd_orders() {
    for inst in sample(120).filter(|i| i.n() % 2 == 1) {
        let oracle = oracle_popular_matchings(&inst, DEFAULT_ENUMERATION_BOUND).unwrap();
        let result = solve(&inst, &SolveOptions::new(SolveMode::OddExact)).unwrap();
        assert_eq!(result == SolveResult::None, oracle.is_empty(), "{inst}");
        if let Some(m) = result.matching() {
            assert!(verify_popular(&inst, m).unwrap().is_popular());
            assert!(oracle.contains(m));
        }
    }
}

#[test]
fn nonperfect_mode_finds_non_perfect_popular_matchings() {
    for inst in sample(120).filter(|i| i.n() % 2 == 0) {
        if find_stable(&inst).is_some() {
            continue;
        }
        let popular = oracle_popular_matchings(&inst, DEFAULT_ENUMERATION_BOUND).unwrap();
        let non_perfect = popular.iter().any(|m| !m.uncovered().is_empty());
        let result = solve(&inst, &SolveOptions::new(SolveMode::Nonperfect)).unwrap();
        assert_eq!(result != SolveResult::None, non_perfect, "{inst}");
    }
}

#[test]
fn max_size_popular_matches_oracle_size() {
    for inst in sample(120) {
        let popular = oracle_popular_matchings(&inst, DEFAULT_ENUMERATION_BOUND).unwrap();
        let best = popular.iter().map(|m| m.len()).max();
        let mode = if inst.n() % 2 == 1 {
            SolveMode::OddExact
        } else {
            SolveMode::Nonperfect
        };
        let result = max_size_popular(&inst, &SolveOptions::new(mode)).unwrap();
        assert_eq!(result.matching().map(|m| m.len()), best, "{inst}");
        if let Some(m) = result.matching() {
            assert!(popular.contains(m));
        }
    }
}

#[test]
fn spanned_sets_have_no_popular_matching_and_are_rejected() {
    for inst in sample(40).filter(|i| i.n() % 2 == 1) {
        let popular = common::Popularity::new(&inst).popular(&inst);
        for (u, v) in inst.edges() {
            for w in inst.vertices() {
                let set: VertexSet = [u, v, w].into_iter().collect();
                if set.len() != 3 {
                    continue;
                }
                assert!(!popular.iter().any(|m| common::uncovered(m) == set));
                let options = CheckOptions {
                    assume_no_stable: true,
                };
                assert!(matches!(
                    check_u_traced(&inst, &set, options, &mut |_| {}),
                    Err(Error::Precondition(_))
                ));
            }
        }
    }
}

#[test]
fn check_u_refuses_instances_with_stable_matchings() {
    let inst = Instance::parse("a: b\nb: a\nc:\n").unwrap();
    let u = inst.vertex_set(&["c"]).unwrap();
    assert!(matches!(check_u(&inst, &u), Err(Error::Precondition(_))));
}
