mod common;

use std::sync::atomic::Ordering;
use std::sync::Mutex;

use common::*;
use proptest::prelude::*;
use resproof::builder::{percolate, percolate_mapped};
use resproof::clause::{Atom, Clause, ClauseSet};
use resproof::oracle::{evaluate, truth_table_sat};
use resproof::rng::SplitMix64;
use resproof::{
    build_with, buildresol, check_dag, BuildError, BuildObserver, BuildOptions, ResolutionDag,
    ResourceBudget, SelectionStrategy, SolveOutcome,
};

const STRATEGIES: [SelectionStrategy; 5] = [
    SelectionStrategy::FirstFit,
    SelectionStrategy::MaxWidth,
    SelectionStrategy::Random { seed: 1 },
    SelectionStrategy::Random { seed: 2 },
    SelectionStrategy::Random { seed: 3 },
];

fn solve(gamma: &ClauseSet) -> SolveOutcome {
    buildresol(gamma, SelectionStrategy::FirstFit, BuildOptions::default())
        .unwrap()
        .0
}

#[derive(Default)]
struct Recorder {
    top: Mutex<Vec<ResolutionDag>>,
}

impl BuildObserver for Recorder {
    fn on_percolate(&self, depth: usize, refuted: &ResolutionDag, percolated: &ResolutionDag) {
        if depth == 0 {
            let mut top = self.top.lock().unwrap();
            top.push(refuted.clone());
            top.push(percolated.clone());
        }
    }

    fn on_graft(&self, depth: usize, _lower: &ResolutionDag, upper: &ResolutionDag, _r: &ResolutionDag) {
        if depth == 0 {
            self.top.lock().unwrap().push(upper.clone());
        }
    }
}

#[test]
fn worked_example_intermediate_dags() {
    let rec = Recorder::default();
    let (outcome, stats) = build_with(
        &four_clauses(),
        &worked_example_script(),
        &rec,
        BuildOptions {
            early_exits: false,
            ..Default::default()
        },
    )
    .unwrap();
    let top = rec.top.into_inner().unwrap();
    let [d1, d1p, d2] = &top[..] else {
        panic!("expected one percolation and one graft at the top, got {}", top.len())
    };

    let mut expected = vec![Clause::empty(), cl(&[-2]), cl(&[-1, 2]), cl(&[1, 2]), cl(&[2])];
    expected.sort();
    assert_eq!(labels(d1), expected);
    assert!(d1.premises().same_members(&set(&[&[1, 2], &[-1, 2], &[-2]])));
    assert!(d1.is_refutation());

    assert_eq!(d1p.label(d1p.root().unwrap()), &cl(&[-1]));
    assert!(d1p.premises().same_members(&set(&[&[1, 2], &[-1, 2], &[-1, -2]])));

    assert_eq!(d2.len(), 5);
    assert!(d2.is_refutation());
    assert!(d2.premises().same_members(&set(&[&[1, 2], &[1, -2], &[-1]])));

    let dag = outcome.refutation().unwrap();
    assert_eq!(dag.len(), 8);
    assert_eq!(stats.grafts, 3);
}

#[test]
fn base_cases() {
    let d = solve(&set(&[&[1], &[-1]]));
    assert_eq!(d.refutation().unwrap().len(), 3);

    let m = solve(&set(&[&[1]]));
    assert_eq!(m.model().unwrap().get(Atom::new(1).unwrap()), Some(true));

    let m = solve(&ClauseSet::new());
    assert!(m.model().unwrap().is_empty());

    let with_empty: ClauseSet = [cl(&[1, 2]), Clause::empty()].into_iter().collect();
    let d = solve(&with_empty);
    assert_eq!(d.refutation().unwrap().len(), 1);
    assert!(check_dag(d.refutation().unwrap(), Some(&with_empty)).is_valid_refutation());
}

#[test]
fn models_are_total() {
    // atoms 2 and 3 are never forced
    let gamma = set(&[&[1, 2, 3], &[1]]);
    let m = solve(&gamma);
    let m = m.model().unwrap();
    assert_eq!(m.len(), 3);
    assert!(evaluate(&gamma, m).unwrap());
}

#[test]
fn tautologies_are_processed() {
    let gamma = set(&[&[1, -1], &[2, -2, 1], &[-1], &[1, 3]]);
    let outcome = solve(&gamma);
    assert!(!truth_table_sat(&gamma, 24).unwrap().is_unsat());
    assert!(evaluate(&gamma, outcome.model().unwrap()).unwrap());

    let gamma = set(&[&[1, -1], &[2, -2], &[1], &[-1, 2], &[-2]]);
    let outcome = solve(&gamma);
    assert!(check_dag(outcome.refutation().unwrap(), Some(&gamma)).is_valid_refutation());
}

#[test]
fn eager_matches_lazy() {
    // eager mode skips all pruning, so keep the instances small
    let small = random_corpus(140).into_iter().enumerate().filter(|(i, _)| i % 7 < 3);
    for (_, gamma) in small {
        for strategy in STRATEGIES {
            let lazy = buildresol(&gamma, strategy, BuildOptions::default()).unwrap();
            let eager = buildresol(
                &gamma,
                strategy,
                BuildOptions {
                    eager: true,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(lazy.0, eager.0);
            assert!(eager.1.recursive_calls >= lazy.1.recursive_calls);
        }
    }
}

#[test]
fn budget_errors_are_reported() {
    let gamma = resproof::gen::pigeonhole(3).unwrap();
    let tight = BuildOptions {
        budget: ResourceBudget {
            max_nodes: 50,
            max_depth: 10_000,
        },
        ..Default::default()
    };
    match buildresol(&gamma, SelectionStrategy::FirstFit, tight) {
        Err(BuildError::BudgetExhausted { stats, .. }) => assert!(stats.recursive_calls >= 1),
        other => panic!("expected budget error, got {other:?}"),
    }
    let shallow = BuildOptions {
        budget: ResourceBudget {
            max_nodes: 1_000_000,
            max_depth: 3,
        },
        ..Default::default()
    };
    assert!(matches!(
        buildresol(&gamma, SelectionStrategy::FirstFit, shallow),
        Err(BuildError::BudgetExhausted { .. })
    ));
}

#[test]
fn bad_selector_is_rejected() {
    let liar = |_: &ClauseSet| Ok((cl(&[5, 6]), resproof::Literal::from_dimacs(5).unwrap()));
    let err = build_with(&four_clauses(), &liar, &NoopObserver, BuildOptions::default()).unwrap_err();
    assert!(matches!(err, BuildError::BadSelection(_)));
}

struct NoopObserver;
impl BuildObserver for NoopObserver {}

fn arb_gamma() -> impl Strategy<Value = ClauseSet> {
    let lit = (1i64..=6, any::<bool>()).prop_map(|(a, s)| if s { a } else { -a });
    prop::collection::vec(prop::collection::vec(lit, 0..5), 0..12).prop_map(|cs| {
        cs.into_iter()
            .map(|c| Clause::from_dimacs(c).unwrap())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn certifying_completeness(gamma in arb_gamma(), pick in 0usize..5) {
        let strategy = STRATEGIES[pick];
        let check = MeasureCheck::default();
        let (outcome, _) = build_with(&gamma, &strategy, &check, BuildOptions::default()).unwrap();
        prop_assert_eq!(check.violations.load(Ordering::Relaxed), 0);
        let verdict = truth_table_sat(&gamma, 24).unwrap();
        prop_assert_eq!(outcome.is_unsat(), verdict.is_unsat());
        match &outcome {
            SolveOutcome::Refutation(d) => prop_assert!(check_dag(d, Some(&gamma)).is_valid_refutation()),
            SolveOutcome::Model(m) => {
                prop_assert!(evaluate(&gamma, m).unwrap());
                prop_assert_eq!(m.len(), gamma.var_count());
            }
        }
    }

    #[test]
    fn percolation_lemma(gamma in arb_gamma(), seed in any::<u64>()) {
        let Some(d) = solve(&gamma).refutation().cloned() else { return Ok(()) };
        let mut rng = SplitMix64::new(seed);
        let leaves: Vec<_> = d.leaves().map(|n| n.id).collect();
        let leaf = leaves[rng.below(leaves.len() as u64) as usize];
        let l = resproof::Literal::new(Atom::new(1 + rng.below(7) as u32).unwrap(), rng.coin());
        let (p, map) = percolate_mapped(&d, leaf, l).unwrap();
        prop_assert_eq!(&p, &percolate(&d, leaf, l).unwrap());
        prop_assert!(check_dag(&p, None).is_valid());
        let root = p.label(p.root().unwrap());
        prop_assert!(root.is_empty() || root == &Clause::unit(l));
        for (a, &to) in d.nodes().iter().zip(&map) {
            let b = p.label(to);
            prop_assert!(b == &a.clause || b == &a.clause.with(l));
        }
    }
}
