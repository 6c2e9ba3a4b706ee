use pursuit_core::constructions::{standard_graph, StandardKind};
use pursuit_core::engine::{play_match, replay, Driven, PlacementMode, Trace, Turn};
use pursuit_core::oracle::{connected_graphs, Minimax};
use pursuit_core::solver::{optimal_policies, solve_game, solve_game_with_budget, Label, SolverError};
use pursuit_core::{all_pairs_distances, game_number, GameNumber, GameVariant, NumberMode};

fn g(kind: StandardKind, n: usize) -> pursuit_core::Graph {
    standard_graph(kind, n, 0).unwrap()
}

#[test]
fn paths_need_one_of_anything() {
    for n in 1..=6 {
        let p = g(StandardKind::Path, n);
        for v in GameVariant::ALL {
            let r = game_number(&p, v, NumberMode::Chosen, 2).unwrap();
            assert_eq!(r.value, GameNumber::Exact(1), "{v} on P{n}");
        }
    }
}

#[test]
fn lazy_zombies_on_cycles() {
    // one lazy zombie never catches a survivor on a cycle of length >= 4
    for n in 4..=7 {
        let c = g(StandardKind::Cycle, n);
        let r = game_number(&c, GameVariant::LazyZombies, NumberMode::Chosen, 3).unwrap();
        assert_eq!(r.value, GameNumber::Exact(2));
        let r = game_number(&c, GameVariant::LazyZombies, NumberMode::Adversarial, 3).unwrap();
        assert_eq!(r.value, GameNumber::Exact(2), "lazy zombies may wait for each other on C{n}");
    }
}

#[test]
fn solver_matches_minimax_with_two_pursuers() {
    for n in 1..=4 {
        for graph in connected_graphs(n) {
            for v in GameVariant::ALL {
                let t = solve_game(&graph, v, 2).unwrap();
                let mut m = Minimax::new(&graph, v);
                for p in t.placements() {
                    for e in 0..n {
                        for turn in [Turn::Pursuers, Turn::Evader] {
                            let want = m.value(&p, e, turn == Turn::Pursuers, 40);
                            let got = match t.label_at(&p, e, turn) {
                                Label::PursuerWin { plies } => Some(plies),
                                Label::SurvivorWin => None,
                            };
                            assert_eq!(got, want, "{v} {:?} p={p:?} e={e} {turn:?}", graph.edges());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn optimal_matches_replay_and_round_trip() {
    let fan = g(StandardKind::Fan, 7);
    let d = all_pairs_distances(&fan);
    let t = solve_game(&fan, GameVariant::LazyZombies, 1).unwrap();
    for start in 0..7 {
        let (p, mut s) = optimal_policies(&t);
        let mut p = Driven::new(p);
        let trace = play_match(
            &fan,
            &d,
            GameVariant::LazyZombies,
            1,
            &mut p,
            &mut s,
            &PlacementMode::Adversarial(vec![start]),
            100,
        )
        .unwrap();
        let survivor = trace.records[0].evader;
        assert_eq!(trace.capture_round(), t.capture_round(&[start], survivor));
        let (header, records) = Trace::from_jsonl(&trace.to_jsonl()).unwrap();
        assert_eq!(replay(&fan, &d, &header, &records).unwrap(), trace.capture_round());
    }
}

#[test]
fn budget_env_and_errors() {
    let k7 = g(StandardKind::Clique, 7);
    let e = solve_game_with_budget(&k7, GameVariant::Zombies, 2, 5).unwrap_err();
    assert!(matches!(e, SolverError::StateBudgetExceeded { budget: 5, .. }));
    assert!(matches!(solve_game(&k7, GameVariant::Zombies, 0), Err(SolverError::NoPursuers)));
}
