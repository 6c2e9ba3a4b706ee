//! The claims suite: one deterministic check per claim, each reporting its
//! measured values and runtime.

use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constructions::{gk_clique, gk_star, standard_graph, ScriptEvasion, StandardKind};
use crate::decomposition::{
    check_lemma2, cut_decomposition_to_td_tree, load, load_star, random_cut_decomposition, td_tree_to_cut_decomposition,
    time, time_star, treedepth, CutDecomposition,
};
use crate::engine::{play_match, Driven, GameVariant, PlacementMode, PursuerStrategy, Turn};
use crate::geometry::{convex_polygon, random_star_polygon, visibility_graph, Polygon};
use crate::graph::{all_pairs_distances, diameter, Graph, Vertex};
use crate::oracle::{connected_graphs, visibility_edges_by_sampling, Minimax};
use crate::solver::{game_number, optimal_policies, solve_game, GameNumber, GameTable, Label, NumberMode, OptimalSurvivor};
use crate::strategies::{CliqueCoverPolicy, CutDecompositionPolicy, OuterplanarLazyPolicy};

pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub measured: Value,
    pub runtime_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub suite: Option<String>,
    pub claims: Vec<ClaimResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// Same report with runtimes zeroed, for comparing reruns.
    pub fn without_timings(&self) -> VerifyReport {
        let mut r = self.clone();
        for c in &mut r.claims {
            c.runtime_ms = 0;
        }
        r
    }
}

type Check = fn(u64) -> Result<(bool, Value), String>;

/// `(id, anchor, suite, check)` for every claim, in report order.
pub const CLAIMS: [(&str, &str, &str, Check); 13] = [
    ("star-lower-bound", "thm1", "thm1", star_lower_bound),
    ("clique-lower-bound", "thm3", "thm1", clique_lower_bound),
    ("script-evasion", "thm1", "thm1", script_evasion),
    ("small-graphs", "sec1", "small", small_graphs),
    ("hierarchy", "sec2", "hierarchy", hierarchy),
    ("outerplanar-chosen", "thm6", "thm6", outerplanar_chosen),
    ("outerplanar-universal", "cor1", "thm6", outerplanar_universal),
    ("load-treedepth", "thm8", "decomp", load_treedepth),
    ("cut-decomposition-policy", "thm7", "decomp", cut_decomposition_policy),
    ("clique-cover-policy", "thm9", "decomp", clique_cover_policy),
    ("separator-chain", "lemma2", "decomp", separator_chain),
    ("visibility", "sec3", "visibility", visibility),
    ("solver-oracle", "solver", "solver", solver_oracle),
];

/// Whether `filter` selects the claim: it may name a suite, an anchor or a
/// claim id.
pub fn selects(filter: Option<&str>, id: &str, anchor: &str, suite: &str) -> bool {
    filter.is_none_or(|f| {
        let f = f.to_ascii_lowercase();
        f == "all" || f == id || f == anchor || f == suite
    })
}

pub fn known_suite(filter: &str) -> bool {
    CLAIMS.iter().any(|&(id, anchor, suite, _)| selects(Some(filter), id, anchor, suite))
}

/// Runs the selected claims; the others are listed as skipped.
pub fn run_verify(filter: Option<&str>, seed: u64) -> VerifyReport {
    let claims = CLAIMS
        .iter()
        .map(|&(id, anchor, suite, check)| {
            if !selects(filter, id, anchor, suite) {
                return ClaimResult {
                    id: id.into(),
                    anchor: anchor.into(),
                    status: Status::Skipped,
                    measured: Value::Null,
                    runtime_ms: 0,
                };
            }
            run_claim(id, anchor, check, seed)
        })
        .collect();
    VerifyReport { seed, suite: filter.map(str::to_string), claims }
}

pub fn run_claim(id: &str, anchor: &str, check: Check, seed: u64) -> ClaimResult {
    let started = Instant::now();
    let (status, measured) = match check(seed) {
        Ok((true, m)) => (Status::Pass, m),
        Ok((false, m)) => (Status::Fail, m),
        Err(e) => (Status::Fail, json!({ "error": e })),
    };
    ClaimResult { id: id.into(), anchor: anchor.into(), status, measured, runtime_ms: started.elapsed().as_millis() }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn number_json(v: GameNumber) -> Value {
    match v {
        GameNumber::Exact(k) => json!(k),
        GameNumber::NoneUpTo(k) => json!(format!(">{k}")),
    }
}

fn star_lower_bound(_: u64) -> Result<(bool, Value), String> {
    let inst = gk_star(2, 10).map_err(err)?;
    let r = game_number(inst.graph(), GameVariant::Zombies, NumberMode::Chosen, 1).map_err(err)?;
    Ok((r.value == GameNumber::NoneUpTo(1), json!({ "n": inst.n, "z": number_json(r.value) })))
}

fn clique_lower_bound(_: u64) -> Result<(bool, Value), String> {
    let inst = gk_clique(2, 6).map_err(err)?;
    let r = game_number(inst.graph(), GameVariant::Zombies, NumberMode::Chosen, 1).map_err(err)?;
    Ok((r.value == GameNumber::NoneUpTo(1), json!({ "n": inst.n, "z": number_json(r.value) })))
}

fn script_evasion(_: u64) -> Result<(bool, Value), String> {
    let inst = gk_star(2, 10).map_err(err)?;
    let g = inst.graph();
    let d = all_pairs_distances(g);
    let table = solve_game(g, GameVariant::Zombies, 1).map_err(err)?;
    let mut failures = Vec::new();
    let mut latest_repeat = 0;
    for p in 0..g.n() {
        let (pursuer, _) = optimal_policies(&table);
        let mut pursuer = Driven::new(pursuer);
        let mut survivor = ScriptEvasion::auto(&inst);
        let trace = play_match(
            g,
            &d,
            GameVariant::Zombies,
            1,
            &mut pursuer,
            &mut survivor,
            &PlacementMode::Adversarial(vec![p]),
            300,
        )
        .map_err(err)?;
        match trace.first_repeat() {
            Some((_, at)) if !trace.captured() => latest_repeat = latest_repeat.max(trace.records[at].round),
            _ => failures.push(p),
        }
    }
    let measured = json!({
        "placements": g.n(),
        "rounds": 300,
        "failing_placements": failures,
        "latest_first_repeat_round": latest_repeat,
    });
    Ok((failures.is_empty(), measured))
}

fn small_graphs(_: u64) -> Result<(bool, Value), String> {
    let mut rows = Vec::new();
    let mut ok = true;
    let mut check = |name: String, g: &Graph, variant: GameVariant, mode: NumberMode, want: GameNumber| {
        let got = game_number(g, variant, mode, 3).map_err(err)?.value;
        ok &= got == want;
        rows.push(json!({ "graph": name, "variant": variant.name(), "mode": mode, "value": number_json(got) }));
        Ok::<(), String>(())
    };
    for n in [3, 5, 7] {
        let g = standard_graph(StandardKind::Clique, n, 0).map_err(err)?;
        for v in [GameVariant::Cops, GameVariant::Zombies] {
            check(format!("K{n}"), &g, v, NumberMode::Chosen, GameNumber::Exact(1))?;
        }
    }
    for n in 4..=7 {
        let g = standard_graph(StandardKind::Cycle, n, 0).map_err(err)?;
        for v in [GameVariant::Cops, GameVariant::Zombies] {
            check(format!("C{n}"), &g, v, NumberMode::Chosen, GameNumber::Exact(2))?;
        }
        if n >= 5 {
            check(format!("C{n}"), &g, GameVariant::Zombies, NumberMode::Adversarial, GameNumber::NoneUpTo(3))?;
        }
    }
    Ok((ok, json!(rows)))
}

/// `a <= b` where `None` stands for "more than the search limit". Returns
/// `None` when both are undetermined.
fn at_most(a: Option<usize>, b: Option<usize>) -> Option<bool> {
    match (a, b) {
        (None, None) => None,
        (_, None) => Some(true),
        (None, Some(_)) => Some(false),
        (Some(a), Some(b)) => Some(a <= b),
    }
}

fn hierarchy(seed: u64) -> Result<(bool, Value), String> {
    let mut rng = rng_for(seed, 5);
    let graphs = 300;
    let (mut checked, mut skipped) = (0, 0);
    let mut violations = Vec::new();
    for _ in 0..graphs {
        let n = rng.gen_range(2..=7);
        let g = standard_graph(StandardKind::RandomConnected, n, rng.gen()).map_err(err)?;
        let num = |v, m| game_number(&g, v, m, 3).map(|r| r.exact()).map_err(err);
        let c = num(GameVariant::Cops, NumberMode::Chosen)?;
        let zl = num(GameVariant::LazyZombies, NumberMode::Chosen)?;
        let z = num(GameVariant::Zombies, NumberMode::Chosen)?;
        let u = num(GameVariant::Zombies, NumberMode::Adversarial)?;
        let ul = num(GameVariant::LazyZombies, NumberMode::Adversarial)?;
        for (name, a, b) in [("c<=zL", c, zl), ("zL<=z", zl, z), ("z<=u", z, u), ("zL<=uL", zl, ul), ("uL<=u", ul, u)] {
            match at_most(a, b) {
                None => skipped += 1,
                Some(true) => checked += 1,
                Some(false) => violations.push(json!({ "edges": g.edges(), "relation": name })),
            }
        }
    }
    let measured = json!({
        "graphs": graphs,
        "relations_checked": checked,
        "relations_skipped": skipped,
        "violations": violations,
    });
    Ok((violations.is_empty(), measured))
}

fn outerplanar_chosen(seed: u64) -> Result<(bool, Value), String> {
    let mut rng = rng_for(seed, 6);
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 4..=12 {
        graphs.push((format!("F{n}"), standard_graph(StandardKind::Fan, n, 0).map_err(err)?));
    }
    for _ in 0..100 {
        let n = rng.gen_range(4..=12);
        let s: u64 = rng.gen();
        graphs.push((format!("outerplanar n={n} seed={s}"), standard_graph(StandardKind::RandomOuterplanar, n, s).map_err(err)?));
    }
    let mut failures = Vec::new();
    let mut worst_ratio = 0.0f64;
    for (name, g) in &graphs {
        let n = g.n();
        let d = all_pairs_distances(g);
        let zl = game_number(g, GameVariant::LazyZombies, NumberMode::Chosen, 2).map_err(err)?.exact();
        let table = solve_game(g, GameVariant::LazyZombies, 2).map_err(err)?;
        let policy = OuterplanarLazyPolicy::new(g, &d).map_err(err)?;
        let mut pursuer = Driven::new(policy);
        let mut survivor = OptimalSurvivor { table: &table };
        let trace = play_match(g, &d, GameVariant::LazyZombies, 2, &mut pursuer, &mut survivor, &PlacementMode::Chosen, 2 * n)
            .map_err(|e| format!("{name}: {e}"))?;
        match trace.capture_round() {
            Some(r) if r < 2 * n && zl.is_some() => worst_ratio = worst_ratio.max(r as f64 / n as f64),
            r => failures.push(json!({ "graph": name, "capture_round": r, "z_lazy": zl })),
        }
    }
    let measured = json!({
        "graphs": graphs.len(),
        "max_capture_round_over_n": worst_ratio,
        "failures": failures,
    });
    Ok((failures.is_empty(), measured))
}

fn outerplanar_universal(_: u64) -> Result<(bool, Value), String> {
    let mut failures = Vec::new();
    let mut matches = 0;
    let mut latest = 0;
    for n in 3..=8 {
        let g = standard_graph(StandardKind::Fan, n, 0).map_err(err)?;
        let d = all_pairs_distances(&g);
        let table = solve_game(&g, GameVariant::LazyZombies, 2).map_err(err)?;
        for a in 0..n {
            for b in 0..n {
                let policy = OuterplanarLazyPolicy::universal(&g, &d).map_err(err)?;
                let mut pursuer = Driven::new(policy);
                let mut survivor = OptimalSurvivor { table: &table };
                let placement = PlacementMode::Adversarial(vec![a, b]);
                let trace = play_match(&g, &d, GameVariant::LazyZombies, 2, &mut pursuer, &mut survivor, &placement, 10 * n)
                    .map_err(|e| format!("F{n} placement {a},{b}: {e}"))?;
                matches += 1;
                match trace.capture_round() {
                    Some(r) => latest = latest.max(r),
                    None => failures.push(json!({ "fan": n, "placement": [a, b] })),
                }
            }
        }
    }
    let measured = json!({ "matches": matches, "latest_capture_round": latest, "failures": failures });
    Ok((failures.is_empty(), measured))
}

fn random_connected(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Result<Graph, String> {
    let n = rng.gen_range(lo..=hi);
    standard_graph(StandardKind::RandomConnected, n, rng.gen()).map_err(err)
}

fn load_treedepth(seed: u64) -> Result<(bool, Value), String> {
    let mut rng = rng_for(seed, 8);
    let mut failures = Vec::new();
    for _ in 0..200 {
        let g = random_connected(&mut rng, 1, 8)?;
        let (td, tree) = treedepth(&g).map_err(err)?;
        let d = td_tree_to_cut_decomposition(&g, &tree).map_err(err)?;
        let l = load(&g, &d).map_err(err)?;
        if l != td {
            failures.push(json!({ "direction": "tree to decomposition", "edges": g.edges(), "td": td, "load": l }));
        }
    }
    for _ in 0..200 {
        let g = random_connected(&mut rng, 1, 8)?;
        let d = random_cut_decomposition(&g, &mut rng).map_err(err)?;
        let tree = cut_decomposition_to_td_tree(&g, &d).map_err(err)?;
        tree.validate(&g).map_err(err)?;
        let (td, _) = treedepth(&g).map_err(err)?;
        let l = load(&g, &d).map_err(err)?;
        if !(td <= tree.vertex_height() && tree.vertex_height() <= l) {
            failures.push(json!({
                "direction": "decomposition to tree",
                "edges": g.edges(),
                "td": td,
                "tree_height": tree.vertex_height(),
                "load": l,
            }));
        }
    }
    Ok((failures.is_empty(), json!({ "graphs": 200, "decompositions": 200, "failures": failures })))
}

/// The graphs and optimal-treedepth decompositions shared by the two
/// decomposition policy claims.
fn decomposition_instances(seed: u64) -> Result<Vec<(Graph, CutDecomposition)>, String> {
    let mut rng = rng_for(seed, 9);
    (0..100)
        .map(|_| {
            let g = random_connected(&mut rng, 2, 10)?;
            let (_, tree) = treedepth(&g).map_err(err)?;
            let d = td_tree_to_cut_decomposition(&g, &tree).map_err(err)?;
            Ok((g, d))
        })
        .collect()
}

/// Capture round of `policy` against the table-optimal survivor, with the
/// policy placing its own zombies.
fn against_optimal<S: PursuerStrategy>(g: &Graph, table: &GameTable, policy: S, limit: usize) -> Result<Option<usize>, String> {
    let d = all_pairs_distances(g);
    let k = table.k();
    let mut pursuer = Driven::new(policy);
    let mut survivor = OptimalSurvivor { table };
    let trace = play_match(g, &d, GameVariant::LazyZombies, k, &mut pursuer, &mut survivor, &PlacementMode::Chosen, limit)
        .map_err(err)?;
    Ok(trace.capture_round())
}

fn capped(t: u128, extra: usize) -> usize {
    usize::try_from(t).unwrap_or(usize::MAX - extra).saturating_add(extra)
}

fn cut_decomposition_policy(seed: u64) -> Result<(bool, Value), String> {
    let mut failures = Vec::new();
    let mut latest = 0;
    let instances = decomposition_instances(seed)?;
    for (g, decomp) in &instances {
        let dist = all_pairs_distances(g);
        let (td, _) = treedepth(g).map_err(err)?;
        let t = time(g, decomp).map_err(err)?;
        let diam = diameter(g).map_err(err)? as u128;
        let base = decomp.cdw() as u128 * diam.saturating_sub(1) + 1;
        let bound = base.checked_pow(decomp.height() as u32 + 1).unwrap_or(u128::MAX);
        let table = solve_game(g, GameVariant::LazyZombies, td).map_err(err)?;
        let policy = CutDecompositionPolicy::new(g, &dist, decomp.clone()).map_err(err)?;
        if policy.zombies() != td {
            failures.push(json!({ "edges": g.edges(), "td": td, "zombies": policy.zombies() }));
            continue;
        }
        let limit = capped(t, 1);
        let round = against_optimal(g, &table, policy, limit.min(100_000))?;
        match round {
            Some(r) if r <= limit && t <= bound => latest = latest.max(r),
            _ => failures.push(json!({ "edges": g.edges(), "time": t.to_string(), "bound": bound.to_string(), "capture_round": round })),
        }
    }
    let measured = json!({
        "graphs": instances.len(),
        "latest_capture_round": latest,
        "failures": failures,
    });
    Ok((failures.is_empty(), measured))
}

fn clique_cover_policy(seed: u64) -> Result<(bool, Value), String> {
    let mut failures = Vec::new();
    let mut clique_rounds = Vec::new();
    for n in 1..=8 {
        let g = standard_graph(StandardKind::Clique, n, 0).map_err(err)?;
        let dist = all_pairs_distances(&g);
        let table = solve_game(&g, GameVariant::LazyZombies, 1).map_err(err)?;
        let policy = CliqueCoverPolicy::new(&g, &dist, CutDecomposition::single(n)).map_err(err)?;
        let round = against_optimal(&g, &table, policy, 10)?;
        clique_rounds.push(json!(round));
        if !round.is_some_and(|r| r <= 2) {
            failures.push(json!({ "clique": n, "capture_round": round }));
        }
    }
    let instances = decomposition_instances(seed)?;
    let mut saved = 0;
    for (g, decomp) in &instances {
        let dist = all_pairs_distances(g);
        let (l, ls) = (load(g, decomp).map_err(err)?, load_star(g, decomp).map_err(err)?);
        saved += l - ls.min(l);
        if ls > l {
            failures.push(json!({ "edges": g.edges(), "load": l, "load_star": ls }));
            continue;
        }
        let ts = time_star(g, decomp).map_err(err)?;
        let table = solve_game(g, GameVariant::LazyZombies, ls).map_err(err)?;
        let policy = CliqueCoverPolicy::new(g, &dist, decomp.clone()).map_err(err)?;
        let limit = capped(ts, 1);
        let round = against_optimal(g, &table, policy, limit.min(100_000))?;
        if !round.is_some_and(|r| r <= limit) {
            failures.push(json!({ "edges": g.edges(), "time_star": ts.to_string(), "capture_round": round }));
        }
    }
    let measured = json!({
        "clique_capture_rounds": clique_rounds,
        "decompositions": instances.len(),
        "zombies_saved": saved,
        "failures": failures,
    });
    Ok((failures.is_empty(), measured))
}

fn separator_chain(_: u64) -> Result<(bool, Value), String> {
    let mut per_n = Vec::new();
    let mut failures = Vec::new();
    for n in 1..=6 {
        let graphs = connected_graphs(n);
        let mut bad = 0;
        for g in &graphs {
            let r = check_lemma2(g).map_err(err)?;
            if !r.holds {
                bad += 1;
                if failures.len() < 10 {
                    failures.push(json!({ "edges": g.edges(), "n": n, "report": r }));
                }
            }
        }
        per_n.push(json!({ "n": n, "graphs": graphs.len(), "violations": bad }));
    }
    Ok((failures.is_empty(), json!({ "per_n": per_n, "first_violations": failures })))
}

fn same_graph(a: &Graph, edges: &[(Vertex, Vertex)]) -> bool {
    let mut e = edges.to_vec();
    e.sort_unstable();
    let mut f = a.edges().to_vec();
    f.sort_unstable();
    e == f
}

fn visibility(seed: u64) -> Result<(bool, Value), String> {
    let mut rng = rng_for(seed, 12);
    let mut failures = Vec::new();
    for n in 4..=8 {
        let g = visibility_graph(&convex_polygon(n)).map_err(err)?;
        if g.edge_count() != n * (n - 1) / 2 {
            failures.push(json!({ "convex": n, "edges": g.edge_count() }));
        }
    }
    let three_halves = BigRational::new(3.into(), 2.into());
    let mut edges_seen = 0;
    for i in 0..20 {
        let n = rng.gen_range(4..=12);
        let p = random_star_polygon(&mut rng, n, 8);
        let g = visibility_graph(&p).map_err(err)?;
        edges_seen += g.edge_count();
        let oracle = visibility_edges_by_sampling(&p, 64);
        let reversed = visibility_graph(&p.reversed()).map_err(err)?;
        let unreversed: Vec<_> = reversed.edges().iter().map(|&(a, b)| ((n - 1 - b), (n - 1 - a))).collect();
        let scaled = visibility_graph(&p.scaled(&three_halves)).map_err(err)?;
        let checks = [
            ("oracle", same_graph(&g, &oracle)),
            ("reversal", same_graph(&g, &unreversed)),
            ("scaling", same_graph(&g, scaled.edges())),
        ];
        for (what, ok) in checks {
            if !ok {
                failures.push(json!({ "polygon": i, "check": what, "polygon_json": polygon_value(&p) }));
            }
        }
    }
    let measured = json!({ "convex_sizes": [4, 8], "random_polygons": 20, "visible_pairs": edges_seen, "failures": failures });
    Ok((failures.is_empty(), measured))
}

fn polygon_value(p: &Polygon) -> Value {
    serde_json::from_str(&p.to_json()).unwrap_or(Value::Null)
}

fn solver_oracle(_: u64) -> Result<(bool, Value), String> {
    let mut states = 0usize;
    let mut graphs = 0usize;
    let mut mismatches = Vec::new();
    for n in 1..=5 {
        for g in connected_graphs(n) {
            graphs += 1;
            for variant in [GameVariant::Cops, GameVariant::Zombies, GameVariant::LazyZombies] {
                let table = solve_game(&g, variant, 1).map_err(err)?;
                let mut mm = Minimax::new(&g, variant);
                // no forced win is longer than the number of states
                let depth = (2 * n * n + 2) as u32;
                for p in 0..n {
                    for e in 0..n {
                        for turn in [Turn::Pursuers, Turn::Evader] {
                            states += 1;
                            let want = mm.value(&[p], e, turn == Turn::Pursuers, depth);
                            let got = match table.label_at(&[p], e, turn) {
                                Label::PursuerWin { plies } => Some(plies),
                                Label::SurvivorWin => None,
                            };
                            if want != got && mismatches.len() < 10 {
                                mismatches.push(json!({
                                    "edges": g.edges(),
                                    "variant": variant.name(),
                                    "state": [p, e, turn == Turn::Pursuers],
                                    "solver": got,
                                    "minimax": want,
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((mismatches.is_empty(), json!({ "graphs": graphs, "states": states, "mismatches": mismatches })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_matching() {
        assert!(selects(None, "a", "b", "c"));
        assert!(selects(Some("thm1"), "script-evasion", "thm1", "thm1"));
        assert!(!selects(Some("thm6"), "script-evasion", "thm1", "thm1"));
        assert!(known_suite("decomp") && known_suite("THM9") && !known_suite("nope"));
    }

    #[test]
    fn skipped_claims_are_listed() {
        let r = run_verify(Some("visibility"), 3);
        assert_eq!(r.claims.len(), CLAIMS.len());
        assert_eq!(r.claims.iter().filter(|c| c.status == Status::Skipped).count(), CLAIMS.len() - 1);
        assert_eq!(r.claim("visibility").unwrap().status, Status::Pass);
    }

    #[test]
    fn at_most_treats_none_as_large() {
        assert_eq!(at_most(Some(1), None), Some(true));
        assert_eq!(at_most(None, Some(3)), Some(false));
        assert_eq!(at_most(None, None), None);
        assert_eq!(at_most(Some(2), Some(1)), Some(false));
    }
}
