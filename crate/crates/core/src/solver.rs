//! Exact retrograde solving of the game graph for `k` pursuers.
//!
//! States are `(pursuer multiset, survivor, turn)`. Terminal (captured)
//! states seed a FIFO queue; predecessors are generated by undoing moves.
//! Pursuer-turn states are OR nodes, survivor-turn states are AND nodes with
//! a counter of unresolved successors. Whatever is still unlabelled when the
//! queue drains is a survivor win (the survivor can evade forever).

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{evader_options, pursuer_options, Evader, GameState, GameVariant, PursuerStrategy, Turn};
use crate::graph::{all_pairs_distances, DistanceMatrix, Graph, GraphError, Vertex};

pub const DEFAULT_STATE_BUDGET: u64 = 50_000_000;
pub const BUDGET_ENV: &str = "PURSUIT_STATE_BUDGET";

const UNKNOWN: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("state space of {needed} states exceeds the budget of {budget}")]
    StateBudgetExceeded { needed: u64, budget: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("need at least one pursuer")]
    NoPursuers,
}

/// State budget from `PURSUIT_STATE_BUDGET`, else the default.
pub fn state_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().replace('_', "").parse().ok())
        .unwrap_or(DEFAULT_STATE_BUDGET)
}

/// Binomial coefficients up to a fixed row, saturating on overflow.
#[derive(Debug, Clone)]
struct Binomials {
    rows: Vec<Vec<u64>>,
}

impl Binomials {
    fn new(max: usize) -> Self {
        let mut rows = vec![vec![1u64]];
        for m in 1..=max {
            let prev = &rows[m - 1];
            let mut row = vec![1u64; m + 1];
            for j in 1..m {
                row[j] = prev[j - 1].saturating_add(prev[j]);
            }
            rows.push(row);
        }
        Binomials { rows }
    }

    fn get(&self, m: usize, j: usize) -> u64 {
        if j > m {
            0
        } else {
            self.rows[m][j]
        }
    }
}

/// Number of pursuer multisets of size `k` on `n` vertices, saturating.
pub fn multiset_count(n: usize, k: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    Binomials::new(n + k).get(n + k - 1, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "label")]
pub enum Label {
    /// The pursuers force capture; `plies` counts turns until co-location.
    PursuerWin { plies: u32 },
    SurvivorWin,
}

/// Complete labelling of the state space for one `(graph, variant, k)`.
#[derive(Debug, Clone)]
pub struct GameTable {
    graph: Graph,
    dist: DistanceMatrix,
    variant: GameVariant,
    k: usize,
    multisets: usize,
    binom: Binomials,
    values: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSummary {
    pub variant: GameVariant,
    pub k: usize,
    pub n: usize,
    pub states: usize,
    pub pursuer_win_states: usize,
    pub survivor_win_states: usize,
    /// Pursuer placements from which every survivor placement loses.
    pub winning_placements: usize,
    pub best_placement: Option<Vec<Vertex>>,
    /// Latest capture round against the best placement, if it wins.
    pub best_capture_round: Option<usize>,
}

impl GameTable {
    pub fn variant(&self) -> GameVariant {
        self.variant
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn state_count(&self) -> usize {
        self.values.len()
    }

    fn rank(&self, sorted: &[Vertex]) -> usize {
        sorted.iter().enumerate().map(|(i, &p)| self.binom.get(p + i, i + 1) as usize).sum()
    }

    fn unrank(&self, mut r: usize, out: &mut [Vertex]) {
        let n = self.n();
        for i in (0..self.k).rev() {
            // largest c with C(c, i+1) <= r
            let mut c = i;
            while c + 1 < n + i && self.binom.get(c + 1, i + 1) as usize <= r {
                c += 1;
            }
            r -= self.binom.get(c, i + 1) as usize;
            out[i] = c - i;
        }
    }

    fn index_of(&self, sorted: &[Vertex], evader: Vertex, turn: Turn) -> usize {
        (self.rank(sorted) * self.n() + evader) * 2 + usize::from(turn == Turn::Evader)
    }

    fn index_labeled(&self, pursuers: &[Vertex], evader: Vertex, turn: Turn) -> usize {
        let mut sorted = pursuers.to_vec();
        sorted.sort_unstable();
        self.index_of(&sorted, evader, turn)
    }

    pub fn label(&self, state: &GameState) -> Label {
        to_label(self.values[self.index_of(state.pursuers(), state.evader, state.turn)])
    }

    /// Label of the round-start state with pursuers at `pursuers` (any order).
    pub fn label_at(&self, pursuers: &[Vertex], evader: Vertex, turn: Turn) -> Label {
        to_label(self.values[self.index_labeled(pursuers, evader, turn)])
    }

    /// Capture round under optimal play when the pursuers are about to move
    /// in round 1 (or the survivor was placed on a pursuer: round 0).
    pub fn capture_round(&self, pursuers: &[Vertex], evader: Vertex) -> Option<usize> {
        match self.label_at(pursuers, evader, Turn::Pursuers) {
            Label::PursuerWin { plies } => Some(plies.div_ceil(2) as usize),
            Label::SurvivorWin => None,
        }
    }

    /// All pursuer multisets in rank order.
    pub fn placements(&self) -> impl Iterator<Item = Vec<Vertex>> + '_ {
        let mut buf = vec![0; self.k];
        (0..self.multisets).map(move |r| {
            self.unrank(r, &mut buf);
            buf.clone()
        })
    }

    /// Latest capture round over every survivor placement, or `None` if some
    /// survivor placement evades forever.
    pub fn placement_value(&self, placement: &[Vertex]) -> Option<usize> {
        let mut worst = 0;
        for v in 0..self.n() {
            worst = worst.max(self.capture_round(placement, v)?);
        }
        Some(worst)
    }

    /// Survivor placement that evades if possible, else delays capture the
    /// longest; lowest id on ties.
    pub fn survivor_placement(&self, placement: &[Vertex]) -> Vertex {
        (0..self.n())
            .max_by_key(|&v| (rank_for_survivor(self.label_at(placement, v, Turn::Pursuers)), std::cmp::Reverse(v)))
            .unwrap_or(0)
    }

    /// Winning placement with the fastest guaranteed capture, lowest rank on
    /// ties.
    pub fn best_placement(&self) -> Option<(Vec<Vertex>, usize)> {
        let mut best: Option<(Vec<Vertex>, usize)> = None;
        for p in self.placements() {
            if let Some(v) = self.placement_value(&p) {
                if best.as_ref().is_none_or(|(_, b)| v < *b) {
                    best = Some((p, v));
                }
            }
        }
        best
    }

    /// Time-optimal joint move in a pursuer-win state (labelled order), lowest
    /// ids on ties. In a survivor-win state every move loses; the
    /// lexicographically first joint move is returned.
    pub fn pursuer_move(&self, pursuers: &[Vertex], evader: Vertex) -> Vec<Vertex> {
        let options: Vec<Vec<Vertex>> = pursuers
            .iter()
            .map(|&p| pursuer_options(&self.graph, &self.dist, self.variant, p, evader))
            .collect();
        let mut best: Option<(u32, Vec<Vertex>)> = None;
        for_each_product(&options, |targets| {
            let value = self.values[self.index_labeled(targets, evader, Turn::Evader)];
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                best = Some((value, targets.to_vec()));
            }
        });
        best.map(|(_, m)| m).unwrap_or_else(|| pursuers.to_vec())
    }

    /// Survivor reply: an evading successor if one exists, else the move that
    /// delays capture longest; lowest id on ties.
    pub fn survivor_move(&self, pursuers: &[Vertex], evader: Vertex) -> Vertex {
        evader_options(&self.graph, evader)
            .into_iter()
            .max_by_key(|&w| (rank_for_survivor(self.label_at(pursuers, w, Turn::Pursuers)), std::cmp::Reverse(w)))
            .unwrap_or(evader)
    }

    pub fn summary(&self) -> TableSummary {
        let survivor = self.values.iter().filter(|&&v| v == UNKNOWN).count();
        let winning = self.placements().filter(|p| self.placement_value(p).is_some()).count();
        let best = self.best_placement();
        TableSummary {
            variant: self.variant,
            k: self.k,
            n: self.n(),
            states: self.values.len(),
            pursuer_win_states: self.values.len() - survivor,
            survivor_win_states: survivor,
            winning_placements: winning,
            best_capture_round: best.as_ref().map(|b| b.1),
            best_placement: best.map(|b| b.0),
        }
    }
}

fn to_label(v: u32) -> Label {
    if v == UNKNOWN {
        Label::SurvivorWin
    } else {
        Label::PursuerWin { plies: v }
    }
}

fn rank_for_survivor(label: Label) -> u64 {
    match label {
        Label::SurvivorWin => u64::MAX,
        Label::PursuerWin { plies } => u64::from(plies),
    }
}

/// Calls `f` on every element of the Cartesian product, in lexicographic
/// order of the (sorted) option lists.
pub(crate) fn for_each_product(options: &[Vec<Vertex>], mut f: impl FnMut(&[Vertex])) {
    if options.iter().any(Vec::is_empty) {
        return;
    }
    let k = options.len();
    let mut idx = vec![0usize; k];
    let mut cur: Vec<Vertex> = options.iter().map(|o| o[0]).collect();
    loop {
        f(&cur);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < options[i].len() {
                cur[i] = options[i][idx[i]];
                break;
            }
            idx[i] = 0;
            cur[i] = options[i][0];
        }
    }
}

/// Vertices a pursuer may have come from to reach `to` when the survivor is
/// at `evader`.
fn pursuer_origins(g: &Graph, d: &DistanceMatrix, variant: GameVariant, to: Vertex, evader: Vertex) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(g.degree(to) + 1);
    match variant {
        GameVariant::Cops => {
            out.push(to);
            out.extend_from_slice(g.neighbors(to));
        }
        GameVariant::Zombies | GameVariant::LazyZombies => {
            if variant == GameVariant::LazyZombies {
                out.push(to);
            }
            let dt = d.get(to, evader);
            out.extend(g.neighbors(to).iter().copied().filter(|&u| d.get(u, evader) == dt + 1));
        }
    }
    out
}

pub fn solve_game(g: &Graph, variant: GameVariant, k: usize) -> Result<GameTable, SolverError> {
    solve_game_with_budget(g, variant, k, state_budget())
}

pub fn solve_game_with_budget(g: &Graph, variant: GameVariant, k: usize, budget: u64) -> Result<GameTable, SolverError> {
    g.require_connected()?;
    if k == 0 {
        return Err(SolverError::NoPursuers);
    }
    let n = g.n();
    let multisets = multiset_count(n, k);
    let needed = multisets.saturating_mul(n as u64).saturating_mul(2);
    if needed > budget || needed > u32::MAX as u64 {
        return Err(SolverError::StateBudgetExceeded { needed, budget });
    }
    let mut table = GameTable {
        graph: g.clone(),
        dist: all_pairs_distances(g),
        variant,
        k,
        multisets: multisets as usize,
        binom: Binomials::new(n + k),
        values: vec![UNKNOWN; needed as usize],
    };
    retrograde(&mut table);
    Ok(table)
}

fn retrograde(t: &mut GameTable) {
    let n = t.n();
    let k = t.k;
    let total = t.values.len();
    // Unresolved successor count for survivor-turn states.
    let mut counter: Vec<u16> = vec![0; total];
    let mut queue: VecDeque<u32> = VecDeque::new();
    let mut pos = vec![0; k];

    for r in 0..t.multisets {
        t.unrank(r, &mut pos);
        for e in 0..n {
            let base = (r * n + e) * 2;
            if pos.contains(&e) {
                t.values[base] = 0;
                t.values[base + 1] = 0;
                queue.push_back(base as u32);
                queue.push_back(base as u32 + 1);
            } else {
                counter[base + 1] = (t.graph.degree(e) + 1) as u16;
            }
        }
    }

    let mut origins: Vec<Vec<Vertex>> = vec![Vec::new(); k];
    let mut preds: Vec<Vec<Vertex>> = Vec::new();
    while let Some(s) = queue.pop_front() {
        let s = s as usize;
        let value = t.values[s];
        let turn_evader = s % 2 == 1;
        let e = (s / 2) % n;
        t.unrank(s / 2 / n, &mut pos);
        if turn_evader {
            // Pursuers just moved: predecessors are pursuer-turn states.
            for (i, &q) in pos.iter().enumerate() {
                origins[i] = pursuer_origins(&t.graph, &t.dist, t.variant, q, e);
            }
            preds.clear();
            for_each_product(&origins, |p| {
                let mut p = p.to_vec();
                p.sort_unstable();
                preds.push(p);
            });
            preds.sort_unstable();
            preds.dedup();
            for p in &preds {
                if p.contains(&e) {
                    continue;
                }
                let idx = t.index_of(p, e, Turn::Pursuers);
                if t.values[idx] == UNKNOWN {
                    t.values[idx] = value + 1;
                    queue.push_back(idx as u32);
                }
            }
        } else {
            // Survivor just moved: predecessors are survivor-turn states.
            let r = s / 2 / n;
            let from = std::iter::once(e).chain(t.graph.neighbors(e).iter().copied());
            for w in from {
                if pos.contains(&w) {
                    continue;
                }
                let idx = (r * n + w) * 2 + 1;
                if t.values[idx] != UNKNOWN {
                    continue;
                }
                counter[idx] -= 1;
                if counter[idx] == 0 {
                    t.values[idx] = value + 1;
                    queue.push_back(idx as u32);
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NumberMode {
    /// Pursuers choose their starting vertices.
    Chosen,
    /// Starting vertices are chosen by an adversary.
    Adversarial,
}

impl std::str::FromStr for NumberMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "chosen" => Ok(NumberMode::Chosen),
            "adversarial" | "universal" => Ok(NumberMode::Adversarial),
            other => Err(format!("unknown mode {other:?} (expected chosen or adversarial)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameNumber {
    Exact(usize),
    NoneUpTo(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameNumberResult {
    pub variant: GameVariant,
    pub mode: NumberMode,
    pub value: GameNumber,
    /// Chosen mode: a winning placement for the reported number.
    /// Adversarial mode: when no number was found, a losing placement at `k_max`.
    pub witness: Option<Vec<Vertex>>,
    /// Survivor start that beats the adversarial counterexample.
    pub survivor: Option<Vertex>,
}

impl GameNumberResult {
    pub fn exact(&self) -> Option<usize> {
        match self.value {
            GameNumber::Exact(k) => Some(k),
            GameNumber::NoneUpTo(_) => None,
        }
    }
}

pub fn game_number(g: &Graph, variant: GameVariant, mode: NumberMode, k_max: usize) -> Result<GameNumberResult, SolverError> {
    game_number_with_budget(g, variant, mode, k_max, state_budget())
}

pub fn game_number_with_budget(
    g: &Graph,
    variant: GameVariant,
    mode: NumberMode,
    k_max: usize,
    budget: u64,
) -> Result<GameNumberResult, SolverError> {
    if k_max == 0 {
        return Err(SolverError::NoPursuers);
    }
    let mut last_counter = None;
    for k in 1..=k_max {
        let table = solve_game_with_budget(g, variant, k, budget)?;
        match mode {
            NumberMode::Chosen => {
                if let Some((p, _)) = table.best_placement() {
                    return Ok(GameNumberResult {
                        variant,
                        mode,
                        value: GameNumber::Exact(k),
                        witness: Some(p),
                        survivor: None,
                    });
                }
            }
            NumberMode::Adversarial => {
                let losing = table.placements().find_map(|p| {
                    (0..g.n()).find(|&v| table.capture_round(&p, v).is_none()).map(|v| (p, v))
                });
                match losing {
                    None => {
                        return Ok(GameNumberResult {
                            variant,
                            mode,
                            value: GameNumber::Exact(k),
                            witness: None,
                            survivor: None,
                        })
                    }
                    Some(c) => last_counter = Some(c),
                }
            }
        }
    }
    let (witness, survivor) = match last_counter {
        Some((p, v)) => (Some(p), Some(v)),
        None => (None, None),
    };
    Ok(GameNumberResult { variant, mode, value: GameNumber::NoneUpTo(k_max), witness, survivor })
}

/// Table-optimal pursuers. Placement is the fastest winning placement, or the
/// first multiset when none wins.
pub struct OptimalPursuer<'a> {
    pub table: &'a GameTable,
}

impl PursuerStrategy for OptimalPursuer<'_> {
    type Memory = ();

    fn name(&self) -> String {
        "optimal".into()
    }

    fn placement(&self, k: usize) -> Vec<Vertex> {
        debug_assert_eq!(k, self.table.k);
        self.table.best_placement().map(|b| b.0).unwrap_or_else(|| vec![0; self.table.k])
    }

    fn start(&self, _: &[Vertex], _: Vertex) -> Result<(), String> {
        Ok(())
    }

    fn next(&self, _: &mut (), pursuers: &[Vertex], evader: Vertex) -> Result<Vec<Vertex>, String> {
        Ok(self.table.pursuer_move(pursuers, evader))
    }
}

/// Table-optimal survivor.
pub struct OptimalSurvivor<'a> {
    pub table: &'a GameTable,
}

impl Evader for OptimalSurvivor<'_> {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn place(&mut self, pursuers: &[Vertex]) -> Vertex {
        self.table.survivor_placement(pursuers)
    }

    fn act(&mut self, pursuers: &[Vertex], evader: Vertex) -> Vertex {
        self.table.survivor_move(pursuers, evader)
    }
}

/// Pair of table-derived policies.
pub fn optimal_policies(table: &GameTable) -> (OptimalPursuer<'_>, OptimalSurvivor<'_>) {
    (OptimalPursuer { table }, OptimalSurvivor { table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play_match, Driven, PlacementMode};

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn ranking_round_trips() {
        let g = path(5);
        let t = solve_game(&g, GameVariant::Cops, 3).unwrap();
        let all: Vec<_> = t.placements().collect();
        assert_eq!(all.len(), 35);
        for (r, p) in all.iter().enumerate() {
            assert!(p.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(t.rank(p), r);
        }
    }

    #[test]
    fn clique_one_cop_wins_everywhere() {
        let t = solve_game(&complete(3), GameVariant::Cops, 1).unwrap();
        for p in 0..3 {
            for e in 0..3 {
                for turn in [Turn::Pursuers, Turn::Evader] {
                    assert!(matches!(t.label_at(&[p], e, turn), Label::PursuerWin { .. }));
                }
            }
        }
    }

    #[test]
    fn c5_zombie_at_distance_two_loses() {
        let g = cycle(5);
        let t = solve_game(&g, GameVariant::Zombies, 1).unwrap();
        let d = all_pairs_distances(&g);
        for p in 0..5 {
            for e in 0..5 {
                let label = t.label_at(&[p], e, Turn::Pursuers);
                if d.get(p, e) == 2 {
                    assert_eq!(label, Label::SurvivorWin);
                }
            }
        }
    }

    #[test]
    fn p4_lazy_zombie_always_wins() {
        let t = solve_game(&path(4), GameVariant::LazyZombies, 1).unwrap();
        assert_eq!(t.summary().survivor_win_states, 0);
    }

    #[test]
    fn game_number_examples() {
        let k6 = complete(6);
        let r = game_number(&k6, GameVariant::Zombies, NumberMode::Chosen, 3).unwrap();
        assert_eq!(r.value, GameNumber::Exact(1));
        let r = game_number(&cycle(5), GameVariant::Zombies, NumberMode::Adversarial, 3).unwrap();
        assert_eq!(r.value, GameNumber::NoneUpTo(3));
        let w = r.witness.unwrap();
        assert!(w.iter().all(|&v| v == w[0]), "{w:?}");
        let r = game_number(&cycle(5), GameVariant::Zombies, NumberMode::Chosen, 3).unwrap();
        assert_eq!(r.value, GameNumber::Exact(2));
    }

    #[test]
    fn budget_is_enforced() {
        let err = solve_game_with_budget(&complete(6), GameVariant::Cops, 3, 10).unwrap_err();
        assert!(matches!(err, SolverError::StateBudgetExceeded { needed: 672, budget: 10 }));
        let split = Graph::new(2, &[]).unwrap();
        assert!(matches!(solve_game(&split, GameVariant::Cops, 1), Err(SolverError::Graph(_))));
    }

    #[test]
    fn optimal_play_matches_table_on_p4() {
        let g = path(4);
        let d = all_pairs_distances(&g);
        let t = solve_game(&g, GameVariant::Zombies, 1).unwrap();
        for p in 0..4 {
            let (pursuer, mut survivor) = optimal_policies(&t);
            let mut pursuer = Driven::new(pursuer);
            let trace = play_match(
                &g,
                &d,
                GameVariant::Zombies,
                1,
                &mut pursuer,
                &mut survivor,
                &PlacementMode::Adversarial(vec![p]),
                50,
            )
            .unwrap();
            let start = trace.records[0].evader;
            assert_eq!(trace.capture_round(), t.capture_round(&[p], start));
            // the survivor runs to the far end and waits there
            assert_eq!(trace.capture_round(), Some(p.max(3 - p)));
        }
    }

    #[test]
    fn optimal_survivor_evades_on_c5() {
        let g = cycle(5);
        let d = all_pairs_distances(&g);
        let t = solve_game(&g, GameVariant::Zombies, 1).unwrap();
        let (pursuer, mut survivor) = optimal_policies(&t);
        let mut pursuer = Driven::new(pursuer);
        let trace = play_match(&g, &d, GameVariant::Zombies, 1, &mut pursuer, &mut survivor, &PlacementMode::Chosen, 200)
            .unwrap();
        assert!(!trace.captured());
        assert!(trace.first_repeat().is_some());
    }

    #[test]
    fn product_order_is_lexicographic() {
        let mut seen = Vec::new();
        for_each_product(&[vec![1, 2], vec![0, 5]], |p| seen.push(p.to_vec()));
        assert_eq!(seen, vec![vec![1, 0], vec![1, 5], vec![2, 0], vec![2, 5]]);
    }
}
