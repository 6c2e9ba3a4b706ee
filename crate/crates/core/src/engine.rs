//! Game semantics for cops, zombies and lazy zombies against one survivor.
//!
//! A round is a pursuer turn followed by a survivor turn. Round 0 is the
//! placement round: pursuers are placed first, then the survivor. Capture is
//! co-location at any instant, including the survivor stepping onto a pursuer.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DistanceMatrix, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameVariant {
    Cops,
    Zombies,
    LazyZombies,
}

impl GameVariant {
    pub const ALL: [GameVariant; 3] = [GameVariant::Cops, GameVariant::Zombies, GameVariant::LazyZombies];

    pub fn name(self) -> &'static str {
        match self {
            GameVariant::Cops => "cops",
            GameVariant::Zombies => "zombies",
            GameVariant::LazyZombies => "lazy_zombies",
        }
    }
}

impl fmt::Display for GameVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GameVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "cops" | "cop" => Ok(GameVariant::Cops),
            "zombies" | "zombie" => Ok(GameVariant::Zombies),
            "lazy" | "lazy_zombies" | "lazy_zombie" => Ok(GameVariant::LazyZombies),
            other => Err(format!("unknown variant {other:?} (expected cops, zombies or lazy)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Turn {
    Pursuers,
    Evader,
}

/// Canonical game state: the pursuer multiset is kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameState {
    pursuers: Vec<Vertex>,
    pub evader: Vertex,
    pub turn: Turn,
}

impl GameState {
    pub fn new(mut pursuers: Vec<Vertex>, evader: Vertex, turn: Turn) -> Self {
        pursuers.sort_unstable();
        GameState { pursuers, evader, turn }
    }

    pub fn pursuers(&self) -> &[Vertex] {
        &self.pursuers
    }

    pub fn is_captured(&self) -> bool {
        self.pursuers.contains(&self.evader)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("it is not the {0:?} turn")]
    WrongTurn(Turn),
    #[error("the state is terminal (survivor captured)")]
    TerminalState,
    #[error("pursuer {index} cannot move from {from} to {to}")]
    IllegalPursuerMove { index: usize, from: Vertex, to: Vertex },
    #[error("survivor cannot move from {from} to {to}")]
    IllegalEvaderMove { from: Vertex, to: Vertex },
    #[error("expected {expected} pursuer moves, got {got}")]
    MoveArity { expected: usize, got: usize },
    #[error("policy {policy} made an illegal move: {source}")]
    PolicyIllegalMove {
        policy: String,
        #[source]
        source: Box<EngineError>,
    },
    #[error("policy {policy} failed: {reason}")]
    Policy { policy: String, reason: String },
    #[error("placement {0:?} is invalid for this graph")]
    BadPlacement(Vec<Vertex>),
    #[error("search exceeded {0} states")]
    SearchBudget(usize),
}

/// Moves available to a pursuer at `from` when the survivor stands on `evader`.
pub fn pursuer_options(g: &Graph, d: &DistanceMatrix, variant: GameVariant, from: Vertex, evader: Vertex) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(g.degree(from) + 1);
    match variant {
        GameVariant::Cops => {
            out.push(from);
            out.extend_from_slice(g.neighbors(from));
        }
        GameVariant::Zombies | GameVariant::LazyZombies => {
            let here = d.get(from, evader);
            if variant == GameVariant::LazyZombies {
                out.push(from);
            }
            if here != DistanceMatrix::UNREACHABLE && here > 0 {
                out.extend(g.neighbors(from).iter().copied().filter(|&w| d.get(w, evader) + 1 == here));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn is_legal_pursuer_move(
    g: &Graph,
    d: &DistanceMatrix,
    variant: GameVariant,
    from: Vertex,
    evader: Vertex,
    to: Vertex,
) -> bool {
    match variant {
        GameVariant::Cops => to == from || g.has_edge(from, to),
        GameVariant::Zombies | GameVariant::LazyZombies => {
            if to == from {
                return variant == GameVariant::LazyZombies;
            }
            let here = d.get(from, evader);
            here != DistanceMatrix::UNREACHABLE && g.has_edge(from, to) && d.get(to, evader) + 1 == here
        }
    }
}

pub fn legal_pursuer_moves(
    g: &Graph,
    d: &DistanceMatrix,
    state: &GameState,
    idx: usize,
    variant: GameVariant,
) -> Result<Vec<Vertex>, EngineError> {
    if state.turn != Turn::Pursuers {
        return Err(EngineError::WrongTurn(Turn::Pursuers));
    }
    if state.is_captured() {
        return Err(EngineError::TerminalState);
    }
    let from = *state.pursuers.get(idx).ok_or(EngineError::MoveArity {
        expected: state.pursuers.len(),
        got: idx + 1,
    })?;
    Ok(pursuer_options(g, d, variant, from, state.evader))
}

pub fn evader_options(g: &Graph, at: Vertex) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(g.degree(at) + 1);
    out.push(at);
    out.extend_from_slice(g.neighbors(at));
    out.sort_unstable();
    out
}

pub fn legal_evader_moves(g: &Graph, state: &GameState) -> Result<Vec<Vertex>, EngineError> {
    if state.turn != Turn::Evader {
        return Err(EngineError::WrongTurn(Turn::Evader));
    }
    if state.is_captured() {
        return Err(EngineError::TerminalState);
    }
    Ok(evader_options(g, state.evader))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// One destination per pursuer, in the state's (sorted) pursuer order.
    Pursuers(Vec<Vertex>),
    Evader(Vertex),
}

/// Applies one turn. Pursuer legality is judged against the survivor's
/// position at the start of the turn.
pub fn step(
    g: &Graph,
    d: &DistanceMatrix,
    variant: GameVariant,
    state: &GameState,
    mv: &Move,
) -> Result<(GameState, bool), EngineError> {
    if state.is_captured() {
        return Err(EngineError::TerminalState);
    }
    match (state.turn, mv) {
        (Turn::Pursuers, Move::Pursuers(targets)) => {
            let next = apply_pursuer_move(g, d, variant, &state.pursuers, state.evader, targets)?;
            let next = GameState::new(next, state.evader, Turn::Evader);
            let captured = next.is_captured();
            Ok((next, captured))
        }
        (Turn::Evader, Move::Evader(to)) => {
            apply_evader_move(g, state.evader, *to)?;
            let next = GameState::new(state.pursuers.clone(), *to, Turn::Pursuers);
            let captured = next.is_captured();
            Ok((next, captured))
        }
        (turn, _) => Err(EngineError::WrongTurn(match turn {
            Turn::Pursuers => Turn::Evader,
            Turn::Evader => Turn::Pursuers,
        })),
    }
}

fn apply_pursuer_move(
    g: &Graph,
    d: &DistanceMatrix,
    variant: GameVariant,
    from: &[Vertex],
    evader: Vertex,
    targets: &[Vertex],
) -> Result<Vec<Vertex>, EngineError> {
    if targets.len() != from.len() {
        return Err(EngineError::MoveArity { expected: from.len(), got: targets.len() });
    }
    for (index, (&f, &t)) in from.iter().zip(targets).enumerate() {
        if t >= g.n() || !is_legal_pursuer_move(g, d, variant, f, evader, t) {
            return Err(EngineError::IllegalPursuerMove { index, from: f, to: t });
        }
    }
    Ok(targets.to_vec())
}

fn apply_evader_move(g: &Graph, from: Vertex, to: Vertex) -> Result<(), EngineError> {
    if to == from || (to < g.n() && g.has_edge(from, to)) {
        Ok(())
    } else {
        Err(EngineError::IllegalEvaderMove { from, to })
    }
}

/// A pursuer strategy whose private memory is explicit, so that matches can
/// be replayed and exhaustively searched.
pub trait PursuerStrategy {
    type Memory: Clone + Eq + Hash + fmt::Debug;

    fn name(&self) -> String;

    /// Starting vertices when the pursuers choose their own placement.
    fn placement(&self, k: usize) -> Vec<Vertex>;

    /// Called once both sides are placed.
    fn start(&self, pursuers: &[Vertex], evader: Vertex) -> Result<Self::Memory, String>;

    /// One destination per pursuer (labelled order).
    fn next(&self, memory: &mut Self::Memory, pursuers: &[Vertex], evader: Vertex) -> Result<Vec<Vertex>, String>;
}

/// Object-safe pursuer used by [`play_match`].
pub trait Pursuer {
    fn name(&self) -> String;
    fn place(&mut self, k: usize) -> Vec<Vertex>;
    fn begin(&mut self, pursuers: &[Vertex], evader: Vertex) -> Result<(), String>;
    fn act(&mut self, pursuers: &[Vertex], evader: Vertex) -> Result<Vec<Vertex>, String>;
}

/// Runs a [`PursuerStrategy`] as a stateful [`Pursuer`].
pub struct Driven<S: PursuerStrategy> {
    pub strategy: S,
    memory: Option<S::Memory>,
}

impl<S: PursuerStrategy> Driven<S> {
    pub fn new(strategy: S) -> Self {
        Driven { strategy, memory: None }
    }

    pub fn memory(&self) -> Option<&S::Memory> {
        self.memory.as_ref()
    }
}

impl<S: PursuerStrategy> Pursuer for Driven<S> {
    fn name(&self) -> String {
        self.strategy.name()
    }

    fn place(&mut self, k: usize) -> Vec<Vertex> {
        self.strategy.placement(k)
    }

    fn begin(&mut self, pursuers: &[Vertex], evader: Vertex) -> Result<(), String> {
        self.memory = Some(self.strategy.start(pursuers, evader)?);
        Ok(())
    }

    fn act(&mut self, pursuers: &[Vertex], evader: Vertex) -> Result<Vec<Vertex>, String> {
        let memory = self.memory.as_mut().ok_or("strategy used before start")?;
        self.strategy.next(memory, pursuers, evader)
    }
}

pub trait Evader {
    fn name(&self) -> String;
    fn place(&mut self, pursuers: &[Vertex]) -> Vertex;
    fn act(&mut self, pursuers: &[Vertex], evader: Vertex) -> Vertex;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlacementMode {
    /// The pursuer policy picks its own starting vertices.
    Chosen,
    /// Starting vertices are imposed from outside.
    Adversarial(Vec<Vertex>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub variant: GameVariant,
    pub k: usize,
    pub n: usize,
    pub placements: Vec<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mover {
    P,
    E,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub round: usize,
    pub mover: Mover,
    pub positions: Vec<Vertex>,
    pub evader: Vertex,
    pub captured: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Capture { round: usize },
    RoundLimit { rounds: usize },
}

/// Full record of a match. The first record is the survivor's placement
/// (round 0); afterwards each turn adds one record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub header: TraceHeader,
    pub records: Vec<TraceRecord>,
    pub outcome: Outcome,
}

impl Trace {
    pub fn captured(&self) -> bool {
        matches!(self.outcome, Outcome::Capture { .. })
    }

    pub fn capture_round(&self) -> Option<usize> {
        match self.outcome {
            Outcome::Capture { round } => Some(round),
            Outcome::RoundLimit { .. } => None,
        }
    }

    /// Index of the first turn record whose full position was already seen
    /// at an earlier record with the same mover, if any.
    pub fn first_repeat(&self) -> Option<(usize, usize)> {
        let mut seen = HashMap::new();
        for (i, r) in self.records.iter().enumerate() {
            if r.round == 0 {
                continue;
            }
            let key = (r.mover, r.positions.clone(), r.evader);
            if let Some(&j) = seen.get(&key) {
                return Some((j, i));
            }
            seen.insert(key, i);
        }
        None
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&self.header).expect("header serializes");
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<(TraceHeader, Vec<TraceRecord>), serde_json::Error> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = serde_json::from_str(lines.next().unwrap_or("{}"))?;
        let records = lines.map(serde_json::from_str).collect::<Result<Vec<_>, _>>()?;
        Ok((header, records))
    }
}

fn policy_err(policy: &str, source: EngineError) -> EngineError {
    EngineError::PolicyIllegalMove { policy: policy.to_string(), source: Box::new(source) }
}

/// Plays one match up to `round_limit` rounds after placement.
#[allow(clippy::too_many_arguments)]
pub fn play_match(
    g: &Graph,
    d: &DistanceMatrix,
    variant: GameVariant,
    k: usize,
    pursuer: &mut dyn Pursuer,
    evader: &mut dyn Evader,
    placement: &PlacementMode,
    round_limit: usize,
) -> Result<Trace, EngineError> {
    let mut positions = match placement {
        PlacementMode::Chosen => pursuer.place(k),
        PlacementMode::Adversarial(p) => p.clone(),
    };
    if positions.len() != k || positions.iter().any(|&v| v >= g.n()) {
        return Err(EngineError::BadPlacement(positions));
    }
    let header = TraceHeader { variant, k, n: g.n(), placements: positions.clone() };
    let mut records = Vec::new();
    let start = evader.place(&positions);
    if start >= g.n() {
        return Err(policy_err(&evader.name(), EngineError::BadPlacement(vec![start])));
    }
    let mut at = start;
    let captured = positions.contains(&at);
    records.push(TraceRecord { round: 0, mover: Mover::E, positions: positions.clone(), evader: at, captured });
    if captured {
        return Ok(Trace { header, records, outcome: Outcome::Capture { round: 0 } });
    }
    pursuer
        .begin(&positions, at)
        .map_err(|reason| EngineError::Policy { policy: pursuer.name(), reason })?;

    for round in 1..=round_limit {
        let targets = pursuer
            .act(&positions, at)
            .map_err(|reason| EngineError::Policy { policy: pursuer.name(), reason })?;
        positions =
            apply_pursuer_move(g, d, variant, &positions, at, &targets).map_err(|e| policy_err(&pursuer.name(), e))?;
        let captured = positions.contains(&at);
        records.push(TraceRecord { round, mover: Mover::P, positions: positions.clone(), evader: at, captured });
        if captured {
            return Ok(Trace { header, records, outcome: Outcome::Capture { round } });
        }
        let to = evader.act(&positions, at);
        apply_evader_move(g, at, to).map_err(|e| policy_err(&evader.name(), e))?;
        at = to;
        let captured = positions.contains(&at);
        records.push(TraceRecord { round, mover: Mover::E, positions: positions.clone(), evader: at, captured });
        if captured {
            return Ok(Trace { header, records, outcome: Outcome::Capture { round } });
        }
    }
    Ok(Trace { header, records, outcome: Outcome::RoundLimit { rounds: round_limit } })
}

/// Re-applies every recorded turn through the legality checks and returns the
/// capture round, if any. Fails on the first illegal or inconsistent record.
pub fn replay(
    g: &Graph,
    d: &DistanceMatrix,
    header: &TraceHeader,
    records: &[TraceRecord],
) -> Result<Option<usize>, EngineError> {
    let mut positions = header.placements.clone();
    let mut at: Option<Vertex> = None;
    let mut captured_at = None;
    for r in records {
        if captured_at.is_some() {
            return Err(EngineError::TerminalState);
        }
        match (r.mover, at) {
            (Mover::E, None) => {
                if r.round != 0 || r.positions != positions {
                    return Err(EngineError::BadPlacement(r.positions.clone()));
                }
            }
            (Mover::P, Some(e)) => {
                positions = apply_pursuer_move(g, d, header.variant, &positions, e, &r.positions)?;
                if r.evader != e {
                    return Err(EngineError::IllegalEvaderMove { from: e, to: r.evader });
                }
            }
            (Mover::E, Some(e)) => {
                if r.positions != positions {
                    return Err(EngineError::WrongTurn(Turn::Pursuers));
                }
                apply_evader_move(g, e, r.evader)?;
            }
            (Mover::P, None) => return Err(EngineError::WrongTurn(Turn::Evader)),
        }
        at = Some(r.evader);
        let captured = positions.contains(&r.evader);
        if captured != r.captured {
            return Err(EngineError::TerminalState);
        }
        if captured {
            captured_at = Some(r.round);
        }
    }
    Ok(captured_at)
}

/// Result of searching every survivor behaviour against a fixed strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WorstCase {
    /// Every survivor is captured; the slowest capture happens in `round`.
    Captured { round: usize, states: usize },
    /// Some survivor evades forever from this starting vertex.
    Escapes { evader_start: Vertex, states: usize },
}

/// Longest survival of any survivor against a deterministic pursuer
/// strategy started from `placement`, over all survivor starts in `starts`.
///
/// Rounds are counted as in [`play_match`]: the first pursuer turn is round 1.
/// Survivor moves onto a pursuer count as captures; an escape is a reachable
/// cycle of full configurations (positions plus strategy memory).
pub fn worst_case<S: PursuerStrategy>(
    g: &Graph,
    d: &DistanceMatrix,
    variant: GameVariant,
    strategy: &S,
    placement: &[Vertex],
    starts: &[Vertex],
    state_limit: usize,
) -> Result<WorstCase, EngineError> {
    type Node<M> = (Vec<Vertex>, Vertex, M);
    const ON_STACK: u32 = u32::MAX - 1;
    const ESCAPE: u32 = u32::MAX;

    let name = strategy.name();
    let mut value: HashMap<Node<S::Memory>, u32> = HashMap::new();
    let mut overall = 0u32;

    struct Frame<M> {
        node: (Vec<Vertex>, Vertex, M),
        children: Vec<Option<(Vec<Vertex>, Vertex, M)>>,
        next: usize,
        best: u32,
    }

    let expand = |node: &Node<S::Memory>| -> Result<Vec<Option<Node<S::Memory>>>, EngineError> {
        let (pos, at, memory) = node;
        let mut memory = memory.clone();
        let targets = strategy
            .next(&mut memory, pos, *at)
            .map_err(|reason| EngineError::Policy { policy: name.clone(), reason })?;
        let moved = apply_pursuer_move(g, d, variant, pos, *at, &targets).map_err(|e| policy_err(&name, e))?;
        if moved.contains(at) {
            return Ok(vec![None]);
        }
        Ok(evader_options(g, *at)
            .into_iter()
            .map(|to| if moved.contains(&to) { None } else { Some((moved.clone(), to, memory.clone())) })
            .collect())
    };

    for &start in starts {
        if placement.contains(&start) {
            continue;
        }
        let memory = strategy
            .start(placement, start)
            .map_err(|reason| EngineError::Policy { policy: name.clone(), reason })?;
        let root: Node<S::Memory> = (placement.to_vec(), start, memory);
        if let Some(&v) = value.get(&root) {
            if v == ESCAPE {
                return Ok(WorstCase::Escapes { evader_start: start, states: value.len() });
            }
            overall = overall.max(v);
            continue;
        }
        value.insert(root.clone(), ON_STACK);
        let children = expand(&root)?;
        let mut stack = vec![Frame { node: root, children, next: 0, best: 0 }];
        while let Some(top) = stack.last_mut() {
            if top.next < top.children.len() {
                let child = top.children[top.next].take();
                top.next += 1;
                let Some(child) = child else {
                    top.best = top.best.max(1);
                    continue;
                };
                match value.get(&child) {
                    Some(&ON_STACK) | Some(&ESCAPE) => {
                        top.best = ESCAPE;
                        top.next = top.children.len();
                    }
                    Some(&v) => top.best = top.best.max(v + 1),
                    None => {
                        if value.len() >= state_limit {
                            return Err(EngineError::SearchBudget(state_limit));
                        }
                        value.insert(child.clone(), ON_STACK);
                        let children = expand(&child)?;
                        stack.push(Frame { node: child, children, next: 0, best: 0 });
                    }
                }
            } else {
                let done = stack.pop().expect("non-empty");
                value.insert(done.node, done.best);
                if let Some(parent) = stack.last_mut() {
                    if done.best == ESCAPE {
                        parent.best = ESCAPE;
                        parent.next = parent.children.len();
                    } else {
                        parent.best = parent.best.max(done.best + 1);
                    }
                } else if done.best == ESCAPE {
                    return Ok(WorstCase::Escapes { evader_start: start, states: value.len() });
                } else {
                    overall = overall.max(done.best);
                }
            }
        }
    }
    Ok(WorstCase::Captured { round: overall as usize, states: value.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_pairs_distances;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn zombie_moves() {
        let g = path(5);
        let d = all_pairs_distances(&g);
        let s = GameState::new(vec![0], 4, Turn::Pursuers);
        assert_eq!(legal_pursuer_moves(&g, &d, &s, 0, GameVariant::Zombies).unwrap(), vec![1]);

        let g = cycle(6);
        let d = all_pairs_distances(&g);
        let s = GameState::new(vec![0], 3, Turn::Pursuers);
        assert_eq!(legal_pursuer_moves(&g, &d, &s, 0, GameVariant::Zombies).unwrap(), vec![1, 5]);
        assert_eq!(legal_pursuer_moves(&g, &d, &s, 0, GameVariant::LazyZombies).unwrap(), vec![0, 1, 5]);
        assert_eq!(legal_pursuer_moves(&g, &d, &s, 0, GameVariant::Cops).unwrap(), vec![0, 1, 5]);
    }

    #[test]
    fn pursuer_move_errors() {
        let g = path(3);
        let d = all_pairs_distances(&g);
        let s = GameState::new(vec![0], 2, Turn::Evader);
        assert_eq!(
            legal_pursuer_moves(&g, &d, &s, 0, GameVariant::Cops),
            Err(EngineError::WrongTurn(Turn::Pursuers))
        );
        let s = GameState::new(vec![2], 2, Turn::Pursuers);
        assert_eq!(legal_pursuer_moves(&g, &d, &s, 0, GameVariant::Cops), Err(EngineError::TerminalState));
    }

    #[test]
    fn evader_moves() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let s = GameState::new(vec![1], 0, Turn::Evader);
        assert_eq!(legal_evader_moves(&k4, &s).unwrap(), vec![0, 1, 2, 3]);
        let p2 = path(2);
        let s = GameState::new(vec![0], 1, Turn::Evader);
        assert_eq!(legal_evader_moves(&p2, &s).unwrap(), vec![0, 1]);
        let s = GameState::new(vec![0], 2, Turn::Evader);
        assert_eq!(legal_evader_moves(&cycle(5), &s).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn step_capture_rules() {
        let g = cycle(5);
        let d = all_pairs_distances(&g);
        let s = GameState::new(vec![0], 1, Turn::Pursuers);
        let (next, captured) = step(&g, &d, GameVariant::Zombies, &s, &Move::Pursuers(vec![1])).unwrap();
        assert!(captured && next.is_captured());

        let s = GameState::new(vec![0], 1, Turn::Evader);
        let (_, captured) = step(&g, &d, GameVariant::Zombies, &s, &Move::Evader(0)).unwrap();
        assert!(captured);

        let s = GameState::new(vec![0], 2, Turn::Pursuers);
        let (next, captured) = step(&g, &d, GameVariant::Zombies, &s, &Move::Pursuers(vec![1])).unwrap();
        assert!(!captured);
        let (next, _) = step(&g, &d, GameVariant::Zombies, &next, &Move::Evader(2)).unwrap();
        assert_eq!(next, GameState::new(vec![1], 2, Turn::Pursuers));

        let s = GameState::new(vec![0], 2, Turn::Pursuers);
        assert_eq!(
            step(&g, &d, GameVariant::Zombies, &s, &Move::Pursuers(vec![4])),
            Err(EngineError::IllegalPursuerMove { index: 0, from: 0, to: 4 })
        );
        assert_eq!(
            step(&g, &d, GameVariant::Zombies, &s, &Move::Pursuers(vec![0])),
            Err(EngineError::IllegalPursuerMove { index: 0, from: 0, to: 0 })
        );
    }

    struct Chase<'a> {
        g: &'a Graph,
        d: &'a DistanceMatrix,
        start: Vertex,
    }

    impl PursuerStrategy for Chase<'_> {
        type Memory = ();
        fn name(&self) -> String {
            "chase".into()
        }
        fn placement(&self, k: usize) -> Vec<Vertex> {
            vec![self.start; k]
        }
        fn start(&self, _: &[Vertex], _: Vertex) -> Result<(), String> {
            Ok(())
        }
        fn next(&self, _: &mut (), pursuers: &[Vertex], evader: Vertex) -> Result<Vec<Vertex>, String> {
            Ok(pursuers
                .iter()
                .map(|&p| pursuer_options(self.g, self.d, GameVariant::Zombies, p, evader)[0])
                .collect())
        }
    }

    struct Stay;
    impl Evader for Stay {
        fn name(&self) -> String {
            "stay".into()
        }
        fn place(&mut self, pursuers: &[Vertex]) -> Vertex {
            if pursuers.contains(&0) {
                4
            } else {
                0
            }
        }
        fn act(&mut self, _: &[Vertex], evader: Vertex) -> Vertex {
            evader
        }
    }

    #[test]
    fn single_zombie_catches_on_a_path() {
        let g = path(5);
        let d = all_pairs_distances(&g);
        let mut p = Driven::new(Chase { g: &g, d: &d, start: 0 });
        let trace = play_match(&g, &d, GameVariant::Zombies, 1, &mut p, &mut Stay, &PlacementMode::Chosen, 20).unwrap();
        assert_eq!(trace.capture_round(), Some(4));
        let (header, records) = Trace::from_jsonl(&trace.to_jsonl()).unwrap();
        assert_eq!(replay(&g, &d, &header, &records).unwrap(), Some(4));

        let chase = Chase { g: &g, d: &d, start: 0 };
        let all: Vec<_> = (0..5).collect();
        let wc = worst_case(&g, &d, GameVariant::Zombies, &chase, &[0], &all, 10_000).unwrap();
        assert!(matches!(wc, WorstCase::Captured { round: 4, .. }));
    }

    #[test]
    fn single_zombie_never_catches_on_c5() {
        let g = cycle(5);
        let d = all_pairs_distances(&g);
        let chase = Chase { g: &g, d: &d, start: 0 };
        let all: Vec<_> = (0..5).collect();
        let wc = worst_case(&g, &d, GameVariant::Zombies, &chase, &[0], &all, 10_000).unwrap();
        assert!(matches!(wc, WorstCase::Escapes { .. }));
    }

    #[test]
    fn replay_rejects_tampering() {
        let g = path(5);
        let d = all_pairs_distances(&g);
        let mut p = Driven::new(Chase { g: &g, d: &d, start: 0 });
        let trace = play_match(&g, &d, GameVariant::Zombies, 1, &mut p, &mut Stay, &PlacementMode::Chosen, 20).unwrap();
        let mut records = trace.records.clone();
        records[1].positions = vec![2];
        assert!(replay(&g, &d, &trace.header, &records).is_err());
    }
}
