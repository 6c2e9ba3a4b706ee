use super::{chase_step, StrategyError};
use crate::engine::PursuerStrategy;
use crate::graph::{outer_circuit, Circuit, DistanceMatrix, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// Walks towards the survivor along shortest paths.
    Pursuing,
    /// Holds a chord shut and moves only to capture.
    Stationary,
    /// Walks the circuit into the survivor territory.
    Advancing,
}

/// Memory of the two-zombie outerplanar strategy.
///
/// Slots index the outer circuit. A territory is the open interval of slots
/// met when walking from one boundary slot in direction `dir` (+1 clockwise)
/// until the other.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OuterplanarChaseState {
    /// Trees: both zombies follow the unique path to the survivor.
    Chase,
    /// Cycles: the zombie with the shorter way along the survivor's arc steps into it.
    Squeeze,
    /// Each zombie pursues until it stands on a chord vertex.
    Gather,
    /// `stationary` holds its chords while the other zombie pursues.
    Hunt { stationary: usize },
    /// The guard holds the chord at slot `hi` while the other zombie heads
    /// for `lo` or `hi`. Territory: from `lo` in `dir` to `hi`.
    Transit { guard: usize, lo: usize, hi: usize, dir: i8 },
    /// The advancing zombie stands on slot `a`. Territory: from `a` in `dir`
    /// to `f`. `fresh` marks a position where the entry check is still due.
    Advance { guard: usize, a: usize, f: usize, dir: i8, fresh: bool },
}

impl OuterplanarChaseState {
    pub fn roles(&self) -> [Role; 2] {
        match *self {
            OuterplanarChaseState::Chase | OuterplanarChaseState::Squeeze | OuterplanarChaseState::Gather => {
                [Role::Pursuing; 2]
            }
            OuterplanarChaseState::Hunt { stationary: g }
            | OuterplanarChaseState::Transit { guard: g, .. } => {
                let mut r = [Role::Pursuing; 2];
                r[g] = Role::Stationary;
                r
            }
            OuterplanarChaseState::Advance { guard, .. } => {
                let mut r = [Role::Advancing; 2];
                r[guard] = Role::Stationary;
                r
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Tree,
    Cycle,
    Chorded,
}

/// Two lazy zombies on a connected outerplanar graph. One zombie holds a
/// chord (or null chord) shut while the other walks the outer circuit into
/// the survivor territory, swapping roles at chords. With `universal` the
/// zombies start wherever they are placed and first walk to chord vertices.
pub struct OuterplanarLazyPolicy<'a> {
    g: &'a Graph,
    d: &'a DistanceMatrix,
    circuit: Circuit,
    shape: Shape,
    universal: bool,
    home: Vertex,
}

type State = OuterplanarChaseState;

impl<'a> OuterplanarLazyPolicy<'a> {
    /// Chosen placement: both zombies start on one vertex.
    pub fn new(g: &'a Graph, d: &'a DistanceMatrix) -> Result<Self, StrategyError> {
        Self::build(g, d, false)
    }

    /// Arbitrary placement.
    pub fn universal(g: &'a Graph, d: &'a DistanceMatrix) -> Result<Self, StrategyError> {
        Self::build(g, d, true)
    }

    fn build(g: &'a Graph, d: &'a DistanceMatrix, universal: bool) -> Result<Self, StrategyError> {
        let circuit = outer_circuit(g)?;
        let n = g.n();
        let shape = if g.edge_count() + 1 == n {
            Shape::Tree
        } else if !circuit.has_chords() {
            Shape::Cycle
        } else {
            Shape::Chorded
        };
        let mut policy = OuterplanarLazyPolicy { g, d, circuit, shape, universal, home: 0 };
        policy.home = match shape {
            Shape::Tree => (0..n).min_by_key(|&v| (d.eccentricity(v), v)).unwrap_or(0),
            Shape::Cycle => 0,
            Shape::Chorded => policy.best_home(),
        };
        Ok(policy)
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    /// Territory slots recorded in the memory, if a chord is being held.
    pub fn territory(&self, m: &State) -> Option<Vec<usize>> {
        match *m {
            State::Transit { lo, hi, dir, .. } => Some(self.circuit.open_interval(lo, hi, dir)),
            State::Advance { a, f, dir, .. } => Some(self.circuit.open_interval(a, f, dir)),
            _ => None,
        }
    }

    fn inside(&self, from: usize, to: usize, dir: i8, v: Vertex) -> bool {
        self.circuit.slots[v].iter().any(|&x| self.circuit.strictly_between(from, to, dir, x))
    }

    fn offset(&self, from: usize, to: usize, dir: i8) -> usize {
        let len = self.circuit.len();
        if dir > 0 {
            (to + len - from) % len
        } else {
            (from + len - to) % len
        }
    }

    /// Side of the slot pair `x y` holding `v`, with its size in slots.
    ///
    /// A side qualifies when it holds no other appearance of either end and
    /// its vertices have no neighbours outside the side except the two ends,
    /// so a zombie standing on one end seals it off.
    fn side(&self, x: usize, y: usize, v: Vertex) -> Option<(i8, usize)> {
        [1i8, -1]
            .into_iter()
            .filter(|&dir| self.inside(x, y, dir, v) && self.sealed(x, y, dir))
            .map(|dir| (dir, self.circuit.open_interval(x, y, dir).len()))
            .min_by_key(|&(dir, size)| (size, -dir))
    }

    fn sealed(&self, x: usize, y: usize, dir: i8) -> bool {
        let c = &self.circuit;
        let (vx, vy) = (c.vertex(x), c.vertex(y));
        let interval = c.open_interval(x, y, dir);
        let mut inner = vec![false; self.g.n()];
        for &t in &interval {
            let v = c.vertex(t);
            if v == vx || v == vy {
                return false;
            }
            inner[v] = true;
        }
        interval.iter().all(|&t| {
            let v = c.vertex(t);
            c.slots[v].iter().all(|&u| c.strictly_between(x, y, dir, u))
                && self.g.neighbors(v).iter().all(|&w| inner[w] || w == vx || w == vy)
        })
    }

    /// Slots inside the territory `a -> f` whose vertex is the advancing
    /// zombie's or adjacent to it, nearest first.
    fn reach(&self, a: usize, f: usize, dir: i8) -> Vec<usize> {
        let c = &self.circuit;
        let at = c.vertex(a);
        let mut out: Vec<usize> = c
            .open_interval(a, f, dir)
            .into_iter()
            .filter(|&y| {
                let v = c.vertex(y);
                v == at || self.g.has_edge(at, v)
            })
            .collect();
        out.sort_by_key(|&y| self.offset(a, y, dir));
        out
    }

    /// Chord vertex whose worst survivor start leaves the smallest territory.
    fn best_home(&self) -> Vertex {
        let n = self.g.n();
        let mut best = (usize::MAX, 0);
        for c in 0..n {
            if !self.circuit.is_chord_vertex(c) {
                continue;
            }
            let mut worst = 0;
            for v in 0..n {
                if v == c || self.g.has_edge(c, v) {
                    continue;
                }
                let smallest = self
                    .pairs_at(c)
                    .into_iter()
                    .filter_map(|(x, y)| self.side(x, y, v).map(|s| s.1))
                    .min()
                    .unwrap_or(usize::MAX);
                worst = worst.max(smallest);
            }
            best = best.min((worst, c));
        }
        best.1
    }

    /// Slot pairs `(x, y)` with `x` on `v` and `y` on `v` or a neighbour.
    fn pairs_at(&self, v: Vertex) -> Vec<(usize, usize)> {
        let c = &self.circuit;
        let mut ends: Vec<Vertex> = self.g.neighbors(v).to_vec();
        ends.push(v);
        let mut out = Vec::new();
        for &x in &c.slots[v] {
            for &w in &ends {
                out.extend(c.slots[w].iter().filter(|&&y| y != x).map(|&y| (x, y)));
            }
        }
        out
    }

    fn to_chord_vertex(&self, v: Vertex) -> u32 {
        (0..self.g.n()).filter(|&w| self.circuit.is_chord_vertex(w)).map(|w| self.d.get(v, w)).min().unwrap_or(0)
    }

    fn check_step(&self, from: Vertex, to: Vertex, s: Vertex, what: &str) -> Result<(), String> {
        if self.g.has_edge(from, to) && self.d.get(to, s) + 1 == self.d.get(from, s) {
            Ok(())
        } else {
            Err(format!("{what}: {from}->{to} is not a shortest-path step towards {s}"))
        }
    }

    /// Smallest territory cut off by a chord at one zombie's vertex that
    /// does not contain the other zombie.
    fn establish(&self, pos: &[Vertex], s: Vertex, only: Option<usize>, loose: bool) -> Option<State> {
        let mut best: Option<(usize, usize, usize, usize, i8)> = None;
        for guard in only.map_or(0..2, |g| g..g + 1) {
            let other = pos[1 - guard];
            for (x, y) in self.pairs_at(pos[guard]) {
                let Some((dir, size)) = self.side(x, y, s) else { continue };
                if !loose && self.inside(x, y, dir, other) {
                    continue;
                }
                let cand = (size, guard, x, y, dir);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        best.map(|(_, guard, x, y, dir)| State::Transit { guard, lo: y, hi: x, dir: -dir })
    }

    /// Tightest territory reachable by the advancing zombie in one legal
    /// move (or none): first one it still shares with the guard, then one it
    /// seals alone while the guard comes in.
    fn tighten(&self, guard: usize, a: usize, f: usize, dir: i8, pos: &[Vertex], s: Vertex) -> Option<(State, Vertex)> {
        let c = &self.circuit;
        let z = 1 - guard;
        let at = c.vertex(a);
        let mut moves = vec![at];
        moves.extend(self.g.neighbors(at).iter().copied().filter(|&w| self.d.get(w, s) + 1 == self.d.get(at, s)));
        let shared = moves
            .iter()
            .flat_map(|&w| c.slots[w].iter().map(move |&y| (w, y)))
            .filter(|&(_, y)| c.strictly_between(a, f, dir, y))
            .filter(|&(_, y)| self.inside(y, f, dir, s) && self.sealed(y, f, dir))
            .map(|(w, y)| (c.open_interval(y, f, dir).len(), w, y))
            .min();
        if let Some((_, w, y)) = shared {
            return Some((State::Advance { guard, a: y, f, dir, fresh: false }, w));
        }
        moves
            .into_iter()
            .filter_map(|w| {
                let mut hyp = pos.to_vec();
                hyp[z] = w;
                let st = self.establish(&hyp, s, Some(z), false)?;
                Some((territory_size(c, &st), w, st))
            })
            .min_by_key(|&(size, w, _)| (size, w))
            .map(|(_, w, st)| (st, w))
    }

    /// Whether a shortest path from slot `a` to the survivor starts with an
    /// edge into the territory.
    fn enters(&self, a: usize, f: usize, dir: i8, s: Vertex) -> bool {
        let c = &self.circuit;
        let here = self.d.get(c.vertex(a), s);
        self.reach(a, f, dir).into_iter().any(|y| self.d.get(c.vertex(y), s) + 1 == here)
    }

    fn squeeze(&self, pos: &[Vertex], s: Vertex, out: &mut [Vertex]) -> Result<(), String> {
        let c = &self.circuit;
        let (p0, p1, ps) = (c.slots[pos[0]][0], c.slots[pos[1]][0], c.slots[s][0]);
        let dir0: i8 = if p0 == p1 || c.strictly_between(p0, p1, 1, ps) { 1 } else { -1 };
        let dist0 = self.offset(p0, ps, dir0);
        let dist1 = self.offset(p1, ps, -dir0);
        let (mover, slot, dir) = if dist0 <= dist1 { (0, p0, dir0) } else { (1, p1, -dir0) };
        let to = c.vertex(c.step(slot, dir));
        self.check_step(pos[mover], to, s, "squeeze")?;
        out[mover] = to;
        Ok(())
    }

    fn drive(&self, m: &mut State, pos: &[Vertex], s: Vertex, out: &mut [Vertex]) -> Result<(), String> {
        let (g, d, c) = (self.g, self.d, &self.circuit);
        // every transition without a move strictly shrinks the territory or
        // moves to a later phase, so this bound is never reached by a
        // correct run
        for _ in 0..4 * c.len() + 8 {
            match m.clone() {
                State::Chase => {
                    for i in 0..2 {
                        if let Some(w) = chase_step(g, d, pos[i], s, |_| 0) {
                            out[i] = w;
                        }
                    }
                    return Ok(());
                }
                State::Squeeze => return self.squeeze(pos, s, out),
                State::Gather => {
                    let on: Vec<bool> = pos.iter().map(|&p| c.is_chord_vertex(p)).collect();
                    if on[0] && on[1] {
                        *m = self.establish(pos, s, None, false).unwrap_or(State::Hunt { stationary: 0 });
                        continue;
                    }
                    // zombies sharing a vertex split up, or a survivor opposite
                    // them on a cycle keeps its distance forever
                    let movers = if pos[0] == pos[1] { 1 } else { 2 };
                    for i in 0..movers {
                        if !on[i] {
                            if let Some(w) = chase_step(g, d, pos[i], s, |w| self.to_chord_vertex(w)) {
                                out[i] = w;
                            }
                        }
                    }
                    return Ok(());
                }
                State::Hunt { stationary } => {
                    // a territory that also holds the other zombie still
                    // confines the survivor
                    let found = self.establish(pos, s, None, false).or_else(|| self.establish(pos, s, None, true));
                    if let Some(next) = found {
                        *m = next;
                        continue;
                    }
                    let z = 1 - stationary;
                    let w = chase_step(g, d, pos[z], s, |_| 0).ok_or("hunting zombie has no step")?;
                    out[z] = w;
                    return Ok(());
                }
                State::Transit { guard, lo, hi, dir } => {
                    if !self.inside(lo, hi, dir, s) {
                        return Err(format!("survivor on {s} left its territory"));
                    }
                    let size = c.open_interval(lo, hi, dir).len();
                    if let Some(next) =
                        self.establish(pos, s, None, false).filter(|st| territory_size(c, st) < size)
                    {
                        *m = next;
                        continue;
                    }
                    let t = 1 - guard;
                    let (vl, vh) = (c.vertex(lo), c.vertex(hi));
                    if pos[t] == vl {
                        *m = State::Advance { guard, a: lo, f: hi, dir, fresh: true };
                        continue;
                    }
                    if pos[t] == vh {
                        *m = State::Advance { guard, a: hi, f: lo, dir: -dir, fresh: true };
                        continue;
                    }
                    let w = chase_step(g, d, pos[t], s, |w| d.get(w, vl).min(d.get(w, vh)))
                        .ok_or("zombie in transit has no step")?;
                    out[t] = w;
                    return Ok(());
                }
                State::Advance { guard, a, f, dir, fresh } => {
                    let z = 1 - guard;
                    let at = c.vertex(a);
                    if pos[z] != at {
                        return Err(format!("advancing zombie is on {} instead of {at}", pos[z]));
                    }
                    if !self.inside(a, f, dir, s) {
                        return Err(format!("survivor on {s} left its territory"));
                    }
                    if fresh {
                        *m = State::Advance { guard, a, f, dir, fresh: false };
                        if !self.enters(a, f, dir, s) {
                            // every shortest path leaves through the other end
                            *m = State::Advance { guard, a: f, f: a, dir: -dir, fresh: false };
                            let to = c.vertex(f);
                            if to != at {
                                self.check_step(at, to, s, "move to the other end of the chord")?;
                                out[z] = to;
                                return Ok(());
                            }
                        }
                        continue;
                    }
                    let size = c.open_interval(a, f, dir).len();
                    // with no tighter territory the guard holds and the
                    // other zombie runs the survivor down
                    let (next, to) = self
                        .tighten(guard, a, f, dir, pos, s)
                        .filter(|(st, _)| territory_size(c, st) < size)
                        .unwrap_or((State::Hunt { stationary: guard }, at));
                    *m = next;
                    if to != at {
                        out[z] = to;
                        return Ok(());
                    }
                }
            }
        }
        Err("strategy made no progress".into())
    }
}

fn territory_size(c: &Circuit, st: &State) -> usize {
    match *st {
        State::Transit { lo, hi, dir, .. } => c.open_interval(lo, hi, dir).len(),
        State::Advance { a, f, dir, .. } => c.open_interval(a, f, dir).len(),
        _ => usize::MAX,
    }
}

impl PursuerStrategy for OuterplanarLazyPolicy<'_> {
    type Memory = OuterplanarChaseState;

    fn name(&self) -> String {
        if self.universal { "cor1" } else { "thm6" }.into()
    }

    fn placement(&self, k: usize) -> Vec<Vertex> {
        vec![self.home; k]
    }

    fn start(&self, pursuers: &[Vertex], _evader: Vertex) -> Result<State, String> {
        if pursuers.len() != 2 {
            return Err(format!("two zombies are required, {} given", pursuers.len()));
        }
        if !self.universal && pursuers != [self.home, self.home] {
            return Err(format!("placement {pursuers:?} differs from the chosen start {}", self.home));
        }
        Ok(match self.shape {
            Shape::Tree => State::Chase,
            Shape::Cycle => State::Squeeze,
            Shape::Chorded => State::Gather,
        })
    }

    fn next(&self, m: &mut State, pursuers: &[Vertex], evader: Vertex) -> Result<Vec<Vertex>, String> {
        let mut out = pursuers.to_vec();
        if let Some(i) = (0..pursuers.len()).find(|&i| self.g.has_edge(pursuers[i], evader)) {
            out[i] = evader;
            return Ok(out);
        }
        self.drive(m, pursuers, evader, &mut out)?;
        Ok(out)
    }
}
