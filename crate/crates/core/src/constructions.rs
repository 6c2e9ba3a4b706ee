//! Lower-bound graph families, standard test graphs and the scripted
//! survivor that evades fewer than `k` zombies on them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::Evader;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("component {index} does not exist (instance has {k})")]
    BadComponent { index: usize, k: usize },
}

/// One copy of the gadget: an `s`–`t` path of length `a* + 1` plus an
/// `(a* + 3)`-cycle sharing exactly one path edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentH {
    #[serde(skip)]
    pub graph: Option<Graph>,
    pub a_star: usize,
    pub s: Vertex,
    pub t: Vertex,
    /// Path vertices from `s` to `t`.
    pub path: Vec<Vertex>,
    /// Cycle in walking order: starts at the path vertex where the survivor
    /// joins the cycle, then heads into the degree-two vertices.
    pub cycle: Vec<Vertex>,
}

impl ComponentH {
    pub fn vertex_count(&self) -> usize {
        2 * self.a_star + 3
    }

    /// The shared edge, as (path vertex nearer to `t`, path vertex nearer to `s`).
    pub fn shared_edge(&self) -> (Vertex, Vertex) {
        let j = self.a_star.div_ceil(4);
        (self.path[self.a_star + 2 - j], self.path[self.a_star + 1 - j])
    }

    /// Survivor script: placement next to `s`, along the path to the first
    /// cycle vertex, then around the cycle (the list's tail repeats forever).
    pub fn evasion_walk(&self) -> (Vec<Vertex>, Vec<Vertex>) {
        let (_, join) = self.shared_edge();
        let join_idx = self.path.iter().position(|&v| v == join).expect("join vertex on path");
        let prefix = self.path[1..join_idx].to_vec();
        (prefix, self.cycle.clone())
    }
}

fn check_a_star(a_star: usize) -> Result<(), ConstructionError> {
    if a_star < 6 || a_star % 4 != 2 {
        return Err(ConstructionError::BadParameter(format!("a* must be at least 6 and 2 mod 4, got {a_star}")));
    }
    Ok(())
}

/// Edges of one gadget with vertex ids shifted by `offset`.
fn gadget(a_star: usize, offset: usize) -> (ComponentH, Vec<(Vertex, Vertex)>) {
    let path: Vec<Vertex> = (0..=a_star + 1).map(|i| offset + i).collect();
    let q: Vec<Vertex> = (1..=a_star + 1).map(|i| offset + a_star + 1 + i).collect();
    let mut edges: Vec<(Vertex, Vertex)> = path.windows(2).map(|w| (w[0], w[1])).collect();
    let j = a_star.div_ceil(4);
    let near_t = path[a_star + 2 - j];
    let near_s = path[a_star + 1 - j];
    // near_t - q1 - ... - q_{a*+1} - near_s
    edges.push((near_t, q[0]));
    edges.extend(q.windows(2).map(|w| (w[0], w[1])));
    edges.push((q[a_star], near_s));
    let mut cycle = vec![near_s];
    cycle.extend(q.iter().rev());
    cycle.push(near_t);
    let h = ComponentH { graph: None, a_star, s: path[0], t: path[a_star + 1], path, cycle };
    (h, edges)
}

pub fn component_h(a_star: usize) -> Result<ComponentH, ConstructionError> {
    check_a_star(a_star)?;
    let (mut h, edges) = gadget(a_star, 0);
    h.graph = Some(Graph::new(2 * a_star + 3, &edges).expect("gadget is simple"));
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterKind {
    Star,
    Clique,
    Tree,
}

/// A lower-bound instance: `k` gadgets joined through a center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkInstance {
    #[serde(skip)]
    pub graph: Option<Graph>,
    pub kind: CenterKind,
    pub k: usize,
    pub a_star: usize,
    pub n: usize,
    pub components: Vec<ComponentH>,
    /// The vertex each component attaches to: `c` for stars, its leaf for trees.
    pub entries: Vec<Option<Vertex>>,
    pub center: Option<Vertex>,
    /// Tree vertices in heap order (root first).
    pub tree: Vec<Vertex>,
}

impl GkInstance {
    pub fn graph(&self) -> &Graph {
        self.graph.as_ref().expect("instances are built with their graph")
    }

    /// Component containing `v`, if any.
    pub fn component_of(&self, v: Vertex) -> Option<usize> {
        let size = 2 * self.a_star + 3;
        (v < self.k * size).then_some(v / size)
    }

    pub fn sidecar_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sidecar serializes")
    }
}

fn assemble(k: usize, a_star: usize) -> (Vec<ComponentH>, Vec<(Vertex, Vertex)>, usize) {
    let size = 2 * a_star + 3;
    let mut comps = Vec::with_capacity(k);
    let mut edges = Vec::new();
    for i in 0..k {
        let (h, e) = gadget(a_star, i * size);
        comps.push(h);
        edges.extend(e);
    }
    (comps, edges, k * size)
}

pub fn gk_star(k: usize, a_star: usize) -> Result<GkInstance, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::BadParameter(format!("k must be at least 2, got {k}")));
    }
    check_a_star(a_star)?;
    let (components, mut edges, c) = assemble(k, a_star);
    for h in &components {
        edges.push((c, h.s));
        edges.push((c, h.t));
    }
    let n = c + 1;
    Ok(GkInstance {
        graph: Some(Graph::new(n, &edges).expect("construction is simple")),
        kind: CenterKind::Star,
        k,
        a_star,
        n,
        entries: vec![Some(c); k],
        components,
        center: Some(c),
        tree: Vec::new(),
    })
}

pub fn gk_clique(k: usize, a_star: usize) -> Result<GkInstance, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::BadParameter(format!("k must be at least 2, got {k}")));
    }
    check_a_star(a_star)?;
    let (components, mut edges, n) = assemble(k, a_star);
    let terminals: Vec<Vertex> = components.iter().flat_map(|h| [h.s, h.t]).collect();
    for (i, &u) in terminals.iter().enumerate() {
        for &v in &terminals[i + 1..] {
            edges.push((u, v));
        }
    }
    Ok(GkInstance {
        graph: Some(Graph::new(n, &edges).expect("construction is simple")),
        kind: CenterKind::Clique,
        k,
        a_star,
        n,
        entries: vec![None; k],
        components,
        center: None,
        tree: Vec::new(),
    })
}

/// `a*` for the tree family: `8 ceil(log2 k) + 10`.
pub fn tree_a_star(k: usize) -> usize {
    8 * ceil_log2(k) + 10
}

pub fn ceil_log2(k: usize) -> usize {
    if k <= 1 {
        0
    } else {
        (usize::BITS - (k - 1).leading_zeros()) as usize
    }
}

/// Gadgets hung from the leaves of a heap-shaped binary tree with `2k - 1`
/// nodes (height `ceil(log2 k)`).
pub fn gk_tree(k: usize) -> Result<GkInstance, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::BadParameter(format!("k must be at least 2, got {k}")));
    }
    let a_star = tree_a_star(k);
    let (components, mut edges, base) = assemble(k, a_star);
    let nodes = 2 * k - 1;
    let tree: Vec<Vertex> = (0..nodes).map(|i| base + i).collect();
    for i in 1..nodes {
        edges.push((tree[(i - 1) / 2], tree[i]));
    }
    let mut entries = Vec::with_capacity(k);
    for (i, h) in components.iter().enumerate() {
        let leaf = tree[k - 1 + i];
        edges.push((leaf, h.s));
        edges.push((leaf, h.t));
        entries.push(Some(leaf));
    }
    let n = base + nodes;
    Ok(GkInstance {
        graph: Some(Graph::new(n, &edges).expect("construction is simple")),
        kind: CenterKind::Tree,
        k,
        a_star,
        n,
        entries,
        components,
        center: None,
        tree,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardKind {
    Path,
    Cycle,
    Clique,
    /// Path on `n - 1` vertices plus an apex adjacent to all of them.
    Fan,
    RandomOuterplanar,
    RandomConnected,
}

impl std::str::FromStr for StandardKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "path" => Ok(StandardKind::Path),
            "cycle" => Ok(StandardKind::Cycle),
            "clique" | "complete" => Ok(StandardKind::Clique),
            "fan" => Ok(StandardKind::Fan),
            "rand-outerplanar" | "random-outerplanar" => Ok(StandardKind::RandomOuterplanar),
            "rand-connected" | "random-connected" => Ok(StandardKind::RandomConnected),
            other => Err(format!("unknown graph kind {other:?}")),
        }
    }
}

pub fn standard_graph(kind: StandardKind, n: usize, seed: u64) -> Result<Graph, ConstructionError> {
    let need = match kind {
        StandardKind::Cycle | StandardKind::Fan => 3,
        _ => 1,
    };
    if n < need {
        return Err(ConstructionError::BadParameter(format!("{kind:?} needs n >= {need}, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(Vertex, Vertex)> = match kind {
        StandardKind::Path => (1..n).map(|i| (i - 1, i)).collect(),
        StandardKind::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        StandardKind::Clique => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        StandardKind::Fan => {
            let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
            e.extend((0..n - 1).map(|i| (i, n - 1)));
            e
        }
        StandardKind::RandomOuterplanar => random_outerplanar_edges(&mut rng, n),
        StandardKind::RandomConnected => random_connected_edges(&mut rng, n, 0.3),
    };
    Ok(Graph::new(n, &edges).expect("generators emit simple graphs"))
}

/// Random triangulated polygon on shuffled labels; each chord is dropped
/// with probability 1/2, then each boundary edge with probability 1/4 as long
/// as the graph stays connected (so trees and cut vertices also occur).
fn random_outerplanar_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<(Vertex, Vertex)> {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    if n == 1 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(order[0], order[1])];
    }
    let mut boundary: Vec<(Vertex, Vertex)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let mut chords = Vec::new();
    let mut stack = vec![(0usize, n - 1)];
    while let Some((i, j)) = stack.pop() {
        if j - i < 2 {
            continue;
        }
        let m = rng.gen_range(i + 1..j);
        for (a, b) in [(i, m), (m, j)] {
            if b - a >= 2 && !(a == 0 && b == n - 1) {
                chords.push((order[a], order[b]));
            }
            stack.push((a, b));
        }
    }
    chords.retain(|_| rng.gen_bool(0.5));
    boundary.shuffle(rng);
    let mut kept: Vec<(Vertex, Vertex)> = chords;
    let mut pending = boundary;
    while let Some(e) = pending.pop() {
        if rng.gen_bool(0.25) {
            let mut trial = kept.clone();
            trial.extend(pending.iter().copied());
            if Graph::new(n, &trial).map(|g| g.is_connected()).unwrap_or(false) {
                continue;
            }
        }
        kept.push(e);
    }
    kept
}

fn random_connected_edges<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// The scripted survivor: starts next to `s_i`, walks toward `t_i` until it
/// reaches the cycle, then circles it forever. With no fixed component it
/// picks the lowest-index component that holds no pursuer.
#[derive(Debug, Clone)]
pub struct ScriptEvasion<'a> {
    inst: &'a GkInstance,
    component: Option<usize>,
    walk: Vec<Vertex>,
    loop_start: usize,
    step: usize,
}

pub fn evasion_policy(inst: &GkInstance, i: usize) -> Result<ScriptEvasion<'_>, ConstructionError> {
    if i >= inst.k {
        return Err(ConstructionError::BadComponent { index: i, k: inst.k });
    }
    Ok(ScriptEvasion { inst, component: Some(i), walk: Vec::new(), loop_start: 0, step: 0 })
}

impl<'a> ScriptEvasion<'a> {
    pub fn auto(inst: &'a GkInstance) -> Self {
        ScriptEvasion { inst, component: None, walk: Vec::new(), loop_start: 0, step: 0 }
    }

    pub fn component(&self) -> Option<usize> {
        self.component
    }

    /// Full script for component `i`: the walk and the index where the
    /// repeating cycle starts.
    pub fn script(inst: &GkInstance, i: usize) -> (Vec<Vertex>, usize) {
        let (prefix, cycle) = inst.components[i].evasion_walk();
        let loop_start = prefix.len();
        let mut walk = prefix;
        walk.extend(cycle);
        (walk, loop_start)
    }

    fn vertex_at(&self, step: usize) -> Vertex {
        if step < self.walk.len() {
            self.walk[step]
        } else {
            let period = self.walk.len() - self.loop_start;
            self.walk[self.loop_start + (step - self.loop_start) % period]
        }
    }
}

impl Evader for ScriptEvasion<'_> {
    fn name(&self) -> String {
        "script-evasion".into()
    }

    fn place(&mut self, pursuers: &[Vertex]) -> Vertex {
        let i = self.component.unwrap_or_else(|| {
            (0..self.inst.k)
                .find(|&i| pursuers.iter().all(|&p| self.inst.component_of(p) != Some(i)))
                .unwrap_or(0)
        });
        self.component = Some(i);
        let (walk, loop_start) = Self::script(self.inst, i);
        self.walk = walk;
        self.loop_start = loop_start;
        self.step = 0;
        self.walk[0]
    }

    fn act(&mut self, _: &[Vertex], _: Vertex) -> Vertex {
        self.step += 1;
        self.vertex_at(self.step)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_pairs_distances, outer_circuit};

    #[test]
    fn gadget_counts() {
        for a in [6, 10, 14, 26] {
            let h = component_h(a).unwrap();
            let g = h.graph.as_ref().unwrap();
            assert_eq!(g.n(), 2 * a + 3);
            assert_eq!(h.cycle.len(), a + 3);
            let d = all_pairs_distances(g);
            assert_eq!(d.get(h.s, h.t) as usize, a + 1);
            assert_eq!(g.max_degree(), 3);
        }
        assert!(component_h(8).is_err());
        assert!(component_h(2).is_err());
    }

    #[test]
    fn shared_edge_position() {
        let h = component_h(10).unwrap();
        assert_eq!(h.shared_edge(), (9, 8));
        let g = h.graph.unwrap();
        // the shared edge is the third edge counted from t = 11
        assert!(g.has_edge(9, 8) && g.has_edge(h.cycle[1], 8) && g.degree(h.cycle[1]) == 2);
    }

    #[test]
    fn star_family() {
        let inst = gk_star(2, 10).unwrap();
        assert_eq!(inst.n, 47);
        let d = all_pairs_distances(inst.graph());
        assert_eq!(d.eccentricity(inst.center.unwrap()), Some(9));
        let inst3 = gk_star(3, 10).unwrap();
        assert_eq!(inst3.n, 70);
        assert!(outer_circuit(inst3.graph()).is_ok());
    }

    #[test]
    fn clique_family() {
        let inst = gk_clique(2, 6).unwrap();
        assert_eq!(inst.n, 30);
        let inst3 = gk_clique(3, 6).unwrap();
        let t: Vec<_> = inst3.components.iter().flat_map(|h| [h.s, h.t]).collect();
        for &u in &t {
            for &v in &t {
                assert!(u == v || inst3.graph().has_edge(u, v));
            }
        }
    }

    #[test]
    fn tree_family() {
        assert_eq!(tree_a_star(4), 26);
        assert_eq!(tree_a_star(2), 18);
        let inst = gk_tree(4).unwrap();
        assert_eq!(inst.a_star, 26);
        assert_eq!(inst.components[0].vertex_count(), 55);
        assert_eq!(inst.graph().max_degree(), 3);
        let two = gk_tree(2).unwrap();
        assert_eq!(two.tree.len(), 3);
        for k in 2..=9 {
            let inst = gk_tree(k).unwrap();
            assert!(inst.graph().is_connected());
            assert_eq!(inst.n, k * (2 * inst.a_star + 3) + 2 * k - 1);
        }
    }

    #[test]
    fn standard_graphs() {
        let c5 = standard_graph(StandardKind::Cycle, 5, 0).unwrap();
        assert_eq!(c5.edge_count(), 5);
        let f6 = standard_graph(StandardKind::Fan, 6, 0).unwrap();
        assert_eq!(f6.edge_count(), 9);
        for seed in 0..30 {
            let g = standard_graph(StandardKind::RandomOuterplanar, 10, seed).unwrap();
            assert!(g.is_connected());
            assert!(outer_circuit(&g).is_ok(), "seed {seed}");
            assert_eq!(g, standard_graph(StandardKind::RandomOuterplanar, 10, seed).unwrap());
            assert!(standard_graph(StandardKind::RandomConnected, 9, seed).unwrap().is_connected());
        }
        assert!(standard_graph(StandardKind::Cycle, 2, 0).is_err());
    }

    #[test]
    fn script_stays_in_component() {
        let inst = gk_star(2, 10).unwrap();
        let mut e = evasion_policy(&inst, 1).unwrap();
        let g = inst.graph();
        let mut at = e.place(&[0]);
        assert_eq!(at, inst.components[1].path[1]);
        for _ in 0..100 {
            let next = e.act(&[0], at);
            assert!(next == at || g.has_edge(at, next));
            assert_eq!(inst.component_of(next), Some(1));
            at = next;
        }
        assert!(evasion_policy(&inst, 2).is_err());
    }
}
