use super::StrategyError;
use crate::decomposition::{clique_cover, load, load_star, validate_cut_decomposition, CutDecomposition, DEFAULT_COVER_LIMIT};
use crate::engine::PursuerStrategy;
use crate::graph::{DistanceMatrix, Graph, Vertex};

/// Which target each zombie currently guards, and the decomposition node
/// holding the survivor when it was last seen.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZombieAssignment {
    pub node: usize,
    /// Index into the policy's target list, per zombie.
    pub targets: Vec<Option<usize>>,
}

impl ZombieAssignment {
    pub fn assigned(&self) -> usize {
        self.targets.iter().filter(|t| t.is_some()).count()
    }
}

/// Shared bookkeeping: one target (a vertex or a clique) per container part,
/// staffed along the root path of the survivor's node.
struct Staffing {
    decomposition: CutDecomposition,
    node_of: Vec<usize>,
    /// Targets of each node, as indices into `targets`.
    by_node: Vec<Vec<usize>>,
    targets: Vec<Vec<Vertex>>,
    zombies: usize,
}

impl Staffing {
    fn new(
        g: &Graph,
        decomposition: CutDecomposition,
        parts: Vec<Vec<Vec<Vertex>>>,
        zombies: usize,
    ) -> Result<Self, StrategyError> {
        let node_of = decomposition.node_of(g.n());
        let mut by_node = Vec::new();
        let mut targets = Vec::new();
        for p in parts {
            let mut ids = Vec::new();
            for t in p {
                ids.push(targets.len());
                targets.push(t);
            }
            by_node.push(ids);
        }
        Ok(Staffing { decomposition, node_of, by_node, targets, zombies })
    }

    fn placement(&self, k: usize) -> Vec<Vertex> {
        let root = self.decomposition.root();
        let mut out: Vec<Vertex> = self.by_node[root].iter().map(|&t| self.targets[t][0]).take(k).collect();
        let first = out.first().copied().unwrap_or(0);
        out.resize(k, first);
        out
    }

    /// Root-first node path down to `x`.
    fn down_path(&self, x: usize) -> Vec<usize> {
        let mut p = self.decomposition.root_path(x);
        p.reverse();
        p
    }

    fn staff(&self, a: &mut ZombieAssignment, nodes: &[usize]) -> Result<(), String> {
        for &x in nodes {
            for &t in &self.by_node[x] {
                let z = a
                    .targets
                    .iter()
                    .position(Option::is_none)
                    .ok_or_else(|| format!("no free zombie for node {x}"))?;
                a.targets[z] = Some(t);
            }
        }
        Ok(())
    }

    fn start(&self, pursuers: &[Vertex], evader: Vertex) -> Result<ZombieAssignment, String> {
        if pursuers.len() < self.zombies {
            return Err(format!("{} zombies are needed, {} given", self.zombies, pursuers.len()));
        }
        let node = self.node_of[evader];
        let mut a = ZombieAssignment { node, targets: vec![None; pursuers.len()] };
        self.staff(&mut a, &self.down_path(node))?;
        Ok(a)
    }

    /// Re-staffs after the survivor changed node.
    fn follow(&self, a: &mut ZombieAssignment, evader: Vertex) -> Result<(), String> {
        let y = self.node_of[evader];
        let x = a.node;
        if y == x {
            return Ok(());
        }
        let px = self.down_path(x);
        let py = self.down_path(y);
        if self.decomposition.is_ancestor(x, y) {
            let fresh: Vec<usize> = py.iter().copied().filter(|w| !px.contains(w)).collect();
            self.staff(a, &fresh)?;
        } else if self.decomposition.is_ancestor(y, x) {
            for &w in px.iter().filter(|w| !py.contains(w)) {
                for t in a.targets.iter_mut() {
                    if t.is_some_and(|t| self.by_node[w].contains(&t)) {
                        *t = None;
                    }
                }
            }
        } else {
            return Err(format!("survivor jumped between unrelated nodes {x} and {y}"));
        }
        a.node = y;
        Ok(())
    }
}

/// One lazy zombie per container vertex along the root path of the
/// survivor's node. An assigned zombie steps only to a neighbour strictly
/// closer to both its vertex and the survivor.
pub struct CutDecompositionPolicy<'a> {
    g: &'a Graph,
    d: &'a DistanceMatrix,
    staffing: Staffing,
}

impl<'a> CutDecompositionPolicy<'a> {
    pub fn new(g: &'a Graph, d: &'a DistanceMatrix, decomposition: CutDecomposition) -> Result<Self, StrategyError> {
        validate_cut_decomposition(g, &decomposition).map_err(StrategyError::InvalidDecomposition)?;
        let zombies = load(g, &decomposition)?;
        let parts = decomposition.nodes.iter().map(|x| x.container.iter().map(|&v| vec![v]).collect()).collect();
        Ok(CutDecompositionPolicy { g, d, staffing: Staffing::new(g, decomposition, parts, zombies)? })
    }

    pub fn zombies(&self) -> usize {
        self.staffing.zombies
    }

    pub fn decomposition(&self) -> &CutDecomposition {
        &self.staffing.decomposition
    }

    /// Vertex a zombie index is assigned to.
    pub fn target_vertex(&self, target: usize) -> Vertex {
        self.staffing.targets[target][0]
    }
}

impl PursuerStrategy for CutDecompositionPolicy<'_> {
    type Memory = ZombieAssignment;

    fn name(&self) -> String {
        "thm7".into()
    }

    fn placement(&self, k: usize) -> Vec<Vertex> {
        self.staffing.placement(k)
    }

    fn start(&self, pursuers: &[Vertex], evader: Vertex) -> Result<ZombieAssignment, String> {
        self.staffing.start(pursuers, evader)
    }

    fn next(&self, a: &mut ZombieAssignment, pursuers: &[Vertex], s: Vertex) -> Result<Vec<Vertex>, String> {
        self.staffing.follow(a, s)?;
        let d = self.d;
        let mut out = pursuers.to_vec();
        for (i, &u) in pursuers.iter().enumerate() {
            let Some(t) = a.targets[i] else { continue };
            let v = self.target_vertex(t);
            if u == v {
                continue;
            }
            if let Some(w) = self
                .g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| d.get(w, v) < d.get(u, v) && d.get(w, s) < d.get(u, s))
                .min()
            {
                out[i] = w;
            }
        }
        Ok(out)
    }
}

/// One lazy zombie per clique of each container's clique cover. A zombie
/// moves only while the survivor stands on its clique, each time getting one
/// step closer to the clique.
pub struct CliqueCoverPolicy<'a> {
    g: &'a Graph,
    d: &'a DistanceMatrix,
    staffing: Staffing,
}

impl<'a> CliqueCoverPolicy<'a> {
    /// Uses minimum clique covers of every container.
    pub fn new(g: &'a Graph, d: &'a DistanceMatrix, decomposition: CutDecomposition) -> Result<Self, StrategyError> {
        validate_cut_decomposition(g, &decomposition).map_err(StrategyError::InvalidDecomposition)?;
        let covers = decomposition
            .nodes
            .iter()
            .map(|x| clique_cover(g, &x.container, DEFAULT_COVER_LIMIT))
            .collect::<Result<Vec<_>, _>>()?;
        let zombies = load_star(g, &decomposition)?;
        Ok(CliqueCoverPolicy { g, d, staffing: Staffing::new(g, decomposition, covers, zombies)? })
    }

    /// Uses the supplied covers, one per node in node order.
    pub fn with_covers(
        g: &'a Graph,
        d: &'a DistanceMatrix,
        decomposition: CutDecomposition,
        covers: Vec<Vec<Vec<Vertex>>>,
    ) -> Result<Self, StrategyError> {
        validate_cut_decomposition(g, &decomposition).map_err(StrategyError::InvalidDecomposition)?;
        if covers.len() != decomposition.len() {
            return Err(StrategyError::InvalidCover(format!(
                "{} covers for {} nodes",
                covers.len(),
                decomposition.len()
            )));
        }
        for (x, cover) in decomposition.nodes.iter().zip(&covers) {
            let mut all: Vec<Vertex> = cover.concat();
            all.sort_unstable();
            let mut want = x.container.clone();
            want.sort_unstable();
            if all != want {
                return Err(StrategyError::InvalidCover(format!("cover of node {} does not partition its container", x.id)));
            }
            for k in cover {
                if k.is_empty() || k.iter().any(|&u| k.iter().any(|&v| u != v && !g.has_edge(u, v))) {
                    return Err(StrategyError::InvalidCover(format!("{k:?} is not a clique")));
                }
            }
        }
        let zombies = {
            let w: Vec<usize> = covers.iter().map(Vec::len).collect();
            let children = decomposition.children();
            fn go(x: usize, w: &[usize], ch: &[Vec<usize>]) -> usize {
                w[x] + ch[x].iter().map(|&c| go(c, w, ch)).max().unwrap_or(0)
            }
            go(decomposition.root(), &w, &children)
        };
        Ok(CliqueCoverPolicy { g, d, staffing: Staffing::new(g, decomposition, covers, zombies)? })
    }

    pub fn zombies(&self) -> usize {
        self.staffing.zombies
    }

    pub fn clique(&self, target: usize) -> &[Vertex] {
        &self.staffing.targets[target]
    }

    /// Distance from `z` to the nearest vertex of clique `target`.
    pub fn distance_to_clique(&self, z: Vertex, target: usize) -> u32 {
        self.clique(target).iter().map(|&v| self.d.get(z, v)).min().unwrap_or(u32::MAX)
    }
}

impl PursuerStrategy for CliqueCoverPolicy<'_> {
    type Memory = ZombieAssignment;

    fn name(&self) -> String {
        "thm9".into()
    }

    fn placement(&self, k: usize) -> Vec<Vertex> {
        self.staffing.placement(k)
    }

    fn start(&self, pursuers: &[Vertex], evader: Vertex) -> Result<ZombieAssignment, String> {
        self.staffing.start(pursuers, evader)
    }

    fn next(&self, a: &mut ZombieAssignment, pursuers: &[Vertex], s: Vertex) -> Result<Vec<Vertex>, String> {
        self.staffing.follow(a, s)?;
        let d = self.d;
        let mut out = pursuers.to_vec();
        for (i, &z) in pursuers.iter().enumerate() {
            let Some(t) = a.targets[i] else { continue };
            let k = self.clique(t);
            if !k.contains(&s) {
                continue;
            }
            let dk = self.distance_to_clique(z, t);
            let toward = |goal: Vertex| {
                self.g
                    .neighbors(z)
                    .iter()
                    .copied()
                    .filter(|&w| d.get(w, goal) + 1 == d.get(z, goal) && d.get(w, s) + 1 == d.get(z, s))
                    .min()
            };
            let step = if dk == 0 || d.get(z, s) == dk {
                toward(s)
            } else {
                let w = *k.iter().min_by_key(|&&w| (d.get(z, w), w)).expect("cliques are non-empty");
                toward(w)
            };
            out[i] = step.ok_or_else(|| format!("zombie {i} on {z} has no step towards clique {k:?}"))?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{td_tree_to_cut_decomposition, time, time_star, treedepth, CutNode};
    use crate::engine::{worst_case, GameVariant, WorstCase};
    use crate::graph::all_pairs_distances;

    fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::new(n, &e).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    fn all(n: usize) -> Vec<Vertex> {
        (0..n).collect()
    }

    #[test]
    fn clique_single_container() {
        let g = complete(5);
        let d = all_pairs_distances(&g);
        let p = CutDecompositionPolicy::new(&g, &d, CutDecomposition::single(5)).unwrap();
        assert_eq!(p.zombies(), 5);
        let r = worst_case(&g, &d, GameVariant::LazyZombies, &p, &p.placement(5), &all(5), 10_000).unwrap();
        // every vertex is occupied, so the survivor cannot even be placed
        assert_eq!(r, WorstCase::Captured { round: 0, states: 0 });
        let q = CliqueCoverPolicy::new(&g, &d, CutDecomposition::single(5)).unwrap();
        assert_eq!(q.zombies(), 1);
        let r = worst_case(&g, &d, GameVariant::LazyZombies, &q, &q.placement(1), &all(5), 10_000).unwrap();
        assert!(matches!(r, WorstCase::Captured { round: 1, .. }), "{r:?}");
    }

    #[test]
    fn path_with_optimal_tree() {
        let g = path(7);
        let d = all_pairs_distances(&g);
        let (td, tree) = treedepth(&g).unwrap();
        let dec = td_tree_to_cut_decomposition(&g, &tree).unwrap();
        let bound = time(&g, &dec).unwrap() as usize + 1;
        let p = CutDecompositionPolicy::new(&g, &d, dec.clone()).unwrap();
        assert_eq!(p.zombies(), td);
        for start in [vec![0, 0, 0], vec![6, 6, 6], vec![0, 3, 6], p.placement(3)] {
            match worst_case(&g, &d, GameVariant::LazyZombies, &p, &start, &all(7), 1_000_000).unwrap() {
                WorstCase::Captured { round, .. } => assert!(round <= bound, "{round} > {bound}"),
                e => panic!("{e:?}"),
            }
        }
        let q = CliqueCoverPolicy::new(&g, &d, dec.clone()).unwrap();
        let bound = time_star(&g, &dec).unwrap() as usize + 1;
        match worst_case(&g, &d, GameVariant::LazyZombies, &q, &[0, 0, 0], &all(7), 1_000_000).unwrap() {
            WorstCase::Captured { round, .. } => assert!(round <= bound),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn bad_inputs() {
        let g = path(3);
        let d = all_pairs_distances(&g);
        let bad = CutDecomposition {
            nodes: vec![
                CutNode { id: 0, parent: None, container: vec![0] },
                CutNode { id: 1, parent: Some(0), container: vec![1, 2] },
            ],
        };
        assert!(matches!(CutDecompositionPolicy::new(&g, &d, bad), Err(StrategyError::InvalidDecomposition(_))));
        let single = CutDecomposition::single(3);
        let r = CliqueCoverPolicy::with_covers(&g, &d, single.clone(), vec![vec![vec![0, 2], vec![1]]]);
        assert!(matches!(r, Err(StrategyError::InvalidCover(_))));
        let ok = CliqueCoverPolicy::with_covers(&g, &d, single.clone(), vec![vec![vec![0, 1], vec![2]]]).unwrap();
        assert_eq!(ok.zombies(), 2);
        let p = CutDecompositionPolicy::new(&g, &d, single).unwrap();
        assert!(p.start(&[0], 2).is_err());
    }
}
