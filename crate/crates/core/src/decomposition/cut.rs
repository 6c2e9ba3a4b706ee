use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{clique_cover, mask_of, DecompositionError, TreedepthTree, DEFAULT_COVER_LIMIT};
use crate::graph::{components_of_mask, mask_vertices, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub container: Vec<Vertex>,
}

/// Rooted tree of containers. Node ids equal their index in `nodes`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutDecomposition {
    pub nodes: Vec<CutNode>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Structure(String),
    EmptyContainer(usize),
    VertexMissing(Vertex),
    VertexRepeated(Vertex),
    EdgeNotAncestral(Vertex, Vertex),
    NotCutSet(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Structure(s) => write!(f, "malformed tree: {s}"),
            Violation::EmptyContainer(x) => write!(f, "container of node {x} is empty"),
            Violation::VertexMissing(v) => write!(f, "vertex {v} is in no container"),
            Violation::VertexRepeated(v) => write!(f, "vertex {v} is in more than one container"),
            Violation::EdgeNotAncestral(u, v) => write!(f, "edge {u}-{v} joins unrelated nodes"),
            Violation::NotCutSet(x) => write!(f, "container of non-leaf node {x} does not disconnect its component"),
        }
    }
}

impl CutDecomposition {
    /// Single node holding every vertex.
    pub fn single(n: usize) -> Self {
        CutDecomposition { nodes: vec![CutNode { id: 0, parent: None, container: (0..n).collect() }] }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        self.nodes.iter().position(|x| x.parent.is_none()).unwrap_or(0)
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.len()];
        for x in &self.nodes {
            if let Some(p) = x.parent {
                ch[p].push(x.id);
            }
        }
        ch
    }

    /// Nodes from `x` up to the root, `x` first.
    pub fn root_path(&self, x: usize) -> Vec<usize> {
        let mut out = vec![x];
        let mut cur = x;
        while let Some(p) = self.nodes[cur].parent {
            out.push(p);
            cur = p;
            if out.len() > self.len() {
                break;
            }
        }
        out
    }

    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.root_path(b).contains(&a)
    }

    /// Height in edges (a lone root has height 0).
    pub fn height(&self) -> usize {
        (0..self.len()).map(|x| self.root_path(x).len() - 1).max().unwrap_or(0)
    }

    /// Size of the largest container.
    pub fn cdw(&self) -> usize {
        self.nodes.iter().map(|x| x.container.len()).max().unwrap_or(0)
    }

    /// Node whose container holds each vertex.
    pub fn node_of(&self, n: usize) -> Vec<usize> {
        let mut at = vec![usize::MAX; n];
        for x in &self.nodes {
            for &v in &x.container {
                if v < n {
                    at[v] = x.id;
                }
            }
        }
        at
    }

    /// All vertices in the containers of `x` and its descendants.
    pub fn subtree_vertices(&self, x: usize) -> Vec<Vertex> {
        let children = self.children();
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            out.extend_from_slice(&self.nodes[y].container);
            stack.extend_from_slice(&children[y]);
        }
        out.sort_unstable();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DecompositionError> {
        serde_json::from_str(text).map_err(|e| DecompositionError::Parse(e.to_string()))
    }
}

fn structure(d: &CutDecomposition) -> Result<(), Violation> {
    if d.nodes.is_empty() {
        return Err(Violation::Structure("no nodes".into()));
    }
    let roots = d.nodes.iter().filter(|x| x.parent.is_none()).count();
    if roots != 1 {
        return Err(Violation::Structure(format!("{roots} roots")));
    }
    for (i, x) in d.nodes.iter().enumerate() {
        if x.id != i {
            return Err(Violation::Structure(format!("node at position {i} has id {}", x.id)));
        }
        if x.parent.is_some_and(|p| p >= d.len()) {
            return Err(Violation::Structure(format!("node {i} has a missing parent")));
        }
    }
    let root = d.root();
    for i in 0..d.len() {
        let path = d.root_path(i);
        if path.len() > d.len() || *path.last().expect("non-empty") != root {
            return Err(Violation::Structure(format!("node {i} is on a cycle")));
        }
    }
    Ok(())
}

/// Partition, ancestor–descendant edges, and the cut-set property at every
/// non-leaf node.
pub fn validate_cut_decomposition(g: &Graph, d: &CutDecomposition) -> Result<(), Violation> {
    structure(d)?;
    let n = g.n();
    let mut seen = vec![false; n];
    for x in &d.nodes {
        if x.container.is_empty() {
            return Err(Violation::EmptyContainer(x.id));
        }
        for &v in &x.container {
            if v >= n {
                return Err(Violation::Structure(format!("vertex {v} out of range")));
            }
            if seen[v] {
                return Err(Violation::VertexRepeated(v));
            }
            seen[v] = true;
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Violation::VertexMissing(v));
    }
    let at = d.node_of(n);
    for &(u, v) in g.edges() {
        if !d.is_ancestor(at[u], at[v]) && !d.is_ancestor(at[v], at[u]) {
            return Err(Violation::EdgeNotAncestral(u, v));
        }
    }
    let children = d.children();
    for x in &d.nodes {
        if children[x.id].is_empty() {
            continue;
        }
        let rest: Vec<Vertex> =
            d.subtree_vertices(x.id).into_iter().filter(|v| !x.container.contains(v)).collect();
        if component_count(g, &rest) < 2 {
            return Err(Violation::NotCutSet(x.id));
        }
    }
    Ok(())
}

fn component_count(g: &Graph, set: &[Vertex]) -> usize {
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in set {
        inside[v] = true;
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for &s in set {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

fn require_valid(g: &Graph, d: &CutDecomposition) -> Result<(), DecompositionError> {
    validate_cut_decomposition(g, d).map_err(DecompositionError::InvalidDecomposition)
}

/// Bottom-up fold: `leaf(w)` at leaves, `inner(w, best_child)` elsewhere,
/// where `w` is the per-node weight and children combine by maximum.
fn fold<T: Copy + Ord>(d: &CutDecomposition, weight: &[T], leaf: impl Fn(T) -> T, inner: impl Fn(T, T) -> T) -> T {
    let children = d.children();
    let mut order = Vec::with_capacity(d.len());
    let mut stack = vec![d.root()];
    while let Some(x) = stack.pop() {
        order.push(x);
        stack.extend_from_slice(&children[x]);
    }
    let mut value: Vec<Option<T>> = vec![None; d.len()];
    for &x in order.iter().rev() {
        let best = children[x].iter().filter_map(|&c| value[c]).max();
        value[x] = Some(match best {
            None => leaf(weight[x]),
            Some(b) => inner(weight[x], b),
        });
    }
    value[d.root()].expect("root evaluated")
}

/// `load(x) = |C_x| + max over children`, at the root.
pub fn load(g: &Graph, d: &CutDecomposition) -> Result<usize, DecompositionError> {
    require_valid(g, d)?;
    let w: Vec<usize> = d.nodes.iter().map(|x| x.container.len()).collect();
    Ok(fold(d, &w, |c| c, |c, b| c + b))
}

/// `time(x) = (|C_x|(diam - 1) + 1) * max over children`, at the root.
pub fn time(g: &Graph, d: &CutDecomposition) -> Result<u128, DecompositionError> {
    require_valid(g, d)?;
    let diam = crate::graph::diameter(g)? as u128;
    let w: Vec<u128> = d.nodes.iter().map(|x| x.container.len() as u128 * diam.saturating_sub(1) + 1).collect();
    Ok(fold(d, &w, |c| c, |c, b| c.saturating_mul(b)))
}

fn covers(g: &Graph, d: &CutDecomposition) -> Result<Vec<usize>, DecompositionError> {
    d.nodes.iter().map(|x| Ok(clique_cover(g, &x.container, DEFAULT_COVER_LIMIT)?.len())).collect()
}

/// Like [`load`] with each container weighted by its clique cover number.
pub fn load_star(g: &Graph, d: &CutDecomposition) -> Result<usize, DecompositionError> {
    require_valid(g, d)?;
    let w = covers(g, d)?;
    Ok(fold(d, &w, |c| c, |c, b| c + b))
}

/// `time*(x) = (theta(C_x) diam + 1) * max over children`, at the root.
pub fn time_star(g: &Graph, d: &CutDecomposition) -> Result<u128, DecompositionError> {
    require_valid(g, d)?;
    let diam = crate::graph::diameter(g)? as u128;
    let w: Vec<u128> = covers(g, d)?.into_iter().map(|t| t as u128 * diam + 1).collect();
    Ok(fold(d, &w, |c| c, |c, b| c.saturating_mul(b)))
}

/// Compresses every maximal chain of single-child vertices (together with
/// the vertex ending it) into one container.
pub fn td_tree_to_cut_decomposition(g: &Graph, t: &TreedepthTree) -> Result<CutDecomposition, DecompositionError> {
    t.validate(g)?;
    let children = t.children();
    let mut nodes: Vec<CutNode> = Vec::new();
    // (chain head vertex, parent node id)
    let mut stack = vec![(t.root, None::<usize>)];
    while let Some((head, parent)) = stack.pop() {
        let mut container = vec![head];
        let mut cur = head;
        while children[cur].len() == 1 {
            cur = children[cur][0];
            container.push(cur);
        }
        let id = nodes.len();
        nodes.push(CutNode { id, parent, container });
        for &c in children[cur].iter().rev() {
            stack.push((c, Some(id)));
        }
    }
    Ok(CutDecomposition { nodes })
}

/// Replaces each node by a path of its container's vertices, ids ascending
/// toward the root.
pub fn cut_decomposition_to_td_tree(g: &Graph, d: &CutDecomposition) -> Result<TreedepthTree, DecompositionError> {
    require_valid(g, d)?;
    let n = g.n();
    let mut parent = vec![None; n];
    let sorted: Vec<Vec<Vertex>> = d
        .nodes
        .iter()
        .map(|x| {
            let mut c = x.container.clone();
            c.sort_unstable();
            c
        })
        .collect();
    for (x, c) in d.nodes.iter().zip(&sorted) {
        // top of the path is the largest id; bottom the smallest
        for w in c.windows(2) {
            parent[w[0]] = Some(w[1]);
        }
        let top = *c.last().expect("containers are non-empty");
        parent[top] = x.parent.map(|p| sorted[p][0]);
    }
    let root = *sorted[d.root()].last().expect("non-empty");
    Ok(TreedepthTree { parent, root })
}

/// Random valid cut decomposition: at each component either stop with a
/// leaf, or remove a random cut set and recurse on the pieces.
pub fn random_cut_decomposition<R: Rng>(g: &Graph, rng: &mut R) -> Result<CutDecomposition, DecompositionError> {
    g.require_connected()?;
    let masks = g.neighbor_masks()?;
    let mut nodes: Vec<CutNode> = Vec::new();
    let full: Vec<Vertex> = (0..g.n()).collect();
    let mut stack = vec![(mask_of(&full), None::<usize>)];
    while let Some((y, parent)) = stack.pop() {
        let vertices: Vec<Vertex> = mask_vertices(y).collect();
        let cut = if vertices.len() >= 3 && rng.gen_bool(0.8) { random_cut(&masks, &vertices, rng) } else { None };
        let id = nodes.len();
        match cut {
            None => nodes.push(CutNode { id, parent, container: vertices }),
            Some(c) => {
                nodes.push(CutNode { id, parent, container: mask_vertices(c).collect() });
                for comp in components_of_mask(&masks, y & !c) {
                    stack.push((comp, Some(id)));
                }
            }
        }
    }
    Ok(CutDecomposition { nodes })
}

fn random_cut<R: Rng>(masks: &[u64], vertices: &[Vertex], rng: &mut R) -> Option<u64> {
    let y = mask_of(vertices);
    for _ in 0..40 {
        let size = rng.gen_range(1..=vertices.len() - 2);
        let pick: Vec<Vertex> = vertices.choose_multiple(rng, size).copied().collect();
        let c = mask_of(&pick);
        if components_of_mask(masks, y & !c).len() >= 2 {
            return Some(c);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::treedepth;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn p3_decomposition() -> CutDecomposition {
        CutDecomposition {
            nodes: vec![
                CutNode { id: 0, parent: None, container: vec![1] },
                CutNode { id: 1, parent: Some(0), container: vec![0] },
                CutNode { id: 2, parent: Some(0), container: vec![2] },
            ],
        }
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert_eq!(validate_cut_decomposition(&p3(), &CutDecomposition::single(3)), Ok(()));
        assert_eq!(validate_cut_decomposition(&p3(), &p3_decomposition()), Ok(()));
        let bad = CutDecomposition {
            nodes: vec![
                CutNode { id: 0, parent: None, container: vec![0] },
                CutNode { id: 1, parent: Some(0), container: vec![1, 2] },
            ],
        };
        assert_eq!(validate_cut_decomposition(&p3(), &bad), Err(Violation::NotCutSet(0)));
        let empty = CutDecomposition {
            nodes: vec![
                CutNode { id: 0, parent: None, container: vec![0, 1, 2] },
                CutNode { id: 1, parent: Some(0), container: vec![] },
            ],
        };
        assert_eq!(validate_cut_decomposition(&p3(), &empty), Err(Violation::EmptyContainer(1)));
        let sideways = CutDecomposition {
            nodes: vec![
                CutNode { id: 0, parent: None, container: vec![1] },
                CutNode { id: 1, parent: Some(0), container: vec![0, 2] },
            ],
        };
        assert!(validate_cut_decomposition(&p3(), &sideways).is_ok());
    }

    #[test]
    fn load_and_time_examples() {
        let k5 = complete(5);
        assert_eq!(load(&k5, &CutDecomposition::single(5)), Ok(5));
        assert_eq!(load(&p3(), &p3_decomposition()), Ok(2));
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(time(&c4, &CutDecomposition::single(4)), Ok(5));
        assert_eq!(load_star(&k5, &CutDecomposition::single(5)), Ok(1));
        assert_eq!(time_star(&k5, &CutDecomposition::single(5)), Ok(2));
        assert_eq!(load_star(&p3(), &p3_decomposition()), Ok(2));
        // time(P3) = (1*(2-1)+1) * (1*(2-1)+1)
        assert_eq!(time(&p3(), &p3_decomposition()), Ok(4));
    }

    #[test]
    fn conversions() {
        let chain = TreedepthTree { parent: vec![None, Some(0), Some(1)], root: 0 };
        let d = td_tree_to_cut_decomposition(&complete(3), &chain).unwrap();
        assert_eq!(d, CutDecomposition { nodes: vec![CutNode { id: 0, parent: None, container: vec![0, 1, 2] }] });
        let back = cut_decomposition_to_td_tree(&complete(3), &d).unwrap();
        assert_eq!(back.vertex_height(), 3);
        back.validate(&complete(3)).unwrap();

        let (_, t) = treedepth(&p3()).unwrap();
        let d = td_tree_to_cut_decomposition(&p3(), &t).unwrap();
        assert_eq!(load(&p3(), &d), Ok(2));
        let back = cut_decomposition_to_td_tree(&p3(), &p3_decomposition()).unwrap();
        assert_eq!((back.root, back.height()), (1, 1));
    }

    #[test]
    fn random_decompositions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = Graph::new(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (0, 4), (2, 6)]).unwrap();
        for _ in 0..50 {
            let d = random_cut_decomposition(&g, &mut rng).unwrap();
            assert_eq!(validate_cut_decomposition(&g, &d), Ok(()));
            assert!(load_star(&g, &d).unwrap() <= load(&g, &d).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let d = p3_decomposition();
        assert_eq!(CutDecomposition::from_json(&d.to_json()).unwrap(), d);
        assert!(d.to_json().contains("\"container\""));
    }
}
