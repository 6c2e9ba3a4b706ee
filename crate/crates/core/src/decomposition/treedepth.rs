use serde::{Deserialize, Serialize};

use super::DecompositionError;
use crate::graph::{components_of_mask, mask_vertices, Graph, Vertex};

pub const DEFAULT_TREEDEPTH_LIMIT: usize = 14;

/// Rooted tree on the vertices of a graph; `parent[root]` is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreedepthTree {
    pub parent: Vec<Option<Vertex>>,
    pub root: Vertex,
}

impl TreedepthTree {
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn children(&self) -> Vec<Vec<Vertex>> {
        let mut ch = vec![Vec::new(); self.n()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                ch[p].push(v);
            }
        }
        ch
    }

    /// Vertices on the path from `v` up to the root, `v` first.
    pub fn root_path(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
            if out.len() > self.n() {
                break;
            }
        }
        out
    }

    /// Number of vertices from the root down to `v` (the root has depth 1).
    pub fn depth(&self, v: Vertex) -> usize {
        self.root_path(v).len()
    }

    /// Vertex count of the longest root-to-leaf chain.
    pub fn vertex_height(&self) -> usize {
        (0..self.n()).map(|v| self.depth(v)).max().unwrap_or(0)
    }

    /// Height in edges.
    pub fn height(&self) -> usize {
        self.vertex_height().saturating_sub(1)
    }

    pub fn is_ancestor(&self, a: Vertex, b: Vertex) -> bool {
        self.root_path(b).contains(&a)
    }

    /// Checks that this is a tree on `V(g)` and that `g ⊆ clos(T)`.
    pub fn validate(&self, g: &Graph) -> Result<(), DecompositionError> {
        let n = self.n();
        if n != g.n() {
            return Err(DecompositionError::InvalidTree(format!("tree has {n} vertices, graph has {}", g.n())));
        }
        if self.root >= n || self.parent[self.root].is_some() {
            return Err(DecompositionError::InvalidTree(format!("vertex {} is not a root", self.root)));
        }
        for v in 0..n {
            match self.parent[v] {
                None if v != self.root => {
                    return Err(DecompositionError::InvalidTree(format!("second root {v}")));
                }
                Some(p) if p >= n => {
                    return Err(DecompositionError::InvalidTree(format!("parent {p} of {v} out of range")));
                }
                _ => {}
            }
            let path = self.root_path(v);
            if *path.last().expect("non-empty") != self.root || path.len() > n {
                return Err(DecompositionError::InvalidTree(format!("vertex {v} does not reach the root")));
            }
        }
        for &(u, v) in g.edges() {
            if !self.is_ancestor(u, v) && !self.is_ancestor(v, u) {
                return Err(DecompositionError::InvalidTree(format!("edge {u}-{v} is not in the closure")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DecompositionError> {
        serde_json::from_str(text).map_err(|e| DecompositionError::Parse(e.to_string()))
    }
}

struct Solver<'a> {
    masks: &'a [u64],
    memo: Vec<u8>,
    best: Vec<u8>,
}

impl Solver<'_> {
    fn td(&mut self, mask: u64) -> u8 {
        if mask == 0 {
            return 0;
        }
        if mask.count_ones() == 1 {
            return 1;
        }
        let key = mask as usize;
        if self.memo[key] != 0 {
            return self.memo[key];
        }
        let comps = components_of_mask(self.masks, mask);
        let value = if comps.len() > 1 {
            comps.into_iter().map(|c| self.td(c)).max().unwrap_or(0)
        } else {
            let mut best = (u8::MAX, 0u8);
            for v in mask_vertices(mask) {
                let t = self.td(mask & !(1 << v));
                if t < best.0 {
                    best = (t, v as u8);
                }
            }
            self.best[key] = best.1;
            best.0 + 1
        };
        self.memo[key] = value;
        value
    }

    fn build(&mut self, mask: u64, parent: Option<Vertex>, out: &mut Vec<Option<Vertex>>) {
        for comp in components_of_mask(self.masks, mask) {
            let v = if comp.count_ones() == 1 {
                comp.trailing_zeros() as usize
            } else {
                self.td(comp);
                self.best[comp as usize] as usize
            };
            out[v] = parent;
            let rest = comp & !(1 << v);
            if rest != 0 {
                self.build(rest, Some(v), out);
            }
        }
    }
}

/// Exact treedepth of a connected graph with a witness tree whose vertex
/// height equals the value.
pub fn treedepth(g: &Graph) -> Result<(usize, TreedepthTree), DecompositionError> {
    treedepth_with_limit(g, DEFAULT_TREEDEPTH_LIMIT)
}

pub fn treedepth_with_limit(g: &Graph, limit: usize) -> Result<(usize, TreedepthTree), DecompositionError> {
    let n = g.n();
    if n > limit || n > 24 {
        return Err(DecompositionError::TooLarge(format!("{n} vertices, limit is {}", limit.min(24))));
    }
    g.require_connected()?;
    if n == 0 {
        return Err(DecompositionError::InvalidTree("empty graph".into()));
    }
    let masks = g.neighbor_masks()?;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = Solver { masks: &masks, memo: vec![0; 1 << n], best: vec![0; 1 << n] };
    let value = s.td(full) as usize;
    let mut parent = vec![None; n];
    s.build(full, None, &mut parent);
    let root = parent.iter().position(Option::is_none).expect("a root exists");
    Ok((value, TreedepthTree { parent, root }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn examples() {
        let (v, t) = treedepth(&path(1)).unwrap();
        assert_eq!((v, t.vertex_height()), (1, 1));
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(treedepth(&k4).unwrap().0, 4);
        let (v, t) = treedepth(&path(7)).unwrap();
        assert_eq!(v, 3);
        assert_eq!(t.root, 3);
        assert_eq!(t.height(), 2);
        t.validate(&path(7)).unwrap();
        let (v, t) = treedepth(&path(3)).unwrap();
        assert_eq!((v, t.root), (2, 1));
    }

    #[test]
    fn witness_matches_value() {
        for n in 1..=10 {
            let g = path(n);
            let (v, t) = treedepth(&g).unwrap();
            t.validate(&g).unwrap();
            assert_eq!(t.vertex_height(), v);
            // ceil(log2(n + 1))
            assert_eq!(v, (usize::BITS - n.leading_zeros()) as usize);
        }
    }

    #[test]
    fn validation_catches_bad_trees() {
        let g = path(3);
        let bad = TreedepthTree { parent: vec![None, Some(0), Some(0)], root: 0 };
        assert!(bad.validate(&g).is_err());
        let two_roots = TreedepthTree { parent: vec![None, None, Some(1)], root: 0 };
        assert!(two_roots.validate(&g).is_err());
        let json = TreedepthTree { parent: vec![Some(1), None, Some(1)], root: 1 };
        assert_eq!(TreedepthTree::from_json(&json.to_json()).unwrap(), json);
    }

    #[test]
    fn limits() {
        assert!(matches!(treedepth(&path(15)), Err(DecompositionError::TooLarge(_))));
        assert!(treedepth(&Graph::new(2, &[]).unwrap()).is_err());
    }
}
