use std::collections::BTreeSet;

use super::{blocks_and_cut_vertices, Graph, GraphError, Vertex};

/// Closed walk around the outer face of an outerplanar graph.
///
/// Each slot of `walk` maps to a vertex; cut vertices occupy several slots
/// and bridges are traversed twice. `chords` are the remaining edges of the
/// graph, attached to the slots that border the chord's interior face, and
/// `null_chords` join consecutive appearances of the same cut vertex. All
/// slot pairs are stored as `(a, b)` with `a < b`; together the chords and
/// null chords are pairwise non-crossing with respect to the slot order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub walk: Vec<Vertex>,
    pub chords: Vec<(usize, usize)>,
    pub null_chords: Vec<(usize, usize)>,
    /// Slots of every vertex, ascending.
    pub slots: Vec<Vec<usize>>,
    /// Chord and null-chord partners of every slot.
    pub partners: Vec<Vec<usize>>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// Number of steps of the closed walk (a single slot is a walk of length zero).
    pub fn walk_steps(&self) -> usize {
        if self.walk.len() <= 1 {
            0
        } else {
            self.walk.len()
        }
    }

    pub fn vertex(&self, slot: usize) -> Vertex {
        self.walk[slot]
    }

    /// Slot reached from `slot` by `dir` (+1 clockwise, -1 counterclockwise).
    pub fn step(&self, slot: usize, dir: i8) -> usize {
        let len = self.walk.len();
        if dir > 0 {
            (slot + 1) % len
        } else {
            (slot + len - 1) % len
        }
    }

    /// Slots strictly between `from` and `to`, walking from `from` in direction `dir`.
    pub fn open_interval(&self, from: usize, to: usize, dir: i8) -> Vec<usize> {
        let mut out = Vec::new();
        let mut s = self.step(from, dir);
        while s != to && s != from {
            out.push(s);
            s = self.step(s, dir);
        }
        out
    }

    /// Whether `x` lies strictly between `from` and `to` walking in direction `dir`.
    pub fn strictly_between(&self, from: usize, to: usize, dir: i8, x: usize) -> bool {
        let len = self.walk.len();
        let (a, b) = if dir > 0 { (from, to) } else { (to, from) };
        // clockwise open interval (a, b)
        let off_x = (x + len - a) % len;
        let off_b = (b + len - a) % len;
        let off_b = if off_b == 0 { len } else { off_b };
        off_x > 0 && off_x < off_b
    }

    pub fn has_chords(&self) -> bool {
        !self.chords.is_empty() || !self.null_chords.is_empty()
    }

    /// Whether some slot of `v` carries a chord or null chord.
    pub fn is_chord_vertex(&self, v: Vertex) -> bool {
        self.slots[v].iter().any(|&s| !self.partners[s].is_empty())
    }
}

fn crossing(a: (usize, usize), b: (usize, usize)) -> bool {
    let (p, q) = a;
    let (r, s) = b;
    (p < r && r < q && q < s) || (r < p && p < s && s < q)
}

/// Hamiltonian outer cycle of a 2-connected outerplanar block.
///
/// For a 2-connected outerplanar graph with at least four vertices an edge
/// `uv` lies on the outer cycle exactly when removing `u` and `v` leaves the
/// block connected. The candidate edges are then checked to form a single
/// Hamiltonian cycle with non-crossing chords, which certifies outerplanarity.
fn block_outer_cycle(g: &Graph, vertices: &[Vertex], edges: &[(Vertex, Vertex)]) -> Result<Vec<Vertex>, GraphError> {
    let m = vertices.len();
    if edges.len() > 2 * m - 3 {
        return Err(GraphError::NotOuterplanar(format!(
            "block on {} vertices has {} edges (more than 2n-3)",
            m,
            edges.len()
        )));
    }
    let local = g.induced(vertices);
    let outer: Vec<(usize, usize)> = if m == 3 {
        local.edges().to_vec()
    } else {
        local
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| {
                let rest: Vec<_> = (0..m).filter(|&w| w != u && w != v).collect();
                local.induced(&rest).is_connected()
            })
            .collect()
    };
    let mut cyc_adj = vec![Vec::new(); m];
    for &(u, v) in &outer {
        cyc_adj[u].push(v);
        cyc_adj[v].push(u);
    }
    if cyc_adj.iter().any(|a| a.len() != 2) {
        return Err(GraphError::NotOuterplanar("block has no outer Hamiltonian cycle".into()));
    }
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0;
    loop {
        let next = if cyc_adj[cur][0] != prev { cyc_adj[cur][0] } else { cyc_adj[cur][1] };
        if next == 0 {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
        if order.len() > m {
            break;
        }
    }
    if order.len() != m {
        return Err(GraphError::NotOuterplanar("outer edges do not form a single cycle".into()));
    }
    let mut pos = vec![0; m];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let outer_set: BTreeSet<_> = outer.iter().copied().collect();
    let chords: Vec<(usize, usize)> = local
        .edges()
        .iter()
        .filter(|e| !outer_set.contains(e))
        .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
        .collect();
    for (i, &a) in chords.iter().enumerate() {
        if chords[i + 1..].iter().any(|&b| crossing(a, b)) {
            return Err(GraphError::NotOuterplanar("crossing chords".into()));
        }
    }
    Ok(order.into_iter().map(|i| vertices[i]).collect())
}

struct Builder<'a> {
    g: &'a Graph,
    cycles: Vec<Vec<Vertex>>,
    blocks_of: Vec<Vec<usize>>,
    visited: Vec<bool>,
    walk: Vec<Vertex>,
    chords: Vec<(usize, usize)>,
}

impl Builder<'_> {
    fn emit(&mut self, v: Vertex) -> usize {
        self.walk.push(v);
        self.walk.len() - 1
    }

    /// Walk the child blocks hanging off `v` (other than those already
    /// visited), re-emitting `v` after each one; returns the last slot of `v`.
    fn children(&mut self, v: Vertex, mut slot: usize) -> usize {
        let blocks = self.blocks_of[v].clone();
        for b in blocks {
            if !self.visited[b] {
                self.visit_block(b, v, slot);
                slot = self.emit(v);
            }
        }
        slot
    }

    fn visit_block(&mut self, b: usize, entry: Vertex, entry_slot: usize) {
        self.visited[b] = true;
        let cycle = self.cycles[b].clone();
        let start = cycle.iter().position(|&v| v == entry).expect("entry lies on its block");
        let m = cycle.len();
        let mut order: Vec<Vertex> = (0..m).map(|i| cycle[(start + i) % m]).collect();
        if m > 2 && order[m - 1] < order[1] {
            order[1..].reverse();
        }
        let mut first = vec![entry_slot; m];
        let mut last = vec![entry_slot; m];
        for i in 1..m {
            let s = self.emit(order[i]);
            first[i] = s;
            last[i] = self.children(order[i], s);
        }
        if m > 2 {
            let mut pos = vec![usize::MAX; self.g.n()];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            for &(u, v) in self.g.edges() {
                let (pu, pv) = (pos[u], pos[v]);
                if pu == usize::MAX || pv == usize::MAX {
                    continue;
                }
                let (i, j) = (pu.min(pv), pu.max(pv));
                if j == i + 1 || (i == 0 && j == m - 1) {
                    continue;
                }
                let (a, b) = (last[i], first[j]);
                self.chords.push((a.min(b), a.max(b)));
            }
        }
    }
}

/// Outer-face circuit of a connected outerplanar graph, with duplicated cut
/// edges and null chords between consecutive appearances of cut vertices.
pub fn outer_circuit(g: &Graph) -> Result<Circuit, GraphError> {
    g.require_connected()?;
    let n = g.n();
    if n >= 2 && g.edge_count() > 2 * n - 3 {
        return Err(GraphError::NotOuterplanar(format!(
            "{} edges exceed 2n-3 = {}",
            g.edge_count(),
            2 * n - 3
        )));
    }
    let decomposition = blocks_and_cut_vertices(g)?;
    let mut cycles = Vec::with_capacity(decomposition.blocks.len());
    for block in &decomposition.blocks {
        if block.is_bridge() {
            cycles.push(block.vertices.clone());
        } else {
            cycles.push(block_outer_cycle(g, &block.vertices, &block.edges)?);
        }
    }
    let mut blocks_of = vec![Vec::new(); n];
    for (b, block) in decomposition.blocks.iter().enumerate() {
        for &v in &block.vertices {
            blocks_of[v].push(b);
        }
    }
    let mut builder = Builder {
        g,
        cycles,
        blocks_of,
        visited: vec![false; decomposition.blocks.len()],
        walk: Vec::new(),
        chords: Vec::new(),
    };
    if n > 0 {
        let root_slot = builder.emit(0);
        let last = builder.children(0, root_slot);
        // the closing return to the root is the first slot itself
        if last != root_slot {
            builder.walk.pop();
        }
    }
    let Builder { walk, mut chords, .. } = builder;

    let mut slots = vec![Vec::new(); n];
    for (s, &v) in walk.iter().enumerate() {
        slots[v].push(s);
    }
    let mut null_set = BTreeSet::new();
    for list in &slots {
        let p = list.len();
        if p < 2 {
            continue;
        }
        for i in 0..p {
            if p == 2 && i == 1 {
                break;
            }
            let (a, b) = (list[i], list[(i + 1) % p]);
            null_set.insert((a.min(b), a.max(b)));
        }
    }
    chords.sort_unstable();
    let null_chords: Vec<_> = null_set.into_iter().collect();
    let mut partners = vec![Vec::new(); walk.len()];
    for &(a, b) in chords.iter().chain(&null_chords) {
        partners[a].push(b);
        partners[b].push(a);
    }
    for p in &mut partners {
        p.sort_unstable();
    }
    Ok(Circuit { walk, chords, null_chords, slots, partners })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_circuit(g: &Graph, c: &Circuit) {
        let len = c.len();
        let mut walk_edges = BTreeSet::new();
        let mut duplicated = 0;
        if len > 1 {
            for s in 0..len {
                let (u, v) = (c.walk[s], c.walk[(s + 1) % len]);
                assert!(g.has_edge(u, v), "walk step {u}-{v} is not an edge");
                if !walk_edges.insert((u.min(v), u.max(v))) {
                    duplicated += 1;
                }
            }
        }
        for &(a, b) in &c.chords {
            let (u, v) = (c.walk[a], c.walk[b]);
            assert!(g.has_edge(u, v));
            assert!(!walk_edges.contains(&(u.min(v), u.max(v))));
        }
        for &(a, b) in &c.null_chords {
            assert_eq!(c.walk[a], c.walk[b]);
        }
        assert_eq!(c.walk_steps() + c.chords.len(), g.edge_count() + duplicated);
        let all: Vec<_> = c.chords.iter().chain(&c.null_chords).copied().collect();
        for (i, &x) in all.iter().enumerate() {
            for &y in &all[i + 1..] {
                assert!(!crossing(x, y), "chords {x:?} and {y:?} cross");
            }
        }
    }

    #[test]
    fn cycle_has_no_chords() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let c = outer_circuit(&g).unwrap();
        assert_eq!(c.len(), 5);
        assert!(c.chords.is_empty() && c.null_chords.is_empty());
        check_circuit(&g, &c);
    }

    #[test]
    fn two_triangles_get_one_null_chord() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let c = outer_circuit(&g).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c.slots[2].len(), 2);
        assert_eq!(c.null_chords.len(), 1);
        let (a, b) = c.null_chords[0];
        assert_eq!((c.walk[a], c.walk[b]), (2, 2));
        check_circuit(&g, &c);
    }

    #[test]
    fn path_walks_bridges_twice() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = outer_circuit(&g).unwrap();
        assert_eq!(c.len(), 6);
        check_circuit(&g, &c);
    }

    #[test]
    fn rejects_k4_and_k23() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(outer_circuit(&k4), Err(GraphError::NotOuterplanar(_))));
        let k23 = Graph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(matches!(outer_circuit(&k23), Err(GraphError::NotOuterplanar(_))));
    }

    #[test]
    fn single_vertex_and_edge() {
        let c = outer_circuit(&Graph::new(1, &[]).unwrap()).unwrap();
        assert_eq!(c.walk, vec![0]);
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let c = outer_circuit(&g).unwrap();
        assert_eq!(c.walk, vec![0, 1]);
        check_circuit(&g, &c);
    }

    #[test]
    fn nested_blocks_keep_chords_planar() {
        // triangle strip 0-1-2-3 (chords 0-2), a pendant triangle on 1 and a
        // pendant path on 3
        let g = Graph::new(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 4), (4, 5), (5, 1), (3, 6), (6, 7)],
        )
        .unwrap();
        let c = outer_circuit(&g).unwrap();
        check_circuit(&g, &c);
        assert_eq!(c.chords.len(), 1);
    }

    #[test]
    fn interval_helpers() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let c = outer_circuit(&g).unwrap();
        assert_eq!(c.open_interval(1, 4, 1), vec![2, 3]);
        assert_eq!(c.open_interval(1, 4, -1), vec![0, 5]);
        assert!(c.strictly_between(4, 1, 1, 5));
        assert!(c.strictly_between(4, 1, 1, 0));
        assert!(!c.strictly_between(4, 1, 1, 1));
        assert!(c.strictly_between(1, 4, -1, 5));
        assert!(!c.strictly_between(1, 4, -1, 2));
    }
}
