use super::{Graph, GraphError, Vertex};

/// A maximal 2-connected subgraph, or a bridge (two vertices, one edge).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
}

/// Hopcroft–Tarjan biconnected components, iterative.
pub fn blocks_and_cut_vertices(g: &Graph) -> Result<BlockDecomposition, GraphError> {
    g.require_connected()?;
    let n = g.n();
    let mut blocks = Vec::new();
    if n <= 1 {
        return Ok(BlockDecomposition { blocks, cut_vertices: Vec::new() });
    }

    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut is_cut = vec![false; n];
    let mut time = 0;

    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = time;
    low[0] = time;
    time += 1;
    let mut root_children = 0;

    while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
        if *next < g.degree(u) {
            let w = g.neighbors(u)[*next];
            *next += 1;
            if disc[w] == usize::MAX {
                edge_stack.push((u, w));
                disc[w] = time;
                low[w] = time;
                time += 1;
                if u == 0 {
                    root_children += 1;
                }
                stack.push((w, u, 0));
            } else if w != parent && disc[w] < disc[u] {
                edge_stack.push((u, w));
                low[u] = low[u].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[u]);
                if low[u] >= disc[p] {
                    if p != 0 {
                        is_cut[p] = true;
                    }
                    let mut edges = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        edges.push((e.0.min(e.1), e.0.max(e.1)));
                        if e == (p, u) {
                            break;
                        }
                    }
                    edges.sort_unstable();
                    let mut vertices: Vec<_> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                    vertices.sort_unstable();
                    vertices.dedup();
                    blocks.push(Block { vertices, edges });
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[0] = true;
    }
    blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices).then(a.edges.cmp(&b.edges)));
    let cut_vertices = (0..n).filter(|&v| is_cut[v]).collect();
    Ok(BlockDecomposition { blocks, cut_vertices })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_triangles_share_a_cut_vertex() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let d = blocks_and_cut_vertices(&g).unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.cut_vertices, vec![2]);
    }

    #[test]
    fn cycle_is_one_block() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let d = blocks_and_cut_vertices(&g).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert!(d.cut_vertices.is_empty());
    }

    #[test]
    fn path_is_all_bridges() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let d = blocks_and_cut_vertices(&g).unwrap();
        assert_eq!(d.blocks.len(), 3);
        assert!(d.blocks.iter().all(Block::is_bridge));
        assert_eq!(d.cut_vertices, vec![1, 2]);
    }

    #[test]
    fn every_edge_in_exactly_one_block() {
        // bowtie with a pendant path and a square
        let g = Graph::new(
            9,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 5)],
        )
        .unwrap();
        let d = blocks_and_cut_vertices(&g).unwrap();
        let mut all: Vec<_> = d.blocks.iter().flat_map(|b| b.edges.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, g.edges());
        assert_eq!(d.cut_vertices, vec![2, 4, 5]);
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(blocks_and_cut_vertices(&g), Err(GraphError::Disconnected));
    }
}
