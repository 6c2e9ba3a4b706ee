use super::DecompositionError;
use crate::graph::{Graph, Vertex};

pub const DEFAULT_COVER_LIMIT: usize = 12;

/// Minimum clique cover of `G[set]`, each clique sorted, cliques ordered by
/// their smallest vertex.
pub fn clique_cover(g: &Graph, set: &[Vertex], limit: usize) -> Result<Vec<Vec<Vertex>>, DecompositionError> {
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    let m = set.len();
    if m > limit || m > 20 {
        return Err(DecompositionError::SetTooLarge { size: m, limit: limit.min(20) });
    }
    let full = (1usize << m) - 1;
    // local adjacency masks
    let adj: Vec<usize> = set
        .iter()
        .map(|&u| set.iter().enumerate().filter(|&(_, &w)| g.has_edge(u, w)).fold(0, |acc, (j, _)| acc | 1 << j))
        .collect();
    let mut is_clique = vec![false; full + 1];
    is_clique[0] = true;
    for mask in 1..=full {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        is_clique[mask] = is_clique[rest] && (adj[low] & rest) == rest;
    }
    let mut best = vec![u8::MAX; full + 1];
    let mut choice = vec![0usize; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = 1 << mask.trailing_zeros();
        let rest = mask & !low;
        // cliques containing the lowest vertex of `mask`
        let mut sub = rest;
        loop {
            let clique = sub | low;
            if is_clique[clique] {
                let v = best[mask & !clique].saturating_add(1);
                if v < best[mask] {
                    best[mask] = v;
                    choice[mask] = clique;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut cover = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let c = choice[mask];
        cover.push((0..m).filter(|&j| c >> j & 1 == 1).map(|j| set[j]).collect());
        mask &= !c;
    }
    Ok(cover)
}

pub fn clique_cover_number(g: &Graph, set: &[Vertex]) -> Result<usize, DecompositionError> {
    Ok(clique_cover(g, set, DEFAULT_COVER_LIMIT)?.len())
}
