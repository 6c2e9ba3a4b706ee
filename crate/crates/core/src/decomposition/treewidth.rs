use super::DecompositionError;
use crate::graph::{mask_vertices, Graph};

pub const DEFAULT_TREEWIDTH_LIMIT: usize = 14;

/// Exact treewidth by dynamic programming over elimination prefixes:
/// `TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|)`, where `Q(S, v)` is
/// the set of vertices outside `S + v` reachable from `v` through `S`.
pub fn treewidth_exact(g: &Graph) -> Result<usize, DecompositionError> {
    let n = g.n();
    if n > DEFAULT_TREEWIDTH_LIMIT {
        return Err(DecompositionError::TooLarge(format!("{n} vertices, limit is {DEFAULT_TREEWIDTH_LIMIT}")));
    }
    if n == 0 {
        return Ok(0);
    }
    let masks = g.neighbor_masks()?;
    let full = (1u64 << n) - 1;
    let q = |s: u64, v: usize| -> u32 {
        // flood from v through s
        let mut seen = 1u64 << v;
        let mut frontier = 1u64 << v;
        let mut reach_out = 0u64;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = masks[u] & !seen;
            reach_out |= nb & !s;
            let inner = nb & s;
            seen |= inner;
            frontier |= inner;
        }
        (reach_out & !(1u64 << v)).count_ones()
    };
    let mut tw = vec![u32::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u32::MAX;
        for v in mask_vertices(s) {
            let rest = s & !(1 << v);
            let val = tw[rest as usize].max(q(rest, v));
            best = best.min(val);
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize] as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let tree = Graph::new(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(treewidth_exact(&tree), Ok(1));
        let mut k5 = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                k5.push((u, v));
            }
        }
        assert_eq!(treewidth_exact(&Graph::new(5, &k5).unwrap()), Ok(4));
        let c6: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        assert_eq!(treewidth_exact(&Graph::new(6, &c6).unwrap()), Ok(2));
        assert_eq!(treewidth_exact(&Graph::new(1, &[]).unwrap()), Ok(0));
    }
}
