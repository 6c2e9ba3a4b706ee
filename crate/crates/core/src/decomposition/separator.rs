use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{mask_of, treedepth, treewidth_exact, DecompositionError};
use crate::graph::{components_of_mask, mask_vertices, Graph, Vertex};

const SEPARATOR_SET_LIMIT: usize = 16;
const PROFILE_LIMIT: usize = 10;

fn satisfies(masks: &[u64], rest: u64, alpha: Ratio<u64>, size_a: u64) -> bool {
    let cap_num = *alpha.numer() * size_a;
    let den = *alpha.denom();
    components_of_mask(masks, rest).iter().all(|c| u64::from(c.count_ones()) * den <= cap_num)
}

fn min_separator_mask(masks: &[u64], a: u64, alpha: Ratio<u64>) -> u64 {
    let members: Vec<usize> = mask_vertices(a).collect();
    let m = members.len();
    let size_a = m as u64;
    // subsets of A in order of size
    for size in 0..=m {
        let mut found = None;
        for_each_subset_of_size(m, size, |idx| {
            if found.is_some() {
                return;
            }
            let s = idx.iter().fold(0u64, |acc, &i| acc | 1 << members[i]);
            if satisfies(masks, a & !s, alpha, size_a) {
                found = Some(s);
            }
        });
        if let Some(s) = found {
            return s;
        }
    }
    a
}

fn for_each_subset_of_size(m: usize, size: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..size).collect();
    if size > m {
        return;
    }
    loop {
        f(&idx);
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < m - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return;
            }
        }
    }
}

/// Smallest `S ⊆ A` such that every component of `G[A - S]` has at most
/// `alpha * |A|` vertices (compared exactly). Lowest vertex ids win ties.
pub fn min_alpha_separator(g: &Graph, a: &[Vertex], alpha: Ratio<u64>) -> Result<Vec<Vertex>, DecompositionError> {
    if a.len() > SEPARATOR_SET_LIMIT {
        return Err(DecompositionError::SetTooLarge { size: a.len(), limit: SEPARATOR_SET_LIMIT });
    }
    let masks = g.neighbor_masks()?;
    let s = min_separator_mask(&masks, mask_of(a), alpha);
    Ok(mask_vertices(s).collect())
}

/// `s_G(i)` for `i = 0..=n`: the largest minimum half-separator over
/// induced subgraphs on at most `i` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorProfile {
    pub alpha: (u64, u64),
    pub sizes: Vec<usize>,
}

impl SeparatorProfile {
    pub fn at(&self, i: usize) -> usize {
        self.sizes[i.min(self.sizes.len() - 1)]
    }
}

pub fn separation_profile(g: &Graph) -> Result<SeparatorProfile, DecompositionError> {
    let n = g.n();
    if n > PROFILE_LIMIT {
        return Err(DecompositionError::TooLarge(format!("{n} vertices, limit is {PROFILE_LIMIT}")));
    }
    let masks = g.neighbor_masks()?;
    let half = Ratio::new(1, 2);
    let mut by_size = vec![0usize; n + 1];
    for a in 1u64..(1 << n) {
        let k = a.count_ones() as usize;
        let s = min_separator_mask(&masks, a, half).count_ones() as usize;
        by_size[k] = by_size[k].max(s);
    }
    for i in 1..=n {
        by_size[i] = by_size[i].max(by_size[i - 1]);
    }
    Ok(SeparatorProfile { alpha: (1, 2), sizes: by_size })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma2Report {
    pub n: usize,
    pub separation_number: usize,
    pub treedepth: usize,
    /// `s_G(floor(n / 2^i))` for `i = 0..=floor(log2 n)`.
    pub halving_terms: Vec<usize>,
    pub halving_sum: usize,
    pub treewidth: usize,
    /// `(tw + 1) * log2 n`.
    pub treewidth_bound: f64,
    pub separation_le_treedepth: bool,
    pub treedepth_le_sum: bool,
    pub sum_le_treewidth_bound: bool,
    pub holds: bool,
}

/// Evaluates `s_G(n) <= td(G) <= sum_i s_G(n / 2^i) <= (tw + 1) log2 n`.
pub fn check_lemma2(g: &Graph) -> Result<Lemma2Report, DecompositionError> {
    let n = g.n();
    let profile = separation_profile(g)?;
    let (td, _) = treedepth(g)?;
    let tw = treewidth_exact(g)?;
    let log_floor = (usize::BITS - 1 - n.leading_zeros()) as usize;
    let halving_terms: Vec<usize> = (0..=log_floor).map(|i| profile.at(n >> i)).collect();
    let halving_sum: usize = halving_terms.iter().sum();
    let treewidth_bound = (tw + 1) as f64 * (n as f64).log2();
    let a = profile.at(n) <= td;
    let b = td <= halving_sum;
    let c = halving_sum as f64 <= treewidth_bound + 1e-9;
    Ok(Lemma2Report {
        n,
        separation_number: profile.at(n),
        treedepth: td,
        halving_terms,
        halving_sum,
        treewidth: tw,
        treewidth_bound,
        separation_le_treedepth: a,
        treedepth_le_sum: b,
        sum_le_treewidth_bound: c,
        holds: a && b && c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn separator_examples() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(min_alpha_separator(&p3, &[0, 1, 2], Ratio::new(1, 2)).unwrap(), vec![1]);
        assert_eq!(min_alpha_separator(&complete(4), &[0, 1, 2, 3], Ratio::new(1, 2)).unwrap().len(), 2);
        // a lone vertex is a component of size 1 > 1/2, so it must be removed
        assert_eq!(min_alpha_separator(&p3, &[2], Ratio::new(1, 2)).unwrap(), vec![2]);
        assert_eq!(min_alpha_separator(&p3, &[], Ratio::new(1, 2)).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn subsets_of_size() {
        let mut seen = Vec::new();
        for_each_subset_of_size(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        let mut none = 0;
        for_each_subset_of_size(3, 0, |_| none += 1);
        assert_eq!(none, 1);
    }

    #[test]
    fn lemma2_examples() {
        let p8 = Graph::new(8, &(1..8).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap();
        let r = check_lemma2(&p8).unwrap();
        assert_eq!((r.separation_number, r.treedepth), (1, 4));
        assert!(r.holds);
        let r = check_lemma2(&complete(5)).unwrap();
        assert_eq!((r.separation_number, r.treedepth), (3, 5));
        assert!(r.holds, "{r:?}");
        let c6 = Graph::new(6, &(0..6).map(|i| (i, (i + 1) % 6)).collect::<Vec<_>>()).unwrap();
        assert!(check_lemma2(&c6).unwrap().holds);
        // log2(1) = 0 makes the last bound 0 for a single vertex
        let k1 = Graph::new(1, &[]).unwrap();
        let r = check_lemma2(&k1).unwrap();
        assert!(!r.sum_le_treewidth_bound && !r.holds);
    }

    #[test]
    fn profile_is_monotone() {
        let g = complete(6);
        let p = separation_profile(&g).unwrap();
        assert!(p.sizes.windows(2).all(|w| w[0] <= w[1]));
    }
}
