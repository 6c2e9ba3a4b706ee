//! Slow, independent reference implementations. They share no move
//! generation or search code with the production algorithms and exist to
//! cross-check them.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::engine::GameVariant;
use crate::geometry::{on_segment, orientation, Point, Polygon};
use crate::graph::{Graph, Vertex};

pub const INF: u32 = u32::MAX;

/// Floyd–Warshall hop distances; `INF` for unreachable pairs.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][m] != INF && d[m][j] != INF && d[i][m] + d[m][j] < d[i][j] {
                    d[i][j] = d[i][m] + d[m][j];
                }
            }
        }
    }
    d
}

/// Every connected simple graph on `n` labelled vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(pairs.len() < 32, "too many vertices to enumerate");
    (0u32..1 << pairs.len())
        .filter_map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::new(n, &edges).ok()?;
            g.is_connected().then_some(g)
        })
        .collect()
}

/// Explicit depth-bounded minimax over game states.
pub struct Minimax<'a> {
    g: &'a Graph,
    d: Vec<Vec<u32>>,
    variant: GameVariant,
    memo: HashMap<(Vec<Vertex>, Vertex, bool, u32), Option<u32>>,
}

impl<'a> Minimax<'a> {
    pub fn new(g: &'a Graph, variant: GameVariant) -> Self {
        Minimax { g, d: floyd_warshall(g), variant, memo: HashMap::new() }
    }

    fn pursuer_steps(&self, u: Vertex, e: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        for w in 0..self.g.n() {
            let adjacent = self.g.edges().contains(&(u.min(w), u.max(w)));
            let ok = match self.variant {
                GameVariant::Cops => w == u || adjacent,
                GameVariant::Zombies => adjacent && self.d[w][e] < self.d[u][e],
                GameVariant::LazyZombies => w == u || (adjacent && self.d[w][e] < self.d[u][e]),
            };
            if ok {
                out.push(w);
            }
        }
        out
    }

    /// Fewest plies to capture that the pursuers can force within `depth`
    /// plies, or `None`.
    pub fn value(&mut self, pursuers: &[Vertex], evader: Vertex, pursuer_turn: bool, depth: u32) -> Option<u32> {
        if pursuers.contains(&evader) {
            return Some(0);
        }
        if depth == 0 {
            return None;
        }
        let mut key_p = pursuers.to_vec();
        key_p.sort_unstable();
        let key = (key_p, evader, pursuer_turn, depth);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let result = if pursuer_turn {
            let mut joint: Vec<Vec<Vertex>> = vec![Vec::new()];
            for &p in pursuers {
                let steps = self.pursuer_steps(p, evader);
                joint = joint
                    .into_iter()
                    .flat_map(|prefix| {
                        steps.iter().map(move |&s| {
                            let mut next = prefix.clone();
                            next.push(s);
                            next
                        })
                    })
                    .collect();
            }
            joint
                .into_iter()
                .filter_map(|next| self.value(&next, evader, false, depth - 1))
                .min()
                .map(|v| v + 1)
        } else {
            let mut worst = Some(0);
            let moves: Vec<Vertex> =
                (0..self.g.n()).filter(|&w| w == evader || self.g.edges().contains(&(evader.min(w), evader.max(w)))).collect();
            for w in moves {
                match (worst, self.value(pursuers, w, true, depth - 1)) {
                    (Some(a), Some(b)) => worst = Some(a.max(b)),
                    _ => {
                        worst = None;
                        break;
                    }
                }
            }
            worst.map(|v| v + 1)
        };
        self.memo.insert(key, result);
        result
    }
}

/// All Hamiltonian cycles, each listed once: starting at vertex 0 with the
/// second vertex smaller than the last.
pub fn hamiltonian_cycles(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let mut path = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    fn go(g: &Graph, path: &mut Vec<Vertex>, used: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
        let n = g.n();
        let last = *path.last().expect("non-empty");
        if path.len() == n {
            if g.has_edge(last, 0) && path[1] < path[n - 1] {
                out.push(path.clone());
            }
            return;
        }
        for &w in g.neighbors(last) {
            if !used[w] {
                used[w] = true;
                path.push(w);
                go(g, path, used, out);
                path.pop();
                used[w] = false;
            }
        }
    }
    go(g, &mut path, &mut used, &mut out);
    out
}

/// Treewidth as the best elimination ordering, trying every permutation.
pub fn treewidth_by_orderings(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    let mut best = usize::MAX;
    permute(&mut order, 0, &mut |ord| {
        let mut adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
        let mut gone = vec![false; n];
        let mut width = 0;
        for &v in ord {
            let nb: Vec<_> = (0..n).filter(|&w| !gone[w] && w != v && adj[v][w]).collect();
            width = width.max(nb.len());
            for &a in &nb {
                for &b in &nb {
                    if a != b {
                        adj[a][b] = true;
                    }
                }
            }
            gone[v] = true;
        }
        best = best.min(width);
    });
    best
}

fn permute(items: &mut Vec<Vertex>, k: usize, f: &mut impl FnMut(&[Vertex])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Closed-polygon membership by winding number, boundary counting as inside.
pub fn winding_contains(p: &Polygon, q: &Point) -> bool {
    let n = p.len();
    let mut winding = 0i32;
    for i in 0..n {
        let a = &p.vertices[i];
        let b = &p.vertices[(i + 1) % n];
        if on_segment(q, a, b) {
            return true;
        }
        if a.y <= q.y {
            if b.y > q.y && orientation(a, b, q) == std::cmp::Ordering::Greater {
                winding += 1;
            }
        } else if b.y <= q.y && orientation(a, b, q) == std::cmp::Ordering::Less {
            winding -= 1;
        }
    }
    winding != 0
}

/// Parameters in [0, 1] where segment `ab` meets segment `cd`, including
/// both ends of a collinear overlap.
fn meeting_parameters(a: &Point, b: &Point, c: &Point, d: &Point) -> Vec<BigRational> {
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::from_integer(1.into());
    let rx = &b.x - &a.x;
    let ry = &b.y - &a.y;
    let sx = &d.x - &c.x;
    let sy = &d.y - &c.y;
    let denom = &rx * &sy - &ry * &sx;
    let qpx = &c.x - &a.x;
    let qpy = &c.y - &a.y;
    let param_of = |p: &Point| {
        if rx != zero {
            (&p.x - &a.x) / &rx
        } else {
            (&p.y - &a.y) / &ry
        }
    };
    if denom == zero {
        // parallel: only collinear overlap matters
        let mut out = Vec::new();
        for p in [c, d] {
            if on_segment(p, a, b) {
                out.push(param_of(p));
            }
        }
        for (p, t) in [(a, zero.clone()), (b, one.clone())] {
            if on_segment(p, c, d) {
                out.push(t);
            }
        }
        return out;
    }
    let t = (&qpx * &sy - &qpy * &sx) / &denom;
    let u = (&qpx * &ry - &qpy * &rx) / &denom;
    if t >= zero && t <= one && u >= zero && u <= one {
        vec![t]
    } else {
        Vec::new()
    }
}

/// Visibility by brute force: cut the segment at every parameter where it
/// meets any polygon edge, then test each piece's midpoint and a dense grid
/// of sample points with the winding-number rule.
pub fn visible_by_sampling(p: &Polygon, i: usize, j: usize, samples: u32) -> bool {
    let a = &p.vertices[i];
    let b = &p.vertices[j];
    let n = p.len();
    let mut ts: Vec<BigRational> = vec![BigRational::from_integer(0.into()), BigRational::from_integer(1.into())];
    for e in 0..n {
        ts.extend(meeting_parameters(a, b, &p.vertices[e], &p.vertices[(e + 1) % n]));
    }
    for s in 1..samples {
        ts.push(BigRational::new(s.into(), samples.into()));
    }
    ts.sort();
    ts.dedup();
    let at = |t: &BigRational| Point::new(&a.x + (&b.x - &a.x) * t, &a.y + (&b.y - &a.y) * t);
    let two = BigRational::from_integer(2.into());
    ts.iter().all(|t| winding_contains(p, &at(t)))
        && ts.windows(2).all(|w| winding_contains(p, &at(&((&w[0] + &w[1]) / &two))))
}

pub fn visibility_edges_by_sampling(p: &Polygon, samples: u32) -> Vec<(Vertex, Vertex)> {
    let n = p.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| visible_by_sampling(p, i, j, samples))
        .collect()
}

/// Smallest number of cliques covering `set`, trying every assignment of
/// vertices to cover classes.
pub fn clique_cover_by_assignment(g: &Graph, set: &[Vertex]) -> usize {
    fn go(g: &Graph, set: &[Vertex], i: usize, classes: &mut Vec<Vec<Vertex>>, best: &mut usize) {
        if classes.len() >= *best {
            return;
        }
        if i == set.len() {
            *best = classes.len();
            return;
        }
        let v = set[i];
        for c in 0..classes.len() {
            if classes[c].iter().all(|&w| g.has_edge(v, w)) {
                classes[c].push(v);
                go(g, set, i + 1, classes, best);
                classes[c].pop();
            }
        }
        classes.push(vec![v]);
        go(g, set, i + 1, classes, best);
        classes.pop();
    }
    let mut best = set.len();
    go(g, set, 0, &mut Vec::new(), &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        // labelled connected graphs: 1, 1, 4, 38, 728
        let counts: Vec<_> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn minimax_on_small_cases() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let mut m = Minimax::new(&c4, GameVariant::Zombies);
        assert_eq!(m.value(&[0], 2, true, 40), None);
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let mut m = Minimax::new(&k3, GameVariant::Cops);
        assert_eq!(m.value(&[0], 2, true, 10), Some(1));
    }

    #[test]
    fn hamiltonian_cycle_counts() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(hamiltonian_cycles(&k4).len(), 3);
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(hamiltonian_cycles(&c5), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn small_treewidths() {
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(treewidth_by_orderings(&c5), 2);
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(treewidth_by_orderings(&p3), 1);
    }

    #[test]
    fn clique_cover_of_c5() {
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(clique_cover_by_assignment(&c5, &[0, 1, 2, 3, 4]), 3);
    }
}
