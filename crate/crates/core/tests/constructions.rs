use pursuit_core::constructions::{ceil_log2, component_h, gk_clique, gk_star, gk_tree, tree_a_star, CenterKind};
use pursuit_core::diameter;
use pursuit_core::graph::all_pairs_distances;

#[test]
fn family_sizes() {
    for k in 2..=5 {
        assert_eq!(gk_star(k, 10).unwrap().n, 23 * k + 1);
        assert_eq!(gk_clique(k, 6).unwrap().n, 15 * k);
        let t = gk_tree(k).unwrap();
        assert_eq!(t.kind, CenterKind::Tree);
        assert_eq!(t.a_star, 8 * ceil_log2(k) + 10);
        assert!(t.n <= 24 * k + 16 * k * ceil_log2(k) - 1 + k, "k={k}: {}", t.n);
    }
    assert_eq!(tree_a_star(4), 26);
    assert_eq!(gk_tree(4).unwrap().components[0].vertex_count(), 55);
}

#[test]
fn gadget_cycle_detour_is_longer() {
    let h = component_h(10).unwrap();
    let g = h.graph.as_ref().unwrap();
    let (a, b) = h.shared_edge();
    let kept: Vec<_> = g.edges().iter().copied().filter(|&e| e != (a.min(b), a.max(b))).collect();
    let cut = pursuit_core::Graph::new(g.n(), &kept).unwrap();
    // the path alone gives a* + 1; without the shared edge only the detour
    // around the cycle is left, which is a* + 1 longer
    assert_eq!(all_pairs_distances(g).get(h.s, h.t), 11);
    assert_eq!(all_pairs_distances(&cut).get(h.s, h.t), 22);
}

#[test]
fn star_center_reaches_every_gadget_within_nine() {
    let inst = gk_star(3, 10).unwrap();
    let d = all_pairs_distances(inst.graph());
    let c = inst.center.unwrap();
    assert_eq!((0..inst.n).map(|v| d.get(c, v)).max(), Some(9));
    assert!(diameter(inst.graph()).unwrap() <= 18);
}

#[test]
fn bad_parameters() {
    assert!(gk_star(1, 10).is_err());
    assert!(gk_star(2, 12).is_err());
    assert!(gk_clique(2, 4).is_err());
    assert!(gk_tree(1).is_err());
}
