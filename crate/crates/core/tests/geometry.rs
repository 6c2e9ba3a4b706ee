use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pursuit_core::geometry::{convex_polygon, random_star_polygon, visibility_graph, GeometryError, Polygon};
use pursuit_core::oracle::visibility_edges_by_sampling;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn star_polygons_match_the_sampling_oracle(n in 3usize..=10, seed in any::<u64>()) {
        let p = random_star_polygon(&mut ChaCha8Rng::seed_from_u64(seed), n, 6);
        let g = visibility_graph(&p).unwrap();
        prop_assert_eq!(g.edges().to_vec(), visibility_edges_by_sampling(&p, 32));
    }

    #[test]
    fn scaling_keeps_visibility(n in 3usize..=9, seed in any::<u64>(), num in 1i64..20, den in 1i64..20) {
        let p = random_star_polygon(&mut ChaCha8Rng::seed_from_u64(seed), n, 6);
        let f = BigRational::new(num.into(), den.into());
        let (a, b) = (visibility_graph(&p).unwrap(), visibility_graph(&p.scaled(&f)).unwrap());
        prop_assert_eq!(a.edges(), b.edges());
    }
}

#[test]
fn convex_polygons_see_everything() {
    for n in 3..=10 {
        assert_eq!(visibility_graph(&convex_polygon(n)).unwrap().edge_count(), n * (n - 1) / 2);
    }
}

#[test]
fn l_shape_blocks_three_pairs() {
    let l = Polygon::from_ints(&[(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)]);
    let g = visibility_graph(&l).unwrap();
    assert_eq!(g.edge_count(), 12);
    for (a, b) in [(1, 4), (2, 4), (2, 5)] {
        assert!(!g.has_edge(a, b));
    }
}

#[test]
fn self_intersecting_input_is_rejected() {
    let bowtie = Polygon::from_ints(&[(0, 0), (2, 2), (2, 0), (0, 2)]);
    assert!(matches!(visibility_graph(&bowtie), Err(GeometryError::InvalidPolygon(_))));
    let p = Polygon::from_json(r#"{"vertices": [["0", "0"], ["1/2", "0"], [0, "3/4"]]}"#).unwrap();
    assert_eq!(visibility_graph(&p).unwrap().edge_count(), 3);
}
