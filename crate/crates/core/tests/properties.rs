use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ribbon_core::{
    br_polynomial, from_arrow_presentation, homfly_state_terms, is_isomorphic, parse_ap, parse_rg, parse_rg_many,
    partial_dual, random_graph, serialize_ap, serialize_rg, states, to_arrow_presentation, Edge, EdgeSubset, GenParams,
    RibbonGraph, Vertex,
};

fn graph_strategy(max_v: usize, max_e: usize) -> impl Strategy<Value = RibbonGraph> {
    (1..=max_v, 0..=max_e, any::<u64>(), any::<bool>()).prop_map(|(v, e, seed, orientable)| {
        random_graph(&GenParams { orientable, ..GenParams::new(v, e, seed) }).unwrap()
    })
}

/// The same ribbon graph with fresh dart and vertex ids, shuffled records,
/// rotated rotation lists and some vertices flipped.
fn scramble(g: &RibbonGraph, seed: u64) -> RibbonGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = g.clone();
    for v in 0..g.num_vertices() {
        if rng.gen_bool(0.5) {
            g = g.flip_vertex(v);
        }
    }
    let darts: Vec<u32> = g.edges().iter().flat_map(|e| e.darts).collect();
    let mut fresh: Vec<u32> = (1..=darts.len() as u32).map(|d| 3 * d + 7).collect();
    fresh.shuffle(&mut rng);
    let relabel = |d: u32| fresh[darts.iter().position(|&x| x == d).unwrap()];
    let mut vertices: Vec<Vertex> = g
        .vertices()
        .iter()
        .map(|v| {
            let mut rotation: Vec<u32> = v.rotation.iter().map(|&d| relabel(d)).collect();
            if !rotation.is_empty() {
                let k = rng.gen_range(0..rotation.len());
                rotation.rotate_left(k);
            }
            Vertex { id: 0, rotation }
        })
        .collect();
    vertices.shuffle(&mut rng);
    for (i, v) in vertices.iter_mut().enumerate() {
        v.id = 100 + i as u32;
    }
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| {
            let mut darts = e.darts.map(relabel);
            if rng.gen_bool(0.5) {
                darts.swap(0, 1);
            }
            Edge { darts, ..*e }
        })
        .collect();
    edges.shuffle(&mut rng);
    RibbonGraph::new(vertices, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn euler_genus_of_every_state(g in graph_strategy(5, 7)) {
        for t in states(&g) {
            let genus = (t.components + t.nullity) as i64 - t.boundary as i64;
            prop_assert!(genus >= 0);
            let state = g.spanning_subgraph(&EdgeSubset::from_mask(&g, t.mask)).unwrap();
            prop_assert_eq!(state.boundary_count(), t.boundary);
            if state.is_orientable() {
                prop_assert_eq!(genus % 2, 0);
            } else {
                // a non-orientable surface has positive Euler genus
                prop_assert!(genus > 0);
            }
        }
    }

    #[test]
    fn arrow_presentation_round_trip(g in graph_strategy(5, 7)) {
        let ap = to_arrow_presentation(&g);
        let text = serialize_ap(&ap);
        let parsed = parse_ap(&text).unwrap();
        prop_assert_eq!(&parsed, &ap);
        let back = from_arrow_presentation(&parsed).unwrap();
        prop_assert!(is_isomorphic(&back, &g));
    }

    #[test]
    fn rg_serialization_is_idempotent(g in graph_strategy(5, 8)) {
        let text = serialize_rg(&g);
        let parsed = parse_rg(&text).unwrap();
        prop_assert_eq!(serialize_rg(&parsed), text.clone());
        prop_assert!(is_isomorphic(&parsed, &g));
        let twice = parse_rg_many(&format!("{text}{text}")).unwrap();
        prop_assert_eq!(twice.len(), 2);
    }

    #[test]
    fn isomorphism_ignores_presentation(g in graph_strategy(5, 7), seed in any::<u64>()) {
        let h = scramble(&g, seed);
        prop_assert!(is_isomorphic(&g, &h));
        prop_assert!(is_isomorphic(&h, &g));
        prop_assert_eq!(br_polynomial(&g), br_polynomial(&h));
        prop_assert_eq!(g.stats(), h.stats());
    }

    #[test]
    fn changing_a_sign_breaks_isomorphism(g in graph_strategy(4, 6)) {
        prop_assume!(g.num_edges() > 0);
        let h = g.with_signs_flipped(&EdgeSubset::from_ids([g.edges()[0].id]));
        // the number of positive edges changes
        prop_assert!(!is_isomorphic(&g, &h));
    }

    #[test]
    fn partial_duality_is_an_involution(g in graph_strategy(5, 7), mask in any::<u64>()) {
        let a = EdgeSubset::from_mask(&g, mask);
        let d = partial_dual(&g, &a).unwrap();
        prop_assert_eq!(d.num_edges(), g.num_edges());
        prop_assert_eq!(d.num_components(), g.num_components());
        prop_assert_eq!(d.is_orientable(), g.is_orientable());
        let ids: Vec<u32> = d.edges().iter().map(|e| e.id).collect();
        let want: Vec<u32> = g.edges().iter().map(|e| e.id).collect();
        prop_assert_eq!(ids, want);
        prop_assert!(is_isomorphic(&partial_dual(&d, &a).unwrap(), &g));
    }

    #[test]
    fn homfly_state_terms_cover_every_state(g in graph_strategy(4, 6)) {
        prop_assume!(g.is_orientable());
        let terms = homfly_state_terms(&g).unwrap();
        prop_assert_eq!(terms.len(), 1usize << g.num_edges());
        for t in terms {
            prop_assert!(t.delta_power >= 0);
        }
    }
}

#[test]
fn punctured_klein_bottle_has_even_genus() {
    let g = parse_rg("rg 1\nv 0 : 1 2 3 4\ne 0 : 1 2 + 1\ne 1 : 3 4 + 1\n").unwrap();
    let s = g.stats();
    assert!(!s.orientable);
    assert_eq!((s.boundary, s.euler_genus), (1, 2));
}

#[test]
fn parse_errors_carry_lines() {
    let err = parse_rg("rg 1\nv 0 : 1 2\n# note\ne 0 : 1 2 * 0\n").unwrap_err();
    assert!(err.to_string().starts_with("line 4"), "{err}");
    assert!(parse_rg("rg 2\n").is_err());
    assert!(parse_rg("rg 1\nv 0 : 1 1\ne 0 : 1 1 + 0\n").is_err());
    assert!(parse_ap("ap 1\ncycle : 1+ 2+\nsign 1 +\nsign 2 +\n").is_err());
}
