//! Partial duals and the geometric dual.
//!
//! The partial dual with respect to `A` is read off the boundary of the
//! spanning sub-surface `(V, A)` sitting inside the full surface. That
//! boundary meets every edge ribbon in two arcs: the two attachment arcs
//! when the edge is outside `A`, the two long sides of the ribbon when it
//! is inside. Marking those arcs with arrows that follow a fixed
//! orientation of each ribbon's boundary gives an arrow presentation whose
//! ribbon graph is the partial dual. Edges in `A` change sign.

use std::collections::BTreeMap;

use crate::arrow::{from_arrow_presentation, Arrow, ArrowPresentation, Direction};
use crate::error::Result;
use crate::ribbon::{BoundaryTracer, Edge, EdgeSubset, RibbonGraph, Vertex};

/// `G^A`; edge ids of the result are those of `graph`.
pub fn partial_dual(graph: &RibbonGraph, subset: &EdgeSubset) -> Result<RibbonGraph> {
    let ap = partial_dual_presentation(graph, subset)?;
    from_arrow_presentation(&ap)
}

/// The signed arrow presentation built by tracing the boundary of `(V, A)`.
pub fn partial_dual_presentation(graph: &RibbonGraph, subset: &EdgeSubset) -> Result<ArrowPresentation> {
    subset.check(graph)?;
    let in_a: Vec<bool> = graph.edges().iter().map(|e| subset.contains(e.id)).collect();
    let orient = RibbonOrientation::new(graph);
    let tracer = BoundaryTracer::new(graph);
    // `link` only looks at bit `p / 4`, so a Vec<bool> mask keeps this
    // independent of the 64-edge bitmask limit.
    let link = |p: usize| if in_a[p / 4] { tracer.side_of(p) } else { p ^ 1 };

    let mut seen = vec![false; tracer.points()];
    let mut cycles = Vec::new();
    for p0 in 0..tracer.points() {
        if seen[p0] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut p = p0;
        loop {
            seen[p] = true;
            let q = tracer.corner(p);
            seen[q] = true;
            let r = link(q);
            seen[r] = true;
            let edge = &graph.edges()[q / 4];
            let direction = if orient.runs_forward(q, r) { Direction::Forward } else { Direction::Backward };
            cycle.push(Arrow { label: edge.id, direction });
            if r == p0 {
                break;
            }
            p = r;
        }
        cycles.push(cycle);
    }
    // a vertex without darts is its own boundary circle
    cycles.extend(graph.vertices().iter().filter(|v| v.rotation.is_empty()).map(|_| Vec::new()));

    let signs: BTreeMap<_, _> =
        graph.edges().iter().zip(&in_a).map(|(e, &a)| (e.id, if a { e.sign.flipped() } else { e.sign })).collect();
    ArrowPresentation::new(cycles, signs)
}

/// The geometric dual `G*`: faces become vertices, signs unchanged.
///
/// Built by classical face tracing, independently of [`partial_dual`]. A
/// traversal `(d, ε)` crosses the edge of dart `d` along the long side
/// picked by the local orientation `ε`; faces are the orbits of the
/// signed-dart walk, one of each reversed pair kept. Each edge's two long
/// sides are its two darts in the dual, listed around a dual vertex in
/// walk order. Measured from the lower dart of the edge, an untwisted
/// ribbon's oriented boundary runs its two long sides in opposite
/// directions, so the dual edge is twisted iff its sides are walked in the
/// same direction.
pub fn geometric_dual(graph: &RibbonGraph) -> RibbonGraph {
    let n = graph.num_darts();
    let step = |state: usize| {
        let (d, back) = (state / 2, state % 2 == 1);
        let back = back ^ graph.twist_of(d);
        let d = d ^ 1;
        let d = if back { graph.prev(d) } else { graph.next(d) };
        2 * d + back as usize
    };
    let reverse = |state: usize| {
        let (d, back) = (state / 2, state % 2 == 1);
        2 * (d ^ 1) + !(back ^ graph.twist_of(d)) as usize
    };
    // (dual dart id, walked from the lower dart) for one traversal
    let side = |state: usize| {
        let (d, back) = (state / 2, state % 2 == 1);
        let low = if graph.dart_id(d) < graph.dart_id(d ^ 1) { d } else { d ^ 1 };
        let (side, forward) = if d == low { (back, true) } else { (!(back ^ graph.twist_of(d)), false) };
        ((d / 2) as u32 * 2 + 1 + side as u32, forward)
    };

    let mut seen = vec![false; 2 * n];
    let mut forward = vec![false; 2 * n + 1];
    let mut vertices = Vec::new();
    for start in 0..2 * n {
        if seen[start] {
            continue;
        }
        let mut rotation = Vec::new();
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            let (dart, fwd) = side(cur);
            forward[dart as usize] = fwd;
            rotation.push(dart);
            cur = step(cur);
        }
        let mut cur = reverse(start);
        while !seen[cur] {
            seen[cur] = true;
            cur = step(cur);
        }
        vertices.push(Vertex { id: vertices.len() as u32, rotation });
    }
    for _ in 0..graph.isolated_vertices() {
        vertices.push(Vertex { id: vertices.len() as u32, rotation: Vec::new() });
    }
    let edges = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let (a, b) = (2 * i as u32 + 1, 2 * i as u32 + 2);
            Edge { id: e.id, darts: [a, b], sign: e.sign, twist: forward[a as usize] == forward[b as usize] }
        })
        .collect();
    RibbonGraph::new(vertices, edges).expect("face tracing yields a ribbon graph")
}

/// Orientation of each ribbon's boundary circle. Points are `2d` (start of
/// dart `d`'s attachment arc) and `2d + 1` (its end). For an edge with
/// lower dart `a` and partner `b` the circle runs
/// `start(a) → end(a) → start(b) → end(b)` when untwisted and
/// `start(a) → end(a) → end(b) → start(b)` when twisted.
struct RibbonOrientation {
    succ: Vec<usize>,
}

impl RibbonOrientation {
    fn new(graph: &RibbonGraph) -> Self {
        let mut succ = vec![0; 2 * graph.num_darts()];
        for (i, e) in graph.edges().iter().enumerate() {
            let (mut a, mut b) = (2 * i, 2 * i + 1);
            if graph.dart_id(b) < graph.dart_id(a) {
                std::mem::swap(&mut a, &mut b);
            }
            let circle =
                if e.twist { [2 * a, 2 * a + 1, 2 * b + 1, 2 * b] } else { [2 * a, 2 * a + 1, 2 * b, 2 * b + 1] };
            for j in 0..4 {
                succ[circle[j]] = circle[(j + 1) % 4];
            }
        }
        RibbonOrientation { succ }
    }

    fn runs_forward(&self, from: usize, to: usize) -> bool {
        debug_assert!(self.succ[from] == to || self.succ[to] == from);
        self.succ[from] == to
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::ribbon::Sign;

    fn graph(verts: &[&[u32]], edges: &[(u32, u32, Sign, bool)]) -> RibbonGraph {
        RibbonGraph::new(
            verts.iter().enumerate().map(|(i, r)| Vertex { id: i as u32, rotation: r.to_vec() }).collect(),
            edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b, sign, twist))| Edge { id: i as u32, darts: [a, b], sign, twist })
                .collect(),
        )
        .unwrap()
    }

    use Sign::{Minus, Plus};

    #[test]
    fn empty_subset_is_identity() {
        let g = graph(&[&[1, 3, 5], &[2, 6, 4]], &[(1, 2, Plus, false), (3, 4, Minus, true), (5, 6, Plus, false)]);
        let d = partial_dual(&g, &EdgeSubset::empty()).unwrap();
        assert!(is_isomorphic(&g, &d));
        assert_eq!(d.count_sign(Minus), 1);
    }

    #[test]
    fn two_cycle_dual_along_one_edge() {
        let g = graph(&[&[1, 3], &[2, 4]], &[(1, 2, Plus, false), (3, 4, Plus, false)]);
        assert_eq!(g.stats().euler_genus, 0);
        let d = partial_dual(&g, &EdgeSubset::from_ids([0])).unwrap();
        let s = d.stats();
        assert_eq!((s.vertices, s.edges, s.orientable, s.euler_genus), (1, 2, true, 2));
    }

    #[test]
    fn loop_dual_is_negative_bridge() {
        let g = graph(&[&[1, 2]], &[(1, 2, Plus, false)]);
        let d = partial_dual(&g, &EdgeSubset::from_ids([0])).unwrap();
        let bridge = graph(&[&[1], &[2]], &[(1, 2, Minus, false)]);
        assert!(is_isomorphic(&d, &bridge));
        let star = geometric_dual(&g);
        assert!(is_isomorphic(&star, &bridge.with_signs_flipped(&EdgeSubset::from_ids([0]))));
    }

    #[test]
    fn mobius_is_self_dual() {
        let g = graph(&[&[1, 2]], &[(1, 2, Plus, true)]);
        let d = geometric_dual(&g);
        assert!(is_isomorphic(&d, &g));
    }

    #[test]
    fn plane_cycle_dual_has_two_vertices() {
        let g = graph(&[&[1, 6], &[2, 3], &[4, 5]], &[(1, 2, Plus, false), (3, 4, Plus, false), (5, 6, Minus, false)]);
        let d = geometric_dual(&g);
        assert_eq!(d.num_vertices(), 2);
        assert_eq!(d.count_sign(Minus), 1);
        assert!(is_isomorphic(&geometric_dual(&d), &g));
    }

    #[test]
    fn unknown_edge() {
        let g = graph(&[&[1, 2]], &[(1, 2, Plus, false)]);
        assert!(partial_dual(&g, &EdgeSubset::from_ids([3])).is_err());
    }

    #[test]
    fn isolated_vertices_survive() {
        let g = graph(&[&[1, 2], &[]], &[(1, 2, Plus, false)]);
        let d = partial_dual(&g, &EdgeSubset::from_ids([0])).unwrap();
        assert_eq!(d.num_vertices(), 3);
        assert_eq!(d.num_components(), 2);
    }

    #[test]
    fn face_tracing_matches_full_partial_dual() {
        use crate::generate::{random_graph, GenParams};
        for seed in 0..300 {
            let g = random_graph(&GenParams::new(1 + seed as usize % 4, seed as usize % 6, seed)).unwrap();
            let all = EdgeSubset::all(&g);
            let star = geometric_dual(&g);
            assert_eq!(star.num_vertices(), g.boundary_count(), "seed {seed}");
            let pd = partial_dual(&g, &all).unwrap().with_signs_flipped(&all);
            assert!(is_isomorphic(&star, &pd), "seed {seed}");
        }
    }
}
