//! The signed Bollobás–Riordan polynomial and its Potts-model form.
//!
//! Both are direct sums over all `2^e` states (spanning sub-graphs). States
//! are bitmasks in edge storage order; partial sums over any partition of
//! the mask range combine by addition, so the parallel driver produces the
//! same polynomial as the serial one.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use crate::dual::partial_dual;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ribbon::{BoundaryTracer, EdgeSubset, RibbonGraph, Sign};

pub const BR_VARS: [&str; 3] = ["x", "y", "z"];
pub const POTTS_VARS: [&str; 3] = ["a", "b", "c"];
/// Variables left after restricting to the surface `x·y·z² = 1`.
pub const SURFACE_VARS: [&str; 2] = ["y", "z"];
pub const TUTTE_VARS: [&str; 2] = ["x", "y"];

/// Data of one state `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateTerm {
    /// Bit `i` set iff the `i`-th stored edge is in `F`.
    pub mask: u64,
    pub edges: usize,
    pub components: usize,
    pub boundary: usize,
    pub rank: usize,
    pub nullity: usize,
    pub negative: usize,
    /// `2·s(F) = e₋(F) − e₋(G−F)`.
    pub twice_s: i64,
}

impl StateTerm {
    pub fn euler_genus(&self) -> usize {
        self.components + self.nullity - self.boundary
    }
}

pub(crate) struct StateEngine<'a> {
    graph: &'a RibbonGraph,
    tracer: BoundaryTracer,
    negative_mask: u64,
}

impl<'a> StateEngine<'a> {
    pub(crate) fn new(graph: &'a RibbonGraph) -> Self {
        assert!(graph.num_edges() < 64, "state enumeration supports at most 63 edges");
        let negative_mask =
            graph.edges().iter().enumerate().filter(|(_, e)| e.sign == Sign::Minus).fold(0u64, |m, (i, _)| m | 1 << i);
        StateEngine { graph, tracer: BoundaryTracer::new(graph), negative_mask }
    }

    pub(crate) fn state_count(&self) -> u64 {
        1u64 << self.graph.num_edges()
    }

    pub(crate) fn for_each<F: FnMut(&StateTerm)>(&self, masks: Range<u64>, mut f: F) {
        let mut seen = vec![false; self.tracer.points()];
        let v = self.graph.num_vertices();
        let neg_total = self.negative_mask.count_ones() as i64;
        for mask in masks {
            let uf = self.graph.component_forest(mask);
            let components = uf.sets();
            let edges = mask.count_ones() as usize;
            let rank = v - components;
            let negative = (mask & self.negative_mask).count_ones() as usize;
            f(&StateTerm {
                mask,
                edges,
                components,
                boundary: self.tracer.count(mask, &mut seen),
                rank,
                nullity: edges - rank,
                negative,
                twice_s: 2 * negative as i64 - neg_total,
            });
        }
    }
}

/// All states of `graph` in mask order.
pub fn states(graph: &RibbonGraph) -> Vec<StateTerm> {
    let engine = StateEngine::new(graph);
    let mut out = Vec::with_capacity(engine.state_count() as usize);
    engine.for_each(0..engine.state_count(), |t| out.push(*t));
    out
}

/// Split `0..total` into `parts` contiguous ranges, run `work` on each in
/// its own thread and return the per-range results in range order.
pub(crate) fn partitioned<T: Send>(total: u64, parts: usize, work: impl Fn(Range<u64>) -> T + Sync) -> Vec<T> {
    let parts = parts.max(1) as u64;
    let chunk = total.div_ceil(parts).max(1);
    let ranges: Vec<Range<u64>> = (0..parts).map(|i| (i * chunk).min(total)..((i + 1) * chunk).min(total)).collect();
    if ranges.len() == 1 {
        return vec![work(ranges[0].clone())];
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = ranges.into_iter().map(|r| s.spawn(|| work(r))).collect();
        handles.into_iter().map(|h| h.join().expect("state-sum worker panicked")).collect()
    })
}

fn merge_counts<K: std::hash::Hash + Eq>(parts: Vec<HashMap<K, u64>>) -> HashMap<K, u64> {
    let mut it = parts.into_iter();
    let mut total = it.next().unwrap_or_default();
    for part in it {
        for (k, c) in part {
            *total.entry(k).or_default() += c;
        }
    }
    total
}

fn br_counts(engine: &StateEngine<'_>, masks: Range<u64>) -> HashMap<[i64; 3], u64> {
    let rank_g = engine.graph.num_vertices() - engine.graph.num_components();
    let mut counts = HashMap::new();
    engine.for_each(masks, |t| {
        // doubled exponents of x^{r(G)-r(F)+s} y^{n(F)-s} z^{k-∂+n}
        let x = 2 * (rank_g as i64 - t.rank as i64) + t.twice_s;
        let y = 2 * t.nullity as i64 - t.twice_s;
        let z = 2 * (t.components as i64 + t.nullity as i64 - t.boundary as i64);
        *counts.entry([x, y, z]).or_default() += 1;
    });
    counts
}

/// `R_s(G; x, y, z)` by the state sum.
pub fn br_polynomial(graph: &RibbonGraph) -> LaurentPoly {
    br_polynomial_parallel(graph, 1)
}

/// Same as [`br_polynomial`] with the state range split over `workers`
/// threads.
pub fn br_polynomial_parallel(graph: &RibbonGraph, workers: usize) -> LaurentPoly {
    let engine = StateEngine::new(graph);
    let parts = partitioned(engine.state_count(), workers, |r| br_counts(&engine, r));
    LaurentPoly::from_counts(&BR_VARS, merge_counts(parts))
}

/// The Potts-model form in `(a, b, c)`:
/// `(b/(ac))^k(G) (1/b)^v(G) (b/√a)^e₋(G) Σ_F a^k(F) c^∂(F) Π_{e∈F} ω_e`
/// with `ω_e = b` on positive and `a/b` on negative edges.
pub fn br_potts(graph: &RibbonGraph) -> LaurentPoly {
    let engine = StateEngine::new(graph);
    let mut counts: HashMap<[i64; 3], u64> = HashMap::new();
    engine.for_each(0..engine.state_count(), |t| {
        let positive = (t.edges - t.negative) as i64;
        let neg = t.negative as i64;
        let a = t.components as i64 + neg;
        let b = positive - neg;
        let c = t.boundary as i64;
        *counts.entry([2 * a, 2 * b, 2 * c]).or_default() += 1;
    });
    let sum = LaurentPoly::from_counts(&POTTS_VARS, counts);
    let k = graph.num_components() as i64;
    let v = graph.num_vertices() as i64;
    let em = graph.count_sign(Sign::Minus) as i64;
    let prefactor = LaurentPoly::monomial(&POTTS_VARS, vec![2 * (-k) - em, 2 * (k - v + em), 2 * (-k)], 1);
    &prefactor * &sum
}

fn surface_substitution() -> BTreeMap<&'static str, LaurentPoly> {
    BTreeMap::from([
        ("x", LaurentPoly::monomial(&SURFACE_VARS, vec![-2, -4], 1)),
        ("y", LaurentPoly::monomial(&SURFACE_VARS, vec![2, 0], 1)),
        ("z", LaurentPoly::monomial(&SURFACE_VARS, vec![0, 2], 1)),
    ])
}

/// `R_s` restricted to `x·y·z² = 1`, i.e. with `x ← y⁻¹z⁻²`.
pub fn restrict_to_surface(br: &LaurentPoly) -> Result<LaurentPoly> {
    br.substitute(&SURFACE_VARS, &surface_substitution())
}

/// `(yz)^v(G) · R_s(G)` on `x·y·z² = 1`, one side of the duality identity.
pub fn duality_side(graph: &RibbonGraph) -> LaurentPoly {
    let v = graph.num_vertices() as i64;
    let restricted = restrict_to_surface(&br_polynomial(graph)).expect("state-sum exponents restrict to integers");
    &LaurentPoly::monomial(&SURFACE_VARS, vec![2 * v, 2 * v], 1) * &restricted
}

/// Checks `(yz)^v(G) R_s(G) = (yz)^v(G^A) R_s(G^A)` on `x·y·z² = 1`.
pub fn verify_duality(graph: &RibbonGraph, subset: &EdgeSubset) -> Result<bool> {
    let dual = partial_dual(graph, subset)?;
    Ok(duality_side(graph) == duality_side(&dual))
}

/// Tutte polynomial of the underlying abstract multigraph by deletion and
/// contraction, for connected plane graphs with positive edges.
pub fn tutte_oracle(graph: &RibbonGraph) -> Result<LaurentPoly> {
    let s = graph.stats();
    if s.components != 1 || !s.orientable || s.euler_genus != 0 || s.negative != 0 {
        return Err(Error::Input("Tutte oracle needs a connected plane graph with positive edges".into()));
    }
    let edges: Vec<(usize, usize)> = (0..graph.num_edges()).map(|i| graph.edge_ends(i)).collect();
    Ok(tutte(graph.num_vertices(), edges))
}

fn tutte(n: usize, mut edges: Vec<(usize, usize)>) -> LaurentPoly {
    let Some((u, v)) = edges.pop() else {
        return LaurentPoly::one(&TUTTE_VARS);
    };
    let x = LaurentPoly::monomial(&TUTTE_VARS, vec![2, 0], 1);
    let y = LaurentPoly::monomial(&TUTTE_VARS, vec![0, 2], 1);
    if u == v {
        return &y * &tutte(n, edges);
    }
    let contracted: Vec<(usize, usize)> =
        edges.iter().map(|&(a, b)| (if a == v { u } else { a }, if b == v { u } else { b })).collect();
    if is_bridge(n, &edges, u, v) {
        &x * &tutte(n, contracted)
    } else {
        &tutte(n, edges) + &tutte(n, contracted)
    }
}

fn is_bridge(n: usize, rest: &[(usize, usize)], u: usize, v: usize) -> bool {
    let mut uf = crate::ribbon::UnionFind::new(n);
    for &(a, b) in rest {
        uf.union(a, b);
    }
    uf.find(u) != uf.find(v)
}

/// `R_s(x−1, y−1, 1)`, which equals the Tutte polynomial for positive plane
/// graphs.
pub fn tutte_specialization(br: &LaurentPoly) -> Result<LaurentPoly> {
    let sub = BTreeMap::from([
        ("x", LaurentPoly::parse("x - 1", &TUTTE_VARS)?),
        ("y", LaurentPoly::parse("y - 1", &TUTTE_VARS)?),
        ("z", LaurentPoly::one(&TUTTE_VARS)),
    ]);
    br.substitute(&TUTTE_VARS, &sub)
}

/// Image of `R_s` under `x ← ac/b, y ← bc, z ← 1/c`.
pub fn potts_substitution(br: &LaurentPoly) -> Result<LaurentPoly> {
    let sub = BTreeMap::from([
        ("x", LaurentPoly::monomial(&POTTS_VARS, vec![2, -2, 2], 1)),
        ("y", LaurentPoly::monomial(&POTTS_VARS, vec![0, 2, 2], 1)),
        ("z", LaurentPoly::monomial(&POTTS_VARS, vec![0, 0, -2], 1)),
    ]);
    br.substitute(&POTTS_VARS, &sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::{Edge, Vertex};
    use Sign::{Minus, Plus};

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

    fn br(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &BR_VARS).unwrap()
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(br_polynomial(&graph(&[&[]], &[])), br("1"));
        assert_eq!(br_polynomial(&graph(&[&[1, 2]], &[(1, 2, Plus, false)])), br("1 + y"));
        assert_eq!(br_polynomial(&graph(&[&[1], &[2]], &[(1, 2, Plus, false)])), br("x + 1"));
        assert_eq!(
            br_polynomial(&graph(&[&[1, 2]], &[(1, 2, Minus, false)])),
            br("x^(1/2)*y^(1/2) + x^(-1/2)*y^(1/2)")
        );
        // Möbius: empty state is a disk, full state has Euler genus 1
        assert_eq!(br_polynomial(&graph(&[&[1, 2]], &[(1, 2, Plus, true)])), br("1 + y*z"));
    }

    #[test]
    fn potts_small() {
        let disk = graph(&[&[]], &[]);
        assert_eq!(br_potts(&disk), LaurentPoly::one(&POTTS_VARS));
        for g in [
            graph(&[&[1, 2]], &[(1, 2, Plus, false)]),
            graph(&[&[1, 2]], &[(1, 2, Minus, false)]),
            graph(&[&[1, 2]], &[(1, 2, Minus, true)]),
        ] {
            assert_eq!(potts_substitution(&br_polynomial(&g)).unwrap(), br_potts(&g));
        }
    }

    #[test]
    fn tutte_small() {
        let t = |s: &str| LaurentPoly::parse(s, &TUTTE_VARS).unwrap();
        assert_eq!(tutte_oracle(&graph(&[&[1], &[2]], &[(1, 2, Plus, false)])).unwrap(), t("x"));
        assert_eq!(tutte_oracle(&graph(&[&[1, 2]], &[(1, 2, Plus, false)])).unwrap(), t("y"));
        let two_cycle = graph(&[&[1, 3], &[2, 4]], &[(1, 2, Plus, false), (3, 4, Plus, false)]);
        assert_eq!(tutte_oracle(&two_cycle).unwrap(), t("x + y"));
        assert_eq!(tutte_specialization(&br_polynomial(&two_cycle)).unwrap(), t("x + y"));
        let torus = graph(&[&[1, 3, 2, 4]], &[(1, 2, Plus, false), (3, 4, Plus, false)]);
        assert!(tutte_oracle(&torus).is_err());
    }

    #[test]
    fn parallel_matches_serial() {
        let g = graph(
            &[&[1, 3, 5, 8], &[2, 7, 4], &[6, 9, 10]],
            &[(1, 2, Plus, false), (3, 4, Minus, true), (5, 6, Plus, false), (7, 8, Minus, false), (9, 10, Plus, true)],
        );
        let serial = br_polynomial(&g);
        for w in [2, 3, 7, 64] {
            assert_eq!(br_polynomial_parallel(&g, w), serial);
        }
    }

    #[test]
    fn duality_on_a_loop() {
        let g = graph(&[&[1, 2]], &[(1, 2, Plus, false)]);
        assert!(verify_duality(&g, &EdgeSubset::empty()).unwrap());
        assert!(verify_duality(&g, &EdgeSubset::from_ids([0])).unwrap());
        assert!(verify_duality(&g, &EdgeSubset::from_ids([5])).is_err());
    }
}
