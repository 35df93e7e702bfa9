//! Signed ribbon graphs stored as twisted rotation systems.
//!
//! Every edge owns two darts (its two attachment arcs). Each vertex lists
//! its darts in cyclic order with respect to a local orientation of the
//! vertex disk, and each edge carries a sign and a twist bit. Reversing the
//! local orientation of one vertex (a *flip*) reverses its rotation and
//! toggles the twist of every non-loop edge end at it; flips and relabelling
//! generate ribbon-graph equivalence.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: u32,
    /// Darts in cyclic order; empty for an isolated vertex.
    pub rotation: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: u32,
    pub darts: [u32; 2],
    pub sign: Sign,
    pub twist: bool,
}

/// Dense indexing of darts: edge `i` owns dense darts `2i` and `2i + 1`.
#[derive(Debug, Clone)]
struct Topology {
    dart_ids: Vec<u32>,
    dense: HashMap<u32, usize>,
    vertex_of: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    edge_index: HashMap<u32, usize>,
}

#[derive(Debug, Clone)]
pub struct RibbonGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    topo: Topology,
}

impl PartialEq for RibbonGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for RibbonGraph {}

/// Derived invariants of a ribbon graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub boundary: usize,
    pub rank: usize,
    pub nullity: usize,
    pub euler_genus: usize,
    pub orientable: bool,
    pub positive: usize,
    pub negative: usize,
}

/// A set of edge ids, used both as a state selector and as the edge set of
/// a partial dual.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeSubset(BTreeSet<u32>);

impl EdgeSubset {
    pub fn empty() -> Self {
        EdgeSubset(BTreeSet::new())
    }

    pub fn all(graph: &RibbonGraph) -> Self {
        EdgeSubset(graph.edges.iter().map(|e| e.id).collect())
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        EdgeSubset(ids.into_iter().collect())
    }

    /// Bit `i` of `mask` selects the `i`-th edge of `graph` in storage order.
    pub fn from_mask(graph: &RibbonGraph, mask: u64) -> Self {
        EdgeSubset(graph.edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.id).collect())
    }

    pub fn contains(&self, id: u32) -> bool {
        self.0.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn check(&self, graph: &RibbonGraph) -> Result<()> {
        match self.0.iter().find(|id| !graph.topo.edge_index.contains_key(id)) {
            Some(&id) => Err(Error::UnknownEdge(id)),
            None => Ok(()),
        }
    }

    /// Storage-order bitmask of the subset; fails on unknown ids or when the
    /// graph has more than 64 edges.
    pub fn mask(&self, graph: &RibbonGraph) -> Result<u64> {
        if graph.edges.len() > 64 {
            return Err(Error::Input("bitmask states need at most 64 edges".into()));
        }
        let mut mask = 0u64;
        for id in &self.0 {
            let i = graph.edge_index(*id).ok_or(Error::UnknownEdge(*id))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }
}

impl FromIterator<u32> for EdgeSubset {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        EdgeSubset::from_ids(iter)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), sets: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.sets -= 1;
        }
    }

    pub(crate) fn sets(&self) -> usize {
        self.sets
    }
}

impl RibbonGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut dense = HashMap::with_capacity(2 * edges.len());
        let mut dart_ids = Vec::with_capacity(2 * edges.len());
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.id, i).is_some() {
                return Err(Error::Structure(format!("edge id {} used twice", e.id)));
            }
            if e.darts[0] == e.darts[1] {
                return Err(Error::Structure(format!("edge {} has both ends on dart {}", e.id, e.darts[0])));
            }
            for &d in &e.darts {
                if dense.insert(d, dart_ids.len()).is_some() {
                    return Err(Error::Structure(format!("dart {d} belongs to two edges")));
                }
                dart_ids.push(d);
            }
        }

        let n = dart_ids.len();
        let mut vertex_of = vec![usize::MAX; n];
        let mut next = vec![0; n];
        let mut prev = vec![0; n];
        let mut vertex_ids = BTreeSet::new();
        for (vi, v) in vertices.iter().enumerate() {
            if !vertex_ids.insert(v.id) {
                return Err(Error::Structure(format!("vertex id {} used twice", v.id)));
            }
            let mut local = Vec::with_capacity(v.rotation.len());
            for d in &v.rotation {
                let &di = dense.get(d).ok_or_else(|| Error::Structure(format!("dart {d} is not on any edge")))?;
                if vertex_of[di] != usize::MAX {
                    return Err(Error::Structure(format!("dart {d} appears in two rotations")));
                }
                vertex_of[di] = vi;
                local.push(di);
            }
            for (j, &di) in local.iter().enumerate() {
                next[di] = local[(j + 1) % local.len()];
                prev[di] = local[(j + local.len() - 1) % local.len()];
            }
        }
        if let Some(di) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(Error::Structure(format!("dart {} is not in any vertex rotation", dart_ids[di])));
        }

        Ok(RibbonGraph { vertices, edges, topo: Topology { dart_ids, dense, vertex_of, next, prev, edge_index } })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, id: u32) -> Option<usize> {
        self.topo.edge_index.get(&id).copied()
    }

    pub fn edge(&self, id: u32) -> Option<&Edge> {
        self.edge_index(id).map(|i| &self.edges[i])
    }

    pub fn count_sign(&self, sign: Sign) -> usize {
        self.edges.iter().filter(|e| e.sign == sign).count()
    }

    // Dense dart accessors shared with the algorithms in sibling modules.

    pub(crate) fn num_darts(&self) -> usize {
        self.topo.dart_ids.len()
    }

    pub(crate) fn dart_id(&self, d: usize) -> u32 {
        self.topo.dart_ids[d]
    }

    pub(crate) fn dense_dart(&self, id: u32) -> Option<usize> {
        self.topo.dense.get(&id).copied()
    }

    pub(crate) fn vertex_of(&self, d: usize) -> usize {
        self.topo.vertex_of[d]
    }

    pub(crate) fn next(&self, d: usize) -> usize {
        self.topo.next[d]
    }

    pub(crate) fn prev(&self, d: usize) -> usize {
        self.topo.prev[d]
    }

    pub(crate) fn twist_of(&self, d: usize) -> bool {
        self.edges[d / 2].twist
    }

    pub(crate) fn sign_of(&self, d: usize) -> Sign {
        self.edges[d / 2].sign
    }

    pub(crate) fn isolated_vertices(&self) -> usize {
        self.vertices.iter().filter(|v| v.rotation.is_empty()).count()
    }

    /// Endpoint vertex indices of edge `i` (equal for a loop).
    pub(crate) fn edge_ends(&self, i: usize) -> (usize, usize) {
        (self.topo.vertex_of[2 * i], self.topo.vertex_of[2 * i + 1])
    }

    pub(crate) fn component_forest(&self, mask: u64) -> UnionFind {
        let mut uf = UnionFind::new(self.vertices.len());
        for i in 0..self.edges.len() {
            if mask >> i & 1 == 1 {
                let (a, b) = self.edge_ends(i);
                uf.union(a, b);
            }
        }
        uf
    }

    pub fn num_components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for i in 0..self.edges.len() {
            let (a, b) = self.edge_ends(i);
            uf.union(a, b);
        }
        uf.sets()
    }

    /// Vertex indices grouped by connected component, in order of first
    /// appearance.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for i in 0..self.edges.len() {
            let (a, b) = self.edge_ends(i);
            uf.union(a, b);
        }
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.vertices.len() {
            let r = uf.find(v);
            let s = *slot.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[s].push(v);
        }
        out
    }

    /// Number of boundary circles of the surface.
    ///
    /// Walks orbits of `σ̂ ∘ α̂` on signed darts: `σ̂(d,+) = (next d,+)`,
    /// `σ̂(d,-) = (prev d,-)`, and `α̂` moves to the partner dart, switching
    /// the side iff the edge is twisted. Each boundary circle is walked once
    /// in each direction, so the orbit count is halved. Vertices without
    /// darts are disks with one boundary circle each.
    pub fn boundary_count(&self) -> usize {
        let n = self.num_darts();
        let mut seen = vec![false; 2 * n];
        let mut orbits = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                let (d, back) = (cur / 2, cur % 2 == 1);
                let partner = d ^ 1;
                let back = back ^ self.twist_of(d);
                let d = if back { self.prev(partner) } else { self.next(partner) };
                cur = 2 * d + back as usize;
            }
        }
        debug_assert!(orbits % 2 == 0);
        orbits / 2 + self.isolated_vertices()
    }

    /// Orientability by propagating vertex flips along a spanning forest.
    pub fn is_orientable(&self) -> bool {
        self.orientation_flips().is_some()
    }

    /// A flip assignment that untwists every edge, if one exists.
    pub(crate) fn orientation_flips(&self) -> Option<Vec<bool>> {
        let nv = self.vertices.len();
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); nv];
        for (i, e) in self.edges.iter().enumerate() {
            let (a, b) = self.edge_ends(i);
            if a == b {
                if e.twist {
                    return None;
                }
                continue;
            }
            adj[a].push((b, e.twist));
            adj[b].push((a, e.twist));
        }
        let mut flip: Vec<Option<bool>> = vec![None; nv];
        let mut stack = Vec::new();
        for root in 0..nv {
            if flip[root].is_some() {
                continue;
            }
            flip[root] = Some(false);
            stack.push(root);
            while let Some(u) = stack.pop() {
                let fu = flip[u].unwrap();
                for &(w, twist) in &adj[u] {
                    let want = fu ^ twist;
                    match flip[w] {
                        None => {
                            flip[w] = Some(want);
                            stack.push(w);
                        }
                        Some(fw) if fw != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(flip.into_iter().map(Option::unwrap).collect())
    }

    pub fn stats(&self) -> GraphStats {
        let v = self.num_vertices();
        let e = self.num_edges();
        let k = self.num_components();
        let boundary = self.boundary_count();
        let rank = v - k;
        let nullity = e - rank;
        let genus = k + nullity - boundary;
        GraphStats {
            vertices: v,
            edges: e,
            components: k,
            boundary,
            rank,
            nullity,
            euler_genus: genus,
            orientable: self.is_orientable(),
            positive: self.count_sign(Sign::Plus),
            negative: self.count_sign(Sign::Minus),
        }
    }

    /// The state keeping every vertex and exactly the edges in `keep`.
    pub fn spanning_subgraph(&self, keep: &EdgeSubset) -> Result<RibbonGraph> {
        keep.check(self)?;
        let edges: Vec<Edge> = self.edges.iter().filter(|e| keep.contains(e.id)).copied().collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                id: v.id,
                rotation: v
                    .rotation
                    .iter()
                    .copied()
                    .filter(|&d| {
                        let di = self.topo.dense[&d];
                        keep.contains(self.edges[di / 2].id)
                    })
                    .collect(),
            })
            .collect();
        RibbonGraph::new(vertices, edges)
    }

    /// Reverse the local orientation at vertex index `v`.
    pub fn flip_vertex(&self, v: usize) -> RibbonGraph {
        let mut vertices = self.vertices.clone();
        vertices[v].rotation.reverse();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let (a, b) = self.edge_ends(i);
                let mut e = *e;
                if (a == v) != (b == v) {
                    e.twist = !e.twist;
                }
                e
            })
            .collect();
        RibbonGraph::new(vertices, edges).expect("flipping a vertex preserves well-formedness")
    }

    /// Copy with the sign of every edge in `subset` reversed.
    pub fn with_signs_flipped(&self, subset: &EdgeSubset) -> RibbonGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            if subset.contains(e.id) {
                e.sign = e.sign.flipped();
            }
        }
        g
    }

    /// An equivalent graph whose edges are all untwisted, if orientable.
    pub fn untwisted(&self) -> Option<RibbonGraph> {
        let flips = self.orientation_flips()?;
        let mut g = self.clone();
        for (v, f) in flips.into_iter().enumerate() {
            if f {
                g = g.flip_vertex(v);
            }
        }
        debug_assert!(g.edges.iter().all(|e| !e.twist));
        Some(g)
    }

    /// Canonical presentation of the same labelled graph: edge ends sorted,
    /// edges sorted by id, rotations started at their smallest dart, and
    /// vertices renumbered from 0 ordered by smallest dart, isolated
    /// vertices last in their original id order.
    pub fn canonical(&self) -> RibbonGraph {
        let mut edges = self.edges.clone();
        for e in &mut edges {
            e.darts.sort_unstable();
        }
        edges.sort_by_key(|e| e.id);
        let mut rotations: Vec<(Option<u32>, u32, Vec<u32>)> = self
            .vertices
            .iter()
            .map(|v| {
                let mut rot = v.rotation.clone();
                if let Some(pos) = rot.iter().enumerate().min_by_key(|(_, d)| **d).map(|(i, _)| i) {
                    rot.rotate_left(pos);
                }
                (rot.first().copied(), v.id, rot)
            })
            .collect();
        rotations.sort_by_key(|(first, id, _)| (first.is_none(), *first, *id));
        let vertices =
            rotations.into_iter().enumerate().map(|(i, (_, _, rotation))| Vertex { id: i as u32, rotation }).collect();
        RibbonGraph::new(vertices, edges).expect("canonical form of a valid graph")
    }
}

/// Boundary tracer for the spanning sub-surfaces of a fixed graph.
///
/// Every dart contributes two points, the ends of its attachment arc
/// (`start`, `end` in the vertex orientation). The boundary of the state
/// `F` is a 2-regular graph on those points: each `end` is joined to the
/// `start` of the next dart by a vertex corner, and each point is joined
/// along its edge either by the attachment arc (edge absent) or by a side
/// of the ribbon (edge present). Untwisted sides join `start(d1)-end(d2)`
/// and `end(d1)-start(d2)`; twisted sides join `start-start` and `end-end`.
pub(crate) struct BoundaryTracer {
    corner: Vec<usize>,
    side: Vec<usize>,
    isolated: usize,
}

impl BoundaryTracer {
    pub(crate) fn new(graph: &RibbonGraph) -> Self {
        let n = graph.num_darts();
        let mut corner = vec![0; 2 * n];
        let mut side = vec![0; 2 * n];
        for d in 0..n {
            let nd = graph.next(d);
            corner[2 * d + 1] = 2 * nd;
            corner[2 * nd] = 2 * d + 1;
            let p = d ^ 1;
            if graph.twist_of(d) {
                side[2 * d] = 2 * p;
                side[2 * d + 1] = 2 * p + 1;
            } else {
                side[2 * d] = 2 * p + 1;
                side[2 * d + 1] = 2 * p;
            }
        }
        BoundaryTracer { corner, side, isolated: graph.isolated_vertices() }
    }

    /// Boundary components of the state whose edges are the set bits of
    /// `mask`. `seen` is scratch space of length `4e`.
    pub(crate) fn count(&self, mask: u64, seen: &mut [bool]) -> usize {
        seen.iter_mut().for_each(|s| *s = false);
        let mut cycles = self.isolated;
        for p0 in 0..self.corner.len() {
            if seen[p0] {
                continue;
            }
            cycles += 1;
            let mut p = p0;
            loop {
                seen[p] = true;
                let q = self.corner[p];
                seen[q] = true;
                let r = self.link(q, mask);
                if r == p0 {
                    break;
                }
                p = r;
            }
        }
        cycles
    }

    #[inline]
    pub(crate) fn link(&self, p: usize, mask: u64) -> usize {
        if mask >> (p / 4) & 1 == 1 {
            self.side[p]
        } else {
            p ^ 1
        }
    }

    pub(crate) fn side_of(&self, p: usize) -> usize {
        self.side[p]
    }

    pub(crate) fn corner(&self, p: usize) -> usize {
        self.corner[p]
    }

    pub(crate) fn points(&self) -> usize {
        self.corner.len()
    }
}
