//! Seeded random ribbon graphs and named fixture families.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha
//! 0.3, rand 0.8 sampling), consumed in the order documented on each
//! generator, so a seed reproduces the same graph bit for bit.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ribbon::{Edge, RibbonGraph, Sign, Vertex};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub vertices: usize,
    pub edges: usize,
    pub negative_prob: f64,
    pub twist_prob: f64,
    pub orientable: bool,
    pub seed: u64,
}

impl GenParams {
    pub fn new(vertices: usize, edges: usize, seed: u64) -> Self {
        GenParams { vertices, edges, negative_prob: 0.5, twist_prob: 0.5, orientable: false, seed }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |p: f64| (0.0..=1.0).contains(&p);
        if !ok(self.negative_prob) || !ok(self.twist_prob) {
            return Err(Error::Input("probabilities must lie in [0, 1]".into()));
        }
        if self.vertices == 0 && self.edges > 0 {
            return Err(Error::Input("edges need at least one vertex".into()));
        }
        Ok(())
    }
}

/// Random signed ribbon graph.
///
/// 1. Shuffle darts `1..=2e`; consecutive pairs become edges `0..e`.
/// 2. Place each dart `1..=2e` at a uniform vertex.
/// 3. Shuffle every vertex's dart list (uniform rotation).
/// 4. Per edge: negative with `negative_prob`, then twisted with
///    `twist_prob`.
/// 5. If `orientable`: flip-normalize (walk a breadth-first spanning
///    forest, flipping each newly reached vertex whose tree edge is
///    twisted), then clear every remaining twist.
pub fn random_graph(p: &GenParams) -> Result<RibbonGraph> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut darts: Vec<u32> = (1..=2 * p.edges as u32).collect();
    darts.shuffle(&mut rng);
    let pairs: Vec<[u32; 2]> = darts.chunks(2).map(|c| [c[0].min(c[1]), c[0].max(c[1])]).collect();

    let mut rotations: Vec<Vec<u32>> = vec![Vec::new(); p.vertices];
    for d in 1..=2 * p.edges as u32 {
        rotations[rng.gen_range(0..p.vertices)].push(d);
    }
    for r in &mut rotations {
        r.shuffle(&mut rng);
    }
    let edges: Vec<Edge> = pairs
        .iter()
        .enumerate()
        .map(|(i, &darts)| {
            let sign = if rng.gen_bool(p.negative_prob) { Sign::Minus } else { Sign::Plus };
            let twist = rng.gen_bool(p.twist_prob);
            Edge { id: i as u32, darts, sign, twist }
        })
        .collect();
    let vertices = rotations.into_iter().enumerate().map(|(i, rotation)| Vertex { id: i as u32, rotation }).collect();
    let mut g = RibbonGraph::new(vertices, edges)?;
    if p.orientable {
        g = flip_normalize(g);
        let edges = g.edges().iter().map(|e| Edge { twist: false, ..*e }).collect();
        g = RibbonGraph::new(g.vertices().to_vec(), edges)?;
    }
    Ok(g)
}

/// Flips vertices so that the edges of a breadth-first spanning forest
/// are untwisted.
fn flip_normalize(mut g: RibbonGraph) -> RibbonGraph {
    let n = g.num_vertices();
    let mut adjacent: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for i in 0..g.num_edges() {
        let (a, b) = g.edge_ends(i);
        if a != b {
            adjacent[a].push((i, b));
            adjacent[b].push((i, a));
        }
    }
    let mut reached = vec![false; n];
    for root in 0..n {
        if reached[root] {
            continue;
        }
        reached[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(i, w) in &adjacent[u] {
                if !reached[w] {
                    reached[w] = true;
                    if g.edges()[i].twist {
                        g = g.flip_vertex(w);
                    }
                    queue.push_back(w);
                }
            }
        }
    }
    g
}

/// Random connected plane graph with positive untwisted edges.
///
/// A random tree is grown first (vertex `i` hangs off a uniform earlier
/// vertex, its dart inserted at a uniform rotation position), then each
/// further edge joins two uniformly chosen corners of one uniformly chosen
/// face, which keeps the embedding planar. Loops and multi-edges occur.
pub fn random_plane_graph(vertices: usize, edges: usize, seed: u64) -> Result<RibbonGraph> {
    if vertices == 0 || edges + 1 < vertices {
        return Err(Error::Input(format!(
            "a connected graph on {vertices} vertices needs at least {} edges",
            vertices.saturating_sub(1)
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot: Vec<Vec<u32>> = vec![Vec::new(); vertices];
    let mut pairs: Vec<[u32; 2]> = Vec::new();
    let mut fresh = 1u32;
    for i in 1..vertices {
        let parent = rng.gen_range(0..i);
        let pos = rng.gen_range(0..=rot[parent].len());
        rot[parent].insert(pos, fresh);
        rot[i].push(fresh + 1);
        pairs.push([fresh, fresh + 1]);
        fresh += 2;
    }
    while pairs.len() < edges {
        if pairs.is_empty() {
            rot[0] = vec![fresh, fresh + 1];
        } else {
            let partner = |d: u32| if d % 2 == 1 { d + 1 } else { d - 1 };
            let locate = |rot: &[Vec<u32>], d: u32| {
                rot.iter().enumerate().find_map(|(v, r)| r.iter().position(|&x| x == d).map(|i| (v, i))).unwrap()
            };
            // face through a random dart; its corners are "just after partner(d)"
            let start = rng.gen_range(1..fresh);
            let mut corners = Vec::new();
            let mut d = start;
            loop {
                let p = partner(d);
                corners.push(p);
                let (v, i) = locate(&rot, p);
                d = rot[v][(i + 1) % rot[v].len()];
                if d == start {
                    break;
                }
            }
            let a = *corners.choose(&mut rng).unwrap();
            let b = *corners.choose(&mut rng).unwrap();
            let (va, ia) = locate(&rot, a);
            rot[va].insert(ia + 1, fresh);
            let (vb, ib) = locate(&rot, b);
            // same corner: keep the new darts adjacent
            let at = if a == b { ib + 2 } else { ib + 1 };
            rot[vb].insert(at, fresh + 1);
        }
        pairs.push([fresh, fresh + 1]);
        fresh += 2;
    }
    let vertices = rot.into_iter().enumerate().map(|(i, rotation)| Vertex { id: i as u32, rotation }).collect();
    let edges = pairs
        .into_iter()
        .enumerate()
        .map(|(i, darts)| Edge { id: i as u32, darts, sign: Sign::Plus, twist: false })
        .collect();
    RibbonGraph::new(vertices, edges)
}

/// Named fixture families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `k` isolated vertices.
    Vertices(usize),
    /// One vertex with one loop.
    Loop { twist: bool, sign: Sign },
    /// Path with `n` positive edges on `n + 1` vertices.
    Path(usize),
    /// Plane cycle with `n ≥ 1` positive edges on `n` vertices.
    Cycle(usize),
    /// Two vertices joined by three positive edges, embedded in the plane.
    Theta,
    /// The plane 2-cycle, same as `Cycle(2)`.
    TwoCycle,
    /// One vertex whose rotation is `word`; each letter names a loop, and
    /// `twists`/`signs` are given per letter in order of first appearance.
    Bouquet { word: String, twists: Vec<bool>, signs: Vec<Sign> },
}

impl Family {
    /// Parses `vertices(k)`, `loop(0|1,+|-)`, `path(n)`, `cycle(n)`,
    /// `theta`, `two_cycle` and `bouquet(word;twists;signs)`, e.g.
    /// `bouquet(abab;01;+-)`.
    pub fn parse(text: &str) -> Result<Family> {
        let text = text.trim();
        let (name, args) = match text.find('(') {
            Some(i) if text.ends_with(')') => (&text[..i], Some(&text[i + 1..text.len() - 1])),
            Some(_) => return Err(Error::Input(format!("unbalanced family '{text}'"))),
            None => (text, None),
        };
        let int = |s: Option<&str>| -> Result<usize> {
            s.and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::Input(format!("family '{name}' needs an integer argument")))
        };
        let bit = |c: char| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Input(format!("bad twist '{c}'"))),
        };
        let sign = |c: char| match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            _ => Err(Error::Input(format!("bad sign '{c}'"))),
        };
        match (name, args) {
            ("vertices", a) => Ok(Family::Vertices(int(a)?)),
            ("path", a) => Ok(Family::Path(int(a)?)),
            ("cycle", a) => Ok(Family::Cycle(int(a)?)),
            ("theta", None) => Ok(Family::Theta),
            ("two_cycle", None) => Ok(Family::TwoCycle),
            ("loop", Some(a)) => {
                let parts: Vec<&str> = a.split(',').map(str::trim).collect();
                match parts.as_slice() {
                    [t, s] if t.len() == 1 && s.len() == 1 => Ok(Family::Loop {
                        twist: bit(t.chars().next().unwrap())?,
                        sign: sign(s.chars().next().unwrap())?,
                    }),
                    _ => Err(Error::Input("loop needs (twist, sign)".into())),
                }
            }
            ("bouquet", Some(a)) => {
                let parts: Vec<&str> = a.split(';').map(str::trim).collect();
                let [word, twists, signs] = parts.as_slice() else {
                    return Err(Error::Input("bouquet needs (word;twists;signs)".into()));
                };
                Ok(Family::Bouquet {
                    word: word.to_string(),
                    twists: twists.chars().map(bit).collect::<Result<_>>()?,
                    signs: signs.chars().map(sign).collect::<Result<_>>()?,
                })
            }
            _ => Err(Error::Input(format!("unknown family '{text}'"))),
        }
    }

    pub fn build(&self) -> Result<RibbonGraph> {
        let plus = |id: u32, a: u32, b: u32| Edge { id, darts: [a, b], sign: Sign::Plus, twist: false };
        let v = |id: u32, rotation: Vec<u32>| Vertex { id, rotation };
        match self {
            Family::Vertices(k) => RibbonGraph::new((0..*k as u32).map(|i| v(i, vec![])).collect(), vec![]),
            Family::Loop { twist, sign } => RibbonGraph::new(
                vec![v(0, vec![1, 2])],
                vec![Edge { id: 0, darts: [1, 2], sign: *sign, twist: *twist }],
            ),
            Family::Path(n) => {
                let n = *n as u32;
                let vertices = (0..=n)
                    .map(|i| {
                        let mut r = Vec::new();
                        if i > 0 {
                            r.push(2 * i);
                        }
                        if i < n {
                            r.push(2 * i + 1);
                        }
                        v(i, r)
                    })
                    .collect();
                RibbonGraph::new(vertices, (0..n).map(|i| plus(i, 2 * i + 1, 2 * i + 2)).collect())
            }
            Family::Cycle(n) => {
                let n = *n as u32;
                if n == 0 {
                    return Err(Error::Input("cycle needs at least one edge".into()));
                }
                // edge i runs from dart 2i+1 at vertex i to dart 2i+2 at vertex i+1
                let vertices = (0..n).map(|i| v(i, vec![2 * i + 1, if i == 0 { 2 * n } else { 2 * i }])).collect();
                RibbonGraph::new(vertices, (0..n).map(|i| plus(i, 2 * i + 1, 2 * i + 2)).collect())
            }
            Family::TwoCycle => Family::Cycle(2).build(),
            Family::Theta => RibbonGraph::new(
                vec![v(0, vec![1, 3, 5]), v(1, vec![2, 6, 4])],
                vec![plus(0, 1, 2), plus(1, 3, 4), plus(2, 5, 6)],
            ),
            Family::Bouquet { word, twists, signs } => {
                let mut letters: Vec<char> = Vec::new();
                let mut rotation = Vec::new();
                let mut seen = std::collections::HashMap::new();
                for c in word.chars() {
                    let slot = match letters.iter().position(|&l| l == c) {
                        Some(i) => i,
                        None => {
                            letters.push(c);
                            letters.len() - 1
                        }
                    };
                    let n = seen.entry(c).or_insert(0u32);
                    *n += 1;
                    if *n > 2 {
                        return Err(Error::Input(format!("letter '{c}' occurs more than twice")));
                    }
                    rotation.push(2 * slot as u32 + *n);
                }
                if seen.values().any(|&n| n != 2) {
                    return Err(Error::Input("every bouquet letter must occur twice".into()));
                }
                if twists.len() != letters.len() || signs.len() != letters.len() {
                    return Err(Error::Input(format!(
                        "bouquet has {} loops but {} twists and {} signs",
                        letters.len(),
                        twists.len(),
                        signs.len()
                    )));
                }
                let edges = (0..letters.len())
                    .map(|i| Edge {
                        id: i as u32,
                        darts: [2 * i as u32 + 1, 2 * i as u32 + 2],
                        sign: signs[i],
                        twist: twists[i],
                    })
                    .collect();
                RibbonGraph::new(vec![v(0, rotation)], edges)
            }
        }
    }
}

/// Build a named fixture from its textual description.
pub fn named(family: &str) -> Result<RibbonGraph> {
    Family::parse(family)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::serialize_rg;

    #[test]
    fn fixtures() {
        let s = named("loop(0,+)").unwrap().stats();
        assert_eq!((s.vertices, s.edges, s.boundary), (1, 1, 2));
        let s = named("two_cycle").unwrap().stats();
        assert_eq!((s.vertices, s.edges, s.boundary, s.euler_genus), (2, 2, 2, 0));
        assert_eq!(named("theta").unwrap().boundary_count(), 3);
        assert_eq!(named("vertices(4)").unwrap().boundary_count(), 4);
        let s = named("path(3)").unwrap().stats();
        assert_eq!((s.vertices, s.edges, s.boundary), (4, 3, 1));
        for n in 1..6 {
            let s = named(&format!("cycle({n})")).unwrap().stats();
            assert_eq!((s.vertices, s.edges, s.boundary, s.euler_genus), (n, n, 2, 0));
        }
        let torus = named("bouquet(abab;00;++)").unwrap().stats();
        assert_eq!((torus.boundary, torus.euler_genus, torus.orientable), (1, 2, true));
        let s = named("bouquet(aabb;10;+-)").unwrap().stats();
        assert!(!s.orientable);
        assert_eq!(s.negative, 1);
    }

    #[test]
    fn family_errors() {
        for bad in ["hexagon", "cycle(x)", "loop(2,+)", "bouquet(aba;0;+)", "bouquet(ab;0;+)", "cycle(0)", "path(3"] {
            assert!(named(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn random_is_reproducible() {
        let p = GenParams::new(4, 6, 99);
        let a = serialize_rg(&random_graph(&p).unwrap());
        let b = serialize_rg(&random_graph(&p).unwrap());
        assert_eq!(a, b);
        let g = random_graph(&p).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (4, 6));
        let c = serialize_rg(&random_graph(&GenParams { seed: 100, ..p }).unwrap());
        assert_ne!(a, c);
    }

    #[test]
    fn orientable_flag() {
        let mut already_orientable = 0;
        for seed in 0..200 {
            let p = GenParams { orientable: true, ..GenParams::new(3, 5, seed) };
            let g = random_graph(&p).unwrap();
            assert!(g.is_orientable());
            assert!(g.edges().iter().all(|e| !e.twist));
            // normalization leaves an orientable draw unchanged up to isomorphism
            let raw = random_graph(&GenParams { orientable: false, ..p }).unwrap();
            if raw.is_orientable() {
                already_orientable += 1;
                assert!(crate::iso::is_isomorphic(&raw, &g), "seed {seed}");
            }
        }
        assert!(already_orientable > 0);
    }

    #[test]
    fn bad_params() {
        assert!(random_graph(&GenParams { negative_prob: 1.5, ..GenParams::new(1, 1, 0) }).is_err());
        assert!(random_graph(&GenParams::new(0, 1, 0)).is_err());
        assert!(random_graph(&GenParams::new(0, 0, 0)).unwrap().num_vertices() == 0);
    }

    #[test]
    fn plane_graphs_are_plane() {
        for seed in 0..40 {
            let v = 1 + (seed as usize % 5);
            let e = v - 1 + (seed as usize % 4);
            let g = random_plane_graph(v, e, seed).unwrap();
            let s = g.stats();
            assert_eq!((s.components, s.euler_genus, s.orientable, s.edges), (1, 0, true, e), "seed {seed}");
        }
        assert!(random_plane_graph(4, 2, 0).is_err());
    }
}
