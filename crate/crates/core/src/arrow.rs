//! Signed arrow presentations: circles carrying labelled, directed arrows,
//! each label on exactly two arrows.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::ribbon::{Edge, RibbonGraph, Sign, Vertex};

/// Direction of an arrow relative to the listed order of its cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Direction::Forward => '+',
            Direction::Backward => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: u32,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowPresentation {
    pub cycles: Vec<Vec<Arrow>>,
    pub signs: BTreeMap<u32, Sign>,
}

impl ArrowPresentation {
    pub fn new(cycles: Vec<Vec<Arrow>>, signs: BTreeMap<u32, Sign>) -> Result<Self> {
        let ap = ArrowPresentation { cycles, signs };
        ap.validate()?;
        Ok(ap)
    }

    pub fn validate(&self) -> Result<()> {
        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for a in self.cycles.iter().flatten() {
            *count.entry(a.label).or_default() += 1;
        }
        if let Some((label, n)) = count.iter().find(|(_, &n)| n != 2) {
            return Err(Error::Presentation(format!("label {label} occurs {n} times")));
        }
        if let Some(label) = count.keys().find(|l| !self.signs.contains_key(l)) {
            return Err(Error::Presentation(format!("label {label} has no sign")));
        }
        if let Some(label) = self.signs.keys().find(|l| !count.contains_key(l)) {
            return Err(Error::Presentation(format!("sign given for unused label {label}")));
        }
        Ok(())
    }

    /// Reverse all arrows carrying one of `labels`; yields an equivalent
    /// presentation.
    pub fn reverse_labels(&self, labels: &[u32]) -> ArrowPresentation {
        let mut ap = self.clone();
        for a in ap.cycles.iter_mut().flatten() {
            if labels.contains(&a.label) {
                a.direction = a.direction.reversed();
            }
        }
        ap
    }
}

/// Read off the arrow presentation of a ribbon graph: one cycle per vertex
/// boundary (in rotation order) and one arrow per dart. The edge boundary is
/// oriented so the lower dart's arc runs forward; the other arc then runs
/// forward iff the edge is untwisted.
pub fn to_arrow_presentation(graph: &RibbonGraph) -> ArrowPresentation {
    let cycles = graph
        .vertices()
        .iter()
        .map(|v| {
            v.rotation
                .iter()
                .map(|&d| {
                    let e = graph.edge(graph_edge_of(graph, d)).expect("dart has an edge");
                    let low = e.darts[0].min(e.darts[1]);
                    let direction = if d == low || !e.twist { Direction::Forward } else { Direction::Backward };
                    Arrow { label: e.id, direction }
                })
                .collect()
        })
        .collect();
    let signs = graph.edges().iter().map(|e| (e.id, e.sign)).collect();
    ArrowPresentation { cycles, signs }
}

fn graph_edge_of(graph: &RibbonGraph, dart: u32) -> u32 {
    let d = graph.dense_dart(dart).expect("dart of this graph");
    graph.edges()[d / 2].id
}

/// Glue a ribbon graph from an arrow presentation: each cycle bounds a
/// vertex (ids `0..`), each label becomes an edge with that id. The edge is
/// twisted iff its two arrows disagree in direction. Darts are numbered
/// `2j+1, 2j+2` for the `j`-th label in increasing order, in order of first
/// appearance.
pub fn from_arrow_presentation(ap: &ArrowPresentation) -> Result<RibbonGraph> {
    ap.validate()?;
    let slot: HashMap<u32, u32> = ap.signs.keys().enumerate().map(|(j, &l)| (l, j as u32)).collect();
    let mut seen: HashMap<u32, (u32, Direction)> = HashMap::new();
    let mut edges = Vec::with_capacity(ap.signs.len());
    let mut vertices = Vec::with_capacity(ap.cycles.len());
    for (vi, cycle) in ap.cycles.iter().enumerate() {
        let mut rotation = Vec::with_capacity(cycle.len());
        for a in cycle {
            let base = 2 * slot[&a.label];
            match seen.get(&a.label) {
                None => {
                    seen.insert(a.label, (base + 1, a.direction));
                    rotation.push(base + 1);
                }
                Some(&(first, dir)) => {
                    rotation.push(base + 2);
                    edges.push(Edge {
                        id: a.label,
                        darts: [first, base + 2],
                        sign: ap.signs[&a.label],
                        twist: dir != a.direction,
                    });
                }
            }
        }
        vertices.push(Vertex { id: vi as u32, rotation });
    }
    edges.sort_by_key(|e| e.id);
    RibbonGraph::new(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(label: u32, forward: bool) -> Arrow {
        Arrow { label, direction: if forward { Direction::Forward } else { Direction::Backward } }
    }

    #[test]
    fn one_cycle_loops() {
        let signs = BTreeMap::from([(1, Sign::Plus)]);
        let same = ArrowPresentation::new(vec![vec![arrow(1, true), arrow(1, true)]], signs.clone()).unwrap();
        let g = from_arrow_presentation(&same).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 1));
        assert_eq!(g.boundary_count(), 2);

        let opposite = ArrowPresentation::new(vec![vec![arrow(1, true), arrow(1, false)]], signs).unwrap();
        let g = from_arrow_presentation(&opposite).unwrap();
        assert_eq!(g.boundary_count(), 1);
        assert!(!g.is_orientable());
    }

    #[test]
    fn two_cycles_give_a_bridge() {
        let ap = ArrowPresentation::new(
            vec![vec![arrow(4, true)], vec![arrow(4, false)]],
            BTreeMap::from([(4, Sign::Minus)]),
        )
        .unwrap();
        let g = from_arrow_presentation(&ap).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (2, 1));
        assert_eq!(g.edges()[0].sign, Sign::Minus);
        assert_eq!(g.edges()[0].id, 4);
        assert!(g.is_orientable());
    }

    #[test]
    fn bad_label_counts() {
        let once = ArrowPresentation::new(vec![vec![arrow(1, true)]], BTreeMap::from([(1, Sign::Plus)]));
        assert!(matches!(once, Err(Error::Presentation(_))));
        let thrice = ArrowPresentation::new(
            vec![vec![arrow(1, true), arrow(1, true), arrow(1, false)]],
            BTreeMap::from([(1, Sign::Plus)]),
        );
        assert!(thrice.is_err());
        let unsigned = ArrowPresentation::new(vec![vec![arrow(1, true), arrow(1, true)]], BTreeMap::new());
        assert!(unsigned.is_err());
    }

    #[test]
    fn reversing_a_label_keeps_the_graph() {
        let ap = ArrowPresentation::new(
            vec![vec![arrow(1, true), arrow(2, true), arrow(1, false), arrow(2, true)]],
            BTreeMap::from([(1, Sign::Plus), (2, Sign::Minus)]),
        )
        .unwrap();
        let a = from_arrow_presentation(&ap).unwrap();
        let b = from_arrow_presentation(&ap.reverse_labels(&[1])).unwrap();
        assert_eq!(a.stats(), b.stats());
        assert!(crate::iso::is_isomorphic(&a, &b));
    }
}
