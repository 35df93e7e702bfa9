//! Exhaustive enumeration of small signed ribbon graphs and the search for
//! graphs realizing a given ribbon-graph polynomial.
//!
//! Candidates use darts `1..=2e` with edge `i` on darts `2i+1, 2i+2`. Every
//! graph is isomorphic to such a candidate, so it suffices to range over
//! set partitions of the darts into vertices, a rotation per block (first
//! dart fixed), padding by isolated vertices, twists and signs. Duplicates
//! are removed with [`is_isomorphic`] inside buckets of equal invariants.

use std::collections::HashMap;

use crate::brpoly::br_polynomial;
use crate::error::{Error, Result};
use crate::iso::is_isomorphic;
use crate::laurent::LaurentPoly;
use crate::ribbon::{Edge, RibbonGraph, Sign, Vertex};

pub const MAX_ENUM_EDGES: usize = 3;
pub const MAX_ENUM_VERTICES: usize = 4;

fn check_bounds(v_max: usize, e: usize) -> Result<()> {
    if e > MAX_ENUM_EDGES || v_max > MAX_ENUM_VERTICES || v_max == 0 {
        return Err(Error::Input(format!(
            "enumeration supports 1 ≤ vertices ≤ {MAX_ENUM_VERTICES} and edges ≤ {MAX_ENUM_EDGES}"
        )));
    }
    Ok(())
}

/// Set partitions of `0..n` into at most `max_blocks` blocks.
fn set_partitions(n: usize, max_blocks: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, max: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            go(i + 1, n, max, blocks, out);
            blocks[b].pop();
        }
        if blocks.len() < max {
            blocks.push(vec![i]);
            go(i + 1, n, max, blocks, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, max_blocks, &mut Vec::new(), &mut out);
    out
}

/// All cyclic orders of `block`, each starting at `block[0]`.
fn cyclic_orders(block: &[usize]) -> Vec<Vec<usize>> {
    fn permute(rest: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>, head: usize) {
        if k == rest.len() {
            let mut v = vec![head];
            v.extend_from_slice(rest);
            out.push(v);
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(rest, k + 1, out, head);
            rest.swap(k, i);
        }
    }
    let mut out = Vec::new();
    let mut rest = block[1..].to_vec();
    permute(&mut rest, 0, &mut out, block[0]);
    out
}

/// Every labelled candidate (with repeats up to isomorphism).
fn candidates(v_max: usize, e: usize, mut visit: impl FnMut(RibbonGraph)) {
    let n = 2 * e;
    for blocks in set_partitions(n, v_max) {
        let orders: Vec<Vec<Vec<usize>>> = blocks.iter().map(|b| cyclic_orders(b)).collect();
        let mut choice = vec![0usize; blocks.len()];
        loop {
            let rotations: Vec<Vec<u32>> =
                choice.iter().zip(&orders).map(|(&c, o)| o[c].iter().map(|&d| d as u32 + 1).collect()).collect();
            for v in blocks.len().max(1)..=v_max {
                for bits in 0..1u32 << (2 * e) {
                    let mut vertices: Vec<Vertex> = rotations
                        .iter()
                        .enumerate()
                        .map(|(i, r)| Vertex { id: i as u32, rotation: r.clone() })
                        .collect();
                    for extra in blocks.len()..v {
                        vertices.push(Vertex { id: extra as u32, rotation: vec![] });
                    }
                    let edges = (0..e)
                        .map(|i| Edge {
                            id: i as u32,
                            darts: [2 * i as u32 + 1, 2 * i as u32 + 2],
                            twist: bits >> i & 1 == 1,
                            sign: if bits >> (e + i) & 1 == 1 { Sign::Minus } else { Sign::Plus },
                        })
                        .collect();
                    visit(RibbonGraph::new(vertices, edges).expect("candidate is well formed"));
                }
            }
            // odometer over rotation choices
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < orders[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
}

/// Keeps one representative per isomorphism class.
struct ClassFilter {
    buckets: HashMap<String, Vec<usize>>,
    graphs: Vec<RibbonGraph>,
}

impl ClassFilter {
    fn new() -> Self {
        ClassFilter { buckets: HashMap::new(), graphs: Vec::new() }
    }

    fn offer(&mut self, g: RibbonGraph, poly: &LaurentPoly) {
        let s = g.stats();
        let mut degrees: Vec<usize> = g.vertices().iter().map(|v| v.rotation.len()).collect();
        degrees.sort_unstable();
        let key = format!("{s:?}|{degrees:?}|{poly}");
        let bucket = self.buckets.entry(key).or_default();
        if bucket.iter().any(|&i| is_isomorphic(&self.graphs[i], &g)) {
            return;
        }
        bucket.push(self.graphs.len());
        self.graphs.push(g);
    }
}

/// All signed ribbon graphs with exactly `e` edges and `1..=v_max`
/// vertices, one per isomorphism class, in discovery order.
pub fn enumerate_graphs(v_max: usize, e: usize) -> Result<Vec<RibbonGraph>> {
    check_bounds(v_max, e)?;
    let mut filter = ClassFilter::new();
    candidates(v_max, e, |g| {
        let p = br_polynomial(&g);
        filter.offer(g, &p);
    });
    Ok(filter.graphs)
}

/// The enumerated graphs whose ribbon-graph polynomial equals `target`.
pub fn realize_polynomial(target: &LaurentPoly, v_max: usize, e: usize) -> Result<Vec<RibbonGraph>> {
    check_bounds(v_max, e)?;
    let mut filter = ClassFilter::new();
    candidates(v_max, e, |g| {
        let p = br_polynomial(&g);
        if p == *target {
            filter.offer(g, &p);
        }
    });
    Ok(filter.graphs)
}
