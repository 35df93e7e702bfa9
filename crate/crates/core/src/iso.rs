//! Ribbon-graph isomorphism by rooted extension.
//!
//! Within a connected component a dart bijection is fixed by the image of
//! one root dart together with the relative orientation of the root vertex;
//! everything else follows by walking rotations and edges. Components are
//! matched greedily, which is sound because isomorphism is an equivalence.

use crate::ribbon::RibbonGraph;

pub fn is_isomorphic(g: &RibbonGraph, h: &RibbonGraph) -> bool {
    if g.num_vertices() != h.num_vertices()
        || g.num_edges() != h.num_edges()
        || g.isolated_vertices() != h.isolated_vertices()
    {
        return false;
    }
    let gc = dart_components(g);
    let hc = dart_components(h);
    if gc.len() != hc.len() {
        return false;
    }
    let mut used = vec![false; hc.len()];
    'outer: for comp in &gc {
        for (j, other) in hc.iter().enumerate() {
            if used[j] || other.len() != comp.len() {
                continue;
            }
            if other.iter().any(|&t| extends(g, h, comp[0], t, comp.len())) {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Dense darts grouped by connected component.
fn dart_components(g: &RibbonGraph) -> Vec<Vec<usize>> {
    g.components()
        .into_iter()
        .filter_map(|verts| {
            let darts: Vec<usize> = (0..g.num_darts()).filter(|&d| verts.contains(&g.vertex_of(d))).collect();
            (!darts.is_empty()).then_some(darts)
        })
        .collect()
}

fn extends(g: &RibbonGraph, h: &RibbonGraph, root: usize, target: usize, size: usize) -> bool {
    [false, true].into_iter().any(|flip| Extension::new(g, h).run(root, target, flip, size))
}

struct Extension<'a> {
    g: &'a RibbonGraph,
    h: &'a RibbonGraph,
    dart: Vec<Option<usize>>,
    dart_inv: Vec<bool>,
    vertex: Vec<Option<(usize, bool)>>,
    vertex_inv: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Extension<'a> {
    fn new(g: &'a RibbonGraph, h: &'a RibbonGraph) -> Self {
        Extension {
            g,
            h,
            dart: vec![None; g.num_darts()],
            dart_inv: vec![false; h.num_darts()],
            vertex: vec![None; g.num_vertices()],
            vertex_inv: vec![false; h.num_vertices()],
            queue: Vec::new(),
        }
    }

    fn run(mut self, root: usize, target: usize, flip: bool, size: usize) -> bool {
        if !self.assign(root, target, flip) {
            return false;
        }
        let mut mapped = 1;
        while let Some(d) = self.queue.pop() {
            let img = self.dart[d].unwrap();
            let (_, flip) = self.vertex[self.g.vertex_of(d)].unwrap();
            let (nd, nimg) = if flip { (self.g.next(d), self.h.prev(img)) } else { (self.g.next(d), self.h.next(img)) };
            let fresh = self.dart[nd].is_none();
            if !self.assign(nd, nimg, flip) {
                return false;
            }
            mapped += fresh as usize;

            if self.g.sign_of(d) != self.h.sign_of(img) {
                return false;
            }
            let (pd, pimg) = (d ^ 1, img ^ 1);
            let pflip = flip ^ self.g.twist_of(d) ^ self.h.twist_of(img);
            let fresh = self.dart[pd].is_none();
            if !self.assign(pd, pimg, pflip) {
                return false;
            }
            mapped += fresh as usize;
        }
        mapped == size
    }

    fn assign(&mut self, d: usize, img: usize, flip: bool) -> bool {
        let (u, w) = (self.g.vertex_of(d), self.h.vertex_of(img));
        match self.vertex[u] {
            Some((w0, f0)) => {
                if w0 != w || f0 != flip {
                    return false;
                }
            }
            None => {
                if self.vertex_inv[w] {
                    return false;
                }
                self.vertex[u] = Some((w, flip));
                self.vertex_inv[w] = true;
            }
        }
        match self.dart[d] {
            Some(i) => i == img,
            None => {
                if self.dart_inv[img] {
                    return false;
                }
                self.dart[d] = Some(img);
                self.dart_inv[img] = true;
                self.queue.push(d);
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::{Edge, Sign, Vertex};

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
    fn relabelled_copy() {
        let g = graph(&[&[1, 3, 5], &[2, 6, 4]], &[(1, 2, Plus, false), (3, 4, Minus, false), (5, 6, Plus, true)]);
        // darts 1..6 renamed 10,20,..,60, vertices listed in the other order
        let h = graph(
            &[&[20, 60, 40], &[10, 30, 50]],
            &[(30, 40, Minus, false), (50, 60, Plus, true), (10, 20, Plus, false)],
        );
        assert!(is_isomorphic(&g, &h));
        assert!(is_isomorphic(&g, &g.flip_vertex(0)));
    }

    #[test]
    fn different_vertex_counts() {
        let lp = graph(&[&[1, 2]], &[(1, 2, Plus, false)]);
        let bridge = graph(&[&[1], &[2]], &[(1, 2, Plus, false)]);
        assert!(!is_isomorphic(&lp, &bridge));
    }

    #[test]
    fn twisted_path_edge() {
        let a = graph(&[&[1], &[2, 3], &[4]], &[(1, 2, Plus, true), (3, 4, Plus, false)]);
        let b = graph(&[&[1], &[2, 3], &[4]], &[(1, 2, Plus, false), (3, 4, Plus, false)]);
        assert!(is_isomorphic(&a, &b));
    }

    #[test]
    fn signs_and_twisted_loops_matter() {
        let plus = graph(&[&[1, 2]], &[(1, 2, Plus, false)]);
        let minus = graph(&[&[1, 2]], &[(1, 2, Minus, false)]);
        let mobius = graph(&[&[1, 2]], &[(1, 2, Plus, true)]);
        assert!(!is_isomorphic(&plus, &minus));
        assert!(!is_isomorphic(&plus, &mobius));
    }

    #[test]
    fn bouquet_rotation_matters() {
        // interlaced loops (torus) vs nested loops (plane)
        let torus = graph(&[&[1, 3, 2, 4]], &[(1, 2, Plus, false), (3, 4, Plus, false)]);
        let plane = graph(&[&[1, 2, 3, 4]], &[(1, 2, Plus, false), (3, 4, Plus, false)]);
        assert!(!is_isomorphic(&torus, &plane));
        let mirrored = graph(&[&[4, 2, 3, 1]], &[(1, 2, Plus, false), (3, 4, Plus, false)]);
        assert!(is_isomorphic(&torus, &mirrored));
    }

    #[test]
    fn components_and_isolated_vertices() {
        let a = graph(&[&[1, 2], &[], &[3], &[4]], &[(1, 2, Plus, false), (3, 4, Minus, false)]);
        let b = graph(&[&[3], &[4], &[1, 2], &[]], &[(1, 2, Plus, false), (3, 4, Minus, false)]);
        let c = graph(&[&[3], &[4], &[1, 2], &[]], &[(1, 2, Minus, false), (3, 4, Plus, false)]);
        assert!(is_isomorphic(&a, &b));
        assert!(!is_isomorphic(&a, &c));
    }
}
