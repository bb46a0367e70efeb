//! Loop sizes.
//!
//! A loop of size k alternates k distinct edges and k distinct vertices, so it
//! is a cycle of length 2k in the vertex–edge incidence graph. Two edges that
//! share two vertices form a loop of size 2.

use std::collections::VecDeque;

use crate::diagram::Diagram;

/// Smallest loop size, or `None` for a loop-free diagram.
pub fn girth(d: &Diagram) -> Option<usize> {
    let a = d.n_vertices();
    let total = a + d.n_edges();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut queue = VecDeque::new();
    let mut nbrs = Vec::new();
    // Incidence nodes: vertices 0..a, edge i is node a + i.
    for root in 0..a {
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] >= best {
                break;
            }
            nbrs.clear();
            if x < a {
                nbrs.extend(d.edges_of(x).iter().map(|&e| a + e));
            } else {
                nbrs.extend_from_slice(d.edge(x - a));
            }
            for &y in &nbrs {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best / 2)
}

/// Distances between vertices measured in edges: 0 for a vertex itself, 1
/// for two vertices on a common edge, `usize::MAX` when disconnected.
pub fn vertex_distances(d: &Diagram) -> Vec<Vec<usize>> {
    let a = d.n_vertices();
    let mut out = vec![vec![usize::MAX; a]; a];
    let mut seen_edge = vec![false; d.n_edges()];
    let mut frontier = Vec::new();
    let mut next = Vec::new();
    for (root, row) in out.iter_mut().enumerate() {
        seen_edge.iter_mut().for_each(|x| *x = false);
        row[root] = 0;
        frontier.clear();
        frontier.push(root);
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            next.clear();
            for &v in &frontier {
                for &e in d.edges_of(v) {
                    if seen_edge[e] {
                        continue;
                    }
                    seen_edge[e] = true;
                    for &u in d.edge(e) {
                        if row[u] == usize::MAX {
                            row[u] = level;
                            next.push(u);
                        }
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_mmp, parse_mmp_with};
    use crate::Validation;

    /// Smallest loop found by trying every cyclic sequence of distinct edges
    /// with distinct connecting vertices.
    fn brute_girth(d: &Diagram) -> Option<usize> {
        let b = d.n_edges();
        let mut best = None;
        for i in 0..b {
            for j in i + 1..b {
                let shared = d.edge(i).iter().filter(|v| d.edge(j).contains(v)).count();
                if shared >= 2 {
                    return Some(2);
                }
            }
        }
        fn extend(
            d: &Diagram,
            path: &mut Vec<usize>,
            verts: &mut Vec<usize>,
            k: usize,
        ) -> bool {
            let last = *path.last().unwrap();
            if path.len() == k {
                // close back to the first edge through an unused vertex
                return d.edge(last).iter().any(|v| d.edge(path[0]).contains(v) && !verts.contains(v));
            }
            for e in 0..d.n_edges() {
                if path.contains(&e) || e < path[0] {
                    continue;
                }
                for &v in d.edge(last) {
                    if d.edge(e).contains(&v) && !verts.contains(&v) {
                        path.push(e);
                        verts.push(v);
                        let ok = extend(d, path, verts, k);
                        path.pop();
                        verts.pop();
                        if ok {
                            return true;
                        }
                    }
                }
            }
            false
        }
        for k in 3..=b {
            for s in 0..b {
                if extend(d, &mut vec![s], &mut Vec::new(), k) {
                    best = Some(k);
                    break;
                }
            }
            if best.is_some() {
                break;
            }
        }
        best
    }

    #[test]
    fn published_girths() {
        assert_eq!(girth(&parse_mmp("1234,2356,1456").unwrap()), Some(2));
        let d = parse_mmp("1234,4567,789A,ABCD,DEFG,GHI1,FJK5,HJMC,3KL8,IBL6,29ME").unwrap();
        assert_eq!(girth(&d), Some(4));
        assert_eq!(girth(&parse_mmp("123,345,567,789").unwrap()), None);
        assert_eq!(girth(&parse_mmp("123,345,561,275,476").unwrap()), Some(3));
        assert_eq!(girth(&parse_mmp("123,345,567,781").unwrap()), Some(4));
    }

    #[test]
    fn reduced_systems_have_loops() {
        let d = parse_mmp_with("123,35,567,789,9B,B1,28", Validation::Relaxed).unwrap();
        assert_eq!(girth(&d), Some(5));
    }

    #[test]
    fn agrees_with_cycle_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let a = rng.gen_range(4..11);
            let b = rng.gen_range(1..9);
            let mut edges: Vec<Vec<usize>> = Vec::new();
            while edges.len() < b {
                let mut e: Vec<usize> = (0..a).filter(|_| rng.gen_bool(0.35)).collect();
                if e.len() < 2 {
                    continue;
                }
                e.sort();
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
            let Ok(d) = Diagram::raw(a, edges) else { continue };
            assert_eq!(girth(&d), brute_girth(&d), "{:?}", d.edges());
        }
    }

    #[test]
    fn distances_in_edges() {
        let d = parse_mmp("123,345,567").unwrap();
        let dist = vertex_distances(&d);
        assert_eq!(dist[0][1], 1);
        assert_eq!(dist[0][3], 2);
        assert_eq!(dist[0][6], 3);
        assert_eq!(dist[2][2], 0);
    }
}
