//! Canonical labeling and automorphism groups.
//!
//! Diagrams are labeled through their vertex–edge incidence graph, with
//! vertices and edges kept in separate color classes. The search follows the
//! individualization–refinement scheme: an ordered partition of the incidence
//! nodes is refined to an equitable one, a node of the first non-singleton
//! cell is individualized, and the process repeats until the partition is
//! discrete. Each discrete partition is a labeling; the canonical one is the
//! leaf with the greatest (refinement trace, incidence code) pair.
//!
//! Subtrees are pruned three ways:
//! - a node whose trace differs from the first leaf's path and is smaller
//!   than the best leaf's path can reach neither an automorphism nor a
//!   better leaf;
//! - children in one orbit of the automorphisms found so far that fix the
//!   current prefix are explored once;
//! - after an automorphism against the first leaf, the search resumes at the
//!   common ancestor with the first path.
//!
//! Every automorphism is found as a pair of equivalent leaves, and the
//! recorded generators span the full group.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use crate::diagram::Diagram;

/// Result of canonical labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Vertex `v` receives canonical label `relabeling[v]`.
    pub relabeling: Vec<usize>,
    /// `edge_order[k]` is the index of the k-th edge in canonical order.
    pub edge_order: Vec<usize>,
    /// Vertex permutations generating the automorphism group.
    pub automorphisms: Vec<Vec<usize>>,
    /// Identifies the isomorphism class.
    pub certificate: Vec<u8>,
}

impl CanonicalForm {
    /// Edge index that comes last in canonical order.
    pub fn last_edge(&self) -> Option<usize> {
        self.edge_order.last().copied()
    }

    /// Position of each edge in canonical order.
    pub fn edge_rank(&self) -> Vec<usize> {
        let mut rank = vec![0; self.edge_order.len()];
        for (k, &e) in self.edge_order.iter().enumerate() {
            rank[e] = k;
        }
        rank
    }

    /// Induced action of an automorphism on edges.
    pub fn edge_permutation(d: &Diagram, perm: &[usize]) -> Vec<usize> {
        let mut lookup = std::collections::HashMap::with_capacity(d.n_edges());
        for (i, e) in d.edges().iter().enumerate() {
            let mut s = e.clone();
            s.sort_unstable();
            lookup.insert(s, i);
        }
        d.edges()
            .iter()
            .map(|e| {
                let mut img: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
                img.sort_unstable();
                lookup[&img]
            })
            .collect()
    }
}

/// Incidence graph with adjacency lists; vertex nodes first.
pub(crate) struct Incidence {
    pub(crate) a: usize,
    pub(crate) b: usize,
    pub(crate) adj: Vec<Vec<usize>>,
}

impl Incidence {
    pub(crate) fn new(d: &Diagram) -> Self {
        let a = d.n_vertices();
        let b = d.n_edges();
        let mut adj = vec![Vec::new(); a + b];
        for (i, e) in d.edges().iter().enumerate() {
            for &v in e {
                adj[v].push(a + i);
                adj[a + i].push(v);
            }
        }
        Incidence { a, b, adj }
    }

    fn len(&self) -> usize {
        self.a + self.b
    }
}

/// Ordered partition of incidence nodes.
#[derive(Clone)]
pub(crate) struct Partition {
    order: Vec<usize>,
    pos: Vec<usize>,
    /// For each position, the start of the cell holding it.
    cell: Vec<usize>,
    /// Cell length, valid at cell starts.
    len: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn unit(g: &Incidence) -> Self {
        let n = g.len();
        let mut cell = vec![0; n];
        let mut len = vec![0; n];
        for c in cell.iter_mut().skip(g.a) {
            *c = g.a;
        }
        let mut cells = 0;
        if g.a > 0 {
            len[0] = g.a;
            cells += 1;
        }
        if g.b > 0 {
            len[g.a] = g.b;
            cells += 1;
        }
        Partition { order: (0..n).collect(), pos: (0..n).collect(), cell, len, cells }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.order.len()
    }

    /// Start of the first cell with more than one node.
    fn target_cell(&self) -> Option<usize> {
        let mut i = 0;
        while i < self.order.len() {
            if self.len[i] > 1 {
                return Some(i);
            }
            i += self.len[i];
        }
        None
    }

    fn cell_nodes(&self, start: usize) -> &[usize] {
        &self.order[start..start + self.len[start]]
    }

    /// Splits node `w` off the front of its cell; returns the new singleton start.
    fn individualize(&mut self, w: usize) -> usize {
        let s = self.cell[self.pos[w]];
        let l = self.len[s];
        let p = self.pos[w];
        let other = self.order[s];
        self.order.swap(s, p);
        self.pos[other] = p;
        self.pos[w] = s;
        self.len[s] = 1;
        self.len[s + 1] = l - 1;
        for i in s + 1..s + l {
            self.cell[i] = s + 1;
        }
        self.cells += 1;
        s
    }

    /// Refines to the coarsest equitable partition below the current one,
    /// starting from the given splitter cells. Returns a hash of the trace.
    fn refine(&mut self, g: &Incidence, initial: &[usize], scratch: &mut Scratch) -> u64 {
        let mut h = DefaultHasher::new();
        let mut queue: VecDeque<usize> = VecDeque::new();
        scratch.in_queue.iter_mut().for_each(|x| *x = false);
        for &s in initial {
            queue.push_back(s);
            scratch.in_queue[s] = true;
        }
        while let Some(w) = queue.pop_front() {
            scratch.in_queue[w] = false;
            if self.is_discrete() {
                break;
            }
            scratch.touched.clear();
            for i in w..w + self.len[w] {
                let x = self.order[i];
                for &y in &g.adj[x] {
                    if scratch.count[y] == 0 {
                        scratch.touched.push(y);
                    }
                    scratch.count[y] += 1;
                }
            }
            let mut starts: Vec<usize> = scratch.touched.iter().map(|&y| self.cell[self.pos[y]]).collect();
            starts.sort_unstable();
            starts.dedup();
            for &c in &starts {
                let l = self.len[c];
                if l == 1 {
                    continue;
                }
                let first = scratch.count[self.order[c]];
                if self.order[c..c + l].iter().all(|&x| scratch.count[x] == first) {
                    continue;
                }
                let mut nodes: Vec<(usize, usize)> =
                    self.order[c..c + l].iter().map(|&x| (scratch.count[x], x)).collect();
                nodes.sort_unstable();
                let mut frags: Vec<(usize, usize)> = Vec::new();
                for (k, &(cnt, x)) in nodes.iter().enumerate() {
                    self.order[c + k] = x;
                    self.pos[x] = c + k;
                    if k == 0 || nodes[k - 1].0 != cnt {
                        frags.push((c + k, 0));
                    }
                    let f = frags.last_mut().unwrap();
                    f.1 += 1;
                    self.cell[c + k] = f.0;
                }
                (w, c, frags.len()).hash(&mut h);
                for &(s, fl) in &frags {
                    self.len[s] = fl;
                    (s, fl, scratch.count[self.order[s]]).hash(&mut h);
                }
                self.cells += frags.len() - 1;
                if scratch.in_queue[c] {
                    for &(s, _) in &frags[1..] {
                        queue.push_back(s);
                        scratch.in_queue[s] = true;
                    }
                } else {
                    let largest = frags.iter().enumerate().max_by(|x, y| x.1 .1.cmp(&y.1 .1).then(y.0.cmp(&x.0))).unwrap().0;
                    for (k, &(s, _)) in frags.iter().enumerate() {
                        if k != largest {
                            queue.push_back(s);
                            scratch.in_queue[s] = true;
                        }
                    }
                }
            }
            for &y in &scratch.touched {
                scratch.count[y] = 0;
            }
        }
        self.cells.hash(&mut h);
        h.finish()
    }
}

pub(crate) struct Scratch {
    count: Vec<usize>,
    touched: Vec<usize>,
    in_queue: Vec<bool>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch { count: vec![0; n], touched: Vec::new(), in_queue: vec![false; n] }
    }
}

/// Refines the vertex/edge partition of `d` without individualization.
/// Returns, for each incidence node, the start of its cell; cells are
/// isomorphism-invariant, so nodes of different cells are never equivalent.
pub(crate) fn equitable_cells(d: &Diagram) -> Vec<usize> {
    let g = Incidence::new(d);
    let mut p = Partition::unit(&g);
    let mut scratch = Scratch::new(g.len());
    let starts: Vec<usize> = [0, g.a].into_iter().filter(|&s| s < g.len() && p.len[s] > 0).collect();
    p.refine(&g, &starts, &mut scratch);
    (0..g.len()).map(|x| p.cell[p.pos[x]]).collect()
}

struct Leaf {
    pos: Vec<usize>,
    code: Vec<u32>,
    trace: Vec<u64>,
    path: Vec<usize>,
}

struct Search<'g> {
    g: &'g Incidence,
    scratch: Scratch,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

fn code_of(g: &Incidence, pos: &[usize], order: &[usize]) -> Vec<u32> {
    let mut code = Vec::with_capacity(2 + g.adj.len() * 2);
    code.push(g.a as u32);
    code.push(g.b as u32);
    for &x in &order[g.a..] {
        let mut ps: Vec<u32> = g.adj[x].iter().map(|&v| pos[v] as u32).collect();
        ps.sort_unstable();
        code.push(ps.len() as u32);
        code.extend(ps);
    }
    code
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl<'g> Search<'g> {
    fn prefix_cmp(trace: &[u64], other: &[u64]) -> Ordering {
        let k = trace.len().min(other.len());
        trace[..k].cmp(&other[..k])
    }

    /// Returns `Some(level)` to unwind to the node at that depth.
    fn visit(&mut self, part: &Partition, path: &mut Vec<usize>, trace: &mut Vec<u64>) -> Option<usize> {
        if part.is_discrete() {
            return self.leaf(part, path, trace);
        }
        let level = path.len();
        let target = part.target_cell().expect("non-discrete partition has a target cell");
        let mut children: Vec<usize> = part.cell_nodes(target).to_vec();
        children.sort_unstable();
        let mut done: Vec<usize> = Vec::new();
        let n = self.g.len();
        for &w in &children {
            // orbit pruning under generators fixing the prefix pointwise
            if !done.is_empty() {
                let mut parent: Vec<usize> = (0..n).collect();
                for gen in &self.generators {
                    if path.iter().all(|&x| gen[x] == x) {
                        for x in 0..n {
                            let (r1, r2) = (find(&mut parent, x), find(&mut parent, gen[x]));
                            if r1 != r2 {
                                parent[r1.max(r2)] = r1.min(r2);
                            }
                        }
                    }
                }
                let rw = find(&mut parent, w);
                if done.iter().any(|&u| find(&mut parent, u) == rw) {
                    continue;
                }
            }
            done.push(w);
            let mut child = part.clone();
            let s = child.individualize(w);
            let inv = child.refine(self.g, &[s], &mut self.scratch);
            path.push(w);
            trace.push(inv);
            let eq_first = self.first.as_ref().map_or(true, |f| Self::prefix_cmp(trace, &f.trace) == Ordering::Equal);
            let cmp_best = self.best.as_ref().map_or(Ordering::Equal, |b| Self::prefix_cmp(trace, &b.trace));
            let jump = if !eq_first && cmp_best == Ordering::Less { None } else { self.visit(&child, path, trace) };
            path.pop();
            trace.pop();
            if let Some(l) = jump {
                if l < level {
                    return Some(l);
                }
            }
        }
        None
    }

    fn leaf(&mut self, part: &Partition, path: &[usize], trace: &[u64]) -> Option<usize> {
        let code = code_of(self.g, &part.pos, &part.order);
        let Some(first) = &self.first else {
            let leaf = Leaf { pos: part.pos.clone(), code, trace: trace.to_vec(), path: path.to_vec() };
            self.best = Some(Leaf { pos: leaf.pos.clone(), code: leaf.code.clone(), trace: leaf.trace.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return None;
        };
        if first.trace == trace && first.code == code {
            let gen = Self::perm_between(&first.pos, &part.pos, &part.order);
            let common = first.path.iter().zip(path).take_while(|(x, y)| x == y).count();
            self.push_generator(gen);
            return Some(common);
        }
        let best = self.best.as_ref().unwrap();
        match best.trace.as_slice().cmp(trace).then_with(|| best.code.cmp(&code)) {
            Ordering::Equal => {
                let gen = Self::perm_between(&best.pos, &part.pos, &part.order);
                self.push_generator(gen);
            }
            Ordering::Less => {
                self.best = Some(Leaf { pos: part.pos.clone(), code, trace: trace.to_vec(), path: path.to_vec() });
            }
            Ordering::Greater => {}
        }
        None
    }

    /// Maps each node x to the node holding x's position in the other leaf.
    fn perm_between(from_pos: &[usize], _to_pos: &[usize], to_order: &[usize]) -> Vec<usize> {
        from_pos.iter().map(|&p| to_order[p]).collect()
    }

    fn push_generator(&mut self, gen: Vec<usize>) {
        if gen.iter().enumerate().all(|(i, &x)| i == x) {
            return;
        }
        if !self.generators.contains(&gen) {
            self.generators.push(gen);
        }
    }
}

/// Computes the canonical form of a diagram.
pub fn canonical_form(d: &Diagram) -> CanonicalForm {
    let g = Incidence::new(d);
    let n = g.len();
    let mut search = Search { g: &g, scratch: Scratch::new(n), first: None, best: None, generators: Vec::new() };
    let mut root = Partition::unit(&g);
    let starts: Vec<usize> = [0, g.a].into_iter().filter(|&s| s < n && root.len[s] > 0).collect();
    let inv = root.refine(&g, &starts, &mut search.scratch);
    let mut trace = vec![inv];
    let mut path = Vec::new();
    // the root trace is shared by every leaf; keep it for a uniform shape
    search.visit(&root, &mut path, &mut trace);
    let best = search.best.expect("search reaches at least one leaf");
    let relabeling: Vec<usize> = best.pos[..g.a].to_vec();
    let mut edge_order = vec![0; g.b];
    for e in 0..g.b {
        edge_order[best.pos[g.a + e] - g.a] = e;
    }
    let automorphisms = search.generators.iter().map(|p| p[..g.a].to_vec()).collect();
    let mut certificate = Vec::with_capacity(best.code.len() * 2);
    for x in &best.code {
        certificate.extend_from_slice(&(*x as u16).to_le_bytes());
    }
    CanonicalForm { relabeling, edge_order, automorphisms, certificate }
}

/// Certificate only.
pub fn certificate(d: &Diagram) -> Vec<u8> {
    canonical_form(d).certificate
}

pub fn is_isomorphic(d1: &Diagram, d2: &Diagram) -> bool {
    if d1.n_vertices() != d2.n_vertices() || d1.n_edges() != d2.n_edges() {
        return false;
    }
    let mut s1: Vec<usize> = d1.edges().iter().map(Vec::len).collect();
    let mut s2: Vec<usize> = d2.edges().iter().map(Vec::len).collect();
    s1.sort_unstable();
    s2.sort_unstable();
    s1 == s2 && certificate(d1) == certificate(d2)
}

/// The diagram relabeled canonically, edges in canonical order with sorted
/// vertices.
pub fn canonical_diagram(d: &Diagram) -> Diagram {
    let cf = canonical_form(d);
    let edges = cf
        .edge_order
        .iter()
        .map(|&e| {
            let mut s: Vec<usize> = d.edge(e).iter().map(|&v| cf.relabeling[v]).collect();
            s.sort_unstable();
            s
        })
        .collect();
    Diagram::raw(d.n_vertices(), edges).expect("canonical relabeling keeps a valid hypergraph")
}

/// Orbits of vertices under a set of generators, as a representative per
/// vertex (the least vertex of its orbit).
pub fn vertex_orbits(n: usize, generators: &[Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    for gen in generators {
        for x in 0..n {
            let (r1, r2) = (find(&mut parent, x), find(&mut parent, gen[x]));
            if r1 != r2 {
                parent[r1.max(r2)] = r1.min(r2);
            }
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_mmp;

    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn edge_sets(d: &Diagram) -> Vec<Vec<usize>> {
        let mut s: Vec<Vec<usize>> = d
            .edges()
            .iter()
            .map(|e| {
                let mut e = e.clone();
                e.sort();
                e
            })
            .collect();
        s.sort();
        s
    }

    /// Size of the group generated by `gens`, by closure.
    fn group_order(gens: &[Vec<usize>], n: usize) -> u128 {
        let id: Vec<usize> = (0..n).collect();
        let mut seen = std::collections::HashSet::from([id.clone()]);
        let mut stack = vec![id];
        while let Some(p) = stack.pop() {
            for g in gens {
                let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
                if seen.insert(q.clone()) {
                    stack.push(q);
                }
            }
        }
        seen.len() as u128
    }

    fn brute_aut_count(d: &Diagram) -> u128 {
        let target = edge_sets(d);
        perms(d.n_vertices()).into_iter().filter(|p| edge_sets(&d.relabeled(p)) == target).count() as u128
    }

    #[test]
    fn relabeled_copies_share_certificates() {
        let a = parse_mmp("1234,2356,1456").unwrap();
        let b = parse_mmp("2345,3467,2567").unwrap();
        assert_eq!(certificate(&a), certificate(&b));
        let c = parse_mmp("123,345").unwrap();
        let d = parse_mmp("123,145").unwrap();
        assert_eq!(certificate(&c), certificate(&d));
    }

    #[test]
    fn different_structure_differs() {
        let a = parse_mmp("123,345").unwrap();
        let b = parse_mmp("123,456").unwrap();
        assert!(!is_isomorphic(&a, &b));
        let p = parse_mmp("123,345,567,789,9AB,BCD,DEF,FG1,2IA,6IE,4HC,8JG,HIJ").unwrap();
        let q = parse_mmp("123,345,567,789,9AB,BCD,DE1,EI7,2F9,4GB,IJG,FJH,CH6").unwrap();
        assert!(!is_isomorphic(&p, &q));
    }

    #[test]
    fn group_order_matches_brute_force() {
        for s in ["1234,2356,1456", "123", "123,345", "123,345,561", "123,345,561,275,476", "123,345,567,781", "123,456"] {
            let d = parse_mmp(s).unwrap();
            let cf = canonical_form(&d);
            for g in &cf.automorphisms {
                assert_eq!(edge_sets(&d.relabeled(g)), edge_sets(&d));
            }
            assert_eq!(group_order(&cf.automorphisms, d.n_vertices()), brute_aut_count(&d), "{s}");
        }
    }

    #[test]
    fn canonical_diagram_is_a_fixed_point() {
        let d = parse_mmp("1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH").unwrap();
        let cf = canonical_form(&d);
        let c = canonical_diagram(&d);
        assert_eq!(certificate(&c), cf.certificate);
        assert_eq!(canonical_diagram(&c).edges(), c.edges());
    }

    #[test]
    fn equitable_cells_separate_degrees() {
        let d = parse_mmp("123,345").unwrap();
        let cells = equitable_cells(&d);
        assert_ne!(cells[2], cells[0]);
        assert_eq!(cells[0], cells[1]);
        assert_eq!(cells[5], cells[6]);
    }
}
