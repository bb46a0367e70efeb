//! The MMP diagram data model.
//!
//! A [`Diagram`] is a hypergraph on dense vertex ids `0..a` whose edges are
//! ordered vertex lists. Edge order and in-edge vertex order are kept exactly
//! as given so that text round-trips are byte-identical; every structural
//! query (isomorphism, girth, containment) treats edges as sets.

use std::collections::HashMap;

use thiserror::Error;

/// Structural problems found while building a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("edge {edge}: vertex {vertex} appears twice")]
    DuplicateVertex { edge: usize, vertex: usize },
    #[error("edge {second} repeats edge {first}")]
    DuplicateEdge { first: usize, second: usize },
    #[error("edge {edge}: vertex id {vertex} out of range")]
    VertexOutOfRange { edge: usize, vertex: usize },
    #[error("edge {edge}: fewer than two vertices")]
    TinyEdge { edge: usize },
    /// `edge` is the edge index that violates MMP condition `condition`.
    #[error("edge {edge}: violates MMP condition {condition}")]
    Condition { condition: u8, edge: usize },
    #[error("vertex {vertex} lies on no edge (MMP condition 1)")]
    Uncovered { vertex: usize },
    #[error("edge {edge}: size differs from the first edge")]
    MixedSizes { edge: usize },
    #[error("{0} labels for {1} vertices")]
    LabelCount(usize, usize),
}

/// How strictly the MMP conditions are enforced on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validation {
    /// All three MMP conditions: every vertex on an edge, edges of one size
    /// n ≥ 3, and no two edges sharing more than n − 2 vertices.
    #[default]
    Strict,
    /// Reduced systems: edges of any size ≥ 2, condition 1 still enforced.
    Relaxed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    n_vertices: usize,
    edges: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    incidence: Vec<Vec<usize>>,
}

impl Diagram {
    /// Builds a diagram under [`Validation::Strict`].
    pub fn new(n_vertices: usize, edges: Vec<Vec<usize>>) -> Result<Self, DiagramError> {
        Self::with_validation(n_vertices, edges, Validation::Strict)
    }

    pub fn with_validation(
        n_vertices: usize,
        edges: Vec<Vec<usize>>,
        validation: Validation,
    ) -> Result<Self, DiagramError> {
        let d = Self::raw(n_vertices, edges)?;
        d.validate(validation)?;
        Ok(d)
    }

    /// Builds a hypergraph checking only well-formedness (no repeated
    /// vertices or edges, ids in range). Used for raw equation systems that
    /// are not MMP diagrams, such as "1234,1235".
    pub fn raw(n_vertices: usize, edges: Vec<Vec<usize>>) -> Result<Self, DiagramError> {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            if e.len() < 2 {
                return Err(DiagramError::TinyEdge { edge: i });
            }
            let mut s = e.clone();
            s.sort_unstable();
            for w in s.windows(2) {
                if w[0] == w[1] {
                    return Err(DiagramError::DuplicateVertex { edge: i, vertex: w[0] });
                }
            }
            if let Some(&v) = s.last() {
                if v >= n_vertices {
                    return Err(DiagramError::VertexOutOfRange { edge: i, vertex: v });
                }
            }
            if let Some(&first) = seen.get(&s) {
                return Err(DiagramError::DuplicateEdge { first, second: i });
            }
            seen.insert(s, i);
        }
        let mut incidence = vec![Vec::new(); n_vertices];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Ok(Diagram { n_vertices, edges, labels: None, incidence })
    }

    /// Checks the MMP conditions. Condition 3 is read as: two edges of a
    /// diagram with edge size n share at most n − 2 vertices.
    pub fn validate(&self, validation: Validation) -> Result<(), DiagramError> {
        if let Some(v) = (0..self.n_vertices).find(|&v| self.incidence[v].is_empty()) {
            return Err(DiagramError::Uncovered { vertex: v });
        }
        if validation == Validation::Relaxed {
            return Ok(());
        }
        let n = match self.edges.first() {
            Some(e) => e.len(),
            None => return Ok(()),
        };
        for (i, e) in self.edges.iter().enumerate() {
            if e.len() < 3 {
                return Err(DiagramError::Condition { condition: 2, edge: i });
            }
            if e.len() != n {
                return Err(DiagramError::MixedSizes { edge: i });
            }
        }
        let mut mark = vec![false; self.n_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                mark[v] = true;
            }
            for (j, f) in self.edges.iter().enumerate().skip(i + 1) {
                let shared = f.iter().filter(|&&v| mark[v]).count();
                if shared + 2 > n {
                    return Err(DiagramError::Condition { condition: 3, edge: j });
                }
            }
            for &v in e {
                mark[v] = false;
            }
        }
        Ok(())
    }

    /// Attaches display labels, one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, DiagramError> {
        if labels.len() != self.n_vertices {
            return Err(DiagramError::LabelCount(labels.len(), self.n_vertices));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    /// Edges containing vertex `v`, in edge order.
    pub fn edges_of(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of `v`: the stored label, else its position in the
    /// native alphabet, else its 1-based number.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => crate::text::default_label(v),
        }
    }

    /// Finds the vertex carrying a display label.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        (0..self.n_vertices).find(|&v| self.label(v) == label)
    }

    /// The common edge size, if all edges have the same size.
    pub fn uniform_edge_size(&self) -> Option<usize> {
        let n = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == n).then_some(n)
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices sharing at least one edge with `v` (excluding `v`), sorted.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.incidence[v]
            .iter()
            .flat_map(|&e| self.edges[e].iter().copied())
            .filter(|&u| u != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether `u` and `v` lie on a common edge.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.incidence[u].iter().any(|e| self.incidence[v].contains(e))
    }

    /// Appends an edge without validation of MMP conditions; vertex ids
    /// `>= n_vertices` extend the vertex range. Labels are dropped unless
    /// no new vertex is introduced.
    pub fn with_edge(&self, edge: Vec<usize>) -> Result<Self, DiagramError> {
        let top = edge.iter().copied().max().map_or(0, |m| m + 1);
        let a = self.n_vertices.max(top);
        let mut edges = self.edges.clone();
        edges.push(edge);
        let mut d = Self::raw(a, edges)?;
        if a == self.n_vertices {
            d.labels = self.labels.clone();
        }
        Ok(d)
    }

    /// Removes edge `i` together with the vertices lying only on it.
    /// Remaining vertices keep their relative order.
    pub fn without_edge(&self, i: usize) -> Diagram {
        let removed: Vec<usize> =
            self.edges[i].iter().copied().filter(|&v| self.incidence[v].len() == 1).collect();
        let mut keep = vec![true; self.n_vertices];
        for &v in &removed {
            keep[v] = false;
        }
        let mut new_id = vec![usize::MAX; self.n_vertices];
        let mut next = 0;
        for v in 0..self.n_vertices {
            if keep[v] {
                new_id[v] = next;
                next += 1;
            }
        }
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, e)| e.iter().map(|&v| new_id[v]).collect())
            .collect();
        let mut d = Self::raw(next, edges).expect("sub-hypergraph of a valid hypergraph");
        if let Some(l) = &self.labels {
            d.labels = Some((0..self.n_vertices).filter(|&v| keep[v]).map(|v| l[v].clone()).collect());
        }
        d
    }

    /// Drops a vertex from every edge that holds it (the reduced systems
    /// obtained by deleting a vector). Edges left with fewer than two
    /// vertices are removed.
    pub fn without_vertex(&self, v: usize) -> Diagram {
        let map = |u: usize| if u > v { u - 1 } else { u };
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|e| e.iter().copied().filter(|&u| u != v).map(map).collect::<Vec<_>>())
            .filter(|e| e.len() >= 2)
            .collect();
        let mut d = Self::raw(self.n_vertices - 1, edges).expect("vertex deletion keeps edges distinct");
        if let Some(l) = &self.labels {
            d.labels = Some(l.iter().enumerate().filter(|&(u, _)| u != v).map(|(_, s)| s.clone()).collect());
        }
        d
    }

    /// Applies a vertex relabeling: vertex `v` becomes `perm[v]`. Edge order
    /// and in-edge order are kept.
    pub fn relabeled(&self, perm: &[usize]) -> Diagram {
        let edges = self.edges.iter().map(|e| e.iter().map(|&v| perm[v]).collect()).collect();
        let mut d = Self::raw(self.n_vertices, edges).expect("relabeling keeps a valid hypergraph");
        if let Some(l) = &self.labels {
            let mut nl = vec![String::new(); self.n_vertices];
            for v in 0..self.n_vertices {
                nl[perm[v]] = l[v].clone();
            }
            d.labels = Some(nl);
        }
        d
    }

    /// Reorders edges: the new edge list is `order.iter().map(|&i| edge(i))`.
    pub fn with_edge_order(&self, order: &[usize]) -> Diagram {
        let edges = order.iter().map(|&i| self.edges[i].clone()).collect();
        let mut d = Self::raw(self.n_vertices, edges).expect("reordering keeps a valid hypergraph");
        d.labels = self.labels.clone();
        d
    }

    /// Connected components as lists of vertices, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n_vertices];
        let mut out = Vec::new();
        for s in 0..self.n_vertices {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for &e in &self.incidence[v] {
                    for &u in &self.edges[e] {
                        if comp[u] == usize::MAX {
                            comp[u] = id;
                            stack.push(u);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// For each edge, whether deleting it (with its private vertices)
    /// increases the number of connected components.
    pub fn cut_edges(&self) -> Vec<bool> {
        let base = self.components().len();
        (0..self.edges.len())
            .map(|i| {
                let private = self.edges[i].iter().filter(|&&v| self.incidence[v].len() == 1).count();
                if private == self.edges[i].len() {
                    return false;
                }
                count_components_without(self, i) > base
            })
            .collect()
    }
}

fn count_components_without(d: &Diagram, skip: usize) -> usize {
    let a = d.n_vertices();
    let mut parent: Vec<usize> = (0..a).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut alive = vec![false; a];
    for (i, e) in d.edges().iter().enumerate() {
        if i == skip {
            continue;
        }
        for &v in e {
            alive[v] = true;
        }
        for w in e.windows(2) {
            let (x, y) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if x != y {
                parent[x] = y;
            }
        }
    }
    (0..a).filter(|&v| alive[v] && find(&mut parent, v) == v).count()
}
