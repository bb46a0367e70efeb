//! Isomorph-free generation of MMP diagrams by canonical augmentation.
//!
//! Diagrams grow one edge at a time from the empty diagram. A node's
//! children come from one extension site per orbit of its automorphism
//! group, and a child is kept only when the added edge lies in its major
//! class: the orbit of the last non-cut edge in canonical order. Deleting
//! that edge (with its private vertices) is the unique parent map, so every
//! isomorphism class appears exactly once.

mod filters;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{self, CanonicalForm};
use crate::diagram::Diagram;
use crate::girth::vertex_distances;
use crate::text::NATIVE_LIMIT;

pub use filters::{builtin_filter, FilterRegistry, PrelimFilter, ProbeBudget, ProbeFilter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Smallest loop size allowed; `None` allows any.
    pub min_girth: Option<usize>,
    pub connected_only: bool,
    /// Only diagrams with at least this many vertices are emitted; subtrees
    /// that can no longer reach it are cut.
    pub min_vertices: usize,
    /// Only diagrams with at least this many edges are emitted.
    pub min_edges: usize,
}

impl GenSpec {
    pub fn new(n: usize, max_vertices: usize, max_edges: usize) -> Self {
        GenSpec { n, max_vertices, max_edges, min_girth: None, connected_only: true, min_vertices: 0, min_edges: 0 }
    }

    pub fn girth(mut self, g: usize) -> Self {
        self.min_girth = Some(g);
        self
    }

    pub fn disconnected(mut self) -> Self {
        self.connected_only = false;
        self
    }

    /// Emit only diagrams with exactly `a` vertices and `b` edges.
    pub fn exactly(mut self, a: usize, b: usize) -> Self {
        self.min_vertices = a;
        self.max_vertices = a;
        self.min_edges = b;
        self.max_edges = b;
        self
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.n < 3 {
            return Err(GenError::EdgeSize(self.n));
        }
        if self.max_vertices > NATIVE_LIMIT {
            return Err(GenError::TooManyVertices(self.max_vertices));
        }
        match self.min_girth {
            Some(g) if g < 2 => return Err(GenError::Girth(g)),
            Some(2) if self.n == 3 => return Err(GenError::GirthConflict),
            _ => {}
        }
        Ok(())
    }

    fn emits(&self, d: &Diagram) -> bool {
        let (a, b) = (d.n_vertices(), d.n_edges());
        a >= self.min_vertices && a <= self.max_vertices && b >= self.min_edges && b <= self.max_edges
    }

    /// Whether descendants of `d` can still reach `min_vertices`.
    fn can_reach(&self, d: &Diagram) -> bool {
        let left = self.max_edges.saturating_sub(d.n_edges());
        let per_edge = if self.connected_only && d.n_edges() > 0 { self.n - 1 } else { self.n };
        d.n_vertices() + left * per_edge >= self.min_vertices
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("edge size {0} is below 3")]
    EdgeSize(usize),
    #[error("{0} vertices exceed the 61-symbol alphabet")]
    TooManyVertices(usize),
    #[error("minimum loop size {0} is below 2")]
    Girth(usize),
    #[error("loops of size 2 need two edges sharing 2 vertices, which condition 3 forbids for 3-vertex edges")]
    GirthConflict,
    #[error("unknown filter {0:?}")]
    UnknownFilter(String),
    #[error("bad filter parameter {0:?}")]
    FilterParam(String),
}

/// A place to add an edge: existing vertices plus fresh ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionSite {
    /// Existing vertices of the new edge, ascending.
    pub reused: Vec<usize>,
    pub fresh: usize,
}

impl ExtensionSite {
    /// The new edge's vertex list for a diagram with `a` vertices.
    pub fn edge(&self, a: usize) -> Vec<usize> {
        self.reused.iter().copied().chain(a..a + self.fresh).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterVerdict {
    Pass,
    /// No descendant can satisfy the filter; the tag says why.
    PruneSubtree(String),
}

/// A hook run on every accepted node before its children are generated.
/// Hooks must be monotone: pruning a node must not lose any diagram that
/// could pass the hook further down.
pub trait Filter: Send + Sync {
    fn name(&self) -> &str;
    fn check(&self, d: &Diagram, spec: &GenSpec) -> FilterVerdict;
}

/// Counters from one generation run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenStats {
    /// Accepted nodes of the generation tree (before filters).
    pub accepted: u64,
    /// Nodes cut by each filter, by filter name.
    pub pruned: BTreeMap<String, u64>,
    /// Emitted diagrams by (vertices, edges).
    pub emitted: BTreeMap<(usize, usize), u64>,
}

impl GenStats {
    fn merge(&mut self, other: GenStats) {
        self.accepted += other.accepted;
        for (k, v) in other.pruned {
            *self.pruned.entry(k).or_default() += v;
        }
        for (k, v) in other.emitted {
            *self.emitted.entry(k).or_default() += v;
        }
    }

    pub fn total_emitted(&self) -> u64 {
        self.emitted.values().sum()
    }
}

/// Valid extension sites of `d`, one per orbit under the group generated
/// by `automorphisms`.
pub fn extension_orbits(d: &Diagram, automorphisms: &[Vec<usize>], spec: &GenSpec) -> Vec<ExtensionSite> {
    let sites = all_sites(d, spec);
    if automorphisms.is_empty() || sites.len() < 2 {
        return sites;
    }
    let index: HashMap<&[usize], usize> = sites.iter().enumerate().map(|(i, s)| (s.reused.as_slice(), i)).collect();
    let mut parent: Vec<usize> = (0..sites.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut img = Vec::new();
    for g in automorphisms {
        for (i, s) in sites.iter().enumerate() {
            img.clear();
            img.extend(s.reused.iter().map(|&v| g[v]));
            img.sort_unstable();
            let j = index[img.as_slice()];
            let (x, y) = (find(&mut parent, i), find(&mut parent, j));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    sites.into_iter().enumerate().filter(|&(i, _)| find(&mut parent, i) == i).map(|(_, s)| s).collect()
}

/// Every valid extension site, ordered by reused-vertex count and then
/// lexicographically.
pub fn all_sites(d: &Diagram, spec: &GenSpec) -> Vec<ExtensionSite> {
    let a = d.n_vertices();
    let n = spec.n;
    if d.n_edges() >= spec.max_edges {
        return Vec::new();
    }
    let room = spec.max_vertices.saturating_sub(a);
    let mut min_reuse = n.saturating_sub(room);
    if spec.connected_only && d.n_edges() > 0 {
        min_reuse = min_reuse.max(1);
    }
    let max_reuse = n.min(a);
    if min_reuse > max_reuse {
        return Vec::new();
    }
    let dist = vertex_distances(d);
    // new loop through u and v has size dist(u, v) + 1
    let min_dist = spec.min_girth.map_or(1, |g| g.saturating_sub(1).max(1));
    let mut out = Vec::new();
    let mut on_edge = vec![0usize; d.n_edges()];
    let mut chosen = Vec::new();
    for size in min_reuse..=max_reuse {
        collect_sites(d, n, size, 0, &dist, min_dist, &mut on_edge, &mut chosen, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn collect_sites(
    d: &Diagram,
    n: usize,
    size: usize,
    from: usize,
    dist: &[Vec<usize>],
    min_dist: usize,
    on_edge: &mut [usize],
    chosen: &mut Vec<usize>,
    out: &mut Vec<ExtensionSite>,
) {
    if chosen.len() == size {
        out.push(ExtensionSite { reused: chosen.clone(), fresh: n - size });
        return;
    }
    let need = size - chosen.len();
    for v in from..d.n_vertices() {
        if d.n_vertices() - v < need {
            break;
        }
        if chosen.iter().any(|&u| dist[u][v] < min_dist) {
            continue;
        }
        if d.edges_of(v).iter().any(|&e| on_edge[e] + 1 > n - 2) {
            continue;
        }
        for &e in d.edges_of(v) {
            on_edge[e] += 1;
        }
        chosen.push(v);
        collect_sites(d, n, size, v + 1, dist, min_dist, on_edge, chosen, out);
        chosen.pop();
        for &e in d.edges_of(v) {
            on_edge[e] -= 1;
        }
    }
}

/// Outcome of the canonicity test; carries the child's canonical form when
/// it had to be computed.
pub struct Acceptance {
    pub accepted: bool,
    pub form: Option<CanonicalForm>,
}

/// Whether edge `added` of `child` lies in the major class.
pub fn is_canonical_child(child: &Diagram, added: usize) -> bool {
    check_child(child, added).accepted
}

pub fn check_child(child: &Diagram, added: usize) -> Acceptance {
    let reject = Acceptance { accepted: false, form: None };
    let cut = child.cut_edges();
    if cut[added] {
        return reject;
    }
    let cells = canon::equitable_cells(child);
    let a = child.n_vertices();
    let top = (0..child.n_edges()).filter(|&e| !cut[e]).map(|e| cells[a + e]).max().unwrap();
    if cells[a + added] != top {
        return reject;
    }
    let rivals = (0..child.n_edges()).filter(|&e| !cut[e] && cells[a + e] == top).count();
    if rivals == 1 {
        return Acceptance { accepted: true, form: None };
    }
    let form = canon::canonical_form(child);
    let last = *form.edge_order.iter().rev().find(|&&e| !cut[e]).unwrap();
    let accepted = last == added || same_edge_orbit(child, &form.automorphisms, last, added);
    Acceptance { accepted, form: Some(form) }
}

fn same_edge_orbit(d: &Diagram, generators: &[Vec<usize>], x: usize, y: usize) -> bool {
    let b = d.n_edges();
    let mut parent: Vec<usize> = (0..b).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in generators {
        let ep = CanonicalForm::edge_permutation(d, g);
        for (i, &j) in ep.iter().enumerate() {
            let (r1, r2) = (find(&mut parent, i), find(&mut parent, j));
            if r1 != r2 {
                parent[r1.max(r2)] = r1.min(r2);
            }
        }
    }
    find(&mut parent, x) == find(&mut parent, y)
}

struct Run<'a, F: FnMut(&Diagram)> {
    spec: &'a GenSpec,
    filters: &'a [Arc<dyn Filter>],
    emit: F,
    stats: GenStats,
}

impl<F: FnMut(&Diagram)> Run<'_, F> {
    fn expand(&mut self, d: &Diagram, form: Option<CanonicalForm>) {
        if d.n_edges() >= self.spec.max_edges {
            return;
        }
        let form = form.unwrap_or_else(|| canon::canonical_form(d));
        let a = d.n_vertices();
        for site in extension_orbits(d, &form.automorphisms, self.spec) {
            let Some((child, cform)) = self.admit(d, a, &site) else { continue };
            self.expand(&child, cform);
        }
    }

    /// Builds, tests and filters a child; emits it and returns it when its
    /// subtree should be explored.
    fn admit(&mut self, d: &Diagram, a: usize, site: &ExtensionSite) -> Option<(Diagram, Option<CanonicalForm>)> {
        let child = d.with_edge(site.edge(a)).expect("extension sites give valid edges");
        if !self.spec.can_reach(&child) {
            return None;
        }
        let acc = check_child(&child, child.n_edges() - 1);
        if !acc.accepted {
            return None;
        }
        self.stats.accepted += 1;
        for f in self.filters {
            if let FilterVerdict::PruneSubtree(_) = f.check(&child, self.spec) {
                *self.stats.pruned.entry(f.name().to_string()).or_default() += 1;
                return None;
            }
        }
        if self.spec.emits(&child) {
            *self.stats.emitted.entry((child.n_vertices(), child.n_edges())).or_default() += 1;
            (self.emit)(&child);
        }
        Some((child, acc.form))
    }
}

/// Generates every diagram of `spec` once up to isomorphism, depth first,
/// passing each to `emit`.
pub fn generate<F: FnMut(&Diagram)>(spec: &GenSpec, filters: &[Arc<dyn Filter>], emit: F) -> Result<GenStats, GenError> {
    spec.validate()?;
    let mut run = Run { spec, filters, emit, stats: GenStats::default() };
    let root = Diagram::raw(0, Vec::new()).expect("empty diagram");
    run.expand(&root, None);
    Ok(run.stats)
}

/// Collects all generated diagrams.
pub fn generate_all(spec: &GenSpec, filters: &[Arc<dyn Filter>]) -> Result<Vec<Diagram>, GenError> {
    let mut out = Vec::new();
    generate(spec, filters, |d| out.push(d.clone()))?;
    Ok(out)
}

/// Parallel generation over subtrees. `map` runs on every emitted diagram;
/// its `Some` results are returned in the order a serial run would produce.
pub fn generate_par<T, M>(
    spec: &GenSpec,
    filters: &[Arc<dyn Filter>],
    map: M,
) -> Result<(Vec<T>, GenStats), GenError>
where
    T: Send,
    M: Fn(&Diagram) -> Option<T> + Sync,
{
    generate_fold(spec, filters, Vec::new, |acc: &mut Vec<T>, d| acc.extend(map(d)), |acc, other| acc.extend(other))
}

/// Parallel generation that folds emitted diagrams into one accumulator per
/// subtree, so memory does not grow with the number of diagrams. The
/// accumulators are merged in the order a serial run would visit them.
pub fn generate_fold<A, I, F, G>(
    spec: &GenSpec,
    filters: &[Arc<dyn Filter>],
    init: I,
    fold: F,
    merge: G,
) -> Result<(A, GenStats), GenError>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &Diagram) + Sync,
    G: Fn(&mut A, A),
{
    spec.validate()?;
    // Expand serially to a frontier of subtree roots, keeping emission order.
    enum Item<A> {
        Done(A),
        Subtree(Diagram, Option<CanonicalForm>),
    }
    let split = (spec.max_edges / 2).clamp(1, 4);
    let mut items: Vec<Item<A>> = Vec::new();
    let mut stats = GenStats::default();
    struct Walk<'a, I, F> {
        spec: &'a GenSpec,
        filters: &'a [Arc<dyn Filter>],
        init: &'a I,
        fold: &'a F,
        split: usize,
    }
    impl<A, I: Fn() -> A, F: Fn(&mut A, &Diagram)> Walk<'_, I, F> {
        fn walk(&self, d: &Diagram, form: Option<CanonicalForm>, items: &mut Vec<Item<A>>, stats: &mut GenStats) {
            if d.n_edges() >= self.spec.max_edges {
                return;
            }
            let form = form.unwrap_or_else(|| canon::canonical_form(d));
            let a = d.n_vertices();
            for site in extension_orbits(d, &form.automorphisms, self.spec) {
                let mut acc = None;
                let emit = |x: &Diagram| (self.fold)(acc.get_or_insert_with(self.init), x);
                let mut run = Run { spec: self.spec, filters: self.filters, emit, stats: GenStats::default() };
                let admitted = run.admit(d, a, &site);
                let local = std::mem::take(&mut run.stats);
                drop(run);
                stats.merge(local);
                if let Some(acc) = acc {
                    items.push(Item::Done(acc));
                }
                if let Some((child, cform)) = admitted {
                    if child.n_edges() >= self.split {
                        items.push(Item::Subtree(child, cform));
                    } else {
                        self.walk(&child, cform, items, stats);
                    }
                }
            }
        }
    }
    let root = Diagram::raw(0, Vec::new()).expect("empty diagram");
    Walk { spec, filters, init: &init, fold: &fold, split }.walk(&root, None, &mut items, &mut stats);
    let results: Vec<(A, GenStats)> = items
        .into_par_iter()
        .map(|item| match item {
            Item::Done(acc) => (acc, GenStats::default()),
            Item::Subtree(d, form) => {
                let mut acc = init();
                let mut run = Run { spec, filters, emit: |x: &Diagram| fold(&mut acc, x), stats: GenStats::default() };
                run.expand(&d, form);
                let s = std::mem::take(&mut run.stats);
                drop(run);
                (acc, s)
            }
        })
        .collect();
    let mut all = init();
    for (acc, s) in results {
        merge(&mut all, acc);
        stats.merge(s);
    }
    Ok((all, stats))
}

#[cfg(test)]
mod tests;
