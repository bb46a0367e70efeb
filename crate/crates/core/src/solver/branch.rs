//! Interval branch-and-prune over the unknown coordinates.
//!
//! Boxes are narrowed by forward-backward contraction on each constraint
//! (unit norm, orthogonality, the signed-cross-product identity of an
//! orthonormal edge, the normalized cross product of any n − 1 vectors a
//! vertex is orthogonal to, and a separation margin between vertices that
//! share no edge). A box is discarded once some constraint cannot hold
//! anywhere in it.
//!
//! Most coordinates are functions of a few others: placing vertices one at
//! a time, a vertex orthogonal to r placed vectors has n − 1 − r degrees of
//! freedom. Those parameter coordinates are bisected first, so the search
//! tree grows with the number of parameters rather than of unknowns; any
//! other coordinate is bisected once it is much wider than every parameter
//! (typically a sign left open by a square root).

use super::equations::EquationSystem;
use super::interval::Interval;
use super::local;

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalConfig {
    /// A box narrower than this is reported as a feasible candidate.
    pub eps: f64,
    /// Maximum number of bisections; `None` for no limit.
    pub budget: Option<u64>,
    /// Vertices on no common edge must satisfy `1 - (u.v)^2 >= margin`,
    /// i.e. their rays are separated by at least `asin(sqrt(margin))`.
    pub margin: f64,
    /// Whether to use the cross-product identity of each edge (n = 3, 4).
    pub cross_products: bool,
    /// Random restarts of the least-squares search tried before bisecting;
    /// a point it finds still has to survive contraction of its eps-box.
    pub local_starts: usize,
    /// Seed of those restarts.
    pub seed: u64,
}

impl Default for IntervalConfig {
    fn default() -> Self {
        IntervalConfig { eps: 1e-6, budget: None, margin: 1e-6, cross_products: true, local_starts: 8, seed: 0 }
    }
}

/// Ranges for every coordinate of every vertex; fixed coordinates are
/// degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalBox {
    pub n: usize,
    pub ranges: Vec<Interval>,
}

impl IntervalBox {
    pub fn get(&self, v: usize, k: usize) -> Interval {
        self.ranges[v * self.n + k]
    }

    pub fn width(&self) -> f64 {
        self.ranges.iter().map(Interval::width).fold(0.0, f64::max)
    }

    pub fn midpoint(&self) -> Vec<Vec<f64>> {
        self.ranges.chunks(self.n).map(|c| c.iter().map(Interval::mid).collect()).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// Every box was eliminated.
    Infeasible,
    /// A box narrower than `eps` on which no constraint could be refuted.
    FeasibleCandidate { found: IntervalBox, residual: f64 },
    /// The bisection budget ran out.
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub boxes: u64,
    pub bisections: u64,
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub stats: SolveStats,
}

impl SolveOutcome {
    pub fn is_infeasible(&self) -> bool {
        self.verdict == Verdict::Infeasible
    }
}

struct Model {
    n: usize,
    units: Vec<(usize, Vec<usize>)>,
    orth: Vec<(usize, usize, Vec<usize>)>,
    /// `(target, others)`: the target is plus or minus the generalized cross
    /// product of the others.
    cross: Vec<(usize, Vec<usize>)>,
    /// `(target, support)`: the target is orthogonal to the n − 1 support
    /// vertices, which do not form an edge with it.
    spans: Vec<(usize, Vec<usize>)>,
    apart: Vec<(usize, usize, Vec<usize>)>,
    apart_bound: f64,
    /// Parameter coordinates of vertices on several edges.
    params: Vec<usize>,
    /// Remaining free coordinates of vertices on several edges.
    dependent: Vec<usize>,
    /// Free coordinates of vertices on a single edge.
    loose: Vec<usize>,
}

/// Cap on span constraints per vertex.
const SPANS_PER_VERTEX: usize = 48;

fn subsets(items: &[usize], k: usize, out: &mut Vec<Vec<usize>>, limit: usize) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out, limit);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), out, limit);
}

enum Empty {
    Yes,
}

type Revise = Result<bool, Empty>;

fn shrink(x: &mut Interval, to: Option<Interval>) -> Revise {
    let to = to.ok_or(Empty::Yes)?;
    let old = x.width();
    *x = to;
    Ok(to.width() < old * 0.95)
}

impl Model {
    fn new(sys: &EquationSystem, cfg: &IntervalConfig) -> (Model, IntervalBox, Vec<bool>) {
        let n = sys.n;
        let a = sys.n_vertices;
        let mut ranges = vec![Interval::new(-1.0, 1.0); a * n];
        let mut free = vec![false; a * n];
        let apart_bound = (1.0 - cfg.margin).max(0.0).sqrt();
        for v in 0..a {
            for k in 0..n {
                let i = v * n + k;
                if let Some(x) = sys.value(v, k) {
                    ranges[i] = Interval::point(x);
                    continue;
                }
                free[i] = true;
            }
        }
        let shares: Vec<Vec<bool>> = {
            let mut s = vec![vec![false; a]; a];
            for &(u, v) in &sys.orthogonal_pairs {
                s[u][v] = true;
                s[v][u] = true;
            }
            s
        };
        let open = |v: usize| -> Vec<usize> { (0..n).filter(|&k| sys.value(v, k) != Some(0.0)).collect() };
        let units = (0..a).filter(|&v| !sys.is_basis(v)).map(|v| (v, open(v))).collect();
        let orth = sys
            .orthogonal_pairs
            .iter()
            .filter(|&&(u, v)| !(sys.is_basis(u) && sys.is_basis(v)))
            .map(|&(u, v)| (u, v, (0..n).filter(|&k| sys.value(u, k) != Some(0.0) && sys.value(v, k) != Some(0.0)).collect()))
            .collect();
        let mut cross = Vec::new();
        if cfg.cross_products && (n == 3 || n == 4) {
            for e in &sys.edges {
                for (r, &t) in e.iter().enumerate() {
                    if sys.is_basis(t) {
                        continue;
                    }
                    let others: Vec<usize> = e.iter().enumerate().filter(|&(j, _)| j != r).map(|(_, &u)| u).collect();
                    cross.push((t, others));
                }
            }
        }
        let mut apart = Vec::new();
        for u in 0..a {
            for v in u + 1..a {
                if shares[u][v] || (sys.is_basis(u) && sys.is_basis(v)) {
                    continue;
                }
                let common: Vec<usize> =
                    (0..n).filter(|&k| sys.value(u, k) != Some(0.0) && sys.value(v, k) != Some(0.0)).collect();
                if common.is_empty() {
                    continue;
                }
                apart.push((u, v, common));
            }
        }
        // a basis vertex apart from v bounds one coordinate of v directly
        for v in 0..a {
            if sys.is_basis(v) {
                continue;
            }
            for &b in &sys.basis {
                if !shares[v][b] {
                    let k = sys.basis_axis(b).unwrap();
                    let i = v * n + k;
                    if free[i] {
                        ranges[i] = ranges[i].intersect(&Interval::new(-apart_bound, apart_bound)).unwrap();
                    }
                }
            }
        }
        let mut degree = vec![0usize; a];
        for e in &sys.edges {
            for &v in e {
                degree[v] += 1;
            }
        }
        let neighbours: Vec<Vec<usize>> = (0..a).map(|v| (0..a).filter(|&u| shares[v][u]).collect()).collect();
        let mut spans = Vec::new();
        if cfg.cross_products && (n == 3 || n == 4) {
            for t in (0..a).filter(|&t| !sys.is_basis(t)) {
                let mut sets = Vec::new();
                subsets(&neighbours[t], n - 1, &mut sets, usize::MAX);
                // supports drawn from fewer edges are better conditioned
                let spread = |s: &Vec<usize>| -> usize {
                    sys.edges.iter().filter(|e| e.contains(&t) && s.iter().any(|u| e.contains(u))).count()
                };
                sets.retain(|s| !sys.edges.iter().any(|e| e.contains(&t) && s.iter().all(|u| e.contains(u))));
                sets.sort_by_key(|s| (spread(s), s.clone()));
                sets.truncate(SPANS_PER_VERTEX);
                spans.extend(sets.into_iter().map(|s| (t, s)));
            }
        }
        let params = parameter_coords(sys, &neighbours, &free);
        // a flipped vector is the same ray: vertices carrying parameters fix
        // the sign of their first free coordinate, the others start
        // symmetric and fix a sign once one is forced or bisected
        let mut signed: Vec<bool> = (0..a).map(|v| sys.is_basis(v)).collect();
        for &i in &params {
            let v = i / n;
            if !signed[v] {
                signed[v] = true;
                let k = (0..n).find(|&k| free[v * n + k]).unwrap();
                ranges[v * n + k] = ranges[v * n + k].intersect(&Interval::new(0.0, 1.0)).unwrap();
            }
        }
        let (mut dependent, mut loose) = (Vec::new(), Vec::new());
        for (i, &f) in free.iter().enumerate() {
            if f && !params.contains(&i) {
                if degree[i / n] > 1 { dependent.push(i) } else { loose.push(i) }
            }
        }
        let (params, loose_params): (Vec<usize>, Vec<usize>) = params.into_iter().partition(|&i| degree[i / n] > 1);
        loose.extend(loose_params);
        let model = Model { n, units, orth, cross, spans, apart, apart_bound, params, dependent, loose };
        (model, IntervalBox { n, ranges }, signed)
    }

    fn revise_unit(&self, b: &mut [Interval], v: usize, coords: &[usize]) -> Revise {
        let n = self.n;
        let sq: Vec<Interval> = coords.iter().map(|&k| b[v * n + k].sqr()).collect();
        let total = sq.iter().fold(Interval::point(0.0), |acc, s| acc.add(s));
        if !total.contains(1.0) {
            return Err(Empty::Yes);
        }
        let mut changed = false;
        for (j, &k) in coords.iter().enumerate() {
            let rest = sq.iter().enumerate().filter(|&(i, _)| i != j).fold(Interval::point(0.0), |acc, (_, s)| acc.add(s));
            let target = Interval::point(1.0).sub(&rest);
            let i = v * n + k;
            let cur = b[i];
            changed |= shrink(&mut b[i], Interval::solve_square(&target, &cur))?;
        }
        Ok(changed)
    }

    /// Contracts `sum_k b[u][k] b[v][k]` into `target`.
    fn revise_dot(&self, b: &mut [Interval], u: usize, v: usize, coords: &[usize], target: Interval) -> Revise {
        let n = self.n;
        let prods: Vec<Interval> = coords.iter().map(|&k| b[u * n + k].mul(&b[v * n + k])).collect();
        let total = prods.iter().fold(Interval::point(0.0), |acc, p| acc.add(p));
        if total.intersect(&target).is_none() {
            return Err(Empty::Yes);
        }
        let mut changed = false;
        for (j, &k) in coords.iter().enumerate() {
            let rest = prods.iter().enumerate().filter(|&(i, _)| i != j).fold(Interval::point(0.0), |acc, (_, p)| acc.add(p));
            let want = target.sub(&rest).intersect(&prods[j]).ok_or(Empty::Yes)?;
            let (iu, iv) = (u * n + k, v * n + k);
            let (xu, xv) = (b[iu], b[iv]);
            changed |= shrink(&mut b[iu], Interval::solve_product(&want, &xv, &xu))?;
            let nu = b[iu];
            changed |= shrink(&mut b[iv], Interval::solve_product(&want, &nu, &xv))?;
        }
        Ok(changed)
    }

    fn cross_vector(&self, b: &[Interval], others: &[usize]) -> Vec<Interval> {
        let n = self.n;
        let g = |v: usize, k: usize| b[v * n + k];
        (0..n)
            .map(|c| {
                let cols: Vec<usize> = (0..n).filter(|&k| k != c).collect();
                let det = match others.len() {
                    2 => {
                        let (p, q) = (others[0], others[1]);
                        g(p, cols[0]).mul(&g(q, cols[1])).sub(&g(p, cols[1]).mul(&g(q, cols[0])))
                    }
                    3 => {
                        let (p, q, r) = (others[0], others[1], others[2]);
                        let m = |i: usize, j: usize| g(q, cols[i]).mul(&g(r, cols[j])).sub(&g(q, cols[j]).mul(&g(r, cols[i])));
                        g(p, cols[0]).mul(&m(1, 2)).sub(&g(p, cols[1]).mul(&m(0, 2))).add(&g(p, cols[2]).mul(&m(0, 1)))
                    }
                    _ => unreachable!("cross products only for n = 3, 4"),
                };
                if c % 2 == 1 { det.neg() } else { det }
            })
            .collect()
    }

    fn revise_cross(&self, b: &mut [Interval], signed: &mut [bool], t: usize, others: &[usize]) -> Revise {
        let cv = self.cross_vector(b, others);
        self.fit_direction(b, signed, t, others, &cv)
    }

    /// `t = +-c / |c|` for the cross product `c` of the support, when the
    /// support is independent everywhere in the box.
    fn revise_span(&self, b: &mut [Interval], signed: &mut [bool], t: usize, support: &[usize]) -> Revise {
        let cv = self.cross_vector(b, support);
        let norm2 = cv.iter().fold(Interval::point(0.0), |acc, c| acc.add(&c.sqr()));
        if norm2.lo <= 0.0 {
            return Ok(false);
        }
        let Some(norm) = norm2.sqrt() else { return Ok(false) };
        let unit: Vec<Interval> = cv.iter().map(|c| c.div(&norm)).collect();
        self.fit_direction(b, signed, t, support, &unit)
    }

    /// Narrows `t` to `+dir` or `-dir`, where `dir` is a function of
    /// `support`. Solutions are closed under negating an unsigned `t`, so
    /// once `dir` depends only on signed vertices and one of its components
    /// has a definite sign, the `+` representative can be kept alone.
    fn fit_direction(&self, b: &mut [Interval], signed: &mut [bool], t: usize, support: &[usize], dir: &[Interval]) -> Revise {
        let n = self.n;
        let fit = |sign: f64| -> Option<Vec<Interval>> {
            (0..n)
                .map(|k| {
                    let c = if sign > 0.0 { dir[k] } else { dir[k].neg() };
                    b[t * n + k].intersect(&c)
                })
                .collect()
        };
        let merged: Vec<Interval> = if !signed[t] && support.iter().all(|&u| signed[u]) && dir.iter().any(|c| !c.contains_zero()) {
            signed[t] = true;
            fit(1.0).ok_or(Empty::Yes)?
        } else {
            match (fit(1.0), fit(-1.0)) {
                (None, None) => return Err(Empty::Yes),
                (Some(p), None) => p,
                (None, Some(m)) => m,
                (Some(p), Some(m)) => p.iter().zip(&m).map(|(x, y)| x.hull(y)).collect(),
            }
        };
        let mut changed = false;
        for (k, r) in merged.into_iter().enumerate() {
            changed |= shrink(&mut b[t * n + k], Some(r))?;
        }
        Ok(changed)
    }

    /// Keeps the box of every unsigned vertex symmetric: its solutions come
    /// in pairs `w, -w`, so `r` and `-r` both enclose them.
    fn symmetrize(&self, b: &mut [Interval], signed: &[bool]) -> Revise {
        for (v, _) in signed.iter().enumerate().filter(|(_, &s)| !s) {
            for k in 0..self.n {
                let r = b[v * self.n + k];
                b[v * self.n + k] = r.intersect(&r.neg()).ok_or(Empty::Yes)?;
            }
        }
        Ok(false)
    }

    /// Contracts to a fixpoint (up to a pass limit); `false` if empty.
    fn contract(&self, b: &mut [Interval], signed: &mut [bool]) -> bool {
        let bound = Interval::new(-self.apart_bound, self.apart_bound);
        for _ in 0..50 {
            let mut changed = false;
            let step = (|| -> Revise {
                for (v, coords) in &self.units {
                    changed |= self.revise_unit(b, *v, coords)?;
                }
                for (u, v, coords) in &self.orth {
                    changed |= self.revise_dot(b, *u, *v, coords, Interval::point(0.0))?;
                }
                for (t, others) in &self.cross {
                    changed |= self.revise_cross(b, signed, *t, others)?;
                }
                for (t, support) in &self.spans {
                    changed |= self.revise_span(b, signed, *t, support)?;
                }
                for (u, v, coords) in &self.apart {
                    changed |= self.revise_dot(b, *u, *v, coords, bound)?;
                }
                self.symmetrize(b, signed)?;
                Ok(changed)
            })();
            match step {
                Err(Empty::Yes) => return false,
                Ok(false) => return true,
                Ok(true) => {}
            }
        }
        true
    }

    fn pick(&self, b: &[Interval], eps: f64) -> Option<usize> {
        let widest = |group: &[usize]| -> Option<(usize, f64)> {
            let mut best: Option<(usize, f64)> = None;
            for &i in group {
                let w = b[i].width();
                if w >= eps && best.map_or(true, |(_, bw)| w > bw) {
                    best = Some((i, w));
                }
            }
            best
        };
        match (widest(&self.params), widest(&self.dependent)) {
            (Some((p, wp)), Some((d, wd))) => Some(if wd > 8.0 * wp { d } else { p }),
            (Some((p, _)), None) => Some(p),
            (None, Some((d, _))) => Some(d),
            (None, None) => widest(&self.loose).map(|(i, _)| i),
        }
    }

    /// A box of width below eps around a least-squares root that survives
    /// contraction.
    fn local_candidate(&self, root: &IntervalBox, cfg: &IntervalConfig) -> Option<IntervalBox> {
        if cfg.local_starts == 0 {
            return None;
        }
        let free: Vec<usize> = (0..root.ranges.len()).filter(|&i| !root.ranges[i].is_point()).collect();
        let fixed: Vec<f64> = root.ranges.iter().map(|r| if r.is_point() { r.lo } else { 0.0 }).collect();
        let problem = local::Residuals { n: self.n, free: &free, units: &self.units, orth: &self.orth };
        let boxed = |x: &[f64]| -> Option<Vec<Interval>> {
            let mut b = root.ranges.clone();
            for &i in &free {
                b[i] = Interval::new(x[i] - cfg.eps / 4.0, x[i] + cfg.eps / 4.0);
            }
            let mut signed = vec![true; b.len() / self.n];
            self.contract(&mut b, &mut signed).then_some(b)
        };
        let x = problem.search(&fixed, cfg.local_starts, cfg.seed, |x| boxed(x).is_some())?;
        Some(IntervalBox { n: self.n, ranges: boxed(&x)? })
    }

    fn residual(&self, b: &IntervalBox) -> f64 {
        let m = b.midpoint();
        let mut worst: f64 = 0.0;
        for (v, _) in &self.units {
            worst = worst.max((m[*v].iter().map(|x| x * x).sum::<f64>() - 1.0).abs());
        }
        for (u, v, _) in &self.orth {
            worst = worst.max(m[*u].iter().zip(&m[*v]).map(|(x, y)| x * y).sum::<f64>().abs());
        }
        worst
    }
}

/// Places vertices greedily, each time the one orthogonal to the most placed
/// vertices, and returns `n - 1 - r` free coordinates of each vertex placed
/// next to `r < n - 1` earlier ones, avoiding its sign-fixed coordinate.
fn parameter_coords(sys: &EquationSystem, neighbours: &[Vec<usize>], free: &[bool]) -> Vec<usize> {
    let n = sys.n;
    let a = sys.n_vertices;
    let mut placed = vec![false; a];
    for &v in &sys.basis {
        placed[v] = true;
    }
    let mut params = Vec::new();
    for _ in 0..a {
        let score = |placed: &[bool], v: usize| -> (usize, usize) {
            let r = neighbours[v].iter().filter(|&&u| placed[u]).count();
            (r.min(n - 1), neighbours[v].len())
        };
        let Some(v) = (0..a).filter(|&v| !placed[v]).max_by_key(|&v| (score(&placed, v), std::cmp::Reverse(v))) else {
            break;
        };
        let dof = n - 1 - score(&placed, v).0;
        placed[v] = true;
        // the sign-fixed first free coordinate is then a nonnegative root
        let open: Vec<usize> = (0..n).map(|k| v * n + k).filter(|&i| free[i]).collect();
        let skip = usize::from(open.len() > dof);
        params.extend(open.iter().skip(skip).take(dof));
    }
    params
}

/// Branch-and-prune on the equations of `sys`, without case splits.
pub fn branch_and_prune(sys: &EquationSystem, cfg: &IntervalConfig) -> SolveOutcome {
    let (model, root, signed) = Model::new(sys, cfg);
    let mut stats = SolveStats::default();
    if let Some(found) = model.local_candidate(&root, cfg) {
        stats.boxes = 1;
        let residual = model.residual(&found);
        return SolveOutcome { verdict: Verdict::FeasibleCandidate { found, residual }, stats };
    }
    let mut stack = vec![(root.ranges, signed, 0usize)];
    while let Some((mut ranges, mut signed, depth)) = stack.pop() {
        stats.boxes += 1;
        stats.max_depth = stats.max_depth.max(depth);
        if !model.contract(&mut ranges, &mut signed) {
            continue;
        }
        let Some(i) = model.pick(&ranges, cfg.eps) else {
            let found = IntervalBox { n: model.n, ranges };
            let residual = model.residual(&found);
            return SolveOutcome { verdict: Verdict::FeasibleCandidate { found, residual }, stats };
        };
        if cfg.budget.is_some_and(|b| stats.bisections >= b) {
            return SolveOutcome { verdict: Verdict::Undetermined, stats };
        }
        stats.bisections += 1;
        let v = i / model.n;
        if !signed[v] {
            // the box is symmetric in v, so the lower half mirrors the upper
            signed[v] = true;
            ranges[i] = Interval::new(0.0, ranges[i].hi);
            stack.push((ranges, signed, depth + 1));
            continue;
        }
        let (lo, hi) = ranges[i].bisect();
        let mut right = ranges.clone();
        right[i] = hi;
        ranges[i] = lo;
        stack.push((right, signed.clone(), depth + 1));
        stack.push((ranges, signed, depth + 1));
    }
    SolveOutcome { verdict: Verdict::Infeasible, stats }
}
