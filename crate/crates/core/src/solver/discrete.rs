//! Exact solutions with coordinates from a finite integer set.
//!
//! Candidate rays are all nonzero tuples over the value set, reduced to a
//! primitive representative (divided by the gcd, first nonzero entry
//! positive). Orthogonality between candidates is precomputed as bitsets,
//! and a backtracking search assigns distinct rays to vertices, always
//! taking next the vertex sharing edges with the most assigned vertices.

use std::collections::BTreeSet;

use num::integer::gcd;

use super::vectors::VectorSystem;
use crate::diagram::Diagram;

type Bits = Vec<u64>;

fn bit(bits: &Bits, i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

/// Scales a nonzero tuple to its primitive representative.
pub fn normalize_ray(v: &[i64]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i64, |g, &x| gcd(g, x));
    if g == 0 {
        return None;
    }
    let lead = *v.iter().find(|&&x| x != 0).unwrap();
    let s = if lead < 0 { -g } else { g };
    Some(v.iter().map(|&x| x / s).collect())
}

/// All primitive rays with coordinates in `values`, sorted.
pub fn candidate_rays(n: usize, values: &[i64]) -> Vec<Vec<i64>> {
    let vals: Vec<i64> = values.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut out = BTreeSet::new();
    let mut cur = vec![0i64; n];
    fn rec(k: usize, vals: &[i64], cur: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
        if k == cur.len() {
            if let Some(r) = normalize_ray(cur) {
                out.insert(r);
            }
            return;
        }
        for &x in vals {
            cur[k] = x;
            rec(k + 1, vals, cur, out);
        }
    }
    rec(0, &vals, &mut cur, &mut out);
    out.into_iter().collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Smallest image of a ray under coordinate permutations, and sign changes
/// too when `signs` is set.
fn orbit_key(r: &[i64], signs: bool) -> Vec<i64> {
    let n = r.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<i64>> = None;
    loop {
        let sign_masks = if signs { 1u32 << n } else { 1 };
        for mask in 0..sign_masks {
            let img: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -r[perm[i]] } else { r[perm[i]] }).collect();
            let img = normalize_ray(&img).unwrap();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
        // next permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    best.unwrap()
}

struct Search<'a> {
    d: &'a Diagram,
    rays: Vec<Vec<i64>>,
    orth: Vec<Bits>,
    assigned: Vec<Option<usize>>,
    used: Bits,
    first_choices: Bits,
    nodes: u64,
}

impl Search<'_> {
    fn domain(&self, v: usize) -> Bits {
        let words = self.used.len();
        let mut dom: Bits = vec![u64::MAX; words];
        for &e in self.d.edges_of(v) {
            for &u in self.d.edge(e) {
                if let Some(c) = self.assigned[u].filter(|_| u != v) {
                    for (w, o) in dom.iter_mut().zip(&self.orth[c]) {
                        *w &= o;
                    }
                }
            }
        }
        for (w, u) in dom.iter_mut().zip(&self.used) {
            *w &= !u;
        }
        let extra = words * 64 - self.rays.len();
        if extra > 0 {
            dom[words - 1] &= u64::MAX >> extra;
        }
        dom
    }

    /// The unassigned vertex sharing edges with the most assigned ones;
    /// ties to the smaller domain, then the lower id.
    fn next_vertex(&self) -> Option<(usize, Bits)> {
        let mut best: Option<(usize, usize, u32, Bits)> = None;
        for v in 0..self.d.n_vertices() {
            if self.assigned[v].is_some() {
                continue;
            }
            let coupling = self
                .d
                .edges_of(v)
                .iter()
                .flat_map(|&e| self.d.edge(e))
                .filter(|&&u| u != v && self.assigned[u].is_some())
                .count();
            let dom = self.domain(v);
            let size: u32 = dom.iter().map(|w| w.count_ones()).sum();
            let better = match &best {
                None => true,
                Some((_, bc, bs, _)) => coupling > *bc || (coupling == *bc && size < *bs),
            };
            if better {
                best = Some((v, coupling, size, dom));
            }
        }
        best.map(|(v, _, _, dom)| (v, dom))
    }

    fn run(&mut self) -> bool {
        self.nodes += 1;
        let Some((v, mut dom)) = self.next_vertex() else { return true };
        if self.assigned.iter().all(Option::is_none) {
            for (w, f) in dom.iter_mut().zip(&self.first_choices) {
                *w &= f;
            }
        }
        for c in 0..self.rays.len() {
            if !bit(&dom, c) {
                continue;
            }
            self.assigned[v] = Some(c);
            set_bit(&mut self.used, c);
            if self.run() {
                return true;
            }
            self.used[c / 64] &= !(1 << (c % 64));
            self.assigned[v] = None;
        }
        false
    }
}

/// Finds distinct rays over `values` for all vertices of `d` with every
/// edge pairwise orthogonal.
pub fn discrete_check(d: &Diagram, n: usize, values: &[i64]) -> Option<VectorSystem> {
    let rays = candidate_rays(n, values);
    if rays.len() < d.n_vertices() {
        return None;
    }
    let words = rays.len().div_ceil(64);
    let mut orth = vec![vec![0u64; words]; rays.len()];
    for i in 0..rays.len() {
        for j in 0..rays.len() {
            if i != j && dot(&rays[i], &rays[j]) == 0 {
                set_bit(&mut orth[i], j);
            }
        }
    }
    // signed coordinate permutations preserve a sign-symmetric value set,
    // so the first vertex needs one ray per orbit
    let set: BTreeSet<i64> = values.iter().copied().collect();
    let signs = set.iter().all(|x| set.contains(&-x));
    let mut first_choices = vec![0u64; words];
    for (i, r) in rays.iter().enumerate() {
        if orbit_key(r, signs) == *r {
            set_bit(&mut first_choices, i);
        }
    }
    let mut s = Search {
        d,
        rays,
        orth,
        assigned: vec![None; d.n_vertices()],
        used: vec![0; words],
        first_choices,
        nodes: 0,
    };
    if !s.run() {
        return None;
    }
    let vectors = s.assigned.iter().map(|c| s.rays[c.unwrap()].clone()).collect();
    Some(VectorSystem::Exact(vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_mmp;

    #[test]
    fn rays_are_primitive_and_unique() {
        let r = candidate_rays(4, &[-1, 0, 1]);
        assert_eq!(r.len(), 40);
        assert_eq!(normalize_ray(&[2, 0, 2, 0]), Some(vec![1, 0, 1, 0]));
        assert_eq!(normalize_ray(&[0, -3, 6]), Some(vec![0, 1, -2]));
        assert_eq!(candidate_rays(3, &[0, 1]).len(), 7);
    }

    #[test]
    fn single_triple_gets_a_basis() {
        let d = parse_mmp("123").unwrap();
        let VectorSystem::Exact(v) = discrete_check(&d, 3, &[0, 1]).unwrap() else { panic!() };
        let mut sorted = v.clone();
        sorted.sort();
        assert_eq!(sorted, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn orbit_keys() {
        assert_eq!(orbit_key(&[0, 1, 1], true), vec![0, 1, -1]);
        assert_eq!(orbit_key(&[1, 0, 0], false), vec![0, 0, 1]);
    }
}
