//! Sub-diagram containment.

use crate::diagram::Diagram;

/// Finds an injective vertex map from `sub` into `host` sending every edge
/// of `sub` onto an edge of `host`. `map[v]` is the host vertex of sub
/// vertex `v`.
pub fn find_embedding(host: &Diagram, sub: &Diagram) -> Option<Vec<usize>> {
    if sub.n_vertices() > host.n_vertices() || sub.n_edges() > host.n_edges() {
        return None;
    }
    let order = edge_order(sub);
    let mut host_sets: Vec<Vec<usize>> = host.edges().to_vec();
    for e in &mut host_sets {
        e.sort_unstable();
    }
    let mut st = State {
        host,
        sub,
        order,
        map: vec![usize::MAX; sub.n_vertices()],
        used: vec![false; host.n_vertices()],
        host_sets,
        placed: Vec::new(),
    };
    if st.place(0) {
        // vertices on no sub edge cannot occur in a valid diagram, but raw
        // hypergraphs may have them
        let mut free = (0..host.n_vertices()).filter(|&h| !st.used[h]);
        for v in 0..sub.n_vertices() {
            if st.map[v] == usize::MAX {
                st.map[v] = free.next()?;
            }
        }
        Some(st.map)
    } else {
        None
    }
}

pub fn contains_subdiagram(host: &Diagram, sub: &Diagram) -> bool {
    find_embedding(host, sub).is_some()
}

/// Sub edges ordered so each one meets the earlier ones as much as possible.
fn edge_order(sub: &Diagram) -> Vec<usize> {
    let b = sub.n_edges();
    let mut placed = vec![false; b];
    let mut covered = vec![false; sub.n_vertices()];
    let mut order = Vec::with_capacity(b);
    let weight = |e: usize| -> usize { sub.edge(e).iter().map(|&v| sub.degree(v)).sum() };
    for _ in 0..b {
        let next = (0..b)
            .filter(|&e| !placed[e])
            .max_by(|&x, &y| {
                let cx = sub.edge(x).iter().filter(|&&v| covered[v]).count();
                let cy = sub.edge(y).iter().filter(|&&v| covered[v]).count();
                cx.cmp(&cy).then(weight(x).cmp(&weight(y))).then(y.cmp(&x))
            })
            .unwrap();
        placed[next] = true;
        for &v in sub.edge(next) {
            covered[v] = true;
        }
        order.push(next);
    }
    order
}

struct State<'a> {
    host: &'a Diagram,
    sub: &'a Diagram,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    host_sets: Vec<Vec<usize>>,
    /// Placed edges as (sub edge, host edge); private vertices of the sub
    /// edge are matched into the host edge once everything is placed.
    placed: Vec<(usize, usize)>,
}

impl State<'_> {
    fn is_private(&self, v: usize) -> bool {
        self.sub.degree(v) == 1
    }

    fn place(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return self.match_private();
        }
        let e = self.order[k];
        let sub_edge: Vec<usize> = self.sub.edge(e).to_vec();
        let anchor = sub_edge.iter().copied().find(|&v| self.map[v] != usize::MAX);
        let candidates: Vec<usize> = match anchor {
            Some(v) => self.host.edges_of(self.map[v]).to_vec(),
            None => (0..self.host.n_edges()).collect(),
        };
        let mut free_sub: Vec<usize> =
            sub_edge.iter().copied().filter(|&v| self.map[v] == usize::MAX && !self.is_private(v)).collect();
        free_sub.sort_by_key(|&v| std::cmp::Reverse(self.sub.degree(v)));
        let n_private = sub_edge.iter().filter(|&&v| self.is_private(v)).count();
        for he in candidates {
            if self.host.edge(he).len() != sub_edge.len() || self.placed.iter().any(|&(_, h)| h == he) {
                continue;
            }
            let hset = &self.host_sets[he];
            if !sub_edge.iter().all(|&v| self.map[v] == usize::MAX || hset.binary_search(&self.map[v]).is_ok()) {
                continue;
            }
            let free_host: Vec<usize> = hset.iter().copied().filter(|&h| !self.used[h]).collect();
            if free_host.len() < free_sub.len() + n_private {
                continue;
            }
            self.placed.push((e, he));
            let ok = self.assign(&free_sub, &free_host, 0, k);
            self.placed.pop();
            if ok {
                return true;
            }
        }
        false
    }

    fn assign(&mut self, free_sub: &[usize], free_host: &[usize], i: usize, k: usize) -> bool {
        if i == free_sub.len() {
            return self.place(k + 1);
        }
        let v = free_sub[i];
        for &h in free_host {
            if self.used[h] || self.host.degree(h) < self.sub.degree(v) {
                continue;
            }
            self.map[v] = h;
            self.used[h] = true;
            let ok = self.assign(free_sub, free_host, i + 1, k);
            if ok {
                return true;
            }
            self.map[v] = usize::MAX;
            self.used[h] = false;
        }
        false
    }

    /// Bipartite matching of private sub vertices onto unused host vertices
    /// of their host edges.
    fn match_private(&mut self) -> bool {
        let slots: Vec<(usize, usize)> = self
            .placed
            .iter()
            .flat_map(|&(e, he)| {
                self.sub.edge(e).iter().copied().filter(|&v| self.sub.degree(v) == 1).map(move |v| (v, he))
            })
            .collect();
        let mut owner: Vec<usize> = vec![usize::MAX; self.host.n_vertices()];
        for s in 0..slots.len() {
            let mut seen = vec![false; self.host.n_vertices()];
            if !self.augment(s, &slots, &mut owner, &mut seen) {
                return false;
            }
        }
        for (h, &s) in owner.iter().enumerate() {
            if s != usize::MAX {
                self.map[slots[s].0] = h;
                self.used[h] = true;
            }
        }
        true
    }

    fn augment(&self, s: usize, slots: &[(usize, usize)], owner: &mut [usize], seen: &mut [bool]) -> bool {
        for &h in &self.host_sets[slots[s].1] {
            if self.used[h] || seen[h] {
                continue;
            }
            seen[h] = true;
            if owner[h] == usize::MAX || self.augment(owner[h], slots, owner, seen) {
                owner[h] = s;
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_mmp;

    fn check(host: &Diagram, sub: &Diagram, map: &[usize]) {
        let mut hs: Vec<Vec<usize>> = host.edges().iter().map(|e| { let mut e = e.clone(); e.sort(); e }).collect();
        hs.sort();
        for e in sub.edges() {
            let mut img: Vec<usize> = e.iter().map(|&v| map[v]).collect();
            img.sort();
            assert!(hs.binary_search(&img).is_ok());
        }
        let mut m = map.to_vec();
        m.sort();
        m.dedup();
        assert_eq!(m.len(), map.len());
    }

    #[test]
    fn peres_19_contains_cabello_18() {
        let host = parse_mmp("1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH,678J").unwrap();
        let sub = parse_mmp("1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH").unwrap();
        let map = find_embedding(&host, &sub).unwrap();
        check(&host, &sub, &map);
        assert!(!contains_subdiagram(&sub, &host));
    }

    #[test]
    fn self_containment_and_structure() {
        let d = parse_mmp("123,345,561,275,476").unwrap();
        assert!(contains_subdiagram(&d, &d));
        let tri = parse_mmp("123,345,561").unwrap();
        assert!(contains_subdiagram(&d, &tri));
        let chain = parse_mmp("123,345,567,789").unwrap();
        assert!(!contains_subdiagram(&d, &chain));
    }

    #[test]
    fn private_vertices_need_room() {
        // a 4-chain needs 9 distinct vertices; the 7-5 has only 7
        let host = parse_mmp("123,345,561,275,476").unwrap();
        let sub = parse_mmp("123,456,789").unwrap();
        assert!(!contains_subdiagram(&host, &sub));
    }
}
