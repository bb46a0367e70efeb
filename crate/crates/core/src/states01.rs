//! Dispersion-free 0-1 states.
//!
//! A 0-1 state puts exactly one 1 on every edge. The search assigns vertices
//! one at a time, trying 0 before 1, and propagates to a fixpoint after every
//! decision: a 1 forces the rest of its edges to 0, and an edge left with a
//! single open vertex and no 1 forces that vertex to 1.

use crate::diagram::Diagram;

pub const UNSET: u8 = 2;

/// Vertex values: 0, 1 or [`UNSET`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment01 {
    pub values: Vec<u8>,
}

impl Assignment01 {
    pub fn is_total(&self) -> bool {
        self.values.iter().all(|&x| x != UNSET)
    }

    /// Whether this is a total assignment with exactly one 1 per edge.
    pub fn is_state_of(&self, d: &Diagram) -> bool {
        self.is_total()
            && d.edges().iter().all(|e| e.iter().filter(|&&v| self.values[v] == 1).count() == 1)
    }

    /// The values as a 0/1 string in vertex order.
    pub fn to_bits(&self) -> String {
        self.values
            .iter()
            .map(|&x| match x {
                0 => '0',
                1 => '1',
                _ => '-',
            })
            .collect()
    }
}

struct Search<'a> {
    d: &'a Diagram,
    value: Vec<u8>,
    ones: Vec<u32>,
    open: Vec<u32>,
    trail: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(d: &'a Diagram) -> Self {
        Search {
            d,
            value: vec![UNSET; d.n_vertices()],
            ones: vec![0; d.n_edges()],
            open: d.edges().iter().map(|e| e.len() as u32).collect(),
            trail: Vec::new(),
        }
    }

    /// Sets `v := x` and propagates. Returns false on contradiction; the
    /// trail records everything set so it can be undone either way.
    fn set(&mut self, v: usize, x: u8) -> bool {
        let mut queue = vec![(v, x)];
        while let Some((v, x)) = queue.pop() {
            match self.value[v] {
                UNSET => {}
                cur if cur == x => continue,
                _ => return false,
            }
            self.value[v] = x;
            self.trail.push(v);
            for &e in self.d.edges_of(v) {
                self.open[e] -= 1;
                if x == 1 {
                    self.ones[e] += 1;
                }
            }
            for &e in self.d.edges_of(v) {
                if x == 1 {
                    if self.ones[e] > 1 {
                        return false;
                    }
                    for &u in self.d.edge(e) {
                        if self.value[u] == UNSET {
                            queue.push((u, 0));
                        }
                    }
                } else if self.ones[e] == 0 {
                    match self.open[e] {
                        0 => return false,
                        1 => {
                            let u = *self.d.edge(e).iter().find(|&&u| self.value[u] == UNSET).unwrap();
                            queue.push((u, 1));
                        }
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            let x = self.value[v];
            self.value[v] = UNSET;
            for &e in self.d.edges_of(v) {
                self.open[e] += 1;
                if x == 1 {
                    self.ones[e] -= 1;
                }
            }
        }
    }

    /// Next decision vertex: the unset vertex on the most edges still
    /// lacking a 1, ties to the lowest id.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.value.len() {
            if self.value[v] != UNSET {
                continue;
            }
            let c = self.d.edges_of(v).iter().filter(|&&e| self.ones[e] == 0).count();
            if best.map_or(true, |(_, bc)| c > bc) {
                best = Some((v, c));
            }
        }
        best.map(|(v, _)| v)
    }

    /// Depth-first search; `visit` receives each total state and returns
    /// false to stop. Returns false if stopped.
    fn run(&mut self, visit: &mut dyn FnMut(&[u8]) -> bool) -> bool {
        let Some(v) = self.pick() else {
            return visit(&self.value);
        };
        for x in [0, 1] {
            let mark = self.trail.len();
            let ok = self.set(v, x);
            let go_on = !ok || self.run(visit);
            self.undo_to(mark);
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Whether `d` admits a 0-1 state.
pub fn has_01_state(d: &Diagram) -> bool {
    find_01_state(d).is_some()
}

/// Some 0-1 state of `d`, if one exists.
pub fn find_01_state(d: &Diagram) -> Option<Assignment01> {
    let mut found = None;
    Search::new(d).run(&mut |vals| {
        found = Some(Assignment01 { values: vals.to_vec() });
        false
    });
    found
}

/// All 0-1 states of `d` up to `limit`, in search order.
pub fn enumerate_01_states(d: &Diagram, limit: Option<usize>) -> Vec<Assignment01> {
    let mut out = Vec::new();
    if limit == Some(0) {
        return out;
    }
    Search::new(d).run(&mut |vals| {
        out.push(Assignment01 { values: vals.to_vec() });
        limit.map_or(true, |l| out.len() < l)
    });
    out
}

/// Keeps the diagrams without 0-1 states.
pub fn filter_no01<I>(diagrams: I) -> impl Iterator<Item = Diagram>
where
    I: IntoIterator<Item = Diagram>,
{
    diagrams.into_iter().filter(|d| !has_01_state(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_mmp, parse_mmp_with};
    use crate::Validation;

    pub(crate) fn brute_count(d: &Diagram) -> usize {
        let a = d.n_vertices();
        (0u64..1 << a)
            .filter(|m| d.edges().iter().all(|e| e.iter().filter(|&&v| m >> v & 1 == 1).count() == 1))
            .count()
    }

    #[test]
    fn small_verdicts() {
        assert!(has_01_state(&parse_mmp("123").unwrap()));
        assert!(!has_01_state(&parse_mmp("1234,2356,1456").unwrap()));
        assert!(!has_01_state(&parse_mmp("123,345,561,275,476").unwrap()));
    }

    #[test]
    fn enumeration_counts() {
        let d = parse_mmp("123").unwrap();
        assert_eq!(enumerate_01_states(&d, None).len(), 3);
        let d = parse_mmp("123,345").unwrap();
        let all = enumerate_01_states(&d, None);
        assert_eq!(all.len(), brute_count(&d));
        assert_eq!(all.len(), 5);
        assert!(all.iter().all(|s| s.is_state_of(&d)));
        assert_eq!(enumerate_01_states(&d, Some(2)).len(), 2);
    }

    #[test]
    fn dropping_a_vertex_flips_the_verdict() {
        // hexagon with every single-edge vertex (4, 6, A, C, D) removed
        let reduced = parse_mmp_with("123,35,57,789,9B,B1,28", Validation::Relaxed).unwrap();
        assert!(!has_01_state(&reduced));
        let with4 = parse_mmp_with("123,345,57,789,9B,B1,28", Validation::Relaxed).unwrap();
        assert!(has_01_state(&with4));
        let withd = parse_mmp_with("123,35,57,789,9B,B1,2D8", Validation::Relaxed).unwrap();
        assert!(has_01_state(&withd));
        let hexagon = parse_mmp("123,345,567,789,9AB,BC1,2D8").unwrap();
        assert!(has_01_state(&hexagon));
    }

    #[test]
    fn keeping_vertex_6_leaves_a_state() {
        let d = parse_mmp_with("123,35,567,789,9B,B1,28", Validation::Relaxed).unwrap();
        let s = find_01_state(&d).unwrap();
        assert!(s.is_state_of(&d));
        let ones: Vec<String> = (0..d.n_vertices()).filter(|&v| s.values[v] == 1).map(|v| d.label(v)).collect();
        assert_eq!(ones, ["3", "6", "8", "B"]);
    }

    #[test]
    fn filter_keeps_stateless_only() {
        let ds = ["123", "1234,2356,1456", "123,345"].map(|s| parse_mmp(s).unwrap());
        let kept: Vec<Diagram> = filter_no01(ds).collect();
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].n_vertices(), 6);
    }
}
