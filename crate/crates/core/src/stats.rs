//! Counting statistics of diagrams.

use crate::diagram::Diagram;
use crate::girth::girth;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramStats {
    /// Vertex count.
    pub a: usize,
    /// Edge count.
    pub b: usize,
    /// Vertices lying on at least two edges.
    pub a_star: usize,
    pub girth: Option<usize>,
    /// Common edge size, when all edges agree.
    pub n: Option<usize>,
    /// Sum of edge sizes; equals n·b for regular diagrams.
    pub incidences: usize,
}

impl DiagramStats {
    /// n·b − 2a*, with n·b read as the incidence count.
    pub fn excess_shared(&self) -> i64 {
        self.incidences as i64 - 2 * self.a_star as i64
    }

    /// n·b − 2a.
    pub fn excess(&self) -> i64 {
        self.incidences as i64 - 2 * self.a as i64
    }
}

pub fn stats(d: &Diagram) -> DiagramStats {
    DiagramStats {
        a: d.n_vertices(),
        b: d.n_edges(),
        a_star: (0..d.n_vertices()).filter(|&v| d.degree(v) >= 2).count(),
        girth: girth(d),
        n: d.uniform_edge_size(),
        incidences: d.edges().iter().map(Vec::len).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_mmp;

    #[test]
    fn small_cases() {
        let s = stats(&parse_mmp("1234,2356,1456").unwrap());
        assert_eq!((s.a, s.b, s.a_star, s.girth, s.n), (6, 3, 6, Some(2), Some(4)));
        let s = stats(&parse_mmp("123").unwrap());
        assert_eq!((s.a, s.b, s.a_star, s.girth), (3, 1, 0, None));
        let s = stats(&parse_mmp("1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH").unwrap());
        assert_eq!((s.a, s.b, s.a_star), (18, 9, 18));
        assert_eq!(s.excess(), 0);
        assert_eq!(s.excess_shared(), 0);
    }
}
