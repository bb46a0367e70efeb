//! Orthogonality and unit equations of a diagram.

use std::fmt;

use num::{BigRational, One};

use super::poly::{Monomial, Poly};
use crate::diagram::Diagram;

/// Unknown `a[v][k]`: coordinate `k` (0-based) of the vector of vertex `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym {
    pub vertex: usize,
    pub coord: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroFlag {
    Unknown,
    Zero,
    Nonzero,
}

/// A coordinate was required to be both zero and nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlagConflict(pub Sym);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroTable {
    n: usize,
    flags: Vec<ZeroFlag>,
}

impl ZeroTable {
    pub fn new(n_vertices: usize, n: usize) -> Self {
        ZeroTable { n, flags: vec![ZeroFlag::Unknown; n_vertices * n] }
    }

    pub fn get(&self, v: usize, k: usize) -> ZeroFlag {
        self.flags[v * self.n + k]
    }

    pub fn is_zero(&self, v: usize, k: usize) -> bool {
        self.get(v, k) == ZeroFlag::Zero
    }

    pub fn is_nonzero(&self, v: usize, k: usize) -> bool {
        self.get(v, k) == ZeroFlag::Nonzero
    }

    /// Strengthens an entry; returns whether it changed.
    pub fn set(&mut self, v: usize, k: usize, flag: ZeroFlag) -> Result<bool, FlagConflict> {
        let cur = &mut self.flags[v * self.n + k];
        match (*cur, flag) {
            (_, ZeroFlag::Unknown) => Ok(false),
            (ZeroFlag::Unknown, f) => {
                *cur = f;
                Ok(true)
            }
            (c, f) if c == f => Ok(false),
            _ => Err(FlagConflict(Sym { vertex: v, coord: k })),
        }
    }

    pub fn zeros_of(&self, v: usize) -> usize {
        (0..self.n).filter(|&k| self.is_zero(v, k)).count()
    }

    /// Coordinates of `v` not known to be zero.
    pub fn open_coords(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&k| !self.is_zero(v, k))
    }
}

/// Which constraint an equation expresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquationKind {
    /// `a_u . a_v = 0` for vertices on a common edge.
    Orthogonal(usize, usize),
    /// `|a_v|^2 = 1`.
    Unit(usize),
    /// For n = 3 and an edge `{i, j, k}`: component `c` of `a_k` squared
    /// equals component `c` of `a_i x a_j` squared.
    Cross { i: usize, j: usize, k: usize, component: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub kind: EquationKind,
    pub poly: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    EdgeSize { edge: usize, size: usize, n: usize },
    NoSuchEdge(usize),
    Dimension(usize),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::EdgeSize { edge, size, n } => write!(f, "edge {edge} has {size} vertices, expected {n}"),
            BuildError::NoSuchEdge(e) => write!(f, "no edge {e}"),
            BuildError::Dimension(n) => write!(f, "dimension {n} is below 2"),
        }
    }
}

impl std::error::Error for BuildError {}

/// The equation system of a diagram in dimension `n` with one edge fixed
/// to the standard basis.
#[derive(Debug, Clone, PartialEq)]
pub struct EquationSystem {
    pub n: usize,
    pub n_vertices: usize,
    pub edges: Vec<Vec<usize>>,
    pub basis_edge: usize,
    /// Vertices of the basis edge; the i-th is the unit vector on
    /// coordinate `n - 1 - i`.
    pub basis: Vec<usize>,
    /// Unordered vertex pairs sharing an edge, each listed once.
    pub orthogonal_pairs: Vec<(usize, usize)>,
    /// Known values: basis coordinates.
    pub fixed: Vec<Option<f64>>,
    pub zero_table: ZeroTable,
}

impl EquationSystem {
    pub fn sym_index(&self, s: Sym) -> usize {
        s.vertex * self.n + s.coord
    }

    pub fn sym_of(&self, index: usize) -> Sym {
        Sym { vertex: index / self.n, coord: index % self.n }
    }

    pub fn is_basis(&self, v: usize) -> bool {
        self.basis.contains(&v)
    }

    /// Axis of a basis vertex.
    pub fn basis_axis(&self, v: usize) -> Option<usize> {
        self.basis.iter().position(|&u| u == v).map(|i| self.n - 1 - i)
    }

    /// The value of a symbol if it is fixed or known zero.
    pub fn value(&self, v: usize, k: usize) -> Option<f64> {
        self.fixed[v * self.n + k].or(self.zero_table.is_zero(v, k).then_some(0.0))
    }

    /// Symbols with no known value.
    pub fn unknowns(&self) -> Vec<Sym> {
        (0..self.n_vertices)
            .flat_map(|v| (0..self.n).map(move |k| Sym { vertex: v, coord: k }))
            .filter(|s| self.value(s.vertex, s.coord).is_none())
            .collect()
    }

    /// Every equation over the raw symbols, before any value is plugged in.
    /// The variable of `a[v][k]` is `v * n + k`.
    pub fn raw_equations(&self) -> Vec<Equation> {
        let n = self.n;
        let var = |v: usize, k: usize| v * n + k;
        let mut out = Vec::new();
        for &(u, v) in &self.orthogonal_pairs {
            let mut p = Poly::zero();
            for k in 0..n {
                p.add_term(Monomial::var(var(u, k)).mul(&Monomial::var(var(v, k))), BigRational::one());
            }
            out.push(Equation { kind: EquationKind::Orthogonal(u, v), poly: p });
        }
        for v in 0..self.n_vertices {
            let mut p = Poly::int(-1);
            for k in 0..n {
                p.add_term(Monomial(vec![(var(v, k), 2)]), BigRational::one());
            }
            out.push(Equation { kind: EquationKind::Unit(v), poly: p });
        }
        if n == 3 {
            for e in &self.edges {
                for r in 0..3 {
                    let (i, j, k) = (e[r], e[(r + 1) % 3], e[(r + 2) % 3]);
                    for c in 0..3 {
                        let (p, q) = ((c + 1) % 3, (c + 2) % 3);
                        let cross = Poly::var(var(i, p))
                            .mul(&Poly::var(var(j, q)))
                            .sub(&Poly::var(var(i, q)).mul(&Poly::var(var(j, p))));
                        let poly = Poly::var(var(k, c)).pow(2).sub(&cross.pow(2));
                        out.push(Equation { kind: EquationKind::Cross { i, j, k, component: c }, poly });
                    }
                }
            }
        }
        out
    }

    /// The equations with fixed values and known zeros plugged in; equations
    /// that become identically zero are dropped.
    pub fn equations(&self) -> Vec<Equation> {
        let n = self.n;
        self.raw_equations()
            .into_iter()
            .filter_map(|mut eq| {
                for x in eq.poly.vars() {
                    if let Some(val) = self.value(x / n, x % n) {
                        let c = BigRational::from_float(val).expect("finite fixed value");
                        eq.poly = eq.poly.substitute(x, &Poly::constant(c)).expect("no negative powers");
                    }
                }
                (!eq.poly.is_zero()).then_some(eq)
            })
            .collect()
    }
}

/// Builds the system of `d` in dimension `n`, fixing `basis_edge` to the
/// standard basis and marking the coordinates it forces to zero.
pub fn build_equations(d: &Diagram, n: usize, basis_edge: usize) -> Result<EquationSystem, BuildError> {
    if n < 2 {
        return Err(BuildError::Dimension(n));
    }
    for (i, e) in d.edges().iter().enumerate() {
        if e.len() != n {
            return Err(BuildError::EdgeSize { edge: i, size: e.len(), n });
        }
    }
    if basis_edge >= d.n_edges() {
        return Err(BuildError::NoSuchEdge(basis_edge));
    }
    let a = d.n_vertices();
    let basis = d.edge(basis_edge).to_vec();
    let mut pairs = Vec::new();
    for e in d.edges() {
        for (i, &u) in e.iter().enumerate() {
            for &v in &e[i + 1..] {
                pairs.push((u.min(v), u.max(v)));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let mut fixed = vec![None; a * n];
    let mut zero_table = ZeroTable::new(a, n);
    for (i, &v) in basis.iter().enumerate() {
        let axis = n - 1 - i;
        for k in 0..n {
            fixed[v * n + k] = Some(if k == axis { 1.0 } else { 0.0 });
            let flag = if k == axis { ZeroFlag::Nonzero } else { ZeroFlag::Zero };
            zero_table.set(v, k, flag).expect("fresh table");
        }
    }
    // a vertex sharing an edge with a basis vertex is orthogonal to its axis
    for &(u, v) in &pairs {
        for (x, y) in [(u, v), (v, u)] {
            if let Some(i) = basis.iter().position(|&b| b == x) {
                if !basis.contains(&y) {
                    zero_table.set(y, n - 1 - i, ZeroFlag::Zero).expect("fresh entry");
                }
            }
        }
    }
    Ok(EquationSystem { n, n_vertices: a, edges: d.edges().to_vec(), basis_edge, basis, orthogonal_pairs: pairs, fixed, zero_table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_mmp;

    #[test]
    fn one_edge_gives_six_equations() {
        let d = parse_mmp("BCDE").unwrap();
        let sys = build_equations(&d, 4, 0).unwrap();
        let eqs = sys.raw_equations();
        let orth: Vec<&Equation> = eqs.iter().filter(|e| matches!(e.kind, EquationKind::Orthogonal(..))).collect();
        assert_eq!(orth.len(), 6);
        for e in &orth {
            let EquationKind::Orthogonal(u, v) = e.kind else { unreachable!() };
            assert_eq!(e.poly.len(), 4);
            for k in 0..4 {
                let m = Monomial::var(u * 4 + k).mul(&Monomial::var(v * 4 + k));
                assert!(e.poly.terms.contains_key(&m));
            }
        }
        assert!(sys.unknowns().is_empty());
        assert!(sys.equations().is_empty());
    }

    #[test]
    fn basis_neighbours_lose_a_coordinate() {
        let d = parse_mmp("1234,1567").unwrap();
        let sys = build_equations(&d, 4, 0).unwrap();
        // vertex 1 is the unit vector on the fourth coordinate
        assert_eq!(sys.value(0, 3), Some(1.0));
        for v in 4..7 {
            assert!(sys.zero_table.is_zero(v, 3));
            assert_eq!(sys.zero_table.zeros_of(v), 1);
        }
    }

    #[test]
    fn size_mismatch_is_reported() {
        let d = parse_mmp("123").unwrap();
        assert_eq!(build_equations(&d, 4, 0), Err(BuildError::EdgeSize { edge: 0, size: 3, n: 4 }));
    }
}
