//! The preliminary pass: zero-table propagation over the orthogonality
//! equations.
//!
//! With one edge fixed to the standard basis, every axis direction belongs
//! to a basis vertex, so no other vertex may be an axis vector. That gives
//! the rules applied here until nothing changes:
//!
//! * an orthogonality equation left with a single product `a[u][k] a[v][k]`
//!   forces one factor to zero when the other is known nonzero, and is a
//!   contradiction when both are;
//! * a vector with all coordinates zero, or all but one, is infeasible
//!   (zero vector, or collinear with a basis vertex);
//! * a vector with exactly two coordinates left has both nonzero.

use std::fmt;

use super::equations::{EquationSystem, FlagConflict, Sym, ZeroFlag};
use crate::diagram::Diagram;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// Every coordinate of the vertex is zero.
    ZeroVector { vertex: usize },
    /// The vertex is forced onto the axis of a basis vertex.
    BasisCollinear { vertex: usize, basis_vertex: usize },
    /// Two vertices are forced collinear.
    Collinear { u: usize, v: usize },
    /// An orthogonality equation reduced to a product of two nonzero
    /// coordinates.
    NonzeroProduct { u: usize, v: usize, coord: usize },
    /// A coordinate was forced both zero and nonzero.
    Conflict { vertex: usize, coord: usize },
    /// A residual equation has no real solution.
    NoRealSolution { equation: String },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::ZeroVector { vertex } => write!(f, "vertex {vertex} is forced to the zero vector"),
            Infeasibility::BasisCollinear { vertex, basis_vertex } => {
                write!(f, "vertex {vertex} is forced collinear with basis vertex {basis_vertex}")
            }
            Infeasibility::Collinear { u, v } => write!(f, "vertices {u} and {v} are forced collinear"),
            Infeasibility::NonzeroProduct { u, v, coord } => {
                write!(f, "vertices {u} and {v} meet only in coordinate {coord}, where both are nonzero")
            }
            Infeasibility::Conflict { vertex, coord } => {
                write!(f, "coordinate {coord} of vertex {vertex} is forced both zero and nonzero")
            }
            Infeasibility::NoRealSolution { equation } => write!(f, "equation {equation} = 0 has no real solution"),
        }
    }
}

impl From<FlagConflict> for Infeasibility {
    fn from(c: FlagConflict) -> Self {
        let Sym { vertex, coord } = c.0;
        Infeasibility::Conflict { vertex, coord }
    }
}

/// Runs the zero-table rules to a fixpoint on a copy of `sys`.
pub fn preliminary_pass(sys: &EquationSystem) -> Result<EquationSystem, Infeasibility> {
    let mut out = sys.clone();
    propagate_zero_table(&mut out)?;
    Ok(out)
}

/// In-place version of [`preliminary_pass`]; on error the table holds the
/// facts derived so far.
pub fn propagate_zero_table(sys: &mut EquationSystem) -> Result<(), Infeasibility> {
    let n = sys.n;
    loop {
        let mut changed = false;
        for i in 0..sys.orthogonal_pairs.len() {
            let (u, v) = sys.orthogonal_pairs[i];
            let t = &sys.zero_table;
            let mut open = (0..n).filter(|&k| !t.is_zero(u, k) && !t.is_zero(v, k));
            let (Some(k), None) = (open.next(), open.next()) else { continue };
            match (t.is_nonzero(u, k), t.is_nonzero(v, k)) {
                (true, true) => return Err(Infeasibility::NonzeroProduct { u, v, coord: k }),
                (true, false) => changed |= sys.zero_table.set(v, k, ZeroFlag::Zero)?,
                (false, true) => changed |= sys.zero_table.set(u, k, ZeroFlag::Zero)?,
                (false, false) => {}
            }
        }
        for v in 0..sys.n_vertices {
            if sys.is_basis(v) {
                continue;
            }
            changed |= vector_rules(sys, v)?;
        }
        if !changed {
            return Ok(());
        }
    }
}

fn vector_rules(sys: &mut EquationSystem, v: usize) -> Result<bool, Infeasibility> {
    let n = sys.n;
    let open: Vec<usize> = sys.zero_table.open_coords(v).collect();
    match open.len() {
        0 => Err(Infeasibility::ZeroVector { vertex: v }),
        1 => {
            let axis = open[0];
            let basis_vertex = sys.basis[n - 1 - axis];
            Err(Infeasibility::BasisCollinear { vertex: v, basis_vertex })
        }
        2 => {
            let a = sys.zero_table.set(v, open[0], ZeroFlag::Nonzero)?;
            let b = sys.zero_table.set(v, open[1], ZeroFlag::Nonzero)?;
            Ok(a || b)
        }
        _ => Ok(false),
    }
}

/// Which edges to try as the basis when checking a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BasisChoice {
    /// Edge 0 only.
    #[default]
    First,
    /// Every edge; infeasible if any choice is.
    All,
}

/// Runs the preliminary pass on `d` in dimension `n`. Any contradiction
/// under any tried basis proves the diagram unrealizable, since every
/// edge can be rotated onto the standard basis.
pub fn prelim_check(d: &Diagram, n: usize, basis: BasisChoice) -> Result<(), Infeasibility> {
    if d.n_edges() == 0 {
        return Ok(());
    }
    let edges = match basis {
        BasisChoice::First => 0..1,
        BasisChoice::All => 0..d.n_edges(),
    };
    for e in edges {
        let mut sys = super::build_equations(d, n, e).expect("edge sizes checked by caller");
        propagate_zero_table(&mut sys)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Validation;
    use crate::solver::build_equations;
    use crate::text::{parse_mmp, parse_mmp_with};

    #[test]
    fn fifth_vector_collinear_with_fourth() {
        let d = crate::Diagram::raw(5, vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4]]).unwrap();
        let sys = build_equations(&d, 4, 0).unwrap();
        assert_eq!(preliminary_pass(&sys), Err(Infeasibility::BasisCollinear { vertex: 4, basis_vertex: 3 }));
    }

    #[test]
    fn chained_edge_loses_one_axis() {
        let d = parse_mmp("1234,4567").unwrap();
        let sys = preliminary_pass(&build_equations(&d, 4, 0).unwrap()).unwrap();
        // vertex 4 sits on the first coordinate
        for v in 4..7 {
            assert!(sys.zero_table.is_zero(v, 0));
            assert_eq!(sys.zero_table.zeros_of(v), 1);
        }
    }

    #[test]
    fn basis_only_is_unchanged() {
        let d = parse_mmp("1234").unwrap();
        let sys = build_equations(&d, 4, 0).unwrap();
        assert_eq!(preliminary_pass(&sys).unwrap(), sys);
    }

    #[test]
    fn triangle_in_three_dimensions() {
        let d = parse_mmp("123,345,561").unwrap();
        assert!(matches!(prelim_check(&d, 3, BasisChoice::First), Err(Infeasibility::BasisCollinear { .. })));
        let d = parse_mmp_with("123,345", Validation::Strict).unwrap();
        assert!(prelim_check(&d, 3, BasisChoice::All).is_ok());
    }
}
