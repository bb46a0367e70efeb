//! Realizability of diagrams by real unit vectors.
//!
//! A diagram in dimension `n` is realizable when its vertices can be given
//! pairwise non-collinear unit vectors with every edge orthonormal. One
//! edge is rotated onto the standard basis, the zero table is propagated,
//! exact zero/nonzero case splits settle products that the table alone
//! cannot, and interval branch-and-prune handles what is left.

mod branch;
mod discrete;
mod equations;
mod interval;
mod local;
mod poly;
mod prelim;
mod propagate;
mod vectors;

pub use branch::{branch_and_prune, IntervalBox, IntervalConfig, SolveOutcome, SolveStats, Verdict};
pub use discrete::{candidate_rays, discrete_check, normalize_ray};
pub use equations::{
    build_equations, BuildError, Equation, EquationKind, EquationSystem, FlagConflict, Sym, ZeroFlag, ZeroTable,
};
pub use interval::Interval;
pub use poly::{Monomial, Poly, Var};
pub use prelim::{prelim_check, preliminary_pass, propagate_zero_table, BasisChoice, Infeasibility};
pub use propagate::{propagate_solve, Residual};
pub use vectors::{
    format_solution, parse_brace_vectors, parse_solution, verify_solution, SolutionParseError, VectorSystem,
    VerifyError, VerifyReport, Violation,
};

use crate::diagram::Diagram;

/// The first contradiction found, if the verdict came from the exact
/// rules rather than from exhausting boxes.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub outcome: SolveOutcome,
    /// Case-split leaves examined.
    pub branches: usize,
    /// Reasons for the exact eliminations, one per closed branch.
    pub reasons: Vec<Infeasibility>,
}

/// Interval evaluation of a polynomial over a box of unknowns.
pub fn interval_eval(expr: &Poly, value: impl Fn(Var) -> Interval) -> Interval {
    expr.eval_interval(value)
}

/// Zero/nonzero case splits followed by branch-and-prune on every branch.
///
/// An orthogonality equation reduced to one product `a[u][k] a[v][k]` with
/// neither factor known nonzero has solutions only if one factor vanishes;
/// the search tries `a[u][k] = 0`, then `a[u][k] != 0` (which forces
/// `a[v][k] = 0`). The bisection budget is shared by all branches.
pub fn interval_solve(sys: &EquationSystem, cfg: &IntervalConfig) -> Report {
    let mut report = Report {
        outcome: SolveOutcome { verdict: Verdict::Infeasible, stats: SolveStats::default() },
        branches: 0,
        reasons: Vec::new(),
    };
    explore(sys.clone(), cfg, &mut report);
    report
}

fn split_point(sys: &EquationSystem) -> Option<(usize, usize)> {
    let t = &sys.zero_table;
    for &(u, v) in &sys.orthogonal_pairs {
        let mut open = (0..sys.n).filter(|&k| !t.is_zero(u, k) && !t.is_zero(v, k));
        if let (Some(k), None) = (open.next(), open.next()) {
            if !t.is_nonzero(u, k) && !t.is_nonzero(v, k) {
                return Some((u, k));
            }
        }
    }
    None
}

/// Returns false once a feasible candidate is found or the budget is spent.
fn explore(mut sys: EquationSystem, cfg: &IntervalConfig, report: &mut Report) -> bool {
    if let Err(reason) = propagate_zero_table(&mut sys) {
        report.branches += 1;
        report.reasons.push(reason);
        return true;
    }
    if let Some((v, k)) = split_point(&sys) {
        for flag in [ZeroFlag::Zero, ZeroFlag::Nonzero] {
            let mut branch = sys.clone();
            branch.zero_table.set(v, k, flag).expect("split on an unknown entry");
            if !explore(branch, cfg, report) {
                return false;
            }
        }
        return true;
    }
    report.branches += 1;
    let used = report.outcome.stats.bisections;
    let leaf_cfg = IntervalConfig { budget: cfg.budget.map(|b| b.saturating_sub(used)), ..cfg.clone() };
    let out = branch_and_prune(&sys, &leaf_cfg);
    let stats = &mut report.outcome.stats;
    stats.boxes += out.stats.boxes;
    stats.bisections += out.stats.bisections;
    stats.max_depth = stats.max_depth.max(out.stats.max_depth);
    match out.verdict {
        Verdict::Infeasible => true,
        other => {
            report.outcome.verdict = other;
            false
        }
    }
}

/// Builds the system of `d` with `basis_edge` as the standard basis and
/// runs [`interval_solve`].
pub fn solve(d: &Diagram, n: usize, basis_edge: usize, cfg: &IntervalConfig) -> Result<Report, BuildError> {
    let sys = build_equations(d, n, basis_edge)?;
    Ok(interval_solve(&sys, cfg))
}

#[cfg(test)]
mod tests;
