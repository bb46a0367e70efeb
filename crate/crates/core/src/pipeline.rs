//! End-to-end runs: generation, preliminary pass, 0-1 states, solver.

use std::collections::BTreeMap;
use std::io;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::catalog::{catalog_get, CatalogEntry, Claim};
use crate::contains::contains_subdiagram;
use crate::diagram::{Diagram, Validation};
use crate::generator::{generate_fold, Filter, GenError, GenSpec, GenStats, PrelimFilter};
use crate::solver::{
    discrete_check, parse_brace_vectors, prelim_check, solve, BasisChoice, IntervalBox, IntervalConfig, Verdict,
    VectorSystem,
};
use crate::states01::has_01_state;
use crate::stats::{stats, DiagramStats};
use crate::text::{parse_lines, LineError};

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub spec: GenSpec,
    /// Preliminary pass; `None` skips the stage.
    pub prelim: Option<BasisChoice>,
    /// Also prune generation subtrees with the preliminary pass. The
    /// `generated` count then equals `post_prelim`.
    pub prune: bool,
    /// Keep only diagrams without 0-1 states.
    pub states01: bool,
    /// Exact search over these component values, tried before the interval
    /// solver.
    pub discrete: Option<Vec<i64>>,
    /// Interval solver; `None` skips the stage.
    pub solver: Option<IntervalConfig>,
    /// Which survivors are stored in the report; counts cover all of them.
    pub keep: Keep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    All,
    /// Only survivors with a discrete solution or a feasible candidate.
    Realized,
    None,
}

impl PipelineConfig {
    pub fn new(spec: GenSpec) -> Self {
        PipelineConfig {
            spec,
            prelim: Some(BasisChoice::First),
            prune: false,
            states01: true,
            discrete: None,
            solver: None,
            keep: Keep::All,
        }
    }
}

/// Diagram counts after each stage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StageCounts {
    pub generated: u64,
    pub post_prelim: u64,
    pub post_states01: u64,
    pub post_solver: u64,
}

impl StageCounts {
    fn add(&mut self, o: &StageCounts) {
        self.generated += o.generated;
        self.post_prelim += o.post_prelim;
        self.post_states01 += o.post_states01;
        self.post_solver += o.post_solver;
    }
}

/// What the solver stage established for a surviving diagram.
#[derive(Debug, Clone, PartialEq)]
pub enum Found {
    Discrete(VectorSystem),
    Candidate(IntervalBox),
    Undetermined,
    /// The solver stage was skipped.
    Unsolved,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Emitted {
    pub diagram: Diagram,
    pub found: Found,
}

/// Time spent in each stage, summed over workers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StageTimes {
    pub prelim: Duration,
    pub states01: Duration,
    pub solver: Duration,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunReport {
    /// Counts by (vertices, edges).
    pub counts: BTreeMap<(usize, usize), StageCounts>,
    pub generator: GenStats,
    pub times: StageTimes,
    pub elapsed: Duration,
    pub emitted: Vec<Emitted>,
}

impl StageTimes {
    fn add(&mut self, o: &StageTimes) {
        self.prelim += o.prelim;
        self.states01 += o.states01;
        self.solver += o.solver;
    }
}

impl RunReport {
    fn absorb(&mut self, other: RunReport) {
        for (key, c) in &other.counts {
            self.counts.entry(*key).or_default().add(c);
        }
        self.times.add(&other.times);
        self.emitted.extend(other.emitted);
    }

    pub fn totals(&self) -> StageCounts {
        let mut t = StageCounts::default();
        for c in self.counts.values() {
            t.add(c);
        }
        t
    }

    /// Comma-separated counts, one row per (vertices, edges), after a header
    /// `vertices,edges,generated,post_prelim,post_states01,post_solver`.
    pub fn write_csv<W: io::Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["vertices", "edges", "generated", "post_prelim", "post_states01", "post_solver"])?;
        for (&(a, b), c) in &self.counts {
            out.serialize((a, b, c.generated, c.post_prelim, c.post_states01, c.post_solver))?;
        }
        out.flush()?;
        Ok(())
    }
}

struct Record {
    key: (usize, usize),
    counts: StageCounts,
    times: StageTimes,
    emitted: Option<Emitted>,
}

fn process(d: &Diagram, cfg: &PipelineConfig) -> Record {
    let mut r = Record {
        key: (d.n_vertices(), d.n_edges()),
        counts: StageCounts { generated: 1, ..StageCounts::default() },
        times: StageTimes::default(),
        emitted: None,
    };
    let n = cfg.spec.n;
    if let Some(basis) = cfg.prelim {
        let t = Instant::now();
        let ok = prelim_check(d, n, basis).is_ok();
        r.times.prelim = t.elapsed();
        if !ok {
            return r;
        }
    }
    r.counts.post_prelim = 1;
    if cfg.states01 {
        let t = Instant::now();
        let has = has_01_state(d);
        r.times.states01 = t.elapsed();
        if has {
            return r;
        }
    }
    r.counts.post_states01 = 1;
    let t = Instant::now();
    let found = solve_stage(d, cfg);
    r.times.solver = t.elapsed();
    if let Some(found) = found {
        r.counts.post_solver = 1;
        let keep = match cfg.keep {
            Keep::All => true,
            Keep::Realized => matches!(found, Found::Discrete(_) | Found::Candidate(_)),
            Keep::None => false,
        };
        if keep {
            r.emitted = Some(Emitted { diagram: d.clone(), found });
        }
    }
    r
}

/// `None` when the diagram is proven unrealizable.
fn solve_stage(d: &Diagram, cfg: &PipelineConfig) -> Option<Found> {
    let n = cfg.spec.n;
    if let Some(values) = &cfg.discrete {
        if let Some(vs) = discrete_check(d, n, values) {
            return Some(Found::Discrete(vs));
        }
    }
    let Some(solver) = &cfg.solver else {
        return Some(Found::Unsolved);
    };
    match solve(d, n, 0, solver).map(|r| r.outcome.verdict) {
        Ok(Verdict::Infeasible) => None,
        Ok(Verdict::FeasibleCandidate { found, .. }) => Some(Found::Candidate(found)),
        Ok(Verdict::Undetermined) | Err(_) => Some(Found::Undetermined),
    }
}

/// Generates every diagram of `cfg.spec` and passes each through the stages.
/// Counts and emitted diagrams do not depend on the number of workers.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<RunReport, GenError> {
    let start = Instant::now();
    let filters: Vec<Arc<dyn Filter>> = match (cfg.prune, cfg.prelim) {
        (true, Some(basis)) => vec![Arc::new(PrelimFilter { basis })],
        _ => Vec::new(),
    };
    let add = |report: &mut RunReport, r: Record| {
        report.counts.entry(r.key).or_default().add(&r.counts);
        report.times.add(&r.times);
        report.emitted.extend(r.emitted);
    };
    let (mut report, generator) = generate_fold(
        &cfg.spec,
        &filters,
        RunReport::default,
        |acc, d| add(acc, process(d, cfg)),
        RunReport::absorb,
    )?;
    report.generator = generator;
    report.elapsed = start.elapsed();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimResult {
    pub claim: Claim,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

/// Checks every claim of `entry`. Solver claims use `cfg`.
pub fn check_claims(entry: &CatalogEntry, cfg: &IntervalConfig) -> Vec<ClaimResult> {
    let d = match entry.diagram() {
        Ok(d) => d,
        Err(e) => {
            return entry
                .claims
                .iter()
                .map(|c| ClaimResult { claim: c.clone(), passed: false, detail: format!("parse: {e}"), elapsed: Duration::ZERO })
                .collect()
        }
    };
    entry
        .claims
        .iter()
        .map(|claim| {
            let t = Instant::now();
            let (passed, detail) = check_claim(entry, &d, claim, cfg);
            ClaimResult { claim: claim.clone(), passed, detail, elapsed: t.elapsed() }
        })
        .collect()
}

fn check_claim(entry: &CatalogEntry, d: &Diagram, claim: &Claim, cfg: &IntervalConfig) -> (bool, String) {
    let n = entry.n;
    match claim {
        Claim::No01State => {
            let has = has_01_state(d);
            (!has, if has { "a 0-1 state exists".into() } else { "no 0-1 state".into() })
        }
        Claim::Has01State => {
            let has = has_01_state(d);
            (has, if has { "a 0-1 state exists".into() } else { "no 0-1 state".into() })
        }
        Claim::DiscreteSolvable(values) => match discrete_check(d, n, values) {
            Some(_) => (true, "solution found".into()),
            None => (false, "no solution over the set".into()),
        },
        Claim::NotDiscrete(values) => match discrete_check(d, n, values) {
            Some(_) => (false, "solution found".into()),
            None => (true, "no solution over the set".into()),
        },
        Claim::Infeasible | Claim::Feasible => {
            let verdict = match solve(d, n, 0, cfg) {
                Ok(r) => r.outcome.verdict,
                Err(e) => return (false, format!("solver: {e}")),
            };
            let detail = match &verdict {
                Verdict::Infeasible => "infeasible".to_string(),
                Verdict::FeasibleCandidate { residual, .. } => format!("feasible candidate, residual {residual:.1e}"),
                Verdict::Undetermined => "undetermined within budget".to_string(),
            };
            let passed = match claim {
                Claim::Infeasible => matches!(verdict, Verdict::Infeasible),
                _ => matches!(verdict, Verdict::FeasibleCandidate { .. }),
            };
            (passed, detail)
        }
        Claim::Solution => {
            let Some(text) = &entry.known_solution else { return (false, "no stored solution".into()) };
            let vs = match parse_brace_vectors(d, text) {
                Ok(vs) => vs,
                Err(e) => return (false, format!("solution: {e}")),
            };
            match crate::solver::verify_solution(d, &vs, 0.0) {
                Ok(r) if r.passed() => (true, "verified exactly".into()),
                Ok(r) => (false, format!("{} violations", r.violations.len())),
                Err(e) => (false, format!("verify: {e}")),
            }
        }
        Claim::Contains(name) | Claim::Excludes(name) => {
            let sub = match catalog_get(name).map(|e| e.diagram()) {
                Ok(Ok(sub)) => sub,
                Ok(Err(e)) => return (false, format!("{name}: {e}")),
                Err(e) => return (false, e.to_string()),
            };
            let found = contains_subdiagram(d, &sub);
            let want = matches!(claim, Claim::Contains(_));
            (found == want, if found { format!("contains {name}") } else { format!("{name} not found") })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub line: usize,
    pub stats: DiagramStats,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct StatsTable {
    pub rows: Vec<StatsRow>,
    pub errors: Vec<LineError>,
}

impl StatsTable {
    /// Smallest nb - 2a* over the rows.
    pub fn min_excess_shared(&self) -> Option<i64> {
        self.rows.iter().map(|r| r.stats.excess_shared()).min()
    }

    /// Smallest nb - 2a over the rows.
    pub fn min_excess(&self) -> Option<i64> {
        self.rows.iter().map(|r| r.stats.excess()).min()
    }

    /// Header `line,a,b,a_star,girth,nb_minus_2a_star,nb_minus_2a`; an
    /// empty girth field means no loop.
    pub fn write_csv<W: io::Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["line", "a", "b", "a_star", "girth", "nb_minus_2a_star", "nb_minus_2a"])?;
        for r in &self.rows {
            let s = &r.stats;
            out.serialize((r.line, s.a, s.b, s.a_star, s.girth, s.excess_shared(), s.excess()))?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Statistics of every diagram in a file of one diagram per line.
pub fn stats_report(text: &str, validation: Validation) -> StatsTable {
    let mut table = StatsTable::default();
    for item in parse_lines(text, validation) {
        match item {
            Ok((line, d)) => table.rows.push(StatsRow { line, stats: stats(&d) }),
            Err(e) => table.errors.push(e),
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::canon::is_isomorphic;
    use crate::text::parse_mmp;

    #[test]
    fn seven_vertex_run_finds_the_7_5() {
        // the preliminary pass alone already rules out every 3-dim loop of size 3
        let mut cfg = PipelineConfig::new(GenSpec::new(3, 7, 5).girth(3));
        assert_eq!(run_pipeline(&cfg).unwrap().totals().post_states01, 0);
        cfg.prelim = None;
        cfg.solver = Some(IntervalConfig::default());
        let report = run_pipeline(&cfg).unwrap();
        let t = report.totals();
        assert_eq!(t.post_states01, 1);
        assert_eq!(t.post_solver, 0);
        let seven = parse_mmp("123,345,561,275,476").unwrap();
        assert_eq!(report.counts[&(7, 5)].post_states01, 1);
        assert!(report.emitted.is_empty());
        let mut keep = cfg.clone();
        keep.solver = None;
        let kept = run_pipeline(&keep).unwrap();
        assert_eq!(kept.emitted.len(), 1);
        assert!(is_isomorphic(&kept.emitted[0].diagram, &seven));
    }

    #[test]
    fn counts_never_increase() {
        let cfg = PipelineConfig { prelim: None, ..PipelineConfig::new(GenSpec::new(4, 10, 5).girth(3)) };
        let report = run_pipeline(&cfg).unwrap();
        for c in report.counts.values() {
            assert!(c.generated >= c.post_prelim && c.post_prelim >= c.post_states01 && c.post_states01 >= c.post_solver);
        }
        assert_eq!(report.totals().post_states01, 1);
        let prelim = PipelineConfig { prelim: Some(BasisChoice::First), ..cfg };
        let checked = run_pipeline(&prelim).unwrap();
        let pruned = run_pipeline(&PipelineConfig { prune: true, ..prelim }).unwrap();
        assert_eq!(checked.totals().post_prelim, pruned.totals().post_prelim);
        assert_eq!(checked.totals().post_states01, 0);
        assert!(pruned.totals().generated < checked.totals().generated);
    }

    #[test]
    fn empty_range_gives_empty_report() {
        let report = run_pipeline(&PipelineConfig::new(GenSpec::new(3, 2, 3))).unwrap();
        assert!(report.counts.is_empty() && report.emitted.is_empty());
        let mut csv = Vec::new();
        report.write_csv(&mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap(), "vertices,edges,generated,post_prelim,post_states01,post_solver\n");
    }

    #[test]
    fn stats_rows() {
        let t = stats_report("1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH\n12\n", Validation::Strict);
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.errors.len(), 1);
        assert_eq!(t.min_excess(), Some(0));
        assert!(stats_report("", Validation::Strict).rows.is_empty());
        let mut csv = Vec::new();
        t.write_csv(&mut csv).unwrap();
        let csv = String::from_utf8(csv).unwrap();
        assert!(csv.ends_with("1,18,9,18,3,0,0\n"), "{csv}");
    }

    #[test]
    fn quick_claims_hold() {
        let cfg = IntervalConfig { budget: Some(2000), ..IntervalConfig::default() };
        for name in ["tkadlec-dual-peres", "ks-27", "smallest-7-5", "fig4a-20-11"] {
            let e = catalog().into_iter().find(|e| e.name == name).unwrap();
            for r in check_claims(&e, &cfg) {
                assert!(r.passed, "{name} {}: {}", r.claim, r.detail);
            }
        }
    }
}
