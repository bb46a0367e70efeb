use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kscheck::catalog::{catalog, catalog_get};
use kscheck::generator::{builtin_filter, generate_par, Filter, GenSpec};
use kscheck::pipeline::{check_claims, run_pipeline, stats_report, Found, Keep, PipelineConfig};
use kscheck::solver::{
    discrete_check, format_solution, parse_brace_vectors, parse_solution, solve, verify_solution, BasisChoice,
    IntervalConfig, Verdict, VectorSystem,
};
use kscheck::states01::{enumerate_01_states, has_01_state};
use kscheck::text::{parse_lines, serialize_any};
use kscheck::{contains_subdiagram, find_embedding, Diagram, Validation};

#[derive(Parser)]
#[command(name = "kscheck", version, about = "Search for Kochen-Specker sets on MMP diagrams")]
struct Cli {
    /// Accept reduced systems with edges of any size of at least 2.
    #[arg(long, global = true)]
    relaxed: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate diagrams up to isomorphism, one per line.
    Generate {
        #[command(flatten)]
        spec: SpecArgs,
        /// Generation filter, e.g. `prelim` or `probe:budget=adaptive`.
        #[arg(long = "filter")]
        filters: Vec<String>,
        /// Write diagrams here instead of standard output.
        #[arg(long)]
        out: Option<String>,
    },
    /// Decide 0-1 states of each diagram.
    States01 {
        /// File with one diagram per line, `-` for stdin, a catalog name, or diagram text.
        input: String,
        /// Print only the diagrams without 0-1 states.
        #[arg(long)]
        invert: bool,
        /// Also list up to N states per diagram.
        #[arg(long, value_name = "N")]
        enumerate: Option<usize>,
    },
    /// Decide realizability of each diagram.
    Solve {
        /// File with one diagram per line, `-` for stdin, a catalog name, or diagram text.
        input: String,
        #[arg(long, value_enum, default_value = "interval")]
        mode: Mode,
        /// Dimension; defaults to the edge size.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        interval: IntervalArgs,
        /// Component values for the discrete mode.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,0,1")]
        values: Vec<i64>,
    },
    /// Check a solution against a diagram.
    Verify {
        /// Diagram text, file, or catalog name.
        #[arg(long)]
        diagram: String,
        /// Solution file: `label: c1 ... cn` lines or brace vectors.
        #[arg(long)]
        solution: String,
        /// Zero checks exactly.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Vertex, edge and loop statistics of each diagram.
    Stats {
        /// File with one diagram per line, `-` for stdin, a catalog name, or diagram text.
        input: String,
        /// Also write the table as comma-separated values.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Whether one diagram embeds in another.
    Contains {
        /// Diagram text, file, or catalog name.
        host: String,
        /// Diagram text, file, or catalog name.
        sub: String,
    },
    /// Named systems.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// End-to-end search runs.
    Pipeline {
        #[command(subcommand)]
        action: PipelineAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show {
        name: String,
    },
    /// Check the claims of one entry, or of all.
    Check {
        name: Option<String>,
        #[arg(long, default_value_t = 20000)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum PipelineAction {
    /// Generate, apply the preliminary pass, keep diagrams without 0-1
    /// states, then solve.
    Run {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "first")]
        prelim: Prelim,
        /// Also cut generation subtrees with the preliminary pass.
        #[arg(long)]
        prune: bool,
        /// Skip the 0-1 state filter.
        #[arg(long)]
        keep_states: bool,
        /// Run the interval solver on survivors.
        #[arg(long)]
        solve: bool,
        /// Try these component values before the interval solver.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        discrete: Option<Vec<i64>>,
        #[command(flatten)]
        interval: IntervalArgs,
        /// Write stage counts as comma-separated values.
        #[arg(long)]
        csv: Option<String>,
        /// Write surviving diagrams here.
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Interval,
    Discrete,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prelim {
    None,
    First,
    All,
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_vertices: usize,
    #[arg(long)]
    max_edges: usize,
    #[arg(long, default_value_t = 0)]
    min_vertices: usize,
    #[arg(long, default_value_t = 0)]
    min_edges: usize,
    /// Smallest loop size allowed.
    #[arg(long)]
    min_girth: Option<usize>,
    /// Also generate disconnected diagrams.
    #[arg(long)]
    disconnected: bool,
}

impl SpecArgs {
    fn spec(&self) -> GenSpec {
        let mut s = GenSpec::new(self.n, self.max_vertices, self.max_edges);
        s.min_vertices = self.min_vertices;
        s.min_edges = self.min_edges;
        s.min_girth = self.min_girth;
        s.connected_only = !self.disconnected;
        s
    }
}

#[derive(Args)]
struct IntervalArgs {
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    /// Bisection budget; unlimited when absent.
    #[arg(long)]
    budget: Option<u64>,
    /// Edge mapped onto the standard basis.
    #[arg(long, default_value_t = 0)]
    basis: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl IntervalArgs {
    fn config(&self) -> IntervalConfig {
        IntervalConfig { eps: self.eps, budget: self.budget, seed: self.seed, ..IntervalConfig::default() }
    }
}

fn validation(relaxed: bool) -> Validation {
    if relaxed {
        Validation::Relaxed
    } else {
        Validation::Strict
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

/// Diagram lines from stdin (`-`), a file, a catalog name, or the argument
/// itself as diagram text.
fn read_diagrams(arg: &str) -> Result<String> {
    if arg == "-" || Path::new(arg).exists() || arg.contains(['/', '.']) {
        return read_input(arg);
    }
    match catalog_get(arg) {
        Ok(e) => Ok(e.mmp),
        Err(_) => Ok(arg.to_string()),
    }
}

/// A catalog name, a file holding one diagram, or diagram text.
fn resolve(arg: &str, v: Validation) -> Result<Diagram> {
    if let Ok(e) = catalog_get(arg) {
        return Ok(e.diagram()?);
    }
    let text = if Path::new(arg).is_file() { read_input(arg)? } else { arg.to_string() };
    let mut lines = parse_lines(&text, v).into_iter();
    match lines.next() {
        Some(Ok((_, d))) => Ok(d),
        Some(Err(e)) => bail!("line {}: {}", e.line, e.error),
        None => bail!("no diagram in {arg:?}"),
    }
}

fn output(path: &Option<String>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p).with_context(|| format!("creating {p}"))?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn edge_size(d: &Diagram) -> usize {
    d.edges().first().map_or(0, Vec::len)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        // a closed pipe downstream is not a failure
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let v = validation(cli.relaxed);
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Generate { spec, filters, out: path } => {
            let spec = spec.spec();
            let filters: Vec<Arc<dyn Filter>> = filters.iter().map(|f| builtin_filter(f)).collect::<Result<_, _>>()?;
            let (lines, stats) = generate_par(&spec, &filters, |d| Some(serialize_any(d)))?;
            let mut w = output(&path)?;
            for l in &lines {
                writeln!(w, "{l}")?;
            }
            let counts: Vec<String> = stats.emitted.iter().map(|((a, b), c)| format!("{a}-{b}:{c}")).collect();
            writeln!(w, "# total {} {}", stats.total_emitted(), counts.join(" "))?;
            for (name, c) in &stats.pruned {
                writeln!(w, "# pruned by {name}: {c}")?;
            }
        }
        Command::States01 { input, invert, enumerate } => {
            let text = read_diagrams(&input)?;
            let mut lacking = 0;
            for item in parse_lines(&text, v) {
                let (line, d) = match item {
                    Ok(x) => x,
                    Err(e) => bail!("line {}: {}", e.line, e.error),
                };
                let has = has_01_state(&d);
                lacking += usize::from(!has);
                if invert {
                    if !has {
                        writeln!(out, "{}", serialize_any(&d))?;
                    }
                    continue;
                }
                writeln!(out, "{line}: {} {}", serialize_any(&d), if has { "has-01-state" } else { "no-01-state" })?;
                if let Some(limit) = enumerate {
                    for s in enumerate_01_states(&d, Some(limit)) {
                        writeln!(out, "  {}", s.to_bits())?;
                    }
                }
            }
            return Ok(if lacking > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS });
        }
        Command::Solve { input, mode, n, interval, values } => {
            let text = read_diagrams(&input)?;
            for item in parse_lines(&text, v) {
                let (line, d) = match item {
                    Ok(x) => x,
                    Err(e) => bail!("line {}: {}", e.line, e.error),
                };
                let n = n.unwrap_or_else(|| edge_size(&d));
                match mode {
                    Mode::Discrete => match discrete_check(&d, n, &values) {
                        Some(vs) => {
                            writeln!(out, "{line}: solution")?;
                            write!(out, "{}", format_solution(&d, &vs))?;
                        }
                        None => writeln!(out, "{line}: no solution over {values:?}")?,
                    },
                    Mode::Interval => {
                        let report = solve(&d, n, interval.basis, &interval.config())?;
                        let st = report.outcome.stats;
                        match report.outcome.verdict {
                            Verdict::Infeasible => {
                                writeln!(out, "{line}: infeasible ({} boxes, {} bisections)", st.boxes, st.bisections)?;
                                for r in &report.reasons {
                                    writeln!(out, "  {r}")?;
                                }
                            }
                            Verdict::FeasibleCandidate { found, residual } => {
                                writeln!(out, "{line}: feasible candidate (residual {residual:.2e}, width {:.1e})", found.width())?;
                                let vs = VectorSystem::Real(found.midpoint());
                                write!(out, "{}", format_solution(&d, &vs))?;
                            }
                            Verdict::Undetermined => {
                                writeln!(out, "{line}: undetermined ({} boxes, {} bisections)", st.boxes, st.bisections)?
                            }
                        }
                    }
                }
            }
        }
        Command::Verify { diagram, solution, tol } => {
            let d = resolve(&diagram, v)?;
            let text = read_input(&solution)?;
            let vs = if text.trim_start().starts_with('{') { parse_brace_vectors(&d, &text)? } else { parse_solution(&d, &text)? };
            let report = verify_solution(&d, &vs, tol)?;
            if report.passed() {
                writeln!(out, "ok: {} orthogonal pairs, {} collinearity checks", report.pairs_checked, report.collinear_checked)?;
                return Ok(ExitCode::SUCCESS);
            }
            for viol in &report.violations {
                writeln!(out, "{}", viol.describe(&d))?;
            }
            return Ok(ExitCode::from(1));
        }
        Command::Stats { input, csv } => {
            let table = stats_report(&read_diagrams(&input)?, v);
            writeln!(out, "line\ta\tb\ta*\tgirth\tnb-2a*\tnb-2a")?;
            for r in &table.rows {
                let s = &r.stats;
                let g = s.girth.map_or("-".to_string(), |g| g.to_string());
                writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}\t{}", r.line, s.a, s.b, s.a_star, g, s.excess_shared(), s.excess())?;
            }
            for e in &table.errors {
                eprintln!("line {}: {}", e.line, e.error);
            }
            if let (Some(a), Some(b)) = (table.min_excess_shared(), table.min_excess()) {
                writeln!(out, "# min nb-2a* {a}, min nb-2a {b}")?;
            }
            if let Some(path) = csv {
                table.write_csv(fs::File::create(&path).with_context(|| format!("creating {path}"))?)?;
            }
        }
        Command::Contains { host, sub } => {
            let (h, s) = (resolve(&host, v)?, resolve(&sub, v)?);
            if !contains_subdiagram(&h, &s) {
                writeln!(out, "no")?;
                return Ok(ExitCode::from(1));
            }
            let map = find_embedding(&h, &s).unwrap_or_default();
            let pairs: Vec<String> = map.iter().enumerate().map(|(x, &y)| format!("{}->{}", s.label(x), h.label(y))).collect();
            writeln!(out, "yes {}", pairs.join(" "))?;
        }
        Command::Catalog { action } => {
            drop(out);
            return catalog_command(action);
        }
        Command::Pipeline { action: PipelineAction::Run { spec, prelim, prune, keep_states, solve, discrete, interval, csv, out: emitted_path } } => {
            let cfg = PipelineConfig {
                spec: spec.spec(),
                prelim: match prelim {
                    Prelim::None => None,
                    Prelim::First => Some(BasisChoice::First),
                    Prelim::All => Some(BasisChoice::All),
                },
                prune,
                states01: !keep_states,
                discrete,
                solver: solve.then(|| interval.config()),
                keep: if emitted_path.is_some() { Keep::All } else { Keep::None },
            };
            let report = run_pipeline(&cfg)?;
            writeln!(out, "a\tb\tgenerated\tprelim\tno-01\tsolver")?;
            for ((a, b), c) in &report.counts {
                writeln!(out, "{a}\t{b}\t{}\t{}\t{}\t{}", c.generated, c.post_prelim, c.post_states01, c.post_solver)?;
            }
            let t = report.totals();
            writeln!(out, "total\t\t{}\t{}\t{}\t{}", t.generated, t.post_prelim, t.post_states01, t.post_solver)?;
            writeln!(
                out,
                "# {:.2?} elapsed; prelim {:.2?}, states {:.2?}, solver {:.2?} summed over workers",
                report.elapsed, report.times.prelim, report.times.states01, report.times.solver
            )?;
            if let Some(path) = csv {
                report.write_csv(fs::File::create(&path).with_context(|| format!("creating {path}"))?)?;
            }
            if emitted_path.is_some() {
                let mut w = output(&emitted_path)?;
                for e in &report.emitted {
                    let tag = match &e.found {
                        Found::Discrete(_) => "discrete",
                        Found::Candidate(_) => "candidate",
                        Found::Undetermined => "undetermined",
                        Found::Unsolved => "unsolved",
                    };
                    writeln!(w, "{} # {tag}", serialize_any(&e.diagram))?;
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn catalog_command(action: CatalogAction) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    match action {
        CatalogAction::List => {
            for e in catalog() {
                let d = e.diagram()?;
                writeln!(out, "{:26} n={} {}-{}  {}", e.name, e.n, d.n_vertices(), d.n_edges(), e.description)?;
            }
        }
        CatalogAction::Show { name } => {
            let e = catalog_get(&name)?;
            writeln!(out, "name: {}", e.name)?;
            writeln!(out, "description: {}", e.description)?;
            writeln!(out, "n: {}", e.n)?;
            writeln!(out, "mmp: {}", e.mmp)?;
            let claims: Vec<String> = e.claims.iter().map(ToString::to_string).collect();
            writeln!(out, "claims: {}", claims.join(" "))?;
            if e.reconstructed {
                writeln!(out, "reconstructed: yes")?;
            }
            if let Some(s) = &e.known_solution {
                writeln!(out, "solution: {s}")?;
            }
        }
        CatalogAction::Check { name, budget } => {
            let entries = match name {
                Some(n) => vec![catalog_get(&n)?],
                None => catalog(),
            };
            let cfg = IntervalConfig { budget: Some(budget), ..IntervalConfig::default() };
            let mut failed = 0;
            for e in &entries {
                for r in check_claims(e, &cfg) {
                    failed += usize::from(!r.passed);
                    let mark = if r.passed { "pass" } else { "FAIL" };
                    writeln!(out, "{mark} {} {}: {} ({:.1?})", e.name, r.claim, r.detail, r.elapsed)?;
                }
            }
            return Ok(if failed > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS });
        }
    }
    Ok(ExitCode::SUCCESS)
}
