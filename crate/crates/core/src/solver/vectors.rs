//! Vector assignments, their verification, and the solution file format.
//!
//! A solution file has one line per vertex, `label: c1 c2 ... cn`, with
//! integer or decimal components; `#` starts a comment.

use std::fmt;

use thiserror::Error;

use crate::diagram::Diagram;

#[derive(Debug, Clone, PartialEq)]
pub enum VectorSystem {
    /// Integer vectors, checked exactly.
    Exact(Vec<Vec<i64>>),
    /// Real vectors, checked within a tolerance.
    Real(Vec<Vec<f64>>),
}

impl VectorSystem {
    pub fn len(&self) -> usize {
        match self {
            VectorSystem::Exact(v) => v.len(),
            VectorSystem::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            VectorSystem::Exact(v) => v.first().map(Vec::len),
            VectorSystem::Real(v) => v.first().map(Vec::len),
        }
    }

    pub fn as_real(&self) -> Vec<Vec<f64>> {
        match self {
            VectorSystem::Exact(v) => v.iter().map(|x| x.iter().map(|&c| c as f64).collect()).collect(),
            VectorSystem::Real(v) => v.clone(),
        }
    }

    fn component(&self, v: usize) -> Vec<String> {
        match self {
            VectorSystem::Exact(x) => x[v].iter().map(i64::to_string).collect(),
            VectorSystem::Real(x) => x[v].iter().map(f64::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    ZeroVector { vertex: usize },
    NotOrthogonal { u: usize, v: usize, dot: f64 },
    Collinear { u: usize, v: usize },
    Dimension { vertex: usize, len: usize },
}

impl Violation {
    pub fn describe(&self, d: &Diagram) -> String {
        match *self {
            Violation::ZeroVector { vertex } => format!("{} is the zero vector", d.label(vertex)),
            Violation::NotOrthogonal { u, v, dot } => {
                format!("{} and {} share an edge but their dot product is {dot}", d.label(u), d.label(v))
            }
            Violation::Collinear { u, v } => format!("{} and {} are collinear", d.label(u), d.label(v)),
            Violation::Dimension { vertex, len } => format!("{} has {len} components", d.label(vertex)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub zero_checked: usize,
    pub pairs_checked: usize,
    pub collinear_checked: usize,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("the diagram has {expected} vertices but {got} vectors were given")]
    Count { expected: usize, got: usize },
}

fn cross_zero_exact(a: &[i64], b: &[i64]) -> bool {
    let n = a.len();
    (0..n).all(|i| (i + 1..n).all(|j| a[i] as i128 * b[j] as i128 == a[j] as i128 * b[i] as i128))
}

/// Checks every vector nonzero, every within-edge pair orthogonal, and no
/// two vertices collinear. Exact systems ignore `tol`; real systems compare
/// normalized quantities against it.
pub fn verify_solution(d: &Diagram, vs: &VectorSystem, tol: f64) -> Result<VerifyReport, VerifyError> {
    let a = d.n_vertices();
    if vs.len() != a {
        return Err(VerifyError::Count { expected: a, got: vs.len() });
    }
    let mut report = VerifyReport::default();
    let n = d.max_edge_size();
    let real = vs.as_real();
    for (v, x) in real.iter().enumerate() {
        if x.len() != n {
            report.violations.push(Violation::Dimension { vertex: v, len: x.len() });
        }
    }
    if !report.violations.is_empty() {
        return Ok(report);
    }
    let norm: Vec<f64> = real.iter().map(|x| x.iter().map(|c| c * c).sum::<f64>().sqrt()).collect();
    for v in 0..a {
        report.zero_checked += 1;
        let zero = match vs {
            VectorSystem::Exact(x) => x[v].iter().all(|&c| c == 0),
            VectorSystem::Real(_) => norm[v] <= tol,
        };
        if zero {
            report.violations.push(Violation::ZeroVector { vertex: v });
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for e in d.edges() {
        for (i, &u) in e.iter().enumerate() {
            for &v in &e[i + 1..] {
                pairs.push((u.min(v), u.max(v)));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    for &(u, v) in &pairs {
        report.pairs_checked += 1;
        match vs {
            VectorSystem::Exact(x) => {
                let dot: i128 = x[u].iter().zip(&x[v]).map(|(&p, &q)| p as i128 * q as i128).sum();
                if dot != 0 {
                    report.violations.push(Violation::NotOrthogonal { u, v, dot: dot as f64 });
                }
            }
            VectorSystem::Real(x) => {
                let dot: f64 = x[u].iter().zip(&x[v]).map(|(p, q)| p * q).sum();
                let scale = norm[u] * norm[v];
                if scale > 0.0 && (dot / scale).abs() > tol {
                    report.violations.push(Violation::NotOrthogonal { u, v, dot });
                }
            }
        }
    }
    for u in 0..a {
        for v in u + 1..a {
            report.collinear_checked += 1;
            let collinear = match vs {
                VectorSystem::Exact(x) => cross_zero_exact(&x[u], &x[v]),
                VectorSystem::Real(x) => {
                    let scale = norm[u] * norm[v];
                    if scale == 0.0 {
                        true
                    } else {
                        let dot: f64 = x[u].iter().zip(&x[v]).map(|(p, q)| p * q).sum();
                        let c = (dot / scale).abs();
                        1.0 - c * c <= tol
                    }
                }
            };
            if collinear && norm[u] > 0.0 && norm[v] > 0.0 {
                report.violations.push(Violation::Collinear { u, v });
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionParseError {
    #[error("line {line}: expected `label: components`")]
    Syntax { line: usize },
    #[error("line {line}: bad component {token:?}")]
    Component { line: usize, token: String },
    #[error("line {line}: unknown vertex {label:?}")]
    UnknownLabel { line: usize, label: String },
    #[error("line {line}: vertex {label:?} given twice")]
    Duplicate { line: usize, label: String },
    #[error("no vector for vertex {0:?}")]
    Missing(String),
    #[error("expected {expected} vectors in braces, found {got}")]
    BraceCount { expected: usize, got: usize },
}

/// Parses a solution file against the vertex labels of `d`. The result is
/// exact when every component is an integer.
pub fn parse_solution(d: &Diagram, text: &str) -> Result<VectorSystem, SolutionParseError> {
    let a = d.n_vertices();
    let mut rows: Vec<Option<Vec<String>>> = vec![None; a];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let (label, rest) = body.split_once(':').ok_or(SolutionParseError::Syntax { line })?;
        let label = label.trim();
        let v = d.vertex_by_label(label).ok_or_else(|| SolutionParseError::UnknownLabel { line, label: label.into() })?;
        if rows[v].is_some() {
            return Err(SolutionParseError::Duplicate { line, label: label.into() });
        }
        let comps: Vec<String> = rest.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(String::from).collect();
        for t in &comps {
            if t.parse::<f64>().is_err() {
                return Err(SolutionParseError::Component { line, token: t.clone() });
            }
        }
        rows[v] = Some(comps);
    }
    let mut out = Vec::with_capacity(a);
    for (v, r) in rows.into_iter().enumerate() {
        out.push(r.ok_or_else(|| SolutionParseError::Missing(d.label(v)))?);
    }
    Ok(from_tokens(out))
}

fn from_tokens(rows: Vec<Vec<String>>) -> VectorSystem {
    let ints: Option<Vec<Vec<i64>>> = rows.iter().map(|r| r.iter().map(|t| t.parse::<i64>().ok()).collect()).collect();
    match ints {
        Some(v) => VectorSystem::Exact(v),
        None => VectorSystem::Real(rows.iter().map(|r| r.iter().map(|t| t.parse().unwrap()).collect()).collect()),
    }
}

/// Parses a run of braced tuples such as `{1,0,0}{0,1,-1}`, assigned to the
/// vertices of `d` in label collation order (`1..9`, `A..Z`, `a..z`, then
/// numeric labels ascending), the order in which listings like `12...NO`
/// are written.
pub fn parse_brace_vectors(d: &Diagram, text: &str) -> Result<VectorSystem, SolutionParseError> {
    let mut rows = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find('{') {
        let end = rest[start..].find('}').ok_or(SolutionParseError::Syntax { line: 1 })? + start;
        let inner = &rest[start + 1..end];
        let comps: Vec<String> = inner.split(',').map(|t| t.trim().to_string()).collect();
        for t in &comps {
            if t.parse::<f64>().is_err() {
                return Err(SolutionParseError::Component { line: 1, token: t.clone() });
            }
        }
        rows.push(comps);
        rest = &rest[end + 1..];
    }
    if rows.len() != d.n_vertices() {
        return Err(SolutionParseError::BraceCount { expected: d.n_vertices(), got: rows.len() });
    }
    let mut order: Vec<usize> = (0..d.n_vertices()).collect();
    order.sort_by_key(|&v| label_rank(&d.label(v)));
    let mut placed = vec![Vec::new(); rows.len()];
    for (row, &v) in rows.into_iter().zip(&order) {
        placed[v] = row;
    }
    Ok(from_tokens(placed))
}

fn label_rank(label: &str) -> (usize, usize) {
    let mut chars = label.chars();
    match (chars.next().and_then(crate::text::symbol_index), chars.next()) {
        (Some(i), None) => (0, i),
        _ => (1, label.parse().unwrap_or(usize::MAX)),
    }
}

/// Writes a solution file.
pub fn format_solution(d: &Diagram, vs: &VectorSystem) -> String {
    let mut out = String::new();
    for v in 0..vs.len() {
        out.push_str(&format!("{}: {}\n", d.label(v), vs.component(v).join(" ")));
    }
    out
}

impl fmt::Display for VectorSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.len() {
            writeln!(f, "{}", self.component(v).join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_mmp;

    #[test]
    fn exact_check_and_injected_fault() {
        let d = parse_mmp("123,345").unwrap();
        let good = VectorSystem::Exact(vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0], vec![0, 1, 1], vec![0, 1, -1]]);
        assert!(verify_solution(&d, &good, 0.0).unwrap().passed());
        let VectorSystem::Exact(mut bad) = good.clone() else { unreachable!() };
        bad[3][2] += 1;
        let r = verify_solution(&d, &VectorSystem::Exact(bad), 0.0).unwrap();
        assert_eq!(r.violations, vec![Violation::NotOrthogonal { u: 3, v: 4, dot: -1.0 }]);
    }

    #[test]
    fn collinear_and_zero_vectors() {
        let d = parse_mmp("123,345").unwrap();
        let vs = VectorSystem::Exact(vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0], vec![0, 2, 0]]);
        let r = verify_solution(&d, &vs, 0.0).unwrap();
        assert!(r.violations.contains(&Violation::ZeroVector { vertex: 3 }));
        assert!(r.violations.contains(&Violation::Collinear { u: 1, v: 4 }));
    }

    #[test]
    fn file_round_trip() {
        let d = parse_mmp("123").unwrap();
        let vs = VectorSystem::Exact(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let text = format_solution(&d, &vs);
        assert_eq!(parse_solution(&d, &format!("# basis\n{text}")).unwrap(), vs);
        let real = parse_solution(&d, "1: 1 0 0\n2: 0 0.6 0.8\n3: 0 0.8 -0.6\n").unwrap();
        assert!(matches!(real, VectorSystem::Real(_)));
        assert!(verify_solution(&d, &real, 1e-12).unwrap().passed());
        assert!(matches!(parse_solution(&d, "1: 1 0 0\n2: 0 1 0\n"), Err(SolutionParseError::Missing(_))));
    }

    #[test]
    fn braces() {
        let d = parse_mmp("123").unwrap();
        let vs = parse_brace_vectors(&d, "{0,0,1}{1,0,0}\n{0,1,0}").unwrap();
        assert_eq!(vs, VectorSystem::Exact(vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]));
    }
}
