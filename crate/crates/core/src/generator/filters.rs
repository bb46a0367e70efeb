//! Built-in generation filters and the filter registry.
//!
//! Both built-ins are monotone: a contradiction in the equations of a
//! diagram stays a contradiction once edges are added, because the added
//! edges only add equations and the basis edge is kept.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Filter, FilterVerdict, GenError, GenSpec};
use crate::diagram::Diagram;
use crate::solver::{self, prelim_check, BasisChoice, IntervalConfig};

/// Prunes diagrams whose preliminary pass finds a contradiction.
#[derive(Debug, Clone, Default)]
pub struct PrelimFilter {
    pub basis: BasisChoice,
}

impl Filter for PrelimFilter {
    fn name(&self) -> &str {
        "prelim"
    }

    fn check(&self, d: &Diagram, spec: &GenSpec) -> FilterVerdict {
        match prelim_check(d, spec.n, self.basis) {
            Ok(()) => FilterVerdict::Pass,
            Err(reason) => FilterVerdict::PruneSubtree(format!("prelim: {reason}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeBudget {
    Fixed(u64),
    /// `base * 2^(max_edges - edges)` bisections: generous for small
    /// diagrams deep above the leaves, tight near them.
    Adaptive { base: u64 },
}

/// Prunes diagrams the interval solver proves unrealizable within a
/// bisection budget. A zero budget never prunes.
#[derive(Debug, Clone)]
pub struct ProbeFilter {
    pub budget: ProbeBudget,
    pub config: IntervalConfig,
}

impl ProbeFilter {
    pub fn budget_for(&self, d: &Diagram, spec: &GenSpec) -> u64 {
        match self.budget {
            ProbeBudget::Fixed(b) => b,
            ProbeBudget::Adaptive { base } => {
                let left = spec.max_edges.saturating_sub(d.n_edges()).min(40) as u32;
                base.saturating_mul(1u64 << left)
            }
        }
    }
}

impl Filter for ProbeFilter {
    fn name(&self) -> &str {
        "probe"
    }

    fn check(&self, d: &Diagram, spec: &GenSpec) -> FilterVerdict {
        let budget = self.budget_for(d, spec);
        if budget == 0 || d.n_edges() == 0 {
            return FilterVerdict::Pass;
        }
        let cfg = IntervalConfig { budget: Some(budget), ..self.config.clone() };
        match solver::solve(d, spec.n, 0, &cfg) {
            Ok(r) if r.outcome.is_infeasible() => FilterVerdict::PruneSubtree("probe: no real solution".into()),
            _ => FilterVerdict::Pass,
        }
    }
}

type Factory = Box<dyn Fn(&BTreeMap<String, String>) -> Result<Arc<dyn Filter>, GenError> + Send + Sync>;

/// Named filter constructors. Filters are written `name` or
/// `name:key=value,key=value`.
pub struct FilterRegistry {
    entries: Vec<(String, Factory)>,
}

impl Default for FilterRegistry {
    fn default() -> Self {
        let mut r = FilterRegistry { entries: Vec::new() };
        r.register("prelim", |params| {
            let basis = match params.get("basis").map(String::as_str) {
                None | Some("first") => BasisChoice::First,
                Some("all") => BasisChoice::All,
                Some(other) => return Err(GenError::FilterParam(format!("basis={other}"))),
            };
            Ok(Arc::new(PrelimFilter { basis }))
        });
        r.register("probe", |params| {
            let base = match params.get("base") {
                Some(b) => b.parse().map_err(|_| GenError::FilterParam(format!("base={b}")))?,
                None => 1,
            };
            let budget = match params.get("budget").map(String::as_str) {
                None | Some("adaptive") => ProbeBudget::Adaptive { base },
                Some(b) => ProbeBudget::Fixed(b.parse().map_err(|_| GenError::FilterParam(format!("budget={b}")))?),
            };
            let mut config = IntervalConfig::default();
            if let Some(e) = params.get("eps") {
                config.eps = e.parse().map_err(|_| GenError::FilterParam(format!("eps={e}")))?;
            }
            Ok(Arc::new(ProbeFilter { budget, config }))
        });
        r
    }
}

impl FilterRegistry {
    /// Adds a constructor; returns its id. A later registration under the
    /// same name shadows earlier ones.
    pub fn register<F>(&mut self, name: &str, factory: F) -> usize
    where
        F: Fn(&BTreeMap<String, String>) -> Result<Arc<dyn Filter>, GenError> + Send + Sync + 'static,
    {
        self.entries.push((name.to_string(), Box::new(factory)));
        self.entries.len() - 1
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Builds a filter from `name[:key=value,...]`.
    pub fn build(&self, text: &str) -> Result<Arc<dyn Filter>, GenError> {
        let (name, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut params = BTreeMap::new();
        for kv in rest.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| GenError::FilterParam(kv.to_string()))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        let (_, factory) =
            self.entries.iter().rev().find(|(n, _)| n == name.trim()).ok_or_else(|| GenError::UnknownFilter(name.to_string()))?;
        factory(&params)
    }
}

/// Builds one of the built-in filters from its textual form.
pub fn builtin_filter(text: &str) -> Result<Arc<dyn Filter>, GenError> {
    FilterRegistry::default().build(text)
}
