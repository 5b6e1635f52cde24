//! Shortest straight-line programs and the measured inequality constants.

mod search;
mod theorems;

use std::fmt::Write as _;

use serde::Serialize;

pub use search::{explore, k_search, k_search_all, Budget, Frontier, Mode, SearchConfig};
pub use theorems::{
    default_pool, equivalence_experiment, theorem_constants, Bound, ClassRow, EquivalenceReport, MacroConstants,
    Suite, TheoremRow, TheoremTable, Verdict,
};

/// Outcome of a shortest-program search.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexityReport {
    pub target: String,
    pub given: Vec<String>,
    pub mode: Mode,
    /// Length of the shortest program found, if any.
    pub k: Option<usize>,
    /// True when every shorter straight-line program was examined.
    pub exact: bool,
    /// Smallest length not ruled out by the search.
    pub lower_bound: usize,
    pub witness: Option<String>,
    pub budget: Budget,
    /// Search states expanded at each program length.
    pub states_per_depth: Vec<usize>,
    /// Isomorphism classes of categories produced within each length.
    pub categories_per_depth: Vec<usize>,
    pub scope: String,
}

impl ComplexityReport {
    /// Aligned two-column text rendering.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(&str, String)> = vec![
            ("target", self.target.clone()),
            ("given", if self.given.is_empty() { "-".into() } else { self.given.join(", ") }),
            ("mode", self.mode.name().into()),
        ];
        let k = match self.k {
            Some(k) if self.exact => format!("{k} (exact)"),
            Some(k) => format!("{k} (upper bound, at least {})", self.lower_bound),
            None => format!("not found (at least {})", self.lower_bound),
        };
        rows.push(("K", k));
        rows.push((
            "budget",
            format!(
                "max_len={} max_objects={} max_morphisms={} max_states={}",
                self.budget.max_len, self.budget.max_objects, self.budget.max_morphisms, self.budget.max_states
            ),
        ));
        rows.push(("states/depth", join(&self.states_per_depth)));
        rows.push(("categories/depth", join(&self.categories_per_depth)));
        rows.push(("scope", self.scope.clone()));
        let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<w$}  {v}");
        }
        if let Some(p) = &self.witness {
            out.push_str("witness:\n");
            for line in p.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        out
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
