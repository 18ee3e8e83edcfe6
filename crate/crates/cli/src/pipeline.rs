//! The grouping pipeline shared by `group` and `survey`: optional term
//! stripping, greedy coloring for the color budget, then the requested solver
//! (greedy, exhaustive search, or simulated annealing over the coloring QUBO).

use crate::CliError;
use clap::ValueEnum;
use pauliq_core::anneal::{
    sample_statistics, simulated_annealing_sample, AnnealConfig, SampleSet, StatsReport,
};
use pauliq_core::commgraph::{
    build_noncommutation_graph, exhaustive_chromatic, greedy_coloring, grouping_from_coloring,
    ChromaticOutcome, GreedyStrategy, Grouping, DEFAULT_NODE_BUDGET,
};
use pauliq_core::pauli::{CommutationMode, Hamiltonian, Term};
use pauliq_core::qubo::{decode_coloring, graph_coloring_qubo};
use std::fmt;
use std::str::FromStr;

/// Which coloring solver turns the non-commutation graph into groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverKind {
    /// Largest-first greedy coloring.
    Greedy,
    /// Branch-and-bound search for the exact chromatic number, capped at the
    /// greedy color count (or an explicit `--colors`).
    Exact,
    /// Simulated annealing over the graph-coloring QUBO; the best valid
    /// sample becomes the grouping.
    Anneal,
}

impl SolverKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Greedy => "greedy",
            SolverKind::Exact => "exact",
            SolverKind::Anneal => "anneal",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "greedy" => Ok(SolverKind::Greedy),
            "exact" => Ok(SolverKind::Exact),
            "anneal" => Ok(SolverKind::Anneal),
            other => Err(format!(
                "unknown solver `{other}` (expected greedy, exact, or anneal)"
            )),
        }
    }
}

/// A Hamiltonian after optional preprocessing, with the removed terms kept
/// for reporting.
#[derive(Debug, Clone)]
pub struct StrippedHamiltonian {
    pub hamiltonian: Hamiltonian,
    pub removed_universal: Vec<Term>,
    pub removed_z_only: Vec<Term>,
}

/// Removes terms ahead of grouping: first every term that commutes with all
/// others under `mode` (identity terms included), then every string made only
/// of `Z` and `I`. Universal commuters join any group, and a Z-only remainder
/// forms a single computational-basis group, so both removals are standard
/// preprocessing before comparing group counts.
pub fn apply_stripping(
    h: &Hamiltonian,
    mode: CommutationMode,
    strip_universal: bool,
    strip_z: bool,
) -> StrippedHamiltonian {
    let mut current = h.clone();
    let mut removed_universal = Vec::new();
    let mut removed_z_only = Vec::new();
    if strip_universal {
        let (kept, removed) = current.strip_universal_commuters(mode);
        current = kept;
        removed_universal = removed;
    }
    if strip_z {
        let (kept, removed) = current.extract_z_only_group();
        current = kept;
        removed_z_only = removed;
    }
    StrippedHamiltonian {
        hamiltonian: current,
        removed_universal,
        removed_z_only,
    }
}

/// What the solver produced. `grouping` is `None` when the solver ran but
/// found no valid coloring (annealer with no valid sample, or exhaustive
/// search told to use fewer colors than the graph needs); the caller decides
/// whether that is a hard error or a dash in a table.
#[derive(Debug, Clone)]
pub struct GroupOutcome {
    pub greedy_colors: usize,
    /// Color budget actually handed to the solver.
    pub colors_used: usize,
    pub grouping: Option<Grouping>,
    /// Validity-annotated sample set, annealing only.
    pub samples: Option<SampleSet>,
    pub stats: Option<StatsReport>,
    /// QUBO variable count `V * K`, annealing only.
    pub qubo_dim: Option<usize>,
}

impl GroupOutcome {
    pub fn n_groups(&self) -> Option<usize> {
        self.grouping.as_ref().map(Grouping::n_groups)
    }
}

/// Runs one grouping job end to end. The color budget defaults to the greedy
/// count, following the two-stage protocol in which the greedy pass fixes the
/// number of colors and the sampler must then match it.
pub fn solve_grouping(
    h: &Hamiltonian,
    mode: CommutationMode,
    solver: SolverKind,
    colors: Option<usize>,
    penalty: f64,
    anneal: &AnnealConfig,
) -> Result<GroupOutcome, CliError> {
    if h.is_empty() {
        return Ok(GroupOutcome {
            greedy_colors: 0,
            colors_used: 0,
            grouping: Some(Grouping::from_groups(mode, Vec::new())),
            samples: None,
            stats: None,
            qubo_dim: None,
        });
    }
    let graph = build_noncommutation_graph(h, mode);
    let greedy = greedy_coloring(&graph, GreedyStrategy::LargestFirst);
    let greedy_colors = greedy.n_colors();
    let budget = colors.unwrap_or(greedy_colors).max(1);
    let mut outcome = GroupOutcome {
        greedy_colors,
        colors_used: budget,
        grouping: None,
        samples: None,
        stats: None,
        qubo_dim: None,
    };
    match solver {
        SolverKind::Greedy => {
            let grouping = grouping_from_coloring(h, &greedy, mode)
                .map_err(|e| CliError::Internal(format!("greedy coloring rejected: {e}")))?;
            outcome.colors_used = greedy_colors;
            outcome.grouping = Some(grouping);
        }
        SolverKind::Exact => match exhaustive_chromatic(&graph, budget, DEFAULT_NODE_BUDGET) {
            ChromaticOutcome::Optimal { coloring } => {
                let grouping = grouping_from_coloring(h, &coloring, mode)
                    .map_err(|e| CliError::Internal(format!("exact coloring rejected: {e}")))?;
                outcome.grouping = Some(grouping);
            }
            ChromaticOutcome::NoSolution { .. } => {}
            ChromaticOutcome::BudgetExhausted { node_budget } => {
                return Err(CliError::Internal(format!(
                    "exact search gave up after {node_budget} nodes; \
                     try the greedy or anneal solver"
                )));
            }
        },
        SolverKind::Anneal => {
            let qubo = graph_coloring_qubo(&graph, budget, penalty)
                .map_err(|e| CliError::Usage(format!("cannot build coloring QUBO: {e}")))?;
            outcome.qubo_dim = Some(qubo.dim());
            let raw = simulated_annealing_sample(&qubo, anneal)
                .map_err(|e| CliError::Usage(format!("annealer configuration rejected: {e}")))?;
            let samples = raw
                .with_validity(&graph, budget)
                .map_err(|e| CliError::Internal(format!("validity annotation failed: {e}")))?;
            let stats = sample_statistics(&samples, &graph, budget)
                .map_err(|e| CliError::Internal(format!("sample statistics failed: {e}")))?;
            if let Some(best) = samples.best_valid() {
                let coloring = decode_coloring(&best.bits, graph.n_vertices(), budget)
                    .map_err(|e| CliError::Internal(format!("decoding best sample failed: {e}")))?;
                let grouping = grouping_from_coloring(h, &coloring, mode)
                    .map_err(|e| CliError::Internal(format!("annealed coloring rejected: {e}")))?;
                outcome.grouping = Some(grouping);
            }
            outcome.samples = Some(samples);
            outcome.stats = Some(stats);
        }
    }
    Ok(outcome)
}

/// Terms divided by groups; the measurement-run saving of a grouping.
pub fn speedup(n_terms: usize, n_groups: usize) -> f64 {
    n_terms as f64 / n_groups as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use pauliq_core::models::{h2_hamiltonian, heisenberg_hamiltonian, LatticeSpec};

    #[test]
    fn h2_qwc_greedy_groups_z_terms_together() {
        let h = h2_hamiltonian();
        let out = solve_grouping(
            &h,
            CommutationMode::Qwc,
            SolverKind::Greedy,
            None,
            4.0,
            &AnnealConfig::default(),
        )
        .unwrap();
        let grouping = out.grouping.unwrap();
        let mut groups: Vec<Vec<usize>> = grouping.groups().to_vec();
        for g in &mut groups {
            g.sort_unstable();
        }
        groups.sort();
        assert_eq!(groups, vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(out.greedy_colors, 2);
    }

    #[test]
    fn h2_gc_strip_universal_removes_only_the_zz_term() {
        let h = h2_hamiltonian();
        let stripped = apply_stripping(&h, CommutationMode::Gc, true, false);
        assert_eq!(stripped.hamiltonian.len(), 3);
        assert_eq!(stripped.removed_universal.len(), 1);
        assert!(stripped.removed_universal[0].string().is_z_only());
        let out = solve_grouping(
            &stripped.hamiltonian,
            CommutationMode::Gc,
            SolverKind::Greedy,
            None,
            4.0,
            &AnnealConfig::default(),
        )
        .unwrap();
        assert_eq!(out.n_groups(), Some(2));
        assert_eq!(speedup(3, 2), 1.5);
    }

    #[test]
    fn heisenberg_grid_gc_exact_beats_greedy() {
        let spec = LatticeSpec::new(3, 3).unwrap();
        let h = heisenberg_hamiltonian(&spec, 1.0);
        let greedy = solve_grouping(
            &h,
            CommutationMode::Gc,
            SolverKind::Greedy,
            None,
            4.0,
            &AnnealConfig::default(),
        )
        .unwrap();
        assert_eq!(greedy.n_groups(), Some(4));
        let exact = solve_grouping(
            &h,
            CommutationMode::Gc,
            SolverKind::Exact,
            None,
            4.0,
            &AnnealConfig::default(),
        )
        .unwrap();
        assert_eq!(exact.n_groups(), Some(3));
    }

    #[test]
    fn exact_with_too_few_colors_reports_no_grouping() {
        let h = h2_hamiltonian();
        let out = solve_grouping(
            &h,
            CommutationMode::Qwc,
            SolverKind::Exact,
            Some(1),
            4.0,
            &AnnealConfig::default(),
        )
        .unwrap();
        assert_eq!(out.grouping, None);
        assert_eq!(out.colors_used, 1);
    }

    #[test]
    fn anneal_failure_still_returns_samples() {
        let h = h2_hamiltonian();
        let starved = AnnealConfig {
            num_reads: 1,
            sweeps_per_read: 1,
            beta_initial: 0.1,
            beta_final: 0.2,
            seed: 0,
            ..AnnealConfig::default()
        };
        let out = solve_grouping(
            &h,
            CommutationMode::Qwc,
            SolverKind::Anneal,
            None,
            4.0,
            &starved,
        )
        .unwrap();
        if out.grouping.is_none() {
            let stats = out.stats.unwrap();
            assert_eq!(stats.valid_count, 0);
            assert_eq!(stats.total_reads, 1);
        }
        assert_eq!(out.qubo_dim, Some(8));
    }

    #[test]
    fn empty_hamiltonian_short_circuits() {
        let h = h2_hamiltonian();
        let stripped = apply_stripping(&h, CommutationMode::Qwc, true, true);
        // QWC leaves no universal commuters here, but Z stripping takes three
        // of the four terms; strip both and only X0X1 remains.
        assert_eq!(stripped.hamiltonian.len(), 1);
        let all_z = apply_stripping(&stripped.hamiltonian, CommutationMode::Qwc, true, false);
        assert!(all_z.hamiltonian.is_empty());
        let out = solve_grouping(
            &all_z.hamiltonian,
            CommutationMode::Qwc,
            SolverKind::Anneal,
            None,
            4.0,
            &AnnealConfig::default(),
        )
        .unwrap();
        assert_eq!(out.n_groups(), Some(0));
        assert!(out.samples.is_none());
    }
}
