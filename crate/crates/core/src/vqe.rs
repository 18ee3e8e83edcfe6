//! The iterative optimization loop tying everything together: group the
//! Hamiltonian, estimate its energy per parameter value on the simulator,
//! minimize over the parameter, and report measurement-run savings.
//!
//! The shipped ansatz registry holds exactly one entry, the two-qubit
//! single-parameter rotation of [`crate::sim::prepare_h2_ansatz`]; any
//! other qubit count is rejected up front.

use crate::anneal::{simulated_annealing_sample, AnnealConfig, AnnealError, SampleSet};
use crate::commgraph::{
    build_noncommutation_graph, exhaustive_chromatic, greedy_coloring, grouping_from_coloring,
    ChromaticOutcome, GraphError, GreedyStrategy, Grouping, DEFAULT_NODE_BUDGET,
};
use crate::pauli::{CommutationMode, Hamiltonian};
use crate::qubo::{decode_coloring, graph_coloring_qubo, QuboError};
use crate::seeding::derive_seed;
use crate::sim::{estimate_energy_grouped, exact_expectation, prepare_h2_ansatz, SimError};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Golden-section refinement stops once the bracket is this narrow.
pub const REFINEMENT_TOLERANCE: f64 = 1e-4;

/// Coarse-scan resolution over the parameter domain `[0, 2pi)`.
const GRID_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VqeError {
    #[error("no ansatz is registered for {n_qubits} qubits (only the 2-qubit ansatz ships)")]
    UnregisteredAnsatz { n_qubits: usize },
    #[error(
        "simulated annealing produced no valid coloring among {} reads",
        samples.total_reads()
    )]
    NoValidSample { samples: SampleSet },
    #[error("exact chromatic search exhausted its node budget of {node_budget}")]
    ChromaticBudgetExhausted { node_budget: u64 },
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Anneal(#[from] AnnealError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Qubo(#[from] QuboError),
}

/// How the Hamiltonian's terms are partitioned before measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupingMode {
    /// One group per term; the ungrouped baseline.
    Naive,
    /// Greedy largest-first coloring of the qubit-wise conflict graph.
    QwcGreedy,
    /// Greedy fixes the color budget, then simulated annealing solves the
    /// coloring QUBO and the best valid sample becomes the grouping.
    QwcAnneal,
    /// Exhaustive chromatic search seeded with the greedy bound.
    QwcExact,
}

impl GroupingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupingMode::Naive => "naive",
            GroupingMode::QwcGreedy => "qwc-greedy",
            GroupingMode::QwcAnneal => "qwc-anneal",
            GroupingMode::QwcExact => "qwc-exact",
        }
    }
}

impl fmt::Display for GroupingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupingMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(GroupingMode::Naive),
            "qwc-greedy" | "qwc_greedy" => Ok(GroupingMode::QwcGreedy),
            "qwc-anneal" | "qwc_anneal" => Ok(GroupingMode::QwcAnneal),
            "qwc-exact" | "qwc_exact" => Ok(GroupingMode::QwcExact),
            other => Err(format!(
                "unknown grouping mode `{other}` (expected naive, qwc-greedy, qwc-anneal, or qwc-exact)"
            )),
        }
    }
}

/// Whether objective evaluations carry shot noise or are computed exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveMode {
    Sampled,
    Exact,
}

impl FromStr for ObjectiveMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sampled" => Ok(ObjectiveMode::Sampled),
            "exact" => Ok(ObjectiveMode::Exact),
            other => Err(format!(
                "unknown objective `{other}` (expected sampled or exact)"
            )),
        }
    }
}

/// The one optimizer on offer: a 64-point scan then golden-section
/// refinement around the best point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimizerKind {
    ScanThenRefine,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeConfig {
    pub shots_per_group: u64,
    pub max_iterations: usize,
    pub optimizer: OptimizerKind,
    pub theta_init: f64,
    pub seed: u64,
    pub grouping_mode: GroupingMode,
    pub objective: ObjectiveMode,
    /// Constraint penalty for the annealed-grouping QUBO.
    pub penalty: f64,
    pub anneal: AnnealConfig,
}

impl Default for VqeConfig {
    fn default() -> Self {
        VqeConfig {
            shots_per_group: 1 << 13,
            max_iterations: 100,
            optimizer: OptimizerKind::ScanThenRefine,
            theta_init: 0.0,
            seed: 0,
            grouping_mode: GroupingMode::QwcGreedy,
            objective: ObjectiveMode::Sampled,
            penalty: 4.0,
            anneal: AnnealConfig::default(),
        }
    }
}

impl VqeConfig {
    /// Default config rooted at `seed`. The annealer gets the child stream
    /// at `u64::MAX`, far away from the per-evaluation streams that start
    /// at 0.
    pub fn with_seed(seed: u64) -> Self {
        VqeConfig {
            seed,
            anneal: AnnealConfig::with_seed(derive_seed(seed, u64::MAX)),
            ..Default::default()
        }
    }
}

/// Outcome of one optimization run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeReport {
    pub best_theta: f64,
    pub best_energy: f64,
    /// Measurement runs each objective evaluation costs: the group count.
    pub runs_per_evaluation: usize,
    pub total_evaluations: usize,
    pub grouping_used: Grouping,
    /// Term count divided by group count.
    pub speedup_factor: f64,
}

/// Minimizes a scalar objective over `[0, 2pi)`: coarse grid scan (plus
/// `theta_init` as a free extra probe), then golden-section refinement
/// around the best point until the bracket is narrower than
/// [`REFINEMENT_TOLERANCE`] or `max_iterations` refinement steps have run.
/// Returns the best `(theta, value)` ever evaluated.
pub fn minimize_scalar(
    mut objective: impl FnMut(f64) -> f64,
    theta_init: f64,
    max_iterations: usize,
) -> (f64, f64) {
    let mut best_theta = theta_init.rem_euclid(TAU);
    let mut best_value = objective(best_theta);
    let step = TAU / GRID_POINTS as f64;
    for i in 0..GRID_POINTS {
        let theta = i as f64 * step;
        let value = objective(theta);
        if value < best_value {
            best_theta = theta;
            best_value = value;
        }
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = best_theta - step;
    let mut b = best_theta + step;
    let mut c = b - (b - a) * inv_phi;
    let mut d = a + (b - a) * inv_phi;
    let mut fc = objective(c);
    let mut fd = objective(d);
    for point in [(c, fc), (d, fd)] {
        if point.1 < best_value {
            (best_theta, best_value) = point;
        }
    }
    let mut iterations = 0;
    while b - a > REFINEMENT_TOLERANCE && iterations < max_iterations {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = objective(c);
            if fc < best_value {
                (best_theta, best_value) = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = objective(d);
            if fd < best_value {
                (best_theta, best_value) = (d, fd);
            }
        }
        iterations += 1;
    }
    (best_theta.rem_euclid(TAU), best_value)
}

/// Builds the term grouping requested by the config. Annealed grouping
/// follows the two-stage protocol: greedy sets the color budget, the
/// sampler must then find a valid coloring or the run fails with the
/// sample set attached.
pub fn build_grouping(h: &Hamiltonian, cfg: &VqeConfig) -> Result<Grouping, VqeError> {
    let mode = CommutationMode::Qwc;
    match cfg.grouping_mode {
        GroupingMode::Naive => Ok(Grouping::singletons(h.len(), mode)),
        GroupingMode::QwcGreedy => {
            let g = build_noncommutation_graph(h, mode);
            let coloring = greedy_coloring(&g, GreedyStrategy::LargestFirst);
            Ok(grouping_from_coloring(h, &coloring, mode)?)
        }
        GroupingMode::QwcExact => {
            let g = build_noncommutation_graph(h, mode);
            let greedy = greedy_coloring(&g, GreedyStrategy::LargestFirst);
            match exhaustive_chromatic(&g, greedy.n_colors().max(1), DEFAULT_NODE_BUDGET) {
                ChromaticOutcome::Optimal { coloring } => {
                    Ok(grouping_from_coloring(h, &coloring, mode)?)
                }
                ChromaticOutcome::NoSolution { .. } => {
                    unreachable!("the greedy coloring is a feasible witness")
                }
                ChromaticOutcome::BudgetExhausted { node_budget } => {
                    Err(VqeError::ChromaticBudgetExhausted { node_budget })
                }
            }
        }
        GroupingMode::QwcAnneal => {
            let g = build_noncommutation_graph(h, mode);
            let greedy = greedy_coloring(&g, GreedyStrategy::LargestFirst);
            let k = greedy.n_colors().max(1);
            let q = graph_coloring_qubo(&g, k, cfg.penalty)?;
            let samples = simulated_annealing_sample(&q, &cfg.anneal)?.with_validity(&g, k)?;
            let Some(best) = samples.best_valid() else {
                return Err(VqeError::NoValidSample { samples });
            };
            let coloring = decode_coloring(best.bits.as_slice(), g.n_vertices(), k)?;
            Ok(grouping_from_coloring(h, &coloring, mode)?)
        }
    }
}

/// Runs the full loop: grouping, noisy (or exact) objective, scan-plus-
/// refine minimization, and a final re-evaluation of the incumbent at four
/// times the shot budget.
pub fn run_vqe(h: &Hamiltonian, cfg: &VqeConfig) -> Result<VqeReport, VqeError> {
    if h.n_qubits() != 2 {
        return Err(VqeError::UnregisteredAnsatz {
            n_qubits: h.n_qubits(),
        });
    }
    let grouping = build_grouping(h, cfg)?;
    let runs_per_evaluation = grouping.n_groups();
    let m = h.len();

    let mut evaluations: u64 = 0;
    let mut failure: Option<VqeError> = None;
    let evaluate = |theta: f64, shots: u64, evaluations: &mut u64| -> Result<f64, VqeError> {
        let state = prepare_h2_ansatz(theta);
        let result = match cfg.objective {
            ObjectiveMode::Exact => exact_expectation(&state, h).map_err(VqeError::from),
            ObjectiveMode::Sampled => estimate_energy_grouped(
                h,
                &grouping,
                &state,
                shots,
                derive_seed(cfg.seed, *evaluations),
            )
            .map(|(energy, _)| energy)
            .map_err(VqeError::from),
        };
        *evaluations += 1;
        result
    };

    let (best_theta, _) = minimize_scalar(
        |theta| {
            if failure.is_some() {
                return f64::INFINITY;
            }
            match evaluate(theta, cfg.shots_per_group, &mut evaluations) {
                Ok(energy) => energy,
                Err(e) => {
                    failure = Some(e);
                    f64::INFINITY
                }
            }
        },
        cfg.theta_init,
        cfg.max_iterations,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let best_energy = evaluate(best_theta, cfg.shots_per_group * 4, &mut evaluations)?;

    Ok(VqeReport {
        best_theta,
        best_energy,
        runs_per_evaluation,
        total_evaluations: evaluations as usize,
        grouping_used: grouping,
        speedup_factor: m as f64 / runs_per_evaluation as f64,
    })
}

/// One line of the measurement-savings table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeedupRow {
    pub n_terms: usize,
    pub n_groups: usize,
    pub speedup: f64,
}

/// Term count, group count, and their ratio for each `(Hamiltonian,
/// Grouping)` pair.
pub fn speedup_table(entries: &[(&Hamiltonian, &Grouping)]) -> Vec<SpeedupRow> {
    entries
        .iter()
        .map(|(h, grouping)| {
            let n_terms = h.len();
            let n_groups = grouping.n_groups();
            SpeedupRow {
                n_terms,
                n_groups,
                speedup: n_terms as f64 / n_groups as f64,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{h2_hamiltonian, heisenberg_hamiltonian, LatticeSpec};
    use crate::pauli::parse_hamiltonian;
    use std::f64::consts::PI;

    #[test]
    fn minimizer_finds_the_cosine_minimum() {
        let (theta, value) = minimize_scalar(f64::cos, 0.0, 100);
        assert!((theta - PI).abs() < 1e-3, "theta {theta}");
        assert!((value - -1.0).abs() < 1e-6, "value {value}");
    }

    #[test]
    fn minimizer_returns_the_constant_for_flat_objectives() {
        let (_, value) = minimize_scalar(|_| 42.0, 1.0, 100);
        assert_eq!(value, 42.0);
    }

    #[test]
    fn minimizer_reaches_the_exact_h2_minimum() {
        let h = h2_hamiltonian();
        let (theta, value) = minimize_scalar(
            |t| exact_expectation(&prepare_h2_ansatz(t), &h).unwrap(),
            0.0,
            100,
        );
        let analytic_min = -0.011 - 0.181;
        assert!((value - analytic_min).abs() < 1e-8, "value {value}");
        assert!((value - -0.192).abs() < 1e-3);
        // sin(2 theta) = 1 at the minimum; both pi/4 and pi/4 + pi work.
        assert!((2.0 * theta).sin() > 1.0 - 1e-6, "theta {theta}");
    }

    #[test]
    fn minimizer_respects_the_iteration_cap() {
        let mut calls = 0;
        let (_, value) = minimize_scalar(
            |t| {
                calls += 1;
                (t - 1.0).powi(2)
            },
            0.0,
            0,
        );
        // 1 init + 64 grid + 2 bracket probes, no refinement sweeps.
        assert_eq!(calls, 67);
        assert!(value < 0.01);
    }

    #[test]
    fn naive_and_grouped_runs_agree_on_the_energy() {
        let h = h2_hamiltonian();
        let naive = VqeConfig {
            grouping_mode: GroupingMode::Naive,
            ..VqeConfig::with_seed(3)
        };
        let report = run_vqe(&h, &naive).unwrap();
        assert_eq!(report.runs_per_evaluation, 4);
        assert_eq!(report.speedup_factor, 1.0);
        assert!(
            (report.best_energy - -0.192).abs() < 0.01,
            "naive energy {}",
            report.best_energy
        );

        let grouped = VqeConfig::with_seed(3);
        let report = run_vqe(&h, &grouped).unwrap();
        assert_eq!(report.runs_per_evaluation, 2);
        assert_eq!(report.speedup_factor, 2.0);
        assert!(
            (report.best_energy - -0.192).abs() < 0.01,
            "grouped energy {}",
            report.best_energy
        );
        assert!(report.total_evaluations > 65);
        assert_eq!(report.grouping_used.n_terms(), 4);
    }

    #[test]
    fn annealed_grouping_matches_greedy_up_to_relabeling() {
        let h = h2_hamiltonian();
        let greedy = run_vqe(&h, &VqeConfig::with_seed(7)).unwrap();
        let annealed = run_vqe(
            &h,
            &VqeConfig {
                grouping_mode: GroupingMode::QwcAnneal,
                ..VqeConfig::with_seed(7)
            },
        )
        .unwrap();
        assert_eq!(annealed.runs_per_evaluation, greedy.runs_per_evaluation);
        let normalize = |g: &Grouping| {
            let mut groups: Vec<Vec<usize>> = g.groups().to_vec();
            groups.sort();
            groups
        };
        assert_eq!(
            normalize(&annealed.grouping_used),
            normalize(&greedy.grouping_used)
        );
    }

    #[test]
    fn exact_chromatic_grouping_also_lands_on_two_groups() {
        let h = h2_hamiltonian();
        let report = run_vqe(
            &h,
            &VqeConfig {
                grouping_mode: GroupingMode::QwcExact,
                ..VqeConfig::with_seed(1)
            },
        )
        .unwrap();
        assert_eq!(report.runs_per_evaluation, 2);
    }

    #[test]
    fn exact_objective_is_grouping_independent() {
        let h = h2_hamiltonian();
        let mut energies = Vec::new();
        for mode in [GroupingMode::Naive, GroupingMode::QwcGreedy] {
            let cfg = VqeConfig {
                grouping_mode: mode,
                objective: ObjectiveMode::Exact,
                ..VqeConfig::with_seed(0)
            };
            energies.push(run_vqe(&h, &cfg).unwrap().best_energy);
        }
        assert!((energies[0] - energies[1]).abs() < 1e-9);
        assert!((energies[0] - -0.192).abs() < 1e-3);
    }

    #[test]
    fn unregistered_ansatz_is_rejected() {
        let h = heisenberg_hamiltonian(&LatticeSpec::new(1, 3).unwrap(), 1.0);
        assert_eq!(
            run_vqe(&h, &VqeConfig::default()).unwrap_err(),
            VqeError::UnregisteredAnsatz { n_qubits: 3 }
        );
    }

    #[test]
    fn starved_annealer_fails_with_the_samples_attached() {
        let h = h2_hamiltonian();
        let cfg = VqeConfig {
            grouping_mode: GroupingMode::QwcAnneal,
            anneal: AnnealConfig {
                num_reads: 1,
                sweeps_per_read: 1,
                beta_initial: 0.1,
                beta_final: 0.2,
                seed: 0,
                ..Default::default()
            },
            ..VqeConfig::default()
        };
        match run_vqe(&h, &cfg) {
            Err(VqeError::NoValidSample { samples }) => {
                assert_eq!(samples.total_reads(), 1);
            }
            other => panic!("expected NoValidSample, got {other:?}"),
        }
    }

    #[test]
    fn speedup_rows_divide_terms_by_groups() {
        let h2 = h2_hamiltonian();
        let g2 = build_grouping(&h2, &VqeConfig::default()).unwrap();
        let heis = heisenberg_hamiltonian(&LatticeSpec::new(1, 20).unwrap(), 1.0);
        let heis_grouping = build_grouping(
            &heis,
            &VqeConfig {
                grouping_mode: GroupingMode::QwcGreedy,
                ..VqeConfig::default()
            },
        )
        .unwrap();
        let single = parse_hamiltonian("1 Z0\n1 Z1\n1 Z0 Z1\n").unwrap();
        let single_grouping = build_grouping(
            &single,
            &VqeConfig {
                grouping_mode: GroupingMode::QwcGreedy,
                ..VqeConfig::default()
            },
        )
        .unwrap();

        let rows = speedup_table(&[
            (&h2, &g2),
            (&heis, &heis_grouping),
            (&single, &single_grouping),
        ]);
        assert_eq!(rows[0].n_terms, 4);
        assert_eq!(rows[0].n_groups, 2);
        assert_eq!(rows[0].speedup, 2.0);
        assert_eq!(rows[1].n_terms, 60);
        assert_eq!(rows[1].n_groups, 3);
        assert_eq!(rows[1].speedup, 20.0);
        assert_eq!(rows[2].n_groups, 1);
        assert_eq!(rows[2].speedup, 3.0);
    }

    #[test]
    fn grouping_mode_strings_round_trip() {
        for mode in [
            GroupingMode::Naive,
            GroupingMode::QwcGreedy,
            GroupingMode::QwcAnneal,
            GroupingMode::QwcExact,
        ] {
            assert_eq!(mode.as_str().parse::<GroupingMode>().unwrap(), mode);
        }
        assert_eq!(
            "qwc_greedy".parse::<GroupingMode>().unwrap(),
            GroupingMode::QwcGreedy
        );
        assert!("fancy".parse::<GroupingMode>().is_err());
        assert_eq!(
            "exact".parse::<ObjectiveMode>().unwrap(),
            ObjectiveMode::Exact
        );
        assert!("noisy".parse::<ObjectiveMode>().is_err());
    }

    #[test]
    fn report_serializes_and_round_trips() {
        let h = h2_hamiltonian();
        let report = run_vqe(&h, &VqeConfig::with_seed(5)).unwrap();
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: VqeReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert!(json.contains("\"speedup_factor\": 2.0"));
    }
}
