//! The five subcommands. Each one resolves its flags, runs the pipeline
//! stages it needs, prints a short parseable summary to stdout, and writes
//! its file outputs together with a run-manifest sidecar.

use crate::manifest::RunManifest;
use crate::pipeline::{apply_stripping, solve_grouping, speedup, SolverKind};
use crate::survey::{build_model, render_survey_table, run_survey, ModelKind, DEFAULT_MANIFEST};
use crate::CliError;
use clap::{Args, ValueEnum};
use pauliq_core::anneal::{render_valid_counts_csv, AnnealConfig};
use pauliq_core::commgraph::build_noncommutation_graph;
use pauliq_core::pauli::{render_term, CommutationMode, Hamiltonian};
use pauliq_core::qubo::graph_coloring_qubo;
use pauliq_core::vqe::{run_vqe, GroupingMode, ObjectiveMode, VqeConfig, VqeError};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    H2,
    Heisenberg,
    Hubbard,
}

impl From<KindArg> for ModelKind {
    fn from(kind: KindArg) -> ModelKind {
        match kind {
            KindArg::H2 => ModelKind::H2,
            KindArg::Heisenberg => ModelKind::Heisenberg,
            KindArg::Hubbard => ModelKind::Hubbard,
        }
    }
}

/// The one fallback available when a solver comes back empty-handed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FallbackArg {
    Greedy,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Which built-in model to generate.
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Lattice rows (heisenberg and hubbard).
    #[arg(long)]
    pub rows: Option<usize>,
    /// Lattice columns (heisenberg and hubbard).
    #[arg(long)]
    pub cols: Option<usize>,
    /// Force periodic boundaries (chains default to periodic already).
    #[arg(long, conflicts_with = "open")]
    pub periodic: bool,
    /// Force open boundaries.
    #[arg(long)]
    pub open: bool,
    /// Heisenberg exchange coupling.
    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,
    /// Hubbard hopping amplitude.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Hubbard on-site repulsion.
    #[arg(long, default_value_t = 2.0)]
    pub u: f64,
    /// Where to write the Hamiltonian text file.
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Hamiltonian text file to group.
    #[arg(short, long)]
    pub input: PathBuf,
    /// Commutation predicate: qwc (qubit-wise) or gc (general).
    #[arg(long)]
    pub mode: CommutationMode,
    /// Coloring solver.
    #[arg(long, value_enum)]
    pub solver: SolverKind,
    /// Color budget for exact/anneal; defaults to the greedy color count.
    #[arg(long)]
    pub colors: Option<usize>,
    /// Constraint penalty weight in the coloring QUBO.
    #[arg(long, default_value_t = 4.0)]
    pub penalty: f64,
    /// Annealing reads (restarts).
    #[arg(long, default_value_t = 1000)]
    pub reads: usize,
    /// Metropolis sweeps per read.
    #[arg(long, default_value_t = 1000)]
    pub sweeps: usize,
    /// Annealer RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Remove Z/I-only terms before grouping (they form one
    /// computational-basis group).
    #[arg(long)]
    pub strip_z: bool,
    /// Remove terms that commute with every other term before grouping.
    #[arg(long)]
    pub strip_universal: bool,
    /// What to fall back to when the solver finds no valid coloring.
    #[arg(long, value_enum)]
    pub fallback: Option<FallbackArg>,
    /// Where the annealer's sample table goes (anneal solver only).
    #[arg(short = 'o', long, default_value = "samples.tsv")]
    pub samples_out: PathBuf,
}

#[derive(Debug, Args)]
pub struct QuboArgs {
    /// Hamiltonian text file.
    #[arg(short, long)]
    pub input: PathBuf,
    /// Commutation predicate for the conflict graph.
    #[arg(long)]
    pub mode: CommutationMode,
    /// Number of colors (one-hot block size per vertex).
    #[arg(long)]
    pub colors: usize,
    /// Constraint penalty weight.
    #[arg(long)]
    pub penalty: f64,
    #[arg(long)]
    pub strip_z: bool,
    #[arg(long)]
    pub strip_universal: bool,
    /// Where to write the QUBO coordinate file.
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct VqeArgs {
    /// Hamiltonian text file (two qubits; that is all the ansatz registry
    /// covers).
    #[arg(short, long)]
    pub input: PathBuf,
    /// How terms are grouped into simultaneous measurements.
    #[arg(long)]
    pub grouping: GroupingMode,
    /// Shots per measurement group per energy evaluation.
    #[arg(long, default_value_t = 8192)]
    pub shots: u64,
    /// Root seed for all sampling in the run.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Initial parameter guess.
    #[arg(long, default_value_t = 0.0)]
    pub theta_init: f64,
    /// Cap on golden-section refinement steps.
    #[arg(long, default_value_t = 100)]
    pub max_iterations: usize,
    /// sampled: shot noise as on hardware; exact: noiseless expectations.
    #[arg(long, default_value = "sampled")]
    pub objective: ObjectiveMode,
    /// QUBO penalty for the annealed grouping.
    #[arg(long, default_value_t = 4.0)]
    pub penalty: f64,
    /// Annealing reads for the annealed grouping.
    #[arg(long, default_value_t = 1000)]
    pub reads: usize,
    /// Sweeps per read for the annealed grouping.
    #[arg(long, default_value_t = 1000)]
    pub sweeps: usize,
    /// Where to write the JSON report.
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    /// Manifest file, one grouping job per line; omit for the built-in set.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Directory for survey_groups.tsv and survey_valid.csv.
    #[arg(short, long, default_value = ".")]
    pub out_dir: PathBuf,
}

fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}

fn parse_input_hamiltonian(path: &Path, text: &str) -> Result<Hamiltonian, CliError> {
    pauliq_core::pauli::parse_hamiltonian(text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn path_str(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

pub fn cmd_model(args: &ModelArgs, argv: &[String]) -> Result<(), CliError> {
    let periodic = match (args.periodic, args.open) {
        (true, _) => Some(true),
        (_, true) => Some(false),
        _ => None,
    };
    let h = build_model(
        args.kind.into(),
        args.rows,
        args.cols,
        periodic,
        args.coupling,
        args.t,
        args.u,
    )?;
    let rendered = h.render();
    write_output(&args.output, &rendered)?;
    let kind: ModelKind = args.kind.into();
    RunManifest::new("model", argv)
        .flag("kind", kind.as_str())
        .flag("rows", args.rows)
        .flag("cols", args.cols)
        .flag("periodic", periodic)
        .flag("coupling", args.coupling)
        .flag("t", args.t)
        .flag("u", args.u)
        .flag("output", path_str(&args.output))
        .output(&path_str(&args.output))
        .write_sidecar(&args.output)?;
    println!("m {}", h.len());
    println!("n_qubits {}", h.n_qubits());
    println!("wrote {}", args.output.display());
    Ok(())
}

/// Prints one grouping as `group N: indices...` lines followed by the member
/// terms, then the group count and the measurement-run speedup.
fn print_grouping(h: &Hamiltonian, groups: &[Vec<usize>]) {
    for (color, group) in groups.iter().enumerate() {
        let indices: Vec<String> = group.iter().map(usize::to_string).collect();
        println!("group {color}: {}", indices.join(" "));
        for &term in group {
            println!("  {}", render_term(&h.terms()[term]));
        }
    }
    println!("groups {}", groups.len());
    if !groups.is_empty() {
        println!("speedup {}", speedup(h.len(), groups.len()));
    }
}

pub fn cmd_group(args: &GroupArgs, argv: &[String]) -> Result<(), CliError> {
    let text = read_input(&args.input)?;
    let h = parse_input_hamiltonian(&args.input, &text)?;
    let stripped = apply_stripping(&h, args.mode, args.strip_universal, args.strip_z);
    let anneal = AnnealConfig {
        num_reads: args.reads,
        sweeps_per_read: args.sweeps,
        seed: args.seed,
        ..AnnealConfig::default()
    };
    let outcome = solve_grouping(
        &stripped.hamiltonian,
        args.mode,
        args.solver,
        args.colors,
        args.penalty,
        &anneal,
    )?;

    println!("m {}", stripped.hamiltonian.len());
    println!("n_qubits {}", h.n_qubits());
    if args.strip_universal {
        println!("stripped_universal {}", stripped.removed_universal.len());
    }
    if args.strip_z {
        println!("stripped_z {}", stripped.removed_z_only.len());
    }
    println!("mode {}", args.mode);
    println!("solver {}", args.solver);
    println!("greedy_colors {}", outcome.greedy_colors);
    println!("colors {}", outcome.colors_used);

    if let (Some(samples), Some(stats)) = (&outcome.samples, &outcome.stats) {
        write_output(&args.samples_out, &samples.render_tsv())?;
        RunManifest::new("group", argv)
            .flag("input", path_str(&args.input))
            .flag("mode", args.mode.to_string())
            .flag("solver", args.solver.as_str())
            .flag("colors", outcome.colors_used)
            .flag("penalty", args.penalty)
            .flag("reads", args.reads)
            .flag("sweeps", args.sweeps)
            .flag("strip-z", args.strip_z)
            .flag("strip-universal", args.strip_universal)
            .flag("samples-out", path_str(&args.samples_out))
            .seeded(args.seed)
            .input(&path_str(&args.input), text.as_bytes())
            .output(&path_str(&args.samples_out))
            .write_sidecar(&args.samples_out)?;
        println!("qubo_dim {}", outcome.qubo_dim.unwrap_or(0));
        println!("reads {}", stats.total_reads);
        println!("valid {}", stats.valid_count);
        if let Some(min) = stats.min_energy {
            println!("min_energy {min}");
        }
        println!("ground_hit_rate {:.4}", stats.ground_hit_rate());
        println!("samples {}", args.samples_out.display());
    }

    match &outcome.grouping {
        Some(grouping) => print_grouping(&stripped.hamiltonian, grouping.groups()),
        None => {
            if args.fallback == Some(FallbackArg::Greedy) {
                println!("fallback greedy");
                let fallback = solve_grouping(
                    &stripped.hamiltonian,
                    args.mode,
                    SolverKind::Greedy,
                    None,
                    args.penalty,
                    &anneal,
                )?;
                let grouping = fallback.grouping.expect("greedy always colors");
                print_grouping(&stripped.hamiltonian, grouping.groups());
            } else {
                return Err(CliError::NoValidSolution(format!(
                    "no valid {}-color solution found by the {} solver",
                    outcome.colors_used, args.solver
                )));
            }
        }
    }
    Ok(())
}

pub fn cmd_qubo(args: &QuboArgs, argv: &[String]) -> Result<(), CliError> {
    let text = read_input(&args.input)?;
    let h = parse_input_hamiltonian(&args.input, &text)?;
    let stripped = apply_stripping(&h, args.mode, args.strip_universal, args.strip_z);
    let graph = build_noncommutation_graph(&stripped.hamiltonian, args.mode);
    let qubo = graph_coloring_qubo(&graph, args.colors, args.penalty)
        .map_err(|e| CliError::Usage(format!("cannot build coloring QUBO: {e}")))?;
    write_output(&args.output, &qubo.render())?;
    RunManifest::new("qubo", argv)
        .flag("input", path_str(&args.input))
        .flag("mode", args.mode.to_string())
        .flag("colors", args.colors)
        .flag("penalty", args.penalty)
        .flag("strip-z", args.strip_z)
        .flag("strip-universal", args.strip_universal)
        .flag("output", path_str(&args.output))
        .input(&path_str(&args.input), text.as_bytes())
        .output(&path_str(&args.output))
        .write_sidecar(&args.output)?;
    println!("dim {}", qubo.dim());
    println!("wrote {}", args.output.display());
    Ok(())
}

pub fn cmd_vqe(args: &VqeArgs, argv: &[String]) -> Result<(), CliError> {
    let text = read_input(&args.input)?;
    let h = parse_input_hamiltonian(&args.input, &text)?;
    let mut cfg = VqeConfig::with_seed(args.seed);
    cfg.shots_per_group = args.shots;
    cfg.max_iterations = args.max_iterations;
    cfg.theta_init = args.theta_init;
    cfg.grouping_mode = args.grouping;
    cfg.objective = args.objective;
    cfg.penalty = args.penalty;
    cfg.anneal.num_reads = args.reads;
    cfg.anneal.sweeps_per_read = args.sweeps;
    let report = run_vqe(&h, &cfg).map_err(|e| match e {
        VqeError::NoValidSample { .. } => CliError::NoValidSolution(e.to_string()),
        VqeError::UnregisteredAnsatz { .. } => CliError::Usage(e.to_string()),
        other => CliError::Internal(other.to_string()),
    })?;
    let mut json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Internal(format!("report serialization failed: {e}")))?;
    json.push('\n');
    write_output(&args.output, &json)?;
    RunManifest::new("vqe", argv)
        .flag("input", path_str(&args.input))
        .flag("grouping", args.grouping.as_str())
        .flag("shots", args.shots)
        .flag("theta-init", args.theta_init)
        .flag("max-iterations", args.max_iterations)
        .flag(
            "objective",
            match args.objective {
                ObjectiveMode::Sampled => "sampled",
                ObjectiveMode::Exact => "exact",
            },
        )
        .flag("penalty", args.penalty)
        .flag("reads", args.reads)
        .flag("sweeps", args.sweeps)
        .flag("output", path_str(&args.output))
        .seeded(args.seed)
        .input(&path_str(&args.input), text.as_bytes())
        .output(&path_str(&args.output))
        .write_sidecar(&args.output)?;
    println!(
        "{}\t{}\t{:.6}",
        args.grouping, report.runs_per_evaluation, report.best_energy
    );
    println!("theta {:.6}", report.best_theta);
    println!("evaluations {}", report.total_evaluations);
    println!("speedup {}", report.speedup_factor);
    println!("wrote {}", args.output.display());
    Ok(())
}

pub fn cmd_survey(args: &SurveyArgs, argv: &[String]) -> Result<(), CliError> {
    let (manifest_text, manifest_origin) = match &args.manifest {
        Some(path) => (read_input(path)?, path_str(path)),
        None => (DEFAULT_MANIFEST.to_string(), "builtin".to_string()),
    };
    let output = run_survey(&manifest_text);
    for warning in &output.warnings {
        eprintln!("warning: {warning}");
    }

    let table = render_survey_table(&output.records);
    let csv = render_valid_counts_csv(&output.valid_counts);
    let table_path = args.out_dir.join("survey_groups.tsv");
    let csv_path = args.out_dir.join("survey_valid.csv");
    write_output(&table_path, &table)?;
    write_output(&csv_path, &csv)?;
    let manifest = RunManifest::new("survey", argv)
        .flag("manifest", manifest_origin.clone())
        .flag("out-dir", path_str(&args.out_dir))
        .input(&manifest_origin, manifest_text.as_bytes())
        .output(&path_str(&table_path))
        .output(&path_str(&csv_path));
    manifest.write_sidecar(&table_path)?;
    manifest.write_sidecar(&csv_path)?;

    print!("{table}");
    println!("wrote {}", table_path.display());
    println!("wrote {}", csv_path.display());
    Ok(())
}
