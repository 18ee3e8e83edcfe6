//! Batch grouping surveys: a small line-oriented manifest describes one
//! grouping job per row, and the survey runs them all, collecting group
//! counts and speedups into a TSV plus annealer valid-sample counts into a
//! CSV suitable for plotting against QUBO size.

use crate::pipeline::{apply_stripping, solve_grouping, speedup, SolverKind};
use crate::CliError;
use pauliq_core::anneal::{AnnealConfig, ValidCountRecord};
use pauliq_core::models::{
    h2_hamiltonian, heisenberg_hamiltonian, hubbard_hamiltonian, jordan_wigner, LatticeSpec,
};
use pauliq_core::pauli::{CommutationMode, Hamiltonian};
use thiserror::Error;

/// The survey run when no manifest file is given: the built-in models under
/// both commutation modes, solved greedily, exactly where the greedy answer
/// is beatable, and by annealing at the sizes a sampler can handle. Hubbard
/// rows strip Z-only terms (one computational-basis group) and universal
/// commuters (members of every group) before counting, Heisenberg and
/// molecular rows only the universal commuters where general commutation
/// makes some.
pub const DEFAULT_MANIFEST: &str = "\
# kind rows cols mode solver colors penalty reads seed flags
h2 - - qwc greedy - - - - -
h2 - - qwc anneal - 4 1000 1 -
h2 - - gc greedy - - - - strip-universal
h2 - - gc anneal - 4 1000 2 strip-universal
heisenberg 1 20 qwc greedy - - - - periodic
heisenberg 1 20 qwc anneal - 4 1000 3 periodic,sweeps=2000
heisenberg 1 20 gc greedy - - - - periodic
heisenberg 3 3 qwc greedy - - - - -
heisenberg 3 3 qwc anneal - 4 1000 4 -
heisenberg 3 3 gc greedy - - - - -
heisenberg 3 3 gc exact - - - - -
heisenberg 3 3 gc anneal 3 4 200 11 sweeps=2000
hubbard 2 2 qwc greedy - - - - strip-z,strip-universal
hubbard 2 2 qwc anneal - 4 200 7 strip-z,strip-universal
hubbard 2 2 gc greedy - - - - strip-universal
hubbard 1 3 qwc greedy - - - - strip-z,strip-universal
hubbard 1 3 gc greedy - - - - strip-universal
";

/// Which built-in model a survey row asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    H2,
    Heisenberg,
    Hubbard,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::H2 => "h2",
            ModelKind::Heisenberg => "heisenberg",
            ModelKind::Hubbard => "hubbard",
        }
    }
}

/// One parsed manifest row. Field order in the text format:
/// `kind rows cols mode solver colors penalty reads seed flags`,
/// whitespace-separated, `-` for "use the default".
#[derive(Debug, Clone, PartialEq)]
pub struct SurveyRow {
    pub kind: ModelKind,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub mode: CommutationMode,
    pub solver: SolverKind,
    pub colors: Option<usize>,
    pub penalty: f64,
    pub reads: u64,
    pub seed: u64,
    /// Boundary override from the flags field; `None` keeps the lattice
    /// default (chains periodic, grids open).
    pub periodic: Option<bool>,
    pub strip_z: bool,
    pub strip_universal: bool,
    pub hopping: f64,
    pub repulsion: f64,
    pub coupling: f64,
    pub sweeps: usize,
}

pub const DEFAULT_PENALTY: f64 = 4.0;
pub const DEFAULT_READS: u64 = 1000;
pub const DEFAULT_SWEEPS: usize = 1000;
pub const DEFAULT_HOPPING: f64 = 1.0;
pub const DEFAULT_REPULSION: f64 = 2.0;
pub const DEFAULT_COUPLING: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("manifest line {line}: {kind}")]
pub struct SurveyParseError {
    pub line: usize,
    pub kind: SurveyParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurveyParseErrorKind {
    #[error("expected 10 fields, found {found}")]
    WrongFieldCount { found: usize },
    #[error("unknown model kind `{0}` (expected h2, heisenberg, or hubbard)")]
    UnknownKind(String),
    #[error("unknown commutation mode `{0}` (expected qwc or gc)")]
    UnknownMode(String),
    #[error("unknown solver `{0}` (expected greedy, exact, or anneal)")]
    UnknownSolver(String),
    #[error("field `{field}` has invalid value `{value}`")]
    InvalidNumber { field: &'static str, value: String },
    #[error("unknown flag `{0}`")]
    UnknownFlag(String),
}

fn truncated(s: &str) -> String {
    s.chars().take(40).collect()
}

fn parse_optional<T: std::str::FromStr>(
    field: &'static str,
    value: &str,
) -> Result<Option<T>, SurveyParseErrorKind> {
    if value == "-" {
        return Ok(None);
    }
    value
        .parse()
        .map(Some)
        .map_err(|_| SurveyParseErrorKind::InvalidNumber {
            field,
            value: truncated(value),
        })
}

fn parse_finite(field: &'static str, value: &str) -> Result<Option<f64>, SurveyParseErrorKind> {
    let parsed: Option<f64> = parse_optional(field, value)?;
    match parsed {
        Some(x) if !x.is_finite() => Err(SurveyParseErrorKind::InvalidNumber {
            field,
            value: truncated(value),
        }),
        other => Ok(other),
    }
}

/// Parses one manifest row (comments and blank lines are the caller's
/// concern).
pub fn parse_survey_row(line: &str) -> Result<SurveyRow, SurveyParseErrorKind> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [kind, rows, cols, mode, solver, colors, penalty, reads, seed, flags] = fields[..] else {
        return Err(SurveyParseErrorKind::WrongFieldCount {
            found: fields.len(),
        });
    };
    let kind = match kind {
        "h2" => ModelKind::H2,
        "heisenberg" => ModelKind::Heisenberg,
        "hubbard" => ModelKind::Hubbard,
        other => return Err(SurveyParseErrorKind::UnknownKind(truncated(other))),
    };
    let mode: CommutationMode = mode
        .parse()
        .map_err(|_| SurveyParseErrorKind::UnknownMode(truncated(mode)))?;
    let solver: SolverKind = solver
        .parse()
        .map_err(|_| SurveyParseErrorKind::UnknownSolver(truncated(solver)))?;
    let mut row = SurveyRow {
        kind,
        rows: parse_optional("rows", rows)?,
        cols: parse_optional("cols", cols)?,
        mode,
        solver,
        colors: parse_optional("colors", colors)?,
        penalty: parse_finite("penalty", penalty)?.unwrap_or(DEFAULT_PENALTY),
        reads: parse_optional("reads", reads)?.unwrap_or(DEFAULT_READS),
        seed: parse_optional("seed", seed)?.unwrap_or(0),
        periodic: None,
        strip_z: false,
        strip_universal: false,
        hopping: DEFAULT_HOPPING,
        repulsion: DEFAULT_REPULSION,
        coupling: DEFAULT_COUPLING,
        sweeps: DEFAULT_SWEEPS,
    };
    if flags != "-" {
        for token in flags.split(',') {
            match token.split_once('=') {
                None => match token {
                    "periodic" => row.periodic = Some(true),
                    "open" => row.periodic = Some(false),
                    "strip-z" => row.strip_z = true,
                    "strip-universal" => row.strip_universal = true,
                    other => return Err(SurveyParseErrorKind::UnknownFlag(truncated(other))),
                },
                Some((key, value)) => match key {
                    "t" => {
                        row.hopping = parse_finite("t", value)?.ok_or_else(|| {
                            SurveyParseErrorKind::InvalidNumber {
                                field: "t",
                                value: truncated(value),
                            }
                        })?;
                    }
                    "u" => {
                        row.repulsion = parse_finite("u", value)?.ok_or_else(|| {
                            SurveyParseErrorKind::InvalidNumber {
                                field: "u",
                                value: truncated(value),
                            }
                        })?;
                    }
                    "coupling" => {
                        row.coupling = parse_finite("coupling", value)?.ok_or_else(|| {
                            SurveyParseErrorKind::InvalidNumber {
                                field: "coupling",
                                value: truncated(value),
                            }
                        })?;
                    }
                    "sweeps" => {
                        row.sweeps = parse_optional("sweeps", value)?.ok_or_else(|| {
                            SurveyParseErrorKind::InvalidNumber {
                                field: "sweeps",
                                value: truncated(value),
                            }
                        })?;
                    }
                    other => return Err(SurveyParseErrorKind::UnknownFlag(truncated(other))),
                },
            }
        }
    }
    Ok(row)
}

/// Strict whole-file parse: every non-comment line must be a valid row.
/// Returns `(line_number, row)` pairs in file order.
pub fn parse_survey_manifest(text: &str) -> Result<Vec<(usize, SurveyRow)>, SurveyParseError> {
    let mut rows = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let row = parse_survey_row(trimmed).map_err(|kind| SurveyParseError {
            line: index + 1,
            kind,
        })?;
        rows.push((index + 1, row));
    }
    Ok(rows)
}

impl SurveyRow {
    /// Human-readable row label used in both output tables, e.g.
    /// `heisenberg-1x20-qwc-anneal`.
    pub fn label(&self) -> String {
        match (self.rows, self.cols) {
            (Some(r), Some(c)) if self.kind != ModelKind::H2 => {
                format!(
                    "{}-{}x{}-{}-{}",
                    self.kind.as_str(),
                    r,
                    c,
                    self.mode,
                    self.solver
                )
            }
            _ => format!("{}-{}-{}", self.kind.as_str(), self.mode, self.solver),
        }
    }

    /// Builds the row's qubit Hamiltonian.
    pub fn build_model(&self) -> Result<Hamiltonian, CliError> {
        build_model(
            self.kind,
            self.rows,
            self.cols,
            self.periodic,
            self.coupling,
            self.hopping,
            self.repulsion,
        )
    }

    pub fn anneal_config(&self) -> AnnealConfig {
        AnnealConfig {
            num_reads: self.reads as usize,
            sweeps_per_read: self.sweeps,
            seed: self.seed,
            ..AnnealConfig::default()
        }
    }
}

/// Shared model construction for the `model` command and survey rows.
pub fn build_model(
    kind: ModelKind,
    rows: Option<usize>,
    cols: Option<usize>,
    periodic: Option<bool>,
    coupling: f64,
    hopping: f64,
    repulsion: f64,
) -> Result<Hamiltonian, CliError> {
    match kind {
        ModelKind::H2 => Ok(h2_hamiltonian()),
        ModelKind::Heisenberg | ModelKind::Hubbard => {
            let (Some(rows), Some(cols)) = (rows, cols) else {
                return Err(CliError::Usage(format!(
                    "--rows and --cols are required for the {} model",
                    kind.as_str()
                )));
            };
            let mut spec = LatticeSpec::new(rows, cols)
                .map_err(|e| CliError::Usage(format!("invalid lattice: {e}")))?;
            if let Some(p) = periodic {
                spec = spec.with_periodic(p);
            }
            if kind == ModelKind::Heisenberg {
                Ok(heisenberg_hamiltonian(&spec, coupling))
            } else {
                let terms = hubbard_hamiltonian(&spec, hopping, repulsion);
                jordan_wigner(&terms, 2 * spec.n_sites())
                    .map_err(|e| CliError::Internal(format!("transform failed: {e}")))
            }
        }
    }
}

/// One line of the survey's main output table. `None` renders as `-`:
/// a solver that found nothing, or a row that failed before that stage.
#[derive(Debug, Clone, PartialEq)]
pub struct SurveyRecord {
    pub label: String,
    pub n_terms: Option<usize>,
    pub n_qubits: Option<usize>,
    pub greedy_colors: Option<usize>,
    pub solver_colors: Option<usize>,
    pub valid_count: Option<u64>,
    pub speedup: Option<f64>,
}

pub const SURVEY_TABLE_HEADER: &str =
    "label\tm\tn_qubits\tgreedy_colors\tsolver_colors\tvalid_count\tspeedup";

fn dash<T: ToString>(value: &Option<T>) -> String {
    value
        .as_ref()
        .map(|v| v.to_string())
        .unwrap_or_else(|| "-".to_string())
}

/// Renders the survey table; one row per record, `-` for absent values.
/// Parses back with [`parse_survey_table`].
pub fn render_survey_table(records: &[SurveyRecord]) -> String {
    let mut out = String::from(SURVEY_TABLE_HEADER);
    out.push('\n');
    for r in records {
        debug_assert!(
            !r.label.contains(['\t', '\n']) && !r.label.is_empty(),
            "labels must be single tab-free tokens"
        );
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.label,
            dash(&r.n_terms),
            dash(&r.n_qubits),
            dash(&r.greedy_colors),
            dash(&r.solver_colors),
            dash(&r.valid_count),
            dash(&r.speedup),
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("survey table line {line}: {kind}")]
pub struct SurveyTableParseError {
    pub line: usize,
    pub kind: SurveyTableParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurveyTableParseErrorKind {
    #[error("missing header `{SURVEY_TABLE_HEADER}`")]
    MissingHeader,
    #[error("expected 7 tab-separated fields, found {found}")]
    WrongFieldCount { found: usize },
    #[error("empty label")]
    EmptyLabel,
    #[error("field `{field}` has invalid value `{value}`")]
    InvalidNumber { field: &'static str, value: String },
}

fn table_number<T: std::str::FromStr>(
    line: usize,
    field: &'static str,
    value: &str,
) -> Result<Option<T>, SurveyTableParseError> {
    parse_optional(field, value).map_err(|kind| match kind {
        SurveyParseErrorKind::InvalidNumber { field, value } => SurveyTableParseError {
            line,
            kind: SurveyTableParseErrorKind::InvalidNumber { field, value },
        },
        _ => unreachable!("parse_optional only reports InvalidNumber"),
    })
}

/// Strict parse of [`render_survey_table`] output.
pub fn parse_survey_table(text: &str) -> Result<Vec<SurveyRecord>, SurveyTableParseError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == SURVEY_TABLE_HEADER => {}
        _ => {
            return Err(SurveyTableParseError {
                line: 1,
                kind: SurveyTableParseErrorKind::MissingHeader,
            })
        }
    }
    let mut records = Vec::new();
    for (index, line) in lines {
        if line.is_empty() {
            continue;
        }
        let at = index + 1;
        let fields: Vec<&str> = line.split('\t').collect();
        let [label, m, n_qubits, greedy, solver, valid, speedup] = fields[..] else {
            return Err(SurveyTableParseError {
                line: at,
                kind: SurveyTableParseErrorKind::WrongFieldCount {
                    found: fields.len(),
                },
            });
        };
        if label.is_empty() {
            return Err(SurveyTableParseError {
                line: at,
                kind: SurveyTableParseErrorKind::EmptyLabel,
            });
        }
        let speedup_value: Option<f64> = table_number(at, "speedup", speedup)?;
        if matches!(speedup_value, Some(x) if !x.is_finite()) {
            return Err(SurveyTableParseError {
                line: at,
                kind: SurveyTableParseErrorKind::InvalidNumber {
                    field: "speedup",
                    value: truncated(speedup),
                },
            });
        }
        records.push(SurveyRecord {
            label: label.to_string(),
            n_terms: table_number(at, "m", m)?,
            n_qubits: table_number(at, "n_qubits", n_qubits)?,
            greedy_colors: table_number(at, "greedy_colors", greedy)?,
            solver_colors: table_number(at, "solver_colors", solver)?,
            valid_count: table_number(at, "valid_count", valid)?,
            speedup: speedup_value,
        });
    }
    Ok(records)
}

/// Result of one survey: the table records plus the annealer valid-count
/// records (QUBO size on the x-axis) in manifest order.
#[derive(Debug, Clone, Default)]
pub struct SurveyOutput {
    pub records: Vec<SurveyRecord>,
    pub valid_counts: Vec<ValidCountRecord>,
    /// Warnings for rows that failed, in manifest order.
    pub warnings: Vec<String>,
}

/// Runs every manifest row, turning hard per-row failures into dashed
/// records instead of aborting the batch.
pub fn run_survey(manifest: &str) -> SurveyOutput {
    let mut output = SurveyOutput::default();
    for (index, line) in manifest.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let row = match parse_survey_row(trimmed) {
            Ok(row) => row,
            Err(kind) => {
                output.warnings.push(format!("line {}: {kind}", index + 1));
                output.records.push(SurveyRecord {
                    label: format!("row{}", index + 1),
                    n_terms: None,
                    n_qubits: None,
                    greedy_colors: None,
                    solver_colors: None,
                    valid_count: None,
                    speedup: None,
                });
                continue;
            }
        };
        let label = row.label();
        let mut record = SurveyRecord {
            label: label.clone(),
            n_terms: None,
            n_qubits: None,
            greedy_colors: None,
            solver_colors: None,
            valid_count: None,
            speedup: None,
        };
        match survey_one(&row) {
            Ok((stripped_len, n_qubits, outcome)) => {
                record.n_terms = Some(stripped_len);
                record.n_qubits = Some(n_qubits);
                record.greedy_colors = Some(outcome.greedy_colors);
                record.solver_colors = outcome.n_groups();
                if let Some(stats) = &outcome.stats {
                    record.valid_count = Some(stats.valid_count);
                    output.valid_counts.push(ValidCountRecord {
                        label: label.clone(),
                        n_qubits: outcome.qubo_dim.unwrap_or(0),
                        valid_count: stats.valid_count,
                        total_reads: stats.total_reads,
                    });
                }
                if outcome.grouping.is_none() {
                    output
                        .warnings
                        .push(format!("{label}: solver found no valid grouping"));
                }
                record.speedup = record
                    .solver_colors
                    .filter(|&g| g > 0)
                    .map(|g| speedup(stripped_len, g));
            }
            Err(e) => output.warnings.push(format!("{label}: {e}")),
        }
        output.records.push(record);
    }
    output
}

fn survey_one(row: &SurveyRow) -> Result<(usize, usize, crate::pipeline::GroupOutcome), CliError> {
    let h = row.build_model()?;
    let stripped = apply_stripping(&h, row.mode, row.strip_universal, row.strip_z);
    let outcome = solve_grouping(
        &stripped.hamiltonian,
        row.mode,
        row.solver,
        row.colors,
        row.penalty,
        &row.anneal_config(),
    )?;
    Ok((stripped.hamiltonian.len(), h.n_qubits(), outcome))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_defaults_fill_in() {
        let row = parse_survey_row("h2 - - qwc greedy - - - - -").unwrap();
        assert_eq!(row.kind, ModelKind::H2);
        assert_eq!(row.mode, CommutationMode::Qwc);
        assert_eq!(row.solver, SolverKind::Greedy);
        assert_eq!(row.colors, None);
        assert_eq!(row.penalty, DEFAULT_PENALTY);
        assert_eq!(row.reads, DEFAULT_READS);
        assert_eq!(row.seed, 0);
        assert_eq!(row.sweeps, DEFAULT_SWEEPS);
        assert_eq!(row.label(), "h2-qwc-greedy");
    }

    #[test]
    fn row_flags_parse() {
        let row = parse_survey_row(
            "hubbard 2 2 gc anneal 3 2.5 200 9 strip-z,strip-universal,t=0.7,u=1.3,sweeps=50,open",
        )
        .unwrap();
        assert_eq!(row.rows, Some(2));
        assert_eq!(row.colors, Some(3));
        assert_eq!(row.penalty, 2.5);
        assert_eq!(row.reads, 200);
        assert_eq!(row.seed, 9);
        assert!(row.strip_z && row.strip_universal);
        assert_eq!(row.hopping, 0.7);
        assert_eq!(row.repulsion, 1.3);
        assert_eq!(row.sweeps, 50);
        assert_eq!(row.periodic, Some(false));
        assert_eq!(row.label(), "hubbard-2x2-gc-anneal");
    }

    #[test]
    fn row_rejections() {
        use SurveyParseErrorKind as K;
        let cases = [
            ("h2 - - qwc greedy - - - -", "field count"),
            ("water - - qwc greedy - - - - -", "kind"),
            ("h2 - - diag greedy - - - - -", "mode"),
            ("h2 - - qwc brute - - - - -", "solver"),
            ("h2 - - qwc greedy x - - - -", "colors"),
            ("h2 - - qwc anneal - nan - - -", "penalty"),
            ("h2 - - qwc anneal - - -3 - -", "reads"),
            ("h2 - - qwc greedy - - - - wat", "flag"),
            ("h2 - - qwc greedy - - - - sweeps=-", "sweeps"),
        ];
        for (line, what) in cases {
            let err = parse_survey_row(line).unwrap_err();
            match (what, &err) {
                ("field count", K::WrongFieldCount { .. })
                | ("kind", K::UnknownKind(_))
                | ("mode", K::UnknownMode(_))
                | ("solver", K::UnknownSolver(_))
                | ("colors", K::InvalidNumber { .. })
                | ("penalty", K::InvalidNumber { .. })
                | ("reads", K::InvalidNumber { .. })
                | ("flag", K::UnknownFlag(_))
                | ("sweeps", K::InvalidNumber { .. }) => {}
                other => panic!("unexpected error for {line:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn default_manifest_parses_whole() {
        let rows = parse_survey_manifest(DEFAULT_MANIFEST).unwrap();
        assert_eq!(rows.len(), 17);
        assert!(rows
            .iter()
            .any(|(_, r)| r.label() == "heisenberg-1x20-qwc-greedy"));
    }

    #[test]
    fn manifest_parse_reports_line_numbers() {
        let err = parse_survey_manifest("# ok\nh2 - - qwc greedy - - - - -\nbogus\n").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn table_round_trip() {
        let records = vec![
            SurveyRecord {
                label: "h2-qwc-greedy".into(),
                n_terms: Some(4),
                n_qubits: Some(2),
                greedy_colors: Some(2),
                solver_colors: Some(2),
                valid_count: None,
                speedup: Some(2.0),
            },
            SurveyRecord {
                label: "hubbard-2x2-qwc-anneal".into(),
                n_terms: Some(16),
                n_qubits: Some(8),
                greedy_colors: Some(8),
                solver_colors: None,
                valid_count: Some(0),
                speedup: None,
            },
        ];
        let text = render_survey_table(&records);
        let back = parse_survey_table(&text).unwrap();
        assert_eq!(back, records);
        assert_eq!(render_survey_table(&back), text);
    }

    #[test]
    fn table_round_trips_fractional_speedups() {
        let records = vec![SurveyRecord {
            label: "heisenberg-3x3-gc-greedy".into(),
            n_terms: Some(36),
            n_qubits: Some(9),
            greedy_colors: Some(4),
            solver_colors: Some(4),
            valid_count: None,
            speedup: Some(36.0 / 4.0),
        }];
        let back = parse_survey_table(&render_survey_table(&records)).unwrap();
        assert_eq!(back[0].speedup, Some(9.0));
    }

    #[test]
    fn table_rejections() {
        use SurveyTableParseErrorKind as K;
        let header = SURVEY_TABLE_HEADER;
        let cases = [
            ("nope\n", K::MissingHeader),
            (
                "label\tm\tn_qubits\tgreedy_colors\tsolver_colors\tvalid_count\n",
                K::MissingHeader,
            ),
        ];
        for (text, kind) in cases {
            assert_eq!(parse_survey_table(text).unwrap_err().kind, kind);
        }
        let bad_rows = [
            format!("{header}\na\t1\t2\t3\t4\t5\n"),
            format!("{header}\n\t1\t2\t3\t4\t5\t6\n"),
            format!("{header}\na\tx\t2\t3\t4\t5\t6\n"),
            format!("{header}\na\t1\t2\t3\t4\t5\tinf\n"),
        ];
        for text in &bad_rows {
            assert!(parse_survey_table(text).is_err(), "should reject {text:?}");
        }
        assert!(parse_survey_table(&format!("{header}\n"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn empty_manifest_yields_empty_outputs() {
        let out = run_survey("# nothing\n\n");
        assert!(out.records.is_empty());
        assert!(out.valid_counts.is_empty());
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn malformed_row_becomes_dashes_and_survey_continues() {
        let out = run_survey("bogus line here that is wrong\nh2 - - qwc greedy - - - - -\n");
        assert_eq!(out.records.len(), 2);
        assert_eq!(out.records[0].label, "row1");
        assert_eq!(out.records[0].n_terms, None);
        assert_eq!(out.records[1].label, "h2-qwc-greedy");
        assert_eq!(out.records[1].solver_colors, Some(2));
        assert_eq!(out.records[1].speedup, Some(2.0));
        assert_eq!(out.warnings.len(), 1);
    }

    #[test]
    fn h2_anneal_row_produces_valid_count_record() {
        let out = run_survey("h2 - - qwc anneal - 4 50 1 -\n");
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.valid_counts.len(), 1);
        let vc = &out.valid_counts[0];
        assert_eq!(vc.label, "h2-qwc-anneal");
        assert_eq!(vc.n_qubits, 8);
        assert_eq!(vc.total_reads, 50);
        assert!(vc.valid_count > 0);
        assert_eq!(out.records[0].solver_colors, Some(2));
    }
}
