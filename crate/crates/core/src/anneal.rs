//! Low-energy sampling of QUBO instances.
//!
//! [`simulated_annealing_sample`] is the software stand-in for a quantum
//! annealer: independent reads of single-bit-flip Metropolis sweeps under a
//! geometrically rising inverse temperature. [`exhaustive_minimize`] is the
//! ground-truth oracle for small instances. [`sample_statistics`] judges a
//! sample set against the coloring constraints and aggregates the counts
//! that drive the survey tables.
//!
//! Determinism contract: every read draws from its own RNG stream derived
//! from `(seed, read index)`, so a sample set depends only on the instance
//! and the config, never on scheduling.

use crate::commgraph::Graph;
use crate::qubo::{check_constraints, parse_bits, render_bits, QuboError, QuboMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Exhaustive search enumerates `2^dim` bitstrings; beyond this it refuses.
pub const MAX_EXHAUSTIVE_DIM: usize = 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnnealError {
    #[error("num_reads must be at least 1")]
    NoReads,
    #[error("sweeps_per_read must be at least 1")]
    NoSweeps,
    #[error("need 0 < beta_initial < beta_final, got {initial} and {terminal}")]
    BadBetaRange { initial: f64, terminal: f64 },
    #[error("QUBO dimension must be at least 1")]
    EmptyQubo,
    #[error(
        "dimension {dim} exceeds the exhaustive limit of {MAX_EXHAUSTIVE_DIM}; \
         use simulated_annealing_sample instead"
    )]
    DimTooLargeForExhaustive { dim: usize },
    #[error(transparent)]
    Qubo(#[from] QuboError),
}

/// Inverse-temperature schedules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoolingSchedule {
    Geometric,
}

/// Annealing knobs. Defaults reproduce high valid-sample rates on the
/// four-vertex two-color reference instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnealConfig {
    pub num_reads: usize,
    pub sweeps_per_read: usize,
    pub beta_initial: f64,
    pub beta_final: f64,
    pub schedule: CoolingSchedule,
    pub seed: u64,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            num_reads: 1000,
            sweeps_per_read: 1000,
            beta_initial: 0.1,
            beta_final: 10.0,
            schedule: CoolingSchedule::Geometric,
            seed: 0,
        }
    }
}

impl AnnealConfig {
    pub fn with_seed(seed: u64) -> Self {
        AnnealConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), AnnealError> {
        if self.num_reads == 0 {
            return Err(AnnealError::NoReads);
        }
        if self.sweeps_per_read == 0 {
            return Err(AnnealError::NoSweeps);
        }
        let ok = self.beta_initial > 0.0
            && self.beta_initial < self.beta_final
            && self.beta_final.is_finite();
        if !ok {
            return Err(AnnealError::BadBetaRange {
                initial: self.beta_initial,
                terminal: self.beta_final,
            });
        }
        Ok(())
    }
}

/// One unique bitstring with its energy, how often it was sampled, and its
/// constraint verdict (`None` until judged against an instance).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRow {
    pub bits: Vec<bool>,
    pub energy: f64,
    pub frequency: u64,
    pub valid: Option<bool>,
}

/// Unique-bitstring aggregation of a sampling run, sorted by ascending
/// energy, then descending frequency, then bitstring.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    rows: Vec<SampleRow>,
    total_reads: u64,
}

impl SampleSet {
    fn from_counts(counts: BTreeMap<Vec<bool>, u64>, q: &QuboMatrix) -> SampleSet {
        let total_reads = counts.values().sum();
        let mut rows: Vec<SampleRow> = counts
            .into_iter()
            .map(|(bits, frequency)| {
                let energy = q.energy(&bits).expect("samples match the instance");
                SampleRow {
                    bits,
                    energy,
                    frequency,
                    valid: None,
                }
            })
            .collect();
        sort_rows(&mut rows);
        SampleSet { rows, total_reads }
    }

    pub fn rows(&self) -> &[SampleRow] {
        &self.rows
    }

    pub fn total_reads(&self) -> u64 {
        self.total_reads
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn min_energy(&self) -> Option<f64> {
        self.rows.iter().map(|r| r.energy).min_by(f64::total_cmp)
    }

    /// Lowest-energy row judged valid; `None` rows don't count, so call
    /// [`with_validity`](Self::with_validity) first.
    pub fn best_valid(&self) -> Option<&SampleRow> {
        self.rows
            .iter()
            .filter(|r| r.valid == Some(true))
            .min_by(|a, b| f64::total_cmp(&a.energy, &b.energy))
    }

    /// The same rows with every `valid` flag filled by the coloring
    /// constraints of `(g, k)`.
    pub fn with_validity(&self, g: &Graph, k: usize) -> Result<SampleSet, QuboError> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                Ok(SampleRow {
                    valid: Some(check_constraints(g, k, &r.bits)?.is_empty()),
                    ..r.clone()
                })
            })
            .collect::<Result<_, QuboError>>()?;
        Ok(SampleSet {
            rows,
            total_reads: self.total_reads,
        })
    }

    /// TSV export: `bitstring energy frequency valid` (tab separated), with
    /// the header line and the canonical sort. Valid renders as `1`/`0`,
    /// unjudged as `-`.
    pub fn render_tsv(&self) -> String {
        let mut out = String::from("bitstring\tenergy\tfrequency\tvalid\n");
        for row in &self.rows {
            let valid = match row.valid {
                Some(true) => "1",
                Some(false) => "0",
                None => "-",
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                render_bits(&row.bits),
                row.energy,
                row.frequency,
                valid
            ));
        }
        out
    }
}

fn sort_rows(rows: &mut [SampleRow]) {
    rows.sort_by(|a, b| {
        f64::total_cmp(&a.energy, &b.energy)
            .then(b.frequency.cmp(&a.frequency))
            .then(a.bits.cmp(&b.bits))
    });
}

struct SparseRows {
    diag: Vec<f64>,
    neighbors: Vec<Vec<(usize, f64)>>,
}

impl SparseRows {
    fn new(q: &QuboMatrix) -> Self {
        let dim = q.dim();
        let mut diag = vec![0.0; dim];
        let mut neighbors = vec![Vec::new(); dim];
        for ((i, j), value) in q.entries() {
            if i == j {
                diag[i] += value;
            } else {
                neighbors[i].push((j, value));
                neighbors[j].push((i, value));
            }
        }
        SparseRows { diag, neighbors }
    }

    /// Energy change from flipping bit `i`.
    fn flip_delta(&self, bits: &[bool], i: usize) -> f64 {
        let mut field = self.diag[i];
        for &(j, w) in &self.neighbors[i] {
            if bits[j] {
                field += w;
            }
        }
        if bits[i] {
            -field
        } else {
            field
        }
    }
}

fn beta_schedule(cfg: &AnnealConfig) -> Vec<f64> {
    let sweeps = cfg.sweeps_per_read;
    match cfg.schedule {
        CoolingSchedule::Geometric => {
            if sweeps == 1 {
                return vec![cfg.beta_final];
            }
            let ratio = cfg.beta_final / cfg.beta_initial;
            (0..sweeps)
                .map(|s| cfg.beta_initial * ratio.powf(s as f64 / (sweeps - 1) as f64))
                .collect()
        }
    }
}

/// Samples low-energy bitstrings of `q` by simulated annealing.
///
/// Each read starts from a uniformly random bitstring and performs
/// `sweeps_per_read` Metropolis sweeps (sequential single-bit flips) while
/// the inverse temperature rises along the schedule. Read `r` uses the RNG
/// stream `r` of a ChaCha generator seeded with `cfg.seed`.
pub fn simulated_annealing_sample(
    q: &QuboMatrix,
    cfg: &AnnealConfig,
) -> Result<SampleSet, AnnealError> {
    cfg.validate()?;
    let dim = q.dim();
    if dim == 0 {
        return Err(AnnealError::EmptyQubo);
    }
    let sparse = SparseRows::new(q);
    let betas = beta_schedule(cfg);
    let mut counts: BTreeMap<Vec<bool>, u64> = BTreeMap::new();
    for read in 0..cfg.num_reads {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(read as u64);
        let mut bits: Vec<bool> = (0..dim).map(|_| rng.gen_bool(0.5)).collect();
        for &beta in &betas {
            for i in 0..dim {
                let delta = sparse.flip_delta(&bits, i);
                if delta <= 0.0 || rng.gen::<f64>() < (-beta * delta).exp() {
                    bits[i] = !bits[i];
                }
            }
        }
        *counts.entry(bits).or_insert(0) += 1;
    }
    Ok(SampleSet::from_counts(counts, q))
}

/// Enumerates all bitstrings and returns every global minimizer, frequency 1
/// each. Refuses dimensions beyond [`MAX_EXHAUSTIVE_DIM`].
pub fn exhaustive_minimize(q: &QuboMatrix) -> Result<SampleSet, AnnealError> {
    let dim = q.dim();
    if dim == 0 {
        return Err(AnnealError::EmptyQubo);
    }
    if dim > MAX_EXHAUSTIVE_DIM {
        return Err(AnnealError::DimTooLargeForExhaustive { dim });
    }
    let mut best = f64::INFINITY;
    let mut minima: Vec<Vec<bool>> = Vec::new();
    for code in 0u64..(1u64 << dim) {
        let bits: Vec<bool> = (0..dim).map(|b| code >> b & 1 == 1).collect();
        let energy = q.energy(&bits).expect("width matches");
        if energy < best {
            best = energy;
            minima.clear();
            minima.push(bits);
        } else if energy == best {
            minima.push(bits);
        }
    }
    let counts: BTreeMap<Vec<bool>, u64> = minima.into_iter().map(|b| (b, 1)).collect();
    Ok(SampleSet::from_counts(counts, q))
}

/// Aggregate verdicts over a sample set for one coloring instance.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsReport {
    /// All rows, validity annotated, canonical sort.
    pub rows: Vec<SampleRow>,
    pub total_reads: u64,
    /// Reads that satisfied every constraint.
    pub valid_count: u64,
    /// Lowest energy seen (not necessarily the true ground energy).
    pub min_energy: Option<f64>,
    /// Reads that reached `min_energy`.
    pub min_energy_count: u64,
    /// Annealer qubits the instance needs: `n_vertices * k`.
    pub n_qubits: usize,
}

impl StatsReport {
    pub fn ground_hit_rate(&self) -> f64 {
        if self.total_reads == 0 {
            0.0
        } else {
            self.min_energy_count as f64 / self.total_reads as f64
        }
    }
}

/// Judges every row of `s` against the `(g, k)` coloring constraints and
/// tallies the counts.
pub fn sample_statistics(s: &SampleSet, g: &Graph, k: usize) -> Result<StatsReport, QuboError> {
    let judged = s.with_validity(g, k)?;
    let valid_count = judged
        .rows()
        .iter()
        .filter(|r| r.valid == Some(true))
        .map(|r| r.frequency)
        .sum();
    let min_energy = judged.min_energy();
    let min_energy_count = match min_energy {
        Some(minimum) => judged
            .rows()
            .iter()
            .filter(|r| r.energy == minimum)
            .map(|r| r.frequency)
            .sum(),
        None => 0,
    };
    Ok(StatsReport {
        rows: judged.rows.clone(),
        total_reads: judged.total_reads,
        valid_count,
        min_energy,
        min_energy_count,
        n_qubits: g.n_vertices() * k,
    })
}

/// Parse failure for the sample TSV format, with 1-based position.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct SampleParseError {
    pub line: usize,
    pub kind: SampleParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleParseErrorKind {
    #[error("expected the header `bitstring\tenergy\tfrequency\tvalid`")]
    MissingHeader,
    #[error("expected 4 tab-separated fields, found {0}")]
    WrongFieldCount(usize),
    #[error("empty bitstring")]
    EmptyBitstring,
    #[error("bitstring width {found} differs from {expected} in earlier rows")]
    WidthMismatch { expected: usize, found: usize },
    #[error("invalid bitstring character {0:?}")]
    InvalidBit(char),
    #[error("invalid energy `{0}`")]
    InvalidEnergy(String),
    #[error("invalid frequency `{0}`")]
    InvalidFrequency(String),
    #[error("invalid validity flag `{0}` (expected 1, 0, or -)")]
    InvalidValidity(String),
}

/// Parses the TSV written by [`SampleSet::render_tsv`]. Row order is kept
/// as-is; `total_reads` is the frequency sum.
pub fn parse_sample_set(text: &str) -> Result<SampleSet, SampleParseError> {
    let err = |line: usize, kind: SampleParseErrorKind| SampleParseError { line, kind };
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((_, header)) = lines.next() else {
        return Err(err(1, SampleParseErrorKind::MissingHeader));
    };
    if header.trim_end() != "bitstring\tenergy\tfrequency\tvalid" {
        return Err(err(1, SampleParseErrorKind::MissingHeader));
    }
    let mut rows: Vec<SampleRow> = Vec::new();
    let mut width: Option<usize> = None;
    for (i, raw) in lines {
        let line_no = i + 1;
        let fields: Vec<&str> = raw.trim_end_matches('\n').split('\t').collect();
        let [bits_field, energy_field, freq_field, valid_field] = fields[..] else {
            return Err(err(
                line_no,
                SampleParseErrorKind::WrongFieldCount(fields.len()),
            ));
        };
        if bits_field.is_empty() {
            return Err(err(line_no, SampleParseErrorKind::EmptyBitstring));
        }
        let bits = parse_bits(bits_field).map_err(|e| match e {
            QuboError::InvalidBit { found, .. } => {
                err(line_no, SampleParseErrorKind::InvalidBit(found))
            }
            other => unreachable!("parse_bits returned {other:?}"),
        })?;
        match width {
            None => width = Some(bits.len()),
            Some(expected) if expected != bits.len() => {
                return Err(err(
                    line_no,
                    SampleParseErrorKind::WidthMismatch {
                        expected,
                        found: bits.len(),
                    },
                ));
            }
            Some(_) => {}
        }
        let energy: f64 = energy_field
            .parse()
            .ok()
            .filter(|e: &f64| e.is_finite())
            .ok_or_else(|| {
                err(
                    line_no,
                    SampleParseErrorKind::InvalidEnergy(energy_field.into()),
                )
            })?;
        let frequency: u64 = freq_field.parse().ok().filter(|&f| f > 0).ok_or_else(|| {
            err(
                line_no,
                SampleParseErrorKind::InvalidFrequency(freq_field.into()),
            )
        })?;
        let valid = match valid_field.trim_end() {
            "1" => Some(true),
            "0" => Some(false),
            "-" => None,
            other => {
                return Err(err(
                    line_no,
                    SampleParseErrorKind::InvalidValidity(other.into()),
                ));
            }
        };
        rows.push(SampleRow {
            bits,
            energy,
            frequency,
            valid,
        });
    }
    let total_reads = rows.iter().map(|r| r.frequency).sum();
    Ok(SampleSet { rows, total_reads })
}

/// One line of the survey's valid-count table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidCountRecord {
    pub label: String,
    pub n_qubits: usize,
    pub valid_count: u64,
    pub total_reads: u64,
}

/// CSV export: `label,n_qubits,valid_count,total_reads` with header.
pub fn render_valid_counts_csv(records: &[ValidCountRecord]) -> String {
    let mut out = String::from("label,n_qubits,valid_count,total_reads\n");
    for r in records {
        debug_assert!(!r.label.contains(','), "labels must stay comma-free");
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.label, r.n_qubits, r.valid_count, r.total_reads
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ValidCountParseError {
    pub line: usize,
    pub kind: ValidCountParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidCountParseErrorKind {
    #[error("expected the header `label,n_qubits,valid_count,total_reads`")]
    MissingHeader,
    #[error("expected 4 comma-separated fields, found {0}")]
    WrongFieldCount(usize),
    #[error("empty label")]
    EmptyLabel,
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
}

/// Parses the CSV written by [`render_valid_counts_csv`].
pub fn parse_valid_counts_csv(text: &str) -> Result<Vec<ValidCountRecord>, ValidCountParseError> {
    let err = |line: usize, kind: ValidCountParseErrorKind| ValidCountParseError { line, kind };
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((_, header)) = lines.next() else {
        return Err(err(1, ValidCountParseErrorKind::MissingHeader));
    };
    if header.trim_end() != "label,n_qubits,valid_count,total_reads" {
        return Err(err(1, ValidCountParseErrorKind::MissingHeader));
    }
    let mut records = Vec::new();
    for (i, raw) in lines {
        let line_no = i + 1;
        let fields: Vec<&str> = raw.trim_end().split(',').collect();
        let [label, qubits_field, valid_field, total_field] = fields[..] else {
            return Err(err(
                line_no,
                ValidCountParseErrorKind::WrongFieldCount(fields.len()),
            ));
        };
        if label.is_empty() {
            return Err(err(line_no, ValidCountParseErrorKind::EmptyLabel));
        }
        let parse_u64 = |tok: &str| {
            tok.parse::<u64>()
                .map_err(|_| err(line_no, ValidCountParseErrorKind::InvalidNumber(tok.into())))
        };
        records.push(ValidCountRecord {
            label: label.to_string(),
            n_qubits: parse_u64(qubits_field)? as usize,
            valid_count: parse_u64(valid_field)?,
            total_reads: parse_u64(total_field)?,
        });
    }
    Ok(records)
}
