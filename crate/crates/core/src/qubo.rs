//! Graph K-coloring compiled to a QUBO (minimize `x^T Q x` over binary `x`),
//! plus validation and decoding of candidate bitstrings.
//!
//! Variable `x[v*k + c]` means "vertex v has color c". The one-hot constraint
//! `(1 - sum_c x_vc)^2` expands to `-penalty` on the diagonal and
//! `+2*penalty` between distinct colors of one vertex (the constant
//! `penalty * V` is dropped; [`one_hot_offset`] reports it). Each edge adds
//! `+penalty` between equal colors of its endpoints. A proper one-hot
//! coloring therefore sits at energy `-penalty * V`, and every constraint
//! violation costs at least `+penalty`.

use crate::commgraph::{Coloring, Graph};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Largest dimension accepted when parsing QUBO files.
pub const MAX_PARSED_DIM: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuboError {
    #[error("need at least one color")]
    NoColors,
    #[error("penalty must be positive and finite, got {0}")]
    BadPenalty(f64),
    #[error("matrix entry ({i}, {j}) is not finite")]
    NonFiniteEntry { i: usize, j: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bitstring length {bits} does not match QUBO dimension {dim}")]
    LengthMismatch { bits: usize, dim: usize },
    #[error("bitstring length {bits} does not fit {n_vertices} vertices times {k} colors")]
    ShapeMismatch {
        bits: usize,
        n_vertices: usize,
        k: usize,
    },
    #[error("QUBO dimension {dim} does not fit {n_vertices} vertices times {k} colors")]
    DimMismatch {
        dim: usize,
        n_vertices: usize,
        k: usize,
    },
    #[error("vertex {vertex} has {set_count} colors set; decoding needs exactly one")]
    NotOneHot { vertex: usize, set_count: usize },
    #[error("vertex {vertex} carries color {color}, beyond the {k} available")]
    ColorOutOfRange {
        vertex: usize,
        color: usize,
        k: usize,
    },
    #[error("invalid bit {found:?} at position {position}")]
    InvalidBit { position: usize, found: char },
}

/// Upper-triangular sparse QUBO matrix (entries keyed by `(i, j)` with
/// `i <= j`); inputs with `i > j` are folded onto the upper triangle, and
/// entries accumulating to exactly zero are removed.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), f64>,
}

impl QuboMatrix {
    pub fn new(dim: usize) -> Self {
        QuboMatrix {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `value` at `(i, j)`, folding onto `i <= j` and accumulating.
    pub fn add(&mut self, i: usize, j: usize, value: f64) -> Result<(), QuboError> {
        for index in [i, j] {
            if index >= self.dim {
                return Err(QuboError::IndexOutOfRange {
                    index,
                    dim: self.dim,
                });
            }
        }
        if !value.is_finite() {
            return Err(QuboError::NonFiniteEntry { i, j });
        }
        let key = (i.min(j), i.max(j));
        let entry = self.entries.entry(key).or_insert(0.0);
        *entry += value;
        if *entry == 0.0 {
            self.entries.remove(&key);
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0.0)
    }

    /// Stored entries in `(i, j)` lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn n_entries(&self) -> usize {
        self.entries.len()
    }

    /// `sum over stored (i, j) of Q[i,j] * bits[i] * bits[j]`.
    pub fn energy(&self, bits: &[bool]) -> Result<f64, QuboError> {
        if bits.len() != self.dim {
            return Err(QuboError::LengthMismatch {
                bits: bits.len(),
                dim: self.dim,
            });
        }
        Ok(self
            .entries
            .iter()
            .filter(|&(&(i, j), _)| bits[i] && bits[j])
            .map(|(_, &v)| v)
            .sum())
    }

    /// Text export: `# dim <n>` header, then `i j value` per stored entry
    /// with 17 significant digits (lossless for f64).
    pub fn render(&self) -> String {
        let mut out = format!("# dim {}\n", self.dim);
        for ((i, j), value) in self.entries() {
            out.push_str(&format!("{i} {j} {value:.16e}\n"));
        }
        out
    }
}

/// Free-function form of [`QuboMatrix::energy`].
pub fn qubo_energy(q: &QuboMatrix, bits: &[bool]) -> Result<f64, QuboError> {
    q.energy(bits)
}

/// Compiles "color graph `g` with exactly `k` colors" into a QUBO.
pub fn graph_coloring_qubo(g: &Graph, k: usize, penalty: f64) -> Result<QuboMatrix, QuboError> {
    if k == 0 {
        return Err(QuboError::NoColors);
    }
    if !(penalty > 0.0 && penalty.is_finite()) {
        return Err(QuboError::BadPenalty(penalty));
    }
    let v_count = g.n_vertices();
    let mut q = QuboMatrix::new(v_count * k);
    for v in 0..v_count {
        for c in 0..k {
            q.add(v * k + c, v * k + c, -penalty).expect("in range");
            for c2 in c + 1..k {
                q.add(v * k + c, v * k + c2, 2.0 * penalty)
                    .expect("in range");
            }
        }
    }
    for (u, w) in g.edges() {
        for c in 0..k {
            q.add(u * k + c, w * k + c, penalty).expect("in range");
        }
    }
    Ok(q)
}

/// The constant dropped from the one-hot expansion. Adding it back shifts
/// every proper coloring to energy zero and violations to positive values.
pub fn one_hot_offset(n_vertices: usize, penalty: f64) -> f64 {
    penalty * n_vertices as f64
}

/// One failed coloring constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Vertex does not have exactly one color bit set.
    NotOneHot { vertex: usize, set_count: usize },
    /// Both endpoints of an edge carry the same color bit.
    SameColorEdge { u: usize, v: usize, color: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotOneHot { vertex, set_count } => {
                write!(f, "vertex {vertex} has {set_count} colors set (wanted 1)")
            }
            Violation::SameColorEdge { u, v, color } => {
                write!(f, "adjacent vertices {u} and {v} share color {color}")
            }
        }
    }
}

/// A judged annealer bitstring: its energy under the instance's QUBO and any
/// constraint violations.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoringSolution {
    bits: Vec<bool>,
    energy: f64,
    violations: Vec<Violation>,
}

impl ColoringSolution {
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the two coloring constraints without touching any QUBO: one-hot
/// per vertex (reported in vertex order), then monochromatic edges (edge
/// order, then color order).
pub fn check_constraints(g: &Graph, k: usize, bits: &[bool]) -> Result<Vec<Violation>, QuboError> {
    if k == 0 {
        return Err(QuboError::NoColors);
    }
    if bits.len() != g.n_vertices() * k {
        return Err(QuboError::ShapeMismatch {
            bits: bits.len(),
            n_vertices: g.n_vertices(),
            k,
        });
    }
    let mut violations = Vec::new();
    for v in 0..g.n_vertices() {
        let set_count = bits[v * k..(v + 1) * k].iter().filter(|&&b| b).count();
        if set_count != 1 {
            violations.push(Violation::NotOneHot {
                vertex: v,
                set_count,
            });
        }
    }
    for (u, w) in g.edges() {
        for c in 0..k {
            if bits[u * k + c] && bits[w * k + c] {
                violations.push(Violation::SameColorEdge { u, v: w, color: c });
            }
        }
    }
    Ok(violations)
}

/// Runs both constraint checks and prices the bitstring under `q`.
/// `q` must have dimension `g.n_vertices() * k`.
pub fn validate_solution(
    g: &Graph,
    k: usize,
    q: &QuboMatrix,
    bits: &[bool],
) -> Result<ColoringSolution, QuboError> {
    if q.dim() != g.n_vertices() * k {
        return Err(QuboError::DimMismatch {
            dim: q.dim(),
            n_vertices: g.n_vertices(),
            k,
        });
    }
    let violations = check_constraints(g, k, bits)?;
    let energy = q.energy(bits)?;
    Ok(ColoringSolution {
        bits: bits.to_vec(),
        energy,
        violations,
    })
}

/// Reads a coloring out of a one-hot bitstring. Only the one-hot structure
/// is checked here; run [`validate_solution`] first if adjacency matters.
pub fn decode_coloring(bits: &[bool], n_vertices: usize, k: usize) -> Result<Coloring, QuboError> {
    if k == 0 {
        return Err(QuboError::NoColors);
    }
    if bits.len() != n_vertices * k {
        return Err(QuboError::ShapeMismatch {
            bits: bits.len(),
            n_vertices,
            k,
        });
    }
    let mut color_of = Vec::with_capacity(n_vertices);
    for v in 0..n_vertices {
        let window = &bits[v * k..(v + 1) * k];
        let set_count = window.iter().filter(|&&b| b).count();
        if set_count != 1 {
            return Err(QuboError::NotOneHot {
                vertex: v,
                set_count,
            });
        }
        color_of.push(window.iter().position(|&b| b).expect("one bit set"));
    }
    Ok(Coloring::from_assignments(color_of))
}

/// The inverse embedding: coloring to one-hot bitstring with `k` colors.
pub fn encode_coloring(coloring: &Coloring, k: usize) -> Result<Vec<bool>, QuboError> {
    if k == 0 {
        return Err(QuboError::NoColors);
    }
    let mut bits = vec![false; coloring.len() * k];
    for (vertex, &color) in coloring.color_of().iter().enumerate() {
        if color >= k {
            return Err(QuboError::ColorOutOfRange { vertex, color, k });
        }
        bits[vertex * k + color] = true;
    }
    Ok(bits)
}

/// Renders bits as a `0`/`1` string, index 0 leftmost.
pub fn render_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Parses a `0`/`1` string into bits.
pub fn parse_bits(s: &str) -> Result<Vec<bool>, QuboError> {
    s.chars()
        .enumerate()
        .map(|(position, found)| match found {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(QuboError::InvalidBit { position, found }),
        })
        .collect()
}

/// Parse failure for the QUBO text format, with 1-based position.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct QuboParseError {
    pub line: usize,
    pub column: usize,
    pub kind: QuboParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuboParseErrorKind {
    #[error("expected a `# dim <n>` header before any entries")]
    MissingHeader,
    #[error("invalid dimension `{0}`")]
    InvalidDim(String),
    #[error("dimension {0} exceeds the parser cap of {MAX_PARSED_DIM}")]
    DimTooLarge(usize),
    #[error("expected `<i> <j> <value>`, found `{0}`")]
    InvalidEntry(String),
    #[error("invalid index `{0}`")]
    InvalidIndex(String),
    #[error("invalid value `{0}`")]
    InvalidValue(String),
    #[error("value `{0}` is not finite")]
    NonFiniteValue(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// Parses the QUBO text format written by [`QuboMatrix::render`]: a
/// `# dim <n>` header, then `i j value` entries (any index order; duplicates
/// accumulate). Later `#` lines are comments.
pub fn parse_qubo(text: &str) -> Result<QuboMatrix, QuboParseError> {
    let err = |line: usize, kind: QuboParseErrorKind| QuboParseError {
        line,
        column: 1,
        kind,
    };
    let mut matrix: Option<QuboMatrix> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        match &mut matrix {
            None => {
                let Some(rest) = trimmed.strip_prefix("# dim") else {
                    return Err(err(line_no, QuboParseErrorKind::MissingHeader));
                };
                let token = rest.trim();
                let dim: usize = token
                    .parse()
                    .map_err(|_| err(line_no, QuboParseErrorKind::InvalidDim(token.to_string())))?;
                if dim > MAX_PARSED_DIM {
                    return Err(err(line_no, QuboParseErrorKind::DimTooLarge(dim)));
                }
                matrix = Some(QuboMatrix::new(dim));
            }
            Some(q) => {
                if trimmed.starts_with('#') {
                    continue;
                }
                let content = match raw.find('#') {
                    Some(pos) => &raw[..pos],
                    None => raw,
                };
                let tokens: Vec<&str> = content.split_whitespace().collect();
                let [i_tok, j_tok, v_tok] = tokens[..] else {
                    return Err(err(
                        line_no,
                        QuboParseErrorKind::InvalidEntry(content.trim().to_string()),
                    ));
                };
                let parse_index = |tok: &str| {
                    tok.parse::<usize>().map_err(|_| {
                        err(line_no, QuboParseErrorKind::InvalidIndex(tok.to_string()))
                    })
                };
                let row = parse_index(i_tok)?;
                let col = parse_index(j_tok)?;
                let value: f64 = v_tok.parse().map_err(|_| {
                    err(line_no, QuboParseErrorKind::InvalidValue(v_tok.to_string()))
                })?;
                if !value.is_finite() {
                    return Err(err(
                        line_no,
                        QuboParseErrorKind::NonFiniteValue(v_tok.to_string()),
                    ));
                }
                q.add(row, col, value).map_err(|e| match e {
                    QuboError::IndexOutOfRange { index, dim } => {
                        err(line_no, QuboParseErrorKind::IndexOutOfRange { index, dim })
                    }
                    other => unreachable!("add returned {other:?}"),
                })?;
            }
        }
    }
    matrix.ok_or_else(|| err(1, QuboParseErrorKind::MissingHeader))
}
