//! Pauli strings, weighted sums of them, and the two commutation predicates
//! that drive measurement grouping.
//!
//! A [`PauliString`] is stored as two packed bit vectors (x-bits and z-bits,
//! 64 qubits per block), so both predicates run in O(n/64) word operations:
//!
//! * *qubit-wise commutation* (QWC): at every qubit the two strings are equal
//!   or at least one is the identity. QWC groups can be measured simultaneously
//!   with single-qubit basis rotations only.
//! * *general commutation* (GC): the symplectic form vanishes, i.e. the number
//!   of qubits where the strings anticommute locally is even.
//!
//! The text format is line oriented: `coefficient axis-token*`, where an axis
//! token is `X3`, `Y0`, `Z12`, or a lone `I` for the identity term. `#` starts
//! a comment. The qubit count of a file is one past the largest index used;
//! trailing identity qubits are therefore not representable.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Largest qubit index accepted by the parser. Keeps hostile input from
/// requesting absurd allocations; in-memory construction is not capped.
pub const MAX_PARSED_QUBIT_INDEX: usize = 4095;

const BLOCK_BITS: usize = 64;

fn blocks_for(n_qubits: usize) -> usize {
    n_qubits.div_ceil(BLOCK_BITS)
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    fn to_bits(self) -> (bool, bool) {
        match self {
            PauliAxis::I => (false, false),
            PauliAxis::X => (true, false),
            PauliAxis::Y => (true, true),
            PauliAxis::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliAxis::I,
            (true, false) => PauliAxis::X,
            (true, true) => PauliAxis::Y,
            (false, true) => PauliAxis::Z,
        }
    }

    /// Letter used in dense renderings.
    pub fn as_char(self) -> char {
        match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Errors from Pauli-string and Hamiltonian construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PauliError {
    #[error("Pauli strings act on different qubit counts ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("qubit index {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("qubit index {qubit} given more than once")]
    DuplicateQubit { qubit: usize },
    #[error("coefficient {value} is not finite")]
    NonFiniteCoefficient { value: f64 },
    #[error("cannot build a Hamiltonian from zero input terms")]
    EmptyInput,
}

/// A tensor product of single-qubit Pauli operators on a fixed qubit count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x_bits: Vec<u64>,
    z_bits: Vec<u64>,
}

impl PauliString {
    /// The identity string on `n_qubits` qubits.
    ///
    /// Panics if `n_qubits` is zero; every string acts on at least one qubit.
    pub fn identity(n_qubits: usize) -> Self {
        assert!(n_qubits > 0, "a Pauli string needs at least one qubit");
        PauliString {
            n_qubits,
            x_bits: vec![0; blocks_for(n_qubits)],
            z_bits: vec![0; blocks_for(n_qubits)],
        }
    }

    /// Builds a string from one axis per qubit, qubit 0 first.
    pub fn from_axes(axes: &[PauliAxis]) -> Self {
        assert!(!axes.is_empty(), "a Pauli string needs at least one qubit");
        let mut s = PauliString::identity(axes.len());
        for (qubit, &axis) in axes.iter().enumerate() {
            s.set_axis(qubit, axis);
        }
        s
    }

    /// Builds a string from `(qubit, axis)` pairs; unlisted qubits are `I`.
    pub fn from_support(
        n_qubits: usize,
        support: &[(usize, PauliAxis)],
    ) -> Result<Self, PauliError> {
        let mut s = PauliString::identity(n_qubits);
        let mut seen = vec![false; n_qubits];
        for &(qubit, axis) in support {
            if qubit >= n_qubits {
                return Err(PauliError::QubitOutOfRange { qubit, n_qubits });
            }
            if seen[qubit] {
                return Err(PauliError::DuplicateQubit { qubit });
            }
            seen[qubit] = true;
            s.set_axis(qubit, axis);
        }
        Ok(s)
    }

    fn set_axis(&mut self, qubit: usize, axis: PauliAxis) {
        let (x, z) = axis.to_bits();
        let block = qubit / BLOCK_BITS;
        let mask = 1u64 << (qubit % BLOCK_BITS);
        if x {
            self.x_bits[block] |= mask;
        } else {
            self.x_bits[block] &= !mask;
        }
        if z {
            self.z_bits[block] |= mask;
        } else {
            self.z_bits[block] &= !mask;
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// The axis acting on `qubit`. Panics if out of range.
    pub fn axis(&self, qubit: usize) -> PauliAxis {
        assert!(qubit < self.n_qubits, "qubit {qubit} out of range");
        let block = qubit / BLOCK_BITS;
        let mask = 1u64 << (qubit % BLOCK_BITS);
        PauliAxis::from_bits(
            self.x_bits[block] & mask != 0,
            self.z_bits[block] & mask != 0,
        )
    }

    /// All axes, qubit 0 first.
    pub fn axes(&self) -> Vec<PauliAxis> {
        (0..self.n_qubits).map(|q| self.axis(q)).collect()
    }

    /// True when every qubit carries `I`.
    pub fn is_identity(&self) -> bool {
        self.x_bits.iter().all(|&b| b == 0) && self.z_bits.iter().all(|&b| b == 0)
    }

    /// True when every qubit carries `I` or `Z`. Such strings are diagonal in
    /// the computational basis and need no measurement at all under a
    /// computational-basis ansatz reference.
    pub fn is_z_only(&self) -> bool {
        self.x_bits.iter().all(|&b| b == 0)
    }

    /// Number of non-identity qubits.
    pub fn weight(&self) -> usize {
        self.x_bits
            .iter()
            .zip(&self.z_bits)
            .map(|(&x, &z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// The same operator embedded into `n_qubits >= self.n_qubits()` qubits,
    /// identity on the new qubits.
    pub fn padded(&self, n_qubits: usize) -> PauliString {
        assert!(n_qubits >= self.n_qubits, "padding cannot shrink a string");
        let mut s = self.clone();
        s.n_qubits = n_qubits;
        s.x_bits.resize(blocks_for(n_qubits), 0);
        s.z_bits.resize(blocks_for(n_qubits), 0);
        s
    }

    /// Bitmask of non-identity qubits. Only valid up to 64 qubits, which the
    /// simulator's qubit cap guarantees.
    pub(crate) fn support_mask_u64(&self) -> u64 {
        assert!(self.n_qubits <= 64);
        self.x_bits[0] | self.z_bits[0]
    }

    /// Bitmask of qubits with an X component (X or Y). Only valid up to 64
    /// qubits.
    pub(crate) fn x_mask_u64(&self) -> u64 {
        assert!(self.n_qubits <= 64);
        self.x_bits[0]
    }

    /// Bitmask of qubits with a Z component (Z or Y). Only valid up to 64
    /// qubits.
    pub(crate) fn z_mask_u64(&self) -> u64 {
        assert!(self.n_qubits <= 64);
        self.z_bits[0]
    }

    fn check_len(&self, other: &Self) -> Result<(), PauliError> {
        if self.n_qubits != other.n_qubits {
            return Err(PauliError::LengthMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(())
    }

    /// Qubit-wise commutation: at every qubit the axes are equal or one is `I`.
    pub fn qubit_wise_commutes(&self, other: &Self) -> Result<bool, PauliError> {
        self.check_len(other)?;
        for i in 0..self.x_bits.len() {
            let (ax, az) = (self.x_bits[i], self.z_bits[i]);
            let (bx, bz) = (other.x_bits[i], other.z_bits[i]);
            // Conflict where both strings are non-identity and differ.
            let conflict = (ax | az) & (bx | bz) & ((ax ^ bx) | (az ^ bz));
            if conflict != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// General commutation: the count of locally anticommuting qubits is even.
    pub fn generally_commutes(&self, other: &Self) -> Result<bool, PauliError> {
        self.check_len(other)?;
        let mut acc = 0u64;
        for i in 0..self.x_bits.len() {
            acc ^= (self.x_bits[i] & other.z_bits[i]) ^ (self.z_bits[i] & other.x_bits[i]);
        }
        Ok(acc.count_ones().is_multiple_of(2))
    }
}

impl fmt::Display for PauliString {
    /// Dense rendering, one letter per qubit, qubit 0 leftmost: `XXI`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n_qubits {
            write!(f, "{}", self.axis(q).as_char())?;
        }
        Ok(())
    }
}

/// Which commutation predicate a grouping pipeline uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommutationMode {
    /// Qubit-wise commutation; groups measurable with local basis rotations.
    Qwc,
    /// General (full) commutation; coarser graphs, fewer groups, but
    /// simultaneous measurement needs entangling readout circuits that this
    /// crate does not provide.
    Gc,
}

impl CommutationMode {
    pub fn commutes(self, a: &PauliString, b: &PauliString) -> Result<bool, PauliError> {
        match self {
            CommutationMode::Qwc => a.qubit_wise_commutes(b),
            CommutationMode::Gc => a.generally_commutes(b),
        }
    }
}

impl fmt::Display for CommutationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommutationMode::Qwc => "qwc",
            CommutationMode::Gc => "gc",
        })
    }
}

impl std::str::FromStr for CommutationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "qwc" => Ok(CommutationMode::Qwc),
            "gc" => Ok(CommutationMode::Gc),
            other => Err(format!(
                "unknown commutation mode `{other}` (expected qwc or gc)"
            )),
        }
    }
}

/// One weighted Pauli string.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    coefficient: f64,
    string: PauliString,
}

impl Term {
    pub fn new(coefficient: f64, string: PauliString) -> Result<Self, PauliError> {
        if !coefficient.is_finite() {
            return Err(PauliError::NonFiniteCoefficient { value: coefficient });
        }
        Ok(Term {
            coefficient,
            string,
        })
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn string(&self) -> &PauliString {
        &self.string
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}

/// A real-weighted sum of Pauli strings on a common qubit count.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    n_qubits: usize,
    terms: Vec<Term>,
}

impl Hamiltonian {
    /// Assembles a Hamiltonian from terms of possibly different lengths.
    ///
    /// Every string is padded with identities up to the largest qubit count
    /// seen, exact duplicate strings are merged by summing coefficients, and
    /// terms whose merged coefficient is exactly zero are dropped. Term order
    /// is first appearance. Cancellation may leave zero terms; only an empty
    /// input is an error.
    pub fn from_terms(terms: Vec<Term>) -> Result<Self, PauliError> {
        let n_qubits = terms
            .iter()
            .map(|t| t.string.n_qubits())
            .max()
            .ok_or(PauliError::EmptyInput)?;
        let mut order: Vec<(PauliString, f64)> = Vec::new();
        let mut index: HashMap<PauliString, usize> = HashMap::new();
        for term in terms {
            let padded = term.string.padded(n_qubits);
            match index.get(&padded) {
                Some(&i) => order[i].1 += term.coefficient,
                None => {
                    index.insert(padded.clone(), order.len());
                    order.push((padded, term.coefficient));
                }
            }
        }
        let merged = order
            .into_iter()
            .filter(|&(_, c)| c != 0.0)
            .map(|(string, coefficient)| Term {
                coefficient,
                string,
            })
            .collect();
        Ok(Hamiltonian {
            n_qubits,
            terms: merged,
        })
    }

    /// Internal constructor for operations that must preserve the qubit count
    /// even when they remove every term.
    pub(crate) fn from_parts(n_qubits: usize, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| t.string.n_qubits() == n_qubits));
        Hamiltonian { n_qubits, terms }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Splits off every term that commutes (under `mode`) with all other
    /// terms, identity terms included. Such terms join every measurement
    /// group, so they only dilute a grouping comparison; callers re-add their
    /// contribution separately. Returns `(remainder, removed)`, both in the
    /// original term order.
    pub fn strip_universal_commuters(&self, mode: CommutationMode) -> (Hamiltonian, Vec<Term>) {
        let universal: Vec<bool> = (0..self.terms.len())
            .map(|i| {
                self.terms[i].string.is_identity()
                    || self.terms.iter().enumerate().all(|(j, other)| {
                        i == j
                            || mode
                                .commutes(&self.terms[i].string, &other.string)
                                .expect("terms share a qubit count")
                    })
            })
            .collect();
        let mut kept = Vec::new();
        let mut removed = Vec::new();
        for (term, is_universal) in self.terms.iter().zip(&universal) {
            if *is_universal {
                removed.push(term.clone());
            } else {
                kept.push(term.clone());
            }
        }
        (Hamiltonian::from_parts(self.n_qubits, kept), removed)
    }

    /// Splits off every term made only of `Z` and `I` (identity included).
    /// Returns `(remainder, z_terms)`, both in the original term order.
    pub fn extract_z_only_group(&self) -> (Hamiltonian, Vec<Term>) {
        let mut kept = Vec::new();
        let mut z_terms = Vec::new();
        for term in &self.terms {
            if term.string.is_z_only() {
                z_terms.push(term.clone());
            } else {
                kept.push(term.clone());
            }
        }
        (Hamiltonian::from_parts(self.n_qubits, kept), z_terms)
    }

    /// Text rendering, one term per line; parses back with
    /// [`parse_hamiltonian`] as long as the last qubit is touched by some term.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for term in &self.terms {
            out.push_str(&render_term(term));
            out.push('\n');
        }
        out
    }
}

/// Renders one term in the text format: `-0.181 X0 X1`, identity as `1.5 I`.
pub fn render_term(term: &Term) -> String {
    let mut out = term.coefficient.to_string();
    if term.string.is_identity() {
        out.push_str(" I");
        return out;
    }
    for qubit in 0..term.string.n_qubits() {
        let axis = term.string.axis(qubit);
        if axis != PauliAxis::I {
            out.push(' ');
            out.push(axis.as_char());
            out.push_str(&qubit.to_string());
        }
    }
    out
}

/// Parse failure with a 1-based line and byte-column position.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("expected a coefficient, found `{0}`")]
    InvalidCoefficient(String),
    #[error("coefficient `{0}` is not finite")]
    NonFiniteCoefficient(String),
    #[error("expected an axis token like `X0`, `Y2`, `Z13`, or `I`, found `{0}`")]
    InvalidAxisToken(String),
    #[error("qubit index {0} exceeds the parser cap of {MAX_PARSED_QUBIT_INDEX}")]
    QubitIndexTooLarge(usize),
    #[error("qubit index {0} appears more than once in one term")]
    DuplicateQubit(usize),
    #[error("`I` cannot be combined with other axis tokens")]
    MixedIdentity,
    #[error("expected Pauli tokens or `I` after the coefficient")]
    MissingPauli,
    #[error("empty term")]
    EmptyTerm,
    #[error("no terms in input")]
    NoTerms,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Whitespace-separated tokens with their 1-based byte columns.
fn split_tokens(line: &str) -> Vec<(usize, &str)> {
    let mut tokens = Vec::new();
    let mut rest = line;
    let mut offset = 0;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return tokens;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        tokens.push((offset + 1, &trimmed[..end]));
        rest = &trimmed[end..];
        offset += end;
    }
}

fn parse_term_at(line_no: usize, line: &str) -> Result<Term, ParseError> {
    let err = |column: usize, kind: ParseErrorKind| ParseError {
        line: line_no,
        column,
        kind,
    };
    let content = strip_comment(line);
    let tokens = split_tokens(content);
    let Some(&(coeff_col, coeff_token)) = tokens.first() else {
        return Err(err(1, ParseErrorKind::EmptyTerm));
    };
    let coefficient: f64 = coeff_token.parse().map_err(|_| {
        err(
            coeff_col,
            ParseErrorKind::InvalidCoefficient(coeff_token.into()),
        )
    })?;
    if !coefficient.is_finite() {
        return Err(err(
            coeff_col,
            ParseErrorKind::NonFiniteCoefficient(coeff_token.into()),
        ));
    }
    let axis_tokens = &tokens[1..];
    if axis_tokens.is_empty() {
        return Err(err(
            coeff_col + coeff_token.len(),
            ParseErrorKind::MissingPauli,
        ));
    }
    if axis_tokens.iter().any(|&(_, t)| t == "I") {
        if axis_tokens.len() > 1 {
            let &(col, _) = axis_tokens.iter().find(|&&(_, t)| t == "I").unwrap();
            return Err(err(col, ParseErrorKind::MixedIdentity));
        }
        let string = PauliString::identity(1);
        return Ok(Term::new(coefficient, string).expect("finite coefficient"));
    }
    let mut support: Vec<(usize, PauliAxis)> = Vec::new();
    for &(col, token) in axis_tokens {
        let invalid = || err(col, ParseErrorKind::InvalidAxisToken(token.into()));
        let mut chars = token.chars();
        let axis = match chars.next() {
            Some('X') => PauliAxis::X,
            Some('Y') => PauliAxis::Y,
            Some('Z') => PauliAxis::Z,
            _ => return Err(invalid()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let qubit: usize = digits.parse().map_err(|_| invalid())?;
        if qubit > MAX_PARSED_QUBIT_INDEX {
            return Err(err(col, ParseErrorKind::QubitIndexTooLarge(qubit)));
        }
        if support.iter().any(|&(q, _)| q == qubit) {
            return Err(err(col, ParseErrorKind::DuplicateQubit(qubit)));
        }
        support.push((qubit, axis));
    }
    let n_qubits = 1 + support.iter().map(|&(q, _)| q).max().expect("nonempty");
    let string = PauliString::from_support(n_qubits, &support).expect("validated support");
    Ok(Term::new(coefficient, string).expect("finite coefficient"))
}

/// Parses a single term line. Comments and surrounding whitespace are fine;
/// a blank line is an error here (the file parser skips blanks itself).
pub fn parse_term(line: &str) -> Result<Term, ParseError> {
    parse_term_at(1, line)
}

/// Parses a whole Hamiltonian file: one term per line, `#` comments, blank
/// lines ignored. Terms are normalized through [`Hamiltonian::from_terms`],
/// so duplicates merge and exact cancellations disappear.
pub fn parse_hamiltonian(text: &str) -> Result<Hamiltonian, ParseError> {
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if split_tokens(strip_comment(raw)).is_empty() {
            continue;
        }
        terms.push(parse_term_at(i + 1, raw)?);
    }
    if terms.is_empty() {
        return Err(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::NoTerms,
        });
    }
    Ok(Hamiltonian::from_terms(terms).expect("at least one term"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(axes: &[PauliAxis]) -> PauliString {
        PauliString::from_axes(axes)
    }

    use PauliAxis::{I, X, Y, Z};

    #[test]
    fn parses_a_two_qubit_term() {
        let term = parse_term("0.181 X0 X1").unwrap();
        assert_eq!(term.coefficient(), 0.181);
        assert_eq!(term.string(), &s(&[X, X]));
    }

    #[test]
    fn parses_identity_and_sparse_terms() {
        let id = parse_term("1.0 I").unwrap();
        assert!(id.string().is_identity());
        assert_eq!(id.string().n_qubits(), 1);

        let sparse = parse_term("0.5 Z2").unwrap();
        assert_eq!(sparse.string(), &s(&[I, I, Z]));
        assert_eq!(sparse.string().n_qubits(), 3);
    }

    #[test]
    fn parse_accepts_out_of_order_support() {
        let term = parse_term("-2e-3 Y3 X1").unwrap();
        assert_eq!(term.coefficient(), -2e-3);
        assert_eq!(term.string(), &s(&[I, X, I, Y]));
    }

    #[test]
    fn parse_rejects_duplicate_qubit() {
        let e = parse_term("0.5 X0 Z0").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateQubit(0));
        assert_eq!((e.line, e.column), (1, 8));
    }

    #[test]
    fn parse_rejects_bad_coefficient_and_token() {
        let e = parse_term("abc X0").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::InvalidCoefficient(_)));
        assert_eq!(e.column, 1);

        let e = parse_term("0.5 X-1").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::InvalidAxisToken(_)));

        let e = parse_term("0.5 Q1").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::InvalidAxisToken(_)));

        let e = parse_term("inf X0").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::NonFiniteCoefficient(_)));

        let e = parse_term("0.5").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingPauli);

        let e = parse_term("0.5 I X0").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MixedIdentity);

        let e = parse_term("0.5 X9999999").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::QubitIndexTooLarge(_)));
    }

    #[test]
    fn parse_reports_line_numbers() {
        let text = "0.5 X0\n# fine\n0.25 W2\n";
        let e = parse_hamiltonian(text).unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(e.column, 6);
    }

    #[test]
    fn parse_hamiltonian_pads_merges_and_orders() {
        let text = "# comment\n0.1 X0\n\n0.2 Z2 # trailing\n0.3 X0\n";
        let h = parse_hamiltonian(text).unwrap();
        assert_eq!(h.n_qubits(), 3);
        assert_eq!(h.len(), 2);
        assert!((h.terms()[0].coefficient() - 0.4).abs() < 1e-15);
        assert_eq!(h.terms()[0].string(), &s(&[X, I, I]));
        assert_eq!(h.terms()[1].string(), &s(&[I, I, Z]));
    }

    #[test]
    fn exact_cancellation_drops_terms_but_not_qubits() {
        let h = parse_hamiltonian("0.5 X0 Z1\n-0.5 X0 Z1\n").unwrap();
        assert!(h.is_empty());
        assert_eq!(h.n_qubits(), 2);
    }

    #[test]
    fn empty_input_is_an_error() {
        let e = parse_hamiltonian("# only comments\n\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NoTerms);
        assert!(Hamiltonian::from_terms(vec![]).is_err());
    }

    #[test]
    fn display_renders_dense_qubit_zero_first() {
        assert_eq!(s(&[X, X, I]).to_string(), "XXI");
        assert_eq!(s(&[I, Z]).to_string(), "IZ");
    }

    #[test]
    fn render_term_matches_format() {
        let term = Term::new(-0.181, s(&[X, I, Y])).unwrap();
        assert_eq!(render_term(&term), "-0.181 X0 Y2");
        let id = Term::new(1.5, PauliString::identity(3)).unwrap();
        assert_eq!(render_term(&id), "1.5 I");
    }

    #[test]
    fn qubit_wise_commutation_examples() {
        assert!(s(&[X, X]).qubit_wise_commutes(&s(&[X, I])).unwrap());
        assert!(!s(&[X, X]).qubit_wise_commutes(&s(&[Y, Y])).unwrap());
        assert!(s(&[Z, I]).qubit_wise_commutes(&s(&[I, Z])).unwrap());
        assert!(!s(&[Z, X]).qubit_wise_commutes(&s(&[Z, Z])).unwrap());
        let e = s(&[X]).qubit_wise_commutes(&s(&[X, I])).unwrap_err();
        assert_eq!(e, PauliError::LengthMismatch { left: 1, right: 2 });
    }

    #[test]
    fn general_commutation_examples() {
        // XX and YY anticommute on both qubits: even count, so they commute.
        assert!(s(&[X, X]).generally_commutes(&s(&[Y, Y])).unwrap());
        assert!(!s(&[X, I]).generally_commutes(&s(&[Y, Y])).unwrap());
        assert!(!s(&[X]).generally_commutes(&s(&[Z])).unwrap());
        assert!(s(&[Y]).generally_commutes(&s(&[Y])).unwrap());
    }

    #[test]
    fn strip_universal_commuters_under_gc() {
        // In {Z0Z1, Z0, Z1, X0X1} the string Z0Z1 generally commutes with all
        // others; under QWC it conflicts with X0X1, so nothing is universal.
        let h = parse_hamiltonian("0.011 Z0 Z1\n0.398 Z0\n0.398 Z1\n-0.181 X0 X1\n").unwrap();
        let (rest, removed) = h.strip_universal_commuters(CommutationMode::Gc);
        assert_eq!(removed.len(), 1);
        assert_eq!(removed[0].string(), &s(&[Z, Z]));
        assert_eq!(rest.len(), 3);
        assert_eq!(rest.n_qubits(), 2);

        let (rest, removed) = h.strip_universal_commuters(CommutationMode::Qwc);
        assert!(removed.is_empty());
        assert_eq!(rest.len(), 4);
    }

    #[test]
    fn strip_removes_identity_and_single_terms() {
        let h = parse_hamiltonian("2.0 I\n0.5 X0 Y1\n0.5 X0 Z1\n").unwrap();
        let (rest, removed) = h.strip_universal_commuters(CommutationMode::Qwc);
        assert_eq!(removed.len(), 1);
        assert!(removed[0].string().is_identity());
        assert_eq!(rest.len(), 2);

        let lone = parse_hamiltonian("0.5 X0\n").unwrap();
        let (rest, removed) = lone.strip_universal_commuters(CommutationMode::Qwc);
        assert!(rest.is_empty());
        assert_eq!(removed.len(), 1);
    }

    #[test]
    fn z_only_extraction_splits_diagonal_terms() {
        let h = parse_hamiltonian("0.011 Z0 Z1\n0.398 Z0\n0.398 Z1\n-0.181 X0 X1\n").unwrap();
        let (rest, z_terms) = h.extract_z_only_group();
        assert_eq!(z_terms.len(), 3);
        assert!(z_terms.iter().all(|t| t.string().is_z_only()));
        assert_eq!(rest.len(), 1);
        assert_eq!(rest.terms()[0].string(), &s(&[X, X]));

        let all_x = parse_hamiltonian("1.0 X0\n").unwrap();
        let (_, z_terms) = all_x.extract_z_only_group();
        assert!(z_terms.is_empty());
    }

    #[test]
    fn weight_counts_non_identity_qubits() {
        assert_eq!(PauliString::identity(70).weight(), 0);
        let mut support = vec![(0, X), (69, Z)];
        let long = PauliString::from_support(70, &support).unwrap();
        assert_eq!(long.weight(), 2);
        support.push((69, Y));
        assert_eq!(
            PauliString::from_support(70, &support).unwrap_err(),
            PauliError::DuplicateQubit { qubit: 69 }
        );
    }

    fn arb_axis() -> impl Strategy<Value = PauliAxis> {
        prop_oneof![Just(I), Just(X), Just(Y), Just(Z)]
    }

    fn arb_string(n: usize) -> impl Strategy<Value = PauliString> {
        prop::collection::vec(arb_axis(), n).prop_map(|axes| PauliString::from_axes(&axes))
    }

    proptest! {
        #[test]
        fn qwc_implies_gc(n in 1usize..130, seed in any::<u64>()) {
            // Pairs sharing a length; QWC must never hold where GC fails.
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let axes = [I, X, Y, Z];
            let a = PauliString::from_axes(
                &(0..n).map(|_| axes[rng.gen_range(0..4)]).collect::<Vec<_>>(),
            );
            let b = PauliString::from_axes(
                &(0..n).map(|_| axes[rng.gen_range(0..4)]).collect::<Vec<_>>(),
            );
            if a.qubit_wise_commutes(&b).unwrap() {
                prop_assert!(a.generally_commutes(&b).unwrap());
            }
        }

        #[test]
        fn commutation_is_symmetric_and_reflexive(a in arb_string(9), b in arb_string(9)) {
            prop_assert!(a.qubit_wise_commutes(&a).unwrap());
            prop_assert!(a.generally_commutes(&a).unwrap());
            prop_assert_eq!(
                a.qubit_wise_commutes(&b).unwrap(),
                b.qubit_wise_commutes(&a).unwrap()
            );
            prop_assert_eq!(
                a.generally_commutes(&b).unwrap(),
                b.generally_commutes(&a).unwrap()
            );
        }

        #[test]
        fn render_parse_round_trip(
            coeffs in prop::collection::vec(-2.0f64..2.0, 1..6),
            mut strings in prop::collection::vec(arb_string(5), 1..6),
        ) {
            // Pin the last qubit so the text format preserves the qubit count.
            let mut axes = strings[0].axes();
            axes[4] = X;
            strings[0] = PauliString::from_axes(&axes);
            let terms: Vec<Term> = coeffs
                .iter()
                .zip(&strings)
                .filter(|&(c, _)| *c != 0.0)
                .map(|(&c, s)| Term::new(c, s.clone()).unwrap())
                .collect();
            prop_assume!(!terms.is_empty());
            let h = Hamiltonian::from_terms(terms).unwrap();
            prop_assume!(!h.is_empty());
            let reparsed = parse_hamiltonian(&h.render()).unwrap();
            prop_assert_eq!(reparsed, h);
        }

        #[test]
        fn axes_round_trip(string in arb_string(12)) {
            prop_assert_eq!(PauliString::from_axes(&string.axes()), string);
        }

        #[test]
        fn strip_partition_preserves_terms(strings in prop::collection::vec(arb_string(4), 1..8)) {
            let terms: Vec<Term> = strings
                .iter()
                .map(|s| Term::new(1.0, s.clone()).unwrap())
                .collect();
            let h = Hamiltonian::from_terms(terms).unwrap();
            for mode in [CommutationMode::Qwc, CommutationMode::Gc] {
                let (rest, removed) = h.strip_universal_commuters(mode);
                prop_assert_eq!(rest.len() + removed.len(), h.len());
                for t in &removed {
                    for u in h.terms() {
                        prop_assert!(mode.commutes(t.string(), u.string()).unwrap());
                    }
                }
            }
            let (rest, z_terms) = h.extract_z_only_group();
            prop_assert_eq!(rest.len() + z_terms.len(), h.len());
            prop_assert!(z_terms.iter().all(|t| t.string().is_z_only()));
            prop_assert!(rest.terms().iter().all(|t| !t.string().is_z_only()));
        }
    }
}
