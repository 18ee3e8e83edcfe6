//! Shot-based statevector simulation for grouped Pauli measurement.
//!
//! The simulator plays the quantum-device role in the VQE loop: prepare an
//! ansatz state, rotate into the measurement basis shared by one commuting
//! group, sample bitstrings, and turn parities back into energy estimates.
//!
//! Conventions, fixed here because every estimator depends on them:
//! qubit `k` is bit `k` of the basis-state index, and bitstrings render
//! with qubit 0 as the leftmost character. Rotations use `exp(-i theta P)`
//! with the minus sign in the exponent.

use crate::commgraph::Grouping;
use crate::pauli::{Hamiltonian, PauliAxis, PauliString, Term};
use crate::seeding::derive_seed;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

/// Amplitude storage is `2^n`; past 22 qubits (16M amplitudes) this stops
/// being a desk-scale tool.
pub const MAX_QUBITS: usize = 22;

const NORM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("a state needs at least one qubit")]
    ZeroQubits,
    #[error("{n_qubits} qubits exceed the simulator cap of {MAX_QUBITS}")]
    TooManyQubits { n_qubits: usize },
    #[error("basis index {index} out of range for {n_qubits} qubits")]
    BasisIndexOutOfRange { index: u64, n_qubits: usize },
    #[error("expected {expected} amplitudes for {n_qubits} qubits, got {found}")]
    WrongAmplitudeCount {
        n_qubits: usize,
        expected: usize,
        found: usize,
    },
    #[error("state norm {norm} is not 1")]
    NotNormalized { norm: f64 },
    #[error("operator acts on {operator} qubits but the state has {state}")]
    SizeMismatch { state: usize, operator: usize },
    #[error("cannot build a measurement basis for an empty group")]
    EmptyGroup,
    #[error(
        "qubit {qubit} needs axis {first_axis} for group member {first_term} \
         but axis {second_axis} for member {second_term}; the group is not \
         qubit-wise commuting, so no single basis measures it"
    )]
    BasisConflict {
        qubit: usize,
        first_term: usize,
        first_axis: char,
        second_term: usize,
        second_axis: char,
    },
    #[error("a measurement basis cannot contain the identity axis (qubit {qubit})")]
    IdentityAxisInBasis { qubit: usize },
    #[error("term needs axis {term_axis} on qubit {qubit} but the basis measures {basis_axis}")]
    BasisSupportMismatch {
        qubit: usize,
        term_axis: char,
        basis_axis: char,
    },
    #[error("shots must be at least 1")]
    NoShots,
    #[error("expectation value has imaginary residue {residue}")]
    NonRealExpectation { residue: f64 },
    #[error("grouping does not cover term {term_index} exactly once")]
    NotAPartition { term_index: usize },
}

/// Normalized pure state of up to [`MAX_QUBITS`] qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    fn check_qubits(n_qubits: usize) -> Result<(), SimError> {
        if n_qubits == 0 {
            return Err(SimError::ZeroQubits);
        }
        if n_qubits > MAX_QUBITS {
            return Err(SimError::TooManyQubits { n_qubits });
        }
        Ok(())
    }

    /// The basis state `|index>`, e.g. index 2 on two qubits is the state
    /// with qubit 0 at 0 and qubit 1 at 1.
    pub fn computational_basis(n_qubits: usize, index: u64) -> Result<StateVector, SimError> {
        Self::check_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim as u64 {
            return Err(SimError::BasisIndexOutOfRange { index, n_qubits });
        }
        let mut amps = vec![Complex64::ZERO; dim];
        amps[index as usize] = Complex64::ONE;
        Ok(StateVector { n_qubits, amps })
    }

    /// Wraps raw amplitudes; they must already be normalized.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<StateVector, SimError> {
        Self::check_qubits(n_qubits)?;
        let expected = 1usize << n_qubits;
        if amps.len() != expected {
            return Err(SimError::WrongAmplitudeCount {
                n_qubits,
                expected,
                found: amps.len(),
            });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(SimError::NotNormalized { norm });
        }
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_operator(&self, operator_qubits: usize) -> Result<(), SimError> {
        if operator_qubits != self.n_qubits {
            return Err(SimError::SizeMismatch {
                state: self.n_qubits,
                operator: operator_qubits,
            });
        }
        Ok(())
    }
}

const I_POWERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

/// Applies a Pauli string: `P|b> = i^{n_Y} (-1)^{b.z} |b xor x>` where `x`
/// and `z` are the string's flip and phase masks.
pub fn apply_pauli(state: &StateVector, p: &PauliString) -> Result<StateVector, SimError> {
    state.check_operator(p.n_qubits())?;
    let x_mask = p.x_mask_u64();
    let z_mask = p.z_mask_u64();
    let y_phase = I_POWERS[(x_mask & z_mask).count_ones() as usize % 4];
    let mut amps = vec![Complex64::ZERO; state.amps.len()];
    for (b, &amp) in state.amps.iter().enumerate() {
        let sign = if (b as u64 & z_mask).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        amps[b ^ x_mask as usize] = y_phase * sign * amp;
    }
    Ok(StateVector {
        n_qubits: state.n_qubits,
        amps,
    })
}

/// Returns `exp(-i theta P)|psi> = cos(theta)|psi> - i sin(theta) P|psi>`,
/// exact because every Pauli string squares to the identity.
pub fn apply_pauli_exponential(
    state: &StateVector,
    p: &PauliString,
    theta: f64,
) -> Result<StateVector, SimError> {
    let rotated = apply_pauli(state, p)?;
    let cos = Complex64::new(theta.cos(), 0.0);
    let minus_i_sin = Complex64::new(0.0, -theta.sin());
    let amps = state
        .amps
        .iter()
        .zip(&rotated.amps)
        .map(|(a, pa)| cos * a + minus_i_sin * pa)
        .collect();
    Ok(StateVector {
        n_qubits: state.n_qubits,
        amps,
    })
}

/// The one-parameter two-qubit ansatz `exp(-i theta X0 Y1)|01>` used for
/// the hydrogen-molecule runs (qubit 0 at 0, qubit 1 at 1).
pub fn prepare_h2_ansatz(theta: f64) -> StateVector {
    let start = StateVector::computational_basis(2, 2).expect("two qubits fit");
    let rotation = PauliString::from_axes(&[PauliAxis::X, PauliAxis::Y]);
    apply_pauli_exponential(&start, &rotation, theta).expect("sizes match")
}

/// Per-qubit measurement axes; identity is not an axis (unconstrained
/// qubits default to Z).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementBasis {
    axes: Vec<PauliAxis>,
}

impl MeasurementBasis {
    pub fn new(axes: Vec<PauliAxis>) -> Result<MeasurementBasis, SimError> {
        if axes.is_empty() {
            return Err(SimError::ZeroQubits);
        }
        if let Some(qubit) = axes.iter().position(|&a| a == PauliAxis::I) {
            return Err(SimError::IdentityAxisInBasis { qubit });
        }
        Ok(MeasurementBasis { axes })
    }

    pub fn axes(&self) -> &[PauliAxis] {
        &self.axes
    }

    pub fn n_qubits(&self) -> usize {
        self.axes.len()
    }
}

/// The single basis that measures every term of a qubit-wise commuting
/// group at once: per qubit, the unique non-identity axis used by the
/// group, or Z where no term acts.
pub fn basis_for_group(group: &[&PauliString]) -> Result<MeasurementBasis, SimError> {
    let Some(first) = group.first() else {
        return Err(SimError::EmptyGroup);
    };
    let n_qubits = first.n_qubits();
    for s in group {
        if s.n_qubits() != n_qubits {
            return Err(SimError::SizeMismatch {
                state: n_qubits,
                operator: s.n_qubits(),
            });
        }
    }
    let mut axes = vec![PauliAxis::Z; n_qubits];
    let mut chosen_by: Vec<Option<usize>> = vec![None; n_qubits];
    for (t, s) in group.iter().enumerate() {
        for qubit in 0..n_qubits {
            let axis = s.axis(qubit);
            if axis == PauliAxis::I {
                continue;
            }
            match chosen_by[qubit] {
                None => {
                    axes[qubit] = axis;
                    chosen_by[qubit] = Some(t);
                }
                Some(owner) if axes[qubit] != axis => {
                    return Err(SimError::BasisConflict {
                        qubit,
                        first_term: owner,
                        first_axis: axes[qubit].as_char(),
                        second_term: t,
                        second_axis: axis.as_char(),
                    });
                }
                Some(_) => {}
            }
        }
    }
    MeasurementBasis::new(axes)
}

fn apply_single_qubit_gate(state: &mut [Complex64], qubit: usize, m: [[Complex64; 2]; 2]) {
    let mask = 1usize << qubit;
    for b in 0..state.len() {
        if b & mask == 0 {
            let a0 = state[b];
            let a1 = state[b | mask];
            state[b] = m[0][0] * a0 + m[0][1] * a1;
            state[b | mask] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn hadamard() -> [[Complex64; 2]; 2] {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

/// `H * S_adjoint`: rotates the Y eigenbasis onto the computational basis.
fn y_rotation() -> [[Complex64; 2]; 2] {
    let h = FRAC_1_SQRT_2;
    [
        [Complex64::new(h, 0.0), Complex64::new(0.0, -h)],
        [Complex64::new(h, 0.0), Complex64::new(0.0, h)],
    ]
}

/// `S * H`: inverse of [`y_rotation`].
fn y_rotation_inverse() -> [[Complex64; 2]; 2] {
    let h = FRAC_1_SQRT_2;
    [
        [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
        [Complex64::new(0.0, h), Complex64::new(0.0, -h)],
    ]
}

/// Rotates the state so that a computational-basis (Z) measurement
/// afterwards realizes the requested per-qubit bases: Hadamard for X,
/// S-adjoint then Hadamard for Y, nothing for Z.
pub fn apply_basis_rotation(
    state: &StateVector,
    basis: &MeasurementBasis,
) -> Result<StateVector, SimError> {
    state.check_operator(basis.n_qubits())?;
    let mut amps = state.amps.clone();
    for (qubit, axis) in basis.axes.iter().enumerate() {
        match axis {
            PauliAxis::X => apply_single_qubit_gate(&mut amps, qubit, hadamard()),
            PauliAxis::Y => apply_single_qubit_gate(&mut amps, qubit, y_rotation()),
            PauliAxis::Z => {}
            PauliAxis::I => unreachable!("bases never hold identity"),
        }
    }
    Ok(StateVector {
        n_qubits: state.n_qubits,
        amps,
    })
}

/// Undoes [`apply_basis_rotation`] for the same basis.
pub fn apply_basis_rotation_inverse(
    state: &StateVector,
    basis: &MeasurementBasis,
) -> Result<StateVector, SimError> {
    state.check_operator(basis.n_qubits())?;
    let mut amps = state.amps.clone();
    for (qubit, axis) in basis.axes.iter().enumerate() {
        match axis {
            PauliAxis::X => apply_single_qubit_gate(&mut amps, qubit, hadamard()),
            PauliAxis::Y => apply_single_qubit_gate(&mut amps, qubit, y_rotation_inverse()),
            PauliAxis::Z => {}
            PauliAxis::I => unreachable!("bases never hold identity"),
        }
    }
    Ok(StateVector {
        n_qubits: state.n_qubits,
        amps,
    })
}

/// Measured bitstring histogram from one measurement run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotCounts {
    n_qubits: usize,
    counts: BTreeMap<u64, u64>,
    total_shots: u64,
}

impl ShotCounts {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn total_shots(&self) -> u64 {
        self.total_shots
    }

    /// Counts keyed by basis-state index, ascending.
    pub fn counts(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn count_of(&self, index: u64) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    /// Histogram lines `bitstring count`, qubit 0 leftmost.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (&index, &count) in &self.counts {
            out.push_str(&format!(
                "{} {}\n",
                render_outcome(index, self.n_qubits),
                count
            ));
        }
        out
    }
}

/// Renders a measured basis index as a bitstring, qubit 0 leftmost.
pub fn render_outcome(index: u64, n_qubits: usize) -> String {
    (0..n_qubits)
        .map(|k| if index >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Samples `shots` computational-basis measurements from the state's
/// probability distribution. Deterministic per seed.
pub fn sample_shots(state: &StateVector, shots: u64, seed: u64) -> Result<ShotCounts, SimError> {
    if shots == 0 {
        return Err(SimError::NoShots);
    }
    let mut cumulative = Vec::with_capacity(state.amps.len());
    let mut acc = 0.0;
    for a in &state.amps {
        acc += a.norm_sqr();
        cumulative.push(acc);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let top = cumulative.len() - 1;
    for _ in 0..shots {
        let u: f64 = rng.gen::<f64>() * acc;
        let index = cumulative.partition_point(|&c| c <= u).min(top);
        *counts.entry(index as u64).or_insert(0) += 1;
    }
    Ok(ShotCounts {
        n_qubits: state.n_qubits,
        counts,
        total_shots: shots,
    })
}

/// Estimates one term's contribution from shots taken in `basis`:
/// coefficient times the mean parity over the term's support qubits.
pub fn estimate_term(
    counts: &ShotCounts,
    term: &Term,
    basis: &MeasurementBasis,
) -> Result<f64, SimError> {
    let string = term.string();
    if string.n_qubits() != basis.n_qubits() || counts.n_qubits != basis.n_qubits() {
        return Err(SimError::SizeMismatch {
            state: counts.n_qubits,
            operator: string.n_qubits(),
        });
    }
    for qubit in 0..string.n_qubits() {
        let axis = string.axis(qubit);
        if axis != PauliAxis::I && axis != basis.axes[qubit] {
            return Err(SimError::BasisSupportMismatch {
                qubit,
                term_axis: axis.as_char(),
                basis_axis: basis.axes[qubit].as_char(),
            });
        }
    }
    let support = string.support_mask_u64();
    let mut parity_sum = 0i64;
    for (&index, &count) in &counts.counts {
        let parity = if (index & support).count_ones().is_multiple_of(2) {
            1i64
        } else {
            -1i64
        };
        parity_sum += parity * count as i64;
    }
    Ok(term.coefficient() * parity_sum as f64 / counts.total_shots as f64)
}

/// Noise-free `<psi|H|psi>` by direct sparse Pauli application. The
/// imaginary residue must vanish (real coefficients, Hermitian terms).
pub fn exact_expectation(state: &StateVector, h: &Hamiltonian) -> Result<f64, SimError> {
    state.check_operator(h.n_qubits())?;
    let mut value = Complex64::ZERO;
    for term in h.terms() {
        let applied = apply_pauli(state, term.string())?;
        let overlap: Complex64 = state
            .amps
            .iter()
            .zip(&applied.amps)
            .map(|(a, b)| a.conj() * b)
            .sum();
        value += term.coefficient() * overlap;
    }
    if value.im.abs() >= 1e-10 {
        return Err(SimError::NonRealExpectation { residue: value.im });
    }
    Ok(value.re)
}

/// One measurement run per group: rotate into the group basis, sample
/// `shots_per_group` shots, estimate every member term from the same
/// counts. Returns the summed energy and the number of runs (groups).
///
/// Group `g` samples with the child seed `derive_seed(seed, g)`.
pub fn estimate_energy_grouped(
    h: &Hamiltonian,
    grouping: &Grouping,
    state: &StateVector,
    shots_per_group: u64,
    seed: u64,
) -> Result<(f64, usize), SimError> {
    state.check_operator(h.n_qubits())?;
    let m = h.terms().len();
    let mut seen = vec![false; m];
    for group in grouping.groups() {
        for &t in group {
            if t >= m || seen[t] {
                return Err(SimError::NotAPartition { term_index: t });
            }
            seen[t] = true;
        }
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(SimError::NotAPartition {
            term_index: missing,
        });
    }
    let mut energy = 0.0;
    for (g, group) in grouping.groups().iter().enumerate() {
        let strings: Vec<&PauliString> = group.iter().map(|&t| h.terms()[t].string()).collect();
        let basis = basis_for_group(&strings)?;
        let rotated = apply_basis_rotation(state, &basis)?;
        let counts = sample_shots(&rotated, shots_per_group, derive_seed(seed, g as u64))?;
        for &t in group {
            energy += estimate_term(&counts, &h.terms()[t], &basis)?;
        }
    }
    Ok((energy, grouping.n_groups()))
}
