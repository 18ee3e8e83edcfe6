//! Dense-matrix oracles for tests.
//!
//! Everything here is deliberately naive: explicit `2^n x 2^n` matrices,
//! textbook matrix products, Taylor-series exponentials, and power
//! iteration. The production crate must agree with these within tight
//! tolerances; the oracles share no code with it beyond the domain types.

use num_complex::Complex64;
use pauliq_core::models::{FermionOp, FermionTerm};
use pauliq_core::pauli::{Hamiltonian, PauliAxis, PauliString};

pub type Matrix = Vec<Vec<Complex64>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Complex64::ZERO; cols]; rows]
}

pub fn identity(dim: usize) -> Matrix {
    let mut m = zeros(dim, dim);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::ONE;
    }
    m
}

/// The 2x2 matrix of one Pauli axis.
pub fn pauli_axis_matrix(axis: PauliAxis) -> [[Complex64; 2]; 2] {
    let zero = Complex64::ZERO;
    let one = Complex64::ONE;
    let i = Complex64::new(0.0, 1.0);
    match axis {
        PauliAxis::I => [[one, zero], [zero, one]],
        PauliAxis::X => [[zero, one], [one, zero]],
        PauliAxis::Y => [[zero, -i], [i, zero]],
        PauliAxis::Z => [[one, zero], [zero, -one]],
    }
}

/// Dense matrix of a Pauli string. Entry `(r, c)` is the product over
/// qubits of the per-axis entry selected by bit `k` of `r` and `c`; this
/// realizes the Kronecker product under the bit-`k`-is-qubit-`k` layout
/// without building intermediates.
pub fn pauli_string_matrix(s: &PauliString) -> Matrix {
    let n = s.n_qubits();
    assert!(n <= 12, "oracle matrices are capped at 12 qubits");
    let dim = 1usize << n;
    let axes: Vec<[[Complex64; 2]; 2]> = (0..n).map(|q| pauli_axis_matrix(s.axis(q))).collect();
    let mut m = zeros(dim, dim);
    for (r, row) in m.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let mut entry = Complex64::ONE;
            for (k, axis) in axes.iter().enumerate() {
                entry *= axis[r >> k & 1][c >> k & 1];
                if entry == Complex64::ZERO {
                    break;
                }
            }
            *cell = entry;
        }
    }
    m
}

/// Dense matrix of a full Hamiltonian.
pub fn hamiltonian_matrix(h: &Hamiltonian) -> Matrix {
    let dim = 1usize << h.n_qubits();
    let mut m = zeros(dim, dim);
    for term in h.terms() {
        let tm = pauli_string_matrix(term.string());
        let c = Complex64::new(term.coefficient(), 0.0);
        for (row, trow) in m.iter_mut().zip(&tm) {
            for (cell, tcell) in row.iter_mut().zip(trow) {
                *cell += c * tcell;
            }
        }
    }
    m
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.len();
    let inner = b.len();
    let cols = b[0].len();
    let mut out = zeros(rows, cols);
    for r in 0..rows {
        for k in 0..inner {
            let av = a[r][k];
            if av == Complex64::ZERO {
                continue;
            }
            for c in 0..cols {
                out[r][c] += av * b[k][c];
            }
        }
    }
    out
}

pub fn matvec(a: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
        .collect()
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn scale(c: Complex64, a: &Matrix) -> Matrix {
    a.iter()
        .map(|row| row.iter().map(|x| c * x).collect())
        .collect()
}

/// Largest entry magnitude; the distance measure used by every oracle
/// comparison.
pub fn max_abs(a: &Matrix) -> f64 {
    a.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn conjugate_transpose(a: &Matrix) -> Matrix {
    let rows = a.len();
    let cols = a[0].len();
    let mut out = zeros(cols, rows);
    for (r, row) in a.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            out[c][r] = x.conj();
        }
    }
    out
}

/// `max_abs(AB - BA)`, the commutator residue.
pub fn commutator_norm(a: &Matrix, b: &Matrix) -> f64 {
    max_abs(&sub(&matmul(a, b), &matmul(b, a)))
}

/// Matrix exponential by scaling and squaring over a Taylor series. Fine
/// for the well-conditioned anti-Hermitian inputs the tests feed it.
pub fn expm(a: &Matrix) -> Matrix {
    let dim = a.len();
    let norm = max_abs(a) * dim as f64;
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = scale(Complex64::new(1.0 / 2f64.powi(squarings as i32), 0.0), a);
    let mut sum = identity(dim);
    let mut power = identity(dim);
    for k in 1..=24u64 {
        power = matmul(&power, &scaled);
        power = scale(Complex64::new(1.0 / k as f64, 0.0), &power);
        sum = add(&sum, &power);
    }
    let mut result = sum;
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

/// Dense creation (`daggered`) or annihilation matrix of one fermionic
/// mode in the occupancy basis, with bit `k` of the index holding the
/// occupancy of mode `k` and the parity sign running over modes below the
/// target.
pub fn fermion_op_matrix(op: FermionOp, n_modes: usize) -> Matrix {
    assert!(n_modes <= 12, "oracle matrices are capped at 12 modes");
    let dim = 1usize << n_modes;
    let bit = 1usize << op.mode;
    let below = bit - 1;
    let mut m = zeros(dim, dim);
    for source in 0..dim {
        let occupied = source & bit != 0;
        if occupied == op.daggered {
            continue;
        }
        let sign = if (source & below).count_ones().is_multiple_of(2) {
            Complex64::ONE
        } else {
            -Complex64::ONE
        };
        m[source ^ bit][source] = sign;
    }
    m
}

/// Dense matrix of a ladder-operator product term: coefficient times the
/// operator matrices multiplied leftmost-first.
pub fn fermion_term_matrix(term: &FermionTerm, n_modes: usize) -> Matrix {
    let mut m = identity(1usize << n_modes);
    for &op in term.operators() {
        m = matmul(&m, &fermion_op_matrix(op, n_modes));
    }
    scale(Complex64::new(term.coefficient(), 0.0), &m)
}

/// Dense matrix of a whole fermionic Hamiltonian.
pub fn fermion_hamiltonian_matrix(terms: &[FermionTerm], n_modes: usize) -> Matrix {
    let mut m = zeros(1usize << n_modes, 1usize << n_modes);
    for term in terms {
        m = add(&m, &fermion_term_matrix(term, n_modes));
    }
    m
}

/// Smallest eigenvalue of a Hermitian matrix by power iteration on the
/// spectrum-shifted operator `cI - H`. Deterministic start vector.
pub fn min_eigenvalue(h: &Matrix) -> f64 {
    let dim = h.len();
    // Gershgorin bound: every eigenvalue lies within the largest absolute
    // row sum, so c - H is positive semidefinite with c at that bound.
    let c: f64 = h
        .iter()
        .map(|row| row.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    let shifted: Matrix = {
        let mut s = scale(-Complex64::ONE, h);
        for (i, row) in s.iter_mut().enumerate() {
            row[i] += Complex64::new(c, 0.0);
        }
        s
    };
    let mut v: Vec<Complex64> = (0..dim)
        .map(|i| Complex64::new(1.0 + (i as f64 + 1.0).sqrt(), 0.0))
        .collect();
    let mut value = 0.0;
    for _ in 0..200_000 {
        let w = matvec(&shifted, &v);
        let norm: f64 = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 0.0, "power iteration collapsed");
        let next: Vec<Complex64> = w.iter().map(|&x| x / norm).collect();
        let rayleigh: Complex64 = next
            .iter()
            .zip(matvec(&shifted, &next).iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        let new_value = rayleigh.re;
        let done = (new_value - value).abs() < 1e-13;
        v = next;
        value = new_value;
        if done {
            break;
        }
    }
    c - value
}
