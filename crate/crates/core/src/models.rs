//! Built-in model Hamiltonians.
//!
//! Three families cover the grouping pipeline's test range:
//!
//! * [`h2_hamiltonian`]: a four-term, two-qubit molecular hydrogen model in a
//!   minimal basis after symmetry reduction.
//! * [`heisenberg_hamiltonian`]: isotropic spin-1/2 Heisenberg exchange on a
//!   rectangular lattice, three Pauli terms per edge.
//! * [`hubbard_hamiltonian`] + [`jordan_wigner`]: single-band Fermi-Hubbard in
//!   second quantization, mapped to qubits with the Jordan-Wigner transform
//!   (mode j becomes a ladder operator on qubit j behind a `Z` parity chain on
//!   qubits `0..j`).

use crate::pauli::{Hamiltonian, PauliAxis, PauliString, Term};
use num_complex::Complex64;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("a lattice needs at least two sites, got {rows}x{cols}")]
    LatticeTooSmall { rows: usize, cols: usize },
    #[error("fermionic mode {mode} out of range for {n_modes} modes")]
    ModeOutOfRange { mode: usize, n_modes: usize },
    #[error("operator sum is not Hermitian (largest imaginary residue {residue:e})")]
    NonHermitian { residue: f64 },
}

/// A rectangular lattice of sites, row-major indexed, with nearest-neighbor
/// edges and optional periodic wrap-around.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSpec {
    rows: usize,
    cols: usize,
    periodic: bool,
}

impl LatticeSpec {
    /// A `rows x cols` lattice. Chains (either dimension 1) default to
    /// periodic boundaries, two-dimensional lattices to open ones; override
    /// with [`with_periodic`](Self::with_periodic).
    pub fn new(rows: usize, cols: usize) -> Result<Self, ModelError> {
        if rows == 0 || cols == 0 || rows * cols < 2 {
            return Err(ModelError::LatticeTooSmall { rows, cols });
        }
        Ok(LatticeSpec {
            rows,
            cols,
            periodic: rows == 1 || cols == 1,
        })
    }

    pub fn with_periodic(mut self, periodic: bool) -> Self {
        self.periodic = periodic;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn periodic(&self) -> bool {
        self.periodic
    }

    pub fn n_sites(&self) -> usize {
        self.rows * self.cols
    }

    /// Nearest-neighbor edges as `(low, high)` site pairs, deduplicated.
    ///
    /// The scan is row-major; each site contributes its rightward edge, then
    /// its downward edge. Wrap-around edges appear when the site at the far
    /// boundary is reached, and only when the wrapped dimension exceeds two
    /// (a two-site ring would duplicate the direct edge). The order is part of
    /// the term-ordering contract of the model builders.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let idx = |r: usize, c: usize| r * self.cols + c;
        let mut edges = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let i = idx(r, c);
                if c + 1 < self.cols {
                    edges.push((i, idx(r, c + 1)));
                } else if self.periodic && self.cols > 2 {
                    edges.push((idx(r, 0), i));
                }
                if r + 1 < self.rows {
                    edges.push((i, idx(r + 1, c)));
                } else if self.periodic && self.rows > 2 {
                    edges.push((idx(0, c), i));
                }
            }
        }
        edges
    }
}

/// The reduced two-qubit molecular hydrogen Hamiltonian (energies in Hartree):
/// `0.011 Z0 Z1 + 0.398 Z0 + 0.398 Z1 + 0.181 X0 X1`.
pub fn h2_hamiltonian() -> Hamiltonian {
    use PauliAxis::{X, Z};
    let spec: [(f64, &[(usize, PauliAxis)]); 4] = [
        (0.011, &[(0, Z), (1, Z)]),
        (0.398, &[(0, Z)]),
        (0.398, &[(1, Z)]),
        (0.181, &[(0, X), (1, X)]),
    ];
    let terms = spec
        .iter()
        .map(|&(c, support)| {
            Term::new(
                c,
                PauliString::from_support(2, support).expect("static support"),
            )
            .expect("finite coefficient")
        })
        .collect();
    Hamiltonian::from_terms(terms).expect("four terms")
}

/// Isotropic Heisenberg exchange `coupling * (XiXj + YiYj + ZiZj)` summed over
/// lattice edges; one qubit per site. Terms follow the edge order of
/// [`LatticeSpec::edges`], with `X`, `Y`, `Z` per edge.
pub fn heisenberg_hamiltonian(spec: &LatticeSpec, coupling: f64) -> Hamiltonian {
    assert!(coupling.is_finite(), "coupling must be finite");
    use PauliAxis::{X, Y, Z};
    let n = spec.n_sites();
    let mut terms = Vec::new();
    for (i, j) in spec.edges() {
        for axis in [X, Y, Z] {
            let string =
                PauliString::from_support(n, &[(i, axis), (j, axis)]).expect("distinct sites");
            terms.push(Term::new(coupling, string).expect("finite coefficient"));
        }
    }
    Hamiltonian::from_terms(terms).expect("lattice has at least one edge")
}

/// One creation or annihilation operator on a fermionic mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FermionOp {
    pub mode: usize,
    /// `true` for the creation operator, `false` for annihilation.
    pub daggered: bool,
}

impl FermionOp {
    pub fn create(mode: usize) -> Self {
        FermionOp {
            mode,
            daggered: true,
        }
    }

    pub fn annihilate(mode: usize) -> Self {
        FermionOp {
            mode,
            daggered: false,
        }
    }
}

/// A scalar times an ordered product of ladder operators (leftmost first).
#[derive(Debug, Clone, PartialEq)]
pub struct FermionTerm {
    coefficient: f64,
    operators: Vec<FermionOp>,
}

impl FermionTerm {
    pub fn new(coefficient: f64, operators: Vec<FermionOp>) -> Self {
        assert!(coefficient.is_finite(), "coefficient must be finite");
        assert!(!operators.is_empty(), "a fermionic term needs operators");
        FermionTerm {
            coefficient,
            operators,
        }
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn operators(&self) -> &[FermionOp] {
        &self.operators
    }
}

/// Single-band Fermi-Hubbard model on a lattice: hopping `-t` along every
/// edge for each spin, on-site repulsion `u * n_up * n_down` on every site.
///
/// Spin-orbital `2*site + spin` is the fermionic mode. Term order: per edge
/// (in [`LatticeSpec::edges`] order) the four hopping directions grouped by
/// spin, then per site the number-operator product. The boundary is always
/// open; the lattice's periodic flag only affects the Heisenberg builder.
pub fn hubbard_hamiltonian(spec: &LatticeSpec, t: f64, u: f64) -> Vec<FermionTerm> {
    assert!(t.is_finite() && u.is_finite(), "parameters must be finite");
    let mut terms = Vec::new();
    for (i, j) in spec.with_periodic(false).edges() {
        for spin in 0..2 {
            let a = 2 * i + spin;
            let b = 2 * j + spin;
            terms.push(FermionTerm::new(
                -t,
                vec![FermionOp::create(a), FermionOp::annihilate(b)],
            ));
            terms.push(FermionTerm::new(
                -t,
                vec![FermionOp::create(b), FermionOp::annihilate(a)],
            ));
        }
    }
    for site in 0..spec.n_sites() {
        let up = 2 * site;
        let down = 2 * site + 1;
        terms.push(FermionTerm::new(
            u,
            vec![
                FermionOp::create(up),
                FermionOp::annihilate(up),
                FermionOp::create(down),
                FermionOp::annihilate(down),
            ],
        ));
    }
    terms
}

/// Product of two single-qubit Paulis as `(phase, axis)`.
fn axis_product(a: PauliAxis, b: PauliAxis) -> (Complex64, PauliAxis) {
    use PauliAxis::{I, X, Y, Z};
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match (a, b) {
        (I, p) | (p, I) => (one, p),
        (X, X) | (Y, Y) | (Z, Z) => (one, I),
        (X, Y) => (i, Z),
        (Y, X) => (-i, Z),
        (Y, Z) => (i, X),
        (Z, Y) => (-i, X),
        (Z, X) => (i, Y),
        (X, Z) => (-i, Y),
    }
}

#[derive(Clone)]
struct PhasedString {
    coefficient: Complex64,
    axes: Vec<PauliAxis>,
}

impl PhasedString {
    /// Right-multiplies by a string given as sparse `(qubit, axis)` support.
    fn multiplied(&self, support: &[(usize, PauliAxis)], factor: Complex64) -> PhasedString {
        let mut out = self.clone();
        out.coefficient *= factor;
        for &(qubit, axis) in support {
            let (phase, result) = axis_product(out.axes[qubit], axis);
            out.coefficient *= phase;
            out.axes[qubit] = result;
        }
        out
    }
}

/// Jordan-Wigner transform of a sum of fermionic terms into a qubit
/// Hamiltonian on `n_modes` qubits.
///
/// Creation on mode j maps to `(Xj - i Yj)/2` behind `Z0..Z(j-1)`,
/// annihilation to `(Xj + i Yj)/2` behind the same chain. Each term expands
/// into `2^k` phased Pauli strings (k = operator count), which are accumulated
/// by string. Output order is first appearance. Coefficients with magnitude at
/// most `1e-12` are dropped; any imaginary residue above that bound means the
/// input was not Hermitian and is an error.
pub fn jordan_wigner(terms: &[FermionTerm], n_modes: usize) -> Result<Hamiltonian, ModelError> {
    assert!(n_modes > 0, "need at least one mode");
    const TOLERANCE: f64 = 1e-12;
    use PauliAxis::{I, X, Y, Z};
    for term in terms {
        for op in term.operators() {
            if op.mode >= n_modes {
                return Err(ModelError::ModeOutOfRange {
                    mode: op.mode,
                    n_modes,
                });
            }
        }
    }
    let mut accumulated: HashMap<Vec<PauliAxis>, Complex64> = HashMap::new();
    let mut order: Vec<Vec<PauliAxis>> = Vec::new();
    for term in terms {
        let mut expansion = vec![PhasedString {
            coefficient: Complex64::new(term.coefficient(), 0.0),
            axes: vec![I; n_modes],
        }];
        for op in term.operators() {
            let mut chain: Vec<(usize, PauliAxis)> = (0..op.mode).map(|q| (q, Z)).collect();
            let ladder_sign = if op.daggered { -0.5 } else { 0.5 };
            let mut next = Vec::with_capacity(expansion.len() * 2);
            for ps in &expansion {
                chain.push((op.mode, X));
                next.push(ps.multiplied(&chain, Complex64::new(0.5, 0.0)));
                *chain.last_mut().unwrap() = (op.mode, Y);
                next.push(ps.multiplied(&chain, Complex64::new(0.0, ladder_sign)));
                chain.pop();
            }
            expansion = next;
        }
        for ps in expansion {
            match accumulated.get_mut(&ps.axes) {
                Some(c) => *c += ps.coefficient,
                None => {
                    order.push(ps.axes.clone());
                    accumulated.insert(ps.axes, ps.coefficient);
                }
            }
        }
    }
    let residue = accumulated
        .values()
        .map(|c| c.im.abs())
        .fold(0.0f64, f64::max);
    if residue > TOLERANCE {
        return Err(ModelError::NonHermitian { residue });
    }
    let mut out = Vec::new();
    for axes in order {
        let c = accumulated[&axes].re;
        if c.abs() > TOLERANCE {
            out.push(Term::new(c, PauliString::from_axes(&axes)).expect("finite coefficient"));
        }
    }
    Ok(Hamiltonian::from_parts(n_modes, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_hamiltonian;

    #[test]
    fn h2_has_four_terms_on_two_qubits() {
        let h = h2_hamiltonian();
        assert_eq!(h.len(), 4);
        assert_eq!(h.n_qubits(), 2);
        let total: f64 = h.terms().iter().map(|t| t.coefficient().abs()).sum();
        assert!((total - 0.988).abs() < 1e-12);
        assert_eq!(h.render(), "0.011 Z0 Z1\n0.398 Z0\n0.398 Z1\n0.181 X0 X1\n");
    }

    #[test]
    fn lattice_rejects_fewer_than_two_sites() {
        assert!(LatticeSpec::new(1, 1).is_err());
        assert!(LatticeSpec::new(0, 5).is_err());
        assert!(LatticeSpec::new(1, 2).is_ok());
    }

    #[test]
    fn chain_edges_wrap_only_past_two_sites() {
        let pair = LatticeSpec::new(1, 2).unwrap();
        assert!(pair.periodic());
        assert_eq!(pair.edges(), vec![(0, 1)]);

        let ring = LatticeSpec::new(1, 4).unwrap();
        assert_eq!(ring.edges(), vec![(0, 1), (1, 2), (2, 3), (0, 3)]);

        let open = LatticeSpec::new(1, 4).unwrap().with_periodic(false);
        assert_eq!(open.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn grid_edges_are_row_major_right_then_down() {
        let grid = LatticeSpec::new(2, 2).unwrap();
        assert!(!grid.periodic());
        assert_eq!(grid.edges(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        // Periodic wrap on a 2x2 grid would duplicate existing edges.
        let wrapped = LatticeSpec::new(2, 2).unwrap().with_periodic(true);
        assert_eq!(wrapped.edges(), grid.edges());

        let three = LatticeSpec::new(3, 3).unwrap();
        assert_eq!(three.edges().len(), 12);
        assert_eq!(three.n_sites(), 9);
    }

    #[test]
    fn heisenberg_term_counts_match_edge_counts() {
        let ring20 = LatticeSpec::new(1, 20).unwrap();
        let h = heisenberg_hamiltonian(&ring20, 1.0);
        assert_eq!(h.len(), 60);
        assert_eq!(h.n_qubits(), 20);

        let grid33 = LatticeSpec::new(3, 3).unwrap();
        let h = heisenberg_hamiltonian(&grid33, 1.0);
        assert_eq!(h.len(), 36);
        assert_eq!(h.n_qubits(), 9);

        let pair = LatticeSpec::new(1, 2).unwrap();
        let h = heisenberg_hamiltonian(&pair, 0.25);
        assert_eq!(h.render(), "0.25 X0 X1\n0.25 Y0 Y1\n0.25 Z0 Z1\n");
    }

    #[test]
    fn hubbard_operator_counts() {
        let count = |spec: &LatticeSpec| {
            let terms = hubbard_hamiltonian(spec, 1.0, 2.0);
            let hops = terms.iter().filter(|t| t.operators().len() == 2).count();
            let ints = terms.iter().filter(|t| t.operators().len() == 4).count();
            (hops, ints)
        };
        assert_eq!(count(&LatticeSpec::new(1, 2).unwrap()), (4, 2));
        assert_eq!(count(&LatticeSpec::new(1, 3).unwrap()), (8, 3));
        assert_eq!(count(&LatticeSpec::new(2, 2).unwrap()), (16, 4));
    }

    #[test]
    fn number_operator_maps_to_half_identity_minus_half_z() {
        let n0 = FermionTerm::new(1.0, vec![FermionOp::create(0), FermionOp::annihilate(0)]);
        let h = jordan_wigner(std::slice::from_ref(&n0), 1).unwrap();
        assert_eq!(h, parse_hamiltonian("0.5 I\n-0.5 Z0\n").unwrap());

        // A wider register pads the strings but not the rendering.
        let padded = jordan_wigner(&[n0], 2).unwrap();
        assert_eq!(padded.n_qubits(), 2);
        assert_eq!(padded.render(), "0.5 I\n-0.5 Z0\n");
    }

    #[test]
    fn symmetric_hopping_maps_to_xx_plus_yy() {
        let hop = [
            FermionTerm::new(1.0, vec![FermionOp::create(0), FermionOp::annihilate(1)]),
            FermionTerm::new(1.0, vec![FermionOp::create(1), FermionOp::annihilate(0)]),
        ];
        let h = jordan_wigner(&hop, 2).unwrap();
        // Cross products cancel; the YY string surfaces first in the
        // branch expansion.
        assert_eq!(h, parse_hamiltonian("0.5 Y0 Y1\n0.5 X0 X1\n").unwrap());
    }

    #[test]
    fn hopping_through_a_gap_carries_the_parity_chain() {
        let hop = [
            FermionTerm::new(1.0, vec![FermionOp::create(0), FermionOp::annihilate(2)]),
            FermionTerm::new(1.0, vec![FermionOp::create(2), FermionOp::annihilate(0)]),
        ];
        let h = jordan_wigner(&hop, 3).unwrap();
        assert_eq!(
            h,
            parse_hamiltonian("0.5 Y0 Z1 Y2\n0.5 X0 Z1 X2\n").unwrap()
        );
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let lone = [FermionTerm::new(
            1.0,
            vec![FermionOp::create(0), FermionOp::annihilate(1)],
        )];
        let e = jordan_wigner(&lone, 2).unwrap_err();
        assert!(matches!(e, ModelError::NonHermitian { .. }));
    }

    #[test]
    fn out_of_range_mode_is_rejected() {
        let bad = [FermionTerm::new(1.0, vec![FermionOp::create(5)])];
        assert_eq!(
            jordan_wigner(&bad, 4).unwrap_err(),
            ModelError::ModeOutOfRange {
                mode: 5,
                n_modes: 4
            }
        );
    }

    #[test]
    fn hubbard_chain_transform_counts_and_coefficients() {
        let spec = LatticeSpec::new(1, 2).unwrap();
        let h = jordan_wigner(&hubbard_hamiltonian(&spec, 1.0, 2.0), 4).unwrap();
        // 4 hopping strings, identity, and 6 diagonal interaction strings.
        assert_eq!(h.len(), 11);
        let identity = h
            .terms()
            .iter()
            .find(|t| t.string().is_identity())
            .expect("identity present");
        assert!((identity.coefficient() - 1.0).abs() < 1e-12);
        let zz: Vec<_> = h
            .terms()
            .iter()
            .filter(|t| t.string().is_z_only() && t.string().weight() == 2)
            .collect();
        assert_eq!(zz.len(), 2);
        assert!(zz.iter().all(|t| (t.coefficient() - 0.5).abs() < 1e-12));
    }

    #[test]
    fn hubbard_grid_transform_is_hermitian_and_sized() {
        let spec = LatticeSpec::new(2, 2).unwrap();
        let h = jordan_wigner(&hubbard_hamiltonian(&spec, 1.0, 2.0), 8).unwrap();
        assert_eq!(h.n_qubits(), 8);
        // 16 hopping strings, 1 identity, 8 single-Z, 4 ZZ.
        assert_eq!(h.len(), 29);
    }
}
