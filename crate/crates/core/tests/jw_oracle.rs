//! Jordan-Wigner output checked against dense fermionic matrices built
//! directly from ladder-operator actions in the occupancy basis.

use pauliq_core::models::{
    hubbard_hamiltonian, jordan_wigner, FermionOp, FermionTerm, LatticeSpec,
};
use pauliq_testkit::{fermion_hamiltonian_matrix, hamiltonian_matrix, max_abs, sub};

fn assert_transform_matches(terms: &[FermionTerm], n_modes: usize, context: &str) {
    let h = jordan_wigner(terms, n_modes).unwrap();
    let from_paulis = hamiltonian_matrix(&h);
    let from_fermions = fermion_hamiltonian_matrix(terms, n_modes);
    let residue = max_abs(&sub(&from_paulis, &from_fermions));
    assert!(residue < 1e-10, "{context}: residue {residue}");
}

#[test]
fn single_hop_matches_the_dense_matrix() {
    let hop = [
        FermionTerm::new(1.0, vec![FermionOp::create(0), FermionOp::annihilate(1)]),
        FermionTerm::new(1.0, vec![FermionOp::create(1), FermionOp::annihilate(0)]),
    ];
    assert_transform_matches(&hop, 2, "symmetric hop");
}

#[test]
fn number_and_pair_operators_match_the_dense_matrices() {
    let number = [FermionTerm::new(
        1.0,
        vec![FermionOp::create(1), FermionOp::annihilate(1)],
    )];
    assert_transform_matches(&number, 3, "number operator");

    let double = [FermionTerm::new(
        2.0,
        vec![
            FermionOp::create(0),
            FermionOp::annihilate(0),
            FermionOp::create(2),
            FermionOp::annihilate(2),
        ],
    )];
    assert_transform_matches(&double, 3, "density-density product");
}

#[test]
fn hubbard_chain_1x2_matches_the_dense_matrix() {
    let spec = LatticeSpec::new(1, 2).unwrap();
    let terms = hubbard_hamiltonian(&spec, 1.0, 2.0);
    assert_transform_matches(&terms, 4, "1x2 chain");
}

#[test]
fn hubbard_chain_1x3_matches_the_dense_matrix() {
    let spec = LatticeSpec::new(1, 3).unwrap();
    let terms = hubbard_hamiltonian(&spec, 1.0, 2.0);
    assert_transform_matches(&terms, 6, "1x3 chain");
}

#[test]
fn hubbard_chain_1x4_matches_the_dense_matrix() {
    let spec = LatticeSpec::new(1, 4).unwrap();
    let terms = hubbard_hamiltonian(&spec, 0.7, 1.3);
    assert_transform_matches(&terms, 8, "1x4 chain");
}

#[test]
fn hubbard_grid_2x2_matches_the_dense_matrix() {
    let spec = LatticeSpec::new(2, 2).unwrap();
    let terms = hubbard_hamiltonian(&spec, 1.0, 2.0);
    assert_transform_matches(&terms, 8, "2x2 grid");
}
