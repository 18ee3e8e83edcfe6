//! Measurement-run reduction for variational quantum eigensolvers, at desk scale.
//!
//! The crate takes a qubit Hamiltonian written as a weighted sum of Pauli
//! strings, builds the graph of term pairs that cannot be measured together,
//! colors that graph (greedily, exactly, or through a QUBO solved by simulated
//! annealing), and runs a shot-based VQE loop in which every color class is
//! estimated from one simultaneous measurement. Fewer colors means fewer
//! distinct measurement runs per energy evaluation.
//!
//! Modules follow the pipeline order:
//!
//! * [`pauli`]: Pauli strings, Hamiltonians, commutation predicates, text I/O.
//! * [`models`]: built-in Hamiltonians (a two-qubit molecular model,
//!   Heisenberg lattices, Fermi-Hubbard via the Jordan-Wigner transform).
//! * [`commgraph`]: non-commutation graphs and their colorings.
//! * [`qubo`]: graph coloring as a quadratic unconstrained binary optimization.
//! * [`anneal`]: simulated annealing and exhaustive QUBO solvers.
//! * [`sim`]: statevector simulator with grouped shot-based estimation.
//! * [`vqe`]: the variational loop and measurement-cost accounting.

pub mod anneal;
pub mod commgraph;
pub mod models;
pub mod pauli;
pub mod qubo;
pub mod seeding;
pub mod sim;
pub mod vqe;
