//! Differential operators, Hamiltonian orderings and symmetry checks.

pub mod conformal;
pub mod determining;
pub mod hamiltonian;
pub mod linop;
pub mod optext;
pub mod rectify;
pub mod symmetry;

pub use hamiltonian::{Hamiltonian, Representation, RoundTripReport, RoundTripStep};
pub use linop::{LinOp, Multi};
pub use symmetry::{check_symmetry, commutator_with_l, DiffOperator, SymmetryReport};
