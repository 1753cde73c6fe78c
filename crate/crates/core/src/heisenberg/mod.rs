//! The Heisenberg group `N`, the groups `A N`, and lattice presentations.

mod extend;
mod group;
mod lattice;

pub use extend::{extend_lattice_hom, LatticeLieHom};
pub use group::{algebra_exp, algebra_log, phi, ANElement, HeisenbergElement};
pub use lattice::{
    build_lattice_embedding, complex_from_real, complex_structure, evaluate_word, real_from_complex, Gen,
    LatticePresentation, Letter, Word,
};
