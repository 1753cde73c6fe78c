//! Weighted polynomials and polynomial vector fields on R^{2n+1}.
//!
//! Variables `x_1..x_{2n}` have weight one and `x_{2n+1}` has weight two.

pub mod connection;
pub mod field;
pub mod monomial;
pub mod poly;
pub mod span;

pub use connection::{
    centralizer, find_dilation, standard_connection, verify_heisenberg, Dilation, HeisenbergCheck,
    HeisenbergStructure,
};
pub use field::{level_basis, term_level, PolyVectorField};
pub use monomial::{var_weight, Monomial};
pub use poly::{Poly, Substitution};
pub use span::{express, in_span, same_span, span_rank, TermIndex};
