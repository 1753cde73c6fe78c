//! The graded Lie algebra `su(n+1, 1)`, its fundamental fields on the sphere
//! and the chart actions of `A N` and lattice words.

mod algebra;
mod charts;
mod cpoly;
mod induced;

pub use algebra::{
    coordinates, domain_basis, e_matrix, f_minus, f_plus, full_basis, g0_element, grade_decompose, grade_of,
    hermitian_form, is_in_su, real_basis_vector, xi_minus, xi_plus, BasisElement, Domain,
};
pub use charts::{
    affine_word_action, chart_affine_data, i_times, jet_u_vector, phi_chart_jet, phi_chart_jet_matrix,
    psi_chart_action, psi_chart_matrix, AffineChartMap, ChartAffineData,
};
pub use cpoly::CPoly;
pub use induced::{bracket_relation_table, induced_vector_field, verify_homomorphism, RelationCheck};
