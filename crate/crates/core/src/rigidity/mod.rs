//! Graded homomorphisms into polynomial vector fields, the operator that
//! transports them from `n^+` to `n^-`, and the linear systems behind the
//! final uniqueness step.

mod hom;
mod kernel;
mod theta;

pub use hom::{hconn_construct, verify_graded_hom, GradedHomReport, GradedLieHom};
pub use kernel::{
    final_kernel, final_kernel_with, phi_psi_evaluate, weil_check, FinalKernel, KernelEquations, PhiPsiReport,
    WeilCheck,
};
pub use theta::{theta, theta_with_reference, verify_normalized_bracket_identities, IdentityCheck, NormalizedReport};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedpoly::{level_basis, PolyVectorField};
    use crate::heisenberg::{extend_lattice_hom, LatticePresentation, Word};
    use crate::scalar::{q, qf, CQ};
    use crate::su_grading::{f_plus, induced_vector_field, phi_chart_jet, BasisElement, Domain};

    fn scaled(iota: &GradedLieHom, s: &crate::scalar::Q) -> GradedLieHom {
        let mut out = iota.clone();
        for (b, x) in out.images.iter_mut() {
            let e = b.grade().unsigned_abs() as i64;
            *x = x.scale(&crate::scalar::qpow(s, e));
        }
        out
    }

    #[test]
    fn chart_realization_is_a_graded_hom() {
        assert!(verify_graded_hom(&GradedLieHom::standard(1, Domain::NPlus)).is_hom());
        assert!(verify_graded_hom(&GradedLieHom::standard(2, Domain::Full)).is_hom());
        let mut bad = GradedLieHom::standard(1, Domain::NPlus);
        let extra = PolyVectorField::basis_element(1, 0, crate::gradedpoly::Monomial::var(3, 0));
        let x = bad.images.get_mut(&BasisElement::XiPlus(0)).unwrap();
        *x = &*x + &extra;
        let report = verify_graded_hom(&bad);
        assert_eq!(report.grading_violations, vec![BasisElement::XiPlus(0)]);
        assert!(!report.bracket_violations.is_empty());
    }

    #[test]
    fn theta_of_chart_realization() {
        for n in 1..=2 {
            let plus = GradedLieHom::standard(n, Domain::NPlus);
            assert_eq!(theta(&plus).unwrap(), GradedLieHom::standard(n, Domain::NMinus));
            let s = qf(3, 2);
            assert_eq!(theta(&scaled(&plus, &s)).unwrap(), scaled(&GradedLieHom::standard(n, Domain::NMinus), &s));
            let mut no_top = plus.clone();
            no_top.images.insert(BasisElement::FPlus, PolyVectorField::zero(n));
            assert!(theta(&no_top).unwrap().images[&BasisElement::FMinus].is_zero());
        }
    }

    #[test]
    fn theta_is_natural_under_level_scalings() {
        let n = 1;
        let plus = GradedLieHom::standard(n, Domain::NPlus);
        let reference = induced_vector_field(&crate::su_grading::f_minus(n, &q(1)));
        let h = crate::jetgroup::JetTransformation::scaling(n, &q(3), 1).linear_part();
        let push = |x: &PolyVectorField| x.pushforward_linear(&h).unwrap();
        let lhs = theta_with_reference(&plus.map_images(push), &push(&reference)).unwrap();
        let rhs = theta(&plus).unwrap().map_images(push);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalized_identities() {
        for n in 1..=2 {
            let report = verify_normalized_bracket_identities(&GradedLieHom::standard(n, Domain::NPlus)).unwrap();
            assert!(report.all_hold());
            assert_eq!(report.identities.len(), 2 * n + 1);
        }
        let perturbed = scaled(&GradedLieHom::standard(1, Domain::NPlus), &q(2));
        let report = verify_normalized_bracket_identities(&perturbed).unwrap();
        assert!(!report.precondition_holds());
        assert!(report.identities.is_empty());
    }

    #[test]
    fn graded_projection_of_standard_images() {
        for (n, k) in [(1usize, 2i64), (2, 3)] {
            let lat = LatticePresentation::standard(n, k);
            let gens: Vec<String> = (1..=2 * n).map(|i| format!("b{i}")).chain(["c".to_string()]).collect();
            let jets = gens
                .iter()
                .map(|g| phi_chart_jet(&g.parse::<Word>().unwrap(), &lat, 4))
                .collect::<crate::Result<Vec<_>>>()
                .unwrap();
            let f = extend_lattice_hom(&jets, &lat).unwrap();
            let phi = hconn_construct(&f, &lat).unwrap();
            assert_eq!(phi, GradedLieHom::standard(n, Domain::NPlus));
            let s = qf(2, 3);
            let mut g = f.clone();
            g.x = g.x.iter().map(|x| x.scale(&s)).collect();
            g.y = g.y.scale(&(&s * &s));
            let phi_s = hconn_construct(&g, &lat).unwrap();
            assert_eq!(phi_s, scaled(&phi, &s));
            assert!(verify_graded_hom(&phi_s).is_hom());
            let mut low = f.clone();
            low.r = 2;
            assert!(hconn_construct(&low, &lat).is_err());
        }
    }

    #[test]
    fn final_kernel_dimensions() {
        // n = 1 cross-checked against a sympy solve of the same system
        for (n, dim, only3, only4) in [(1, 2, 13, 3), (2, 6, 115, 7)] {
            let full = final_kernel(n);
            assert_eq!(full.unknowns, level_basis(n, 2).len());
            assert_eq!(full.kernel.len(), dim);
            assert_eq!(full.unknowns - full.rank, dim);
            let a = final_kernel_with(n, KernelEquations { commutes_with_f_minus: true, mixed: false });
            let b = final_kernel_with(n, KernelEquations { commutes_with_f_minus: false, mixed: true });
            assert_eq!(a.kernel.len(), only3);
            assert_eq!(b.kernel.len(), only4);
        }
    }

    #[test]
    fn kernel_elements_give_symmetric_nonzero_phi() {
        let e1 = vec![CQ::one()];
        let mixed = vec![CQ::new(q(1), q(1))];
        let ie1 = vec![CQ::i()];
        let phi_t = [
            [e1.clone(), e1.clone(), ie1.clone(), ie1.clone()],
            [mixed.clone(), mixed.clone(), mixed.clone(), mixed.clone()],
            [e1.clone(), e1.clone(), e1.clone(), e1.clone()],
        ];
        let psi_t = [[e1.clone(), ie1.clone(), ie1.clone()]];
        let kernel = final_kernel(1).kernel;
        let mut nonzero_diagonal = false;
        for x in &kernel {
            let r = phi_psi_evaluate(x, &phi_t, &psi_t).unwrap();
            assert!(r.satisfies_commutation && r.satisfies_mixed && r.symmetric());
            assert!(r.phi_values[0].is_zero());
            nonzero_diagonal |= !r.phi_values[1].is_zero() || !r.phi_values[2].is_zero();
        }
        assert!(nonzero_diagonal);
    }

    #[test]
    fn phi_psi_reports() {
        let n = 1;
        let e1 = vec![CQ::one()];
        let ie1 = vec![CQ::i()];
        let phi_t = [[e1.clone(), ie1.clone(), e1.clone(), ie1.clone()]];
        let psi_t = [[e1.clone(), ie1.clone(), ie1.clone()]];
        let zero = phi_psi_evaluate(&PolyVectorField::zero(n), &phi_t, &psi_t).unwrap();
        assert!(zero.all_vanish() && zero.symmetric());

        let fp = induced_vector_field(&f_plus(n, &q(1)));
        let top = phi_psi_evaluate(&fp, &phi_t, &psi_t).unwrap();
        assert!(!top.satisfies_commutation);

        let x = PolyVectorField::basis_element(n, 0, crate::gradedpoly::Monomial::new(&[1, 0, 1]));
        let report = phi_psi_evaluate(&x, &phi_t, &psi_t).unwrap();
        assert!(!report.satisfies_commutation);
        assert!(!report.symmetric());

        let wrong = PolyVectorField::basis_element(n, 2, crate::gradedpoly::Monomial::new(&[1, 0, 0]));
        assert!(phi_psi_evaluate(&wrong, &phi_t, &psi_t).is_err());
    }

    #[test]
    fn weil_step() {
        for k in 2..=3 {
            let w = weil_check(2, k).unwrap();
            assert!(w.ad_trivial_on_level_zero && w.shifted_invertible);
        }
    }
}
