//! Linearization of jets with prescribed level-0 part, reconstruction from
//! low-order data, and the quantitative checks used around it.

mod certificate;
mod reconstruct;
mod sternberg;

pub use certificate::{
    contraction_certificate, germ_constant_check, operator_invertibility, resonance_check, ContractionCertificate,
    GeneratorBound, OperatorInvertibility, Resonance,
};
pub use reconstruct::reconstruct_from_low_order;
pub use sternberg::{
    kill_level_minus_one, level_residual, perturb_scaling, sternberg_normalize, sternberg_normalize_ordered, sternberg_normalize_probing, LevelDiagnostic,
    NormalizationResult,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedpoly::{level_basis, Poly, PolyVectorField};
    use crate::jetgroup::JetTransformation;
    use crate::scalar::{q, qf};
    use crate::su_grading::phi_chart_jet;
    use crate::heisenberg::{LatticePresentation, Word};

    fn jet(r: u32, comps: Vec<Poly>) -> JetTransformation {
        JetTransformation::from_components(r, comps).unwrap()
    }

    /// `I(k)` plus sparse `+-1/10` terms on levels `0..=r`.
    fn perturbed_scaling(n: usize, k: i64, r: u32, seed: u64, every: usize) -> JetTransformation {
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        let mut d = PolyVectorField::zero(n);
        let scale = JetTransformation::scaling(n, &q(k), r);
        for level in 0..=r as i32 {
            for (comp, m) in level_basis(n, level) {
                if next() as usize % every == 0 {
                    let c = if next() % 2 == 0 { qf(1, 10) } else { qf(-1, 10) };
                    d.comp_mut(comp).add_term(m, c);
                }
            }
        }
        let comps = scale.comps().iter().zip(d.comps()).map(|(a, b)| a + b).collect();
        jet(r, comps)
    }

    #[test]
    fn worked_order_one_example() {
        let x = |i| Poly::var(3, i);
        let f = jet(1, vec![&x(0).scale(&qf(1, 2)) + &(&x(0) * &x(1)), x(1).scale(&qf(1, 2)), x(2).scale(&qf(1, 4))]);
        let res = sternberg_normalize(&f).unwrap();
        let expected = jet(1, vec![&x(0) - &(&x(0) * &x(1)).scale(&q(4)), x(1), x(2)]);
        assert_eq!(res.h, expected);
        let lhs = f.compose(&res.h).unwrap();
        let rhs = res.h.compose(&res.g).unwrap();
        assert_eq!(lhs, rhs);
        let target = jet(1, vec![&x(0).scale(&qf(1, 2)) - &(&x(0) * &x(1)), x(1).scale(&qf(1, 2)), x(2).scale(&qf(1, 4))]);
        assert_eq!(lhs, target);
        assert_eq!(sternberg_normalize_probing(&f, |len| (0..len).collect()).unwrap(), expected);
    }

    #[test]
    fn scaling_is_already_normal() {
        let f = JetTransformation::scaling(1, &q(2), 4);
        let res = sternberg_normalize(&f).unwrap();
        assert!(res.h.is_identity());
        assert_eq!(res.g, f);
    }

    #[test]
    fn structured_and_probing_solvers_agree() {
        for (n, k, r, seed) in [(1, 2, 4, 1u64), (1, 3, 5, 2), (2, 2, 2, 3)] {
            let f = perturbed_scaling(n, k, r, seed, 3);
            let res = sternberg_normalize(&f).unwrap();
            assert_eq!(f.compose(&res.h).unwrap(), res.h.compose(&res.g).unwrap());
            assert!(res.h.level_zero().is_identity());
            let rev = sternberg_normalize_probing(&f, |len| (0..len).rev().collect()).unwrap();
            assert_eq!(rev, res.h);
        }
    }

    #[test]
    fn level_minus_one_is_removed() {
        let x = |i| Poly::var(3, i);
        let plain = JetTransformation::scaling(1, &q(2), 3);
        let (l, same) = kill_level_minus_one(&plain).unwrap();
        assert!(l.is_identity());
        assert_eq!(same, plain);

        let mut comps = plain.comps().to_vec();
        comps[2] = &comps[2] + &x(0).scale(&qf(1, 10));
        let f = jet(3, comps);
        assert!(f.has_level_minus_one());
        let (l, g) = kill_level_minus_one(&f).unwrap();
        // v (1/2 - 1/4) = -1/10
        let expected_l = jet(3, vec![x(0), x(1), &x(2) + &x(0).scale(&qf(-2, 5))]);
        assert_eq!(l, expected_l);
        assert!(!g.has_level_minus_one());
        let (l2, g2) = kill_level_minus_one(&g).unwrap();
        assert!(l2.is_identity());
        assert_eq!(g2, g);
        assert_eq!(g, JetTransformation::scaling(1, &q(2), 3));
    }

    #[test]
    fn reconstruction_matches_forward_expansion() {
        for (n, k) in [(1usize, 2i64), (1, 3), (2, 2)] {
            let lat = LatticePresentation::standard(n, k);
            let c = phi_chart_jet(&"c".parse::<Word>().unwrap(), &lat, 6).unwrap();
            let low = c.project(2).unwrap();
            assert_eq!(reconstruct_from_low_order(k, &low, (k * k) as u32, 6).unwrap(), c);
            for i in 1..=2 * n {
                let b = phi_chart_jet(&format!("b{i}").parse::<Word>().unwrap(), &lat, 6).unwrap();
                let low = b.project(1).unwrap();
                let rebuilt = reconstruct_from_low_order(k, &low, k as u32, 6).unwrap();
                assert_eq!(rebuilt, b);
                let again = reconstruct_from_low_order(k, &rebuilt.project(1).unwrap(), k as u32, 6).unwrap();
                assert_eq!(again, rebuilt);
            }
        }
        let id = JetTransformation::identity(1, 2);
        assert!(reconstruct_from_low_order(2, &id, 2, 5).unwrap().is_identity());
    }

    #[test]
    fn reconstruction_rejects_inconsistent_data() {
        let lat = LatticePresentation::standard(1, 2);
        let b = phi_chart_jet(&"b1".parse::<Word>().unwrap(), &lat, 3).unwrap();
        let mut comps = b.comps().to_vec();
        let x = |i| Poly::var(3, i);
        comps[0] = &comps[0] + &(&x(0) * &(&x(0) * &x(1))).scale(&qf(1, 3));
        let bad = jet(3, comps);
        assert!(reconstruct_from_low_order(2, &bad, 2, 5).is_err());
        // level 1 with m = k: k^1 = m, so a supplied level 1 is free but an unsupplied one is singular
        let id0 = JetTransformation::identity(1, 0);
        assert!(matches!(
            reconstruct_from_low_order(2, &id0, 2, 3),
            Err(crate::error::Error::SingularLevel { level: 1 })
        ));
    }
}
