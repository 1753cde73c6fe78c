//! Jets of transformations fixing the origin, with composition, inversion,
//! pushforward of fields, and exp/log on the unipotent part `Q_r`.

mod exp_log;
mod jet;

pub use exp_log::{bracket_truncated, jet_exp, jet_log};
pub use jet::{JetTransformation, P0Element};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedpoly::{Monomial, Poly, PolyVectorField};
    use crate::scalar::{q, qf, Q};

    fn sample(r: u32) -> JetTransformation {
        let nv = 3;
        let m = |e: &[u16]| Monomial::new(e);
        let c0 = Poly::from_terms(nv, [(m(&[1, 0, 0]), qf(1, 2)), (m(&[1, 1, 0]), q(1)), (m(&[0, 0, 1]), qf(1, 3))]);
        let c1 = Poly::from_terms(nv, [(m(&[0, 1, 0]), qf(1, 2)), (m(&[1, 0, 0]), qf(1, 10)), (m(&[2, 1, 0]), q(2))]);
        let c2 = Poly::from_terms(nv, [(m(&[0, 0, 1]), qf(1, 4)), (m(&[1, 1, 0]), q(3)), (m(&[1, 0, 1]), q(-1))]);
        JetTransformation::from_components(r, vec![c0, c1, c2]).unwrap()
    }

    #[test]
    fn inverse_composes_to_identity() {
        for r in 0..=4 {
            let f = sample(r);
            let g = f.inverse().unwrap();
            assert!(f.compose(&g).unwrap().is_identity(), "r = {r}");
            assert!(g.compose(&f).unwrap().is_identity(), "r = {r}");
        }
    }

    #[test]
    fn scaling_conjugation_multiplies_levels() {
        let k = q(2);
        let g = JetTransformation::scaling(1, &k, 4);
        let f = sample(4);
        let c = f.conjugate_by(&g).unwrap();
        let d = f.displacement();
        let cd = c.displacement();
        for l in 1..=4 {
            assert_eq!(cd.level_part(l), d.level_part(l).scale(&crate::scalar::qpow(&k, l as i64)));
        }
    }

    #[test]
    fn pushforward_is_a_homomorphism_for_fields() {
        let f = sample(5);
        let x = PolyVectorField::partial(1, 0);
        let mut y = PolyVectorField::zero(1);
        y.comp_mut(2).add_term(Monomial::new(&[1, 0, 0]), Q::from_integer(1.into()));
        let lhs = f.pushforward(&x.lie_bracket(&y), 3).unwrap();
        let rhs = f.pushforward(&x, 4).unwrap().lie_bracket(&f.pushforward(&y, 4).unwrap()).truncate_level(3);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn p0_action_matches_jet_pushforward() {
        let p0 = sample(0).level_zero();
        let x = PolyVectorField::euler(1);
        let exact = p0.act_on_field(&x).unwrap();
        let jet = p0.to_jet(1, 6).pushforward(&x, 6).unwrap();
        assert_eq!(exact.truncate_level(6), jet);
    }
}
