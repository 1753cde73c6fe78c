use proptest::prelude::*;

use sunrigid::gradedpoly::{level_basis, PolyVectorField};
use sunrigid::heisenberg::{algebra_exp, algebra_log, ANElement, HeisenbergElement, Word};
use sunrigid::jetgroup::{jet_exp, jet_log, JetTransformation};
use sunrigid::json::{ANElementWire, JetWire};
use sunrigid::normalization::{perturb_scaling, sternberg_normalize, sternberg_normalize_ordered};
use sunrigid::rigidity::phi_psi_evaluate;
use sunrigid::scalar::{q, qf, Q, CQ};

fn small_q() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| qf(a, b))
}

fn sparse_q() -> impl Strategy<Value = Q> {
    prop_oneof![3 => Just(q(0)), 1 => small_q()]
}

fn small_cq() -> impl Strategy<Value = CQ> {
    (small_q(), small_q()).prop_map(|(a, b)| CQ::new(a, b))
}

/// Random field with components in levels `lo..=hi`.
fn field(n: usize, lo: i32, hi: i32) -> impl Strategy<Value = PolyVectorField> {
    let slots: Vec<_> = (lo..=hi).flat_map(|l| level_basis(n, l)).collect();
    prop::collection::vec(sparse_q(), slots.len()).prop_map(move |cs| {
        let mut f = PolyVectorField::zero(n);
        for ((comp, m), c) in slots.iter().zip(cs) {
            f.comp_mut(*comp).add_term(m.clone(), c);
        }
        f
    })
}

/// Element of `Q_r`: identity plus levels `1..=r`.
fn unipotent_jet(n: usize, r: u32) -> impl Strategy<Value = JetTransformation> {
    field(n, 1, r as i32).prop_map(move |d| JetTransformation::from_displacement(&d, r).unwrap())
}

fn heis(n: usize) -> impl Strategy<Value = HeisenbergElement> {
    (prop::collection::vec(small_cq(), n), small_q()).prop_map(|(z, t)| HeisenbergElement::new(z, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn heisenberg_group_axioms(a in heis(2), b in heis(2), c in heis(2)) {
        let ab = a.product(&b).unwrap();
        prop_assert_eq!(ab.product(&c).unwrap(), a.product(&b.product(&c).unwrap()).unwrap());
        prop_assert!(a.product(&a.inverse()).unwrap().is_identity());
        prop_assert_eq!(a.product(&HeisenbergElement::identity(2)).unwrap(), a.clone());
        prop_assert_eq!(ab.to_matrix(), a.to_matrix().mul(&b.to_matrix()));
    }

    #[test]
    fn heisenberg_exp_log_and_bch(a in heis(2), b in heis(2), s in small_q()) {
        prop_assert_eq!(algebra_exp(&algebra_log(&a)), a.clone());
        let bch = a.add(&b).add(&a.bracket(&b).scale(&qf(1, 2)));
        prop_assert_eq!(algebra_exp(&a).product(&algebra_exp(&b)).unwrap(), algebra_exp(&bch));
        prop_assert_eq!(a.product(&b).unwrap().dilate(&s), a.dilate(&s).product(&b.dilate(&s)).unwrap());
    }

    #[test]
    fn an_product_matches_matrices(a in heis(1), b in heis(1), p in -2i64..=2, pp in -2i64..=2, k in 2i64..=3) {
        let kq = q(k);
        let g = ANElement { p, h: a };
        let h = ANElement { p: pp, h: b };
        let gh = g.product(&h, &kq).unwrap();
        prop_assert_eq!(gh.to_matrix(&kq), g.to_matrix(&kq).mul(&h.to_matrix(&kq)));
        prop_assert!(g.product(&g.inverse(&kq), &kq).unwrap().is_identity());
    }

    #[test]
    fn bracket_is_bilinear_antisymmetric_and_jacobi(
        x in field(1, -2, 1), y in field(1, -2, 1), z in field(1, -2, 1), c in small_q()
    ) {
        prop_assert_eq!(x.lie_bracket(&y), y.lie_bracket(&x).scale(&q(-1)));
        let lin = &x.scale(&c) + &y;
        prop_assert_eq!(lin.lie_bracket(&z), &x.lie_bracket(&z).scale(&c) + &y.lie_bracket(&z));
        let jac = &(&x.lie_bracket(&y.lie_bracket(&z)) + &y.lie_bracket(&z.lie_bracket(&x))) + &z.lie_bracket(&x.lie_bracket(&y));
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn bracket_adds_levels(x in field(1, 1, 1), y in field(1, -1, -1)) {
        let b = x.lie_bracket(&y);
        prop_assert!(b.is_zero() || (b.min_level() == Some(0) && b.max_level() == Some(0)));
    }

    #[test]
    fn jet_group_axioms(f in unipotent_jet(1, 3), g in unipotent_jet(1, 3), h in unipotent_jet(1, 3)) {
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.compose(&h).unwrap(), f.compose(&g.compose(&h).unwrap()).unwrap());
        prop_assert!(f.compose(&f.inverse().unwrap()).unwrap().is_identity());
        prop_assert!(f.inverse().unwrap().compose(&f).unwrap().is_identity());
    }

    #[test]
    fn exp_and_log_are_inverse(d in field(1, 1, 3), f in unipotent_jet(1, 3)) {
        prop_assert_eq!(jet_log(&jet_exp(&d, 3).unwrap()).unwrap(), d);
        prop_assert_eq!(jet_exp(&jet_log(&f).unwrap(), 3).unwrap(), f);
    }

    #[test]
    fn pushforward_preserves_brackets(h in unipotent_jet(1, 5), x in field(1, -2, 0), y in field(1, -2, 0)) {
        let lhs = h.pushforward(&x.lie_bracket(&y), 1).unwrap();
        let px = h.pushforward(&x, 3).unwrap();
        let py = h.pushforward(&y, 3).unwrap();
        prop_assert_eq!(lhs, px.lie_bracket(&py).truncate_level(1));
    }

    #[test]
    fn json_round_trip(f in unipotent_jet(2, 2), g in heis(2), p in -3i64..=3) {
        let text = serde_json::to_string(&JetWire::from_jet(&f)).unwrap();
        let back: JetWire = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_jet().unwrap(), f);
        let e = ANElement { p, h: g };
        let text = serde_json::to_string(&ANElementWire::from_element(&e)).unwrap();
        let back: ANElementWire = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_element().unwrap(), e);
    }

    #[test]
    fn words_print_and_parse(letters in prop::collection::vec((0usize..4, -3i64..=3), 0..8)) {
        let text: Vec<String> = letters
            .iter()
            .filter(|(_, e)| *e != 0)
            .map(|&(g, e)| {
                let name = match g { 0 => "a".to_string(), 1 => "c".to_string(), i => format!("b{}", i - 1) };
                format!("{name}^{e}")
            })
            .collect();
        let w: Word = text.join(" ").parse().unwrap();
        let again: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(again, w);
    }

    #[test]
    fn phi_is_multilinear(x in field(1, 2, 2), xi in small_cq(), eta in small_cq(), zeta in small_cq(), c in small_q()) {
        prop_assume!(!x.is_zero());
        let mix = vec![&xi + &eta.scale(&c)];
        let tuple = |first: Vec<CQ>| [first, vec![zeta.clone()], vec![xi.clone()], vec![eta.clone()]];
        let tuples = [tuple(mix), tuple(vec![xi.clone()]), tuple(vec![eta.clone()])];
        let psi = [[vec![xi.clone()], vec![zeta.clone()], vec![eta.clone()]]];
        let rep = phi_psi_evaluate(&x, &tuples, &psi).unwrap();
        let v = &rep.phi_values;
        prop_assert_eq!(v[0].clone(), &v[1] + &v[2].scale(&c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn normalization_is_exact_and_order_independent(
        k in 2i64..=3,
        r in 1u32..=3,
        picks in prop::collection::vec(prop_oneof![4 => Just(q(0)), 1 => Just(qf(1, 10)), 1 => Just(qf(-1, 10))], 64),
    ) {
        let mut it = picks.into_iter().cycle();
        let f = perturb_scaling(1, k, r, || it.next().unwrap()).unwrap();
        let res = sternberg_normalize(&f).unwrap();
        prop_assert_eq!(f.compose(&res.h).unwrap(), res.h.compose(&res.g).unwrap());
        prop_assert!(res.h.level_zero().is_identity());
        let rev = sternberg_normalize_ordered(&f, |len| (0..len).rev().collect()).unwrap();
        prop_assert_eq!(rev.h, res.h);
    }
}
