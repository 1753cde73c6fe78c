use num_traits::Zero;

use super::algebra::{
    e_matrix, f_minus, f_plus, full_basis, real_basis_vector, xi_minus, xi_plus, BasisElement,
};
use super::cpoly::CPoly;
use crate::cmatrix::CMatrix;
use crate::gradedpoly::{Poly, PolyVectorField};
use crate::scalar::{qf, q, Q, CQ};

/// Lift `x -> (1, z, -|z|^2/2 + i x_{2n+1})` of the chart to the light cone,
/// with `z_j = x_{2j-1} + i x_{2j}`.
pub(crate) fn phi_lift(n: usize) -> Vec<CPoly> {
    let nvars = 2 * n + 1;
    let mut lift = vec![CPoly::constant(nvars, &CQ::one())];
    let mut nsq = Poly::zero(nvars);
    for j in 0..n {
        let re = Poly::var(nvars, 2 * j);
        let im = Poly::var(nvars, 2 * j + 1);
        nsq = &nsq + &(&(&re * &re) + &(&im * &im));
        lift.push(CPoly::from_parts(re, im));
    }
    lift.push(CPoly::from_parts(nsq.scale(&qf(-1, 2)), Poly::var(nvars, 2 * n)));
    lift
}

pub(crate) fn apply_matrix(m: &CMatrix, v: &[CPoly], max_wdeg: u32) -> Vec<CPoly> {
    let nvars = v[0].re.nvars();
    (0..m.dim())
        .map(|i| {
            let mut acc = CPoly::zero(nvars);
            for (j, vj) in v.iter().enumerate() {
                let c = m.get(i, j);
                if !c.is_zero() {
                    acc = acc.add(&vj.scale(c).truncate(max_wdeg));
                }
            }
            acc
        })
        .collect()
}

/// Fundamental field `iota0(X)(p) = d/dt exp(tX) p` in the chart around the
/// origin `[1, 0, 0]`.
pub fn induced_vector_field(x: &CMatrix) -> PolyVectorField {
    let n = x.dim() - 2;
    let lift = phi_lift(n);
    let xz = apply_matrix(x, &lift, u32::MAX);
    let v: Vec<CPoly> = (0..n + 2)
        .map(|i| xz[i].sub(&xz[0].mul_truncated(&lift[i], u32::MAX)))
        .collect();
    let mut comps = Vec::with_capacity(2 * n + 1);
    for vj in &v[1..=n] {
        comps.push(vj.re.clone());
        comps.push(vj.im.clone());
    }
    comps.push(v[n + 1].im.clone());
    PolyVectorField::from_components(comps).expect("valid dimension")
}

/// Pairs of basis elements on which `iota0` fails to preserve brackets.
pub fn verify_homomorphism(n: usize) -> Vec<(BasisElement, BasisElement)> {
    let basis = full_basis(n);
    let mats: Vec<CMatrix> = basis.iter().map(|b| b.materialize(n)).collect();
    let fields: Vec<PolyVectorField> = mats.iter().map(induced_vector_field).collect();
    let mut bad = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lhs = induced_vector_field(&mats[i].commutator(&mats[j]));
            if lhs != fields[i].lie_bracket(&fields[j]) {
                bad.push((basis[i], basis[j]));
            }
        }
    }
    bad
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
}

fn im_inner(xi: &[CQ], eta: &[CQ]) -> Q {
    xi.iter().zip(eta).fold(Q::zero(), |acc, (a, b)| acc + (&a.conj() * b).im)
}

fn times(c: &CQ, v: &[CQ]) -> Vec<CQ> {
    v.iter().map(|x| c * x).collect()
}

/// Checks the bracket relations of the grading on all pairs of real basis
/// vectors of `C^n` plus one mixed vector.
pub fn bracket_relation_table(n: usize) -> Vec<RelationCheck> {
    let one = q(1);
    let fm = f_minus(n, &one);
    let fp = f_plus(n, &one);
    let e = e_matrix(n);
    let mut vecs: Vec<Vec<CQ>> = (0..2 * n).map(|i| real_basis_vector(n, i)).collect();
    vecs.push((0..n).map(|j| CQ::new(q(j as i64 + 1), qf(-1, j as i64 + 2))).collect());
    let i = CQ::i();
    let mut out = Vec::new();
    let mut check = |name: String, holds: bool| out.push(RelationCheck { name, holds });
    for xi in &vecs {
        for eta in &vecs {
            let s = im_inner(xi, eta) * q(2);
            check(
                format!("[{xi:?}+, {eta:?}+] = 2 Im(xi*eta) F+"),
                xi_plus(xi).commutator(&xi_plus(eta)) == fp.scale(&s),
            );
            check(
                format!("[{xi:?}-, {eta:?}-] = 2 Im(xi*eta) F-"),
                xi_minus(xi).commutator(&xi_minus(eta)) == fm.scale(&s),
            );
        }
        check(format!("[F-, {xi:?}+] = (i xi)-"), fm.commutator(&xi_plus(xi)) == xi_minus(&times(&i, xi)));
        check(format!("[F+, {xi:?}-] = (i xi)+"), fp.commutator(&xi_minus(xi)) == xi_plus(&times(&i, xi)));
        check(
            format!("{xi:?}- = [F-, (-i xi)+]"),
            xi_minus(xi) == fm.commutator(&xi_plus(&times(&-&i, xi))),
        );
        check(format!("[E, {xi:?}+] = {xi:?}+"), e.commutator(&xi_plus(xi)) == xi_plus(xi));
        check(format!("[E, {xi:?}-] = -{xi:?}-"), e.commutator(&xi_minus(xi)) == xi_minus(xi).scale(&q(-1)));
    }
    check("[F-, F+] = E".into(), fm.commutator(&fp) == e);
    check("2 F- = ad(F-)^2 F+".into(), fm.commutator(&fm.commutator(&fp)) == fm.scale(&q(2)));
    check("[E, F+] = 2 F+".into(), e.commutator(&fp) == fp.scale(&q(2)));
    check("[E, F-] = -2 F-".into(), e.commutator(&fm) == fm.scale(&q(-2)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedpoly::standard_connection;

    #[test]
    fn chart_field_values() {
        for n in 1..=2 {
            let std = standard_connection(n);
            for idx in 0..2 * n {
                let f = induced_vector_field(&BasisElement::XiMinus(idx).materialize(n));
                assert_eq!(f, std[idx]);
            }
            assert_eq!(induced_vector_field(&f_minus(n, &q(1))), std[2 * n]);
            assert_eq!(induced_vector_field(&e_matrix(n)), PolyVectorField::euler(n).scale(&q(-1)));
        }
    }

    #[test]
    fn homomorphism_on_full_basis() {
        assert!(verify_homomorphism(1).is_empty());
        assert!(verify_homomorphism(2).is_empty());
    }

    #[test]
    fn relation_table_holds() {
        for n in 1..=2 {
            for r in bracket_relation_table(n) {
                assert!(r.holds, "{}", r.name);
            }
        }
    }
}
