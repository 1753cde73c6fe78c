use std::collections::BTreeMap;

use super::hom::{has_pure_level, GradedLieHom};
use crate::error::{Error, Result};
use crate::gradedpoly::PolyVectorField;
use crate::scalar::{qf, CQ};
use crate::su_grading::{e_matrix, f_minus, induced_vector_field, real_basis_vector, xi_minus, xi_plus, BasisElement, Domain};

fn times(c: &CQ, v: &[CQ]) -> Vec<CQ> {
    v.iter().map(|x| c * x).collect()
}

fn check_n_plus(iota: &GradedLieHom) -> Result<()> {
    if iota.domain != Domain::NPlus {
        return Err(Error::Precondition("expected a map on n^+".into()));
    }
    for (b, x) in &iota.images {
        if !has_pure_level(x, b.grade()) {
            return Err(Error::LevelViolation(format!("image of {b} is not of level {}", b.grade())));
        }
    }
    Ok(())
}

/// `Theta iota` on `n^-`, built from brackets with the chart field of `F^-`.
pub fn theta(iota: &GradedLieHom) -> Result<GradedLieHom> {
    theta_with_reference(iota, &induced_vector_field(&f_minus(iota.n, &qf(1, 1))))
}

/// `Theta` with an arbitrary level -2 field `w` in place of the chart field
/// of `F^-`: `xi^- -> [w, iota((-i xi)^+)]`, `F^- -> [w, [w, iota F^+]] / 2`.
pub fn theta_with_reference(iota: &GradedLieHom, w: &PolyVectorField) -> Result<GradedLieHom> {
    check_n_plus(iota)?;
    let n = iota.n;
    let mut images = BTreeMap::new();
    for idx in 0..2 * n {
        let xi = real_basis_vector(n, idx);
        let arg = iota.image(&xi_plus(&times(&-CQ::i(), &xi))).expect("n^+ element");
        images.insert(BasisElement::XiMinus(idx), w.lie_bracket(&arg));
    }
    let fp = &iota.images[&BasisElement::FPlus];
    images.insert(BasisElement::FMinus, w.lie_bracket(&w.lie_bracket(fp)).scale(&qf(1, 2)));
    let out = GradedLieHom { n, domain: Domain::NMinus, images };
    for (b, x) in &out.images {
        if !has_pure_level(x, b.grade()) {
            return Err(Error::LevelViolation(format!("Theta image of {b} is not of level {}", b.grade())));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    /// Difference of the two sides; zero when the identity holds.
    pub residual: PolyVectorField,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedReport {
    /// Basis elements of `n^-` where `Theta iota` differs from the chart realization.
    pub precondition_failures: Vec<BasisElement>,
    /// Empty when the precondition fails.
    pub identities: Vec<IdentityCheck>,
}

impl NormalizedReport {
    pub fn precondition_holds(&self) -> bool {
        self.precondition_failures.is_empty()
    }

    pub fn all_hold(&self) -> bool {
        self.precondition_holds() && self.identities.iter().all(IdentityCheck::holds)
    }
}

/// Given `Theta iota = iota0` on `n^-`, checks `[iota0 F^-, iota F^+] = iota0 E`
/// and `iota xi^+ = [iota0 (i xi)^-, iota F^+]` on the real basis.
pub fn verify_normalized_bracket_identities(iota: &GradedLieHom) -> Result<NormalizedReport> {
    let n = iota.n;
    let th = theta(iota)?;
    let reference = GradedLieHom::standard(n, Domain::NMinus);
    let precondition_failures: Vec<BasisElement> =
        th.images.iter().filter(|(b, x)| reference.images[b] != **x).map(|(b, _)| *b).collect();
    if !precondition_failures.is_empty() {
        return Ok(NormalizedReport { precondition_failures, identities: Vec::new() });
    }
    let fp = &iota.images[&BasisElement::FPlus];
    let fm0 = &reference.images[&BasisElement::FMinus];
    let mut identities = vec![IdentityCheck {
        name: "[iota0 F-, iota F+] = iota0 E".into(),
        residual: &fm0.lie_bracket(fp) - &induced_vector_field(&e_matrix(n)),
    }];
    for idx in 0..2 * n {
        let xi = real_basis_vector(n, idx);
        let lhs = &iota.images[&BasisElement::XiPlus(idx)];
        let rhs = induced_vector_field(&xi_minus(&times(&CQ::i(), &xi))).lie_bracket(fp);
        identities.push(IdentityCheck {
            name: format!("iota xi+ = [iota0 (i xi)-, iota F+] for xi = {}", BasisElement::XiPlus(idx)),
            residual: lhs - &rhs,
        });
    }
    Ok(NormalizedReport { precondition_failures, identities })
}
