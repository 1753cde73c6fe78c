use std::collections::BTreeMap;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::gradedpoly::PolyVectorField;
use crate::heisenberg::{real_from_complex, LatticeLieHom, LatticePresentation};
use crate::linalg;
use crate::scalar::Q;
use crate::su_grading::{coordinates, domain_basis, induced_vector_field, BasisElement, Domain};

/// Linear map from a graded piece of `su(n+1, 1)` to polynomial vector
/// fields, given on the real basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieHom {
    pub n: usize,
    pub domain: Domain,
    pub images: BTreeMap<BasisElement, PolyVectorField>,
}

impl GradedLieHom {
    pub fn new(n: usize, domain: Domain, images: BTreeMap<BasisElement, PolyVectorField>) -> Result<Self> {
        let basis = domain_basis(n, domain);
        if images.len() != basis.len() || basis.iter().any(|b| !images.contains_key(b)) {
            return Err(Error::Precondition("images must be given on exactly the domain basis".into()));
        }
        if images.values().any(|f| f.n() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: images.values().next().map_or(n, |f| f.n()) });
        }
        Ok(GradedLieHom { n, domain, images })
    }

    /// The restriction of the chart realization to `domain`.
    pub fn standard(n: usize, domain: Domain) -> Self {
        let images = domain_basis(n, domain).into_iter().map(|b| (b, induced_vector_field(&b.materialize(n)))).collect();
        GradedLieHom { n, domain, images }
    }

    pub fn basis(&self) -> Vec<BasisElement> {
        domain_basis(self.n, self.domain)
    }

    pub fn get(&self, b: BasisElement) -> Option<&PolyVectorField> {
        self.images.get(&b)
    }

    /// Image of a matrix in the span of the domain basis.
    pub fn image(&self, x: &CMatrix) -> Option<PolyVectorField> {
        let basis = self.basis();
        let coords = coordinates(x, &basis)?;
        Some(self.combine(&basis, &coords))
    }

    fn combine(&self, basis: &[BasisElement], coords: &[Q]) -> PolyVectorField {
        basis.iter().zip(coords).fold(PolyVectorField::zero(self.n), |acc, (b, c)| &acc + &self.images[b].scale(c))
    }

    /// Applies `f` to every image.
    pub fn map_images(&self, f: impl Fn(&PolyVectorField) -> PolyVectorField) -> Self {
        GradedLieHom { n: self.n, domain: self.domain, images: self.images.iter().map(|(b, x)| (*b, f(x))).collect() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedHomReport {
    /// Basis elements whose image is not of pure level equal to their grade.
    pub grading_violations: Vec<BasisElement>,
    pub bracket_violations: Vec<(BasisElement, BasisElement)>,
}

impl GradedHomReport {
    pub fn is_hom(&self) -> bool {
        self.grading_violations.is_empty() && self.bracket_violations.is_empty()
    }
}

pub(crate) fn has_pure_level(x: &PolyVectorField, level: i32) -> bool {
    x.is_zero() || (x.min_level() == Some(level) && x.max_level() == Some(level))
}

/// Checks grading and bracket preservation on all pairs of basis elements.
pub fn verify_graded_hom(iota: &GradedLieHom) -> GradedHomReport {
    let n = iota.n;
    let basis = iota.basis();
    let mats: Vec<CMatrix> = basis.iter().map(|b| b.materialize(n)).collect();
    let mut report = GradedHomReport::default();
    for b in &basis {
        if !has_pure_level(&iota.images[b], b.grade()) {
            report.grading_violations.push(*b);
        }
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lhs = iota.image(&mats[i].commutator(&mats[j]));
            let rhs = iota.images[&basis[i]].lie_bracket(&iota.images[&basis[j]]);
            if lhs.as_ref() != Some(&rhs) {
                report.bracket_violations.push((basis[i], basis[j]));
            }
        }
    }
    report
}

/// Graded projection of a homomorphism `n -> q_r`: `X_i` goes to the level-1
/// part of its image and `Y` to the level-2 part. Transported to `n^+` through
/// the lattice embedding, so `b_i` corresponds to `(xi_i)^+` and `c` to
/// `tau F^+`.
pub fn hconn_construct(f: &LatticeLieHom, lat: &LatticePresentation) -> Result<GradedLieHom> {
    let n = lat.n;
    let d = 2 * n;
    if f.r < 3 {
        return Err(Error::Precondition("graded projection needs r >= 3".into()));
    }
    if f.x.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: f.x.len() });
    }
    if let Some((left, right)) = f.first_violation() {
        return Err(Error::NotHomomorphism { left, right });
    }
    let phi_x: Vec<PolyVectorField> = f.x.iter().map(|x| x.level_part(1)).collect();
    let phi_y = f.y.level_part(2);
    if !f.y.level_part(1).is_zero() && f.m.iter().flatten().any(|&m| m != 0) {
        return Err(Error::NotHomomorphism { left: "Y".into(), right: "level 1".into() });
    }
    for i in 0..d {
        for j in i + 1..d {
            let want = phi_y.scale(&crate::scalar::q(f.m[i][j]));
            if phi_x[i].lie_bracket(&phi_x[j]) != want {
                return Err(Error::NotHomomorphism { left: format!("X{}", i + 1), right: format!("X{}", j + 1) });
            }
        }
        if !phi_x[i].lie_bracket(&phi_y).is_zero() {
            return Err(Error::NotHomomorphism { left: format!("X{}", i + 1), right: "Y".into() });
        }
    }
    // columns: real coordinates of xi_i
    let cols: Vec<Vec<Q>> = lat.xi.iter().map(|x| real_from_complex(x)).collect();
    let a: linalg::Matrix = (0..d).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let inv = linalg::inverse(&a).ok_or_else(|| Error::NotInvertible("lattice embedding".into()))?;
    let mut images = BTreeMap::new();
    for idx in 0..d {
        let img = (0..d).fold(PolyVectorField::zero(n), |acc, i| &acc + &phi_x[i].scale(&inv[i][idx]));
        images.insert(BasisElement::XiPlus(idx), img);
    }
    images.insert(BasisElement::FPlus, phi_y.scale(&lat.tau.recip()));
    Ok(GradedLieHom { n, domain: Domain::NPlus, images })
}
