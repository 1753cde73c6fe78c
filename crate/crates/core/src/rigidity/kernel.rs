use super::hom::has_pure_level;
use crate::error::{Error, Result};
use crate::gradedpoly::{level_basis, PolyVectorField, TermIndex};
use crate::jetgroup::JetTransformation;
use crate::linalg::RowEchelon;
use crate::scalar::{q, Q, CQ};
use crate::su_grading::{f_minus, f_plus, induced_vector_field, real_basis_vector, xi_minus};

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, k - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// Which equation families enter the final kernel system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelEquations {
    /// `[iota0 F^-, X] = 0`
    pub commutes_with_f_minus: bool,
    /// `[[iota0 xi^-, X], iota0 F^+] + [[iota0 xi^-, iota0 F^+], X] = 0` for all `xi`
    pub mixed: bool,
}

impl KernelEquations {
    pub const BOTH: KernelEquations = KernelEquations { commutes_with_f_minus: true, mixed: true };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinalKernel {
    pub n: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub kernel: Vec<PolyVectorField>,
}

struct ChartFields {
    f_minus: PolyVectorField,
    f_plus: PolyVectorField,
    xi_minus: Vec<PolyVectorField>,
}

impl ChartFields {
    fn new(n: usize) -> Self {
        ChartFields {
            f_minus: induced_vector_field(&f_minus(n, &q(1))),
            f_plus: induced_vector_field(&f_plus(n, &q(1))),
            xi_minus: (0..2 * n).map(|i| induced_vector_field(&xi_minus(&real_basis_vector(n, i)))).collect(),
        }
    }

    fn eq3(&self, x: &PolyVectorField) -> PolyVectorField {
        self.f_minus.lie_bracket(x)
    }

    fn eq4(&self, xi: &PolyVectorField, x: &PolyVectorField) -> PolyVectorField {
        &xi.lie_bracket(x).lie_bracket(&self.f_plus) + &xi.lie_bracket(&self.f_plus).lie_bracket(x)
    }

    fn blocks(&self, x: &PolyVectorField, which: KernelEquations) -> Vec<PolyVectorField> {
        let mut out = Vec::new();
        if which.commutes_with_f_minus {
            out.push(self.eq3(x));
        }
        if which.mixed {
            out.extend(self.xi_minus.iter().map(|xi| self.eq4(xi, x)));
        }
        out
    }
}

/// Solution space of the linearized uniqueness system on level +2 fields.
pub fn final_kernel(n: usize) -> FinalKernel {
    final_kernel_with(n, KernelEquations::BOTH)
}

pub fn final_kernel_with(n: usize, which: KernelEquations) -> FinalKernel {
    let basis = level_basis(n, 2);
    let chart = ChartFields::new(n);
    let images: Vec<Vec<PolyVectorField>> = basis
        .iter()
        .map(|(c, m)| chart.blocks(&PolyVectorField::basis_element(n, *c, m.clone()), which))
        .collect();
    let nblocks = images.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for b in 0..nblocks {
        let idx = TermIndex::new(images.iter().map(|v| &v[b]));
        let cols: Vec<Vec<Q>> = images.iter().map(|v| idx.coords(&v[b]).expect("indexed")).collect();
        rows.extend((0..idx.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect::<Vec<Q>>()));
    }
    let ech = RowEchelon::from_rows(basis.len(), &rows);
    let kernel = ech.kernel().into_iter().map(|v| PolyVectorField::from_coordinates(n, &basis, &v)).collect();
    FinalKernel { n, unknowns: basis.len(), equations: rows.len(), rank: ech.rank(), kernel }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPsiReport {
    pub phi_values: Vec<PolyVectorField>,
    pub psi_values: Vec<PolyVectorField>,
    pub satisfies_commutation: bool,
    pub satisfies_mixed: bool,
    /// First `(tuple index, permutation)` that changes a value of `Phi`, then of `Psi`.
    pub phi_asymmetry: Option<(usize, Vec<usize>)>,
    pub psi_asymmetry: Option<(usize, Vec<usize>)>,
}

impl PhiPsiReport {
    pub fn symmetric(&self) -> bool {
        self.phi_asymmetry.is_none() && self.psi_asymmetry.is_none()
    }

    pub fn all_vanish(&self) -> bool {
        self.phi_values.iter().chain(&self.psi_values).all(PolyVectorField::is_zero)
    }
}

fn nested(fields: &[PolyVectorField], x: &PolyVectorField) -> PolyVectorField {
    fields.iter().rev().fold(x.clone(), |acc, f| f.lie_bracket(&acc))
}

fn first_asymmetry(fields: &[Vec<PolyVectorField>], values: &[PolyVectorField], x: &PolyVectorField) -> Option<(usize, Vec<usize>)> {
    for (t, (tuple, value)) in fields.iter().zip(values).enumerate() {
        for perm in permutations(tuple.len()) {
            let permuted: Vec<PolyVectorField> = perm.iter().map(|&i| tuple[i].clone()).collect();
            if nested(&permuted, x) != *value {
                return Some((t, perm));
            }
        }
    }
    None
}

/// Evaluates `Phi(xi_1..xi_4) = ad(iota0 xi_1^-)..ad(iota0 xi_4^-) X` and
/// `Psi(xi_1..xi_3)` likewise on the given tuples, and reports symmetry and
/// which of the two equation families `X` satisfies.
pub fn phi_psi_evaluate(x: &PolyVectorField, phi_tuples: &[[Vec<CQ>; 4]], psi_tuples: &[[Vec<CQ>; 3]]) -> Result<PhiPsiReport> {
    let n = x.n();
    if !has_pure_level(x, 2) {
        return Err(Error::LevelViolation("X must have pure level 2".into()));
    }
    let field = |xi: &Vec<CQ>| -> Result<PolyVectorField> {
        if xi.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: xi.len() });
        }
        Ok(induced_vector_field(&xi_minus(xi)))
    };
    let phi_fields: Vec<Vec<PolyVectorField>> =
        phi_tuples.iter().map(|t| t.iter().map(field).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let psi_fields: Vec<Vec<PolyVectorField>> =
        psi_tuples.iter().map(|t| t.iter().map(field).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let phi_values: Vec<PolyVectorField> = phi_fields.iter().map(|f| nested(f, x)).collect();
    let psi_values: Vec<PolyVectorField> = psi_fields.iter().map(|f| nested(f, x)).collect();
    let chart = ChartFields::new(n);
    let satisfies_commutation = chart.eq3(x).is_zero();
    let satisfies_mixed = chart.xi_minus.iter().all(|xi| chart.eq4(xi, x).is_zero());
    Ok(PhiPsiReport {
        phi_asymmetry: first_asymmetry(&phi_fields, &phi_values, x),
        psi_asymmetry: first_asymmetry(&psi_fields, &psi_values, x),
        phi_values,
        psi_values,
        satisfies_commutation,
        satisfies_mixed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilCheck {
    /// `Ad(a)` is the identity on level 0 fields.
    pub ad_trivial_on_level_zero: bool,
    /// `Y -> Ad(a) Y - k Y` is invertible on level 0 fields.
    pub shifted_invertible: bool,
}

/// Linear-algebra form of the infinitesimal rigidity step for `a`, whose jet
/// is the linear map `I(k)`.
pub fn weil_check(n: usize, k: i64) -> Result<WeilCheck> {
    if k < 2 {
        return Err(Error::Precondition("need k >= 2".into()));
    }
    let a = JetTransformation::scaling(n, &q(k), 1).linear_part();
    let basis = level_basis(n, 0);
    let mut trivial = true;
    let mut rows: Vec<Vec<Q>> = vec![Vec::with_capacity(basis.len()); basis.len()];
    for (c, m) in &basis {
        let y = PolyVectorField::basis_element(n, *c, m.clone());
        let ad = y.pushforward_linear(&a)?;
        trivial &= ad == y;
        let shifted = &ad - &y.scale(&q(k));
        for (row, v) in rows.iter_mut().zip(shifted.coordinates(&basis).expect("level 0 is preserved")) {
            row.push(v);
        }
    }
    let rank = RowEchelon::from_rows(basis.len(), &rows).rank();
    Ok(WeilCheck { ad_trivial_on_level_zero: trivial, shifted_invertible: rank == basis.len() })
}
