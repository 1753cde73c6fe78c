use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{q, qf, Q, CQ};

/// Matrix of the Hermitian form `z_0 conj(w_{n+1}) + sum z_i conj(w_i) + z_{n+1} conj(w_0)`.
pub fn hermitian_form(n: usize) -> CMatrix {
    let mut h = CMatrix::zero(n + 2);
    h.set(0, n + 1, CQ::one());
    h.set(n + 1, 0, CQ::one());
    for i in 1..=n {
        h.set(i, i, CQ::one());
    }
    h
}

/// Whether `X^* H + H X = 0` and `tr X = 0`.
pub fn is_in_su(x: &CMatrix) -> bool {
    let h = hermitian_form(x.dim() - 2);
    x.conj_transpose().mul(&h).add(&h.mul(x)).is_zero() && x.trace().is_zero()
}

/// `E = diag(1, 0, ..., 0, -1)`, the grading element.
pub fn e_matrix(n: usize) -> CMatrix {
    let mut m = CMatrix::zero(n + 2);
    m.set(0, 0, CQ::one());
    m.set(n + 1, n + 1, CQ::real(q(-1)));
    m
}

/// `tau F^+`: the single entry `-i tau` in the top-right corner.
pub fn f_plus(n: usize, tau: &Q) -> CMatrix {
    let mut m = CMatrix::zero(n + 2);
    m.set(0, n + 1, CQ::imag(-tau.clone()));
    m
}

/// `tau F^-`: the single entry `-i tau` in the bottom-left corner.
pub fn f_minus(n: usize, tau: &Q) -> CMatrix {
    let mut m = CMatrix::zero(n + 2);
    m.set(n + 1, 0, CQ::imag(-tau.clone()));
    m
}

/// `xi^+`: first row `(0, -conj(xi)^T, 0)` and last column `(0, xi, 0)^T`.
pub fn xi_plus(xi: &[CQ]) -> CMatrix {
    let n = xi.len();
    let mut m = CMatrix::zero(n + 2);
    for (j, c) in xi.iter().enumerate() {
        m.set(0, j + 1, -c.conj());
        m.set(j + 1, n + 1, c.clone());
    }
    m
}

/// `xi^-`: first column `(0, xi, 0)^T` and last row `(0, -conj(xi)^T, 0)`.
pub fn xi_minus(xi: &[CQ]) -> CMatrix {
    let n = xi.len();
    let mut m = CMatrix::zero(n + 2);
    for (j, c) in xi.iter().enumerate() {
        m.set(j + 1, 0, c.clone());
        m.set(n + 1, j + 1, -c.conj());
    }
    m
}

/// `diag(z, U, -conj(z))` with `U` skew-Hermitian and `z + tr U - conj(z) = 0`.
pub fn g0_element(z: &CQ, u: &CMatrix) -> Result<CMatrix> {
    let n = u.dim();
    if !u.add(&u.conj_transpose()).is_zero() {
        return Err(Error::Precondition("U must be skew-Hermitian".into()));
    }
    let tr = &(z - &z.conj()) + &u.trace();
    if !tr.is_zero() {
        return Err(Error::Precondition("z + tr U - conj(z) must vanish".into()));
    }
    let mut m = CMatrix::zero(n + 2);
    m.set(0, 0, z.clone());
    m.set(n + 1, n + 1, -z.conj());
    for i in 0..n {
        for j in 0..n {
            m.set(i + 1, j + 1, u.get(i, j).clone());
        }
    }
    Ok(m)
}

/// Unit vector `e_j` (even index) or `i e_j` (odd index) of `C^n`.
pub fn real_basis_vector(n: usize, idx: usize) -> Vec<CQ> {
    let mut v = vec![CQ::zero(); n];
    v[idx / 2] = if idx % 2 == 0 { CQ::one() } else { CQ::i() };
    v
}

/// Element of the standard real basis of `su(n+1, 1)`, adapted to the grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    FMinus,
    XiMinus(usize),
    E,
    /// Basis of the compact part of `g^(0)`.
    Compact(usize),
    XiPlus(usize),
    FPlus,
}

impl BasisElement {
    pub fn grade(&self) -> i32 {
        match self {
            BasisElement::FMinus => -2,
            BasisElement::XiMinus(_) => -1,
            BasisElement::E | BasisElement::Compact(_) => 0,
            BasisElement::XiPlus(_) => 1,
            BasisElement::FPlus => 2,
        }
    }

    pub fn materialize(&self, n: usize) -> CMatrix {
        match *self {
            BasisElement::FMinus => f_minus(n, &q(1)),
            BasisElement::FPlus => f_plus(n, &q(1)),
            BasisElement::E => e_matrix(n),
            BasisElement::XiMinus(i) => xi_minus(&real_basis_vector(n, i)),
            BasisElement::XiPlus(i) => xi_plus(&real_basis_vector(n, i)),
            BasisElement::Compact(i) => compact_element(n, i),
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |i: usize| if i % 2 == 0 { format!("e{}", i / 2 + 1) } else { format!("ie{}", i / 2 + 1) };
        match *self {
            BasisElement::FMinus => write!(f, "F-"),
            BasisElement::FPlus => write!(f, "F+"),
            BasisElement::E => write!(f, "E"),
            BasisElement::XiMinus(i) => write!(f, "({})-", v(i)),
            BasisElement::XiPlus(i) => write!(f, "({})+", v(i)),
            BasisElement::Compact(i) => write!(f, "K{}", i + 1),
        }
    }
}

/// The `n^2` compact generators: `e_jl - e_lj`, `i(e_jl + e_lj)` for `j < l`
/// and `diag(-i/2, i e_jj, -i/2)`.
fn compact_element(n: usize, idx: usize) -> CMatrix {
    let mut pairs = Vec::new();
    for j in 0..n {
        for l in j + 1..n {
            pairs.push((j, l, false));
            pairs.push((j, l, true));
        }
    }
    let mut u = CMatrix::zero(n);
    let z = if idx < pairs.len() {
        let (j, l, imag) = pairs[idx];
        if imag {
            u.set(j, l, CQ::i());
            u.set(l, j, CQ::i());
        } else {
            u.set(j, l, CQ::one());
            u.set(l, j, CQ::real(q(-1)));
        }
        CQ::zero()
    } else {
        let j = idx - pairs.len();
        u.set(j, j, CQ::i());
        CQ::imag(qf(-1, 2))
    };
    g0_element(&z, &u).expect("compact generator is valid")
}

/// Which graded pieces a homomorphism is defined on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    NPlus,
    NMinus,
    Full,
}

pub fn full_basis(n: usize) -> Vec<BasisElement> {
    let mut b = vec![BasisElement::FMinus];
    b.extend((0..2 * n).map(BasisElement::XiMinus));
    b.push(BasisElement::E);
    b.extend((0..n * n).map(BasisElement::Compact));
    b.extend((0..2 * n).map(BasisElement::XiPlus));
    b.push(BasisElement::FPlus);
    b
}

pub fn domain_basis(n: usize, d: Domain) -> Vec<BasisElement> {
    full_basis(n)
        .into_iter()
        .filter(|b| match d {
            Domain::NPlus => b.grade() > 0,
            Domain::NMinus => b.grade() < 0,
            Domain::Full => true,
        })
        .collect()
}

/// Splits a matrix into its `ad(E)`-eigencomponents; entry `(i, j)` has
/// grade `e_i - e_j` with `e = (1, 0, ..., 0, -1)`.
pub fn grade_decompose(x: &CMatrix) -> BTreeMap<i32, CMatrix> {
    let d = x.dim();
    let e = |i: usize| -> i32 {
        if i == 0 {
            1
        } else if i + 1 == d {
            -1
        } else {
            0
        }
    };
    let mut out: BTreeMap<i32, CMatrix> = BTreeMap::new();
    for i in 0..d {
        for j in 0..d {
            let c = x.get(i, j);
            if !c.is_zero() {
                out.entry(e(i) - e(j)).or_insert_with(|| CMatrix::zero(d)).set(i, j, c.clone());
            }
        }
    }
    out
}

/// Grade of a homogeneous nonzero matrix.
pub fn grade_of(x: &CMatrix) -> Option<i32> {
    let parts = grade_decompose(x);
    if parts.len() == 1 {
        parts.keys().next().copied()
    } else {
        None
    }
}

/// Coordinates of `x` in the given basis, if it lies in the span.
pub fn coordinates(x: &CMatrix, basis: &[BasisElement]) -> Option<Vec<Q>> {
    let n = x.dim() - 2;
    let cols: Vec<Vec<Q>> = basis.iter().map(|b| b.materialize(n).real_coords()).collect();
    let rows: Vec<Vec<Q>> = (0..cols[0].len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let sol = linalg::solve(&rows, &x.real_coords())?;
    let back = basis
        .iter()
        .zip(&sol)
        .filter(|(_, c)| !c.is_zero())
        .fold(CMatrix::zero(n + 2), |acc, (b, c)| acc.add(&b.materialize(n).scale(c)));
    (back == *x).then_some(sol)
}
