//! Heisenberg connections: families of fields spanning a Heisenberg algebra.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::field::{level_basis, PolyVectorField};
use super::monomial::Monomial;
use super::poly::Poly;
use super::span::{in_span, span_rank, TermIndex};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, RowEchelon};
use crate::scalar::{q, Q};

/// Structure constants `[X_i, X_j] = c_ij Z` of a Heisenberg algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergStructure {
    pub c: Matrix,
}

impl HeisenbergStructure {
    /// Constants of the standard connection basis, `c_{2j-1,2j} = 2`.
    pub fn standard(n: usize) -> Self {
        let mut c = linalg::zeros(2 * n, 2 * n);
        for j in 0..n {
            c[2 * j][2 * j + 1] = q(2);
            c[2 * j + 1][2 * j] = q(-2);
        }
        HeisenbergStructure { c }
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn is_valid(&self) -> bool {
        let d = self.dim();
        d % 2 == 0
            && self.c.iter().all(|r| r.len() == d)
            && (0..d).all(|i| (0..d).all(|j| self.c[i][j] == -self.c[j][i].clone()))
            && !linalg::det(&self.c).is_zero()
    }
}

/// Basis of the standard Heisenberg connection on R^{2n+1}:
/// `d_{2j-1} - x_{2j} d_{2n+1}`, `d_{2j} + x_{2j-1} d_{2n+1}` and the central
/// field `-d_{2n+1}`.
pub fn standard_connection(n: usize) -> Vec<PolyVectorField> {
    let nvars = 2 * n + 1;
    let last = 2 * n;
    let mut out = Vec::with_capacity(nvars);
    for j in 0..n {
        let mut a = PolyVectorField::partial(n, 2 * j);
        *a.comp_mut(last) = -&Poly::var(nvars, 2 * j + 1);
        let mut b = PolyVectorField::partial(n, 2 * j + 1);
        *b.comp_mut(last) = Poly::var(nvars, 2 * j);
        out.push(a);
        out.push(b);
    }
    out.push(-&PolyVectorField::partial(n, last));
    out
}

#[derive(Clone, Debug)]
pub struct HeisenbergCheck {
    /// First pair `(i, j)` whose bracket differs from the prescribed one.
    pub bracket_failure: Option<(usize, usize)>,
    pub frame_det: Poly,
    pub base_point_det: Q,
}

impl HeisenbergCheck {
    pub fn ok(&self) -> bool {
        self.bracket_failure.is_none() && !self.base_point_det.is_zero()
    }
}

/// Checks that `[X_1..X_2n, Z]` satisfy the given bracket relations, and
/// that they form a frame at `base_point`.
pub fn verify_heisenberg(
    basis: &[PolyVectorField],
    structure: &HeisenbergStructure,
    base_point: &[Q],
) -> Result<HeisenbergCheck> {
    let d = structure.dim();
    if basis.len() != d + 1 {
        return Err(Error::DimensionMismatch { expected: d + 1, found: basis.len() });
    }
    let n = basis[0].n();
    if 2 * n + 1 != basis.len() || base_point.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: 2 * n + 1, found: basis.len() });
    }
    let z = &basis[d];
    let mut failure = None;
    'outer: for i in 0..=d {
        for j in i + 1..=d {
            let br = basis[i].lie_bracket(&basis[j]);
            let expect = if j == d { PolyVectorField::zero(n) } else { z.scale(&structure.c[i][j]) };
            if br != expect {
                failure = Some((i, j));
                break 'outer;
            }
        }
    }
    let rows: Vec<Vec<Poly>> = basis.iter().map(|f| f.comps().to_vec()).collect();
    let frame_det = poly_det(&rows);
    let base_point_det = frame_det.eval(base_point);
    Ok(HeisenbergCheck { bracket_failure: failure, frame_det, base_point_det })
}

/// Determinant of a small square matrix of polynomials.
pub fn poly_det(rows: &[Vec<Poly>]) -> Poly {
    let d = rows.len();
    assert!(d <= 16, "determinant too large for subset expansion");
    let nvars = rows.first().and_then(|r| r.first()).map_or(1, Poly::nvars);
    let mut table: Vec<Option<Poly>> = vec![None; 1 << d];
    table[0] = Some(Poly::constant(nvars, Q::one()));
    for mask in 0usize..(1 << d) {
        let Some(acc) = table[mask].take() else { continue };
        let row = mask.count_ones() as usize;
        if row == d {
            table[mask] = Some(acc);
            continue;
        }
        for col in 0..d {
            if mask & (1 << col) != 0 || rows[row][col].is_zero() {
                continue;
            }
            let above = (mask >> (col + 1)).count_ones();
            let mut term = &acc * &rows[row][col];
            if above % 2 == 1 {
                term = -term;
            }
            let slot = &mut table[mask | (1 << col)];
            *slot = Some(match slot.take() {
                Some(p) => &p + &term,
                None => term,
            });
        }
    }
    table[(1 << d) - 1].take().unwrap_or_else(|| Poly::zero(nvars))
}

fn unknown_basis(n: usize, max_level: i32) -> Vec<(usize, Monomial)> {
    (-2..=max_level).flat_map(|l| level_basis(n, l)).collect()
}

/// Collects the linear conditions `target(e_alpha) = 0` over an unknown basis.
fn assemble(
    unknowns: &[(usize, Monomial)],
    n: usize,
    images: impl Fn(&PolyVectorField) -> Vec<PolyVectorField>,
) -> Vec<BTreeMap<(usize, usize, Monomial), Q>> {
    unknowns
        .iter()
        .map(|(i, m)| {
            let e = PolyVectorField::basis_element(n, *i, m.clone());
            let mut col = BTreeMap::new();
            for (b, img) in images(&e).into_iter().enumerate() {
                for (comp, mono, c) in img.terms() {
                    col.insert((b, comp, mono.clone()), c.clone());
                }
            }
            col
        })
        .collect()
}

fn rows_from_columns(
    cols: &[BTreeMap<(usize, usize, Monomial), Q>],
    rhs: Option<&BTreeMap<(usize, usize, Monomial), Q>>,
) -> Vec<Vec<Q>> {
    let mut keys: BTreeMap<(usize, usize, Monomial), usize> = BTreeMap::new();
    for col in cols.iter().chain(rhs) {
        for k in col.keys() {
            keys.insert(k.clone(), 0);
        }
    }
    for (r, v) in keys.values_mut().enumerate() {
        *v = r;
    }
    let width = cols.len() + usize::from(rhs.is_some());
    let mut rows = vec![vec![Q::zero(); width]; keys.len()];
    for (j, col) in cols.iter().enumerate() {
        for (k, c) in col {
            rows[keys[k]][j] = c.clone();
        }
    }
    if let Some(rhs) = rhs {
        for (k, c) in rhs {
            rows[keys[k]][cols.len()] = c.clone();
        }
    }
    rows
}

/// Basis of the fields of level at most `max_level` commuting with every
/// element of `basis`.
pub fn centralizer(basis: &[PolyVectorField], max_level: i32) -> Vec<PolyVectorField> {
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let n = first.n();
    let unknowns = unknown_basis(n, max_level);
    let cols = assemble(&unknowns, n, |e| basis.iter().map(|x| x.lie_bracket(e)).collect());
    let rows = rows_from_columns(&cols, None);
    let ech = RowEchelon::from_rows(unknowns.len(), &rows);
    ech.kernel()
        .into_iter()
        .map(|v| PolyVectorField::from_coordinates(n, &unknowns, &v))
        .collect()
}

/// Dilation of a Heisenberg connection by `lambda = e^{log_lambda}`.
///
/// `unit` is the field whose adjoint action is the identity on the degree-one
/// part and twice the identity on the center; the dilation itself is
/// `log_lambda * unit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dilation {
    pub log_lambda: Q,
    pub unit: PolyVectorField,
}

impl Dilation {
    pub fn field(&self) -> PolyVectorField {
        self.unit.scale(&self.log_lambda)
    }
}

/// Finds a field `E` of level at most `max_level` with `[E, X_i] = log_lambda X_i`
/// and `[E, Z] = 2 log_lambda Z`, and checks that it also dilates the
/// centralizer of the connection.
pub fn find_dilation(basis: &[PolyVectorField], log_lambda: Q, max_level: i32) -> Result<Dilation> {
    let Some(first) = basis.first() else {
        return Err(Error::Precondition("empty connection".into()));
    };
    if log_lambda.is_zero() {
        return Err(Error::Precondition("lambda must differ from 1".into()));
    }
    let n = first.n();
    let d = basis.len() - 1;
    let unknowns = unknown_basis(n, max_level);
    let cols = assemble(&unknowns, n, |e| basis.iter().map(|x| e.lie_bracket(x)).collect());
    let mut rhs = BTreeMap::new();
    for (b, x) in basis.iter().enumerate() {
        let w = if b == d { q(2) } else { q(1) };
        for (comp, mono, c) in x.terms() {
            rhs.insert((b, comp, mono.clone()), c * &w);
        }
    }
    let rows = rows_from_columns(&cols, Some(&rhs));
    let (a, b): (Vec<Vec<Q>>, Vec<Q>) = rows
        .into_iter()
        .map(|mut r| {
            let last = r.pop().unwrap();
            (r, last)
        })
        .unzip();
    let coords = linalg::solve(&a, &b)
        .ok_or_else(|| Error::NoSolution(format!("no dilation up to level {max_level}")))?;
    let unit = PolyVectorField::from_coordinates(n, &unknowns, &coords);
    if !dilates_centralizer(&unit, basis, max_level) {
        return Err(Error::NoSolution("dilation does not dilate the centralizer".into()));
    }
    Ok(Dilation { log_lambda, unit })
}

/// Whether `ad(unit)` is a unit dilation of the centralizer of `basis`
/// computed up to `max_level`.
pub fn dilates_centralizer(unit: &PolyVectorField, basis: &[PolyVectorField], max_level: i32) -> bool {
    let zh = centralizer(basis, max_level);
    let mut center = Vec::new();
    for i in 0..zh.len() {
        for j in i + 1..zh.len() {
            let b = zh[i].lie_bracket(&zh[j]);
            if !b.is_zero() {
                center.push(b);
            }
        }
    }
    if span_rank(&center) != 1 {
        return false;
    }
    let c = center[0].clone();
    if unit.lie_bracket(&c) != c.scale(&q(2)) {
        return false;
    }
    zh.iter().all(|y| {
        let w = &unit.lie_bracket(y) - y;
        in_span(std::slice::from_ref(&c), &w)
    })
}

/// Rank of a family of fields as a vector space over Q.
pub fn rank_of(fields: &[PolyVectorField]) -> usize {
    let idx = TermIndex::new(fields);
    RowEchelon::from_rows(idx.len(), &fields.iter().map(|f| idx.coords(f).unwrap()).collect::<Vec<_>>()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedpoly::span::same_span;
    use crate::scalar::qf;

    #[test]
    fn standard_is_heisenberg() {
        for n in 1..=2 {
            let basis = standard_connection(n);
            let origin = vec![Q::zero(); 2 * n + 1];
            let chk = verify_heisenberg(&basis, &HeisenbergStructure::standard(n), &origin).unwrap();
            assert!(chk.ok(), "n = {n}");
            assert_eq!(chk.frame_det, Poly::constant(2 * n + 1, q(-1)));
        }
    }

    #[test]
    fn flat_frame_is_not_heisenberg() {
        let flat: Vec<_> = (0..3).map(|i| PolyVectorField::partial(1, i)).collect();
        let chk = verify_heisenberg(&flat, &HeisenbergStructure::standard(1), &[q(0), q(0), q(0)]).unwrap();
        assert_eq!(chk.bracket_failure, Some((0, 1)));
        assert!(!chk.ok());
    }

    #[test]
    fn centralizer_of_standard_connection() {
        let basis = standard_connection(1);
        let zh = centralizer(&basis, 0);
        let nvars = 3;
        let mut y1 = PolyVectorField::partial(1, 0);
        *y1.comp_mut(2) = Poly::var(nvars, 1);
        let mut y2 = PolyVectorField::partial(1, 1);
        *y2.comp_mut(2) = -&Poly::var(nvars, 0);
        let expect = vec![y1, y2, PolyVectorField::partial(1, 2)];
        assert_eq!(zh.len(), 3);
        assert!(same_span(&zh, &expect));
        assert_eq!(centralizer(&basis, 3).len(), 3);
    }

    #[test]
    fn dilation_is_euler_field() {
        let basis = standard_connection(1);
        let d = find_dilation(&basis, qf(1, 3), 0).unwrap();
        assert_eq!(d.unit, PolyVectorField::euler(1));
        assert_eq!(d.field(), PolyVectorField::euler(1).scale(&qf(1, 3)));
    }
}
