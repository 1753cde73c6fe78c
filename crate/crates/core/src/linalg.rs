//! Exact dense linear algebra over Q.

use num_traits::{One, Zero};

use crate::scalar::Q;

pub type Matrix = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for (j, bkj) in b[k].iter().enumerate() {
                if !bkj.is_zero() {
                    out[i][j] += aik * bkj;
                }
            }
        }
    }
    out
}

pub fn matvec(a: &Matrix, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(Q::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Row space kept in reduced row echelon form, fed one row at a time.
///
/// Pivot rows are normalized to a leading one and every pivot column is zero
/// in all other stored rows.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    ncols: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<'a>(ncols: usize, rows: impl IntoIterator<Item = &'a Vec<Q>>) -> Self {
        let mut e = RowEchelon::new(ncols);
        for r in rows {
            e.push(r.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    /// Reduces `row` against the stored pivots in place.
    pub fn reduce(&self, row: &mut [Q]) {
        for (prow, &p) in self.rows.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(prow).skip(p) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }

    /// Adds a row; returns true when it increased the rank.
    pub fn push(&mut self, mut row: Vec<Q>) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].recip();
        for x in row.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for other in self.rows.iter_mut() {
            if other[p].is_zero() {
                continue;
            }
            let f = other[p].clone();
            for (x, y) in other.iter_mut().zip(&row).skip(p) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
        true
    }

    pub fn contains(&self, row: &[Q]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(Zero::is_zero)
    }

    /// Basis of the null space, one vector per free column, with a one in
    /// that column and zeros in the other free columns.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); self.ncols];
            v[free] = Q::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    v[p] = -row[free].clone();
                }
            }
            out.push(v);
        }
        out
    }
}

pub fn rank(a: &Matrix) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    RowEchelon::from_rows(cols, a).rank()
}

pub fn kernel(a: &Matrix, ncols: usize) -> Vec<Vec<Q>> {
    RowEchelon::from_rows(ncols, a).kernel()
}

/// Solves `a x = b`, returning the solution whose free variables are zero.
pub fn solve(a: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    let n = a.first().map_or(0, Vec::len);
    let mut e = RowEchelon::new(n + 1);
    for (row, rhs) in a.iter().zip(b) {
        let mut r = row.clone();
        r.push(rhs.clone());
        e.push(r);
    }
    if e.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

/// Solves a square system by Gaussian elimination, for several right-hand
/// sides at once. Returns `None` when the matrix is singular.
pub fn solve_square(a: &Matrix, rhs: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let m = rhs.len();
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(rhs.iter().map(|b| b[i].clone()));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, piv);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut().skip(col) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let (top, rest) = aug.split_at_mut(col + 1);
        let prow = &top[col];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(prow).skip(col) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    for col in (0..n).rev() {
        let (top, rest) = aug.split_at_mut(col);
        let prow = &rest[0];
        for row in top.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in n..n + m {
                if !prow[j].is_zero() {
                    let d = &f * &prow[j];
                    row[j] -= d;
                }
            }
            row[col] = Q::zero();
        }
    }
    Some((0..m).map(|j| aug.iter().map(|r| r[n + j].clone()).collect()).collect())
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let cols = solve_square(a, &identity(n))?;
    Some(transpose(&cols))
}

pub fn det(a: &Matrix) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            m.swap(col, piv);
            d = -d;
        }
        d *= &m[col][col];
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for j in col..n {
                let t = &f * &m[col][j];
                m[r][j] -= t;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a), 1);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(matvec(&a, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inverse_and_det() {
        let a = mat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(3));
        assert_eq!(det(&a), q(18));
        assert!(inverse(&mat(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = mat(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[q(3), q(1)]).unwrap(), vec![q(2), q(1)]);
        let s = mat(&[&[1, 1], &[2, 2]]);
        assert!(solve(&s, &[q(1), q(3)]).is_none());
        assert_eq!(solve(&s, &[q(1), q(2)]).unwrap(), vec![q(1), q(0)]);
        let x = solve_square(&a, &[vec![q(3), q(1)], vec![q(0), q(1)]]).unwrap();
        assert_eq!(x[1], vec![qf(1, 2), qf(-1, 2)]);
    }
}
