//! Dense matrices over Q(i).

use std::fmt;

use crate::scalar::{Q, CQ};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CMatrix {
    dim: usize,
    data: Vec<CQ>,
}

impl CMatrix {
    pub fn zero(dim: usize) -> Self {
        CMatrix { dim, data: vec![CQ::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zero(dim);
        for i in 0..dim {
            m.set(i, i, CQ::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CQ>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        CMatrix { dim, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CQ {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CQ) {
        self.data[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<CQ>> {
        self.data.chunks(self.dim).map(<[CQ]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CQ::is_zero)
    }

    pub fn add(&self, o: &CMatrix) -> CMatrix {
        CMatrix { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &CMatrix) -> CMatrix {
        CMatrix { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Q) -> CMatrix {
        CMatrix { dim: self.dim, data: self.data.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn scale_c(&self, s: &CQ) -> CMatrix {
        CMatrix { dim: self.dim, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        let d = self.dim;
        let mut out = CMatrix::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &CMatrix) -> CMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn conj_transpose(&self) -> CMatrix {
        let d = self.dim;
        let mut out = CMatrix::zero(d);
        for i in 0..d {
            for j in 0..d {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> CQ {
        (0..self.dim).fold(CQ::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn apply(&self, v: &[CQ]) -> Vec<CQ> {
        (0..self.dim)
            .map(|i| (0..self.dim).fold(CQ::zero(), |acc, j| &acc + &(self.get(i, j) * &v[j])))
            .collect()
    }

    /// Real coordinates `(re, im)` of all entries, row-major.
    pub fn real_coords(&self) -> Vec<Q> {
        self.data.iter().flat_map(|c| [c.re.clone(), c.im.clone()]).collect()
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.dim) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
