use std::collections::BTreeMap;

use num_traits::Zero;

use super::field::PolyVectorField;
use super::monomial::Monomial;
use crate::linalg::RowEchelon;
use crate::scalar::Q;

/// Shared coordinate system for a finite family of fields.
pub struct TermIndex {
    index: BTreeMap<(usize, Monomial), usize>,
}

impl TermIndex {
    pub fn new<'a>(fields: impl IntoIterator<Item = &'a PolyVectorField>) -> Self {
        let mut keys = BTreeMap::new();
        for f in fields {
            for (i, m, _) in f.terms() {
                keys.insert((i, m.clone()), 0);
            }
        }
        for (k, v) in keys.values_mut().enumerate() {
            *v = k;
        }
        TermIndex { index: keys }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Coordinates of `f`; `None` when `f` has a term outside the index.
    pub fn coords(&self, f: &PolyVectorField) -> Option<Vec<Q>> {
        let mut v = vec![Q::zero(); self.len()];
        for (i, m, c) in f.terms() {
            let k = *self.index.get(&(i, m.clone()))?;
            v[k] = c.clone();
        }
        Some(v)
    }
}

pub fn span_rank(fields: &[PolyVectorField]) -> usize {
    let idx = TermIndex::new(fields);
    let mut e = RowEchelon::new(idx.len());
    for f in fields {
        e.push(idx.coords(f).expect("indexed"));
    }
    e.rank()
}

/// Whether `f` lies in the span of `fields`.
pub fn in_span(fields: &[PolyVectorField], f: &PolyVectorField) -> bool {
    let idx = TermIndex::new(fields.iter().chain(std::iter::once(f)));
    let mut e = RowEchelon::new(idx.len());
    for g in fields {
        e.push(idx.coords(g).expect("indexed"));
    }
    e.contains(&idx.coords(f).expect("indexed"))
}

pub fn same_span(a: &[PolyVectorField], b: &[PolyVectorField]) -> bool {
    let idx = TermIndex::new(a.iter().chain(b));
    let ea = RowEchelon::from_rows(idx.len(), &a.iter().map(|f| idx.coords(f).unwrap()).collect::<Vec<_>>());
    ea.rank() == span_rank(b) && b.iter().all(|f| ea.contains(&idx.coords(f).unwrap()))
}

/// Expresses `f` in the basis `fields` (assumed independent), if possible.
pub fn express(fields: &[PolyVectorField], f: &PolyVectorField) -> Option<Vec<Q>> {
    let idx = TermIndex::new(fields.iter().chain(std::iter::once(f)));
    let cols: Vec<Vec<Q>> = fields.iter().map(|g| idx.coords(g).unwrap()).collect();
    let a: Vec<Vec<Q>> = (0..idx.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    crate::linalg::solve(&a, &idx.coords(f).unwrap())
}
