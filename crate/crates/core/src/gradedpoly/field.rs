use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{var_weight, Monomial};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::{inverse, Matrix};
use crate::scalar::Q;

/// Level of the term `monomial * d_comp` in dimension `2n + 1`.
///
/// A term in one of the first `2n` components has level `wdeg - 1`; a term in
/// the last component has level `wdeg - 2`. The same rule grades components
/// of jets of transformations.
pub fn term_level(nvars: usize, comp: usize, m: &Monomial) -> i32 {
    m.weighted_degree() as i32 - var_weight(comp, nvars) as i32
}

/// Monomial basis `(component, monomial)` of the fields of a given level.
pub fn level_basis(n: usize, level: i32) -> Vec<(usize, Monomial)> {
    let nvars = 2 * n + 1;
    let mut out = Vec::new();
    for comp in 0..nvars {
        let d = level + var_weight(comp, nvars) as i32;
        if d < 0 {
            continue;
        }
        for m in Monomial::of_weighted_degree(nvars, d as u32) {
            out.push((comp, m));
        }
    }
    out
}

/// Polynomial vector field `sum_i X_i d_i` on R^{2n+1}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyVectorField {
    n: usize,
    comps: Vec<Poly>,
}

impl PolyVectorField {
    pub fn zero(n: usize) -> Self {
        PolyVectorField { n, comps: vec![Poly::zero(2 * n + 1); 2 * n + 1] }
    }

    pub fn from_components(comps: Vec<Poly>) -> Result<Self> {
        let nvars = comps.len();
        if nvars % 2 == 0 {
            return Err(Error::Precondition("a field needs 2n+1 components".into()));
        }
        for c in &comps {
            if c.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: c.nvars() });
            }
        }
        Ok(PolyVectorField { n: nvars / 2, comps })
    }

    /// The coordinate field `d_i`.
    pub fn partial(n: usize, i: usize) -> Self {
        let mut f = PolyVectorField::zero(n);
        f.comps[i] = Poly::constant(2 * n + 1, Q::one());
        f
    }

    pub fn basis_element(n: usize, comp: usize, m: Monomial) -> Self {
        let mut f = PolyVectorField::zero(n);
        f.comps[comp].add_term(m, Q::one());
        f
    }

    /// Euler-type field `sum_{i<=2n} x_i d_i + 2 x_{2n+1} d_{2n+1}`.
    pub fn euler(n: usize) -> Self {
        let nvars = 2 * n + 1;
        let comps = (0..nvars)
            .map(|i| Poly::var(nvars, i).scale(&Q::from_integer(var_weight(i, nvars).into())))
            .collect();
        PolyVectorField { n, comps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        2 * self.n + 1
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn comp_mut(&mut self, i: usize) -> &mut Poly {
        &mut self.comps[i]
    }

    pub fn into_components(self) -> Vec<Poly> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// Terms as `(component, monomial, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Monomial, &Q)> {
        self.comps
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().map(move |(m, c)| (i, m, c)))
    }

    pub fn num_terms(&self) -> usize {
        self.comps.iter().map(Poly::len).sum()
    }

    pub fn scale(&self, s: &Q) -> Self {
        PolyVectorField { n: self.n, comps: self.comps.iter().map(|p| p.scale(s)).collect() }
    }

    fn map_terms(&self, keep: impl Fn(i32) -> bool) -> Self {
        let nvars = self.nvars();
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let w = var_weight(i, nvars);
                p.filter_wdeg(|d| keep(d as i32 - w as i32))
            })
            .collect();
        PolyVectorField { n: self.n, comps }
    }

    pub fn level_part(&self, level: i32) -> Self {
        self.map_terms(|l| l == level)
    }

    pub fn truncate_level(&self, max_level: i32) -> Self {
        self.map_terms(|l| l <= max_level)
    }

    pub fn levels_between(&self, lo: i32, hi: i32) -> Self {
        self.map_terms(|l| lo <= l && l <= hi)
    }

    pub fn min_level(&self) -> Option<i32> {
        self.terms().map(|(i, m, _)| term_level(self.nvars(), i, m)).min()
    }

    pub fn max_level(&self) -> Option<i32> {
        self.terms().map(|(i, m, _)| term_level(self.nvars(), i, m)).max()
    }

    /// Splits into homogeneous pieces keyed by level; no zero pieces.
    pub fn grade_decompose(&self) -> BTreeMap<i32, PolyVectorField> {
        let nvars = self.nvars();
        let mut out: BTreeMap<i32, PolyVectorField> = BTreeMap::new();
        for (i, m, c) in self.terms() {
            let l = term_level(nvars, i, m);
            out.entry(l)
                .or_insert_with(|| PolyVectorField::zero(self.n))
                .comps[i]
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Applies the field as a derivation: `X(f) = sum_k X_k d_k f`.
    pub fn derive(&self, f: &Poly) -> Poly {
        self.derive_truncated(f, u32::MAX)
    }

    pub fn derive_truncated(&self, f: &Poly, max_wdeg: u32) -> Poly {
        let mut out = Poly::zero(self.nvars());
        for (k, xk) in self.comps.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            let df = f.derivative(k);
            if df.is_zero() {
                continue;
            }
            out = &out + &xk.mul_truncated(&df, max_wdeg);
        }
        out
    }

    /// Lie bracket of the diffeomorphism group:
    /// `[X, Y]_i = sum_j (Y_j d_j X_i - X_j d_j Y_i)`.
    ///
    /// With this sign, fundamental fields of a left action form a Lie algebra
    /// homomorphism and `exp(X) o exp(Y) = exp(X + Y + [X, Y]/2 + ...)`.
    pub fn lie_bracket(&self, other: &PolyVectorField) -> PolyVectorField {
        other.vector_field_commutator(self)
    }

    /// Commutator of derivations: `[X, Y] f = X(Y f) - Y(X f)`.
    pub fn vector_field_commutator(&self, other: &PolyVectorField) -> PolyVectorField {
        assert_eq!(self.n, other.n, "fields live in different dimensions");
        let comps = (0..self.nvars())
            .map(|i| &self.derive(&other.comps[i]) - &other.derive(&self.comps[i]))
            .collect();
        PolyVectorField { n: self.n, comps }
    }

    pub fn eval(&self, point: &[Q]) -> Vec<Q> {
        self.comps.iter().map(|p| p.eval(point)).collect()
    }

    /// `M_* X`, i.e. `y -> M X(M^{-1} y)` for an invertible matrix `M`.
    pub fn pushforward_linear(&self, m: &Matrix) -> Result<PolyVectorField> {
        let nvars = self.nvars();
        if m.len() != nvars {
            return Err(Error::DimensionMismatch { expected: nvars, found: m.len() });
        }
        let minv = inverse(m).ok_or_else(|| Error::NotInvertible("linear map".into()))?;
        let subs = linear_substitution(&minv);
        let pulled: Vec<Poly> = self.comps.iter().map(|p| p.compose(&subs, u32::MAX)).collect();
        let comps = (0..nvars)
            .map(|i| {
                let mut acc = Poly::zero(nvars);
                for (j, p) in pulled.iter().enumerate() {
                    if !m[i][j].is_zero() {
                        acc = &acc + &p.scale(&m[i][j]);
                    }
                }
                acc
            })
            .collect();
        Ok(PolyVectorField { n: self.n, comps })
    }

    /// Coordinates in a monomial basis; terms outside the basis are reported.
    pub fn coordinates(&self, basis: &[(usize, Monomial)]) -> Option<Vec<Q>> {
        let mut out = Vec::with_capacity(basis.len());
        let mut used = 0;
        for (i, m) in basis {
            let c = self.comps[*i].coeff(m);
            if !c.is_zero() {
                used += 1;
            }
            out.push(c);
        }
        (used == self.num_terms()).then_some(out)
    }

    pub fn from_coordinates(n: usize, basis: &[(usize, Monomial)], coords: &[Q]) -> Self {
        let mut f = PolyVectorField::zero(n);
        for ((i, m), c) in basis.iter().zip(coords) {
            f.comps[*i].add_term(m.clone(), c.clone());
        }
        f
    }
}

/// Substitution `x_j -> sum_k a_{jk} y_k`.
pub fn linear_substitution(a: &Matrix) -> Vec<Poly> {
    let nvars = a.len();
    a.iter()
        .map(|row| {
            let mut p = Poly::zero(nvars);
            for (k, c) in row.iter().enumerate() {
                p.add_term(Monomial::var(nvars, k), c.clone());
            }
            p
        })
        .collect()
}

impl fmt::Debug for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p}) d{}", i + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a PolyVectorField> for &'a PolyVectorField {
    type Output = PolyVectorField;
    fn add(self, o: &PolyVectorField) -> PolyVectorField {
        assert_eq!(self.n, o.n);
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect();
        PolyVectorField { n: self.n, comps }
    }
}

impl<'a> Sub<&'a PolyVectorField> for &'a PolyVectorField {
    type Output = PolyVectorField;
    fn sub(self, o: &PolyVectorField) -> PolyVectorField {
        assert_eq!(self.n, o.n);
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect();
        PolyVectorField { n: self.n, comps }
    }
}

impl Neg for &PolyVectorField {
    type Output = PolyVectorField;
    fn neg(self) -> PolyVectorField {
        PolyVectorField { n: self.n, comps: self.comps.iter().map(|p| -p).collect() }
    }
}

impl Add for PolyVectorField {
    type Output = PolyVectorField;
    fn add(self, o: PolyVectorField) -> PolyVectorField {
        &self + &o
    }
}

impl Sub for PolyVectorField {
    type Output = PolyVectorField;
    fn sub(self, o: PolyVectorField) -> PolyVectorField {
        &self - &o
    }
}

impl Neg for PolyVectorField {
    type Output = PolyVectorField;
    fn neg(self) -> PolyVectorField {
        -&self
    }
}
