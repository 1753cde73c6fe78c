use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gradedpoly::{term_level, var_weight, Monomial, Poly, PolyVectorField};
use crate::linalg::{self, Matrix};
use crate::scalar::{qpow, Q};

/// `r`-jet at the origin of a transformation of R^{2n+1} fixing the origin,
/// stored as its components truncated to levels `-1..=r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JetTransformation {
    n: usize,
    r: u32,
    comps: Vec<Poly>,
}

fn comp_bound(r: u32, comp: usize, nvars: usize) -> u32 {
    r + var_weight(comp, nvars)
}

impl JetTransformation {
    pub fn identity(n: usize, r: u32) -> Self {
        let nvars = 2 * n + 1;
        JetTransformation { n, r, comps: (0..nvars).map(|i| Poly::var(nvars, i)).collect() }
    }

    /// Builds a jet from components; terms above level `r` are dropped, and
    /// constant terms or terms below level -1 are rejected.
    pub fn from_components(r: u32, comps: Vec<Poly>) -> Result<Self> {
        let nvars = comps.len();
        if nvars % 2 == 0 || comps.iter().any(|p| p.nvars() != nvars) {
            return Err(Error::DimensionMismatch { expected: 2 * (nvars / 2) + 1, found: nvars });
        }
        for (i, p) in comps.iter().enumerate() {
            for (m, _) in p.terms() {
                if m.is_one() || term_level(nvars, i, m) < -1 {
                    return Err(Error::LevelViolation(format!(
                        "term {m} in component {} does not fix the origin",
                        i + 1
                    )));
                }
            }
        }
        let comps = comps
            .iter()
            .enumerate()
            .map(|(i, p)| p.truncate(comp_bound(r, i, nvars)))
            .collect();
        Ok(JetTransformation { n: nvars / 2, r, comps })
    }

    /// `id + d` for a displacement field without constant terms.
    pub fn from_displacement(d: &PolyVectorField, r: u32) -> Result<Self> {
        let id = JetTransformation::identity(d.n(), r);
        let comps = id.comps.iter().zip(d.comps()).map(|(a, b)| a + b).collect();
        JetTransformation::from_components(r, comps)
    }

    /// Jet of the linear map `x -> M x`.
    pub fn linear(m: &Matrix, r: u32) -> Result<Self> {
        let nvars = m.len();
        let comps = crate::gradedpoly::field::linear_substitution(m);
        if comps.iter().any(|p| p.nvars() != nvars) {
            return Err(Error::DimensionMismatch { expected: nvars, found: comps.len() });
        }
        JetTransformation::from_components(r, comps)
    }

    /// `I(k) = diag(1/k, ..., 1/k, 1/k^2)`.
    pub fn scaling(n: usize, k: &Q, r: u32) -> Self {
        let nvars = 2 * n + 1;
        let comps = (0..nvars)
            .map(|i| Poly::var(nvars, i).scale(&qpow(k, -(var_weight(i, nvars) as i64))))
            .collect();
        JetTransformation { n, r, comps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        2 * self.n + 1
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    /// `F - id` as a field.
    pub fn displacement(&self) -> PolyVectorField {
        let id = JetTransformation::identity(self.n, self.r);
        PolyVectorField::from_components(self.comps.iter().zip(&id.comps).map(|(a, b)| a - b).collect())
            .expect("valid dimension")
    }

    /// Components of level exactly `q`, as a field (the identity counts at level 0).
    pub fn level_part(&self, q: i32) -> PolyVectorField {
        PolyVectorField::from_components(self.comps.clone()).expect("valid dimension").level_part(q)
    }

    pub fn has_level_minus_one(&self) -> bool {
        !self.level_part(-1).is_zero()
    }

    pub fn is_identity(&self) -> bool {
        *self == JetTransformation::identity(self.n, self.r)
    }

    /// Projection `pi_r` to a lower truncation order.
    pub fn project(&self, r: u32) -> Result<Self> {
        if r > self.r {
            return Err(Error::Precondition(format!("cannot raise truncation order {} to {r}", self.r)));
        }
        JetTransformation::from_components(r, self.comps.clone())
    }

    /// Replaces the level `q` part.
    pub fn with_level(&self, q: i32, part: &PolyVectorField) -> Result<Self> {
        let cur = PolyVectorField::from_components(self.comps.clone()).expect("valid dimension");
        let new = &(&cur - &cur.level_part(q)) + &part.level_part(q);
        JetTransformation::from_components(self.r, new.into_components())
    }

    /// Level-zero data `(A, b, Q)`.
    pub fn level_zero(&self) -> P0Element {
        let nvars = self.nvars();
        let d = 2 * self.n;
        let mut a = linalg::zeros(d, d);
        for (i, row) in a.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.comps[i].coeff(&Monomial::var(nvars, j));
            }
        }
        let last = &self.comps[d];
        let b = last.coeff(&Monomial::var(nvars, d));
        let quad = last.filter_wdeg(|w| w == 2) - Poly::monomial(nvars, Monomial::var(nvars, d), b.clone());
        P0Element { a, b, quad }
    }

    /// `self o other`; both must have vanishing level -1 part.
    pub fn compose(&self, other: &JetTransformation) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: other.nvars() });
        }
        if self.has_level_minus_one() || other.has_level_minus_one() {
            return Err(Error::LevelViolation("composition needs vanishing level -1 parts".into()));
        }
        let r = self.r.min(other.r);
        let nvars = self.nvars();
        let bound = r + 2;
        let mut sub = crate::gradedpoly::Substitution::new(&other.comps, bound);
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(i, p)| sub.apply(&p.truncate(comp_bound(r, i, nvars))).truncate(comp_bound(r, i, nvars)))
            .collect();
        Ok(JetTransformation { n: self.n, r, comps })
    }

    /// `self^m` for `m >= 0`, by repeated squaring.
    pub fn power(&self, m: u32) -> Result<Self> {
        let mut acc = JetTransformation::identity(self.n, self.r);
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(acc)
    }

    /// Inverse in `P_r`.
    pub fn inverse(&self) -> Result<Self> {
        if self.has_level_minus_one() {
            return Err(Error::LevelViolation("inverse needs a vanishing level -1 part".into()));
        }
        let p0 = self.level_zero();
        let p0inv = p0.inverse()?.to_jet(self.n, self.r);
        let g = p0inv.compose(self)?;
        let nfield = g.displacement();
        let nj = JetTransformation::from_components(self.r, nfield.into_components())?;
        let mut h = JetTransformation::identity(self.n, self.r);
        let id = JetTransformation::identity(self.n, self.r);
        for _ in 0..self.r {
            let nh = raw_compose(&nj, &h);
            let comps = id.comps.iter().zip(&nh).map(|(a, b)| a - b).collect();
            h = JetTransformation { n: self.n, r: self.r, comps };
        }
        h.compose(&p0inv)
    }

    /// Conjugate `g o self o g^{-1}`.
    pub fn conjugate_by(&self, g: &JetTransformation) -> Result<Self> {
        g.compose(self)?.compose(&g.inverse()?)
    }

    /// Pushforward `(DF X) o F^{-1}` of a field, valid up to level
    /// `r + min_level(X)`.
    pub fn pushforward(&self, x: &PolyVectorField, max_level: i32) -> Result<PolyVectorField> {
        if let Some(lo) = x.min_level() {
            if max_level > self.r as i32 + lo {
                return Err(Error::Precondition(format!(
                    "a {}-jet determines the pushforward only up to level {}",
                    self.r,
                    self.r as i32 + lo
                )));
            }
        }
        let nvars = self.nvars();
        let bound = |i: usize| (max_level + var_weight(i, nvars) as i32).max(0) as u32;
        let dfx: Vec<Poly> = (0..nvars)
            .map(|i| {
                let mut acc = Poly::zero(nvars);
                for (j, xj) in x.comps().iter().enumerate() {
                    if !xj.is_zero() {
                        acc = &acc + &self.comps[i].derivative(j).mul_truncated(xj, bound(i));
                    }
                }
                acc
            })
            .collect();
        let inv = self.inverse()?;
        let maxb = (0..nvars).map(bound).max().unwrap_or(0);
        let mut sub = crate::gradedpoly::Substitution::new(&inv.comps, maxb);
        let comps = dfx.iter().enumerate().map(|(i, p)| sub.apply(p).truncate(bound(i))).collect();
        Ok(PolyVectorField::from_components(comps)?.truncate_level(max_level))
    }

    /// Evaluates the truncated map at a point.
    pub fn eval(&self, point: &[Q]) -> Vec<Q> {
        self.comps.iter().map(|p| p.eval(point)).collect()
    }

    /// Linear part as a full matrix (including level -1 and level 1 entries).
    pub fn linear_part(&self) -> Matrix {
        let nvars = self.nvars();
        (0..nvars)
            .map(|i| (0..nvars).map(|j| self.comps[i].coeff(&Monomial::var(nvars, j))).collect())
            .collect()
    }
}

/// Composition of raw component lists with the truncation of `f`.
fn raw_compose(f: &JetTransformation, g: &JetTransformation) -> Vec<Poly> {
    let nvars = f.nvars();
    let mut sub = crate::gradedpoly::Substitution::new(&g.comps, f.r + 2);
    f.comps
        .iter()
        .enumerate()
        .map(|(i, p)| sub.apply(p).truncate(comp_bound(f.r, i, nvars)))
        .collect()
}

/// Element of `P_0`: `(x', y) -> (A x', b y + Q(x'))` with `Q` quadratic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P0Element {
    pub a: Matrix,
    pub b: Q,
    pub quad: Poly,
}

impl P0Element {
    pub fn n(&self) -> usize {
        self.a.len() / 2
    }

    pub fn scaling(n: usize, k: &Q) -> Self {
        let mut a = linalg::identity(2 * n);
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = k.recip();
        }
        P0Element { a, b: qpow(k, -2), quad: Poly::zero(2 * n + 1) }
    }

    pub fn is_invertible(&self) -> bool {
        !self.b.is_zero() && !linalg::det(&self.a).is_zero()
    }

    /// As an exact polynomial map, viewed as a jet of order `r`.
    pub fn to_jet(&self, n: usize, r: u32) -> JetTransformation {
        let nvars = 2 * n + 1;
        let d = 2 * n;
        let mut comps: Vec<Poly> = self
            .a
            .iter()
            .map(|row| {
                let mut p = Poly::zero(nvars);
                for (j, c) in row.iter().enumerate() {
                    p.add_term(Monomial::var(nvars, j), c.clone());
                }
                p
            })
            .collect();
        let mut last = self.quad.clone();
        last.add_term(Monomial::var(nvars, d), self.b.clone());
        comps.push(last);
        JetTransformation { n, r, comps }
    }

    /// Exact inverse `(x', y) -> (A^{-1} x', (y - Q(A^{-1} x')) / b)`.
    pub fn inverse(&self) -> Result<P0Element> {
        let ainv = linalg::inverse(&self.a).ok_or_else(|| Error::NotInvertible("level-0 block A".into()))?;
        if self.b.is_zero() {
            return Err(Error::NotInvertible("level-0 coefficient b".into()));
        }
        let n = self.n();
        let nvars = 2 * n + 1;
        let mut subs: Vec<Poly> = ainv
            .iter()
            .map(|row| {
                let mut p = Poly::zero(nvars);
                for (j, c) in row.iter().enumerate() {
                    p.add_term(Monomial::var(nvars, j), c.clone());
                }
                p
            })
            .collect();
        subs.push(Poly::zero(nvars));
        let binv = self.b.recip();
        let quad = self.quad.compose(&subs, u32::MAX).scale(&(-binv.clone()));
        Ok(P0Element { a: ainv, b: binv, quad })
    }

    /// Exact pushforward of a polynomial field.
    pub fn act_on_field(&self, x: &PolyVectorField) -> Result<PolyVectorField> {
        let n = self.n();
        let nvars = 2 * n + 1;
        let f = self.to_jet(n, 0);
        let inv = self.inverse()?.to_jet(n, 0);
        let dfx: Vec<Poly> = (0..nvars)
            .map(|i| {
                let mut acc = Poly::zero(nvars);
                for (j, xj) in x.comps().iter().enumerate() {
                    if !xj.is_zero() {
                        acc = &acc + &(&f.comps[i].derivative(j) * xj);
                    }
                }
                acc
            })
            .collect();
        let comps = dfx.iter().map(|p| p.compose(&inv.comps, u32::MAX)).collect();
        PolyVectorField::from_components(comps)
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_one() && self.quad.is_zero() && self.a == linalg::identity(self.a.len())
    }
}

impl fmt::Debug for JetTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for JetTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}-jet] (", self.r)?;
        for (i, p) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

