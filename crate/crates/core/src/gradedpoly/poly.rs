use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use crate::scalar::Q;

/// Sparse polynomial over Q in `nvars` weighted variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

fn add_into(terms: &mut BTreeMap<Monomial, Q>, m: Monomial, c: Q) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Poly::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(nvars, Monomial::var(nvars, i), Q::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.nvars(), self.nvars);
        add_into(&mut self.terms, m, c);
    }

    pub fn min_wdeg(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::weighted_degree)
    }

    pub fn max_wdeg(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::weighted_degree)
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Keeps the terms whose weighted degree satisfies `keep`.
    pub fn filter_wdeg(&self, keep: impl Fn(u32) -> bool) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m.weighted_degree()))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn truncate(&self, max_wdeg: u32) -> Poly {
        self.filter_wdeg(|d| d <= max_wdeg)
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        self.filter_wdeg(|w| w == d)
    }

    pub fn mul_truncated(&self, o: &Poly, max_wdeg: u32) -> Poly {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.weighted_degree();
            if da > max_wdeg {
                break;
            }
            for (mb, cb) in &o.terms {
                if da + mb.weighted_degree() > max_wdeg {
                    break;
                }
                add_into(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Poly { nvars: self.nvars, terms }
    }

    pub fn pow_truncated(&self, e: u32, max_wdeg: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Q::one());
        for _ in 0..e {
            acc = acc.mul_truncated(self, max_wdeg);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.div_var(i) {
                out.add_term(rest, c * Q::from_integer(e.into()));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `subs[j]` for `x_j`, keeping weighted degree at most `max_wdeg`.
    ///
    /// Truncation is exact provided every substituted polynomial has no
    /// constant term of negative weight, which always holds here since all
    /// weights are nonnegative.
    pub fn compose(&self, subs: &[Poly], max_wdeg: u32) -> Poly {
        let mut s = Substitution::new(subs, max_wdeg);
        s.apply(self)
    }
}

/// Memoized substitution of polynomials for variables.
pub struct Substitution<'a> {
    subs: &'a [Poly],
    max_wdeg: u32,
    cache: HashMap<Monomial, Poly>,
}

impl<'a> Substitution<'a> {
    pub fn new(subs: &'a [Poly], max_wdeg: u32) -> Self {
        Substitution { subs, max_wdeg, cache: HashMap::new() }
    }

    pub fn image(&mut self, m: &Monomial) -> Poly {
        if let Some(p) = self.cache.get(m) {
            return p.clone();
        }
        let nvars = self.subs[0].nvars();
        let p = match m.last_var() {
            None => Poly::constant(nvars, Q::one()),
            Some(j) => {
                let (_, rest) = m.div_var(j).expect("positive exponent");
                let base = self.image(&rest);
                base.mul_truncated(&self.subs[j], self.max_wdeg)
            }
        };
        self.cache.insert(m.clone(), p.clone());
        p
    }

    pub fn apply(&mut self, p: &Poly) -> Poly {
        let nvars = self.subs[0].nvars();
        let mut out = BTreeMap::new();
        for (m, c) in p.terms() {
            let img = self.image(m);
            for (mi, ci) in img.terms {
                add_into(&mut out, mi, c * ci);
            }
        }
        Poly { nvars, terms: out }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.mul_truncated(o, u32::MAX)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
