use num_traits::Zero;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::{q, qf, qpow, Q, CQ};

/// `Phi(z, z') = Im(conj(z')^T z)`.
pub fn phi(z: &[CQ], zp: &[CQ]) -> Q {
    z.iter().zip(zp).fold(Q::zero(), |acc, (a, b)| acc + (&b.conj() * a).im)
}

/// Element `(z, t)` of the Heisenberg group `N = C^n x R`; the same
/// coordinates serve for the Lie algebra `n` through the identity exponential.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeisenbergElement {
    pub z: Vec<CQ>,
    pub t: Q,
}

impl HeisenbergElement {
    pub fn identity(n: usize) -> Self {
        HeisenbergElement { z: vec![CQ::zero(); n], t: Q::zero() }
    }

    pub fn new(z: Vec<CQ>, t: Q) -> Self {
        HeisenbergElement { z, t }
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn is_identity(&self) -> bool {
        self.t.is_zero() && self.z.iter().all(CQ::is_zero)
    }

    /// `(z, t)(z', t') = (z + z', t + t' - Phi(z, z'))`.
    pub fn product(&self, o: &HeisenbergElement) -> Result<HeisenbergElement> {
        if self.n() != o.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: o.n() });
        }
        let z = self.z.iter().zip(&o.z).map(|(a, b)| a + b).collect();
        Ok(HeisenbergElement { z, t: &self.t + &o.t - phi(&self.z, &o.z) })
    }

    pub fn inverse(&self) -> HeisenbergElement {
        HeisenbergElement { z: self.z.iter().map(|a| -a).collect(), t: -self.t.clone() }
    }

    /// Automorphism `delta_s(z, t) = (s z, s^2 t)`, i.e. conjugation by `a^p`
    /// with `s = k^p`.
    pub fn dilate(&self, s: &Q) -> HeisenbergElement {
        HeisenbergElement { z: self.z.iter().map(|a| a.scale(s)).collect(), t: &self.t * s * s }
    }

    /// Lie bracket `[(xi, tau), (xi', tau')] = (0, -2 Phi(xi, xi'))`.
    pub fn bracket(&self, o: &HeisenbergElement) -> HeisenbergElement {
        HeisenbergElement { z: vec![CQ::zero(); self.n()], t: phi(&self.z, &o.z) * q(-2) }
    }

    pub fn add(&self, o: &HeisenbergElement) -> HeisenbergElement {
        HeisenbergElement { z: self.z.iter().zip(&o.z).map(|(a, b)| a + b).collect(), t: &self.t + &o.t }
    }

    pub fn scale(&self, s: &Q) -> HeisenbergElement {
        HeisenbergElement { z: self.z.iter().map(|a| a.scale(s)).collect(), t: &self.t * s }
    }

    /// Matrix of `exp(xi^+ + tau F^+)` in `SU(n+1, 1)`.
    pub fn to_matrix(&self) -> CMatrix {
        let n = self.n();
        let mut m = CMatrix::identity(n + 2);
        let nsq = self.z.iter().fold(Q::zero(), |acc, c| acc + c.norm_sqr());
        for (j, c) in self.z.iter().enumerate() {
            m.set(0, j + 1, -c.conj());
            m.set(j + 1, n + 1, c.clone());
        }
        m.set(0, n + 1, CQ::new(-nsq * qf(1, 2), -self.t.clone()));
        m
    }
}

pub fn algebra_exp(x: &HeisenbergElement) -> HeisenbergElement {
    x.clone()
}

pub fn algebra_log(g: &HeisenbergElement) -> HeisenbergElement {
    g.clone()
}

/// Element `(p, h)` of `A N`, standing for `h a^p` with `a = diag(k, I, 1/k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ANElement {
    pub p: i64,
    pub h: HeisenbergElement,
}

impl ANElement {
    pub fn identity(n: usize) -> Self {
        ANElement { p: 0, h: HeisenbergElement::identity(n) }
    }

    pub fn is_identity(&self) -> bool {
        self.p == 0 && self.h.is_identity()
    }

    /// `(p, h)(p', h') = (p + p', h . delta_{k^p}(h'))`.
    pub fn product(&self, o: &ANElement, k: &Q) -> Result<ANElement> {
        Ok(ANElement { p: self.p + o.p, h: self.h.product(&o.h.dilate(&qpow(k, self.p)))? })
    }

    pub fn inverse(&self, k: &Q) -> ANElement {
        ANElement { p: -self.p, h: self.h.inverse().dilate(&qpow(k, -self.p)) }
    }

    pub fn to_matrix(&self, k: &Q) -> CMatrix {
        let n = self.h.n();
        let mut a = CMatrix::identity(n + 2);
        a.set(0, 0, CQ::real(qpow(k, self.p)));
        a.set(n + 1, n + 1, CQ::real(qpow(k, -self.p)));
        self.h.to_matrix().mul(&a)
    }
}
