use crate::gradedpoly::Poly;
use crate::scalar::{Q, CQ};

/// Polynomial with Gaussian-rational coefficients, kept as real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPoly {
    pub re: Poly,
    pub im: Poly,
}

impl CPoly {
    pub fn zero(nvars: usize) -> Self {
        CPoly { re: Poly::zero(nvars), im: Poly::zero(nvars) }
    }

    pub fn constant(nvars: usize, c: &CQ) -> Self {
        CPoly { re: Poly::constant(nvars, c.re.clone()), im: Poly::constant(nvars, c.im.clone()) }
    }

    pub fn from_parts(re: Poly, im: Poly) -> Self {
        CPoly { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &CPoly) -> CPoly {
        CPoly { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &CPoly) -> CPoly {
        CPoly { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn scale(&self, c: &CQ) -> CPoly {
        CPoly {
            re: &self.re.scale(&c.re) - &self.im.scale(&c.im),
            im: &self.re.scale(&c.im) + &self.im.scale(&c.re),
        }
    }

    pub fn scale_real(&self, s: &Q) -> CPoly {
        CPoly { re: self.re.scale(s), im: self.im.scale(s) }
    }

    pub fn mul_truncated(&self, o: &CPoly, max_wdeg: u32) -> CPoly {
        let rr = self.re.mul_truncated(&o.re, max_wdeg);
        let ii = self.im.mul_truncated(&o.im, max_wdeg);
        let ri = self.re.mul_truncated(&o.im, max_wdeg);
        let ir = self.im.mul_truncated(&o.re, max_wdeg);
        CPoly { re: &rr - &ii, im: &ri + &ir }
    }

    pub fn constant_term(&self) -> CQ {
        let one = crate::gradedpoly::Monomial::one(self.re.nvars());
        CQ::new(self.re.coeff(&one), self.im.coeff(&one))
    }

    pub fn truncate(&self, max_wdeg: u32) -> CPoly {
        CPoly { re: self.re.truncate(max_wdeg), im: self.im.truncate(max_wdeg) }
    }
}
