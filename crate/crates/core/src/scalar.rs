//! Rational and Gaussian-rational scalars.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `base^exp` for any integer exponent; `base` must be nonzero when `exp < 0`.
pub fn qpow(base: &Q, exp: i64) -> Q {
    let mut acc = Q::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Number of bits in numerator plus denominator, a crude height measure.
pub fn height_bits(x: &Q) -> u64 {
    x.numer().bits() + x.denom().bits()
}

/// Element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CQ {
    pub re: Q,
    pub im: Q,
}

impl CQ {
    pub fn new(re: Q, im: Q) -> Self {
        CQ { re, im }
    }

    pub fn real(re: Q) -> Self {
        CQ { re, im: Q::zero() }
    }

    pub fn imag(im: Q) -> Self {
        CQ { re: Q::zero(), im }
    }

    pub fn zero() -> Self {
        CQ::default()
    }

    pub fn one() -> Self {
        CQ::real(Q::one())
    }

    pub fn i() -> Self {
        CQ::imag(Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CQ { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, s: &Q) -> Self {
        CQ { re: &self.re * s, im: &self.im * s }
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(CQ { re: &self.re / &n, im: -&self.im / &n })
    }
}

impl fmt::Display for CQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a CQ> for &'a CQ {
    type Output = CQ;
    fn add(self, o: &CQ) -> CQ {
        CQ { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a CQ> for &'a CQ {
    type Output = CQ;
    fn sub(self, o: &CQ) -> CQ {
        CQ { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a CQ> for &'a CQ {
    type Output = CQ;
    fn mul(self, o: &CQ) -> CQ {
        CQ {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &CQ {
    type Output = CQ;
    fn neg(self) -> CQ {
        CQ { re: -&self.re, im: -&self.im }
    }
}

impl Add for CQ {
    type Output = CQ;
    fn add(self, o: CQ) -> CQ {
        &self + &o
    }
}

impl Sub for CQ {
    type Output = CQ;
    fn sub(self, o: CQ) -> CQ {
        &self - &o
    }
}

impl Mul for CQ {
    type Output = CQ;
    fn mul(self, o: CQ) -> CQ {
        &self * &o
    }
}

impl Neg for CQ {
    type Output = CQ;
    fn neg(self) -> CQ {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["3/4", "-7/2", "0/1", "12/1"] {
            assert_eq!(format_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(parse_q("5").unwrap(), q(5));
        assert_eq!(parse_q("6/4").unwrap(), qf(3, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn gaussian_arithmetic() {
        let a = CQ::new(q(1), q(2));
        let b = CQ::new(qf(1, 2), q(-1));
        assert_eq!(&a * &b, CQ::new(qf(5, 2), q(0)));
        assert_eq!(&a * &a.recip().unwrap(), CQ::one());
        assert_eq!(&CQ::i() * &CQ::i(), CQ::real(q(-1)));
    }

    #[test]
    fn powers() {
        assert_eq!(qpow(&q(2), -3), qf(1, 8));
        assert_eq!(qpow(&qf(2, 3), 2), qf(4, 9));
        assert_eq!(qpow(&q(7), 0), q(1));
    }
}
