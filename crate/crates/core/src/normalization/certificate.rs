use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gradedpoly::{level_basis, PolyVectorField};
use crate::linalg::{Matrix, RowEchelon};
use crate::scalar::{q, qpow, Q};

/// Whether `m c^{r0+1} < k^{r0-2}`.
pub fn germ_constant_check(k: i64, m: i64, r0: i64, c: &Q) -> Result<bool> {
    if k < 2 || m < 2 || r0 < 1 {
        return Err(Error::Precondition("need k >= 2, m >= 2 and r0 >= 1".into()));
    }
    if *c <= Q::one() {
        return Err(Error::Precondition("need c > 1".into()));
    }
    Ok(q(m) * qpow(c, r0 + 1) < qpow(&q(k), r0 - 2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resonance {
    pub index: usize,
    pub exponents: Vec<u32>,
}

/// Searches for a relation `lambda_i = prod lambda_j^{l_j}` with
/// `2 <= |l| <= max_degree`; `None` means non-resonant up to that degree.
pub fn resonance_check(eigenvalues: &[Q], max_degree: u32) -> Result<Option<Resonance>> {
    for l in eigenvalues {
        if l.is_zero() || l.abs() >= Q::one() {
            return Err(Error::Precondition("eigenvalues must satisfy 0 < |lambda| < 1".into()));
        }
    }
    let d = eigenvalues.len();
    let mut exps = vec![0u32; d];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, eig: &[Q], prod: Q, found: &mut Option<Resonance>) {
        if found.is_some() {
            return;
        }
        if i == eig.len() {
            let total: u32 = exps.iter().sum();
            if total >= 2 {
                if let Some(idx) = eig.iter().position(|e| *e == prod) {
                    *found = Some(Resonance { index: idx, exponents: exps.clone() });
                }
            }
            return;
        }
        let mut p = prod;
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, eig, p.clone(), found);
            p *= &eig[i];
        }
        exps[i] = 0;
    }
    let mut found = None;
    rec(0, max_degree, &mut exps, eigenvalues, Q::one(), &mut found);
    Ok(found)
}

#[derive(Clone, Debug)]
pub struct OperatorInvertibility {
    pub invertible: bool,
    pub kernel: Vec<PolyVectorField>,
}

/// Invertibility of `F -> L o F o L^{-1} - F` on the level-`q` space for a
/// linear `L`.
pub fn operator_invertibility(l: &Matrix, q_level: i32) -> Result<OperatorInvertibility> {
    let n = l.len() / 2;
    let basis = level_basis(n, q_level);
    let mut rows: Vec<Vec<Q>> = vec![Vec::with_capacity(basis.len()); basis.len()];
    for (comp, mono) in &basis {
        let e = PolyVectorField::basis_element(n, *comp, mono.clone());
        let img = &e.pushforward_linear(l)? - &e;
        let coords = img
            .coordinates(&basis)
            .ok_or_else(|| Error::LevelViolation("linear map does not preserve the level".into()))?;
        for (row, c) in rows.iter_mut().zip(coords) {
            row.push(c);
        }
    }
    let kernel: Vec<PolyVectorField> = RowEchelon::from_rows(basis.len(), &rows)
        .kernel()
        .into_iter()
        .map(|v| PolyVectorField::from_coordinates(n, &basis, &v))
        .collect();
    Ok(OperatorInvertibility { invertible: kernel.is_empty(), kernel })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorBound {
    pub m: i64,
    pub u_norm: Q,
    /// Norm of `sum_{j<m} A^j`.
    pub op_norm: Q,
    /// `min ||(sum_{j<m} A^j) x||` over unit vectors.
    pub co_norm: Q,
    pub threshold: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionCertificate {
    pub c1: Q,
    pub c2: Q,
    pub generators: Vec<GeneratorBound>,
}

impl ContractionCertificate {
    pub fn holds(&self) -> bool {
        self.generators.iter().all(|g| g.op_norm > g.threshold && g.co_norm > g.threshold)
    }
}

fn l1(v: &[Q]) -> Q {
    v.iter().fold(Q::zero(), |acc, x| acc + x.abs())
}

/// Norm `c1 |x'|_1 + c2 |x_{2n+1}|` of the image of the extreme points of the
/// unit ball under `x -> (alpha x' + beta u x_{2n+1}, gamma x_{2n+1})`; returns the maximum.
fn max_on_extreme_points(alpha: &Q, beta: &Q, gamma: &Q, unorm: &Q, c1: &Q, c2: &Q, dim: usize) -> Q {
    let horizontal = if dim > 0 { alpha.abs() } else { Q::zero() };
    let vertical = (c1 * beta.abs() * unorm + c2 * gamma.abs()) / c2;
    horizontal.max(vertical)
}

/// Builds weights `c1, c2` for the norm `c1 |x'|_1 + c2 |x_{2n+1}|` satisfying
/// `-m^2 |u|_1 c1 + ((1 - eps) m - lambda) c2 > 0` for every generator, and
/// verifies that `sum_{j<m} A^j` with `A = [[I, u], [0, 1]]` expands by more
/// than `eps m + lambda` in that norm.
///
/// `us` are the vectors `u_i` of the `b_i`; the generator `c` (with `u = 0`)
/// is added automatically. Generators `b_i` use `m = k`, `c` uses `m = k^2`.
pub fn contraction_certificate(k: i64, lambda: &Q, eps: &Q, us: &[Vec<Q>]) -> Result<ContractionCertificate> {
    let kq = q(k);
    if k < 2 || *lambda <= kq.recip() || *lambda >= Q::one() {
        return Err(Error::Precondition("need 1/k < lambda < 1".into()));
    }
    if !eps.is_positive() || *eps >= qpow(&kq, -2) {
        return Err(Error::Precondition("need 0 < eps < 1/k^2".into()));
    }
    let dim = us.first().map_or(0, Vec::len);
    let mut gens: Vec<(i64, Vec<Q>)> = us.iter().map(|u| (k, u.clone())).collect();
    gens.push((k * k, vec![Q::zero(); dim]));
    let c2 = Q::one();
    let mut c1_bound: Option<Q> = None;
    for (m, u) in &gens {
        let mq = q(*m);
        let slack = (Q::one() - eps) * &mq - lambda;
        if !slack.is_positive() {
            return Err(Error::NoSolution("no admissible weights".into()));
        }
        let un = l1(u);
        if un.is_positive() {
            let b = slack / (&mq * &mq * un);
            c1_bound = Some(match c1_bound {
                Some(x) if x < b => x,
                _ => b,
            });
        }
    }
    let c1 = c1_bound.map_or_else(Q::one, |b| b / q(2));
    let mut out = Vec::new();
    for (m, u) in &gens {
        let mq = q(*m);
        let un = l1(u);
        let threshold = eps * &mq + lambda;
        let binom = q(m * (m - 1) / 2);
        let op_norm = max_on_extreme_points(&mq, &binom, &mq, &un, &c1, &c2, dim);
        // inverse: [[I/m, -(m-1)/(2m) u], [0, 1/m]]
        let inv_alpha = mq.recip();
        let inv_beta = -q(m - 1) / (q(2) * &mq);
        let inv_norm = max_on_extreme_points(&inv_alpha, &inv_beta, &inv_alpha, &un, &c1, &c2, dim);
        out.push(GeneratorBound { m: *m, u_norm: un, op_norm, co_norm: inv_norm.recip(), threshold });
    }
    Ok(ContractionCertificate { c1, c2, generators: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qf;

    #[test]
    fn germ_constant_examples() {
        assert!(germ_constant_check(2, 2, 10, &qf(21, 20)).unwrap());
        for r0 in 1..12 {
            assert!(!germ_constant_check(2, 2, r0, &q(2)).unwrap());
        }
        assert!(!germ_constant_check(2, 2, 1, &qf(101, 100)).unwrap());
        assert!(germ_constant_check(2, 2, 1, &q(1)).is_err());
    }

    #[test]
    fn resonance_examples() {
        let i2 = [qf(1, 2), qf(1, 2), qf(1, 4)];
        let res = resonance_check(&i2, 4).unwrap().unwrap();
        assert_eq!(res.index, 2);
        assert!(resonance_check(&[qf(1, 2), qf(1, 3)], 6).unwrap().is_none());
        assert!(resonance_check(&[q(2)], 3).is_err());
    }

    #[test]
    fn scaling_operator_is_invertible_off_level_zero() {
        let mut l = crate::linalg::identity(3);
        l[0][0] = qf(1, 2);
        l[1][1] = qf(1, 2);
        l[2][2] = qf(1, 4);
        for lvl in 1..=3 {
            assert!(operator_invertibility(&l, lvl).unwrap().invertible);
        }
        let zero = operator_invertibility(&l, 0).unwrap();
        assert_eq!(zero.kernel.len(), level_basis(1, 0).len());
        assert!(!operator_invertibility(&crate::linalg::identity(3), 2).unwrap().invertible);
    }

    #[test]
    fn certificate_example() {
        let cert = contraction_certificate(2, &qf(3, 5), &qf(1, 5), &[vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap();
        assert!(cert.holds());
        for g in &cert.generators {
            let slack = (Q::one() - qf(1, 5)) * q(g.m) - qf(3, 5);
            assert!(-(q(g.m * g.m) * &g.u_norm * &cert.c1) + slack * &cert.c2 > Q::zero());
        }
        assert!(contraction_certificate(2, &qf(2, 5), &qf(1, 5), &[]).is_err());
        assert!(contraction_certificate(2, &qf(3, 5), &qf(1, 3), &[]).is_err());
    }
}
