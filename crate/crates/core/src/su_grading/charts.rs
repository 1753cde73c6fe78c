use num_traits::Zero;

use super::cpoly::CPoly;
use super::induced::{apply_matrix, phi_lift};
use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::gradedpoly::{Monomial, Poly};
use crate::heisenberg::{evaluate_word, real_from_complex, Gen, LatticePresentation, Word};
use crate::jetgroup::JetTransformation;
use crate::linalg::{self, Matrix};
use crate::scalar::{q, qf, qpow, Q, CQ};

/// `r`-jet at the origin of `phi0 o rho0(g) o phi0^{-1}` for a matrix `g`
/// fixing the origin `[1, 0, 0]`.
pub fn phi_chart_jet_matrix(g: &CMatrix, r: u32) -> Result<JetTransformation> {
    let n = g.dim() - 2;
    let bound = r + 2;
    let lift = phi_lift(n);
    let gz = apply_matrix(g, &lift, bound);
    let c0 = gz[0].constant_term();
    let c0inv = c0.recip().ok_or_else(|| Error::Precondition("transformation moves the origin off the chart".into()))?;
    let nvars = 2 * n + 1;
    let u = gz[0].sub(&CPoly::constant(nvars, &c0)).scale(&c0inv);
    let minus_u = u.scale_real(&q(-1));
    let mut inv = CPoly::constant(nvars, &CQ::one());
    let mut pow = inv.clone();
    for _ in 0..bound {
        pow = pow.mul_truncated(&minus_u, bound);
        if pow.is_zero() {
            break;
        }
        inv = inv.add(&pow);
    }
    let inv = inv.scale(&c0inv);
    let mut comps = Vec::with_capacity(nvars);
    for zj in &gz[1..=n] {
        let w = zj.mul_truncated(&inv, bound);
        comps.push(w.re);
        comps.push(w.im);
    }
    comps.push(gz[n + 1].mul_truncated(&inv, bound).im);
    JetTransformation::from_components(r, comps)
}

/// `r`-jet of the action of a lattice word in the chart around the origin.
pub fn phi_chart_jet(w: &Word, lat: &LatticePresentation, r: u32) -> Result<JetTransformation> {
    let g = evaluate_word(w, lat)?;
    phi_chart_jet_matrix(&g.to_matrix(&lat.kq()), r)
}

/// Affine map `x -> L x + o` of R^{2n+1}, coordinates `(x_0, x_1, ..., x_{2n})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChartMap {
    pub linear: Matrix,
    pub offset: Vec<Q>,
}

impl AffineChartMap {
    pub fn identity(dim: usize) -> Self {
        AffineChartMap { linear: linalg::identity(dim), offset: vec![Q::zero(); dim] }
    }

    /// `self o other`.
    pub fn compose(&self, other: &AffineChartMap) -> AffineChartMap {
        let lin = linalg::matmul(&self.linear, &other.linear);
        let mut off = linalg::matvec(&self.linear, &other.offset);
        for (a, b) in off.iter_mut().zip(&self.offset) {
            *a += b;
        }
        AffineChartMap { linear: lin, offset: off }
    }

    pub fn inverse(&self) -> Result<AffineChartMap> {
        let inv = linalg::inverse(&self.linear).ok_or_else(|| Error::NotInvertible("affine map".into()))?;
        let off = linalg::matvec(&inv, &self.offset).into_iter().map(|x| -x).collect();
        Ok(AffineChartMap { linear: inv, offset: off })
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        let mut y = linalg::matvec(&self.linear, x);
        for (a, b) in y.iter_mut().zip(&self.offset) {
            *a += b;
        }
        y
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineChartMap::identity(self.offset.len())
    }
}

/// `psi0 o rho0(g) o psi0^{-1}` for `g` fixing the point at infinity; the
/// result must be affine.
pub fn psi_chart_matrix(g: &CMatrix) -> Result<AffineChartMap> {
    let n = g.dim() - 2;
    let nvars = 2 * n + 1;
    let mut nsq = Poly::zero(nvars);
    let mut lift = Vec::with_capacity(n + 2);
    lift.push(CPoly::zero(nvars));
    for j in 0..n {
        let re = Poly::var(nvars, 2 * j + 1);
        let im = Poly::var(nvars, 2 * j + 2);
        nsq = &nsq + &(&(&re * &re) + &(&im * &im));
        lift.push(CPoly::from_parts(re, im));
    }
    lift[0] = CPoly::from_parts(nsq.scale(&qf(-1, 2)), Poly::var(nvars, 0));
    lift.push(CPoly::constant(nvars, &CQ::one()));
    let gz = apply_matrix(g, &lift, u32::MAX);
    let last = &gz[n + 1];
    let c = last.constant_term();
    if *last != CPoly::constant(nvars, &c) {
        return Err(Error::Precondition("transformation does not fix the point at infinity".into()));
    }
    let cinv = c.recip().ok_or_else(|| Error::Precondition("degenerate transformation".into()))?;
    let mut comps = vec![gz[0].scale(&cinv).im];
    for zj in &gz[1..=n] {
        let w = zj.scale(&cinv);
        comps.push(w.re);
        comps.push(w.im);
    }
    let mut linear = linalg::zeros(nvars, nvars);
    let mut offset = vec![Q::zero(); nvars];
    for (i, p) in comps.iter().enumerate() {
        for (m, coef) in p.terms() {
            match m.degree() {
                0 => offset[i] = coef.clone(),
                1 => linear[i][m.exps().iter().position(|&e| e == 1).unwrap()] = coef.clone(),
                _ => return Err(Error::Precondition(format!("chart action is not affine: term {m}"))),
            }
        }
    }
    Ok(AffineChartMap { linear, offset })
}

pub fn psi_chart_action(w: &Word, lat: &LatticePresentation) -> Result<AffineChartMap> {
    let g = evaluate_word(w, lat)?;
    psi_chart_matrix(&g.to_matrix(&lat.kq()))
}

/// Data of the affine generator actions: `b_i: (x_0, x) -> (x_0 - <u_i, x>, x + v_i)`
/// and `c: (x_0, x) -> (x_0 - t, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartAffineData {
    pub u: Vec<Vec<Q>>,
    pub v: Vec<Vec<Q>>,
    pub t: Q,
}

fn generator_word(g: Gen) -> Word {
    Word(vec![crate::heisenberg::Letter { gen: g, exp: 1 }])
}

/// Extracts `(u_i, v_i, t)` and checks the generator maps have the expected shape.
pub fn chart_affine_data(lat: &LatticePresentation) -> Result<ChartAffineData> {
    let n = lat.n;
    let d = 2 * n + 1;
    let k = lat.kq();
    let shape_err = |what: &str| Error::Precondition(format!("{what} does not act in the expected affine shape"));
    let a = psi_chart_action(&generator_word(Gen::A), lat)?;
    let mut a_expect = AffineChartMap::identity(d);
    a_expect.linear[0][0] = qpow(&k, 2);
    for i in 1..d {
        a_expect.linear[i][i] = k.clone();
    }
    if a != a_expect {
        return Err(shape_err("a"));
    }
    let mut u = Vec::new();
    let mut v = Vec::new();
    for i in 1..d {
        let b = psi_chart_action(&generator_word(Gen::B(i)), lat)?;
        let ui: Vec<Q> = b.linear[0][1..].iter().map(|x| -x.clone()).collect();
        let vi: Vec<Q> = b.offset[1..].to_vec();
        let mut expect = AffineChartMap::identity(d);
        for j in 1..d {
            expect.linear[0][j] = -ui[j - 1].clone();
            expect.offset[j] = vi[j - 1].clone();
        }
        if b != expect {
            return Err(shape_err("b_i"));
        }
        u.push(ui);
        v.push(vi);
    }
    let c = psi_chart_action(&generator_word(Gen::C), lat)?;
    let t = -c.offset[0].clone();
    let mut expect = AffineChartMap::identity(d);
    expect.offset[0] = -t.clone();
    if c != expect {
        return Err(shape_err("c"));
    }
    Ok(ChartAffineData { u, v, t })
}

/// Action of a word obtained by composing the extracted generator maps.
pub fn affine_word_action(w: &Word, data: &ChartAffineData, k: &Q) -> Result<AffineChartMap> {
    let d = data.u.len() + 1;
    let gen_map = |g: Gen| -> Result<AffineChartMap> {
        let mut m = AffineChartMap::identity(d);
        match g {
            Gen::A => {
                m.linear[0][0] = qpow(k, 2);
                for i in 1..d {
                    m.linear[i][i] = k.clone();
                }
            }
            Gen::B(i) => {
                if i == 0 || i >= d {
                    return Err(Error::Parse(format!("generator b{i} out of range")));
                }
                for j in 1..d {
                    m.linear[0][j] = -data.u[i - 1][j - 1].clone();
                    m.offset[j] = data.v[i - 1][j - 1].clone();
                }
            }
            Gen::C => m.offset[0] = -data.t.clone(),
        }
        Ok(m)
    };
    let mut acc = AffineChartMap::identity(d);
    for (g, inv) in w.expanded() {
        let mut m = gen_map(g)?;
        if inv {
            m = m.inverse()?;
        }
        acc = acc.compose(&m);
    }
    Ok(acc)
}

/// Vector `u_i` of the linear part of the `b_i`-jet, i.e. the `x_{2n+1}`
/// column of its first `2n` components.
pub fn jet_u_vector(jet: &JetTransformation) -> Vec<Q> {
    let nvars = jet.nvars();
    let last = Monomial::var(nvars, nvars - 1);
    jet.comps()[..nvars - 1].iter().map(|p| p.coeff(&last)).collect()
}

/// Multiplication by `i` applied to `xi`, in real coordinates.
pub fn i_times(xi: &[CQ]) -> Vec<Q> {
    real_from_complex(&xi.iter().map(|c| &CQ::i() * c).collect::<Vec<_>>())
}
