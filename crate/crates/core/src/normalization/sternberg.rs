use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gradedpoly::{level_basis, Monomial, Poly, PolyVectorField, Substitution};
use crate::jetgroup::{JetTransformation, P0Element};
use crate::linalg::{self, Matrix};
use crate::scalar::{height_bits, q, Q};

/// Conjugates `F` by `L: x_{2n+1} -> x_{2n+1} + <v, x'>` so that the level -1
/// part vanishes. `F` is treated as the polynomial map given by its
/// components. Returns `(L, L o F o L^{-1})`.
pub fn kill_level_minus_one(f: &JetTransformation) -> Result<(JetTransformation, JetTransformation)> {
    let n = f.n();
    let d = 2 * n;
    let nvars = d + 1;
    let lin = f.linear_part();
    let b = lin[d][d].clone();
    let w: Vec<Q> = lin[d][..d].to_vec();
    let u: Vec<Q> = (0..d).map(|i| lin[i][d].clone()).collect();
    if w.iter().all(Zero::is_zero) {
        return Ok((JetTransformation::identity(n, f.r()), f.clone()));
    }
    // v^T (A - b I) = -w^T
    let mut at: Matrix = linalg::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            at[j][i] = lin[i][j].clone();
        }
        at[i][i] -= &b;
    }
    let rhs: Vec<Q> = w.iter().map(|x| -x.clone()).collect();
    let v = linalg::solve_square(&at, &[rhs])
        .ok_or_else(|| Error::NotInvertible("A - b I in the level -1 equation".into()))?
        .remove(0);
    let vu = v.iter().zip(&u).fold(Q::zero(), |acc, (a, c)| acc + a * c);
    if !vu.is_zero() {
        return Err(Error::NoSolution(
            "the invariant hyperplane of the linear part is not given by a linear equation; no rational conjugator of this form".into(),
        ));
    }
    let shear = |sign: i64| -> Vec<Poly> {
        (0..nvars)
            .map(|i| {
                let mut p = Poly::var(nvars, i);
                if i == d {
                    for (j, vj) in v.iter().enumerate() {
                        p.add_term(Monomial::var(nvars, j), vj * q(sign));
                    }
                }
                p
            })
            .collect()
    };
    let linv = shear(-1);
    let l = shear(1);
    let inner: Vec<Poly> = f.comps().iter().map(|p| p.compose(&linv, u32::MAX)).collect();
    let comps: Vec<Poly> = l.iter().map(|p| p.compose(&inner, u32::MAX)).collect();
    let out = JetTransformation::from_components(f.r(), comps)?;
    debug_assert!(!out.has_level_minus_one());
    Ok((JetTransformation::from_components(f.r(), l)?, out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDiagnostic {
    pub level: u32,
    pub unknowns: usize,
    pub rank: usize,
    pub max_height_bits: u64,
}

#[derive(Clone, Debug)]
pub struct NormalizationResult {
    /// The conjugating jet, with `H^(0) = id`.
    pub h: JetTransformation,
    /// The normal form `G = F^(0)`.
    pub g: JetTransformation,
    pub diagnostics: Vec<LevelDiagnostic>,
}

/// Level `q` part of `F o H - H o G`, computed from the order-`q` projections.
pub fn level_residual(f: &JetTransformation, h: &JetTransformation, g: &JetTransformation, q: u32) -> Result<PolyVectorField> {
    let fq = f.project(q)?;
    let hq = h.project(q)?;
    let gq = g.project(q)?;
    let lhs = fq.compose(&hq)?;
    let rhs = hq.compose(&gq)?;
    Ok((&lhs.displacement() - &rhs.displacement()).level_part(q as i32))
}

fn split_by_y(p: &Poly) -> BTreeMap<u16, Poly> {
    let nvars = p.nvars();
    let y = nvars - 1;
    let mut out: BTreeMap<u16, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let beta = m.exps()[y];
        let mut e = m.exps().to_vec();
        e[y] = 0;
        out.entry(beta).or_insert_with(|| Poly::zero(nvars)).add_term(Monomial::new(&e), c.clone());
    }
    out
}

fn times_y_pow(p: &Poly, beta: u16) -> Poly {
    let nvars = p.nvars();
    let mut e = vec![0u16; nvars];
    e[nvars - 1] = beta;
    p * &Poly::monomial(nvars, Monomial::new(&e), q(1))
}

fn binomial(n: u64, k: u64) -> Q {
    let mut acc = Q::from_integer(1.into());
    for i in 0..k {
        acc = acc * q((n - i) as i64) / q((i + 1) as i64);
    }
    acc
}

/// Linear data of `G` needed by the homological equation.
struct LevelOperator<'a> {
    nvars: usize,
    /// Ordering of the monomial unknowns within each block.
    order: &'a dyn Fn(usize) -> Vec<usize>,
    a: Matrix,
    b: Q,
    quad: Poly,
    /// `x' -> A x'`, `y -> 0`.
    lin_subs: Vec<Poly>,
}

impl<'a> LevelOperator<'a> {
    fn new(g: &P0Element, order: &'a dyn Fn(usize) -> Vec<usize>) -> Self {
        let d = g.a.len();
        let nvars = d + 1;
        let mut lin_subs: Vec<Poly> = g
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
        lin_subs.push(Poly::zero(nvars));
        LevelOperator { nvars, order, a: g.a.clone(), b: g.b.clone(), quad: g.quad.clone(), lin_subs }
    }

    fn x_monomials(&self, m: u32) -> Vec<Monomial> {
        let monos: Vec<Monomial> = Monomial::of_weighted_degree(self.nvars, m)
            .into_iter()
            .filter(|mono| mono.exps()[self.nvars - 1] == 0)
            .collect();
        (self.order)(monos.len()).into_iter().map(|i| monos[i].clone()).collect()
    }

    /// Contribution of the higher `y`-slices `P_{beta'}` to slice `beta` of
    /// `h o G`: `sum C(beta', beta) b^beta Q^{beta' - beta} P_{beta'}(A x')`.
    fn carry(&self, solved: &BTreeMap<u16, Vec<Poly>>, beta: u16, comps: usize, sub: &mut Substitution) -> Vec<Poly> {
        let mut out = vec![Poly::zero(self.nvars); comps];
        let bb = crate::scalar::qpow(&self.b, beta as i64);
        for (&bp, ps) in solved.range(beta + 1..) {
            let coef = binomial(bp as u64, beta as u64) * &bb;
            let qp = self.quad.pow_truncated((bp - beta) as u32, u32::MAX);
            for (o, p) in out.iter_mut().zip(ps) {
                if p.is_zero() {
                    continue;
                }
                let t = &qp * &sub.apply(p);
                *o = &*o + &t.scale(&coef);
            }
        }
        out
    }

    /// Solves `A h' - h' o G = rhs` (first `2n` components) for polynomials of
    /// weighted degree `deg`.
    fn solve_horizontal(&self, rhs: &[Poly], deg: u32, level: u32) -> Result<Vec<Poly>> {
        let d = self.a.len();
        let mut sub = Substitution::new(&self.lin_subs, u32::MAX);
        let slices: Vec<BTreeMap<u16, Poly>> = rhs.iter().map(split_by_y).collect();
        let mut solved: BTreeMap<u16, Vec<Poly>> = BTreeMap::new();
        for beta in (0..=(deg / 2) as u16).rev() {
            let m = deg - 2 * beta as u32;
            let monos = self.x_monomials(m);
            let dim = monos.len();
            let index: BTreeMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, x)| (x, i)).collect();
            let carry = self.carry(&solved, beta, d, &mut sub);
            let mut target = vec![Q::zero(); d * dim];
            for i in 0..d {
                let r = slices[i].get(&beta).cloned().unwrap_or_else(|| Poly::zero(self.nvars));
                for (mono, c) in (&r + &carry[i]).terms() {
                    target[i * dim + index[mono]] += c;
                }
            }
            let bb = crate::scalar::qpow(&self.b, beta as i64);
            let mut mat = linalg::zeros(d * dim, d * dim);
            for (al, mono) in monos.iter().enumerate() {
                let s = sub.image(mono);
                for i in 0..d {
                    let col = i * dim + al;
                    for (ip, row) in self.a.iter().enumerate() {
                        if !row[i].is_zero() {
                            mat[ip * dim + al][col] += &row[i];
                        }
                    }
                    for (mm, c) in s.terms() {
                        mat[i * dim + index[mm]][col] -= c * &bb;
                    }
                }
            }
            let sol = linalg::solve_square(&mat, &[target]).ok_or(Error::SingularLevel { level: level as i32 })?;
            let ps = (0..d)
                .map(|i| Poly::from_terms(self.nvars, monos.iter().enumerate().map(|(al, mm)| (mm.clone(), sol[0][i * dim + al].clone()))))
                .collect();
            solved.insert(beta, ps);
        }
        Ok(self.assemble(&solved, d))
    }

    /// Solves `b h_y - h_y o G = rhs` for a polynomial of weighted degree `deg`.
    fn solve_vertical(&self, rhs: &Poly, deg: u32, level: u32) -> Result<Poly> {
        let mut sub = Substitution::new(&self.lin_subs, u32::MAX);
        let slices = split_by_y(rhs);
        let mut solved: BTreeMap<u16, Vec<Poly>> = BTreeMap::new();
        for beta in (0..=(deg / 2) as u16).rev() {
            let m = deg - 2 * beta as u32;
            let monos = self.x_monomials(m);
            let dim = monos.len();
            let index: BTreeMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, x)| (x, i)).collect();
            let carry = self.carry(&solved, beta, 1, &mut sub);
            let r = slices.get(&beta).cloned().unwrap_or_else(|| Poly::zero(self.nvars));
            let mut target = vec![Q::zero(); dim];
            for (mono, c) in (&r + &carry[0]).terms() {
                target[index[mono]] += c;
            }
            let bb = crate::scalar::qpow(&self.b, beta as i64);
            let mut mat = linalg::zeros(dim, dim);
            for (al, mono) in monos.iter().enumerate() {
                mat[al][al] += &self.b;
                for (mm, c) in sub.image(mono).terms() {
                    mat[index[mm]][al] -= c * &bb;
                }
            }
            let sol = linalg::solve_square(&mat, &[target]).ok_or(Error::SingularLevel { level: level as i32 })?;
            let p = Poly::from_terms(self.nvars, monos.iter().cloned().zip(sol[0].iter().cloned()));
            solved.insert(beta, vec![p]);
        }
        Ok(self.assemble(&solved, 1).remove(0))
    }

    fn assemble(&self, solved: &BTreeMap<u16, Vec<Poly>>, comps: usize) -> Vec<Poly> {
        (0..comps)
            .map(|i| {
                solved
                    .iter()
                    .fold(Poly::zero(self.nvars), |acc, (&beta, ps)| &acc + &times_y_pow(&ps[i], beta))
            })
            .collect()
    }

    /// Solves `DG h - h o G = rhs` on level `q`.
    fn solve(&self, rhs: &PolyVectorField, q: u32) -> Result<PolyVectorField> {
        let d = self.a.len();
        let comps = rhs.comps();
        let hx = self.solve_horizontal(&comps[..d], q + 1, q)?;
        let mut ry = comps[d].clone();
        for (i, hi) in hx.iter().enumerate() {
            ry = &ry - &(&self.quad.derivative(i) * hi);
        }
        let hy = self.solve_vertical(&ry, q + 2, q)?;
        let mut all = hx;
        all.push(hy);
        PolyVectorField::from_components(all)
    }
}

fn max_height(f: &PolyVectorField) -> u64 {
    f.terms().map(|(_, _, c)| height_bits(c)).max().unwrap_or(0)
}

/// Finds the unique `H` with `H^(0) = id` and `F o H = H o F^(0)` in `P_r`,
/// solving one exact linear system per level.
pub fn sternberg_normalize(f: &JetTransformation) -> Result<NormalizationResult> {
    sternberg_normalize_ordered(f, |len| (0..len).collect())
}

/// [`sternberg_normalize`] with the monomial unknowns of every block listed
/// in the order `permute(len)`.
pub fn sternberg_normalize_ordered(f: &JetTransformation, permute: impl Fn(usize) -> Vec<usize>) -> Result<NormalizationResult> {
    if f.has_level_minus_one() {
        return Err(Error::LevelViolation("remove the level -1 part first".into()));
    }
    let n = f.n();
    let r = f.r();
    let g0 = f.level_zero();
    if !g0.is_invertible() {
        return Err(Error::NotInvertible("level-0 part".into()));
    }
    let g = g0.to_jet(n, r);
    let op = LevelOperator::new(&g0, &permute);
    let mut h = JetTransformation::identity(n, r);
    let mut diagnostics = Vec::new();
    for q in 1..=r {
        let res = level_residual(f, &h, &g, q)?;
        let piece = if res.is_zero() { res } else { op.solve(&(-&res), q)? };
        let unknowns = level_basis(n, q as i32).len();
        diagnostics.push(LevelDiagnostic {
            level: q,
            unknowns,
            rank: unknowns,
            max_height_bits: max_height(&piece),
        });
        h = h.with_level(q as i32, &piece)?;
    }
    Ok(NormalizationResult { h, g, diagnostics })
}

/// Same normalization, assembling each level's linear system by probing the
/// affine residual map on a monomial basis listed in `order`.
///
/// Much slower than [`sternberg_normalize`]; meant as an independent check.
pub fn sternberg_normalize_probing(f: &JetTransformation, permute: impl Fn(usize) -> Vec<usize>) -> Result<JetTransformation> {
    if f.has_level_minus_one() {
        return Err(Error::LevelViolation("remove the level -1 part first".into()));
    }
    let n = f.n();
    let r = f.r();
    let g = f.level_zero().to_jet(n, r);
    let mut h = JetTransformation::identity(n, r);
    for q in 1..=r {
        let base = level_basis(n, q as i32);
        let order = permute(base.len());
        let basis: Vec<_> = order.iter().map(|&i| base[i].clone()).collect();
        let r0 = level_residual(f, &h, &g, q)?;
        let mut cols = Vec::with_capacity(basis.len());
        for (comp, mono) in &basis {
            let e = PolyVectorField::basis_element(n, *comp, mono.clone());
            let hp = h.with_level(q as i32, &e)?;
            let rr = level_residual(f, &hp, &g, q)?;
            cols.push((&rr - &r0).coordinates(&basis).expect("residual stays in level q"));
        }
        let mat: Matrix = (0..basis.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let rhs: Vec<Q> = r0.coordinates(&basis).expect("level q").into_iter().map(|x| -x).collect();
        let sol = linalg::solve_square(&mat, &[rhs]).ok_or(Error::SingularLevel { level: q as i32 })?;
        h = h.with_level(q as i32, &PolyVectorField::from_coordinates(n, &basis, &sol[0]))?;
    }
    Ok(h)
}

/// `I(k)` plus coefficients drawn from `pick`, one per slot: every basis
/// monomial of levels `1..=r`, the quadratic part of the last component and
/// the entries of the linear part above the diagonal. The eigenvalues of the
/// linear part stay those of `I(k)`.
pub fn perturb_scaling(n: usize, k: i64, r: u32, mut pick: impl FnMut() -> Q) -> Result<JetTransformation> {
    let d = 2 * n;
    let nvars = d + 1;
    let mut comps = JetTransformation::scaling(n, &q(k), r).comps().to_vec();
    for (comp, mono) in level_basis(n, 0) {
        let above_diagonal = comp < d && mono.degree() == 1 && (0..comp + 1).all(|j| mono.exps()[j] == 0);
        let quadratic = comp == d && mono.exps()[d] == 0;
        if above_diagonal || quadratic {
            comps[comp].add_term(mono, pick());
        }
    }
    for level in 1..=r as i32 {
        for (comp, mono) in level_basis(n, level) {
            comps[comp].add_term(mono, pick());
        }
    }
    debug_assert_eq!(comps.len(), nvars);
    JetTransformation::from_components(r, comps)
}
