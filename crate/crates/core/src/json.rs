//! JSON wire formats. Every rational is written as the string `"p/q"`;
//! integers `"p"` are accepted on input.

use serde::{Deserialize, Serialize};

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::gradedpoly::{Monomial, Poly, PolyVectorField};
use crate::heisenberg::{build_lattice_embedding, ANElement, HeisenbergElement, LatticePresentation, Word};
use crate::jetgroup::JetTransformation;
use crate::normalization::{ContractionCertificate, LevelDiagnostic, NormalizationResult};
use crate::scalar::{format_q, parse_q, Q, CQ};
use crate::su_grading::ChartAffineData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldTerm {
    /// 0-based coordinate index.
    pub component: usize,
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

fn monomial_from(exps: &[u32], nvars: usize) -> Result<Monomial> {
    if exps.len() != nvars {
        return Err(Error::Parse(format!("expected {nvars} exponents, found {}", exps.len())));
    }
    let e: Vec<u16> = exps
        .iter()
        .map(|&x| u16::try_from(x).map_err(|_| Error::Parse(format!("exponent {x} too large"))))
        .collect::<Result<_>>()?;
    Ok(Monomial::new(&e))
}

fn exps_of(m: &Monomial) -> Vec<u32> {
    m.exps().iter().map(|&e| e as u32).collect()
}

pub fn poly_to_wire(p: &Poly) -> Vec<PolyTerm> {
    p.terms().map(|(m, c)| PolyTerm { exponents: exps_of(m), coeff: format_q(c) }).collect()
}

pub fn poly_from_wire(nvars: usize, terms: &[PolyTerm]) -> Result<Poly> {
    let mut p = Poly::zero(nvars);
    for t in terms {
        p.add_term(monomial_from(&t.exponents, nvars)?, parse_q(&t.coeff)?);
    }
    Ok(p)
}

pub fn field_to_wire(f: &PolyVectorField) -> Vec<FieldTerm> {
    f.terms().map(|(i, m, c)| FieldTerm { component: i, exponents: exps_of(m), coeff: format_q(c) }).collect()
}

pub fn field_from_wire(n: usize, terms: &[FieldTerm]) -> Result<PolyVectorField> {
    let nvars = 2 * n + 1;
    let mut f = PolyVectorField::zero(n);
    for t in terms {
        if t.component >= nvars {
            return Err(Error::Parse(format!("component {} out of range", t.component)));
        }
        f.comp_mut(t.component).add_term(monomial_from(&t.exponents, nvars)?, parse_q(&t.coeff)?);
    }
    Ok(f)
}

/// A jet as the components of the map (not the displacement).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetWire {
    pub n: usize,
    pub r: u32,
    pub terms: Vec<FieldTerm>,
}

impl JetWire {
    pub fn from_jet(f: &JetTransformation) -> Self {
        let field = PolyVectorField::from_components(f.comps().to_vec()).expect("jet components");
        JetWire { n: f.n(), r: f.r(), terms: field_to_wire(&field) }
    }

    pub fn to_jet(&self) -> Result<JetTransformation> {
        let field = field_from_wire(self.n, &self.terms)?;
        JetTransformation::from_components(self.r, field.into_components())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeWire {
    pub n: usize,
    pub m: Vec<Vec<i64>>,
    pub k: i64,
    pub tau: String,
}

impl LatticeWire {
    pub fn from_lattice(l: &LatticePresentation) -> Self {
        LatticeWire { n: l.n, m: l.m.clone(), k: l.k, tau: format_q(&l.tau) }
    }

    /// Builds the presentation, including its embedding into the Heisenberg group.
    pub fn to_lattice(&self) -> Result<LatticePresentation> {
        if self.m.len() != 2 * self.n {
            return Err(Error::DimensionMismatch { expected: 2 * self.n, found: self.m.len() });
        }
        build_lattice_embedding(&self.m, self.k, parse_q(&self.tau)?)
    }
}

pub fn word_to_wire(w: &Word) -> Vec<String> {
    w.to_string().split_whitespace().map(str::to_string).collect()
}

pub fn word_from_wire(tokens: &[String]) -> Result<Word> {
    Word::from_tokens(tokens)
}

pub type ComplexWire = [String; 2];

fn cq_to_wire(z: &CQ) -> ComplexWire {
    [format_q(&z.re), format_q(&z.im)]
}

fn cq_from_wire(z: &ComplexWire) -> Result<CQ> {
    Ok(CQ::new(parse_q(&z[0])?, parse_q(&z[1])?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ANElementWire {
    pub p: i64,
    pub z: Vec<ComplexWire>,
    pub t: String,
}

impl ANElementWire {
    pub fn from_element(g: &ANElement) -> Self {
        ANElementWire { p: g.p, z: g.h.z.iter().map(cq_to_wire).collect(), t: format_q(&g.h.t) }
    }

    pub fn to_element(&self) -> Result<ANElement> {
        let z = self.z.iter().map(cq_from_wire).collect::<Result<Vec<_>>>()?;
        Ok(ANElement { p: self.p, h: HeisenbergElement::new(z, parse_q(&self.t)?) })
    }
}

/// Row-major grid of complex entries.
pub fn matrix_to_wire(m: &CMatrix) -> Vec<Vec<ComplexWire>> {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| cq_to_wire(m.get(i, j))).collect()).collect()
}

pub fn matrix_from_wire(rows: &[Vec<ComplexWire>]) -> Result<CMatrix> {
    let parsed = rows
        .iter()
        .map(|r| {
            if r.len() != rows.len() {
                return Err(Error::Parse("matrix must be square".into()));
            }
            r.iter().map(cq_from_wire).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CMatrix::from_rows(parsed))
}

fn qs(v: &[Q]) -> Vec<String> {
    v.iter().map(format_q).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartAffineDataWire {
    pub u: Vec<Vec<String>>,
    pub v: Vec<Vec<String>>,
    pub t: String,
}

impl ChartAffineDataWire {
    pub fn from_data(d: &ChartAffineData) -> Self {
        ChartAffineDataWire {
            u: d.u.iter().map(|x| qs(x)).collect(),
            v: d.v.iter().map(|x| qs(x)).collect(),
            t: format_q(&d.t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticWire {
    pub level: u32,
    pub unknowns: usize,
    pub rank: usize,
    pub max_height_bits: u64,
}

impl From<&LevelDiagnostic> for DiagnosticWire {
    fn from(d: &LevelDiagnostic) -> Self {
        DiagnosticWire { level: d.level, unknowns: d.unknowns, rank: d.rank, max_height_bits: d.max_height_bits }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationWire {
    #[serde(rename = "H")]
    pub h: JetWire,
    #[serde(rename = "G")]
    pub g: JetWire,
    pub diagnostics: Vec<DiagnosticWire>,
}

impl From<&NormalizationResult> for NormalizationWire {
    fn from(r: &NormalizationResult) -> Self {
        NormalizationWire {
            h: JetWire::from_jet(&r.h),
            g: JetWire::from_jet(&r.g),
            diagnostics: r.diagnostics.iter().map(DiagnosticWire::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateWire {
    pub k: i64,
    pub lambda: String,
    pub eps: String,
    pub c1: String,
    pub c2: String,
    pub holds: bool,
    pub generators: Vec<GeneratorWire>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorWire {
    pub m: i64,
    pub u_norm: String,
    pub op_norm: String,
    pub co_norm: String,
    pub threshold: String,
}

impl CertificateWire {
    pub fn new(k: i64, lambda: &Q, eps: &Q, c: &ContractionCertificate) -> Self {
        CertificateWire {
            k,
            lambda: format_q(lambda),
            eps: format_q(eps),
            c1: format_q(&c.c1),
            c2: format_q(&c.c2),
            holds: c.holds(),
            generators: c
                .generators
                .iter()
                .map(|g| GeneratorWire {
                    m: g.m,
                    u_norm: format_q(&g.u_norm),
                    op_norm: format_q(&g.op_norm),
                    co_norm: format_q(&g.co_norm),
                    threshold: format_q(&g.threshold),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    #[test]
    fn field_round_trip() {
        let mut f = PolyVectorField::zero(1);
        f.comp_mut(0).add_term(Monomial::new(&[1, 1, 0]), qf(-3, 7));
        f.comp_mut(2).add_term(Monomial::new(&[0, 0, 2]), q(5));
        let wire = field_to_wire(&f);
        let text = serde_json::to_string(&wire).unwrap();
        assert!(text.contains("\"-3/7\"") && text.contains("\"5/1\""));
        let back: Vec<FieldTerm> = serde_json::from_str(&text).unwrap();
        assert_eq!(field_from_wire(1, &back).unwrap(), f);
        assert_eq!(serde_json::to_string(&field_to_wire(&field_from_wire(1, &back).unwrap())).unwrap(), text);
    }

    #[test]
    fn rejects_bad_terms() {
        let bad = vec![FieldTerm { component: 3, exponents: vec![0, 0, 0], coeff: "1".into() }];
        assert!(field_from_wire(1, &bad).is_err());
        let bad = vec![FieldTerm { component: 0, exponents: vec![0, 0], coeff: "1".into() }];
        assert!(field_from_wire(1, &bad).is_err());
        let bad = vec![FieldTerm { component: 0, exponents: vec![1, 0, 0], coeff: "1/0".into() }];
        assert!(field_from_wire(1, &bad).is_err());
    }

    #[test]
    fn jet_and_lattice_round_trip() {
        let j = JetTransformation::scaling(2, &q(3), 4);
        let w = JetWire::from_jet(&j);
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<JetWire>(&text).unwrap().to_jet().unwrap(), j);
        let lat = LatticePresentation::standard(2, 2);
        let lw = LatticeWire::from_lattice(&lat);
        assert_eq!(lw.to_lattice().unwrap(), lat);
        let g = lat.generator(crate::heisenberg::Gen::B(2)).unwrap();
        let gw = ANElementWire::from_element(&g);
        assert_eq!(gw.to_element().unwrap(), g);
        let w: Word = "a b1 a^-1 b1^-2".parse().unwrap();
        assert_eq!(word_from_wire(&word_to_wire(&w)).unwrap(), w);
    }
}
