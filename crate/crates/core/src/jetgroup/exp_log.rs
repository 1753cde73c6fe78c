use num_traits::One;

use super::jet::JetTransformation;
use crate::error::{Error, Result};
use crate::gradedpoly::{var_weight, Poly, PolyVectorField};
use crate::scalar::Q;

fn check_positive_levels(d: &PolyVectorField) -> Result<()> {
    match d.min_level() {
        Some(l) if l < 1 => Err(Error::LevelViolation(format!(
            "element of q_r must have levels >= 1, found level {l}"
        ))),
        _ => Ok(()),
    }
}

/// Bracket in the truncated Lie algebra `q_r`.
pub fn bracket_truncated(a: &PolyVectorField, b: &PolyVectorField, r: u32) -> PolyVectorField {
    a.lie_bracket(b).truncate_level(r as i32)
}

/// Time-one flow of `d` as an element of `Q_r`: `x_i -> sum_j D^j(x_i) / j!`.
pub fn jet_exp(d: &PolyVectorField, r: u32) -> Result<JetTransformation> {
    check_positive_levels(d)?;
    let d = d.truncate_level(r as i32);
    let nvars = d.nvars();
    let mut comps = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let bound = r + var_weight(i, nvars);
        let mut term = Poly::var(nvars, i);
        let mut acc = term.clone();
        let mut fact = Q::one();
        for j in 1..=r {
            term = d.derive_truncated(&term, bound).truncate(bound);
            if term.is_zero() {
                break;
            }
            fact *= Q::from_integer(j.into());
            acc = &acc + &term.scale(&fact.recip());
        }
        comps.push(acc);
    }
    JetTransformation::from_components(r, comps)
}

/// Logarithm of an element of `Q_r`, solved level by level.
pub fn jet_log(f: &JetTransformation) -> Result<PolyVectorField> {
    if f.has_level_minus_one() || !f.level_zero().is_identity() {
        return Err(Error::LevelViolation("logarithm is defined on Q_r only".into()));
    }
    let r = f.r();
    let target = f.displacement();
    let mut d = PolyVectorField::zero(f.n());
    for q in 1..=r as i32 {
        let current = jet_exp(&d, r)?.displacement();
        let correction = &target.level_part(q) - &current.level_part(q);
        d = &d + &correction;
    }
    Ok(d)
}
