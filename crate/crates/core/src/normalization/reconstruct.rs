use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jetgroup::JetTransformation;
use crate::scalar::{q, qpow};

/// Recovers `F` in `Q_r` from its low levels using `I(k) o F o I(k)^{-1} = F^m`.
///
/// At level `q` the relation reads `k^q F^(q) = m F^(q) + Phi_q(F_{<q})`,
/// where `Phi_q` is the level-`q` part of the `m`-th power of the lower
/// levels. Levels up to `low.r()` are taken from `low` and checked whenever
/// `k^q != m`; higher levels are solved, which requires `k^q != m`.
pub fn reconstruct_from_low_order(k: i64, low: &JetTransformation, m: u32, r: u32) -> Result<JetTransformation> {
    if k < 2 || m < 2 {
        return Err(Error::Precondition("need k >= 2 and m >= 2".into()));
    }
    if low.has_level_minus_one() || !low.level_zero().is_identity() {
        return Err(Error::Precondition("low-order data must have identity level-0 part".into()));
    }
    if r < low.r() {
        return Err(Error::Precondition("target order below the supplied order".into()));
    }
    let kq = q(k);
    let mq = q(m as i64);
    let mut f = JetTransformation::from_components(r, low.comps().to_vec())?;
    for level in 1..=r {
        let scale = qpow(&kq, level as i64) - &mq;
        let lower = f.with_level(level as i32, &crate::gradedpoly::PolyVectorField::zero(f.n()))?.project(level)?;
        let phi = lower.power(m)?.displacement().level_part(level as i32);
        if level <= low.r() {
            if scale.is_zero() {
                continue;
            }
            let given = f.level_part(level as i32);
            if given.scale(&scale) != phi {
                return Err(Error::NoSolution(format!("supplied level {level} violates the conjugation relation")));
            }
            continue;
        }
        if scale.is_zero() {
            return Err(Error::SingularLevel { level: level as i32 });
        }
        f = f.with_level(level as i32, &phi.scale(&scale.recip()))?;
    }
    Ok(f)
}
