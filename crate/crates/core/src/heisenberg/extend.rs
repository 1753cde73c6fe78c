use super::lattice::LatticePresentation;
use crate::error::{Error, Result};
use crate::gradedpoly::PolyVectorField;
use crate::jetgroup::{bracket_truncated, jet_log, JetTransformation};
use crate::scalar::q;

/// Lie algebra homomorphism `n -> q_r` given on the lattice basis: `x[i]` is
/// the image of `X_i = log b_i` and `y` the image of `Y = log c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeLieHom {
    pub m: Vec<Vec<i64>>,
    pub x: Vec<PolyVectorField>,
    pub y: PolyVectorField,
    pub r: u32,
}

impl LatticeLieHom {
    /// First failing relation among `[X_i, X_j] = m_ij Y` and `[X_i, Y] = 0`,
    /// with brackets truncated at level `r`.
    pub fn first_violation(&self) -> Option<(String, String)> {
        let d = self.x.len();
        for i in 0..d {
            for j in i + 1..d {
                let br = bracket_truncated(&self.x[i], &self.x[j], self.r);
                if br != self.y.scale(&q(self.m[i][j])).truncate_level(self.r as i32) {
                    return Some((format!("X{}", i + 1), format!("X{}", j + 1)));
                }
            }
            if !bracket_truncated(&self.x[i], &self.y, self.r).is_zero() {
                return Some((format!("X{}", i + 1), "Y".into()));
            }
        }
        None
    }
}

/// Extends the images of `b_1..b_{2n}, c` in `Q_r` to a Lie algebra
/// homomorphism `n -> q_r` by taking logarithms, and checks it.
pub fn extend_lattice_hom(images: &[JetTransformation], lat: &LatticePresentation) -> Result<LatticeLieHom> {
    let d = 2 * lat.n;
    if images.len() != d + 1 {
        return Err(Error::DimensionMismatch { expected: d + 1, found: images.len() });
    }
    let r = images[0].r();
    if images.iter().any(|f| f.r() != r || f.n() != lat.n) {
        return Err(Error::Precondition("images must share dimension and truncation order".into()));
    }
    let logs = images.iter().map(jet_log).collect::<Result<Vec<_>>>()?;
    let hom = LatticeLieHom { m: lat.m.clone(), x: logs[..d].to_vec(), y: logs[d].clone(), r };
    if let Some((left, right)) = hom.first_violation() {
        return Err(Error::NotHomomorphism { left, right });
    }
    Ok(hom)
}
