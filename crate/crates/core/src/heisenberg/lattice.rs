use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::group::{phi, ANElement, HeisenbergElement};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{q, Q, CQ};

/// Presentation data of a lattice `Gamma = <a, b_i, c>` in `A N` together
/// with its embedding: `b_i = exp(xi_i, 0)`, `c = exp(0, tau)`, `a = diag(k, I, 1/k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePresentation {
    pub n: usize,
    pub m: Vec<Vec<i64>>,
    pub k: i64,
    pub tau: Q,
    pub xi: Vec<Vec<CQ>>,
}

/// `C^n` vector from real coordinates `(re_1, im_1, ..., re_n, im_n)`.
pub fn complex_from_real(v: &[Q]) -> Vec<CQ> {
    v.chunks(2).map(|c| CQ::new(c[0].clone(), c[1].clone())).collect()
}

pub fn real_from_complex(z: &[CQ]) -> Vec<Q> {
    z.iter().flat_map(|c| [c.re.clone(), c.im.clone()]).collect()
}

/// Multiplication by `i` on `C^n` in real coordinates.
pub fn complex_structure(n: usize) -> Matrix {
    let mut j = linalg::zeros(2 * n, 2 * n);
    for b in 0..n {
        j[2 * b][2 * b + 1] = q(-1);
        j[2 * b + 1][2 * b] = q(1);
    }
    j
}

/// Builds the embedding for an integer skew matrix `m` with nonzero
/// determinant: finds rational `xi_1..xi_{2n}` with
/// `tau m_ij = -2 Phi(xi_i, xi_j)`, i.e. `tau m = -2 G^T J G`.
pub fn build_lattice_embedding(m: &[Vec<i64>], k: i64, tau: Q) -> Result<LatticePresentation> {
    let d = m.len();
    if d == 0 || d % 2 != 0 || m.iter().any(|r| r.len() != d) {
        return Err(Error::Precondition("m must be a nonempty 2n x 2n matrix".into()));
    }
    if (0..d).any(|i| (0..d).any(|j| m[i][j] != -m[j][i])) {
        return Err(Error::Precondition("m must be skew-symmetric".into()));
    }
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2".into()));
    }
    if tau.is_zero() {
        return Err(Error::Precondition("tau must be nonzero".into()));
    }
    let mq: Matrix = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    if linalg::det(&mq).is_zero() {
        return Err(Error::Precondition("m must be nondegenerate".into()));
    }
    let half = -&tau / q(2);
    let s: Matrix = mq.iter().map(|r| r.iter().map(|x| x * &half).collect()).collect();
    let p = darboux_basis(&s);
    let g = linalg::inverse(&p).ok_or_else(|| Error::NoSolution("degenerate Darboux basis".into()))?;
    let n = d / 2;
    let xi = (0..d)
        .map(|col| {
            let v: Vec<Q> = g.iter().map(|row| row[col].clone()).collect();
            complex_from_real(&v)
        })
        .collect();
    let lat = LatticePresentation { n, m: m.to_vec(), k, tau, xi };
    debug_assert!(lat.embedding_consistent());
    Ok(lat)
}

fn form(s: &Matrix, u: &[Q], v: &[Q]) -> Q {
    let sv = linalg::matvec(s, v);
    u.iter().zip(&sv).fold(Q::zero(), |acc, (a, b)| acc + a * b)
}

/// Columns `p_1, q_1, ..., p_n, q_n` with `P^T S P = J`.
fn darboux_basis(s: &Matrix) -> Matrix {
    let d = s.len();
    let mut pool: Vec<Vec<Q>> = linalg::identity(d);
    let mut cols: Vec<Vec<Q>> = Vec::with_capacity(d);
    while let Some(p) = pool.first().cloned() {
        pool.remove(0);
        let idx = pool
            .iter()
            .position(|v| !form(s, &p, v).is_zero())
            .expect("nondegenerate form pairs every vector");
        let v = pool.remove(idx);
        let f = -form(s, &p, &v).recip();
        let qv: Vec<Q> = v.iter().map(|x| x * &f).collect();
        for w in pool.iter_mut() {
            let beta = form(s, &p, w);
            let alpha = -form(s, &qv, w);
            for ((x, a), b) in w.iter_mut().zip(&p).zip(&qv) {
                *x += &alpha * a + &beta * b;
            }
        }
        cols.push(p);
        cols.push(qv);
    }
    linalg::transpose(&cols)
}

impl LatticePresentation {
    pub fn standard(n: usize, k: i64) -> Self {
        let mut m = vec![vec![0; 2 * n]; 2 * n];
        for j in 0..n {
            m[2 * j][2 * j + 1] = 1;
            m[2 * j + 1][2 * j] = -1;
        }
        build_lattice_embedding(&m, k, q(2)).expect("standard data is valid")
    }

    pub fn kq(&self) -> Q {
        q(self.k)
    }

    /// Checks `tau m_ij = -2 Phi(xi_i, xi_j)`, the condition for the
    /// commutator relators.
    pub fn embedding_consistent(&self) -> bool {
        let d = 2 * self.n;
        (0..d).all(|i| (0..d).all(|j| &self.tau * q(self.m[i][j]) == phi(&self.xi[i], &self.xi[j]) * q(-2)))
    }

    pub fn generator(&self, g: Gen) -> Result<ANElement> {
        Ok(match g {
            Gen::A => ANElement { p: 1, h: HeisenbergElement::identity(self.n) },
            Gen::B(i) => {
                if i == 0 || i > 2 * self.n {
                    return Err(Error::Parse(format!("generator b{i} out of range")));
                }
                ANElement { p: 0, h: HeisenbergElement::new(self.xi[i - 1].clone(), Q::zero()) }
            }
            Gen::C => ANElement {
                p: 0,
                h: HeisenbergElement::new(vec![CQ::zero(); self.n], self.tau.clone()),
            },
        })
    }

    /// The relators of the presentation, labelled.
    pub fn relators(&self) -> Vec<(String, Word)> {
        let d = 2 * self.n;
        let mut out = Vec::new();
        let l = |gen, exp| Letter { gen, exp };
        for i in 1..=d {
            out.push((
                format!("a b{i} a^-1 = b{i}^{}", self.k),
                Word(vec![l(Gen::A, 1), l(Gen::B(i), 1), l(Gen::A, -1), l(Gen::B(i), -self.k)]),
            ));
        }
        out.push((
            format!("a c a^-1 = c^{}", self.k * self.k),
            Word(vec![l(Gen::A, 1), l(Gen::C, 1), l(Gen::A, -1), l(Gen::C, -self.k * self.k)]),
        ));
        for i in 1..=d {
            for j in i + 1..=d {
                let mut w = vec![l(Gen::B(i), 1), l(Gen::B(j), 1), l(Gen::B(i), -1), l(Gen::B(j), -1)];
                if self.m[i - 1][j - 1] != 0 {
                    w.push(l(Gen::C, -self.m[i - 1][j - 1]));
                }
                out.push((format!("[b{i}, b{j}] = c^{}", self.m[i - 1][j - 1]), Word(w)));
            }
        }
        out
    }
}

/// Generator of the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B(usize),
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub exp: i64,
}

/// Word in the generators, e.g. `a b1 a^-1 b1^-2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, o: &Word) -> Word {
        Word(self.0.iter().chain(&o.0).copied().collect())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| Letter { gen: l.gen, exp: -l.exp }).collect())
    }

    /// Each letter as a single generator or inverse generator.
    pub fn expanded(&self) -> Vec<(Gen, bool)> {
        self.0
            .iter()
            .flat_map(|l| std::iter::repeat((l.gen, l.exp < 0)).take(l.exp.unsigned_abs() as usize))
            .collect()
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Word> {
        tokens.iter().map(|t| parse_letter(t.as_ref())).collect::<Result<_>>().map(Word)
    }
}

fn parse_letter(tok: &str) -> Result<Letter> {
    let bad = || Error::Parse(format!("bad letter {tok:?}"));
    let (g, e) = match tok.split_once('^') {
        Some((g, e)) => (g, e.parse::<i64>().map_err(|_| bad())?),
        None => (tok, 1),
    };
    let gen = match g {
        "a" => Gen::A,
        "c" => Gen::C,
        _ => {
            let idx = g.strip_prefix('b').ok_or_else(bad)?;
            Gen::B(idx.parse::<usize>().map_err(|_| bad())?)
        }
    };
    Ok(Letter { gen, exp: e })
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        Word::from_tokens(&toks)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::A => write!(f, "a"),
            Gen::B(i) => write!(f, "b{i}"),
            Gen::C => write!(f, "c"),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if l.exp == 1 { l.gen.to_string() } else { format!("{}^{}", l.gen, l.exp) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Product of the word's letters in `A N`.
pub fn evaluate_word(w: &Word, lat: &LatticePresentation) -> Result<ANElement> {
    let k = lat.kq();
    let mut acc = ANElement::identity(lat.n);
    for (g, inv) in w.expanded() {
        let mut x = lat.generator(g)?;
        if inv {
            x = x.inverse(&k);
        }
        acc = acc.product(&x, &k)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qf;

    #[test]
    fn standard_embedding_is_the_coordinate_basis() {
        let lat = build_lattice_embedding(&[vec![0, 1], vec![-1, 0]], 2, q(2)).unwrap();
        assert_eq!(lat.xi, vec![vec![CQ::one()], vec![CQ::i()]]);
        let lat = build_lattice_embedding(&[vec![0, 2], vec![-2, 0]], 2, q(4)).unwrap();
        assert_eq!(lat.xi, vec![vec![CQ::one()], vec![CQ::imag(q(4))]]);
    }

    #[test]
    fn invalid_presentations() {
        assert!(build_lattice_embedding(&[vec![0, 1], vec![1, 0]], 2, q(2)).is_err());
        assert!(build_lattice_embedding(&[vec![0, 0], vec![0, 0]], 2, q(2)).is_err());
        assert!(build_lattice_embedding(&[vec![0, 1], vec![-1, 0]], 1, q(2)).is_err());
    }

    #[test]
    fn relators_evaluate_to_identity() {
        let ms = [
            vec![vec![0, 1], vec![-1, 0]],
            vec![vec![0, -3], vec![3, 0]],
            vec![vec![0, 1, 2, 0], vec![-1, 0, 1, 1], vec![-2, -1, 0, 3], vec![0, -1, -3, 0]],
        ];
        for m in &ms {
            for k in [2, 3] {
                for tau in [q(2), qf(1, 3)] {
                    let lat = build_lattice_embedding(m, k, tau).unwrap();
                    assert!(lat.embedding_consistent());
                    for (name, w) in lat.relators() {
                        assert!(evaluate_word(&w, &lat).unwrap().is_identity(), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn word_parsing() {
        let w: Word = "a b1 a^-1 b1^-2".parse().unwrap();
        assert_eq!(w.to_string(), "a b1 a^-1 b1^-2");
        assert!(evaluate_word(&w, &LatticePresentation::standard(1, 2)).unwrap().is_identity());
        assert!("a x1".parse::<Word>().is_err());
        assert!(evaluate_word(&"b3".parse().unwrap(), &LatticePresentation::standard(1, 2)).is_err());
    }
}
