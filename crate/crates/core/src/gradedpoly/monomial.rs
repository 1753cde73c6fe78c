use std::fmt;

use smallvec::SmallVec;

/// Weight of variable `i` among `nvars`: the last variable has weight two,
/// every other variable weight one.
#[inline]
pub fn var_weight(i: usize, nvars: usize) -> u32 {
    if i + 1 == nvars {
        2
    } else {
        1
    }
}

/// Exponent vector of a monomial in `x_1, ..., x_{2n+1}`.
///
/// The derived ordering compares weighted degree first and then the exponent
/// vectors lexicographically, which is the canonical term order everywhere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    wdeg: u32,
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn new(exps: &[u16]) -> Self {
        let nvars = exps.len();
        let wdeg = exps
            .iter()
            .enumerate()
            .map(|(i, &e)| var_weight(i, nvars) * e as u32)
            .sum();
        Monomial { wdeg, exps: SmallVec::from_slice(exps) }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { wdeg: 0, exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.wdeg = var_weight(i, nvars);
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn weighted_degree(&self) -> u32 {
        self.wdeg
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.wdeg == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), o.nvars());
        let exps = self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect();
        Monomial { wdeg: self.wdeg + o.wdeg, exps }
    }

    /// Divides by `x_i`, returning the old exponent of `x_i`.
    pub fn div_var(&self, i: usize) -> Option<(u16, Monomial)> {
        let e = self.exps[i];
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.wdeg -= var_weight(i, self.nvars());
        Some((e, m))
    }

    /// Index of the last variable with a positive exponent.
    pub fn last_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// All monomials of weighted degree `d`, in canonical order.
    pub fn of_weighted_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            let nvars = cur.len();
            if i == nvars {
                if left == 0 {
                    out.push(Monomial::new(cur));
                }
                return;
            }
            let w = var_weight(i, nvars);
            if i + 1 == nvars {
                if left % w == 0 {
                    cur[i] = (left / w) as u16;
                    out.push(Monomial::new(cur));
                    cur[i] = 0;
                }
                return;
            }
            for e in 0..=left / w {
                cur[i] = e as u16;
                rec(i + 1, left - e * w, cur, out);
            }
            cur[i] = 0;
        }
        if nvars > 0 {
            rec(0, d, &mut cur, &mut out);
        } else if d == 0 {
            out.push(Monomial::one(0));
        }
        out.sort();
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
