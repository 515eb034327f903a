//! Integer Laurent polynomials in a bounded number of variables.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Maximum number of torus variables across all factors of a group.
pub const MAX_VARS: usize = 16;

/// An exponent vector. Ordering is lexicographic, so the largest key of a
/// polynomial is its lex-leading monomial.
pub type Mono = [i8; MAX_VARS];

pub const ZERO_MONO: Mono = [0; MAX_VARS];

/// Unit vector `± e_i`.
pub fn unit(i: usize, sign: i8) -> Mono {
    let mut m = ZERO_MONO;
    m[i] = sign;
    m
}

/// Exponent-wise sum. Exponents are bounded by degree caps enforced at the
/// API boundary, so overflow is a logic error.
#[inline]
pub fn mono_add(a: &Mono, b: &Mono) -> Mono {
    let mut out = *a;
    for (o, x) in out.iter_mut().zip(b.iter()) {
        *o = o.checked_add(*x).expect("exponent overflow");
    }
    out
}

#[inline]
pub fn mono_neg(a: &Mono) -> Mono {
    a.map(|x| -x)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<Mono, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(ZERO_MONO, 1)
    }

    pub fn monomial(m: Mono, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(ZERO_MONO, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &i64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Mono, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    /// `self += c * x^shift * other`.
    pub fn add_shifted(&mut self, other: &Laurent, shift: &Mono, c: i64) {
        for (m, a) in &other.terms {
            self.add_term(mono_add(m, shift), a * c);
        }
    }

    pub fn add_assign(&mut self, other: &Laurent) {
        self.add_shifted(other, &ZERO_MONO, 1);
    }

    pub fn sub_assign(&mut self, other: &Laurent) {
        self.add_shifted(other, &ZERO_MONO, -1);
    }

    pub fn scaled(&self, c: i64) -> Laurent {
        let mut out = Laurent::zero();
        out.add_shifted(self, &ZERO_MONO, c);
        out
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut out = Laurent::zero();
        for (m, c) in &small.terms {
            out.add_shifted(big, m, *c);
        }
        out
    }

    /// Lex-leading term.
    pub fn lead(&self) -> Option<(Mono, i64)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, *c))
    }

    /// Value at the identity of the torus.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Substitutes `x_i -> s_i x_i` for signs `s_i`.
    pub fn sign_substituted(&self, flip: &[bool]) -> Laurent {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            let odd = flip.iter().zip(m.iter()).filter(|(f, e)| **f && **e % 2 != 0).count();
            out.add_term(*m, if odd % 2 == 0 { *c } else { -*c });
        }
        out
    }

    /// Applies `f` to every term, dropping those it maps to `None`.
    pub fn filter_map(&self, mut f: impl FnMut(&Mono, i64) -> Option<(Mono, i64)>) -> Laurent {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            if let Some((m2, c2)) = f(m, *c) {
                out.add_term(m2, c2);
            }
        }
        out
    }
}

/// An eigenvalue `sign * x^mono` of a torus element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Eigen {
    pub sign: i64,
    pub mono: Mono,
}

/// Characters of `Sym^0 .. Sym^dmax` of the module with the given
/// eigenvalues, via `prod 1/(1 - e x)`.
pub fn sym_powers(eigs: &[Eigen], dmax: usize) -> Vec<Laurent> {
    let mut h = vec![Laurent::zero(); dmax + 1];
    h[0] = Laurent::one();
    for e in eigs {
        for d in 1..=dmax {
            let (lo, hi) = h.split_at_mut(d);
            hi[0].add_shifted(&lo[d - 1], &e.mono, e.sign);
        }
    }
    h
}

/// Determinant of a small square matrix of Laurent polynomials, by
/// cofactor expansion along the first row.
pub fn det(m: &[Vec<Laurent>]) -> Laurent {
    let n = m.len();
    match n {
        0 => Laurent::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut out = Laurent::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Laurent>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = m[0][j].mul(&det(&minor));
                if j % 2 == 0 {
                    out.add_assign(&term);
                } else {
                    out.sub_assign(&term);
                }
            }
            out
        }
    }
}

/// Guard for exponent range: degrees above this could overflow `i8`.
pub fn check_degree(dmax: usize) -> Result<()> {
    if dmax > 60 {
        return Err(Error::TooLarge(format!("degree cap {dmax} exceeds 60")));
    }
    Ok(())
}
