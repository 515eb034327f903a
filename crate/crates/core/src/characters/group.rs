//! Products of compact unitary and orthogonal groups, and their formal
//! characters.
//!
//! A class function on `O(b)` is determined by its values on two families
//! of torus elements, one per connected component. A character is
//! therefore stored as one Laurent polynomial per *sector*: a choice, for
//! every orthogonal factor, of the identity or the non-identity component.
//! The non-identity component of `O(b)` is represented by
//! `diag(R(θ_1), .., R(θ_k), -1)` for odd `b` and
//! `diag(R(θ_1), .., R(θ_{k}), 1, -1)` for even `b`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::laurent::{mono_add, unit, Eigen, Laurent, Mono, MAX_VARS, ZERO_MONO};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    U(usize),
    O(usize),
}

impl Factor {
    pub fn is_disconnected(self) -> bool {
        matches!(self, Factor::O(b) if b >= 1)
    }

    /// Torus rank on the identity (`coset = false`) or other component.
    pub fn vars(self, coset: bool) -> usize {
        match self {
            Factor::U(a) => a,
            Factor::O(b) if !coset => b / 2,
            Factor::O(b) if b % 2 == 1 => b / 2,
            Factor::O(b) => b / 2 - 1,
        }
    }

    /// Eigenvalues of the standard module in local variables.
    pub fn std_eigen(self, coset: bool) -> Vec<Eigen> {
        let mut out = Vec::new();
        let k = self.vars(coset);
        match self {
            Factor::U(_) => {
                out.extend((0..k).map(|j| Eigen { sign: 1, mono: unit(j, 1) }));
            }
            Factor::O(b) => {
                for j in 0..k {
                    out.push(Eigen { sign: 1, mono: unit(j, 1) });
                    out.push(Eigen { sign: 1, mono: unit(j, -1) });
                }
                match (coset, b % 2 == 1) {
                    (false, true) => out.push(Eigen { sign: 1, mono: ZERO_MONO }),
                    (false, false) => {}
                    (true, true) => out.push(Eigen { sign: -1, mono: ZERO_MONO }),
                    (true, false) => {
                        out.push(Eigen { sign: 1, mono: ZERO_MONO });
                        out.push(Eigen { sign: -1, mono: ZERO_MONO });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::U(a) => write!(f, "U({a})"),
            Factor::O(b) => write!(f, "O({b})"),
        }
    }
}

/// Bit `i` set means factor `i` is evaluated on its non-identity component.
pub type Sector = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompactGroup {
    factors: Vec<Factor>,
}

impl CompactGroup {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        let g = Self { factors };
        if g.nvars(0) > MAX_VARS {
            return Err(Error::TooLarge(format!("torus rank {} exceeds {MAX_VARS}", g.nvars(0))));
        }
        if g.factors.len() > 31 {
            return Err(Error::TooLarge("more than 31 factors".into()));
        }
        Ok(g)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    fn coset(sector: Sector, i: usize) -> bool {
        sector >> i & 1 == 1
    }

    /// All sectors, identity first.
    pub fn sectors(&self) -> Vec<Sector> {
        let disc: Vec<usize> = (0..self.factors.len()).filter(|&i| self.factors[i].is_disconnected()).collect();
        (0u32..1 << disc.len())
            .map(|bits| disc.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).fold(0, |s, (_, &i)| s | 1 << i))
            .collect()
    }

    pub fn factor_vars(&self, i: usize, sector: Sector) -> usize {
        self.factors[i].vars(Self::coset(sector, i))
    }

    pub fn offset(&self, i: usize, sector: Sector) -> usize {
        (0..i).map(|k| self.factor_vars(k, sector)).sum()
    }

    pub fn nvars(&self, sector: Sector) -> usize {
        (0..self.factors.len()).map(|k| self.factor_vars(k, sector)).sum()
    }

    /// Standard-module eigenvalues of factor `i`, in the sector's global
    /// variable layout.
    pub fn std_eigen(&self, i: usize, sector: Sector) -> Vec<Eigen> {
        let off = self.offset(i, sector);
        self.factors[i]
            .std_eigen(Self::coset(sector, i))
            .into_iter()
            .map(|e| Eigen { sign: e.sign, mono: place(&e.mono, off) })
            .collect()
    }

    /// The group with factor `i` removed, and a map from old sectors to new.
    pub fn without_factor(&self, i: usize) -> (CompactGroup, impl Fn(Sector) -> Sector) {
        let mut factors = self.factors.clone();
        factors.remove(i);
        let low = (1u32 << i) - 1;
        let remap = move |s: Sector| (s & low) | ((s >> 1) & !low);
        (CompactGroup { factors }, remap)
    }
}

impl fmt::Display for CompactGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Shifts a local monomial to start at variable `off`.
pub fn place(local: &Mono, off: usize) -> Mono {
    let mut out = ZERO_MONO;
    for (j, &e) in local.iter().enumerate() {
        if e != 0 {
            out[off + j] = e;
        }
    }
    out
}

/// Extracts `len` variables starting at `off`.
pub fn extract(m: &Mono, off: usize, len: usize) -> Mono {
    let mut out = ZERO_MONO;
    out[..len].copy_from_slice(&m[off..off + len]);
    out
}

/// Character of a finite-dimensional (virtual) representation, one Laurent
/// polynomial per sector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCharacter {
    pub group: CompactGroup,
    pub sectors: BTreeMap<Sector, Laurent>,
}

impl FormalCharacter {
    pub fn zero(group: &CompactGroup) -> Self {
        let sectors = group.sectors().into_iter().map(|s| (s, Laurent::zero())).collect();
        Self { group: group.clone(), sectors }
    }

    pub fn one(group: &CompactGroup) -> Self {
        let sectors = group.sectors().into_iter().map(|s| (s, Laurent::one())).collect();
        Self { group: group.clone(), sectors }
    }

    /// Builds a character sector by sector.
    pub fn from_fn(group: &CompactGroup, mut f: impl FnMut(Sector) -> Laurent) -> Self {
        let sectors = group.sectors().into_iter().map(|s| (s, f(s))).collect();
        Self { group: group.clone(), sectors }
    }

    pub fn sector(&self, s: Sector) -> &Laurent {
        &self.sectors[&s]
    }

    /// The identity-component polynomial: weight multiplicities.
    pub fn weights(&self) -> &Laurent {
        self.sector(0)
    }

    pub fn dim(&self) -> i64 {
        self.weights().eval_at_one()
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.values().all(Laurent::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!("{} vs {}", self.group, other.group)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (s, p) in out.sectors.iter_mut() {
            p.add_assign(&other.sectors[s]);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (s, p) in out.sectors.iter_mut() {
            p.sub_assign(&other.sectors[s]);
        }
        Ok(out)
    }

    /// Tensor product of two representations of the same group.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_fn(&self.group, |s| self.sectors[&s].mul(&other.sectors[&s])))
    }

    pub fn scaled(&self, c: i64) -> Self {
        Self::from_fn(&self.group, |s| self.sectors[&s].scaled(c))
    }

    /// Character of the dual representation.
    pub fn dual(&self) -> Self {
        Self::from_fn(&self.group, |s| self.sectors[&s].filter_map(|m, c| Some((m.map(|x| -x), c))))
    }

    /// Outer tensor product `self ⊠ other` of characters of two groups.
    pub fn outer(&self, other: &Self) -> Result<Self> {
        let mut factors = self.group.factors.clone();
        factors.extend_from_slice(&other.group.factors);
        let group = CompactGroup::new(factors)?;
        let k = self.group.factors.len();
        Ok(Self::from_fn(&group, |s| {
            let (s1, s2) = (s & ((1 << k) - 1), s >> k);
            let off = self.group.nvars(s1);
            let shifted = other.sectors[&s2].filter_map(|m, c| Some((place(m, off), c)));
            self.sectors[&s1].mul(&shifted)
        }))
    }

    /// Restriction to `U(a)`-invariants of factor `i`, after twisting that
    /// factor by `det^shift`.
    pub fn unitary_invariants(&self, i: usize, shift: i64) -> Result<Self> {
        let a = match self.group.factors.get(i) {
            Some(Factor::U(a)) => *a,
            _ => return Err(Error::GroupMismatch(format!("factor {i} of {} is not unitary", self.group))),
        };
        let (group, remap) = self.group.without_factor(i);
        // Positive-root denominator prod_{j<k} (1 - z_k/z_j) in local variables.
        let mut denom = Laurent::one();
        for j in 0..a {
            for k in j + 1..a {
                let mut factor = Laurent::one();
                let mut m = ZERO_MONO;
                m[j] = -1;
                m[k] = 1;
                factor.add_term(m, -1);
                denom = denom.mul(&factor);
            }
        }
        let denom: BTreeMap<Mono, i64> = denom.terms().map(|(m, c)| (*m, *c)).collect();
        let mut sectors: BTreeMap<Sector, Laurent> = BTreeMap::new();
        for (&s, poly) in &self.sectors {
            let off = self.group.offset(i, s);
            let total = self.group.nvars(s);
            let mut out = Laurent::zero();
            for (m, c) in poly.terms() {
                let mut need = ZERO_MONO;
                for j in 0..a {
                    let e = m[off + j] as i64 + shift;
                    need[j] = i8::try_from(-e).map_err(|_| Error::TooLarge("exponent overflow".into()))?;
                }
                if let Some(dc) = denom.get(&need) {
                    let mut rest = ZERO_MONO;
                    rest[..off].copy_from_slice(&m[..off]);
                    rest[off..total - a].copy_from_slice(&m[off + a..total]);
                    out.add_term(rest, c * dc);
                }
            }
            sectors.entry(remap(s)).or_default().add_assign(&out);
        }
        Ok(Self { group, sectors })
    }
}

/// A degree-indexed family of characters of one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCharacter {
    pub group: CompactGroup,
    pub degrees: Vec<FormalCharacter>,
}

impl GradedCharacter {
    pub fn dims(&self) -> Vec<i64> {
        self.degrees.iter().map(FormalCharacter::dim).collect()
    }

    pub fn dmax(&self) -> usize {
        self.degrees.len().saturating_sub(1)
    }
}

/// Sum of `mono_add` over a list, for building weights from pieces.
pub fn mono_sum<'a>(it: impl IntoIterator<Item = &'a Mono>) -> Mono {
    it.into_iter().fold(ZERO_MONO, |acc, m| mono_add(&acc, m))
}
