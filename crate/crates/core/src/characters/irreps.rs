//! Irreducible characters of `U(a)` and `O(b)`.
//!
//! `O(b)` irreducibles are labelled by `(λ, twist)` with `ℓ(λ) <= b/2`; the
//! representation is `σ_λ ⊗ det^twist`. When `b` is even and `ℓ(λ) = b/2`
//! the twist is immaterial and normalized to 0. The equivalent Young label
//! `Λ` (with `Λ'_1 + Λ'_2 <= b`) replaces the first column `ℓ` of `λ` by
//! `b - ℓ` when the twist is 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::{place, CompactGroup, Factor, FormalCharacter};
use super::laurent::{det, sym_powers, Eigen, Laurent, ZERO_MONO};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Label `(λ, twist)` of an irreducible `O(b)`-module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OLabel {
    pub lambda: Partition,
    pub twist: u8,
}

impl OLabel {
    /// Validates against `O(b)` and normalizes the twist.
    pub fn new(lambda: Partition, twist: u8, b: usize) -> Result<Self> {
        if 2 * lambda.len() > b {
            return Err(Error::InvalidLabel(format!("{lambda} has more than {b}/2 rows")));
        }
        if twist > 1 {
            return Err(Error::InvalidLabel(format!("twist {twist} not in {{0,1}}")));
        }
        let twist = if b.is_multiple_of(2) && 2 * lambda.len() == b { 0 } else { twist };
        Ok(Self { lambda, twist })
    }

    pub fn trivial() -> Self {
        Self { lambda: Partition::empty(), twist: 0 }
    }

    pub fn det() -> Self {
        Self { lambda: Partition::empty(), twist: 1 }
    }

    /// Whether tensoring with `det` changes the module.
    pub fn twist_matters(&self, b: usize) -> bool {
        !(b.is_multiple_of(2) && 2 * self.lambda.len() == b)
    }

    /// Young label `Λ` with `Λ'_1 + Λ'_2 <= b`.
    pub fn young(&self, b: usize) -> Partition {
        if self.twist == 0 || !self.twist_matters(b) {
            return self.lambda.clone();
        }
        let l = self.lambda.len();
        let mut rows = self.lambda.rows().to_vec();
        rows.resize(b - l, 1);
        Partition::from_parts(rows)
    }

    /// Inverse of [`OLabel::young`].
    pub fn from_young(young: &Partition, b: usize) -> Result<Self> {
        let cols = young.transpose();
        if cols.part(0) + cols.part(1) > b {
            return Err(Error::InvalidLabel(format!("{young} is not an O({b}) Young label")));
        }
        let l = young.len();
        if 2 * l <= b {
            return OLabel::new(young.clone(), 0, b);
        }
        let mut rows = young.rows().to_vec();
        rows.truncate(b - l);
        OLabel::new(Partition::from_parts(rows), 1, b)
    }
}

impl fmt::Display for OLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist == 1 {
            write!(f, "{}⊗det", self.lambda)
        } else {
            write!(f, "{}", self.lambda)
        }
    }
}

/// Label of an irreducible module of one factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorLabel {
    /// Highest weight, weakly decreasing.
    U(Vec<i32>),
    O(OLabel),
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorLabel::U(w) => write!(f, "{w:?}"),
            FactorLabel::O(l) => write!(f, "{l}"),
        }
    }
}

/// Checks that `label` is admissible for `factor`.
pub fn check_label(factor: Factor, label: &FactorLabel) -> Result<()> {
    match (factor, label) {
        (Factor::U(a), FactorLabel::U(w)) => {
            if w.len() != a || w.windows(2).any(|x| x[0] < x[1]) {
                return Err(Error::InvalidLabel(format!("{w:?} is not a U({a}) highest weight")));
            }
            Ok(())
        }
        (Factor::O(b), FactorLabel::O(l)) => {
            OLabel::new(l.lambda.clone(), l.twist, b)?;
            Ok(())
        }
        _ => Err(Error::InvalidLabel(format!("label {label} does not fit {factor}"))),
    }
}

fn complete_symmetric(eigs: &[Eigen], kmax: usize) -> Vec<Laurent> {
    sym_powers(eigs, kmax)
}

fn h_at(h: &[Laurent], k: i64) -> Laurent {
    if k < 0 {
        Laurent::zero()
    } else {
        h[k as usize].clone()
    }
}

/// Value of the irreducible of `factor` with twist 0 on one component, as a
/// polynomial in the factor's local variables.
pub fn sector_character(factor: Factor, label: &FactorLabel, coset: bool) -> Result<Laurent> {
    check_label(factor, label)?;
    let eigs = factor.std_eigen(coset);
    match (factor, label) {
        (Factor::U(a), FactorLabel::U(w)) => {
            if a == 0 {
                return Ok(Laurent::one());
            }
            let base = w[a - 1];
            let mu: Vec<i64> = w.iter().map(|&x| (x - base) as i64).collect();
            let l = mu.iter().filter(|&&x| x > 0).count();
            let kmax = mu.first().copied().unwrap_or(0) as usize + l;
            let h = complete_symmetric(&eigs, kmax);
            let m: Vec<Vec<Laurent>> =
                (0..l).map(|i| (0..l).map(|j| h_at(&h, mu[i] - i as i64 + j as i64)).collect()).collect();
            let mut shift = ZERO_MONO;
            for s in shift.iter_mut().take(a) {
                *s = i8::try_from(base).map_err(|_| Error::TooLarge(format!("weight {base}")))?;
            }
            Ok(det(&m).mul(&Laurent::monomial(shift, 1)))
        }
        (Factor::O(_), FactorLabel::O(ol)) => {
            let c = o_character_from_eigs(&ol.lambda, &eigs);
            Ok(if coset && ol.twist == 1 { c.scaled(-1) } else { c })
        }
        _ => unreachable!("checked by check_label"),
    }
}

/// Value of `σ_λ` (twist 0) on an orthogonal element with the given
/// standard-module eigenvalues.
pub fn o_character_from_eigs(lambda: &Partition, eigs: &[Eigen]) -> Laurent {
    let lam: Vec<i64> = lambda.rows().iter().map(|&x| x as i64).collect();
    let l = lam.len();
    let kmax = lam.first().copied().unwrap_or(0) as usize + l;
    let h = complete_symmetric(eigs, kmax);
    let m: Vec<Vec<Laurent>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let (i1, j1) = (i as i64 + 1, j as i64 + 1);
                    let mut e = h_at(&h, lam[i] - i1 + j1);
                    e.sub_assign(&h_at(&h, lam[i] - i1 - j1));
                    e
                })
                .collect()
        })
        .collect();
    det(&m)
}

/// Character of an irreducible module of a product group.
pub fn product_character(group: &CompactGroup, labels: &[FactorLabel]) -> Result<FormalCharacter> {
    if labels.len() != group.factors().len() {
        return Err(Error::InvalidLabel(format!("{} labels for {} factors", labels.len(), group.factors().len())));
    }
    let mut out = FormalCharacter::one(group);
    for s in group.sectors() {
        let mut poly = Laurent::one();
        for (i, (&f, l)) in group.factors().iter().zip(labels).enumerate() {
            let coset = s >> i & 1 == 1;
            let local = sector_character(f, l, coset)?;
            let off = group.offset(i, s);
            poly = poly.mul(&local.filter_map(|m, c| Some((place(m, off), c))));
        }
        out.sectors.insert(s, poly);
    }
    Ok(out)
}

/// Character of an irreducible module of a single factor.
pub fn irrep_character(factor: Factor, label: &FactorLabel) -> Result<FormalCharacter> {
    let g = CompactGroup::new(vec![factor])?;
    product_character(&g, std::slice::from_ref(label))
}

/// Weyl dimension formula.
pub fn weyl_dim(factor: Factor, label: &FactorLabel) -> Result<u64> {
    check_label(factor, label)?;
    let ratio = |num: i128, den: i128| -> u64 { (num / den) as u64 };
    match (factor, label) {
        (Factor::U(a), FactorLabel::U(w)) => {
            let (mut num, mut den) = (1i128, 1i128);
            for i in 0..a {
                for j in i + 1..a {
                    num *= (w[i] - w[j]) as i128 + (j - i) as i128;
                    den *= (j - i) as i128;
                }
            }
            Ok(ratio(num, den))
        }
        (Factor::O(b), FactorLabel::O(ol)) => {
            let m = b / 2;
            let lam: Vec<i128> = (0..m).map(|i| ol.lambda.part(i) as i128).collect();
            let (mut num, mut den) = (1i128, 1i128);
            if b % 2 == 1 {
                // Doubled entries of λ + ρ and ρ for type B.
                let big: Vec<i128> = (0..m).map(|i| 2 * lam[i] + 2 * (m - i) as i128 - 1).collect();
                let rho: Vec<i128> = (0..m).map(|i| 2 * (m - i) as i128 - 1).collect();
                for i in 0..m {
                    for j in i + 1..m {
                        num *= big[i] * big[i] - big[j] * big[j];
                        den *= rho[i] * rho[i] - rho[j] * rho[j];
                    }
                    num *= big[i];
                    den *= rho[i];
                }
                Ok(ratio(num, den))
            } else {
                let big: Vec<i128> = (0..m).map(|i| lam[i] + (m - 1 - i) as i128).collect();
                let rho: Vec<i128> = (0..m).map(|i| (m - 1 - i) as i128).collect();
                for i in 0..m {
                    for j in i + 1..m {
                        num *= big[i] * big[i] - big[j] * big[j];
                        den *= rho[i] * rho[i] - rho[j] * rho[j];
                    }
                }
                let so = ratio(num, den);
                // Full-length labels restrict to two conjugate SO(b) modules.
                Ok(if m > 0 && lam[m - 1] > 0 { 2 * so } else { so })
            }
        }
        _ => unreachable!("checked by check_label"),
    }
}

/// Dimension of the `O(b)`-module with the given label.
pub fn o_dim(b: usize, label: &OLabel) -> Result<u64> {
    weyl_dim(Factor::O(b), &FactorLabel::O(label.clone()))
}
