//! Decomposition of characters into irreducibles.
//!
//! Each sector polynomial is stripped by its lex-leading monomial, which is
//! the leading monomial of exactly one irreducible sector character (twist 0).
//! The identity sector sees `σ_λ` and `σ_λ ⊗ det` alike; the non-identity
//! sectors see them with opposite signs. The twisted multiplicities are
//! recovered by a Hadamard inversion over the orthogonal factors.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::group::{extract, place, CompactGroup, Factor, FormalCharacter, Sector};
use super::irreps::{sector_character, weyl_dim, FactorLabel, OLabel};
use super::laurent::{Laurent, Mono};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Labels of an irreducible module of a product group, one per factor.
pub type KType = Vec<FactorLabel>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub group: CompactGroup,
    pub terms: BTreeMap<KType, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTypeMult {
    pub ktype: KType,
    pub mult: u64,
}

impl Decomposition {
    pub fn multiplicity(&self, ktype: &[FactorLabel]) -> u64 {
        self.terms.get(ktype).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> Result<u64> {
        let mut total = 0;
        for (k, m) in &self.terms {
            total += m * ktype_dim(&self.group, k)?;
        }
        Ok(total)
    }

    pub fn to_list(&self) -> Vec<KTypeMult> {
        self.terms.iter().map(|(k, m)| KTypeMult { ktype: k.clone(), mult: *m }).collect()
    }
}

pub fn ktype_dim(group: &CompactGroup, ktype: &[FactorLabel]) -> Result<u64> {
    let mut d = 1;
    for (f, l) in group.factors().iter().zip(ktype) {
        d *= weyl_dim(*f, l)?;
    }
    Ok(d)
}

fn label_from_block(factor: Factor, block: &Mono, len: usize) -> Result<FactorLabel> {
    let w = &block[..len];
    if w.windows(2).any(|x| x[0] < x[1]) {
        return Err(Error::NotACharacter(format!("leading weight {w:?} of {factor} is not dominant")));
    }
    match factor {
        Factor::U(_) => Ok(FactorLabel::U(w.iter().map(|&x| x as i32).collect())),
        Factor::O(b) => {
            if w.iter().any(|&x| x < 0) {
                return Err(Error::NotACharacter(format!("leading weight {w:?} of O({b}) has a negative entry")));
            }
            let lambda = Partition::from_parts(w.iter().map(|&x| x as usize));
            Ok(FactorLabel::O(OLabel::new(lambda, 0, b)?))
        }
    }
}

struct SectorStripper<'a> {
    group: &'a CompactGroup,
    cache: HashMap<(Sector, KType), Laurent>,
}

impl SectorStripper<'_> {
    fn character(&mut self, s: Sector, labels: &KType) -> Result<&Laurent> {
        let key = (s, labels.clone());
        if !self.cache.contains_key(&key) {
            let mut poly = Laurent::one();
            for (i, (&f, l)) in self.group.factors().iter().zip(labels).enumerate() {
                let local = sector_character(f, l, s >> i & 1 == 1)?;
                let off = self.group.offset(i, s);
                poly = poly.mul(&local.filter_map(|m, c| Some((place(m, off), c))));
            }
            self.cache.insert(key.clone(), poly);
        }
        Ok(&self.cache[&key])
    }

    fn strip(&mut self, s: Sector, poly: &Laurent) -> Result<BTreeMap<KType, i64>> {
        let mut rest = poly.clone();
        let mut out = BTreeMap::new();
        let factors = self.group.factors().to_vec();
        while let Some((w, c)) = rest.lead() {
            let mut labels = Vec::with_capacity(factors.len());
            for (i, &f) in factors.iter().enumerate() {
                let off = self.group.offset(i, s);
                let len = self.group.factor_vars(i, s);
                labels.push(label_from_block(f, &extract(&w, off, len), len)?);
            }
            let chi = self.character(s, &labels)?;
            let (lw, lc) = chi
                .lead()
                .ok_or_else(|| Error::NotACharacter(format!("sector {s} character of {labels:?} vanishes")))?;
            if lw != w || c % lc != 0 {
                return Err(Error::NotACharacter(format!(
                    "leading term {w:?} with coefficient {c} does not match an irreducible"
                )));
            }
            let k = c / lc;
            let chi = chi.scaled(k);
            rest.sub_assign(&chi);
            *out.entry(labels).or_insert(0) += k;
        }
        Ok(out)
    }
}

/// Decomposes a character into irreducibles. Fails with
/// [`Error::NotACharacter`] if the result is not a nonnegative integer
/// combination.
pub fn decompose(ch: &FormalCharacter) -> Result<Decomposition> {
    let group = &ch.group;
    let mut stripper = SectorStripper { group, cache: HashMap::new() };
    let mut by_sector: BTreeMap<Sector, BTreeMap<KType, i64>> = BTreeMap::new();
    for (&s, poly) in &ch.sectors {
        by_sector.insert(s, stripper.strip(s, poly)?);
    }
    let disc: Vec<usize> = (0..group.factors().len()).filter(|&i| group.factors()[i].is_disconnected()).collect();

    let mut labels: Vec<KType> = by_sector.values().flat_map(|m| m.keys().cloned()).collect();
    labels.sort();
    labels.dedup();

    let mut terms = BTreeMap::new();
    for lab in labels {
        // Factors on which the det twist is visible for this label.
        let free: Vec<usize> = disc
            .iter()
            .copied()
            .filter(|&i| match (&group.factors()[i], &lab[i]) {
                (Factor::O(b), FactorLabel::O(ol)) => ol.twist_matters(*b),
                _ => false,
            })
            .collect();
        let free_mask: Sector = free.iter().fold(0, |m, &i| m | 1 << i);
        for (&s, coeffs) in &by_sector {
            if s & !free_mask != 0 && coeffs.get(&lab).copied().unwrap_or(0) != 0 {
                return Err(Error::NotACharacter(format!(
                    "{lab:?} appears in sector {s} where its character vanishes"
                )));
            }
        }
        let k = free.len();
        for e in 0u32..1 << k {
            let mut acc: i64 = 0;
            for sbits in 0u32..1 << k {
                let s: Sector = (0..k).filter(|j| sbits >> j & 1 == 1).fold(0, |m, j| m | 1 << free[j]);
                let c = by_sector.get(&s).and_then(|m| m.get(&lab)).copied().unwrap_or(0);
                let sign = if (e & sbits).count_ones() % 2 == 0 { 1 } else { -1 };
                acc += sign * c;
            }
            let denom = 1i64 << k;
            if acc % denom != 0 || acc < 0 {
                return Err(Error::NotACharacter(format!("{lab:?} with twists {e:b} has multiplicity {acc}/{denom}")));
            }
            if acc == 0 {
                continue;
            }
            let mut twisted = lab.clone();
            for (j, &i) in free.iter().enumerate() {
                if let FactorLabel::O(ol) = &mut twisted[i] {
                    ol.twist = (e >> j & 1) as u8;
                }
            }
            terms.insert(twisted, (acc / denom) as u64);
        }
    }
    Ok(Decomposition { group: group.clone(), terms })
}

/// Multiplicity of one irreducible in a character.
pub fn multiplicity(ch: &FormalCharacter, ktype: &[FactorLabel]) -> Result<u64> {
    for (f, l) in ch.group.factors().iter().zip(ktype) {
        super::irreps::check_label(*f, l)?;
    }
    Ok(decompose(ch)?.multiplicity(ktype))
}
