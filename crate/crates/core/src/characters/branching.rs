//! Restriction of `O(t)`-modules to `O(t-k)`.
//!
//! One step `O(N) -> O(N-1)` in Young labels keeps every `M` with `Λ/M` a
//! horizontal strip and `M'_1 + M'_2 <= N - 1`. The determinant twist is
//! carried by the first column of the Young label, so no separate
//! bookkeeping is needed.

use std::collections::BTreeMap;

use super::decompose::decompose;
use super::group::{CompactGroup, Factor, FormalCharacter};
use super::irreps::{o_character_from_eigs, FactorLabel, OLabel};
use super::laurent::{Eigen, ZERO_MONO};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Multiset of `O(b)` irreducibles.
pub type OMultiset = BTreeMap<OLabel, u64>;

/// Partitions `M` with `Λ/M` a horizontal strip.
fn horizontal_strips(young: &Partition) -> Vec<Partition> {
    let rows = young.rows();
    let mut out = vec![Vec::new()];
    for (i, &hi) in rows.iter().enumerate() {
        let lo = young.part(i + 1);
        let mut next = Vec::new();
        for m in &out {
            for x in lo..=hi {
                let mut v: Vec<usize> = m.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Partition::from_parts).collect()
}

fn is_young_label(m: &Partition, b: usize) -> bool {
    let cols = m.transpose();
    cols.part(0) + cols.part(1) <= b
}

fn check_steps(t: usize, k: usize) -> Result<()> {
    if k == 0 || k >= t {
        return Err(Error::OutOfRange(format!("branching O({t}) by {k} steps needs 1 <= k < t")));
    }
    Ok(())
}

/// Restriction of the `O(t)`-module `label` to `O(t-k)`, by iterated
/// interlacing.
pub fn branch_o(label: &OLabel, t: usize, k: usize) -> Result<OMultiset> {
    check_steps(t, k)?;
    let label = OLabel::new(label.lambda.clone(), label.twist, t)?;
    let mut cur: BTreeMap<Partition, u64> = BTreeMap::new();
    cur.insert(label.young(t), 1);
    for step in 1..=k {
        let b = t - step;
        let mut next = BTreeMap::new();
        for (young, mult) in &cur {
            for m in horizontal_strips(young) {
                if is_young_label(&m, b) {
                    *next.entry(m).or_insert(0) += mult;
                }
            }
        }
        cur = next;
    }
    let b = t - k;
    let mut out = OMultiset::new();
    for (young, mult) in cur {
        *out.entry(OLabel::from_young(&young, b)?).or_insert(0) += mult;
    }
    Ok(out)
}

/// Dimension of the `O(t-k)`-invariants of the `O(t)`-module `label`.
pub fn invariants_dim(label: &OLabel, t: usize, k: usize) -> Result<u64> {
    Ok(branch_o(label, t, k)?.get(&OLabel::trivial()).copied().unwrap_or(0))
}

/// The same restriction computed from characters: evaluate the `O(t)`
/// character on `g ⊕ 1_k` and decompose.
pub fn restrict_by_characters(label: &OLabel, t: usize, k: usize) -> Result<OMultiset> {
    check_steps(t, k)?;
    let label = OLabel::new(label.lambda.clone(), label.twist, t)?;
    let small = Factor::O(t - k);
    let group = CompactGroup::new(vec![small])?;
    let ch = FormalCharacter::from_fn(&group, |s| {
        let coset = s & 1 == 1;
        let mut eigs = small.std_eigen(coset);
        eigs.extend((0..k).map(|_| Eigen { sign: 1, mono: ZERO_MONO }));
        let c = o_character_from_eigs(&label.lambda, &eigs);
        if coset && label.twist == 1 {
            c.scaled(-1)
        } else {
            c
        }
    });
    let mut out = OMultiset::new();
    for (ktype, mult) in decompose(&ch)?.terms {
        match ktype.into_iter().next() {
            Some(FactorLabel::O(ol)) => *out.entry(ol).or_insert(0) += mult,
            _ => unreachable!("single orthogonal factor"),
        }
    }
    Ok(out)
}
