//! Graded characters of the Fock space `C[W]`, of the null cone, and of the
//! `K`-spectrum of the lift of a one-dimensional character.
//!
//! The group is `O(p) x O(q) [x O(t)] x U(n)`, the unitary factor last.
//! A coordinate of `w+` has weight `std_O(p) ⊗ e_j`; coordinates of `w1`
//! and `w2` have weights `std ⊗ (-e_j)`.

use serde::{Deserialize, Serialize};

use super::decompose::{decompose, KTypeMult};
use super::group::{place, CompactGroup, Factor, FormalCharacter, GradedCharacter};
use super::laurent::{check_degree, mono_add, sym_powers, unit, Eigen, Laurent};
use crate::dualpairs::{DualPairParams, Family};
use crate::error::{Error, Result};

/// Upper bound on `dim Sym^dmax(W*)` accepted by the Fock computations.
pub const DEFAULT_TERM_CAP: u128 = 2_000_000_000;

fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn check_params(pp: &DualPairParams, dmax: usize) -> Result<()> {
    if pp.family != Family::Osp {
        return Err(Error::OutOfRange(format!("Fock characters are implemented for osp, not {}", pp.family)));
    }
    check_degree(dmax)?;
    let dim_w = ((pp.p + pp.q + pp.t) * pp.n) as u128;
    if dim_w > 0 && binom(dim_w + dmax as u128 - 1, dmax as u128) > DEFAULT_TERM_CAP {
        return Err(Error::TooLarge(format!("Sym^{dmax} of a {dim_w}-dimensional space")));
    }
    Ok(())
}

/// The group `K x K'` acting on `C[W]`.
pub fn fock_group(pp: &DualPairParams) -> Result<CompactGroup> {
    let mut factors = vec![Factor::O(pp.p), Factor::O(pp.q)];
    if pp.t > 0 {
        factors.push(Factor::O(pp.t));
    }
    factors.push(Factor::U(pp.n));
    CompactGroup::new(factors)
}

/// Eigenvalues of a torus element on `W*` in the given sector.
fn dual_space_eigen(group: &CompactGroup, sector: u32, n: usize) -> Vec<Eigen> {
    let u = group.factors().len() - 1;
    let uoff = group.offset(u, sector);
    let mut out = Vec::new();
    for i in 0..u {
        let sign = if i == 0 { 1 } else { -1 };
        for e in group.std_eigen(i, sector) {
            for j in 0..n {
                out.push(Eigen { sign: e.sign, mono: mono_add(&e.mono, &place(&unit(j, sign), uoff)) });
            }
        }
    }
    out
}

/// Degreewise characters of `C[W] = Sym(W*)` up to `dmax`.
pub fn fock_graded_character(pp: &DualPairParams, dmax: usize) -> Result<GradedCharacter> {
    check_params(pp, dmax)?;
    let group = fock_group(pp)?;
    let per_sector: Vec<(u32, Vec<Laurent>)> =
        group.sectors().into_iter().map(|s| (s, sym_powers(&dual_space_eigen(&group, s, pp.n), dmax))).collect();
    let degrees = (0..=dmax)
        .map(|d| {
            FormalCharacter::from_fn(&group, |s| {
                per_sector.iter().find(|(x, _)| *x == s).map(|(_, h)| h[d].clone()).unwrap_or_default()
            })
        })
        .collect();
    Ok(GradedCharacter { group, degrees })
}

/// Characters of `Sym^e(p')` for `e <= emax`; `p'` carries the `U(n)`
/// weights `±(e_i + e_j)`, `i <= j`, and is `K`-trivial.
fn p_prime_powers(group: &CompactGroup, n: usize, emax: usize) -> Vec<FormalCharacter> {
    let u = group.factors().len() - 1;
    let mut per_sector = Vec::new();
    for s in group.sectors() {
        let off = group.offset(u, s);
        let mut eigs = Vec::new();
        for i in 0..n {
            for j in i..n {
                let m = mono_add(&unit(i, 1), &unit(j, 1));
                eigs.push(Eigen { sign: 1, mono: place(&m, off) });
                eigs.push(Eigen { sign: 1, mono: place(&m.map(|x| -x), off) });
            }
        }
        per_sector.push((s, sym_powers(&eigs, emax)));
    }
    (0..=emax)
        .map(|e| {
            FormalCharacter::from_fn(group, |s| {
                per_sector.iter().find(|(x, _)| *x == s).map(|(_, h)| h[e].clone()).unwrap_or_default()
            })
        })
        .collect()
}

/// Degreewise characters of the coordinate ring of the null cone, from
/// freeness of `C[W]` over `S(p')` in the stable range.
pub fn nullcone_graded_character(pp: &DualPairParams, dmax: usize) -> Result<GradedCharacter> {
    if !pp.in_stable_range() {
        return Err(Error::OutOfRange(format!("{pp} is not in the stable range")));
    }
    let fock = fock_graded_character(pp, dmax)?;
    let group = fock.group.clone();
    let sp = p_prime_powers(&group, pp.n, dmax / 2);
    let mut degrees: Vec<FormalCharacter> = Vec::with_capacity(dmax + 1);
    for d in 0..=dmax {
        let mut nd = fock.degrees[d].clone();
        for e in 1..=d / 2 {
            nd = nd.sub(&sp[e].mul(&degrees[d - 2 * e])?)?;
        }
        if nd.weights().terms().any(|(_, &c)| c < 0) {
            return Err(Error::FreenessViolated { degree: d });
        }
        degrees.push(nd);
    }
    Ok(GradedCharacter { group, degrees })
}

/// Degreewise `K = O(p) x O(q)` characters of the lift of the one
/// dimensional character: `(C[null cone] ⊗ det^{(p-q)/2})^{U(n)}`.
pub fn theta_sigma_spectrum(p: usize, q: usize, n: usize, dmax: usize) -> Result<GradedCharacter> {
    if !(p + q).is_multiple_of(2) {
        return Err(Error::OutOfRange(format!("p+q = {} must be even", p + q)));
    }
    let pp = DualPairParams::osp(p, q, 0, n);
    let nc = nullcone_graded_character(&pp, dmax)?;
    let u = nc.group.factors().len() - 1;
    let shift = (p as i64 - q as i64) / 2;
    let degrees = nc.degrees.iter().map(|c| c.unitary_invariants(u, shift)).collect::<Result<Vec<_>>>()?;
    let group =
        degrees.first().map(|c| c.group.clone()).unwrap_or(CompactGroup::new(vec![Factor::O(p), Factor::O(q)])?);
    Ok(GradedCharacter { group, degrees })
}

/// One degree of a decomposed spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDegree {
    pub degree: usize,
    pub ktypes: Vec<KTypeMult>,
}

/// The spectrum decomposed into `K`-types degree by degree.
pub fn decomposed_spectrum(p: usize, q: usize, n: usize, dmax: usize) -> Result<Vec<SpectrumDegree>> {
    let spectrum = theta_sigma_spectrum(p, q, n, dmax)?;
    spectrum
        .degrees
        .iter()
        .enumerate()
        .map(|(degree, c)| Ok(SpectrumDegree { degree, ktypes: decompose(c)?.to_list() }))
        .collect()
}
