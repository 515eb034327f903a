//! Dimensions of isotropy representations at generic points of the
//! associated variety of a lifted lowest weight module.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::branching::{branch_o, invariants_dim, OMultiset};
use super::fock::decomposed_spectrum;
use super::group::Factor;
use super::irreps::{o_dim, weyl_dim, FactorLabel, OLabel};
use crate::dualpairs::DualPairParams;
use crate::error::{Error, Result};
use crate::orbitlifts::GenuineCompactType;

/// The `O(t)`-module obtained from `mu` after removing the square of the
/// metaplectic character.
pub fn untwisted_type(mu: &GenuineCompactType, t: usize, n: usize) -> Result<OLabel> {
    mu.validate_for(t, n)?;
    let (young, twist) = mu.untwisted(n);
    let base = OLabel::from_young(&young, t)?;
    OLabel::new(base.lambda, base.twist ^ twist, t)
}

/// Isotropy dimension when `q >= n`: `dim mu` if `t <= n`, otherwise the
/// dimension of the `O(t-n)`-invariants.
pub fn case1_isotropy_dim(mu: &GenuineCompactType, t: usize, n: usize) -> Result<usize> {
    let tau = untwisted_type(mu, t, n)?;
    let d = if t <= n {
        o_dim(t, &tau)?
    } else if n == 0 {
        u64::from(tau == OLabel::trivial())
    } else {
        invariants_dim(&tau, t, n)?
    };
    Ok(d as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Options {
    /// Highest degree of the spectrum that is summed.
    pub dmax: usize,
    /// Number of trailing zero-contribution degrees required to call the
    /// sum stable.
    pub window: usize,
}

impl Default for Case2Options {
    fn default() -> Self {
        Self { dmax: 8, window: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Result {
    pub dim: usize,
    pub stabilized: bool,
    /// Contribution of each spectrum degree.
    pub per_degree: Vec<usize>,
}

/// Restriction of `tau` from `O(t)` to `O(t-k)`, allowing `k = 0` and
/// `k = t`.
fn restrict(tau: &OLabel, t: usize, k: usize) -> Result<OMultiset> {
    if k == 0 {
        return Ok([(tau.clone(), 1)].into());
    }
    if k == t {
        return Ok([(OLabel::trivial(), o_dim(t, tau)?)].into());
    }
    branch_o(tau, t, k)
}

/// Isotropy dimension when `q < n`, from the spectrum of the smaller pair
/// `(p-2q, t-q, n-q)` paired against `mu` restricted to `O(t-q)`.
pub fn case2_isotropy_dim(pp: &DualPairParams, mu: &GenuineCompactType, opts: Case2Options) -> Result<Case2Result> {
    let (p, q, t, n) = (pp.p, pp.q, pp.t, pp.n);
    if q >= n {
        return Err(Error::Hypothesis(format!("q = {q} >= n = {n}: use the q >= n formula")));
    }
    if p < 2 * q || t < q {
        return Err(Error::OutOfRange(format!("smaller pair ({p}-2*{q}, {t}-{q}) is negative")));
    }
    let tau = untwisted_type(mu, t, n)?;
    let (p2, t2) = (p - 2 * q, t - q);
    let branched = restrict(&tau, t, q)?;
    let spectrum = decomposed_spectrum(p2, t2, n - q, opts.dmax)?;
    let mut per_degree = Vec::with_capacity(spectrum.len());
    let mut dims: BTreeMap<OLabel, u64> = BTreeMap::new();
    for deg in &spectrum {
        let mut contrib: u64 = 0;
        for km in &deg.ktypes {
            let (FactorLabel::O(alpha), FactorLabel::O(beta)) = (&km.ktype[0], &km.ktype[1]) else {
                unreachable!("spectrum of O x O");
            };
            let Some(m) = branched.get(beta) else { continue };
            let da = match dims.get(alpha) {
                Some(d) => *d,
                None => {
                    let d = weyl_dim(Factor::O(p2), &km.ktype[0])?;
                    dims.insert(alpha.clone(), d);
                    d
                }
            };
            contrib += km.mult * da * m;
        }
        per_degree.push(contrib as usize);
    }
    let trailing = per_degree.iter().rev().take_while(|&&c| c == 0).count();
    Ok(Case2Result { dim: per_degree.iter().sum(), stabilized: opts.window > 0 && trailing >= opts.window, per_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Partition;

    fn mu(v: &[usize], det: u8, n: usize) -> GenuineCompactType {
        GenuineCompactType::new(Partition::new(v.to_vec()).unwrap(), det, n % 2 == 1)
    }

    #[test]
    fn case1_small_t_is_dim() {
        assert_eq!(case1_isotropy_dim(&mu(&[], 0, 3), 2, 3).unwrap(), 1);
        assert_eq!(case1_isotropy_dim(&mu(&[1], 0, 3), 2, 3).unwrap(), 2);
        assert_eq!(case1_isotropy_dim(&mu(&[2], 0, 3), 3, 3).unwrap(), 5);
    }

    #[test]
    fn case1_large_t_counts_invariants() {
        // n = 1 flips the twist; det ⊗ det^1 is trivial on O(2).
        assert_eq!(case1_isotropy_dim(&mu(&[], 1, 1), 3, 1).unwrap(), 1);
        assert_eq!(case1_isotropy_dim(&mu(&[], 0, 1), 3, 1).unwrap(), 0);
        assert_eq!(case1_isotropy_dim(&mu(&[1], 0, 2), 4, 2).unwrap(), 2);
    }

    #[test]
    fn case2_example() {
        let pp = DualPairParams::osp(10, 2, 6, 4);
        let r = case2_isotropy_dim(&pp, &mu(&[], 0, 4), Case2Options::default()).unwrap();
        assert!(r.stabilized);
        let r2 = case2_isotropy_dim(&pp, &mu(&[1, 1], 0, 4), Case2Options::default()).unwrap();
        assert!(r2.stabilized);
        assert_eq!((r.dim, r2.dim), (0, 1), "{r:?} {r2:?}");
    }

    #[test]
    fn case2_rejects_case1() {
        let pp = DualPairParams::osp(8, 4, 2, 3);
        assert!(case2_isotropy_dim(&pp, &mu(&[], 0, 3), Case2Options::default()).is_err());
    }
}
