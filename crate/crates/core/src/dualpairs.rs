//! Dual-pair parameters and the range and case predicates on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which family of dual pairs the parameters describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `O(p,q) x Sp(2n,R)`, with compact partner `O(t)`.
    #[serde(alias = "OSp")]
    Osp,
    /// `U(p,q) x U(n1,n2)`.
    #[serde(alias = "UU")]
    Uu,
    /// `Sp(2p,2q) x O*(2n)`.
    #[serde(alias = "SpOstar", alias = "sp-ostar")]
    Spostar,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Osp => "osp",
            Family::Uu => "uu",
            Family::Spostar => "spostar",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "osp" => Ok(Family::Osp),
            "uu" => Ok(Family::Uu),
            "spostar" | "sp-ostar" => Ok(Family::Spostar),
            _ => Err(Error::Parse(format!("unknown family {s:?} (osp, uu, spostar)"))),
        }
    }
}

/// Parameters `(family, p, q, t, n)`; `n1, n2` replace `n` for the unitary
/// family. Derived flags are always recomputed from these fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualPairParams {
    pub family: Family,
    pub p: usize,
    pub q: usize,
    #[serde(default)]
    pub t: usize,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub n1: usize,
    #[serde(default)]
    pub n2: usize,
}

/// The two regimes of the lift of lowest weight modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    I,
    II,
}

/// Outcome of the boundary codimension test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCodim {
    /// Explicit codimension, when a closed formula is available.
    pub codim: Option<usize>,
    pub ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Twist {
    None,
    Delta,
}

/// Result of moving parameters outside the stable range back into it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Normalization {
    /// The lift agrees (up to `twist`) with the lift for `params`, which
    /// carries `n_effective` in place of `n` and is in stable range.
    Remapped { params: DualPairParams, n_effective: usize, twist: Twist },
    /// The lift is finite dimensional; its associated variety is the zero orbit.
    FiniteDim,
    /// Neither rule applies: the lift is zero or needs an analysis not covered here.
    Unhandled { reason: String },
}

impl DualPairParams {
    pub fn osp(p: usize, q: usize, t: usize, n: usize) -> Self {
        Self { family: Family::Osp, p, q, t, n, n1: 0, n2: 0 }
    }

    pub fn uu(p: usize, q: usize, t: usize, n1: usize, n2: usize) -> Self {
        Self { family: Family::Uu, p, q, t, n: n1 + n2, n1, n2 }
    }

    pub fn spostar(p: usize, q: usize, t: usize, n: usize) -> Self {
        Self { family: Family::Spostar, p, q, t, n, n1: 0, n2: 0 }
    }

    /// Rank of the smaller member, `n1 + n2` for the unitary family.
    pub fn small_rank(&self) -> usize {
        match self.family {
            Family::Uu => self.n1 + self.n2,
            _ => self.n,
        }
    }

    pub fn p_plus_q_even(&self) -> bool {
        (self.p + self.q).is_multiple_of(2)
    }

    /// Stable range for `G^{p, q+t}` against the smaller member.
    pub fn in_stable_range(&self) -> bool {
        let (p, qt) = (self.p, self.q + self.t);
        match self.family {
            Family::Osp => {
                let n2 = 2 * self.n;
                (p + qt) % 2 == 0 && p.min(qt) >= n2 && p.max(qt) > n2
            }
            Family::Uu => p.min(qt) >= self.n1 + self.n2,
            Family::Spostar => p.min(qt) >= self.n,
        }
    }

    fn require_stable(&self) -> Result<()> {
        if self.in_stable_range() {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("{self} is not in the stable range")))
        }
    }

    pub fn classify_case(&self) -> Result<Case> {
        self.require_stable()?;
        let case_one = match self.family {
            Family::Osp => self.q >= self.n,
            Family::Uu => self.q >= self.n1 && self.q >= self.n2,
            Family::Spostar => 2 * self.q >= self.n,
        };
        Ok(if case_one { Case::I } else { Case::II })
    }

    /// Whether the boundary of the generic stratum of the null cone has
    /// codimension at least two. Requires `n > min(q, t)`.
    pub fn boundary_codim(&self) -> Result<BoundaryCodim> {
        match self.family {
            Family::Osp => {
                let (q, t, n) = (self.q, self.t, self.n);
                if n <= q.min(t) {
                    return Err(Error::Hypothesis(format!(
                        "boundary codimension needs n > min(q,t), got q={q} t={t} n={n}"
                    )));
                }
                let codim = if n <= q { 1 + n - t } else { 1 + n - q };
                Ok(BoundaryCodim { codim: Some(codim), ok: codim >= 2 })
            }
            Family::Uu => {
                let (n1, n2) = (self.n1, self.n2);
                let ok = n1.max(n2) > self.t.min(n1).min(n2);
                Ok(BoundaryCodim { codim: None, ok })
            }
            Family::Spostar => {
                let ok = self.n > 2 * self.t || self.n % 2 == 1;
                Ok(BoundaryCodim { codim: None, ok })
            }
        }
    }

    pub fn boundary_codim_ok(&self) -> Result<bool> {
        self.boundary_codim().map(|b| b.ok)
    }

    /// Parameter sanity independent of any range condition.
    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::Uu if self.n1 + self.n2 == 0 => Err(Error::OutOfRange("unitary family needs n1 + n2 > 0".into())),
            Family::Uu if self.n != 0 && self.n != self.n1 + self.n2 => {
                Err(Error::OutOfRange(format!("unitary family has n = {} but n1 + n2 = {}", self.n, self.n1 + self.n2)))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for DualPairParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Uu => write!(f, "uu:{},{},{},{},{}", self.p, self.q, self.t, self.n1, self.n2),
            fam => write!(f, "{fam}:{},{},{},{}", self.p, self.q, self.t, self.n),
        }
    }
}

impl FromStr for DualPairParams {
    type Err = Error;

    /// `osp:p,q,t,n` (or `osp:p,q,n` with `t = 0`), `uu:p,q,t,n1,n2`,
    /// `spostar:p,q,t,n`.
    fn from_str(s: &str) -> Result<Self> {
        let (fam, nums) =
            s.split_once(':').ok_or_else(|| Error::Parse(format!("expected family:numbers, got {s:?}")))?;
        let family: Family = fam.parse()?;
        let v: Vec<usize> = nums
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let pp = match (family, v.as_slice()) {
            (Family::Osp, &[p, q, n]) => DualPairParams::osp(p, q, 0, n),
            (Family::Osp, &[p, q, t, n]) => DualPairParams::osp(p, q, t, n),
            (Family::Spostar, &[p, q, t, n]) => DualPairParams::spostar(p, q, t, n),
            (Family::Uu, &[p, q, t, n1, n2]) => DualPairParams::uu(p, q, t, n1, n2),
            _ => return Err(Error::Parse(format!("wrong number of parameters in {s:?}"))),
        };
        Ok(pp)
    }
}

/// Rewrites an orthogonal-symplectic lift outside the stable range as one
/// inside it, when one of the two known rules applies.
pub fn normalize_outside_range(p: usize, q: usize, t: usize, n: usize) -> Result<Normalization> {
    let input = DualPairParams::osp(p, q, t, n);
    if input.in_stable_range() {
        return Err(Error::OutOfRange(format!("{input} is already in the stable range")));
    }
    let qt = q + t;
    if p == qt && p <= 2 * n {
        if n < p {
            let n_effective = p - 1 - n;
            return Ok(Normalization::Remapped {
                params: DualPairParams::osp(p, q, t, n_effective),
                n_effective,
                twist: Twist::None,
            });
        }
        return Ok(Normalization::FiniteDim);
    }
    if n <= p && p < 2 * n && qt == p + 2 {
        let n_effective = p - n;
        return Ok(Normalization::Remapped {
            params: DualPairParams::osp(p, q, t, n_effective),
            n_effective,
            twist: Twist::Delta,
        });
    }
    Ok(Normalization::Unhandled {
        reason: format!("{input}: lift is zero or not covered by the equal-signature and signature-gap-two rules"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_range_examples() {
        assert!(DualPairParams::osp(8, 4, 2, 3).in_stable_range());
        assert!(!DualPairParams::osp(6, 6, 0, 3).in_stable_range());
        assert!(DualPairParams::osp(4, 4, 0, 1).in_stable_range());
        assert!(!DualPairParams::osp(7, 4, 0, 2).in_stable_range());
    }

    #[test]
    fn case_examples() {
        assert_eq!(DualPairParams::osp(8, 4, 2, 3).classify_case().unwrap(), Case::I);
        assert_eq!(DualPairParams::osp(10, 2, 6, 4).classify_case().unwrap(), Case::II);
        assert_eq!(DualPairParams::spostar(4, 2, 2, 4).classify_case().unwrap(), Case::I);
        assert_eq!(DualPairParams::spostar(5, 2, 3, 5).classify_case().unwrap(), Case::II);
        assert!(DualPairParams::osp(6, 6, 0, 3).classify_case().is_err());
    }

    #[test]
    fn boundary_examples() {
        let b = DualPairParams::osp(9, 5, 1, 3).boundary_codim().unwrap();
        assert_eq!(b, BoundaryCodim { codim: Some(3), ok: true });
        let b = DualPairParams::osp(9, 5, 2, 3).boundary_codim().unwrap();
        assert_eq!(b, BoundaryCodim { codim: Some(2), ok: true });
        assert!(DualPairParams::spostar(8, 8, 3, 5).boundary_codim_ok().unwrap());
        assert!(!DualPairParams::spostar(8, 8, 3, 6).boundary_codim_ok().unwrap());
        assert!(DualPairParams::osp(9, 5, 4, 3).boundary_codim().is_err());
        let b = DualPairParams::osp(10, 2, 6, 4).boundary_codim().unwrap();
        assert_eq!(b.codim, Some(3));
    }

    #[test]
    fn normalize_examples() {
        match normalize_outside_range(4, 4, 0, 3).unwrap() {
            Normalization::Remapped { n_effective, twist, .. } => {
                assert_eq!((n_effective, twist), (0, Twist::None))
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(normalize_outside_range(4, 4, 0, 5).unwrap(), Normalization::FiniteDim);
        match normalize_outside_range(3, 2, 3, 2).unwrap() {
            Normalization::Remapped { n_effective, twist, params } => {
                assert_eq!((n_effective, twist), (1, Twist::Delta));
                assert!(params.in_stable_range());
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(normalize_outside_range(9, 1, 0, 3).unwrap(), Normalization::Unhandled { .. }));
        assert!(normalize_outside_range(8, 4, 2, 3).is_err());
    }

    #[test]
    fn pair_syntax() {
        let pp: DualPairParams = "osp:6,4,0,2".parse().unwrap();
        assert_eq!(pp, DualPairParams::osp(6, 4, 0, 2));
        assert_eq!(pp.to_string(), "osp:6,4,0,2");
        let u: DualPairParams = "uu:4,4,0,1,2".parse().unwrap();
        assert_eq!(u.small_rank(), 3);
        assert!("osp:1,2".parse::<DualPairParams>().is_err());
        assert!("xx:1,2,3".parse::<DualPairParams>().is_err());
    }

    #[test]
    fn json_record() {
        let pp: DualPairParams = serde_json::from_str(r#"{"family":"osp","p":8,"q":4,"t":2,"n":3}"#).unwrap();
        assert_eq!(pp, DualPairParams::osp(8, 4, 2, 3));
    }
}
