//! Null-cone points, the moment maps, reference points and seeded samples.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::identify::{nilpotent_ranks, rank_profile};
use super::linalg::{e_matrix, frob, i_matrix, CMat, I, ONE};
use super::rng::{complex_general, complex_orthogonal, stream};
use crate::dualpairs::{Case, DualPairParams, Family};
use crate::error::{Error, Result};

/// Residual bound for points produced by [`sample_null_cone`].
pub const ON_CONE_TOL: f64 = 1e-12;

/// A point `(w+; w1, w2)` of `M_{p,n} x M_{q,n} x M_{t,n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NullConePoint {
    pub wplus: CMat,
    pub w1: CMat,
    pub w2: CMat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentImages {
    /// `w+ w1^T`, a `p x q` matrix.
    pub x: CMat,
    pub psi_plus: CMat,
    pub psi_minus: CMat,
    pub psi2: CMat,
}

impl NullConePoint {
    pub fn new(wplus: CMat, w1: CMat, w2: CMat) -> Result<Self> {
        let n = wplus.ncols();
        if w1.ncols() != n || w2.ncols() != n {
            return Err(Error::Shape(format!("column counts {}, {}, {} differ", n, w1.ncols(), w2.ncols())));
        }
        Ok(Self { wplus, w1, w2 })
    }

    pub fn zeros(p: usize, q: usize, t: usize, n: usize) -> Self {
        Self { wplus: CMat::zeros(p, n), w1: CMat::zeros(q, n), w2: CMat::zeros(t, n) }
    }

    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.wplus.nrows(), self.w1.nrows(), self.w2.nrows(), self.wplus.ncols())
    }

    /// `(w1; w2)` stacked.
    pub fn wminus(&self) -> CMat {
        let (_, q, t, n) = self.dims();
        let mut m = CMat::zeros(q + t, n);
        m.view_mut((0, 0), (q, n)).copy_from(&self.w1);
        m.view_mut((q, 0), (t, n)).copy_from(&self.w2);
        m
    }

    /// `(|psi+|, |psi- + psi2|)` in the Frobenius norm.
    pub fn residuals(&self) -> (f64, f64) {
        let m = moment_images(self).expect("shapes checked at construction");
        (frob(&m.psi_plus), frob(&(m.psi_minus + m.psi2)))
    }

    pub fn max_residual(&self) -> f64 {
        let (a, b) = self.residuals();
        a.max(b)
    }
}

pub fn moment_images(pt: &NullConePoint) -> Result<MomentImages> {
    let n = pt.wplus.ncols();
    if pt.w1.ncols() != n || pt.w2.ncols() != n {
        return Err(Error::Shape("w+, w1, w2 must have the same number of columns".into()));
    }
    Ok(MomentImages {
        x: &pt.wplus * pt.w1.transpose(),
        psi_plus: pt.wplus.transpose() * &pt.wplus,
        psi_minus: pt.w1.transpose() * &pt.w1,
        psi2: pt.w2.transpose() * &pt.w2,
    })
}

/// Basis of `C^p` whose first `n` vectors are isotropic. Vector `i < q` is
/// dual to `p - q + i`; vector `q <= i < n` is dual to `p - n + (i - q)`.
/// The remaining middle vectors are standard.
#[derive(Debug, Clone)]
pub struct HyperbolicFrame {
    pub p: usize,
    pub n: usize,
    pub q: usize,
    /// Columns are the frame vectors in standard coordinates.
    pub c: CMat,
    pub c_inv: CMat,
    /// Gram matrix `c^T c`.
    pub gram: CMat,
}

impl HyperbolicFrame {
    pub fn new(p: usize, n: usize, q: usize) -> Result<Self> {
        if p < 2 * n || q > n {
            return Err(Error::OutOfRange(format!("frame needs p >= 2n and q <= n, got p={p} n={n} q={q}")));
        }
        let mut c = CMat::identity(p, p);
        let mut gram = CMat::identity(p, p);
        for i in 0..n {
            let d = Self::dual_index(p, n, q, i);
            c[(i, i)] = ONE;
            c[(d, i)] = I;
            c[(i, d)] = ONE * 0.5;
            c[(d, d)] = -I * 0.5;
            gram[(i, i)] = Complex64::ZERO;
            gram[(d, d)] = Complex64::ZERO;
            gram[(i, d)] = ONE;
            gram[(d, i)] = ONE;
        }
        // The Gram matrix is an involution, so c^{-1} = gram c^T exactly.
        let c_inv = &gram * c.transpose();
        Ok(Self { p, n, q, c, c_inv, gram })
    }

    pub fn dual_index(p: usize, n: usize, q: usize, i: usize) -> usize {
        if i < q {
            p - q + i
        } else {
            p - n + (i - q)
        }
    }
}

/// Reference point of the open stratum: `(E_{p,n}; E_{q+t,n})` when
/// `q >= n`, and the nested frame when `q < n`.
pub fn reference_point(pp: &DualPairParams) -> Result<NullConePoint> {
    if pp.family != Family::Osp {
        return Err(Error::OutOfRange("moment maps are implemented for the osp family".into()));
    }
    let (p, q, t, n) = (pp.p, pp.q, pp.t, pp.n);
    match pp.classify_case()? {
        Case::I => {
            let wm = e_matrix(q + t, n)?;
            NullConePoint::new(e_matrix(p, n)?, wm.rows(0, q).into_owned(), wm.rows(q, t).into_owned())
        }
        Case::II => {
            let frame = HyperbolicFrame::new(p, n, q)?;
            let wplus = &frame.c * i_matrix(p, n);
            let w1 = i_matrix(q, n);
            let mut w2 = CMat::zeros(t, n);
            for i in 0..q {
                w2[(i, i)] = I;
            }
            w2.view_mut((q, q), (t - q, n - q)).copy_from(&e_matrix(t - q, n - q)?);
            NullConePoint::new(wplus, w1, w2)
        }
    }
}

/// An element `(o_p, o_q, o_t, g)` of `O(p) x O(q) x O(t) x GL(n)`.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub op: CMat,
    pub oq: CMat,
    pub ot: CMat,
    pub g: CMat,
}

impl GroupElement {
    pub fn random(rng: &mut impl Rng, p: usize, q: usize, t: usize, n: usize) -> Self {
        Self {
            op: complex_orthogonal(rng, p, 0.8),
            oq: complex_orthogonal(rng, q, 0.8),
            ot: complex_orthogonal(rng, t, 0.8),
            g: complex_general(rng, n, 0.5),
        }
    }

    /// `(o_p w+ g^{-1}, o_q w1 g^T, o_t w2 g^T)`.
    pub fn act(&self, pt: &NullConePoint) -> Result<NullConePoint> {
        let g_inv = self.g.clone().try_inverse().ok_or_else(|| Error::Verification("singular GL(n) sample".into()))?;
        NullConePoint::new(
            &self.op * &pt.wplus * g_inv,
            &self.oq * &pt.w1 * self.g.transpose(),
            &self.ot * &pt.w2 * self.g.transpose(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stratum {
    Generic,
    Boundary,
}

impl FromStr for Stratum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Stratum::Generic),
            "boundary" => Ok(Stratum::Boundary),
            _ => Err(Error::Parse(format!("unknown stratum {s:?}"))),
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stratum::Generic => "generic",
            Stratum::Boundary => "boundary",
        })
    }
}

const MAX_ATTEMPTS: u64 = 32;
const SAMPLE_RANK_TOL: f64 = 1e-8;

/// Degenerates the reference point by zeroing `k` columns of `(w1; w2)`
/// among the first `min(q, n)`, which lowers `rank w1` by `k`.
fn degenerate(z0: &NullConePoint, q: usize, n: usize, rng: &mut impl Rng) -> NullConePoint {
    let mut pt = z0.clone();
    let r = q.min(n);
    let k = rng.random_range(1..=r);
    let mut cols: Vec<usize> = (0..r).collect();
    for i in 0..k {
        let j = rng.random_range(i..r);
        cols.swap(i, j);
    }
    for &c in &cols[..k] {
        pt.w1.column_mut(c).fill(Complex64::ZERO);
        pt.w2.column_mut(c).fill(Complex64::ZERO);
    }
    pt
}

/// Seeded samples of the null cone. Generic samples are group motions of
/// the reference point; boundary samples are motions of degenerations
/// with `rank w1 < min(q, n)`. Draws whose residual exceeds
/// [`ON_CONE_TOL`] or whose ranks are ambiguous are redrawn.
pub fn sample_null_cone(pp: &DualPairParams, seed: u64, count: usize, stratum: Stratum) -> Result<Vec<NullConePoint>> {
    if count == 0 {
        return Err(Error::OutOfRange("count must be at least 1".into()));
    }
    sample_null_cone_range(pp, seed, 0..count as u64, stratum)
}

/// Samples with the given indices. Each index is drawn independently, so
/// disjoint ranges can be produced separately and concatenated.
pub fn sample_null_cone_range(
    pp: &DualPairParams,
    seed: u64,
    indices: Range<u64>,
    stratum: Stratum,
) -> Result<Vec<NullConePoint>> {
    let z0 = reference_point(pp)?;
    let (p, q, t, n) = (pp.p, pp.q, pp.t, pp.n);
    if stratum == Stratum::Boundary && q.min(n) == 0 {
        return Err(Error::OutOfRange("no boundary stratum when min(q, n) = 0".into()));
    }
    let op = format!("sample_null_cone/{stratum}");
    indices
        .map(|index| {
            for attempt in 0..MAX_ATTEMPTS {
                let mut rng = stream(seed, &op, index * MAX_ATTEMPTS + attempt);
                let base = match stratum {
                    Stratum::Generic => z0.clone(),
                    Stratum::Boundary => degenerate(&z0, q, n, &mut rng),
                };
                let pt = GroupElement::random(&mut rng, p, q, t, n).act(&base)?;
                if pt.max_residual() >= ON_CONE_TOL {
                    continue;
                }
                let x = moment_images(&pt)?.x;
                if rank_profile(&pt, SAMPLE_RANK_TOL).is_err() || nilpotent_ranks(&x, SAMPLE_RANK_TOL).is_err() {
                    continue;
                }
                return Ok(pt);
            }
            Err(Error::AmbiguousRank(format!("no unambiguous sample for index {index} after {MAX_ATTEMPTS} draws")))
        })
        .collect()
}
