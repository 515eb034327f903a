//! Rank profiles, orbit identification from ranks of powers, and orbit
//! dimensions from linearized actions.

use serde::{Deserialize, Serialize};

use super::linalg::{frob, from_columns, gl_basis, numeric_rank, so_basis, spectral_norm, vectorize, CMat, RankInfo};
use super::sampling::{moment_images, NullConePoint};
use crate::error::{Error, Result};
use crate::partitions::{Sign, SignedFamily, SignedPartition, SignedRow};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankProfile {
    pub rank_wplus: usize,
    pub rank_w1: usize,
    pub rank_w1tw1: usize,
    pub rank_x: usize,
    pub tolerance: f64,
    /// Membership in the open stratum: `rank w1 = min(q, n)` and
    /// `rank w1^T w1 = min(q, n, t)`.
    pub in_d: bool,
}

/// Ranks of `w+`, `w1`, `w1^T w1` and `x = w+ w1^T`. Products are
/// thresholded against the product of the factor norms, so a product
/// that vanishes up to rounding has rank 0.
pub fn rank_profile(pt: &NullConePoint, tol: f64) -> Result<RankProfile> {
    let (_, q, t, n) = pt.dims();
    let m = moment_images(pt)?;
    let (np, n1) = (spectral_norm(&pt.wplus), spectral_norm(&pt.w1));
    let rank_wplus = numeric_rank(&pt.wplus, tol, None)?.rank;
    let rank_w1 = numeric_rank(&pt.w1, tol, None)?.rank;
    let rank_w1tw1 = numeric_rank(&m.psi_minus, tol, Some(n1 * n1))?.rank;
    let rank_x = numeric_rank(&m.x, tol, Some(np * n1))?.rank;
    let in_d = rank_w1 == q.min(n) && rank_w1tw1 == q.min(n).min(t);
    Ok(RankProfile { rank_wplus, rank_w1, rank_w1tw1, rank_x, tolerance: tol, in_d })
}

/// `rank(X^k|V+)` and `rank(X^k|V-)` for `k = 0, 1, ..` until both vanish,
/// where `X = [[0, x], [x^T, 0]]` on `V+ ⊕ V- = C^p ⊕ C^q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedRanks {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl SignedRanks {
    fn get(v: &[usize], k: usize) -> usize {
        v.get(k).copied().unwrap_or(0)
    }

    fn trim(mut self) -> Self {
        while self.plus.len() > 1 && self.plus.last() == Some(&0) && self.minus.last() == Some(&0) {
            self.plus.pop();
            self.minus.pop();
        }
        self
    }
}

pub fn nilpotent_ranks(x: &CMat, tol: f64) -> Result<SignedRanks> {
    let (p, q) = x.shape();
    let mut big = CMat::zeros(p + q, p + q);
    big.view_mut((0, p), (p, q)).copy_from(x);
    big.view_mut((p, 0), (q, p)).copy_from(&x.transpose());
    let norm = spectral_norm(&big);
    let mut ranks = SignedRanks { plus: vec![p], minus: vec![q] };
    let mut power = CMat::identity(p + q, p + q);
    for k in 1..=p + q {
        power = &big * &power;
        let reference = norm.powi(k as i32);
        let rp = numeric_rank(&power.columns(0, p).into_owned(), tol, Some(reference))?.rank;
        let rm = numeric_rank(&power.columns(p, q).into_owned(), tol, Some(reference))?.rank;
        ranks.plus.push(rp);
        ranks.minus.push(rm);
        if rp == 0 && rm == 0 {
            break;
        }
    }
    Ok(ranks.trim())
}

/// Ranks predicted by a signed partition: a row of length `l` with
/// leading sign `s` is a chain whose `j`-th vector has sign
/// `s (-1)^{j-1}` and survives `X^k` iff `j <= l - k`.
pub fn predicted_ranks(sp: &SignedPartition) -> SignedRanks {
    let kmax = sp.rows().iter().map(|r| r.len).max().unwrap_or(0);
    let mut ranks = SignedRanks { plus: vec![0; kmax + 1], minus: vec![0; kmax + 1] };
    for row in sp.rows() {
        for k in 0..=kmax {
            for j in 1..=row.len.saturating_sub(k) {
                let sign = if j % 2 == 1 { row.sign } else { row.sign.flip() };
                match sign {
                    Sign::Plus => ranks.plus[k] += row.mult,
                    Sign::Minus => ranks.minus[k] += row.mult,
                }
            }
        }
    }
    ranks.trim()
}

/// Inverse of [`predicted_ranks`] for orthogonal signed partitions.
pub fn orbit_from_ranks(ranks: &SignedRanks) -> Result<SignedPartition> {
    let kmax = ranks.plus.len().max(ranks.minus.len());
    // ends[k][e]: rows of length >= k whose last vector has sign e.
    let drop = |v: &[usize], k: usize| -> Result<usize> {
        let (a, b) = (SignedRanks::get(v, k - 1), SignedRanks::get(v, k));
        a.checked_sub(b).ok_or_else(|| Error::Verification(format!("ranks increase at power {k}: {ranks:?}")))
    };
    let mut ends = vec![[0usize; 2]; kmax + 2];
    for (k, slot) in ends.iter_mut().enumerate().take(kmax + 1).skip(1) {
        let (dp, dm) = (drop(&ranks.plus, k)?, drop(&ranks.minus, k)?);
        *slot = if k % 2 == 1 { [dp, dm] } else { [dm, dp] };
    }
    let mut rows = Vec::new();
    for len in 1..=kmax {
        for (e, end_sign) in [Sign::Plus, Sign::Minus].into_iter().enumerate() {
            let m = ends[len][e]
                .checked_sub(ends[len + 1][e])
                .ok_or_else(|| Error::Verification(format!("rank profile {ranks:?} is not a signed partition")))?;
            if m > 0 {
                let lead = if len % 2 == 1 { end_sign } else { end_sign.flip() };
                rows.push(SignedRow::new(len, lead, m));
            }
        }
    }
    Ok(SignedPartition::new(SignedFamily::Orthogonal, rows))
}

/// The `K_C`-orbit of `x` as a signed partition.
pub fn identify_orbit(x: &CMat, tol: f64) -> Result<SignedPartition> {
    orbit_from_ranks(&nilpotent_ranks(x, tol)?)
}

/// A point together with the group whose orbit through it is measured.
#[derive(Debug, Clone, Copy)]
pub enum OrbitAction<'a> {
    /// `O(p) x O(q)` on `x ∈ M_{p,q}` by `o_p x o_q^T`.
    K(&'a CMat),
    /// `GL(n)` on a symmetric `s` by `g s g^T`.
    KPrime(&'a CMat),
    /// `O(p) x O(q) x O(t) x GL(n)` on a point of `W`.
    Full(&'a NullConePoint),
}

/// Tangent vectors of the orbit, one per Lie algebra basis element.
fn tangent_columns(action: OrbitAction<'_>) -> (usize, Vec<Vec<num_complex::Complex64>>) {
    match action {
        OrbitAction::K(x) => {
            let (p, q) = x.shape();
            let mut cols: Vec<_> = so_basis(p).iter().map(|a| vectorize(&[&(a * x)])).collect();
            cols.extend(so_basis(q).iter().map(|b| vectorize(&[&(-(x * b))])));
            (p * q, cols)
        }
        OrbitAction::KPrime(s) => {
            let n = s.nrows();
            let cols = gl_basis(n).iter().map(|a| vectorize(&[&(a * s + s * a.transpose())])).collect();
            (n * n, cols)
        }
        OrbitAction::Full(pt) => {
            let (p, q, t, n) = pt.dims();
            let zp = CMat::zeros(p, n);
            let zq = CMat::zeros(q, n);
            let zt = CMat::zeros(t, n);
            let mut cols = Vec::new();
            cols.extend(so_basis(p).iter().map(|a| vectorize(&[&(a * &pt.wplus), &zq, &zt])));
            cols.extend(so_basis(q).iter().map(|b| vectorize(&[&zp, &(b * &pt.w1), &zt])));
            cols.extend(so_basis(t).iter().map(|c| vectorize(&[&zp, &zq, &(c * &pt.w2)])));
            cols.extend(
                gl_basis(n)
                    .iter()
                    .map(|x| vectorize(&[&(-(&pt.wplus * x)), &(&pt.w1 * x.transpose()), &(&pt.w2 * x.transpose())])),
            );
            ((p + q + t) * n, cols)
        }
    }
}

/// Dimension of the orbit through the point: the rank of the linearized
/// action, thresholded relative to its largest singular value.
pub fn numeric_orbit_dim(action: OrbitAction<'_>, tol: f64) -> Result<RankInfo> {
    let (rows, cols) = tangent_columns(action);
    numeric_rank(&from_columns(rows, &cols), tol, None)
}

/// Dimension of the stabilizer of the point in the acting group.
pub fn numeric_stabilizer_dim(action: OrbitAction<'_>, tol: f64) -> Result<usize> {
    let (_, cols) = tangent_columns(action);
    Ok(cols.len() - numeric_orbit_dim(action, tol)?.rank)
}

/// Tangent-space dimensions of the null cone at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullConeDims {
    /// Kernel dimension of the Jacobian of `(psi+, psi- + psi2)`.
    pub tangent: usize,
    /// Tangent dimension of the fibre of `x = w+ w1^T` inside the cone.
    pub fiber: usize,
    /// `tangent - fiber`: dimension of the image of the cone under `x`.
    pub image: usize,
    /// Orbit dimension of the full group through the point.
    pub group_orbit: usize,
}

pub fn nullcone_dims(pt: &NullConePoint, tol: f64) -> Result<NullConeDims> {
    let (p, q, t, n) = pt.dims();
    let total = (p + q + t) * n;
    let mut jac = Vec::with_capacity(total);
    let mut stacked = Vec::with_capacity(total);
    let zn = CMat::zeros(n, n);
    let zx = CMat::zeros(p, q);
    let unit = |r: usize, a: usize, b: usize| {
        let mut d = CMat::zeros(r, n);
        d[(a, b)] = super::linalg::ONE;
        d
    };
    for block in 0..3 {
        let rows = [p, q, t][block];
        for a in 0..rows {
            for b in 0..n {
                let d = unit(rows, a, b);
                let (dpp, dph, dx) = match block {
                    0 => (d.transpose() * &pt.wplus + pt.wplus.transpose() * &d, zn.clone(), &d * pt.w1.transpose()),
                    1 => (zn.clone(), d.transpose() * &pt.w1 + pt.w1.transpose() * &d, &pt.wplus * d.transpose()),
                    _ => (zn.clone(), d.transpose() * &pt.w2 + pt.w2.transpose() * &d, zx.clone()),
                };
                jac.push(vectorize(&[&dpp, &dph]));
                stacked.push(vectorize(&[&dpp, &dph, &dx]));
            }
        }
    }
    let rj = numeric_rank(&from_columns(2 * n * n, &jac), tol, None)?.rank;
    let rs = numeric_rank(&from_columns(2 * n * n + p * q, &stacked), tol, None)?.rank;
    let group_orbit = numeric_orbit_dim(OrbitAction::Full(pt), tol)?.rank;
    Ok(NullConeDims { tangent: total - rj, fiber: total - rs, image: rs - rj, group_orbit })
}

/// Stabilizer dimensions of `O(q) x O(t) x GL(n)` acting on `(w1; w2)` at
/// `E_{q+t,n}` and at a degenerate neighbour `E*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerCheck {
    pub q: usize,
    pub t: usize,
    pub n: usize,
    pub dim_s0: usize,
    pub dim_s0_closed_form: usize,
    pub dim_s0_star: usize,
    pub codim: usize,
    pub expected_codim: usize,
}

fn wminus_stabilizer_dim(wm: &CMat, q: usize, tol: f64) -> Result<usize> {
    let (rows, n) = wm.shape();
    let t = rows - q;
    let w1 = wm.rows(0, q).into_owned();
    let w2 = wm.rows(q, t).into_owned();
    let pt = NullConePoint::new(CMat::zeros(0, n), w1, w2)?;
    numeric_stabilizer_dim(OrbitAction::Full(&pt), tol)
}

/// Checks the closed form for `dim S0` and the codimension `1 + n - t` of
/// `S0` in `S0*`. Needs `q > n > t >= 1`.
pub fn stabilizer_codim_check(q: usize, t: usize, n: usize) -> Result<StabilizerCheck> {
    if !(q > n && n > t && t >= 1) {
        return Err(Error::OutOfRange(format!("stabilizer check needs q > n > t >= 1, got q={q} n={n} t={t}")));
    }
    if q + t < 2 * n {
        return Err(Error::OutOfRange(format!("E_{{q+t,n}} needs q+t >= 2n, got q={q} t={t} n={n}")));
    }
    const TOL: f64 = 1e-10;
    let e = super::linalg::e_matrix(q + t, n)?;
    let dim_s0 = wminus_stabilizer_dim(&e, q, TOL)?;
    let twice = n * n - n + q * q - q + t * t - t;
    let closed = twice as i64 / 2 + n as i64 * (n as i64 - q as i64 - t as i64 + 1);
    let mut star = e.clone();
    let last = q + t - 1;
    if q + t > 2 * n {
        star.swap_rows(n, last);
    } else if t >= 2 {
        star.swap_rows(n - 1, last - 1);
    } else {
        // With t = 1 both swapped rows lie in w1 and the orbit does not
        // change; the boundary point drops the column feeding w2 instead.
        star.column_mut(n - 1).fill(num_complex::Complex64::ZERO);
    }
    let dim_s0_star = wminus_stabilizer_dim(&star, q, TOL)?;
    let check = StabilizerCheck {
        q,
        t,
        n,
        dim_s0,
        dim_s0_closed_form: closed.max(0) as usize,
        dim_s0_star,
        codim: dim_s0_star.saturating_sub(dim_s0),
        expected_codim: 1 + n - t,
    };
    if closed < 0
        || check.dim_s0 != check.dim_s0_closed_form
        || dim_s0_star < dim_s0
        || check.codim != check.expected_codim
    {
        return Err(Error::Verification(format!("stabilizer dimensions disagree: {check:?}")));
    }
    Ok(check)
}

/// Frobenius distance helper used by reports.
pub fn distance(a: &CMat, b: &CMat) -> f64 {
    frob(&(a - b))
}
