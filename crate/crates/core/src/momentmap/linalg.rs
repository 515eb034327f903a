//! Complex matrix helpers: reference frames, Lie algebra bases and
//! thresholded ranks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `I_{p,n}`: ones on the diagonal.
pub fn i_matrix(p: usize, n: usize) -> CMat {
    CMat::from_fn(p, n, |i, j| if i == j { ONE } else { Complex64::ZERO })
}

/// `E_{p,n}`: `I_n` on top, `i I_n` at the bottom, zeros between. Its
/// column space is isotropic for the standard symmetric form.
pub fn e_matrix(p: usize, n: usize) -> Result<CMat> {
    if p < 2 * n {
        return Err(Error::OutOfRange(format!("E_{{{p},{n}}} needs p >= 2n")));
    }
    let mut m = CMat::zeros(p, n);
    for j in 0..n {
        m[(j, j)] = ONE;
        m[(p - n + j, j)] = I;
    }
    Ok(m)
}

pub fn frob(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn spectral_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().cloned().fold(0.0, f64::max)
}

/// Basis `E_ij - E_ji`, `i < j`, of `so(k)`.
pub fn so_basis(k: usize) -> Vec<CMat> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut m = CMat::zeros(k, k);
            m[(i, j)] = ONE;
            m[(j, i)] = -ONE;
            out.push(m);
        }
    }
    out
}

/// Basis `E_ij` of `gl(k)`.
pub fn gl_basis(k: usize) -> Vec<CMat> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let mut m = CMat::zeros(k, k);
            m[(i, j)] = ONE;
            out.push(m);
        }
    }
    out
}

/// Stacks the entries of several matrices into one column.
pub fn vectorize(parts: &[&CMat]) -> Vec<Complex64> {
    parts.iter().flat_map(|m| m.iter().cloned()).collect()
}

/// Matrix with the given columns.
pub fn from_columns(rows: usize, cols: &[Vec<Complex64>]) -> CMat {
    CMat::from_fn(rows, cols.len(), |i, j| cols[j][i])
}

/// Outcome of a thresholded rank computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankInfo {
    pub rank: usize,
    pub threshold: f64,
    /// Ratio of the smallest retained to the largest discarded singular
    /// value; infinite when either side is empty or exactly zero.
    pub gap: f64,
}

/// Minimum ratio between the singular values on either side of the
/// threshold.
pub const GAP_GUARD: f64 = 10.0;

fn sorted_singular_values(m: &CMat) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.singular_values().iter().cloned().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Rank of `m`, counting singular values above `tol * reference`. When
/// `reference` is `None` the largest singular value of `m` is used.
pub fn numeric_rank(m: &CMat, tol: f64, reference: Option<f64>) -> Result<RankInfo> {
    let sv = sorted_singular_values(m);
    let reference = reference.unwrap_or_else(|| sv.first().copied().unwrap_or(0.0));
    let threshold = tol * reference;
    if reference == 0.0 {
        return Ok(RankInfo { rank: 0, threshold, gap: f64::INFINITY });
    }
    let rank = sv.iter().filter(|&&s| s > threshold).count();
    let upper = if rank > 0 { Some(sv[rank - 1]) } else { None };
    let lower = sv.get(rank).copied();
    let gap = match (upper, lower) {
        (Some(u), Some(l)) if l > 0.0 => u / l,
        (None, Some(l)) if l > 0.0 => threshold / l,
        _ => f64::INFINITY,
    };
    if gap < GAP_GUARD {
        return Err(Error::AmbiguousRank(format!(
            "singular values {:?} straddle threshold {threshold:.3e} with gap {gap:.2}",
            sv
        )));
    }
    Ok(RankInfo { rank, threshold, gap })
}

/// Orthonormal basis of the null space, as columns. Uses the largest
/// singular value as reference.
pub fn null_space(m: &CMat, tol: f64) -> Result<CMat> {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Ok(CMat::zeros(0, 0));
    }
    // Pad to a square matrix so the SVD returns a full right basis.
    let padded = if rows < cols {
        let mut p = CMat::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let info = numeric_rank(&padded, tol, None)?;
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.ok_or_else(|| Error::Verification("SVD failed to produce V".into()))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let kernel: Vec<Vec<Complex64>> =
        order[info.rank..].iter().map(|&r| v_t.row(r).iter().map(|z| z.conj()).collect()).collect();
    Ok(from_columns(cols, &kernel))
}

/// Least-squares solution `B` of `a B = rhs` for `a` of full column rank.
pub fn left_solve(a: &CMat, rhs: &CMat) -> Result<CMat> {
    let gram = a.adjoint() * a;
    let inv = gram.try_inverse().ok_or_else(|| Error::Shape("left factor does not have full column rank".into()))?;
    Ok(inv * a.adjoint() * rhs)
}
