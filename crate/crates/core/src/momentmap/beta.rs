//! The homomorphism from the stabilizer `K_x` of the reference image to
//! `GL(n)`, when `q >= n`.

use num_complex::Complex64;

use super::linalg::{e_matrix, frob, from_columns, left_solve, null_space, so_basis, vectorize, CMat};
use super::rng::{complex_normal, stream};
use super::sampling::{moment_images, reference_point, HyperbolicFrame};
use crate::dualpairs::{Case, DualPairParams};
use crate::error::{Error, Result};

/// The reference point `y = (y+, y-)` and its image `x = y+ y-^T`.
#[derive(Debug, Clone)]
pub struct StabilizerData {
    pub yplus: CMat,
    pub yminus: CMat,
    pub x: CMat,
}

impl StabilizerData {
    pub fn new(pp: &DualPairParams) -> Result<Self> {
        if pp.classify_case()? != Case::I {
            return Err(Error::Hypothesis(format!("the stabilizer map needs q >= n, got {pp}")));
        }
        let z0 = reference_point(pp)?;
        let x = moment_images(&z0)?.x;
        Ok(Self { yplus: z0.wplus, yminus: z0.w1, x })
    }

    pub fn p(&self) -> usize {
        self.yplus.nrows()
    }

    pub fn q(&self) -> usize {
        self.yminus.nrows()
    }
}

/// An element `(k_p, k_q)` of `O(p) x O(q)`.
#[derive(Debug, Clone)]
pub struct OrthogonalPair {
    pub kp: CMat,
    pub kq: CMat,
}

impl OrthogonalPair {
    pub fn compose(&self, other: &OrthogonalPair) -> OrthogonalPair {
        OrthogonalPair { kp: &self.kp * &other.kp, kq: &self.kq * &other.kq }
    }

    /// `|k_p x k_q^T - x|`.
    pub fn stabilizer_defect(&self, x: &CMat) -> f64 {
        frob(&(&self.kp * x * self.kq.transpose() - x))
    }
}

#[derive(Debug, Clone)]
pub struct BetaValue {
    pub beta: CMat,
    /// `max(|k_p y+ b^{-1} - y+|, |k_q y- b^T - y-|)`.
    pub residual: f64,
}

/// `b = (y+^* y+)^{-1} y+^* k_p y+`, the `GL(n)` element with
/// `k_p y+ = y+ b`. Fails with [`Error::Hypothesis`] when `k` does not
/// stabilize `x` to within `tol` relative to `|x|`.
pub fn beta_map(data: &StabilizerData, k: &OrthogonalPair, tol: f64) -> Result<BetaValue> {
    let scale = frob(&data.x).max(1.0);
    let defect = k.stabilizer_defect(&data.x);
    if defect > tol * scale {
        return Err(Error::Hypothesis(format!("element moves x by {defect:.3e}")));
    }
    let beta = left_solve(&data.yplus, &(&k.kp * &data.yplus))?;
    let beta_inv =
        beta.clone().try_inverse().ok_or_else(|| Error::Verification("stabilizer image is singular".into()))?;
    let r1 = frob(&(&k.kp * &data.yplus * beta_inv - &data.yplus));
    let r2 = frob(&(&k.kq * &data.yminus * beta.transpose() - &data.yminus));
    Ok(BetaValue { beta, residual: r1.max(r2) })
}

/// Basis of the Lie algebra of `K_x`: pairs `(A, B)` in `so(p) x so(q)`
/// with `A x = x B`.
pub fn stabilizer_algebra(data: &StabilizerData, tol: f64) -> Result<Vec<(CMat, CMat)>> {
    let (p, q) = (data.p(), data.q());
    let sp = so_basis(p);
    let sq = so_basis(q);
    let mut cols: Vec<Vec<Complex64>> = sp.iter().map(|a| vectorize(&[&(a * &data.x)])).collect();
    cols.extend(sq.iter().map(|b| vectorize(&[&(-(&data.x * b))])));
    let kernel = null_space(&from_columns(p * q, &cols), tol)?;
    Ok(kernel
        .column_iter()
        .map(|v| {
            let mut a = CMat::zeros(p, p);
            let mut b = CMat::zeros(q, q);
            for (i, m) in sp.iter().enumerate() {
                a += m * v[i];
            }
            for (j, m) in sq.iter().enumerate() {
                b += m * v[sp.len() + j];
            }
            (a, b)
        })
        .collect())
}

/// Seeded elements of the identity component of `K_x`, as exponentials of
/// random combinations of the stabilizer algebra.
pub fn sample_stabilizer(data: &StabilizerData, seed: u64, count: usize) -> Result<Vec<OrthogonalPair>> {
    let basis = stabilizer_algebra(data, 1e-10)?;
    if basis.is_empty() {
        return Err(Error::Verification("stabilizer algebra is trivial".into()));
    }
    let scale = Complex64::from(0.6 / (basis.len() as f64).sqrt());
    Ok((0..count as u64)
        .map(|index| {
            let mut rng = stream(seed, "sample_stabilizer", index);
            let (mut a, mut b) = (CMat::zeros(data.p(), data.p()), CMat::zeros(data.q(), data.q()));
            for (ba, bb) in &basis {
                let c = complex_normal(&mut rng) * scale;
                a += ba * c;
                b += bb * c;
            }
            OrthogonalPair { kp: a.exp(), kq: b.exp() }
        })
        .collect())
}

/// The Levi element `(C diag(a, I, a^{-T}) C^{-1}, C' diag(a^{-T}, I, a) C'^{-1})`
/// for `a` in `GL(n)`, whose image is `a`. Needs `t = 0`.
pub fn levi_element(pp: &DualPairParams, a: &CMat) -> Result<OrthogonalPair> {
    let (p, q, t, n) = (pp.p, pp.q, pp.t, pp.n);
    if t != 0 {
        return Err(Error::Hypothesis("the Levi element is built for t = 0".into()));
    }
    if a.shape() != (n, n) {
        return Err(Error::Shape(format!("Levi block must be {n}x{n}")));
    }
    let a_inv_t =
        a.clone().try_inverse().ok_or_else(|| Error::Hypothesis("Levi block is singular".into()))?.transpose();
    let block = |k: usize, first: &CMat, last: &CMat| -> Result<CMat> {
        let frame = HyperbolicFrame::new(k, n, n)?;
        let mut m = CMat::identity(k, k);
        m.view_mut((0, 0), (n, n)).copy_from(first);
        m.view_mut((k - n, k - n), (n, n)).copy_from(last);
        Ok(&frame.c * m * &frame.c_inv)
    };
    let kp = block(p, a, &a_inv_t)?;
    let kq = block(q, &a_inv_t, a)?;
    debug_assert!(frob(&(&kp * e_matrix(p, n)? - e_matrix(p, n)? * a)) < 1e-9);
    Ok(OrthogonalPair { kp, kq })
}

/// `|b(k1 k2) - b(k1) b(k2)|`.
pub fn multiplicativity_defect(
    data: &StabilizerData,
    k1: &OrthogonalPair,
    k2: &OrthogonalPair,
    tol: f64,
) -> Result<f64> {
    let b12 = beta_map(data, &k1.compose(k2), tol)?.beta;
    let b1 = beta_map(data, k1, tol)?.beta;
    let b2 = beta_map(data, k2, tol)?.beta;
    Ok(frob(&(b12 - b1 * b2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentmap::rng::complex_general;

    #[test]
    fn identity_maps_to_identity() {
        let pp = DualPairParams::osp(6, 4, 0, 2);
        let data = StabilizerData::new(&pp).unwrap();
        let k = OrthogonalPair { kp: CMat::identity(6, 6), kq: CMat::identity(4, 4) };
        let b = beta_map(&data, &k, 1e-10).unwrap();
        assert_eq!(b.beta, CMat::identity(2, 2));
        assert_eq!(b.residual, 0.0);
    }

    #[test]
    fn levi_element_maps_to_its_block() {
        let pp = DualPairParams::osp(6, 4, 0, 2);
        let data = StabilizerData::new(&pp).unwrap();
        let a = complex_general(&mut stream(3, "levi", 0), 2, 0.5);
        let k = levi_element(&pp, &a).unwrap();
        let b = beta_map(&data, &k, 1e-10).unwrap();
        assert!(frob(&(b.beta - a)) < 1e-12);
        assert!(b.residual < 1e-10);
    }

    #[test]
    fn sampled_stabilizers_have_small_residual() {
        for pp in [DualPairParams::osp(6, 4, 0, 2), DualPairParams::osp(8, 4, 2, 3)] {
            let data = StabilizerData::new(&pp).unwrap();
            let ks = sample_stabilizer(&data, 5, 4).unwrap();
            for k in &ks {
                assert!(beta_map(&data, k, 1e-10).unwrap().residual < 1e-10);
            }
            assert!(multiplicativity_defect(&data, &ks[0], &ks[1], 1e-10).unwrap() < 1e-8);
        }
    }

    #[test]
    fn rejects_non_stabilizer_and_case2() {
        let pp = DualPairParams::osp(6, 4, 0, 2);
        let data = StabilizerData::new(&pp).unwrap();
        let o = super::super::rng::complex_orthogonal(&mut stream(1, "o", 0), 6, 1.0);
        let k = OrthogonalPair { kp: o, kq: CMat::identity(4, 4) };
        assert!(matches!(beta_map(&data, &k, 1e-10), Err(Error::Hypothesis(_))));
        assert!(StabilizerData::new(&DualPairParams::osp(10, 2, 6, 4)).is_err());
    }
}
