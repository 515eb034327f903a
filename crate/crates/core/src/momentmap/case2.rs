//! The projection `pi` to `M_{q,n} x M_{q,n} x M_{q,t}` when `q < n`, and
//! the bijection of its fibre over the reference image with the null cone
//! of the smaller pair `(O(p-2q, t-q), Sp(2(n-q)))`.

use serde::{Deserialize, Serialize};

use super::linalg::{e_matrix, frob, i_matrix, CMat, I};
use super::rng::{complex_general, complex_orthogonal, stream};
use super::sampling::{HyperbolicFrame, NullConePoint};
use crate::dualpairs::{Case, DualPairParams};
use crate::error::{Error, Result};

/// A point `(m1, m2, m3)` of `M_{q,n} x M_{q,n} x M_{q,t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub m1: CMat,
    pub m2: CMat,
    pub m3: CMat,
}

impl Projection {
    pub fn distance(&self, other: &Projection) -> f64 {
        frob(&(&self.m1 - &other.m1)).max(frob(&(&self.m2 - &other.m2))).max(frob(&(&self.m3 - &other.m3)))
    }
}

/// `(A_s, B_s)` in `M_{p-2q, n-q} x M_{t-q, n-q}`, with `A_s` in frame
/// coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallerPairPoint {
    pub a: CMat,
    pub b: CMat,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberResiduals {
    /// Distance of `pi(pt)` from the reference image.
    pub over_reference: f64,
    /// Size of the entries outside the normal-form blocks.
    pub off_blocks: f64,
    /// `|A_s^T J A_s|` and `|B_s^T B_s|`.
    pub psi_plus: f64,
    pub psi_minus: f64,
}

/// Frame and block layout for a parameter set with `q < n`.
#[derive(Debug, Clone)]
pub struct Case2Geometry {
    pub p: usize,
    pub q: usize,
    pub t: usize,
    pub n: usize,
    pub frame: HyperbolicFrame,
}

impl Case2Geometry {
    pub fn new(pp: &DualPairParams) -> Result<Self> {
        if pp.classify_case()? != Case::II {
            return Err(Error::Hypothesis(format!("the projection needs q < n, got {pp}")));
        }
        let (p, q, t, n) = (pp.p, pp.q, pp.t, pp.n);
        Ok(Self { p, q, t, n, frame: HyperbolicFrame::new(p, n, q)? })
    }

    fn mid(&self) -> usize {
        self.p - 2 * self.q
    }

    /// Gram matrix of the middle frame vectors.
    pub fn mid_gram(&self) -> CMat {
        let (q, m) = (self.q, self.mid());
        self.frame.gram.view((q, q), (m, m)).into_owned()
    }

    /// `m = (I_{q,n}, I_{q,n}, i I_{q,t})`.
    pub fn reference_image(&self) -> Projection {
        Projection { m1: i_matrix(self.q, self.n), m2: i_matrix(self.q, self.n), m3: i_matrix(self.q, self.t) * I }
    }

    /// `(A1, B1, A1 B2^T)` where `A1` is the first `q` frame coordinates of
    /// `w+`.
    pub fn project(&self, pt: &NullConePoint) -> Result<Projection> {
        if pt.dims() != (self.p, self.q, self.t, self.n) {
            return Err(Error::Shape(format!("point has shape {:?}", pt.dims())));
        }
        let a1 = (&self.frame.c_inv * &pt.wplus).rows(0, self.q).into_owned();
        let m3 = &a1 * pt.w2.transpose();
        Ok(Projection { m1: a1, m2: pt.w1.clone(), m3 })
    }

    /// Embeds `(A_s, B_s)` into the normal form over the reference image.
    pub fn embed(&self, s: &SmallerPairPoint) -> Result<NullConePoint> {
        let (p, q, t, n, m) = (self.p, self.q, self.t, self.n, self.mid());
        if s.a.shape() != (m, n - q) || s.b.shape() != (t - q, n - q) {
            return Err(Error::Shape("smaller-pair blocks have the wrong shape".into()));
        }
        let mut u = CMat::zeros(p, n);
        u.view_mut((0, 0), (q, q)).fill_with_identity();
        u.view_mut((q, q), (m, n - q)).copy_from(&s.a);
        let mut w2 = CMat::zeros(t, n);
        for i in 0..q {
            w2[(i, i)] = I;
        }
        w2.view_mut((q, q), (t - q, n - q)).copy_from(&s.b);
        NullConePoint::new(&self.frame.c * u, i_matrix(q, n), w2)
    }

    /// Inverse of [`Case2Geometry::embed`] on points over the reference
    /// image. Fails if `pi(pt)` is not within `tol` of it.
    pub fn extract(&self, pt: &NullConePoint, tol: f64) -> Result<(SmallerPairPoint, FiberResiduals)> {
        let (q, t, n, m) = (self.q, self.t, self.n, self.mid());
        let over = self.project(pt)?.distance(&self.reference_image());
        if over > tol {
            return Err(Error::Hypothesis(format!("point is {over:.3e} away from the reference fibre")));
        }
        let u = &self.frame.c_inv * &pt.wplus;
        let s = SmallerPairPoint {
            a: u.view((q, q), (m, n - q)).into_owned(),
            b: pt.w2.view((q, q), (t - q, n - q)).into_owned(),
        };
        let normal = self.embed(&s)?;
        let off = frob(&(&self.frame.c_inv * &normal.wplus - &u))
            .max(frob(&(&normal.w1 - &pt.w1)))
            .max(frob(&(&normal.w2 - &pt.w2)));
        let psi_plus = frob(&(s.a.transpose() * self.mid_gram() * &s.a));
        let psi_minus = frob(&(s.b.transpose() * &s.b));
        Ok((s, FiberResiduals { over_reference: over, off_blocks: off, psi_plus, psi_minus }))
    }

    /// Seeded points of the smaller null cone: motions of its reference
    /// point by `O(p-2q) x O(t-q) x GL(n-q)`.
    pub fn sample_fiber(&self, seed: u64, count: usize) -> Result<Vec<SmallerPairPoint>> {
        let (q, t, n, m) = (self.q, self.t, self.n, self.mid());
        let k = n - q;
        let ea = e_matrix(m, k)?;
        let eb = e_matrix(t - q, k)?;
        let c_mid_inv = self.frame.c_inv.view((q, q), (m, m)).into_owned();
        (0..count as u64)
            .map(|index| {
                let mut rng = stream(seed, "sample_fiber", index);
                let o1 = complex_orthogonal(&mut rng, m, 0.8);
                let o2 = complex_orthogonal(&mut rng, t - q, 0.8);
                let g = complex_general(&mut rng, k, 0.5);
                let g_inv = g.clone().try_inverse().ok_or_else(|| Error::Verification("singular GL sample".into()))?;
                Ok(SmallerPairPoint { a: &c_mid_inv * o1 * &ea * g_inv, b: o2 * &eb * g.transpose() })
            })
            .collect()
    }
}

/// An element `(r1, k_mid, r2, g)` of `Q`: `r1` acts diagonally on the
/// isotropic blocks of `C^p` and on `C^q`, `k_mid` on the middle frame
/// block, `r2` on `C^t`.
#[derive(Debug, Clone)]
pub struct LeviElement {
    pub r1: CMat,
    pub k_mid: CMat,
    pub r2: CMat,
    pub g: CMat,
}

impl LeviElement {
    pub fn random(geom: &Case2Geometry, seed: u64, index: u64) -> Self {
        let mut rng = stream(seed, "sample_levi", index);
        let m = geom.mid();
        let o = complex_orthogonal(&mut rng, m, 0.8);
        let (q, c_mid, c_mid_inv) = (
            geom.q,
            geom.frame.c.view((geom.q, geom.q), (m, m)).into_owned(),
            geom.frame.c_inv.view((geom.q, geom.q), (m, m)).into_owned(),
        );
        Self {
            r1: complex_orthogonal(&mut rng, q, 0.8),
            k_mid: c_mid_inv * o * c_mid,
            r2: complex_orthogonal(&mut rng, geom.t, 0.8),
            g: complex_general(&mut rng, geom.n, 0.5),
        }
    }

    fn kp(&self, geom: &Case2Geometry) -> CMat {
        let (p, q, m) = (geom.p, geom.q, geom.mid());
        let mut b = CMat::zeros(p, p);
        b.view_mut((0, 0), (q, q)).copy_from(&self.r1);
        b.view_mut((q, q), (m, m)).copy_from(&self.k_mid);
        b.view_mut((p - q, p - q), (q, q)).copy_from(&self.r1);
        &geom.frame.c * b * &geom.frame.c_inv
    }

    pub fn act(&self, geom: &Case2Geometry, pt: &NullConePoint) -> Result<NullConePoint> {
        let g_inv = self.g.clone().try_inverse().ok_or_else(|| Error::Verification("singular GL sample".into()))?;
        NullConePoint::new(
            self.kp(geom) * &pt.wplus * g_inv,
            &self.r1 * &pt.w1 * self.g.transpose(),
            &self.r2 * &pt.w2 * self.g.transpose(),
        )
    }

    /// `(r1 m1 g^{-1}, r1 m2 g^T, r1 m3 r2^T)`.
    pub fn act_on_projection(&self, m: &Projection) -> Result<Projection> {
        let g_inv = self.g.clone().try_inverse().ok_or_else(|| Error::Verification("singular GL sample".into()))?;
        Ok(Projection {
            m1: &self.r1 * &m.m1 * g_inv,
            m2: &self.r1 * &m.m2 * self.g.transpose(),
            m3: &self.r1 * &m.m3 * self.r2.transpose(),
        })
    }
}

/// `|pi(h pt) - h pi(pt)|` relative to `|pi(pt)|`.
pub fn equivariance_defect(geom: &Case2Geometry, h: &LeviElement, pt: &NullConePoint) -> Result<f64> {
    let lhs = geom.project(&h.act(geom, pt)?)?;
    let rhs = h.act_on_projection(&geom.project(pt)?)?;
    let scale = frob(&rhs.m1).max(frob(&rhs.m2)).max(frob(&rhs.m3)).max(1.0);
    Ok(lhs.distance(&rhs) / scale)
}
