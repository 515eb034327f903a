//! Counter-based randomness: every draw is keyed by `(seed, op, index)`,
//! so results do not depend on evaluation order.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sha2::{Digest, Sha256};

use super::linalg::CMat;

pub fn stream(seed: u64, op: &str, index: u64) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update((op.len() as u64).to_le_bytes());
    h.update(op.as_bytes());
    h.update(index.to_le_bytes());
    let digest: [u8; 32] = h.finalize().into();
    ChaCha8Rng::from_seed(digest)
}

pub fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) / 2f64.sqrt()
}

pub fn complex_gaussian(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
    DMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Complex skew-symmetric matrix with spectral norm about `scale`.
pub fn skew(rng: &mut impl Rng, k: usize, scale: f64) -> CMat {
    let g = complex_gaussian(rng, k, k);
    let s = &g - g.transpose();
    let norm = (k.max(1) as f64).sqrt() * 2.0;
    s * Complex64::from(scale / norm)
}

/// Element of the identity component of `O(k, C)`.
pub fn complex_orthogonal(rng: &mut impl Rng, k: usize, scale: f64) -> CMat {
    if k == 0 {
        return CMat::zeros(0, 0);
    }
    skew(rng, k, scale).exp()
}

/// Well-conditioned element of `GL(k, C)`.
pub fn complex_general(rng: &mut impl Rng, k: usize, scale: f64) -> CMat {
    if k == 0 {
        return CMat::zeros(0, 0);
    }
    let g = complex_gaussian(rng, k, k) * Complex64::from(scale / (k as f64).sqrt());
    g.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentmap::linalg::frob;

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a: u64 = stream(1, "x", 0).random();
        let b: u64 = stream(1, "x", 0).random();
        let c: u64 = stream(1, "x", 1).random();
        let d: u64 = stream(1, "y", 0).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn orthogonal_to_machine_precision() {
        let mut rng = stream(7, "o", 0);
        let o = complex_orthogonal(&mut rng, 6, 1.0);
        let err = frob(&(o.transpose() * &o - CMat::identity(6, 6)));
        assert!(err < 1e-13, "{err}");
    }
}
