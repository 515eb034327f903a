//! Numerical cross-checks of the orbit combinatorics on seeded null-cone
//! samples, collected into a JSON-ready report.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::beta::{beta_map, multiplicativity_defect, sample_stabilizer, StabilizerData};
use super::case2::{equivariance_defect, Case2Geometry, LeviElement};
use super::identify::{
    nilpotent_ranks, nullcone_dims, numeric_orbit_dim, predicted_ranks, rank_profile, stabilizer_codim_check,
    OrbitAction, SignedRanks,
};
use super::linalg::{frob, numeric_rank, spectral_norm};
use super::sampling::{moment_images, reference_point, sample_null_cone, NullConePoint, Stratum, ON_CONE_TOL};
use crate::dualpairs::{Case, DualPairParams};
use crate::error::{Error, Result};
use crate::orbitlifts::lift_od;
use crate::partitions::DimLevel;

pub const DEFAULT_TOL: f64 = 1e-8;
/// Residual bound for the stabilizer map and the fibre extraction.
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub count: usize,
    pub tol: f64,
    pub stratum: Stratum,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 0, count: 20, tol: DEFAULT_TOL, stratum: Stratum::Generic }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub data: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, pass: bool, data: Value) {
        self.checks.push(Check { name: name.to_string(), pass, data });
    }
}

fn dominated(r: &SignedRanks, bound: &SignedRanks) -> bool {
    let at = |v: &[usize], k: usize| v.get(k).copied().unwrap_or(0);
    let len = r.plus.len().max(bound.plus.len());
    (0..len).all(|k| at(&r.plus, k) <= at(&bound.plus, k) && at(&r.minus, k) <= at(&bound.minus, k))
}

/// Whether the point maps into the closures: `psi+ = 0`, `rank psi- <= d`
/// and the ranks of the powers of `x` are bounded by those of the lifted
/// orbit.
fn contained(pt: &NullConePoint, d: usize, bound: &SignedRanks, tol: f64) -> Result<bool> {
    let m = moment_images(pt)?;
    let (np, n1) = (spectral_norm(&pt.wplus), spectral_norm(&pt.w1));
    let psi_plus_small = frob(&m.psi_plus) <= tol * (np * np).max(1.0);
    let rank_psi = numeric_rank(&m.psi_minus, tol, Some(n1 * n1))?.rank;
    Ok(psi_plus_small && rank_psi <= d && dominated(&nilpotent_ranks(&m.x, tol)?, bound))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCounts {
    pub count: usize,
    pub contained: usize,
    /// Samples whose image has exactly the rank profile of the lift.
    pub attained: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageClosureReport {
    pub generic: StratumCounts,
    /// Absent when `min(q, n) = 0`.
    pub boundary: Option<StratumCounts>,
}

impl ImageClosureReport {
    /// Every sample is contained and every generic sample attains the
    /// lifted orbit.
    pub fn pass(&self) -> bool {
        let g = &self.generic;
        let b_ok = self.boundary.is_none_or(|b| b.contained == b.count);
        g.contained == g.count && g.attained == g.count && b_ok
    }
}

fn stratum_counts(
    pp: &DualPairParams,
    seed: u64,
    count: usize,
    stratum: Stratum,
    bound: &SignedRanks,
    tol: f64,
) -> Result<StratumCounts> {
    let d = pp.t.min(pp.n);
    let mut c = StratumCounts { count, contained: 0, attained: 0 };
    for pt in sample_null_cone(pp, seed, count, stratum)? {
        if contained(&pt, d, bound, tol)? {
            c.contained += 1;
        }
        if &nilpotent_ranks(&moment_images(&pt)?.x, tol)? == bound {
            c.attained += 1;
        }
    }
    Ok(c)
}

/// Samples both strata and checks that the images lie in the closure of
/// the lifted orbit, attaining it on the generic stratum.
pub fn verify_image_closure(pp: &DualPairParams, seed: u64, count: usize) -> Result<ImageClosureReport> {
    pp.classify_case()?;
    let bound = predicted_ranks(&lift_od(pp.p, pp.q, pp.t, pp.n)?.orbit);
    let generic = stratum_counts(pp, seed, count, Stratum::Generic, &bound, DEFAULT_TOL)?;
    let boundary = if pp.q.min(pp.n) > 0 {
        Some(stratum_counts(pp, seed, count, Stratum::Boundary, &bound, DEFAULT_TOL)?)
    } else {
        None
    };
    Ok(ImageClosureReport { generic, boundary })
}

/// All numerical checks for one parameter set.
pub fn numeric_verify(pp: &DualPairParams, opts: &VerifyOptions) -> Result<VerifyReport> {
    if !(opts.tol > 0.0 && opts.tol < 1.0) {
        return Err(Error::OutOfRange(format!("tolerance {} must lie in (0, 1)", opts.tol)));
    }
    let case = pp.classify_case()?;
    let lift = lift_od(pp.p, pp.q, pp.t, pp.n)?;
    let expected_ranks = predicted_ranks(&lift.orbit);
    let expected_dim = lift.orbit.orbit_dim(DimLevel::K)?;
    let samples = sample_null_cone(pp, opts.seed, opts.count, opts.stratum)?;
    let generic = opts.stratum == Stratum::Generic;
    let mut report = VerifyReport { checks: Vec::new() };

    let max_residual = samples.iter().map(|s| s.max_residual()).fold(0.0, f64::max);
    report.push(
        "on_cone",
        max_residual < ON_CONE_TOL,
        json!({ "samples": samples.len(), "max_residual": max_residual, "bound": ON_CONE_TOL }),
    );

    let mut in_d = 0;
    let mut matched = 0;
    let mut dims = Vec::with_capacity(samples.len());
    let mut bounded = 0;
    for pt in &samples {
        if rank_profile(pt, opts.tol)?.in_d {
            in_d += 1;
        }
        let x = moment_images(pt)?.x;
        let ranks = nilpotent_ranks(&x, opts.tol)?;
        if ranks == expected_ranks {
            matched += 1;
        }
        if dominated(&ranks, &expected_ranks) {
            bounded += 1;
        }
        dims.push(numeric_orbit_dim(OrbitAction::K(&x), opts.tol)?.rank);
    }
    let n = samples.len();
    let expected_in_d = if generic { n } else { 0 };
    report.push(
        "open_stratum_membership",
        in_d == expected_in_d,
        json!({ "stratum": opts.stratum, "in_open_stratum": in_d, "expected": expected_in_d }),
    );
    if generic {
        report.push(
            "orbit_identification",
            matched == n,
            json!({ "orbit": lift.orbit.to_string(), "matched": matched, "samples": n }),
        );
        let dim_ok = dims.iter().all(|&d| d == expected_dim);
        report.push(
            "orbit_dimension",
            dim_ok,
            json!({ "expected": expected_dim, "min": dims.iter().min(), "max": dims.iter().max() }),
        );
        let nc = nullcone_dims(&samples[0], opts.tol)?;
        report.push("null_cone_dimension", nc.image == expected_dim && nc.tangent == nc.group_orbit, json!(nc));
    } else {
        report.push(
            "boundary_in_closure",
            bounded == n,
            json!({ "orbit": lift.orbit.to_string(), "bounded": bounded, "samples": n }),
        );
    }

    let closure = verify_image_closure(pp, opts.seed, opts.count)?;
    report.push("image_closure", closure.pass(), json!(closure));

    match case {
        Case::I => push_stabilizer_map(&mut report, pp, opts)?,
        Case::II => push_projection(&mut report, pp, opts)?,
    }
    let (q, t, n) = (pp.q, pp.t, pp.n);
    if q > n && n > t && t >= 1 && q + t >= 2 * n {
        let s = stabilizer_codim_check(q, t, n);
        report.push(
            "stabilizer_codimension",
            s.is_ok(),
            match s {
                Ok(s) => json!(s),
                Err(e) => json!({ "error": e.to_string() }),
            },
        );
    }
    Ok(report)
}

fn push_stabilizer_map(report: &mut VerifyReport, pp: &DualPairParams, opts: &VerifyOptions) -> Result<()> {
    let data = StabilizerData::new(pp)?;
    let ks = sample_stabilizer(&data, opts.seed, opts.count.max(2))?;
    let mut worst: f64 = 0.0;
    for k in &ks {
        worst = worst.max(beta_map(&data, k, RESIDUAL_TOL)?.residual);
    }
    let mult = ks
        .windows(2)
        .map(|w| multiplicativity_defect(&data, &w[0], &w[1], RESIDUAL_TOL))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    report.push(
        "stabilizer_map",
        worst < RESIDUAL_TOL && mult < 1e-8,
        json!({ "samples": ks.len(), "max_residual": worst, "max_multiplicativity_defect": mult }),
    );
    Ok(())
}

fn push_projection(report: &mut VerifyReport, pp: &DualPairParams, opts: &VerifyOptions) -> Result<()> {
    let geom = Case2Geometry::new(pp)?;
    let z0 = reference_point(pp)?;
    let exact = geom.project(&z0)? == geom.reference_image();
    let mut worst: f64 = 0.0;
    for s in geom.sample_fiber(opts.seed, opts.count)? {
        let (_, r) = geom.extract(&geom.embed(&s)?, RESIDUAL_TOL)?;
        worst = worst.max(r.psi_plus).max(r.psi_minus).max(r.off_blocks);
    }
    let mut equiv: f64 = 0.0;
    for i in 0..opts.count as u64 {
        equiv = equiv.max(equivariance_defect(&geom, &LeviElement::random(&geom, opts.seed, i), &z0)?);
    }
    report.push(
        "projection",
        exact && worst < RESIDUAL_TOL && equiv < RESIDUAL_TOL,
        json!({
            "reference_image_exact": exact,
            "fiber_samples": opts.count,
            "max_fiber_residual": worst,
            "max_equivariance_defect": equiv,
        }),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_report_passes() {
        for pp in [DualPairParams::osp(6, 4, 0, 2), DualPairParams::osp(8, 4, 2, 3), DualPairParams::osp(10, 2, 6, 4)] {
            let r = numeric_verify(&pp, &VerifyOptions { count: 5, ..Default::default() }).unwrap();
            assert!(r.all_pass(), "{pp}: {}", serde_json::to_string_pretty(&r).unwrap());
        }
    }

    #[test]
    fn boundary_report_passes() {
        let pp = DualPairParams::osp(8, 4, 2, 3);
        let opts = VerifyOptions { count: 5, stratum: Stratum::Boundary, ..Default::default() };
        let r = numeric_verify(&pp, &opts).unwrap();
        assert!(r.all_pass(), "{}", serde_json::to_string_pretty(&r).unwrap());
        assert!(r.check("orbit_identification").is_none());
    }

    #[test]
    fn closure_on_both_strata() {
        let r = verify_image_closure(&DualPairParams::osp(8, 4, 2, 3), 2, 10).unwrap();
        assert!(r.pass(), "{r:?}");
        assert!(r.boundary.unwrap().attained < 10);
    }

    #[test]
    fn bad_tolerance_rejected() {
        let opts = VerifyOptions { tol: 2.0, ..Default::default() };
        assert!(numeric_verify(&DualPairParams::osp(6, 4, 0, 2), &opts).is_err());
    }
}
