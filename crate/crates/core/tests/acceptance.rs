//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use thetalift::characters::branching::invariants_dim;
use thetalift::characters::isotropy::untwisted_type;
use thetalift::characters::{
    branch_o, case1_isotropy_dim, nullcone_graded_character, o_dim, restrict_by_characters, OLabel,
};
use thetalift::momentmap::sampling::reference_point;
use thetalift::momentmap::{
    beta_map, identify_orbit, moment_images, nilpotent_ranks, numeric_orbit_dim, predicted_ranks, sample_null_cone,
    sample_stabilizer, stabilizer_codim_check, verify_image_closure, Case2Geometry, OrbitAction, StabilizerData,
    Stratum,
};
use thetalift::orbitlifts::lift_od;
use thetalift::partitions::collapse;
use thetalift::unipotent::check_special_unipotent;
use thetalift::{Case, DualPairParams, GenuineCompactType, Partition, Provenance, Sign};

use common::{brute_collapse, centralizer_orbit_dim, lie_type, partitions_of, quotient_weights};

type Outcome = Result<String, String>;

/// Name, time budget and check.
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn stable(p: usize, q: usize, t: usize, n: usize) -> bool {
    (p + q + t).is_multiple_of(2) && p.min(q + t) >= 2 * n && p.max(q + t) > 2 * n
}

/// Lifted orbits on the full grid against the closed forms.
fn orbit_formulas() -> Outcome {
    let (mut case1, mut case2) = (0, 0);
    for p in 0..=12 {
        for q in 0..=12 {
            for t in 0..=4 {
                for n in 0..=4 {
                    if !stable(p, q, t, n) {
                        continue;
                    }
                    let tag = format!("(p,q,t,n)=({p},{q},{t},{n})");
                    let lift = lift_od(p, q, t, n).map_err(|e| format!("{tag}: {e}"))?;
                    let o = &lift.orbit;
                    ensure(o.is_valid(), || format!("{tag}: {o} invalid"))?;
                    ensure(o.signature() == (p, q), || format!("{tag}: {o} has signature {:?}", o.signature()))?;
                    let d = t.min(n) as i64;
                    let (pi, qi, ni) = (p as i64, q as i64, n as i64);
                    let exps = [d, ni - d, ni - d, pi - 2 * ni, qi + d - 2 * ni];
                    let rows = [(3, Sign::Plus), (2, Sign::Plus), (2, Sign::Minus), (1, Sign::Plus), (1, Sign::Minus)];
                    if exps.iter().all(|&e| e >= 0) {
                        case1 += 1;
                        let got: Vec<i64> = rows.iter().map(|&(l, s)| o.count(l, s) as i64).collect();
                        ensure(got == exps, || format!("{tag}: {o} has exponents {got:?}, closed form {exps:?}"))?;
                        ensure(o.rows().iter().all(|r| r.len <= 3), || format!("{tag}: {o} has long rows"))?;
                        let want = if t == 0 { Provenance::ZeroOrbitForm } else { Provenance::LowestWeightForm };
                        ensure(lift.provenance == want, || format!("{tag}: provenance {:?}", lift.provenance))?;
                        if t == 0 {
                            let zero = [0, ni, ni, pi - 2 * ni, qi - 2 * ni];
                            ensure(got == zero, || format!("{tag}: zero-orbit form {zero:?} vs {got:?}"))?;
                        }
                    } else {
                        case2 += 1;
                        let pp = DualPairParams::osp(p, q, t, n);
                        ensure(pp.classify_case() == Ok(Case::II), || {
                            format!("{tag}: negative exponent outside q < n")
                        })?;
                        ensure(lift.provenance == Provenance::Solver && lift.diagnostic.is_some(), || {
                            format!("{tag}: negative closed form not flagged")
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("{case1} closed-form points exact; {case2} q<n points flagged and solved validly"))
}

/// Orbit identification and orbit dimensions from 50 generic samples.
fn numerical_identification() -> Outcome {
    let mut notes = Vec::new();
    for ((p, q, t, n), expected) in [((6, 4, 0, 2), 10), ((8, 4, 2, 3), 20)] {
        let pp = DualPairParams::osp(p, q, t, n);
        let lifted = lift_od(p, q, t, n).map_err(|e| e.to_string())?.orbit;
        let complex = centralizer_orbit_dim(&lifted.unsigned(), true).ok_or("no invariant form")?;
        ensure(complex == 2 * expected, || format!("{pp}: oracle complex dim {complex}"))?;
        let want = predicted_ranks(&lifted);
        let pts = sample_null_cone(&pp, 2024, 50, Stratum::Generic).map_err(|e| e.to_string())?;
        let mut min_gap = f64::INFINITY;
        for (i, pt) in pts.iter().enumerate() {
            let x = moment_images(pt).map_err(|e| e.to_string())?.x;
            let ranks = nilpotent_ranks(&x, 1e-8).map_err(|e| e.to_string())?;
            ensure(ranks == want, || format!("{pp} sample {i}: ranks {ranks:?} vs {want:?}"))?;
            let id = identify_orbit(&x, 1e-8).map_err(|e| e.to_string())?;
            ensure(id == lifted, || format!("{pp} sample {i}: identified {id}, lifted {lifted}"))?;
            let info = numeric_orbit_dim(OrbitAction::K(&x), 1e-8).map_err(|e| e.to_string())?;
            ensure(info.gap >= 10.0, || format!("{pp} sample {i}: gap {}", info.gap))?;
            ensure(info.rank == expected, || format!("{pp} sample {i}: orbit dim {} vs {expected}", info.rank))?;
            min_gap = min_gap.min(info.gap);
        }
        notes.push(format!("{pp}: 50/50 {lifted}, dim {expected}, min gap {min_gap:.1e}"));
    }
    Ok(notes.join("; "))
}

fn stabilizer_codimension() -> Outcome {
    let mut notes = Vec::new();
    for (q, t, n, dim, codim) in [(5usize, 1usize, 3usize, 7usize, 3usize), (4, 1, 2, 3, 2)] {
        let twice = n * n - n + q * q - q + t * t - t;
        let formula = twice as i64 / 2 + n as i64 * (n as i64 - q as i64 - t as i64 + 1);
        ensure(formula == dim as i64, || format!("formula {formula} at {q},{t},{n}"))?;
        let c = stabilizer_codim_check(q, t, n).map_err(|e| e.to_string())?;
        ensure(c.dim_s0 == dim && c.codim == codim && codim == 1 + n - t && codim >= 2, || format!("{c:?}"))?;
        notes.push(format!("(q,t,n)=({q},{t},{n}): dim {dim}, codim {codim}"));
    }
    Ok(notes.join("; "))
}

/// `floor(N/2)` entries of `(N/2-1, N/2-2, ..)`, doubled.
fn delta(big_n: usize) -> Vec<i64> {
    (0..big_n as i64 / 2).map(|k| big_n as i64 - 2 - 2 * k).collect()
}

/// Multiset of `rank` doubled entries after inserting or removing zeros.
fn normalize(mut v: Vec<i64>, rank: usize) -> Option<Vec<i64>> {
    while v.len() > rank {
        let pos = v.iter().position(|&x| x == 0)?;
        v.remove(pos);
    }
    v.resize(rank, 0);
    v.sort_unstable_by(|a, b| b.cmp(a));
    Some(v)
}

/// Half of the neutral element of the dual orbit: the eigenvalues of each
/// Jordan block, paired into positive representatives.
fn half_h(dual: &Partition, rank: usize) -> Option<Vec<i64>> {
    let mut all: Vec<i64> =
        dual.rows().iter().flat_map(|&a| (0..a as i64).map(move |k| a as i64 - 1 - 2 * k)).collect();
    all.sort_unstable_by(|a, b| b.cmp(a));
    let zeros = all.iter().filter(|&&x| x == 0).count();
    let mut v: Vec<i64> = all.into_iter().filter(|&x| x > 0).collect();
    v.extend(std::iter::repeat_n(0, zeros / 2));
    normalize(v, rank)
}

fn bv_dual_oracle(c: &Partition, total: usize) -> Partition {
    let tr = c.transpose();
    if total.is_multiple_of(2) {
        return brute_collapse(&tr, true);
    }
    let mut rows = tr.rows().to_vec();
    *rows.last_mut().unwrap() -= 1;
    brute_collapse(&Partition::from_parts(rows), false)
}

fn bv_dual_back(d: &Partition, total: usize) -> Partition {
    if total.is_multiple_of(2) {
        return brute_collapse(&d.transpose(), true);
    }
    let mut rows = d.transpose().rows().to_vec();
    match rows.first_mut() {
        Some(first) => *first += 1,
        None => rows.push(1),
    }
    brute_collapse(&Partition::from_parts(rows), true)
}

fn unipotent_certificates() -> Outcome {
    let mut checked = 0;
    for p in 0..=12usize {
        for q in 0..=12usize {
            for n in 0..=4usize {
                for t in 0..=n {
                    if q + t < 2 * n || q < n || !stable(p, q, t, n) {
                        continue;
                    }
                    let tag = format!("({p},{q},{t},{n})");
                    let cert = check_special_unipotent(p, q, t, n, 1);
                    ensure(cert.hypotheses_met, || format!("{tag}: {:?}", cert.hypothesis_violations))?;
                    let orbit = lift_od(p, q, t, n).map_err(|e| e.to_string())?.orbit.unsigned();
                    let mut tuple = vec![p + q - 2 * n - 1, 2 * n + 1 - t];
                    if t > 0 {
                        tuple.extend([t - 1, usize::from(t % 2 == 0)]);
                    }
                    let expected = Partition::from_parts(tuple);
                    let dual = bv_dual_oracle(&orbit, p + q);
                    ensure(dual == expected, || format!("{tag}: d(C) = {dual}, tuple {expected}"))?;
                    ensure(cert.dual_orbit.as_ref() == Some(&dual), || {
                        format!("{tag}: certificate dual {:?}", cert.dual_orbit)
                    })?;
                    let back = bv_dual_back(&dual, p + q);
                    ensure(back == orbit, || format!("{tag}: d(d(C)) = {back} vs {orbit}"))?;
                    let rank = (p + q) / 2;
                    let lambda: Vec<i64> = [delta(t), delta(p + q - 2 * n), delta(2 * n + 2 - t)].concat();
                    let lambda = normalize(lambda, rank).ok_or(format!("{tag}: lambda cannot be normalized"))?;
                    let hh = half_h(&dual, rank).ok_or(format!("{tag}: half H cannot be normalized"))?;
                    ensure(lambda == hh, || format!("{tag}: lambda {lambda:?} vs half H {hh:?}"))?;
                    ensure(cert.pass, || format!("{tag}: certificate clauses {:?}", cert.clauses))?;
                    checked += 1;
                }
            }
        }
    }
    let cert = check_special_unipotent(8, 4, 2, 3, 1);
    let anchor_dual = cert.dual_orbit.clone().map(|d| d.rows().to_vec());
    ensure(anchor_dual == Some(vec![5, 5, 1, 1]), || format!("anchor dual {anchor_dual:?}"))?;
    let anchor_lambda: Option<Vec<i64>> = cert.lambda.as_ref().map(|l| l.entries.iter().map(|h| h.0).collect());
    ensure(anchor_lambda == Some(vec![4, 4, 2, 2, 0, 0]), || format!("anchor lambda (doubled) {anchor_lambda:?}"))?;
    Ok(format!("{checked} grid points; anchor (8,4,2,3) -> (5,5,1,1), {{2,2,1,1,0,0}}"))
}

fn collapse_oracle() -> Outcome {
    let mut count = 0;
    for total in 0..=12 {
        for p in partitions_of(total) {
            for orthogonal in [true, false] {
                if !orthogonal && total % 2 == 1 {
                    continue;
                }
                let got = collapse(&p, lie_type(total, orthogonal)).map_err(|e| e.to_string())?;
                let want = brute_collapse(&p, orthogonal);
                ensure(got == want, || {
                    format!("collapse {p} ({}): {got} vs {want}", if orthogonal { "so" } else { "sp" })
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} partition/type pairs"))
}

fn graded_characters() -> Outcome {
    let mut notes = Vec::new();
    for (p, q, n) in [(3, 3, 1), (4, 4, 1)] {
        let pp = DualPairParams::osp(p, q, 0, n);
        let ch = nullcone_graded_character(&pp, 6).map_err(|e| e.to_string())?;
        let oracle = quotient_weights(p, q, n, 6, true);
        let width = p / 2 + q / 2 + n;
        for (d, (deg, want)) in ch.degrees.iter().zip(&oracle).enumerate() {
            let got: BTreeMap<Vec<i32>, i64> =
                deg.weights().terms().map(|(m, &c)| (m[..width].iter().map(|&x| i32::from(x)).collect(), c)).collect();
            ensure(&got == want, || format!("({p},{q},{n}) degree {d}: weights differ"))?;
        }
        let dims = ch.dims();
        let oracle_dims: Vec<i64> = oracle.iter().map(|w| w.values().sum()).collect();
        ensure(dims == oracle_dims, || format!("({p},{q},{n}): dims {dims:?} vs {oracle_dims:?}"))?;
        if (p, q, n) == (3, 3, 1) {
            ensure(dims[..5] == [1, 6, 19, 44, 85], || format!("(3,3,1) dims {dims:?}"))?;
        }
        notes.push(format!("({p},{q},{n}) dims {dims:?}"));
    }
    Ok(notes.join("; "))
}

/// Young labels with at most `boxes` boxes that are `O(t)` labels.
fn young_labels(t: usize, boxes: usize) -> Vec<Partition> {
    (0..=boxes)
        .flat_map(partitions_of)
        .filter(|y| {
            let c = y.transpose();
            c.part(0) + c.part(1) <= t
        })
        .collect()
}

fn isotropy_dimensions() -> Outcome {
    let (mut small, mut large, mut crossed) = (0, 0, 0);
    for t in 0..=5usize {
        for n in 0..=4usize {
            for young in young_labels(t, 4) {
                for det in 0..=u8::from(t > 0) {
                    let mu = GenuineCompactType::new(young.clone(), det, n % 2 == 1);
                    let tag = format!("mu={young} det={det} t={t} n={n}");
                    let got = case1_isotropy_dim(&mu, t, n).map_err(|e| format!("{tag}: {e}"))?;
                    let tau = untwisted_type(&mu, t, n).map_err(|e| e.to_string())?;
                    if t <= n {
                        // Dimension from the character evaluated on O(1).
                        let dim = if t <= 1 {
                            1
                        } else {
                            restrict_by_characters(&tau, t, t - 1).map_err(|e| e.to_string())?.values().sum::<u64>()
                        };
                        ensure(got as u64 == dim, || format!("{tag}: isotropy {got}, dim {dim}"))?;
                        small += 1;
                    } else if n > 0 {
                        let by_chars = restrict_by_characters(&tau, t, n).map_err(|e| e.to_string())?;
                        let by_branch = branch_o(&tau, t, n).map_err(|e| e.to_string())?;
                        ensure(by_chars == by_branch, || format!("{tag}: branching disagrees"))?;
                        let inv = by_chars.get(&OLabel::trivial()).copied().unwrap_or(0);
                        ensure(invariants_dim(&tau, t, n).map_err(|e| e.to_string())? == inv, || tag.clone())?;
                        ensure(got as u64 == inv, || format!("{tag}: isotropy {got}, invariants {inv}"))?;
                        ensure(o_dim(t, &tau).map_err(|e| e.to_string())? >= inv, || tag.clone())?;
                        large += 1;
                        crossed += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{small} types with t <= n equal dim mu; {large} with t > n equal invariant counts ({crossed} character cross-checks)"))
}

fn beta_and_fibration() -> Outcome {
    let pp = DualPairParams::osp(8, 4, 2, 3);
    let data = StabilizerData::new(&pp).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for (i, k) in sample_stabilizer(&data, 11, 20).map_err(|e| e.to_string())?.iter().enumerate() {
        let b = beta_map(&data, k, 1e-10).map_err(|e| format!("element {i}: {e}"))?;
        ensure(b.residual < 1e-10, || format!("element {i}: residual {:.3e}", b.residual))?;
        worst = worst.max(b.residual);
    }
    let pp2 = DualPairParams::osp(10, 2, 6, 4);
    let geom = Case2Geometry::new(&pp2).map_err(|e| e.to_string())?;
    let z0 = reference_point(&pp2).map_err(|e| e.to_string())?;
    ensure(geom.project(&z0).map_err(|e| e.to_string())? == geom.reference_image(), || "pi(z0) != m".into())?;
    let mut worst_fiber: f64 = 0.0;
    for (i, s) in geom.sample_fiber(12, 20).map_err(|e| e.to_string())?.iter().enumerate() {
        let pt = geom.embed(s).map_err(|e| e.to_string())?;
        ensure(pt.max_residual() < 1e-10, || format!("fiber {i}: off the cone {:.3e}", pt.max_residual()))?;
        let (_, r) = geom.extract(&pt, 1e-10).map_err(|e| format!("fiber {i}: {e}"))?;
        let res = r.psi_plus.max(r.psi_minus);
        ensure(res < 1e-10, || format!("fiber {i}: residuals {r:?}"))?;
        worst_fiber = worst_fiber.max(res).max(r.off_blocks);
    }
    Ok(format!("max beta residual {worst:.1e}; pi(z0) = m exactly; max fiber residual {worst_fiber:.1e}"))
}

fn image_containment() -> Outcome {
    let pp = DualPairParams::osp(8, 4, 2, 3);
    let r = verify_image_closure(&pp, 7, 50).map_err(|e| e.to_string())?;
    ensure(r.pass(), || format!("{r:?}"))?;
    let b = r.boundary.ok_or("no boundary stratum")?;
    Ok(format!(
        "generic {}/{} contained, {} attain the lift; boundary {}/{} contained",
        r.generic.contained, r.generic.count, r.generic.attained, b.contained, b.count
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 orbit formulas", Duration::from_secs(1), orbit_formulas),
        ("2 numerical orbit identification", Duration::from_secs(60), numerical_identification),
        ("3 stabilizer codimension", Duration::from_secs(60), stabilizer_codimension),
        ("4 special unipotent certificate", Duration::from_secs(1), unipotent_certificates),
        ("5 collapse oracle", Duration::from_secs(60), collapse_oracle),
        ("6 graded null-cone characters", Duration::from_secs(60), graded_characters),
        ("7 isotropy dimensions", Duration::from_secs(60), isotropy_dimensions),
        ("8 beta map and fibration", Duration::from_secs(10), beta_and_fibration),
        ("9 image containment", Duration::from_secs(30), image_containment),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget {budget:?}")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!("{} criterion {name} [{:.3}s]: {detail}", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
