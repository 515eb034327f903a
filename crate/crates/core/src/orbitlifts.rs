//! Theta lifts of nilpotent orbits and cycles, and associated cycles of
//! lifted representations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::characters::isotropy::{self, Case2Options};
use crate::dualpairs::{Case, DualPairParams, Family};
use crate::error::{Error, Result};
use crate::partitions::{Partition, Sign, SignedFamily, SignedPartition, SignedRow};

/// How a lifted orbit was obtained. The serialized names are part of the
/// JSON report format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Closed form for the lift of the zero orbit.
    #[serde(rename = "eq7")]
    ZeroOrbitForm,
    /// Closed form for the lift of a lowest-weight orbit.
    #[serde(rename = "eq6")]
    LowestWeightForm,
    /// Rank bookkeeping, used where the closed form has a negative exponent.
    #[serde(rename = "solver")]
    Solver,
}

/// A lifted orbit together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitLift {
    pub orbit: SignedPartition,
    pub provenance: Provenance,
    /// Set when the closed form was rejected.
    pub diagnostic: Option<String>,
}

/// The lowest-weight orbit `2₋^d 1₊^{n-d} 1₋^{n-d}` of `Sp(2n)` with
/// `d = min(t, n)`.
pub fn lowest_weight_orbit(n: usize, t: usize) -> SignedPartition {
    symplectic_rank_d(n, t.min(n))
}

fn symplectic_rank_d(n: usize, d: usize) -> SignedPartition {
    SignedPartition::new(
        SignedFamily::Symplectic,
        [
            SignedRow::new(2, Sign::Minus, d),
            SignedRow::new(1, Sign::Plus, n - d),
            SignedRow::new(1, Sign::Minus, n - d),
        ],
    )
}

/// If `sp` is `2₋^d 1₊^{n-d} 1₋^{n-d}` for some `d`, return `(n, d)`.
fn as_lowest_weight(sp: &SignedPartition) -> Option<(usize, usize)> {
    if sp.family() != SignedFamily::Symplectic {
        return None;
    }
    let d = sp.count(2, Sign::Minus);
    let k = sp.count(1, Sign::Plus);
    let n = d + k;
    (symplectic_rank_d(n, d) == *sp).then_some((n, d))
}

/// Exponents of `3₊, 2₊, 2₋, 1₊, 1₋` in the closed form for the lift of the
/// lowest-weight orbit, evaluated without clamping.
pub fn closed_form_exponents(p: usize, q: usize, t: usize, n: usize) -> [i64; 5] {
    let (p, q, n) = (p as i64, q as i64, n as i64);
    let d = (t as i64).min(n);
    [d, n - d, n - d, p - 2 * n, q + d - 2 * n]
}

fn orthogonal_from_exponents(e: [i64; 5]) -> Option<SignedPartition> {
    if e.iter().any(|&x| x < 0) {
        return None;
    }
    let e = e.map(|x| x as usize);
    Some(SignedPartition::new(
        SignedFamily::Orthogonal,
        [
            SignedRow::new(3, Sign::Plus, e[0]),
            SignedRow::new(2, Sign::Plus, e[1]),
            SignedRow::new(2, Sign::Minus, e[2]),
            SignedRow::new(1, Sign::Plus, e[3]),
            SignedRow::new(1, Sign::Minus, e[4]),
        ],
    ))
}

/// Lift of `2₊^n 2₋^n 1₊^{p-2n} 1₋^{q-2n}`, the image of the null cone for `t = 0`.
pub fn lift_zero(p: usize, q: usize, n: usize) -> Result<SignedPartition> {
    if 2 * n > p.min(q) {
        return Err(Error::OutOfRange(format!("lift of the zero orbit needs 2n <= min(p,q), got p={p} q={q} n={n}")));
    }
    Ok(orthogonal_from_exponents([0, n as i64, n as i64, (p - 2 * n) as i64, (q - 2 * n) as i64])
        .expect("exponents are nonnegative"))
}

/// Lift to `O(p,q)` of the rank-`d` orbit of `Sp(2n)`, by rank bookkeeping
/// at a generic point of the preimage.
///
/// With `x = w⁺w₁ᵀ` and `w⁺` isotropic, rows of length three count the
/// rank of `ψ⁻ = w₁ᵀw₁` (at most `min(d, q, n)`) and rows of length at least
/// two count twice the rank of `x`. A `q x n` matrix of rank `r` has
/// `rank(w₁ᵀw₁) >= 2r - q`, which caps the rank of `x`.
pub fn lift_rank_d(p: usize, q: usize, n: usize, d: usize) -> Result<SignedPartition> {
    let a = d.min(q).min(n);
    let b = n.min(q).min((q + a) / 2);
    if 2 * b > p {
        return Err(Error::NoSignAssignment { p, q, reason: format!("{b} rows of length >= 2 need p >= {}", 2 * b) });
    }
    let e = [a as i64, (b - a) as i64, (b - a) as i64, p as i64 - 2 * b as i64, (q + a) as i64 - 2 * b as i64];
    orthogonal_from_exponents(e).ok_or_else(|| Error::NoSignAssignment {
        p,
        q,
        reason: format!("negative exponent in {e:?}"),
    })
}

/// Lift of the lowest-weight orbit of `Sp(2n)` attached to `O(t)` into
/// `O(p,q)`. Needs `2n <= min(p, q+t)`.
pub fn lift_od(p: usize, q: usize, t: usize, n: usize) -> Result<OrbitLift> {
    if 2 * n > p.min(q + t) {
        return Err(Error::OutOfRange(format!("orbit lift needs 2n <= min(p, q+t), got p={p} q={q} t={t} n={n}")));
    }
    let d = t.min(n);
    let solved = lift_rank_d(p, q, n, d)?;
    if t == 0 {
        let orbit = lift_zero(p, q, n)?;
        debug_assert_eq!(orbit, solved);
        return Ok(OrbitLift { orbit, provenance: Provenance::ZeroOrbitForm, diagnostic: None });
    }
    let e = closed_form_exponents(p, q, t, n);
    match orthogonal_from_exponents(e) {
        Some(orbit) => {
            if orbit != solved {
                return Err(Error::Verification(format!(
                    "closed form {orbit} disagrees with rank bookkeeping {solved}"
                )));
            }
            Ok(OrbitLift { orbit, provenance: Provenance::LowestWeightForm, diagnostic: None })
        }
        None => Ok(OrbitLift {
            orbit: solved,
            provenance: Provenance::Solver,
            diagnostic: Some(format!("closed form has exponent q+d-2n = {} for 1-; used rank bookkeeping", e[4])),
        }),
    }
}

/// Adds a column on the left of a symplectic diagram: every row gains a
/// leading box of the opposite sign, then rows of length one pad the
/// signature to `(p, q)`.
pub fn add_column_lift(sp: &SignedPartition, p: usize, q: usize) -> Result<SignedPartition> {
    if sp.family() != SignedFamily::Symplectic {
        return Err(Error::InvalidSignedPartition(format!("{sp} is not a symplectic diagram")));
    }
    let v = sp.validate();
    if !v.valid {
        return Err(Error::InvalidSignedPartition(v.violations.join("; ")));
    }
    let widened: Vec<SignedRow> = sp.rows().iter().map(|r| SignedRow::new(r.len + 1, r.sign.flip(), r.mult)).collect();
    let core = SignedPartition::new(SignedFamily::Orthogonal, widened.iter().copied());
    let (cp, cq) = core.signature();
    if cp > p || cq > q {
        return Err(Error::NoSignAssignment {
            p,
            q,
            reason: format!("widened diagram {core} already has signature ({cp},{cq})"),
        });
    }
    let mut rows = widened;
    rows.push(SignedRow::new(1, Sign::Plus, p - cp));
    rows.push(SignedRow::new(1, Sign::Minus, q - cq));
    Ok(SignedPartition::new(SignedFamily::Orthogonal, rows))
}

/// A formal nonnegative combination of distinct orbits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrbitCycle {
    terms: Vec<(usize, SignedPartition)>,
}

#[derive(Serialize, Deserialize)]
struct CycleTerm {
    mult: usize,
    orbit: String,
    family: SignedFamily,
}

impl Serialize for OrbitCycle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<CycleTerm> =
            self.terms.iter().map(|(m, o)| CycleTerm { mult: *m, orbit: o.to_string(), family: o.family() }).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrbitCycle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<CycleTerm>::deserialize(d)?;
        let mut c = OrbitCycle::new();
        for t in terms {
            let o = SignedPartition::parse(t.family, &t.orbit).map_err(serde::de::Error::custom)?;
            c.add_term(t.mult, o);
        }
        Ok(c)
    }
}

impl OrbitCycle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(mult: usize, orbit: SignedPartition) -> Self {
        let mut c = Self::new();
        c.add_term(mult, orbit);
        c
    }

    pub fn add_term(&mut self, mult: usize, orbit: SignedPartition) {
        if mult == 0 {
            return;
        }
        match self.terms.iter_mut().find(|(_, o)| *o == orbit) {
            Some((m, _)) => *m += mult,
            None => self.terms.push((mult, orbit)),
        }
    }

    pub fn terms(&self) -> &[(usize, SignedPartition)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Order-independent view used for equality of cycles.
    pub fn normalized(&self) -> BTreeMap<String, usize> {
        self.terms.iter().map(|(m, o)| (o.to_string(), *m)).collect()
    }

    /// Termwise theta lift into `O(p,q)` for the pair described by `target`.
    pub fn lift(&self, target: &DualPairParams) -> Result<OrbitCycle> {
        lift_cycle(self, target)
    }
}

impl Add for OrbitCycle {
    type Output = OrbitCycle;
    fn add(mut self, rhs: OrbitCycle) -> OrbitCycle {
        for (m, o) in rhs.terms {
            self.add_term(m, o);
        }
        self
    }
}

impl fmt::Display for OrbitCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, o)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}·[{}]", o.to_superscript())?;
        }
        Ok(())
    }
}

/// Linear extension of the orbit lift to cycles of `Sp(2n)`-orbits.
pub fn lift_cycle(c: &OrbitCycle, target: &DualPairParams) -> Result<OrbitCycle> {
    if target.family != Family::Osp {
        return Err(Error::OutOfRange("orbit lifts are implemented for the osp family".into()));
    }
    let (p, q, n) = (target.p, target.q, target.n);
    if 2 * n > p.min(q + target.t) {
        return Err(Error::OutOfRange(format!("{target} violates 2n <= min(p, q+t)")));
    }
    let mut out = OrbitCycle::new();
    for (m, orbit) in &c.terms {
        let lifted = match as_lowest_weight(orbit) {
            Some((rank, d)) if rank == n => lift_rank_d(p, q, n, d)?,
            Some((rank, _)) => {
                return Err(Error::GroupMismatch(format!(
                    "orbit {orbit} lives in Sp({}) but the target has n={n}",
                    2 * rank
                )))
            }
            None => add_column_lift(orbit, p, q)?,
        };
        out.add_term(*m, lifted);
    }
    Ok(out)
}

/// Associated cycle of the lift of a one-dimensional character in the
/// stable range: the closure of the lifted zero orbit with multiplicity one.
pub fn assoc_cycle_theta_sigma(p: usize, q: usize, n: usize) -> Result<OrbitCycle> {
    let pp = DualPairParams::osp(p, q, 0, n);
    if !pp.in_stable_range() {
        return Err(Error::OutOfRange(format!("{pp} is not in the stable range")));
    }
    Ok(OrbitCycle::single(1, lift_zero(p, q, n)?))
}

/// An irreducible genuine representation of the double cover of `O(t)`,
/// recorded as an `O(t)` label `(partition, det_twist)` and whether the
/// cover is nontrivial on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenuineCompactType {
    pub partition: Partition,
    #[serde(default)]
    pub det_twist: u8,
    #[serde(default)]
    pub half_twist: bool,
}

impl GenuineCompactType {
    pub fn new(partition: Partition, det_twist: u8, half_twist: bool) -> Self {
        Self { partition, det_twist, half_twist }
    }

    /// The trivial type, with the cover marker appropriate to `n`.
    pub fn trivial(n: usize) -> Self {
        Self::new(Partition::empty(), 0, n % 2 == 1)
    }

    /// Checks the label fits `O(t)` and the cover marker matches `n`.
    pub fn validate_for(&self, t: usize, n: usize) -> Result<()> {
        let cols = self.partition.transpose();
        if cols.part(0) + cols.part(1) > t {
            return Err(Error::InvalidLabel(format!(
                "{} is not an O({t}) label: first two columns exceed {t}",
                self.partition
            )));
        }
        if self.det_twist > 1 {
            return Err(Error::InvalidLabel(format!("det twist {} not in {{0,1}}", self.det_twist)));
        }
        if self.half_twist != (n % 2 == 1) {
            return Err(Error::InvalidLabel(format!("cover marker {} inconsistent with n={n}", self.half_twist)));
        }
        Ok(())
    }

    /// The `O(t)` type obtained by untwisting by the square of the
    /// metaplectic character, which is `det^n` on `O(t)`.
    pub fn untwisted(&self, n: usize) -> (Partition, u8) {
        (self.partition.clone(), ((self.det_twist as usize + n) % 2) as u8)
    }
}

/// The associated cycle of the lift of a lowest weight module, with the
/// case it fell in and whether the multiplicity is exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedCycle {
    pub case: Case,
    pub orbit: OrbitLift,
    pub multiplicity: usize,
    pub cycle: OrbitCycle,
    pub nonzero: bool,
    /// `false` when a truncated computation did not stabilize.
    pub stabilized: bool,
}

/// Associated cycle of the lift to `O(p,q)` of the lowest weight module
/// attached to `mu`.
pub fn assoc_cycle_theta_l(pp: &DualPairParams, mu: &GenuineCompactType, opts: Case2Options) -> Result<LiftedCycle> {
    if pp.family != Family::Osp {
        return Err(Error::OutOfRange("associated cycles are implemented for the osp family".into()));
    }
    let case = pp.classify_case()?;
    mu.validate_for(pp.t, pp.n)?;
    let orbit = lift_od(pp.p, pp.q, pp.t, pp.n)?;
    let (multiplicity, stabilized) = match case {
        Case::I => (isotropy::case1_isotropy_dim(mu, pp.t, pp.n)?, true),
        Case::II => {
            let r = isotropy::case2_isotropy_dim(pp, mu, opts)?;
            (r.dim, r.stabilized)
        }
    };
    Ok(LiftedCycle {
        case,
        cycle: OrbitCycle::single(multiplicity, orbit.orbit.clone()),
        orbit,
        multiplicity,
        nonzero: multiplicity > 0,
        stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(text: &str) -> SignedPartition {
        SignedPartition::parse(SignedFamily::Orthogonal, text).unwrap()
    }

    fn s(text: &str) -> SignedPartition {
        SignedPartition::parse(SignedFamily::Symplectic, text).unwrap()
    }

    #[test]
    fn lowest_weight_examples() {
        assert_eq!(lowest_weight_orbit(3, 2), s("2-^2 1+ 1-"));
        assert_eq!(lowest_weight_orbit(3, 0), s("1+^3 1-^3"));
        assert_eq!(lowest_weight_orbit(2, 5), s("2-^2"));
        assert_eq!(lowest_weight_orbit(3, 2).signature(), (3, 3));
    }

    #[test]
    fn lift_zero_examples() {
        assert_eq!(lift_zero(6, 4, 2).unwrap(), o("2+^2 2-^2 1+^2"));
        assert_eq!(lift_zero(4, 4, 1).unwrap(), o("2+ 2- 1+^2 1-^2"));
        assert_eq!(lift_zero(3, 5, 0).unwrap(), o("1+^3 1-^5"));
        assert!(lift_zero(3, 3, 2).is_err());
    }

    #[test]
    fn lift_od_examples() {
        let l = lift_od(8, 4, 2, 3).unwrap();
        assert_eq!(l.orbit, o("3+^2 2+ 2- 1+^2"));
        assert_eq!(l.provenance, Provenance::LowestWeightForm);
        let l = lift_od(6, 4, 0, 2).unwrap();
        assert_eq!(l.orbit, o("2+^2 2-^2 1+^2"));
        assert_eq!(l.provenance, Provenance::ZeroOrbitForm);
        let l = lift_od(10, 2, 6, 4).unwrap();
        assert_eq!(l.provenance, Provenance::Solver);
        assert_eq!(l.orbit, o("3+^2 1+^6"));
        assert_eq!(l.orbit.signature(), (10, 2));
        assert_eq!(closed_form_exponents(10, 2, 6, 4), [4, 0, 0, 2, -2]);
        assert!(lift_od(5, 1, 1, 3).is_err());
    }

    #[test]
    fn add_column_examples() {
        assert_eq!(add_column_lift(&s("2-^2 1+ 1-"), 8, 4).unwrap(), o("3+^2 2+ 2- 1+^2"));
        assert_eq!(add_column_lift(&lowest_weight_orbit(2, 0), 6, 4).unwrap(), lift_zero(6, 4, 2).unwrap());
        assert_eq!(add_column_lift(&s("2-^3"), 7, 3).unwrap(), o("3+^3 1+"));
        assert!(add_column_lift(&s("2-^4"), 10, 2).is_err());
        assert!(add_column_lift(&o("1+"), 1, 0).is_err());
    }

    #[test]
    fn lift_cycle_examples() {
        let target = DualPairParams::osp(8, 4, 2, 3);
        let c = OrbitCycle::single(1, lowest_weight_orbit(3, 2));
        assert_eq!(lift_cycle(&c, &target).unwrap(), OrbitCycle::single(1, o("3+^2 2+ 2- 1+^2")));
        assert!(lift_cycle(&OrbitCycle::new(), &target).unwrap().is_empty());
        let mut c = OrbitCycle::single(2, lowest_weight_orbit(3, 1));
        c.add_term(3, lowest_weight_orbit(3, 2));
        let l = lift_cycle(&c, &target).unwrap();
        assert_eq!(l.terms().len(), 2);
        assert_eq!(l.terms()[0], (2, lift_rank_d(8, 4, 3, 1).unwrap()));
        assert_eq!(l.terms()[1], (3, o("3+^2 2+ 2- 1+^2")));
    }

    #[test]
    fn theta_sigma_cycles() {
        let c = assoc_cycle_theta_sigma(6, 4, 2).unwrap();
        assert_eq!(c, OrbitCycle::single(1, o("2+^2 2-^2 1+^2")));
        let c = assoc_cycle_theta_sigma(3, 3, 1).unwrap();
        assert_eq!(c, OrbitCycle::single(1, o("2+ 2- 1+ 1-")));
        assert!(assoc_cycle_theta_sigma(6, 6, 3).is_err());
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json[0]["orbit"], "2+ 2- 1+ 1-");
        let back: OrbitCycle = serde_json::from_value(json).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn compact_type_checks() {
        let mu = GenuineCompactType::new(Partition::new(vec![1, 1]).unwrap(), 0, true);
        assert!(mu.validate_for(2, 3).is_ok());
        assert!(mu.validate_for(1, 3).is_err());
        assert!(mu.validate_for(2, 2).is_err());
        assert_eq!(mu.untwisted(3), (Partition::new(vec![1, 1]).unwrap(), 1));
    }
}
