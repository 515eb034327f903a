//! Infinitesimal characters, Barbasch-Vogan duality and the
//! special-unipotent certificate for lifts of one-dimensional types.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dualpairs::DualPairParams;
use crate::error::{Error, Result};
use crate::orbitlifts::lift_od;
use crate::partitions::{collapse, LieType, Partition, TypeLetter};

/// A half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Half(pub i64);

impl Half {
    pub fn from_int(k: i64) -> Self {
        Half(2 * k)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for Half {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}

impl<'de> Deserialize<'de> for Half {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = f64::deserialize(d)?;
        let twice = 2.0 * x;
        if twice.fract() != 0.0 {
            return Err(serde::de::Error::custom(format!("{x} is not a half-integer")));
        }
        Ok(Half(twice as i64))
    }
}

/// An infinitesimal character as a multiset of half-integers of fixed
/// length, kept sorted in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfChar {
    pub entries: Vec<Half>,
    pub rank: usize,
}

impl InfChar {
    /// Brings `entries` to length `rank` by inserting or removing zeros.
    pub fn normalized(mut entries: Vec<Half>, rank: usize) -> Result<Self> {
        if entries.len() < rank {
            entries.resize(rank, Half(0));
        }
        while entries.len() > rank {
            let pos = entries.iter().position(|h| h.is_zero()).ok_or_else(|| {
                Error::OutOfRange(format!(
                    "cannot shorten {} entries to rank {rank}: no zero left to remove",
                    entries.len()
                ))
            })?;
            entries.swap_remove(pos);
        }
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { entries, rank })
    }

    pub fn contains_zero(&self) -> bool {
        self.entries.iter().any(|h| h.is_zero())
    }
}

impl fmt::Display for InfChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, h) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, "}}")
    }
}

/// `(N/2 - 1, N/2 - 2, ...)` of length `floor(N/2)`.
pub fn delta_vector(big_n: usize) -> Vec<Half> {
    let top = big_n as i64 - 2;
    (0..big_n as i64 / 2).map(|k| Half(top - 2 * k)).collect()
}

/// Infinitesimal character of the lift of a one-dimensional lowest weight
/// module: `(δ_t, δ_{p+q-2n}, δ_{2n-t+2})` at rank `floor((p+q)/2)`.
pub fn inf_char_theta_l(p: usize, q: usize, t: usize, n: usize) -> Result<InfChar> {
    if p + q < 2 * n || t > 2 * n + 2 {
        return Err(Error::OutOfRange(format!(
            "infinitesimal character needs p+q >= 2n and t <= 2n+2, got p={p} q={q} t={t} n={n}"
        )));
    }
    let mut entries = delta_vector(t);
    entries.extend(delta_vector(p + q - 2 * n));
    entries.extend(delta_vector(2 * n + 2 - t));
    InfChar::normalized(entries, (p + q) / 2)
}

/// The algebra with dual root system.
pub fn dual_type(t: LieType) -> LieType {
    match t.letter {
        TypeLetter::D => t,
        TypeLetter::B => LieType { letter: TypeLetter::C, m: t.m - 1 },
        TypeLetter::C => LieType { letter: TypeLetter::B, m: t.m + 1 },
    }
}

/// Barbasch-Vogan duality from orbits of `from` to orbits of its dual:
/// transpose, adjust the total for B/C, then collapse.
pub fn bv_dual(p: &Partition, from: LieType) -> Result<Partition> {
    if !p.is_valid_for(from) {
        return Err(Error::InvalidPartition(format!("{p} is not a {from} partition")));
    }
    let target = dual_type(from);
    let tr = p.transpose();
    let adjusted = match from.letter {
        TypeLetter::D => tr,
        TypeLetter::B => {
            let mut rows = tr.rows().to_vec();
            if let Some(last) = rows.last_mut() {
                *last -= 1;
            }
            Partition::from_parts(rows)
        }
        TypeLetter::C => {
            let mut rows = tr.rows().to_vec();
            match rows.first_mut() {
                Some(first) => *first += 1,
                None => rows.push(1),
            }
            Partition::from_parts(rows)
        }
    };
    collapse(&adjusted, target)
}

/// `(p+q-2n-1, 2n-t+1, t-1, ε)` sorted, with `ε = 1` for even `t` and the
/// last two entries dropped when `t = 0`.
pub fn expected_dual_orbit(p: usize, q: usize, t: usize, n: usize) -> Result<Partition> {
    if p + q < 2 * n + 1 || t > 2 * n + 1 {
        return Err(Error::OutOfRange(format!("no dual orbit formula at p={p} q={q} t={t} n={n}")));
    }
    let mut parts = vec![p + q - 2 * n - 1, 2 * n + 1 - t];
    if t > 0 {
        parts.push(t - 1);
        parts.push(usize::from(t.is_multiple_of(2)));
    }
    Ok(Partition::from_parts(parts))
}

/// `(δ_{a₁+1}, δ_{a₂+1}, ...)` normalized to the rank of `g`.
pub fn half_h_dual(dual_orbit: &Partition, rank: usize) -> Result<InfChar> {
    let entries = dual_orbit.rows().iter().flat_map(|&a| delta_vector(a + 1)).collect();
    InfChar::normalized(entries, rank)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Evidence that the lift of a one-dimensional lowest weight module is
/// special unipotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnipotentCertificate {
    pub p: usize,
    pub q: usize,
    pub t: usize,
    pub n: usize,
    pub dim_mu: usize,
    pub hypotheses_met: bool,
    pub hypothesis_violations: Vec<String>,
    pub algebra: Option<LieType>,
    pub dual_algebra: Option<LieType>,
    pub orbit: Option<Partition>,
    pub dual_orbit: Option<Partition>,
    pub expected_dual_orbit: Option<Partition>,
    pub half_h: Option<InfChar>,
    pub lambda: Option<InfChar>,
    pub clauses: Vec<Clause>,
    pub pass: bool,
}

/// Builds the certificate. Violated hypotheses are reported, not fatal.
pub fn check_special_unipotent(p: usize, q: usize, t: usize, n: usize, dim_mu: usize) -> UnipotentCertificate {
    let mut violations = Vec::new();
    if !DualPairParams::osp(p, q, t, n).in_stable_range() {
        violations.push(format!("(p, q+t, n) = ({p}, {}, {n}) is not in the stable range", q + t));
    }
    if q + t < 2 * n {
        violations.push(format!("q+t = {} < 2n = {}", q + t, 2 * n));
    }
    if q < n {
        violations.push(format!("q = {q} < n = {n}"));
    }
    if n < t {
        violations.push(format!("n = {n} < t = {t}"));
    }
    if dim_mu != 1 {
        violations.push(format!("dim mu = {dim_mu} is not 1"));
    }
    let mut cert = UnipotentCertificate {
        p,
        q,
        t,
        n,
        dim_mu,
        hypotheses_met: violations.is_empty(),
        hypothesis_violations: violations,
        algebra: None,
        dual_algebra: None,
        orbit: None,
        dual_orbit: None,
        expected_dual_orbit: None,
        half_h: None,
        lambda: None,
        clauses: Vec::new(),
        pass: false,
    };
    if let Err(e) = fill_certificate(&mut cert) {
        cert.clauses.push(Clause { name: "computation".into(), pass: false, detail: e.to_string() });
    }
    cert.pass = cert.hypotheses_met && !cert.clauses.is_empty() && cert.clauses.iter().all(|c| c.pass);
    cert
}

fn fill_certificate(cert: &mut UnipotentCertificate) -> Result<()> {
    let (p, q, t, n) = (cert.p, cert.q, cert.t, cert.n);
    let g = LieType::so(p + q);
    let gv = dual_type(g);
    cert.algebra = Some(g);
    cert.dual_algebra = Some(gv);

    let orbit = lift_od(p, q, t, n)?.orbit.unsigned();
    let dual = bv_dual(&orbit, g)?;
    let back = bv_dual(&dual, gv)?;
    let expected = expected_dual_orbit(p, q, t, n)?;
    cert.clauses.push(Clause {
        name: "dual_orbit_formula".into(),
        pass: dual == expected,
        detail: format!("d(C) = {dual}, expected {expected}"),
    });
    cert.clauses.push(Clause {
        name: "special".into(),
        pass: back == orbit,
        detail: format!("d(d(C)) = {back}, C = {orbit}"),
    });

    let rank = (p + q) / 2;
    let half_h = half_h_dual(&dual, rank)?;
    let lambda = inf_char_theta_l(p, q, t, n)?;
    if (p + q) % 2 == 0 {
        cert.clauses.push(Clause {
            name: "lambda_has_zero".into(),
            pass: lambda.contains_zero(),
            detail: if lambda.contains_zero() {
                "a zero entry makes the outer involution irrelevant".into()
            } else {
                "no zero entry: equality only up to the outer involution, ambiguous".into()
            },
        });
    }
    cert.clauses.push(Clause {
        name: "infinitesimal_character".into(),
        pass: half_h == lambda,
        detail: format!("half H = {half_h}, lambda = {lambda}"),
    });
    cert.orbit = Some(orbit);
    cert.dual_orbit = Some(dual);
    cert.expected_dual_orbit = Some(expected);
    cert.half_h = Some(half_h);
    cert.lambda = Some(lambda);
    Ok(())
}
