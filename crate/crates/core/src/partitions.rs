//! Partitions, signed Young diagrams and the B/C/D combinatorics on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    rows: Vec<usize>,
}

impl Partition {
    /// Validating constructor: rows must be positive and weakly decreasing.
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::InvalidPartition(format!("{rows:?} has a zero part")));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{rows:?} is not weakly decreasing")));
        }
        Ok(Self { rows })
    }

    /// Sorts and drops zero parts.
    pub fn from_parts(parts: impl IntoIterator<Item = usize>) -> Self {
        let mut rows: Vec<usize> = parts.into_iter().filter(|&r| r > 0).collect();
        rows.sort_unstable_by(|a, b| b.cmp(a));
        Self { rows }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn total(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Column lengths.
    pub fn transpose(&self) -> Partition {
        let width = self.part(0);
        let rows = (1..=width).map(|c| self.rows.iter().take_while(|&&r| r >= c).count()).collect();
        Partition { rows }
    }

    /// Multiplicity of each part size.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &r in &self.rows {
            *m.entry(r).or_insert(0) += 1;
        }
        m
    }

    /// Whether this partition labels a nilpotent orbit of the given algebra.
    pub fn is_valid_for(&self, t: LieType) -> bool {
        self.total() == t.m && first_violation(self, t.letter).is_none()
    }

    fn check_for(&self, t: LieType) -> Result<()> {
        if self.total() != t.m {
            return Err(Error::InvalidPartition(format!("{self} has total {} but {t} needs {}", self.total(), t.m)));
        }
        if let Some(v) = first_violation(self, t.letter) {
            return Err(Error::InvalidPartition(format!(
                "{self} is not a {t} partition: part {v} has odd multiplicity"
            )));
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(rows: Vec<usize>) -> Result<Self> {
        Partition::new(rows)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.rows
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Classical type letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeLetter {
    B,
    C,
    D,
}

/// A classical simple algebra `so(m)` (types B, D) or `sp(m)` (type C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieType {
    pub letter: TypeLetter,
    pub m: usize,
}

impl LieType {
    pub fn so(m: usize) -> Self {
        let letter = if m % 2 == 1 { TypeLetter::B } else { TypeLetter::D };
        Self { letter, m }
    }

    pub fn sp(m: usize) -> Result<Self> {
        if m % 2 == 1 {
            return Err(Error::OutOfRange(format!("sp({m}) needs even m")));
        }
        Ok(Self { letter: TypeLetter::C, m })
    }

    pub fn is_orthogonal(self) -> bool {
        self.letter != TypeLetter::C
    }

    pub fn dim(self) -> usize {
        let m = self.m;
        if self.is_orthogonal() {
            m * m.saturating_sub(1) / 2
        } else {
            m * (m + 1) / 2
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_orthogonal() {
            write!(f, "so({})", self.m)
        } else {
            write!(f, "sp({})", self.m)
        }
    }
}

/// Largest part with the wrong parity and odd multiplicity, if any.
fn first_violation(p: &Partition, letter: TypeLetter) -> Option<usize> {
    let bad_parity = match letter {
        TypeLetter::B | TypeLetter::D => 0,
        TypeLetter::C => 1,
    };
    p.multiplicities()
        .into_iter()
        .rev()
        .find(|&(part, mult)| part % 2 == bad_parity && mult % 2 == 1)
        .map(|(part, _)| part)
}

/// The dominance-maximal partition of the given type lying below `p`.
pub fn collapse(p: &Partition, t: LieType) -> Result<Partition> {
    if p.total() != t.m {
        return Err(Error::InvalidPartition(format!("{p} has total {} but {t} needs {}", p.total(), t.m)));
    }
    if t.letter == TypeLetter::C && t.m % 2 == 1 {
        return Err(Error::InvalidPartition(format!("{t} has odd size")));
    }
    let mut rows = p.rows.clone();
    while let Some(q) = first_violation(&Partition { rows: rows.clone() }, t.letter) {
        let last = rows.iter().rposition(|&r| r == q).expect("violating part present");
        rows[last] -= 1;
        match rows[last + 1..].iter().position(|&r| r + 1 < q) {
            Some(off) => rows[last + 1 + off] += 1,
            None => rows.push(1),
        }
        rows.retain(|&r| r > 0);
    }
    Ok(Partition { rows })
}

/// Dominance order via prefix sums after zero padding.
pub fn dominance_leq(a: &Partition, b: &Partition) -> bool {
    let n = a.len().max(b.len());
    let (mut sa, mut sb) = (0usize, 0usize);
    for i in 0..n {
        sa += a.part(i);
        sb += b.part(i);
        if sa > sb {
            return false;
        }
    }
    true
}

/// Which orbit dimension to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DimLevel {
    /// Dimension of the complex adjoint orbit.
    Complex,
    /// Dimension of a `K_C`-orbit on `p`, half the complex one.
    K,
}

/// Dimension of the nilpotent orbit labelled by `p` in the algebra `t`.
pub fn orbit_dim(p: &Partition, t: LieType, level: DimLevel) -> Result<usize> {
    p.check_for(t)?;
    let squares: usize = p.transpose().rows.iter().map(|c| c * c).sum();
    let odd = p.rows.iter().filter(|&&r| r % 2 == 1).count();
    let centralizer = if t.is_orthogonal() { (squares - odd) / 2 } else { (squares + odd) / 2 };
    let complex = t.dim() - centralizer;
    match level {
        DimLevel::Complex => Ok(complex),
        DimLevel::K => {
            if complex % 2 == 1 {
                return Err(Error::InvalidPartition(format!("complex orbit dimension {complex} of {p} is odd")));
            }
            Ok(complex / 2)
        }
    }
}

/// Leading sign of a row of boxes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn ascii(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn subscript(self) -> char {
        match self {
            Sign::Plus => '₊',
            Sign::Minus => '₋',
        }
    }

    fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' | '₊' => Some(Sign::Plus),
            '-' | '−' | '₋' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ascii())
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.ascii().to_string())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut it = s.chars();
        match (it.next().and_then(Sign::from_char), it.next()) {
            (Some(sign), None) => Ok(sign),
            _ => Err(serde::de::Error::custom(format!("bad sign {s:?}"))),
        }
    }
}

/// Whether a signed diagram describes orbits for an orthogonal or a
/// symplectic group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignedFamily {
    Orthogonal,
    Symplectic,
}

/// `mult` copies of a row of length `len` whose first box carries `sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedRow {
    pub len: usize,
    pub sign: Sign,
    pub mult: usize,
}

impl SignedRow {
    pub fn new(len: usize, sign: Sign, mult: usize) -> Self {
        Self { len, sign, mult }
    }

    /// (+ boxes, − boxes) of a single row.
    fn boxes(&self) -> (usize, usize) {
        let lead = self.len.div_ceil(2);
        let rest = self.len / 2;
        match self.sign {
            Sign::Plus => (lead, rest),
            Sign::Minus => (rest, lead),
        }
    }
}

/// Result of [`SignedPartition::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub valid: bool,
    pub violations: Vec<String>,
}

/// A signed Young diagram stored by multiplicity, canonically ordered by
/// length descending then `+` before `−`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "SignedPartitionRepr", into = "SignedPartitionRepr")]
pub struct SignedPartition {
    family: SignedFamily,
    rows: Vec<SignedRow>,
}

#[derive(Serialize, Deserialize)]
struct SignedPartitionRepr {
    family: SignedFamily,
    rows: Vec<SignedRow>,
}

impl From<SignedPartitionRepr> for SignedPartition {
    fn from(r: SignedPartitionRepr) -> Self {
        SignedPartition::new(r.family, r.rows)
    }
}

impl From<SignedPartition> for SignedPartitionRepr {
    fn from(s: SignedPartition) -> Self {
        SignedPartitionRepr { family: s.family, rows: s.rows }
    }
}

impl SignedPartition {
    /// Canonicalizes: merges equal (len, sign) rows, drops empty ones.
    pub fn new(family: SignedFamily, rows: impl IntoIterator<Item = SignedRow>) -> Self {
        let mut merged: BTreeMap<(std::cmp::Reverse<usize>, Sign), usize> = BTreeMap::new();
        for r in rows {
            if r.len > 0 && r.mult > 0 {
                *merged.entry((std::cmp::Reverse(r.len), r.sign)).or_insert(0) += r.mult;
            }
        }
        let rows = merged.into_iter().map(|((len, sign), mult)| SignedRow { len: len.0, sign, mult }).collect();
        Self { family, rows }
    }

    pub fn empty(family: SignedFamily) -> Self {
        Self { family, rows: Vec::new() }
    }

    pub fn family(&self) -> SignedFamily {
        self.family
    }

    pub fn rows(&self) -> &[SignedRow] {
        &self.rows
    }

    /// Total multiplicity of rows of a given length and leading sign.
    pub fn count(&self, len: usize, sign: Sign) -> usize {
        self.rows.iter().find(|r| r.len == len && r.sign == sign).map_or(0, |r| r.mult)
    }

    pub fn signature(&self) -> (usize, usize) {
        self.rows.iter().fold((0, 0), |(a, b), r| {
            let (p, m) = r.boxes();
            (a + p * r.mult, b + m * r.mult)
        })
    }

    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.len * r.mult).sum()
    }

    /// Forget the signs.
    pub fn unsigned(&self) -> Partition {
        Partition::from_parts(self.rows.iter().flat_map(|r| std::iter::repeat_n(r.len, r.mult)))
    }

    /// The complex algebra whose orbits the underlying partition labels.
    pub fn lie_type(&self) -> LieType {
        match self.family {
            SignedFamily::Orthogonal => LieType::so(self.total()),
            SignedFamily::Symplectic => LieType { letter: TypeLetter::C, m: self.total() },
        }
    }

    /// Checks the sign-pairing rule: in the orthogonal family rows of even
    /// length come in `+`/`−` pairs, in the symplectic family rows of odd
    /// length do.
    pub fn validate(&self) -> Validation {
        let paired_parity = match self.family {
            SignedFamily::Orthogonal => 0,
            SignedFamily::Symplectic => 1,
        };
        let mut violations = Vec::new();
        let mut lens: Vec<usize> = self.rows.iter().map(|r| r.len).collect();
        lens.dedup();
        for len in lens {
            if len % 2 != paired_parity {
                continue;
            }
            let (plus, minus) = (self.count(len, Sign::Plus), self.count(len, Sign::Minus));
            if plus != minus {
                violations.push(format!(
                    "rows of length {len} must pair with opposite signs, found {plus} with + and {minus} with -"
                ));
            }
        }
        if self.family == SignedFamily::Symplectic && self.total() % 2 == 1 {
            violations.push(format!("symplectic diagram has odd size {}", self.total()));
        }
        Validation { valid: violations.is_empty(), violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid
    }

    /// Orbit dimension of the underlying unsigned partition.
    pub fn orbit_dim(&self, level: DimLevel) -> Result<usize> {
        orbit_dim(&self.unsigned(), self.lie_type(), level)
    }

    /// Notation with subscript signs and superscript multiplicities, e.g.
    /// `3₊²2₊2₋1₊²`.
    pub fn to_superscript(&self) -> String {
        if self.rows.is_empty() {
            return "∅".to_string();
        }
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&r.len.to_string());
            s.push(r.sign.subscript());
            if r.mult != 1 {
                s.push_str(&superscript_digits(r.mult));
            }
        }
        s
    }

    /// Parses the ASCII text form (`3+^2 2+ 2- 1+^2`).
    pub fn parse(family: SignedFamily, text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for tok in text.split_whitespace() {
            rows.push(parse_row(tok)?);
        }
        Ok(Self::new(family, rows))
    }
}

fn superscript_digits(n: usize) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| SUP[c.to_digit(10).unwrap() as usize]).collect()
}

fn parse_row(tok: &str) -> Result<SignedRow> {
    let bad = || Error::Parse(format!("bad signed row {tok:?}, expected e.g. 3+^2"));
    let sign_at = tok.find(|c| Sign::from_char(c).is_some()).ok_or_else(bad)?;
    let len: usize = tok[..sign_at].parse().map_err(|_| bad())?;
    let mut rest = tok[sign_at..].chars();
    let sign = rest.next().and_then(Sign::from_char).ok_or_else(bad)?;
    let tail: String = rest.collect();
    let mult = if tail.is_empty() { 1 } else { tail.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())? };
    if len == 0 {
        return Err(bad());
    }
    Ok(SignedRow { len, sign, mult })
}

impl fmt::Display for SignedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", r.len, r.sign)?;
            if r.mult != 1 {
                write!(f, "^{}", r.mult)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(3,3,2)`, `3,3,2` or `3 3 2`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: std::result::Result<Vec<usize>, _> =
            inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(str::parse).collect();
        let parts = parts.map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        Partition::new(parts)
    }
}
