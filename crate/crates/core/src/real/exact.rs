//! Exact real numbers of the form `q₀ + q₁·√d₁ + … + qₘ·√dₘ` with
//! rational coefficients and distinct squarefree radicands.
//!
//! Distinct square roots of squarefree integers are linearly independent
//! over the rationals, so the representation below is canonical (no zero
//! coefficients) and equality is structural.  Signs of nonzero numbers
//! are decided by refining rational enclosures of each root until the
//! enclosure of the sum excludes zero; canonicity guarantees termination.

use crate::real::RealError;
use crate::Rat;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A basis radical: the rational unit or the square root of a squarefree
/// integer at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Radical {
    One,
    Sqrt(u64),
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radical::One => write!(f, "1"),
            Radical::Sqrt(d) => write!(f, "sqrt{d}"),
        }
    }
}

pub(crate) fn is_squarefree(d: u64) -> bool {
    let mut p = 2u64;
    while p.checked_mul(p).map_or(false, |sq| sq <= d) {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Splits `d` as `s²·f` with `f` squarefree, returning `(s, f)`.
fn extract_square(mut d: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut p = 2u64;
    while p.checked_mul(p).map_or(false, |sq| sq <= d) {
        while d % (p * p) == 0 {
            d /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, d)
}

/// An exact element of the ring ℚ[√2, √3, √5, …].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactReal {
    /// Canonical coordinates: no zero coefficients are stored.
    coords: BTreeMap<Radical, Rat>,
}

impl ExactReal {
    fn canonical(mut coords: BTreeMap<Radical, Rat>) -> Self {
        coords.retain(|_, c| !c.is_zero());
        ExactReal { coords }
    }

    pub fn zero() -> Self {
        ExactReal {
            coords: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        ExactReal::from_rat(Rat::one())
    }

    pub fn from_rat(q: Rat) -> Self {
        let mut coords = BTreeMap::new();
        coords.insert(Radical::One, q);
        ExactReal::canonical(coords)
    }

    pub fn from_int(n: i64) -> Self {
        ExactReal::from_rat(Rat::from_integer(n.into()))
    }

    /// The exact square root of a nonnegative integer, normalized: square
    /// factors are pulled out, so `sqrt(8) = 2·√2` and `sqrt(9) = 3`.
    pub fn sqrt(d: u64) -> Self {
        if d == 0 {
            return ExactReal::zero();
        }
        let (s, f) = extract_square(d);
        let coeff = Rat::from_integer(s.into());
        if f == 1 {
            ExactReal::from_rat(coeff)
        } else {
            let mut coords = BTreeMap::new();
            coords.insert(Radical::Sqrt(f), coeff);
            ExactReal { coords }
        }
    }

    pub fn coords(&self) -> &BTreeMap<Radical, Rat> {
        &self.coords
    }

    pub fn coordinate(&self, r: &Radical) -> Rat {
        self.coords.get(r).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        match self.coords.len() {
            0 => Some(Rat::zero()),
            1 => self.coords.get(&Radical::One).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &ExactReal) -> ExactReal {
        let mut coords = self.coords.clone();
        for (r, c) in &other.coords {
            let entry = coords.entry(*r).or_insert_with(Rat::zero);
            *entry += c;
        }
        ExactReal::canonical(coords)
    }

    pub fn sub(&self, other: &ExactReal) -> ExactReal {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExactReal {
        ExactReal {
            coords: self.coords.iter().map(|(r, c)| (*r, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, q: &Rat) -> ExactReal {
        if q.is_zero() {
            return ExactReal::zero();
        }
        ExactReal {
            coords: self.coords.iter().map(|(r, c)| (*r, c * q)).collect(),
        }
    }

    /// The sign of the number, decided exactly.
    ///
    /// Zero is the empty combination, so a nonzero value has a nonzero
    /// coordinate and enclosure refinement must eventually separate it
    /// from zero.  Precision doubles each round.
    pub fn sign(&self) -> Ordering {
        if self.coords.is_empty() {
            return Ordering::Equal;
        }
        if let Some(q) = self.as_rational() {
            return q.numer().sign().cmp(&num_bigint::Sign::NoSign);
        }
        let mut bits: u32 = 8;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            assert!(
                bits <= 1 << 16,
                "enclosure refinement failed to separate a nonzero value from zero"
            );
            bits *= 2;
        }
    }

    /// A rational enclosure `[lo, hi]` with each root bracketed to
    /// `2^-bits`.
    fn enclosure(&self, bits: u32) -> (Rat, Rat) {
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        let scale = crate::Int::one() << bits;
        for (r, c) in &self.coords {
            match r {
                Radical::One => {
                    lo += c;
                    hi += c;
                }
                Radical::Sqrt(d) => {
                    let s = (crate::Int::from(*d) * &scale * &scale).sqrt();
                    let root_lo = Rat::new(s.clone(), scale.clone());
                    let root_hi = Rat::new(s + 1, scale.clone());
                    if c.is_positive() {
                        lo += c * &root_lo;
                        hi += c * &root_hi;
                    } else {
                        lo += c * &root_hi;
                        hi += c * &root_lo;
                    }
                }
            }
        }
        (lo, hi)
    }

    pub fn compare(&self, other: &ExactReal) -> Ordering {
        self.sub(other).sign()
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (n, (r, c)) in self.coords.iter().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match r {
                Radical::One => write!(f, "{mag}")?,
                Radical::Sqrt(d) => {
                    if mag.is_one() {
                        write!(f, "sqrt{d}")?;
                    } else {
                        write!(f, "{mag}*sqrt{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parses literals such as `1/2`, `sqrt2`, `sqrt6/3`, `3*sqrt5`,
/// `1 - 1/2*sqrt2`.  Decimal notation is rejected: every coefficient is
/// an integer or a fraction.
impl FromStr for ExactReal {
    type Err = RealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let fail = |reason: &str| RealError::Parse(s.trim().to_owned(), reason.to_owned());
        if compact.is_empty() {
            return Err(fail("empty literal"));
        }
        let mut total = ExactReal::zero();
        let mut term_start = 0;
        let chars: Vec<char> = compact.chars().collect();
        let mut cuts = Vec::new();
        for (i, &ch) in chars.iter().enumerate().skip(1) {
            if ch == '+' || ch == '-' {
                cuts.push(i);
            }
        }
        cuts.push(chars.len());
        let mut negative = chars[0] == '-';
        if chars[0] == '+' || chars[0] == '-' {
            term_start = 1;
        }
        for cut in cuts {
            if cut <= term_start {
                return Err(fail("misplaced sign"));
            }
            let term: String = chars[term_start..cut].iter().collect();
            let value = parse_term(&term).map_err(|r| fail(&r))?;
            total = if negative {
                total.sub(&value)
            } else {
                total.add(&value)
            };
            if cut < chars.len() {
                negative = chars[cut] == '-';
                term_start = cut + 1;
            }
        }
        Ok(total)
    }
}

fn parse_term(term: &str) -> Result<ExactReal, String> {
    if term.is_empty() {
        return Err("empty term".to_owned());
    }
    match term.find("sqrt") {
        None => {
            let q = Rat::from_str(term)
                .map_err(|_| format!("`{term}` is not an integer or a fraction"))?;
            Ok(ExactReal::from_rat(q))
        }
        Some(at) => {
            let coeff_part = term[..at].trim_end_matches('*');
            let coeff = if coeff_part.is_empty() {
                Rat::one()
            } else {
                Rat::from_str(coeff_part)
                    .map_err(|_| format!("`{coeff_part}` is not an integer or a fraction"))?
            };
            let rest = &term[at + 4..];
            let (radicand_part, denom_part) = match rest.split_once('/') {
                None => (rest, None),
                Some((r, d)) => (r, Some(d)),
            };
            let d: u64 = radicand_part
                .parse()
                .map_err(|_| format!("`{radicand_part}` is not a radicand"))?;
            let mut value = ExactReal::sqrt(d).scale(&coeff);
            if let Some(denom_part) = denom_part {
                let n: u64 = denom_part
                    .parse()
                    .map_err(|_| format!("`{denom_part}` is not a denominator"))?;
                if n == 0 {
                    return Err("division by zero".to_owned());
                }
                value = value.scale(&Rat::new(crate::Int::one(), n.into()));
            }
            Ok(value)
        }
    }
}

impl Serialize for ExactReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            coords: BTreeMap<String, String>,
        }
        let coords = self
            .coords
            .iter()
            .map(|(r, c)| (r.to_string(), c.to_string()))
            .collect();
        Repr { coords }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            coords: BTreeMap<String, String>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut coords = BTreeMap::new();
        for (key, value) in repr.coords {
            let radical = if key == "1" {
                Radical::One
            } else if let Some(ds) = key.strip_prefix("sqrt") {
                let d: u64 = ds
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad radical key `{key}`")))?;
                if d < 2 || !is_squarefree(d) {
                    return Err(D::Error::custom(format!(
                        "radical key `{key}` is not canonical (squarefree, at least 2)"
                    )));
                }
                Radical::Sqrt(d)
            } else {
                return Err(D::Error::custom(format!("bad radical key `{key}`")));
            };
            let coeff = Rat::from_str(&value)
                .map_err(|_| D::Error::custom(format!("bad coefficient `{value}`")))?;
            coords.insert(radical, coeff);
        }
        Ok(ExactReal::canonical(coords))
    }
}
