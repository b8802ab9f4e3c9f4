//! Natural numbers extended by a single infinite element.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Edge multiplicity: a machine-sized count or infinitely many.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Fin(u64),
    Inf,
}

impl Default for Multiplicity {
    fn default() -> Self {
        Multiplicity::ZERO
    }
}

impl Multiplicity {
    pub const ZERO: Multiplicity = Multiplicity::Fin(0);

    pub fn finite(k: u64) -> Self {
        Multiplicity::Fin(k)
    }

    pub fn is_zero(self) -> bool {
        self == Multiplicity::ZERO
    }

    pub fn is_inf(self) -> bool {
        matches!(self, Multiplicity::Inf)
    }

    /// Finite value, `None` for infinity.
    pub fn as_finite(self) -> Option<u64> {
        match self {
            Multiplicity::Fin(k) => Some(k),
            Multiplicity::Inf => None,
        }
    }

    pub fn to_ext(self) -> ExtNat {
        match self {
            Multiplicity::Fin(k) => ExtNat::from(k),
            Multiplicity::Inf => ExtNat::Inf,
        }
    }
}

impl PartialOrd for Multiplicity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multiplicity {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.as_finite(), other.as_finite()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        }
    }
}

impl From<u64> for Multiplicity {
    fn from(k: u64) -> Self {
        Multiplicity::finite(k)
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Fin(k) => write!(f, "{k}"),
            Multiplicity::Inf => write!(f, "inf"),
        }
    }
}

impl FromStr for Multiplicity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Multiplicity::Inf);
        }
        t.parse::<u64>()
            .map(Multiplicity::finite)
            .map_err(|_| format!("bad multiplicity `{t}`"))
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.as_finite() {
            Some(k) => s.serialize_u64(k),
            None => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(k) => Ok(Multiplicity::finite(k)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Arbitrary-precision natural number or infinity. Used for path counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Fin(BigUint),
    Inf,
}

impl ExtNat {
    pub fn zero() -> Self {
        ExtNat::Fin(BigUint::zero())
    }

    pub fn one() -> Self {
        ExtNat::Fin(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtNat::Fin(k) if k.is_zero())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtNat::Inf)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_inf()
    }

    /// Value clamped to `cap`, infinity included.
    pub fn saturate(&self, cap: u64) -> u64 {
        match self {
            ExtNat::Inf => cap,
            ExtNat::Fin(k) => {
                if *k >= BigUint::from(cap) {
                    cap
                } else {
                    k.iter_u64_digits().next().unwrap_or(0)
                }
            }
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            ExtNat::Inf => None,
            ExtNat::Fin(k) => {
                let digits: Vec<u64> = k.iter_u64_digits().collect();
                match digits.len() {
                    0 => Some(0),
                    1 => Some(digits[0]),
                    _ => None,
                }
            }
        }
    }

    pub fn mul_mult(&self, m: Multiplicity) -> ExtNat {
        self.clone() * m.to_ext()
    }
}

impl From<u64> for ExtNat {
    fn from(k: u64) -> Self {
        ExtNat::Fin(BigUint::from(k))
    }
}

impl From<BigUint> for ExtNat {
    fn from(k: BigUint) -> Self {
        ExtNat::Fin(k)
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.cmp(b),
            (ExtNat::Fin(_), ExtNat::Inf) => Ordering::Less,
            (ExtNat::Inf, ExtNat::Fin(_)) => Ordering::Greater,
            (ExtNat::Inf, ExtNat::Inf) => Ordering::Equal,
        }
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a + b),
            _ => ExtNat::Inf,
        }
    }
}

impl<'a> Add<&'a ExtNat> for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: &'a ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a + b),
            _ => ExtNat::Inf,
        }
    }
}

// 0 * inf = 0: an absent edge bundle contributes no paths.
impl Mul for ExtNat {
    type Output = ExtNat;

    fn mul(self, rhs: ExtNat) -> ExtNat {
        if self.is_zero() || rhs.is_zero() {
            return ExtNat::zero();
        }
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a * b),
            _ => ExtNat::Inf,
        }
    }
}

impl std::iter::Sum for ExtNat {
    fn sum<I: Iterator<Item = ExtNat>>(iter: I) -> ExtNat {
        iter.fold(ExtNat::zero(), |a, b| a + b)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(k) => write!(f, "{k}"),
            ExtNat::Inf => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtNat::Inf => s.serialize_str("inf"),
            ExtNat::Fin(k) => match self.to_u64() {
                Some(v) => s.serialize_u64(v),
                None => s.serialize_str(&k.to_string()),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_times_inf_is_zero() {
        assert_eq!(ExtNat::zero() * ExtNat::Inf, ExtNat::zero());
        assert_eq!(ExtNat::Inf * ExtNat::zero(), ExtNat::zero());
        assert_eq!(ExtNat::from(3) * ExtNat::Inf, ExtNat::Inf);
    }

    #[test]
    fn ordering_puts_inf_last() {
        assert!(ExtNat::from(u64::MAX) < ExtNat::Inf);
        assert!(Multiplicity::Fin(7) < Multiplicity::Inf);
        assert!(Multiplicity::ZERO < Multiplicity::Fin(1));
    }

    #[test]
    fn big_sums_do_not_overflow() {
        let a = ExtNat::from(u64::MAX);
        let b = a.clone() + a.clone();
        assert!(b > a);
        assert_eq!(b.to_u64(), None);
        assert_eq!(b.saturate(2), 2);
    }

    #[test]
    fn multiplicity_round_trips_through_text() {
        for m in [Multiplicity::ZERO, Multiplicity::Fin(5), Multiplicity::Inf] {
            assert_eq!(m.to_string().parse::<Multiplicity>().unwrap(), m);
        }
        assert!("x".parse::<Multiplicity>().is_err());
        assert_eq!("INF".parse::<Multiplicity>().unwrap(), Multiplicity::Inf);
    }
}
