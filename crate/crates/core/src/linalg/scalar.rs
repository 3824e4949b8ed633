//! Dynamically tagged exact scalars, used at serialization boundaries.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::KlrError;

/// The coefficient domain of a scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Domain {
    Rational,
    Integer,
    Modular(u64),
}

impl Domain {
    pub fn is_field(&self) -> bool {
        !matches!(self, Domain::Integer)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "Q"),
            Domain::Integer => write!(f, "Z"),
            Domain::Modular(p) => write!(f, "F{}", p),
        }
    }
}

impl FromStr for Domain {
    type Err = KlrError;
    fn from_str(s: &str) -> Result<Self, KlrError> {
        match s.trim() {
            "Q" | "q" => Ok(Domain::Rational),
            "Z" | "z" => Ok(Domain::Integer),
            t if t.starts_with('F') || t.starts_with('f') => {
                let p: u64 = t[1..]
                    .parse()
                    .map_err(|_| KlrError::Parse(format!("bad field tag {t}")))?;
                if !is_prime(p) {
                    return Err(KlrError::Parse(format!("{p} is not prime")));
                }
                Ok(Domain::Modular(p))
            }
            t => Err(KlrError::Parse(format!("unknown domain {t}"))),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// An exact scalar together with its domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Integer(BigInt),
    Modular { p: u64, value: u64 },
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Integer(_) => Domain::Integer,
            Scalar::Modular { p, .. } => Domain::Modular(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => num_traits::Zero::is_zero(r),
            Scalar::Integer(z) => num_traits::Zero::is_zero(z),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    /// Parses `"p/q"`, `"k"` in the given domain.
    pub fn parse(s: &str, domain: Domain) -> Result<Self, KlrError> {
        let bad = || KlrError::Parse(format!("bad scalar {s:?}"));
        match domain {
            Domain::Rational => {
                let r = if let Some((n, d)) = s.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if num_traits::Zero::is_zero(&d) {
                        return Err(bad());
                    }
                    BigRational::new(n, d)
                } else {
                    BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)
                };
                Ok(Scalar::Rational(r))
            }
            Domain::Integer => Ok(Scalar::Integer(s.trim().parse().map_err(|_| bad())?)),
            Domain::Modular(p) => {
                let v: i64 = s.trim().parse().map_err(|_| bad())?;
                Ok(Scalar::Modular { p, value: v.rem_euclid(p as i64) as u64 })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Integer(z) => write!(f, "{}", z),
            Scalar::Modular { value, .. } => write!(f, "{}", value),
        }
    }
}

/// Scalars serialize as strings ("p/q" for rationals); the domain travels alongside.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Deserialization without a domain tag reads rationals.
impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Scalar::parse(&s, Domain::Rational).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let s = Scalar::parse("-6/4", Domain::Rational).unwrap();
        assert_eq!(s.to_string(), "-3/2");
        let m = Scalar::parse("-1", Domain::Modular(3)).unwrap();
        assert_eq!(m.to_string(), "2");
        assert!(Scalar::parse("1/0", Domain::Rational).is_err());
        assert_eq!("F3".parse::<Domain>().unwrap(), Domain::Modular(3));
        assert!("F4".parse::<Domain>().is_err());
    }
}
