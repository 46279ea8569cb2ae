use std::fmt::{Debug, Display};
use std::str::FromStr;

use num::{BigRational, FromPrimitive, Num, Signed, ToPrimitive};

use crate::{Error, Result};

/// Value type of a lattice function: `f64` for the fast path, `BigRational`
/// for exact identity checks.
pub trait Scalar:
    Clone + PartialOrd + Debug + Display + Send + Sync + Num + Signed + ToPrimitive + FromPrimitive
{
    /// `"float"` or `"rational"`, as used in function files.
    const MODE: &'static str;

    fn pow_u32(&self, exp: u32) -> Self {
        num::pow::pow(self.clone(), exp as usize)
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const MODE: &'static str = "float";

    fn pow_u32(&self, exp: u32) -> Self {
        self.powi(exp as i32)
    }
}

impl Scalar for BigRational {
    const MODE: &'static str = "rational";
}

/// Extended-real exponent `p` in `[1, inf]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            Ok(Self::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Self::Finite(p))
        } else {
            Err(Error::InvalidExponent(p.to_string()))
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(p) => Some(p),
            Self::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Self::Infinity)
    }

    /// `p` as a positive integer, when it is one.
    pub fn as_integer(self) -> Option<u32> {
        match self {
            Self::Finite(p) if p.fract() == 0.0 && p <= u32::MAX as f64 => Some(p as u32),
            _ => None,
        }
    }

    /// `1/p`, with `1/inf = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Self::Finite(p) => 1.0 / p,
            Self::Infinity => 0.0,
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "INF" => Ok(Self::Infinity),
            t => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidExponent(t.to_string()))?;
                if p.is_infinite() {
                    return Err(Error::InvalidExponent(t.to_string()));
                }
                Self::new(p)
            }
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Finite(p) => write!(f, "{p}"),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

impl serde::Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_exponents() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::Finite(2.0));
        assert_eq!("1.5".parse::<Exponent>().unwrap(), Exponent::Finite(1.5));
        assert!("0.5".parse::<Exponent>().is_err());
        assert!("-3".parse::<Exponent>().is_err());
        assert!("abc".parse::<Exponent>().is_err());
        assert!(Exponent::new(f64::NAN).is_err());
    }

    #[test]
    fn integer_detection() {
        assert_eq!(Exponent::Finite(3.0).as_integer(), Some(3));
        assert_eq!(Exponent::Finite(1.5).as_integer(), None);
        assert_eq!(Exponent::Infinity.as_integer(), None);
    }
}
