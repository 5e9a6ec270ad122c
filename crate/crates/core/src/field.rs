//! Coefficient fields: the rationals and prime fields of word size.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {0} exceeds the supported word size")]
    TooLarge(u64),
    #[error("unrecognized field `{0}` (expected q or f<prime>)")]
    Unrecognized(String),
}

/// The field of coefficients for homology computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub const F2: Field = Field::Prime(2);

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p > u64::from(u32::MAX >> 1) {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    #[must_use]
    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "f{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "qq" || t == "rational" {
            return Ok(Field::Rational);
        }
        let digits = t.strip_prefix('f').unwrap_or("");
        match digits.parse::<u64>() {
            Ok(p) => Field::prime(p),
            Err(_) => Err(FieldError::Unrecognized(s.to_string())),
        }
    }
}

impl TryFrom<String> for Field {
    type Error = FieldError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Field> for String {
    fn from(f: Field) -> String {
        f.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("f2".parse::<Field>().unwrap(), Field::F2);
        assert_eq!("F7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("f4".parse::<Field>(), Err(FieldError::NotPrime(4)));
        assert!("z".parse::<Field>().is_err());
        assert_eq!(Field::Prime(5).to_string(), "f5");
    }
}
