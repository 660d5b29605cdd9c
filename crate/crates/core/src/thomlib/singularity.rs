use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Contact singularity classes of small codimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Singularity {
    /// `A_i`, local algebra `C[x]/(x^{i+1})`.
    A(u32),
    /// `I_{2,2}`, local algebra `C[x,y]/(xy, x^2+y^2)`.
    I22,
    /// `III_{2,2}`, local algebra `C[x,y]/(x^2, xy, y^2)`.
    III22,
    /// `III_{2,3}`, local algebra `C[x,y]/(x^2, xy, y^3)`.
    III23,
}

/// Codimension as `slope * ell + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearCodim {
    pub slope: i64,
    pub offset: i64,
}

impl LinearCodim {
    pub fn at(&self, ell: i64) -> i64 {
        self.slope * ell + self.offset
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingularityInfo {
    pub singularity: Singularity,
    pub codim: LinearCodim,
    /// Dimension of the local algebra.
    pub delta: u32,
    /// The `r` of `Sigma^r`.
    pub corank: u32,
}

impl Singularity {
    pub fn info(self) -> SingularityInfo {
        let (slope, offset, delta, corank) = match self {
            Singularity::A(0) => (0, 0, 1, 0),
            Singularity::A(i) => (i as i64, i as i64, i + 1, 1),
            Singularity::III22 => (2, 4, 3, 2),
            Singularity::I22 => (3, 4, 4, 2),
            Singularity::III23 => (3, 5, 4, 2),
        };
        SingularityInfo { singularity: self, codim: LinearCodim { slope, offset }, delta, corank }
    }

    pub fn codim(self, ell: i64) -> i64 {
        self.info().codim.at(ell)
    }

    pub fn delta(self) -> u32 {
        self.info().delta
    }

    pub fn latex(self) -> String {
        match self {
            Singularity::A(i) => format!("A_{{{}}}", i),
            Singularity::I22 => "I_{2,2}".to_string(),
            Singularity::III22 => "III_{2,2}".to_string(),
            Singularity::III23 => "III_{2,3}".to_string(),
        }
    }

    /// Splits a leading singularity name off `s`, returning the rest.
    pub(crate) fn parse_prefix(s: &str) -> Option<(Singularity, &str)> {
        for (name, sing) in [("III22", Singularity::III22), ("III23", Singularity::III23), ("I22", Singularity::I22)] {
            if let Some(rest) = s.strip_prefix(name) {
                return Some((sing, rest));
            }
        }
        let rest = s.strip_prefix('A')?;
        let digits = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return None;
        }
        let i = rest[..digits].parse().ok()?;
        Some((Singularity::A(i), &rest[digits..]))
    }
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Singularity::A(i) => write!(f, "A{}", i),
            Singularity::I22 => write!(f, "I22"),
            Singularity::III22 => write!(f, "III22"),
            Singularity::III23 => write!(f, "III23"),
        }
    }
}

impl FromStr for Singularity {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Singularity, ParseError> {
        match Singularity::parse_prefix(s.trim()) {
            Some((sing, "")) => Ok(sing),
            _ => Err(ParseError::Singularity(s.to_string())),
        }
    }
}
