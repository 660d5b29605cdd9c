use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::rat::factorial;
use crate::thomlib::Singularity;

/// A multiset of singularities with a distinguished first element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiSingularity {
    parts: Vec<Singularity>,
}

impl MultiSingularity {
    pub fn new(parts: Vec<Singularity>) -> Option<MultiSingularity> {
        if parts.is_empty() {
            None
        } else {
            Some(MultiSingularity { parts })
        }
    }

    /// `A_0^r`.
    pub fn a0_power(r: usize) -> MultiSingularity {
        MultiSingularity { parts: vec![Singularity::A(0); r.max(1)] }
    }

    pub fn parts(&self) -> &[Singularity] {
        &self.parts
    }

    pub fn distinguished(&self) -> Singularity {
        self.parts[0]
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    /// `(r-1) ell + sum codim(alpha_i)`.
    pub fn codim(&self, ell: i64) -> i64 {
        (self.r() as i64 - 1) * ell + self.parts.iter().map(|s| s.codim(ell)).sum::<i64>()
    }

    /// Order of the permutation group of the multiset.
    pub fn aut_count(&self) -> u64 {
        aut_count_of(&self.parts)
    }

    /// Count `k` when this is `A_0^k`.
    pub fn a0_count(&self) -> Option<usize> {
        self.parts.iter().all(|s| *s == Singularity::A(0)).then_some(self.r())
    }

    pub fn sorted_parts(&self) -> Vec<Singularity> {
        let mut v = self.parts.clone();
        v.sort();
        v
    }
}

pub(crate) fn aut_count_of(parts: &[Singularity]) -> u64 {
    let mut sorted = parts.to_vec();
    sorted.sort();
    let mut total = 1u64;
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|s| **s == sorted[i]).count();
        total *= factorial(j as u32).to_i64().expect("small factorial") as u64;
        i += j;
    }
    total
}

/// Renders parts with runs collapsed to powers, e.g. `A1A0^2`.
pub(crate) fn render_parts(parts: &[Singularity], latex: bool) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < parts.len() {
        let j = parts[i..].iter().take_while(|s| **s == parts[i]).count();
        out.push_str(&if latex { parts[i].latex() } else { parts[i].to_string() });
        if j > 1 {
            out.push_str(&if latex { format!("^{{{}}}", j) } else { format!("^{}", j) });
        }
        i += j;
    }
    out
}

impl fmt::Display for MultiSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_parts(&self.parts, false))
    }
}

impl FromStr for MultiSingularity {
    type Err = ParseError;

    /// Accepts concatenations like `A0^4`, `A1A0^2`, `III22A0`.
    fn from_str(s: &str) -> Result<MultiSingularity, ParseError> {
        let err = || ParseError::MultiSingularity(s.to_string());
        let mut rest: &str = &s.trim().replace([' ', '*'], "");
        let mut parts = Vec::new();
        while !rest.is_empty() {
            let (sing, tail) = Singularity::parse_prefix(rest).ok_or_else(err)?;
            rest = tail;
            let mut times = 1usize;
            if let Some(tail) = rest.strip_prefix('^') {
                let digits = tail.chars().take_while(|c| c.is_ascii_digit()).count();
                times = tail[..digits].parse().map_err(|_| err())?;
                if times == 0 {
                    return Err(err());
                }
                rest = &tail[digits..];
            }
            parts.extend(std::iter::repeat_n(sing, times));
        }
        MultiSingularity::new(parts).ok_or_else(err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let m: MultiSingularity = "A1A0^2".parse().unwrap();
        assert_eq!(m.parts(), &[Singularity::A(1), Singularity::A(0), Singularity::A(0)]);
        assert_eq!(m.to_string(), "A1A0^2");
        assert_eq!("III22A0".parse::<MultiSingularity>().unwrap().r(), 2);
        assert!("".parse::<MultiSingularity>().is_err());
        assert!("A0^0".parse::<MultiSingularity>().is_err());
        assert!("A0^".parse::<MultiSingularity>().is_err());
        assert!("Q2".parse::<MultiSingularity>().is_err());
    }

    #[test]
    fn codims_and_automorphisms() {
        for ell in 1..6 {
            assert_eq!(MultiSingularity::a0_power(4).codim(ell), 3 * ell);
            assert_eq!("III22A0".parse::<MultiSingularity>().unwrap().codim(ell), 3 * ell + 4);
            assert_eq!(MultiSingularity::a0_power(1).codim(ell), 0);
        }
        assert_eq!(MultiSingularity::a0_power(4).aut_count(), 24);
        assert_eq!("A1A0^2".parse::<MultiSingularity>().unwrap().aut_count(), 2);
        assert_eq!("A1".parse::<MultiSingularity>().unwrap().aut_count(), 1);
    }
}
