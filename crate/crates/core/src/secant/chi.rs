//! Polynomials in the embedding invariants `chi_u`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::rat::Rat;

/// Exponent vector `u = (u_1, .., u_a)` of the normal Chern monomial `n_1^{u_1} .. n_a^{u_a}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChiIndex(pub Vec<u32>);

impl ChiIndex {
    pub fn zero(a: u32) -> ChiIndex {
        ChiIndex(vec![0; a as usize])
    }

    /// `sum_t t * u_t`.
    pub fn weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &u)| (i as u32 + 1) * u).sum()
    }

    /// All indices of length `a` with weight at most `a`, by weight then reverse lex.
    pub fn all(a: u32) -> Vec<ChiIndex> {
        let mut out = Vec::new();
        for w in 0..=a {
            let mut cur = vec![0u32; a as usize];
            of_weight(a as usize, 0, w, &mut cur, &mut out);
        }
        out
    }

    fn joined(&self) -> String {
        self.0.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Key used in `--chi` files, e.g. `(1,0)`.
    pub fn key(&self) -> String {
        format!("({})", self.joined())
    }

    pub fn to_latex(&self) -> String {
        format!("\\chi_{{{}}}", self.joined())
    }
}

fn of_weight(a: usize, pos: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<ChiIndex>) {
    if pos == a {
        if remaining == 0 {
            out.push(ChiIndex(cur.clone()));
        }
        return;
    }
    let t = pos as u32 + 1;
    for u in (0..=remaining / t).rev() {
        cur[pos] = u;
        of_weight(a, pos + 1, remaining - u * t, cur, out);
    }
    cur[pos] = 0;
}

impl fmt::Display for ChiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[{}]", self.joined())
    }
}

impl FromStr for ChiIndex {
    type Err = ParseError;
    /// Accepts `(1,0)`, `[1,0]`, `1,0` and `chi[1,0]`.
    fn from_str(s: &str) -> Result<ChiIndex, ParseError> {
        let err = || ParseError::ChiIndex(s.to_string());
        let t = s.trim();
        let t = t.strip_prefix("chi").unwrap_or(t).trim();
        let t = t.trim_start_matches(['(', '[', '_', '{']).trim_end_matches([')', ']', '}']);
        if t.trim().is_empty() {
            return Err(err());
        }
        let parts: Result<Vec<u32>, _> = t.split(',').map(|p| p.trim().parse::<u32>()).collect();
        Ok(ChiIndex(parts.map_err(|_| err())?))
    }
}

/// A product of `chi_u` powers, kept sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChiMonomial(Vec<(ChiIndex, u32)>);

impl ChiMonomial {
    pub fn one() -> ChiMonomial {
        ChiMonomial(Vec::new())
    }

    pub fn var(u: ChiIndex) -> ChiMonomial {
        ChiMonomial(vec![(u, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (ChiIndex, u32)>) -> ChiMonomial {
        let mut map: BTreeMap<ChiIndex, u32> = BTreeMap::new();
        for (u, e) in factors {
            if e > 0 {
                *map.entry(u).or_insert(0) += e;
            }
        }
        ChiMonomial(map.into_iter().collect())
    }

    pub fn factors(&self) -> &[(ChiIndex, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &ChiMonomial) -> ChiMonomial {
        ChiMonomial::from_factors(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn render(&self, latex: bool) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(u, e)| {
                let base = if latex { u.to_latex() } else { u.to_string() };
                match (e, latex) {
                    (1, _) => base,
                    (_, true) => format!("{}^{{{}}}", base, e),
                    (_, false) => format!("{}^{}", base, e),
                }
            })
            .collect();
        parts.join(if latex { "" } else { "*" })
    }
}

/// Exact polynomial in the `chi_u`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChiPolynomial {
    terms: BTreeMap<ChiMonomial, Rat>,
}

impl ChiPolynomial {
    pub fn zero() -> ChiPolynomial {
        ChiPolynomial::default()
    }

    pub fn add_term(&mut self, m: ChiMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ChiMonomial, &Rat)> {
        self.terms.iter()
    }

    /// Number of nonzero terms; emptiness is `is_zero`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &ChiMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest total degree in the `chi_u`.
    pub fn chi_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Every index occurring in some term.
    pub fn indices(&self) -> Vec<ChiIndex> {
        let mut v: Vec<ChiIndex> = self.terms.keys().flat_map(|m| m.0.iter().map(|(u, _)| u.clone())).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn scale(&self, c: &Rat) -> ChiPolynomial {
        let mut out = ChiPolynomial::zero();
        for (m, r) in &self.terms {
            out.add_term(m.clone(), r * c);
        }
        out
    }

    pub fn add(&self, other: &ChiPolynomial) -> ChiPolynomial {
        let mut out = self.clone();
        for (m, r) in &other.terms {
            out.add_term(m.clone(), r.clone());
        }
        out
    }

    /// Numeric value; every occurring `chi_u` must be assigned.
    pub fn evaluate(&self, values: &BTreeMap<ChiIndex, Rat>) -> Result<Rat> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (u, e) in &m.0 {
                let x = values.get(u).ok_or_else(|| Error::MissingChi(u.to_string()))?;
                v *= x.pow(*e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Terms by decreasing degree, then by index.
    fn ordered(&self) -> Vec<(&ChiMonomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
        v
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.ordered().into_iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let abs = c.abs();
            let coeff = if latex && !abs.is_integer() {
                format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
            } else {
                abs.to_string()
            };
            if m.is_one() {
                out.push_str(&coeff);
            } else if abs.is_one() {
                out.push_str(&m.render(latex));
            } else if latex {
                out.push_str(&format!("{}{}", coeff, m.render(true)));
            } else {
                out.push_str(&format!("{}*{}", coeff, m.render(false)));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.render(false)
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .ordered()
            .into_iter()
            .map(|(m, c)| {
                let factors: Vec<serde_json::Value> =
                    m.0.iter().map(|(u, e)| serde_json::json!({ "index": u.0, "exp": e })).collect();
                serde_json::json!({ "coeff": c.to_fraction_string(), "factors": factors })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<ChiPolynomial, ParseError> {
        let err = |m: &str| ParseError::Json(m.to_string());
        let terms = v.get("terms").and_then(|t| t.as_array()).ok_or_else(|| err("missing terms"))?;
        let mut out = ChiPolynomial::zero();
        for t in terms {
            let c: Rat = t.get("coeff").and_then(|c| c.as_str()).ok_or_else(|| err("missing coeff"))?.parse()?;
            let mut factors = Vec::new();
            for f in t.get("factors").and_then(|f| f.as_array()).ok_or_else(|| err("missing factors"))? {
                let idx: Vec<u32> = serde_json::from_value(f.get("index").cloned().unwrap_or_default())
                    .map_err(|e| err(&e.to_string()))?;
                let e = f.get("exp").and_then(|e| e.as_u64()).ok_or_else(|| err("missing exp"))?;
                factors.push((ChiIndex(idx), e as u32));
            }
            out.add_term(ChiMonomial::from_factors(factors), c);
        }
        Ok(out)
    }
}

impl fmt::Display for ChiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl FromStr for ChiPolynomial {
    type Err = ParseError;
    /// Parses sums of terms like `-36*chi[1,0]*chi[0,1]` or `+3 chi[0,1]^2`.
    fn from_str(s: &str) -> Result<ChiPolynomial, ParseError> {
        let err = || ParseError::Json(format!("cannot parse chi polynomial `{}`", s));
        // split on top-level signs
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut depth = 0;
        for ch in s.chars() {
            match ch {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') && !cur.trim().is_empty() && !cur.trim_end().ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut out = ChiPolynomial::zero();
        for t in terms {
            let t = t.trim();
            if t.is_empty() {
                continue;
            }
            let (neg, body) = match t.as_bytes()[0] {
                b'-' => (true, t[1..].trim()),
                b'+' => (false, t[1..].trim()),
                _ => (false, t),
            };
            let mut coeff = Rat::one();
            let mut factors = Vec::new();
            for tok in body.split(|c: char| c == '*' || c.is_whitespace()).filter(|x| !x.is_empty()) {
                if tok.starts_with("chi") {
                    let (base, exp) = match tok.rsplit_once('^') {
                        Some((b, e)) => (b, e.parse::<u32>().map_err(|_| err())?),
                        None => (tok, 1),
                    };
                    factors.push((base.parse::<ChiIndex>()?, exp));
                } else {
                    coeff *= tok.parse::<Rat>()?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(ChiMonomial::from_factors(factors), coeff);
        }
        Ok(out)
    }
}
