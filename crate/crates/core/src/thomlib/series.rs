//! Thom series in the symbols `d_i` and their instantiation as Chern polynomials.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::polycore::schur::chern_var;
use crate::polycore::{series_inverse, GradedPoly, VarEntry, VarTable};
use crate::rat::Rat;

/// `a_{i,j}` for all `i + j <= n`, as `table[i][j]`.
///
/// Obtained by expanding `(F(u) + F(v)) / (1 - u - v)` with
/// `F(u) = u(1-u)/(1-3u)` as a truncated bivariate series.
pub fn a_table(n: u32) -> Vec<Vec<Rat>> {
    let t = VarTable::new(vec![VarEntry::new("u", 0, 1), VarEntry::new("v", 0, 1)]).expect("distinct");
    let u = GradedPoly::var(&t, "u", 0).expect("u").with_trunc(Some(n));
    let v = GradedPoly::var(&t, "v", 0).expect("v").with_trunc(Some(n));
    let one = GradedPoly::one(&t).with_trunc(Some(n));
    let three = Rat::from_int(3);
    let f = |x: &GradedPoly| -> GradedPoly {
        let inv = series_inverse(&(&one - &x.scale(&three)), n).expect("unit constant term");
        &(x * &(&one - x)) * &inv
    };
    let denom = series_inverse(&(&(&one - &u) - &v), n).expect("unit constant term");
    let g = &(&f(&u) + &f(&v)) * &denom;
    let mut table = vec![Vec::new(); n as usize + 1];
    for i in 0..=n {
        for j in 0..=(n - i) {
            table[i as usize].push(g.coefficient_of(&[("u", 0, i), ("v", 0, j)]));
        }
    }
    table
}

pub fn a_coeff(i: u32, j: u32) -> Rat {
    a_table(i + j)[i as usize][j as usize].clone()
}

/// The closed-form families known for Morin singularities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BuiltinSeries {
    A0,
    A1,
    A2,
    A3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomTerm {
    pub coeff: Rat,
    #[serde(rename = "dIndices")]
    pub d_indices: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermSource {
    Builtin(BuiltinSeries),
    /// A finite term list; complete for instantiated degrees up to `valid_up_to_degree`.
    Explicit {
        terms: Vec<ThomTerm>,
        valid_up_to_degree: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThomSeries {
    pub name: String,
    pub delta: u32,
    pub source: TermSource,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct SeriesFile {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    delta: Option<u32>,
    terms: Vec<ThomTerm>,
    valid_up_to_degree: u32,
}

impl ThomSeries {
    pub fn builtin(b: BuiltinSeries) -> ThomSeries {
        let (name, delta) = match b {
            BuiltinSeries::A0 => ("A0", 1),
            BuiltinSeries::A1 => ("A1", 2),
            BuiltinSeries::A2 => ("A2", 3),
            BuiltinSeries::A3 => ("A3", 4),
        };
        ThomSeries { name: name.to_string(), delta, source: TermSource::Builtin(b) }
    }

    /// Built-in series for `A_i`, `i <= 3`.
    pub fn morin(i: u32) -> Option<ThomSeries> {
        let b = match i {
            0 => BuiltinSeries::A0,
            1 => BuiltinSeries::A1,
            2 => BuiltinSeries::A2,
            3 => BuiltinSeries::A3,
            _ => return None,
        };
        Some(ThomSeries::builtin(b))
    }

    pub fn explicit(name: &str, delta: u32, terms: Vec<ThomTerm>, valid_up_to_degree: u32) -> Result<ThomSeries> {
        if delta == 0 {
            return Err(Error::InvalidSeries("delta must be positive".into()));
        }
        if let Some(t) = terms.iter().find(|t| t.d_indices.len() as u32 != delta - 1) {
            return Err(Error::InvalidSeries(format!(
                "term {:?} has {} factors, expected {}",
                t.d_indices,
                t.d_indices.len(),
                delta - 1
            )));
        }
        Ok(ThomSeries { name: name.to_string(), delta, source: TermSource::Explicit { terms, valid_up_to_degree } })
    }

    /// Parses the plug-in file format
    /// `{"name"?, "delta"?, "terms": [{"coeff": "p/q", "dIndices": [..]}], "validUpToDegree": D}`.
    ///
    /// When `delta` is absent it is read off the factor count of the terms.
    pub fn from_json(s: &str) -> Result<ThomSeries> {
        let f: SeriesFile = serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))?;
        let delta = match f.delta {
            Some(d) => d,
            None => match f.terms.first() {
                Some(t) => t.d_indices.len() as u32 + 1,
                None => return Err(Error::InvalidSeries("empty term list without delta".into())),
            },
        };
        let name = f.name.unwrap_or_else(|| format!("A{}", delta - 1));
        ThomSeries::explicit(&name, delta, f.terms, f.valid_up_to_degree)
    }

    pub fn is_builtin(&self) -> bool {
        matches!(self.source, TermSource::Builtin(_))
    }

    /// Terms `(coeff, d-indices)` that survive `d_j -> c_{j+shift}` with
    /// `c_{<0} = 0`. For built-in families the infinite sums are cut exactly
    /// where an index would go below `-shift`.
    pub fn terms_at_shift(&self, shift: i64) -> Result<Vec<(Rat, Vec<i64>)>> {
        let live = |idx: &[i64]| idx.iter().all(|&j| j + shift >= 0);
        let mut out = Vec::new();
        match &self.source {
            TermSource::Builtin(BuiltinSeries::A0) => out.push((Rat::one(), vec![])),
            TermSource::Builtin(BuiltinSeries::A1) => {
                if shift >= 0 {
                    out.push((Rat::one(), vec![0]));
                }
            }
            TermSource::Builtin(BuiltinSeries::A2) => {
                if shift >= 0 {
                    out.push((Rat::one(), vec![0, 0]));
                }
                for i in 1..=shift {
                    out.push((Rat::from_int(2).pow(i as u32 - 1), vec![-i, i]));
                }
            }
            TermSource::Builtin(BuiltinSeries::A3) => {
                let two = Rat::from_int(2);
                let three = Rat::from_int(3);
                for i in 0..=shift {
                    out.push((two.pow(i as u32), vec![-i, 0, i]));
                }
                let third = Rat::new(1, 3);
                for i in 1..=shift {
                    for j in 1..=shift {
                        out.push((&third * &(two.pow(i as u32) * three.pow(j as u32)), vec![-i, -j, i + j]));
                    }
                }
                if shift >= 0 {
                    let a = a_table(shift as u32);
                    let half = Rat::new(1, 2);
                    for i in 0..=shift {
                        for j in 0..=(shift - i) {
                            let c = &a[i as usize][j as usize];
                            if !c.is_zero() {
                                out.push((&half * c, vec![-i - j, i, j]));
                            }
                        }
                    }
                }
            }
            TermSource::Explicit { terms, valid_up_to_degree } => {
                let factors = i64::from(self.delta) - 1;
                for t in terms {
                    let deg: i64 = t.d_indices.iter().sum::<i64>() + factors * shift;
                    if deg > i64::from(*valid_up_to_degree) {
                        return Err(Error::DegreeBoundExceeded {
                            series: self.name.clone(),
                            requested: deg.max(0) as u32,
                            bound: *valid_up_to_degree,
                        });
                    }
                }
                for t in terms {
                    out.push((t.coeff.clone(), t.d_indices.clone()));
                }
            }
        }
        out.retain(|(_, idx)| live(idx));
        Ok(out)
    }

    /// The polynomial obtained from `d_j -> c_{j+shift}`.
    pub fn instantiate(&self, shift: i64) -> Result<GradedPoly> {
        let terms = self.terms_at_shift(shift)?;
        let max_index = terms.iter().flat_map(|(_, idx)| idx.iter().map(|&j| j + shift)).max().unwrap_or(1).max(1);
        let vars = VarTable::chern("c", max_index as u32);
        Ok(instantiate_terms(&vars, &terms, shift))
    }
}

pub(crate) fn instantiate_terms(vars: &Arc<VarTable>, terms: &[(Rat, Vec<i64>)], shift: i64) -> GradedPoly {
    let mut acc = GradedPoly::zero(vars);
    for (c, idx) in terms {
        let mut p = GradedPoly::constant(vars, c.clone());
        for &j in idx {
            p = &p * &chern_var(vars, j + shift);
        }
        acc = &acc + &p;
    }
    acc
}

/// Thom polynomial at relative dimension `ell`: `d_j -> c_{j+ell+1}`.
pub fn thom_polynomial(ts: &ThomSeries, ell: i64) -> Result<GradedPoly> {
    if ell < 0 {
        return Err(Error::BadRelativeDimension { ell, reason: "must be nonnegative".into() });
    }
    ts.instantiate(ell + 1)
}
