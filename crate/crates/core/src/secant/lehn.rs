//! The `a = 2` count in the Hilbert-scheme variables `d, pi, kappa, e`.

use std::sync::Arc;

use super::chi::{ChiIndex, ChiMonomial, ChiPolynomial};
use super::pipeline::count_4secant;
use crate::error::{Error, Result};
use crate::polycore::render;
use crate::polycore::{GradedPoly, Substitution, VarEntry, VarTable};
use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct LehnReport {
    /// `4! N_2` in `d, pi, kappa, e`.
    pub poly: GradedPoly,
    /// Substituting back reproduces the input exactly.
    pub round_trip: bool,
}

impl LehnReport {
    pub fn to_text(&self) -> String {
        render::to_text(&self.poly)
    }

    pub fn to_latex(&self) -> String {
        render::to_latex_expanded(&self.poly)
    }
}

fn lehn_vars() -> Arc<VarTable> {
    VarTable::roots(&[("d", 0), ("pi", 0), ("kappa", 0), ("e", 0)]).expect("distinct names")
}

fn chi_family(u: &ChiIndex) -> String {
    format!("chi{}", u.key())
}

fn chi_vars() -> Arc<VarTable> {
    VarTable::new(ChiIndex::all(2).iter().map(|u| VarEntry::new(&chi_family(u), 0, 1))).expect("distinct names")
}

fn lin(t: &Arc<VarTable>, coeffs: &[(&str, i64)]) -> Result<GradedPoly> {
    let mut acc = GradedPoly::zero(t);
    for (name, c) in coeffs {
        acc = &acc + &GradedPoly::var(t, name, 0)?.scale(&Rat::from_int(*c));
    }
    Ok(acc)
}

/// `chi_u` in terms of `d, pi, kappa, e`.
fn forward(u: &ChiIndex, t: &Arc<VarTable>) -> Result<GradedPoly> {
    match u.0.as_slice() {
        [0, 0] => lin(t, &[("d", 1)]),
        [1, 0] => lin(t, &[("pi", 1), ("d", 11)]),
        [2, 0] => lin(t, &[("kappa", 1), ("pi", 22), ("d", 121)]),
        [0, 1] => lin(t, &[("e", -1), ("kappa", 1), ("pi", 11), ("d", 55)]),
        _ => Err(Error::Unsupported(format!("{} is not an a = 2 invariant", u))),
    }
}

fn substitute_chi(p: &ChiPolynomial, t: &Arc<VarTable>) -> Result<GradedPoly> {
    let mut acc = GradedPoly::zero(t);
    for (m, c) in p.terms() {
        let mut term = GradedPoly::constant(t, c.clone());
        for (u, e) in m.factors() {
            term = &term * &forward(u, t)?.pow(*e);
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

fn back_to_chi(p: &GradedPoly) -> Result<ChiPolynomial> {
    let ct = chi_vars();
    let v = |u: [u32; 2]| GradedPoly::var(&ct, &chi_family(&ChiIndex(u.to_vec())), 0);
    let (c00, c10, c20, c01) = (v([0, 0])?, v([1, 0])?, v([2, 0])?, v([0, 1])?);
    let s = |x: &GradedPoly, k: i64| x.scale(&Rat::from_int(k));
    let mut sub = Substitution::new(&ct);
    sub.insert("d", 0, c00.clone());
    sub.insert("pi", 0, &c10 - &s(&c00, 11));
    sub.insert("kappa", 0, &(&c20 - &s(&c10, 22)) + &s(&c00, 121));
    sub.insert("e", 0, &(&(&(-&c01) + &c20) - &s(&c10, 11)) + &s(&c00, 55));
    let q = p.substitute(&sub)?;
    let mut out = ChiPolynomial::zero();
    for (factors, c) in q.named_terms() {
        let m = factors
            .into_iter()
            .map(|(fam, _, e)| Ok((fam.trim_start_matches("chi").parse::<ChiIndex>()?, e)))
            .collect::<Result<Vec<_>>>()?;
        out.add_term(ChiMonomial::from_factors(m), c);
    }
    Ok(out)
}

/// Rewrites an `a = 2` polynomial in `d, pi, kappa, e` and checks the inverse change.
pub fn lehn_transform(p: &ChiPolynomial) -> Result<LehnReport> {
    let t = lehn_vars();
    let poly = substitute_chi(p, &t)?;
    let round_trip = back_to_chi(&poly)? == *p;
    Ok(LehnReport { poly, round_trip })
}

/// `4! N_2` in the Hilbert-scheme variables.
pub fn lehn_crosscheck() -> Result<LehnReport> {
    lehn_transform(&count_4secant(2)?.scaled)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn change_of_variables_round_trips() {
        let p: ChiPolynomial = "3*chi[0,1]^2 - 36*chi[1,0]*chi[0,1] + chi[0,0]^4 - 1356*chi[2,0]".parse().unwrap();
        let r = lehn_transform(&p).unwrap();
        assert!(r.round_trip);
        assert!(r.poly.degree().unwrap() <= 4);
        let bad: ChiPolynomial = "chi[0,0,1]".parse().unwrap();
        assert!(lehn_transform(&bad).is_err());
    }
}
