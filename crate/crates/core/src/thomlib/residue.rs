//! Residue polynomials of multisingularities as explicit Chern polynomials.

use std::collections::BTreeMap;

use serde::Serialize;

use super::series::{thom_polynomial, ThomSeries};
use super::singularity::Singularity;
use crate::error::{Error, Result};
use crate::polycore::schur::{chern_var, schur2, schur3_in};
use crate::polycore::{GradedPoly, VarTable};
use crate::rat::{factorial, Rat};

fn need_positive(ell: i64) -> Result<()> {
    if ell < 1 {
        return Err(Error::BadRelativeDimension { ell, reason: "must be at least 1".into() });
    }
    Ok(())
}

/// `R_{A_0^r}(ell) = (-1)^{r-1} (r-1)! ts(A_{r-1})` under `d_j -> c_{j+ell}`.
///
/// `r <= 4` uses the built-in series; larger `r` needs `plugin`.
pub fn residue_a0r(r: u32, ell: i64, plugin: Option<&ThomSeries>) -> Result<GradedPoly> {
    need_positive(ell)?;
    if r < 2 {
        return Err(Error::Unsupported(format!("A0^{} has no residue of that form", r)));
    }
    let ts = match ThomSeries::morin(r - 1) {
        Some(ts) => ts,
        None => {
            let p = plugin.ok_or_else(|| Error::MissingSeries(format!("A{}", r - 1)))?;
            if p.delta != r {
                return Err(Error::InvalidSeries(format!(
                    "series {} has delta {}, A{} needs {}",
                    p.name,
                    p.delta,
                    r - 1,
                    r
                )));
            }
            p.clone()
        }
    };
    let sign = if r.is_multiple_of(2) { -1 } else { 1 };
    let scale = factorial(r - 1) * Rat::from_int(sign);
    Ok(ts.instantiate(ell)?.scale(&scale))
}

/// `-2 (c_l c_{l+1} + sum_{i<l} 2^i c_{l-1-i} c_{l+2+i})`.
pub fn residue_a0a1(ell: i64) -> Result<GradedPoly> {
    need_positive(ell)?;
    let t = VarTable::chern("c", 2 * ell as u32 + 1);
    let c = |m| chern_var(&t, m);
    let mut acc = &c(ell) * &c(ell + 1);
    for i in 0..ell {
        acc = &acc + &(&c(ell - 1 - i) * &c(ell + 2 + i)).scale(&Rat::from_int(2).pow(i as u32));
    }
    Ok(acc.scale(&Rat::from_int(-2)))
}

/// `s(l+2, l+2)`, the Giambelli-Thom-Porteous class of `III_{2,2}`.
pub fn residue_iii22(ell: i64) -> Result<GradedPoly> {
    if ell < 0 {
        return Err(Error::BadRelativeDimension { ell, reason: "must be nonnegative".into() });
    }
    Ok(schur2(ell + 2, ell + 2))
}

/// Number of summands of the `III_{2,2}A_0` residue: terms with `i > ell + 1`
/// have a third determinant row made only of `c_{<0}` and vanish.
pub fn iii22a0_terms(ell: i64) -> i64 {
    ell + 1
}

/// `-sum_{i=1}^{l+1} 2^{i+1} s(l+1+i, l+2, l+1-i)`.
pub fn residue_iii22a0(ell: i64) -> Result<GradedPoly> {
    need_positive(ell)?;
    let t = VarTable::chern("c", 3 * ell as u32 + 4);
    let mut acc = GradedPoly::zero(&t);
    for i in 1..=iii22a0_terms(ell) {
        let s = schur3_in(&t, ell + 1 + i, ell + 2, ell + 1 - i);
        acc = &acc - &s.scale(&Rat::from_int(2).pow(i as u32 + 1));
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Proved,
    ConditionalOnSuppliedSeries,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Proved => "proved",
            Provenance::ConditionalOnSuppliedSeries => "conditional on supplied series",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Residue {
    pub poly: GradedPoly,
    pub provenance: Provenance,
}

/// Residue polynomials keyed by multiset of singularities.
///
/// Residues do not depend on the order of the parts, so lookups sort first.
#[derive(Clone, Debug, Default)]
pub struct ResidueTable {
    plugins: BTreeMap<u32, ThomSeries>,
}

impl ResidueTable {
    pub fn new() -> ResidueTable {
        ResidueTable::default()
    }

    /// Registers a plug-in Thom series for `A_{delta-1}`.
    pub fn with_plugin(mut self, ts: ThomSeries) -> ResidueTable {
        self.plugins.insert(ts.delta - 1, ts);
        self
    }

    pub fn plugin(&self, i: u32) -> Option<&ThomSeries> {
        self.plugins.get(&i)
    }

    fn morin_series(&self, i: u32) -> Result<(ThomSeries, Provenance)> {
        match ThomSeries::morin(i) {
            Some(ts) => Ok((ts, Provenance::Proved)),
            None => self
                .plugins
                .get(&i)
                .cloned()
                .map(|ts| (ts, Provenance::ConditionalOnSuppliedSeries))
                .ok_or_else(|| Error::MissingSeries(format!("A{}", i))),
        }
    }

    pub fn residue(&self, parts: &[Singularity], ell: i64) -> Result<Residue> {
        let mut sorted = parts.to_vec();
        sorted.sort();
        let label = || sorted.iter().map(|s| s.to_string()).collect::<String>();
        let proved = |poly| Ok(Residue { poly, provenance: Provenance::Proved });
        match sorted.as_slice() {
            [Singularity::A(i)] => {
                let (ts, provenance) = self.morin_series(*i)?;
                Ok(Residue { poly: thom_polynomial(&ts, ell)?, provenance })
            }
            [Singularity::III22] => proved(residue_iii22(ell)?),
            [Singularity::A(0), Singularity::A(1)] => proved(residue_a0a1(ell)?),
            [Singularity::A(0), Singularity::III22] => proved(residue_iii22a0(ell)?),
            all if all.len() >= 2 && all.iter().all(|s| *s == Singularity::A(0)) => {
                let r = all.len() as u32;
                let (ts, provenance) = self.morin_series(r - 1)?;
                Ok(Residue { poly: residue_a0r(r, ell, Some(&ts))?, provenance })
            }
            _ => Err(Error::MissingResidue(label())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::schur::schur3;

    fn c(t: &std::sync::Arc<VarTable>, m: i64) -> GradedPoly {
        chern_var(t, m)
    }

    fn from_list(t: &std::sync::Arc<VarTable>, terms: &[(i64, &[i64])]) -> GradedPoly {
        let mut acc = GradedPoly::zero(t);
        for (k, idx) in terms {
            let mut p = GradedPoly::constant(t, Rat::from_int(*k));
            for &m in idx.iter() {
                p = &p * &c(t, m);
            }
            acc = &acc + &p;
        }
        acc
    }

    #[test]
    fn quadruple_residues_low_ell() {
        let t = VarTable::chern("c", 6);
        let l1 = from_list(&t, &[(1, &[1, 1, 1]), (3, &[1, 2]), (2, &[3])]).scale(&Rat::from_int(-6));
        assert_eq!(residue_a0r(4, 1, None).unwrap(), l1);
        let l2 = from_list(
            &t,
            &[(1, &[2, 2, 2]), (3, &[1, 2, 3]), (7, &[2, 4]), (2, &[1, 1, 4]), (10, &[1, 5]), (12, &[6]), (1, &[3, 3])],
        )
        .scale(&Rat::from_int(-6));
        assert_eq!(residue_a0r(4, 2, None).unwrap(), l2);
    }

    #[test]
    fn a0a1_small() {
        let t = VarTable::chern("c", 5);
        let e1 = (&(&c(&t, 1) * &c(&t, 2)) + &c(&t, 3)).scale(&Rat::from_int(-2));
        assert_eq!(residue_a0a1(1).unwrap(), e1);
        let e2 = (&(&(&c(&t, 2) * &c(&t, 3)) + &(&c(&t, 1) * &c(&t, 4))) + &c(&t, 5).scale(&Rat::from_int(2)))
            .scale(&Rat::from_int(-2));
        assert_eq!(residue_a0a1(2).unwrap(), e2);
        for ell in 1..=5 {
            assert!(residue_a0a1(ell).unwrap().is_homogeneous_of(2 * ell as u32 + 1));
        }
    }

    #[test]
    fn iii22_small() {
        let t = VarTable::chern("c", 4);
        assert_eq!(residue_iii22(0).unwrap(), &c(&t, 2).pow(2) - &(&c(&t, 1) * &c(&t, 3)));
        assert_eq!(residue_iii22(1).unwrap(), &c(&t, 3).pow(2) - &(&c(&t, 2) * &c(&t, 4)));
    }

    #[test]
    fn iii22a0_sum_terminates() {
        for ell in 1..=4 {
            for i in ell + 2..ell + 6 {
                assert!(schur3(ell + 1 + i, ell + 2, ell + 1 - i).is_zero());
            }
            assert!(residue_iii22a0(ell).unwrap().is_homogeneous_of(3 * ell as u32 + 4));
        }
        let expected = &schur3(3, 3, 1).scale(&Rat::from_int(-4)) - &schur3(4, 3, 0).scale(&Rat::from_int(8));
        assert_eq!(residue_iii22a0(1).unwrap(), expected);
    }

    #[test]
    fn a0r_needs_plugin_beyond_four() {
        assert!(matches!(residue_a0r(5, 1, None), Err(Error::MissingSeries(_))));
        assert_eq!(residue_a0r(2, 3, None).unwrap(), c(&VarTable::chern("c", 3), 3).scale(&Rat::from_int(-1)));
    }

    #[test]
    fn table_lookup_is_order_free() {
        let tab = ResidueTable::new();
        let a = tab.residue(&[Singularity::III22, Singularity::A(0)], 2).unwrap();
        let b = tab.residue(&[Singularity::A(0), Singularity::III22], 2).unwrap();
        assert_eq!(a, b);
        assert!(tab.residue(&[Singularity::A(1), Singularity::A(1)], 1).is_err());
        let plug =
            ThomSeries::from_json(r#"{"terms":[{"coeff":"1/1","dIndices":[0,0,0,0]}],"validUpToDegree":40}"#).unwrap();
        let tab = tab.with_plugin(plug);
        let r = tab.residue(&[Singularity::A(0); 5], 1).unwrap();
        assert_eq!(r.provenance, Provenance::ConditionalOnSuppliedSeries);
        assert_eq!(r.poly, c(&VarTable::chern("c", 1), 1).pow(4).scale(&Rat::from_int(24)));
    }
}
