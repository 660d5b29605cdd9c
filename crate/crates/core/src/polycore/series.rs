//! Truncated power series built from total Chern classes.

use std::sync::Arc;

use super::graded::{GradedPoly, Substitution};
use super::vars::VarTable;
use crate::error::{Error, Result};
use crate::rat::Rat;

/// `p^{-1}` truncated at weighted degree `maxdeg`; `p` must have constant term 1.
pub fn series_inverse(p: &GradedPoly, maxdeg: u32) -> Result<GradedPoly> {
    if !p.constant_term().is_one() {
        return Err(Error::NotLinearFactor(format!("constant term of {} is not 1", p)));
    }
    let one = GradedPoly::one(p.vars()).with_trunc(Some(maxdeg));
    let tail = (p - &GradedPoly::one(p.vars())).with_trunc(Some(maxdeg));
    // 1/(1+t) = sum (-t)^k; t has no constant term so maxdeg+1 steps suffice
    let neg_tail = -&tail;
    let mut acc = one.clone();
    let mut power = one;
    for _ in 0..maxdeg {
        power = &power * &neg_tail;
        if power.is_zero() {
            break;
        }
        acc = &acc + &power;
    }
    Ok(acc)
}

fn check_linear(w: &GradedPoly) -> Result<()> {
    if w.is_zero() || w.is_homogeneous_of(1) {
        Ok(())
    } else {
        Err(Error::NotLinearFactor(w.to_string()))
    }
}

/// Multiset difference of factor lists under exact equality.
fn cancel_common(num: &[GradedPoly], den: &[GradedPoly]) -> (Vec<GradedPoly>, Vec<GradedPoly>) {
    let mut num: Vec<GradedPoly> = num.to_vec();
    let mut rest = Vec::new();
    for d in den {
        if let Some(i) = num.iter().position(|n| n == d) {
            num.remove(i);
        } else {
            rest.push(d.clone());
        }
    }
    (num, rest)
}

/// `prod (1 + w) / prod (1 + v)` expanded up to weighted degree `maxdeg`.
///
/// Each factor is passed as its weight-one linear form `w` (resp. `v`);
/// identical numerator and denominator factors cancel before expanding.
pub fn series_quotient(
    vars: &Arc<VarTable>,
    numerator: &[GradedPoly],
    denominator: &[GradedPoly],
    maxdeg: u32,
) -> Result<GradedPoly> {
    for w in numerator.iter().chain(denominator) {
        check_linear(w)?;
    }
    let (num, den) = cancel_common(numerator, denominator);
    let one = GradedPoly::one(vars).with_trunc(Some(maxdeg));
    let mut acc = one.clone();
    for w in &num {
        acc = &acc * &(&one + w);
    }
    for v in &den {
        acc = &acc * &series_inverse(&(&one + v), maxdeg)?;
    }
    Ok(acc)
}

/// The assignment `c_k -> degree-k part of total`, for `k = 1..=maxdeg`.
pub fn chern_assignment(total: &GradedPoly, family: &str, maxdeg: u32) -> Substitution {
    let mut s = Substitution::new(total.vars());
    for k in 1..=maxdeg {
        s.insert(family, k as i32, total.homogeneous_part(k));
    }
    s
}

/// Evaluates a polynomial in `c_1, c_2, ...` at the graded pieces of a total class.
pub fn evaluate_at_total(p: &GradedPoly, total: &GradedPoly, family: &str) -> Result<GradedPoly> {
    let target = total.vars().clone();
    p.substitute_with(&target, |e| {
        if e.family == family && e.index >= 1 {
            Some(total.homogeneous_part(e.index as u32))
        } else {
            None
        }
    })
}

/// The total class `1 + w` for a linear form `w`.
pub fn one_plus(w: &GradedPoly) -> GradedPoly {
    &GradedPoly::one(w.vars()) + w
}

/// Scalar multiple of a single variable, handy for weight lists.
pub fn scaled_var(vars: &Arc<VarTable>, family: &str, index: i32, c: i64) -> Result<GradedPoly> {
    Ok(GradedPoly::var(vars, family, index)?.scale(&Rat::from_int(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots() -> Arc<VarTable> {
        VarTable::roots(&[("alpha", 0), ("beta", 1)]).unwrap()
    }

    #[test]
    fn whitney_total_class() {
        let t = roots();
        let a = GradedPoly::var(&t, "alpha", 0).unwrap();
        let b = GradedPoly::var(&t, "beta", 1).unwrap();
        let num = vec![a.scale(&Rat::from_int(2)), b.clone(), &b - &a];
        let den = vec![a.clone(), &b - &a];
        let q = series_quotient(&t, &num, &den, 2).unwrap();
        let expected = &(&GradedPoly::one(&t) + &(&b + &a)) + &(&(&a * &b) - &a.pow(2));
        assert_eq!(q, expected);
    }

    #[test]
    fn identical_factors_cancel() {
        let t = roots();
        let a = GradedPoly::var(&t, "alpha", 0).unwrap();
        let b = GradedPoly::var(&t, "beta", 1).unwrap();
        let f = vec![a.clone(), &b - &a];
        assert_eq!(series_quotient(&t, &f, &f, 5).unwrap(), GradedPoly::one(&t));
    }

    #[test]
    fn a1_chern_classes_at_ell_one() {
        let t = roots();
        let a = GradedPoly::var(&t, "alpha", 0).unwrap();
        let b = GradedPoly::var(&t, "beta", 1).unwrap();
        let q = series_quotient(&t, &[a.scale(&Rat::from_int(2)), b.clone()], std::slice::from_ref(&a), 3).unwrap();
        assert_eq!(q.homogeneous_part(1), &b + &a);
        assert_eq!(q.homogeneous_part(2), &(&b * &a) - &a.pow(2));
    }

    #[test]
    fn rejects_nonlinear_factor() {
        let t = roots();
        let a = GradedPoly::var(&t, "alpha", 0).unwrap();
        assert!(series_quotient(&t, &[a.pow(2)], &[], 2).is_err());
    }
}
