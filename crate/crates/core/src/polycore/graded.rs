use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::vars::{Monomial, VarEntry, VarTable};
use crate::error::{Error, Result};
use crate::rat::Rat;

/// Sparse exact-rational polynomial over a weighted [`VarTable`].
///
/// Zero coefficients are never stored. When `trunc` is set, every term has
/// weighted degree at most `trunc` and products are truncated to it.
#[derive(Clone)]
pub struct GradedPoly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Monomial, Rat>,
    trunc: Option<u32>,
}

/// `(family, index, exponent)` factors of a monomial.
pub type NamedMonomial = Vec<(String, i32, u32)>;

impl GradedPoly {
    pub fn zero(vars: &Arc<VarTable>) -> GradedPoly {
        GradedPoly { vars: vars.clone(), terms: BTreeMap::new(), trunc: None }
    }

    pub fn one(vars: &Arc<VarTable>) -> GradedPoly {
        GradedPoly::constant(vars, Rat::one())
    }

    pub fn constant(vars: &Arc<VarTable>, c: Rat) -> GradedPoly {
        let mut p = GradedPoly::zero(vars);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(vars: &Arc<VarTable>, family: &str, index: i32) -> Result<GradedPoly> {
        let pos =
            vars.position(family, index).ok_or_else(|| Error::UnknownVar { family: family.to_string(), index })?;
        Ok(GradedPoly::var_at(vars, pos))
    }

    pub fn var_at(vars: &Arc<VarTable>, pos: usize) -> GradedPoly {
        let mut p = GradedPoly::zero(vars);
        p.add_term(Monomial::from_exponents(vars, &[(pos, 1)]), Rat::one());
        p
    }

    /// Linear form `sum coeffs[i] * var_i` over the table positions.
    pub fn linear(vars: &Arc<VarTable>, coeffs: &[(usize, Rat)]) -> GradedPoly {
        let mut p = GradedPoly::zero(vars);
        for (pos, c) in coeffs {
            p.add_term(Monomial::from_exponents(vars, &[(*pos, 1)]), c.clone());
        }
        p
    }

    /// Terms given as `(position, exponent)` lists.
    pub fn from_terms<I>(vars: &Arc<VarTable>, terms: I) -> GradedPoly
    where
        I: IntoIterator<Item = (Vec<(usize, u32)>, Rat)>,
    {
        let mut p = GradedPoly::zero(vars);
        for (exps, c) in terms {
            p.add_term(Monomial::from_exponents(vars, &exps), c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn trunc(&self) -> Option<u32> {
        self.trunc
    }

    /// Sets the truncation degree, dropping terms above it.
    pub fn with_trunc(mut self, trunc: Option<u32>) -> GradedPoly {
        self.trunc = trunc;
        if let Some(t) = trunc {
            self.terms.retain(|m, _| m.degree() <= t);
        }
        self
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        if let Some(t) = self.trunc {
            if m.degree() > t {
                return;
            }
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    /// Number of nonzero terms; emptiness is `is_zero`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Rat {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of the monomial named by `(family, index, exponent)` triples.
    pub fn coefficient_of(&self, factors: &[(&str, i32, u32)]) -> Rat {
        let mut pairs = Vec::new();
        for &(f, i, e) in factors {
            match self.vars.position(f, i) {
                Some(p) => pairs.push((p, e)),
                None if e == 0 => {}
                None => return Rat::zero(),
            }
        }
        self.coefficient(&Monomial::from_exponents(&self.vars, &pairs))
    }

    /// Highest weighted degree of a term (`None` for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// `Some(d)` when every term has weighted degree `d`. The zero polynomial
    /// is homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match (self.min_degree(), self.degree()) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn homogeneous_part(&self, d: u32) -> GradedPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
        GradedPoly { vars: self.vars.clone(), terms, trunc: None }
    }

    fn remap_to(&self, target: &Arc<VarTable>) -> Result<GradedPoly> {
        if Arc::ptr_eq(&self.vars, target) || *self.vars == **target {
            let mut p = self.clone();
            p.vars = target.clone();
            return Ok(p);
        }
        let map = self.vars.embedding(target)?;
        let mut p = GradedPoly { vars: target.clone(), terms: BTreeMap::new(), trunc: self.trunc };
        for (m, c) in &self.terms {
            p.add_term(m.remap(target, &map), c.clone());
        }
        Ok(p)
    }

    /// Re-expresses both operands over a common table.
    fn align(&self, other: &GradedPoly) -> Result<(GradedPoly, GradedPoly)> {
        let table = VarTable::merge(&self.vars, &other.vars)?;
        Ok((self.remap_to(&table)?, other.remap_to(&table)?))
    }

    fn same_table(&self, other: &GradedPoly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars)
    }

    fn combined_trunc(a: Option<u32>, b: Option<u32>) -> Option<u32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn checked_add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        if !self.same_table(other) {
            let (a, b) = self.align(other)?;
            return a.checked_add(&b);
        }
        let trunc = GradedPoly::combined_trunc(self.trunc, other.trunc);
        let mut out = self.clone().with_trunc(trunc);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.checked_add(&other.scale(&-Rat::one()))
    }

    pub fn checked_mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        if !self.same_table(other) {
            let (a, b) = self.align(other)?;
            return a.checked_mul(&b);
        }
        let trunc = GradedPoly::combined_trunc(self.trunc, other.trunc);
        let mut out = GradedPoly { vars: self.vars.clone(), terms: BTreeMap::new(), trunc };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(t) = trunc {
                    if ma.degree() + mb.degree() > t {
                        continue;
                    }
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(&self.vars).with_trunc(self.trunc);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        GradedPoly { vars: self.vars.clone(), terms, trunc: self.trunc }
    }

    pub fn pow(&self, exp: u32) -> GradedPoly {
        let mut acc = GradedPoly::one(&self.vars).with_trunc(self.trunc);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Composition: replaces each occurring variable by the polynomial that
    /// `assign` returns for it. All images must live over `target`.
    pub fn substitute_with<F>(&self, target: &Arc<VarTable>, mut assign: F) -> Result<GradedPoly>
    where
        F: FnMut(&VarEntry) -> Option<GradedPoly>,
    {
        let mut images: HashMap<u32, Vec<GradedPoly>> = HashMap::new();
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = GradedPoly::constant(target, c.clone());
            for &(v, e) in m.exponents() {
                if let std::collections::hash_map::Entry::Vacant(e) = images.entry(v) {
                    let entry = self.vars.entry(v as usize);
                    let img = assign(entry).ok_or_else(|| Error::MissingAssignment(entry.to_string()))?;
                    e.insert(vec![GradedPoly::one(target), img.remap_to(target)?]);
                }
                let powers = images.get_mut(&v).expect("inserted above");
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &powers[1];
                    powers.push(next);
                }
                term = &term * &powers[e as usize];
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Substitution driven by a map keyed on `(family, index)`.
    pub fn substitute(&self, assignment: &Substitution) -> Result<GradedPoly> {
        self.substitute_with(&assignment.target, |e| assignment.get(&e.family, e.index).cloned())
    }

    /// Replaces one variable, keeping the others.
    pub fn specialize(&self, family: &str, index: i32, value: &GradedPoly) -> Result<GradedPoly> {
        let target = VarTable::merge(&self.vars, value.vars())?;
        self.substitute_with(&target, |e| {
            if e.family == family && e.index == index {
                Some(value.clone())
            } else {
                GradedPoly::var(&target, &e.family, e.index).ok()
            }
        })
    }

    /// Positive gcd of numerators over lcm of denominators, signed like the leading term.
    pub fn content(&self) -> Rat {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return Rat::one();
        }
        let mut content = Rat::from_bigint(g) / Rat::from_bigint(l);
        if let Some((_, lead)) = self.terms().next() {
            if lead.is_negative() {
                content = -content;
            }
        }
        content
    }

    pub(crate) fn abs_content_is_one(c: &Rat) -> bool {
        c.numer().abs().is_one() && c.denom().is_one()
    }

    /// Terms as `(family, index, exponent)` lists; table-independent view.
    pub fn named_terms(&self) -> Vec<(NamedMonomial, Rat)> {
        self.terms()
            .map(|(m, c)| {
                let names = m
                    .exponents()
                    .iter()
                    .map(|&(v, e)| {
                        let entry = self.vars.entry(v as usize);
                        (entry.family.clone(), entry.index, e)
                    })
                    .collect();
                (names, c.clone())
            })
            .collect()
    }
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &GradedPoly) -> bool {
        if self.same_table(other) || self.vars == other.vars {
            return self.terms == other.terms;
        }
        let mut a = self.named_terms();
        let mut b = other.named_terms();
        a.sort();
        b.sort();
        a == b
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::render::to_text(self))
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::render::to_text(self))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b> $tr<&'b GradedPoly> for &'a GradedPoly {
            type Output = GradedPoly;
            /// Panics when the variable tables cannot be merged; use the
            /// `checked_*` form to handle that case.
            fn $method(self, rhs: &'b GradedPoly) -> GradedPoly {
                self.$checked(rhs).expect("incompatible variable tables")
            }
        }
        impl $tr<GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $method(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $method(self, rhs: &'a GradedPoly) -> GradedPoly {
                (&self).$method(rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&-Rat::one())
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&-Rat::one())
    }
}

/// Assignment of polynomials (over one target table) to named variables.
#[derive(Clone, Debug)]
pub struct Substitution {
    target: Arc<VarTable>,
    map: HashMap<(String, i32), GradedPoly>,
}

impl Substitution {
    pub fn new(target: &Arc<VarTable>) -> Substitution {
        Substitution { target: target.clone(), map: HashMap::new() }
    }

    pub fn insert(&mut self, family: &str, index: i32, value: GradedPoly) {
        self.map.insert((family.to_string(), index), value);
    }

    pub fn get(&self, family: &str, index: i32) -> Option<&GradedPoly> {
        self.map.get(&(family.to_string(), index))
    }

    pub fn target(&self) -> &Arc<VarTable> {
        &self.target
    }

    /// Identity on every variable of `source`.
    pub fn identity(source: &Arc<VarTable>) -> Substitution {
        let mut s = Substitution::new(source);
        for (pos, e) in source.entries().iter().enumerate() {
            s.insert(&e.family, e.index, GradedPoly::var_at(source, pos));
        }
        s
    }
}

/// True iff `p` becomes identically zero under each listed single-variable
/// specialization (applied one at a time).
pub fn vanishes_under(p: &GradedPoly, specializations: &[((String, i32), GradedPoly)]) -> Result<bool> {
    for ((family, index), value) in specializations {
        if !p.specialize(family, *index, value)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(t: &Arc<VarTable>, i: i32) -> GradedPoly {
        GradedPoly::var(t, "c", i).unwrap()
    }

    #[test]
    fn additive_inverse_and_sum() {
        let t = VarTable::chern("c", 2);
        assert!((c(&t, 1) + (-c(&t, 1))).is_zero());
        let s = &(&c(&t, 1) * &c(&t, 1)) + &c(&t, 2);
        assert_eq!(s.len(), 2);
        assert_eq!(s.homogeneous_degree(), Some(2));
    }

    #[test]
    fn whitney_difference() {
        let t = VarTable::roots(&[("alpha", 0), ("beta", 0)]).unwrap();
        let a = GradedPoly::var(&t, "alpha", 0).unwrap();
        let b = GradedPoly::var(&t, "beta", 0).unwrap();
        let lhs = (&b - &a) + b.scale(&Rat::from_int(-2));
        assert_eq!(lhs, -(&b + &a));
    }

    #[test]
    fn truncated_geometric_inverse() {
        let t = VarTable::roots(&[("alpha", 0)]).unwrap();
        let a = GradedPoly::var(&t, "alpha", 0).unwrap();
        let one = GradedPoly::one(&t);
        let p = (&one + &a).with_trunc(Some(3));
        let q = &(&(&one - &a) + &a.pow(2)) - &a.pow(3);
        assert_eq!(&p * &q, one);
    }

    #[test]
    fn mixed_tables_merge() {
        let t1 = VarTable::chern("c", 1);
        let t2 = VarTable::chern("c", 3);
        let s = &c(&t1, 1) + &c(&t2, 3);
        assert_eq!(s.vars().len(), 3);
        assert_eq!(c(&t1, 1), c(&t2, 1));
    }

    #[test]
    fn missing_assignment_is_an_error() {
        let t = VarTable::chern("c", 2);
        let p = &c(&t, 1) * &c(&t, 2);
        let mut s = Substitution::new(&t);
        s.insert("c", 1, c(&t, 1));
        assert!(matches!(p.substitute(&s), Err(Error::MissingAssignment(_))));
        assert_eq!(p.substitute(&Substitution::identity(&t)).unwrap(), p);
    }

    #[test]
    fn vanishing_under_specializations() {
        let t = VarTable::roots(&[("alpha", 1), ("alpha", 2), ("beta", 1), ("beta", 2)]).unwrap();
        let v = |f: &str, i: i32| GradedPoly::var(&t, f, i).unwrap();
        let q = &v("alpha", 1) + &v("beta", 2).pow(2);
        let zero = GradedPoly::zero(&t);
        let p = &v("beta", 1) * &q;
        assert!(vanishes_under(&p, &[(("beta".into(), 1), zero.clone())]).unwrap());
        let p2 = &(&v("alpha", 1) + &v("alpha", 2)) * &q;
        assert!(vanishes_under(&p2, &[(("alpha".into(), 2), -v("alpha", 1))]).unwrap());
        let p3 = &v("beta", 1) + &v("beta", 2);
        assert!(!vanishes_under(&p3, &[(("beta".into(), 1), zero)]).unwrap());
    }

    #[test]
    fn content_is_signed_by_leading_term() {
        let t = VarTable::chern("c", 3);
        let p = &c(&t, 1).pow(3).scale(&Rat::from_int(-6)) + &c(&t, 3).scale(&Rat::from_int(-12));
        assert_eq!(p.content(), Rat::from_int(-6));
    }
}
