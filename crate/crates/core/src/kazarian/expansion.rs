//! Formal expansions of source and target multisingularity classes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::multi::{aut_count_of, render_parts, MultiSingularity};
use crate::error::Result;
use crate::polycore::render::{to_latex, to_text_factored};
use crate::polycore::GradedPoly;
use crate::rat::Rat;
use crate::thomlib::{ResidueTable, Singularity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    /// `S_beta`, the pushforward of the residue class.
    S,
    /// Target class `n_beta`.
    N,
    /// `f^*(n_beta)`.
    PullN,
    /// `f^*(nbar_beta) = f^*(n_beta) / #Aut(beta)`.
    PullNBar,
    /// Residue polynomial `R_beta`.
    R,
}

/// A formal symbol; `parts` is the sorted multiset it refers to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub parts: Vec<Singularity>,
}

impl Symbol {
    pub fn new(kind: SymbolKind, parts: &[Singularity]) -> Symbol {
        let mut parts = parts.to_vec();
        parts.sort();
        Symbol { kind, parts }
    }

    fn a0_count(&self) -> Option<usize> {
        self.parts.iter().all(|s| *s == Singularity::A(0)).then_some(self.parts.len())
    }

    fn subscript(&self, latex: bool) -> String {
        let mut p = self.parts.clone();
        p.reverse();
        match self.a0_count() {
            Some(k) => k.to_string(),
            None if latex => format!("{{{}}}", render_parts(&p, true)),
            None => render_parts(&p, false),
        }
    }

    pub fn to_latex(&self) -> String {
        let sub = self.subscript(true);
        let sub = if sub.len() > 1 && !sub.starts_with('{') { format!("{{{}}}", sub) } else { sub };
        match self.kind {
            SymbolKind::S if self.a0_count().is_some() => format!("s_{}", sub),
            SymbolKind::S => format!("S_{}", sub),
            SymbolKind::N => format!("n_{}", sub),
            SymbolKind::PullN => format!("f^*(n_{})", sub),
            SymbolKind::PullNBar => format!("f^*(\\bar n_{})", sub),
            SymbolKind::R => format!("R_{{{}}}", render_parts(&self.parts, true)),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = self.subscript(false);
        match self.kind {
            SymbolKind::S if self.a0_count().is_some() => write!(f, "s{}", sub),
            SymbolKind::S => write!(f, "S[{}]", sub),
            SymbolKind::N => write!(f, "n{}", sub),
            SymbolKind::PullN => write!(f, "f*(n{})", sub),
            SymbolKind::PullNBar => write!(f, "f*(nbar{})", sub),
            SymbolKind::R => write!(f, "R[{}]", render_parts(&self.parts, false)),
        }
    }
}

/// Rational linear combination of products of symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalExpansion {
    terms: BTreeMap<Vec<Symbol>, Rat>,
}

impl FormalExpansion {
    pub fn new() -> FormalExpansion {
        FormalExpansion::default()
    }

    pub fn add_term(&mut self, mut product: Vec<Symbol>, c: Rat) {
        product.sort();
        let entry = self.terms.entry(product).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Symbol>, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, product: &[Symbol]) -> Rat {
        let mut key = product.to_vec();
        key.sort();
        self.terms.get(&key).cloned().unwrap_or_else(Rat::zero)
    }

    fn mul_symbol(&self, s: &Symbol, c: &Rat) -> FormalExpansion {
        let mut out = FormalExpansion::new();
        for (prod, k) in &self.terms {
            let mut p = prod.clone();
            p.push(s.clone());
            out.add_term(p, k * c);
        }
        out
    }

    fn extend(&mut self, other: FormalExpansion) {
        for (p, c) in other.terms {
            self.add_term(p, c);
        }
    }

    /// Terms in a stable display order: longer products first.
    fn display_order(&self) -> Vec<(&Vec<Symbol>, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (prod, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let mut factors: Vec<(String, usize)> = Vec::new();
            for s in prod {
                let name = if latex { s.to_latex() } else { s.to_string() };
                match factors.last_mut() {
                    Some((n, k)) if *n == name => *k += 1,
                    _ => factors.push((name, 1)),
                }
            }
            let body: Vec<String> = factors
                .into_iter()
                .map(|(n, k)| {
                    if k == 1 {
                        n
                    } else if latex {
                        format!("{}^{{{}}}", n, k)
                    } else {
                        format!("{}^{}", n, k)
                    }
                })
                .collect();
            let body = body.join(if latex { " " } else { "*" });
            let coeff = if latex && !abs.is_integer() {
                format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
            } else {
                abs.to_string()
            };
            match (abs.is_one(), body.is_empty()) {
                (_, true) => out.push_str(&coeff),
                (true, false) => out.push_str(&body),
                (false, false) => out.push_str(&format!("{}{}{}", coeff, if latex { " " } else { "*" }, body)),
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl fmt::Display for FormalExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

/// Index subsets `J` of `0..r` containing `0`, as sorted lists, in a fixed order.
fn subsets_with_first(r: usize) -> Vec<Vec<usize>> {
    (0u64..(1u64 << (r - 1)))
        .map(|mask| std::iter::once(0).chain((1..r).filter(|i| mask >> (i - 1) & 1 == 1)).collect())
        .collect()
}

fn split(parts: &[Singularity], j: &[usize]) -> (Vec<Singularity>, Vec<Singularity>) {
    let inside: Vec<Singularity> = j.iter().map(|&i| parts[i]).collect();
    let outside: Vec<Singularity> = (0..parts.len()).filter(|i| !j.contains(i)).map(|i| parts[i]).collect();
    (inside, outside)
}

/// `n_alpha = S_alpha + sum_{1 in J, J proper} S_{alpha_J} n_{alpha_Jbar}`,
/// recursively until only `S` symbols remain.
pub fn expand_n(alpha: &MultiSingularity) -> FormalExpansion {
    let mut memo = HashMap::new();
    expand_n_memo(&alpha.sorted_parts(), &mut memo)
}

fn expand_n_memo(parts: &[Singularity], memo: &mut HashMap<Vec<Singularity>, FormalExpansion>) -> FormalExpansion {
    if let Some(e) = memo.get(parts) {
        return e.clone();
    }
    let r = parts.len();
    let mut out = FormalExpansion::new();
    for j in subsets_with_first(r) {
        let (inside, outside) = split(parts, &j);
        let s = Symbol::new(SymbolKind::S, &inside);
        if outside.is_empty() {
            out.add_term(vec![s], Rat::one());
        } else {
            let mut rest = outside.clone();
            rest.sort();
            let sub = expand_n_memo(&rest, memo);
            out.extend(sub.mul_symbol(&s, &Rat::one()));
        }
    }
    memo.insert(parts.to_vec(), out.clone());
    out
}

/// One summand `coeff * R_{alpha_J} * f^*(n_{alpha_Jbar})` before collecting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetTerm {
    /// Positions in `alpha` that form `J` (always containing 0).
    pub j: Vec<usize>,
    pub residue: Vec<Singularity>,
    pub pulled: Vec<Singularity>,
    pub coeff: Rat,
}

/// The `2^{r-1}` raw summands of `m_alpha`; with `barred` the class is
/// `mbar_alpha = m_alpha / #Aut(alpha_2..alpha_r)` written through `nbar`.
pub fn expand_m_terms(alpha: &MultiSingularity, barred: bool) -> Vec<SubsetTerm> {
    let parts = alpha.parts();
    let rest_aut = aut_count_of(&parts[1..]);
    subsets_with_first(parts.len())
        .into_iter()
        .map(|j| {
            let (inside, outside) = split(parts, &j);
            let coeff = if barred { Rat::new(aut_count_of(&outside) as i64, rest_aut as i64) } else { Rat::one() };
            SubsetTerm { j, residue: inside, pulled: outside, coeff }
        })
        .collect()
}

fn is_a0(parts: &[Singularity]) -> bool {
    parts == [Singularity::A(0)]
}

/// `m_alpha` (or `mbar_alpha`) as a formal expansion in `R` and pulled-back
/// target classes; `R_{A_0} = 1` is dropped.
pub fn expand_m_formal(alpha: &MultiSingularity, barred: bool) -> FormalExpansion {
    let pull = if barred { SymbolKind::PullNBar } else { SymbolKind::PullN };
    let mut out = FormalExpansion::new();
    for t in expand_m_terms(alpha, barred) {
        let mut prod = Vec::new();
        if !is_a0(&t.residue) {
            prod.push(Symbol::new(SymbolKind::R, &t.residue));
        }
        if !t.pulled.is_empty() {
            prod.push(Symbol::new(pull, &t.pulled));
        }
        out.add_term(prod, t.coeff);
    }
    out
}

/// `m_alpha` with every residue replaced by its polynomial at `ell`; keyed by
/// the pulled-back class (`None` for the pure residue term).
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedExpansion {
    pub alpha: MultiSingularity,
    pub ell: i64,
    pub barred: bool,
    pub terms: BTreeMap<Option<Symbol>, GradedPoly>,
}

pub fn expand_m(alpha: &MultiSingularity, ell: i64, table: &ResidueTable, barred: bool) -> Result<ResolvedExpansion> {
    let pull = if barred { SymbolKind::PullNBar } else { SymbolKind::PullN };
    let mut terms: BTreeMap<Option<Symbol>, GradedPoly> = BTreeMap::new();
    for t in expand_m_terms(alpha, barred) {
        let r = table.residue(&t.residue, ell)?.poly.scale(&t.coeff);
        let key = (!t.pulled.is_empty()).then(|| Symbol::new(pull, &t.pulled));
        let slot = match terms.remove(&key) {
            Some(prev) => prev.checked_add(&r)?,
            None => r,
        };
        terms.insert(key, slot);
    }
    Ok(ResolvedExpansion { alpha: alpha.clone(), ell, barred, terms })
}

impl ResolvedExpansion {
    pub fn coefficient(&self, pulled: Option<&Symbol>) -> Option<&GradedPoly> {
        self.terms.get(&pulled.cloned())
    }

    /// Terms ordered by decreasing size of the pulled-back multiset.
    pub fn ordered(&self) -> Vec<(Option<&Symbol>, &GradedPoly)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, p)| (k.as_ref(), p)).collect();
        v.sort_by_key(|(k, _)| std::cmp::Reverse(k.map(|s| s.parts.len()).unwrap_or(0)));
        v
    }

    /// Weighted degree of each summand when `f^*(n_beta)` has degree `codim(beta)`.
    pub fn term_degrees(&self) -> Vec<Option<u32>> {
        self.ordered()
            .into_iter()
            .map(|(k, p)| {
                let pulled = k
                    .map(|s| MultiSingularity::new(s.parts.clone()).expect("nonempty").codim(self.ell) + self.ell)
                    .unwrap_or(0);
                p.homogeneous_degree().map(|d| d + pulled as u32)
            })
            .collect()
    }

    fn render(&self, latex: bool) -> String {
        let mut pieces = Vec::new();
        for (k, p) in self.ordered() {
            if p.is_zero() {
                continue;
            }
            let coeff = if latex { to_latex(p) } else { to_text_factored(p) };
            let piece = match k {
                None => coeff,
                Some(s) => {
                    let name = if latex { s.to_latex() } else { s.to_string() };
                    if p.is_constant() && p.constant_term().is_one() {
                        name
                    } else if p.len() == 1 || !GradedPoly::abs_content_is_one(&p.content()) {
                        format!("{}{}{}", coeff, if latex { " " } else { "*" }, name)
                    } else if latex {
                        format!("\\left({}\\right) {}", coeff, name)
                    } else {
                        format!("({})*{}", coeff, name)
                    }
                }
            };
            pieces.push(piece);
        }
        let mut out = String::new();
        for (i, piece) in pieces.into_iter().enumerate() {
            if i == 0 {
                out.push_str(&piece);
            } else if let Some(stripped) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(&piece);
            }
        }
        let lhs = match (self.alpha.a0_count(), self.barred, latex) {
            (Some(r), false, _) => format!("m_{}", if latex && r > 9 { format!("{{{}}}", r) } else { r.to_string() }),
            (Some(r), true, true) => format!("\\bar m_{}", r),
            (Some(r), true, false) => format!("mbar{}", r),
            (None, b, true) => {
                format!("{}m_{{{}}}", if b { "\\bar " } else { "" }, render_parts(self.alpha.parts(), true))
            }
            (None, b, false) => format!("{}m[{}]", if b { "bar" } else { "" }, self.alpha),
        };
        format!("{} = {}", lhs, if out.is_empty() { "0".into() } else { out })
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl fmt::Display for ResolvedExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

/// `m_4 = f^*(n_3) - 3c_l f^*(n_2) + 3 R_{A_0^3} f^*(n_1) + R_{A_0^4}` at `ell`.
pub fn emit_quadruple_formula(ell: i64) -> Result<ResolvedExpansion> {
    expand_m(&MultiSingularity::a0_power(4), ell, &ResidueTable::new(), false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::schur::chern_var;
    use crate::polycore::VarTable;

    fn s(k: usize) -> Symbol {
        Symbol::new(SymbolKind::S, &vec![Singularity::A(0); k])
    }

    fn a0(k: usize) -> MultiSingularity {
        MultiSingularity::a0_power(k)
    }

    #[test]
    fn n_expansions_of_a0_powers() {
        let e2 = expand_n(&a0(2));
        assert_eq!(e2.len(), 2);
        assert_eq!(e2.coefficient(&[s(2)]), Rat::one());
        assert_eq!(e2.coefficient(&[s(1), s(1)]), Rat::one());
        let e3 = expand_n(&a0(3));
        assert_eq!(e3.to_string(), "s1^3 + 3*s1*s2 + s3");
        let e4 = expand_n(&a0(4));
        assert_eq!(e4.len(), 5);
        assert_eq!(e4.coefficient(&[s(4)]), Rat::one());
        assert_eq!(e4.coefficient(&[s(1), s(3)]), Rat::from_int(4));
        assert_eq!(e4.coefficient(&[s(1), s(1), s(2)]), Rat::from_int(6));
        assert_eq!(e4.coefficient(&[s(2), s(2)]), Rat::from_int(3));
        assert_eq!(e4.coefficient(&[s(1), s(1), s(1), s(1)]), Rat::one());
    }

    #[test]
    fn n_expansion_is_order_free() {
        let a: MultiSingularity = "A1A0^2".parse().unwrap();
        let b: MultiSingularity = "A0A1A0".parse().unwrap();
        assert_eq!(expand_n(&a), expand_n(&b));
        // same result when recursing with the given order instead of the sorted one
        let mut memo = HashMap::new();
        assert_eq!(expand_n_memo(b.parts(), &mut memo), expand_n(&a));
    }

    #[test]
    fn raw_term_count() {
        for r in 1..=6 {
            assert_eq!(expand_m_terms(&a0(r), false).len(), 1 << (r - 1));
        }
        assert_eq!(expand_m_terms(&"III22A0".parse().unwrap(), true).len(), 2);
    }

    #[test]
    fn barred_coefficients() {
        let e = expand_m_formal(&a0(4), true);
        let r = |k| Symbol::new(SymbolKind::R, &vec![Singularity::A(0); k]);
        let nb = |k| Symbol::new(SymbolKind::PullNBar, &vec![Singularity::A(0); k]);
        assert_eq!(e.coefficient(&[nb(3)]), Rat::one());
        assert_eq!(e.coefficient(&[r(2), nb(2)]), Rat::one());
        assert_eq!(e.coefficient(&[r(3), nb(1)]), Rat::new(1, 2));
        assert_eq!(e.coefficient(&[r(4)]), Rat::new(1, 6));
        let e3 = expand_m_formal(&a0(3), true);
        assert_eq!(e3.coefficient(&[r(3)]), Rat::new(1, 2));
        assert_eq!(e3.coefficient(&[r(2), nb(1)]), Rat::one());
        let e2 = expand_m_formal(&a0(2), true);
        assert_eq!(e2.coefficient(&[nb(1)]), Rat::one());
        assert_eq!(e2.coefficient(&[r(2)]), Rat::one());
    }

    #[test]
    fn quadruple_formula_coefficients() {
        for ell in 1..=4 {
            let f = emit_quadruple_formula(ell).unwrap();
            let pn = |k| Symbol::new(SymbolKind::PullN, &vec![Singularity::A(0); k]);
            let t = VarTable::chern("c", 2 * ell as u32);
            assert_eq!(f.coefficient(Some(&pn(3))).unwrap(), &GradedPoly::one(&t));
            assert_eq!(f.coefficient(Some(&pn(2))).unwrap(), &chern_var(&t, ell).scale(&Rat::from_int(-3)));
            let r3 = crate::thomlib::residue_a0r(3, ell, None).unwrap().scale(&Rat::from_int(3));
            assert_eq!(f.coefficient(Some(&pn(1))).unwrap(), &r3);
            let mut closed = chern_var(&t, ell).pow(2);
            for i in 0..ell {
                closed = &closed
                    + &(&chern_var(&t, ell - 1 - i) * &chern_var(&t, ell + 1 + i))
                        .scale(&Rat::from_int(2).pow(i as u32));
            }
            assert_eq!(&r3, &closed.scale(&Rat::from_int(6)));
            for d in f.term_degrees() {
                assert_eq!(d, Some(3 * ell as u32));
            }
        }
        let f1 = emit_quadruple_formula(1).unwrap();
        assert_eq!(f1.to_latex(), "m_4 = f^*(n_3) - 3c_1 f^*(n_2) + 6(c_1^2+c_2) f^*(n_1) - 6(c_1^3+3c_1c_2+2c_3)");
    }

    #[test]
    fn resolved_terms_homogeneous_for_mixed() {
        let alpha: MultiSingularity = "III22A0".parse().unwrap();
        for ell in 1..=3 {
            let e = expand_m(&alpha, ell, &ResidueTable::new(), true).unwrap();
            for d in e.term_degrees() {
                assert_eq!(d, Some(alpha.codim(ell) as u32));
            }
        }
    }
}
