//! Secant-plane counts: `r! N = integral over G of n_{A_0^r}(f)`.
//!
//! `B` parametrizes a point of `V` together with an `(r-1)`-dimensional subspace
//! containing it, `F = P(S)` over `G = Gr_{r-1}(C^N)`, and `f: B -> G` forgets the
//! point. Each `S_j = f_!(R_{A_0^j}(nu_f))` is computed through
//! `f_!(j^*(k) p^*(n)) = pi_!(k q^*(i_!(n)))` and `i_!(n^u) = chi_u h^{codim V + |u|}`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::chi::{ChiIndex, ChiMonomial, ChiPolynomial};
use super::nu::{nu_f_classes, unpack, NBasis, NuPoly, MAX_K_VARS};
use crate::error::{Error, Result};
use crate::grassmann::CALIBRATED_ORIENTATION;
use crate::grassmann::{kappa_chern, pushforward_p_s, FiberClass, GrassClass, GrassRing, Orientation};
use crate::kazarian::{expand_n, MultiSingularity, SymbolKind};
use crate::rat::{factorial, Rat};
use crate::thomlib::{Provenance, ResidueTable, Singularity};

/// `r`-secant `(r-2)`-planes to `V^a` in `P^{N-1}`, `N = r a + r - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SecantProblem {
    pub a: u32,
    pub r: u32,
}

impl SecantProblem {
    /// The 4-secant planes configuration.
    pub fn new(a: u32) -> Result<SecantProblem> {
        SecantProblem::with_points(a, 4)
    }

    pub fn with_points(a: u32, r: u32) -> Result<SecantProblem> {
        if a == 0 {
            return Err(Error::Unsupported("V must have positive dimension".into()));
        }
        if !(2..=MAX_K_VARS as u32 + 1).contains(&r) {
            return Err(Error::Unsupported(format!("{} points", r)));
        }
        let p = SecantProblem { a, r };
        // packed k exponents are bounded by the residue degree
        if (r - 1) * p.ell() >= 256 {
            return Err(Error::Unsupported(format!("a = {} is too large for {} points", a, r)));
        }
        Ok(p)
    }

    /// Rank of the tautological sub-bundle.
    pub fn k(&self) -> u32 {
        self.r - 1
    }

    /// `N`, with `V` in `P^{N-1}`.
    pub fn ambient(&self) -> u32 {
        self.r * self.a + self.r - 1
    }

    /// Relative dimension `dim G - dim B` of `f`.
    pub fn ell(&self) -> u32 {
        (self.r - 1) * self.a
    }

    pub fn codim_v(&self) -> u32 {
        self.ambient() - 1 - self.a
    }

    pub fn ring(&self) -> GrassRing {
        GrassRing::new(self.k(), self.ambient()).expect("0 < k < N")
    }

    pub fn dim_g(&self) -> u32 {
        self.ring().dim()
    }
}

/// One term `coeff * n^u * k^e` of `c_m(nu_f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuTerm {
    pub n: ChiIndex,
    pub k: Vec<u32>,
    pub coeff: Rat,
}

/// `c_m(nu_f)` for `m = 0..=maxdeg`, terms sorted.
pub fn nu_f_chern(problem: &SecantProblem, maxdeg: u32) -> Vec<Vec<NuTerm>> {
    let basis = NBasis::new(problem.a);
    let nk = problem.k() as usize - 1;
    nu_f_classes(&basis, problem.a, nk, maxdeg as usize)
        .into_iter()
        .map(|c| {
            let mut v: Vec<NuTerm> = c
                .terms
                .into_iter()
                .map(|(key, coeff)| {
                    let (id, k) = unpack(key, nk);
                    NuTerm { n: basis.list[id as usize].clone(), k, coeff }
                })
                .collect();
            v.sort_by(|x, y| (&x.n, &x.k).cmp(&(&y.n, &y.k)));
            v
        })
        .collect()
}

/// A class on `G` with coefficients polynomial in the `chi_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiClass {
    pub ring: GrassRing,
    pub terms: BTreeMap<ChiMonomial, GrassClass>,
}

impl ChiClass {
    pub fn zero(ring: GrassRing) -> ChiClass {
        ChiClass { ring, terms: BTreeMap::new() }
    }

    pub fn add(&mut self, m: ChiMonomial, g: &GrassClass, c: &Rat) {
        let e = self.terms.entry(m.clone()).or_insert_with(|| GrassClass::zero(self.ring));
        *e = e.checked_add(&g.scale(c)).expect("same ring");
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn mul(&self, other: &ChiClass) -> Result<ChiClass> {
        let mut out = ChiClass::zero(self.ring);
        for (m1, g1) in &self.terms {
            for (m2, g2) in &other.terms {
                out.add(m1.mul(m2), &g1.checked_mul(g2)?, &Rat::one());
            }
        }
        Ok(out)
    }

    /// Common degree of all Schur terms; errors on inhomogeneity.
    pub fn degree(&self) -> Result<Option<u32>> {
        let mut deg = None;
        for g in self.terms.values() {
            let d = g.homogeneous_degree().ok_or_else(|| Error::Inhomogeneous(g.to_text()))?;
            if deg.is_some_and(|e| e != d) {
                return Err(Error::Inhomogeneous(format!("degrees {} and {}", deg.unwrap(), d)));
            }
            deg = Some(d);
        }
        Ok(deg)
    }

    pub fn integrate(&self) -> ChiPolynomial {
        let mut out = ChiPolynomial::zero();
        for (m, g) in &self.terms {
            out.add_term(m.clone(), g.integrate());
        }
        out
    }

    /// `integral(self * other)` via Poincare duality, without forming the product.
    pub fn pairing(&self, other: &ChiClass) -> Result<ChiPolynomial> {
        let mut out = ChiPolynomial::zero();
        for (m1, g1) in &self.terms {
            for (m2, g2) in &other.terms {
                out.add_term(m1.mul(m2), g1.pairing(g2)?);
            }
        }
        Ok(out)
    }
}

/// Memoized state for one `(problem, orientation)`.
pub struct SecantEngine {
    problem: SecantProblem,
    orientation: Orientation,
    basis: NBasis,
    kappa: Vec<FiberClass>,
    k_powers: HashMap<Vec<u32>, FiberClass>,
    pushed: HashMap<(u32, Vec<u32>), GrassClass>,
}

impl SecantEngine {
    pub fn new(problem: SecantProblem, orientation: Orientation) -> SecantEngine {
        let ring = problem.ring();
        SecantEngine {
            problem,
            orientation,
            basis: NBasis::new(problem.a),
            kappa: kappa_chern(ring, orientation),
            k_powers: HashMap::new(),
            pushed: HashMap::new(),
        }
    }

    pub fn problem(&self) -> &SecantProblem {
        &self.problem
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// `prod_j k_j^{e_j}`, reduced modulo the Grothendieck relation.
    fn k_monomial(&mut self, kexp: &[u32]) -> FiberClass {
        if let Some(f) = self.k_powers.get(kexp) {
            return f.clone();
        }
        let out = match kexp.iter().position(|&e| e > 0) {
            None => FiberClass::one(self.problem.ring()),
            Some(j) => {
                let mut lower = kexp.to_vec();
                lower[j] -= 1;
                let base = self.k_monomial(&lower);
                base.checked_mul(&self.kappa[j]).expect("same ring").reduce()
            }
        };
        self.k_powers.insert(kexp.to_vec(), out.clone());
        out
    }

    /// `f_!(k^e p^*(n^u)) = chi_u pi_!(xi^{codim V + |u|} k^e)`.
    pub fn gysin_f(&mut self, n: &ChiIndex, kexp: &[u32]) -> (ChiIndex, GrassClass) {
        let w = self.problem.codim_v() + n.weight();
        let key = (w, kexp.to_vec());
        if let Some(g) = self.pushed.get(&key) {
            return (n.clone(), g.clone());
        }
        let g = pushforward_p_s(&self.k_monomial(kexp).shift(w as usize));
        self.pushed.insert(key, g.clone());
        (n.clone(), g)
    }

    fn push_nu(&mut self, p: &NuPoly) -> ChiClass {
        let nk = self.problem.k() as usize - 1;
        let mut keys: Vec<(&u64, &Rat)> = p.terms.iter().collect();
        keys.sort_by_key(|(k, _)| **k);
        let mut out = ChiClass::zero(self.problem.ring());
        for (key, c) in keys {
            let (id, kexp) = unpack(*key, nk);
            let n = self.basis.list[id as usize].clone();
            let (u, g) = self.gysin_f(&n, &kexp);
            out.add(ChiMonomial::var(u), &g, c);
        }
        out
    }

    /// `R_{A_0^j}(ell)` evaluated at `c(nu_f)`.
    fn residue_at_nu(&self, j: u32, table: &ResidueTable) -> Result<(NuPoly, Provenance)> {
        if j == 1 {
            return Ok((NuPoly::one(), Provenance::Proved));
        }
        let ell = self.problem.ell();
        let res = table.residue(&vec![Singularity::A(0); j as usize], ell as i64)?;
        let maxdeg = ((j - 1) * ell) as usize;
        let nk = self.problem.k() as usize - 1;
        let c = nu_f_classes(&self.basis, self.problem.a, nk, maxdeg);
        let mut prefix: HashMap<Vec<usize>, NuPoly> = HashMap::new();
        let mut out = NuPoly::default();
        for (mono, coeff) in res.poly.terms() {
            let mut idx: Vec<usize> = Vec::new();
            for &(pos, e) in mono.exponents() {
                let m = res.poly.vars().entry(pos as usize).index as usize;
                idx.extend(std::iter::repeat_n(m, e as usize));
            }
            idx.sort_unstable();
            let value = product_of(&idx, &c, &self.basis, &mut prefix);
            out.add_scaled(&value, coeff);
        }
        Ok((out, res.provenance))
    }

    /// `S_j = f_!(R_{A_0^j}(nu_f))` together with the residue provenance.
    pub fn s_class(&mut self, j: u32, table: &ResidueTable) -> Result<(ChiClass, Provenance)> {
        let (r, prov) = self.residue_at_nu(j, table)?;
        let s = self.push_nu(&r);
        let expected = j * self.problem.ell();
        match s.degree()? {
            Some(d) if d != expected => {
                Err(Error::Inhomogeneous(format!("S_{} has degree {}, expected {}", j, d, expected)))
            }
            _ => Ok((s, prov)),
        }
    }
}

fn product_of(idx: &[usize], c: &[NuPoly], basis: &NBasis, memo: &mut HashMap<Vec<usize>, NuPoly>) -> NuPoly {
    if idx.is_empty() {
        return NuPoly::one();
    }
    if idx.len() == 1 {
        return c[idx[0]].clone();
    }
    if let Some(p) = memo.get(idx) {
        return p.clone();
    }
    let head = product_of(&idx[..idx.len() - 1], c, basis, memo);
    let p = head.mul(&c[idx[idx.len() - 1]], basis);
    memo.insert(idx.to_vec(), p.clone());
    p
}

/// Result of a secant count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecantCount {
    pub problem: SecantProblem,
    pub orientation: Orientation,
    /// `r! N` as computed by the integral.
    pub scaled: ChiPolynomial,
    /// `N` itself.
    pub count: ChiPolynomial,
    pub provenance: Provenance,
}

impl SecantCount {
    pub fn evaluate(&self, values: &BTreeMap<ChiIndex, Rat>) -> Result<Rat> {
        self.count.evaluate(values)
    }
}

/// Integrates `n_{A_0^r}` as combined by `expand_n`.
pub fn count_secant(problem: SecantProblem, orientation: Orientation, table: &ResidueTable) -> Result<SecantCount> {
    let r = problem.r;
    let mut engine = SecantEngine::new(problem, orientation);
    let mut s = Vec::new();
    let mut provenance = Provenance::Proved;
    for j in 1..=r {
        let (class, prov) = engine.s_class(j, table)?;
        if prov != Provenance::Proved {
            provenance = prov;
        }
        s.push(class);
    }
    let dim = problem.dim_g();
    let mut scaled = ChiPolynomial::zero();
    let expansion = expand_n(&MultiSingularity::a0_power(r as usize));
    for (product, coeff) in expansion.terms() {
        let mut factors: Vec<&ChiClass> = Vec::new();
        for sym in product {
            if sym.kind != SymbolKind::S || sym.parts.iter().any(|p| *p != Singularity::A(0)) {
                return Err(Error::Unsupported(format!("unexpected symbol {}", sym)));
            }
            factors.push(&s[sym.parts.len() - 1]);
        }
        let value = integrate_product(&factors, dim)?;
        scaled = scaled.add(&value.scale(coeff));
    }
    let count = scaled.scale(&factorial(r).recip());
    Ok(SecantCount { problem, orientation, scaled, count, provenance })
}

/// `integral(prod factors)`, pairing two partial products of complementary degree.
fn integrate_product(factors: &[&ChiClass], dim: u32) -> Result<ChiPolynomial> {
    let degs: Vec<u32> = factors.iter().map(|f| f.degree().map(|d| d.unwrap_or(0))).collect::<Result<_>>()?;
    let total: u32 = degs.iter().sum();
    if total != dim && factors.iter().all(|f| !f.terms.is_empty()) {
        return Err(Error::Inhomogeneous(format!("integrand of degree {} on a space of dimension {}", total, dim)));
    }
    if factors.len() == 1 {
        return Ok(factors[0].integrate());
    }
    // split where the prefix degree first reaches half the total
    let mut acc = 0;
    let mut cut = 1;
    for (i, d) in degs.iter().enumerate() {
        acc += d;
        if 2 * acc >= total {
            cut = (i + 1).clamp(1, factors.len() - 1);
            break;
        }
    }
    let fold = |fs: &[&ChiClass]| -> Result<ChiClass> {
        let mut it = fs.iter();
        let mut p = (*it.next().expect("nonempty")).clone();
        for f in it {
            p = p.mul(f)?;
        }
        Ok(p)
    };
    fold(&factors[..cut])?.pairing(&fold(&factors[cut..])?)
}

/// The 4-secant planes count with the calibrated orientation.
pub fn count_4secant(a: u32) -> Result<SecantCount> {
    count_secant(SecantProblem::new(a)?, CALIBRATED_ORIENTATION, &ResidueTable::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_dimensions() {
        for a in 1..=4 {
            let p = SecantProblem::new(a).unwrap();
            assert_eq!(p.ambient(), 4 * a + 3);
            assert_eq!(p.ell(), 3 * a);
            assert_eq!(p.codim_v(), 3 * a + 2);
            assert_eq!(p.dim_g(), 12 * a);
            assert_eq!(p.r * p.ell(), p.dim_g());
        }
        assert!(SecantProblem::new(0).is_err());
    }

    #[test]
    fn gysin_examples() {
        let p = SecantProblem::new(1).unwrap();
        let g = p.ring();
        let mut e = SecantEngine::new(p, CALIBRATED_ORIENTATION);
        let (u, x) = e.gysin_f(&ChiIndex(vec![0]), &[0, 0]);
        assert_eq!(u, ChiIndex(vec![0]));
        assert_eq!(x, g.chern_q(3).unwrap());
        let (_, y) = e.gysin_f(&ChiIndex(vec![1]), &[0, 0]);
        assert_eq!(y, g.chern_q(4).unwrap());
        // degree goes up by ell
        let (_, z) = e.gysin_f(&ChiIndex(vec![0]), &[1, 1]);
        assert_eq!(z.homogeneous_degree(), Some(3 + 3));
    }

    #[test]
    fn s_classes_are_chi_linear_and_homogeneous() {
        let p = SecantProblem::new(1).unwrap();
        let mut e = SecantEngine::new(p, CALIBRATED_ORIENTATION);
        let table = ResidueTable::new();
        for j in 1..=4 {
            let (s, _) = e.s_class(j, &table).unwrap();
            assert!(s.terms.keys().all(|m| m.degree() == 1));
            assert_eq!(s.degree().unwrap(), Some(3 * j));
        }
    }

    #[test]
    fn nu_terms_public_view() {
        let p = SecantProblem::new(1).unwrap();
        let c = nu_f_chern(&p, 2);
        assert_eq!(c[0].len(), 1);
        // n1 k1 survives, n1^2 does not exist
        assert_eq!(c[2].len(), 3);
    }
}
