//! Cohomology of `Gr_k(C^n)` in the Schur basis of the `k x (n-k)` box.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::rat::Rat;

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// Sorts nothing: fails unless `parts` is weakly decreasing; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Partition, ParseError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(ParseError::Partition(format!("{:?}", parts)));
        }
        Ok(Partition(parts))
    }

    fn from_vec_unchecked(mut parts: Vec<u32>) -> Partition {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition((1..=width).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Single row `(m)`.
    pub fn row(m: u32) -> Partition {
        Partition::from_vec_unchecked(vec![m])
    }

    /// Single column `(1^m)`.
    pub fn column(m: u32) -> Partition {
        Partition(vec![1; m as usize])
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = ParseError;
    fn try_from(v: Vec<u32>) -> Result<Partition, ParseError> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Partition, ParseError> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Result<Vec<u32>, _> = inner.split(',').map(|p| p.trim().parse::<u32>()).collect();
        Partition::new(parts.map_err(|_| ParseError::Partition(s.to_string()))?)
    }
}

/// `H^*(Gr_k(C^n))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrassRing {
    pub k: u32,
    pub n: u32,
}

impl GrassRing {
    pub fn new(k: u32, n: u32) -> Result<GrassRing> {
        if k == 0 || k >= n {
            return Err(Error::RingMismatch(format!("Gr_{}(C^{}) needs 0 < k < n", k, n)));
        }
        Ok(GrassRing { k, n })
    }

    /// Width `n - k` of the box.
    pub fn width(&self) -> u32 {
        self.n - self.k
    }

    pub fn dim(&self) -> u32 {
        self.k * self.width()
    }

    pub fn fits(&self, p: &Partition) -> bool {
        p.len() <= self.k as usize && p.part(0) <= self.width()
    }

    pub fn full_box(&self) -> Partition {
        Partition(vec![self.width(); self.k as usize])
    }

    /// `lambda^vee_i = (n-k) - lambda_{k+1-i}`.
    pub fn dual(&self, p: &Partition) -> Partition {
        let k = self.k as usize;
        Partition::from_vec_unchecked((0..k).map(|i| self.width() - p.part(k - 1 - i)).collect())
    }

    /// All partitions in the box of a given size, in decreasing lex order.
    pub fn basis_of_degree(&self, d: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill(self.k as usize, self.width(), d, &mut cur, &mut out);
        out
    }

    pub fn basis(&self) -> Vec<Partition> {
        (0..=self.dim()).flat_map(|d| self.basis_of_degree(d)).collect()
    }

    /// Horizontal strips of size `m` added to `p`, staying in the box.
    pub fn pieri_h(&self, p: &Partition, m: u32) -> Vec<Partition> {
        let k = self.k as usize;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        strips(p, k, self.width(), m, 0, &mut cur, &mut out, true);
        out
    }

    /// Vertical strips of size `m` added to `p`, staying in the box.
    pub fn pieri_e(&self, p: &Partition, m: u32) -> Vec<Partition> {
        if m > self.k {
            return Vec::new();
        }
        let k = self.k as usize;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        strips(p, k, self.width(), m, 0, &mut cur, &mut out, false);
        out
    }
}

fn fill(rows: usize, max_part: u32, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if rows == 0 {
        return;
    }
    let top = max_part.min(remaining);
    for p in (1..=top).rev() {
        if (p as u64) * (rows as u64) < remaining as u64 {
            break;
        }
        cur.push(p);
        fill(rows - 1, p, remaining - p, cur, out);
        cur.pop();
    }
}

/// Enumerates `nu` with `nu / p` a horizontal (resp. vertical) strip of size `m`.
#[allow(clippy::too_many_arguments)]
fn strips(
    p: &Partition,
    k: usize,
    width: u32,
    m: u32,
    row: usize,
    cur: &mut Vec<u32>,
    out: &mut Vec<Partition>,
    horizontal: bool,
) {
    if row == k {
        if m == 0 {
            out.push(Partition::from_vec_unchecked(cur.clone()));
        }
        return;
    }
    let base = p.part(row);
    let cap = if row == 0 { width } else { cur[row - 1] };
    let max_add = if horizontal {
        // the strip in this row may not pass under the previous row of p
        let limit = if row == 0 { width } else { p.part(row - 1) };
        limit.min(cap).saturating_sub(base).min(m)
    } else if base < cap {
        1.min(m)
    } else {
        0
    };
    for add in (0..=max_add).rev() {
        cur.push(base + add);
        strips(p, k, width, m - add, row + 1, cur, out, horizontal);
        cur.pop();
    }
}

/// A cohomology class: rational combination of box Schur classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassClass {
    pub ring: GrassRing,
    coeffs: BTreeMap<Partition, Rat>,
}

impl GrassClass {
    pub fn zero(ring: GrassRing) -> GrassClass {
        GrassClass { ring, coeffs: BTreeMap::new() }
    }

    pub fn one(ring: GrassRing) -> GrassClass {
        GrassClass::schur(ring, Partition::empty())
    }

    /// `s_lambda`, or zero outside the box.
    pub fn schur(ring: GrassRing, p: Partition) -> GrassClass {
        let mut c = GrassClass::zero(ring);
        if ring.fits(&p) {
            c.coeffs.insert(p, Rat::one());
        }
        c
    }

    pub fn from_terms(ring: GrassRing, terms: impl IntoIterator<Item = (Partition, Rat)>) -> GrassClass {
        let mut c = GrassClass::zero(ring);
        for (p, r) in terms {
            c.add_term(p, r);
        }
        c
    }

    /// Adds `r * s_p`; partitions outside the box are dropped.
    pub fn add_term(&mut self, p: Partition, r: Rat) {
        if r.is_zero() || !self.ring.fits(&p) {
            return;
        }
        match self.coeffs.get_mut(&p) {
            Some(v) => {
                *v += r;
                if v.is_zero() {
                    self.coeffs.remove(&p);
                }
            }
            None => {
                self.coeffs.insert(p, r);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.coeffs.iter()
    }

    /// Number of nonzero terms; emptiness is `is_zero`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, p: &Partition) -> Rat {
        self.coeffs.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.coeffs.keys().map(|p| p.size());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    fn check_ring(&self, other: &GrassClass) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{:?} vs {:?}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &GrassClass) -> Result<GrassClass> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub(crate) fn add_assign_ref(&mut self, other: &GrassClass) {
        for (p, r) in &other.coeffs {
            self.add_term(p.clone(), r.clone());
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &GrassClass, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (p, r) in &other.coeffs {
            self.add_term(p.clone(), r * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> GrassClass {
        let mut out = GrassClass::zero(self.ring);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> GrassClass {
        self.scale(&Rat::from_int(-1))
    }

    /// `self * h_m`.
    pub fn mul_h(&self, m: i64) -> GrassClass {
        if m < 0 {
            return GrassClass::zero(self.ring);
        }
        let mut out = GrassClass::zero(self.ring);
        for (p, r) in &self.coeffs {
            for q in self.ring.pieri_h(p, m as u32) {
                out.add_term(q, r.clone());
            }
        }
        out
    }

    /// `self * e_m`.
    pub fn mul_e(&self, m: i64) -> GrassClass {
        if m < 0 {
            return GrassClass::zero(self.ring);
        }
        let mut out = GrassClass::zero(self.ring);
        for (p, r) in &self.coeffs {
            for q in self.ring.pieri_e(p, m as u32) {
                out.add_term(q, r.clone());
            }
        }
        out
    }

    /// `self * s_mu` via the Jacobi-Trudi determinant, in whichever of the
    /// `h` or `e` forms is smaller; the box truncation commutes with each step.
    pub fn mul_schur(&self, mu: &Partition) -> GrassClass {
        if mu.is_empty() {
            return self.clone();
        }
        let (rows, use_e): (Vec<i64>, bool) = if mu.len() as u32 <= mu.part(0) {
            (mu.parts().iter().map(|&p| p as i64).collect(), false)
        } else {
            (mu.conjugate().parts().iter().map(|&p| p as i64).collect(), true)
        };
        let l = rows.len();
        let mut out = GrassClass::zero(self.ring);
        for (perm, sign) in permutations(l) {
            // entry (i, perm[i]) of the matrix [x_{rows_i - i + j}]
            let idx: Vec<i64> = (0..l).map(|i| rows[i] - i as i64 + perm[i] as i64).collect();
            if idx.iter().any(|&m| m < 0) {
                continue;
            }
            let mut acc = self.clone();
            for &m in &idx {
                acc = if use_e { acc.mul_e(m) } else { acc.mul_h(m) };
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, &Rat::from_int(sign));
        }
        out
    }

    pub fn checked_mul(&self, other: &GrassClass) -> Result<GrassClass> {
        self.check_ring(other)?;
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut out = GrassClass::zero(self.ring);
        for (p, r) in &small.coeffs {
            out.add_scaled(&big.mul_schur(p), r);
        }
        Ok(out)
    }

    /// Coefficient of the full box.
    pub fn integrate(&self) -> Rat {
        self.coefficient(&self.ring.full_box())
    }

    /// `integral(self * other)` through the duality of box Schur classes.
    pub fn pairing(&self, other: &GrassClass) -> Result<Rat> {
        self.check_ring(other)?;
        let mut s = Rat::zero();
        for (p, r) in &self.coeffs {
            if let Some(q) = other.coeffs.get(&self.ring.dual(p)) {
                s += r * q;
            }
        }
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|a, b| b.0.size().cmp(&a.0.size()).then_with(|| b.0.cmp(a.0)));
        let mut out = String::new();
        for (i, (p, r)) in terms.into_iter().enumerate() {
            let neg = r.is_negative();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let abs = r.abs();
            let name = if p.is_empty() { "1".to_string() } else { format!("s{}", p) };
            if abs.is_one() {
                out.push_str(&name);
            } else if p.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{}*{}", abs, name));
            }
        }
        out
    }
}

impl fmt::Display for GrassClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Permutations of `0..n` with their signs.
fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (perm, sign) in permutations(n - 1) {
        // insert n-1 at position i; moving it from the end past (n-1-i) entries
        for i in 0..n {
            let mut p = perm.clone();
            p.insert(i, n - 1);
            let s = if (n - 1 - i).is_multiple_of(2) { sign } else { -sign };
            out.push((p, s));
        }
    }
    out
}

impl GrassRing {
    /// `c_i(Q) = s_(i)`.
    pub fn chern_q(&self, i: i64) -> Result<GrassClass> {
        if i < 0 || i > self.width() as i64 {
            return Err(Error::ChernIndexOutOfRange { index: i.max(0) as usize, rank: self.width() as usize });
        }
        Ok(GrassClass::schur(*self, Partition::row(i as u32)))
    }

    /// `c_i(S) = (-1)^i s_(1^i)`.
    pub fn chern_s(&self, i: i64) -> Result<GrassClass> {
        if i < 0 || i > self.k as i64 {
            return Err(Error::ChernIndexOutOfRange { index: i.max(0) as usize, rank: self.k as usize });
        }
        let sign = if i % 2 == 0 { 1 } else { -1 };
        Ok(GrassClass::schur(*self, Partition::column(i as u32)).scale(&Rat::from_int(sign)))
    }

    /// `c_i(Q)` with zero outside `0..=rank`.
    pub fn chern_q_or_zero(&self, i: i64) -> GrassClass {
        self.chern_q(i).unwrap_or_else(|_| GrassClass::zero(*self))
    }

    pub fn chern_s_or_zero(&self, i: i64) -> GrassClass {
        self.chern_s(i).unwrap_or_else(|_| GrassClass::zero(*self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn basis_counts() {
        let g = GrassRing::new(3, 7).unwrap();
        assert_eq!(g.basis().len(), 35);
        let g = GrassRing::new(3, 19).unwrap();
        assert_eq!(g.basis().len(), 969);
        assert_eq!(g.basis_of_degree(48), vec![g.full_box()]);
    }

    #[test]
    fn small_products() {
        let g = GrassRing::new(2, 4).unwrap();
        let s1 = GrassClass::schur(g, p(&[1]));
        let sq = s1.checked_mul(&s1).unwrap();
        assert_eq!(sq, GrassClass::from_terms(g, [(p(&[2]), Rat::one()), (p(&[1, 1]), Rat::one())]));
        let s4 = sq.checked_mul(&sq).unwrap();
        assert_eq!(s4.integrate(), Rat::from_int(2));
        let g12 = GrassRing::new(1, 2).unwrap();
        let h = GrassClass::schur(g12, p(&[1]));
        assert!(h.checked_mul(&h).unwrap().is_zero());
        let one = GrassClass::one(g);
        assert_eq!(one.checked_mul(&sq).unwrap(), sq);
    }

    #[test]
    fn chern_relation() {
        let g = GrassRing::new(3, 7).unwrap();
        for i in 1..=6i64 {
            let mut acc = GrassClass::zero(g);
            for j in 0..=i {
                acc.add_assign_ref(&g.chern_s_or_zero(j).checked_mul(&g.chern_q_or_zero(i - j)).unwrap());
            }
            assert!(acc.is_zero(), "degree {}", i);
        }
        assert!(g.chern_q(5).is_err());
        assert!(g.chern_s(4).is_err());
    }

    #[test]
    fn conjugate_and_dual() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        let g = GrassRing::new(3, 6).unwrap();
        assert_eq!(g.dual(&p(&[2, 1])), p(&[3, 2, 1]));
        assert_eq!(g.dual(&Partition::empty()), g.full_box());
    }

    #[test]
    fn partition_parsing() {
        assert_eq!("(2,1)".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("(1,2)".parse::<Partition>().is_err());
    }
}
