//! Chern series of genotype germs in the variables `a, b` and `d_1..d_ell`.

use std::sync::Arc;

use crate::error::Result;
use crate::polycore::{series_quotient, GradedPoly, Substitution, VarEntry, VarTable};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenotypeKind {
    /// `(1 - (r+1)a) / (1 - a) * D`.
    Aichern { r: u32 },
    /// `(1 - 2a)(1 - 2b) / ((1 - a)(1 - b)) * D`.
    I22chern,
    /// `(1 - 2a)(1 - 2b)(1 - (a+b)) / ((1 - a)(1 - b)) * D'`, with `D'` stopping at `d_{ell-1}`.
    III22chern,
}

/// A genotype Chern series at relative dimension `ell`.
///
/// All kinds share the table `a, b, d_1..d_ell` (`d_i` of weight `i`) so
/// their results can be compared directly.
#[derive(Clone, Debug)]
pub struct GenotypeSeries {
    pub kind: GenotypeKind,
    pub ell: i64,
    vars: Arc<VarTable>,
}

pub fn genotype_vars(ell: i64) -> Arc<VarTable> {
    let mut entries = vec![VarEntry::new("a", 0, 1), VarEntry::new("b", 0, 1)];
    entries.extend((1..=ell as i32).map(|i| VarEntry::new("d", i, i as u32)));
    VarTable::new(entries).expect("distinct")
}

impl GenotypeSeries {
    pub fn new(kind: GenotypeKind, ell: i64) -> GenotypeSeries {
        GenotypeSeries { kind, ell, vars: genotype_vars(ell) }
    }

    pub fn name(&self) -> String {
        match self.kind {
            GenotypeKind::Aichern { r } => format!("aichern(r={})", r),
            GenotypeKind::I22chern => "i22chern".into(),
            GenotypeKind::III22chern => "iii22chern".into(),
        }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn a(&self) -> GradedPoly {
        GradedPoly::var(&self.vars, "a", 0).expect("a")
    }

    pub fn b(&self) -> GradedPoly {
        GradedPoly::var(&self.vars, "b", 0).expect("b")
    }

    /// `d_i` with `d_0 = 1` and `d_i = 0` outside `0..=ell`.
    pub fn d(&self, i: i64) -> GradedPoly {
        match i {
            0 => GradedPoly::one(&self.vars),
            i if i < 0 || i > self.ell => GradedPoly::zero(&self.vars),
            i => GradedPoly::var(&self.vars, "d", i as i32).expect("d"),
        }
    }

    pub fn e1(&self) -> GradedPoly {
        &self.a() + &self.b()
    }

    pub fn e2(&self) -> GradedPoly {
        &self.a() * &self.b()
    }

    /// Complete homogeneous polynomial `h_k(a, b)`.
    pub fn h(&self, k: i64) -> GradedPoly {
        if k < 0 {
            return GradedPoly::zero(&self.vars);
        }
        let (a, b) = (self.a(), self.b());
        (0..=k).fold(GradedPoly::zero(&self.vars), |acc, i| &acc + &(&a.pow(i as u32) * &b.pow((k - i) as u32)))
    }

    fn d_sum(&self, top: i64) -> GradedPoly {
        (0..=top).fold(GradedPoly::zero(&self.vars), |acc, i| &acc + &self.d(i))
    }

    /// The total class `1 + c_1 + c_2 + ...` up to degree `maxdeg`.
    pub fn total(&self, maxdeg: u32) -> Result<GradedPoly> {
        let (a, b) = (self.a(), self.b());
        let neg = |p: &GradedPoly, k: i64| p.scale(&Rat::from_int(-k));
        let (num, den, top) = match self.kind {
            GenotypeKind::Aichern { r } => (vec![neg(&a, r as i64 + 1)], vec![neg(&a, 1)], self.ell),
            GenotypeKind::I22chern => (vec![neg(&a, 2), neg(&b, 2)], vec![neg(&a, 1), neg(&b, 1)], self.ell),
            GenotypeKind::III22chern => {
                (vec![neg(&a, 2), neg(&b, 2), neg(&(&a + &b), 1)], vec![neg(&a, 1), neg(&b, 1)], self.ell - 1)
            }
        };
        let q = series_quotient(&self.vars, &num, &den, maxdeg)?;
        Ok(&q * &self.d_sum(top).with_trunc(Some(maxdeg)))
    }

    /// `d_i -> d_i - (a+b) d_{i-1}` with the top `d_ell` set to zero first:
    /// turns an `i22chern` evaluation into the `iii22chern` one.
    pub fn iii22_reduction(&self) -> Substitution {
        let ab = self.e1();
        let mut s = Substitution::identity(&self.vars);
        for i in 1..=self.ell {
            let keep = if i < self.ell { self.d(i) } else { GradedPoly::zero(&self.vars) };
            s.insert("d", i as i32, &keep - &(&ab * &self.d(i - 1)));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aichern_recursion() {
        for ell in 1..=3 {
            for r in 1..=3 {
                let g = GenotypeSeries::new(GenotypeKind::Aichern { r }, ell);
                let t = g.total(3 * ell as u32 + 6).unwrap();
                for j in (ell as u32 + 2)..(3 * ell as u32 + 6) {
                    assert_eq!(t.homogeneous_part(j + 1), &g.a() * &t.homogeneous_part(j));
                }
            }
        }
    }

    #[test]
    fn reduction_maps_i22_to_iii22() {
        for ell in 1..=3 {
            let g = GenotypeSeries::new(GenotypeKind::I22chern, ell);
            let h = GenotypeSeries::new(GenotypeKind::III22chern, ell);
            let reduced = g.total(8).unwrap().substitute(&g.iii22_reduction()).unwrap().with_trunc(Some(8));
            let reduced = (0..=8).fold(GradedPoly::zero(g.vars()), |acc, k| &acc + &reduced.homogeneous_part(k));
            let direct = h.total(8).unwrap();
            let direct = (0..=8).fold(GradedPoly::zero(g.vars()), |acc, k| &acc + &direct.homogeneous_part(k));
            assert_eq!(reduced, direct);
        }
    }
}
