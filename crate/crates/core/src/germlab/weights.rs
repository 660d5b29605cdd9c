//! Stable germs encoded by the torus weights of their symmetry groups.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::polycore::{series_quotient, GradedPoly, VarEntry, VarTable};
use crate::rat::Rat;

/// Integer linear form in the root symbols of a prototype.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    pub coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> LinearForm {
        LinearForm { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `(k, p)` with `self = k * p`, `p` primitive and its first nonzero
    /// coefficient positive.
    pub fn primitive(&self) -> (i64, LinearForm) {
        let g = self.coeffs.iter().fold(0i64, |g, &c| g.gcd(&c));
        if g == 0 {
            return (0, self.clone());
        }
        let lead = *self.coeffs.iter().find(|&&c| c != 0).expect("nonzero form");
        let k = if lead < 0 { -g } else { g };
        (k, LinearForm { coeffs: self.coeffs.iter().map(|c| c / k).collect() })
    }

    pub fn to_poly(&self, roots: &[VarEntry], vars: &Arc<VarTable>) -> GradedPoly {
        let mut acc = GradedPoly::zero(vars);
        for (c, e) in self.coeffs.iter().zip(roots) {
            if *c != 0 {
                let v = GradedPoly::var(vars, &e.family, e.index).expect("root in table");
                acc = &acc + &v.scale(&Rat::from_int(*c));
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrototypeKind {
    /// Stable `A_k` germ.
    A(u32),
    III22,
    Other,
}

/// Weight data of a stable germ: source and target representations of the
/// maximal torus, each given by its weights.
#[derive(Clone, Debug)]
pub struct GermPrototype {
    pub name: String,
    pub kind: PrototypeKind,
    pub ell: i64,
    pub roots: Vec<VarEntry>,
    pub source: Vec<LinearForm>,
    pub target: Vec<LinearForm>,
    pub delta: u32,
}

fn alpha() -> VarEntry {
    VarEntry::new("alpha", 0, 1)
}

fn beta(i: i64) -> VarEntry {
    VarEntry::new("beta", i as i32, 1)
}

impl GermPrototype {
    pub fn new(
        name: &str,
        roots: Vec<VarEntry>,
        source: Vec<LinearForm>,
        target: Vec<LinearForm>,
        delta: u32,
    ) -> Result<GermPrototype> {
        let n = roots.len();
        if let Some(w) = source.iter().chain(&target).find(|w| w.coeffs.len() != n) {
            return Err(Error::UnsupportedPrototype(format!("weight {:?} does not match {} roots", w.coeffs, n)));
        }
        let ell = target.len() as i64 - source.len() as i64;
        Ok(GermPrototype { name: name.to_string(), kind: PrototypeKind::Other, ell, roots, source, target, delta })
    }

    /// Stable `A_k` germ of relative dimension `ell`; roots `alpha, beta_1..beta_ell`.
    ///
    /// Source weights `j alpha` (`j = 1..k`) and `beta_i - j alpha`; target
    /// weights `(k+1) alpha`, `beta_i`, `j alpha` (`j = 2..k`) and `beta_i - j alpha`.
    pub fn a(k: u32, ell: i64) -> Result<GermPrototype> {
        if ell < 0 {
            return Err(Error::BadRelativeDimension { ell, reason: "must be nonnegative".into() });
        }
        let n = ell as usize + 1;
        let mut roots = vec![alpha()];
        roots.extend((1..=ell).map(beta));
        let form = |a: i64, b: Option<usize>| {
            let mut c = vec![0; n];
            c[0] = a;
            if let Some(i) = b {
                c[i] = 1;
            }
            LinearForm::new(c)
        };
        let k = k as i64;
        let mut source: Vec<LinearForm> = (1..=k).map(|j| form(j, None)).collect();
        let mut target = vec![form(k + 1, None)];
        target.extend((1..=ell as usize).map(|i| form(0, Some(i))));
        target.extend((2..=k).map(|j| form(j, None)));
        for i in 1..=ell as usize {
            for j in (1..=k).rev() {
                source.push(form(-j, Some(i)));
                target.push(form(-j, Some(i)));
            }
        }
        let mut g = GermPrototype::new(&format!("A{}({})", k, ell), roots, source, target, k as u32 + 1)?;
        g.kind = PrototypeKind::A(k as u32);
        Ok(g)
    }

    /// Stable `III_{2,2}` germ; roots `alpha_1, alpha_2, beta_1..beta_{ell-1}`.
    pub fn iii22(ell: i64) -> Result<GermPrototype> {
        if ell < 1 {
            return Err(Error::BadRelativeDimension { ell, reason: "III22 needs ell >= 1".into() });
        }
        let nb = ell as usize - 1;
        let n = nb + 2;
        let mut roots = vec![VarEntry::new("alpha", 1, 1), VarEntry::new("alpha", 2, 1)];
        roots.extend((1..ell).map(beta));
        let form = |a1: i64, a2: i64, b: Option<usize>| {
            let mut c = vec![0; n];
            c[0] = a1;
            c[1] = a2;
            if let Some(i) = b {
                c[1 + i] = 1;
            }
            LinearForm::new(c)
        };
        let mut source = vec![
            form(1, 0, None),
            form(0, 1, None),
            form(2, -1, None),
            form(-1, 2, None),
            form(1, 0, None),
            form(0, 1, None),
        ];
        let mut target = vec![form(1, 1, None), form(2, 0, None), form(0, 2, None)];
        target.extend((1..=nb).map(|i| form(0, 0, Some(i))));
        target.extend([form(2, -1, None), form(-1, 2, None), form(1, 0, None), form(0, 1, None)]);
        for i in 1..=nb {
            for (a1, a2) in [(-1, 0), (0, -1)] {
                source.push(form(a1, a2, Some(i)));
                target.push(form(a1, a2, Some(i)));
            }
        }
        let mut g = GermPrototype::new(&format!("III22({})", ell), roots, source, target, 3)?;
        g.kind = PrototypeKind::III22;
        Ok(g)
    }

    /// The Whitney umbrella, `A_1` with `ell = 1`.
    pub fn whitney() -> GermPrototype {
        let mut g = GermPrototype::a(1, 1).expect("valid");
        g.name = "Whitney umbrella".to_string();
        g
    }

    /// Weight data of the blow-up of a point, which is not a stable germ:
    /// source weights `(alpha, beta)`, target weights `(alpha, alpha + beta)`.
    pub fn blow_up() -> GermPrototype {
        GermPrototype::new(
            "blow-up",
            vec![alpha(), beta(1)],
            vec![LinearForm::new(vec![1, 0]), LinearForm::new(vec![0, 1])],
            vec![LinearForm::new(vec![1, 0]), LinearForm::new(vec![1, 1])],
            1,
        )
        .expect("consistent weights")
    }

    pub fn vars(&self) -> Arc<VarTable> {
        VarTable::new(self.roots.clone()).expect("distinct roots")
    }

    pub fn root(&self, family: &str, index: i32) -> GradedPoly {
        GradedPoly::var(&self.vars(), family, index).expect("root of this prototype")
    }

    pub fn form_poly(&self, w: &LinearForm) -> GradedPoly {
        w.to_poly(&self.roots, &self.vars())
    }

    /// `prod (1 + target) / prod (1 + source)` up to degree `maxdeg`.
    pub fn chern_total(&self, maxdeg: u32) -> GradedPoly {
        let vars = self.vars();
        let num: Vec<GradedPoly> = self.target.iter().map(|w| w.to_poly(&self.roots, &vars)).collect();
        let den: Vec<GradedPoly> = self.source.iter().map(|w| w.to_poly(&self.roots, &vars)).collect();
        series_quotient(&vars, &num, &den, maxdeg).expect("weights are linear forms")
    }

    pub fn euler_source(&self) -> GradedPoly {
        product(self.source.iter().map(|w| self.form_poly(w)), &self.vars())
    }

    pub fn euler_target(&self) -> GradedPoly {
        product(self.target.iter().map(|w| self.form_poly(w)), &self.vars())
    }

    /// `e(target) / e(source)` as a scalar and a list of primitive linear factors.
    ///
    /// Linear forms are prime, so the quotient is a polynomial exactly when
    /// every source factor can be matched with a target factor.
    pub fn n1_factors(&self) -> Result<(Rat, Vec<LinearForm>)> {
        let mut scalar = Rat::one();
        let mut num = Vec::new();
        for w in &self.target {
            let (k, p) = w.primitive();
            if k == 0 {
                return Ok((Rat::zero(), Vec::new()));
            }
            scalar *= Rat::from_int(k);
            num.push(p);
        }
        for w in &self.source {
            let (k, p) = w.primitive();
            if k == 0 {
                return Err(Error::NonExactDivision(format!("{}: a source weight is zero", self.name)));
            }
            match num.iter().position(|q| *q == p) {
                Some(i) => {
                    num.remove(i);
                    scalar = scalar / Rat::from_int(k);
                }
                None => {
                    return Err(Error::NonExactDivision(format!(
                        "{}: source factor {} has no partner in the target",
                        self.name,
                        self.form_poly(w)
                    )))
                }
            }
        }
        num.sort();
        Ok((scalar, num))
    }

    /// The image class `n_1 = e(target) / e(source)`.
    pub fn n1(&self) -> Result<GradedPoly> {
        let (k, factors) = self.n1_factors()?;
        let vars = self.vars();
        Ok(product(factors.iter().map(|w| w.to_poly(&self.roots, &vars)), &vars).scale(&k))
    }

    /// `mbar_r`, the class of the closure of the `r`-fold point set in the source.
    ///
    /// Zero beyond `delta`; for `A_k` the `(k+1)`-fold points form the
    /// coordinate subspace cut out by the weights `beta_i - j alpha`.
    pub fn m_class(&self, r: u32) -> Result<GradedPoly> {
        let vars = self.vars();
        if r == 1 {
            return Ok(GradedPoly::one(&vars));
        }
        if r > self.delta {
            return Ok(GradedPoly::zero(&vars));
        }
        match self.kind {
            PrototypeKind::A(k) if r == k + 1 => {
                let a = self.root("alpha", 0);
                let mut acc = GradedPoly::one(&vars);
                for i in 1..=self.ell {
                    let b = self.root("beta", i as i32);
                    for j in 1..=k {
                        acc = &acc * &(&b - &a.scale(&Rat::from_int(j as i64)));
                    }
                }
                Ok(acc)
            }
            _ => Err(Error::UnsupportedPrototype(format!("mbar_{} of {} is not tabulated", r, self.name))),
        }
    }

    /// `mbar_4` for the prototypes entering the quadruple point argument.
    pub fn m4_class(&self) -> Result<GradedPoly> {
        match self.kind {
            PrototypeKind::A(1..=3) | PrototypeKind::III22 => self.m_class(4),
            _ => Err(Error::UnsupportedPrototype(self.name.clone())),
        }
    }
}

fn product(it: impl Iterator<Item = GradedPoly>, vars: &Arc<VarTable>) -> GradedPoly {
    it.fold(GradedPoly::one(vars), |acc, p| &acc * &p)
}

impl fmt::Display for GermPrototype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ws: &[LinearForm]| ws.iter().map(|w| self.form_poly(w).to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "{}: source [{}] -> target [{}]", self.name, list(&self.source), list(&self.target))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::series::one_plus;

    fn closed_total(g: &GermPrototype, num: &[GradedPoly], den: &[GradedPoly], maxdeg: u32) -> GradedPoly {
        let mut n = num.to_vec();
        for i in 1..=g.roots.iter().filter(|e| e.family == "beta").count() {
            n.push(g.root("beta", i as i32));
        }
        series_quotient(&g.vars(), &n, den, maxdeg).unwrap()
    }

    #[test]
    fn dimensions() {
        for ell in 0..4 {
            for k in 1..4 {
                let g = GermPrototype::a(k, ell).unwrap();
                assert_eq!(g.source.len() as i64, k as i64 * (ell + 1));
                assert_eq!(g.ell, ell);
            }
        }
        for ell in 1..4 {
            let g = GermPrototype::iii22(ell).unwrap();
            assert_eq!(g.source.len() as i64, 2 * ell + 4);
            assert_eq!(g.target.len() as i64, 3 * ell + 4);
        }
    }

    #[test]
    fn chern_totals_match_closed_forms() {
        for ell in 1..=3 {
            for k in 1..=3u32 {
                let g = GermPrototype::a(k, ell).unwrap();
                let a = g.root("alpha", 0);
                let want = closed_total(&g, &[a.scale(&Rat::from_int(k as i64 + 1))], std::slice::from_ref(&a), 8);
                assert_eq!(g.chern_total(8), want);
            }
            let g = GermPrototype::iii22(ell).unwrap();
            let (a1, a2) = (g.root("alpha", 1), g.root("alpha", 2));
            let two = Rat::from_int(2);
            let want = closed_total(&g, &[a1.scale(&two), a2.scale(&two), &a1 + &a2], &[a1.clone(), a2.clone()], 8);
            assert_eq!(g.chern_total(8), want);
        }
        let w = GermPrototype::whitney();
        assert_eq!(one_plus(&w.root("alpha", 0)).len(), 2);
    }

    #[test]
    fn image_classes() {
        for ell in 0..=3 {
            for k in 1..=3u32 {
                let g = GermPrototype::a(k, ell).unwrap();
                let mut want = GradedPoly::constant(&g.vars(), Rat::from_int(k as i64 + 1));
                for i in 1..=ell {
                    want = &want * &g.root("beta", i as i32);
                }
                assert_eq!(g.n1().unwrap(), want);
                assert_eq!(&g.n1().unwrap() * &g.euler_source(), g.euler_target());
            }
        }
        for ell in 1..=3 {
            let g = GermPrototype::iii22(ell).unwrap();
            let mut want = (&g.root("alpha", 1) + &g.root("alpha", 2)).scale(&Rat::from_int(4));
            for i in 1..ell {
                want = &want * &g.root("beta", i as i32);
            }
            assert_eq!(g.n1().unwrap(), want);
        }
        let w = GermPrototype::whitney();
        assert_eq!(w.n1().unwrap(), w.root("beta", 1).scale(&Rat::from_int(2)));
    }

    #[test]
    fn blow_up_is_not_divisible() {
        let g = GermPrototype::blow_up();
        assert!(matches!(g.n1(), Err(Error::NonExactDivision(_))));
    }

    #[test]
    fn multiple_point_classes() {
        let g = GermPrototype::a(3, 1).unwrap();
        let (a, b) = (g.root("alpha", 0), g.root("beta", 1));
        let want = &(&(&b - &a) * &(&b - &a.scale(&Rat::from_int(2)))) * &(&b - &a.scale(&Rat::from_int(3)));
        assert_eq!(g.m4_class().unwrap(), want);
        for ell in 1..=3 {
            assert!(GermPrototype::a(1, ell).unwrap().m4_class().unwrap().is_zero());
            assert!(GermPrototype::a(2, ell).unwrap().m4_class().unwrap().is_zero());
            assert!(GermPrototype::iii22(ell).unwrap().m4_class().unwrap().is_zero());
            assert!(GermPrototype::a(3, ell).unwrap().m4_class().unwrap().is_homogeneous_of(3 * ell as u32));
        }
        let w = GermPrototype::whitney();
        assert_eq!(w.m_class(2).unwrap(), &w.root("beta", 1) - &w.root("alpha", 0));
        assert!(GermPrototype::iii22(1).unwrap().m_class(3).is_err());
    }
}
