//! Verification suites: each check is an exact polynomial identity whose
//! residual is reported alongside the verdict.

use std::sync::Arc;

use serde_json::json;

use super::genotype::{GenotypeKind, GenotypeSeries};
use super::weights::{GermPrototype, LinearForm};
use crate::error::{Error, Result};
use crate::polycore::json::to_json_value;
use crate::polycore::schur::{schur2_in, schur3_in};
use crate::polycore::{evaluate_at_total, vanishes_under, GradedPoly, VarTable};
use crate::rat::Rat;
use crate::thomlib::{residue_a0r, residue_iii22a0};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    /// Left side minus right side, or the obstruction when the check is a divisibility.
    pub residual: GradedPoly,
    pub note: Option<String>,
}

impl Check {
    fn identity(name: impl Into<String>, lhs: &GradedPoly, rhs: &GradedPoly) -> Result<Check> {
        let residual = lhs.checked_sub(rhs)?;
        Ok(Check { name: name.into(), holds: residual.is_zero(), residual, note: None })
    }

    fn zero(name: impl Into<String>, value: GradedPoly) -> Check {
        Check { name: name.into(), holds: value.is_zero(), residual: value, note: None }
    }

    fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub ell: i64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "suite": self.suite,
            "ell": self.ell,
            "ok": self.all_hold(),
            "checks": self.checks.iter().map(|c| {
                let mut v = json!({
                    "name": c.name,
                    "holds": c.holds,
                    "residual": to_json_value(&c.residual),
                    "residualText": c.residual.to_string(),
                });
                if let Some(n) = &c.note {
                    v["note"] = json!(n);
                }
                v
            }).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} at ell = {}\n", self.suite, self.ell);
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}", if c.holds { "ok" } else { "FAIL" }, c.name));
            if !c.holds {
                out.push_str(&format!("  residual: {}", c.residual));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!("  ({})", n));
            }
            out.push('\n');
        }
        out
    }
}

type Job<'a> = Box<dyn FnOnce() -> Result<Vec<Check>> + Send + 'a>;

/// Runs independent jobs on scoped threads and concatenates their checks in job order.
fn run_jobs(jobs: Vec<Job<'_>>) -> Result<Vec<Check>> {
    let results: Vec<Result<Vec<Check>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs.into_iter().map(|j| scope.spawn(j)).collect();
        handles.into_iter().map(|h| h.join().expect("verification job panicked")).collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn zero_of(p: &GradedPoly) -> GradedPoly {
    GradedPoly::zero(p.vars())
}

/// Assignment making a linear factor vanish: its last variable with nonzero
/// coefficient is solved for.
fn kernel_of(g: &GermPrototype, w: &LinearForm) -> Vec<((String, i32), GradedPoly)> {
    let vars = g.vars();
    let pos = w.coeffs.iter().rposition(|&c| c != 0).expect("nonzero factor");
    let c = w.coeffs[pos];
    let mut rest = w.clone();
    rest.coeffs[pos] = 0;
    let value = rest.to_poly(&g.roots, &vars).scale(&Rat::new(-1, c));
    let e = &g.roots[pos];
    vec![((e.family.clone(), e.index), value)]
}

/// Evaluates a Chern polynomial at the total class of a prototype.
fn at_prototype(p: &GradedPoly, g: &GermPrototype) -> Result<GradedPoly> {
    let deg = p.degree().unwrap_or(0);
    evaluate_at_total(p, &g.chern_total(deg), "c")
}

fn beta_zero(p: &GradedPoly, i: i64) -> Result<GradedPoly> {
    if i < 1 {
        return Ok(p.clone());
    }
    p.specialize("beta", i as i32, &zero_of(p))
}

/// The four vanishing/normalization identities pinning down `R_{A_0^4}(ell)`.
pub fn verify_quadruple(ell: i64) -> Result<Report> {
    if ell < 1 {
        return Err(Error::BadRelativeDimension { ell, reason: "must be at least 1".into() });
    }
    let r4 = residue_a0r(4, ell, None)?;
    let r4 = &r4;
    let vanishing = |k: u32, label: &'static str| -> Job<'_> {
        Box::new(move || {
            let g = GermPrototype::a(k, ell)?;
            let v = beta_zero(&at_prototype(r4, &g)?, ell)?;
            Ok(vec![Check::zero(label, v)])
        })
    };
    let jobs: Vec<Job<'_>> = vec![
        vanishing(1, "q1: R(A0^4) at (1+2a)prod(1+b_i)/(1+a) = 0"),
        vanishing(2, "q2: R(A0^4) at (1+3a)prod(1+b_i)/(1+a) = 0"),
        Box::new(move || {
            let g = GermPrototype::iii22(ell)?;
            let v = at_prototype(r4, &g)?;
            let name = "q3: R(A0^4) at the III22 series = 0";
            if ell >= 2 {
                Ok(vec![Check::zero(name, beta_zero(&v, ell - 1)?)])
            } else {
                let (_, factors) = g.n1_factors()?;
                let sum = factors.iter().find(|w| w.coeffs == [1, 1]).expect("alpha1 + alpha2 divides n1");
                let holds = vanishes_under(&v, &kernel_of(&g, sum))?;
                let residual = v.substitute_with(&g.vars(), |e| {
                    if e.family == "alpha" && e.index == 2 {
                        Some(-&g.root("alpha", 1))
                    } else {
                        GradedPoly::var(&g.vars(), &e.family, e.index).ok()
                    }
                })?;
                debug_assert_eq!(holds, residual.is_zero());
                Ok(vec![Check::zero(name, residual).with_note("no beta to specialize; checked on alpha2 = -alpha1")])
            }
        }),
        Box::new(move || {
            let g = GermPrototype::a(3, ell)?;
            let lhs = beta_zero(&at_prototype(r4, &g)?, ell)?;
            let a = g.root("alpha", 0);
            let mut rhs = a.pow(3).scale(&Rat::from_int(-36));
            for i in 1..ell {
                let b = g.root("beta", i as i32);
                for j in 1..=3 {
                    rhs = &rhs * &(&b - &a.scale(&Rat::from_int(j)));
                }
            }
            let via_m4 = beta_zero(&g.m4_class()?, ell)?.scale(&Rat::from_int(6));
            Ok(vec![
                Check::identity(
                    "q4: R(A0^4) at (1+4a)prod(1+b_i)/(1+a) = -36 a^3 prod(b_i-a)(b_i-2a)(b_i-3a)",
                    &lhs,
                    &rhs,
                )?,
                Check::identity("q4: same value equals 6 mbar4(A3) at b_ell = 0", &lhs, &via_m4)?,
            ])
        }),
    ];
    Ok(Report { suite: "quadruple".into(), ell, checks: run_jobs(jobs)? })
}

/// Coefficient of `R_{A_0^r}` in `mbar_r`.
fn leading_coefficient(r: u32) -> Result<Rat> {
    match r {
        2 => Ok(Rat::one()),
        3 => Ok(Rat::new(1, 2)),
        4 => Ok(Rat::new(1, 6)),
        _ => Err(Error::Unsupported(format!("divisibility check for r = {}", r))),
    }
}

/// Certifies `mbar_r(g) - coeff * R_{A_0^r}(c(g))` vanishes on each linear factor of `n_1(g)`.
pub fn verify_divisibility(g: &GermPrototype, r: u32) -> Result<Vec<Check>> {
    // the precondition e(source) | e(target) comes first
    let (_, factors) = g.n1_factors()?;
    let coeff = leading_coefficient(r)?;
    let m = g.m_class(r)?;
    let res = residue_a0r(r, g.ell, None)?;
    let diff = m.checked_sub(&at_prototype(&res, g)?.scale(&coeff))?;
    let mut distinct = factors.clone();
    distinct.dedup();
    if distinct.len() != factors.len() {
        return Err(Error::Unsupported(format!("{} has a repeated factor in n1", g.name)));
    }
    let mut checks = Vec::new();
    for w in &distinct {
        let kernel = kernel_of(g, w);
        let (name, value) = &kernel[0];
        let witness = diff.specialize(&name.0, name.1, value)?;
        checks.push(Check::zero(
            format!("{}: mbar{} - {} R(A0^{}) divisible by {}", g.name, r, coeff, r, g.form_poly(w)),
            witness,
        ));
    }
    Ok(checks)
}

/// Divisibility certificates for the documented prototypes, plus the blow-up negative control.
pub fn verify_divisibility_suite(ell: i64) -> Result<Report> {
    if ell < 1 {
        return Err(Error::BadRelativeDimension { ell, reason: "must be at least 1".into() });
    }
    let mut jobs: Vec<Job<'_>> = vec![Box::new(|| verify_divisibility(&GermPrototype::whitney(), 2))];
    for k in 1..=3 {
        jobs.push(Box::new(move || verify_divisibility(&GermPrototype::a(k, ell)?, 4)));
    }
    jobs.push(Box::new(move || verify_divisibility(&GermPrototype::iii22(ell)?, 4)));
    jobs.push(Box::new(|| {
        let g = GermPrototype::blow_up();
        let rejected = matches!(g.n1(), Err(Error::NonExactDivision(_)));
        let vars = g.vars();
        Ok(vec![Check {
            name: "blow-up: e(source) does not divide e(target)".into(),
            holds: rejected,
            residual: GradedPoly::zero(&vars),
            note: Some("negative control".into()),
        }])
    }));
    Ok(Report { suite: "divisibility".into(), ell, checks: run_jobs(jobs)? })
}

/// Whitney umbrella: `n_1 = 2 beta`, `mbar_2 = beta - alpha`, and `mbar_2 - n_1 = -c_1`.
pub fn whitney_chain() -> Result<Vec<Check>> {
    let g = GermPrototype::whitney();
    let (a, b) = (g.root("alpha", 0), g.root("beta", 1));
    let n1 = g.n1()?;
    let m2 = g.m_class(2)?;
    let c1 = g.chern_total(1).homogeneous_part(1);
    Ok(vec![
        Check::identity("whitney: n1 = 2 beta", &n1, &b.scale(&Rat::from_int(2)))?,
        Check::identity("whitney: mbar2 = beta - alpha", &m2, &(&b - &a))?,
        Check::identity("whitney: c1 = beta + alpha", &c1, &(&b + &a))?,
        Check::identity("whitney: mbar2 - n1 = -c1", &(&m2 - &n1), &-&c1)?,
    ])
}

/// `c_{ell+1}` of the stable `A_1` germ equals the Euler class `alpha prod(beta_i - alpha)`.
pub fn verify_tpa1(ell: i64) -> Result<Report> {
    let g = GermPrototype::a(1, ell)?;
    let a = g.root("alpha", 0);
    let mut rhs = a.clone();
    for i in 1..=ell {
        rhs = &rhs * &(&g.root("beta", i as i32) - &a);
    }
    let lhs = g.chern_total(ell as u32 + 1).homogeneous_part(ell as u32 + 1);
    let mut checks =
        vec![Check::identity(format!("c{}(A1({})) = alpha prod(beta_i - alpha)", ell + 1, ell), &lhs, &rhs)?];
    checks.push(Check::identity("same class is the source Euler class", &lhs, &g.euler_source())?);
    Ok(Report { suite: "tpa1".into(), ell, checks })
}

fn schur22(vars: &Arc<VarTable>, ell: i64) -> GradedPoly {
    schur2_in(vars, ell + 2, ell + 2)
}

/// `s(alpha, beta, gamma)` under `i22chern` against the factorization formula.
fn factorization_check(
    g: &GenotypeSeries,
    total: &GradedPoly,
    cvars: &Arc<VarTable>,
    t: (i64, i64, i64),
) -> Result<Check> {
    let ell = g.ell;
    let (al, be, ga) = t;
    let lhs = evaluate_at_total(&schur3_in(cvars, al, be, ga), total, "c")?;
    let s22 = evaluate_at_total(&schur22(cvars, ell), total, "c")?;
    let tail = &(&g.d(ga) - &(&g.e1() * &g.d(ga - 1)).scale(&Rat::from_int(2)))
        + &(&g.e2() * &g.d(ga - 2)).scale(&Rat::from_int(4));
    let rhs = &(&(&g.e2().pow((be - ell - 2) as u32) * &g.h(al - be)) * &s22) * &tail;
    Check::identity(format!("factorization s({},{},{}) under i22chern", al, be, ga), &lhs, &rhs)
}

/// The three genotype substitutions behind the `III_{2,2}A_0` residue,
/// plus factorization-formula spot checks.
pub fn verify_iii22a0(ell: i64) -> Result<Report> {
    if ell < 1 {
        return Err(Error::BadRelativeDimension { ell, reason: "must be at least 1".into() });
    }
    let r = residue_iii22a0(ell)?;
    let r = &r;
    let deg = 3 * ell as u32 + 4;
    let mut jobs: Vec<Job<'_>> = Vec::new();
    for rr in 1..=3 {
        jobs.push(Box::new(move || {
            let g = GenotypeSeries::new(GenotypeKind::Aichern { r: rr }, ell);
            let v = evaluate_at_total(r, &g.total(deg)?, "c")?;
            Ok(vec![Check::zero(format!("(i) R(III22A0) under aichern r={} = 0", rr), v)])
        }));
    }
    jobs.push(Box::new(move || {
        let cvars = VarTable::chern("c", deg);
        let i22 = GenotypeSeries::new(GenotypeKind::I22chern, ell);
        let iii = GenotypeSeries::new(GenotypeKind::III22chern, ell);
        let t_i22 = i22.total(deg)?;
        let t_iii = iii.total(deg)?;
        let at_i22 = evaluate_at_total(r, &t_i22, "c")?;
        let s_i22 = evaluate_at_total(&schur22(&cvars, ell), &t_i22, "c")?;
        let want_i22 = (&i22.d(ell) * &s_i22).scale(&Rat::from_int(-4));
        let at_iii = evaluate_at_total(r, &t_iii, "c")?;
        let s_iii = evaluate_at_total(&schur22(&cvars, ell), &t_iii, "c")?;
        let want_iii = &(&iii.e1() * &iii.d(ell - 1)).scale(&Rat::from_int(4)) * &s_iii;
        let reduced = at_i22.substitute(&i22.iii22_reduction())?;
        let mut checks = vec![
            Check::identity("(ii) R(III22A0) under i22chern = -4 d_ell s(ell+2,ell+2)", &at_i22, &want_i22)?,
            Check::identity("(iii) R(III22A0) under iii22chern = 4(a+b) d_{ell-1} s(ell+2,ell+2)", &at_iii, &want_iii)?,
            Check::identity("(iii) i22chern result reduced by d_i -> d_i - (a+b) d_{i-1}", &reduced, &at_iii)?
                .with_note("at ell = 1 this is d_1 -> -(a+b)"),
        ];
        if ell == 1 {
            let literal = at_i22.specialize("d", 1, &-&i22.e1())?;
            checks.push(Check::identity("(iii) ell = 1: d_1 -> -(a+b) in the i22chern result", &literal, &at_iii)?);
        }
        Ok(checks)
    }));
    jobs.push(Box::new(move || {
        let g = GenotypeSeries::new(GenotypeKind::I22chern, ell);
        let top = ell + 5;
        let cvars = VarTable::chern("c", (3 * top) as u32);
        let total = g.total((3 * top) as u32)?;
        let mut checks = Vec::new();
        for be in ell + 2..=top {
            for al in be..=top {
                for ga in 0..=ell {
                    checks.push(factorization_check(&g, &total, &cvars, (al, be, ga))?);
                }
            }
        }
        Ok(checks)
    }));
    Ok(Report { suite: "iii22a0".into(), ell, checks: run_jobs(jobs)? })
}

/// The single factorization-formula example `s(4,3,0)` at `ell = 1`.
pub fn factorization_spot_check() -> Result<Check> {
    let g = GenotypeSeries::new(GenotypeKind::I22chern, 1);
    let cvars = VarTable::chern("c", 9);
    factorization_check(&g, &g.total(9)?, &cvars, (4, 3, 0))
}
