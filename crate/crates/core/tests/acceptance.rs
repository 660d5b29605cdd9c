//! One PASS/FAIL line per acceptance criterion, with runtimes against their budgets.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use multising::germlab::{
    factorization_spot_check, verify_divisibility, verify_divisibility_suite, verify_iii22a0, verify_quadruple,
    verify_tpa1, whitney_chain, GermPrototype, Report,
};
use multising::grassmann::{GrassClass, GrassRing, Orientation, CALIBRATED_ORIENTATION};
use multising::kazarian::{expand_n, FormalExpansion, MultiSingularity, Symbol, SymbolKind};
use multising::polycore::render::to_latex;
use multising::polycore::schur::chern_var;
use multising::polycore::{GradedPoly, Monomial, Substitution, VarTable};
use multising::secant::{count_secant, ChiPolynomial, SecantEngine, SecantProblem};
use multising::thomlib::{a_table, residue_a0r, ResidueTable, Singularity};
use multising::{Error, Rat};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn c_poly(t: &Arc<VarTable>, terms: &[(i64, &[i64])]) -> GradedPoly {
    let mut acc = GradedPoly::zero(t);
    for (k, idx) in terms {
        let mut p = GradedPoly::constant(t, Rat::from_int(*k));
        for &m in idx.iter() {
            p = &p * &chern_var(t, m);
        }
        acc = &acc + &p;
    }
    acc
}

fn quadruple_residue(ell: i64) -> Result<GradedPoly, String> {
    let r = ResidueTable::new().residue(&[Singularity::A(0); 4], ell).map_err(err)?;
    Ok(r.poly)
}

fn criterion_1() -> Outcome {
    let p = quadruple_residue(1)?;
    let t = VarTable::chern("c", 3);
    let expected = c_poly(&t, &[(1, &[1, 1, 1]), (3, &[1, 2]), (2, &[3])]).scale(&Rat::from_int(-6));
    ensure(p == expected, format!("got {}", p))?;
    ensure(to_latex(&p) == "-6(c_1^3+3c_1c_2+2c_3)", format!("latex {}", to_latex(&p)))
}

fn criterion_2() -> Outcome {
    let p = quadruple_residue(2)?;
    let t = VarTable::chern("c", 6);
    let expected = c_poly(
        &t,
        &[(1, &[2, 2, 2]), (3, &[1, 2, 3]), (7, &[2, 4]), (2, &[1, 1, 4]), (10, &[1, 5]), (12, &[6]), (1, &[3, 3])],
    )
    .scale(&Rat::from_int(-6));
    ensure(p == expected, format!("got {}", p))
}

fn criterion_3() -> Outcome {
    let t = a_table(4);
    let rows: Vec<Vec<i64>> = (0..=4).map(|n| (0..=n).map(|j| t[n - j][j].to_i64().unwrap()).collect()).collect();
    let expected = vec![vec![0], vec![1, 1], vec![3, 2, 3], vec![9, 5, 5, 9], vec![27, 14, 10, 14, 27]];
    ensure(rows == expected, format!("got {:?}", rows))
}

fn criterion_4() -> Outcome {
    for ell in 1..=5i64 {
        let t = VarTable::chern("c", 2 * ell as u32 + 1);
        let double = residue_a0r(2, ell, None).map_err(err)?;
        ensure(double == -&chern_var(&t, ell), format!("double point, ell = {}", ell))?;
        let mut closed = &chern_var(&t, ell) * &chern_var(&t, ell);
        for i in 0..ell {
            let term = &chern_var(&t, ell - 1 - i) * &chern_var(&t, ell + 1 + i);
            closed = &closed + &term.scale(&Rat::from_int(2).pow(i as u32));
        }
        let triple = residue_a0r(3, ell, None).map_err(err)?;
        ensure(triple == closed.scale(&Rat::from_int(2)), format!("triple point, ell = {}", ell))?;
    }
    Ok(())
}

fn report_holds(r: Result<Report, Error>) -> Outcome {
    let r = r.map_err(err)?;
    let failed: Vec<String> = r.failures().map(|c| c.name.clone()).collect();
    ensure(failed.is_empty(), format!("{} ell = {}: {:?}", r.suite, r.ell, failed))
}

fn criterion_5() -> Outcome {
    (1..=3).try_for_each(|ell| report_holds(verify_quadruple(ell)))
}

fn criterion_6() -> Outcome {
    (0..=3).try_for_each(|ell| report_holds(verify_tpa1(ell)))
}

fn criterion_7() -> Outcome {
    let checks = whitney_chain().map_err(err)?;
    ensure(checks.len() == 4 && checks.iter().all(|c| c.holds), "whitney chain")
}

fn criterion_8() -> Outcome {
    let s = |k: usize| Symbol::new(SymbolKind::S, &vec![Singularity::A(0); k]);
    let mut expected = FormalExpansion::new();
    expected.add_term(vec![s(4)], Rat::from_int(1));
    expected.add_term(vec![s(1), s(3)], Rat::from_int(4));
    expected.add_term(vec![s(1), s(1), s(2)], Rat::from_int(6));
    expected.add_term(vec![s(2), s(2)], Rat::from_int(3));
    expected.add_term(vec![s(1), s(1), s(1), s(1)], Rat::from_int(1));
    let got = expand_n(&MultiSingularity::a0_power(4));
    ensure(got == expected, format!("got {}", got))
}

fn criterion_9() -> Outcome {
    (1..=3).try_for_each(|ell| report_holds(verify_iii22a0(ell)))?;
    let spot = factorization_spot_check().map_err(err)?;
    ensure(spot.holds, spot.name)
}

fn criterion_10() -> Outcome {
    let g24 = GrassRing::new(2, 4).map_err(err)?;
    let g37 = GrassRing::new(3, 7).map_err(err)?;
    for (g, maxdeg) in [(g24, g24.dim()), (g37, 6)] {
        let small: Vec<_> = (0..=maxdeg).flat_map(|d| g.basis_of_degree(d)).collect();
        for a in &small {
            for b in &small {
                if a.size() + b.size() > maxdeg {
                    continue;
                }
                let lhs = GrassClass::schur(g, a.clone()).checked_mul(&GrassClass::schur(g, b.clone())).map_err(err)?;
                ensure(lhs == common::oracle_product(g, a, b), format!("{} * {} in {:?}", a, b, g))?;
            }
        }
    }
    let s1 = GrassClass::schur(g24, multising::grassmann::Partition::row(1));
    let mut p = GrassClass::one(g24);
    for _ in 0..4 {
        p = p.checked_mul(&s1).map_err(err)?;
    }
    ensure(p.integrate() == Rat::from_int(2), "integral of sigma_1^4")?;
    let g36 = GrassRing::new(3, 6).map_err(err)?;
    let basis = g36.basis();
    for a in &basis {
        for b in &basis {
            let v = GrassClass::schur(g36, a.clone())
                .checked_mul(&GrassClass::schur(g36, b.clone()))
                .map_err(err)?
                .integrate();
            let expected = if *b == g36.dual(a) { Rat::one() } else { Rat::zero() };
            ensure(v == expected, format!("pairing {} {}", a, b))?;
        }
    }
    Ok(())
}

fn golden(a: u32) -> Result<ChiPolynomial, String> {
    let path = format!("{}/tests/golden/n{}.txt", env!("CARGO_MANIFEST_DIR"), a);
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    text.replace('\n', " ").parse().map_err(|e: multising::ParseError| e.to_string())
}

fn secant_matches(a: u32, o: Orientation) -> Result<bool, String> {
    let p = SecantProblem::new(a).map_err(err)?;
    Ok(count_secant(p, o, &ResidueTable::new()).map_err(err)?.scaled == golden(a)?)
}

fn criterion_11() -> Outcome {
    let matching: Vec<Orientation> = [Orientation::Literal, Orientation::Flipped]
        .into_iter()
        .filter(|&o| secant_matches(1, o).unwrap_or(false))
        .collect();
    ensure(matching == vec![CALIBRATED_ORIENTATION], format!("orientations matching N1: {:?}", matching))?;
    for (a, budget) in [(2u32, 60u64), (3, 300), (4, 1800)] {
        let t = Instant::now();
        ensure(secant_matches(a, CALIBRATED_ORIENTATION)?, format!("N{} differs", a))?;
        println!("      N{} in {:.2?} (budget {} s)", a, t.elapsed(), budget);
        ensure(t.elapsed() < Duration::from_secs(budget), format!("N{} over budget", a))?;
    }
    Ok(())
}

fn criterion_12() -> Outcome {
    let g = GermPrototype::blow_up();
    ensure(matches!(g.n1(), Err(Error::NonExactDivision(_))), "blow-up n1 was accepted")?;
    ensure(
        matches!(verify_divisibility(&g, 2), Err(Error::NonExactDivision(_))),
        "blow-up divisibility was certified",
    )?;
    let suite = verify_divisibility_suite(1).map_err(err)?;
    let control = suite.checks.iter().find(|c| c.name.starts_with("blow-up")).ok_or("no negative control in suite")?;
    ensure(control.holds, "blow-up not reported as rejected")
}

fn criterion_13() -> Outcome {
    // every residue the table can produce has the degree of its locus
    let table = ResidueTable::new();
    let alphas: Vec<Vec<Singularity>> = vec![
        vec![Singularity::A(0); 2],
        vec![Singularity::A(0); 3],
        vec![Singularity::A(0); 4],
        vec![Singularity::A(0), Singularity::A(1)],
        vec![Singularity::A(0), Singularity::III22],
    ];
    for ell in 1..=5i64 {
        for parts in &alphas {
            let alpha = MultiSingularity::new(parts.clone()).ok_or("empty multisingularity")?;
            let res = table.residue(parts, ell).map_err(err)?;
            let want = alpha.codim(ell) as u32;
            ensure(res.poly.is_homogeneous_of(want), format!("R[{}] at ell = {} not of degree {}", alpha, ell, want))?;
        }
        for i in 0..=3 {
            let tp = table.residue(&[Singularity::A(i)], ell).map_err(err)?;
            let want = Singularity::A(i).codim(ell) as u32;
            ensure(tp.poly.is_homogeneous_of(want), format!("Tp(A{}) at ell = {}", i, ell))?;
        }
    }
    // every class entering the integration is homogeneous of the expected degree
    for a in 1..=2 {
        let p = SecantProblem::new(a).map_err(err)?;
        let mut e = SecantEngine::new(p, CALIBRATED_ORIENTATION);
        for j in 1..=4 {
            let (s, _) = e.s_class(j, &table).map_err(err)?;
            ensure(s.degree().map_err(err)? == Some(j * p.ell()), format!("S_{} for a = {}", j, a))?;
        }
    }
    // randomized ring axioms and substitution morphism
    let t = VarTable::chern("c", 3);
    let poly = {
        let t = t.clone();
        proptest::collection::vec((proptest::collection::vec(0u32..3, 3), -5i64..=5), 0..5).prop_map(move |terms| {
            let mut p = GradedPoly::zero(&t);
            for (e, c) in terms {
                let pairs: Vec<(usize, u32)> =
                    e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (i, x)).collect();
                p.add_term(Monomial::from_exponents(&t, &pairs), Rat::from_int(c));
            }
            p
        })
    };
    let mut runner = TestRunner::new(Config { cases: 64, failure_persistence: None, ..Config::default() });
    runner
        .run(&(poly.clone(), poly.clone(), poly.clone()), |(p, q, r)| {
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let tt = t.clone();
    runner
        .run(&(poly.clone(), poly.clone(), poly.clone(), poly), move |(p, q, x, y)| {
            let mut s = Substitution::new(&tt);
            s.insert("c", 1, x);
            s.insert("c", 2, y);
            s.insert("c", 3, GradedPoly::var(&tt, "c", 1).unwrap());
            let sp = p.substitute(&s).unwrap();
            let sq = q.substitute(&s).unwrap();
            prop_assert_eq!((&p * &q).substitute(&s).unwrap(), &sp * &sq);
            prop_assert_eq!((&p + &q).substitute(&s).unwrap(), &sp + &sq);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("quadruple residue, ell = 1", criterion_1, 1),
        ("quadruple residue, ell = 2", criterion_2, 1),
        ("a_ij triangle rows 0..4", criterion_3, 1),
        ("double and triple point residues, ell = 1..5", criterion_4, 5),
        ("interpolation identities q1-q4, ell = 1..3", criterion_5, 120),
        ("Tp(A1) identity, ell = 0..3", criterion_6, 5),
        ("Whitney umbrella chain", criterion_7, 1),
        ("expansion of n(A0^4)", criterion_8, 1),
        ("III22A0 substitution identities and factorization", criterion_9, 120),
        ("Grassmannian oracle and Poincare pairing", criterion_10, 60),
        ("4-secant planes N1..N4 with one calibration", criterion_11, 1800 + 360),
        ("blow-up negative control", criterion_12, 1),
        ("homogeneity audits and randomized ring checks", criterion_13, 60),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let elapsed = t.elapsed();
        let outcome = outcome.and_then(|_| {
            ensure(elapsed < Duration::from_secs(budget), format!("took {:.2?}, budget {} s", elapsed, budget))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {} ({:.2?})", i + 1, name, elapsed),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {} ({:.2?}): {}", i + 1, name, elapsed, e);
            }
        }
    }
    if failed > 0 {
        println!("{} criteria failed", failed);
        std::process::exit(1);
    }
}
