use std::collections::BTreeMap;

use multising::grassmann::{Orientation, CALIBRATED_ORIENTATION};
use multising::kazarian::{expand_n, MultiSingularity};
use multising::secant::{
    count_4secant, count_secant, lehn_crosscheck, ChiIndex, ChiMonomial, ChiPolynomial, SecantProblem,
};
use multising::thomlib::ResidueTable;
use multising::{Error, Rat};

fn golden(a: u32) -> ChiPolynomial {
    let path = format!("{}/tests/golden/n{}.txt", env!("CARGO_MANIFEST_DIR"), a);
    std::fs::read_to_string(path).unwrap().replace('\n', " ").parse().unwrap()
}

#[test]
fn golden_term_counts() {
    let counts: Vec<usize> = (1..=4).map(|a| golden(a).len()).collect();
    assert_eq!(counts, vec![8, 15, 24, 36]);
    let m = ChiMonomial::from_factors([(ChiIndex(vec![0, 0]), 1), (ChiIndex(vec![0, 1]), 1)]);
    assert_eq!(golden(2).coefficient(&m), Rat::from_int(286));
}

#[test]
fn four_secant_planes_to_curves() {
    assert_eq!(count_4secant(1).unwrap().scaled, golden(1));
}

#[test]
fn four_secant_planes_to_surfaces() {
    assert_eq!(count_4secant(2).unwrap().scaled, golden(2));
}

#[test]
fn four_secant_planes_to_threefolds() {
    assert_eq!(count_4secant(3).unwrap().scaled, golden(3));
}

#[test]
fn only_the_calibrated_orientation_matches() {
    let other = CALIBRATED_ORIENTATION.other();
    let c = count_secant(SecantProblem::new(1).unwrap(), other, &ResidueTable::new()).unwrap();
    assert_ne!(c.scaled, golden(1));
    assert_eq!(CALIBRATED_ORIENTATION, Orientation::Flipped);
}

#[test]
fn count_is_scaled_by_factorial_and_vanishes_at_zero() {
    let c = count_4secant(1).unwrap();
    assert_eq!(c.count.scale(&Rat::from_int(24)), c.scaled);
    assert_eq!(c.scaled.chi_degree(), 4);
    let zeros: BTreeMap<ChiIndex, Rat> = ChiIndex::all(1).into_iter().map(|u| (u, Rat::zero())).collect();
    assert_eq!(c.evaluate(&zeros).unwrap(), Rat::zero());
    let mut partial = BTreeMap::new();
    partial.insert(ChiIndex(vec![0]), Rat::one());
    assert!(matches!(c.evaluate(&partial), Err(Error::MissingChi(_))));
}

#[test]
fn combination_coefficients() {
    // mirror of the inclusion-exclusion constants, consumed only through expand_n
    let e = expand_n(&MultiSingularity::a0_power(4));
    let mut coeffs: Vec<i64> = e.terms().map(|(_, c)| c.to_i64().unwrap()).collect();
    coeffs.sort();
    assert_eq!(coeffs, vec![1, 1, 3, 4, 6]);
}

/// Trisecant lines to a curve of degree d and genus g in P^4.
fn berzolari(d: i64, g: i64) -> Rat {
    Rat::new((d - 2) * (d - 3) * (d - 4), 6) - Rat::from_int(g * (d - 4))
}

#[test]
fn trisecant_lines_to_space_curves() {
    let c =
        count_secant(SecantProblem::with_points(1, 3).unwrap(), CALIBRATED_ORIENTATION, &ResidueTable::new()).unwrap();
    for d in 1..12 {
        for g in 0..8 {
            let mut chi = BTreeMap::new();
            chi.insert(ChiIndex(vec![0]), Rat::from_int(d));
            // c_1 of the normal bundle has degree 5d + 2g - 2
            chi.insert(ChiIndex(vec![1]), Rat::from_int(5 * d + 2 * g - 2));
            assert_eq!(c.evaluate(&chi).unwrap(), berzolari(d, g), "d = {}, g = {}", d, g);
        }
    }
}

#[test]
fn five_points_need_a_supplied_series() {
    let p = SecantProblem::with_points(1, 5).unwrap();
    let r = count_secant(p, CALIBRATED_ORIENTATION, &ResidueTable::new());
    assert!(matches!(r, Err(Error::MissingSeries(_))));
}

#[test]
fn lehn_variables_round_trip() {
    let r = lehn_crosscheck().unwrap();
    assert!(r.round_trip);
    assert!(r.poly.degree().unwrap() <= 4);
    assert!(r.to_text().contains("d^4"));
}

#[test]
fn rational_normal_sextic_has_no_four_secant_planes() {
    // degree 6, genus 0 in P^6: c_1 of the normal bundle has degree 7 * 6 - 2
    let mut chi = BTreeMap::new();
    chi.insert(ChiIndex(vec![0]), Rat::from_int(6));
    chi.insert(ChiIndex(vec![1]), Rat::from_int(40));
    assert_eq!(count_4secant(1).unwrap().evaluate(&chi).unwrap(), Rat::zero());
}
