//! Brute-force Schur polynomial oracle shared by the Grassmannian tests.

use std::collections::BTreeMap;

use multising::grassmann::{GrassClass, GrassRing, Partition};
use multising::Rat;

type SymPoly = BTreeMap<Vec<u32>, i64>;

/// Schur polynomial in `k` variables by enumerating semistandard tableaux.
fn schur_poly(lambda: &[u32], k: usize) -> SymPoly {
    let cells: Vec<(usize, usize)> =
        lambda.iter().enumerate().flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c))).collect();
    let mut out = SymPoly::new();
    let mut filling = vec![vec![0usize; 0]; lambda.len()];
    fn go(idx: usize, cells: &[(usize, usize)], k: usize, filling: &mut Vec<Vec<usize>>, out: &mut SymPoly) {
        if idx == cells.len() {
            let mut e = vec![0u32; k];
            filling.iter().flatten().for_each(|&v| e[v] += 1);
            *out.entry(e).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[idx];
        let lo_row = if c > 0 { filling[r][c - 1] } else { 0 };
        let lo_col = if r > 0 { filling[r - 1][c] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..k {
            filling[r].push(v);
            go(idx + 1, cells, k, filling, out);
            filling[r].pop();
        }
    }
    go(0, &cells, k, &mut filling, &mut out);
    out
}

fn mul(a: &SymPoly, b: &SymPoly) -> SymPoly {
    let mut out = SymPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Peels off lex-leading monomials; returns Schur coefficients.
fn to_schur(mut p: SymPoly, k: usize) -> BTreeMap<Vec<u32>, i64> {
    let mut out = BTreeMap::new();
    while let Some((e, &c)) = p.iter().next_back() {
        let lambda: Vec<u32> = e.iter().copied().filter(|&x| x > 0).collect();
        assert!(lambda.windows(2).all(|w| w[0] >= w[1]));
        let s = schur_poly(&lambda, k);
        for (m, v) in s {
            *p.entry(m).or_insert(0) -= c * v;
        }
        p.retain(|_, v| *v != 0);
        out.insert(lambda, c);
    }
    out
}

pub fn oracle_product(g: GrassRing, a: &Partition, b: &Partition) -> GrassClass {
    let k = g.k as usize;
    let prod = mul(&schur_poly(a.parts(), k), &schur_poly(b.parts(), k));
    GrassClass::from_terms(
        g,
        to_schur(prod, k).into_iter().map(|(l, c)| (Partition::new(l).unwrap(), Rat::from_int(c))),
    )
}
