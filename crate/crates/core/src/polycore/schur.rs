//! Two- and three-row determinants in the Chern classes `c_i`, with the
//! conventions `c_0 = 1` and `c_i = 0` for `i < 0`.

use std::sync::Arc;

use super::graded::GradedPoly;
use super::vars::VarTable;

/// `c_m` over `vars`, honouring `c_0 = 1` and `c_{<0} = 0`.
///
/// Panics if `m > 0` and the table lacks `c_m`.
pub fn chern_var(vars: &Arc<VarTable>, m: i64) -> GradedPoly {
    match m {
        m if m < 0 => GradedPoly::zero(vars),
        0 => GradedPoly::one(vars),
        m => GradedPoly::var(vars, "c", m as i32).expect("chern table too short"),
    }
}

fn table_for(max_index: i64) -> Arc<VarTable> {
    VarTable::chern("c", max_index.max(1) as u32)
}

/// `det [[c_i, c_{i+1}], [c_{j-1}, c_j]]` over a given table.
pub fn schur2_in(vars: &Arc<VarTable>, i: i64, j: i64) -> GradedPoly {
    let c = |m| chern_var(vars, m);
    &(&c(i) * &c(j)) - &(&c(i + 1) * &c(j - 1))
}

/// `det [[c_i, c_{i+1}, c_{i+2}], [c_{j-1}, c_j, c_{j+1}], [c_{k-2}, c_{k-1}, c_k]]`.
pub fn schur3_in(vars: &Arc<VarTable>, i: i64, j: i64, k: i64) -> GradedPoly {
    let c = |m| chern_var(vars, m);
    let m = [[c(i), c(i + 1), c(i + 2)], [c(j - 1), c(j), c(j + 1)], [c(k - 2), c(k - 1), c(k)]];
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1]);
    let t0 = &m[0][0] * &minor(1, 2, 1, 2);
    let t1 = &m[0][1] * &minor(1, 2, 0, 2);
    let t2 = &m[0][2] * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

pub fn schur2(i: i64, j: i64) -> GradedPoly {
    schur2_in(&table_for(i.max(j) + 1), i, j)
}

pub fn schur3(i: i64, j: i64, k: i64) -> GradedPoly {
    schur3_in(&table_for(i.max(j).max(k) + 2), i, j, k)
}
