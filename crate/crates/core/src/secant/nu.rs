//! Chern classes of the virtual normal bundle `nu_f = p^* nu_i - j^* kappa`.
//!
//! A term is `coeff * n^u * k_1^{e_1} .. k_{K}^{e_K}`. Monomials `n^u` of weight
//! above `a` vanish because `H^{>2a}(V) = 0`, so they are dropped on the fly.

use std::collections::HashMap;

use super::chi::ChiIndex;
use crate::rat::Rat;

/// Bits per packed `k` exponent.
const LANE: u32 = 8;
pub(crate) const MAX_K_VARS: usize = 6;

/// The surviving `n` monomials with their multiplication table.
#[derive(Debug)]
pub(crate) struct NBasis {
    pub list: Vec<ChiIndex>,
    product: Vec<Vec<Option<u16>>>,
    single: Vec<u16>,
}

impl NBasis {
    pub fn new(a: u32) -> NBasis {
        let list = ChiIndex::all(a);
        let pos: HashMap<ChiIndex, u16> = list.iter().enumerate().map(|(i, u)| (u.clone(), i as u16)).collect();
        let product = list
            .iter()
            .map(|x| {
                list.iter()
                    .map(|y| pos.get(&ChiIndex(x.0.iter().zip(&y.0).map(|(p, q)| p + q).collect())).copied())
                    .collect()
            })
            .collect();
        // n_t for t = 0..=a, with n_0 = 1
        let single = (0..=a as usize)
            .map(|t| {
                let mut u = vec![0; a as usize];
                if t > 0 {
                    u[t - 1] = 1;
                }
                pos[&ChiIndex(u)]
            })
            .collect();
        NBasis { list, product, single }
    }
}

pub(crate) fn pack(id: u16, kexp: &[u32]) -> u64 {
    let mut key = id as u64;
    for (j, &e) in kexp.iter().enumerate() {
        assert!(e < (1 << LANE), "k exponent overflow");
        key |= (e as u64) << (16 + LANE * j as u32);
    }
    key
}

pub(crate) fn unpack(key: u64, nk: usize) -> (u16, Vec<u32>) {
    let id = (key & 0xffff) as u16;
    let k = (0..nk).map(|j| ((key >> (16 + LANE * j as u32)) & ((1 << LANE) - 1)) as u32).collect();
    (id, k)
}

/// Sparse polynomial in `n` monomials and `k_1..k_K`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct NuPoly {
    pub terms: HashMap<u64, Rat>,
}

impl NuPoly {
    pub fn one() -> NuPoly {
        let mut p = NuPoly::default();
        p.terms.insert(0, Rat::one());
        p
    }

    pub fn add_term(&mut self, key: u64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &NuPoly, c: &Rat) {
        for (k, v) in &other.terms {
            self.add_term(*k, v * c);
        }
    }

    pub fn mul(&self, other: &NuPoly, basis: &NBasis) -> NuPoly {
        let mut out: HashMap<u64, Rat> = HashMap::with_capacity(self.terms.len() * 2);
        for (ka, ca) in &self.terms {
            let ida = (ka & 0xffff) as usize;
            for (kb, cb) in &other.terms {
                let idb = (kb & 0xffff) as usize;
                if let Some(id) = basis.product[ida][idb] {
                    // lanes never overflow: exponents are bounded by the degree check
                    let key = ((ka >> 16) + (kb >> 16)) << 16 | id as u64;
                    *out.entry(key).or_insert_with(Rat::zero) += ca * cb;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        NuPoly { terms: out }
    }
}

/// Degree-`d` parts of `(1 + k_1 + .. + k_K)^{-1}`, `d = 0..=maxdeg`.
fn inverse_kappa(nk: usize, maxdeg: usize) -> Vec<NuPoly> {
    let mut inv: Vec<NuPoly> = vec![NuPoly::one()];
    for d in 1..=maxdeg {
        let mut cur = NuPoly::default();
        for j in 1..=nk.min(d) {
            let mut unit = vec![0u32; nk];
            unit[j - 1] = 1;
            let shift = pack(0, &unit);
            for (k, v) in &inv[d - j].terms {
                cur.add_term(k + shift, -v.clone());
            }
        }
        inv.push(cur);
    }
    inv
}

/// `c_m(nu_f)` for `m = 0..=maxdeg`.
pub(crate) fn nu_f_classes(basis: &NBasis, a: u32, nk: usize, maxdeg: usize) -> Vec<NuPoly> {
    let inv = inverse_kappa(nk, maxdeg);
    (0..=maxdeg)
        .map(|m| {
            let mut c = NuPoly::default();
            for t in 0..=(a as usize).min(m) {
                let id = basis.single[t] as u64;
                for (k, v) in &inv[m - t].terms {
                    c.add_term(k | id, v.clone());
                }
            }
            c
        })
        .collect()
}
