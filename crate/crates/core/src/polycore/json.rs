//! Canonical JSON form of a polynomial: the variable table, then the terms in
//! descending graded-lex order with exponents referring to table positions.

use serde::{Deserialize, Serialize};

use super::graded::GradedPoly;
use super::vars::{VarEntry, VarTable};
use crate::error::{ParseError, Result};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: Rat,
    pub exps: Vec<[u32; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonPoly {
    pub vars: Vec<VarEntry>,
    pub terms: Vec<JsonTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<u32>,
}

impl JsonPoly {
    pub fn from_poly(p: &GradedPoly) -> JsonPoly {
        JsonPoly {
            vars: p.vars().entries().to_vec(),
            terms: p
                .terms()
                .map(|(m, c)| JsonTerm { coeff: c.clone(), exps: m.exponents().iter().map(|&(v, e)| [v, e]).collect() })
                .collect(),
            trunc: p.trunc(),
        }
    }

    pub fn to_poly(&self) -> Result<GradedPoly> {
        let table = VarTable::new(self.vars.iter().cloned())?;
        // the table is re-sorted on construction, so map refs through names
        let map: Vec<usize> =
            self.vars.iter().map(|e| table.position(&e.family, e.index).expect("entry was just inserted")).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut pairs = Vec::with_capacity(t.exps.len());
            for &[v, e] in &t.exps {
                let pos = *map
                    .get(v as usize)
                    .ok_or_else(|| ParseError::Json(format!("variable reference {} out of range", v)))?;
                pairs.push((pos, e));
            }
            terms.push((pairs, t.coeff.clone()));
        }
        Ok(GradedPoly::from_terms(&table, terms).with_trunc(self.trunc))
    }
}

pub fn to_json_value(p: &GradedPoly) -> serde_json::Value {
    serde_json::to_value(JsonPoly::from_poly(p)).expect("polynomial serializes")
}

pub fn to_json_string(p: &GradedPoly) -> String {
    serde_json::to_string(&JsonPoly::from_poly(p)).expect("polynomial serializes")
}

pub fn from_json_str(s: &str) -> Result<GradedPoly> {
    let jp: JsonPoly = serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))?;
    jp.to_poly()
}

pub fn from_json_value(v: &serde_json::Value) -> Result<GradedPoly> {
    let jp: JsonPoly = serde_json::from_value(v.clone()).map_err(|e| ParseError::Json(e.to_string()))?;
    jp.to_poly()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let t = VarTable::chern("c", 3);
        let c = |i| GradedPoly::var(&t, "c", i).unwrap();
        let p = (&(&c(1).pow(3) + &c(3)) - &(&c(1) * &c(2)).scale(&Rat::new(1, 2))).scale(&Rat::from_int(-6));
        let s = to_json_string(&p);
        assert!(s.contains("\"coeff\":\"-6/1\""));
        assert_eq!(from_json_str(&s).unwrap(), p);
    }

    #[test]
    fn bad_reference() {
        let s = r#"{"vars":[{"family":"c","index":1,"weight":1}],"terms":[{"coeff":"1/1","exps":[[3,1]]}]}"#;
        assert!(from_json_str(s).is_err());
    }
}
