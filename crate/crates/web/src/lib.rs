//! Browser bindings: residue polynomials, the `a_ij` triangle and secant counts.
//!
//! Each export wraps a plain function returning `Result<String, String>` so the
//! logic is testable without a browser.

use std::collections::BTreeMap;

use multising::kazarian::MultiSingularity;
use multising::polycore::render;
use multising::secant::{count_4secant, ChiIndex};
use multising::thomlib::{a_table, ResidueTable};
use multising::Rat;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_ELL: i64 = 12;
const MAX_ROWS: u32 = 30;
const MAX_A: u32 = 3;

/// LaTeX and text forms of a residue polynomial, as JSON.
pub fn residue_json(multi: &str, ell: i64) -> Result<String, String> {
    if !(1..=MAX_ELL).contains(&ell) {
        return Err(format!("ell must lie in 1..={}", MAX_ELL));
    }
    let alpha: MultiSingularity = multi.trim().parse().map_err(|e: multising::ParseError| e.to_string())?;
    let res = ResidueTable::new().residue(alpha.parts(), ell).map_err(|e| e.to_string())?;
    let v = json!({
        "multi": alpha.to_string(),
        "ell": ell,
        "latex": render::to_latex(&res.poly),
        "text": render::to_text_factored(&res.poly),
        "terms": res.poly.len(),
        "provenance": res.provenance.label(),
    });
    Ok(v.to_string())
}

/// Rows `0..rows` of the `a_ij` triangle, as a JSON array of string arrays.
pub fn triangle_json(rows: u32) -> Result<String, String> {
    if rows == 0 || rows > MAX_ROWS {
        return Err(format!("rows must lie in 1..={}", MAX_ROWS));
    }
    let t = a_table(rows - 1);
    let out: Vec<Vec<String>> =
        (0..rows as usize).map(|n| (0..=n).map(|j| t[n - j][j].to_string()).collect()).collect();
    Ok(json!(out).to_string())
}

/// The 4-secant count for `V^a`; with a non-empty `chi_json` object the number is evaluated too.
pub fn secant_json(a: u32, chi_json: &str) -> Result<String, String> {
    if a == 0 || a > MAX_A {
        return Err(format!("a must lie in 1..={}", MAX_A));
    }
    let count = count_4secant(a).map_err(|e| e.to_string())?;
    let mut v = json!({
        "a": a,
        "latex": count.scaled.to_latex(),
        "text": count.scaled.to_text(),
        "indices": count.scaled.indices().iter().map(|u| u.key()).collect::<Vec<_>>(),
    });
    if !chi_json.trim().is_empty() {
        let raw: BTreeMap<String, Value> = serde_json::from_str(chi_json).map_err(|e| format!("chi values: {}", e))?;
        let mut values = BTreeMap::new();
        for (k, x) in raw {
            let r: Rat = match x {
                Value::String(s) => s.parse().map_err(|e: multising::ParseError| e.to_string())?,
                Value::Number(n) => n.to_string().parse().map_err(|e: multising::ParseError| e.to_string())?,
                other => return Err(format!("bad value for {}: {}", k, other)),
            };
            values.insert(k.parse::<ChiIndex>().map_err(|e| e.to_string())?, r);
        }
        let n = count.evaluate(&values).map_err(|e| e.to_string())?;
        v["value"] = Value::String(n.to_fraction_string());
    }
    Ok(v.to_string())
}

#[wasm_bindgen]
pub fn residue(multi: &str, ell: i32) -> Result<String, JsValue> {
    residue_json(multi, ell as i64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn triangle(rows: u32) -> Result<String, JsValue> {
    triangle_json(rows).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn secant(a: u32, chi_json: &str) -> Result<String, JsValue> {
    secant_json(a, chi_json).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn residue_export() {
        let v = parse(&residue_json("A0^4", 1).unwrap());
        assert_eq!(v["latex"], "-6(c_1^3+3c_1c_2+2c_3)");
        assert!(residue_json("A0^4", 0).is_err());
        assert!(residue_json("nonsense", 1).is_err());
        assert!(residue_json("A0^5", 1).unwrap_err().contains("A4"));
    }

    #[test]
    fn triangle_export() {
        let v = parse(&triangle_json(5).unwrap());
        assert_eq!(v[4], json!(["27", "14", "10", "14", "27"]));
        assert!(triangle_json(0).is_err());
    }

    #[test]
    fn secant_export() {
        let v = parse(&secant_json(1, "").unwrap());
        assert!(v.get("value").is_none());
        assert_eq!(v["indices"], json!(["(0)", "(1)"]));
        // four points of the rational normal sextic in P^6 are never coplanar
        let v = parse(&secant_json(1, r#"{"(0)": 6, "(1)": "40"}"#).unwrap());
        assert_eq!(v["value"], "0/1");
        assert!(secant_json(1, r#"{"(0)": 6}"#).is_err());
        assert!(secant_json(9, "").is_err());
    }
}
