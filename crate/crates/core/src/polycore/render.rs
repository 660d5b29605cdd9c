//! Plain-text and LaTeX renderings of polynomials.

use super::graded::GradedPoly;
use super::vars::VarEntry;
use crate::rat::Rat;

fn latex_family(family: &str) -> String {
    match family {
        "alpha" | "beta" | "gamma" | "delta" | "chi" | "kappa" | "pi" | "xi" | "sigma" => format!("\\{}", family),
        other => other.to_string(),
    }
}

fn braced(s: String) -> String {
    if s.chars().count() == 1 {
        s
    } else {
        format!("{{{}}}", s)
    }
}

pub fn var_latex(e: &VarEntry) -> String {
    let base = latex_family(&e.family);
    if e.index == 0 {
        base
    } else {
        format!("{}_{}", base, braced(e.index.to_string()))
    }
}

pub fn var_text(e: &VarEntry) -> String {
    if e.index == 0 {
        e.family.clone()
    } else {
        format!("{}{}", e.family, e.index)
    }
}

fn rat_latex(r: &Rat) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn monomial_text(p: &GradedPoly, m: &super::vars::Monomial) -> String {
    m.exponents()
        .iter()
        .map(|&(v, e)| {
            let name = var_text(p.vars().entry(v as usize));
            if e == 1 {
                name
            } else {
                format!("{}^{}", name, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn monomial_latex(p: &GradedPoly, m: &super::vars::Monomial) -> String {
    m.exponents()
        .iter()
        .map(|&(v, e)| {
            let name = var_latex(p.vars().entry(v as usize));
            if e == 1 {
                name
            } else {
                format!("{}^{}", name, braced(e.to_string()))
            }
        })
        .collect::<String>()
}

fn join_terms<F>(p: &GradedPoly, scale: &Rat, latex: bool, render_mono: F) -> String
where
    F: Fn(&GradedPoly, &super::vars::Monomial) -> String,
{
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let c = c / scale;
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if latex {
            out.push(if neg { '-' } else { '+' });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = render_mono(p, m);
        if m.is_one() {
            out.push_str(&if latex { rat_latex(&abs) } else { abs.to_string() });
        } else if abs.is_one() {
            out.push_str(&mono);
        } else if latex {
            out.push_str(&rat_latex(&abs));
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", abs, mono));
        }
    }
    out
}

/// Expanded text form, e.g. `-6*c1^3 - 18*c1*c2 - 12*c3`.
pub fn to_text(p: &GradedPoly) -> String {
    join_terms(p, &Rat::one(), false, monomial_text)
}

/// Text form with the content pulled out, e.g. `-6*(c1^3 + 3*c1*c2 + 2*c3)`.
pub fn to_text_factored(p: &GradedPoly) -> String {
    let content = p.content();
    if p.len() < 2 || GradedPoly::abs_content_is_one(&content) {
        return to_text(p);
    }
    format!("{}*({})", content, join_terms(p, &content, false, monomial_text))
}

/// LaTeX form with the content pulled out, e.g. `-6(c_1^3+3c_1c_2+2c_3)`.
pub fn to_latex(p: &GradedPoly) -> String {
    let content = p.content();
    if p.len() < 2 || GradedPoly::abs_content_is_one(&content) {
        return join_terms(p, &Rat::one(), true, monomial_latex);
    }
    format!("{}({})", rat_latex(&content), join_terms(p, &content, true, monomial_latex))
}

/// LaTeX form without factoring.
pub fn to_latex_expanded(p: &GradedPoly) -> String {
    join_terms(p, &Rat::one(), true, monomial_latex)
}
