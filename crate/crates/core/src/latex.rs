//! LaTeX rendering in the display style used for these identities:
//! `(3u^2 + 15uv - 8v^2)^3 + ...` for forms, `\big( ... \big)^3` for
//! power-sum relations and polynomial identities.

use num_traits::{One, Signed, Zero};

use crate::exact::{is_integral, Integer, Rational};
use crate::forms::{BinaryQuadraticForm, FormQuadruple};
use crate::identities::{ComboQuadruple, PolyIdentity};
use crate::poly::{Polynomial, TermOrder};
use crate::powersum::PowerSumCombo;
use crate::quadratic::{AffineCombo, PowerSumTriple, PythagoreanFormTriple, SquareFormQuadruple};

fn power(var: &str, d: u32) -> String {
    match d {
        0 => String::new(),
        1 => var.to_string(),
        2..=9 => format!("{var}^{d}"),
        _ => format!("{var}^{{{d}}}"),
    }
}

fn subscript(name: &str, k: u32) -> String {
    if k < 10 {
        format!("{name}_{k}")
    } else {
        format!("{name}_{{{k}}}")
    }
}

pub fn rational(r: &Rational) -> String {
    if is_integral(r) {
        return r.numer().to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
}

/// Joins `coefficient * body` terms with explicit signs. Empty bodies are
/// constants. The empty sum renders as `0`.
fn join_terms<'a>(terms: impl IntoIterator<Item = (&'a Rational, String)>) -> String {
    let mut out = String::new();
    for (c, body) in terms {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = c.abs();
        let coeff = if body.is_empty() {
            rational(&mag)
        } else if mag.is_one() {
            String::new()
        } else if is_integral(&mag) {
            mag.numer().to_string()
        } else {
            format!("{} ", rational(&mag))
        };
        out.push_str(&coeff);
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn polynomial(p: &Polynomial, var: &str, order: TermOrder) -> String {
    let terms: Vec<(u32, &Rational)> = match order {
        TermOrder::Ascending => p.terms().collect(),
        TermOrder::Descending => p.terms().rev().collect(),
    };
    join_terms(terms.into_iter().map(|(d, c)| (c, power(var, d))))
}

pub fn combo(c: &PowerSumCombo) -> String {
    join_terms(c.terms().map(|(k, coeff)| (coeff, subscript("S", k))))
}

pub fn affine(c: &AffineCombo) -> String {
    let mut terms = vec![(&c.constant, String::new())];
    terms.extend(c.combo.terms().map(|(k, coeff)| (coeff, subscript("S", k))));
    join_terms(terms)
}

pub fn form(q: &BinaryQuadraticForm) -> String {
    let [a, b, g] = q.coefficients().map(|x| Rational::from_integer(x.clone()));
    join_terms([
        (&a, "u^2".to_string()),
        (&b, "uv".to_string()),
        (&g, "v^2".to_string()),
    ])
}

fn equation(parts: &[String], lhs: usize) -> String {
    format!(
        "{} = {}",
        parts[..lhs].join(" + "),
        parts[lhs..].join(" + ")
    )
}

fn paren(body: String, exp: u32) -> String {
    format!("({body})^{exp}")
}

fn big(body: String, exp: u32) -> String {
    format!("\\big( {body} \\big)^{exp}")
}

/// `(q1)^3 + (q2)^3 + (q3)^3 = (q4)^3`.
pub fn form_quadruple(fq: &FormQuadruple) -> String {
    let parts: Vec<String> = fq.forms.iter().map(|q| paren(form(q), 3)).collect();
    equation(&parts, 3)
}

pub fn combo_relation(cq: &ComboQuadruple) -> String {
    let parts: Vec<String> = cq.combos.iter().map(|c| big(combo(c), 3)).collect();
    equation(&parts, 3)
}

/// Polynomial identity in ascending powers of `u`.
pub fn poly_identity(pi: &PolyIdentity) -> String {
    let parts: Vec<String> = pi
        .polys
        .iter()
        .map(|p| big(polynomial(p, "u", TermOrder::Ascending), 3))
        .collect();
    equation(&parts, 3)
}

/// `S_k = ...` in descending powers of `n`.
pub fn faulhaber_row(k: u32, p: &Polynomial) -> String {
    format!(
        "{} = {}",
        subscript("S", k),
        polynomial(p, "n", TermOrder::Descending)
    )
}

pub fn bernoulli_row(k: u32, b: &Rational) -> String {
    format!("{} = {}", subscript("B", k), rational(b))
}

pub fn square_forms(fq: &SquareFormQuadruple) -> String {
    let parts: Vec<String> = fq.forms.iter().map(|q| paren(form(q), 2)).collect();
    equation(&parts, 3)
}

pub fn form_triple(t: &PythagoreanFormTriple) -> String {
    let parts: Vec<String> = t.forms.iter().map(|q| paren(form(q), 2)).collect();
    equation(&parts, 2)
}

pub fn affine_quadruple(q: &[AffineCombo]) -> String {
    let parts: Vec<String> = q.iter().map(|c| big(affine(c), 2)).collect();
    equation(&parts, 3)
}

pub fn powersum_triple(t: &PowerSumTriple) -> String {
    let parts: Vec<String> = t.combos().iter().map(|c| big(combo(c), 2)).collect();
    equation(&parts, 2)
}

pub fn equal_sums(lhs: (&Integer, &Integer), rhs: (&Integer, &Integer)) -> String {
    let sq = |x: &Integer| {
        if x.is_negative() {
            format!("({x})^2")
        } else {
            format!("{x}^2")
        }
    };
    format!(
        "{} + {} = {} + {}",
        sq(lhs.0),
        sq(lhs.1),
        sq(rhs.0),
        sq(rhs.1)
    )
}

/// Strips whitespace, alignment-only tokens and trailing punctuation for
/// comparing displays.
pub fn normalize_display(s: &str) -> String {
    let s: String = s
        .replace("\\notag", "")
        .replace("\\\\", "")
        .replace("\\qquad", "")
        .replace("\\quad", "")
        .replace('&', "")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    s.trim_end_matches(['.', ',']).to_string()
}
