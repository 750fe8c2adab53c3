use std::fmt;

use num_traits::Signed;

use super::{BiPoly, Monomial};
use crate::qfield::QElem;

fn power(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

fn monomial_text(m: Monomial, x: &str, y: &str) -> Option<String> {
    let parts: Vec<String> = [power(x, m.alpha), power(y, m.beta)]
        .into_iter()
        .flatten()
        .collect();
    (!parts.is_empty()).then(|| parts.join("*"))
}

/// Splits a coefficient into a sign and a magnitude text.
fn coeff_text(c: &QElem) -> (bool, String) {
    match c.as_rational() {
        Some(r) => (r.is_negative(), r.abs().to_string()),
        None => (false, format!("({c})")),
    }
}

impl BiPoly {
    /// Canonical text with custom names for α and β, e.g.
    /// `1/2*alpha^3 - 3*alpha*beta^2`.
    pub fn render_with(&self, x: &str, y: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms().enumerate() {
            let (neg, mag) = coeff_text(c);
            let body = match monomial_text(*m, x, y) {
                None => mag,
                Some(mono) if mag == "1" => mono,
                Some(mono) => format!("{mag}*{mono}"),
            };
            match (idx, neg) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with("alpha", "beta"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
