//! Text output. Everything printed for quantum and classical elements can
//! be read back by the parser.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::cyclo::{Cyclotomic, RootSpec};
use crate::qalgebra::{ClassicalElement, QElement};
use crate::Rational;

enum Coeff {
    /// ±(magnitude), where `None` stands for 1.
    Signed { neg: bool, body: Option<String> },
    /// A polynomial in q with several terms.
    Compound(String),
}

fn q_power_text(e: i64) -> String {
    match e {
        1 => "q".to_string(),
        e => format!("q^{e}"),
    }
}

fn signed(r: &Rational, e: i64) -> Coeff {
    let mag = r.abs();
    let body = match (mag.is_one(), e) {
        (true, 0) => None,
        (true, e) => Some(q_power_text(e)),
        (false, 0) => Some(mag.to_string()),
        (false, e) => Some(format!("{mag}*{}", q_power_text(e))),
    };
    Coeff::Signed {
        neg: r.is_negative(),
        body,
    }
}

/// Exponents to try, smallest magnitude first and positive before negative.
fn exponent_order(order: u32) -> impl Iterator<Item = i64> {
    let half = order as i64 / 2;
    std::iter::once(0).chain((1..=half).flat_map(|k| [k, -k])).take(order as usize)
}

fn classify(spec: &RootSpec, c: &Cyclotomic) -> Coeff {
    for e in exponent_order(spec.order()) {
        let shifted = c * &spec.q_pow(-e);
        if let Some(r) = shifted.as_rational() {
            return signed(r, e);
        }
    }
    let coords = spec.q_coordinates(c);
    let mut out = String::new();
    for (e, r) in coords.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let Coeff::Signed { neg, body } = signed(r, e as i64) else {
            unreachable!()
        };
        let body = body.unwrap_or_else(|| "1".to_string());
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    Coeff::Compound(out)
}

/// Prints Σ coeff·monomial. Monomial text "" means the unit monomial;
/// `joiner` separates a non-unit coefficient from its monomial.
pub(crate) fn format_sum<'a>(
    spec: &RootSpec,
    terms: impl IntoIterator<Item = (String, &'a Cyclotomic)>,
    joiner: &str,
) -> String {
    let terms: Vec<(String, &Cyclotomic)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    let single = terms.len() == 1;
    let mut out = String::new();
    for (i, (mono, c)) in terms.iter().enumerate() {
        let (neg, text) = match classify(spec, c) {
            Coeff::Signed { neg, body } => {
                let text = match (body, mono.is_empty()) {
                    (None, true) => "1".to_string(),
                    (None, false) => mono.clone(),
                    (Some(b), true) => b,
                    (Some(b), false) => format!("{b}{joiner}{mono}"),
                };
                (neg, text)
            }
            Coeff::Compound(poly) if single && mono.is_empty() => (false, poly),
            Coeff::Compound(poly) if mono.is_empty() => (false, format!("({poly})")),
            Coeff::Compound(poly) => (false, format!("({poly}){joiner}{mono}")),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&text);
    }
    out
}

/// A scalar as a polynomial in q, or as ±r·q^e when it is a single power.
pub fn format_scalar(spec: &RootSpec, c: &Cyclotomic) -> String {
    format_sum(spec, [(String::new(), c)], "*")
}

fn mono_text(m: impl fmt::Display, is_one: bool) -> String {
    if is_one {
        String::new()
    } else {
        m.to_string()
    }
}

impl fmt::Display for QElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms().map(|(m, c)| (mono_text(m, m.degree() == 0), c));
        f.write_str(&format_sum(self.spec(), terms, "*"))
    }
}

impl fmt::Display for ClassicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms().map(|(m, c)| (mono_text(m, m.degree() == 0), c));
        f.write_str(&format_sum(self.spec(), terms, "*"))
    }
}
