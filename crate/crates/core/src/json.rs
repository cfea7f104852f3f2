//! JSON forms of the public data types.
//!
//! Scalars are `{"order": N, "coeffs": ["p/q", ...]}` in the basis
//! 1, ζ, ζ², … of Q(ζ_N). Elements carry their root specification; module
//! elements and decompositions take it from their coefficients or from the
//! caller.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::basis::{BasisIndex, Decomposition, FreenessReport, LocalChart, LocalizedElement};
use crate::cyclo::{Cyclotomic, RootSpec};
use crate::error::{Error, Result};
use crate::frobenius::{ClosureReport, ModuleElement, PowerRelation, Side};
use crate::qalgebra::{ClassicalElement, ClassicalMonomial, QElement, QMonomial};
use crate::Rational;

fn json_err(e: impl std::fmt::Display) -> Error {
    Error::Json(e.to_string())
}

#[derive(Debug, Serialize, Deserialize)]
struct CycloJson {
    order: u32,
    coeffs: Vec<String>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct SpecJson {
    l: u32,
    #[serde(rename = "N")]
    order: u32,
    zeta_exponent: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct QTermJson {
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    coeff: CycloJson,
}

#[derive(Debug, Serialize, Deserialize)]
struct QElementJson {
    spec: SpecJson,
    terms: Vec<QTermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ClassicalTermJson {
    alpha: u32,
    beta: u32,
    gamma: u32,
    delta: u32,
    coeff: CycloJson,
}

#[derive(Debug, Serialize, Deserialize)]
struct ClassicalJson {
    spec: SpecJson,
    terms: Vec<ClassicalTermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ModuleTermJson {
    monomial: QMonomial,
    coeff: ClassicalJson,
}

#[derive(Debug, Serialize, Deserialize)]
struct ModuleJson {
    side: Side,
    terms: Vec<ModuleTermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "family")]
enum EntryJson {
    A { m: u32, n: u32, s: u32, coeff: ClassicalJson },
    D { n: u32, s: u32, r: u32, coeff: ClassicalJson },
}

#[derive(Debug, Serialize, Deserialize)]
struct DecompositionJson {
    side: Side,
    entries: Vec<EntryJson>,
}

fn cyclo_out(c: &Cyclotomic) -> CycloJson {
    CycloJson {
        order: c.order(),
        coeffs: c.coeffs().iter().map(Rational::to_string).collect(),
    }
}

fn cyclo_in(j: &CycloJson) -> Result<Cyclotomic> {
    let coeffs = j
        .coeffs
        .iter()
        .map(|s| Rational::from_str(s.trim()).map_err(|e| json_err(format!("rational '{s}': {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if j.order == 0 {
        return Err(json_err("cyclotomic order must be positive"));
    }
    let c = Cyclotomic::from_coeffs(j.order, coeffs)?;
    Ok(c)
}

fn spec_out(s: &RootSpec) -> SpecJson {
    SpecJson {
        l: s.l(),
        order: s.order(),
        zeta_exponent: s.zeta_exponent(),
    }
}

fn spec_in(j: &SpecJson) -> Result<RootSpec> {
    RootSpec::with_order(j.l as i64, j.order as i64, Some(j.zeta_exponent as i64))
}

fn coeff_in(spec: &RootSpec, j: &CycloJson) -> Result<Cyclotomic> {
    if j.order != spec.order() {
        return Err(Error::OrderMismatch(j.order, spec.order()));
    }
    cyclo_in(j)
}

fn classical_out(g: &ClassicalElement) -> ClassicalJson {
    ClassicalJson {
        spec: spec_out(g.spec()),
        terms: g
            .terms()
            .map(|(m, c)| ClassicalTermJson {
                alpha: m.alpha,
                beta: m.beta,
                gamma: m.gamma,
                delta: m.delta,
                coeff: cyclo_out(c),
            })
            .collect(),
    }
}

fn classical_in(j: &ClassicalJson, expected: Option<&RootSpec>) -> Result<ClassicalElement> {
    let spec = spec_in(&j.spec)?;
    if expected.is_some_and(|e| *e != spec) {
        return Err(Error::SpecMismatch);
    }
    let mut out = ClassicalElement::zero(&spec);
    for t in &j.terms {
        let m = ClassicalMonomial::new(t.alpha, t.beta, t.gamma, t.delta);
        out = &out + &ClassicalElement::monomial(&spec, m, coeff_in(&spec, &t.coeff)?);
    }
    Ok(out)
}

pub fn cyclotomic_to_json(c: &Cyclotomic) -> Value {
    serde_json::to_value(cyclo_out(c)).expect("serializable")
}

pub fn cyclotomic_from_json(v: &Value) -> Result<Cyclotomic> {
    cyclo_in(&CycloJson::deserialize(v).map_err(json_err)?)
}

pub fn spec_to_json(s: &RootSpec) -> Value {
    serde_json::to_value(spec_out(s)).expect("serializable")
}

pub fn qelement_to_json(x: &QElement) -> Value {
    let j = QElementJson {
        spec: spec_out(x.spec()),
        terms: x
            .terms()
            .map(|(m, c)| QTermJson {
                a: m.a,
                b: m.b,
                c: m.c,
                d: m.d,
                coeff: cyclo_out(c),
            })
            .collect(),
    };
    serde_json::to_value(j).expect("serializable")
}

/// Reads an element; unreduced monomials are straightened.
pub fn qelement_from_json(v: &Value) -> Result<QElement> {
    let j = QElementJson::deserialize(v).map_err(json_err)?;
    let spec = spec_in(&j.spec)?;
    let mut out = QElement::zero(&spec);
    for t in &j.terms {
        let m = QElement::monomial(&spec, QMonomial::new(t.a, t.b, t.c, t.d));
        out = &out + &m.scale(&coeff_in(&spec, &t.coeff)?);
    }
    Ok(out)
}

pub fn classical_to_json(g: &ClassicalElement) -> Value {
    serde_json::to_value(classical_out(g)).expect("serializable")
}

pub fn classical_from_json(v: &Value) -> Result<ClassicalElement> {
    classical_in(&ClassicalJson::deserialize(v).map_err(json_err)?, None)
}

pub fn module_to_json(m: &ModuleElement) -> Value {
    let j = ModuleJson {
        side: m.side(),
        terms: m
            .terms()
            .map(|(k, g)| ModuleTermJson {
                monomial: *k,
                coeff: classical_out(g),
            })
            .collect(),
    };
    serde_json::to_value(j).expect("serializable")
}

pub fn module_from_json(v: &Value, spec: &RootSpec) -> Result<ModuleElement> {
    let j = ModuleJson::deserialize(v).map_err(json_err)?;
    let mut out = ModuleElement::zero(spec, j.side);
    for t in &j.terms {
        if !ModuleElement::is_residual(spec, &t.monomial) {
            return Err(Error::NotReduced(t.monomial.to_string()));
        }
        out.add_term(t.monomial, &classical_in(&t.coeff, Some(spec))?);
    }
    Ok(out)
}

pub fn decomposition_to_json(d: &Decomposition) -> Value {
    let j = DecompositionJson {
        side: d.side(),
        entries: d
            .entries()
            .map(|(idx, g)| match *idx {
                BasisIndex::FamilyA { m, n, s } => EntryJson::A {
                    m,
                    n,
                    s,
                    coeff: classical_out(g),
                },
                BasisIndex::FamilyD { n, s, r } => EntryJson::D {
                    n,
                    s,
                    r,
                    coeff: classical_out(g),
                },
            })
            .collect(),
    };
    serde_json::to_value(j).expect("serializable")
}

pub fn decomposition_from_json(v: &Value, spec: &RootSpec) -> Result<Decomposition> {
    let j = DecompositionJson::deserialize(v).map_err(json_err)?;
    let mut out = Decomposition::zero(spec, j.side);
    for e in &j.entries {
        let (idx, coeff) = match e {
            EntryJson::A { m, n, s, coeff } => (BasisIndex::FamilyA { m: *m, n: *n, s: *s }, coeff),
            EntryJson::D { n, s, r, coeff } => (BasisIndex::FamilyD { n: *n, s: *s, r: *r }, coeff),
        };
        if !idx.is_valid(spec.l()) {
            return Err(Error::OutOfRange(format!("{idx} for l = {}", spec.l())));
        }
        out.add(idx, &classical_in(coeff, Some(spec))?);
    }
    Ok(out)
}

/// Reads a decomposition whose root is given by its first coefficient, or
/// by `fallback` when there are no entries.
pub fn decomposition_from_json_infer(v: &Value, fallback: Option<&RootSpec>) -> Result<Decomposition> {
    let j = DecompositionJson::deserialize(v).map_err(json_err)?;
    let first = j.entries.first().map(|e| match e {
        EntryJson::A { coeff, .. } | EntryJson::D { coeff, .. } => coeff.spec,
    });
    let spec = match (first, fallback) {
        (Some(s), _) => spec_in(&s)?,
        (None, Some(s)) => *s,
        (None, None) => return Err(json_err("empty decomposition without a root specification")),
    };
    decomposition_from_json(v, &spec)
}

pub fn localized_to_json(x: &LocalizedElement) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(m, (num, k))| {
            serde_json::json!({
                "monomial": m,
                "numerator": classical_to_json(num),
                "k": k,
            })
        })
        .collect();
    serde_json::json!({
        "chart": x.chart(),
        "terms": terms,
    })
}

fn relation_to_json(r: &PowerRelation) -> Value {
    serde_json::json!({
        "power": r.power,
        "text": r.to_string(),
        "coeffs": r.coeffs.iter().map(cyclotomic_to_json).collect::<Vec<_>>(),
    })
}

pub fn closure_to_json(r: &ClosureReport) -> Value {
    serde_json::json!({
        "l": r.l,
        "N": r.order,
        "p": r.p,
        "powers_commute": r.powers_commute,
        "lth_power_relation": relation_to_json(&r.lth_relation),
        "determinant_relation": relation_to_json(&r.relation),
        "determinant_closes": r.determinant_closes,
        "coproduct_closes": r.coproduct_closes,
        "summary": r.summary(),
    })
}

pub fn freeness_to_json(r: &FreenessReport) -> Value {
    serde_json::to_value(r).expect("serializable")
}

pub fn chart_name(c: LocalChart) -> &'static str {
    match c {
        LocalChart::UAlpha => "alpha",
        LocalChart::UBeta => "beta",
    }
}

/// One line of a fixture file: an input element and its expected
/// decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub l: u32,
    pub input: QElement,
    pub expected: Decomposition,
}

pub fn parse_fixture_line(line: &str) -> Result<Fixture> {
    let v: Value = serde_json::from_str(line).map_err(json_err)?;
    let l = v
        .get("l")
        .and_then(Value::as_u64)
        .ok_or_else(|| json_err("fixture needs an integer \"l\""))?;
    let input = qelement_from_json(v.get("input").ok_or_else(|| json_err("fixture needs \"input\""))?)?;
    if input.spec().l() as u64 != l {
        return Err(Error::SpecMismatch);
    }
    let expected = decomposition_from_json(
        v.get("expected").ok_or_else(|| json_err("fixture needs \"expected\""))?,
        input.spec(),
    )?;
    Ok(Fixture {
        l: l as u32,
        input,
        expected,
    })
}

pub fn fixture_to_line(f: &Fixture) -> String {
    serde_json::json!({
        "l": f.l,
        "input": qelement_to_json(&f.input),
        "expected": decomposition_to_json(&f.expected),
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::decompose;
    use crate::expr::parse_element;
    use crate::frobenius::central_reduce;

    fn spec(l: i64) -> RootSpec {
        RootSpec::new(l, None).unwrap()
    }

    #[test]
    fn cyclotomic_shape() {
        let s = spec(3);
        let c = s.q_pow(1).scale(&Rational::new(2.into(), 3.into()));
        let v = cyclotomic_to_json(&c);
        assert_eq!(v, serde_json::json!({"order": 3, "coeffs": ["0", "2/3"]}));
        assert_eq!(cyclotomic_from_json(&v).unwrap(), c);
        assert!(cyclotomic_from_json(&serde_json::json!({"order": 3, "coeffs": ["x"]})).is_err());
    }

    #[test]
    fn element_roundtrips() {
        let s = spec(2);
        let x = parse_element("d*a + 1/2*q*b^3*c", &s).unwrap();
        let v = qelement_to_json(&x);
        assert_eq!(v["spec"], serde_json::json!({"l": 2, "N": 4, "zeta_exponent": 1}));
        assert_eq!(qelement_from_json(&v).unwrap(), x);

        let m = central_reduce(&x, Side::Right);
        assert_eq!(module_from_json(&module_to_json(&m), &s).unwrap(), m);

        let d = decompose(&x, Side::Left).unwrap();
        let v = decomposition_to_json(&d);
        assert!(v["entries"].as_array().unwrap().iter().all(|e| e["family"] == "A" || e["family"] == "D"));
        assert_eq!(decomposition_from_json(&v, &s).unwrap(), d);
        assert_eq!(decomposition_from_json_infer(&v, None).unwrap(), d);
    }

    #[test]
    fn fixture_roundtrip() {
        let s = spec(3);
        let x = parse_element("a", &s).unwrap();
        let f = Fixture {
            l: 3,
            expected: decompose(&x, Side::Left).unwrap(),
            input: x,
        };
        assert_eq!(parse_fixture_line(&fixture_to_line(&f)).unwrap(), f);
    }
}
