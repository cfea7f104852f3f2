//! Invariant suites run by `qsl2 selftest`, plus random generators shared
//! with the property tests.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::basis::{decompose, localize, oracle_decompose, recompose, verify_freeness, LocalChart};
use crate::cyclo::{p_coeff, Cyclotomic, RootSpec};
use crate::error::Result;
use crate::expr::parse_element;
use crate::frobenius::{central_reduce, closure_diagnostic, lift, module_recompose, product_expansion, Side};
use crate::qalgebra::{
    antipode_holds, coassociativity_holds, counit_holds, ClassicalElement, ClassicalGen, ClassicalMonomial, Gen,
    QElement, QMonomial,
};
use crate::Rational;

/// A random field element with small integer or half-integer coordinates.
pub fn random_cyclotomic<R: Rng>(spec: &RootSpec, rng: &mut R) -> Cyclotomic {
    let n = crate::cyclo::euler_phi(spec.order()) as usize;
    let coeffs = (0..n)
        .map(|_| Rational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=2).into()))
        .collect();
    let c = Cyclotomic::from_coeffs(spec.order(), coeffs).expect("φ(N) coefficients");
    if c.is_zero() {
        spec.one()
    } else {
        c
    }
}

/// A random reduced monomial with every exponent at most `max_exp`.
pub fn random_monomial<R: Rng>(rng: &mut R, max_exp: u32) -> QMonomial {
    let mut e = || rng.gen_range(0..=max_exp);
    let (a, b, c, d) = (e(), e(), e(), e());
    if rng.gen_bool(0.5) {
        QMonomial::new(a, b, c, 0)
    } else {
        QMonomial::new(0, b, c, d)
    }
}

pub fn random_element<R: Rng>(spec: &RootSpec, rng: &mut R, terms: usize, max_exp: u32) -> QElement {
    let mut x = QElement::zero(spec);
    for _ in 0..terms {
        let m = random_monomial(rng, max_exp);
        x = &x + &QElement::monomial(spec, m).scale(&random_cyclotomic(spec, rng));
    }
    x
}

pub fn random_classical<R: Rng>(spec: &RootSpec, rng: &mut R, terms: usize, max_exp: u32) -> ClassicalElement {
    let mut g = ClassicalElement::zero(spec);
    for _ in 0..terms {
        let mut e = || rng.gen_range(0..=max_exp);
        let m = ClassicalMonomial::new(e(), e(), e(), e());
        g = &g + &ClassicalElement::monomial(spec, m, random_cyclotomic(spec, rng));
    }
    g
}

/// The product of up to `max_len` random generators.
pub fn random_word<R: Rng>(spec: &RootSpec, rng: &mut R, max_len: usize) -> QElement {
    let len = rng.gen_range(1..=max_len);
    (0..len).fold(QElement::one(spec), |acc, _| {
        let g = Gen::ALL[rng.gen_range(0..4)];
        &acc * &QElement::generator(spec, g)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct SelftestReport {
    pub results: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    fn record(&mut self, name: String, outcome: Result<Option<String>>) {
        let (passed, detail) = match outcome {
            Ok(None) => (true, String::new()),
            Ok(Some(why)) => (false, why),
            Err(e) => (false, e.to_string()),
        };
        self.results.push(CheckResult { name, passed, detail });
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            if r.passed {
                writeln!(f, "ok    {}", r.name)?;
            } else {
                writeln!(f, "FAIL  {}: {}", r.name, r.detail)?;
            }
        }
        let passed = self.results.iter().filter(|r| r.passed).count();
        write!(f, "{passed}/{} checks passed", self.results.len())
    }
}

fn fail_unless(ok: bool, why: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(why)
}

fn field_axioms(spec: &RootSpec, rng: &mut StdRng) -> Result<Option<String>> {
    for _ in 0..20 {
        let (x, y, z) = (
            random_cyclotomic(spec, rng),
            random_cyclotomic(spec, rng),
            random_cyclotomic(spec, rng),
        );
        if &(&x * &y) * &z != &x * &(&y * &z) || &x * &(&y + &z) != &(&x * &y) + &(&x * &z) {
            return Ok(Some(format!("ring axioms fail for {x:?}, {y:?}, {z:?}")));
        }
        if !(&x * &x.inv()?).is_one() {
            return Ok(Some(format!("x·x⁻¹ ≠ 1 for {x:?}")));
        }
    }
    let n = spec.order() as i64;
    let primitive = spec.q_pow(n).is_one() && (1..n).all(|m| !spec.q_pow(m).is_one());
    Ok(fail_unless(primitive, || "q is not a primitive root".into()))
}

fn p_coefficients(spec: &RootSpec) -> Result<Option<String>> {
    let l = spec.l() as i64;
    for k in 0..=l {
        let expanded = product_expansion(spec, k as u32);
        for j in 0..=k {
            if p_coeff(spec, k, j)? != expanded[j as usize] {
                return Ok(Some(format!("p_{{{k},{j}}} disagrees with the product")));
            }
        }
    }
    Ok(None)
}

fn associativity(spec: &RootSpec, rng: &mut StdRng) -> Result<Option<String>> {
    for _ in 0..15 {
        let [x, y, z] = [0, 1, 2].map(|_| random_element(spec, rng, 2, 3));
        if &(&x * &y) * &z != &x * &(&y * &z) {
            return Ok(Some(format!("({x})({y})({z})")));
        }
    }
    Ok(None)
}

fn hopf_axioms(spec: &RootSpec, rng: &mut StdRng) -> Result<Option<String>> {
    let mut samples: Vec<QElement> = Gen::ALL.iter().map(|&g| QElement::generator(spec, g)).collect();
    samples.extend((0..20).map(|_| random_word(spec, rng, 4)));
    for x in samples {
        if !coassociativity_holds(&x) {
            return Ok(Some(format!("coassociativity fails on {x}")));
        }
        if !counit_holds(&x) {
            return Ok(Some(format!("counit axiom fails on {x}")));
        }
        if !antipode_holds(&x) {
            return Ok(Some(format!("antipode axiom fails on {x}")));
        }
    }
    Ok(None)
}

fn lift_checks(spec: &RootSpec, rng: &mut StdRng) -> Result<Option<String>> {
    let [a, b, c, d] = ClassicalGen::ALL.map(|g| ClassicalElement::generator(spec, g));
    if lift(&(&(&a * &d) - &(&b * &c))) != QElement::one(spec) {
        return Ok(Some("lift(αδ − βγ) ≠ 1".into()));
    }
    for _ in 0..8 {
        let f = random_classical(spec, rng, 2, 1);
        let g = random_classical(spec, rng, 2, 1);
        if lift(&(&f * &g)) != &lift(&f) * &lift(&g) {
            return Ok(Some(format!("lift is not multiplicative on {f}, {g}")));
        }
    }
    Ok(None)
}

fn reduction_roundtrip(spec: &RootSpec, rng: &mut StdRng) -> Result<Option<String>> {
    let l = spec.l();
    for _ in 0..10 {
        let x = random_element(spec, rng, 3, 3 * l);
        for side in [Side::Left, Side::Right] {
            if module_recompose(&central_reduce(&x, side)) != x {
                return Ok(Some(format!("{side:?} central reduction of {x}")));
            }
        }
    }
    Ok(None)
}

fn decomposition_roundtrip(spec: &RootSpec, rng: &mut StdRng) -> Result<Option<String>> {
    let l = spec.l();
    for _ in 0..15 {
        let x = random_element(spec, rng, 3, 2 * l);
        for side in [Side::Left, Side::Right] {
            if recompose(&decompose(&x, side)?) != x {
                return Ok(Some(format!("{side:?} decomposition of {x}")));
            }
        }
    }
    Ok(None)
}

fn oracle_agreement(spec: &RootSpec) -> Result<Option<String>> {
    let l = spec.l();
    for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                for d in 0..l {
                    let m = QMonomial::new(a, b, c, d);
                    if !m.is_reduced() {
                        continue;
                    }
                    let x = QElement::monomial(spec, m);
                    for side in [Side::Left, Side::Right] {
                        if decompose(&x, side)? != oracle_decompose(&x, side, Some(2))? {
                            return Ok(Some(format!("{side:?} decomposition of {m}")));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn freeness(spec: &RootSpec) -> Result<Option<String>> {
    for side in [Side::Left, Side::Right] {
        let r = verify_freeness(spec.l() as i64, side, 2)?;
        if r.kernel_dimension != 0 || !r.all_decomposed {
            return Ok(Some(format!(
                "{side:?}: kernel {} spanning {}",
                r.kernel_dimension, r.all_decomposed
            )));
        }
    }
    Ok(None)
}

fn localization(spec: &RootSpec, rng: &mut StdRng) -> Result<Option<String>> {
    let l = spec.l();
    for _ in 0..10 {
        let x = random_element(spec, rng, 3, 2 * l);
        for chart in [LocalChart::UAlpha, LocalChart::UBeta] {
            let loc = localize(&x, chart)?;
            let (k, cleared) = loc.clear_denominators();
            let g = match chart {
                LocalChart::UAlpha => ClassicalGen::Alpha,
                LocalChart::UBeta => ClassicalGen::Beta,
            };
            let expected = &lift(&ClassicalElement::generator(spec, g).pow(k)) * &x;
            if cleared != expected {
                return Ok(Some(format!("{chart:?} localization of {x}")));
            }
        }
    }
    Ok(None)
}

fn print_parse(spec: &RootSpec, rng: &mut StdRng) -> Result<Option<String>> {
    for _ in 0..20 {
        let x = random_element(spec, rng, 4, 2 * spec.l());
        if parse_element(&x.to_string(), spec)? != x {
            return Ok(Some(format!("printing {x} does not parse back")));
        }
    }
    Ok(None)
}

fn closure() -> Result<Option<String>> {
    let odd = closure_diagnostic(3, 3)?;
    let even = closure_diagnostic(2, 4)?;
    let mixed = closure_diagnostic(3, 6)?;
    let ok = odd.lth_relation.is_classical()
        && odd.coproduct_closes
        && even.lth_relation.is_classical()
        && even.coproduct_closes
        && !mixed.lth_relation.is_classical()
        && !mixed.determinant_closes
        && !mixed.coproduct_closes
        && mixed.powers_commute;
    Ok(fail_unless(ok, || mixed.summary()))
}

/// Runs every suite at l = 2 and l = 3.
pub fn run_selftest(seed: u64) -> SelftestReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = SelftestReport::default();
    for l in [2, 3] {
        let spec = match RootSpec::new(l, None) {
            Ok(s) => s,
            Err(e) => {
                report.record(format!("root l={l}"), Err(e));
                continue;
            }
        };
        let tag = |name: &str| format!("{name} (l={l})");
        report.record(tag("field axioms"), field_axioms(&spec, &mut rng));
        report.record(tag("p-coefficients"), p_coefficients(&spec));
        report.record(tag("associativity"), associativity(&spec, &mut rng));
        report.record(tag("hopf axioms"), hopf_axioms(&spec, &mut rng));
        report.record(tag("lift"), lift_checks(&spec, &mut rng));
        report.record(tag("central reduction"), reduction_roundtrip(&spec, &mut rng));
        report.record(tag("decomposition roundtrip"), decomposition_roundtrip(&spec, &mut rng));
        report.record(tag("decomposition vs oracle"), oracle_agreement(&spec));
        report.record(tag("freeness"), freeness(&spec));
        report.record(tag("localization"), localization(&spec, &mut rng));
        report.record(tag("print and parse"), print_parse(&spec, &mut rng));
    }
    report.record("closure diagnostic".into(), closure());
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes() {
        let report = run_selftest(7);
        assert!(report.all_passed(), "{report}");
    }
}
