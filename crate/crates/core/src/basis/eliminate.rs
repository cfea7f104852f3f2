//! The two elimination relations and their memoized closure.
//!
//! A residual monomial outside the generator ranges is either
//! b^n c^s d^r with s + r ≥ l (family D) or a^m b^n c^s with s < m
//! (family A). With k = l − r, resp. k = l − m, the engine expands
//! δ·a^k b^n c^s, resp. α·b^n c^s d^k, into the violating monomial plus
//! terms whose c-exponent is strictly larger; solving for the violating
//! monomial gives one elimination step. Nothing about the coefficients is
//! assumed: each step is read off the engine and checked by recomposition.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::{is_basis_monomial, side_mul, BasisIndex};
use crate::cyclo::RootSpec;
use crate::error::{Error, Result};
use crate::frobenius::{central_reduce, lift, module_recompose, ModuleElement, Side};
use crate::qalgebra::{ClassicalElement, ClassicalGen, QElement, QMonomial};

enum Violation {
    D { n: u32, s: u32, r: u32 },
    A { m: u32, n: u32, s: u32 },
}

fn classify(spec: &RootSpec, t: &QMonomial) -> Result<Option<Violation>> {
    let l = spec.l();
    if is_basis_monomial(t, l as i64)?.is_some() {
        return Ok(None);
    }
    Ok(Some(if t.a > 0 {
        Violation::A { m: t.a, n: t.b, s: t.c }
    } else {
        Violation::D { n: t.b, s: t.c, r: t.d }
    }))
}

/// One elimination step for the residual monomial `t`.
fn step(spec: &RootSpec, side: Side, t: &QMonomial, v: &Violation) -> Result<ModuleElement> {
    let l = spec.l();
    let (gen, base, s) = match *v {
        Violation::D { n, s, r } => (ClassicalGen::Delta, QMonomial::new(l - r, n, s, 0), s),
        Violation::A { m, n, s } => (ClassicalGen::Alpha, QMonomial::new(0, n, s, l - m), s),
    };
    debug_assert!(is_basis_monomial(&base, l as i64)?.is_some());
    let g = ClassicalElement::generator(spec, gen);
    let expanded = side_mul(side, &lift(&g), &QElement::monomial(spec, base));
    let lead = expanded.coeff(t);
    let inv = lead
        .inv()
        .map_err(|_| Error::RelationCheck(format!("{t}: leading coefficient vanishes")))?;
    let mut rest = expanded.clone();
    rest.add_term(*t, -&lead);
    for (m, _) in rest.terms() {
        let wraps = m.c >= l;
        if m.c <= s || (wraps && matches!(v, Violation::A { .. })) {
            return Err(Error::RelationCheck(format!("{t}: term {m} breaks the termination order")));
        }
    }
    let mut out = central_reduce(&rest.scale(&-&inv), side);
    out.add_term(base, &g.scale(&inv));
    if module_recompose(&out) != QElement::monomial(spec, *t) {
        return Err(Error::RelationCheck(t.to_string()));
    }
    Ok(out)
}

fn check_spec(spec: &RootSpec) -> Result<()> {
    spec.require_admissible()
}

/// b^n c^s d^r rewritten as a δ-multiple of a^{l-r} b^n c^s plus terms of
/// higher c-exponent, reduced modulo l-th powers.
pub fn eliminate_d_family(n: u32, s: u32, r: u32, spec: &RootSpec, side: Side) -> Result<ModuleElement> {
    check_spec(spec)?;
    let t = QMonomial::new(0, n, s, r);
    match classify(spec, &t)? {
        Some(v @ Violation::D { .. }) => step(spec, side, &t, &v),
        _ => Err(Error::NotViolating(t.to_string())),
    }
}

/// a^m b^n c^s rewritten as an α-multiple of b^n c^s d^{l-m} plus terms of
/// higher c-exponent.
pub fn eliminate_a_family(m: u32, n: u32, s: u32, spec: &RootSpec, side: Side) -> Result<ModuleElement> {
    check_spec(spec)?;
    if m == 0 {
        return Err(Error::NotViolating(format!("b^{n}*c^{s}")));
    }
    let t = QMonomial::new(m, n, s, 0);
    match classify(spec, &t)? {
        Some(v @ Violation::A { .. }) => step(spec, side, &t, &v),
        _ => Err(Error::NotViolating(t.to_string())),
    }
}

type Closure = BTreeMap<BasisIndex, ClassicalElement>;

/// Full decompositions of every violating residual monomial, built once per
/// root and side.
pub(crate) struct Decomposer {
    closures: HashMap<QMonomial, Closure>,
}

impl Decomposer {
    fn build(spec: &RootSpec, side: Side) -> Result<Self> {
        let l = spec.l();
        let mut violating = Vec::new();
        for a in 0..l {
            for b in 0..l {
                for c in 0..l {
                    for d in 0..l {
                        let t = QMonomial::new(a, b, c, d);
                        if t.is_reduced() {
                            if let Some(v) = classify(spec, &t)? {
                                violating.push((t, v));
                            }
                        }
                    }
                }
            }
        }
        let mut steps = HashMap::new();
        for (t, v) in &violating {
            steps.insert(*t, step(spec, side, t, v)?);
        }
        // higher c-exponent first: every step only refers to larger c
        violating.sort_by_key(|(t, _)| std::cmp::Reverse(t.c));
        let mut closures: HashMap<QMonomial, Closure> = HashMap::new();
        for (t, _) in &violating {
            let mut acc = Closure::new();
            for (key, g) in steps[t].terms() {
                let mut add = |idx: BasisIndex, h: ClassicalElement| {
                    let e = acc.entry(idx).or_insert_with(|| ClassicalElement::zero(spec));
                    *e = &*e + &h;
                };
                match is_basis_monomial(key, l as i64)? {
                    Some(idx) => add(idx, g.clone()),
                    None => {
                        let sub = closures
                            .get(key)
                            .ok_or(Error::Termination(violating.len()))?;
                        for (idx, h) in sub {
                            add(*idx, g * h);
                        }
                    }
                }
            }
            acc.retain(|_, g| !g.is_zero());
            closures.insert(*t, acc);
        }
        Ok(Decomposer { closures })
    }

    pub fn closure(&self, t: &QMonomial) -> &Closure {
        &self.closures[t]
    }
}

type Cache = Mutex<HashMap<(RootSpec, Side), Arc<Decomposer>>>;

pub(crate) fn decomposer(spec: &RootSpec, side: Side) -> Result<Arc<Decomposer>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(&(*spec, side)) {
        return Ok(d.clone());
    }
    let built = Arc::new(Decomposer::build(spec, side)?);
    Ok(cache
        .lock()
        .unwrap()
        .entry((*spec, side))
        .or_insert(built)
        .clone())
}
