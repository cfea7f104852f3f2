//! Coproduct, counit and antipode of the matrix coalgebra on (a b; c d).
//!
//! Δa = a⊗a + b⊗c, Δb = a⊗b + b⊗d, Δc = c⊗a + d⊗c, Δd = c⊗b + d⊗d,
//! ε(a) = ε(d) = 1, ε(b) = ε(c) = 0,
//! S(a) = d, S(b) = −q⁻¹b, S(c) = −qc, S(d) = a.

use super::element::QElement;
use super::monomial::{Gen, QMonomial};
use super::tensor::TensorElement;
use crate::cyclo::{Cyclotomic, RootSpec};

fn gen_coproduct(spec: &RootSpec, g: Gen) -> TensorElement {
    let m = QMonomial::generator;
    let (x, y) = match g {
        Gen::A => ([m(Gen::A), m(Gen::A)], [m(Gen::B), m(Gen::C)]),
        Gen::B => ([m(Gen::A), m(Gen::B)], [m(Gen::B), m(Gen::D)]),
        Gen::C => ([m(Gen::C), m(Gen::A)], [m(Gen::D), m(Gen::C)]),
        Gen::D => ([m(Gen::C), m(Gen::B)], [m(Gen::D), m(Gen::D)]),
    };
    &TensorElement::pure(spec, x, spec.one()) + &TensorElement::pure(spec, y, spec.one())
}

/// Δ of a reduced monomial, as the product of generator coproducts.
pub fn coproduct_monomial(spec: &RootSpec, m: &QMonomial) -> TensorElement {
    let mut acc = TensorElement::one(spec);
    for g in Gen::ALL {
        let e = m.exponent(g);
        if e > 0 {
            acc = acc
                .tensor_mul(&gen_coproduct(spec, g).power(e))
                .expect("same spec");
        }
    }
    acc
}

pub fn coproduct(x: &QElement) -> TensorElement {
    let spec = x.spec();
    let mut acc = TensorElement::zero(spec);
    for (m, c) in x.terms() {
        acc = &acc + &coproduct_monomial(spec, m).scale(c);
    }
    acc
}

pub fn counit_monomial(spec: &RootSpec, m: &QMonomial) -> Cyclotomic {
    if m.b == 0 && m.c == 0 {
        spec.one()
    } else {
        spec.zero()
    }
}

pub fn counit(x: &QElement) -> Cyclotomic {
    let spec = x.spec();
    let mut acc = spec.zero();
    for (m, c) in x.terms() {
        acc += &(&counit_monomial(spec, m) * c);
    }
    acc
}

fn gen_antipode(spec: &RootSpec, g: Gen) -> QElement {
    match g {
        Gen::A => QElement::generator(spec, Gen::D),
        Gen::B => QElement::generator(spec, Gen::B).scale(&-spec.q_pow(-1)),
        Gen::C => QElement::generator(spec, Gen::C).scale(&-spec.q_pow(1)),
        Gen::D => QElement::generator(spec, Gen::A),
    }
}

/// S(a^i b^j c^k d^m) = S(d)^m S(c)^k S(b)^j S(a)^i.
pub fn antipode_monomial(spec: &RootSpec, m: &QMonomial) -> QElement {
    let mut acc = QElement::one(spec);
    for g in Gen::ALL.into_iter().rev() {
        let e = m.exponent(g);
        if e > 0 {
            acc = &acc * &gen_antipode(spec, g).power(e);
        }
    }
    acc
}

pub fn antipode(x: &QElement) -> QElement {
    let spec = x.spec();
    let mut acc = QElement::zero(spec);
    for (m, c) in x.terms() {
        acc = &acc + &antipode_monomial(spec, m).scale(c);
    }
    acc
}

/// (Δ ⊗ id)Δx = (id ⊗ Δ)Δx.
pub fn coassociativity_holds(x: &QElement) -> bool {
    let spec = x.spec();
    let d = coproduct(x);
    d.expand_left(|m| coproduct_monomial(spec, m)) == d.expand_right(|m| coproduct_monomial(spec, m))
}

/// (ε ⊗ id)Δx = x = (id ⊗ ε)Δx.
pub fn counit_holds(x: &QElement) -> bool {
    let spec = x.spec();
    let d = coproduct(x);
    let eps = |m: &QMonomial| QElement::scalar(spec, counit_monomial(spec, m));
    let id = |m: &QMonomial| QElement::monomial(spec, *m);
    d.contract(eps, id) == *x && d.contract(id, eps) == *x
}

/// m(S ⊗ id)Δx = ε(x)·1 = m(id ⊗ S)Δx.
pub fn antipode_holds(x: &QElement) -> bool {
    let spec = x.spec();
    let d = coproduct(x);
    let s = |m: &QMonomial| antipode_monomial(spec, m);
    let id = |m: &QMonomial| QElement::monomial(spec, *m);
    let unit = QElement::scalar(spec, counit(x));
    d.contract(s, id) == unit && d.contract(id, s) == unit
}
