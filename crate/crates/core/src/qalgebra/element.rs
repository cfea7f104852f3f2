use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{mul_monomials, straighten_letters, Gen, QMonomial, QPowers};
use crate::cyclo::{Cyclotomic, RootSpec};
use crate::error::{Error, Result};

/// A free-algebra word with a scalar prefactor.
#[derive(Debug, Clone, PartialEq)]
pub struct Word {
    pub scalar: Cyclotomic,
    pub letters: Vec<Gen>,
}

impl Word {
    pub fn new(scalar: Cyclotomic, letters: Vec<Gen>) -> Self {
        Word { scalar, letters }
    }

    /// Parses a string of the letters a, b, c, d with unit scalar.
    pub fn parse(spec: &RootSpec, text: &str) -> Result<Self> {
        let letters = text
            .chars()
            .enumerate()
            .map(|(pos, ch)| {
                Gen::from_letter(ch).ok_or(Error::Parse {
                    pos,
                    msg: format!("unexpected letter '{ch}'"),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Word::new(spec.one(), letters))
    }
}

pub(crate) fn qpowers_to_cyclo(spec: &RootSpec, p: &QPowers) -> Cyclotomic {
    let mut acc = spec.zero();
    for (e, &c) in p.0.iter().enumerate() {
        if c != 0 {
            let term = spec.q_pow(e as i64);
            let c = i64::try_from(c).expect("q-power coefficient exceeds i64");
            acc += &term.scale(&crate::Rational::from_integer(c.into()));
        }
    }
    acc
}

/// An element of A(SL_q(2)) in PBW normal form.
///
/// Terms are kept sorted in graded lexicographic order and zero
/// coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QElement {
    spec: RootSpec,
    terms: BTreeMap<QMonomial, Cyclotomic>,
}

impl QElement {
    pub fn zero(spec: &RootSpec) -> Self {
        QElement {
            spec: *spec,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: &RootSpec) -> Self {
        Self::scalar(spec, spec.one())
    }

    pub fn scalar(spec: &RootSpec, c: Cyclotomic) -> Self {
        let mut x = Self::zero(spec);
        x.add_term(QMonomial::ONE, c);
        x
    }

    pub fn generator(spec: &RootSpec, g: Gen) -> Self {
        Self::monomial(spec, QMonomial::generator(g))
    }

    /// The element represented by the ordered word a^a b^b c^c d^d. Mixed
    /// a, d words are straightened.
    pub fn monomial(spec: &RootSpec, m: QMonomial) -> Self {
        if m.is_reduced() {
            let mut x = Self::zero(spec);
            x.add_term(m, spec.one());
            x
        } else {
            let letters: Vec<Gen> = m.letters().collect();
            straighten(&Word::new(spec.one(), letters), spec)
        }
    }

    pub fn from_terms(spec: &RootSpec, terms: impl IntoIterator<Item = (QMonomial, Cyclotomic)>) -> Self {
        let mut x = Self::zero(spec);
        for (m, c) in terms {
            if m.is_reduced() {
                x.add_term(m, c);
            } else {
                x = &x + &Self::monomial(spec, m).scale(&c);
            }
        }
        x
    }

    pub fn spec(&self) -> &RootSpec {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QMonomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, m: &QMonomial) -> Cyclotomic {
        self.terms.get(m).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().map(QMonomial::max_exponent).max().unwrap_or(0)
    }

    /// Adds `c · m` for a reduced monomial, dropping the term if it cancels.
    pub(crate) fn add_term(&mut self, m: QMonomial, c: Cyclotomic) {
        debug_assert!(m.is_reduced());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(&self.spec);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(*m, v * c);
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Product in A(SL_q(2)).
    pub fn qmul(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let spec = self.spec;
        let mut out = Self::zero(&spec);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c12 = c1 * c2;
                for (m, p) in mul_monomials(spec.order(), *m1, *m2) {
                    out.add_term(m, &c12 * &qpowers_to_cyclo(&spec, &p));
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.spec);
        for _ in 0..n {
            acc = acc.qmul(self).expect("same spec");
        }
        acc
    }

    /// Splits the element by torus weight.
    pub fn homogeneous_parts(&self) -> BTreeMap<(i64, i64), QElement> {
        let mut parts: BTreeMap<(i64, i64), QElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.weight())
                .or_insert_with(|| QElement::zero(&self.spec))
                .terms
                .insert(*m, c.clone());
        }
        parts
    }
}

/// Rewrites a free word into PBW normal form.
pub fn straighten(w: &Word, spec: &RootSpec) -> QElement {
    let mut out = QElement::zero(spec);
    if w.scalar.is_zero() {
        return out;
    }
    for (m, p) in straighten_letters(spec.order(), &w.letters) {
        out.add_term(m, &w.scalar * &qpowers_to_cyclo(spec, &p));
    }
    out
}

/// Bilinear product; see [`QElement::qmul`].
pub fn qmul(x: &QElement, y: &QElement) -> Result<QElement> {
    x.qmul(y)
}

pub fn power(x: &QElement, n: u32) -> QElement {
    x.power(n)
}

impl Add for &QElement {
    type Output = QElement;
    fn add(self, rhs: &QElement) -> QElement {
        self.try_add(rhs).expect("root spec mismatch")
    }
}

impl Sub for &QElement {
    type Output = QElement;
    fn sub(self, rhs: &QElement) -> QElement {
        self.try_sub(rhs).expect("root spec mismatch")
    }
}

impl Mul for &QElement {
    type Output = QElement;
    fn mul(self, rhs: &QElement) -> QElement {
        self.qmul(rhs).expect("root spec mismatch")
    }
}

impl Neg for &QElement {
    type Output = QElement;
    fn neg(self) -> QElement {
        QElement {
            spec: self.spec,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($Trait:ident, $method:ident) => {
        impl $Trait for QElement {
            type Output = QElement;
            fn $method(self, rhs: QElement) -> QElement {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for QElement {
    type Output = QElement;
    fn neg(self) -> QElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(l: i64) -> RootSpec {
        RootSpec::new(l, None).unwrap()
    }

    fn gen(s: &RootSpec, g: Gen) -> QElement {
        QElement::generator(s, g)
    }

    fn mono(s: &RootSpec, a: u32, b: u32, c: u32, d: u32) -> QElement {
        QElement::monomial(s, QMonomial::new(a, b, c, d))
    }

    #[test]
    fn word_da() {
        let s = spec(3);
        let x = straighten(&Word::parse(&s, "da").unwrap(), &s);
        let expected = &QElement::one(&s) + &mono(&s, 0, 1, 1, 0).scale(&s.q_pow(-1));
        assert_eq!(x, expected);
    }

    #[test]
    fn word_ba() {
        let s = spec(5);
        let x = straighten(&Word::parse(&s, "ba").unwrap(), &s);
        assert_eq!(x, mono(&s, 1, 1, 0, 0).scale(&s.q_pow(-1)));
    }

    #[test]
    fn word_abcd() {
        // a·bc = q² bc·a, then ad = 1 + q bc
        let s = spec(5);
        let x = straighten(&Word::parse(&s, "abcd").unwrap(), &s);
        let expected = &mono(&s, 0, 1, 1, 0).scale(&s.q_pow(2)) + &mono(&s, 0, 2, 2, 0).scale(&s.q_pow(3));
        assert_eq!(x, expected);
    }

    #[test]
    fn qmul_examples() {
        let s = spec(3);
        let (a, b, c, d) = (gen(&s, Gen::A), gen(&s, Gen::B), gen(&s, Gen::C), gen(&s, Gen::D));
        let x = &mono(&s, 1, 2, 0, 1) + &b;
        assert_eq!(&QElement::one(&s) * &x, x);
        let ad = &a * &d;
        assert_eq!(&ad - &(&b * &c).scale(&s.q_pow(1)), QElement::one(&s));
        let da = &d * &a;
        let bc = mono(&s, 0, 1, 1, 0);
        let b2c2 = mono(&s, 0, 2, 2, 0);
        let expected = &(&QElement::one(&s) + &bc.scale(&(&s.q_pow(1) + &s.q_pow(-1)))) + &b2c2;
        assert_eq!(&ad * &da, expected);
    }

    #[test]
    fn power_examples() {
        let s = spec(3);
        let a = gen(&s, Gen::A);
        assert_eq!(a.power(3), mono(&s, 3, 0, 0, 0));
        // a²d² = (1 + q bc)(1 + q³ bc)
        let a2d2 = &a.power(2) * &gen(&s, Gen::D).power(2);
        let expected = &(&QElement::one(&s) + &mono(&s, 0, 1, 1, 0).scale(&(&s.q_pow(1) + &s.q_pow(3))))
            + &mono(&s, 0, 2, 2, 0).scale(&s.q_pow(4));
        assert_eq!(a2d2, expected);
        // (ad)² = (1 + q bc)²
        let ad = &a * &gen(&s, Gen::D);
        let sq = &(&QElement::one(&s) + &mono(&s, 0, 1, 1, 0).scale(&(s.q_pow(1) * s.scalar(2))))
            + &mono(&s, 0, 2, 2, 0).scale(&s.q_pow(2));
        assert_eq!(ad.power(2), sq);
        let bc = &gen(&s, Gen::B) + &gen(&s, Gen::C);
        let expected = &(&mono(&s, 0, 2, 0, 0) + &mono(&s, 0, 1, 1, 0).scale(&s.scalar(2))) + &mono(&s, 0, 0, 2, 0);
        assert_eq!(bc.power(2), expected);
        assert_eq!(bc.power(0), QElement::one(&s));
    }

    #[test]
    fn mismatched_specs() {
        let x = QElement::one(&spec(3));
        let y = QElement::one(&spec(5));
        assert_eq!(x.qmul(&y), Err(Error::SpecMismatch));
    }

    #[test]
    fn zero_scalar_word() {
        let s = spec(3);
        let w = Word::new(s.zero(), vec![Gen::A]);
        assert!(straighten(&w, &s).is_zero());
    }
}
