//! The commutative coordinate ring A(SL(2)) = C[α, β, γ, δ] / (αδ − βγ − 1).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyclotomic, RootSpec};
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalGen {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl ClassicalGen {
    pub const ALL: [ClassicalGen; 4] = [
        ClassicalGen::Alpha,
        ClassicalGen::Beta,
        ClassicalGen::Gamma,
        ClassicalGen::Delta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalGen::Alpha => "alpha",
            ClassicalGen::Beta => "beta",
            ClassicalGen::Gamma => "gamma",
            ClassicalGen::Delta => "delta",
        }
    }
}

/// α^alpha β^beta γ^gamma δ^delta; reduced when α and δ do not both occur.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassicalMonomial {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub delta: u32,
}

impl ClassicalMonomial {
    pub const ONE: ClassicalMonomial = ClassicalMonomial {
        alpha: 0,
        beta: 0,
        gamma: 0,
        delta: 0,
    };

    pub fn new(alpha: u32, beta: u32, gamma: u32, delta: u32) -> Self {
        ClassicalMonomial {
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    pub fn generator(g: ClassicalGen) -> Self {
        let mut m = Self::ONE;
        match g {
            ClassicalGen::Alpha => m.alpha = 1,
            ClassicalGen::Beta => m.beta = 1,
            ClassicalGen::Gamma => m.gamma = 1,
            ClassicalGen::Delta => m.delta = 1,
        }
        m
    }

    pub fn is_reduced(&self) -> bool {
        self.alpha == 0 || self.delta == 0
    }

    pub fn degree(&self) -> u32 {
        self.alpha + self.beta + self.gamma + self.delta
    }

    pub fn max_exponent(&self) -> u32 {
        self.alpha.max(self.beta).max(self.gamma).max(self.delta)
    }

    /// Torus weight of the lifted monomial a^{lα} b^{lβ} c^{lγ} d^{lδ}.
    pub fn lifted_weight(&self, l: u32) -> (i64, i64) {
        let (a, b, c, d) = (
            self.alpha as i64,
            self.beta as i64,
            self.gamma as i64,
            self.delta as i64,
        );
        let l = l as i64;
        (l * (a + b - c - d), l * (a - b + c - d))
    }

    /// All reduced monomials with every exponent at most `bound`.
    pub fn reduced_up_to(bound: u32) -> Vec<ClassicalMonomial> {
        let mut out = Vec::new();
        for beta in 0..=bound {
            for gamma in 0..=bound {
                for alpha in 0..=bound {
                    out.push(Self::new(alpha, beta, gamma, 0));
                }
                for delta in 1..=bound {
                    out.push(Self::new(0, beta, gamma, delta));
                }
            }
        }
        out.sort();
        out
    }
}

impl Ord for ClassicalMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            (self.alpha, self.beta, self.gamma, self.delta).cmp(&(
                other.alpha,
                other.beta,
                other.gamma,
                other.delta,
            ))
        })
    }
}

impl PartialOrd for ClassicalMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClassicalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let parts = [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("delta", self.delta),
        ];
        let mut first = true;
        for (name, e) in parts {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_integer(acc)
}

/// An element of A(SL(2)) with cyclotomic coefficients, kept in the reduced
/// monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalElement {
    spec: RootSpec,
    terms: BTreeMap<ClassicalMonomial, Cyclotomic>,
}

impl ClassicalElement {
    pub fn zero(spec: &RootSpec) -> Self {
        ClassicalElement {
            spec: *spec,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: &RootSpec) -> Self {
        Self::scalar(spec, spec.one())
    }

    pub fn scalar(spec: &RootSpec, c: Cyclotomic) -> Self {
        let mut x = Self::zero(spec);
        x.add_term(ClassicalMonomial::ONE, c);
        x
    }

    pub fn generator(spec: &RootSpec, g: ClassicalGen) -> Self {
        Self::monomial(spec, ClassicalMonomial::generator(g), spec.one())
    }

    /// `c · m`, reducing m first if α and δ both occur.
    pub fn monomial(spec: &RootSpec, m: ClassicalMonomial, c: Cyclotomic) -> Self {
        let mut x = Self::zero(spec);
        x.add_unreduced(m, &c);
        x
    }

    pub fn spec(&self) -> &RootSpec {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassicalMonomial, &Cyclotomic)> {
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

    pub fn coeff(&self, m: &ClassicalMonomial) -> Cyclotomic {
        self.terms.get(m).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().map(ClassicalMonomial::max_exponent).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: ClassicalMonomial, c: Cyclotomic) {
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

    /// Adds `c · m` using αδ = 1 + βγ to reduce m.
    fn add_unreduced(&mut self, m: ClassicalMonomial, c: &Cyclotomic) {
        let t = m.alpha.min(m.delta);
        for s in 0..=t {
            let reduced = ClassicalMonomial::new(m.alpha - t, m.beta + s, m.gamma + s, m.delta - t);
            self.add_term(reduced, c.scale(&binomial(t, s)));
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
        if !c.is_zero() {
            for (m, v) in &self.terms {
                out.terms.insert(*m, v * c);
            }
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

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let mut out = Self::zero(&self.spec);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = ClassicalMonomial::new(
                    m1.alpha + m2.alpha,
                    m1.beta + m2.beta,
                    m1.gamma + m2.gamma,
                    m1.delta + m2.delta,
                );
                out.add_unreduced(m, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(&self.spec), |acc, _| &acc * self)
    }

    /// `self / α` when the quotient lies in A(SL(2)).
    ///
    /// Modulo α the ring becomes C[β, γ, δ]/(βγ + 1), so the α-free part
    /// must be a multiple of 1 + βγ = αδ.
    pub fn div_alpha(&self) -> Option<Self> {
        let mut quotient = Self::zero(&self.spec);
        let mut rest: BTreeMap<ClassicalMonomial, Cyclotomic> = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.alpha > 0 {
                quotient.add_term(ClassicalMonomial { alpha: m.alpha - 1, ..*m }, c.clone());
            } else {
                rest.insert(*m, c.clone());
            }
        }
        // divide the α-free part by 1 + βγ, highest βγ-degree first
        while let Some((&m, _)) = rest.iter().rev().find(|(m, _)| m.beta > 0 && m.gamma > 0) {
            let c = rest.remove(&m).unwrap();
            let lower = ClassicalMonomial::new(0, m.beta - 1, m.gamma - 1, m.delta);
            // β^jγ^kδ^m = (1 + βγ)·β^{j-1}γ^{k-1}δ^m − β^{j-1}γ^{k-1}δ^m
            let entry = rest.entry(lower).or_insert_with(|| self.spec.zero());
            *entry -= &c;
            if entry.is_zero() {
                rest.remove(&lower);
            }
            // (1 + βγ)/α = δ
            quotient.add_unreduced(ClassicalMonomial { delta: lower.delta + 1, ..lower }, &c);
        }
        rest.is_empty().then_some(quotient)
    }

    /// `self / β` when the quotient lies in A(SL(2)).
    pub fn div_beta(&self) -> Option<Self> {
        let mut quotient = Self::zero(&self.spec);
        for (m, c) in &self.terms {
            if m.beta == 0 {
                return None;
            }
            quotient.add_term(ClassicalMonomial { beta: m.beta - 1, ..*m }, c.clone());
        }
        Some(quotient)
    }
}

impl Add for &ClassicalElement {
    type Output = ClassicalElement;
    fn add(self, rhs: &ClassicalElement) -> ClassicalElement {
        self.try_add(rhs).expect("root spec mismatch")
    }
}

impl Sub for &ClassicalElement {
    type Output = ClassicalElement;
    fn sub(self, rhs: &ClassicalElement) -> ClassicalElement {
        self.try_add(&-rhs).expect("root spec mismatch")
    }
}

impl Mul for &ClassicalElement {
    type Output = ClassicalElement;
    fn mul(self, rhs: &ClassicalElement) -> ClassicalElement {
        self.try_mul(rhs).expect("root spec mismatch")
    }
}

impl Neg for &ClassicalElement {
    type Output = ClassicalElement;
    fn neg(self) -> ClassicalElement {
        ClassicalElement {
            spec: self.spec,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

/// Commutative product in A(SL(2)).
pub fn classical_mul(x: &ClassicalElement, y: &ClassicalElement) -> Result<ClassicalElement> {
    x.try_mul(y)
}

/// Rebuilds an element from arbitrary (possibly unreduced) monomials.
pub fn classical_normalize(
    spec: &RootSpec,
    terms: impl IntoIterator<Item = (ClassicalMonomial, Cyclotomic)>,
) -> ClassicalElement {
    let mut x = ClassicalElement::zero(spec);
    for (m, c) in terms {
        x.add_unreduced(m, &c);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> RootSpec {
        RootSpec::new(3, None).unwrap()
    }

    fn g(s: &RootSpec, x: ClassicalGen) -> ClassicalElement {
        ClassicalElement::generator(s, x)
    }

    #[test]
    fn determinant_relation() {
        let s = spec();
        let ad = &g(&s, ClassicalGen::Alpha) * &g(&s, ClassicalGen::Delta);
        let expected = &ClassicalElement::one(&s) + &(&g(&s, ClassicalGen::Beta) * &g(&s, ClassicalGen::Gamma));
        assert_eq!(ad, expected);
    }

    #[test]
    fn already_reduced_product() {
        let s = spec();
        let ab = &g(&s, ClassicalGen::Alpha) * &g(&s, ClassicalGen::Beta);
        assert_eq!(ab.len(), 1);
        assert_eq!(ab.coeff(&ClassicalMonomial::new(1, 1, 0, 0)), s.one());
    }

    #[test]
    fn alpha_squared_delta() {
        let s = spec();
        let a = g(&s, ClassicalGen::Alpha);
        let x = &(&a * &a) * &g(&s, ClassicalGen::Delta);
        let expected = &a + &ClassicalElement::monomial(&s, ClassicalMonomial::new(1, 1, 1, 0), s.one());
        assert_eq!(x, expected);
    }

    #[test]
    fn normalize_high_powers() {
        let s = spec();
        // α²δ² = (1 + βγ)²
        let x = classical_normalize(&s, [(ClassicalMonomial::new(2, 0, 0, 2), s.one())]);
        assert_eq!(x.coeff(&ClassicalMonomial::new(0, 1, 1, 0)), s.scalar(2));
        assert_eq!(x.len(), 3);
    }

    #[test]
    fn division() {
        let s = spec();
        let a = g(&s, ClassicalGen::Alpha);
        let b = g(&s, ClassicalGen::Beta);
        let d = g(&s, ClassicalGen::Delta);
        let x = &(&d * &d) + &b;
        assert_eq!((&a * &x).div_alpha().unwrap(), x);
        assert_eq!((&b * &x).div_beta().unwrap(), x);
        assert_eq!(d.div_alpha(), None);
        assert_eq!(a.div_beta(), None);
        // 1 + βγ = αδ is divisible by α
        let one_plus = &ClassicalElement::one(&s) + &(&b * &g(&s, ClassicalGen::Gamma));
        assert_eq!(one_plus.div_alpha().unwrap(), d);
    }

    #[test]
    fn reduced_enumeration() {
        let all = ClassicalMonomial::reduced_up_to(2);
        assert_eq!(all.len(), 27 + 18);
        assert!(all.iter().all(ClassicalMonomial::is_reduced));
    }
}
