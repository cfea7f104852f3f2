use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use super::element::{qpowers_to_cyclo, QElement};
use super::monomial::{mul_monomials, QMonomial};
use crate::cyclo::{Cyclotomic, RootSpec};
use crate::error::{Error, Result};

/// An element of the K-fold tensor power of A(SL_q(2)), multiplied leg-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor<const K: usize> {
    spec: RootSpec,
    terms: BTreeMap<[QMonomial; K], Cyclotomic>,
}

pub type TensorElement = Tensor<2>;
pub type TripleTensor = Tensor<3>;

impl<const K: usize> Tensor<K> {
    pub fn zero(spec: &RootSpec) -> Self {
        Tensor {
            spec: *spec,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: &RootSpec) -> Self {
        let mut t = Self::zero(spec);
        t.add_term([QMonomial::ONE; K], spec.one());
        t
    }

    /// Pure tensor of reduced monomials.
    pub fn pure(spec: &RootSpec, legs: [QMonomial; K], c: Cyclotomic) -> Self {
        let mut t = Self::zero(spec);
        t.add_term(legs, c);
        t
    }

    pub fn spec(&self) -> &RootSpec {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[QMonomial; K], &Cyclotomic)> {
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

    pub(crate) fn add_term(&mut self, legs: [QMonomial; K], c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
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

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(&self.spec);
        for (legs, v) in &self.terms {
            out.add_term(*legs, v * c);
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let mut out = self.clone();
        for (legs, c) in &other.terms {
            out.add_term(*legs, c.clone());
        }
        Ok(out)
    }

    /// Leg-wise product (x⊗y)(x′⊗y′) = xx′ ⊗ yy′.
    pub fn tensor_mul(&self, other: &Self) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let order = self.spec.order();
        let mut out = Self::zero(&self.spec);
        for (l1, c1) in &self.terms {
            for (l2, c2) in &other.terms {
                // expand leg by leg
                let mut partial: Vec<(Vec<QMonomial>, Cyclotomic)> = vec![(Vec::new(), c1 * c2)];
                for k in 0..K {
                    let products = mul_monomials(order, l1[k], l2[k]);
                    let mut next = Vec::with_capacity(partial.len() * products.len());
                    for (legs, c) in &partial {
                        for (m, p) in &products {
                            let mut legs = legs.clone();
                            legs.push(*m);
                            next.push((legs, c * &qpowers_to_cyclo(&self.spec, p)));
                        }
                    }
                    partial = next;
                }
                for (legs, c) in partial {
                    out.add_term(legs.try_into().expect("K legs"), c);
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, n: u32) -> Self {
        (0..n).fold(Self::one(&self.spec), |acc, _| acc.tensor_mul(self).expect("same spec"))
    }
}

impl TensorElement {
    /// x ⊗ y for arbitrary elements.
    pub fn from_pair(x: &QElement, y: &QElement) -> Result<Self> {
        if x.spec() != y.spec() {
            return Err(Error::SpecMismatch);
        }
        let mut out = Self::zero(x.spec());
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                out.add_term([*m1, *m2], c1 * c2);
            }
        }
        Ok(out)
    }

    /// Σ c · f(x) · g(y) over the pure tensors x ⊗ y.
    pub fn contract(
        &self,
        mut f: impl FnMut(&QMonomial) -> QElement,
        mut g: impl FnMut(&QMonomial) -> QElement,
    ) -> QElement {
        let mut acc = QElement::zero(&self.spec);
        for ([x, y], c) in &self.terms {
            acc = &acc + &(&f(x) * &g(y)).scale(c);
        }
        acc
    }

    /// (f ⊗ id) producing a triple tensor.
    pub fn expand_left(&self, mut f: impl FnMut(&QMonomial) -> TensorElement) -> TripleTensor {
        let mut out = TripleTensor::zero(&self.spec);
        for ([x, y], c) in &self.terms {
            for ([u, v], c2) in &f(x).terms {
                out.add_term([*u, *v, *y], c * c2);
            }
        }
        out
    }

    /// (id ⊗ f) producing a triple tensor.
    pub fn expand_right(&self, mut f: impl FnMut(&QMonomial) -> TensorElement) -> TripleTensor {
        let mut out = TripleTensor::zero(&self.spec);
        for ([x, y], c) in &self.terms {
            for ([u, v], c2) in &f(y).terms {
                out.add_term([*x, *u, *v], c * c2);
            }
        }
        out
    }
}

/// Leg-wise product of two tensors.
pub fn tensor_mul(u: &TensorElement, v: &TensorElement) -> Result<TensorElement> {
    u.tensor_mul(v)
}

impl<const K: usize> Add for &Tensor<K> {
    type Output = Tensor<K>;
    fn add(self, rhs: &Tensor<K>) -> Tensor<K> {
        self.try_add(rhs).expect("root spec mismatch")
    }
}

impl<const K: usize> Sub for &Tensor<K> {
    type Output = Tensor<K>;
    fn sub(self, rhs: &Tensor<K>) -> Tensor<K> {
        let neg = rhs.scale(&-rhs.spec.one());
        self.try_add(&neg).expect("root spec mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: u32, b: u32, c: u32, d: u32) -> QMonomial {
        QMonomial::new(a, b, c, d)
    }

    #[test]
    fn unit_is_neutral() {
        let s = RootSpec::new(3, None).unwrap();
        let x = TensorElement::pure(&s, [m(1, 0, 0, 0), m(0, 2, 0, 1)], s.q_pow(1));
        assert_eq!(TensorElement::one(&s).tensor_mul(&x).unwrap(), x);
    }

    #[test]
    fn ordered_concatenation() {
        let s = RootSpec::new(3, None).unwrap();
        let aa = TensorElement::pure(&s, [m(1, 0, 0, 0), m(1, 0, 0, 0)], s.one());
        let bc = TensorElement::pure(&s, [m(0, 1, 0, 0), m(0, 0, 1, 0)], s.one());
        let expected = TensorElement::pure(&s, [m(1, 1, 0, 0), m(1, 0, 1, 0)], s.one());
        assert_eq!(aa.tensor_mul(&bc).unwrap(), expected);
        // ba = q^{-1} ab and ca = q^{-1} ac
        assert_eq!(bc.tensor_mul(&aa).unwrap(), expected.scale(&s.q_pow(-2)));
    }
}
