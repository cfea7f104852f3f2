//! The scalar abstraction shared by the exact linear algebra.
//!
//! Elements of a cyclotomic field know their own order, so there is no
//! context-free zero. Instead every operation is taken relative to an
//! existing element (`zero_like`, `one_like`).

use std::fmt::Debug;

use num_traits::{Inv, One, Zero};

use crate::{Cyclotomic, Rational};

pub trait Field: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow_u32(&self, exp: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn one_like(&self) -> Self {
        Rational::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
}

impl Field for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero(self.order())
    }

    fn one_like(&self) -> Self {
        Cyclotomic::one(self.order())
    }

    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }

    fn is_one(&self) -> bool {
        Cyclotomic::is_one(self)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}
