//! Elements of Q(ζ_N) stored as rational vectors in the power basis
//! 1, ζ, …, ζ^{φ(N)-1} of Q[x]/Φ_N.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{cyclotomic_polynomial, RatPoly};
use crate::error::{Error, Result};
use crate::Rational;

/// Per-order reduction data, shared between all elements of one field.
#[derive(Debug)]
struct FieldData {
    phi: usize,
    modulus: RatPoly,
    /// `fold[t]` is x^{φ+t} reduced modulo Φ_N, for t in 0..φ-1.
    fold: Vec<Vec<BigInt>>,
    /// `powers[k]` is ζ^k reduced modulo Φ_N, for k in 0..N.
    powers: Vec<Vec<BigInt>>,
}

impl FieldData {
    fn build(order: u32) -> FieldData {
        let phi_poly = cyclotomic_polynomial(order);
        let phi = phi_poly.degree().unwrap();
        // x^phi = -(Φ_N - x^phi)
        let mut cur: Vec<BigInt> = phi_poly.0[..phi].iter().map(|c| -c).collect();
        let shift = |v: &Vec<BigInt>| -> Vec<BigInt> {
            // multiply by x and reduce once
            let mut out = vec![BigInt::zero(); phi];
            let top = v[phi - 1].clone();
            for i in (1..phi).rev() {
                out[i] = v[i - 1].clone();
            }
            if !top.is_zero() {
                for (o, p) in out.iter_mut().zip(&phi_poly.0) {
                    *o -= &top * p;
                }
            }
            out
        };
        let mut fold = Vec::with_capacity(phi.saturating_sub(1));
        for _ in 0..phi.saturating_sub(1) {
            fold.push(cur.clone());
            cur = shift(&cur);
        }
        let mut powers = Vec::with_capacity(order as usize);
        let mut p = vec![BigInt::zero(); phi];
        p[0] = BigInt::one();
        for _ in 0..order {
            powers.push(p.clone());
            p = shift(&p);
        }
        FieldData {
            phi,
            modulus: RatPoly::from_int(&phi_poly),
            fold,
            powers,
        }
    }
}

fn field_data(order: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().unwrap().get(&order) {
        return Arc::clone(d);
    }
    let built = Arc::new(FieldData::build(order));
    Arc::clone(cache.lock().unwrap().entry(order).or_insert(built))
}

/// An exact element of the cyclotomic field Q(ζ_N).
///
/// Arithmetic operators panic when the operands live in fields of different
/// order; the `try_*` methods report that as [`Error::OrderMismatch`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi = field_data(order).phi;
        Cyclotomic {
            order,
            coeffs: vec![Rational::zero(); phi],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u32, value: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = value;
        z
    }

    pub fn from_int(order: u32, value: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(value.into()))
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_power(order: u32, k: i64) -> Self {
        let data = field_data(order);
        let idx = k.rem_euclid(order as i64) as usize;
        Cyclotomic {
            order,
            coeffs: data.powers[idx]
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        }
    }

    /// Builds an element from power-basis coordinates. Missing trailing
    /// coordinates are zero; extra coordinates are an error.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let mut z = Self::zero(order);
        if coeffs.len() > z.coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a field of degree {}",
                coeffs.len(),
                z.coeffs.len()
            )));
        }
        for (slot, c) in z.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        Ok(z)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order, other.order))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let phi = self.coeffs.len();
        if let Some(r) = self.as_rational() {
            return Ok(other.scale(r));
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(r));
        }
        let mut raw = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let data = field_data(self.order);
        let mut coeffs: Vec<Rational> = raw.drain(..phi).collect();
        for (t, high) in raw.iter().enumerate() {
            if high.is_zero() {
                continue;
            }
            for (slot, f) in coeffs.iter_mut().zip(&data.fold[t]) {
                if !f.is_zero() {
                    *slot += high * Rational::from_integer(f.clone());
                }
            }
        }
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Inverse via the extended Euclidean algorithm against Φ_N.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, r.recip()));
        }
        let data = field_data(self.order);
        let mut r0 = data.modulus.clone();
        let mut r1 = RatPoly::new(self.coeffs.clone());
        let mut s0 = RatPoly::new(Vec::new());
        let mut s1 = RatPoly::new(vec![Rational::one()]);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant since Φ_N is irreducible
        debug_assert_eq!(r0.degree(), Some(0));
        let c = r0.0[0].recip();
        let (_, s) = s0.div_rem(&data.modulus);
        let mut out = Self::zero(self.order);
        for (slot, v) in out.coeffs.iter_mut().zip(s.0) {
            *slot = v * &c;
        }
        Ok(out)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            Ok(crate::field::Field::pow_u32(&self.inv()?, exp.unsigned_abs() as u32))
        } else {
            Ok(crate::field::Field::pow_u32(self, exp as u32))
        }
    }

    /// Applies the field automorphism ζ ↦ ζ^k (k coprime to N).
    pub fn galois(&self, k: i64) -> Result<Self> {
        if (k.rem_euclid(self.order as i64) as u32).gcd(&self.order) != 1 {
            return Err(Error::ZetaNotCoprime {
                exponent: k,
                order: self.order,
            });
        }
        let mut out = Self::zero(self.order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out += &Self::zeta_power(self.order, k * i as i64).scale(c);
            }
        }
        Ok(out)
    }

    /// Numerical value at ζ_N = exp(2πi/N). Diagnostic only.
    pub fn approx_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let angle = 2.0 * std::f64::consts::PI * i as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({}; ", self.order)?;
        f.debug_list().entries(self.coeffs.iter().map(|c| c.to_string())).finish()?;
        write!(f, ")")
    }
}

impl fmt::Display for Cyclotomic {
    /// Polynomial in `z` = ζ_N, lowest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $try:ident) => {
        impl $Trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$try(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl $Trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::poly::{cyclotomic_polynomial, euler_phi};

    fn z(order: u32, k: i64) -> Cyclotomic {
        Cyclotomic::zeta_power(order, k)
    }

    #[test]
    fn order_three_relation() {
        // ζ + ζ² = −1 since Φ_3(ζ) = 0
        assert_eq!(z(3, 1) + z(3, 2), Cyclotomic::from_int(3, -1));
    }

    #[test]
    fn order_four_square() {
        assert_eq!(z(4, 1) * z(4, 1), Cyclotomic::from_int(4, -1));
    }

    #[test]
    fn inverse_of_one_and_zero() {
        assert_eq!(Cyclotomic::one(7).inv().unwrap(), Cyclotomic::one(7));
        assert_eq!(Cyclotomic::zero(7).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_orders_rejected() {
        assert_eq!(
            Cyclotomic::one(3).try_add(&Cyclotomic::one(4)),
            Err(Error::OrderMismatch(3, 4))
        );
        assert!(Cyclotomic::one(3).try_mul(&Cyclotomic::one(5)).is_err());
    }

    #[test]
    fn inverse_of_non_rational() {
        for n in [3u32, 4, 5, 8, 12, 15] {
            let x = z(n, 1) + Cyclotomic::from_int(n, 2) + z(n, 3).scale(&Rational::new(1.into(), 3.into()));
            let inv = x.inv().unwrap();
            assert!((x * inv).is_one(), "order {n}");
        }
    }

    #[test]
    fn primitivity() {
        for n in 1..=24u32 {
            assert!(z(n, n as i64).is_one());
            for m in 1..n as i64 {
                assert!(!z(n, m).is_one(), "ζ_{n}^{m} = 1");
            }
        }
    }

    #[test]
    fn phi_vanishes_at_zeta() {
        for n in 1..=24u32 {
            let phi = cyclotomic_polynomial(n);
            let mut acc = Cyclotomic::zero(n);
            for (e, c) in phi.0.iter().enumerate() {
                acc += &z(n, e as i64).scale(&Rational::from_integer(c.clone()));
            }
            assert!(acc.is_zero(), "Φ_{n}(ζ) ≠ 0");
            assert_eq!(acc.degree(), euler_phi(n) as usize);
        }
    }

    #[test]
    fn galois_action() {
        // σ_2 on Q(ζ_5) maps ζ to ζ²
        assert_eq!(z(5, 1).galois(2).unwrap(), z(5, 2));
        assert!(z(6, 1).galois(3).is_err());
        let x = z(7, 1) + z(7, 3);
        let y = z(7, 2) * z(7, 5);
        assert_eq!(
            (&x * &y).galois(3).unwrap(),
            x.galois(3).unwrap() * y.galois(3).unwrap()
        );
    }

    #[test]
    fn approx_examples() {
        let one = Cyclotomic::one(5).approx_complex();
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let i = z(4, 1).approx_complex();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let s = (z(3, 1) + z(3, 2)).approx_complex();
        assert!((s - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn negative_powers() {
        let x = z(9, 1) + Cyclotomic::one(9);
        assert!((x.pow(-3).unwrap() * x.pow(3).unwrap()).is_one());
    }
}
