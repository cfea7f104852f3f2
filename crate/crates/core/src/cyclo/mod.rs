//! Exact arithmetic in cyclotomic fields and the choice of the root of unity q.

mod element;
pub mod poly;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub use element::Cyclotomic;
pub use poly::{cyclotomic_polynomial, euler_phi, IntPoly};

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityCase {
    Odd,
    Even,
}

/// Which primitive root of unity plays the role of q.
///
/// For odd `l` the order is `l`, for even `l` it is `2l`; in both cases the
/// order is not 2 mod 4. The only other order accepted is `2l` for odd `l`,
/// which exists solely for the closure diagnostic and is reported as not
/// admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSpec {
    l: u32,
    order: u32,
    zeta_exponent: u32,
}

impl RootSpec {
    /// Standard root for `l` with q = ζ_N^{zeta_exponent} (default exponent 1).
    pub fn new(l: i64, zeta_exponent: Option<i64>) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidL(l));
        }
        let l = u32::try_from(l).map_err(|_| Error::OutOfRange(format!("l = {l}")))?;
        let order = if l % 2 == 1 { l } else { 2 * l };
        Self::build(l, order, zeta_exponent)
    }

    /// Like [`RootSpec::new`] but with an explicit order, which must be `l`
    /// (odd `l`) or `2l`.
    pub fn with_order(l: i64, order: i64, zeta_exponent: Option<i64>) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidL(l));
        }
        let l = u32::try_from(l).map_err(|_| Error::OutOfRange(format!("l = {l}")))?;
        let valid = (l % 2 == 1 && order == l as i64) || order == 2 * l as i64;
        if !valid {
            return Err(Error::InvalidOrder {
                l,
                order: order.clamp(0, u32::MAX as i64) as u32,
            });
        }
        Self::build(l, order as u32, zeta_exponent)
    }

    fn build(l: u32, order: u32, zeta_exponent: Option<i64>) -> Result<Self> {
        let e = zeta_exponent.unwrap_or(1);
        let reduced = e.rem_euclid(order as i64) as u32;
        if reduced == 0 || reduced.gcd(&order) != 1 {
            return Err(Error::ZetaNotCoprime {
                exponent: e,
                order,
            });
        }
        Ok(RootSpec {
            l,
            order,
            zeta_exponent: reduced,
        })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// The order N of q.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn zeta_exponent(&self) -> u32 {
        self.zeta_exponent
    }

    pub fn parity_case(&self) -> ParityCase {
        if self.l % 2 == 1 {
            ParityCase::Odd
        } else {
            ParityCase::Even
        }
    }

    /// True when the order of q is not 2 mod 4, i.e. the Frobenius and
    /// free-module results apply.
    pub fn is_admissible(&self) -> bool {
        self.order % 4 != 2
    }

    pub fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::InadmissibleRoot {
                l: self.l,
                order: self.order,
            })
        }
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic::zero(self.order)
    }

    pub fn one(&self) -> Cyclotomic {
        Cyclotomic::one(self.order)
    }

    pub fn scalar(&self, n: i64) -> Cyclotomic {
        Cyclotomic::from_int(self.order, n)
    }

    /// q^k for any integer k.
    pub fn q_pow(&self, k: i64) -> Cyclotomic {
        zeta_pow(self, k)
    }

    /// Expresses `x` as coordinates in the basis 1, q, …, q^{φ(N)-1}.
    pub fn q_coordinates(&self, x: &Cyclotomic) -> Vec<crate::Rational> {
        let inverse = mod_inverse(self.zeta_exponent as i64, self.order as i64);
        x.galois(inverse)
            .expect("inverse exponent is coprime")
            .coeffs()
            .to_vec()
    }
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    let g = a.extended_gcd(&m);
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(m)
}

/// q^k = ζ_N^{e·k mod N} for the spec's exponent e.
pub fn zeta_pow(spec: &RootSpec, k: i64) -> Cyclotomic {
    let n = spec.order as i64;
    let e = spec.zeta_exponent as i64;
    Cyclotomic::zeta_power(spec.order, (k.rem_euclid(n) * e).rem_euclid(n))
}

/// Coefficient of (bc)^j in a^k d^k = ∏_{i=1}^{k} (1 + q^{2i-1} bc).
///
/// Closed form q^{j²} ∏_{r=j+1}^{k}(q^{2r}-1) / ∏_{s=1}^{k-j}(q^{2s}-1).
/// Factors shared by numerator and denominator cancel formally before
/// evaluation, so the surviving denominator factors have index at most
/// min(j, k-j) < l and never vanish.
pub fn p_coeff(spec: &RootSpec, k: i64, j: i64) -> Result<Cyclotomic> {
    let l = spec.l as i64;
    if !(0 <= j && j <= k && k <= l) {
        return Err(Error::OutOfRange(format!("p_coeff(k = {k}, j = {j}) with l = {l}")));
    }
    let one = spec.one();
    let factor = |r: i64| &spec.q_pow(2 * r) - &one;

    let num_lo = (j + 1).max(k - j + 1);
    let mut num = spec.q_pow(j * j);
    for r in num_lo..=k {
        num = num * factor(r);
        if num.is_zero() {
            return Ok(num);
        }
    }
    let mut den = spec.one();
    for s in 1..=j.min(k - j) {
        den = den * factor(s);
    }
    num.try_div(&den).map_err(|_| Error::VanishingDenominator)
}

/// Gaussian binomial coefficient [n choose k]_t evaluated in any field.
pub fn gauss_binomial<F: Field>(n: i64, k: i64, t: &F) -> Result<F> {
    if !(0 <= k && k <= n) {
        return Err(Error::OutOfRange(format!("gauss_binomial({n}, {k})")));
    }
    let one = t.one_like();
    let mut num = one.clone();
    let mut den = one.clone();
    for i in 1..=k {
        num = num.mul_ref(&t.pow_u32((n - k + i) as u32).sub_ref(&one));
        den = den.mul_ref(&t.pow_u32(i as u32).sub_ref(&one));
    }
    let inv = den.try_inv().ok_or(Error::VanishingDenominator)?;
    Ok(num.mul_ref(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn root_spec_orders() {
        assert_eq!(RootSpec::new(3, None).unwrap().order(), 3);
        assert_eq!(RootSpec::new(2, None).unwrap().order(), 4);
        assert_eq!(RootSpec::new(6, None).unwrap().order(), 12);
        assert_eq!(RootSpec::new(1, None), Err(Error::InvalidL(1)));
        assert!(RootSpec::new(4, Some(2)).is_err());
        assert_eq!(RootSpec::new(5, Some(-1)).unwrap().zeta_exponent(), 4);
        for l in 2..20 {
            assert!(RootSpec::new(l, None).unwrap().is_admissible());
        }
    }

    #[test]
    fn with_order_variants() {
        let s = RootSpec::with_order(3, 6, None).unwrap();
        assert!(!s.is_admissible());
        assert!(RootSpec::with_order(2, 2, None).is_err());
        assert!(RootSpec::with_order(3, 9, None).is_err());
    }

    #[test]
    fn zeta_pow_examples() {
        let s3 = RootSpec::new(3, None).unwrap();
        assert!(zeta_pow(&s3, 0).is_one());
        assert!(zeta_pow(&s3, 3).is_one());
        let s2 = RootSpec::new(2, None).unwrap();
        assert_eq!(zeta_pow(&s2, 2), s2.scalar(-1));
        assert_eq!(zeta_pow(&s2, -1), -zeta_pow(&s2, 1));
    }

    #[test]
    fn p_coeff_examples() {
        let s3 = RootSpec::new(3, None).unwrap();
        let q = s3.q_pow(1);
        assert_eq!(p_coeff(&s3, 2, 1).unwrap(), &s3.one() + &q);
        assert!(p_coeff(&s3, 3, 1).unwrap().is_zero());
        for k in 0..=3 {
            assert!(p_coeff(&s3, k, 0).unwrap().is_one());
        }
        assert!(p_coeff(&s3, 4, 0).is_err());
        assert!(p_coeff(&s3, 1, 2).is_err());
    }

    #[test]
    fn gauss_binomial_examples() {
        let r = |n: i64| Rational::from_integer(n.into());
        assert_eq!(gauss_binomial(5, 0, &r(7)).unwrap(), r(1));
        assert_eq!(gauss_binomial(2, 1, &r(5)).unwrap(), r(6));
        assert_eq!(gauss_binomial(4, 2, &r(2)).unwrap(), r(35));
        let s3 = RootSpec::new(3, None).unwrap();
        assert!(gauss_binomial(3, 1, &s3.q_pow(2)).unwrap().is_zero());
        assert_eq!(
            gauss_binomial(2, 1, &r(1)),
            Err(Error::VanishingDenominator)
        );
    }

    #[test]
    fn q_coordinates_with_conjugate_root() {
        let s = RootSpec::new(5, Some(2)).unwrap();
        let x = &s.q_pow(1) + &s.q_pow(3).scale(&Rational::new(1.into(), 2.into()));
        let coords = s.q_coordinates(&x);
        let rebuilt = coords
            .iter()
            .enumerate()
            .fold(s.zero(), |acc, (i, c)| acc + s.q_pow(i as i64).scale(c));
        assert_eq!(rebuilt, x);
    }
}
