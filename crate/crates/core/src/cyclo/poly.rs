//! Dense univariate polynomials over Z and Q, stored lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        let mut p = IntPoly(coeffs.iter().map(|&c| BigInt::from(c)).collect());
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Exact division by a monic polynomial. Panics if the divisor is not
    /// monic or the division leaves a remainder.
    fn div_exact_monic(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("divisor must be nonzero");
        assert!(divisor.0[dd].is_one(), "divisor must be monic");
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            assert!(rem.iter().all(Zero::is_zero), "inexact division");
            return IntPoly(Vec::new());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let lead = rem[i + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, c) in divisor.0.iter().enumerate() {
                rem[i + j] -= &lead * c;
            }
            quot[i] = lead;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact division");
        let mut q = IntPoly(quot);
        q.trim();
        q
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &x + c)
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_coeff = !abs.is_one() || e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn divisors(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by
/// `Φ_d` for every proper divisor `d` of `n`.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u32) -> IntPoly {
    assert!(n >= 1, "cyclotomic_polynomial: n must be positive");
    if n == 1 {
        return IntPoly::from_i64(&[-1, 1]);
    }
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n as usize] = BigInt::one();
    let mut result = IntPoly(coeffs);
    for d in divisors(n) {
        if d < n {
            result = result.div_exact_monic(&cyclotomic_polynomial(d));
        }
    }
    result
}

/// Rational polynomial used by the extended Euclidean inverse.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RatPoly(pub Vec<Rational>);

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly(coeffs)
    }

    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly::new(p.0.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn sub(&self, rhs: &RatPoly) -> RatPoly {
        let n = self.0.len().max(rhs.0.len());
        let zero = Rational::zero();
        RatPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) - rhs.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.0[dd].recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (RatPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let factor = &rem[i + dd] * &lead_inv;
            if factor.is_zero() {
                continue;
            }
            for (j, c) in divisor.0.iter().enumerate() {
                rem[i + j] -= &factor * c;
            }
            quot[i] = factor;
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(
            cyclotomic_polynomial(12),
            IntPoly::from_i64(&[1, 0, -1, 0, 1])
        );
    }

    #[test]
    fn degrees_match_totient() {
        for n in 1..=30 {
            assert_eq!(
                cyclotomic_polynomial(n).degree(),
                Some(euler_phi(n) as usize),
                "n = {n}"
            );
        }
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_1() {
        for n in 1..=24u32 {
            // evaluate at a few integers: prod_{d|n} Φ_d(x) = x^n - 1
            for x in [2i64, 3, -2] {
                let prod: BigInt = divisors(n)
                    .into_iter()
                    .map(|d| cyclotomic_polynomial(d).eval_i64(x))
                    .product();
                assert_eq!(prod, BigInt::from(x).pow(n) - 1);
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(cyclotomic_polynomial(1).to_string(), "x - 1");
        assert_eq!(cyclotomic_polynomial(3).to_string(), "x^2 + x + 1");
    }

    #[test]
    fn rat_div_rem() {
        let r = |n: i64| Rational::from_integer(n.into());
        let a = RatPoly::new(vec![r(-1), r(0), r(0), r(1)]);
        let b = RatPoly::new(vec![r(-1), r(1)]);
        let (q, rem) = a.div_rem(&b);
        assert!(rem.is_zero());
        assert_eq!(q, RatPoly::new(vec![r(1), r(1), r(1)]));
    }
}
