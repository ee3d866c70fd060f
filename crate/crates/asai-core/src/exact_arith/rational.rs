//! Arbitrary-size rational numbers plus the handful of combinatorial helpers
//! (binomials, integer powers, factorials) that the polynomial layer leans on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar; always stored reduced with positive denominator.
pub type Rational = BigRational;

/// Rational from an integer pair, reducing immediately.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a single integer.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Binomial coefficient with the usual convention: 0 when k < 0 or k > n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// Binomial coefficient as a Rational.
pub fn binomial_rat(n: i64, k: i64) -> Rational {
    BigRational::from_integer(binomial(n, k))
}

/// n! as a BigInt (n ≥ 0).
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n as i64 {
        acc *= BigInt::from(j);
    }
    acc
}

/// x^k for integer k of either sign (x ≠ 0 when k < 0).
pub fn rat_pow(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow::pow(x.clone(), k as usize)
    } else {
        num_traits::pow::pow(x.clone(), (-k) as usize).recip()
    }
}

/// (−1)^k as a Rational.
pub fn neg_one_pow(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

/// Round-to-nearest f64 value of a rational (test/diagnostic use).
pub fn rat_to_f64(x: &Rational) -> f64 {
    let num = x.numer();
    let den = x.denom();
    // Scale down huge operands together so the quotient stays in range.
    let bits = num.bits().max(den.bits());
    if bits <= 52 {
        let n: f64 = num.to_string().parse().unwrap_or(f64::NAN);
        let d: f64 = den.to_string().parse().unwrap_or(f64::NAN);
        return n / d;
    }
    let shift = bits - 52;
    let n = num >> shift;
    let d = den >> shift;
    let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

/// p-adic valuation of a nonzero rational; None for 0 (valuation +∞).
pub fn rat_valuation(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v: i64 = 0;
    let mut n = x.numer().abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = x.denom().clone();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_edge_conventions() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn powers_and_signs() {
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(neg_one_pow(-3), rat_int(-1));
        assert_eq!(neg_one_pow(4), rat_int(1));
    }

    #[test]
    fn valuation_of_rationals() {
        assert_eq!(rat_valuation(&rat(50, 3), 5), Some(2));
        assert_eq!(rat_valuation(&rat(3, 25), 5), Some(-2));
        assert_eq!(rat_valuation(&Rational::zero(), 5), None);
    }
}
