//! Laurent polynomials over an exact coefficient ring.
//!
//! A value Σ_{k} c_k X^k with k running over a finite window of integers is
//! stored as the lowest exponent plus a dense coefficient vector. The
//! coefficient ring is abstracted by `RingOps` so the same container serves
//! rationals, cyclotomic numbers, and the √q-extended scalars.

use super::cyclotomic::Cyc;
use super::rational::Rational;
use super::scalar::Scalar;
use num_traits::{One, Zero};

/// Minimal exact-ring interface used by generic polynomial containers.
pub trait RingOps: Clone + PartialEq {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_is_zero(&self) -> bool;

    fn ring_sub(&self, other: &Self) -> Self {
        self.ring_add(&other.ring_neg())
    }
}

impl RingOps for Rational {
    fn ring_zero() -> Self {
        Rational::zero()
    }
    fn ring_one() -> Self {
        Rational::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl RingOps for Cyc {
    fn ring_zero() -> Self {
        Cyc::zero()
    }
    fn ring_one() -> Self {
        Cyc::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl RingOps for Scalar {
    fn ring_zero() -> Self {
        Scalar::zero()
    }
    fn ring_one() -> Self {
        Scalar::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Σ_{k ≥ lo} coeffs[k − lo]·X^k, trimmed so the first and last stored
/// coefficients are nonzero (the zero polynomial stores an empty vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly<C: RingOps> {
    pub lo: i64,
    pub coeffs: Vec<C>,
}

impl<C: RingOps> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(C::ring_one(), 0)
    }

    pub fn monomial(c: C, k: i64) -> Self {
        if c.ring_is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            lo: k,
            coeffs: vec![c],
        }
    }

    pub fn new(lo: i64, coeffs: Vec<C>) -> Self {
        let mut p = LaurentPoly { lo, coeffs };
        p.normalize();
        p
    }

    /// 1 − c·X^k for k > 0 (an Euler-factor denominator block).
    pub fn one_minus(c: C, k: i64) -> Self {
        assert!(k > 0, "Euler block exponent must be positive");
        let mut coeffs = vec![C::ring_zero(); k as usize + 1];
        coeffs[0] = C::ring_one();
        coeffs[k as usize] = c.ring_neg();
        let mut p = LaurentPoly { lo: 0, coeffs };
        p.normalize();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, RingOps::ring_is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self
            .coeffs
            .iter()
            .take_while(|c| c.ring_is_zero())
            .count();
        if lead_zeros > 0 {
            self.coeffs.drain(0..lead_zeros);
            self.lo += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn coeff(&self, k: i64) -> C {
        if k < self.lo || k >= self.lo + self.coeffs.len() as i64 {
            C::ring_zero()
        } else {
            self.coeffs[(k - self.lo) as usize].clone()
        }
    }

    pub fn degree_hi(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.degree_hi().unwrap().max(other.degree_hi().unwrap());
        let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
        for k in lo..=hi {
            coeffs.push(self.coeff(k).ring_add(&other.coeff(k)));
        }
        let mut p = LaurentPoly { lo, coeffs };
        p.normalize();
        p
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(RingOps::ring_neg).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let lo = self.lo + other.lo;
        let mut coeffs =
            vec![C::ring_zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.ring_is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.ring_is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].ring_add(&a.ring_mul(b));
            }
        }
        let mut p = LaurentPoly { lo, coeffs };
        p.normalize();
        p
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.ring_is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|a| a.ring_mul(c)).collect(),
        }
    }

    /// Multiply by X^k.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            lo: self.lo + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitute an exact ring value for X (requires lo ≥ 0 unless the
    /// value is invertible; callers with negative lo pre-shift).
    pub fn eval_ring(&self, x: &C) -> C {
        assert!(self.lo >= 0 || self.is_zero(), "negative exponent needs a unit");
        let mut acc = C::ring_zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.ring_mul(x).ring_add(c);
        }
        let mut lead = C::ring_one();
        for _ in 0..self.lo {
            lead = lead.ring_mul(x);
        }
        acc.ring_mul(&lead)
    }
}
