//! Coefficient scalars for local L- and γ-factor computations: elements of a
//! cyclotomic field extended by a formal square root of the residue
//! cardinality q, written a + b√q.
//!
//! The √q part is what the q^{±1/2} twists in Steinberg-type Satake
//! parameters contribute; products that pair two such parameters land back
//! in the cyclotomic part, so exact dual-route comparisons remain exact.

use super::cyclotomic::Cyc;
use super::rational::{rat, rat_int, Rational};
use super::roots::RootOfUnity;
use super::ArithError;
use num_complex::Complex64;
use num_traits::Zero;

/// a + b√q with a, b cyclotomic numbers. The ambient q is carried along and
/// must agree for binary operations unless one side has zero √q part.
#[derive(Debug, Clone)]
pub struct Scalar {
    pub re: Cyc,
    pub rt: Cyc,
    pub q: u64,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            re: Cyc::zero(),
            rt: Cyc::zero(),
            q: 0,
        }
    }

    pub fn one() -> Self {
        Scalar {
            re: Cyc::one(),
            rt: Cyc::zero(),
            q: 0,
        }
    }

    pub fn from_cyc(c: Cyc) -> Self {
        Scalar {
            re: c,
            rt: Cyc::zero(),
            q: 0,
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_cyc(Cyc::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_root(z: &RootOfUnity) -> Self {
        Self::from_cyc(Cyc::from_root(z))
    }

    /// √q itself.
    pub fn sqrt_q(q: u64) -> Self {
        Scalar {
            re: Cyc::zero(),
            rt: Cyc::one(),
            q,
        }
    }

    /// q^{k/2} for integer k (k may be negative).
    pub fn q_half_pow(q: u64, k: i64) -> Self {
        let whole = k.div_euclid(2);
        let frac = k.rem_euclid(2);
        let base = if whole >= 0 {
            rat_int(q as i64).pow(whole as i32)
        } else {
            rat(1, (q as i64).pow((-whole) as u32))
        };
        let c = Cyc::from_rational(base);
        if frac == 0 {
            Self::from_cyc(c)
        } else {
            Scalar {
                re: Cyc::zero(),
                rt: c,
                q,
            }
        }
    }

    fn q_of(&self, other: &Self) -> u64 {
        match (self.rt.is_zero(), other.rt.is_zero()) {
            (true, true) => self.q.max(other.q),
            (false, true) => self.q,
            (true, false) => other.q,
            (false, false) => {
                assert_eq!(self.q, other.q, "mixed √q bases");
                self.q
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let q = self.q_of(other);
        Scalar {
            re: self.re.add(&other.re),
            rt: self.rt.add(&other.rt),
            q,
        }
    }

    pub fn neg(&self) -> Self {
        Scalar {
            re: self.re.neg(),
            rt: self.rt.neg(),
            q: self.q,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let q = self.q_of(other);
        let qc = Cyc::from_rational(rat_int(q.max(1) as i64));
        let re = self
            .re
            .mul(&other.re)
            .add(&self.rt.mul(&other.rt).mul(&qc));
        let rt = self.re.mul(&other.rt).add(&self.rt.mul(&other.re));
        Scalar { re, rt, q }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.rt.is_zero()
    }

    /// (a + b√q)^{−1} = (a − b√q)/(a² − b²q).
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::NonUnit("inverse of zero".into()));
        }
        if self.rt.is_zero() {
            return Ok(Scalar {
                re: self.re.inverse()?,
                rt: Cyc::zero(),
                q: self.q,
            });
        }
        let qc = Cyc::from_rational(rat_int(self.q as i64));
        let norm = self.re.mul(&self.re).sub(&self.rt.mul(&self.rt).mul(&qc));
        if norm.is_zero() {
            // a = ±b√q can only happen when √q is already cyclotomic at the
            // working level; fall back is not needed at desk scale.
            return Err(ArithError::NonUnit(
                "quadratic norm vanished; element not invertible in this form".into(),
            ));
        }
        let ninv = norm.inverse()?;
        Ok(Scalar {
            re: self.re.mul(&ninv),
            rt: self.rt.neg().mul(&ninv),
            q: self.q,
        })
    }

    pub fn pow(&self, k: i64) -> Result<Self, ArithError> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut acc = Scalar::one();
        let mut b = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Scalar {
            re: self.re.scale(r),
            rt: self.rt.scale(r),
            q: self.q,
        }
    }

    /// Some(r) when the scalar is the plain rational r.
    pub fn as_rational(&self) -> Option<Rational> {
        if !self.rt.is_zero() {
            return None;
        }
        self.re.as_rational()
    }

    pub fn to_complex(&self) -> Complex64 {
        let root = if self.q > 0 { (self.q as f64).sqrt() } else { 0.0 };
        self.re.to_complex() + self.rt.to_complex() * root
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.rt == other.rt
    }
}

impl Eq for Scalar {}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl std::ops::Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar::add(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_q_squares_to_q() {
        let r = Scalar::sqrt_q(7);
        assert_eq!(r.mul(&r).as_rational(), Some(rat_int(7)));
    }

    #[test]
    fn half_powers_multiply() {
        let a = Scalar::q_half_pow(5, 3); // 5^{3/2}
        let b = Scalar::q_half_pow(5, -1); // 5^{−1/2}
        assert_eq!(a.mul(&b).as_rational(), Some(rat_int(5)));
        assert_eq!(
            Scalar::q_half_pow(5, -4).as_rational(),
            Some(rat(1, 25))
        );
    }

    #[test]
    fn inverse_with_root_part() {
        // (2 + √5)(2 + √5)^{−1} = 1; norm 4 − 5 = −1.
        let x = Scalar::from_int(2).add(&Scalar::sqrt_q(5));
        let xi = x.inverse().unwrap();
        assert_eq!(x.mul(&xi), Scalar::one());
        assert_eq!(xi, Scalar::sqrt_q(5).sub(&Scalar::from_int(2)));
    }

    #[test]
    fn mixed_root_and_cyclotomic() {
        // (ζ_4·√3)² = −3.
        let z = Scalar::from_root(&RootOfUnity::new(4, 1)).mul(&Scalar::sqrt_q(3));
        assert_eq!(z.mul(&z).as_rational(), Some(rat_int(-3)));
    }

    #[test]
    fn complex_embedding_consistent() {
        let x = Scalar::from_root(&RootOfUnity::new(3, 1)).add(&Scalar::q_half_pow(7, 1));
        let prod = x.mul(&x);
        let direct = x.to_complex() * x.to_complex();
        assert!((prod.to_complex() - direct).norm() < 1e-10);
    }
}
