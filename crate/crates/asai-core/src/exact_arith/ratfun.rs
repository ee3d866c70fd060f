//! Rational functions in X = q^{−s} with exact scalar coefficients.
//!
//! Local L-, ε-, and γ-factors are quotients of Laurent polynomials in q^{−s}.
//! Values at a point are computed with pole detection: the vanishing orders
//! of numerator and denominator at X₀ are compared, common zeros are deflated,
//! and a genuine pole is reported with its multiplicity instead of returning
//! an overflowed quotient.

use super::laurent::LaurentPoly;
use super::rational::{rat, rat_int, Rational};
use super::scalar::Scalar;
use super::ArithError;
use num_complex::Complex64;

/// Relative threshold for treating a numerically evaluated polynomial value
/// as an exact zero of the underlying exact polynomial.
const VANISH_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct RationalFunctionInQs {
    pub num: LaurentPoly<Scalar>,
    pub den: LaurentPoly<Scalar>,
    /// Base of the substitution X = q^{−s}.
    pub q: u64,
}

impl RationalFunctionInQs {
    pub fn one(q: u64) -> Self {
        RationalFunctionInQs {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
            q,
        }
    }

    pub fn from_parts(q: u64, num: LaurentPoly<Scalar>, den: LaurentPoly<Scalar>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RationalFunctionInQs { num, den, q }
    }

    pub fn from_scalar(q: u64, c: Scalar) -> Self {
        RationalFunctionInQs {
            num: LaurentPoly::monomial(c, 0),
            den: LaurentPoly::one(),
            q,
        }
    }

    /// The monomial X^k = q^{−ks}.
    pub fn x_pow(q: u64, k: i64) -> Self {
        RationalFunctionInQs {
            num: LaurentPoly::monomial(Scalar::one(), k),
            den: LaurentPoly::one(),
            q,
        }
    }

    /// The polynomial 1 − c·X^k.
    pub fn euler_block(q: u64, c: Scalar, k: i64) -> Self {
        RationalFunctionInQs {
            num: LaurentPoly::one_minus(c, k),
            den: LaurentPoly::one(),
            q,
        }
    }

    /// The factor 1/(1 − c·X^k).
    pub fn inv_euler_block(q: u64, c: Scalar, k: i64) -> Self {
        RationalFunctionInQs {
            num: LaurentPoly::one(),
            den: LaurentPoly::one_minus(c, k),
            q,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.q, other.q, "mixed q bases");
        RationalFunctionInQs {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
            q: self.q,
        }
    }

    pub fn reciprocal(&self) -> Result<Self, ArithError> {
        if self.num.is_zero() {
            return Err(ArithError::NonUnit("reciprocal of zero function".into()));
        }
        Ok(RationalFunctionInQs {
            num: self.den.clone(),
            den: self.num.clone(),
            q: self.q,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&other.reciprocal()?))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        RationalFunctionInQs {
            num: self.num.scale(c),
            den: self.den.clone(),
            q: self.q,
        }
    }

    pub fn pow(&self, k: i64) -> Result<Self, ArithError> {
        if k < 0 {
            return self.reciprocal()?.pow(-k);
        }
        let mut acc = Self::one(self.q);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    /// Equality as rational functions, by cross multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        self.q == other.q && self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Value at real s, substituting X = q^{−s} ∈ R_{>0}: common zeros of
    /// numerator and denominator at X₀ are deflated before dividing.
    pub fn eval_at_real_s(&self, s: f64) -> Result<Complex64, ArithError> {
        let x0 = (self.q as f64).powf(-s);
        self.eval_at_x(Complex64::new(x0, 0.0))
            .map_err(|e| match e {
                ArithError::PoleAtS { multiplicity, .. } => ArithError::PoleAtS {
                    s: format!("{s}"),
                    multiplicity,
                },
                other => other,
            })
    }

    /// Value at a point X₀ of the X-plane (X₀ ≠ 0).
    pub fn eval_at_x(&self, x0: Complex64) -> Result<Complex64, ArithError> {
        assert!(x0.norm() > 0.0, "X = 0 corresponds to s → +∞");
        if self.num.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let (mut ncs, nlo) = complex_coeffs(&self.num);
        let (mut dcs, dlo) = complex_coeffs(&self.den);
        let ord_n = deflate_order(&mut ncs, x0);
        let ord_d = deflate_order(&mut dcs, x0);
        if ord_d > ord_n {
            return Err(ArithError::PoleAtS {
                s: format!("X = {x0}"),
                multiplicity: (ord_d - ord_n) as u32,
            });
        }
        // Excess numerator zeros make the value exactly zero.
        let nval = if ord_n > ord_d {
            Complex64::new(0.0, 0.0)
        } else {
            horner(&ncs, x0)
        };
        let dval = horner(&dcs, x0);
        let shift = x0.powi((nlo - dlo) as i32);
        Ok(nval / dval * shift)
    }

    /// Exact value at integer s, where X = q^{−s} is rational. Common zeros
    /// are deflated exactly; a residual denominator zero is a pole.
    pub fn eval_exact_at_integer_s(&self, s: i64) -> Result<Scalar, ArithError> {
        let qi = rat_int(self.q as i64);
        let x0 = if s >= 0 {
            rat(1, 1) * qi.pow(s as i32).recip()
        } else {
            qi.pow((-s) as i32)
        };
        let x0s = Scalar::from_rational(x0.clone());
        if self.num.is_zero() {
            return Ok(Scalar::zero());
        }
        let mut n = self.num.coeffs.clone();
        let mut d = self.den.coeffs.clone();
        let (nlo, dlo) = (self.num.lo, self.den.lo);
        let ord_n = deflate_order_exact(&mut n, &x0s);
        let ord_d = deflate_order_exact(&mut d, &x0s);
        if ord_d > ord_n {
            return Err(ArithError::PoleAtS {
                s: format!("{s}"),
                multiplicity: (ord_d - ord_n) as u32,
            });
        }
        let nval = if ord_n > ord_d {
            Scalar::zero()
        } else {
            eval_poly(&n, &x0s)
        };
        let dval = eval_poly(&d, &x0s);
        let prefactor = Scalar::from_rational(rational_pow(&x0, nlo - dlo));
        Ok(nval.mul(&dval.inverse()?).mul(&prefactor))
    }
}

fn rational_pow(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        x.pow(k as i32)
    } else {
        x.pow((-k) as i32).recip()
    }
}

fn complex_coeffs(p: &LaurentPoly<Scalar>) -> (Vec<Complex64>, i64) {
    (p.coeffs.iter().map(Scalar::to_complex).collect(), p.lo)
}

fn horner(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Numeric vanishing order at x0, deflating the coefficient vector in place.
fn deflate_order(coeffs: &mut Vec<Complex64>, x0: Complex64) -> usize {
    let mut order = 0;
    loop {
        if coeffs.len() <= 1 {
            return order;
        }
        let scale: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.norm() * x0.norm().powi(j as i32))
            .sum::<f64>()
            .max(f64::MIN_POSITIVE);
        let val = horner(coeffs, x0);
        if val.norm() > VANISH_REL_TOL * scale {
            return order;
        }
        // Synthetic division by (X − x0).
        let mut quo = vec![Complex64::new(0.0, 0.0); coeffs.len() - 1];
        let mut carry = Complex64::new(0.0, 0.0);
        for j in (0..coeffs.len()).rev() {
            let v = coeffs[j] + carry * x0;
            if j > 0 {
                quo[j - 1] = v;
                carry = v;
            }
        }
        *coeffs = quo;
        order += 1;
    }
}

/// Exact vanishing order at x0 over the scalar ring.
fn deflate_order_exact(coeffs: &mut Vec<Scalar>, x0: &Scalar) -> usize {
    let mut order = 0;
    loop {
        if coeffs.len() <= 1 {
            return order;
        }
        if !eval_poly(coeffs, x0).is_zero() {
            return order;
        }
        let mut quo = vec![Scalar::zero(); coeffs.len() - 1];
        let mut carry = Scalar::zero();
        for j in (0..coeffs.len()).rev() {
            let v = coeffs[j].add(&carry.mul(x0));
            if j > 0 {
                quo[j - 1] = v.clone();
                carry = v;
            }
        }
        *coeffs = quo;
        order += 1;
    }
}

fn eval_poly(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}
