//! Exact arithmetic in cyclotomic fields, represented as Q[x]/(x^m − 1) with
//! equality tested modulo the m-th cyclotomic polynomial.
//!
//! An element of level m is a dense coefficient vector c_0..c_{m−1} standing
//! for Σ c_j ζ_m^j with ζ_m = e^{2πi/m}. Mixed-level operations lift both
//! operands to the least common multiple of their levels, so sums and
//! products of arbitrary roots of unity stay exact.

use super::rational::{rat_int, rat_to_f64, Rational};
use super::roots::RootOfUnity;
use super::ArithError;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Element of Q(ζ_m) presented in the group-ring basis 1, ζ_m, …, ζ_m^{m−1}.
#[derive(Debug, Clone)]
pub struct Cyc {
    pub level: u64,
    pub coeffs: Vec<Rational>,
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u64, Vec<Rational>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients (constant first) of the m-th cyclotomic polynomial, computed
/// by dividing x^m − 1 by the cyclotomic polynomials of proper divisors.
pub fn cyclotomic_polynomial(m: u64) -> Vec<Rational> {
    if let Some(hit) = CYCLOTOMIC_CACHE.lock().unwrap().get(&m) {
        return hit.clone();
    }
    let result = if m == 1 {
        vec![rat_int(-1), rat_int(1)]
    } else {
        let mut num = vec![Rational::zero(); m as usize + 1];
        num[0] = rat_int(-1);
        num[m as usize] = rat_int(1);
        let mut acc = num;
        for d in 1..m {
            if m % d == 0 {
                let phi_d = cyclotomic_polynomial(d);
                acc = poly_div_exact(&acc, &phi_d);
            }
        }
        acc
    };
    CYCLOTOMIC_CACHE
        .lock()
        .unwrap()
        .insert(m, result.clone());
    result
}

fn poly_deg(a: &[Rational]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

/// Exact division of polynomials over Q; panics on a nonzero remainder.
fn poly_div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (q, r) = poly_divmod(a, b);
    assert!(poly_deg(&r).is_none(), "inexact polynomial division");
    q
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem: Vec<Rational> = a.to_vec();
    let mut quo = vec![Rational::zero(); a.len().saturating_sub(db) + 1];
    loop {
        let da = match poly_deg(&rem) {
            Some(d) if d >= db => d,
            _ => break,
        };
        let factor = &rem[da] / &lead;
        quo[da - db] = factor.clone();
        for j in 0..=db {
            if !b[j].is_zero() {
                let sub = &factor * &b[j];
                rem[da - db + j] = &rem[da - db + j] - &sub;
            }
        }
    }
    quo.truncate(poly_deg(&quo).map_or(0, |d| d + 1));
    rem.truncate(poly_deg(&rem).map_or(0, |d| d + 1));
    (quo, rem)
}

impl Cyc {
    pub fn zero() -> Self {
        Cyc {
            level: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyc {
            level: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyc {
            level: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_root(z: &RootOfUnity) -> Self {
        let mut coeffs = vec![Rational::zero(); z.order as usize];
        coeffs[z.exponent as usize] = Rational::one();
        Cyc {
            level: z.order,
            coeffs,
        }
    }

    /// Re-express at a level M that is a multiple of the current one.
    pub fn lift_to(&self, target: u64) -> Self {
        assert!(target % self.level == 0, "target level must be a multiple");
        let k = (target / self.level) as usize;
        let mut coeffs = vec![Rational::zero(); target as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[j * k] = c.clone();
            }
        }
        Cyc {
            level: target,
            coeffs,
        }
    }

    fn common_level(&self, other: &Self) -> (Self, Self) {
        let m = self.level.lcm(&other.level);
        (self.lift_to(m), other.lift_to(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.common_level(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x = &*x + y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        Cyc {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common_level(other);
        let m = a.level as usize;
        let mut coeffs = vec![Rational::zero(); m];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = (i + j) % m;
                coeffs[k] = &coeffs[k] + &(x * y);
            }
        }
        Cyc {
            level: a.level,
            coeffs,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyc {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex conjugation ζ ↦ ζ^{−1}.
    pub fn conj(&self) -> Self {
        let m = self.level as usize;
        let mut coeffs = vec![Rational::zero(); m];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[(m - j) % m] = c.clone();
        }
        Cyc {
            level: self.level,
            coeffs,
        }
    }

    /// Canonical representative: remainder modulo the level-m cyclotomic
    /// polynomial, degree < φ(m).
    fn reduced(&self) -> Vec<Rational> {
        let phi = cyclotomic_polynomial(self.level);
        let (_, r) = poly_divmod(&self.coeffs, &phi);
        r
    }

    pub fn is_zero(&self) -> bool {
        poly_deg(&self.reduced()).is_none()
    }

    /// Some(r) when the element equals the rational number r.
    pub fn as_rational(&self) -> Option<Rational> {
        let r = self.reduced();
        match poly_deg(&r) {
            None => Some(Rational::zero()),
            Some(0) => Some(r[0].clone()),
            Some(_) => None,
        }
    }

    /// Inverse via the extended Euclidean algorithm against the cyclotomic
    /// polynomial (irreducible over Q, so every nonzero element is a unit).
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::NonUnit("inverse of zero".into()));
        }
        let phi = cyclotomic_polynomial(self.level);
        let a = self.reduced();
        let (g, u) = poly_ext_gcd(&a, &phi);
        // g is a nonzero constant since Φ is irreducible and a ≢ 0.
        let dg = poly_deg(&g).expect("gcd of nonzero elements");
        assert_eq!(dg, 0, "cyclotomic polynomial must be coprime to a unit");
        let ginv = g[0].recip();
        let mut coeffs = vec![Rational::zero(); self.level as usize];
        for (j, c) in u.iter().enumerate() {
            if !c.is_zero() {
                coeffs[j] = c * &ginv;
            }
        }
        Ok(Cyc {
            level: self.level,
            coeffs,
        })
    }

    pub fn pow(&self, k: i64) -> Result<Self, ArithError> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut acc = Cyc::one();
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

    pub fn to_complex(&self) -> Complex64 {
        let m = self.level as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / m;
            acc += Complex64::new(theta.cos(), theta.sin()) * rat_to_f64(c);
        }
        acc
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl Eq for Cyc {}

/// Extended gcd over Q[x]: returns (g, u) with u·a ≡ g mod b.
fn poly_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut u0 = vec![Rational::one()];
    let mut u1 = vec![Rational::zero()];
    while poly_deg(&r1).is_some() {
        let (q, rem) = poly_divmod(&r0, &r1);
        let qu1 = poly_mul(&q, &u1);
        let u2 = poly_sub(&u0, &qu1);
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = u2;
    }
    (r0, u0)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect()
}
