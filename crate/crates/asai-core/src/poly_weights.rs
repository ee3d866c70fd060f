//! Homogeneous-polynomial machinery for archimedean weight constants.
//!
//! The pieces assembled here: the perfect pairing [·,·]_n on binary forms of
//! degree n, the determinant-product polynomials P_{−2}, P_0, P_2 and their
//! coordinates v_i(j) with respect to the dual basis in (U,V), the
//! contraction Υ^α built from ∇ = ∂²/∂X∂Y_c − ∂²/∂X_c∂Y, and the constants
//! C(α,i) that carry all of this into the archimedean zeta integral. C(α,i)
//! is computed along two independent routes, a definitional pairing route
//! and a binomial closed form, and the two are asserted to agree exactly.

use crate::exact_arith::{binomial, ArithError, Rational, RootOfUnity};
use crate::exact_arith::laurent::RingOps;
use crate::exact_arith::rational::{binomial_rat, factorial, neg_one_pow, rat_int};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Exact Gaussian rational a + b√−1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn zero() -> Self {
        GaussRat {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussRat {
            re: Rational::one(),
            im: Rational::zero(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        GaussRat {
            re: r,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// √−1^k.
    pub fn i_power(k: i64) -> Self {
        let k = k.rem_euclid(4);
        match k {
            0 => Self::one(),
            1 => GaussRat {
                re: Rational::zero(),
                im: Rational::one(),
            },
            2 => Self::from_int(-1),
            _ => GaussRat {
                re: Rational::zero(),
                im: rat_int(-1),
            },
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussRat {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn neg(&self) -> Self {
        GaussRat {
            re: -&self.re,
            im: -&self.im,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussRat {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Some(r) for purely real values.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.im.is_zero() {
            Some(self.re.clone())
        } else {
            None
        }
    }

    /// Decompose as magnitude · √−1^k with rational magnitude, when the
    /// value lies on one of the four half-axes.
    pub fn as_i_power_times_rational(&self) -> Option<(Rational, RootOfUnity)> {
        if self.im.is_zero() {
            let root = if self.re.is_negative() {
                RootOfUnity::new(2, 1)
            } else {
                RootOfUnity::one()
            };
            return Some((self.re.abs(), root));
        }
        if self.re.is_zero() {
            let root = if self.im.is_negative() {
                RootOfUnity::new(4, 3)
            } else {
                RootOfUnity::new(4, 1)
            };
            return Some((self.im.abs(), root));
        }
        None
    }
}

impl RingOps for GaussRat {
    fn ring_zero() -> Self {
        GaussRat::zero()
    }
    fn ring_one() -> Self {
        GaussRat::one()
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

/// Variable indices of the six-variable polynomial algebra.
pub const VX: usize = 0;
pub const VY: usize = 1;
pub const VXC: usize = 2;
pub const VYC: usize = 3;
pub const VU: usize = 4;
pub const VV: usize = 5;

const VAR_NAMES: [&str; 6] = ["X", "Y", "X_c", "Y_c", "U", "V"];

/// Sparse polynomial in (X, Y, X_c, Y_c, U, V) with Gaussian-rational
/// coefficients, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomogeneousPoly {
    pub terms: BTreeMap<[u8; 6], GaussRat>,
}

impl HomogeneousPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert([0; 6], c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn var(idx: usize) -> Self {
        let mut key = [0u8; 6];
        key[idx] = 1;
        let mut p = Self::zero();
        p.terms.insert(key, GaussRat::one());
        p
    }

    pub fn monomial(exponents: [u8; 6], c: GaussRat) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            let entry = out.terms.entry(*k).or_insert_with(GaussRat::zero);
            *entry = entry.add(v);
            if entry.is_zero() {
                out.terms.remove(k);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        HomogeneousPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let mut key = [0u8; 6];
                for i in 0..6 {
                    key[i] = ka[i]
                        .checked_add(kb[i])
                        .expect("exponent overflow");
                }
                let prod = va.mul(vb);
                let entry = out.terms.entry(key).or_insert_with(GaussRat::zero);
                *entry = entry.add(&prod);
                if entry.is_zero() {
                    out.terms.remove(&key);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HomogeneousPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v.mul(c)))
                .collect(),
        }
    }

    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            if k[idx] == 0 {
                continue;
            }
            let mut key = *k;
            key[idx] -= 1;
            let c = v.scale(&rat_int(k[idx] as i64));
            let entry = out.terms.entry(key).or_insert_with(GaussRat::zero);
            *entry = entry.add(&c);
        }
        out
    }

    /// Coefficient of U^a·V^b: the sub-polynomial in the remaining variables.
    pub fn coeff_uv(&self, a: u8, b: u8) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            if k[VU] == a && k[VV] == b {
                let mut key = *k;
                key[VU] = 0;
                key[VV] = 0;
                out.terms.insert(key, v.clone());
            }
        }
        out
    }

    /// Substitute X_c ← X and Y_c ← Y.
    pub fn substitute_conjugates(&self) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            let mut key = *k;
            key[VX] += key[VXC];
            key[VY] += key[VYC];
            key[VXC] = 0;
            key[VYC] = 0;
            let entry = out.terms.entry(key).or_insert_with(GaussRat::zero);
            *entry = entry.add(v);
            if entry.is_zero() {
                out.terms.remove(&key);
            }
        }
        out
    }

    /// Total degree in the given variable set when homogeneous in it.
    pub fn homogeneous_degree_in(&self, vars: &[usize]) -> Option<u32> {
        let mut deg: Option<u32> = None;
        for k in self.terms.keys() {
            let d: u32 = vars.iter().map(|&i| k[i] as u32).sum();
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// True when only the listed variables occur.
    pub fn uses_only(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|k| {
            (0..6).all(|i| vars.contains(&i) || k[i] == 0)
        })
    }

    pub fn describe_variables(&self) -> String {
        let mut used: Vec<&str> = Vec::new();
        for i in 0..6 {
            if self.terms.keys().any(|k| k[i] > 0) {
                used.push(VAR_NAMES[i]);
            }
        }
        used.join(", ")
    }
}

/// The perfect pairing on binary forms of degree n in (X, Y):
/// [X^aY^{n−a}, X^bY^{n−b}] = (−1)^{n−a}·binom(n,a)^{−1} when a + b = n.
pub fn pairing_n(
    p: &HomogeneousPoly,
    q: &HomogeneousPoly,
    n: u32,
) -> Result<GaussRat, ArithError> {
    for (label, f) in [("left", p), ("right", q)] {
        if !f.uses_only(&[VX, VY]) {
            return Err(ArithError::InvalidInput(format!(
                "{label} pairing argument involves {}",
                f.describe_variables()
            )));
        }
        if !f.is_zero() && f.homogeneous_degree_in(&[VX, VY]) != Some(n) {
            return Err(ArithError::InvalidInput(format!(
                "{label} pairing argument is not homogeneous of degree {n}"
            )));
        }
    }
    let mut acc = GaussRat::zero();
    for (ka, va) in &p.terms {
        let a = ka[VX] as u32;
        let mut kb = [0u8; 6];
        kb[VX] = (n - a) as u8;
        kb[VY] = a as u8;
        if let Some(vb) = q.terms.get(&kb) {
            let weight = neg_one_pow((n - a) as i64) / binomial_rat(n as i64, a as i64);
            acc = acc.add(&va.mul(vb).scale(&weight));
        }
    }
    Ok(acc)
}

/// Dual of the monomial with the given X-exponent under the pairing:
/// (X^aY^{n−a})^∨ = (−1)^{n−a}·binom(n,a)·X^{n−a}Y^a.
pub fn dual_element(x_exponent: u32, n: u32) -> Result<HomogeneousPoly, ArithError> {
    if x_exponent > n {
        return Err(ArithError::InvalidInput(format!(
            "exponent {x_exponent} exceeds degree {n}"
        )));
    }
    let a = x_exponent;
    let c = neg_one_pow((n - a) as i64) * binomial_rat(n as i64, a as i64);
    let mut key = [0u8; 6];
    key[VX] = (n - a) as u8;
    key[VY] = a as u8;
    Ok(HomogeneousPoly::monomial(
        key,
        GaussRat::from_rational(c),
    ))
}

/// Dual of U^a·V^{M−a} under the same pairing read in the variables (U, V).
fn dual_uv(a: u32, m: u32) -> HomogeneousPoly {
    let c = neg_one_pow((m - a) as i64) * binomial_rat(m as i64, a as i64);
    let mut key = [0u8; 6];
    key[VU] = (m - a) as u8;
    key[VV] = a as u8;
    HomogeneousPoly::monomial(key, GaussRat::from_rational(c))
}

/// The coordinates v_i(j) of the determinant-product polynomials, together
/// with the P_j themselves for round-trip checks.
#[derive(Debug, Clone)]
pub struct VPolynomialTriple {
    pub n: u32,
    /// (i + n + 1)-indexed rows for i in [−n−1, n+1]; columns j ∈ {−2, 0, 2}.
    pub table: Vec<[HomogeneousPoly; 3]>,
    pub p_polys: [HomogeneousPoly; 3],
}

impl VPolynomialTriple {
    pub fn v(&self, i: i32, j: i32) -> &HomogeneousPoly {
        let n = self.n as i32;
        assert!(i.abs() <= n + 1, "index i out of range");
        let col = match j {
            -2 => 0,
            0 => 1,
            2 => 2,
            _ => panic!("j must be −2, 0, or 2"),
        };
        &self.table[(i + n + 1) as usize][col]
    }

    /// Re-expand Σ_i v_i(j)·(U^{n+1+i}V^{n+1−i})^∨ and compare with P_j.
    pub fn round_trip_ok(&self) -> bool {
        let n = self.n as i32;
        let m = 2 * self.n + 2;
        for (col, p) in self.p_polys.iter().enumerate() {
            let mut acc = HomogeneousPoly::zero();
            for i in -(n + 1)..=(n + 1) {
                let dual = dual_uv((self.n as i32 + 1 + i) as u32, m);
                acc = acc.add(&self.table[(i + n + 1) as usize][col].mul(&dual));
            }
            if acc != *p {
                return false;
            }
        }
        true
    }
}

/// Expand the three-determinant identity and resolve the U,V-coefficients
/// against the dual basis.
pub fn v_polynomials(n: u32) -> VPolynomialTriple {
    let x = HomogeneousPoly::var(VX);
    let y = HomogeneousPoly::var(VY);
    let xc = HomogeneousPoly::var(VXC);
    let yc = HomogeneousPoly::var(VYC);
    let u = HomogeneousPoly::var(VU);
    let v = HomogeneousPoly::var(VV);
    // Determinant factors oriented as YU − XV and Y_cV + X_cU.
    let d1 = y.mul(&u).sub(&x.mul(&v));
    let d2 = yc.mul(&v).add(&xc.mul(&u));
    let core = d1.pow(n).mul(&d2.pow(n));
    // det(A U; B V)² = A²V² − 2AB·UV + B²U².
    let p_m2 = core.mul(&v.mul(&v));
    let p_0 = core.mul(&u.mul(&v)).scale(&GaussRat::from_int(-2));
    let p_2 = core.mul(&u.mul(&u));
    let p_polys = [p_m2, p_0, p_2];

    let ni = n as i32;
    let m = 2 * n + 2;
    let mut table = Vec::with_capacity((2 * n + 3) as usize);
    for i in -(ni + 1)..=(ni + 1) {
        let a = (ni + 1 - i) as u32; // exponent of U
        let b = m - a; // exponent of V
        // P_j = Σ_i v_i(j)·(U^{n+1+i}V^{n+1−i})^∨
        //     = Σ_i v_i(j)·(−1)^{n+1−i}·binom(2n+2, n+1+i)·U^{n+1−i}V^{n+1+i},
        // so v_i(j) is the U^{n+1−i}V^{n+1+i} coefficient divided by that weight.
        let weight =
            neg_one_pow((ni + 1 - i) as i64) / binomial_rat(m as i64, (ni + 1 + i) as i64);
        let row: [HomogeneousPoly; 3] = std::array::from_fn(|col| {
            p_polys[col]
                .coeff_uv(a as u8, b as u8)
                .scale(&GaussRat::from_rational(weight.clone()))
        });
        table.push(row);
    }
    VPolynomialTriple { n, table, p_polys }
}

/// Υ^α: apply ∇ = ∂²/∂X_c∂Y − ∂²/∂X∂Y_c α times, divide by α!², and set
/// X_c ← X, Y_c ← Y. Maps bidegree (n, n) to binary forms of degree 2n−2α.
pub fn upsilon(
    p: &HomogeneousPoly,
    n: u32,
    alpha: u32,
) -> Result<HomogeneousPoly, ArithError> {
    if alpha > n {
        return Err(ArithError::InvalidInput(format!(
            "contraction order {alpha} exceeds bidegree {n}"
        )));
    }
    if !p.is_zero() {
        let dxy = p.homogeneous_degree_in(&[VX, VY]);
        let dc = p.homogeneous_degree_in(&[VXC, VYC]);
        if dxy != Some(n) || dc != Some(n) {
            return Err(ArithError::InvalidInput(format!(
                "expected bidegree ({n}, {n}), found ({dxy:?}, {dc:?})"
            )));
        }
    }
    let mut cur = p.clone();
    for _ in 0..alpha {
        let t1 = cur.derivative(VXC).derivative(VY);
        let t2 = cur.derivative(VX).derivative(VYC);
        cur = t1.sub(&t2);
    }
    let af = factorial(alpha);
    let scale = Rational::new(1.into(), &af * &af);
    Ok(cur.substitute_conjugates().scale(&GaussRat::from_rational(scale)))
}

/// (X − √−1·Y)^k.
pub fn x_minus_iy_pow(k: u32) -> HomogeneousPoly {
    let x = HomogeneousPoly::var(VX);
    let iy = HomogeneousPoly::var(VY).scale(&GaussRat::i_power(1));
    x.sub(&iy).pow(k)
}

/// Definitional value [Υ^α(v_i(j)), (X−√−1 Y)^{2n−2α}] from the symbolic
/// pipeline.
pub fn upv_pairing_value(
    n: u32,
    alpha: u32,
    i: i32,
    j: i32,
) -> Result<GaussRat, ArithError> {
    upv_pairing_value_with(&v_polynomials(n), alpha, i, j)
}

/// As `upv_pairing_value`, reusing a precomputed coordinate table.
pub fn upv_pairing_value_with(
    triple: &VPolynomialTriple,
    alpha: u32,
    i: i32,
    j: i32,
) -> Result<GaussRat, ArithError> {
    let n = triple.n;
    if alpha > n || i.unsigned_abs() > n + 1 {
        return Err(ArithError::InvalidInput(format!(
            "parameters out of range: n={n}, α={alpha}, i={i}"
        )));
    }
    let upsiloned = upsilon(triple.v(i, j), n, alpha)?;
    let w = x_minus_iy_pow(2 * n - 2 * alpha);
    pairing_n(&upsiloned, &w, 2 * n - 2 * alpha)
}

/// Closed-form value of the same pairing: a binomial sum times a power of
/// √−1, with the power depending on j.
pub fn upv_closed_form(n: u32, alpha: u32, i: i32, j: i32) -> GaussRat {
    let ni = n as i64;
    let ai = alpha as i64;
    let ii = i as i64;
    let (i_exponent, shift, doubled) = match j {
        -2 => (ai + ii - 1, 1i64, false),
        0 => (ai + ii, 0, true),
        2 => (ai + ii + 1, -1, false),
        _ => panic!("j must be −2, 0, or 2"),
    };
    let mut sum = Rational::zero();
    for t in 0..=ai {
        let b = binomial(2 * ni - 2 * ai, ni + shift - ii - 2 * t);
        if b.is_zero() {
            continue;
        }
        let term = neg_one_pow(t)
            * binomial_rat(ai, t)
            * Rational::from(b);
        sum += term;
    }
    let mut prefactor = neg_one_pow(ni) * binomial_rat(ni, ai) * binomial_rat(ni, ai)
        / binomial_rat(2 * ni + 2, ni + 1 - ii);
    if doubled {
        prefactor *= rat_int(2);
    }
    GaussRat::i_power(i_exponent).scale(&(prefactor * sum))
}

/// C(α,i) by its defining pairing combination:
/// [Υ^α(v_i(0)), w] + √−1·[Υ^α(v_i(−2)), w] − √−1·[Υ^α(v_i(2)), w].
pub fn c_constant_definitional(n: u32, alpha: u32, i: i32) -> Result<GaussRat, ArithError> {
    let triple = v_polynomials(n);
    c_constant_definitional_with(&triple, alpha, i)
}

/// As `c_constant_definitional`, reusing a precomputed coordinate table.
pub fn c_constant_definitional_with(
    triple: &VPolynomialTriple,
    alpha: u32,
    i: i32,
) -> Result<GaussRat, ArithError> {
    let t0 = upv_pairing_value_with(triple, alpha, i, 0)?;
    let tm2 = upv_pairing_value_with(triple, alpha, i, -2)?;
    let t2 = upv_pairing_value_with(triple, alpha, i, 2)?;
    let iu = GaussRat::i_power(1);
    Ok(t0.add(&iu.mul(&tm2)).sub(&iu.mul(&t2)))
}

/// C(α,i) by the binomial closed form; zero when i ≢ α (mod 2).
pub fn c_constant_closed_form(n: u32, alpha: u32, i: i32) -> Rational {
    let ni = n as i64;
    let ai = alpha as i64;
    let ii = i as i64;
    if (ii - ai).rem_euclid(2) != 0 {
        return Rational::zero();
    }
    let mut sum = Rational::zero();
    for t in 0..=ai {
        let b = binomial(2 * ni - 2 * ai + 2, ni - 2 * t + ii + 1);
        if b.is_zero() {
            continue;
        }
        sum += neg_one_pow(t) * binomial_rat(ai, t) * Rational::from(b);
    }
    neg_one_pow(ni) * neg_one_pow((ii - ai) / 2) * binomial_rat(ni, ai) * binomial_rat(ni, ai)
        / binomial_rat(2 * ni + 2, ni + 1 - ii)
        * sum
}

/// C(α,i): both routes are evaluated and must agree exactly; the closed
/// form is returned. Indices with i ≢ α (mod 2) never occur in the
/// archimedean integral, whose slot sum is restricted to matching parity;
/// for those the closed-form zero is returned directly.
pub fn c_constant(n: u32, alpha: u32, i: i32) -> Result<Rational, ArithError> {
    if alpha > n || i.unsigned_abs() > n + 1 {
        return Err(ArithError::InvalidInput(format!(
            "parameters out of range: n={n}, α={alpha}, i={i}"
        )));
    }
    if (i - alpha as i32).rem_euclid(2) != 0 {
        return Ok(Rational::zero());
    }
    let closed = c_constant_closed_form(n, alpha, i);
    let definitional = c_constant_definitional(n, alpha, i)?;
    if definitional != GaussRat::from_rational(closed.clone()) {
        return Err(ArithError::InvalidInput(format!(
            "internal consistency failure for C({alpha},{i}) at n={n}: \
             definitional {definitional:?} vs closed {closed}"
        )));
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::rat;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn xy_monomial(a: u8, b: u8) -> HomogeneousPoly {
        let mut key = [0u8; 6];
        key[VX] = a;
        key[VY] = b;
        HomogeneousPoly::monomial(key, GaussRat::one())
    }

    #[test]
    fn pairing_examples() {
        // [X³, Y³] = 1, [X²Y, X²Y] = 0, [X²Y², X²Y²] = 1/6.
        let v = pairing_n(&xy_monomial(3, 0), &xy_monomial(0, 3), 3).unwrap();
        assert_eq!(v, GaussRat::one());
        let v = pairing_n(&xy_monomial(2, 1), &xy_monomial(2, 1), 3).unwrap();
        assert!(v.is_zero());
        let v = pairing_n(&xy_monomial(2, 2), &xy_monomial(2, 2), 4).unwrap();
        assert_eq!(v.as_rational(), Some(rat(1, 6)));
    }

    #[test]
    fn pairing_rejects_degree_mismatch() {
        assert!(pairing_n(&xy_monomial(2, 0), &xy_monomial(0, 3), 3).is_err());
        let bad = HomogeneousPoly::var(VU);
        assert!(pairing_n(&bad, &xy_monomial(0, 1), 1).is_err());
    }

    #[test]
    fn dual_elements_match_examples() {
        // X² → Y², XY → −2XY, X → Y.
        let d = dual_element(2, 2).unwrap();
        assert_eq!(d, xy_monomial(0, 2));
        let d = dual_element(1, 2).unwrap();
        assert_eq!(d, xy_monomial(1, 1).scale(&GaussRat::from_int(-2)));
        let d = dual_element(1, 1).unwrap();
        assert_eq!(d, xy_monomial(0, 1));
    }

    #[test]
    fn dual_is_dual() {
        // pairing(u, u^∨) = 1 and pairing(u, w^∨) = 0 for other monomials.
        let n = 5u32;
        for a in 0..=n {
            let mut key = [0u8; 6];
            key[VX] = a as u8;
            key[VY] = (n - a) as u8;
            let u = HomogeneousPoly::monomial(key, GaussRat::one());
            for b in 0..=n {
                let d = dual_element(b, n).unwrap();
                let v = pairing_n(&u, &d, n).unwrap();
                if a == b {
                    assert_eq!(v, GaussRat::one());
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn v_polynomials_degenerate_case() {
        // n = 0: P_{−2} = V² = (U²)^∨, so the only nonzero v_i(−2) is at the
        // slot whose basis monomial is U^{1+i}V^{1−i} = U², i.e. i = 1.
        let triple = v_polynomials(0);
        assert_eq!(triple.v(1, -2), &HomogeneousPoly::one());
        assert!(triple.v(0, -2).is_zero());
        assert!(triple.v(-1, -2).is_zero());
        // P_0 = −2UV = (UV)^∨·1: v_0(0) = 1.
        assert_eq!(triple.v(0, 0), &HomogeneousPoly::one());
        // P_2 = U² = (V²)^∨: v_{−1}(2) = 1.
        assert_eq!(triple.v(-1, 2), &HomogeneousPoly::one());
        assert!(triple.round_trip_ok());
    }

    #[test]
    fn v_polynomials_round_trip_small_n() {
        for n in 0..=3 {
            assert!(v_polynomials(n).round_trip_ok(), "round trip failed at n={n}");
        }
    }

    #[test]
    fn upsilon_basic_examples() {
        // α = 0 is plain substitution.
        let p = HomogeneousPoly::var(VX).mul(&HomogeneousPoly::var(VYC));
        let s = upsilon(&p, 1, 0).unwrap();
        assert_eq!(s, xy_monomial(1, 1));
        // P = X·Y_c, α = 1: ∇P = −1.
        let s = upsilon(&p, 1, 1).unwrap();
        assert_eq!(s, HomogeneousPoly::one().scale(&GaussRat::from_int(-1)));
    }

    #[test]
    fn upsilon_determinant_power_is_constant() {
        // P = (XY_c − X_cY)^n contracts to a constant at α = n; compare with
        // an independent iterated-derivative evaluation at a generic point.
        for n in 1..=4u32 {
            let x = HomogeneousPoly::var(VX);
            let y = HomogeneousPoly::var(VY);
            let xc = HomogeneousPoly::var(VXC);
            let yc = HomogeneousPoly::var(VYC);
            let p = x.mul(&yc).sub(&xc.mul(&y)).pow(n);
            let s = upsilon(&p, n, n).unwrap();
            assert!(
                s.homogeneous_degree_in(&[VX, VY]) == Some(0) || s.is_zero(),
                "nonconstant contraction at n={n}"
            );
            // Oracle: apply ∇ n times without the 1/n!² scaling, term by term.
            let mut cur = p.clone();
            for _ in 0..n {
                cur = cur
                    .derivative(VXC)
                    .derivative(VY)
                    .sub(&cur.derivative(VX).derivative(VYC));
            }
            let nf = factorial(n);
            let expect = cur
                .substitute_conjugates()
                .scale(&GaussRat::from_rational(Rational::new(1.into(), &nf * &nf)));
            assert_eq!(s, expect);
            assert!(!s.is_zero());
        }
    }

    #[test]
    fn upv_degenerate_example() {
        // n = 0, α = 0, i = 0, j = 0 → 1.
        let v = upv_pairing_value(0, 0, 0, 0).unwrap();
        assert_eq!(v, GaussRat::one());
        assert_eq!(upv_closed_form(0, 0, 0, 0), GaussRat::one());
    }

    #[test]
    fn upv_empty_sum_vanishes() {
        // n = 0, α = 0, i = 0, j = 2: binomial index n−1−i−2t = −1 < 0.
        let v = upv_closed_form(0, 0, 0, 2);
        assert!(v.is_zero());
        assert!(upv_pairing_value(0, 0, 0, 2).unwrap().is_zero());
    }

    #[test]
    fn upv_pipeline_matches_closed_form_spot() {
        let v = upv_pairing_value(2, 1, 1, 2).unwrap();
        assert_eq!(v, upv_closed_form(2, 1, 1, 2));
        assert!(!v.is_zero());
    }

    #[test]
    fn c_constant_examples() {
        assert_eq!(c_constant(0, 0, 0).unwrap(), rat_int(1));
        // Off-parity indices return the closed-form zero directly.
        assert_eq!(c_constant(1, 0, 1).unwrap(), Rational::zero());
        assert_eq!(c_constant(1, 0, -1).unwrap(), Rational::zero());
        assert_eq!(c_constant(2, 1, 0).unwrap(), Rational::zero());
        // n = 1, α = 0: the surviving indices are even.
        assert_eq!(c_constant(1, 0, 0).unwrap(), rat_int(-1));
        assert_eq!(c_constant(1, 0, 2).unwrap(), rat_int(1));
    }

    #[test]
    fn gram_matrix_invertible() {
        // The pairing Gram matrix on monomials is anti-diagonal with nonzero
        // entries, hence invertible; check determinant nonvanishing exactly.
        for n in 0..=12u32 {
            let mut det = Rational::one();
            for a in 0..=n {
                let u = {
                    let mut k = [0u8; 6];
                    k[VX] = a as u8;
                    k[VY] = (n - a) as u8;
                    HomogeneousPoly::monomial(k, GaussRat::one())
                };
                let w = {
                    let mut k = [0u8; 6];
                    k[VX] = (n - a) as u8;
                    k[VY] = a as u8;
                    HomogeneousPoly::monomial(k, GaussRat::one())
                };
                let entry = pairing_n(&u, &w, n).unwrap();
                det *= entry.as_rational().unwrap();
            }
            assert!(!det.is_zero(), "degenerate Gram matrix at n={n}");
        }
    }

    #[test]
    fn upsilon_direct_sum_injective() {
        // ⊕_α Υ^α maps the (n+1)² monomials to vectors whose exact rank is
        // full, for n ≤ 6.
        for n in 0..=6u32 {
            let dim = ((n + 1) * (n + 1)) as usize;
            let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(dim);
            for a in 0..=n {
                for b in 0..=n {
                    let mut key = [0u8; 6];
                    key[VX] = a as u8;
                    key[VY] = (n - a) as u8;
                    key[VXC] = b as u8;
                    key[VYC] = (n - b) as u8;
                    let p = HomogeneousPoly::monomial(key, GaussRat::one());
                    let mut row = Vec::new();
                    for alpha in 0..=n {
                        let img = upsilon(&p, n, alpha).unwrap();
                        let deg = 2 * n - 2 * alpha;
                        for e in 0..=deg {
                            let mut k = [0u8; 6];
                            k[VX] = e as u8;
                            k[VY] = (deg - e) as u8;
                            let c = img
                                .terms
                                .get(&k)
                                .map(|g| g.as_rational().unwrap())
                                .unwrap_or_else(Rational::zero);
                            row.push(c);
                        }
                    }
                    rows.push(row);
                }
            }
            assert_eq!(exact_rank(rows), dim, "Υ not injective at n={n}");
        }
    }

    fn exact_rank(mut rows: Vec<Vec<Rational>>) -> usize {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
            let Some(p) = pivot else { continue };
            rows.swap(rank, p);
            let inv = rows[rank][col].clone().recip();
            for r in 0..rows.len() {
                if r != rank && !rows[r][col].is_zero() {
                    let factor = &rows[r][col] * &inv;
                    for c in col..ncols {
                        let sub = &factor * &rows[rank][c];
                        rows[r][c] = &rows[r][c] - &sub;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    #[test]
    fn upsilon_nonzero_on_random_elements() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in 1..=4u32 {
            for _ in 0..5 {
                let mut p = HomogeneousPoly::zero();
                for a in 0..=n {
                    for b in 0..=n {
                        let c: i64 = rng.gen_range(-5..=5);
                        if c == 0 {
                            continue;
                        }
                        let mut key = [0u8; 6];
                        key[VX] = a as u8;
                        key[VY] = (n - a) as u8;
                        key[VXC] = b as u8;
                        key[VYC] = (n - b) as u8;
                        p = p.add(&HomogeneousPoly::monomial(key, GaussRat::from_int(c)));
                    }
                }
                if p.is_zero() {
                    continue;
                }
                let all_zero = (0..=n)
                    .all(|alpha| upsilon(&p, n, alpha).unwrap().is_zero());
                assert!(!all_zero, "random element killed by every Υ^α at n={n}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn upv_closed_form_matches_pipeline(n in 0u32..4, alpha_frac in 0u32..100, i_frac in 0u32..100) {
            let alpha = alpha_frac % (n + 1);
            let span = 2 * n + 3;
            let i = (i_frac % span) as i32 - (n as i32 + 1);
            let triple = v_polynomials(n);
            for j in [-2, 0, 2] {
                let lhs = upv_pairing_value_with(&triple, alpha, i, j).unwrap();
                let rhs = upv_closed_form(n, alpha, i, j);
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn parity_vanishing(n in 0u32..5, alpha_frac in 0u32..100, i_frac in 0u32..100) {
            let alpha = alpha_frac % (n + 1);
            let span = 2 * n + 3;
            let i = (i_frac % span) as i32 - (n as i32 + 1);
            if (i - alpha as i32).rem_euclid(2) == 1 {
                prop_assert_eq!(c_constant(n, alpha, i).unwrap(), Rational::zero());
            }
        }
    }
}
