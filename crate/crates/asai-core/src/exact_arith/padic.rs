//! p-adic elements of the unramified extension of degree f, exact modulo p^N.
//!
//! Elements are coefficient vectors in Z/p^N of length f with multiplication
//! modulo a fixed monic lift g of an irreducible degree-f polynomial over F_p
//! (any monic lift presents the same unramified extension). The default
//! configuration f = 1 is plain Z/p^N arithmetic.

use super::rational::Rational;
use super::ArithError;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Shared parameters of a p-adic coefficient ring: prime, residue degree,
/// precision, and (for f > 1) the monic modulus polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct PadicCtx {
    pub prime: u64,
    pub residue_degree: u32,
    pub precision: u32,
    /// p^precision.
    pub modulus_int: BigUint,
    /// Coefficients c_0..c_{f−1} of g(x) = x^f + Σ c_j x^j (empty when f = 1).
    pub modulus_poly: Vec<BigUint>,
}

static CTX_CACHE: Lazy<Mutex<HashMap<(u64, u32, u32), Arc<PadicCtx>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

impl PadicCtx {
    /// Fetch (or build) the shared context for (p, f, N).
    pub fn get(prime: u64, residue_degree: u32, precision: u32) -> Arc<PadicCtx> {
        assert!(prime >= 3 && prime % 2 == 1, "odd prime required");
        assert!(residue_degree >= 1 && precision >= 1);
        let key = (prime, residue_degree, precision);
        let mut cache = CTX_CACHE.lock().unwrap();
        if let Some(ctx) = cache.get(&key) {
            return ctx.clone();
        }
        let modulus_int = BigUint::from(prime).pow(precision);
        let modulus_poly = if residue_degree == 1 {
            Vec::new()
        } else {
            irreducible_monic(prime, residue_degree)
                .into_iter()
                .map(BigUint::from)
                .collect()
        };
        let ctx = Arc::new(PadicCtx {
            prime,
            residue_degree,
            precision,
            modulus_int,
            modulus_poly,
        });
        cache.insert(key, ctx.clone());
        ctx
    }

    /// Residue field cardinality q = p^f.
    pub fn residue_cardinality(&self) -> u64 {
        self.prime.pow(self.residue_degree)
    }
}

/// Smallest (lexicographic constant-first coefficient vector) monic
/// irreducible polynomial of degree f over F_p, returned as c_0..c_{f−1}.
fn irreducible_monic(p: u64, f: u32) -> Vec<u64> {
    let f = f as usize;
    let mut coeffs = vec![0u64; f];
    loop {
        if is_irreducible(p, &coeffs) {
            return coeffs;
        }
        // Odometer increment over F_p^f.
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
            assert!(i < f, "no irreducible polynomial found (impossible)");
        }
    }
}

/// Irreducibility of x^f + Σ c_j x^j over F_p: x^{p^f} ≡ x mod g and
/// gcd(x^{p^{f/ℓ}} − x, g) = 1 for every prime ℓ | f.
fn is_irreducible(p: u64, c: &[u64]) -> bool {
    let f = c.len() as u32;
    if c[0] == 0 {
        return false;
    }
    let xq = |e: u32| -> Vec<u64> {
        // x^(p^e) mod g by repeated p-th powering.
        let mut cur = vec![0u64, 1]; // x
        for _ in 0..e {
            cur = polymod_pow(p, c, &cur, p);
        }
        cur
    };
    let x = vec![0u64, 1];
    let frob_f = xq(f);
    if polymod_sub(p, &frob_f, &x).iter().any(|&a| a != 0) {
        return false;
    }
    let mut ell = 2;
    let mut rem = f;
    while ell * ell <= rem {
        if rem % ell == 0 {
            let sub = polymod_sub(p, &xq(f / ell), &x);
            if poly_gcd_is_one(p, c, &sub).is_none() {
                return false;
            }
            while rem % ell == 0 {
                rem /= ell;
            }
        }
        ell += 1;
    }
    if rem > 1 {
        let sub = polymod_sub(p, &xq(f / rem), &x);
        if poly_gcd_is_one(p, c, &sub).is_none() {
            return false;
        }
    }
    true
}

fn polymod_mul(p: u64, g: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    let f = g.len();
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // Reduce modulo monic g of degree f: x^f = −Σ c_j x^j.
    for d in (f..prod.len()).rev() {
        let lead = prod[d];
        if lead == 0 {
            continue;
        }
        prod[d] = 0;
        for (j, &cj) in g.iter().enumerate() {
            let sub = (lead * cj) % p;
            prod[d - f + j] = (prod[d - f + j] + p - sub) % p;
        }
    }
    prod.truncate(f.max(1));
    prod
}

fn polymod_pow(p: u64, g: &[u64], base: &[u64], mut e: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = polymod_mul(p, g, &acc, &b);
        }
        b = polymod_mul(p, g, &b, &b);
        e >>= 1;
    }
    acc
}

fn polymod_sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y % p) % p
        })
        .collect()
}

/// Some(()) iff gcd(g, h) = 1 in F_p[x].
fn poly_gcd_is_one(p: u64, g: &[u64], h: &[u64]) -> Option<()> {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let mut a: Vec<u64> = {
        let mut full = vec![0u64; g.len() + 1];
        full[..g.len()].copy_from_slice(g);
        full[g.len()] = 1;
        full
    };
    let mut b = h.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let inv_lead = mod_inverse_u64(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let factor = (*a.last().unwrap() * inv_lead) % p;
            if factor != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    let sub = (factor * bj) % p;
                    a[shift + j] = (a[shift + j] + p - sub) % p;
                }
            }
            trim(&mut a);
            if a.len() < b.len() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
        trim(&mut b);
    }
    if a.len() == 1 {
        Some(())
    } else {
        None
    }
}

fn mod_inverse_u64(a: u64, p: u64) -> u64 {
    // Fermat: a^{p−2} mod p.
    let mut acc: u128 = 1;
    let mut b: u128 = (a % p) as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    acc as u64
}

/// Element of the unramified extension of Q_p of degree f, exact mod p^N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicElement {
    pub ctx: Arc<PadicCtx>,
    /// Coefficients in Z/p^N with respect to the power basis 1, x, …, x^{f−1}.
    pub coeffs: Vec<BigUint>,
}

impl PadicElement {
    pub fn zero(ctx: &Arc<PadicCtx>) -> Self {
        PadicElement {
            ctx: ctx.clone(),
            coeffs: vec![BigUint::zero(); ctx.residue_degree as usize],
        }
    }

    pub fn one(ctx: &Arc<PadicCtx>) -> Self {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = BigUint::one();
        z
    }

    /// From a (possibly negative) integer, reduced mod p^N.
    pub fn from_int(ctx: &Arc<PadicCtx>, v: &BigInt) -> Self {
        let m = BigInt::from(ctx.modulus_int.clone());
        let red = v.mod_floor(&m).to_biguint().unwrap();
        let mut z = Self::zero(ctx);
        z.coeffs[0] = red;
        z
    }

    pub fn from_u64(ctx: &Arc<PadicCtx>, v: u64) -> Self {
        Self::from_int(ctx, &BigInt::from(v))
    }

    /// From a rational with denominator prime to p.
    pub fn from_rational(ctx: &Arc<PadicCtx>, x: &Rational) -> Result<Self, ArithError> {
        let num = Self::from_int(ctx, x.numer());
        let den = Self::from_int(ctx, x.denom());
        let dinv = den.inverse()?;
        Ok(num.mul(&dinv))
    }

    fn assert_same_ctx(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx,
            "mixed p-adic contexts"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let m = &self.ctx.modulus_int;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % m)
            .collect();
        PadicElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        let m = &self.ctx.modulus_int;
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                if a.is_zero() {
                    BigUint::zero()
                } else {
                    m - a
                }
            })
            .collect();
        PadicElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let f = self.ctx.residue_degree as usize;
        let m = &self.ctx.modulus_int;
        if f == 1 {
            let mut z = Self::zero(&self.ctx);
            z.coeffs[0] = (&self.coeffs[0] * &other.coeffs[0]) % m;
            return z;
        }
        let mut prod = vec![BigUint::zero(); 2 * f];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (&prod[i + j] + a * b) % m;
            }
        }
        // Reduce modulo the monic modulus: x^f = −Σ c_j x^j.
        for d in (f..2 * f).rev() {
            if prod[d].is_zero() {
                continue;
            }
            let lead = std::mem::take(&mut prod[d]);
            for (j, cj) in self.ctx.modulus_poly.iter().enumerate() {
                let sub = (&lead * cj) % m;
                let cur = &prod[d - f + j];
                prod[d - f + j] = if *cur >= sub {
                    cur - sub
                } else {
                    m - (sub - cur) % m
                } % m;
            }
        }
        prod.truncate(f);
        PadicElement {
            ctx: self.ctx.clone(),
            coeffs: prod,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut b = self.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Valuation in 0..N, or None when the element is 0 mod p^N.
    pub fn valuation(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let p = BigUint::from(self.ctx.prime);
        let mut v = 0u32;
        let mut cur: Vec<BigUint> = self.coeffs.clone();
        loop {
            if cur.iter().any(|c| !(c % &p).is_zero()) {
                return Some(v);
            }
            cur = cur.iter().map(|c| c / &p).collect();
            v += 1;
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    /// Inverse of a unit (valuation 0): invert in the residue field, then
    /// Hensel-lift by Newton iteration x ← x(2 − ax).
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if !self.is_unit() {
            return Err(ArithError::NonUnit(format!(
                "valuation {:?} element has no inverse mod p^N",
                self.valuation()
            )));
        }
        let ctx = &self.ctx;
        let p = ctx.prime;
        let f = ctx.residue_degree as usize;
        // Residue-field inverse.
        let res: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| (c % BigUint::from(p)).to_u64().unwrap())
            .collect();
        let inv0 = if f == 1 {
            vec![mod_inverse_u64(res[0], p)]
        } else {
            residue_field_inverse(p, &ctx.modulus_poly, &res)
        };
        let mut x = Self::zero(ctx);
        for (i, &c) in inv0.iter().enumerate() {
            x.coeffs[i] = BigUint::from(c);
        }
        // Newton: each step doubles the p-adic accuracy.
        let two = Self::from_u64(ctx, 2);
        let mut accuracy = 1u32;
        while accuracy < ctx.precision {
            let ax = self.mul(&x);
            x = x.mul(&two.sub(&ax));
            accuracy *= 2;
        }
        Ok(x)
    }

    /// Teichmüller lift in this ring of the residue class of `self`:
    /// the limit of x^{q^k}, realized as x^{q^{N−1}} mod p^N (q = p^f).
    pub fn teichmuller_of_residue(&self) -> Result<Self, ArithError> {
        if !self.is_unit() {
            return Err(ArithError::InvalidInput(
                "Teichmüller lift requires a unit residue".into(),
            ));
        }
        let q = BigUint::from(self.ctx.residue_cardinality());
        let e = q.pow(self.ctx.precision - 1);
        Ok(self.pow_big(&e))
    }

    /// Base-p digits (least significant first) for f = 1 elements.
    pub fn digits(&self) -> Result<Vec<u64>, ArithError> {
        if self.ctx.residue_degree != 1 {
            return Err(ArithError::InvalidInput(
                "digit expansion implemented for residue degree 1".into(),
            ));
        }
        let p = BigUint::from(self.ctx.prime);
        let mut v = self.coeffs[0].clone();
        let mut out = Vec::with_capacity(self.ctx.precision as usize);
        for _ in 0..self.ctx.precision {
            out.push((&v % &p).to_u64().unwrap());
            v /= &p;
        }
        Ok(out)
    }
}

/// Inverse in F_{p^f} = F_p[x]/(g) by extended Euclid over F_p.
fn residue_field_inverse(p: u64, g_lift: &[BigUint], a: &[u64]) -> Vec<u64> {
    let f = g_lift.len();
    let g: Vec<u64> = {
        let mut v: Vec<u64> = g_lift
            .iter()
            .map(|c| (c % BigUint::from(p)).to_u64().unwrap())
            .collect();
        v.push(1); // monic leading coefficient
        v
    };
    // Extended gcd(a, g) over F_p[x].
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let mut r0 = g.clone();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<u64> = vec![0];
    let mut s1: Vec<u64> = vec![1];
    while r1.len() > 1 {
        // Divide r0 by r1.
        let mut rem = r0.clone();
        let mut quo = vec![0u64; rem.len().saturating_sub(r1.len()) + 1];
        let inv_lead = mod_inverse_u64(*r1.last().unwrap(), p);
        while rem.len() >= r1.len() && !rem.is_empty() {
            let shift = rem.len() - r1.len();
            let factor = (*rem.last().unwrap() * inv_lead) % p;
            quo[shift] = factor;
            if factor != 0 {
                for (j, &bj) in r1.iter().enumerate() {
                    let sub = (factor * bj) % p;
                    rem[shift + j] = (rem[shift + j] + p - sub) % p;
                }
            }
            trim(&mut rem);
            if rem.len() < r1.len() {
                break;
            }
        }
        // s2 = s0 − quo·s1
        let mut qs1 = vec![0u64; quo.len() + s1.len()];
        for (i, &qi) in quo.iter().enumerate() {
            if qi == 0 {
                continue;
            }
            for (j, &sj) in s1.iter().enumerate() {
                qs1[i + j] = (qs1[i + j] + qi * sj) % p;
            }
        }
        let n = s0.len().max(qs1.len());
        let mut s2 = vec![0u64; n];
        for i in 0..n {
            let x = s0.get(i).copied().unwrap_or(0);
            let y = qs1.get(i).copied().unwrap_or(0);
            s2[i] = (x + p - y) % p;
        }
        trim(&mut s2);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    // r1 is now a nonzero constant (a is a unit in the field).
    let c = if r1.is_empty() { r0[0] } else { r1[0] };
    let cinv = mod_inverse_u64(c, p);
    let src = if r1.is_empty() { s0 } else { s1 };
    let mut out: Vec<u64> = src.iter().map(|&x| x * cinv % p).collect();
    out.resize(f, 0);
    out
}

/// Teichmüller lift of a mod p in Z/p^N (residue degree 1 convenience):
/// the unique (p−1)-st root of unity congruent to a, via a^{p^{N−1}}.
pub fn teichmuller(prime: u64, precision: u32, a: i64) -> Result<PadicElement, ArithError> {
    if a.rem_euclid(prime as i64) == 0 {
        return Err(ArithError::InvalidInput(format!(
            "{a} ≡ 0 mod {prime} has no Teichmüller lift"
        )));
    }
    let ctx = PadicCtx::get(prime, 1, precision);
    let x = PadicElement::from_int(&ctx, &BigInt::from(a));
    x.teichmuller_of_residue()
}

/// (1 + p)^e mod p^N — the fixed generator of the wild part used by the
/// p-adic embedding of p-power roots of unity at finite precision.
pub fn one_plus_p_pow(ctx: &Arc<PadicCtx>, e: &BigUint) -> PadicElement {
    let base = PadicElement::from_u64(ctx, ctx.prime + 1);
    base.pow_big(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teichmuller_basic_cases() {
        // p=5, a=1 → 1.
        let t1 = teichmuller(5, 40, 1).unwrap();
        assert_eq!(t1, PadicElement::one(&t1.ctx));
        // p=5, a=4: the 4th root of unity ≡ 4, squaring to 1 exactly.
        let t4 = teichmuller(5, 40, 4).unwrap();
        assert_eq!(t4.mul(&t4), PadicElement::one(&t4.ctx));
        assert_eq!(t4.digits().unwrap()[0], 4);
        // p=7, a=2, N=3: value ≡ 2 mod 7 with value^6 ≡ 1 mod 7³.
        let t2 = teichmuller(7, 3, 2).unwrap();
        assert_eq!(t2.digits().unwrap()[0], 2);
        assert_eq!(t2.pow(6), PadicElement::one(&t2.ctx));
    }

    #[test]
    fn teichmuller_idempotent() {
        let t = teichmuller(7, 20, 3).unwrap();
        let again = t.teichmuller_of_residue().unwrap();
        assert_eq!(t, again);
    }

    #[test]
    fn unit_inverse_roundtrip() {
        let ctx = PadicCtx::get(5, 1, 40);
        let x = PadicElement::from_u64(&ctx, 123456789);
        let xi = x.inverse().unwrap();
        assert_eq!(x.mul(&xi), PadicElement::one(&ctx));
    }

    #[test]
    fn valuation_additivity() {
        let ctx = PadicCtx::get(3, 1, 30);
        let a = PadicElement::from_u64(&ctx, 18); // 2·3²
        let b = PadicElement::from_u64(&ctx, 15); // 5·3
        assert_eq!(a.valuation(), Some(2));
        assert_eq!(b.valuation(), Some(1));
        assert_eq!(a.mul(&b).valuation(), Some(3));
    }

    #[test]
    fn degree_two_extension_arithmetic() {
        let ctx = PadicCtx::get(5, 2, 12);
        // A generator-ish element: x itself.
        let mut x = PadicElement::zero(&ctx);
        x.coeffs[1] = BigUint::one();
        let xi = x.inverse().unwrap();
        assert_eq!(x.mul(&xi), PadicElement::one(&ctx));
        // Teichmüller of a residue-field unit has order dividing 24 = 5²−1.
        let t = x.teichmuller_of_residue().unwrap();
        assert_eq!(t.pow(24), PadicElement::one(&ctx));
        assert!(t.pow(24).is_unit());
    }

    #[test]
    fn subtraction_exact() {
        let ctx = PadicCtx::get(5, 1, 40);
        let x = PadicElement::from_u64(&ctx, 999);
        let y = PadicElement::from_u64(&ctx, 123);
        assert_eq!(x.add(&y).sub(&y), x);
    }
}
