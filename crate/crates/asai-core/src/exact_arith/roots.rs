//! Roots of unity as exact symbols e^{2πi·e/m}, with embeddings into C
//! (floating point) and into the p-adic coefficient ring at precision N.
//!
//! The p-adic embedding sends the prime-to-p part through the Teichmüller
//! lift (its order must divide p^f − 1) and the p-power part ζ_{p^a} to
//! (1+p)^{p^{N−1−a}}, the canonical order-p^a element of the finite-precision
//! group 1 + pZ/p^N. Both maps are multiplicative, so products and inverses
//! of supported roots embed consistently.

use super::padic::{one_plus_p_pow, teichmuller, PadicCtx, PadicElement};
use super::ArithError;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// The root of unity e^{2πi·exponent/order}, stored in lowest terms with
/// 0 ≤ exponent < order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub order: u64,
    pub exponent: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, exponent: i64) -> Self {
        assert!(order >= 1, "order must be positive");
        let e = exponent.rem_euclid(order as i64) as u64;
        let g = e.gcd(&order);
        if e == 0 {
            RootOfUnity {
                order: 1,
                exponent: 0,
            }
        } else {
            RootOfUnity {
                order: order / g,
                exponent: e / g,
            }
        }
    }

    pub fn one() -> Self {
        RootOfUnity {
            order: 1,
            exponent: 0,
        }
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.order.lcm(&other.order);
        let e = (self.exponent as i64) * (m / self.order) as i64
            + (other.exponent as i64) * (m / other.order) as i64;
        RootOfUnity::new(m, e)
    }

    pub fn inv(&self) -> Self {
        RootOfUnity::new(self.order, -(self.exponent as i64))
    }

    pub fn pow(&self, k: i64) -> Self {
        let e = (self.exponent as i128 * k as i128).rem_euclid(self.order as i128) as i64;
        RootOfUnity::new(self.order, e)
    }

    /// Whether this root is ±1 (real), ±i, etc.: convenience for the order-4
    /// symbols that appear as i-powers in archimedean constants.
    pub fn as_fourth_root_power(&self) -> Option<u8> {
        if 4 % self.order == 0 {
            Some(((self.exponent * (4 / self.order)) % 4) as u8)
        } else {
            None
        }
    }

    /// Complex embedding e^{2πi e/m}.
    pub fn to_complex(&self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * (self.exponent as f64) / (self.order as f64);
        Complex64::new(theta.cos(), theta.sin())
    }

    /// p-adic embedding at the given context. The order must factor as
    /// p^a·m' with m' | p^f − 1 and a ≤ N−1.
    pub fn embed_padic(&self, ctx: &Arc<PadicCtx>) -> Result<PadicElement, ArithError> {
        let p = ctx.prime;
        let mut m_tame = self.order;
        let mut a = 0u32;
        while m_tame % p == 0 {
            m_tame /= p;
            a += 1;
        }
        let p_part = self.order / m_tame;
        let q_minus_1 = ctx.residue_cardinality() - 1;
        if q_minus_1 % m_tame != 0 {
            return Err(ArithError::UnsupportedOrder {
                order: self.order,
                reason: format!(
                    "prime-to-p part {m_tame} does not divide p^f − 1 = {q_minus_1}"
                ),
            });
        }
        if a >= ctx.precision {
            return Err(ArithError::UnsupportedOrder {
                order: self.order,
                reason: format!(
                    "p-power part p^{a} exceeds the order p^{} of 1+pZ/p^N",
                    ctx.precision - 1
                ),
            });
        }
        // Split exponent/order into tame and wild components in Q/Z.
        // e/m = u/m' + v/p^a with u = e·(p^a)^{-1} mod m', v = e·(m')^{-1} mod p^a.
        let tame_val = if m_tame == 1 {
            PadicElement::one(ctx)
        } else {
            let inv_p_part = mod_inverse(p_part % m_tame, m_tame);
            let u = (self.exponent % m_tame) * inv_p_part % m_tame;
            let w = residue_generator(ctx);
            w.pow(q_minus_1 / m_tame).pow(u)
        };
        let wild_val = if a == 0 {
            PadicElement::one(ctx)
        } else {
            let pa = p_part;
            let inv_m = mod_inverse(m_tame % pa, pa);
            let v = (self.exponent % pa) * inv_m % pa;
            let e = BigUint::from(p).pow(ctx.precision - 1 - a) * BigUint::from(v);
            one_plus_p_pow(ctx, &e)
        };
        Ok(tame_val.mul(&wild_val))
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "inverse of non-unit {a} mod {m}");
    t.rem_euclid(m as i128) as u64
}

/// Teichmüller lift of a fixed generator of the multiplicative group of the
/// residue field F_{p^f}. For f = 1 the generator is the smallest primitive
/// root mod p; for f > 1 the smallest power-basis vector generating F_q^×.
fn residue_generator(ctx: &Arc<PadicCtx>) -> PadicElement {
    let p = ctx.prime;
    let q = ctx.residue_cardinality();
    if ctx.residue_degree == 1 {
        let g = smallest_primitive_root(p);
        return teichmuller(p, ctx.precision, g as i64).unwrap();
    }
    // Enumerate residue-field elements by power-basis coefficient vectors and
    // test the order by checking x^{(q−1)/ℓ} ≠ 1 for each prime ℓ | q−1.
    let primes = prime_divisors(q - 1);
    let f = ctx.residue_degree as usize;
    let mut coeffs = vec![0u64; f];
    loop {
        // Odometer increment.
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        let mut x = PadicElement::zero(ctx);
        for (j, &c) in coeffs.iter().enumerate() {
            x.coeffs[j] = BigUint::from(c);
        }
        if !x.is_unit() {
            continue;
        }
        let t = x.teichmuller_of_residue().unwrap();
        let generates = primes
            .iter()
            .all(|&ell| t.pow((q - 1) / ell) != PadicElement::one(ctx));
        if generates {
            return t;
        }
    }
}

pub(crate) fn smallest_primitive_root(p: u64) -> u64 {
    let primes = prime_divisors(p - 1);
    'outer: for g in 2..p {
        for &ell in &primes {
            if pow_mod(g, (p - 1) / ell, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base: u128 = (b % m) as u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonicalization_lowest_terms() {
        assert_eq!(RootOfUnity::new(8, 6), RootOfUnity::new(4, 3));
        assert_eq!(RootOfUnity::new(6, -1), RootOfUnity::new(6, 5));
        assert_eq!(RootOfUnity::new(5, 10), RootOfUnity::one());
    }

    #[test]
    fn complex_embedding_is_root() {
        let z = RootOfUnity::new(12, 5);
        let mut acc = Complex64::new(1.0, 0.0);
        for _ in 0..12 {
            acc *= z.to_complex();
        }
        assert!((acc - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn padic_embedding_order_four_at_five() {
        // ζ₄ at p=5 is the Teichmüller lift of a generator of F₅^× (order 4).
        let ctx = PadicCtx::get(5, 1, 40);
        let z = RootOfUnity::new(4, 1);
        let v = z.embed_padic(&ctx).unwrap();
        let g = smallest_primitive_root(5);
        assert_eq!(g, 2);
        assert_eq!(v, teichmuller(5, 40, g as i64).unwrap());
        assert_eq!(v.pow(4), PadicElement::one(&ctx));
        assert_ne!(v.pow(2), PadicElement::one(&ctx));
    }

    #[test]
    fn padic_embedding_p_power_part() {
        // ζ_7 at p=7, N=3: (1+7)^{7^{3−1−1}} = 8^7 mod 343, an element of
        // exact order 7 in 1+7Z/7³.
        let ctx = PadicCtx::get(7, 1, 3);
        let z = RootOfUnity::new(7, 1);
        let v = z.embed_padic(&ctx).unwrap();
        assert_eq!(v.pow(7), PadicElement::one(&ctx));
        assert_ne!(v, PadicElement::one(&ctx));
    }

    #[test]
    fn padic_embedding_rejects_unsupported() {
        let ctx = PadicCtx::get(5, 1, 40);
        // Order 3 does not divide 5 − 1 and is prime to 5.
        let z = RootOfUnity::new(3, 1);
        assert!(z.embed_padic(&ctx).is_err());
        // Order 3 divides 5² − 1 = 24, so it embeds at residue degree 2.
        let ctx2 = PadicCtx::get(5, 2, 12);
        assert!(z.embed_padic(&ctx2).is_ok());
    }

    proptest! {
        #[test]
        fn multiplication_group_law(a in 0i64..24, b in 0i64..24) {
            let x = RootOfUnity::new(24, a);
            let y = RootOfUnity::new(24, b);
            let xy = x.mul(&y);
            let direct = RootOfUnity::new(24, a + b);
            prop_assert_eq!(xy, direct);
        }

        #[test]
        fn padic_embedding_multiplicative(a in 0i64..20, b in 0i64..20) {
            // Group of order 20 = 4·5 at p=5: tame part 4 | 5−1, wild part 5.
            let ctx = PadicCtx::get(5, 1, 12);
            let x = RootOfUnity::new(20, a);
            let y = RootOfUnity::new(20, b);
            let lhs = x.mul(&y).embed_padic(&ctx).unwrap();
            let rhs = x.embed_padic(&ctx).unwrap().mul(&y.embed_padic(&ctx).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn complex_embedding_multiplicative(a in 0i64..36, b in 0i64..36) {
            let x = RootOfUnity::new(36, a);
            let y = RootOfUnity::new(36, b);
            let lhs = x.mul(&y).to_complex();
            let rhs = x.to_complex() * y.to_complex();
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}
