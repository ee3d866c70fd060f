//! Finite-order characters of p-power conductor on (Z/p^r)^× with their
//! Gauss sums and ε-factors, and p-adic avatars of Hecke characters
//! φ = |·|^w φ_fin built from them.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exact_arith::roots::smallest_primitive_root;
use crate::exact_arith::{
    ArithError, Cyc, LaurentPoly, PadicCtx, PadicElement, Rational, RationalFunctionInQs,
    RootOfUnity, Scalar,
};

/// A finite-order character of (Z/p^r)^× described by the image of a fixed
/// generator, together with its signs at the real places.
///
/// The group (Z/p^r)^× is cyclic for odd p; the fixed generator is the
/// smallest primitive root mod p² reduced mod p^r, which generates for every
/// r ≥ 1. The uniformizer acts trivially, so the local character is
/// determined by the unit images and the conductor exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteOrderCharacter {
    #[serde(rename = "p")]
    pub prime: u64,
    #[serde(rename = "r")]
    pub level: u32,
    pub generator_images: Vec<RootOfUnity>,
    pub infinity_signs: Vec<i8>,
}

impl FiniteOrderCharacter {
    /// Builds a character after validating the descriptor: p an odd prime,
    /// r ≥ 1, one generator image whose order divides #(Z/p^r)^×, and ±1
    /// signs.
    pub fn new(
        prime: u64,
        level: u32,
        generator_images: Vec<RootOfUnity>,
        infinity_signs: Vec<i8>,
    ) -> Result<Self, ArithError> {
        let chi = FiniteOrderCharacter { prime, level, generator_images, infinity_signs };
        chi.validate()?;
        Ok(chi)
    }

    /// The trivial character mod p^r with trivial archimedean signs.
    pub fn trivial(prime: u64, level: u32) -> Result<Self, ArithError> {
        Self::new(prime, level, vec![RootOfUnity::one()], vec![1])
    }

    /// Checks the descriptor invariants; deserialized values go through this
    /// before use.
    pub fn validate(&self) -> Result<(), ArithError> {
        if self.prime < 3 || !is_prime(self.prime) {
            return Err(ArithError::InvalidInput(format!(
                "modulus base {} is not an odd prime",
                self.prime
            )));
        }
        if self.level == 0 {
            return Err(ArithError::InvalidInput(
                "level exponent r must be at least 1".into(),
            ));
        }
        if self.generator_images.len() != 1 {
            return Err(ArithError::InvalidInput(format!(
                "expected one generator image for the cyclic group (Z/p^r)^×, got {}",
                self.generator_images.len()
            )));
        }
        let order = self.group_order();
        for img in &self.generator_images {
            if order % img.order != 0 {
                return Err(ArithError::InvalidInput(format!(
                    "image order {} does not divide the group order {order}",
                    img.order
                )));
            }
        }
        if self.infinity_signs.is_empty()
            || self.infinity_signs.iter().any(|s| *s != 1 && *s != -1)
        {
            return Err(ArithError::InvalidInput(
                "infinity signs must be a nonempty list of ±1".into(),
            ));
        }
        Ok(())
    }

    /// #(Z/p^r)^× = p^{r−1}(p−1).
    pub fn group_order(&self) -> u64 {
        self.prime.pow(self.level - 1) * (self.prime - 1)
    }

    /// p^r.
    pub fn modulus(&self) -> u64 {
        self.prime.pow(self.level)
    }

    /// The fixed generator of (Z/p^r)^×.
    pub fn generator(&self) -> u64 {
        smallest_primitive_root_mod_p2(self.prime) % self.modulus()
    }

    /// χ(u) for a unit u, via discrete logarithm to the fixed generator.
    pub fn eval_unit(&self, u: i64) -> Result<RootOfUnity, ArithError> {
        let m = self.modulus();
        let uu = u.rem_euclid(m as i64) as u64;
        if uu == 0 || uu % self.prime == 0 {
            return Err(ArithError::InvalidInput(format!(
                "{u} is not a unit mod {}^{}",
                self.prime, self.level
            )));
        }
        let k = discrete_log(self.generator(), uu, m, self.group_order()).ok_or_else(|| {
            ArithError::InvalidInput(format!("no discrete log for {uu} mod {m}"))
        })?;
        Ok(self.generator_images[0].pow(k as i64))
    }

    /// χ(−1) on the finite part, as ±1.
    pub fn finite_minus_one(&self) -> Result<i8, ArithError> {
        let v = self.eval_unit(-1)?;
        if v.is_one() {
            Ok(1)
        } else if v.pow(2).is_one() {
            Ok(-1)
        } else {
            Err(ArithError::InvalidInput(
                "χ(−1) is not a square root of 1".into(),
            ))
        }
    }

    /// Order of χ as a character.
    pub fn order(&self) -> u64 {
        self.generator_images.iter().fold(1, |acc, z| num_integer::lcm(acc, z.order))
    }

    /// Whether χ is the trivial character.
    pub fn is_trivial(&self) -> bool {
        self.generator_images.iter().all(|z| z.is_one())
    }

    /// χ^{−1} (equal to the complex conjugate for finite order).
    pub fn inverse(&self) -> Self {
        FiniteOrderCharacter {
            prime: self.prime,
            level: self.level,
            generator_images: self.generator_images.iter().map(|z| z.inv()).collect(),
            infinity_signs: self.infinity_signs.clone(),
        }
    }

    /// Pointwise product of two characters at the same modulus.
    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.prime != other.prime || self.level != other.level {
            return Err(ArithError::InvalidInput(format!(
                "modulus mismatch: {}^{} vs {}^{}",
                self.prime, self.level, other.prime, other.level
            )));
        }
        if self.infinity_signs.len() != other.infinity_signs.len() {
            return Err(ArithError::InvalidInput(
                "archimedean place count mismatch".into(),
            ));
        }
        FiniteOrderCharacter::new(
            self.prime,
            self.level,
            self.generator_images
                .iter()
                .zip(&other.generator_images)
                .map(|(a, b)| a.mul(b))
                .collect(),
            self.infinity_signs
                .iter()
                .zip(&other.infinity_signs)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    /// Conductor exponent: the smallest c ≤ r with χ trivial on 1 + p^c O
    /// (c = 0 meaning trivial on all units).
    pub fn conductor(&self) -> u32 {
        let m = self.modulus();
        'scan: for c in 0..=self.level {
            let step = self.prime.pow(c);
            for k in 1..(m / step) {
                let u = (1 + k * step) % m;
                if u <= 1 || u % self.prime == 0 {
                    continue;
                }
                let v = self
                    .eval_unit(u as i64)
                    .expect("unit evaluation cannot fail on 1 + p^c k");
                if !v.is_one() {
                    continue 'scan;
                }
            }
            return c;
        }
        self.level
    }

    /// Local Gauss sum τ(χ, ψ^shift) = Σ_{u ∈ (Z/p^c)^×} χ(u) ζ_{p^c}^{u·shift},
    /// an exact cyclotomic integer; 1 when c = 0. ψ is the standard additive
    /// character of conductor Z_p, ψ(x) = e^{2πi {x}}.
    pub fn gauss_sum(&self, psi_shift: i64) -> Result<Cyc, ArithError> {
        let c = self.conductor();
        if c == 0 {
            return Ok(Cyc::one());
        }
        let pc = self.prime.pow(c);
        let lvl = num_integer::lcm(pc, self.order());
        let mut coeffs = vec![Rational::from_integer(0.into()); lvl as usize];
        for u in 1..pc {
            if u % self.prime == 0 {
                continue;
            }
            let chi_u = self.eval_unit(u as i64)?;
            let zeta = RootOfUnity::new(pc, (u as i64) * psi_shift);
            let term = chi_u.mul(&zeta);
            let idx = (term.exponent * (lvl / term.order)) % lvl;
            coeffs[idx as usize] += Rational::from_integer(1.into());
        }
        Ok(Cyc { level: lvl, coeffs })
    }

    /// ε(s, χ, ψ) = q^{−s·c(χ)} τ(χ^{−1}, ψ) as a rational function in
    /// X = q^{−s}; the unramified case returns 1.
    pub fn epsilon_factor(&self) -> Result<RationalFunctionInQs, ArithError> {
        let q = self.prime;
        let c = self.conductor();
        if c == 0 {
            return Ok(RationalFunctionInQs::one(q));
        }
        let tau = Scalar::from_cyc(self.inverse().gauss_sum(1)?);
        let num = LaurentPoly::monomial(tau, c as i64);
        Ok(RationalFunctionInQs::from_parts(q, num, LaurentPoly::one()))
    }
}

/// Hecke character model φ = |·|^w φ_fin with w the common archimedean
/// exponent vector (one entry per real place).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeCharacterModel {
    pub finite_part: FiniteOrderCharacter,
    pub infinity_exponent: Vec<i32>,
}

impl HeckeCharacterModel {
    /// Builds the model, requiring one exponent per archimedean sign.
    pub fn new(
        finite_part: FiniteOrderCharacter,
        infinity_exponent: Vec<i32>,
    ) -> Result<Self, ArithError> {
        finite_part.validate()?;
        if infinity_exponent.len() != finite_part.infinity_signs.len() {
            return Err(ArithError::InvalidInput(format!(
                "{} infinity exponents for {} real places",
                infinity_exponent.len(),
                finite_part.infinity_signs.len()
            )));
        }
        Ok(HeckeCharacterModel { finite_part, infinity_exponent })
    }

    /// Criticality: (−1)^{n−α} φ(−1_σ) = 1 at every real place.
    pub fn is_critical(&self, n: u32, alpha: u32) -> bool {
        if alpha > n {
            return false;
        }
        let want: i8 = if (n - alpha) % 2 == 0 { 1 } else { -1 };
        self.finite_part.infinity_signs.iter().all(|s| *s == want)
    }
}

/// Idele-class representative supported at p and ∞: the class of the idele
/// with component sign·|x_∞| at the real place and unit·p^{val} at p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdeleClassPoint {
    pub unit: u64,
    pub prime_valuation: u32,
    pub infinity_sign: i8,
}

impl IdeleClassPoint {
    /// A unit point with trivial valuation and positive archimedean part.
    pub fn unit(u: u64) -> Self {
        IdeleClassPoint { unit: u, prime_valuation: 0, infinity_sign: 1 }
    }
}

/// p-adic avatar value φ̂(x) = x_p^w · i_p(x_∞^{−w} φ(x)) at working
/// precision. On units u with x_∞ = 1 this is u^w · i_p(φ_fin(u)).
pub fn padic_avatar_eval(
    phi: &HeckeCharacterModel,
    x: &IdeleClassPoint,
    ctx: &Arc<PadicCtx>,
) -> Result<PadicElement, ArithError> {
    let chi = &phi.finite_part;
    if ctx.prime != chi.prime {
        return Err(ArithError::InvalidInput(format!(
            "coefficient ring prime {} does not match character prime {}",
            ctx.prime, chi.prime
        )));
    }
    if x.infinity_sign != 1 && x.infinity_sign != -1 {
        return Err(ArithError::InvalidInput("infinity sign must be ±1".into()));
    }
    if x.unit == 0 || x.unit % chi.prime == 0 {
        return Err(ArithError::InvalidInput(format!(
            "{} is not a unit at p = {}",
            x.unit, chi.prime
        )));
    }
    if phi.infinity_exponent.len() != 1 {
        return Err(ArithError::InvalidInput(
            "avatar evaluation supports a single real place".into(),
        ));
    }
    let w = phi.infinity_exponent[0];
    if w < 0 {
        return Err(ArithError::InvalidInput(format!(
            "negative infinity exponent {w} is outside the interpolation range"
        )));
    }
    // x_p^w for x_p = unit · p^{val}.
    let mut value = PadicElement::from_u64(ctx, x.unit).pow(w as u64);
    if x.prime_valuation > 0 {
        let p_pow = PadicElement::from_u64(ctx, ctx.prime).pow((x.prime_valuation * w as u32) as u64);
        value = value.mul(&p_pow);
    }
    // x_∞^{−w} φ_∞(x_∞) on the sign: the uniformizer component acts
    // trivially on the finite part.
    let mut root = chi.eval_unit(x.unit as i64)?;
    let mut sign = 1i64;
    if x.infinity_sign == -1 {
        if w % 2 != 0 {
            sign = -sign;
        }
        if chi.infinity_signs[0] == -1 {
            sign = -sign;
        }
    }
    if sign == -1 {
        root = root.mul(&RootOfUnity::new(2, 1));
    }
    let embedded = root.embed_padic(ctx)?;
    Ok(value.mul(&embedded))
}

/// Smallest primitive root mod p², which generates (Z/p^r)^× for every
/// r ≥ 1 (p odd).
fn smallest_primitive_root_mod_p2(p: u64) -> u64 {
    let g = smallest_primitive_root(p);
    // g is a primitive root mod p; it fails mod p² only if g^{p−1} ≡ 1,
    // in which case g + p works.
    if pow_mod_u128(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

fn pow_mod_u128(base: u64, mut e: u64, m: u64) -> u64 {
    let mut b = (base % m) as u128;
    let mm = m as u128;
    let mut acc: u128 = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % mm;
        }
        b = b * b % mm;
        e >>= 1;
    }
    acc as u64
}

fn discrete_log(g: u64, target: u64, modulus: u64, group_order: u64) -> Option<u64> {
    let mut acc: u64 = 1 % modulus;
    for k in 0..group_order {
        if acc == target % modulus {
            return Some(k);
        }
        acc = ((acc as u128 * g as u128) % modulus as u128) as u64;
    }
    None
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::padic::teichmuller;
    use crate::exact_arith::rational::rat_int;
    use proptest::prelude::*;

    fn char_of_order(p: u64, r: u32, order: u64) -> FiniteOrderCharacter {
        let group = p.pow(r - 1) * (p - 1);
        assert_eq!(group % order, 0);
        FiniteOrderCharacter::new(p, r, vec![RootOfUnity::new(order, 1)], vec![1]).unwrap()
    }

    #[test]
    fn conductor_examples() {
        // Trivial mod 25 → 0; exact order 5 mod 25 → 2; order 4 mod 25
        // factors through (Z/5)^× → 1.
        assert_eq!(FiniteOrderCharacter::trivial(5, 2).unwrap().conductor(), 0);
        assert_eq!(char_of_order(5, 2, 5).conductor(), 2);
        assert_eq!(char_of_order(5, 2, 4).conductor(), 1);
        assert_eq!(char_of_order(5, 2, 20).conductor(), 2);
        assert_eq!(char_of_order(3, 2, 2).conductor(), 1);
    }

    #[test]
    fn generator_is_primitive() {
        for p in [3u64, 5, 7, 11] {
            for r in 1..=2u32 {
                let chi = FiniteOrderCharacter::trivial(p, r).unwrap();
                let g = chi.generator();
                let m = chi.modulus();
                let order = chi.group_order();
                let mut acc = 1u64;
                let mut seen = 0;
                for _ in 0..order {
                    acc = acc * g % m;
                    seen += 1;
                    if acc == 1 {
                        break;
                    }
                }
                assert_eq!(seen, order, "generator order mismatch for p={p}, r={r}");
            }
        }
    }

    #[test]
    fn quadratic_gauss_sum_squares_to_five() {
        let chi = char_of_order(5, 1, 2);
        let tau = chi.gauss_sum(1).unwrap();
        let square = tau.mul(&tau);
        assert_eq!(square.as_rational(), Some(rat_int(5)));
        // τ·τ̄ = χ(−1)·p^c = 5 as well, since χ(−1) = 1 for p ≡ 1 mod 4.
        let conj_prod = tau.mul(&tau.conj());
        assert_eq!(conj_prod.as_rational(), Some(rat_int(5)));
    }

    #[test]
    fn gauss_sum_duality_all_characters() {
        // τ(χ)·τ(χ^{−1}) = χ(−1)·p^c for every character mod p^r.
        for (p, r) in [(3u64, 1u32), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2)] {
            let group = p.pow(r - 1) * (p - 1);
            for k in 0..group {
                let chi = FiniteOrderCharacter::new(
                    p,
                    r,
                    vec![RootOfUnity::new(group, k as i64)],
                    vec![1],
                )
                .unwrap();
                let c = chi.conductor();
                let tau = chi.gauss_sum(1).unwrap();
                let tau_inv = chi.inverse().gauss_sum(1).unwrap();
                let sign = chi.finite_minus_one().unwrap();
                let expect = rat_int(sign as i64) * rat_int(p.pow(c) as i64);
                let prod = tau.mul(&tau_inv);
                assert_eq!(
                    prod.as_rational(),
                    Some(expect),
                    "duality failed for p={p}, r={r}, image exponent {k}"
                );
            }
        }
    }

    #[test]
    fn gauss_sum_shift_twists_by_inverse_value() {
        // τ(χ, ψ^a) = χ^{−1}(a)·τ(χ, ψ) for a coprime to p.
        let chi = char_of_order(5, 1, 4);
        let base = chi.gauss_sum(1).unwrap();
        for a in [2i64, 3, 4] {
            let shifted = chi.gauss_sum(a).unwrap();
            let factor = Cyc::from_root(&chi.inverse().eval_unit(a).unwrap());
            assert_eq!(shifted, base.mul(&factor), "shift {a}");
        }
    }

    #[test]
    fn epsilon_factor_shapes() {
        // Unramified → 1; ramified → τ(χ^{−1})·X^c.
        let triv = FiniteOrderCharacter::trivial(3, 2).unwrap();
        assert!(triv.epsilon_factor().unwrap().is_one());

        let chi = char_of_order(3, 2, 6);
        assert_eq!(chi.conductor(), 2);
        let eps = chi.epsilon_factor().unwrap();
        // Evaluate exactly at s = 1: X = 3^{−1}, so the value is 3^{−2}·τ.
        let at_one = eps.eval_exact_at_integer_s(1).unwrap();
        let tau = Scalar::from_cyc(chi.inverse().gauss_sum(1).unwrap());
        let expect = tau.scale(&Rational::new(1.into(), 9.into()));
        assert!(at_one.sub(&expect).is_zero());
    }

    #[test]
    fn epsilon_duality() {
        // ε(s,χ)·ε(1−s,χ^{−1}) = χ(−1) for ramified χ.
        for (p, r) in [(3u64, 2u32), (5, 2)] {
            let group = p.pow(r - 1) * (p - 1);
            for k in 1..group {
                let chi = FiniteOrderCharacter::new(
                    p,
                    r,
                    vec![RootOfUnity::new(group, k as i64)],
                    vec![1],
                )
                .unwrap();
                let c = chi.conductor();
                if c == 0 {
                    continue;
                }
                // ε(1−s, χ^{−1}) = q^{−c}·X^{−c}·τ(χ, ψ) in the same X.
                let eps_s = chi.epsilon_factor().unwrap();
                let tau = Scalar::from_cyc(chi.gauss_sum(1).unwrap());
                let coeff = tau.scale(&Rational::new(
                    1.into(),
                    num_bigint::BigInt::from(p.pow(c)),
                ));
                let eps_dual = RationalFunctionInQs::from_parts(
                    p,
                    LaurentPoly::monomial(coeff, -(c as i64)),
                    LaurentPoly::one(),
                );
                let prod = eps_s.mul(&eps_dual);
                let sign = chi.finite_minus_one().unwrap();
                let expect = RationalFunctionInQs::from_scalar(p, Scalar::from_int(sign as i64));
                assert!(
                    prod.equals(&expect),
                    "ε-duality failed for p={p}, r={r}, exponent {k}"
                );
            }
        }
    }

    #[test]
    fn avatar_examples() {
        let ctx = PadicCtx::get(5, 1, 12);
        // Trivial finite part, w = 0 → constant 1.
        let triv = HeckeCharacterModel::new(
            FiniteOrderCharacter::trivial(5, 1).unwrap(),
            vec![0],
        )
        .unwrap();
        let v = padic_avatar_eval(&triv, &IdeleClassPoint::unit(7), &ctx).unwrap();
        assert_eq!(v, PadicElement::one(&ctx));

        // w = 2, unit 3, trivial finite part → 9 in Z_5.
        let sq = HeckeCharacterModel::new(
            FiniteOrderCharacter::trivial(5, 1).unwrap(),
            vec![2],
        )
        .unwrap();
        let v = padic_avatar_eval(&sq, &IdeleClassPoint::unit(3), &ctx).unwrap();
        assert_eq!(v, PadicElement::from_u64(&ctx, 9));

        // Order-4 character mod 5, w = 0, at the generator u = 2: the value
        // is the Teichmüller lift of 2.
        let quartic = HeckeCharacterModel::new(
            FiniteOrderCharacter::new(5, 1, vec![RootOfUnity::new(4, 1)], vec![1]).unwrap(),
            vec![0],
        )
        .unwrap();
        let v = padic_avatar_eval(&quartic, &IdeleClassPoint::unit(2), &ctx).unwrap();
        assert_eq!(v, teichmuller(5, 12, 2).unwrap());
    }

    #[test]
    fn avatar_uniformizer_component() {
        // φ̂ on the class of p is p^w: the finite part acts trivially on the
        // uniformizer.
        let ctx = PadicCtx::get(5, 1, 10);
        let phi = HeckeCharacterModel::new(
            FiniteOrderCharacter::new(5, 2, vec![RootOfUnity::new(4, 1)], vec![1]).unwrap(),
            vec![3],
        )
        .unwrap();
        let x = IdeleClassPoint { unit: 1, prime_valuation: 1, infinity_sign: 1 };
        let v = padic_avatar_eval(&phi, &x, &ctx).unwrap();
        assert_eq!(v, PadicElement::from_u64(&ctx, 125));
    }

    #[test]
    fn avatar_rejects_non_units() {
        let ctx = PadicCtx::get(5, 1, 8);
        let triv = HeckeCharacterModel::new(
            FiniteOrderCharacter::trivial(5, 1).unwrap(),
            vec![0],
        )
        .unwrap();
        assert!(padic_avatar_eval(&triv, &IdeleClassPoint::unit(10), &ctx).is_err());
    }

    #[test]
    fn criticality_examples() {
        let even = HeckeCharacterModel::new(
            FiniteOrderCharacter::new(5, 1, vec![RootOfUnity::one()], vec![1]).unwrap(),
            vec![2],
        )
        .unwrap();
        assert!(even.is_critical(3, 1));
        assert!(!even.is_critical(3, 0));

        let odd = HeckeCharacterModel::new(
            FiniteOrderCharacter::new(5, 1, vec![RootOfUnity::one()], vec![-1]).unwrap(),
            vec![1],
        )
        .unwrap();
        assert!(odd.is_critical(3, 0));
        assert!(!odd.is_critical(3, 1));
    }

    #[test]
    fn json_descriptor_round_trip() {
        let chi = FiniteOrderCharacter::new(
            5,
            2,
            vec![RootOfUnity::new(20, 3)],
            vec![-1],
        )
        .unwrap();
        let text = serde_json::to_string(&chi).unwrap();
        let back: FiniteOrderCharacter = serde_json::from_str(&text).unwrap();
        back.validate().unwrap();
        assert_eq!(chi, back);

        let literal = r#"{"p":3,"r":2,"generator_images":[{"order":6,"exponent":1}],"infinity_signs":[1]}"#;
        let parsed: FiniteOrderCharacter = serde_json::from_str(literal).unwrap();
        parsed.validate().unwrap();
        assert_eq!(parsed.conductor(), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn avatar_multiplicative_on_units(u1 in 1u64..200, u2 in 1u64..200, k in 0u64..20, w in 0i32..4) {
            prop_assume!(u1 % 5 != 0 && u2 % 5 != 0);
            let ctx = PadicCtx::get(5, 1, 10);
            let chi = FiniteOrderCharacter::new(5, 2, vec![RootOfUnity::new(20, k as i64)], vec![1]).unwrap();
            let phi = HeckeCharacterModel::new(chi, vec![w]).unwrap();
            let a = padic_avatar_eval(&phi, &IdeleClassPoint::unit(u1), &ctx).unwrap();
            let b = padic_avatar_eval(&phi, &IdeleClassPoint::unit(u2), &ctx).unwrap();
            let ab = padic_avatar_eval(&phi, &IdeleClassPoint::unit(u1 * u2), &ctx).unwrap();
            prop_assert_eq!(a.mul(&b), ab);
        }

        #[test]
        fn character_multiplicative(p_idx in 0usize..2, k1 in 0u64..20, k2 in 0u64..20, u in 1i64..200) {
            let p = [3u64, 5][p_idx];
            prop_assume!(u % (p as i64) != 0);
            let group = p * (p - 1);
            let chi1 = FiniteOrderCharacter::new(p, 2, vec![RootOfUnity::new(group, (k1 % group) as i64)], vec![1]).unwrap();
            let chi2 = FiniteOrderCharacter::new(p, 2, vec![RootOfUnity::new(group, (k2 % group) as i64)], vec![1]).unwrap();
            let prod = chi1.mul(&chi2).unwrap();
            let lhs = prod.eval_unit(u).unwrap();
            let rhs = chi1.eval_unit(u).unwrap().mul(&chi2.eval_unit(u).unwrap());
            prop_assert!(lhs.mul(&rhs.inv()).is_one());
        }
    }
}
