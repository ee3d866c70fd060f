//! Local factors at the finite and real places for a quadratic extension
//! E/F: Satake data of the GL(2) components, Asai and GL(1) L-factors,
//! ε- and γ-factors, the modified Euler factors entering p-adic
//! interpolation, archimedean Γ-factor products, and the unit-root
//! eigenvalue constants λ.
//!
//! A place of F either splits in E, pairing two GL(2) representations
//! (one for each divisor), or stays inert, carrying a single
//! representation over the quadratic unramified extension. The Asai
//! transfer is tracked through its Frobenius data: for split places the
//! four pairwise products of the two parameter sets, for inert places
//! the two parameters together with a quadratic block pairing ±√(αβ).
//! The square-root pair is always handled jointly (its product is −αβ),
//! so every computation stays inside cyclotomic numbers extended by √q.

use crate::characters::FiniteOrderCharacter;
use crate::exact_arith::rational::{factorial, rat, rat_int};
use crate::exact_arith::{
    ArithError, Cyc, LaurentPoly, Rational, RationalFunctionInQs, RootOfUnity, Scalar,
};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A root of unity times q^{k/2}: the shape of every Satake parameter,
/// central character value, and eigenvalue constant handled here. Closed
/// under product and inverse, with an exact q-valuation k/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QMonomial {
    pub root: RootOfUnity,
    pub half_power: i64,
}

impl QMonomial {
    pub fn one() -> Self {
        QMonomial {
            root: RootOfUnity::one(),
            half_power: 0,
        }
    }

    pub fn new(root: RootOfUnity, half_power: i64) -> Self {
        QMonomial { root, half_power }
    }

    pub fn from_root(root: RootOfUnity) -> Self {
        QMonomial {
            root,
            half_power: 0,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        QMonomial {
            root: self.root.mul(&other.root),
            half_power: self.half_power + other.half_power,
        }
    }

    pub fn inv(&self) -> Self {
        QMonomial {
            root: self.root.inv(),
            half_power: -self.half_power,
        }
    }

    pub fn neg(&self) -> Self {
        QMonomial {
            root: self.root.mul(&RootOfUnity::new(2, 1)),
            half_power: self.half_power,
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        QMonomial {
            root: self.root.pow(k),
            half_power: self.half_power * k,
        }
    }

    /// The value as an exact scalar over the base q.
    pub fn value(&self, q: u64) -> Scalar {
        Scalar::from_root(&self.root).mul(&Scalar::q_half_pow(q, self.half_power))
    }

    /// Exact q-valuation, in half-integer units of log q.
    pub fn q_valuation(&self) -> Rational {
        rat(self.half_power, 2)
    }
}

/// Local GL(2) data at one divisor of a finite place, by ramification
/// pattern. Parameters are stored as root-of-unity × q^{k/2} monomials in
/// the residue cardinality of the *base* place, so inert divisors (whose
/// own residue field is the quadratic extension) use even half-powers for
/// integral powers of their q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Gl2Rep {
    /// Principal series with both characters unramified; `beta` is the
    /// slot paired with the unit root under near-ordinarity.
    UnramifiedPrincipal { alpha: QMonomial, beta: QMonomial },
    /// Twist of Steinberg by the unramified quadratic character with
    /// sign `eta` at the uniformizer; parameters (ηq^{1/2}, ηq^{−1/2}).
    Special { eta: i8 },
    /// Principal series with one unramified character (value stored) and
    /// one ramified character (entering only through omitted factors).
    RamifiedPrincipal { unramified_value: QMonomial },
}

impl Gl2Rep {
    fn validate(&self) -> Result<(), ArithError> {
        if let Gl2Rep::Special { eta } = self {
            if *eta != 1 && *eta != -1 {
                return Err(ArithError::InvalidInput(format!(
                    "special representation sign must be ±1, got {eta}"
                )));
            }
        }
        Ok(())
    }

    fn is_ramified(&self) -> bool {
        matches!(self, Gl2Rep::RamifiedPrincipal { .. })
    }

    /// Full Satake pair (α, β) in base-place half-power units; `g` is 1
    /// for a split divisor and 2 for an inert one (where q_w = q_v²).
    pub(crate) fn full_params(&self, g: i64) -> Result<(QMonomial, QMonomial), ArithError> {
        match self {
            Gl2Rep::UnramifiedPrincipal { alpha, beta } => Ok((*alpha, *beta)),
            Gl2Rep::Special { eta } => {
                let z = eta_root(*eta);
                Ok((
                    QMonomial::new(z, g),
                    QMonomial::new(z, -g),
                ))
            }
            Gl2Rep::RamifiedPrincipal { .. } => Err(ArithError::InvalidInput(
                "ramified principal series has no full unramified parameter pair".into(),
            )),
        }
    }

    /// Central character value at the uniformizer, when unramified.
    fn omega(&self, g: i64) -> Option<QMonomial> {
        match self {
            Gl2Rep::UnramifiedPrincipal { alpha, beta } => Some(alpha.mul(beta)),
            Gl2Rep::Special { .. } => Some(QMonomial::one()),
            Gl2Rep::RamifiedPrincipal { .. } => None,
        }
        .map(|v| {
            let _ = g;
            v
        })
    }

    /// The β-parameter entering the eigenvalue constants λ.
    fn ordinary_slot(&self, g: i64) -> Result<QMonomial, ArithError> {
        match self {
            Gl2Rep::UnramifiedPrincipal { beta, .. } => Ok(*beta),
            Gl2Rep::Special { eta } => Ok(QMonomial::new(eta_root(*eta), -g)),
            Gl2Rep::RamifiedPrincipal { .. } => Err(ArithError::InvalidInput(
                "not nearly ordinary: ramified principal series component".into(),
            )),
        }
    }
}

fn eta_root(eta: i8) -> RootOfUnity {
    if eta == 1 {
        RootOfUnity::one()
    } else {
        RootOfUnity::new(2, 1)
    }
}

/// 1 − c·X^k for any nonzero k, including the negative exponents of
/// reflected factors at 1−s.
fn one_minus_any(c: Scalar, k: i64) -> LaurentPoly<Scalar> {
    if k > 0 {
        return LaurentPoly::one_minus(c, k);
    }
    assert!(k < 0, "exponent must be nonzero");
    let kk = (-k) as usize;
    let mut coeffs = vec![Scalar::zero(); kk + 1];
    coeffs[0] = c.neg();
    coeffs[kk] = Scalar::one();
    LaurentPoly::new(k, coeffs)
}

/// Satake data of the base-change representation at one finite place of
/// F: the residue cardinality q of the place, the GL(2) component at each
/// divisor of the place in E, and optionally the central character value
/// at the uniformizer (derived from the parameters when omitted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SatakePlaceData {
    Split {
        q: u64,
        w: Gl2Rep,
        wc: Gl2Rep,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        omega: Option<QMonomial>,
    },
    Inert {
        q: u64,
        w: Gl2Rep,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        omega: Option<QMonomial>,
    },
}

impl SatakePlaceData {
    pub fn q(&self) -> u64 {
        match self {
            SatakePlaceData::Split { q, .. } | SatakePlaceData::Inert { q, .. } => *q,
        }
    }

    pub fn is_split(&self) -> bool {
        matches!(self, SatakePlaceData::Split { .. })
    }

    pub fn validate(&self) -> Result<(), ArithError> {
        if self.q() < 2 {
            return Err(ArithError::InvalidInput(format!(
                "residue cardinality must be at least 2, got {}",
                self.q()
            )));
        }
        match self {
            SatakePlaceData::Split { w, wc, omega, .. } => {
                w.validate()?;
                wc.validate()?;
                let derived = w.omega(1).zip(wc.omega(1)).map(|(a, b)| a.mul(&b));
                check_omega(omega, derived)
            }
            SatakePlaceData::Inert { w, omega, .. } => {
                w.validate()?;
                check_omega(omega, w.omega(2))
            }
        }
    }

    /// Central character of the place restricted to F, evaluated at the
    /// uniformizer; `None` when that restriction is ramified.
    pub fn omega_value(&self) -> Option<QMonomial> {
        match self {
            SatakePlaceData::Split { w, wc, omega, .. } => omega
                .or_else(|| w.omega(1).zip(wc.omega(1)).map(|(a, b)| a.mul(&b))),
            SatakePlaceData::Inert { w, omega, .. } => omega.or_else(|| w.omega(2)),
        }
    }

    /// The α-eigenvalue of the place: product of the α-parameters of the
    /// divisors (split) or the α-parameter of the single divisor (inert).
    pub fn alpha_eigenvalue(&self) -> Result<QMonomial, ArithError> {
        match self {
            SatakePlaceData::Split { w, wc, .. } => {
                let (aw, _) = w.full_params(1)?;
                let (awc, _) = wc.full_params(1)?;
                Ok(aw.mul(&awc))
            }
            SatakePlaceData::Inert { w, .. } => Ok(w.full_params(2)?.0),
        }
    }

    /// The β-eigenvalue of the place: the complementary product of the
    /// β-parameters, the line carried by the stabilized vector.
    pub fn beta_eigenvalue(&self) -> Result<QMonomial, ArithError> {
        match self {
            SatakePlaceData::Split { w, wc, .. } => {
                let (_, bw) = w.full_params(1)?;
                let (_, bwc) = wc.full_params(1)?;
                Ok(bw.mul(&bwc))
            }
            SatakePlaceData::Inert { w, .. } => Ok(w.full_params(2)?.1),
        }
    }
}

fn check_omega(
    given: &Option<QMonomial>,
    derived: Option<QMonomial>,
) -> Result<(), ArithError> {
    match (given, derived) {
        (Some(g), Some(d)) if *g != d => Err(ArithError::InvalidInput(format!(
            "central character value {:?} inconsistent with parameters (expected {:?})",
            g, d
        ))),
        (Some(_), None) => Err(ArithError::InvalidInput(
            "central character restriction is ramified; no unramified value may be given".into(),
        )),
        _ => Ok(()),
    }
}

/// The local component of a finite-order twisting character: unramified
/// with a given value at the uniformizer, or ramified with its Gauss-sum
/// data. Characters of p-power conductor are unramified away from p with
/// value the image of the Frobenius/uniformizer class.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalTwist {
    Unramified { value: RootOfUnity },
    Ramified { character: FiniteOrderCharacter },
}

impl LocalTwist {
    pub fn trivial() -> Self {
        LocalTwist::Unramified {
            value: RootOfUnity::one(),
        }
    }

    /// The local twist at the prime of the character itself: unramified
    /// (with value 1, the uniformizer acting trivially) when the
    /// conductor is trivial, ramified otherwise.
    pub fn from_character(chi: &FiniteOrderCharacter) -> Self {
        if chi.conductor() == 0 {
            LocalTwist::trivial()
        } else {
            LocalTwist::Ramified {
                character: chi.clone(),
            }
        }
    }

    fn conductor(&self) -> u32 {
        match self {
            LocalTwist::Unramified { .. } => 0,
            LocalTwist::Ramified { character } => character.conductor(),
        }
    }
}

/// One Euler block of the Asai L-factor: the surviving (smallest)
/// Frobenius eigenvalue, the degree in X = q^{−s} (2 for the quadratic
/// block of inert places, else 1), and the monodromy length (1 for plain
/// character blocks, ℓ for a length-ℓ Steinberg-type block, whose dual
/// eigenvalue picks up q^{ℓ−1}).
#[derive(Debug, Clone, Copy)]
struct AsaiBlock {
    value: QMonomial,
    x_degree: u8,
    length: u8,
}

impl AsaiBlock {
    fn character(value: QMonomial) -> Self {
        AsaiBlock {
            value,
            x_degree: 1,
            length: 1,
        }
    }

    fn steinberg(value: QMonomial, length: u8) -> Self {
        AsaiBlock {
            value,
            x_degree: 1,
            length,
        }
    }

    fn quadratic(value: QMonomial) -> Self {
        AsaiBlock {
            value,
            x_degree: 2,
            length: 1,
        }
    }
}

/// Frobenius data of the Asai transfer at one place, pre-twist: the Euler
/// blocks of the L-factor, the quotient eigenvalues of the Steinberg-type
/// blocks (each contributing a monomial −αX to the ε-factor at unramified
/// twist), and the semisimplified eigenvalues (linear values plus
/// quadratic-pair products) governing the ε-factor at ramified twist.
/// `full` records whether all four dimensions are unramified, which the
/// γ-factor requires.
struct AsaiShape {
    q: u64,
    l_blocks: Vec<AsaiBlock>,
    sp_eps_alphas: Vec<QMonomial>,
    ss_linear: Vec<QMonomial>,
    ss_quad: Vec<QMonomial>,
    full: bool,
}

fn analyze(data: &SatakePlaceData) -> Result<AsaiShape, ArithError> {
    data.validate()?;
    let q = data.q();
    match data {
        SatakePlaceData::Split { w, wc, .. } => analyze_split(q, w, wc),
        SatakePlaceData::Inert { w, .. } => analyze_inert(q, w),
    }
}

fn analyze_split(q: u64, w: &Gl2Rep, wc: &Gl2Rep) -> Result<AsaiShape, ArithError> {
    use Gl2Rep::*;
    if w.is_ramified() && wc.is_ramified() {
        return Err(ArithError::InvalidInput(
            "unsupported ramification combination: split place with ramified principal \
             series at both divisors (the product of the ramified characters is not \
             determined by per-divisor data)"
                .into(),
        ));
    }
    let shape = match (w, wc) {
        (UnramifiedPrincipal { .. }, UnramifiedPrincipal { .. }) => {
            let (a, b) = w.full_params(1)?;
            let (a2, b2) = wc.full_params(1)?;
            let prods = vec![a.mul(&a2), a.mul(&b2), b.mul(&a2), b.mul(&b2)];
            AsaiShape {
                q,
                l_blocks: prods.iter().map(|v| AsaiBlock::character(*v)).collect(),
                sp_eps_alphas: vec![],
                ss_linear: prods,
                ss_quad: vec![],
                full: true,
            }
        }
        (UnramifiedPrincipal { .. }, Special { .. })
        | (Special { .. }, UnramifiedPrincipal { .. }) => {
            // Tensoring a two-character sum with a Steinberg twist gives
            // two Steinberg-type blocks, one per character.
            let (ps, sp) = if matches!(w, UnramifiedPrincipal { .. }) {
                (w, wc)
            } else {
                (wc, w)
            };
            let (a, b) = ps.full_params(1)?;
            let (sp_a, sp_b) = sp.full_params(1)?;
            AsaiShape {
                q,
                l_blocks: vec![
                    AsaiBlock::steinberg(a.mul(&sp_b), 2),
                    AsaiBlock::steinberg(b.mul(&sp_b), 2),
                ],
                sp_eps_alphas: vec![a.mul(&sp_a), b.mul(&sp_a)],
                ss_linear: vec![a.mul(&sp_a), a.mul(&sp_b), b.mul(&sp_a), b.mul(&sp_b)],
                ss_quad: vec![],
                full: true,
            }
        }
        (Special { eta }, Special { eta: eta2 }) => {
            // Steinberg ⊗ Steinberg: one length-3 block and one character,
            // both on the product sign χ = ηη′.
            let chi = eta_root(*eta).mul(&eta_root(*eta2));
            let c = QMonomial::from_root(chi);
            AsaiShape {
                q,
                l_blocks: vec![
                    AsaiBlock::steinberg(QMonomial::new(chi, -2), 3),
                    AsaiBlock::character(c),
                ],
                sp_eps_alphas: vec![c, QMonomial::new(chi, 2)],
                ss_linear: vec![
                    QMonomial::new(chi, 2),
                    c,
                    c,
                    QMonomial::new(chi, -2),
                ],
                ss_quad: vec![],
                full: true,
            }
        }
        (RamifiedPrincipal { unramified_value }, other)
        | (other, RamifiedPrincipal { unramified_value }) => {
            let mu = *unramified_value;
            let l_blocks = match other {
                UnramifiedPrincipal { alpha, beta } => vec![
                    AsaiBlock::character(mu.mul(alpha)),
                    AsaiBlock::character(mu.mul(beta)),
                ],
                Special { .. } => {
                    let (_, sp_b) = other.full_params(1)?;
                    vec![AsaiBlock::steinberg(mu.mul(&sp_b), 2)]
                }
                RamifiedPrincipal { .. } => unreachable!("both-ramified rejected above"),
            };
            AsaiShape {
                q,
                l_blocks,
                sp_eps_alphas: vec![],
                ss_linear: vec![],
                ss_quad: vec![],
                full: false,
            }
        }
    };
    Ok(shape)
}

fn analyze_inert(q: u64, w: &Gl2Rep) -> Result<AsaiShape, ArithError> {
    use Gl2Rep::*;
    let shape = match w {
        UnramifiedPrincipal { alpha, beta } => AsaiShape {
            q,
            l_blocks: vec![
                AsaiBlock::character(*alpha),
                AsaiBlock::character(*beta),
                AsaiBlock::quadratic(alpha.mul(beta)),
            ],
            sp_eps_alphas: vec![],
            ss_linear: vec![*alpha, *beta],
            ss_quad: vec![alpha.mul(beta)],
            full: true,
        },
        Special { eta } => {
            // The transfer of an inert Steinberg twist is a length-3 block
            // on η restricted to F plus the quadratic-residue character
            // times that restriction, whose uniformizer value is −η.
            let z = eta_root(*eta);
            AsaiShape {
                q,
                l_blocks: vec![
                    AsaiBlock::steinberg(QMonomial::new(z, -2), 3),
                    AsaiBlock::character(QMonomial::from_root(z).neg()),
                ],
                sp_eps_alphas: vec![QMonomial::from_root(z), QMonomial::new(z, 2)],
                ss_linear: vec![QMonomial::new(z, 2), QMonomial::new(z, -2)],
                ss_quad: vec![QMonomial::one()],
                full: true,
            }
        }
        RamifiedPrincipal { unramified_value } => AsaiShape {
            q,
            l_blocks: vec![AsaiBlock::character(*unramified_value)],
            sp_eps_alphas: vec![],
            ss_linear: vec![],
            ss_quad: vec![],
            full: false,
        },
    };
    Ok(shape)
}

impl AsaiShape {
    /// L(s) as a product over the twisted Euler blocks; a ramified twist
    /// kills every unramified block, leaving 1.
    fn l_factor(&self, twist: &LocalTwist) -> RationalFunctionInQs {
        match twist {
            LocalTwist::Ramified { .. } => RationalFunctionInQs::one(self.q),
            LocalTwist::Unramified { value } => {
                let t = QMonomial::from_root(*value);
                let mut acc = RationalFunctionInQs::one(self.q);
                for block in &self.l_blocks {
                    let d = block.x_degree as i64;
                    let coeff = block.value.mul(&t.pow(d)).value(self.q);
                    acc = acc.mul(&RationalFunctionInQs::inv_euler_block(self.q, coeff, d));
                }
                acc
            }
        }
    }

    /// 1/L(s) as a polynomial, for explicit-formula assembly.
    fn l_factor_inverse_poly(&self, twist_value: &RootOfUnity) -> RationalFunctionInQs {
        let t = QMonomial::from_root(*twist_value);
        let mut acc = RationalFunctionInQs::one(self.q);
        for block in &self.l_blocks {
            let d = block.x_degree as i64;
            let coeff = block.value.mul(&t.pow(d)).value(self.q);
            acc = acc.mul(&RationalFunctionInQs::euler_block(self.q, coeff, d));
        }
        acc
    }

    /// L(1−s) of the dual. Dualizing a block inverts its largest
    /// eigenvalue, so a degree-d length-ℓ block with surviving value v
    /// contributes 1/(1 − (vt^d)^{−1} q^{−(d+ℓ−1)} X^{−d}).
    fn dual_l_factor_one_minus_s(&self, twist_value: &RootOfUnity) -> RationalFunctionInQs {
        let t = QMonomial::from_root(*twist_value);
        let mut acc = RationalFunctionInQs::one(self.q);
        for block in &self.l_blocks {
            let d = block.x_degree as i64;
            let drop = d + block.length as i64 - 1;
            let coeff = block
                .value
                .mul(&t.pow(d))
                .inv()
                .mul(&QMonomial::new(RootOfUnity::one(), -2 * drop))
                .value(self.q);
            acc = acc.mul(&RationalFunctionInQs::from_parts(
                self.q,
                LaurentPoly::one(),
                one_minus_any(coeff, -d),
            ));
        }
        acc
    }

    /// ε(s) at unramified twist: each Steinberg-type block contributes a
    /// monomial −α·t·X, principal-series blocks contribute 1.
    fn epsilon_unramified(&self, twist_value: &RootOfUnity) -> RationalFunctionInQs {
        let t = QMonomial::from_root(*twist_value);
        let mut scalar = Scalar::one();
        for a in &self.sp_eps_alphas {
            scalar = scalar.mul(&a.mul(&t).value(self.q).neg());
        }
        RationalFunctionInQs::x_pow(self.q, self.sp_eps_alphas.len() as i64).scale(&scalar)
    }

    /// ε(s) at ramified twist of conductor c: the semisimplified
    /// eigenvalues each contribute X^c x^c τ(χ^{−1}, ψ), quadratic pairs
    /// jointly X^{2c}(−y)^c τ², with τ the Gauss sum of the inverse twist.
    fn epsilon_ramified(
        &self,
        chi: &FiniteOrderCharacter,
    ) -> Result<RationalFunctionInQs, ArithError> {
        if !self.full {
            return Err(ArithError::InvalidInput(
                "ε-factor at ramified twist needs all four unramified dimensions".into(),
            ));
        }
        if chi.prime != self.q {
            return Err(ArithError::InvalidInput(format!(
                "ramified twist lives at prime {} but the place has residue cardinality {}",
                chi.prime, self.q
            )));
        }
        let c = chi.conductor();
        let tau = Scalar::from_cyc(chi.inverse().gauss_sum(1)?);
        let mut scalar = Scalar::one();
        let mut x_exp: i64 = 0;
        let mut tau_exp: i64 = 0;
        for v in &self.ss_linear {
            scalar = scalar.mul(&v.pow(c as i64).value(self.q));
            x_exp += c as i64;
            tau_exp += 1;
        }
        for y in &self.ss_quad {
            scalar = scalar.mul(&y.neg().pow(c as i64).value(self.q));
            x_exp += 2 * c as i64;
            tau_exp += 2;
        }
        scalar = scalar.mul(&tau.pow(tau_exp)?);
        Ok(RationalFunctionInQs::x_pow(self.q, x_exp).scale(&scalar))
    }
}

/// The Asai L-factor L(s, As⁺(π_v) ⊗ χ_v) as an exact rational function
/// of X = q^{−s}. Ramified twists kill every block, giving 1. Ramified
/// GL(2) components contribute only through their unramified characters.
pub fn asai_l_factor(
    data: &SatakePlaceData,
    twist: &LocalTwist,
) -> Result<RationalFunctionInQs, ArithError> {
    Ok(analyze(data)?.l_factor(twist))
}

/// γ(s, As⁺(π_v) ⊗ χ_v, ψ) = ε·L(1−s, dual)/L(s), assembled exactly. For
/// an unramified twist the ε-factor is the product of the Steinberg-block
/// monomials; for a ramified twist L = L(dual) = 1 and γ is the ε-factor
/// built from Gauss sums. Data with a ramified GL(2) component is
/// rejected, since its ε-factor is not determined by the stored values.
pub fn asai_gamma_factor(
    data: &SatakePlaceData,
    twist: &LocalTwist,
) -> Result<RationalFunctionInQs, ArithError> {
    let shape = analyze(data)?;
    if !shape.full {
        return Err(ArithError::InvalidInput(
            "γ-factor undefined for data with a ramified component: its ε-factor is \
             not determined by per-divisor unramified values"
                .into(),
        ));
    }
    match twist {
        LocalTwist::Unramified { value } => {
            let eps = shape.epsilon_unramified(value);
            let l_inv = shape.l_factor_inverse_poly(value);
            let l_dual = shape.dual_l_factor_one_minus_s(value);
            Ok(eps.mul(&l_dual).mul(&l_inv))
        }
        LocalTwist::Ramified { character } => shape.epsilon_ramified(character),
    }
}

/// GL(1) γ-factor γ(s, χ_v·χ, ψ) for an unramified character with value
/// `v` at the uniformizer, twisted: for an unramified twist this is
/// (1 − vtX)/(1 − (vt)^{−1}q^{−1}X^{−1}); for a ramified twist of
/// conductor c it is the ε-monomial X^c v^c τ(twist^{−1}, ψ).
pub fn gl1_gamma_factor(
    q: u64,
    value: &QMonomial,
    twist: &LocalTwist,
) -> Result<RationalFunctionInQs, ArithError> {
    match twist {
        LocalTwist::Unramified { value: t } => {
            let u = value.mul(&QMonomial::from_root(*t));
            let num = LaurentPoly::one_minus(u.value(q), 1);
            let dual = u
                .inv()
                .mul(&QMonomial::new(RootOfUnity::one(), -2))
                .value(q);
            let den = one_minus_any(dual, -1);
            Ok(RationalFunctionInQs::from_parts(q, num, den))
        }
        LocalTwist::Ramified { character } => {
            if character.prime != q {
                return Err(ArithError::InvalidInput(format!(
                    "ramified twist lives at prime {} but the place has residue cardinality {}",
                    character.prime, q
                )));
            }
            let c = character.conductor();
            let tau = Scalar::from_cyc(character.inverse().gauss_sum(1)?);
            let scalar = value.pow(c as i64).value(q).mul(&tau);
            Ok(RationalFunctionInQs::x_pow(q, c as i64).scale(&scalar))
        }
    }
}

/// Reparametrizes s ↦ 1−s: each monomial c·X^k becomes c·q^{−k}·X^{−k}.
/// Used to check local functional equations γ(s, ·)γ(1−s, dual) = 1.
pub fn reflect_s(f: &RationalFunctionInQs) -> RationalFunctionInQs {
    let q = f.q;
    let flip = |p: &LaurentPoly<Scalar>| {
        let mut acc = LaurentPoly::zero();
        if let Some(hi) = p.degree_hi() {
            for k in p.lo..=hi {
                let c = p.coeff(k);
                if !c.is_zero() {
                    let scaled = c.mul(&Scalar::q_half_pow(q, -2 * k));
                    acc = acc.add(&LaurentPoly::monomial(scaled, -k));
                }
            }
        }
        acc
    };
    RationalFunctionInQs::from_parts(q, flip(&f.num), flip(&f.den))
}

/// Result of the modified Euler factor at a place above p: the factor as
/// an exact rational function of s (with the interpolation point located
/// at s = n−α+1), and its exact value there.
#[derive(Debug, Clone)]
pub struct ModifiedEulerP {
    pub function: RationalFunctionInQs,
    pub value: Scalar,
}

/// Modified Euler factor at a place above p, defined through the γ-ratio
/// E_v·L_v = γ(s, χ_{α}·χ, ψ)/γ(s, As⁺(π_v) ⊗ χ, ψ) with χ_{α} the
/// unramified character on the α-eigenvalue, evaluated at the
/// interpolation point s = n−α+1. The definitional route is computed in
/// full and checked exactly against the closed-form expression before the
/// value is returned.
pub fn modified_euler_p(
    data: &SatakePlaceData,
    varphi: &FiniteOrderCharacter,
    n: u32,
    alpha: u32,
) -> Result<ModifiedEulerP, ArithError> {
    modified_euler_p_with_twist(data, &LocalTwist::from_character(varphi), n, alpha)
}

/// The same factor with the local twist supplied directly, allowing
/// arbitrary unramified twist values at the uniformizer.
pub fn modified_euler_p_with_twist(
    data: &SatakePlaceData,
    twist: &LocalTwist,
    n: u32,
    alpha: u32,
) -> Result<ModifiedEulerP, ArithError> {
    if alpha > n {
        return Err(ArithError::InvalidInput(format!(
            "twist index α = {alpha} exceeds the weight bound n = {n}"
        )));
    }
    let shape = analyze(data)?;
    if !shape.full {
        return Err(ArithError::InvalidInput(
            "not nearly ordinary: ramified principal series component at a place above p".into(),
        ));
    }
    let q = data.q();
    let alpha_pi = data.alpha_eigenvalue()?;

    let gamma_gl1 = gl1_gamma_factor(q, &alpha_pi, twist)?;
    let gamma_asai = asai_gamma_factor(data, twist)?;
    let l_twisted = shape.l_factor(twist);
    let definitional = gamma_gl1.div(&gamma_asai)?.div(&l_twisted)?;

    let explicit = explicit_modified_euler(data, &shape, twist)?;
    if !definitional.equals(&explicit) {
        return Err(ArithError::InvalidInput(
            "internal consistency failure: definitional and explicit modified Euler \
             factors disagree"
                .into(),
        ));
    }

    let s0 = (n - alpha + 1) as i64;
    let value = definitional.eval_exact_at_integer_s(s0)?;
    Ok(ModifiedEulerP {
        function: definitional,
        value,
    })
}

/// Closed-form modified Euler factor, by ramification of the twist and
/// splitting of the place, as a rational function of s.
fn explicit_modified_euler(
    data: &SatakePlaceData,
    shape: &AsaiShape,
    twist: &LocalTwist,
) -> Result<RationalFunctionInQs, ArithError> {
    let q = data.q();
    let qinv = QMonomial::new(RootOfUnity::one(), -2);
    match (data, twist) {
        (SatakePlaceData::Split { w, wc, .. }, LocalTwist::Unramified { value }) => {
            let t = QMonomial::from_root(*value);
            let (aw, bw) = w.full_params(1)?;
            let (awc, bwc) = wc.full_params(1)?;
            let both_ps = matches!(w, Gl2Rep::UnramifiedPrincipal { .. })
                && matches!(wc, Gl2Rep::UnramifiedPrincipal { .. });
            if both_ps {
                // The three non-α pairs: the α-pair cancels against the
                // GL(1) γ-factor in the numerator of the ratio.
                let pairs = [awc.mul(&bw), aw.mul(&bwc), bw.mul(&bwc)];
                let mut num = LaurentPoly::one();
                let mut den = LaurentPoly::one();
                for p in &pairs {
                    let dual = p.mul(&t).inv().mul(&qinv).value(q);
                    num = num.mul(&one_minus_any(dual, -1));
                    den = den.mul(&LaurentPoly::one_minus(p.mul(&t).value(q), 1));
                }
                let l_inv = shape.l_factor_inverse_poly(value);
                return Ok(l_inv.mul(&RationalFunctionInQs::from_parts(q, num, den)));
            }
            // At least one Steinberg component: the transfer is a sum of
            // monodromy blocks, α_π is its largest quotient eigenvalue,
            // and B the companion one, entering both the dual numerator
            // and the ε-denominator.
            let alpha_pi = aw.mul(&awc);
            let b_large = match (w, wc) {
                (Gl2Rep::UnramifiedPrincipal { .. }, Gl2Rep::Special { .. }) => bw.mul(&awc),
                (Gl2Rep::Special { .. }, Gl2Rep::UnramifiedPrincipal { .. }) => aw.mul(&bwc),
                (Gl2Rep::Special { .. }, Gl2Rep::Special { .. }) => {
                    alpha_pi.mul(&qinv)
                }
                _ => unreachable!("ramified components rejected before dispatch"),
            };
            steinberg_closed_form(q, &alpha_pi, &b_large, &b_large, &t)
        }
        (SatakePlaceData::Inert { w, .. }, LocalTwist::Unramified { value }) => {
            let t = QMonomial::from_root(*value);
            match w {
                Gl2Rep::UnramifiedPrincipal { .. } => {
                    let (a, b) = w.full_params(2)?;
                    let ab = a.mul(&b);
                    let num = one_minus_any(
                        ab.mul(&t.pow(2)).inv().mul(&qinv.pow(2)).value(q),
                        -2,
                    )
                    .mul(&one_minus_any(
                        b.mul(&t).inv().mul(&qinv).value(q),
                        -1,
                    ));
                    let den = LaurentPoly::one_minus(ab.mul(&t.pow(2)).value(q), 2)
                        .mul(&LaurentPoly::one_minus(b.mul(&t).value(q), 1));
                    let l_inv = shape.l_factor_inverse_poly(value);
                    Ok(l_inv.mul(&RationalFunctionInQs::from_parts(q, num, den)))
                }
                Gl2Rep::Special { eta } => {
                    // α_π = ηq; the dual companion is the character block
                    // −η, while the ε-denominator pairs α_π with the small
                    // quotient eigenvalue η of the length-3 block.
                    let alpha_pi = w.full_params(2)?.0;
                    let eta_m = QMonomial::from_root(eta_root(*eta));
                    steinberg_closed_form(q, &alpha_pi, &eta_m.neg(), &eta_m, &t)
                }
                Gl2Rep::RamifiedPrincipal { .. } => {
                    unreachable!("ramified components rejected before dispatch")
                }
            }
        }
        (_, LocalTwist::Ramified { character }) => {
            if character.prime != q {
                return Err(ArithError::InvalidInput(format!(
                    "ramified twist lives at prime {} but the place has residue cardinality {}",
                    character.prime, q
                )));
            }
            let c = character.conductor() as i64;
            let tau = Scalar::from_cyc(character.inverse().gauss_sum(1)?);
            let denom = match data {
                SatakePlaceData::Split { w, wc, .. } => {
                    let (aw, bw) = w.full_params(1)?;
                    let (awc, bwc) = wc.full_params(1)?;
                    aw.mul(&bw).mul(&awc).mul(&bwc).mul(&bw.mul(&bwc))
                }
                SatakePlaceData::Inert { w, .. } => {
                    let (a, b) = w.full_params(2)?;
                    a.mul(&b).neg().mul(&b)
                }
            };
            let scalar = denom.pow(-c).value(q).mul(&tau.pow(-3)?);
            Ok(RationalFunctionInQs::x_pow(q, -3 * c).scale(&scalar))
        }
    }
}

/// Closed form for transfers containing a Steinberg block:
/// E = (1 − α_π tX)(1 − (B_dual·t)^{−1}q^{−1}X^{−1})/(α_π·B_eps·t²X²),
/// where B_dual is the companion linear eigenvalue in the dual and B_eps
/// the companion quotient eigenvalue in the ε-factor.
fn steinberg_closed_form(
    q: u64,
    alpha_pi: &QMonomial,
    b_dual: &QMonomial,
    b_eps: &QMonomial,
    t: &QMonomial,
) -> Result<RationalFunctionInQs, ArithError> {
    let qinv = QMonomial::new(RootOfUnity::one(), -2);
    let num = LaurentPoly::one_minus(alpha_pi.mul(t).value(q), 1).mul(&one_minus_any(
        b_dual.mul(t).inv().mul(&qinv).value(q),
        -1,
    ));
    let den = LaurentPoly::monomial(
        alpha_pi.mul(b_eps).mul(&t.pow(2)).value(q),
        2,
    );
    Ok(RationalFunctionInQs::from_parts(q, num, den))
}

/// An exact number of the form i^a · r · π^k with r rational: the value
/// class of the archimedean Euler factors at integer points. Stored with
/// the imaginary unit reduced to exponent 0 or 1 and the sign folded into
/// the rational, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiScaled {
    pub i_power: u8,
    pub rational: Rational,
    pub pi_power: i64,
}

impl PiScaled {
    pub fn new(i_power: i64, rational: Rational, pi_power: i64) -> Self {
        let (ip, sign) = match i_power.rem_euclid(4) {
            0 => (0, 1),
            1 => (1, 1),
            2 => (0, -1),
            _ => (1, -1),
        };
        PiScaled {
            i_power: ip,
            rational: rational * rat_int(sign),
            pi_power,
        }
    }

    pub fn one() -> Self {
        PiScaled::new(0, rat_int(1), 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        PiScaled::new(
            self.i_power as i64 + other.i_power as i64,
            self.rational.clone() * other.rational.clone(),
            self.pi_power + other.pi_power,
        )
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.rational.is_zero() {
            return Err(ArithError::NonUnit("inverse of zero".into()));
        }
        // 1/i^a = (−1)^a i^a for a ∈ {0, 1}.
        let sign = if self.i_power == 1 { -1 } else { 1 };
        Ok(PiScaled::new(
            self.i_power as i64,
            rat_int(sign) / self.rational.clone(),
            -self.pi_power,
        ))
    }

    pub fn to_complex(&self) -> Complex64 {
        let r = self.rational.to_f64().unwrap_or_else(|| {
            self.rational.numer().to_f64().unwrap() / self.rational.denom().to_f64().unwrap()
        });
        let base = r * std::f64::consts::PI.powi(self.pi_power as i32);
        if self.i_power == 1 {
            Complex64::new(0.0, base)
        } else {
            Complex64::new(base, 0.0)
        }
    }
}

/// Γ(m/2) exactly: a rational for even positive m, a rational multiple of
/// √π for odd m (any sign), and a pole error for even m ≤ 0.
pub fn gamma_half_integer(two_z: i64) -> Result<(Rational, bool), ArithError> {
    if two_z % 2 == 0 {
        let m = two_z / 2;
        if m <= 0 {
            return Err(ArithError::PoleAtS {
                s: format!("{m}"),
                multiplicity: 1,
            });
        }
        return Ok((Rational::from_integer(factorial((m - 1) as u32)), false));
    }
    let j = (two_z - 1) / 2;
    let r = if j >= 0 {
        // Γ(1/2 + j) = (2j)!/(4^j j!) √π.
        let num = Rational::from_integer(factorial(2 * j as u32));
        let den = Rational::from_integer(factorial(j as u32))
            * crate::exact_arith::rational::rat_pow(&rat_int(4), j);
        num / den
    } else {
        // Γ(1/2 − J) = (−4)^J J!/(2J)! √π.
        let jj = -j;
        let num = Rational::from_integer(factorial(jj as u32))
            * crate::exact_arith::rational::rat_pow(&rat_int(-4), jj);
        let den = Rational::from_integer(factorial(2 * jj as u32));
        num / den
    };
    Ok((r, true))
}

/// Γ_R(j) = π^{−j/2}Γ(j/2) at an integer argument, exactly.
pub fn gamma_r_at_integer(j: i64) -> Result<PiScaled, ArithError> {
    let (r, has_sqrt_pi) = gamma_half_integer(j)?;
    if has_sqrt_pi {
        // π^{−j/2}·r√π = r·π^{(1−j)/2}.
        Ok(PiScaled::new(0, r, (1 - j) / 2))
    } else {
        Ok(PiScaled::new(0, r, -j / 2))
    }
}

/// Γ_C(m) = 2(2π)^{−m}Γ(m) at an integer argument, exactly.
pub fn gamma_c_at_integer(m: i64) -> Result<PiScaled, ArithError> {
    if m <= 0 {
        return Err(ArithError::PoleAtS {
            s: format!("{m}"),
            multiplicity: 1,
        });
    }
    let r = Rational::from_integer(factorial((m - 1) as u32))
        * crate::exact_arith::rational::rat_pow(&rat(1, 2), m - 1);
    Ok(PiScaled::new(0, r, -m))
}

/// Modified Euler factor at the real place and the archimedean L-value it
/// multiplies, both exact. The parity of n−α must match the sign of the
/// twisting character at the real place for the point to be critical.
#[derive(Debug, Clone, PartialEq)]
pub struct ModifiedEulerInfty {
    pub e_infty: PiScaled,
    pub l_value: PiScaled,
}

pub fn modified_euler_infty(
    n: u32,
    alpha: u32,
    infinity_sign: i8,
) -> Result<ModifiedEulerInfty, ArithError> {
    if alpha > n {
        return Err(ArithError::InvalidInput(format!(
            "twist index α = {alpha} exceeds the weight bound n = {n}"
        )));
    }
    if infinity_sign != 1 && infinity_sign != -1 {
        return Err(ArithError::InvalidInput(format!(
            "real-place sign must be ±1, got {infinity_sign}"
        )));
    }
    let k = (n - alpha) as i64;
    let want = if k % 2 == 0 { 1 } else { -1 };
    if infinity_sign != want {
        return Err(ArithError::InvalidInput(format!(
            "interpolation point not critical: n−α = {k} requires real sign {want}"
        )));
    }
    let m_big = (2 * n - alpha + 2) as i64;
    if k % 2 == 0 {
        let gr = gamma_r_at_integer(1 - k)?;
        let e = PiScaled::new(-m_big, rat_int(-1), 0)
            .mul(&gr.mul(&gr).inverse()?);
        let l = gamma_c_at_integer(m_big)?.mul(&{
            let g = gamma_r_at_integer(k + 2)?;
            g.mul(&g)
        });
        Ok(ModifiedEulerInfty {
            e_infty: e,
            l_value: l,
        })
    } else {
        let gr = gamma_r_at_integer(-k)?;
        let e = PiScaled::new(-m_big, rat_int(1), 0).mul(&gr.mul(&gr).inverse()?);
        let l = gamma_c_at_integer(m_big)?.mul(&{
            let g = gamma_r_at_integer(k + 1)?;
            g.mul(&g)
        });
        Ok(ModifiedEulerInfty {
            e_infty: e,
            l_value: l,
        })
    }
}

/// One archimedean Γ-factor kind: Γ_R(s) = π^{−s/2}Γ(s/2) or
/// Γ_C(s) = 2(2π)^{−s}Γ(s).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GammaKind {
    GammaR,
    GammaC,
}

/// A product c·2^{as+b}·∏ Γ_kind(s + shift): the shape of every
/// archimedean L-factor and section value in this crate. Poles are
/// located symbolically; numeric evaluation lives with the quadrature
/// code, which supplies the complex Γ.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaProduct {
    pub factors: Vec<(GammaKind, Rational)>,
    pub prefactor: Complex64,
    pub two_power_s_coeff: Rational,
    pub two_power_const: Rational,
}

impl GammaProduct {
    pub fn from_factors(factors: Vec<(GammaKind, Rational)>) -> Self {
        GammaProduct {
            factors,
            prefactor: Complex64::new(1.0, 0.0),
            two_power_s_coeff: Rational::zero(),
            two_power_const: Rational::zero(),
        }
    }

    /// Whether the product is finite at a rational point: Γ_R poles at
    /// even integers ≤ 0 of its argument, Γ_C at all integers ≤ 0.
    pub fn is_finite_at_rational(&self, s: &Rational) -> bool {
        for (kind, shift) in &self.factors {
            let z = s.clone() + shift.clone();
            if !z.is_integer() {
                continue;
            }
            let zi = z.to_integer();
            if zi.is_positive() {
                continue;
            }
            match kind {
                GammaKind::GammaC => return false,
                GammaKind::GammaR => {
                    if (zi % 2i32).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Exact value at an integer point, available when the prefactor is 1
    /// and no powers of two in s are present.
    pub fn eval_exact_at_integer(&self, s: i64) -> Result<PiScaled, ArithError> {
        if self.prefactor != Complex64::new(1.0, 0.0)
            || !self.two_power_s_coeff.is_zero()
            || !self.two_power_const.is_zero()
        {
            return Err(ArithError::InvalidInput(
                "exact evaluation needs a bare Γ-product".into(),
            ));
        }
        let mut acc = PiScaled::one();
        for (kind, shift) in &self.factors {
            if !shift.is_integer() {
                return Err(ArithError::InvalidInput(
                    "exact evaluation needs integer shifts".into(),
                ));
            }
            let z = s + shift.to_integer().to_i64().ok_or_else(|| {
                ArithError::InvalidInput("shift out of range".into())
            })?;
            let g = match kind {
                GammaKind::GammaR => gamma_r_at_integer(z)?,
                GammaKind::GammaC => gamma_c_at_integer(z)?,
            };
            acc = acc.mul(&g);
        }
        Ok(acc)
    }
}

/// The archimedean L-factor of the twisted Asai motive at one real place
/// together with its ε-factor, an exact power of i. Even parity of n−α
/// pairs with sign +1 at the real place, odd with −1.
pub fn l_infty_pair(
    n: u32,
    alpha: u32,
    infinity_sign: i8,
) -> Result<(GammaProduct, RootOfUnity), ArithError> {
    if alpha > n {
        return Err(ArithError::InvalidInput(format!(
            "twist index α = {alpha} exceeds the weight bound n = {n}"
        )));
    }
    let k = (n - alpha) as i64;
    let want = if k % 2 == 0 { 1 } else { -1 };
    if infinity_sign != want {
        return Err(ArithError::InvalidInput(format!(
            "interpolation point not critical: n−α = {k} requires real sign {want}"
        )));
    }
    let m_big = rat_int((2 * n - alpha + 2) as i64);
    if k % 2 == 0 {
        let product = GammaProduct::from_factors(vec![
            (GammaKind::GammaC, m_big),
            (GammaKind::GammaR, rat_int(k + 2)),
            (GammaKind::GammaR, rat_int(k + 2)),
        ]);
        let eps = RootOfUnity::new(4, 2 * n as i64 + 5);
        Ok((product, eps))
    } else {
        let product = GammaProduct::from_factors(vec![
            (GammaKind::GammaC, m_big),
            (GammaKind::GammaR, rat_int(k + 1)),
            (GammaKind::GammaR, rat_int(k + 1)),
        ]);
        let eps = RootOfUnity::new(4, 2 * n as i64 + 3);
        Ok((product, eps))
    }
}

/// The eigenvalue constants attached to the places above p: per divisor
/// λ_w = β_w·q_w^{([κ]+1)/2}, their product λ_p, and the normalized
/// λ_{p,0} = p^{−m}λ_p whose p-adic unit property is the near-ordinarity
/// condition. All values are rebased to half-powers of p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaConstants {
    pub lambda_w: Vec<QMonomial>,
    pub lambda_p: QMonomial,
    pub lambda_p0: QMonomial,
    pub nearly_ordinary: bool,
    pub valuation: Rational,
}

pub fn lambda_constants(
    places: &[SatakePlaceData],
    p: u64,
    kappa_bracket: u32,
    m: u32,
) -> Result<LambdaConstants, ArithError> {
    if places.is_empty() {
        return Err(ArithError::InvalidInput(
            "at least one place above p is required".into(),
        ));
    }
    let mut lambda_w = Vec::new();
    let kp1 = (kappa_bracket + 1) as i64;
    for place in places {
        place.validate()?;
        let q = place.q();
        let f = power_of(q, p).ok_or_else(|| {
            ArithError::InvalidInput(format!(
                "residue cardinality {q} is not a power of p = {p}"
            ))
        })?;
        let divisors: Vec<(&Gl2Rep, i64)> = match place {
            SatakePlaceData::Split { w, wc, .. } => vec![(w, 1), (wc, 1)],
            SatakePlaceData::Inert { w, .. } => vec![(w, 2)],
        };
        for (rep, g) in divisors {
            let beta = rep.ordinary_slot(g)?;
            // λ = β·q_w^{([κ]+1)/2} with q_w = q^g, expressed over q, then
            // rebased from half-powers of q to half-powers of p.
            let over_q = beta.mul(&QMonomial::new(RootOfUnity::one(), g * kp1));
            lambda_w.push(QMonomial::new(over_q.root, over_q.half_power * f));
        }
    }
    let lambda_p = lambda_w
        .iter()
        .fold(QMonomial::one(), |acc, l| acc.mul(l));
    let lambda_p0 = lambda_p.mul(&QMonomial::new(RootOfUnity::one(), -2 * m as i64));
    Ok(LambdaConstants {
        nearly_ordinary: lambda_p0.half_power == 0,
        valuation: lambda_p0.q_valuation(),
        lambda_w,
        lambda_p,
        lambda_p0,
    })
}

fn power_of(q: u64, p: u64) -> Option<i64> {
    if p < 2 {
        return None;
    }
    let mut acc = q;
    let mut f = 0;
    while acc > 1 {
        if acc % p != 0 {
            return None;
        }
        acc /= p;
        f += 1;
    }
    if f == 0 {
        None
    } else {
        Some(f)
    }
}

/// The base-change ε-constant of the real quadratic extension at p, a
/// fourth root of unity carried as configuration. At split places it is 1.
pub fn split_base_change_epsilon() -> RootOfUnity {
    RootOfUnity::one()
}

/// Validates a configured base-change ε-constant: its order must divide 4.
pub fn validate_base_change_epsilon(z: &RootOfUnity) -> Result<(), ArithError> {
    if 4 % z.order != 0 {
        return Err(ArithError::UnsupportedOrder {
            order: z.order,
            reason: "base-change ε-constant must be a fourth root of unity".into(),
        });
    }
    Ok(())
}
