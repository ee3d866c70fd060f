//! Local zeta integrals behind the interpolation bookkeeping.
//!
//! The archimedean side packages modified Bessel functions, their Mellin
//! transforms, the binomial gamma-sum identity that collapses the pairing
//! against polynomial coefficient vectors, and the resulting dual-route
//! evaluation of the real-place integral at the interpolation point. The
//! finite side packages the spherical, tame, auxiliary and deep-level
//! integrals, each computed both in closed form and by an independent
//! summation (truncated Whittaker sums with explicit tail bounds, or exact
//! unit averages), with the disagreement between the two routes recorded
//! and bounded before a value is released.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::characters::{is_prime, FiniteOrderCharacter};
use crate::exact_arith::rational::{binomial_rat, rat, rat_to_f64};
use crate::exact_arith::{ArithError, RationalFunctionInQs, RootOfUnity, Scalar};
use crate::local_factors::{
    asai_gamma_factor, asai_l_factor, gl1_gamma_factor, modified_euler_infty,
    modified_euler_p_with_twist, validate_base_change_epsilon, Gl2Rep, LocalTwist,
    SatakePlaceData,
};
use crate::poly_weights::c_constant_closed_form;

/// Tolerances and depth limits for the quadrature-based special functions.
#[derive(Debug, Clone)]
pub struct SpecialFunctionConfig {
    /// Absolute tolerance floor handed to a single adaptive pass.
    pub abs_tol: f64,
    /// Relative target for quadrature results.
    pub rel_tol: f64,
    /// Maximum subdivision depth before reporting non-convergence.
    pub max_depth: u32,
    /// Largest relative disagreement tolerated between a closed form and
    /// its independently computed counterpart.
    pub consistency_rel_tol: f64,
}

impl Default for SpecialFunctionConfig {
    fn default() -> Self {
        SpecialFunctionConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_depth: 48,
            consistency_rel_tol: 1e-9,
        }
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(z) for complex z, by the Lanczos approximation with the reflection
/// formula on the left half plane. Accurate to near machine precision away
/// from the poles.
pub fn gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi_z = PI * z;
        return PI / (pi_z.sin() * gamma_complex(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * acc
}

/// Γ(x) for real x away from the poles.
pub fn gamma_real(x: f64) -> f64 {
    gamma_complex(Complex64::new(x, 0.0)).re
}

/// 1/Γ(x) for real x, with the zeros at nonpositive integers made exact.
pub fn reciprocal_gamma_real(x: f64) -> f64 {
    if x < 0.5 && (x - x.round()).abs() < 1e-9 {
        return 0.0;
    }
    1.0 / gamma_real(x)
}

/// Γ_R(s) = π^{−s/2} Γ(s/2) for real s away from the poles.
pub fn gamma_r_numeric(s: f64) -> f64 {
    PI.powf(-s / 2.0) * gamma_real(s / 2.0)
}

/// Γ_C(s) = 2 (2π)^{−s} Γ(s) for real s away from the poles.
pub fn gamma_c_numeric(s: f64) -> f64 {
    2.0 * (2.0 * PI).powf(-s) * gamma_real(s)
}

fn simpson_rule(fa: f64, fm: f64, fb: f64, width: f64) -> f64 {
    (fa + 4.0 * fm + fb) * width / 6.0
}

#[allow(clippy::too_many_arguments)]
fn adaptive_panel<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, ArithError> {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_rule(fa, flm, fm, m - a);
    let right = simpson_rule(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(ArithError::InvalidInput(format!(
            "quadrature did not converge on [{a}, {b}]: residual {:.3e} above tolerance",
            delta.abs()
        )));
    }
    let half = 0.5 * tol;
    Ok(adaptive_panel(f, a, fa, m, fm, lm, flm, left, half, depth - 1)?
        + adaptive_panel(f, m, fm, b, fb, rm, frm, right, half, depth - 1)?)
}

fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, ArithError> {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson_rule(fa, fm, fb, b - a);
    adaptive_panel(f, a, fa, b, fb, m, fm, whole, tol, depth)
}

/// Integrate over [lo, hi] to an absolute tolerance, splitting the range
/// into unit-width panels so a narrow feature inside a long interval cannot
/// fool a single adaptive pass.
fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    max_depth: u32,
) -> Result<f64, ArithError> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(ArithError::InvalidInput(format!(
            "invalid integration range [{lo}, {hi}]"
        )));
    }
    let n = ((hi - lo).ceil() as usize).max(1);
    let step = (hi - lo) / n as f64;
    let per_panel = abs_tol / n as f64;
    let mut total = 0.0;
    for k in 0..n {
        let a = lo + k as f64 * step;
        let b = if k + 1 == n { hi } else { lo + (k + 1) as f64 * step };
        total += adaptive_simpson(f, a, b, per_panel, max_depth)?;
    }
    Ok(total)
}

/// Integrate with a relative target: a coarse trapezoid pass estimates the
/// magnitude first, and the estimate scales the absolute tolerance.
fn integrate_rel<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    max_depth: u32,
) -> Result<f64, ArithError> {
    let samples = (((hi - lo) * 8.0).ceil() as usize).clamp(16, 20_000);
    let h = (hi - lo) / samples as f64;
    let mut est = 0.0;
    for k in 0..=samples {
        let w = if k == 0 || k == samples { 0.5 } else { 1.0 };
        est += w * f(lo + k as f64 * h).abs();
    }
    est *= h;
    integrate(f, lo, hi, est.max(1e-300) * rel_tol, max_depth)
}

/// Modified Bessel function K_ν(x) for x > 0, by adaptive quadrature of
/// ∫_0^∞ e^{−x cosh u} cosh(νu) du with an explicitly bounded truncation.
pub fn kbessel(nu: f64, x: f64) -> Result<f64, ArithError> {
    kbessel_with(&SpecialFunctionConfig::default(), nu, x)
}

/// K_ν(x) with explicit quadrature configuration.
pub fn kbessel_with(cfg: &SpecialFunctionConfig, nu: f64, x: f64) -> Result<f64, ArithError> {
    if !(x > 0.0) || !x.is_finite() || !nu.is_finite() {
        return Err(ArithError::InvalidInput(format!(
            "K_ν needs finite ν and x > 0, got ν = {nu}, x = {x}"
        )));
    }
    let nu = nu.abs();
    // Past the cutoff the integrand is below e^{−45} relative to the e^{−x}
    // scale of the head, so the truncated tail is negligible.
    let mut hi = 1.0_f64;
    while x * hi.cosh() - nu * hi < x + 45.0 + nu {
        hi *= 1.5;
        if hi > 1e6 {
            return Err(ArithError::InvalidInput(format!(
                "no usable truncation point for K_ν with ν = {nu}, x = {x}"
            )));
        }
    }
    // The symmetric exponential sum avoids the 0·∞ indeterminacy that
    // e^{−x cosh u}·cosh(νu) hits in floating point at large u.
    let integrand = move |u: f64| {
        let e = -x * u.cosh();
        0.5 * ((e + nu * u).exp() + (e - nu * u).exp())
    };
    integrate_rel(&integrand, 0.0, hi, cfg.rel_tol, cfg.max_depth)
}

/// Closed form of the Mellin transform ∫_0^∞ K_ν(μa) a^s da/a for s > |ν|:
/// 2^{s−2} μ^{−s} Γ((s+ν)/2) Γ((s−ν)/2).
pub fn kbessel_mellin(nu: f64, mu: f64, s: f64) -> Result<f64, ArithError> {
    if !(mu > 0.0) || !mu.is_finite() || !nu.is_finite() {
        return Err(ArithError::InvalidInput(format!(
            "Mellin transform of K_ν needs finite ν and μ > 0, got ν = {nu}, μ = {mu}"
        )));
    }
    if !(s > nu.abs()) {
        return Err(ArithError::InvalidInput(format!(
            "Mellin transform of K_ν diverges for s ≤ |ν|: s = {s}, ν = {nu}"
        )));
    }
    Ok(2f64.powf(s - 2.0)
        * mu.powf(-s)
        * gamma_real((s + nu) / 2.0)
        * gamma_real((s - nu) / 2.0))
}

/// The same transform by direct nested quadrature, substituting a = e^u so
/// the domain becomes the whole line with doubly exponential right decay.
pub fn kbessel_mellin_quadrature(
    cfg: &SpecialFunctionConfig,
    nu: f64,
    mu: f64,
    s: f64,
) -> Result<f64, ArithError> {
    if !(mu > 0.0) || !mu.is_finite() || !nu.is_finite() {
        return Err(ArithError::InvalidInput(format!(
            "Mellin transform of K_ν needs finite ν and μ > 0, got ν = {nu}, μ = {mu}"
        )));
    }
    let nu = nu.abs();
    if !(s > nu) {
        return Err(ArithError::InvalidInput(format!(
            "Mellin transform of K_ν diverges for s ≤ |ν|: s = {s}, ν = {nu}"
        )));
    }
    // Right cutoff: once μe^u − su ≥ 70 the integrand is dead.
    let mut hi = ((s + 70.0) / mu).ln().max(1.0);
    while mu * hi.exp() - s * hi < 70.0 {
        hi += 0.5;
    }
    // Left cutoff: the integrand decays like e^{(s−ν)u} (times ln a for
    // ν = 0), so stepping 70 e-folds plus the Γ(ν) prefactor below the
    // turnover point bounds the discarded tail.
    let u0 = (s.max(1.0) / mu).ln();
    let margin = if nu > 0.0 { gamma_real(nu).ln().max(0.0) } else { 0.0 };
    let lo = u0 - (70.0 + margin) / (s - nu);
    let inner = SpecialFunctionConfig {
        rel_tol: cfg.rel_tol * 0.1,
        ..cfg.clone()
    };
    let integrand = move |u: f64| match kbessel_with(&inner, nu, mu * u.exp()) {
        Ok(k) => k * (s * u).exp(),
        Err(_) => f64::NAN,
    };
    let value = integrate_rel(&integrand, lo, hi.max(lo + 2.0), cfg.rel_tol * 100.0, cfg.max_depth)?;
    if !value.is_finite() {
        return Err(ArithError::InvalidInput(
            "inner Bessel quadrature failed inside the Mellin integral".into(),
        ));
    }
    Ok(value)
}

/// The real-place torus integral 2^{−k} (−1)^{n−α+1} ∫_0^∞ t^{2s+k−1}
/// e^{−πt²} dt with k = 2(n−α)+2, in closed form:
/// (−1)^{n−α+1} 2^{s−(n−α)−3} Γ_C(s+n−α+1).
pub fn arch_t_integral(n: u32, alpha: u32, s: f64) -> Result<f64, ArithError> {
    if alpha > n {
        return Err(ArithError::InvalidInput(format!(
            "twist index α = {alpha} exceeds the weight bound n = {n}"
        )));
    }
    let d = (n - alpha) as f64;
    let m = s + d + 1.0;
    if m <= 0.0 {
        return Err(ArithError::PoleAtS {
            s: format!("{s}"),
            multiplicity: 1,
        });
    }
    let sign = if (n - alpha) % 2 == 0 { -1.0 } else { 1.0 };
    Ok(sign * 2f64.powf(s - d - 3.0) * gamma_c_numeric(m))
}

/// The same integral by quadrature of the Gaussian moment.
pub fn arch_t_integral_quadrature(
    cfg: &SpecialFunctionConfig,
    n: u32,
    alpha: u32,
    s: f64,
) -> Result<f64, ArithError> {
    if alpha > n {
        return Err(ArithError::InvalidInput(format!(
            "twist index α = {alpha} exceeds the weight bound n = {n}"
        )));
    }
    if !(s > 0.0) {
        return Err(ArithError::InvalidInput(format!(
            "quadrature form needs s > 0, got {s}"
        )));
    }
    let k = 2.0 * (n - alpha) as f64 + 2.0;
    let p = 2.0 * s + k - 1.0;
    let mut hi = 3.0_f64;
    while PI * hi * hi - p * hi.ln().max(0.0) < 60.0 {
        hi += 0.5;
    }
    let integrand = move |t: f64| t.powf(p) * (-PI * t * t).exp();
    let sign = if (n - alpha) % 2 == 0 { -1.0 } else { 1.0 };
    let value = integrate_rel(&integrand, 0.0, hi, cfg.rel_tol * 10.0, cfg.max_depth)?;
    Ok(sign * 2f64.powf(-k) * value)
}

fn c_gamma_terms(n: u32, alpha: u32, s: f64) -> Result<Vec<f64>, ArithError> {
    if alpha > n {
        return Err(ArithError::InvalidInput(format!(
            "twist index α = {alpha} exceeds the weight bound n = {n}"
        )));
    }
    if !(s > 0.0) || !s.is_finite() {
        return Err(ArithError::InvalidInput(format!(
            "gamma-sum identity is evaluated for finite s > 0, got {s}"
        )));
    }
    let ni = n as i64;
    let ai = alpha as i64;
    let mut terms = Vec::new();
    for i in -(ni + 1)..=(ni + 1) {
        if (i - ai).rem_euclid(2) != 0 {
            continue;
        }
        let c = rat_to_f64(&c_constant_closed_form(n, alpha, i as i32));
        let b = rat_to_f64(&binomial_rat(2 * ni + 2, ni + 1 - i));
        let gp = gamma_real((s + (ni + 1 + i) as f64) / 2.0);
        let gm = gamma_real((s + (ni + 1 - i) as f64) / 2.0);
        terms.push(c * b * gp * gm);
    }
    Ok(terms)
}

/// Both sides of the closed gamma-sum identity: the C-weighted binomial sum
/// of Γ((s+n+1+i)/2) Γ((s+n+1−i)/2) over i ≡ α (mod 2) with its sign and
/// 1/2 prefactor on the left, and the collapsed product of gamma quotients
/// on the right. The right side vanishes exactly where 1/Γ hits a pole.
pub fn c_gamma_sum_identity(n: u32, alpha: u32, s: f64) -> Result<(f64, f64), ArithError> {
    let terms = c_gamma_terms(n, alpha, s)?;
    let prefactor = if n % 2 == 0 { 0.5 } else { -0.5 };
    let lhs = prefactor * terms.iter().sum::<f64>();
    let d = (n - alpha) as f64;
    let alpha_sign = if alpha % 2 == 0 { 1.0 } else { -1.0 };
    let b = rat_to_f64(&binomial_rat(n as i64, alpha as i64));
    let rhs = alpha_sign
        * PI.sqrt()
        * b
        * b
        * 2f64.powf(-(s - n as f64 + alpha as f64 - 1.0))
        * gamma_real((s + d + 1.0) / 2.0)
        * reciprocal_gamma_real((s - d) / 2.0)
        * gamma_real(s)
        * gamma_real(s + n as f64 + 1.0)
        * reciprocal_gamma_real(s + d + 1.0);
    Ok((lhs, rhs))
}

/// Magnitude of the summation side before cancellation. Comparisons near
/// the zeros of the closed form normalize against this scale.
pub fn c_gamma_sum_scale(n: u32, alpha: u32, s: f64) -> Result<f64, ArithError> {
    Ok(0.5 * c_gamma_terms(n, alpha, s)?.iter().map(|t| t.abs()).sum::<f64>())
}

/// One Bessel-moment column of the archimedean integrand: the closed Mellin
/// value attached to the index i, with the discriminant power, binomial
/// weight and the parity projector that kills i ≢ α (mod 2). Valid under
/// the real-place parity hypothesis on the twisting character.
pub fn bessel_moment_factor(
    n: u32,
    alpha: u32,
    i: i64,
    s: f64,
    discriminant: u64,
) -> Result<f64, ArithError> {
    if alpha > n || i.unsigned_abs() > (n + 1) as u64 {
        return Err(ArithError::InvalidInput(format!(
            "index out of range: n = {n}, α = {alpha}, i = {i}"
        )));
    }
    if discriminant == 0 {
        return Err(ArithError::InvalidInput(
            "discriminant must be positive".into(),
        ));
    }
    if (i - alpha as i64).rem_euclid(2) != 0 {
        return Ok(0.0);
    }
    let ni = n as i64;
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    let d_pow = (discriminant as f64).powf(-(s - 1.0) / 2.0);
    let b = rat_to_f64(&binomial_rat(2 * ni + 2, ni + 1 - i));
    let volume = 4.0 * (2.0 * PI).powf(-(s + ni as f64 + 1.0));
    Ok(sign
        * d_pow
        * b
        * volume
        * gamma_real((s + (ni + 1 + i) as f64) / 2.0)
        * gamma_real((s + (ni + 1 - i) as f64) / 2.0))
}

/// Number of real places of the base field in the supported setting.
const REAL_PLACES: i32 = 1;

/// The archimedean pairing constant (−1)^n i^α 2^{2r} D^{−(n−α)/2}
/// binom(n,α)² with r the number of real places.
pub fn c_infty(n: u32, alpha: u32, discriminant: u64) -> Result<Complex64, ArithError> {
    if alpha > n {
        return Err(ArithError::InvalidInput(format!(
            "twist index α = {alpha} exceeds the weight bound n = {n}"
        )));
    }
    if discriminant == 0 {
        return Err(ArithError::InvalidInput(
            "discriminant must be positive".into(),
        ));
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let i_pow = Complex64::new(0.0, 1.0).powu(alpha % 4);
    let b = rat_to_f64(&binomial_rat(n as i64, alpha as i64));
    let d_pow = (discriminant as f64).powf(-((n - alpha) as f64) / 2.0);
    Ok(sign * 4f64.powi(REAL_PLACES) * d_pow * b * b * i_pow)
}

/// Both routes through the archimedean zeta integral at the interpolation
/// point s₀ = n−α+1: the summation over Bessel-moment columns weighted by
/// the C-constants and the torus integral, and the closed product of the
/// pairing constant with the modified factor and the archimedean L-value.
#[derive(Debug, Clone)]
pub struct ArchZetaIntegral {
    pub summation_route: Complex64,
    pub product_route: Complex64,
    pub interpolation_s: f64,
}

/// Evaluate the archimedean integral both ways. The real-place sign of the
/// twisting character must equal (−1)^{n−α} for the point to be critical.
pub fn arch_zeta_integral(
    n: u32,
    alpha: u32,
    infinity_sign: i8,
    discriminant: u64,
) -> Result<ArchZetaIntegral, ArithError> {
    let me = modified_euler_infty(n, alpha, infinity_sign)?;
    if discriminant == 0 {
        return Err(ArithError::InvalidInput(
            "discriminant must be positive".into(),
        ));
    }
    let s0 = (n - alpha) as f64 + 1.0;
    // Unfolding volume of the real place: 2³ per real place.
    let unfolding = 8f64.powi(REAL_PLACES);
    let ni = n as i64;
    let mut moment_sum = 0.0;
    for i in -(ni + 1)..=(ni + 1) {
        if (i - alpha as i64).rem_euclid(2) != 0 {
            continue;
        }
        let c = rat_to_f64(&c_constant_closed_form(n, alpha, i as i32));
        moment_sum += c * bessel_moment_factor(n, alpha, i, s0, discriminant)?;
    }
    let summation = unfolding * moment_sum * arch_t_integral(n, alpha, s0)?;
    let product = c_infty(n, alpha, discriminant)? * me.e_infty.mul(&me.l_value).to_complex();
    Ok(ArchZetaIntegral {
        summation_route: Complex64::new(summation, 0.0),
        product_route: product,
        interpolation_s: s0,
    })
}

/// How a local value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralRoute {
    /// Closed rational expression in q^{−s}.
    ClosedForm,
    /// Truncated Whittaker summation with a tail bound.
    TruncatedSum,
    /// Step-by-step evaluation through the gamma-factor chain with exact
    /// unit averages.
    ProofChain,
}

/// A local integral computed twice: the released value comes from the
/// closed form, and the oracle value from an independent route. The two
/// are compared before the result is constructed.
#[derive(Debug, Clone)]
pub struct LocalIntegralResult {
    pub value: Complex64,
    pub route: IntegralRoute,
    pub oracle_value: Complex64,
    pub oracle_route: IntegralRoute,
    pub terms_used: u32,
    pub tail_estimate: f64,
    pub relative_disagreement: f64,
}

fn verified_result(
    value: Complex64,
    oracle_value: Complex64,
    oracle_route: IntegralRoute,
    terms_used: u32,
    tail_estimate: f64,
) -> Result<LocalIntegralResult, ArithError> {
    let scale = value.norm().max(oracle_value.norm());
    let relative_disagreement = if scale == 0.0 {
        0.0
    } else {
        (value - oracle_value).norm() / scale
    };
    if !relative_disagreement.is_finite()
        || relative_disagreement > SpecialFunctionConfig::default().consistency_rel_tol
    {
        return Err(ArithError::InvalidInput(format!(
            "internal consistency failure: closed form {value} and {oracle_route:?} oracle \
             {oracle_value} disagree (relative error {relative_disagreement:.3e})"
        )));
    }
    Ok(LocalIntegralResult {
        value,
        route: IntegralRoute::ClosedForm,
        oracle_value,
        oracle_route,
        terms_used,
        tail_estimate,
        relative_disagreement,
    })
}

/// Scaled Whittaker column of one divisor: entry m is the newvector value
/// at the m-th power of the uniformizer including the module factor
/// q^{−mg/2}, plus the per-step growth bound of the column.
fn whittaker_column(
    rep: &Gl2Rep,
    g: i64,
    q: u64,
    m_max: u32,
) -> Result<(Vec<Complex64>, f64), ArithError> {
    let scale = (q as f64).powf(-(g as f64) / 2.0);
    let mut vals = Vec::with_capacity(m_max as usize + 1);
    match rep {
        Gl2Rep::UnramifiedPrincipal { .. } => {
            let (a, b) = rep.full_params(g)?;
            let sa = a.value(q).to_complex() * scale;
            let sb = b.value(q).to_complex() * scale;
            vals.push(Complex64::new(1.0, 0.0));
            if m_max >= 1 {
                vals.push(sa + sb);
            }
            for m in 2..=m_max as usize {
                let next = (sa + sb) * vals[m - 1] - sa * sb * vals[m - 2];
                vals.push(next);
            }
            Ok((vals, sa.norm().max(sb.norm())))
        }
        Gl2Rep::Special { .. } => {
            let step = rep.full_params(g)?.1.value(q).to_complex() * scale;
            let mut w = Complex64::new(1.0, 0.0);
            for _ in 0..=m_max {
                vals.push(w);
                w *= step;
            }
            Ok((vals, step.norm()))
        }
        Gl2Rep::RamifiedPrincipal { unramified_value } => {
            let step = unramified_value.value(q).to_complex() * scale;
            let mut w = Complex64::new(1.0, 0.0);
            for _ in 0..=m_max {
                vals.push(w);
                w *= step;
            }
            Ok((vals, step.norm()))
        }
    }
}

/// Tail of Σ_{m>m_last} (m+1)² ρ^m in closed form; None when ρ ≥ 1.
fn geometric_poly_tail(rho: f64, m_last: u32) -> Option<f64> {
    if !(rho >= 0.0) || rho >= 1.0 {
        return None;
    }
    if rho == 0.0 {
        return Some(0.0);
    }
    let m2 = (m_last + 2) as f64;
    let r = 1.0 - rho;
    let head = rho.powi(m_last as i32 + 1);
    Some(head * (m2 * m2 / r + 2.0 * m2 * rho / (r * r) + rho * (1.0 + rho) / (r * r * r)))
}

struct TruncatedSum {
    value: Complex64,
    tail: f64,
}

/// Diagonal torus sum Σ_m W(ϖ^m) (t q^{−(s−1)})^m over base-field powers of
/// the uniformizer, truncated at m_max with a dominating geometric tail
/// bound. W is the product of the scaled divisor columns at the same m.
fn whittaker_twisted_sum(
    data: &SatakePlaceData,
    t: Complex64,
    s: f64,
    m_max: u32,
) -> Result<TruncatedSum, ArithError> {
    let q = data.q();
    let weight = t * (q as f64).powf(-(s - 1.0));
    let (per_m, growth) = match data {
        SatakePlaceData::Split { w, wc, .. } => {
            let (cw, gw) = whittaker_column(w, 1, q, m_max)?;
            let (cwc, gwc) = whittaker_column(wc, 1, q, m_max)?;
            let prod: Vec<Complex64> = cw.iter().zip(&cwc).map(|(x, y)| x * y).collect();
            (prod, gw * gwc)
        }
        SatakePlaceData::Inert { w, .. } => whittaker_column(w, 2, q, m_max)?,
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut wp = Complex64::new(1.0, 0.0);
    for v in &per_m {
        sum += v * wp;
        wp *= weight;
    }
    let rho = growth * weight.norm();
    let tail = geometric_poly_tail(rho, m_max).ok_or_else(|| {
        ArithError::InvalidInput(format!(
            "Whittaker summation does not converge: growth ratio {rho:.6} at s = {s}"
        ))
    })?;
    Ok(TruncatedSum { value: sum, tail })
}

const TRUNCATION_TAIL_TOL: f64 = 1e-13;

fn check_tail(sum: &TruncatedSum, m_max: u32) -> Result<(), ArithError> {
    if sum.tail > TRUNCATION_TAIL_TOL * sum.value.norm().max(1.0) {
        return Err(ArithError::InvalidInput(format!(
            "truncated Whittaker sum needs more terms: tail bound {:.3e} after {m_max} terms; \
             increase m_max",
            sum.tail
        )));
    }
    Ok(())
}

fn unramified_twist_value(twist: &LocalTwist) -> Result<Complex64, ArithError> {
    match twist {
        LocalTwist::Unramified { value } => Ok(value.to_complex()),
        LocalTwist::Ramified { .. } => Err(ArithError::InvalidInput(
            "twist must be unramified at this place".into(),
        )),
    }
}

fn spherical(data: &SatakePlaceData) -> bool {
    match data {
        SatakePlaceData::Split { w, wc, .. } => {
            matches!(w, Gl2Rep::UnramifiedPrincipal { .. })
                && matches!(wc, Gl2Rep::UnramifiedPrincipal { .. })
        }
        SatakePlaceData::Inert { w, .. } => matches!(w, Gl2Rep::UnramifiedPrincipal { .. }),
    }
}

/// Spherical local integral away from the level: closed form equal to the
/// local L-factor, oracle equal to the truncated Whittaker sum multiplied
/// by the second-variable zeta correction L(2s, ωφ²).
pub fn unramified_local_integral(
    data: &SatakePlaceData,
    twist: &LocalTwist,
    s: f64,
    m_max: u32,
) -> Result<LocalIntegralResult, ArithError> {
    data.validate()?;
    if !spherical(data) {
        return Err(ArithError::InvalidInput(
            "spherical data required: every component must be an unramified principal series"
                .into(),
        ));
    }
    let q = data.q();
    let t = unramified_twist_value(twist)?;
    let ts = whittaker_twisted_sum(data, t, s, m_max)?;
    check_tail(&ts, m_max)?;
    let omega = data
        .omega_value()
        .ok_or_else(|| ArithError::InvalidInput("central character value unavailable".into()))?
        .value(q)
        .to_complex();
    let correction = Complex64::new(1.0, 0.0) - omega * t * t * (q as f64).powf(-2.0 * s);
    let oracle = ts.value / correction;
    let closed = asai_l_factor(data, twist)?.eval_at_real_s(s)?;
    verified_result(closed, oracle, IntegralRoute::TruncatedSum, m_max, ts.tail)
}

/// Index of the depth-one congruence subgroup in the maximal compact.
pub fn k0_index(q: u64) -> u64 {
    q + 1
}

/// Whether the level data at a tame place satisfies the hypotheses under
/// which the normalized integral recovers the local L-factor exactly.
pub fn tame_hypothesis_ok(data: &SatakePlaceData) -> bool {
    match data {
        SatakePlaceData::Split { w, wc, .. } => !matches!(
            (w, wc),
            (
                Gl2Rep::UnramifiedPrincipal { .. },
                Gl2Rep::UnramifiedPrincipal { .. }
            ) | (
                Gl2Rep::RamifiedPrincipal { .. },
                Gl2Rep::RamifiedPrincipal { .. }
            ) | (Gl2Rep::Special { .. }, Gl2Rep::Special { .. })
        ),
        SatakePlaceData::Inert { w, .. } => matches!(w, Gl2Rep::RamifiedPrincipal { .. }),
    }
}

/// Local integral at a place dividing the level prime to p, normalized by
/// the index of the depth-one compact. The closed route multiplies the
/// local L-factor by the extra Euler block the newvector sum produces in
/// the degenerate configurations; the oracle is the truncated sum.
pub fn tame_local_integral(
    data: &SatakePlaceData,
    twist: &LocalTwist,
    s: f64,
    m_max: u32,
) -> Result<LocalIntegralResult, ArithError> {
    data.validate()?;
    let q = data.q();
    let t = unramified_twist_value(twist)?;
    let x = Complex64::new((q as f64).powf(-s), 0.0);
    let closed_unnormalized = match data {
        SatakePlaceData::Split { w, wc, .. } => match (w, wc) {
            (Gl2Rep::UnramifiedPrincipal { .. }, Gl2Rep::UnramifiedPrincipal { .. }) => {
                return Err(ArithError::InvalidInput(
                    "no level at this place: use the spherical integral".into(),
                ));
            }
            (
                Gl2Rep::RamifiedPrincipal { unramified_value: m1 },
                Gl2Rep::RamifiedPrincipal { unramified_value: m2 },
            ) => {
                let mu = m1.value(q).to_complex() * m2.value(q).to_complex();
                (Complex64::new(1.0, 0.0) - mu * t * x).inv()
            }
            (Gl2Rep::Special { eta: e1 }, Gl2Rep::Special { eta: e2 }) => {
                let l = asai_l_factor(data, twist)?.eval_at_real_s(s)?;
                l * (Complex64::new(1.0, 0.0) - (*e1 as f64) * (*e2 as f64) * t * x)
            }
            _ => asai_l_factor(data, twist)?.eval_at_real_s(s)?,
        },
        SatakePlaceData::Inert { w, .. } => match w {
            Gl2Rep::UnramifiedPrincipal { .. } => {
                return Err(ArithError::InvalidInput(
                    "no level at this place: use the spherical integral".into(),
                ));
            }
            Gl2Rep::RamifiedPrincipal { .. } => asai_l_factor(data, twist)?.eval_at_real_s(s)?,
            Gl2Rep::Special { eta } => {
                let l = asai_l_factor(data, twist)?.eval_at_real_s(s)?;
                l * (Complex64::new(1.0, 0.0) + (*eta as f64) * t * x)
            }
        },
    };
    let ts = whittaker_twisted_sum(data, t, s, m_max)?;
    check_tail(&ts, m_max)?;
    let index = k0_index(q) as f64;
    verified_result(
        closed_unnormalized / index,
        ts.value / index,
        IntegralRoute::TruncatedSum,
        m_max,
        ts.tail / index,
    )
}

/// Auxiliary spherical integral with its removable factor. The place must
/// be spherical with an unramified twist, and its residue cardinality must
/// avoid the residue characteristic p and satisfy q² ≢ 1 (mod p) so the
/// removable factor stays a unit in the interpolation range.
#[derive(Debug, Clone)]
pub struct AuxiliaryIntegral {
    pub integral: LocalIntegralResult,
    pub removable_factor: Complex64,
}

/// Normalized auxiliary integral q/(q+1) · L(s) · (1 − ωφ²(ϖ) q^{−2s})
/// against the direct newvector sum, together with the removable factor
/// q (1 − ωφ²(ϖ) q^{−2s}).
pub fn auxiliary_local_integral(
    data: &SatakePlaceData,
    twist: &LocalTwist,
    s: f64,
    p: u64,
    m_max: u32,
) -> Result<AuxiliaryIntegral, ArithError> {
    data.validate()?;
    if !is_prime(p) || p < 3 {
        return Err(ArithError::InvalidInput(format!(
            "residue characteristic p = {p} must be an odd prime"
        )));
    }
    let q = data.q();
    if q % p == 0 {
        return Err(ArithError::InvalidInput(format!(
            "auxiliary place must not lie above p = {p}"
        )));
    }
    let q_mod = q % p;
    if (q_mod * q_mod) % p == 1 {
        return Err(ArithError::InvalidInput(format!(
            "auxiliary congruence fails: {q}² ≡ 1 (mod {p})"
        )));
    }
    if !spherical(data) {
        return Err(ArithError::InvalidInput(
            "auxiliary place must be spherical".into(),
        ));
    }
    let t = unramified_twist_value(twist)?;
    let omega = data
        .omega_value()
        .ok_or_else(|| ArithError::InvalidInput("central character value unavailable".into()))?
        .value(q)
        .to_complex();
    let qn = q as f64;
    let drop = Complex64::new(1.0, 0.0) - omega * t * t * qn.powf(-2.0 * s);
    let scale = qn / (qn + 1.0);
    let closed = asai_l_factor(data, twist)?.eval_at_real_s(s)? * drop * scale;
    let ts = whittaker_twisted_sum(data, t, s, m_max)?;
    check_tail(&ts, m_max)?;
    let integral = verified_result(
        closed,
        ts.value * scale,
        IntegralRoute::TruncatedSum,
        m_max,
        ts.tail * scale,
    )?;
    Ok(AuxiliaryIntegral {
        integral,
        removable_factor: qn * drop,
    })
}

fn mod_inverse(a: u64, modulus: u64) -> Result<u64, ArithError> {
    let m = modulus as i128;
    let mut r0 = a as i128 % m;
    let mut r1 = m;
    let mut s0 = 1i128;
    let mut s1 = 0i128;
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    if r0 != 1 {
        return Err(ArithError::InvalidInput(format!(
            "{a} is not invertible modulo {modulus}"
        )));
    }
    Ok(s0.rem_euclid(m) as u64)
}

/// Valuation at the residue characteristic q of the square unit −D/4. The
/// prefactor simplification needs it to vanish, which makes the power
/// |ξ²|^{s−1/2} identically one.
pub fn xi_square_valuation(q: u64, discriminant: u64) -> Result<u32, ArithError> {
    if q < 3 || q % 2 == 0 {
        return Err(ArithError::InvalidInput(format!(
            "odd residue characteristic required, got {q}"
        )));
    }
    if discriminant == 0 {
        return Err(ArithError::InvalidInput(
            "discriminant must be positive".into(),
        ));
    }
    let mut v = 0;
    let mut d = discriminant;
    while d % q == 0 {
        v += 1;
        d /= q;
    }
    Ok(v)
}

/// Value of the twist on the square unit class −D/4 modulo the conductor:
/// trivial for an unramified twist, and the character value on the unit
/// representative otherwise.
pub fn xi_square_twist_value(
    twist: &LocalTwist,
    q: u64,
    discriminant: u64,
) -> Result<RootOfUnity, ArithError> {
    if xi_square_valuation(q, discriminant)? != 0 {
        return Err(ArithError::InvalidInput(format!(
            "discriminant {discriminant} is not a unit at q = {q}"
        )));
    }
    match twist {
        LocalTwist::Unramified { .. } => Ok(RootOfUnity::one()),
        LocalTwist::Ramified { character } => {
            if character.prime != q {
                return Err(ArithError::InvalidInput(format!(
                    "twist modulus is a power of {}, not of q = {q}",
                    character.prime
                )));
            }
            let m = character.modulus();
            let inv4 = mod_inverse(4 % m, m)?;
            let neg_d = (m - discriminant % m) % m;
            let class = ((neg_d as u128 * inv4 as u128) % m as u128) as u64;
            character.eval_unit(class as i64)
        }
    }
}

/// Rankin–Selberg gamma factor as an exact rational function in q^{−s}: the
/// Asai gamma factor scaled by the twist value on the square unit class and
/// the inverse base-change constant.
pub fn gamma_rs_function(
    data: &SatakePlaceData,
    twist: &LocalTwist,
    discriminant: u64,
    lambda: &RootOfUnity,
) -> Result<RationalFunctionInQs, ArithError> {
    validate_base_change_epsilon(lambda)?;
    data.validate()?;
    let xi = xi_square_twist_value(twist, data.q(), discriminant)?;
    let scale = Scalar::from_root(&xi).mul(&Scalar::from_root(&lambda.inv()));
    Ok(asai_gamma_factor(data, twist)?.scale(&scale))
}

/// The Rankin–Selberg gamma factor evaluated at a real s.
pub fn gamma_rs(
    data: &SatakePlaceData,
    twist: &LocalTwist,
    s: f64,
    discriminant: u64,
    lambda: &RootOfUnity,
) -> Result<Complex64, ArithError> {
    gamma_rs_function(data, twist, discriminant, lambda)?.eval_at_real_s(s)
}

/// Index of the full-level congruence subgroup of depth r in the maximal
/// compact of the rank-two group: q^{4r−3}(q−1)(q²−1).
pub fn k_full_index(q: u64, r: u32) -> Result<u64, ArithError> {
    if r == 0 {
        return Err(ArithError::InvalidInput(
            "level exponent must be at least 1".into(),
        ));
    }
    Ok(q.pow(4 * r - 3) * (q - 1) * (q * q - 1))
}

/// Average over units modulo q^classes_exp of the additive phase
/// e^{2πiu/q^psi_exp} against an optional character, normalized by the
/// unit-group volume q^{−K}/(1 − q^{−1}).
fn unit_average(
    q: u64,
    classes_exp: u32,
    psi_exp: u32,
    chi: Option<&FiniteOrderCharacter>,
) -> Result<Complex64, ArithError> {
    if classes_exp == 0 || psi_exp > classes_exp {
        return Err(ArithError::InvalidInput(format!(
            "invalid unit average exponents: classes {classes_exp}, phase {psi_exp}"
        )));
    }
    let modulus = q.pow(classes_exp);
    let psi_mod = q.pow(psi_exp);
    let mut acc = Complex64::new(0.0, 0.0);
    for u in 1..modulus {
        if u % q == 0 {
            continue;
        }
        let phase = Complex64::from_polar(1.0, 2.0 * PI * ((u % psi_mod) as f64) / psi_mod as f64);
        let chi_val = match chi {
            Some(c) => c.eval_unit(u as i64)?.to_complex(),
            None => Complex64::new(1.0, 0.0),
        };
        acc += phase * chi_val;
    }
    Ok(acc * (q as f64).powi(-(classes_exp as i32)) / (1.0 - 1.0 / q as f64))
}

/// Closed form of the depth-r local integral above p as an exact rational
/// function of s: t^{2r} γ(s, χ_α φ) / ([K : K_r] γ_RS(s)) with t the twist
/// value at the uniformizer (one for a ramified twist).
pub fn p_local_closed_function(
    data: &SatakePlaceData,
    twist: &LocalTwist,
    r: u32,
    discriminant: u64,
    lambda: &RootOfUnity,
) -> Result<RationalFunctionInQs, ArithError> {
    data.validate()?;
    let q = data.q();
    if !is_prime(q) || q % 2 == 0 {
        return Err(ArithError::InvalidInput(format!(
            "residue cardinality above p must be an odd prime, got {q}"
        )));
    }
    let t_scalar = match twist {
        LocalTwist::Unramified { value } => Scalar::from_root(value),
        LocalTwist::Ramified { character } => {
            if character.prime != q {
                return Err(ArithError::InvalidInput(format!(
                    "twist modulus is a power of {}, not of q = {q}",
                    character.prime
                )));
            }
            let c = character.conductor();
            if c == 0 {
                return Err(ArithError::InvalidInput(
                    "twist descriptor is ramified but the character is trivial on units".into(),
                ));
            }
            if c > r {
                return Err(ArithError::InvalidInput(format!(
                    "twist conductor exponent {c} exceeds the level exponent {r}"
                )));
            }
            Scalar::one()
        }
    };
    let index = k_full_index(q, r)?;
    let alpha = data.alpha_eigenvalue()?;
    let numerator = gl1_gamma_factor(q, &alpha, twist)?;
    let grs = gamma_rs_function(data, twist, discriminant, lambda)?;
    let prefactor = t_scalar.pow(2 * r as i64)?.scale(&rat(1, index as i64));
    Ok(numerator.div(&grs)?.scale(&prefactor))
}

/// Depth-r local integral above p, computed in closed form and replayed
/// through the gamma-factor chain with the inner unit integrals evaluated
/// by brute force and the geometric continuation of the unramified tail.
pub fn p_local_integral(
    data: &SatakePlaceData,
    twist: &LocalTwist,
    r: u32,
    s: f64,
    discriminant: u64,
    lambda: &RootOfUnity,
) -> Result<LocalIntegralResult, ArithError> {
    let closed_fn = p_local_closed_function(data, twist, r, discriminant, lambda)?;
    let closed = closed_fn.eval_at_real_s(s)?;
    let q = data.q();
    let qn = q as f64;
    let (t, chi): (Complex64, Option<&FiniteOrderCharacter>) = match twist {
        LocalTwist::Unramified { value } => (value.to_complex(), None),
        LocalTwist::Ramified { character } => (Complex64::new(1.0, 0.0), Some(character)),
    };
    let alpha = data.alpha_eigenvalue()?.value(q).to_complex();
    let beta = data.beta_eigenvalue()?.value(q).to_complex();
    let omega = data
        .omega_value()
        .ok_or_else(|| {
            ArithError::InvalidInput("unramified central character required above p".into())
        })?
        .value(q)
        .to_complex();
    let grs_val = gamma_rs_function(data, twist, discriminant, lambda)?.eval_at_real_s(s)?;
    let conductor = chi.map(|c| c.conductor()).unwrap_or(0);
    let chi_inv = chi.map(|c| c.inverse());
    let v = alpha * t;
    let mut z = Complex64::new(0.0, 0.0);
    for m in 0..r {
        let psi_exp = r - m;
        let classes_exp = psi_exp.max(conductor.max(1));
        let g_m = unit_average(q, classes_exp, psi_exp, chi_inv.as_ref())?;
        z += v.powi(-(m as i32)) * qn.powf(-(m as f64) * (1.0 - s)) * g_m;
    }
    if conductor == 0 {
        // Exact geometric continuation of the unramified tail Σ_{m≥r} ρ^m.
        let rho = qn.powf(s - 1.0) / v;
        if (Complex64::new(1.0, 0.0) - rho).norm() < 1e-9 {
            return Err(ArithError::PoleAtS {
                s: format!("{s}"),
                multiplicity: 1,
            });
        }
        z += rho.powi(r as i32) / (Complex64::new(1.0, 0.0) - rho);
    }
    let zeta2 = 1.0 / (1.0 - qn.powi(-2));
    let prefactor = (beta * omega * qn.powf(3.0 - 2.0 * s)).powi(-(r as i32));
    let chain = prefactor / grs_val
        * omega.powi(2 * r as i32)
        * t.powi(3 * r as i32)
        * qn.powf(-3.0 * s * r as f64)
        * zeta2
        * z;
    verified_result(closed, chain, IntegralRoute::ProofChain, r, 0.0)
}

/// Exact interpolation identity at s₀ = n−α+1: the closed local integral
/// above p against the product of the inverse twist value on the square
/// unit class, the base-change constant, the twist value squared per level
/// step, the reciprocal index, the modified Euler factor and the twisted
/// L-value. Returns both sides as exact scalars.
pub fn p_local_interpolation_identity(
    data: &SatakePlaceData,
    twist: &LocalTwist,
    r: u32,
    n: u32,
    alpha: u32,
    discriminant: u64,
    lambda: &RootOfUnity,
) -> Result<(Scalar, Scalar), ArithError> {
    if alpha > n {
        return Err(ArithError::InvalidInput(format!(
            "twist index α = {alpha} exceeds the weight bound n = {n}"
        )));
    }
    let s0 = (n - alpha) as i64 + 1;
    let closed_fn = p_local_closed_function(data, twist, r, discriminant, lambda)?;
    let lhs = closed_fn.eval_exact_at_integer_s(s0)?;
    let q = data.q();
    let me = modified_euler_p_with_twist(data, twist, n, alpha)?;
    let l_value = asai_l_factor(data, twist)?.eval_exact_at_integer_s(s0)?;
    let xi = xi_square_twist_value(twist, q, discriminant)?;
    let t_scalar = match twist {
        LocalTwist::Unramified { value } => Scalar::from_root(value),
        LocalTwist::Ramified { .. } => Scalar::one(),
    };
    let index = k_full_index(q, r)?;
    let rhs = Scalar::from_root(&xi.inv())
        .mul(&Scalar::from_root(lambda))
        .mul(&t_scalar.pow(2 * r as i64)?)
        .mul(&me.value)
        .mul(&l_value)
        .scale(&rat(1, index as i64));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rel_err(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
    }

    fn rel_err_f(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    fn root(order: u64, exp: i64) -> RootOfUnity {
        RootOfUnity::new(order, exp)
    }

    fn up(a: QMonomial, b: QMonomial) -> Gl2Rep {
        Gl2Rep::UnramifiedPrincipal { alpha: a, beta: b }
    }

    fn split(q: u64, w: Gl2Rep, wc: Gl2Rep) -> SatakePlaceData {
        SatakePlaceData::Split {
            q,
            w,
            wc,
            omega: None,
        }
    }

    fn inert(q: u64, w: Gl2Rep) -> SatakePlaceData {
        SatakePlaceData::Inert { q, w, omega: None }
    }

    fn trivial_split(q: u64) -> SatakePlaceData {
        split(
            q,
            up(QMonomial::one(), QMonomial::one()),
            up(QMonomial::one(), QMonomial::one()),
        )
    }

    fn unram_twist(z: RootOfUnity) -> LocalTwist {
        LocalTwist::Unramified {
            value: QMonomial::from_root(z),
        }
    }

    #[test]
    fn gamma_matches_known_values() {
        assert!(rel_err_f(gamma_real(0.5), PI.sqrt()) < 1e-13);
        assert!(rel_err_f(gamma_real(5.0), 24.0) < 1e-13);
        assert!(rel_err_f(gamma_real(7.5), 1871.254305797788) < 1e-12);
        let g = gamma_complex(Complex64::new(1.0, 1.0));
        let expected_norm_sq = PI / (PI.sinh());
        assert!(rel_err_f(g.norm_sqr(), expected_norm_sq) < 1e-12);
        assert!(rel_err_f(gamma_real(-1.5), 4.0 * PI.sqrt() / 3.0) < 1e-12);
    }

    #[test]
    fn gamma_r_c_match_exact_integer_values() {
        use crate::local_factors::{gamma_c_at_integer, gamma_r_at_integer};
        for j in 1..=8 {
            let exact = gamma_r_at_integer(j).unwrap().to_complex();
            assert!(rel_err(Complex64::new(gamma_r_numeric(j as f64), 0.0), exact) < 1e-12);
            let exact_c = gamma_c_at_integer(j).unwrap().to_complex();
            assert!(rel_err(Complex64::new(gamma_c_numeric(j as f64), 0.0), exact_c) < 1e-12);
        }
    }

    #[test]
    fn reciprocal_gamma_vanishes_at_poles() {
        assert_eq!(reciprocal_gamma_real(0.0), 0.0);
        assert_eq!(reciprocal_gamma_real(-3.0), 0.0);
        assert_eq!(reciprocal_gamma_real(-7.0), 0.0);
        assert!((reciprocal_gamma_real(0.5) * gamma_real(0.5) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kbessel_half_integer_closed_forms() {
        for &x in &[0.3, 1.0, 4.0, 4.0 * PI] {
            let expected = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!(rel_err_f(kbessel(0.5, x).unwrap(), expected) < 1e-11);
        }
        for &x in &[0.7, 2.0, 9.0] {
            let expected = (PI / (2.0 * x)).sqrt() * (-x).exp() * (1.0 + 1.0 / x);
            assert!(rel_err_f(kbessel(1.5, x).unwrap(), expected) < 1e-11);
            assert!(rel_err_f(kbessel(-1.5, x).unwrap(), expected) < 1e-11);
        }
    }

    #[test]
    fn kbessel_satisfies_recurrence() {
        let nu = 1.3;
        let x = 2.1;
        let k_down = kbessel(nu - 1.0, x).unwrap();
        let k_mid = kbessel(nu, x).unwrap();
        let k_up = kbessel(nu + 1.0, x).unwrap();
        assert!(rel_err_f(k_up, k_down + 2.0 * nu / x * k_mid) < 1e-10);
    }

    #[test]
    fn kbessel_rejects_bad_domain() {
        assert!(kbessel(0.0, 0.0).is_err());
        assert!(kbessel(0.0, -1.0).is_err());
        assert!(kbessel(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn mellin_exact_unit_case() {
        assert!((kbessel_mellin(0.0, 1.0, 2.0).unwrap() - 1.0).abs() < 1e-14);
        let cfg = SpecialFunctionConfig::default();
        let quad = kbessel_mellin_quadrature(&cfg, 0.0, 1.0, 2.0).unwrap();
        assert!(rel_err_f(quad, 1.0) < 1e-8);
    }

    #[test]
    fn mellin_quadrature_matches_closed_on_subgrid() {
        let cfg = SpecialFunctionConfig::default();
        for &nu in &[0.0, 3.0] {
            for &mu in &[1.0, 4.0 * PI] {
                let s = nu + 1.5;
                let closed = kbessel_mellin(nu, mu, s).unwrap();
                let quad = kbessel_mellin_quadrature(&cfg, nu, mu, s).unwrap();
                assert!(
                    rel_err_f(closed, quad) < 1e-8,
                    "ν={nu} μ={mu} s={s}: {closed} vs {quad}"
                );
            }
        }
    }

    #[test]
    fn mellin_rejects_divergent_domain() {
        assert!(kbessel_mellin(2.0, 1.0, 2.0).is_err());
        assert!(kbessel_mellin(0.0, 0.0, 2.0).is_err());
        let cfg = SpecialFunctionConfig::default();
        assert!(kbessel_mellin_quadrature(&cfg, 2.0, 1.0, 1.5).is_err());
    }

    #[test]
    fn arch_t_integral_dual_routes_agree() {
        let cfg = SpecialFunctionConfig::default();
        for n in 0..=3u32 {
            for alpha in 0..=n {
                let s0 = (n - alpha) as f64 + 1.0;
                for &s in &[s0, 2.5] {
                    let closed = arch_t_integral(n, alpha, s).unwrap();
                    let quad = arch_t_integral_quadrature(&cfg, n, alpha, s).unwrap();
                    assert!(
                        rel_err_f(closed, quad) < 1e-10,
                        "n={n} α={alpha} s={s}: {closed} vs {quad}"
                    );
                }
            }
        }
        let anchor = arch_t_integral(0, 0, 1.0).unwrap();
        assert!(rel_err_f(anchor, -1.0 / (8.0 * PI * PI)) < 1e-14);
    }

    #[test]
    fn c_gamma_sum_identity_exact_anchor() {
        let (lhs, rhs) = c_gamma_sum_identity(1, 0, 2.0).unwrap();
        assert!((lhs - 1.0).abs() < 1e-12, "lhs = {lhs}");
        assert!((rhs - 1.0).abs() < 1e-12, "rhs = {rhs}");
    }

    #[test]
    fn c_gamma_sum_identity_holds_on_grid() {
        for n in 0..=6u32 {
            for alpha in 0..=n {
                for &s in &[1.5, 2.0, 3.25, (n + 2) as f64] {
                    let (lhs, rhs) = c_gamma_sum_identity(n, alpha, s).unwrap();
                    let scale = c_gamma_sum_scale(n, alpha, s).unwrap();
                    let tol = 1e-9 * rhs.abs().max(scale * 1e-3);
                    assert!(
                        (lhs - rhs).abs() <= tol,
                        "n={n} α={alpha} s={s}: lhs={lhs} rhs={rhs} scale={scale}"
                    );
                }
            }
        }
    }

    #[test]
    fn c_gamma_sum_cancels_at_closed_form_zero() {
        let (lhs, rhs) = c_gamma_sum_identity(2, 0, 2.0).unwrap();
        assert_eq!(rhs, 0.0);
        let scale = c_gamma_sum_scale(2, 0, 2.0).unwrap();
        assert!(lhs.abs() <= 1e-10 * scale, "lhs = {lhs}, scale = {scale}");
    }

    #[test]
    fn c_gamma_sum_weight_zero_matches_duplication() {
        for &s in &[0.7, 1.0, 2.3, 5.5] {
            let (lhs, rhs) = c_gamma_sum_identity(0, 0, s).unwrap();
            let expected = gamma_real((s + 1.0) / 2.0).powi(2);
            assert!(rel_err_f(lhs, expected) < 1e-12);
            assert!(rel_err_f(rhs, expected) < 1e-12);
        }
    }

    #[test]
    fn c_gamma_sum_rejects_bad_input() {
        assert!(c_gamma_sum_identity(1, 2, 2.0).is_err());
        assert!(c_gamma_sum_identity(1, 0, 0.0).is_err());
        assert!(c_gamma_sum_identity(1, 0, f64::NAN).is_err());
    }

    #[test]
    fn bessel_moment_factor_anchors() {
        let v = bessel_moment_factor(1, 0, 0, 2.0, 4).unwrap();
        assert!(rel_err_f(v, 3.0 / (4.0 * PI.powi(4))) < 1e-13);
        let v0 = bessel_moment_factor(0, 0, 0, 1.0, 4).unwrap();
        assert!(rel_err_f(v0, -2.0 / (PI * PI)) < 1e-13);
        assert_eq!(bessel_moment_factor(1, 0, 1, 2.0, 4).unwrap(), 0.0);
        assert!(bessel_moment_factor(1, 0, 3, 2.0, 4).is_err());
        assert!(bessel_moment_factor(1, 0, 0, 2.0, 0).is_err());
    }

    #[test]
    fn bessel_moment_factor_matches_mellin_routes() {
        let (n, alpha, i, s, disc) = (1u32, 0u32, 0i64, 2.0, 3u64);
        let mu = 4.0 * PI * (disc as f64).sqrt();
        let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
        let b = rat_to_f64(&binomial_rat(2 * n as i64 + 2, n as i64 + 1 - i));
        let d_head = (disc as f64).powf(n as f64 / 2.0 + 1.0);
        let parity = 2.0;
        let s_shift = s + n as f64 + 1.0;
        let closed_mellin = kbessel_mellin(i as f64, mu, s_shift).unwrap();
        let expected = 8.0 * sign * d_head * b * parity * closed_mellin;
        let direct = bessel_moment_factor(n, alpha, i, s, disc).unwrap();
        assert!(rel_err_f(direct, expected) < 1e-12);
        let cfg = SpecialFunctionConfig::default();
        let quad_mellin = kbessel_mellin_quadrature(&cfg, i as f64, mu, s_shift).unwrap();
        let expected_quad = 8.0 * sign * d_head * b * parity * quad_mellin;
        assert!(rel_err_f(direct, expected_quad) < 1e-8);
    }

    #[test]
    fn c_infty_pinned_values() {
        let c = c_infty(2, 1, 3).unwrap();
        let expected = Complex64::new(0.0, 16.0 / 3f64.sqrt());
        assert!(rel_err(c, expected) < 1e-14);
        let c2 = c_infty(1, 0, 4).unwrap();
        assert!(rel_err(c2, Complex64::new(-2.0, 0.0)) < 1e-14);
        let ratio = c_infty(3, 1, 3).unwrap() / c_infty(3, 1, 7).unwrap();
        let expected_ratio = (3f64 / 7f64).powf(-1.0);
        assert!(rel_err(ratio, Complex64::new(expected_ratio, 0.0)) < 1e-13);
    }

    #[test]
    fn arch_zeta_integral_dual_routes_agree() {
        for n in 0..=4u32 {
            for alpha in 0..=n {
                let sign = if (n - alpha) % 2 == 0 { 1 } else { -1 };
                for &disc in &[3u64, 4, 7] {
                    let r = arch_zeta_integral(n, alpha, sign, disc).unwrap();
                    assert!(
                        rel_err(r.summation_route, r.product_route) < 1e-9,
                        "n={n} α={alpha} D={disc}: {:?} vs {:?}",
                        r.summation_route,
                        r.product_route
                    );
                    assert_eq!(r.interpolation_s, (n - alpha) as f64 + 1.0);
                }
            }
        }
    }

    #[test]
    fn arch_zeta_integral_pinned_values() {
        let a = arch_zeta_integral(0, 0, 1, 4).unwrap();
        let expected = Complex64::new(2.0 / PI.powi(4), 0.0);
        assert!(rel_err(a.summation_route, expected) < 1e-13);
        assert!(rel_err(a.product_route, expected) < 1e-13);

        let b = arch_zeta_integral(1, 0, -1, 4).unwrap();
        let expected_b = Complex64::new(-3.0 / (8.0 * PI.powi(8)), 0.0);
        assert!(rel_err(b.summation_route, expected_b) < 1e-13);
        assert!(rel_err(b.product_route, expected_b) < 1e-13);

        let c = arch_zeta_integral(1, 1, 1, 4).unwrap();
        let expected_c = Complex64::new(-2.0 / PI.powi(5), 0.0);
        assert!(rel_err(c.summation_route, expected_c) < 1e-13);
        assert!(rel_err(c.product_route, expected_c) < 1e-13);
    }

    #[test]
    fn arch_zeta_integral_rejects_wrong_parity() {
        assert!(arch_zeta_integral(1, 0, 1, 4).is_err());
        assert!(arch_zeta_integral(2, 0, -1, 4).is_err());
        assert!(arch_zeta_integral(1, 0, -1, 0).is_err());
    }

    #[test]
    fn unramified_trivial_satake_gives_fourth_power() {
        let data = trivial_split(2);
        let twist = LocalTwist::trivial();
        let s = 3.0;
        let result = unramified_local_integral(&data, &twist, s, 60).unwrap();
        let expected = (1.0 - 2f64.powf(-s)).powi(-4);
        assert!(rel_err(result.value, Complex64::new(expected, 0.0)) < 1e-13);
        assert!(result.relative_disagreement <= 1e-12);
        assert_eq!(result.route, IntegralRoute::ClosedForm);
        assert_eq!(result.oracle_route, IntegralRoute::TruncatedSum);
    }

    #[test]
    fn unramified_random_satake_agrees_with_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xA5A1);
        for case in 0..20 {
            let q = [2u64, 3, 5, 7][rng.gen_range(0..4)];
            let rand_root = |rng: &mut ChaCha8Rng| {
                let order = rng.gen_range(1..=12u64);
                root(order, rng.gen_range(0..order as i64 * 2 + 1))
            };
            let data = if case % 2 == 0 {
                split(
                    q,
                    up(
                        QMonomial::from_root(rand_root(&mut rng)),
                        QMonomial::from_root(rand_root(&mut rng)),
                    ),
                    up(
                        QMonomial::from_root(rand_root(&mut rng)),
                        QMonomial::from_root(rand_root(&mut rng)),
                    ),
                )
            } else {
                inert(
                    q,
                    up(
                        QMonomial::from_root(rand_root(&mut rng)),
                        QMonomial::from_root(rand_root(&mut rng)),
                    ),
                )
            };
            let twist = unram_twist(rand_root(&mut rng));
            let result = unramified_local_integral(&data, &twist, 3.0, 60).unwrap();
            assert!(
                result.relative_disagreement <= 1e-12,
                "case {case}: disagreement {}",
                result.relative_disagreement
            );
        }
    }

    #[test]
    fn unramified_rejects_level_and_ramified_twist() {
        let special = split(3, Gl2Rep::Special { eta: 1 }, up(QMonomial::one(), QMonomial::one()));
        assert!(unramified_local_integral(&special, &LocalTwist::trivial(), 3.0, 40).is_err());
        let chi = FiniteOrderCharacter::new(3, 1, vec![root(2, 1)], vec![1]).unwrap();
        let ram = LocalTwist::from_character(&chi);
        assert!(unramified_local_integral(&trivial_split(2), &ram, 3.0, 40).is_err());
    }

    #[test]
    fn inert_special_l_factor_shape() {
        let data = inert(3, Gl2Rep::Special { eta: 1 });
        let l = asai_l_factor(&data, &LocalTwist::trivial()).unwrap();
        let expected = RationalFunctionInQs::inv_euler_block(3, Scalar::q_half_pow(3, -2), 1)
            .mul(&RationalFunctionInQs::inv_euler_block(3, Scalar::from_int(-1), 1));
        assert!(l.equals(&expected));
    }

    #[test]
    fn tame_dual_routes_agree_across_cases() {
        let mu = QMonomial::from_root(root(4, 1));
        let mu2 = QMonomial::from_root(root(3, 1));
        let a = QMonomial::from_root(root(8, 1));
        let b = QMonomial::from_root(root(8, 7));
        let cases: Vec<SatakePlaceData> = vec![
            split(3, Gl2Rep::RamifiedPrincipal { unramified_value: mu }, up(a, b)),
            split(
                3,
                Gl2Rep::RamifiedPrincipal { unramified_value: mu },
                Gl2Rep::Special { eta: -1 },
            ),
            split(3, up(a, b), Gl2Rep::Special { eta: 1 }),
            split(3, Gl2Rep::Special { eta: 1 }, Gl2Rep::Special { eta: -1 }),
            split(
                3,
                Gl2Rep::RamifiedPrincipal { unramified_value: mu },
                Gl2Rep::RamifiedPrincipal { unramified_value: mu2 },
            ),
            inert(3, Gl2Rep::RamifiedPrincipal { unramified_value: mu }),
            inert(3, Gl2Rep::Special { eta: -1 }),
        ];
        let twist = unram_twist(root(12, 5));
        for (k, data) in cases.iter().enumerate() {
            let result = tame_local_integral(data, &twist, 2.2, 80).unwrap();
            assert!(
                result.relative_disagreement <= 1e-12,
                "case {k}: disagreement {}",
                result.relative_disagreement
            );
        }
    }

    #[test]
    fn tame_normalized_value_recovers_l_factor_under_hypotheses() {
        let mu = QMonomial::from_root(root(4, 1));
        let a = QMonomial::from_root(root(8, 1));
        let b = QMonomial::from_root(root(8, 7));
        let twist = unram_twist(root(12, 5));
        let s = 2.2;
        for data in [
            split(3, Gl2Rep::RamifiedPrincipal { unramified_value: mu }, up(a, b)),
            inert(3, Gl2Rep::RamifiedPrincipal { unramified_value: mu }),
        ] {
            assert!(tame_hypothesis_ok(&data));
            let result = tame_local_integral(&data, &twist, s, 80).unwrap();
            let l = asai_l_factor(&data, &twist).unwrap().eval_at_real_s(s).unwrap();
            let normalized = result.value * k0_index(3) as f64;
            assert!(rel_err(normalized, l) < 1e-12);
        }
    }

    #[test]
    fn tame_hypothesis_table() {
        let mu = QMonomial::from_root(root(4, 1));
        let a = QMonomial::one();
        let b = QMonomial::one();
        assert!(!tame_hypothesis_ok(&trivial_split(3)));
        assert!(!tame_hypothesis_ok(&split(
            3,
            Gl2Rep::RamifiedPrincipal { unramified_value: mu },
            Gl2Rep::RamifiedPrincipal { unramified_value: mu },
        )));
        assert!(!tame_hypothesis_ok(&split(
            3,
            Gl2Rep::Special { eta: 1 },
            Gl2Rep::Special { eta: 1 }
        )));
        assert!(tame_hypothesis_ok(&split(
            3,
            Gl2Rep::RamifiedPrincipal { unramified_value: mu },
            up(a, b)
        )));
        assert!(tame_hypothesis_ok(&split(
            3,
            up(a, b),
            Gl2Rep::Special { eta: -1 }
        )));
        assert!(!tame_hypothesis_ok(&inert(3, up(a, b))));
        assert!(!tame_hypothesis_ok(&inert(3, Gl2Rep::Special { eta: 1 })));
        assert!(tame_hypothesis_ok(&inert(
            3,
            Gl2Rep::RamifiedPrincipal { unramified_value: mu }
        )));
    }

    #[test]
    fn tame_special_pair_multiplier_depends_on_twist() {
        let data = split(3, Gl2Rep::Special { eta: 1 }, Gl2Rep::Special { eta: -1 });
        let twist = unram_twist(root(8, 1));
        let s = 2.2;
        let result = tame_local_integral(&data, &twist, s, 80).unwrap();
        let l = asai_l_factor(&data, &twist).unwrap().eval_at_real_s(s).unwrap();
        let x = Complex64::new(3f64.powf(-s), 0.0);
        let wrong = l * (Complex64::new(1.0, 0.0) - (-1.0) * x) / k0_index(3) as f64;
        assert!(rel_err(result.value, wrong) > 1e-3);
    }

    #[test]
    fn tame_rejects_spherical_and_ramified_twist() {
        assert!(tame_local_integral(&trivial_split(3), &LocalTwist::trivial(), 2.0, 40).is_err());
        assert!(tame_local_integral(
            &inert(3, up(QMonomial::one(), QMonomial::one())),
            &LocalTwist::trivial(),
            2.0,
            40
        )
        .is_err());
        let chi = FiniteOrderCharacter::new(3, 1, vec![root(2, 1)], vec![1]).unwrap();
        let data = inert(3, Gl2Rep::Special { eta: 1 });
        assert!(tame_local_integral(&data, &LocalTwist::from_character(&chi), 2.0, 40).is_err());
    }

    #[test]
    fn auxiliary_congruence_gate() {
        let twist = unram_twist(root(4, 1));
        assert!(auxiliary_local_integral(&trivial_split(2), &twist, 2.0, 5, 60).is_ok());
        assert!(auxiliary_local_integral(&trivial_split(11), &twist, 2.0, 5, 60).is_err());
        assert!(auxiliary_local_integral(&trivial_split(7), &twist, 2.0, 3, 60).is_err());
        assert!(auxiliary_local_integral(&trivial_split(5), &twist, 2.0, 5, 60).is_err());
        assert!(auxiliary_local_integral(&trivial_split(2), &twist, 2.0, 4, 60).is_err());
        let level = split(
            2,
            Gl2Rep::Special { eta: 1 },
            up(QMonomial::one(), QMonomial::one()),
        );
        assert!(auxiliary_local_integral(&level, &twist, 2.0, 5, 60).is_err());
    }

    #[test]
    fn auxiliary_removable_relation() {
        let data = trivial_split(2);
        let twist = unram_twist(root(8, 3));
        let s = 2.0;
        let aux = auxiliary_local_integral(&data, &twist, s, 5, 80).unwrap();
        assert!(aux.integral.relative_disagreement <= 1e-12);
        let q = 2.0;
        let l = asai_l_factor(&data, &twist).unwrap().eval_at_real_s(s).unwrap();
        let recovered = aux.integral.value * (q + 1.0) / q / (aux.removable_factor / q);
        assert!(rel_err(recovered, l) < 1e-12);
        let t = root(8, 3).to_complex();
        let aux1 = auxiliary_local_integral(&data, &twist, 1.0, 5, 80).unwrap();
        let expected = q * (Complex64::new(1.0, 0.0) - t * t * Complex64::new(q.powi(-2), 0.0));
        assert!(rel_err(aux1.removable_factor, expected) < 1e-13);
    }

    #[test]
    fn gamma_rs_is_scaled_asai_gamma_for_unramified_twist() {
        let data = inert(5, up(QMonomial::from_root(root(4, 1)), QMonomial::one()));
        let twist = unram_twist(root(3, 1));
        let lambda = root(4, 1);
        let f = gamma_rs_function(&data, &twist, 3, &lambda).unwrap();
        let expected = asai_gamma_factor(&data, &twist)
            .unwrap()
            .scale(&Scalar::from_root(&lambda.inv()));
        assert!(f.equals(&expected));
        for &s in &[0.5, 1.7] {
            let direct = gamma_rs(&data, &twist, s, 3, &lambda).unwrap();
            let via = expected.eval_at_real_s(s).unwrap();
            assert!(rel_err(direct, via) < 1e-14);
        }
        assert_eq!(xi_square_valuation(5, 3).unwrap(), 0);
        assert_eq!(xi_square_valuation(5, 75).unwrap(), 2);
    }

    #[test]
    fn xi_square_class_anchor() {
        let chi = FiniteOrderCharacter::new(5, 1, vec![root(4, 1)], vec![1]).unwrap();
        let twist = LocalTwist::from_character(&chi);
        let xi = xi_square_twist_value(&twist, 5, 3).unwrap();
        let expected = chi.eval_unit(3).unwrap();
        assert!(xi.mul(&expected.inv()).is_one());
        assert!(xi_square_twist_value(&twist, 5, 10).is_err());
        assert!(xi_square_twist_value(&twist, 2, 3).is_err());
        let mismatched = xi_square_twist_value(&twist, 7, 3);
        assert!(mismatched.is_err());
    }

    #[test]
    fn unit_average_frozen_values() {
        let g = unit_average(3, 1, 1, None).unwrap();
        assert!(rel_err(g, Complex64::new(-0.5, 0.0)) < 1e-13);
        let g2 = unit_average(3, 2, 2, None).unwrap();
        assert!(g2.norm() < 1e-13);
        let chi = FiniteOrderCharacter::new(3, 1, vec![root(2, 1)], vec![1]).unwrap();
        let chi_inv = chi.inverse();
        let g3 = unit_average(3, 1, 1, Some(&chi_inv)).unwrap();
        let tau = chi_inv.gauss_sum(1).unwrap().to_complex();
        let expected = tau * Complex64::new((1.0 / 3.0) / (1.0 - 1.0 / 3.0), 0.0);
        assert!(rel_err(g3, expected) < 1e-13);
    }

    #[test]
    fn k_full_index_frozen_values() {
        assert_eq!(k_full_index(3, 1).unwrap(), 48);
        assert_eq!(k_full_index(5, 1).unwrap(), 480);
        assert_eq!(k_full_index(3, 2).unwrap(), 3888);
        assert!(k_full_index(3, 0).is_err());
    }

    fn ramified_char(p: u64, level: u32, conductor: u32) -> FiniteOrderCharacter {
        let image = if conductor <= 1 {
            root(2, 1)
        } else {
            root(p.pow(conductor - 1), 1)
        };
        let chi = FiniteOrderCharacter::new(p, level, vec![image], vec![1]).unwrap();
        assert_eq!(chi.conductor(), conductor);
        chi
    }

    #[test]
    fn p_local_dual_routes_agree() {
        for &p in &[3u64, 5] {
            let shapes: Vec<SatakePlaceData> = vec![
                split(
                    p,
                    up(QMonomial::from_root(root(4, 1)), QMonomial::from_root(root(3, 2))),
                    up(QMonomial::from_root(root(8, 1)), QMonomial::one()),
                ),
                split(
                    p,
                    up(QMonomial::from_root(root(4, 1)), QMonomial::one()),
                    Gl2Rep::Special { eta: -1 },
                ),
                inert(p, up(QMonomial::from_root(root(6, 1)), QMonomial::from_root(root(4, 3)))),
            ];
            let lambda = root(4, 1);
            for r in 1..=2u32 {
                let mut twists: Vec<LocalTwist> = vec![unram_twist(root(4, 1))];
                for c in 1..=r {
                    twists.push(LocalTwist::from_character(&ramified_char(p, r, c)));
                }
                for (k, data) in shapes.iter().enumerate() {
                    for (j, twist) in twists.iter().enumerate() {
                        for &s in &[1.37, 2.0] {
                            let result =
                                p_local_integral(data, twist, r, s, 4, &lambda).unwrap();
                            assert!(
                                result.relative_disagreement <= 1e-10,
                                "p={p} r={r} shape {k} twist {j} s={s}: {}",
                                result.relative_disagreement
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn p_local_detects_tail_pole() {
        let data = trivial_split(3);
        let err = p_local_integral(&data, &LocalTwist::trivial(), 1, 1.0, 4, &root(1, 0));
        assert!(err.is_err());
    }

    #[test]
    fn p_local_rejects_bad_level_and_residue() {
        let data = trivial_split(3);
        let lambda = root(1, 0);
        assert!(p_local_integral(&data, &LocalTwist::trivial(), 0, 1.3, 4, &lambda).is_err());
        let even = trivial_split(2);
        assert!(p_local_integral(&even, &LocalTwist::trivial(), 1, 1.3, 3, &lambda).is_err());
        let chi = ramified_char(3, 1, 1);
        let mismatched = trivial_split(5);
        assert!(p_local_integral(
            &mismatched,
            &LocalTwist::from_character(&chi),
            1,
            1.3,
            4,
            &lambda
        )
        .is_err());
        let deep = LocalTwist::from_character(&ramified_char(3, 2, 2));
        assert!(p_local_integral(&data, &deep, 1, 1.3, 4, &lambda).is_err());
        assert!(p_local_integral(&data, &LocalTwist::trivial(), 1, 1.3, 4, &root(3, 1)).is_err());
    }

    #[test]
    fn p_local_interpolation_identity_is_exact() {
        let lambda = root(4, 1);
        let split_data = split(
            3,
            up(QMonomial::from_root(root(4, 1)), QMonomial::one()),
            up(QMonomial::from_root(root(3, 1)), QMonomial::from_root(root(3, 2))),
        );
        let (lhs, rhs) = p_local_interpolation_identity(
            &split_data,
            &unram_twist(root(4, 1)),
            1,
            1,
            0,
            4,
            &lambda,
        )
        .unwrap();
        assert!(lhs.sub(&rhs).is_zero(), "lhs = {lhs:?}, rhs = {rhs:?}");

        let ram = LocalTwist::from_character(&ramified_char(3, 1, 1));
        let (lhs2, rhs2) =
            p_local_interpolation_identity(&split_data, &ram, 1, 2, 1, 4, &lambda).unwrap();
        assert!(lhs2.sub(&rhs2).is_zero(), "lhs = {lhs2:?}, rhs = {rhs2:?}");

        let inert_data = inert(5, up(QMonomial::from_root(root(4, 1)), QMonomial::one()));
        let (lhs3, rhs3) = p_local_interpolation_identity(
            &inert_data,
            &unram_twist(root(6, 1)),
            2,
            2,
            0,
            3,
            &lambda,
        )
        .unwrap();
        assert!(lhs3.sub(&rhs3).is_zero(), "lhs = {lhs3:?}, rhs = {rhs3:?}");
    }

    #[test]
    fn mod_inverse_small_values() {
        assert_eq!(mod_inverse(4, 5).unwrap(), 4);
        assert_eq!(mod_inverse(4, 25).unwrap(), 19);
        assert_eq!(mod_inverse(2, 9).unwrap(), 5);
        assert!(mod_inverse(3, 9).is_err());
    }

    #[test]
    fn unit_average_rejects_bad_exponents() {
        assert!(unit_average(3, 0, 0, None).is_err());
        assert!(unit_average(3, 1, 2, None).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn geometric_tail_dominates_partial_sums(rho in 1e-6f64..0.95, m_last in 0u32..40) {
            let tail = geometric_poly_tail(rho, m_last).unwrap();
            let mut partial = 0.0;
            for m in (m_last + 1)..(m_last + 300) {
                partial += ((m + 1) as f64).powi(2) * rho.powi(m as i32);
            }
            prop_assert!(tail >= partial * (1.0 - 1e-12));
        }

        #[test]
        fn mellin_ratio_law(nu in 0.0f64..4.0, gap in 0.5f64..6.0, mu in 0.5f64..13.0) {
            let s = nu + gap;
            let m1 = kbessel_mellin(nu, mu, s).unwrap();
            let m2 = kbessel_mellin(nu, mu, s + 2.0).unwrap();
            let expected = (s * s - nu * nu) / (mu * mu);
            prop_assert!((m2 / m1 - expected).abs() <= 1e-9 * expected.abs().max(1.0));
        }
    }

    #[test]
    fn tail_none_at_divergence() {
        assert!(geometric_poly_tail(1.0, 5).is_none());
        assert!(geometric_poly_tail(1.5, 5).is_none());
        assert_eq!(geometric_poly_tail(0.0, 5), Some(0.0));
    }
}
