//! Exact and numeric arithmetic for the local building blocks of p-adic Asai
//! L-functions: rationals, p-adic elements at finite precision, roots of unity
//! and cyclotomic integers, Laurent rational functions in X = q^{−s},
//! homogeneous-polynomial pairings, finite-order characters with Gauss sums,
//! Satake data with local L/ε/γ-factors and modified Euler factors,
//! Bruhat–Schwartz test functions with their distribution identities,
//! K-Bessel/Γ zeta integrals, and group-ring measures over (Z/p^N)[(Z/p^r)^×].

pub mod exact_arith;
pub mod poly_weights;
pub mod characters;
pub mod local_factors;
pub mod schwartz;
pub mod zeta_integrals;
pub mod iwasawa_measure;
