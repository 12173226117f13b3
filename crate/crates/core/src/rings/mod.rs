//! The rings Z[ξ₃], Z[√3] and Z[ξ₁₂], with unit normalization, Euclidean
//! gcd and prime factorization.

mod e3;
mod factor;
mod z12;
mod zsqrt3;

pub use e3::{gcd_e3, E3};
pub use factor::{
    factor_e3, factor_rational, factor_zsqrt3, is_prime, moebius, split_rational_prime,
    split_rational_prime_e3, sqrt_mod, E3Factorization, E3PrimeKind, PrimeClass, PrimeFactor,
    PrimeSplitting, ZSqrt3Factorization,
};
pub use z12::{HalfPoint, Plane, Z12};
pub use zsqrt3::{gcd_zsqrt3, ZSqrt3, FUNDAMENTAL_UNIT};
