//! Prime factorization in Z, Z[√3] and Z[ξ₃].

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

use super::e3::{gcd_e3, E3};
use super::zsqrt3::{gcd_zsqrt3, ZSqrt3};

/// Prime factorization of a positive rational integer, primes ascending.
pub fn factor_rational(n: u64) -> Vec<(u64, u32)> {
    if n <= 1 {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize64(n)
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect()
}

pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// Möbius function.
pub fn moebius(n: u64) -> i8 {
    let f = factor_rational(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Square root of `n` modulo an odd prime `p` (Tonelli–Shanks), or `None`
/// for a non-residue. The non-residue search runs `2, 3, 4, …`, so the
/// result is deterministic; the smaller of the two roots is returned.
pub fn sqrt_mod(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(n);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

/// Behaviour of a prime of Z[√3] in the extension to Z[ξ₁₂].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PrimeClass {
    /// Above `p ≡ 1 (12)` or `p ≡ ±5 (12)`: splits as `P·P̄`.
    SplitsInZ12,
    /// Above `p ≡ -1 (12)`: stays prime.
    InertInZ12,
    /// `1+√3`, above 2; prime in Z[ξ₁₂].
    Ramified2,
    /// `√3`, above 3; prime in Z[ξ₁₂].
    Ramified3,
}

impl PrimeClass {
    /// Whether the prime splits in Z[ξ₁₂]; all other classes stay prime there.
    pub fn splits(self) -> bool {
        self == PrimeClass::SplitsInZ12
    }
}

/// Factorization of a rational prime in Z[√3].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSplitting {
    pub p: u64,
    pub unit: ZSqrt3,
    /// Canonical primes with their exponents in `p`.
    pub primes: Vec<(ZSqrt3, u32)>,
    pub class: PrimeClass,
}

impl PrimeSplitting {
    pub fn product(&self) -> ZSqrt3 {
        self.primes
            .iter()
            .fold(self.unit, |acc, &(q, e)| acc * q.pow(e))
    }
}

/// Splits the rational prime `p` in Z[√3] and classifies the factors by
/// their behaviour in Z[ξ₁₂].
pub fn split_rational_prime(p: u64) -> Result<PrimeSplitting> {
    if !is_prime(p) {
        return Err(Error::Internal(format!("{p} is not prime")));
    }
    let pz = ZSqrt3::from_int(p as i64);
    let (primes, class) = match p {
        2 => (vec![(ZSqrt3::new(1, 1).canonical()?, 2)], PrimeClass::Ramified2),
        3 => (vec![(ZSqrt3::SQRT3.canonical()?, 2)], PrimeClass::Ramified3),
        _ => match p % 12 {
            1 | 11 => {
                let r = sqrt_mod(3, p)
                    .ok_or_else(|| Error::Internal(format!("3 is not a square mod {p}")))?;
                let q = gcd_zsqrt3(pz, ZSqrt3::new(r as i64, 1))?;
                if q.norm().unsigned_abs() != p as u128 {
                    return Err(Error::Internal(format!("bad prime {q} above {p}")));
                }
                let mut pair = vec![(q, 1), (q.conjugate().canonical()?, 1)];
                pair.sort();
                let class = if p % 12 == 1 {
                    PrimeClass::SplitsInZ12
                } else {
                    PrimeClass::InertInZ12
                };
                (pair, class)
            }
            _ => (vec![(pz, 1)], PrimeClass::SplitsInZ12),
        },
    };
    let prod = primes.iter().fold(ZSqrt3::ONE, |acc, &(q, e)| acc * q.pow(e));
    let unit = pz
        .exact_div(prod)
        .filter(|u| u.is_unit())
        .ok_or_else(|| Error::Internal(format!("splitting of {p} does not multiply out")))?;
    Ok(PrimeSplitting {
        p,
        unit,
        primes,
        class,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactor {
    pub prime: ZSqrt3,
    /// Rational prime below.
    pub p: u64,
    pub exponent: u32,
    pub class: PrimeClass,
}

/// `unit · ∏ primeᵉ`, with canonical pairwise non-associate primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSqrt3Factorization {
    pub unit: ZSqrt3,
    pub factors: Vec<PrimeFactor>,
}

impl ZSqrt3Factorization {
    pub fn product(&self) -> ZSqrt3 {
        self.factors
            .iter()
            .fold(self.unit, |acc, f| acc * f.prime.pow(f.exponent))
    }

    pub fn exponent_of(&self, prime: ZSqrt3) -> u32 {
        let c = match prime.canonical() {
            Ok(c) => c,
            Err(_) => return 0,
        };
        self.factors
            .iter()
            .find(|f| f.prime == c)
            .map_or(0, |f| f.exponent)
    }
}

impl fmt::Display for ZSqrt3Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.unit)?;
        for pf in &self.factors {
            write!(f, "·({})^{}", pf.prime, pf.exponent)?;
        }
        Ok(())
    }
}

/// Factors a nonzero element of Z[√3] via the rational factorization of its
/// norm.
pub fn factor_zsqrt3(x: ZSqrt3) -> Result<ZSqrt3Factorization> {
    if x.is_zero() {
        return Err(Error::ZeroInput("factor_zsqrt3"));
    }
    let n = u64::try_from(x.norm().unsigned_abs())
        .map_err(|_| Error::Budget(format!("norm of {x} exceeds 64 bits")))?;
    let mut rest = x;
    let mut factors = Vec::new();
    for (p, _) in factor_rational(n) {
        let split = split_rational_prime(p)?;
        for &(q, _) in &split.primes {
            let mut e = 0;
            while let Some(r) = rest.exact_div(q) {
                rest = r;
                e += 1;
            }
            if e > 0 {
                factors.push(PrimeFactor {
                    prime: q,
                    p,
                    exponent: e,
                    class: split.class,
                });
            }
        }
    }
    if !rest.is_unit() {
        return Err(Error::Internal(format!(
            "cofactor {rest} of {x} is not a unit"
        )));
    }
    Ok(ZSqrt3Factorization {
        unit: rest,
        factors,
    })
}

/// Behaviour of a rational prime in Z[ξ₃].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum E3PrimeKind {
    /// `p ≡ 1 (3)`.
    Split,
    /// `p ≡ 2 (3)`.
    Inert,
    /// `3 = -ω²(1-ω)²`.
    Ramified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E3Factorization {
    pub unit: E3,
    pub factors: Vec<(E3, u32, E3PrimeKind)>,
}

impl E3Factorization {
    pub fn product(&self) -> E3 {
        self.factors
            .iter()
            .fold(self.unit, |acc, &(q, e, _)| acc * q.pow(e))
    }
}

/// Canonical Eisenstein primes above the rational prime `p`.
pub fn split_rational_prime_e3(p: u64) -> Result<(Vec<E3>, E3PrimeKind)> {
    if !is_prime(p) {
        return Err(Error::Internal(format!("{p} is not prime")));
    }
    if p == 3 {
        return Ok((vec![E3::new(1, -1).canonical()?], E3PrimeKind::Ramified));
    }
    if p % 3 == 2 {
        return Ok((vec![E3::new(p as i64, 0).canonical()?], E3PrimeKind::Inert));
    }
    // r² ≡ -3 and √-3 = 1 + 2ω, so p divides N(r + 1 + 2ω) = r² + 3.
    let r = sqrt_mod(p - 3, p)
        .ok_or_else(|| Error::Internal(format!("-3 is not a square mod {p}")))?;
    let q = gcd_e3(E3::new(p as i64, 0), E3::new(r as i64 + 1, 2))?;
    if q.norm() != p as i128 {
        return Err(Error::Internal(format!("bad Eisenstein prime {q} above {p}")));
    }
    let mut pair = vec![q, q.conjugate().canonical()?];
    pair.sort();
    Ok((pair, E3PrimeKind::Split))
}

pub fn factor_e3(x: E3) -> Result<E3Factorization> {
    if x.is_zero() {
        return Err(Error::ZeroInput("factor_e3"));
    }
    let n = u64::try_from(x.norm())
        .map_err(|_| Error::Budget(format!("norm of {x} exceeds 64 bits")))?;
    let mut rest = x;
    let mut factors = Vec::new();
    for (p, _) in factor_rational(n) {
        let (primes, kind) = split_rational_prime_e3(p)?;
        for q in primes {
            let mut e = 0;
            while let Some(r) = rest.exact_div(q) {
                rest = r;
                e += 1;
            }
            if e > 0 {
                factors.push((q, e, kind));
            }
        }
    }
    if !rest.is_unit() {
        return Err(Error::Internal(format!("cofactor {rest} of {x} is not a unit")));
    }
    Ok(E3Factorization {
        unit: rest,
        factors,
    })
}
