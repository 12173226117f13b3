//! Rational dynamical zeta functions: power series, fixed-point counts from
//! the logarithmic derivative, cycle counts by Möbius inversion and the
//! Euler product.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::rings::moebius;

/// Integer polynomial, lowest degree first.
pub type Poly = Vec<BigInt>;

fn poly(c: &[i64]) -> Poly {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[BigInt], e: u32) -> Poly {
    (0..e).fold(poly(&[1]), |acc, _| poly_mul(&acc, a))
}

fn product(factors: &[(&[i64], u32)]) -> Poly {
    factors
        .iter()
        .fold(poly(&[1]), |acc, (f, e)| poly_mul(&acc, &poly_pow(&poly(f), *e)))
}

fn derivative(a: &[BigInt]) -> Poly {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Poly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
        })
        .collect()
}

/// Taylor coefficients `0..=order` of `num/den`; `den(0)` must be nonzero.
pub fn series_div(num: &[BigInt], den: &[BigInt], order: usize) -> Result<Vec<Rational>> {
    let d0 = den.first().filter(|d| !d.is_zero()).ok_or(Error::DivisionByZero)?;
    let d0 = Rational::from_integer(d0.clone());
    let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = Rational::from_integer(num.get(n).cloned().unwrap_or_default());
        for k in 1..=n.min(den.len().saturating_sub(1)) {
            acc -= &out[n - k] * Rational::from_integer(den[k].clone());
        }
        out.push(acc / &d0);
    }
    Ok(out)
}

/// `numerator/denominator` with both constant terms equal to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    pub numerator: Poly,
    pub denominator: Poly,
}

impl RationalGF {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        let one = BigInt::one();
        if numerator.first() != Some(&one) || denominator.first() != Some(&one) {
            return Err(Error::InvalidArgument(
                "numerator and denominator must have constant term 1".into(),
            ));
        }
        Ok(RationalGF {
            numerator,
            denominator,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaSystem {
    FibonacciLi,
    FibonacciTorus,
    PenroseLi,
    PenroseTorus,
}

impl ZetaSystem {
    pub const ALL: [ZetaSystem; 4] = [
        ZetaSystem::FibonacciLi,
        ZetaSystem::FibonacciTorus,
        ZetaSystem::PenroseLi,
        ZetaSystem::PenroseTorus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ZetaSystem::FibonacciLi => "fibonacci-li",
            ZetaSystem::FibonacciTorus => "fibonacci-torus",
            ZetaSystem::PenroseLi => "penrose-li",
            ZetaSystem::PenroseTorus => "penrose-torus",
        }
    }
}

impl FromStr for ZetaSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        ZetaSystem::ALL
            .into_iter()
            .find(|z| z.name() == key)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

const FIB: &[i64] = &[1, -1, -1]; // 1 - z - z²
const FIB_TWIN: &[i64] = &[1, 1, -1]; // 1 + z - z²
const GOLDEN_SQ: &[i64] = &[1, -3, 1]; // 1 - 3z + z²
const ONE_MINUS: &[i64] = &[1, -1];
const ONE_PLUS: &[i64] = &[1, 1];

pub fn catalog(system: ZetaSystem) -> RationalGF {
    let (num, den) = match system {
        ZetaSystem::FibonacciLi => (poly(ONE_MINUS), poly(FIB)),
        ZetaSystem::FibonacciTorus => (poly(&[1, 0, -1]), poly(FIB)),
        ZetaSystem::PenroseLi => (
            product(&[(FIB, 2), (ONE_PLUS, 1)]),
            product(&[(GOLDEN_SQ, 1), (FIB_TWIN, 3), (ONE_MINUS, 1)]),
        ),
        ZetaSystem::PenroseTorus => (
            product(&[(FIB, 2), (FIB_TWIN, 2)]),
            product(&[(GOLDEN_SQ, 1), (ONE_MINUS, 2), (ONE_PLUS, 4)]),
        ),
    };
    RationalGF::new(num, den).expect("catalog entries are normalized")
}

pub fn series_coeffs(gf: &RationalGF, order: usize) -> Vec<Rational> {
    series_div(&gf.numerator, &gf.denominator, order).expect("denominator(0) = 1")
}

fn to_integer(r: &Rational, n: usize) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::InvalidZeta(n))
    }
}

/// `a₁..a_M` from `z ζ'/ζ = z (N'D - N D') / (N D)`.
pub fn fixed_point_counts(gf: &RationalGF, max: usize) -> Result<Vec<BigInt>> {
    let (n, d) = (&gf.numerator, &gf.denominator);
    let top = sub(&poly_mul(&derivative(n), d), &poly_mul(n, &derivative(d)));
    let mut shifted = vec![BigInt::zero()];
    shifted.extend(top);
    let coeffs = series_div(&shifted, &poly_mul(n, d), max)?;
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| to_integer(c, i))
        .collect()
}

/// `cₙ = (1/n) Σ_{d|n} μ(n/d) a_d`; every `cₙ` must be a non-negative
/// integer.
pub fn cycle_counts(a: &[BigInt]) -> Result<Vec<BigInt>> {
    (1..=a.len())
        .map(|n| {
            let mut s = BigInt::zero();
            for d in (1..=n).filter(|d| n % d == 0) {
                s += &a[d - 1] * BigInt::from(moebius((n / d) as u64));
            }
            let n_big = BigInt::from(n);
            if (&s % &n_big).is_zero() && !s.is_negative() {
                Ok(s / n_big)
            } else {
                Err(Error::InvalidOrbitData(n))
            }
        })
        .collect()
}

/// `aₙ = Σ_{m|n} m·c_m`.
pub fn fixed_points_from_cycles(c: &[BigInt]) -> Vec<BigInt> {
    (1..=c.len())
        .map(|n| {
            (1..=n)
                .filter(|m| n % m == 0)
                .map(|m| &c[m - 1] * BigInt::from(m))
                .sum()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    pub order: usize,
    pub a: Vec<BigInt>,
    pub c: Vec<BigInt>,
}

pub fn orbit_data(gf: &RationalGF, max: usize) -> Result<OrbitData> {
    let a = fixed_point_counts(gf, max)?;
    let c = cycle_counts(&a)?;
    Ok(OrbitData { order: max, a, c })
}

/// Compares `∏_{n≤M} (1 - zⁿ)^{cₙ}` with the series of `1/ζ` up to `z^M`.
pub fn euler_product_check(gf: &RationalGF, c: &[BigInt], max: usize) -> bool {
    let mut prod = vec![BigInt::zero(); max + 1];
    prod[0] = BigInt::one();
    for (i, cn) in c.iter().enumerate().take(max) {
        let n = i + 1;
        if cn.is_negative() {
            return false;
        }
        // (1 - zⁿ)^c truncated: Σ_k C(c, k) (-zⁿ)^k for k ≤ max/n.
        let mut factor = vec![BigInt::zero(); max + 1];
        let mut binom = BigInt::one();
        for k in 0..=max / n {
            factor[k * n] = if k % 2 == 0 { binom.clone() } else { -binom.clone() };
            binom = binom * (cn - BigInt::from(k)) / BigInt::from(k + 1);
        }
        prod = poly_mul(&prod, &factor);
        prod.truncate(max + 1);
    }
    let inverse = series_coeffs(
        &RationalGF {
            numerator: gf.denominator.clone(),
            denominator: gf.numerator.clone(),
        },
        max,
    );
    prod.iter()
        .zip(&inverse)
        .all(|(p, q)| Rational::from_integer(p.clone()) == *q)
}
