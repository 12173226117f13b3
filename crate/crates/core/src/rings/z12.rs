use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{Q3Element, Q3Vector};

use super::zsqrt3::{narrow, ZSqrt3};

/// Element `c0 + c1ξ + c2ξ² + c3ξ³` of Z[ξ₁₂], reduced with `ξ⁴ = ξ² - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Z12(pub [i64; 4]);

/// Target plane of [`Z12::embed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plane {
    Physical,
    Internal,
}

/// A point of the plane with coordinates `(x/2, y/2)` where `x, y ∈ Z[√3]`.
///
/// All module points embed with half-integral Z[√3] coordinates, so the hot
/// geometric predicates run on machine integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct HalfPoint {
    pub x: ZSqrt3,
    pub y: ZSqrt3,
}

impl HalfPoint {
    pub fn to_vector(self) -> Q3Vector {
        let h = Q3Element::frac(1, 0, 2);
        Q3Vector::new(self.x.to_q3() * &h, self.y.to_q3() * &h)
    }

    /// Four times the squared length.
    pub fn norm_sq4(self) -> ZSqrt3 {
        self.x * self.x + self.y * self.y
    }
}

impl Z12 {
    pub const ZERO: Z12 = Z12([0; 4]);
    pub const ONE: Z12 = Z12([1, 0, 0, 0]);
    pub const XI: Z12 = Z12([0, 1, 0, 0]);

    pub const fn new(c0: i64, c1: i64, c2: i64, c3: i64) -> Self {
        Z12([c0, c1, c2, c3])
    }

    pub fn is_zero(self) -> bool {
        self.0 == [0; 4]
    }

    /// `ξᵏ` for any integer `k`.
    pub fn xi_pow(k: i64) -> Self {
        (0..k.rem_euclid(12)).fold(Z12::ONE, |acc, _| acc.mul_xi())
    }

    /// Multiplication by ξ (rotation by 30°).
    pub fn mul_xi(self) -> Self {
        let [c0, c1, c2, c3] = self.0;
        Z12([-c3, c0, c1 + c3, c2])
    }

    /// Complex conjugation, `ξ ↦ ξ⁻¹ = ξ - ξ³`.
    pub fn conjugate(self) -> Self {
        let [c0, c1, c2, c3] = self.0;
        Z12([c0 + c2, c1, -c2, -c1 - c3])
    }

    /// Galois automorphism `ξ ↦ ξ⁵ = ξ³ - ξ`.
    pub fn star(self) -> Self {
        let [c0, c1, c2, c3] = self.0;
        Z12([c0 + c2, -c1, -c2, c1 + c3])
    }

    /// `x·x̄` as an element of Z[√3], using `√3 = ξ + ξ⁻¹ = 2ξ - ξ³`.
    pub fn relative_norm(self) -> ZSqrt3 {
        let [d0, d1, d2, d3] = (self * self.conjugate()).0;
        assert!(
            d2 == 0 && d1 == -2 * d3,
            "x·conj(x) = {d0},{d1},{d2},{d3} is not real"
        );
        ZSqrt3::new(d0, -d3)
    }

    /// Absolute norm `N(x) = (x x̄)(x x̄)'`.
    pub fn absolute_norm(self) -> i128 {
        self.relative_norm().norm()
    }

    /// Doubled coordinates of the physical (`ξ ↦ e^{iπ/6}`) or internal
    /// (`x ↦ star(x)`) embedding.
    pub fn embed_half(self, plane: Plane) -> HalfPoint {
        let [c0, c1, c2, c3] = self.0;
        let s = match plane {
            Plane::Physical => 1,
            Plane::Internal => -1,
        };
        HalfPoint {
            x: ZSqrt3::new(2 * c0 + c2, s * c1),
            y: ZSqrt3::new(c1 + 2 * c3, s * c2),
        }
    }

    pub fn embed(self, plane: Plane) -> Q3Vector {
        self.embed_half(plane).to_vector()
    }

    /// Inverse of the combined embedding: recover the module element from
    /// doubled physical and internal coordinates, if they come from one.
    pub fn from_embeddings(phys: HalfPoint, internal: HalfPoint) -> Option<Z12> {
        if phys.x.a != internal.x.a || phys.y.a != internal.y.a {
            return None;
        }
        if phys.x.b != -internal.x.b || phys.y.b != -internal.y.b {
            return None;
        }
        let c1 = phys.x.b;
        let c2 = phys.y.b;
        let (p, q) = (phys.x.a - c2, phys.y.a - c1);
        if p % 2 != 0 || q % 2 != 0 {
            return None;
        }
        Some(Z12([p / 2, c1, c2, q / 2]))
    }

    /// Orbit of the point symmetry group D₁₂ (rotations by ξᵏ and reflection).
    pub fn d12_orbit(self) -> Vec<Z12> {
        let mut out = Vec::with_capacity(24);
        let mut r = self;
        let mut m = self.conjugate();
        for _ in 0..12 {
            out.push(r);
            out.push(m);
            r = r.mul_xi();
            m = m.mul_xi();
        }
        out.sort();
        out.dedup();
        out
    }
}

impl Add for Z12 {
    type Output = Z12;
    fn add(self, o: Z12) -> Z12 {
        Z12(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Z12 {
    type Output = Z12;
    fn sub(self, o: Z12) -> Z12 {
        Z12(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Z12 {
    type Output = Z12;
    fn neg(self) -> Z12 {
        Z12(self.0.map(|c| -c))
    }
}

impl Mul for Z12 {
    type Output = Z12;
    fn mul(self, o: Z12) -> Z12 {
        let mut p = [0i128; 7];
        for i in 0..4 {
            for j in 0..4 {
                p[i + j] += self.0[i] as i128 * o.0[j] as i128;
            }
        }
        // ξ^k = ξ^(k-2) - ξ^(k-4)
        for k in (4..7).rev() {
            let c = p[k];
            p[k - 2] += c;
            p[k - 4] -= c;
            p[k] = 0;
        }
        Z12([narrow(p[0]), narrow(p[1]), narrow(p[2]), narrow(p[3])])
    }
}

impl fmt::Display for Z12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a},{b},{c},{d}")
    }
}

impl fmt::Debug for Z12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z12({self})")
    }
}

impl FromStr for Z12 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            kind: "Z[xi12] element \"c0,c1,c2,c3\"",
            input: s.to_string(),
        };
        let parts: Vec<i64> = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err())?;
        let coords: [i64; 4] = parts.try_into().map_err(|_| err())?;
        Ok(Z12(coords))
    }
}
