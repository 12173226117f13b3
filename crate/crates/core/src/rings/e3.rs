use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::zsqrt3::{narrow, round_div};

/// Eisenstein integer `a + bω` with `ω = ξ₃`, `ω² = -1 - ω`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct E3 {
    pub a: i64,
    pub b: i64,
}

impl E3 {
    pub const ZERO: E3 = E3 { a: 0, b: 0 };
    pub const ONE: E3 = E3 { a: 1, b: 0 };
    pub const OMEGA: E3 = E3 { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        E3 { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `a² - ab + b²`.
    pub fn norm(self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a - a * b + b * b
    }

    /// Complex conjugate; `ω̄ = ω² = -1 - ω`.
    pub fn conjugate(self) -> Self {
        E3::new(self.a - self.b, -self.b)
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// The six units `±1, ±ω, ±ω²`.
    pub fn units() -> [E3; 6] {
        let w2 = E3::new(-1, -1);
        [E3::ONE, E3::OMEGA, w2, -E3::ONE, -E3::OMEGA, -w2]
    }

    pub fn pow(self, e: u32) -> Self {
        (0..e).fold(E3::ONE, |acc, _| acc * self)
    }

    fn wide_mul(self, o: E3) -> (i128, i128) {
        let (a, b, c, d) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        (a * c - b * d, a * d + b * c - b * d)
    }

    pub fn exact_div(self, d: E3) -> Option<E3> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let (p, q) = self.wide_mul(d.conjugate());
        if p % n != 0 || q % n != 0 {
            return None;
        }
        Some(E3::new(narrow(p / n), narrow(q / n)))
    }

    pub fn div_rem(self, d: E3) -> Result<(E3, E3)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = d.norm();
        let (p, q) = self.wide_mul(d.conjugate());
        let quot = E3::new(narrow(round_div(p, n)), narrow(round_div(q, n)));
        let rem = self - quot * d;
        if rem.norm() >= n {
            return Err(Error::Internal(format!("Euclidean step failed for {self} / {d}")));
        }
        Ok((quot, rem))
    }

    /// Lexicographically largest of the six associates, with the unit
    /// `u` satisfying `canonical · u = self`.
    pub fn normalize_associate(self) -> Result<(E3, E3)> {
        if self.is_zero() {
            return Err(Error::ZeroInput("normalize_associate"));
        }
        let best = E3::units()
            .into_iter()
            .map(|u| self * u)
            .max()
            .expect("six units");
        let unit = self.exact_div(best).expect("associate divides");
        Ok((best, unit))
    }

    pub fn canonical(self) -> Result<E3> {
        Ok(self.normalize_associate()?.0)
    }
}

pub fn gcd_e3(x: E3, y: E3) -> Result<E3> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::ZeroInput("gcd"));
    }
    let (mut a, mut b) = (x, y);
    while !b.is_zero() {
        let (_, r) = a.div_rem(b)?;
        a = b;
        b = r;
    }
    a.canonical()
}

impl Add for E3 {
    type Output = E3;
    fn add(self, o: E3) -> E3 {
        E3::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for E3 {
    type Output = E3;
    fn sub(self, o: E3) -> E3 {
        E3::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for E3 {
    type Output = E3;
    fn mul(self, o: E3) -> E3 {
        let (p, q) = self.wide_mul(o);
        E3::new(narrow(p), narrow(q))
    }
}

impl Neg for E3 {
    type Output = E3;
    fn neg(self) -> E3 {
        E3::new(-self.a, -self.b)
    }
}

impl fmt::Display for E3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}-{}*w", self.a, -(self.b as i128))
        } else {
            write!(f, "{}+{}*w", self.a, self.b)
        }
    }
}

impl fmt::Debug for E3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn omega_squared() {
        assert_eq!(E3::OMEGA * E3::OMEGA, E3::new(-1, -1));
        assert_eq!(E3::OMEGA.pow(3), E3::ONE);
        assert_eq!(E3::new(1, -1).norm(), 3);
        assert_eq!(E3::OMEGA.conjugate(), E3::new(-1, -1));
    }

    #[test]
    fn units_are_distinct() {
        let mut u = E3::units().to_vec();
        u.sort();
        u.dedup();
        assert_eq!(u.len(), 6);
        assert!(u.iter().all(|x| x.is_unit()));
    }

    proptest! {
        #[test]
        fn division_and_gcd(a in -500i64..500, b in -500i64..500, c in -500i64..500, d in -500i64..500) {
            let x = E3::new(a, b);
            let y = E3::new(c, d);
            prop_assume!(!y.is_zero());
            let (q, r) = x.div_rem(y).unwrap();
            prop_assert_eq!(q * y + r, x);
            let g = gcd_e3(x, y).unwrap();
            prop_assert!(x.exact_div(g).is_some() && y.exact_div(g).is_some());
            prop_assert_eq!((x * y).conjugate(), x.conjugate() * y.conjugate());
            prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn canonical_associates(a in -500i64..500, b in -500i64..500, k in 0usize..6) {
            let x = E3::new(a, b);
            prop_assume!(!x.is_zero());
            let (c, u) = x.normalize_associate().unwrap();
            prop_assert_eq!(c * u, x);
            prop_assert_eq!((x * E3::units()[k]).canonical().unwrap(), c);
        }
    }
}
