use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{parse_sqrt3_terms, Q3Element};

pub(crate) fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("integer overflow in ring arithmetic")
}

/// Nearest integer to `p / q` (ties rounded up), `q != 0`.
pub(crate) fn round_div(p: i128, q: i128) -> i128 {
    let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
    (2 * p + q).div_euclid(2 * q)
}

/// Element `a + b√3` of the ring of integers of Q(√3).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ZSqrt3 {
    pub a: i64,
    pub b: i64,
}

/// Fundamental unit `2 + √3`.
pub const FUNDAMENTAL_UNIT: ZSqrt3 = ZSqrt3 { a: 2, b: 1 };

impl ZSqrt3 {
    pub const ZERO: ZSqrt3 = ZSqrt3 { a: 0, b: 0 };
    pub const ONE: ZSqrt3 = ZSqrt3 { a: 1, b: 0 };
    pub const SQRT3: ZSqrt3 = ZSqrt3 { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        ZSqrt3 { a, b }
    }

    pub const fn from_int(a: i64) -> Self {
        ZSqrt3 { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn conjugate(self) -> Self {
        ZSqrt3::new(self.a, -self.b)
    }

    /// Field norm `a² - 3b²`.
    pub fn norm(self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a - 3 * b * b
    }

    pub fn is_unit(self) -> bool {
        self.norm().abs() == 1
    }

    /// Exact sign under √3 ↦ 1.732….
    pub fn signum(self) -> i8 {
        let (a, b) = (self.a as i128, self.b as i128);
        match (a.signum(), b.signum()) {
            (sa, sb) if sa >= 0 && sb >= 0 => (sa + sb).signum() as i8,
            (sa, sb) if sa <= 0 && sb <= 0 => -((-sa - sb).signum() as i8),
            (sa, _) => {
                let c = (a * a - 3 * b * b).signum() as i8;
                if sa > 0 {
                    c
                } else {
                    -c
                }
            }
        }
    }

    pub fn is_totally_positive(self) -> bool {
        self.signum() > 0 && self.conjugate().signum() > 0
    }

    pub fn pow(self, e: u32) -> Self {
        (0..e).fold(ZSqrt3::ONE, |acc, _| acc * self)
    }

    /// `±(2+√3)^k` for any integer `k`.
    pub fn unit_power(k: i32) -> Self {
        let base = if k >= 0 {
            FUNDAMENTAL_UNIT
        } else {
            FUNDAMENTAL_UNIT.conjugate()
        };
        base.pow(k.unsigned_abs())
    }

    /// Quotient if `d` divides `self` exactly.
    pub fn exact_div(self, d: ZSqrt3) -> Option<ZSqrt3> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let num = self.wide_mul(d.conjugate());
        if num.0 % n != 0 || num.1 % n != 0 {
            return None;
        }
        Some(ZSqrt3::new(narrow(num.0 / n), narrow(num.1 / n)))
    }

    pub fn divides(self, x: ZSqrt3) -> bool {
        x.exact_div(self).is_some()
    }

    fn wide_mul(self, o: ZSqrt3) -> (i128, i128) {
        let (a, b, c, d) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        (a * c + 3 * b * d, a * d + b * c)
    }

    /// Euclidean division with `|N(r)| < |N(d)|`.
    pub fn div_rem(self, d: ZSqrt3) -> Result<(ZSqrt3, ZSqrt3)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = d.norm();
        let (p, q) = self.wide_mul(d.conjugate());
        let (q0, q1) = (round_div(p, n), round_div(q, n));
        let target = n.abs();
        for (da, db) in [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)] {
            let quot = ZSqrt3::new(narrow(q0 + da), narrow(q1 + db));
            let rem = self - quot * d;
            if rem.norm().abs() < target {
                return Ok((quot, rem));
            }
        }
        Err(Error::Internal(format!(
            "Euclidean step failed for {self} / {d}"
        )))
    }

    /// Associate that is positive with `|x / x'|` in `[1, (2+√3)²)`, and the
    /// unit `u` with `canonical · u = self`.
    ///
    /// Elements of positive norm therefore get a totally positive canonical
    /// form. Elements of negative norm (such as `1+√3`) have no totally
    /// positive associate; for those the canonical form is positive with a
    /// negative conjugate.
    pub fn normalize_associate(self) -> Result<(ZSqrt3, ZSqrt3)> {
        if self.is_zero() {
            return Err(Error::ZeroInput("normalize_associate"));
        }
        let mut x = self;
        if x.signum() < 0 {
            x = -x;
        }
        let eps = FUNDAMENTAL_UNIT;
        let eps_inv = eps.conjugate();
        // |x| >= |x'|  iff  ab >= 0, since x² - x'² = 4ab√3.
        while (x.a as i128) * (x.b as i128) < 0 {
            x = x * eps;
        }
        loop {
            let y = x * eps_inv;
            if (y.a as i128) * (y.b as i128) < 0 {
                break;
            }
            x = y;
        }
        let unit = self
            .exact_div(x)
            .ok_or_else(|| Error::Internal("associate is not a divisor".into()))?;
        Ok((x, unit))
    }

    pub fn canonical(self) -> Result<ZSqrt3> {
        Ok(self.normalize_associate()?.0)
    }

    pub fn is_associate(self, other: ZSqrt3) -> bool {
        match (self.canonical(), other.canonical()) {
            (Ok(a), Ok(b)) => a == b,
            _ => self.is_zero() && other.is_zero(),
        }
    }

    pub fn to_q3(self) -> Q3Element {
        Q3Element::from_ints(self.a, self.b)
    }

    pub fn try_from_q3(v: &Q3Element) -> Option<ZSqrt3> {
        let a = v.rational_part();
        let b = v.sqrt3_part();
        if !a.is_integer() || !b.is_integer() {
            return None;
        }
        Some(ZSqrt3::new(a.numer().to_i64()?, b.numer().to_i64()?))
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * 3f64.sqrt()
    }
}

/// Greatest common divisor in Z[√3], returned as the canonical associate.
pub fn gcd_zsqrt3(x: ZSqrt3, y: ZSqrt3) -> Result<ZSqrt3> {
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

impl Add for ZSqrt3 {
    type Output = ZSqrt3;
    fn add(self, o: ZSqrt3) -> ZSqrt3 {
        ZSqrt3::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for ZSqrt3 {
    type Output = ZSqrt3;
    fn sub(self, o: ZSqrt3) -> ZSqrt3 {
        ZSqrt3::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for ZSqrt3 {
    type Output = ZSqrt3;
    fn mul(self, o: ZSqrt3) -> ZSqrt3 {
        let (p, q) = self.wide_mul(o);
        ZSqrt3::new(narrow(p), narrow(q))
    }
}

impl Neg for ZSqrt3 {
    type Output = ZSqrt3;
    fn neg(self) -> ZSqrt3 {
        ZSqrt3::new(-self.a, -self.b)
    }
}

impl fmt::Display for ZSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}-{}*sqrt3", self.a, -(self.b as i128))
        } else {
            write!(f, "{}+{}*sqrt3", self.a, self.b)
        }
    }
}

impl fmt::Debug for ZSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for ZSqrt3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            kind: "Z[sqrt3] element",
            input: s.to_string(),
        };
        let (a, b) = parse_sqrt3_terms(s).ok_or_else(err)?;
        if !a.is_integer() || !b.is_integer() {
            return Err(err());
        }
        Ok(ZSqrt3::new(
            a.numer().to_i64().ok_or_else(err)?,
            b.numer().to_i64().ok_or_else(err)?,
        ))
    }
}
