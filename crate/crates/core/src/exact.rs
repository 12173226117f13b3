//! Exact arithmetic in the real quadratic field Q(√3).
//!
//! Every geometric quantity in this crate (window vertices, shifts, overlap
//! areas, averaged shelling numbers) lives in Q(√3), so a single field type
//! with exact sign determination is enough to make all predicates exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((n, d)) => {
            let n = n.parse::<BigInt>().ok()?;
            let d = d.parse::<BigInt>().ok()?;
            if d.is_zero() || d.is_negative() {
                return None;
            }
            Some(Rational::new(n, d))
        }
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element `a + b√3` of Q(√3).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Q3Element {
    a: Rational,
    b: Rational,
}

impl Q3Element {
    pub fn new(a: Rational, b: Rational) -> Self {
        Q3Element { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Q3Element::new(rat_int(a), rat_int(b))
    }

    pub fn from_int(a: i64) -> Self {
        Q3Element::from_ints(a, 0)
    }

    pub fn from_rational(a: Rational) -> Self {
        Q3Element::new(a, Rational::zero())
    }

    /// `(a + b√3) / d` for integers.
    pub fn frac(a: i64, b: i64, d: i64) -> Self {
        Q3Element::new(rat(a, d), rat(b, d))
    }

    pub fn zero() -> Self {
        Q3Element::default()
    }

    pub fn one() -> Self {
        Q3Element::from_int(1)
    }

    pub fn sqrt3() -> Self {
        Q3Element::from_ints(0, 1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt3_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b√3`.
    pub fn conjugate(&self) -> Self {
        Q3Element::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² - 3b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - rat_int(3) * &self.b * &self.b
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(Q3Element::new(c.a / &n, c.b / n))
    }

    pub fn checked_div(&self, rhs: &Q3Element) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Q3Element::new(&self.a * r, &self.b * r)
    }

    /// Exact sign under the real embedding √3 ↦ 1.732….
    pub fn signum(&self) -> i8 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sa >= 0 && sb >= 0 {
            return (sa + sb).signum();
        }
        if sa <= 0 && sb <= 0 {
            return -((-sa - sb).signum());
        }
        // Mixed signs: compare a² against 3b².
        let a2 = &self.a * &self.a;
        let b2 = rat_int(3) * &self.b * &self.b;
        let c = match a2.cmp(&b2) {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            Ordering::Equal => 0,
        };
        if sa > 0 {
            c
        } else {
            -c
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Positive under both real embeddings.
    pub fn is_totally_positive(&self) -> bool {
        self.signum() > 0 && self.conjugate().signum() > 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// True if both coordinates have denominators dividing `d`.
    pub fn has_denominator_dividing(&self, d: i64) -> bool {
        let d = BigInt::from(d);
        (&d % self.a.denom()).is_zero() && (&d % self.b.denom()).is_zero()
    }

    /// Rational interval enclosing the real value, of width at most
    /// `2^-precision`.
    pub fn to_interval(&self, precision: u32) -> Interval {
        let precision = precision.max(32);
        if self.b.is_zero() {
            return Interval {
                lo: self.a.clone(),
                hi: self.a.clone(),
            };
        }
        // |b| < 2^bits, so a √3 enclosure of width 2^-k with
        // k = precision + bits keeps the total width below 2^-precision.
        let bits = self.b.numer().bits() as u32;
        let k = precision + bits;
        let scale = BigInt::one() << k;
        let s = (BigInt::from(3) * &scale * &scale).sqrt();
        let lo3 = Rational::new(s.clone(), scale.clone());
        let hi3 = Rational::new(s + 1, scale);
        let (l, h) = if self.b.is_positive() {
            (&self.b * lo3, &self.b * hi3)
        } else {
            (&self.b * hi3, &self.b * lo3)
        };
        Interval {
            lo: &self.a + l,
            hi: &self.a + h,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval(64).midpoint_f64()
    }
}

fn sgn(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Plus => 1,
        Sign::Minus => -1,
        Sign::NoSign => 0,
    }
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / rat_int(2)).to_f64().unwrap_or(f64::NAN)
    }

    /// Sign if the interval excludes zero (or is exactly `[0, 0]`).
    pub fn signum(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

impl PartialOrd for Q3Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q3Element {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl fmt::Display for Q3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if !self.a.is_zero() {
            out.push_str(&fmt_rational(&self.a));
        }
        if !self.b.is_zero() {
            if self.b.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&fmt_rational(&self.b.abs()));
            out.push_str("*sqrt3");
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Q3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q3({self})")
    }
}

/// Splits `"a+b*sqrt3"`-style text into a rational part and a √3 coefficient.
/// Shared with the integer ring parser.
pub(crate) fn parse_sqrt3_terms(input: &str) -> Option<(Rational, Rational)> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(head) = s.strip_suffix("sqrt3") else {
        return Some((parse_rational(&s)?, Rational::zero()));
    };
    let head = head.strip_suffix('*').unwrap_or(head);
    // The √3 coefficient starts at the last sign that is not the leading one.
    let split = head
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i)
        .next_back();
    let (rat_part, coef_part) = match split {
        Some(i) => (&head[..i], &head[i..]),
        None => ("", head),
    };
    let a = if rat_part.is_empty() {
        Rational::zero()
    } else {
        parse_rational(rat_part)?
    };
    let b = match coef_part {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        c => parse_rational(c)?,
    };
    Some((a, b))
}

impl FromStr for Q3Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sqrt3_terms(s)
            .map(|(a, b)| Q3Element::new(a, b))
            .ok_or_else(|| Error::Parse {
                kind: "Q(sqrt3) element",
                input: s.to_string(),
            })
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Q3Element> for Q3Element {
            type Output = Q3Element;
            fn $method(self, rhs: Q3Element) -> Q3Element {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Q3Element> for Q3Element {
            type Output = Q3Element;
            fn $method(self, rhs: &Q3Element) -> Q3Element {
                (&self).$method(rhs)
            }
        }
        impl $tr<Q3Element> for &Q3Element {
            type Output = Q3Element;
            fn $method(self, rhs: Q3Element) -> Q3Element {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&Q3Element> for &Q3Element {
    type Output = Q3Element;
    fn add(self, rhs: &Q3Element) -> Q3Element {
        Q3Element::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub<&Q3Element> for &Q3Element {
    type Output = Q3Element;
    fn sub(self, rhs: &Q3Element) -> Q3Element {
        Q3Element::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul<&Q3Element> for &Q3Element {
    type Output = Q3Element;
    fn mul(self, rhs: &Q3Element) -> Q3Element {
        let a = &self.a * &rhs.a + rat_int(3) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Q3Element::new(a, b)
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Q3Element {
    type Output = Q3Element;
    fn neg(self) -> Q3Element {
        Q3Element::new(-self.a.clone(), -self.b.clone())
    }
}

impl Neg for Q3Element {
    type Output = Q3Element;
    fn neg(self) -> Q3Element {
        Q3Element::new(-self.a, -self.b)
    }
}

impl AddAssign<&Q3Element> for Q3Element {
    fn add_assign(&mut self, rhs: &Q3Element) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Q3Element> for Q3Element {
    fn sub_assign(&mut self, rhs: &Q3Element) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl std::iter::Sum for Q3Element {
    fn sum<I: Iterator<Item = Q3Element>>(iter: I) -> Self {
        iter.fold(Q3Element::zero(), |acc, x| acc + x)
    }
}

/// A point of the plane with coordinates in Q(√3).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Q3Vector {
    pub x: Q3Element,
    pub y: Q3Element,
}

impl Q3Vector {
    pub fn new(x: Q3Element, y: Q3Element) -> Self {
        Q3Vector { x, y }
    }

    pub fn zero() -> Self {
        Q3Vector::default()
    }

    pub fn dot(&self, other: &Q3Vector) -> Q3Element {
        &self.x * &other.x + &self.y * &other.y
    }

    /// z-component of the planar cross product.
    pub fn cross(&self, other: &Q3Vector) -> Q3Element {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn norm_sq(&self) -> Q3Element {
        self.dot(self)
    }

    pub fn scale(&self, k: &Q3Element) -> Q3Vector {
        Q3Vector::new(&self.x * k, &self.y * k)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl Add<&Q3Vector> for &Q3Vector {
    type Output = Q3Vector;
    fn add(self, rhs: &Q3Vector) -> Q3Vector {
        Q3Vector::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub<&Q3Vector> for &Q3Vector {
    type Output = Q3Vector;
    fn sub(self, rhs: &Q3Vector) -> Q3Vector {
        Q3Vector::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Q3Vector {
    type Output = Q3Vector;
    fn neg(self) -> Q3Vector {
        Q3Vector::new(-&self.x, -&self.y)
    }
}

impl fmt::Display for Q3Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.x, self.y)
    }
}

impl fmt::Debug for Q3Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

impl FromStr for Q3Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (x, y) = s.split_once(';').ok_or_else(|| Error::Parse {
            kind: "vector \"x;y\"",
            input: s.to_string(),
        })?;
        Ok(Q3Vector::new(x.parse()?, y.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> Q3Element {
        Q3Element::from_ints(a, b)
    }

    #[test]
    fn unit_times_conjugate_is_one() {
        assert_eq!(q(2, 1) * q(2, -1), Q3Element::one());
        assert_eq!(q(1, 1).square(), q(4, 2));
        assert_eq!(q(2, 1).inverse().unwrap(), q(2, -1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Q3Element::zero().inverse(), Err(Error::DivisionByZero));
        assert!(q(1, 1).checked_div(&Q3Element::zero()).is_err());
    }

    #[test]
    fn conjugation() {
        assert_eq!(q(4, 1).conjugate(), q(4, -1));
        assert_eq!(q(5, 0).conjugate(), q(5, 0));
        assert_eq!(q(2, -1).conjugate().conjugate(), q(2, -1));
    }

    #[test]
    fn signs() {
        assert_eq!(q(2, -1).signum(), 1);
        assert_eq!(q(-1, 1).signum(), 1);
        assert_eq!(q(0, 0).signum(), 0);
        assert_eq!(q(-2, 1).signum(), -1);
        assert_eq!(q(1, -1).signum(), -1);
        assert!(q(2, 1).is_totally_positive());
        assert!(!q(1, 1).is_totally_positive());
        assert!(q(13, 0).is_totally_positive());
    }

    #[test]
    fn float_enclosures() {
        let v = q(2, -1).to_interval(64);
        assert!((v.midpoint_f64() - 0.267_949_192_431_122_7).abs() < 1e-15);
        assert!(v.width() <= Rational::new(BigInt::one(), BigInt::one() << 64));
        assert!((q(8, -2).to_f64() - 4.535_898_384_862_245).abs() < 1e-12);
        let z = Q3Element::zero().to_interval(64);
        assert_eq!(z.lo, Rational::zero());
        assert_eq!(z.hi, Rational::zero());
    }

    #[test]
    fn text_format() {
        let cases = [
            (Q3Element::zero(), "0"),
            (q(5, 0), "5"),
            (q(0, 1), "1*sqrt3"),
            (q(0, -2), "-2*sqrt3"),
            (q(2, -1), "2-1*sqrt3"),
            (Q3Element::frac(-4, 16, 3), "-4/3+16/3*sqrt3"),
        ];
        for (v, s) in cases {
            assert_eq!(v.to_string(), s);
            assert_eq!(s.parse::<Q3Element>().unwrap(), v);
        }
        assert_eq!("13+0*sqrt3".parse::<Q3Element>().unwrap(), q(13, 0));
        assert_eq!("2-sqrt3".parse::<Q3Element>().unwrap(), q(2, -1));
        assert_eq!("-sqrt3".parse::<Q3Element>().unwrap(), q(0, -1));
        assert_eq!("1/2 + 3/4*sqrt3".parse::<Q3Element>().unwrap(), Q3Element::new(rat(1, 2), rat(3, 4)));
        assert!("abc".parse::<Q3Element>().is_err());
        assert!("1/0".parse::<Q3Element>().is_err());
        let v: Q3Vector = "1/7;-1/9".parse().unwrap();
        assert_eq!(v.x, Q3Element::new(rat(1, 7), Rational::zero()));
    }

    fn arb_q3() -> impl Strategy<Value = Q3Element> {
        (-1000i64..1000, 1i64..50, -1000i64..1000, 1i64..50)
            .prop_map(|(a, da, b, db)| Q3Element::new(rat(a, da), rat(b, db)))
    }

    proptest! {
        #[test]
        fn field_axioms(u in arb_q3(), v in arb_q3(), w in arb_q3()) {
            prop_assert_eq!((&u * &v) * &w, &u * (&v * &w));
            prop_assert_eq!(&u * (&v + &w), &u * &v + &u * &w);
            if !v.is_zero() {
                prop_assert_eq!((&u * &v).checked_div(&v).unwrap(), u.clone());
                prop_assert_eq!(&v * v.inverse().unwrap(), Q3Element::one());
            }
        }

        #[test]
        fn conjugation_is_a_ring_homomorphism(u in arb_q3(), v in arb_q3()) {
            prop_assert_eq!((&u * &v).conjugate(), u.conjugate() * v.conjugate());
            prop_assert_eq!((&u + &v).conjugate(), u.conjugate() + v.conjugate());
            prop_assert!((&u * u.conjugate()).is_rational());
        }

        #[test]
        fn text_round_trip(u in arb_q3()) {
            prop_assert_eq!(u.to_string().parse::<Q3Element>().unwrap(), u);
        }
    }

    #[test]
    fn exact_sign_matches_enclosure() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let a = rng.gen_range(-1_000_000i64..=1_000_000);
            let b = rng.gen_range(-1_000_000i64..=1_000_000);
            let u = q(a, b);
            let iv = u.to_interval(128);
            assert_eq!(iv.signum(), Some(u.signum()), "{u}");
        }
    }
}
