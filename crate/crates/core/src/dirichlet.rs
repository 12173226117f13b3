//! Multiplicative arithmetic functions and Dirichlet series coefficient
//! tables.
//!
//! Every counting function is defined by its value at prime powers `pᵗ`,
//! read off the corresponding Euler product. The zeta-quotient identities
//! are then checked independently by Dirichlet convolution of tables.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rings::factor_rational;

/// Value of a multiplicative function at `pᵗ`, `t >= 1`.
pub type PrimePowerRule = fn(p: u64, t: u32) -> u64;

#[derive(Clone, Copy)]
pub struct MultiplicativeFunction {
    pub name: &'static str,
    pub rule: PrimePowerRule,
}

impl std::fmt::Debug for MultiplicativeFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MultiplicativeFunction({})", self.name)
    }
}

impl MultiplicativeFunction {
    pub fn value(&self, m: u64) -> u64 {
        assert!(m >= 1, "arithmetic functions are defined for m >= 1");
        factor_rational(m)
            .into_iter()
            .map(|(p, t)| (self.rule)(p, t))
            .product()
    }

    pub fn table(&self, max: usize) -> CoefficientTable {
        CoefficientTable::from_fn(self.name, max, |m| BigInt::from(self.value(m as u64)))
    }
}

fn even(t: u32) -> bool {
    t.is_multiple_of(2)
}

fn a6_rule(p: u64, t: u32) -> u64 {
    match p % 3 {
        0 => 1,
        1 => t as u64 + 1,
        _ => u64::from(even(t)),
    }
}

fn a12_rule(p: u64, t: u32) -> u64 {
    let t = t as u64;
    match p {
        2 | 3 => u64::from(t.is_multiple_of(2)),
        _ if p % 12 == 1 => (t + 1) * (t + 2) * (t + 3) / 6,
        _ if t.is_multiple_of(2) => t / 2 + 1,
        _ => 0,
    }
}

fn coincidence_e3_rule(p: u64, _t: u32) -> u64 {
    if p % 3 == 1 {
        2
    } else {
        0
    }
}

fn coincidence_z12_rule(p: u64, t: u32) -> u64 {
    match p % 12 {
        1 => 4 * t as u64,
        5 | 7 if even(t) => 2,
        _ => 0,
    }
}

fn zeta_q_sqrt3_rule(p: u64, t: u32) -> u64 {
    match p {
        2 | 3 => 1,
        _ => match p % 12 {
            1 | 11 => t as u64 + 1,
            _ => u64::from(even(t)),
        },
    }
}

fn f_rule(p: u64, t: u32) -> u64 {
    match p {
        2 | 3 => u64::from(even(t)),
        _ => match p % 12 {
            1 => t as u64 + 1,
            11 => u64::from(even(t)),
            _ if even(t) => t as u64 / 2 + 1,
            _ => 0,
        },
    }
}

/// Similarity sublattices of the triangular lattice: coefficients of the
/// Dedekind zeta function of Q(ξ₃).
pub const A6: MultiplicativeFunction = MultiplicativeFunction {
    name: "a6",
    rule: a6_rule,
};

/// Similarity submodules of Z[ξ₁₂]: coefficients of the Dedekind zeta
/// function of Q(ξ₁₂).
pub const A12: MultiplicativeFunction = MultiplicativeFunction {
    name: "a12",
    rule: a12_rule,
};

/// Coincidence sublattices of Z[ξ₃].
pub const COINCIDENCE_E3: MultiplicativeFunction = MultiplicativeFunction {
    name: "coincidence_e3",
    rule: coincidence_e3_rule,
};

/// Coincidence submodules of Z[ξ₁₂].
pub const COINCIDENCE_Z12: MultiplicativeFunction = MultiplicativeFunction {
    name: "coincidence_z12",
    rule: coincidence_z12_rule,
};

/// Ideals of Z[√3] by norm: coefficients of the Dedekind zeta function of
/// Q(√3).
pub const ZETA_Q_SQRT3: MultiplicativeFunction = MultiplicativeFunction {
    name: "zeta_q_sqrt3",
    rule: zeta_q_sqrt3_rule,
};

/// Central shelling of Z[ξ₁₂] divided by 12, as a function of the norm only.
pub const F_COUNT: MultiplicativeFunction = MultiplicativeFunction {
    name: "f",
    rule: f_rule,
};

pub fn a6(m: u64) -> u64 {
    A6.value(m)
}

pub fn a12(m: u64) -> u64 {
    A12.value(m)
}

pub fn coincidence_e3(m: u64) -> u64 {
    COINCIDENCE_E3.value(m)
}

pub fn coincidence_z12(m: u64) -> u64 {
    COINCIDENCE_Z12.value(m)
}

pub fn zeta_q_sqrt3_coeff(m: u64) -> u64 {
    ZETA_Q_SQRT3.value(m)
}

pub fn f_count(m: u64) -> u64 {
    F_COUNT.value(m)
}

pub fn by_name(name: &str) -> Option<MultiplicativeFunction> {
    [A6, A12, COINCIDENCE_E3, COINCIDENCE_Z12, ZETA_Q_SQRT3, F_COUNT]
        .into_iter()
        .find(|f| f.name == name)
}

fn divisors(m: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factor_rational(m) {
        let n = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..n {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Number of index-`m` subgroups of Zⁿ, by iterated Dirichlet convolution
/// of the coefficients of ζ(s), ζ(s-1), …, ζ(s-n+1).
pub fn ell(n: u32, m: u64) -> BigInt {
    assert!(n >= 1 && m >= 1);
    if n == 1 {
        return BigInt::one();
    }
    divisors(m)
        .into_iter()
        .map(|d| BigInt::from(d).pow(n - 1) * ell(n - 1, m / d))
        .sum()
}

/// Dirichlet series coefficients `values[m-1]` for `m = 1..=max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    pub name: String,
    values: Vec<BigInt>,
}

impl CoefficientTable {
    pub fn new(name: impl Into<String>, values: Vec<BigInt>) -> Self {
        CoefficientTable {
            name: name.into(),
            values,
        }
    }

    pub fn from_fn(name: impl Into<String>, max: usize, f: impl Fn(usize) -> BigInt) -> Self {
        CoefficientTable::new(name, (1..=max).map(f).collect())
    }

    /// Coefficients of ζ(s - k): `m ↦ mᵏ`.
    pub fn zeta_shifted(k: u32, max: usize) -> Self {
        CoefficientTable::from_fn(format!("zeta(s-{k})"), max, |m| BigInt::from(m).pow(k))
    }

    /// Dirichlet unit `ε = (1, 0, 0, …)`.
    pub fn unit(max: usize) -> Self {
        CoefficientTable::from_fn("unit", max, |m| BigInt::from(u8::from(m == 1)))
    }

    /// The series with `s` replaced by `k·s`: coefficient at `nᵏ` moves to
    /// index `nᵏ`, all others vanish.
    pub fn dilate(&self, k: u32, max: usize) -> Self {
        let mut values = vec![BigInt::zero(); max];
        for (i, v) in self.values.iter().enumerate() {
            let target = ((i + 1) as u128).pow(k);
            if target > max as u128 {
                break;
            }
            values[target as usize - 1] = v.clone();
        }
        CoefficientTable::new(format!("{}({k}s)", self.name), values)
    }

    pub fn max_index(&self) -> usize {
        self.values.len()
    }

    /// Coefficient at index `m >= 1`.
    pub fn get(&self, m: usize) -> &BigInt {
        &self.values[m - 1]
    }

    pub fn set(&mut self, m: usize, v: BigInt) {
        self.values[m - 1] = v;
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,value\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{},{}", i + 1, v);
        }
        out
    }

    /// `{"name": …, "M": …, "values": [...]}` with integers written in full.
    pub fn to_json(&self) -> String {
        let values: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        format!(
            "{{\"name\":{},\"M\":{},\"values\":[{}]}}",
            serde_json::Value::String(self.name.clone()),
            self.values.len(),
            values.join(",")
        )
    }
}

/// `(a ∗ b)[m] = Σ_{d|m} a[d]·b[m/d]`.
pub fn dirichlet_convolve(a: &CoefficientTable, b: &CoefficientTable) -> Result<CoefficientTable> {
    let n = a.max_index();
    if n != b.max_index() {
        return Err(Error::LengthMismatch(n, b.max_index()));
    }
    let mut out = vec![BigInt::zero(); n];
    for d in 1..=n {
        let ad = a.get(d);
        if ad.is_zero() {
            continue;
        }
        for k in 1..=n / d {
            let bk = b.get(k);
            if !bk.is_zero() {
                out[d * k - 1] += ad * bk;
            }
        }
    }
    Ok(CoefficientTable::new(format!("{}*{}", a.name, b.name), out))
}

/// ℓₙ(m) for `m = 1..=max`, as the convolution ζ(s)∗ζ(s-1)∗…∗ζ(s-n+1).
pub fn ell_table(n: u32, max: usize) -> CoefficientTable {
    let mut acc = CoefficientTable::unit(max);
    for k in 0..n {
        acc = dirichlet_convolve(&acc, &CoefficientTable::zeta_shifted(k, max))
            .expect("equal lengths");
    }
    acc.name = format!("ell{n}");
    acc
}

/// Named zeta-quotient identity between coincidence counts and Dedekind
/// zeta functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesIdentity {
    /// `Φ_{Z[ξ₃]} · ζ(2s) · (1 + 3⁻ˢ) = ζ_{Q(ξ₃)}`.
    Phi3,
    /// `Φ_{Z[ξ₁₂]} · ζ_{Q(√3)}(2s) = ζ_{Q(ξ₁₂)}`.
    Phi12,
}

impl SeriesIdentity {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "phi3" => Ok(SeriesIdentity::Phi3),
            "phi12" => Ok(SeriesIdentity::Phi12),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    /// Coincidence table the identity starts from.
    pub fn coincidence_table(self, max: usize) -> CoefficientTable {
        match self {
            SeriesIdentity::Phi3 => COINCIDENCE_E3.table(max),
            SeriesIdentity::Phi12 => COINCIDENCE_Z12.table(max),
        }
    }

    /// Checks the identity coefficientwise up to the table length, starting
    /// from the given coincidence coefficients.
    pub fn holds_for(self, phi: &CoefficientTable) -> bool {
        let max = phi.max_index();
        let (lhs, rhs) = match self {
            SeriesIdentity::Phi3 => {
                let zeta2 = CoefficientTable::from_fn("zeta", max, |_| BigInt::one()).dilate(2, max);
                let mut euler3 = CoefficientTable::unit(max);
                if max >= 3 {
                    euler3.set(3, BigInt::one());
                }
                let lhs = dirichlet_convolve(phi, &zeta2)
                    .and_then(|t| dirichlet_convolve(&t, &euler3));
                (lhs, A6.table(max))
            }
            SeriesIdentity::Phi12 => {
                let zeta2 = ZETA_Q_SQRT3.table(max).dilate(2, max);
                (dirichlet_convolve(phi, &zeta2), A12.table(max))
            }
        };
        lhs.map(|l| l.values == rhs.values).unwrap_or(false)
    }
}

pub fn series_identity_check(name: &str, max: usize) -> Result<bool> {
    let id = SeriesIdentity::from_name(name)?;
    Ok(id.holds_for(&id.coincidence_table(max)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ell_examples() {
        assert_eq!(ell(2, 12), BigInt::from(28));
        assert_eq!(ell(4, 8), BigInt::from(1395));
        for n in 1..6 {
            assert_eq!(ell(n, 1), BigInt::one());
        }
        let t = ell_table(4, 11);
        assert_eq!(t.values(), &big(&[1, 15, 40, 155, 156, 600, 400, 1395, 1210, 2340, 1464])[..]);
    }

    #[test]
    fn ell2_is_the_divisor_sum() {
        let t = ell_table(2, 10_000);
        for m in 1..=10_000u64 {
            let sigma: u64 = divisors(m).iter().sum();
            assert_eq!(t.get(m as usize), &BigInt::from(sigma), "m = {m}");
        }
        assert_eq!(ell(2, 9_240), BigInt::from(divisors(9_240).iter().sum::<u64>()));
    }

    #[test]
    fn similarity_examples() {
        assert_eq!((a6(7), a6(2), a6(21)), (2, 0, 2));
        assert_eq!((a12(13), a12(25), a12(49)), (4, 2, 2));
    }

    #[test]
    fn coincidence_examples() {
        assert_eq!((coincidence_e3(7), coincidence_e3(49), coincidence_e3(5)), (2, 2, 0));
        assert_eq!(
            (coincidence_z12(13), coincidence_z12(25), coincidence_z12(169)),
            (4, 2, 8)
        );
    }

    #[test]
    fn zeta_q_sqrt3_examples() {
        assert_eq!(zeta_q_sqrt3_coeff(11), 2);
        assert_eq!(zeta_q_sqrt3_coeff(5), 0);
        // Norm-12 ideals of Z[√3]: only (2√3).
        assert_eq!(zeta_q_sqrt3_coeff(12), 1);
    }

    #[test]
    fn f_examples() {
        assert_eq!((f_count(169), f_count(13), f_count(52)), (3, 2, 2));
    }

    #[test]
    fn convolution() {
        let n = 12;
        let zeta = CoefficientTable::zeta_shifted(0, n);
        let id = CoefficientTable::zeta_shifted(1, n);
        assert_eq!(dirichlet_convolve(&zeta, &id).unwrap().get(6), &BigInt::from(12));
        let eps = CoefficientTable::unit(n);
        assert_eq!(dirichlet_convolve(&eps, &id).unwrap().values(), id.values());
        assert_eq!(dirichlet_convolve(&zeta, &zeta).unwrap().get(4), &BigInt::from(3));
        let short = CoefficientTable::unit(5);
        assert_eq!(dirichlet_convolve(&short, &zeta), Err(Error::LengthMismatch(5, 12)));
    }

    #[test]
    fn identities() {
        assert!(series_identity_check("phi3", 200).unwrap());
        assert!(series_identity_check("phi12", 200).unwrap());
        for id in [SeriesIdentity::Phi3, SeriesIdentity::Phi12] {
            let mut t = id.coincidence_table(200);
            let v = t.get(91).clone();
            t.set(91, v + 1);
            assert!(!id.holds_for(&t));
        }
        assert!(series_identity_check("nope", 10).is_err());
    }

    #[test]
    fn exports() {
        let t = A6.table(4);
        assert_eq!(t.to_csv(), "m,value\n1,1\n2,0\n3,1\n4,1\n");
        assert_eq!(t.to_json(), r#"{"name":"a6","M":4,"values":[1,0,1,1]}"#);
        assert!(serde_json::from_str::<serde_json::Value>(&ell_table(4, 50).to_json()).is_ok());
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    proptest! {
        #[test]
        fn all_functions_are_multiplicative(m in 1u64..10_000, n in 1u64..10_000) {
            prop_assume!(gcd(m, n) == 1);
            for f in [A6, A12, COINCIDENCE_E3, COINCIDENCE_Z12, ZETA_Q_SQRT3, F_COUNT] {
                prop_assert_eq!(f.value(m * n), f.value(m) * f.value(n), "{}", f.name);
                prop_assert_eq!(f.value(1), 1);
            }
            prop_assert_eq!(ell(3, m * n), ell(3, m) * ell(3, n));
        }
    }
}
