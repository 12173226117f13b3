//! Central shelling of Z[ξ₁₂] from the Z[√3] factorization of r², the
//! norm-only shortcut with its validity test, and exact averaged shelling
//! for the shield tiling.

use serde::Serialize;

use crate::dirichlet::{a6, f_count};
use crate::error::{Error, Result};
use crate::exact::Q3Element;
use crate::lattice::{d12_orbits, enumerate_shell, scan};
use crate::rings::{factor_zsqrt3, Plane, PrimeClass, ZSqrt3, ZSqrt3Factorization, Z12};
use crate::window::{covariogram_of, dodecagon_window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ShellMethod {
    PrimeForm,
    NormHeuristic,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingResult {
    pub r2: ZSqrt3,
    pub count: u64,
    pub method: ShellMethod,
    /// Absent for `r2 = 0` and for the oracle.
    pub factorization: Option<ZSqrt3Factorization>,
}

/// Number of `x ∈ Z[ξ₁₂]` with `x·x̄ = r2`.
///
/// `r2 = 0` gives 1 (the origin). Otherwise the shell is empty unless `r2`
/// is totally positive and every prime that stays prime in Z[ξ₁₂] (the
/// inert ones above `p ≡ 11 (12)` and the ramified `1+√3`, `√3`) occurs to
/// an even power; each split prime with exponent `t` contributes `t+1`.
pub fn central_shell_count(r2: ZSqrt3) -> u64 {
    central_shell(r2).count
}

pub fn central_shell(r2: ZSqrt3) -> ShellingResult {
    let mut res = ShellingResult {
        r2,
        count: 0,
        method: ShellMethod::PrimeForm,
        factorization: None,
    };
    if r2.is_zero() {
        res.count = 1;
        return res;
    }
    if !r2.is_totally_positive() {
        return res;
    }
    let fac = factor_zsqrt3(r2).expect("nonzero element factors");
    let mut count = 12u64;
    for f in &fac.factors {
        if f.class.splits() {
            count *= f.exponent as u64 + 1;
        } else if f.exponent % 2 == 1 {
            count = 0;
        }
    }
    res.count = count;
    res.factorization = Some(fac);
    res
}

/// Number of points of the triangular lattice at squared distance `m`.
pub fn central_shell_e3(m: u64) -> u64 {
    6 * a6(m)
}

/// First rational prime `p ≡ 1 (12)` whose two Z[√3] primes both divide
/// `r2`, if any.
pub fn norm_heuristic_obstruction(r2: ZSqrt3) -> Option<u64> {
    let fac = factor_zsqrt3(r2).ok()?;
    let mut seen: Vec<u64> = Vec::new();
    for f in fac.factors.iter().filter(|f| f.p % 12 == 1) {
        if seen.contains(&f.p) {
            return Some(f.p);
        }
        seen.push(f.p);
    }
    None
}

/// Whether `12·f(N(r2))` gives the right shell count: no `p ≡ 1 (12)` may
/// have both of its primes dividing `r2`. False for `r2 = 0`.
pub fn norm_heuristic_valid(r2: ZSqrt3) -> bool {
    !r2.is_zero() && norm_heuristic_obstruction(r2).is_none()
}

/// Shell count from the norm alone, `12·f(N(r2))`.
///
/// Only meaningful for non-empty shells: `r2 = p̃·p̃′` with `p ≡ 11 (12)` has
/// an empty shell although `f(p²) = 1`, so empty shells are rejected.
pub fn central_shell_via_norm(r2: ZSqrt3) -> Result<u64> {
    if r2.is_zero() {
        return Err(Error::ZeroInput("central_shell_via_norm"));
    }
    if let Some(p) = norm_heuristic_obstruction(r2) {
        return Err(Error::InvalidNormHeuristic(p));
    }
    if central_shell_count(r2) == 0 {
        return Err(Error::InvalidArgument(format!("shell of {r2} is empty")));
    }
    Ok(12 * f_count(r2.norm() as u64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AveragedShellingRow {
    pub r2: ZSqrt3,
    /// One point per D₁₂ orbit on the shell with the orbit length.
    pub representatives: Vec<(Z12, usize)>,
    pub central_count: usize,
    pub value: Q3Element,
}

impl AveragedShellingRow {
    pub fn norm(&self) -> i128 {
        self.r2.norm()
    }
}

/// Mean number of shield-tiling vertices at squared distance `r2` from a
/// vertex: the sum of the window covariogram over the star images of the
/// shell. The per-orbit sum is evaluated as well and must agree.
pub fn averaged_shelling(r2: ZSqrt3) -> Result<AveragedShellingRow> {
    if r2.is_zero() {
        return Err(Error::ZeroInput("averaged_shelling"));
    }
    let shell = enumerate_shell(r2);
    let window = dodecagon_window();
    let cov = |z: Z12| covariogram_of(&window, &z.embed(Plane::Internal));
    let mut value = Q3Element::zero();
    for &z in &shell.points {
        value += &cov(z)?;
    }
    let representatives = d12_orbits(&shell.points);
    let mut by_orbit = Q3Element::zero();
    for &(rep, len) in &representatives {
        by_orbit += &cov(rep)?.scale(&crate::exact::rat_int(len as i64));
    }
    if by_orbit != value {
        return Err(Error::Internal(format!(
            "orbit sum {by_orbit} differs from full sum {value} at r2 = {r2}"
        )));
    }
    Ok(AveragedShellingRow {
        r2,
        central_count: shell.points.len(),
        representatives,
        value,
    })
}

/// Every squared distance `0 < r² <= max_r2` that occurs between shield
/// tiling vertices with positive frequency, with its averaged shelling row,
/// ordered by distance.
///
/// A difference `d` with a positive covariogram has `d⋆` inside `W - W`,
/// the disk of radius `2R>`, so the candidates are finite.
pub fn averaged_shelling_table(max_r2: i64) -> Result<Vec<AveragedShellingRow>> {
    if max_r2 <= 0 {
        return Err(Error::InvalidArgument(format!("max_r2 = {max_r2}")));
    }
    let bound = Q3Element::from_int(max_r2);
    let reach = 2.0 * crate::window::circumradius_sq().to_f64().sqrt();
    let mut radii = std::collections::BTreeSet::new();
    scan::scan_candidates(
        scan::Rect::centered(0.0, 0.0, (max_r2 as f64).sqrt()),
        scan::Rect::centered(0.0, 0.0, reach),
        |d| {
            let r2 = d.relative_norm();
            if !d.is_zero() && r2.to_q3() <= bound {
                radii.insert(r2);
            }
        },
    );
    let mut rows = Vec::new();
    for r2 in radii {
        let row = averaged_shelling(r2)?;
        if row.value.is_positive() {
            rows.push(row);
        }
    }
    rows.sort_by_key(|a| a.r2.to_q3());
    Ok(rows)
}

/// Whether both coordinates of `x` have denominators dividing 3.
pub fn in_third_zsqrt3(x: &Q3Element) -> bool {
    x.has_denominator_dividing(3)
}

/// Classification of the prime factors for display.
pub fn class_name(c: PrimeClass) -> &'static str {
    match c {
        PrimeClass::SplitsInZ12 => "SPLITS_IN_Z12",
        PrimeClass::InertInZ12 => "INERT_IN_Z12",
        PrimeClass::Ramified2 => "RAMIFIED_2",
        PrimeClass::Ramified3 => "RAMIFIED_3",
    }
}
