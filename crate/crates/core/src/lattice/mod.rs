//! Brute-force oracles: Hermite-normal-form enumeration of sublattices,
//! ideal filters, coincidence sublattices of the triangular lattice and
//! shell point enumeration.
//!
//! Nothing here uses the prime-power rules of [`crate::dirichlet`]; these
//! routines exist to check them.

mod hnf;
pub(crate) mod scan;

use std::collections::{BTreeMap, BTreeSet};

pub use hnf::{enumerate_sublattices, lattice_intersection, HnfMatrix};

use crate::error::{Error, Result};
use crate::rings::{gcd_e3, Plane, ZSqrt3, E3, Z12};

/// Default cap on the number of enumerated matrices.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Rings whose ideals are counted as multiplication-closed sublattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    /// Z[ξ₃] on the basis (1, ω).
    E3,
    /// Z[ξ₁₂] on the basis (1, ξ, ξ², ξ³).
    Z12,
    /// Z[√3] on the basis (1, √3).
    ZSqrt3,
}

impl Ring {
    pub fn rank(self) -> usize {
        match self {
            Ring::E3 | Ring::ZSqrt3 => 2,
            Ring::Z12 => 4,
        }
    }

    /// Multiplication by the ring generator on coordinates.
    fn mul_generator(self, v: &[i64]) -> Vec<i64> {
        match self {
            Ring::E3 => vec![-v[1], v[0] - v[1]],
            Ring::Z12 => Z12([v[0], v[1], v[2], v[3]]).mul_xi().0.to_vec(),
            Ring::ZSqrt3 => vec![3 * v[1], v[0]],
        }
    }
}

/// Number of index-`m` sublattices closed under multiplication by the ring
/// generator, i.e. the number of ideals of norm `m`.
pub fn count_ideal_sublattices(ring: Ring, m: u64) -> Result<usize> {
    let all = enumerate_sublattices(ring.rank(), m, DEFAULT_BUDGET)?;
    Ok(all
        .iter()
        .filter(|h| h.is_closed_under(|v| ring.mul_generator(v)))
        .count())
}

/// Coincidence sublattices `Γ ∩ RΓ` of the triangular lattice for the
/// rotations `R = z/z̄`, `z` primitive (`gcd(z, z̄)` a unit) with
/// `N(z) <= max_index`, grouped by index.
pub fn enumerate_csl_e3(max_index: u64) -> Result<BTreeMap<u64, BTreeSet<HnfMatrix>>> {
    if max_index > 10_000 {
        return Err(Error::Budget(format!(
            "CSL enumeration up to index {max_index} (limit 10000)"
        )));
    }
    let mut out: BTreeMap<u64, BTreeSet<HnfMatrix>> = BTreeMap::new();
    let bound = ((2 * max_index) as f64).sqrt().ceil() as i64 + 1;
    for a in -bound..=bound {
        for b in -bound..=bound {
            let z = E3::new(a, b);
            let n = z.norm();
            if n == 0 || n > max_index as i128 {
                continue;
            }
            if !gcd_e3(z, z.conjugate())?.is_unit() {
                continue;
            }
            let csl = coincidence_lattice(z)?;
            let idx = csl.index();
            if idx <= max_index {
                out.entry(idx).or_default().insert(csl);
            }
        }
    }
    Ok(out)
}

/// `Γ ∩ (z/z̄)Γ` by exact integer lattice intersection.
pub fn coincidence_lattice(z: E3) -> Result<HnfMatrix> {
    let n = z.norm();
    // (z/z̄)Γ = (1/N)·z²Γ, so Γ ∩ RΓ = (1/N)·(NΓ ∩ z²Γ).
    let z2 = z * z;
    let z2w = z2 * E3::OMEGA;
    let rotated = vec![vec![z2.a as i128, z2.b as i128], vec![z2w.a as i128, z2w.b as i128]];
    let scaled = vec![vec![n, 0], vec![0, n]];
    let inter = lattice_intersection(&scaled, &rotated)?;
    let gens: Vec<Vec<i128>> = inter
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| x as i128 / n).collect())
        .collect();
    if inter.rows().iter().flatten().any(|&x| x as i128 % n != 0) {
        return Err(Error::Internal("intersection not contained in NΓ".into()));
    }
    HnfMatrix::from_generators(&gens, 2)
}

/// Points of Z[ξ₁₂] on the circle `x·x̄ = r2`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellPointSet {
    pub r2: ZSqrt3,
    pub points: Vec<Z12>,
}

impl ShellPointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Points of Z[ξ₃] with `a² - ab + b² = r2`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E3ShellPointSet {
    pub r2: u64,
    pub points: Vec<E3>,
}

/// All `x ∈ Z[ξ₁₂]` with `x·x̄ = r2`.
///
/// Both `|x|² = r2` and `|x⋆|² = r2'` are fixed, which confines the four
/// coordinates to a finite box; the box is scanned and filtered exactly.
/// Returns an empty set when `r2` is not totally positive (except `r2 = 0`,
/// whose shell is the origin).
pub fn enumerate_shell(r2: ZSqrt3) -> ShellPointSet {
    if r2.is_zero() {
        return ShellPointSet {
            r2,
            points: vec![Z12::ZERO],
        };
    }
    if !r2.is_totally_positive() {
        return ShellPointSet {
            r2,
            points: Vec::new(),
        };
    }
    let rho = r2.to_f64().sqrt();
    let rho_star = r2.conjugate().to_f64().sqrt();
    let mut points = Vec::new();
    scan::scan_candidates(
        scan::Rect::centered(0.0, 0.0, rho),
        scan::Rect::centered(0.0, 0.0, rho_star),
        |x| {
            if x.relative_norm() == r2 {
                points.push(x);
            }
        },
    );
    points.sort();
    ShellPointSet { r2, points }
}

pub fn enumerate_shell_e3(r2: u64) -> E3ShellPointSet {
    // a² - ab + b² >= (a² + b²)/2
    let bound = ((2 * r2) as f64).sqrt().ceil() as i64 + 1;
    let mut points = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            let z = E3::new(a, b);
            if z.norm() == r2 as i128 {
                points.push(z);
            }
        }
    }
    points.sort();
    E3ShellPointSet { r2, points }
}

/// Totally positive canonical elements of Z[√3] with norm in `1..=max_norm`,
/// one per principal ideal, sorted by (norm, element).
pub fn totally_positive_classes(max_norm: u64) -> Vec<ZSqrt3> {
    // Canonical forms satisfy x ∈ [√m, (2+√3)√m), so a = (x + x')/2 and
    // |b| = |x - x'|/(2√3) stay below these bounds.
    let top = (2.0 + 3f64.sqrt()) * (max_norm as f64).sqrt() + 2.0;
    let amax = top.ceil() as i64;
    let bmax = (top / 3f64.sqrt()).ceil() as i64;
    let mut out = Vec::new();
    for a in 1..=amax {
        for b in -bmax..=bmax {
            let x = ZSqrt3::new(a, b);
            let n = x.norm();
            if n < 1 || n > max_norm as i128 || !x.is_totally_positive() {
                continue;
            }
            if x.canonical().map(|c| c == x).unwrap_or(false) {
                out.push(x);
            }
        }
    }
    out.sort_by_key(|x| (x.norm(), *x));
    out
}

/// Groups shell points into D₁₂ orbits; returns (representative, orbit
/// length) with the smallest element of each orbit as representative.
pub fn d12_orbits(points: &[Z12]) -> Vec<(Z12, usize)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &p in points {
        if seen.contains(&p) {
            continue;
        }
        let orbit = p.d12_orbit();
        let rep = orbit[0];
        seen.extend(orbit.iter().copied());
        out.push((rep, orbit.len()));
    }
    out.sort();
    out
}

/// Physical-space squared length of `x` as an exact Q(√3) value.
pub fn physical_norm_sq(x: Z12) -> crate::exact::Q3Element {
    x.embed(Plane::Physical).norm_sq()
}
