//! Exact convex polygons over Q(√3), the dodecagonal window of the shield
//! tiling and its covariogram.
//!
//! The window has edge length 1 and its edge midpoints on the coordinate
//! axes, so every vertex lies in Q(√3)². Shifts along an edge normal are
//! "type 1", shifts along a vertex direction are "type 2".

use crate::error::{Error, Result};
use crate::exact::{rat, Q3Element, Q3Vector};

/// A strictly convex polygon with vertices in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<Q3Vector>,
}

/// Position of a point relative to a closed convex polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

impl ConvexPolygon {
    /// Validates strict convexity and counterclockwise orientation.
    pub fn new(vertices: Vec<Q3Vector>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidArgument(format!("polygon with {n} vertices")));
        }
        for i in 0..n {
            let (a, b, c) = (&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
            if !(b - a).cross(&(c - b)).is_positive() {
                return Err(Error::InvalidArgument(
                    "vertices are not strictly convex in counterclockwise order".into(),
                ));
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    pub fn vertices(&self) -> &[Q3Vector] {
        &self.vertices
    }

    pub fn area(&self) -> Q3Element {
        let n = self.vertices.len();
        let twice: Q3Element = (0..n)
            .map(|i| self.vertices[i].cross(&self.vertices[(i + 1) % n]))
            .sum();
        twice.scale(&rat(1, 2))
    }

    pub fn translate(&self, v: &Q3Vector) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|p| p + v).collect(),
        }
    }

    pub fn locate(&self, p: &Q3Vector) -> Location {
        let n = self.vertices.len();
        let mut on_edge = false;
        for i in 0..n {
            let (a, b) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            match (b - a).cross(&(p - a)).signum() {
                -1 => return Location::Exterior,
                0 => on_edge = true,
                _ => {}
            }
        }
        if on_edge {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    /// Keeps the part left of the directed line `a → b`.
    fn clip(points: &[Q3Vector], a: &Q3Vector, b: &Q3Vector) -> Result<Vec<Q3Vector>> {
        let dir = b - a;
        let side: Vec<Q3Element> = points.iter().map(|p| dir.cross(&(p - a))).collect();
        let n = points.len();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (si, sj) = (&side[i], &side[j]);
            if !si.is_negative() {
                out.push(points[i].clone());
            }
            if (si.is_positive() && sj.is_negative()) || (si.is_negative() && sj.is_positive()) {
                let t = si.checked_div(&(si - sj))?;
                out.push(&points[i] + &(&points[j] - &points[i]).scale(&t));
            }
        }
        Ok(out)
    }
}

/// Exact intersection by half-plane clipping; `None` if the interiors are
/// disjoint.
pub fn convex_intersect(p: &ConvexPolygon, q: &ConvexPolygon) -> Result<Option<ConvexPolygon>> {
    let mut pts = p.vertices.clone();
    let m = q.vertices.len();
    for i in 0..m {
        pts = ConvexPolygon::clip(&pts, &q.vertices[i], &q.vertices[(i + 1) % m])?;
        if pts.len() < 3 {
            return Ok(None);
        }
    }
    Ok(simplify(pts).map(|vertices| ConvexPolygon { vertices }))
}

/// Drops repeated and collinear vertices left over from clipping.
fn simplify(mut pts: Vec<Q3Vector>) -> Option<Vec<Q3Vector>> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    loop {
        let n = pts.len();
        if n < 3 {
            return None;
        }
        let flat = (0..n).find(|&i| {
            let (a, b, c) = (&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]);
            (b - a).cross(&(c - b)).is_zero()
        });
        match flat {
            Some(i) => {
                pts.remove(i);
            }
            None => return Some(pts),
        }
    }
}

/// Rotation by 30° about the origin.
pub fn rotate30(v: &Q3Vector) -> Q3Vector {
    let c = Q3Element::frac(0, 1, 2);
    let s = Q3Element::frac(1, 0, 2);
    Q3Vector::new(&v.x * &c - &v.y * &s, &v.x * &s + &v.y * &c)
}

/// The 24 symmetries of the window (12 rotations, 12 reflections).
pub fn window_symmetries() -> Vec<Box<dyn Fn(&Q3Vector) -> Q3Vector>> {
    let mut out: Vec<Box<dyn Fn(&Q3Vector) -> Q3Vector>> = Vec::new();
    for k in 0..12 {
        for reflect in [false, true] {
            out.push(Box::new(move |v: &Q3Vector| {
                let mut w = if reflect {
                    Q3Vector::new(v.x.clone(), -&v.y)
                } else {
                    v.clone()
                };
                for _ in 0..k {
                    w = rotate30(&w);
                }
                w
            }));
        }
    }
    out
}

/// Inradius `(2+√3)/2`.
pub fn inradius() -> Q3Element {
    Q3Element::frac(2, 1, 2)
}

/// Square of the circumradius, `2+√3`.
pub fn circumradius_sq() -> Q3Element {
    Q3Element::from_ints(2, 1)
}

/// Regular dodecagon of edge length 1, vertices at 15° + 30°k.
pub fn dodecagon_window() -> ConvexPolygon {
    let mut v = Q3Vector::new(Q3Element::frac(2, 1, 2), Q3Element::frac(1, 0, 2));
    let mut vertices = Vec::with_capacity(12);
    for _ in 0..12 {
        let next = rotate30(&v);
        vertices.push(v);
        v = next;
    }
    ConvexPolygon { vertices }
}

/// Relative overlap `area(W ∩ (W+v)) / area(W)` of the window.
pub fn covariogram(v: &Q3Vector) -> Result<Q3Element> {
    covariogram_of(&dodecagon_window(), v)
}

pub fn covariogram_of(w: &ConvexPolygon, v: &Q3Vector) -> Result<Q3Element> {
    match convex_intersect(&w.translate(v), w)? {
        None => Ok(Q3Element::zero()),
        Some(p) => p.area().checked_div(&w.area()),
    }
}

fn quad(c0: Q3Element, c1: Q3Element, c2: Q3Element, s: &Q3Element) -> Q3Element {
    c0 + &c1 * s + &c2 * &s.square()
}

fn check_nonnegative(s: &Q3Element) -> Result<()> {
    if s.is_negative() {
        return Err(Error::NegativeArgument(s.to_string()));
    }
    Ok(())
}

/// Closed-form covariogram along an edge normal, at shift length `s`.
pub fn h1(s: &Q3Element) -> Result<Q3Element> {
    check_nonnegative(s)?;
    let one = Q3Element::one();
    let b1 = Q3Element::from_ints(1, 1); // 2R< - 1
    let b2 = Q3Element::from_ints(2, 1); // 2R<
    Ok(if s < &one {
        one - s.scale(&rat(1, 3))
    } else if s < &b1 {
        quad(
            Q3Element::frac(15, 2, 18),
            Q3Element::frac(0, -2, 9),
            Q3Element::frac(-3, 2, 18),
            s,
        )
    } else if s < &b2 {
        quad(
            Q3Element::frac(5, 2, 6),
            Q3Element::frac(-2, 0, 3),
            Q3Element::frac(-3, 2, 6),
            s,
        )
    } else {
        Q3Element::zero()
    })
}

/// Closed-form covariogram along a vertex direction at shift length
/// `s = √2·w`, evaluated exactly in terms of `w`.
pub fn h2_exact(w: &Q3Element) -> Result<Q3Element> {
    check_nonnegative(w)?;
    // Branch points R>, R>+√2, 2R> divided by √2.
    let b1 = Q3Element::frac(1, 1, 2);
    let b2 = Q3Element::frac(3, 1, 2);
    let b3 = Q3Element::from_ints(1, 1);
    // With s = √2·w: √2·s = 2w and s² = 2w².
    Ok(if w < &b1 {
        quad(
            Q3Element::one(),
            Q3Element::frac(2, -2, 3),
            Q3Element::frac(7, -4, 3),
            w,
        )
    } else if w < &b2 {
        quad(
            Q3Element::frac(5, 1, 6),
            Q3Element::frac(-2, 0, 3),
            Q3Element::frac(2, -1, 3),
            w,
        )
    } else if w < &b3 {
        quad(
            Q3Element::frac(4, 2, 3),
            Q3Element::frac(-2, -2, 3),
            Q3Element::frac(1, 0, 3),
            w,
        )
    } else {
        Q3Element::zero()
    })
}

const SQRT2: f64 = std::f64::consts::SQRT_2;
const SQRT3: f64 = 1.732_050_807_568_877_2;

pub fn h1_f64(s: f64) -> Result<f64> {
    if s < 0.0 {
        return Err(Error::NegativeArgument(s.to_string()));
    }
    Ok(if s < 1.0 {
        1.0 - s / 3.0
    } else if s < 1.0 + SQRT3 {
        (15.0 + 2.0 * SQRT3) / 18.0 - 2.0 * SQRT3 / 9.0 * s + (2.0 * SQRT3 - 3.0) / 18.0 * s * s
    } else if s < 2.0 + SQRT3 {
        (5.0 + 2.0 * SQRT3) / 6.0 - 2.0 / 3.0 * s + (2.0 * SQRT3 - 3.0) / 6.0 * s * s
    } else {
        0.0
    })
}

pub fn h2_f64(s: f64) -> Result<f64> {
    if s < 0.0 {
        return Err(Error::NegativeArgument(s.to_string()));
    }
    let r = (2.0 + SQRT3).sqrt();
    Ok(if s < r {
        1.0 - SQRT2 * (SQRT3 - 1.0) / 3.0 * s + (7.0 - 4.0 * SQRT3) / 6.0 * s * s
    } else if s < r + SQRT2 {
        (5.0 + SQRT3) / 6.0 - SQRT2 / 3.0 * s + (2.0 - SQRT3) / 6.0 * s * s
    } else if s < 2.0 * r {
        (4.0 + 2.0 * SQRT3) / 3.0 - SQRT2 * (1.0 + SQRT3) / 3.0 * s + s * s / 6.0
    } else {
        0.0
    })
}

/// Radius of the disk with the window's area.
pub fn euclid_hat_radius() -> f64 {
    (3.0 / std::f64::consts::PI).sqrt() * (2.0 + SQRT3).sqrt()
}

/// Covariogram of the equal-area disk.
pub fn euclid_hat(s: f64) -> Result<f64> {
    if s < 0.0 {
        return Err(Error::NegativeArgument(s.to_string()));
    }
    let r = euclid_hat_radius();
    let x = s / (2.0 * r);
    if x >= 1.0 {
        return Ok(0.0);
    }
    let pi = std::f64::consts::PI;
    Ok(2.0 / pi * x.acos() - s / (pi * r) * (1.0 - x * x).sqrt())
}

/// Result of comparing the Euclid's hat approximation with the exact
/// covariogram.
#[derive(Clone, Debug)]
pub struct HatSweep {
    pub samples: usize,
    pub max_deviation: f64,
    pub worst_shift: (f64, f64),
}

/// Exact covariogram against Euclid's hat on `rays` directions spread over
/// one fundamental sector (0° to 15°) and `steps` lengths up to `2R>`.
/// Directions are rational approximations, which is harmless because both
/// sides are evaluated at the same exact shift.
pub fn euclid_hat_sweep(rays: usize, steps: usize) -> Result<HatSweep> {
    let window = dodecagon_window();
    let mut best = HatSweep {
        samples: 0,
        max_deviation: 0.0,
        worst_shift: (0.0, 0.0),
    };
    let reach = 2.0 * (2.0 + SQRT3).sqrt();
    for i in 0..rays {
        let theta = (15f64).to_radians() * i as f64 / (rays.max(2) - 1) as f64;
        for j in 0..=steps {
            let s = reach * j as f64 / steps as f64;
            let x = approx(s * theta.cos());
            let y = approx(s * theta.sin());
            let v = Q3Vector::new(x, y);
            let exact = covariogram_of(&window, &v)?.to_f64();
            let (vx, vy) = v.to_f64();
            let hat = euclid_hat((vx * vx + vy * vy).sqrt())?;
            let dev = (exact - hat).abs();
            best.samples += 1;
            if dev > best.max_deviation {
                best.max_deviation = dev;
                best.worst_shift = (vx, vy);
            }
        }
    }
    Ok(best)
}

fn approx(x: f64) -> Q3Element {
    let d = 1_000_000i64;
    Q3Element::frac((x * d as f64).round() as i64, 0, d)
}
