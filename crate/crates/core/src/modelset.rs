//! Cut-and-project vertex sets of the shield tiling: points of Z[ξ₁₂]
//! whose star image falls in a shifted dodecagonal window.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, Q3Element, Q3Vector, Rational};
use crate::lattice::{enumerate_shell, scan};
use crate::rings::{HalfPoint, Plane, ZSqrt3, Z12};
use crate::window::{circumradius_sq, inradius, Location};

const SQRT3: f64 = 1.732_050_807_568_877_2;
/// Floating-point decisions are trusted only outside this band.
const GUARD: f64 = 1e-7;
const MAX_CANDIDATES: f64 = 1e8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundaryPolicy {
    /// Fail if any internal image lands on the window boundary.
    RejectSingular,
    Closed,
    Open,
}

impl FromStr for BoundaryPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "reject-singular" | "reject" => Ok(BoundaryPolicy::RejectSingular),
            "closed" => Ok(BoundaryPolicy::Closed),
            "open" => Ok(BoundaryPolicy::Open),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSetConfig {
    /// Window offset `u` in internal space.
    pub shift: Q3Vector,
    pub physical_radius: Rational,
    pub boundary_policy: BoundaryPolicy,
}

/// Generic shift used when none is given; `u = 0` is singular.
pub fn default_shift() -> Q3Vector {
    Q3Vector::new(
        Q3Element::from_rational(rat(1, 7)),
        Q3Element::from_rational(rat(1, 9)),
    )
}

impl ModelSetConfig {
    pub fn new(shift: Q3Vector, physical_radius: Rational, boundary_policy: BoundaryPolicy) -> Result<Self> {
        if !physical_radius.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "physical radius must be positive, got {physical_radius}"
            )));
        }
        Ok(ModelSetConfig {
            shift,
            physical_radius,
            boundary_policy,
        })
    }

    pub fn generic(radius: i64) -> Self {
        ModelSetConfig::new(default_shift(), rat_int(radius), BoundaryPolicy::RejectSingular)
            .expect("positive radius")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchPointSet {
    pub config: ModelSetConfig,
    /// Sorted, duplicate free.
    pub points: Vec<Z12>,
    /// Index pairs `i < j` at squared distance `2-√3`.
    pub edges: Vec<(usize, usize)>,
}

/// One half-plane `m·(2p) <= c` of the shifted window, with `m = 2n` the
/// doubled unit normal (entries in Z[√3]) and `c = 4R< + 2m·u`.
struct HalfPlane {
    m: (ZSqrt3, ZSqrt3),
    c: Q3Element,
    c_f64: f64,
}

struct Window {
    planes: Vec<HalfPlane>,
}

impl Window {
    fn shifted(u: &Q3Vector) -> Self {
        let normals = [
            (ZSqrt3::new(2, 0), ZSqrt3::new(0, 0)),
            (ZSqrt3::new(0, 1), ZSqrt3::new(1, 0)),
            (ZSqrt3::new(1, 0), ZSqrt3::new(0, 1)),
            (ZSqrt3::new(0, 0), ZSqrt3::new(2, 0)),
            (ZSqrt3::new(-1, 0), ZSqrt3::new(0, 1)),
            (ZSqrt3::new(0, -1), ZSqrt3::new(1, 0)),
        ];
        let four_rin = inradius().scale(&rat_int(4));
        let planes = normals
            .iter()
            .flat_map(|&(a, b)| [(a, b), (-a, -b)])
            .map(|m| {
                let mu = &m.0.to_q3() * &u.x + &m.1.to_q3() * &u.y;
                let c = &four_rin + &mu.scale(&rat_int(2));
                let c_f64 = c.to_f64();
                HalfPlane { m, c, c_f64 }
            })
            .collect();
        Window { planes }
    }

    fn locate(&self, p: HalfPoint) -> Location {
        let mut on_edge = false;
        for h in &self.planes {
            let lhs = h.m.0 * p.x + h.m.1 * p.y;
            let gap = h.c_f64 - lhs.to_f64();
            let sign = if gap > GUARD {
                1
            } else if gap < -GUARD {
                -1
            } else {
                (&h.c - &lhs.to_q3()).signum()
            };
            match sign {
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
}

/// `|x|² <= r²` for a doubled point, with `four_r2 = 4r²`.
fn within(p: HalfPoint, four_r2: &Rational, four_r2_f64: f64) -> bool {
    let n = p.norm_sq4();
    let gap = four_r2_f64 - n.to_f64();
    if gap.abs() > GUARD * (1.0 + four_r2_f64) {
        return gap > 0.0;
    }
    !(&Q3Element::from_rational(four_r2.clone()) - &n.to_q3()).is_negative()
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Every module point with `|x| <= radius` whose star image lies in `W+u`
/// under the configured boundary policy.
pub fn generate(config: &ModelSetConfig) -> Result<PatchPointSet> {
    let r = to_f64(&config.physical_radius);
    let (ux, uy) = config.shift.to_f64();
    let rmax = circumradius_sq().to_f64().sqrt();
    let box_c12 = 2.0 * (r + rmax) / SQRT3 + 3.0;
    let cells = box_c12 * box_c12 * (2.0 * rmax + 3.0).powi(2);
    if !(cells <= MAX_CANDIDATES) {
        return Err(Error::Budget(format!(
            "radius {} needs about {cells:.0} candidate cells (limit {MAX_CANDIDATES:.0})",
            config.physical_radius
        )));
    }
    let window = Window::shifted(&config.shift);
    let four_r2 = &config.physical_radius * &config.physical_radius * rat_int(4);
    let four_r2_f64 = to_f64(&four_r2);
    let mut points = Vec::new();
    let mut singular = None;
    scan::scan_candidates(
        scan::Rect::centered(0.0, 0.0, r),
        scan::Rect::centered(ux, uy, rmax),
        |x| {
            if singular.is_some() || !within(x.embed_half(Plane::Physical), &four_r2, four_r2_f64) {
                return;
            }
            match window.locate(x.embed_half(Plane::Internal)) {
                Location::Interior => points.push(x),
                Location::Boundary => match config.boundary_policy {
                    BoundaryPolicy::Closed => points.push(x),
                    BoundaryPolicy::Open => {}
                    BoundaryPolicy::RejectSingular => singular = Some(x),
                },
                Location::Exterior => {}
            }
        },
    );
    if let Some(x) = singular {
        return Err(Error::Singular {
            point: x.to_string(),
        });
    }
    points.sort();
    points.dedup();
    let edges = edges(&points);
    Ok(PatchPointSet {
        config: config.clone(),
        points,
        edges,
    })
}

/// Shortest possible edge: squared length `2-√3`.
pub fn edge_length_sq() -> ZSqrt3 {
    ZSqrt3::new(2, -1)
}

fn index_of(points: &[Z12]) -> HashMap<Z12, usize> {
    points.iter().enumerate().map(|(i, &p)| (p, i)).collect()
}

/// Index pairs of points at squared distance `2-√3`.
pub fn edges(points: &[Z12]) -> Vec<(usize, usize)> {
    let index = index_of(points);
    let steps = enumerate_shell(edge_length_sq()).points;
    let mut out = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        for &d in &steps {
            if let Some(&j) = index.get(&(p + d)) {
                if i < j {
                    out.push((i, j));
                }
            }
        }
    }
    out.sort();
    out
}

/// Smallest squared distance (as an element of Z[√3]) between two points of
/// the patch, among distances up to 1; `None` if no pair is that close.
///
/// A difference `d = y - x` has `d⋆` in `W - W`, inside the disk of radius
/// `2R>`, so the candidate differences form a finite list.
pub fn min_distance_sq(patch: &PatchPointSet) -> Option<ZSqrt3> {
    let reach = 2.0 * circumradius_sq().to_f64().sqrt();
    let mut diffs: Vec<(Q3Element, Z12)> = Vec::new();
    scan::scan_candidates(
        scan::Rect::centered(0.0, 0.0, 1.0),
        scan::Rect::centered(0.0, 0.0, reach),
        |d| {
            let n = d.relative_norm();
            if !d.is_zero() && n.to_q3() <= Q3Element::one() {
                diffs.push((n.to_q3(), d));
            }
        },
    );
    diffs.sort();
    let index = index_of(&patch.points);
    diffs
        .into_iter()
        .find(|(_, d)| patch.points.iter().any(|&p| index.contains_key(&(p + *d))))
        .map(|(_, d)| d.relative_norm())
}

/// Mean number of patch points at squared distance `r2` (exact, by relative
/// norm) from the centres `x` with `|x| <= radius - margin`.
pub fn empirical_averaged_shelling(patch: &PatchPointSet, r2: ZSqrt3, margin: &Rational) -> Result<Rational> {
    let m2 = Q3Element::from_rational(margin * margin);
    if margin.is_negative() || m2 < r2.to_q3() {
        return Err(Error::InvalidArgument(format!(
            "margin {margin} is smaller than the shell radius"
        )));
    }
    let radius = &patch.config.physical_radius;
    if radius <= &(margin * rat_int(2)) {
        return Err(Error::InvalidArgument(format!(
            "patch radius {radius} must exceed twice the margin {margin}"
        )));
    }
    let inner = radius - margin;
    let four_inner2 = &inner * &inner * rat_int(4);
    let four_inner2_f64 = to_f64(&four_inner2);
    let shell = enumerate_shell(r2).points;
    let index = index_of(&patch.points);
    let mut centres = 0i64;
    let mut hits = 0i64;
    for &x in &patch.points {
        if !within(x.embed_half(Plane::Physical), &four_inner2, four_inner2_f64) {
            continue;
        }
        centres += 1;
        hits += shell.iter().filter(|&&d| index.contains_key(&(x + d))).count() as i64;
    }
    if centres == 0 {
        return Err(Error::NoCentres(format!(
            "no points within {inner} of the origin"
        )));
    }
    Ok(rat(hits, centres))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Svg,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ExportFormat::Json),
            "svg" => Ok(ExportFormat::Svg),
            "csv" => Ok(ExportFormat::Csv),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonPoint {
    z: String,
    x: String,
    y: String,
    xf: f64,
    yf: f64,
}

#[derive(Serialize, Deserialize)]
struct JsonPatch {
    shift: String,
    radius: String,
    policy: BoundaryPolicy,
    points: Vec<JsonPoint>,
    edges: Vec<(usize, usize)>,
}

/// Writes the patch; output depends only on the patch.
pub fn export(patch: &PatchPointSet, format: ExportFormat, out: &mut dyn Write) -> Result<()> {
    let text = match format {
        ExportFormat::Json => to_json(patch),
        ExportFormat::Svg => to_svg(patch),
        ExportFormat::Csv => to_csv(patch),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

pub fn to_json(patch: &PatchPointSet) -> String {
    let doc = JsonPatch {
        shift: patch.config.shift.to_string(),
        radius: patch.config.physical_radius.to_string(),
        policy: patch.config.boundary_policy,
        points: patch
            .points
            .iter()
            .map(|&p| {
                let v = p.embed(Plane::Physical);
                let (xf, yf) = v.to_f64();
                JsonPoint {
                    z: p.to_string(),
                    x: v.x.to_string(),
                    y: v.y.to_string(),
                    xf,
                    yf,
                }
            })
            .collect(),
        edges: patch.edges.clone(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("patch serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<PatchPointSet> {
    let bad = |e: &dyn std::fmt::Display| Error::Parse {
        kind: "patch JSON",
        input: e.to_string(),
    };
    let doc: JsonPatch = serde_json::from_str(text).map_err(|e| bad(&e))?;
    let radius: Rational = doc.radius.parse().map_err(|_| bad(&doc.radius))?;
    let config = ModelSetConfig::new(doc.shift.parse()?, radius, doc.policy)?;
    let points = doc
        .points
        .iter()
        .map(|p| p.z.parse())
        .collect::<Result<Vec<Z12>>>()?;
    Ok(PatchPointSet {
        config,
        points,
        edges: doc.edges,
    })
}

pub fn to_csv(patch: &PatchPointSet) -> String {
    let mut s = String::from("index,c0,c1,c2,c3,x,y,xf,yf\n");
    for (i, &p) in patch.points.iter().enumerate() {
        let v = p.embed(Plane::Physical);
        let (xf, yf) = v.to_f64();
        let [c0, c1, c2, c3] = p.0;
        let _ = writeln!(s, "{i},{c0},{c1},{c2},{c3},{},{},{xf:.12},{yf:.12}", v.x, v.y);
    }
    s
}

pub fn to_svg(patch: &PatchPointSet) -> String {
    let r = to_f64(&patch.config.physical_radius) + 1.0;
    let coords: Vec<(f64, f64)> = patch
        .points
        .iter()
        .map(|p| {
            let (x, y) = p.embed(Plane::Physical).to_f64();
            (x, -y)
        })
        .collect();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.4} {:.4} {:.4} {:.4}">"#,
        -r,
        -r,
        2.0 * r,
        2.0 * r
    );
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="0.04">"#);
    for &(i, j) in &patch.edges {
        let (a, b) = (coords[i], coords[j]);
        let _ = writeln!(
            s,
            r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    let _ = writeln!(s, "</g>\n<g fill=\"black\">");
    for &(x, y) in &coords {
        let _ = writeln!(s, r#"<circle cx="{x:.6}" cy="{y:.6}" r="0.07"/>"#);
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::window::dodecagon_window;

    fn config(shift: Q3Vector, radius: i64, policy: BoundaryPolicy) -> ModelSetConfig {
        ModelSetConfig::new(shift, rat_int(radius), policy).unwrap()
    }

    /// Direct filter over a generous coordinate box with the polygon engine.
    fn brute_force(cfg: &ModelSetConfig, bound: i64) -> Vec<Z12> {
        let w = dodecagon_window();
        let r2 = Q3Element::from_rational(&cfg.physical_radius * &cfg.physical_radius);
        let mut out = Vec::new();
        for c0 in -bound..=bound {
            for c1 in -bound..=bound {
                for c2 in -bound..=bound {
                    for c3 in -bound..=bound {
                        let x = Z12([c0, c1, c2, c3]);
                        if x.embed(Plane::Physical).norm_sq() > r2 {
                            continue;
                        }
                        let p = &x.embed(Plane::Internal) - &cfg.shift;
                        let keep = match w.locate(&p) {
                            Location::Interior => true,
                            Location::Boundary => cfg.boundary_policy == BoundaryPolicy::Closed,
                            Location::Exterior => false,
                        };
                        if keep {
                            out.push(x);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force() {
        let cfg = config(default_shift(), 3, BoundaryPolicy::RejectSingular);
        let patch = generate(&cfg).unwrap();
        assert_eq!(patch.points, brute_force(&cfg, 6));
        let cfg = config(Q3Vector::zero(), 3, BoundaryPolicy::Closed);
        assert_eq!(generate(&cfg).unwrap().points, brute_force(&cfg, 6));
        let cfg = config(Q3Vector::zero(), 3, BoundaryPolicy::Open);
        let open = generate(&cfg).unwrap().points;
        assert_eq!(open, brute_force(&cfg, 6));
    }

    #[test]
    fn centred_window_is_singular() {
        let cfg = config(Q3Vector::zero(), 4, BoundaryPolicy::RejectSingular);
        assert!(matches!(generate(&cfg), Err(Error::Singular { .. })));
    }

    #[test]
    fn generic_patch_properties() {
        let patch = generate(&ModelSetConfig::generic(12)).unwrap();
        assert_eq!(min_distance_sq(&patch), Some(edge_length_sq()));
        assert!(!patch.edges.is_empty());
        let bigger = generate(&ModelSetConfig::generic(24)).unwrap();
        let ratio = bigger.points.len() as f64 / patch.points.len() as f64;
        assert!((ratio - 4.0).abs() < 0.4, "ratio {ratio}");
        // Larger patches extend smaller ones.
        let r2 = rat_int(144);
        for p in &bigger.points {
            let inside = p.embed(Plane::Physical).norm_sq() <= Q3Element::from_rational(r2.clone());
            assert_eq!(inside, patch.points.binary_search(p).is_ok());
        }
    }

    #[test]
    fn empirical_shelling_basics() {
        let patch = generate(&ModelSetConfig::generic(16)).unwrap();
        let empty = empirical_averaged_shelling(&patch, ZSqrt3::new(11, 0), &rat_int(4)).unwrap();
        assert_eq!(empty, rat_int(0));
        let one = empirical_averaged_shelling(&patch, ZSqrt3::ONE, &rat_int(2))
            .unwrap()
            .to_f64()
            .unwrap();
        assert!((one - 8.0).abs() < 0.6, "{one}");
        assert!(empirical_averaged_shelling(&patch, ZSqrt3::from_int(4), &rat_int(1)).is_err());
        assert!(empirical_averaged_shelling(&patch, ZSqrt3::ONE, &rat_int(8)).is_err());
    }

    #[test]
    fn exports() {
        let cfg = config(default_shift(), 3, BoundaryPolicy::RejectSingular);
        let patch = generate(&cfg).unwrap();
        let json = to_json(&patch);
        assert_eq!(from_json(&json).unwrap(), patch);
        assert_eq!(to_json(&generate(&cfg).unwrap()), json);
        let mut buf = Vec::new();
        export(&patch, ExportFormat::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), patch.points.len() + 1);

        let empty = PatchPointSet {
            config: cfg.clone(),
            points: vec![],
            edges: vec![],
        };
        assert_eq!(from_json(&to_json(&empty)).unwrap(), empty);
        assert!(to_svg(&empty).ends_with("</svg>\n"));

        let pair = vec![Z12::ZERO, Z12([1, -1, 0, 0])];
        let two = PatchPointSet {
            config: cfg,
            edges: edges(&pair),
            points: pair,
        };
        assert_eq!(two.edges, vec![(0, 1)]);
        assert_eq!(to_svg(&two).matches("<line").count(), 1);
    }

    #[test]
    fn policy_names() {
        assert_eq!("closed".parse::<BoundaryPolicy>().unwrap(), BoundaryPolicy::Closed);
        assert_eq!(
            "REJECT_SINGULAR".parse::<BoundaryPolicy>().unwrap(),
            BoundaryPolicy::RejectSingular
        );
        assert!("x".parse::<BoundaryPolicy>().is_err());
    }
}
