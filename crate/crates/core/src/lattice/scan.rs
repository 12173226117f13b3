//! Candidate box for module points with bounded physical and internal
//! coordinates.
//!
//! With doubled embedding coordinates `2X = (2c0+c2) + c1√3`,
//! `2X⋆ = (2c0+c2) - c1√3` (and likewise `Y` with `c1+2c3`, `c2`), the
//! differences `X - X⋆ = c1√3`, `Y - Y⋆ = c2√3` and the sums `X + X⋆`,
//! `Y + Y⋆` pin all four coordinates once both boxes are known. Floating
//! point only sizes the box, with a margin of one unit; callers filter
//! exactly.

use crate::rings::Z12;

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Rect {
    pub xlo: f64,
    pub xhi: f64,
    pub ylo: f64,
    pub yhi: f64,
}

impl Rect {
    pub fn centered(cx: f64, cy: f64, r: f64) -> Self {
        Rect {
            xlo: cx - r,
            xhi: cx + r,
            ylo: cy - r,
            yhi: cy + r,
        }
    }
}

fn int_range(lo: f64, hi: f64) -> std::ops::RangeInclusive<i64> {
    (lo.floor() as i64 - 1)..=(hi.ceil() as i64 + 1)
}

/// Calls `visit` on every module point whose physical image may lie in
/// `phys` and whose internal image may lie in `internal` (a superset).
pub(crate) fn scan_candidates(phys: Rect, internal: Rect, mut visit: impl FnMut(Z12)) {
    let c1_range = int_range(
        (phys.xlo - internal.xhi) / SQRT3,
        (phys.xhi - internal.xlo) / SQRT3,
    );
    let c2_range = int_range(
        (phys.ylo - internal.yhi) / SQRT3,
        (phys.yhi - internal.ylo) / SQRT3,
    );
    for c1 in c1_range {
        let d1 = c1 as f64 * SQRT3;
        // X + X⋆ = 2X - c1√3 = 2X⋆ + c1√3
        let s_lo = (2.0 * phys.xlo - d1).max(2.0 * internal.xlo + d1);
        let s_hi = (2.0 * phys.xhi - d1).min(2.0 * internal.xhi + d1);
        if s_lo > s_hi + 2.0 {
            continue;
        }
        for c2 in c2_range.clone() {
            let d2 = c2 as f64 * SQRT3;
            let t_lo = (2.0 * phys.ylo - d2).max(2.0 * internal.ylo + d2);
            let t_hi = (2.0 * phys.yhi - d2).min(2.0 * internal.yhi + d2);
            if t_lo > t_hi + 2.0 {
                continue;
            }
            for s in int_range(s_lo, s_hi) {
                // s = 2c0 + c2
                if (s - c2).rem_euclid(2) != 0 {
                    continue;
                }
                let c0 = (s - c2) / 2;
                for t in int_range(t_lo, t_hi) {
                    // t = c1 + 2c3
                    if (t - c1).rem_euclid(2) != 0 {
                        continue;
                    }
                    visit(Z12([c0, c1, c2, (t - c1) / 2]));
                }
            }
        }
    }
}
