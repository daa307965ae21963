//! Geometric primitives: angles, alpha-coverage predicates, the two-disk
//! characterization, double-wedges, and GDOP diagnostics.
//!
//! All predicates use closed comparisons with tolerance [`ANGLE_EPS`] /
//! [`LEN_EPS`]: boundary configurations count as covered. Coverage decisions
//! avoid inverse trigonometry (squared-cosine comparison); [`angle_at`] is
//! kept for reporting.

mod hull;
mod polygon;

pub use hull::convex_hull_ccw;
pub use polygon::PolygonEnv;

use crate::{Error, Result, ANGLE_EPS, LEN_EPS};
use std::f64::consts::{FRAC_PI_2, PI};

/// A planar point. Sensors and targets are points whose id is their index in
/// the instance's point list.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dist(&self, other: Point2) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn dist_sq(&self, other: Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

fn check_pair_at(t: Point2, s1: Point2, s2: Point2) -> Result<()> {
    if s1 == t || s2 == t {
        return Err(Error::CoincidentPoints("sensor coincides with target"));
    }
    if s1 == s2 {
        return Err(Error::CoincidentPoints("the two sensors coincide"));
    }
    Ok(())
}

/// Angle `∠(s1 t s2)` in `[0, pi]`, from the dot product of unit vectors.
pub fn angle_at(t: Point2, s1: Point2, s2: Point2) -> Result<f64> {
    check_pair_at(t, s1, s2)?;
    let (ux, uy) = (s1.x - t.x, s1.y - t.y);
    let (vx, vy) = (s2.x - t.x, s2.y - t.y);
    let nu = (ux * ux + uy * uy).sqrt();
    let nv = (vx * vx + vy * vy).sqrt();
    let c = ((ux * vx + uy * vy) / (nu * nv)).clamp(-1.0, 1.0);
    Ok(c.acos())
}

/// True when the pair `(s1, s2)` alpha-covers `t`, i.e. `∠(s1 t s2)` lies in
/// the closed interval `[alpha, pi - alpha]`.
///
/// Decided without inverse trig: `|cos θ| <= cos(alpha) + η` via a squared
/// comparison. At `alpha = 0` the interval formally degenerates to `[0, pi]`;
/// because localization is impossible for collinear configurations, level
/// zero excludes exact collinearity and nothing else.
pub fn alpha_covers(s1: Point2, s2: Point2, t: Point2, alpha: f64) -> Result<bool> {
    check_pair_at(t, s1, s2)?;
    let (ux, uy) = (s1.x - t.x, s1.y - t.y);
    let (vx, vy) = (s2.x - t.x, s2.y - t.y);
    if alpha == 0.0 {
        return Ok(ux * vy - uy * vx != 0.0);
    }
    let c0 = alpha.cos() + ANGLE_EPS;
    if c0 < 0.0 {
        // alpha beyond pi/2: the interval [alpha, pi - alpha] is empty.
        return Ok(false);
    }
    let dot = ux * vx + uy * vy;
    Ok(dot * dot <= c0 * c0 * ((ux * ux + uy * uy) * (vx * vx + vy * vy)))
}

/// The two disks of radius `R_alpha = d(s,s') / (2 sin alpha)` through `s` and
/// `s'`. The locus of alpha-covered points is the symmetric difference of the
/// two disks.
///
/// `alpha = 0` is a documented branch for callers ([`Error::ZeroAngle`]): the
/// radius diverges and the covered region is the plane minus the line `ss'`.
pub fn coverage_disks(s: Point2, sp: Point2, alpha: f64) -> Result<(Point2, Point2, f64)> {
    if s == sp {
        return Err(Error::CoincidentPoints("the two sensors coincide"));
    }
    if alpha == 0.0 {
        return Err(Error::ZeroAngle);
    }
    if !(alpha > 0.0 && alpha <= FRAC_PI_2 + ANGLE_EPS) {
        return Err(Error::BadParams(format!(
            "coverage_disks needs alpha in (0, pi/2], got {alpha}"
        )));
    }
    let d = s.dist(sp);
    let r = d / (2.0 * alpha.sin());
    let half = d / 2.0;
    let mid = Point2::new((s.x + sp.x) / 2.0, (s.y + sp.y) / 2.0);
    let h = (r * r - half * half).max(0.0).sqrt();
    // unit normal to the chord ss'
    let nx = -(sp.y - s.y) / d;
    let ny = (sp.x - s.x) / d;
    let c1 = Point2::new(mid.x + h * nx, mid.y + h * ny);
    let c2 = Point2::new(mid.x - h * nx, mid.y - h * ny);
    Ok((c1, c2, r))
}

/// Membership in the symmetric difference of the two coverage disks:
/// inside exactly one of them (closed disks, length tolerance).
pub fn in_disk_symmetric_difference(c1: Point2, c2: Point2, r: f64, p: Point2) -> bool {
    let in1 = p.dist(c1) <= r + LEN_EPS;
    let in2 = p.dist(c2) <= r + LEN_EPS;
    in1 ^ in2
}

/// Union of two opposite wedges at an apex, represented as an angular
/// interval mod pi: a direction class `axis` in `[0, pi)` plus a half-width
/// in `[0, pi/2]`. The central angle of each wedge is `2 * half_width`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleWedge {
    pub apex: Point2,
    pub axis: f64,
    pub half_width: f64,
}

impl DoubleWedge {
    /// Central angle of each of the two wedges.
    pub fn central_angle(&self) -> f64 {
        2.0 * self.half_width
    }

    /// Closed membership. The apex itself is a member by convention.
    pub fn contains(&self, p: Point2) -> bool {
        if p == self.apex {
            return true;
        }
        let a = (p.y - self.apex.y).atan2(p.x - self.apex.x);
        angle_dist_mod_pi(a, self.axis) <= self.half_width + ANGLE_EPS
    }
}

/// Normalizes an angle into `[0, pi)`, identifying opposite directions.
pub fn normalize_mod_pi(a: f64) -> f64 {
    let r = a.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

/// Angular distance between two direction classes mod pi, in `[0, pi/2]`.
pub fn angle_dist_mod_pi(a: f64, b: f64) -> f64 {
    let r = (a - b).rem_euclid(PI);
    r.min(PI - r)
}

/// The double-wedge of partner locations: `p` is a member exactly when
/// `(s, p)` beta-covers `t`. Axis is the perpendicular of the direction
/// `t -> s` (mod pi); half-width is `pi/2 - beta`, so each wedge has central
/// angle `pi - 2*beta`.
pub fn double_wedge(t: Point2, s: Point2, beta: f64) -> Result<DoubleWedge> {
    if s == t {
        return Err(Error::CoincidentPoints("sensor coincides with target"));
    }
    if !(0.0..=FRAC_PI_2 + ANGLE_EPS).contains(&beta) {
        return Err(Error::BadParams(format!(
            "double_wedge needs beta in [0, pi/2], got {beta}"
        )));
    }
    let dir = (s.y - t.y).atan2(s.x - t.x);
    Ok(DoubleWedge {
        apex: t,
        axis: normalize_mod_pi(dir + FRAC_PI_2),
        half_width: (FRAC_PI_2 - beta).max(0.0),
    })
}

/// Smallest double-wedge containing both inputs, which share an apex and
/// whose angular intervals mod pi overlap. Union semantics are exact under
/// the overlap precondition: a point is a member of the result iff it is a
/// member of either input.
pub fn merge_double_wedges(d1: &DoubleWedge, d2: &DoubleWedge) -> Result<DoubleWedge> {
    if d1.apex != d2.apex {
        return Err(Error::PreconditionViolated(
            "merge_double_wedges: apex mismatch".into(),
        ));
    }
    // signed axis offset of d2 relative to d1, in (-pi/2, pi/2]
    let mut off = (d2.axis - d1.axis).rem_euclid(PI);
    if off > FRAC_PI_2 {
        off -= PI;
    }
    let gap = off.abs();
    let combined = d1.half_width + d2.half_width;
    if gap > combined + ANGLE_EPS {
        return Err(Error::DisjointWedges {
            gap,
            width: combined,
        });
    }
    let lo = (-d1.half_width).min(off - d2.half_width);
    let hi = d1.half_width.max(off + d2.half_width);
    if hi - lo >= PI {
        // the two arcs wrap around the direction circle
        return Ok(DoubleWedge {
            apex: d1.apex,
            axis: d1.axis,
            half_width: FRAC_PI_2,
        });
    }
    Ok(DoubleWedge {
        apex: d1.apex,
        axis: normalize_mod_pi(d1.axis + 0.5 * (lo + hi)),
        half_width: 0.5 * (hi - lo),
    })
}

/// Membership in the double-sector: inside the wedge and within `radius` of
/// the apex (closed).
pub fn in_double_sector(dw: &DoubleWedge, radius: f64, p: Point2) -> bool {
    dw.contains(p) && dw.apex.dist(p) <= radius + LEN_EPS
}

/// Which geometric dilution-of-precision formula to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdopMode {
    /// `1 / |sin θ|` — distance measurements.
    DistanceBased,
    /// `d1 * d2 / |sin θ|` — bearing measurements.
    BearingBased,
}

/// Geometric dilution of precision for the pair `(s1, s2)` observing `t`.
/// Returns `+inf` when the three points are collinear.
pub fn gdop(s1: Point2, s2: Point2, t: Point2, mode: GdopMode) -> Result<f64> {
    check_pair_at(t, s1, s2)?;
    let (ux, uy) = (s1.x - t.x, s1.y - t.y);
    let (vx, vy) = (s2.x - t.x, s2.y - t.y);
    let cross = (ux * vy - uy * vx).abs();
    if cross == 0.0 {
        return Ok(f64::INFINITY);
    }
    let nu = (ux * ux + uy * uy).sqrt();
    let nv = (vx * vx + vy * vy).sqrt();
    // |sin θ| = cross / (|u| |v|)
    Ok(match mode {
        GdopMode::DistanceBased => nu * nv / cross,
        GdopMode::BearingBased => (nu * nv) * (nu * nv) / cross,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_3;

    const FRAC_PI_6: f64 = PI / 6.0;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn angle_at_basic() {
        let t = p(0.0, 0.0);
        assert!((angle_at(t, p(1.0, 0.0), p(0.0, 1.0)).unwrap() - FRAC_PI_2).abs() < 1e-12);
        assert!(angle_at(t, p(1.0, 0.0), p(2.0, 0.0)).unwrap().abs() < 1e-12);
        assert!((angle_at(t, p(1.0, 0.0), p(-3.0, 0.0)).unwrap() - PI).abs() < 1e-12);
    }

    #[test]
    fn angle_at_degenerate_inputs() {
        let t = p(0.0, 0.0);
        assert!(angle_at(t, t, p(1.0, 0.0)).is_err());
        assert!(angle_at(t, p(1.0, 0.0), p(1.0, 0.0)).is_err());
    }

    #[test]
    fn alpha_covers_basic() {
        let t = p(0.0, 0.0);
        assert!(alpha_covers(p(1.0, 0.0), p(0.0, 1.0), t, FRAC_PI_3).unwrap());
        assert!(!alpha_covers(p(1.0, 0.0), p(2.0, 0.0), t, FRAC_PI_3).unwrap());
    }

    #[test]
    fn alpha_covers_inscribed_boundary() {
        // t on the circle of radius 2 centered (0, sqrt(3)) through the pair:
        // the inscribed angle is exactly pi/6.
        let s = p(-1.0, 0.0);
        let sp = p(1.0, 0.0);
        let t = p(0.0, 3f64.sqrt() + 2.0);
        let ang = angle_at(t, s, sp).unwrap();
        assert!((ang - FRAC_PI_6).abs() < 1e-12);
        assert!(alpha_covers(s, sp, t, FRAC_PI_6).unwrap());
    }

    #[test]
    fn alpha_covers_symmetric_and_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let t = p(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let s1 = p(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let s2 = p(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            if s1 == t || s2 == t || s1 == s2 {
                continue;
            }
            let a = rng.gen_range(0.01..FRAC_PI_2);
            let c12 = alpha_covers(s1, s2, t, a).unwrap();
            let c21 = alpha_covers(s2, s1, t, a).unwrap();
            assert_eq!(c12, c21);
            if c12 {
                // monotone: covered at a implies covered at every smaller level
                assert!(alpha_covers(s1, s2, t, a * rng.gen_range(0.0..1.0)).unwrap());
            }
        }
    }

    #[test]
    fn alpha_covers_rigid_motion_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..2000 {
            let t = p(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let s1 = p(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let s2 = p(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            if s1 == t || s2 == t || s1 == s2 {
                continue;
            }
            let a = rng.gen_range(0.05..1.5);
            let ang = match angle_at(t, s1, s2) {
                Ok(v) => v,
                Err(_) => continue,
            };
            // skip near-boundary configurations; tolerance bands differ there
            if (ang - a).abs() < 1e-6 || (PI - a - ang).abs() < 1e-6 {
                continue;
            }
            let phi = rng.gen_range(0.0..PI * 2.0);
            let (c, s) = (phi.cos(), phi.sin());
            let scale = rng.gen_range(0.1..10.0);
            let (dx, dy) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let m = |q: Point2| {
                p(
                    scale * (c * q.x - s * q.y) + dx,
                    scale * (s * q.x + c * q.y) + dy,
                )
            };
            assert_eq!(
                alpha_covers(s1, s2, t, a).unwrap(),
                alpha_covers(m(s1), m(s2), m(t), a).unwrap()
            );
        }
    }

    #[test]
    fn coverage_disks_pi_6() {
        let (c1, c2, r) = coverage_disks(p(-1.0, 0.0), p(1.0, 0.0), FRAC_PI_6).unwrap();
        assert!((r - 2.0).abs() < 1e-12);
        let s3 = 3f64.sqrt();
        let ys: Vec<f64> = vec![c1.y, c2.y];
        assert!(ys.iter().any(|&y| (y - s3).abs() < 1e-12));
        assert!(ys.iter().any(|&y| (y + s3).abs() < 1e-12));
        assert!(c1.x.abs() < 1e-12 && c2.x.abs() < 1e-12);
    }

    #[test]
    fn coverage_disks_thales() {
        let (c1, c2, r) = coverage_disks(p(-1.0, 0.0), p(1.0, 0.0), FRAC_PI_2).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        assert!(c1.dist(c2) < 1e-12);
        assert!(c1.dist(p(0.0, 0.0)) < 1e-12);
    }

    #[test]
    fn coverage_disks_zero_angle() {
        assert!(matches!(
            coverage_disks(p(-1.0, 0.0), p(1.0, 0.0), 0.0),
            Err(Error::ZeroAngle)
        ));
    }

    #[test]
    fn disk_symmetric_difference_matches_predicate() {
        // cross-validation of the two-disk characterization against the
        // angle predicate, skipping a thin band around both disk boundaries
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut tested = 0usize;
        while tested < 10_000 {
            let s = p(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let sp = p(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if s.dist(sp) < 1e-3 {
                continue;
            }
            let alpha = rng.gen_range(0.05..FRAC_PI_2);
            let q = p(rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0));
            if q == s || q == sp {
                continue;
            }
            let (c1, c2, r) = coverage_disks(s, sp, alpha).unwrap();
            if (q.dist(c1) - r).abs() < 1e-7 || (q.dist(c2) - r).abs() < 1e-7 {
                continue;
            }
            assert_eq!(
                in_disk_symmetric_difference(c1, c2, r, q),
                alpha_covers(s, sp, q, alpha).unwrap(),
                "disagreement at s={s:?} sp={sp:?} alpha={alpha} q={q:?}"
            );
            tested += 1;
        }
    }

    #[test]
    fn double_wedge_central_angle() {
        // central angle pi - 2*beta
        let dw = double_wedge(p(0.0, 0.0), p(1.0, 0.0), PI / 4.0).unwrap();
        assert!((dw.central_angle() - FRAC_PI_2).abs() < 1e-12);
        let dw0 = double_wedge(p(0.0, 0.0), p(1.0, 0.0), 0.0).unwrap();
        assert!((dw0.half_width - FRAC_PI_2).abs() < 1e-12);
        // at beta = 0 every off-line point is a member
        assert!(dw0.contains(p(0.3, 7.0)));
        assert!(dw0.contains(p(-4.0, 0.01)));
    }

    #[test]
    fn double_wedge_membership_examples() {
        let dw = double_wedge(p(0.0, 0.0), p(1.0, 0.0), FRAC_PI_3).unwrap();
        assert!(dw.contains(p(0.0, 5.0)));
        assert!(!dw.contains(p(5.0, 1.0)));
        // apex convention
        assert!(dw.contains(p(0.0, 0.0)));
    }

    #[test]
    fn double_wedge_membership_equals_beta_coverage() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let mut tested = 0usize;
        while tested < 10_000 {
            let t = p(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let s = p(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if s == t {
                continue;
            }
            let beta = rng.gen_range(0.01..FRAC_PI_2);
            let dw = double_wedge(t, s, beta).unwrap();
            let q = p(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
            if q == t || q == s {
                continue;
            }
            // skip the tolerance band around the wedge boundary
            let a = (q.y - t.y).atan2(q.x - t.x);
            if (angle_dist_mod_pi(a, dw.axis) - dw.half_width).abs() < 1e-7 {
                continue;
            }
            assert_eq!(
                dw.contains(q),
                alpha_covers(s, q, t, beta).unwrap(),
                "t={t:?} s={s:?} beta={beta} q={q:?}"
            );
            tested += 1;
        }
    }

    #[test]
    fn merge_idempotent() {
        let d = double_wedge(p(0.0, 0.0), p(1.0, 2.0), 0.7).unwrap();
        let m = merge_double_wedges(&d, &d).unwrap();
        assert!((m.axis - d.axis).abs() < 1e-12);
        assert!((m.half_width - d.half_width).abs() < 1e-12);
    }

    #[test]
    fn merge_width_formula_instance() {
        // alpha = pi/3, eps = pi/12, axis offset alpha' = pi/6:
        // merged central angle = pi - 2(alpha - eps) + alpha' = 2*pi/3
        let alpha = FRAC_PI_3;
        let eps = PI / 12.0;
        let beta = alpha - eps;
        let t = p(0.0, 0.0);
        let d1 = double_wedge(t, p(1.0, 0.0), beta).unwrap();
        let alpha_p = FRAC_PI_6;
        let d2 = double_wedge(t, p(alpha_p.cos(), alpha_p.sin()), beta).unwrap();
        let m = merge_double_wedges(&d1, &d2).unwrap();
        let expect = PI - 2.0 * beta + alpha_p;
        assert!((m.central_angle() - expect).abs() < 1e-12);
        assert!((m.central_angle() - 2.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn merge_union_semantics_randomized() {
        // membership of the merge equals the disjunction, checked by a dense
        // direction scan from the shared apex
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..300 {
            let apex = p(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let w1 = rng.gen_range(0.2..FRAC_PI_2);
            let w2 = rng.gen_range(0.2..FRAC_PI_2);
            let a1 = rng.gen_range(0.0..PI);
            let max_off = (w1 + w2).min(FRAC_PI_2 - 1e-6);
            let a2 = normalize_mod_pi(a1 + rng.gen_range(-max_off..max_off));
            let d1 = DoubleWedge {
                apex,
                axis: a1,
                half_width: w1,
            };
            let d2 = DoubleWedge {
                apex,
                axis: a2,
                half_width: w2,
            };
            let m = merge_double_wedges(&d1, &d2).unwrap();
            let mc = merge_double_wedges(&d2, &d1).unwrap();
            assert!((m.half_width - mc.half_width).abs() < 1e-9);
            assert!(angle_dist_mod_pi(m.axis, mc.axis) < 1e-9 || m.half_width > FRAC_PI_2 - 1e-9);
            for k in 0..3600 {
                let th = k as f64 * PI / 1800.0;
                let q = p(apex.x + th.cos(), apex.y + th.sin());
                // stay away from all three boundaries
                let b = [&d1, &d2, &m].iter().any(|d| {
                    (angle_dist_mod_pi(th, d.axis) - d.half_width).abs() < 1e-6
                });
                if b {
                    continue;
                }
                assert_eq!(m.contains(q), d1.contains(q) || d2.contains(q));
            }
        }
    }

    #[test]
    fn merge_disjoint_rejected() {
        let apex = p(0.0, 0.0);
        let d1 = DoubleWedge {
            apex,
            axis: 0.0,
            half_width: 0.1,
        };
        let d2 = DoubleWedge {
            apex,
            axis: 1.0,
            half_width: 0.1,
        };
        assert!(matches!(
            merge_double_wedges(&d1, &d2),
            Err(Error::DisjointWedges { .. })
        ));
    }

    #[test]
    fn double_sector_boundaries() {
        let dw = double_wedge(p(0.0, 0.0), p(1.0, 0.0), 0.3).unwrap();
        // apex at distance 0
        assert!(in_double_sector(&dw, 2.0, p(0.0, 0.0)));
        // member direction, distance exactly the radius (closed)
        assert!(in_double_sector(&dw, 2.0, p(0.0, 2.0)));
        // member direction, too far
        assert!(!in_double_sector(&dw, 2.0, p(0.0, 3.0)));
    }

    #[test]
    fn gdop_values() {
        let t = p(0.0, 0.0);
        assert!((gdop(p(1.0, 0.0), p(0.0, 1.0), t, GdopMode::DistanceBased).unwrap() - 1.0).abs() < 1e-12);
        assert!(gdop(p(1.0, 0.0), p(2.0, 0.0), t, GdopMode::DistanceBased)
            .unwrap()
            .is_infinite());
        // d1 = 2, d2 = 3, theta = pi/6 -> 6 / (1/2) = 12
        let s1 = p(2.0, 0.0);
        let s2 = p(3.0 * FRAC_PI_6.cos(), 3.0 * FRAC_PI_6.sin());
        let g = gdop(s1, s2, t, GdopMode::BearingBased).unwrap();
        assert!((g - 12.0).abs() < 1e-9);
    }
}
