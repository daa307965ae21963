//! Weighted range spaces over sensor ground sets and epsilon-net
//! constructions.
//!
//! Three constructors are provided: weighted random sampling, the slice rule
//! for fat double-wedges, and the bounded-sector rule whose guarantee is
//! stated against 3R-extensions. All three are verified-with-fallback: the
//! asymptotic constants are not trusted numerically, every returned [`Net`]
//! satisfies the net property unconditionally, and pre-fallback failures are
//! reported for benchmarking.

use crate::geom::{
    self, alpha_covers, convex_hull_ccw, double_wedge, merge_double_wedges, DoubleWedge, Point2,
    PolygonEnv,
};
use crate::{Error, Result, SensorId, TargetId, ANGLE_EPS, LEN_EPS};
use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// A candidate sensor location in a range space's ground set.
#[derive(Clone, Copy, Debug)]
pub struct GroundPoint {
    pub id: SensorId,
    pub pos: Point2,
}

/// One range: the feasible partner locations for an uncovered target,
/// materialized over the ground set. The geometry descriptor (wedge plus
/// optional radius / visibility filter) allows membership to be re-evaluated
/// independently of the member list.
#[derive(Clone, Debug)]
pub struct Range {
    pub target: TargetId,
    pub center: Point2,
    pub wedge: DoubleWedge,
    pub radius: Option<f64>,
    pub vis_filtered: bool,
    /// Sensors of `S` that generated the wedge (one in the seed round).
    pub generators: (SensorId, Option<SensorId>),
    /// Ground indices, ascending.
    pub members: Vec<usize>,
}

/// Weighted ground set plus one range per uncovered target.
#[derive(Clone, Debug)]
pub struct RangeSpace {
    pub ground: Vec<GroundPoint>,
    pub weights: Vec<f64>,
    pub ranges: Vec<Range>,
}

impl RangeSpace {
    pub fn new(ground: Vec<GroundPoint>) -> Self {
        let weights = vec![1.0; ground.len()];
        RangeSpace {
            ground,
            weights,
            ranges: Vec::new(),
        }
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn range_weight(&self, idx: usize) -> f64 {
        self.ranges[idx]
            .members
            .iter()
            .map(|&g| self.weights[g])
            .sum()
    }

    pub fn reset_weights(&mut self) {
        for w in &mut self.weights {
            *w = 1.0;
        }
    }

    pub fn double_members(&mut self, idx: usize) {
        for &g in &self.ranges[idx].members {
            self.weights[g] *= 2.0;
        }
    }

    /// Does the selected ground point satisfy the range's geometry, with the
    /// radius replaced by `extension_radius` when given?
    pub fn in_extension(&self, range: &Range, g: usize, extension_radius: f64) -> bool {
        let p = self.ground[g].pos;
        range.wedge.contains(p) && range.center.dist(p) <= extension_radius + LEN_EPS
    }
}

/// Construction used to build a [`Net`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NetKind {
    Sample,
    FatWedge,
    Sector3R,
}

/// A verified epsilon-net: hits every epsilon-heavy range (for
/// [`NetKind::Sector3R`], hits the 3R-extension of every heavy range).
#[derive(Clone, Debug)]
pub struct Net {
    /// Ground indices, ascending.
    pub selected: Vec<usize>,
    pub epsilon: f64,
    pub kind: NetKind,
    /// Size before fallback insertions.
    pub pre_fallback_size: usize,
    /// Members added by the deterministic fallback.
    pub fallback_added: usize,
    /// Sampling attempts used (sampling construction only).
    pub attempts: u32,
    /// For sector nets: per heavy range, a selected point inside its
    /// extension, as (range index, ground index) evidence.
    pub extension_evidence: Vec<(usize, usize)>,
}

/// Side constraint intersected with each double-wedge.
#[derive(Clone, Copy)]
pub enum RangeConstraint<'a> {
    None,
    Disk { radius: f64 },
    Visibility { env: &'a PolygonEnv },
}

/// Inputs for [`build_ranges`] beyond the point sets.
pub struct BuildCtx<'a> {
    pub constraint: RangeConstraint<'a>,
    /// Eligibility distance for sensors of the current set (the distance at
    /// which the previous round's coverage holds). `None` for the purely
    /// angular variant.
    pub pair_radius: Option<f64>,
    pub alpha: f64,
    pub eps: f64,
}

fn eligible(s: Point2, t: Point2, ctx: &BuildCtx) -> Result<bool> {
    if s == t {
        return Ok(false);
    }
    if let Some(rp) = ctx.pair_radius {
        if s.dist(t) > rp + LEN_EPS {
            return Ok(false);
        }
    }
    if let RangeConstraint::Visibility { env } = ctx.constraint {
        if !env.sees(s, t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds the range space for one refinement round.
///
/// For each uncovered target, picks the first (id order) eligible pair of
/// current sensors that covers it at level `alpha - 2*eps` but not at
/// `alpha - eps`, merges their double-wedges at level `alpha - eps`,
/// intersects with the variant constraint, and materializes the member list
/// over the ground set. In the seed round (`eps = alpha/2`) a single eligible
/// sensor's wedge is used instead.
pub fn build_ranges(
    ground: Vec<GroundPoint>,
    current: &[(SensorId, Point2)],
    uncovered: &[(TargetId, Point2)],
    ctx: &BuildCtx,
) -> Result<RangeSpace> {
    let beta = (ctx.alpha - ctx.eps).max(0.0);
    let seed_round = 2.0 * ctx.eps >= ctx.alpha - ANGLE_EPS;
    let mut rs = RangeSpace::new(ground);
    for &(tid, t) in uncovered {
        let (wedge, generators) = if seed_round {
            let mut found = None;
            for &(sid, s) in current {
                if eligible(s, t, ctx)? {
                    found = Some((sid, s));
                    break;
                }
            }
            let (sid, s) = found.ok_or_else(|| {
                Error::PreconditionViolated(format!("no eligible seed sensor for {tid}"))
            })?;
            (double_wedge(t, s, beta)?, (sid, None))
        } else {
            let mut found = None;
            'outer: for (i, &(id1, s1)) in current.iter().enumerate() {
                if !eligible(s1, t, ctx)? {
                    continue;
                }
                for &(id2, s2) in current.iter().skip(i + 1) {
                    if s1 == s2 || !eligible(s2, t, ctx)? {
                        continue;
                    }
                    if alpha_covers(s1, s2, t, ctx.alpha - 2.0 * ctx.eps)?
                        && !alpha_covers(s1, s2, t, beta)?
                    {
                        found = Some(((id1, s1), (id2, s2)));
                        break 'outer;
                    }
                }
            }
            let ((id1, s1), (id2, s2)) = found.ok_or_else(|| {
                Error::PreconditionViolated(format!(
                    "no pair covers {tid} at level {} without covering at {}",
                    ctx.alpha - 2.0 * ctx.eps,
                    beta
                ))
            })?;
            let d1 = double_wedge(t, s1, beta)?;
            let d2 = double_wedge(t, s2, beta)?;
            (merge_double_wedges(&d1, &d2)?, (id1, Some(id2)))
        };

        let mut members = Vec::new();
        for (g, gp) in rs.ground.iter().enumerate() {
            if gp.pos == t || !wedge.contains(gp.pos) {
                continue;
            }
            let ok = match ctx.constraint {
                RangeConstraint::None => true,
                RangeConstraint::Disk { radius } => t.dist(gp.pos) <= radius + LEN_EPS,
                RangeConstraint::Visibility { env } => env.sees(gp.pos, t)?,
            };
            if ok {
                members.push(g);
            }
        }
        if members.is_empty() {
            return Err(Error::Infeasible(format!(
                "no sensor can complete a covering pair for {tid}; the instance has no solution"
            )));
        }
        rs.ranges.push(Range {
            target: tid,
            center: t,
            wedge,
            radius: match ctx.constraint {
                RangeConstraint::Disk { radius } => Some(radius),
                _ => None,
            },
            vis_filtered: matches!(ctx.constraint, RangeConstraint::Visibility { .. }),
            generators,
            members,
        });
    }
    Ok(rs)
}

/// Builds a pure visibility range space (one range per target, members are
/// the sensors that see it), used to seed the art-gallery variant.
pub fn build_visibility_ranges(
    ground: Vec<GroundPoint>,
    targets: &[(TargetId, Point2)],
    env: &PolygonEnv,
) -> Result<RangeSpace> {
    let mut rs = RangeSpace::new(ground);
    for &(tid, t) in targets {
        let mut members = Vec::new();
        for (g, gp) in rs.ground.iter().enumerate() {
            if gp.pos != t && env.sees(gp.pos, t)? {
                members.push(g);
            }
        }
        if members.is_empty() {
            return Err(Error::Infeasible(format!("no sensor sees {tid}")));
        }
        rs.ranges.push(Range {
            target: tid,
            center: t,
            // the trivial wedge: visibility is the only constraint
            wedge: DoubleWedge {
                apex: t,
                axis: 0.0,
                half_width: std::f64::consts::FRAC_PI_2,
            },
            radius: None,
            vis_filtered: true,
            generators: (SensorId(usize::MAX), None),
            members,
        });
    }
    Ok(rs)
}

/// Reports every epsilon-heavy range not intersected by `selected`. With
/// `extension_radius`, the hit test is evaluated against the extension
/// geometry instead of the member list.
pub fn verify_net(
    rs: &RangeSpace,
    eps: f64,
    selected: &[usize],
    extension_radius: Option<f64>,
) -> Vec<usize> {
    let threshold = eps * rs.total_weight();
    let mut unhit = Vec::new();
    for (ri, range) in rs.ranges.iter().enumerate() {
        if rs.range_weight(ri) < threshold {
            continue;
        }
        let hit = match extension_radius {
            None => range
                .members
                .iter()
                .any(|g| selected.binary_search(g).is_ok()),
            Some(er) => selected.iter().any(|&g| rs.in_extension(range, g, er)),
        };
        if !hit {
            unhit.push(ri);
        }
    }
    unhit
}

fn dedup_sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Max-weight member of the range, ties broken by lowest ground index.
fn heaviest_member(rs: &RangeSpace, members: &[usize]) -> usize {
    let mut best = members[0];
    for &g in members {
        if rs.weights[g] > rs.weights[best] {
            best = g;
        }
    }
    best
}

/// Weighted random sampling net (Las Vegas): draws
/// `ceil((8 d / eps) ln(8 / eps))` samples with replacement, verifies, and on
/// repeated failure falls back to adding one max-weight member of each unhit
/// heavy range, so the net property always holds.
pub fn sample_epsilon_net(rs: &RangeSpace, eps: f64, vc_dim: f64, seed: u64) -> Net {
    let n_samples = ((8.0 * vc_dim / eps) * (8.0 / eps).ln()).ceil().max(1.0) as usize;
    let dist = WeightedIndex::new(&rs.weights).expect("positive total weight");
    let mut selected: Vec<usize> = Vec::new();
    let mut attempts = 0u32;
    for attempt in 0..11u64 {
        attempts = attempt as u32 + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, attempt, 0));
        let set: BTreeSet<usize> = (0..n_samples).map(|_| dist.sample(&mut rng)).collect();
        selected = set.into_iter().collect();
        if verify_net(rs, eps, &selected, None).is_empty() {
            return Net {
                pre_fallback_size: selected.len(),
                selected,
                epsilon: eps,
                kind: NetKind::Sample,
                fallback_added: 0,
                attempts,
                extension_evidence: Vec::new(),
            };
        }
    }
    let pre = selected.len();
    let unhit = verify_net(rs, eps, &selected, None);
    for ri in unhit {
        selected.push(heaviest_member(rs, &rs.ranges[ri].members));
    }
    let selected = dedup_sorted(selected);
    debug_assert!(verify_net(rs, eps, &selected, None).is_empty());
    Net {
        fallback_added: selected.len().saturating_sub(pre),
        pre_fallback_size: pre,
        selected,
        epsilon: eps,
        kind: NetKind::Sample,
        attempts,
        extension_evidence: Vec::new(),
    }
}

fn mix_seed(seed: u64, a: u64, b: u64) -> u64 {
    // splitmix-style mixing so nested loops get independent streams
    let mut z = seed
        .wrapping_add(a.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(b.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Weight-quantile slice assignment: points in the given order are split into
/// `n_slices` groups of roughly `total/n_slices` weight. Ties at quantile
/// boundaries follow the supplied order.
fn weight_slices(order: &[usize], weights: &[f64], n_slices: usize) -> Vec<usize> {
    let total: f64 = order.iter().map(|&g| weights[g]).sum();
    let cap = total / n_slices as f64;
    let mut slice_of = vec![0usize; weights.len()];
    let mut cum = 0.0;
    for &g in order {
        slice_of[g] = ((cum / cap) as usize).min(n_slices - 1);
        cum += weights[g];
    }
    slice_of
}

/// One orientation of the slice rule: for each slice, the hull of the points
/// at or above it is walked counter-clockwise from its topmost point; the
/// last hull point inside the slice and its successor are picked.
fn slice_rule_picks(
    pts: &[Point2],
    weights: &[f64],
    n_slices: usize,
    flip: bool,
) -> Vec<usize> {
    let xf = |p: Point2| {
        if flip {
            Point2::new(-p.x, -p.y)
        } else {
            p
        }
    };
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| {
        xf(pts[a])
            .y
            .total_cmp(&xf(pts[b]).y)
            .then(a.cmp(&b))
    });
    let slice_of = weight_slices(&order, weights, n_slices);
    let mut picks = Vec::new();
    for i in 0..n_slices {
        let above: Vec<usize> = order.iter().copied().filter(|&g| slice_of[g] >= i).collect();
        if above.is_empty() {
            continue;
        }
        let local: Vec<Point2> = above.iter().map(|&g| xf(pts[g])).collect();
        let hull = convex_hull_ccw(&local);
        let in_slice: Vec<usize> = (0..hull.len())
            .filter(|&h| slice_of[above[hull[h]]] == i)
            .collect();
        if let Some(&last) = in_slice.last() {
            picks.push(above[hull[last]]);
            picks.push(above[hull[(last + 1) % hull.len()]]);
        }
    }
    picks
}

/// Slice-rule net for fat double-wedges (each wedge of central angle at least
/// pi/2). Runs the rule in both vertical orientations, then verifies and
/// falls back so the net property always holds.
pub fn fat_wedge_epsilon_net(rs: &RangeSpace, eps: f64) -> Net {
    let n_slices = (4.0 / eps).ceil() as usize;
    let pts: Vec<Point2> = rs.ground.iter().map(|g| g.pos).collect();
    let mut picks = slice_rule_picks(&pts, &rs.weights, n_slices, false);
    picks.extend(slice_rule_picks(&pts, &rs.weights, n_slices, true));
    let mut selected = dedup_sorted(picks);
    let pre = selected.len();
    let unhit = verify_net(rs, eps, &selected, None);
    let failures = unhit.len();
    for ri in unhit {
        selected.push(heaviest_member(rs, &rs.ranges[ri].members));
    }
    let selected = dedup_sorted(selected);
    debug_assert!(verify_net(rs, eps, &selected, None).is_empty());
    Net {
        fallback_added: failures,
        pre_fallback_size: pre,
        selected,
        epsilon: eps,
        kind: NetKind::FatWedge,
        attempts: 1,
        extension_evidence: Vec::new(),
    }
}

/// Bounded-sector net. Ranges are double-sectors of radius `radius`; the
/// guarantee, verified before returning, is that every epsilon-heavy range
/// has its 3R-extension (same wedge, radius `3 * radius`) hit.
///
/// The rule works in three coordinate frames (rotations 0 and ±pi/3),
/// partitioning the ground set into weight slices crossed with vertical
/// strips of width `radius`; per nonempty block it picks the slice-rule pair
/// plus the block's leftmost and rightmost points.
pub fn sector3r_epsilon_net(rs: &RangeSpace, eps: f64, radius: f64) -> Result<Net> {
    let n_slices = (4.0 / eps).ceil() as usize;
    let mut picks: Vec<usize> = Vec::new();
    for rot in [0.0f64, std::f64::consts::FRAC_PI_3, -std::f64::consts::FRAC_PI_3] {
        let (c, s) = (rot.cos(), rot.sin());
        let pts: Vec<Point2> = rs
            .ground
            .iter()
            .map(|g| Point2::new(c * g.pos.x - s * g.pos.y, s * g.pos.x + c * g.pos.y))
            .collect();
        picks.extend(sector_frame_picks(&pts, &rs.weights, n_slices, radius));
    }
    let mut selected = dedup_sorted(picks);
    let pre = selected.len();
    let ext = 3.0 * radius;
    let unhit = verify_net(rs, eps, &selected, Some(ext));
    let failures = unhit.len();
    for ri in unhit {
        let range = &rs.ranges[ri];
        let candidates: Vec<usize> = (0..rs.ground.len())
            .filter(|&g| rs.in_extension(range, g, ext))
            .collect();
        if candidates.is_empty() {
            return Err(Error::InfeasibleExtension(range.target));
        }
        selected.push(heaviest_member(rs, &candidates));
    }
    let selected = dedup_sorted(selected);
    let mut evidence = Vec::new();
    let threshold = eps * rs.total_weight();
    for (ri, range) in rs.ranges.iter().enumerate() {
        if rs.range_weight(ri) < threshold {
            continue;
        }
        let hit = selected
            .iter()
            .copied()
            .find(|&g| rs.in_extension(range, g, ext))
            .expect("verified net must hit every heavy extension");
        evidence.push((ri, hit));
    }
    Ok(Net {
        fallback_added: failures,
        pre_fallback_size: pre,
        selected,
        epsilon: eps,
        kind: NetKind::Sector3R,
        attempts: 1,
        extension_evidence: evidence,
    })
}

fn sector_frame_picks(
    pts: &[Point2],
    weights: &[f64],
    n_slices: usize,
    radius: f64,
) -> Vec<usize> {
    if pts.is_empty() {
        return Vec::new();
    }
    let x_min = pts.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let strip_of = |p: Point2| ((p.x - x_min) / radius).floor().max(0.0) as usize;
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[a].y.total_cmp(&pts[b].y).then(a.cmp(&b)));
    let slice_of = weight_slices(&order, weights, n_slices);

    let mut strips: Vec<usize> = (0..pts.len()).map(|g| strip_of(pts[g])).collect();
    let max_strip = strips.iter().copied().max().unwrap_or(0);
    let mut by_strip: Vec<Vec<usize>> = vec![Vec::new(); max_strip + 1];
    for &g in &order {
        by_strip[strips[g]].push(g); // y-ascending within each strip
    }
    let _ = &mut strips;

    let mut picks = Vec::new();
    for strip in by_strip.iter().filter(|s| !s.is_empty()) {
        let mut slices_present: Vec<usize> = strip.iter().map(|&g| slice_of[g]).collect();
        slices_present.sort_unstable();
        slices_present.dedup();
        for &i in &slices_present {
            let above: Vec<usize> = strip.iter().copied().filter(|&g| slice_of[g] >= i).collect();
            let local: Vec<Point2> = above.iter().map(|&g| pts[g]).collect();
            let hull = convex_hull_ccw(&local);
            let in_block: Vec<usize> = (0..hull.len())
                .filter(|&h| slice_of[above[hull[h]]] == i)
                .collect();
            if let Some(&last) = in_block.last() {
                picks.push(above[hull[last]]);
                picks.push(above[hull[(last + 1) % hull.len()]]);
            }
            // leftmost and rightmost points of the block itself
            let block: Vec<usize> = strip
                .iter()
                .copied()
                .filter(|&g| slice_of[g] == i)
                .collect();
            let lm = block
                .iter()
                .copied()
                .min_by(|&a, &b| pts[a].x.total_cmp(&pts[b].x).then(a.cmp(&b)))
                .unwrap();
            let rm = block
                .iter()
                .copied()
                .max_by(|&a, &b| pts[a].x.total_cmp(&pts[b].x).then(b.cmp(&a)))
                .unwrap();
            picks.push(lm);
            picks.push(rm);
        }
    }
    picks
}

/// Smallest enclosing ball (Welzl), randomized with a fixed seed. Returned
/// radius is for reporting strip-count bounds only.
pub fn enclosing_ball(pts: &[Point2]) -> (Point2, f64) {
    if pts.is_empty() {
        return (Point2::new(0.0, 0.0), 0.0);
    }
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    idx.shuffle(&mut rng);
    let (mut c, mut r) = (pts[idx[0]], 0.0f64);
    for i in 1..idx.len() {
        let p = pts[idx[i]];
        if p.dist(c) <= r + LEN_EPS {
            continue;
        }
        c = p;
        r = 0.0;
        for j in 0..i {
            let q = pts[idx[j]];
            if q.dist(c) <= r + LEN_EPS {
                continue;
            }
            c = Point2::new((p.x + q.x) / 2.0, (p.y + q.y) / 2.0);
            r = p.dist(q) / 2.0;
            for k in 0..j {
                let w = pts[idx[k]];
                if w.dist(c) <= r + LEN_EPS {
                    continue;
                }
                c = circumcenter(p, q, w);
                r = c.dist(p);
            }
        }
    }
    (c, r)
}

fn circumcenter(a: Point2, b: Point2, c: Point2) -> Point2 {
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if d == 0.0 {
        // collinear: midpoint of the farthest pair
        let (p, q) = [(a, b), (a, c), (b, c)]
            .into_iter()
            .max_by(|u, v| u.0.dist(u.1).total_cmp(&v.0.dist(v.1)))
            .unwrap();
        return Point2::new((p.x + q.x) / 2.0, (p.y + q.y) / 2.0);
    }
    let ux = ((a.x * a.x + a.y * a.y) * (b.y - c.y)
        + (b.x * b.x + b.y * b.y) * (c.y - a.y)
        + (c.x * c.x + c.y * c.y) * (a.y - b.y))
        / d;
    let uy = ((a.x * a.x + a.y * a.y) * (c.x - b.x)
        + (b.x * b.x + b.y * b.y) * (a.x - c.x)
        + (c.x * c.x + c.y * c.y) * (b.x - a.x))
        / d;
    Point2::new(ux, uy)
}

/// Re-evaluates a member list against its geometry descriptor; used by tests
/// to spot-check materialization.
pub fn recheck_members(rs: &RangeSpace, range: &Range, env: Option<&PolygonEnv>) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (g, gp) in rs.ground.iter().enumerate() {
        if gp.pos == range.center || !range.wedge.contains(gp.pos) {
            continue;
        }
        if let Some(r) = range.radius {
            if range.center.dist(gp.pos) > r + LEN_EPS {
                continue;
            }
        }
        if range.vis_filtered {
            let env = env.ok_or_else(|| Error::BadParams("visibility recheck needs env".into()))?;
            if !env.sees(gp.pos, range.center)? {
                continue;
            }
        }
        out.push(g);
    }
    Ok(out)
}

#[allow(unused)]
fn wedge_sanity(alpha: f64) -> f64 {
    // seed-round wedges have central angle pi - alpha
    std::f64::consts::PI - alpha
}
