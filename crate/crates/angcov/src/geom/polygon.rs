//! Polygonal environments with holes and line-of-sight visibility.
//!
//! Orientation tests use exact adaptive predicates, so decisions are correct
//! for any f64 input. Visibility is closed: endpoints on the boundary and
//! sight lines running along an edge are visible. A boundary vertex struck in
//! the interior of the sight line blocks it, as does any excursion outside
//! the closed region.

use super::Point2;
use crate::{Error, Result};
use robust::{orient2d, Coord};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    In,
    On,
    Out,
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    orient2d(
        Coord { x: a.x, y: a.y },
        Coord { x: b.x, y: b.y },
        Coord { x: c.x, y: c.y },
    )
}

/// `r` assumed collinear with `pq`: is it inside the closed segment?
fn on_segment(p: Point2, q: Point2, r: Point2) -> bool {
    r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
}

/// `r` assumed collinear with `pq`: strictly between the endpoints?
fn strictly_between(p: Point2, q: Point2, r: Point2) -> bool {
    if r == p || r == q {
        return false;
    }
    on_segment(p, q, r)
}

fn segments_touch(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let o1 = orient(p1, p2, q1);
    let o2 = orient(p1, p2, q2);
    let o3 = orient(q1, q2, p1);
    let o4 = orient(q1, q2, p2);
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    (o1 == 0.0 && on_segment(p1, p2, q1))
        || (o2 == 0.0 && on_segment(p1, p2, q2))
        || (o3 == 0.0 && on_segment(q1, q2, p1))
        || (o4 == 0.0 && on_segment(q1, q2, p2))
}

fn signed_area2(ring: &[Point2]) -> f64 {
    let mut s = 0.0;
    for i in 0..ring.len() {
        let a = ring[i];
        let b = ring[(i + 1) % ring.len()];
        s += a.x * b.y - b.x * a.y;
    }
    s
}

fn ring_side(ring: &[Point2], p: Point2) -> Side {
    let n = ring.len();
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if orient(a, b, p) == 0.0 && on_segment(a, b, p) {
            return Side::On;
        }
    }
    let mut wn = 0i32;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0.0 {
                wn += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0.0 {
            wn -= 1;
        }
    }
    if wn != 0 {
        Side::In
    } else {
        Side::Out
    }
}

/// A simple polygon with optional holes. The region is the closed outer
/// polygon minus the open interiors of the holes.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonEnv {
    outer: Vec<Point2>,
    holes: Vec<Vec<Point2>>,
}

impl PolygonEnv {
    /// Validates and normalizes the rings: outer counter-clockwise, holes
    /// clockwise, all rings simple, holes strictly inside the outer ring and
    /// disjoint from each other. Consecutive collinear vertices are rejected.
    pub fn new(outer: Vec<Point2>, holes: Vec<Vec<Point2>>) -> Result<Self> {
        let mut outer = outer;
        validate_ring(&outer)?;
        if signed_area2(&outer) < 0.0 {
            outer.reverse();
        }
        let mut norm_holes = Vec::with_capacity(holes.len());
        for mut h in holes {
            validate_ring(&h)?;
            if signed_area2(&h) > 0.0 {
                h.reverse();
            }
            for v in &h {
                if ring_side(&outer, *v) != Side::In {
                    return Err(Error::BadParams(
                        "hole vertex not strictly inside the outer ring".into(),
                    ));
                }
            }
            norm_holes.push(h);
        }
        let env = PolygonEnv {
            outer,
            holes: norm_holes,
        };
        // rings must be pairwise disjoint
        let rings: Vec<&[Point2]> = env.rings().collect();
        for i in 0..rings.len() {
            for j in i + 1..rings.len() {
                for e in ring_edges(rings[i]) {
                    for f in ring_edges(rings[j]) {
                        if segments_touch(e.0, e.1, f.0, f.1) {
                            return Err(Error::BadParams("rings touch or intersect".into()));
                        }
                    }
                }
            }
        }
        for h in 1..env.holes.len() {
            if ring_side(&env.holes[h - 1], env.holes[h][0]) == Side::In
                || ring_side(&env.holes[h], env.holes[h - 1][0]) == Side::In
            {
                return Err(Error::BadParams("nested holes".into()));
            }
        }
        Ok(env)
    }

    /// Convex helper: axis-aligned rectangle.
    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        PolygonEnv::new(
            vec![
                Point2::new(x0, y0),
                Point2::new(x1, y0),
                Point2::new(x1, y1),
                Point2::new(x0, y1),
            ],
            vec![],
        )
    }

    pub fn outer(&self) -> &[Point2] {
        &self.outer
    }

    pub fn holes(&self) -> &[Vec<Point2>] {
        &self.holes
    }

    pub fn hole_count(&self) -> usize {
        self.holes.len()
    }

    fn rings(&self) -> impl Iterator<Item = &[Point2]> {
        std::iter::once(self.outer.as_slice()).chain(self.holes.iter().map(|h| h.as_slice()))
    }

    /// All boundary edges, outer ring first.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.rings().flat_map(ring_edges)
    }

    /// Closed membership: inside or on the boundary of the outer ring and not
    /// strictly inside any hole.
    pub fn contains(&self, p: Point2) -> bool {
        match ring_side(&self.outer, p) {
            Side::Out => false,
            Side::On => true,
            Side::In => self.holes.iter().all(|h| ring_side(h, p) != Side::In),
        }
    }

    /// Distance from `p` to the nearest boundary edge.
    pub fn boundary_dist(&self, p: Point2) -> f64 {
        self.edges()
            .map(|(a, b)| point_segment_dist(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Line-of-sight visibility between two points of the closed region.
    ///
    /// The sight line may touch the boundary at its endpoints and may run
    /// along edges. It is blocked if it properly crosses an edge, strikes a
    /// polygon vertex strictly between its endpoints, or leaves the closed
    /// region.
    pub fn sees(&self, s: Point2, t: Point2) -> Result<bool> {
        if !self.contains(s) || !self.contains(t) {
            return Err(Error::OutsidePolygon);
        }
        if s == t {
            return Ok(true);
        }
        let mut cuts: Vec<f64> = vec![0.0, 1.0];
        for (a, b) in self.edges() {
            let o1 = orient(s, t, a);
            let o2 = orient(s, t, b);
            if o1 == 0.0 && o2 == 0.0 {
                // sight line runs along this edge; remember the overlap ends
                for v in [a, b] {
                    if strictly_between(s, t, v) {
                        cuts.push(segment_param(s, t, v));
                    }
                }
                continue;
            }
            let o3 = orient(a, b, s);
            let o4 = orient(a, b, t);
            if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
                return Ok(false);
            }
            if (o1 == 0.0 && strictly_between(s, t, a))
                || (o2 == 0.0 && strictly_between(s, t, b))
            {
                return Ok(false);
            }
        }
        // no crossings and no vertex strikes remain; reject excursions
        // outside the closed region between consecutive boundary contacts
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        for w in cuts.windows(2) {
            let u = (w[0] + w[1]) / 2.0;
            let mid = Point2::new(s.x + (t.x - s.x) * u, s.y + (t.y - s.y) * u);
            if !self.contains(mid) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn ring_edges(ring: &[Point2]) -> impl Iterator<Item = (Point2, Point2)> + '_ {
    (0..ring.len()).map(move |i| (ring[i], ring[(i + 1) % ring.len()]))
}

/// `v` assumed collinear with and inside segment `st`: its parameter in (0,1).
fn segment_param(s: Point2, t: Point2, v: Point2) -> f64 {
    if (t.x - s.x).abs() >= (t.y - s.y).abs() {
        (v.x - s.x) / (t.x - s.x)
    } else {
        (v.y - s.y) / (t.y - s.y)
    }
}

fn point_segment_dist(p: Point2, a: Point2, b: Point2) -> f64 {
    let l2 = a.dist_sq(b);
    if l2 == 0.0 {
        return p.dist(a);
    }
    let u = (((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / l2).clamp(0.0, 1.0);
    p.dist(Point2::new(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)))
}

fn validate_ring(ring: &[Point2]) -> Result<()> {
    let n = ring.len();
    if n < 3 {
        return Err(Error::BadParams("ring needs at least 3 vertices".into()));
    }
    for v in ring {
        if !v.is_finite() {
            return Err(Error::BadParams("non-finite ring coordinate".into()));
        }
    }
    for i in 0..n {
        let prev = ring[(i + n - 1) % n];
        let cur = ring[i];
        let next = ring[(i + 1) % n];
        if cur == next {
            return Err(Error::BadParams("duplicate consecutive ring vertex".into()));
        }
        if orient(prev, cur, next) == 0.0 {
            return Err(Error::BadParams(
                "consecutive collinear ring vertices".into(),
            ));
        }
    }
    // simplicity: non-adjacent edges must not touch at all
    for i in 0..n {
        let (a1, a2) = (ring[i], ring[(i + 1) % n]);
        for j in i + 1..n {
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let (b1, b2) = (ring[j], ring[(j + 1) % n]);
            if segments_touch(a1, a2, b1, b2) {
                return Err(Error::BadParams("self-intersecting ring".into()));
            }
        }
    }
    Ok(())
}
