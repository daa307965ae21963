//! Convex hull (monotone chain) for the slice-based net rules.

use super::Point2;

/// Indices of the convex hull vertices of `pts`, in counter-clockwise order,
/// rotated to start at the topmost point (highest y, ties broken by smallest
/// x then smallest index). Collinear boundary points are dropped. Degenerate
/// inputs yield fewer than three indices.
pub fn convex_hull_ccw(pts: &[Point2]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| {
        pts[a]
            .x
            .total_cmp(&pts[b].x)
            .then(pts[a].y.total_cmp(&pts[b].y))
            .then(a.cmp(&b))
    });
    order.dedup_by(|&mut a, &mut b| pts[a] == pts[b]);
    if order.len() <= 2 {
        return rotate_to_top(pts, order);
    }
    let cross = |o: usize, a: usize, b: usize| {
        (pts[a].x - pts[o].x) * (pts[b].y - pts[o].y)
            - (pts[a].y - pts[o].y) * (pts[b].x - pts[o].x)
    };
    let mut hull: Vec<usize> = Vec::with_capacity(order.len() + 1);
    for &i in order.iter().chain(order.iter().rev().skip(1)) {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], i) <= 0.0 {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    rotate_to_top(pts, hull)
}

fn rotate_to_top(pts: &[Point2], mut hull: Vec<usize>) -> Vec<usize> {
    if hull.is_empty() {
        return hull;
    }
    let top = (0..hull.len())
        .min_by(|&a, &b| {
            pts[hull[b]]
                .y
                .total_cmp(&pts[hull[a]].y)
                .then(pts[hull[a]].x.total_cmp(&pts[hull[b]].x))
                .then(hull[a].cmp(&hull[b]))
        })
        .unwrap();
    hull.rotate_left(top);
    hull
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn square_with_interior_and_collinear() {
        let pts = vec![
            p(0.0, 0.0),
            p(2.0, 0.0),
            p(2.0, 2.0),
            p(0.0, 2.0),
            p(1.0, 1.0), // interior
            p(1.0, 0.0), // collinear on an edge
        ];
        let h = convex_hull_ccw(&pts);
        assert_eq!(h.len(), 4);
        // starts at the topmost (ties by smallest x): (0, 2)
        assert_eq!(h[0], 3);
        // counter-clockwise: next goes down the left side
        assert_eq!(h[1], 0);
        assert_eq!(h[2], 1);
        assert_eq!(h[3], 2);
    }

    #[test]
    fn ccw_orientation() {
        let pts = vec![p(0.0, 0.0), p(4.0, 1.0), p(3.0, 4.0), p(-1.0, 2.0), p(1.5, 1.5)];
        let h = convex_hull_ccw(&pts);
        assert_eq!(h.len(), 4);
        let mut area2 = 0.0;
        for i in 0..h.len() {
            let a = pts[h[i]];
            let b = pts[h[(i + 1) % h.len()]];
            area2 += a.x * b.y - b.x * a.y;
        }
        assert!(area2 > 0.0);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(convex_hull_ccw(&[]).is_empty());
        assert_eq!(convex_hull_ccw(&[p(1.0, 1.0)]), vec![0]);
        let collinear = vec![p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0), p(3.0, 3.0)];
        let h = convex_hull_ccw(&collinear);
        assert_eq!(h.len(), 2);
    }
}
