//! Tolerance-based geometric predicates.

use super::{cross, dot, sub, Point2, Point3};

/// Crossing-number test of `p` against a closed set of boundary segments.
/// Points exactly on the boundary may land on either side.
pub fn point_in_segments(p: Point2, segments: &[(Point2, Point2)]) -> bool {
    let mut inside = false;
    for &(a, b) in segments {
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
            if x > p[0] {
                inside = !inside;
            }
        }
    }
    inside
}

pub fn point_in_polygon(p: Point2, loop_: &[Point2]) -> bool {
    let n = loop_.len();
    let segs: Vec<(Point2, Point2)> = (0..n).map(|i| (loop_[i], loop_[(i + 1) % n])).collect();
    point_in_segments(p, &segs)
}

/// Distance from `p` to the segment `ab`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t =
        if len2 > 0.0 { (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0) } else { 0.0 };
    super::dist2(p, [a[0] + t * d[0], a[1] + t * d[1]])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RayHit {
    Miss,
    Hit(f64),
    /// The ray passes too close to a triangle edge or the origin lies on
    /// the triangle; the caller should re-cast.
    Ambiguous,
}

/// Moller-Trumbore ray/triangle intersection for `t > 0`.
pub fn ray_triangle(orig: Point3, dir: Point3, tri: [Point3; 3], tol: f64) -> RayHit {
    let e1 = sub(tri[1], tri[0]);
    let e2 = sub(tri[2], tri[0]);
    let pv = cross(dir, e2);
    let det = dot(e1, pv);
    let scale = super::norm(e1) * super::norm(e2);
    if det.abs() <= 1e-12 * scale {
        // parallel: a hit is only possible if the ray lies in the plane
        let n = cross(e1, e2);
        let off = dot(sub(orig, tri[0]), n) / scale.max(f64::MIN_POSITIVE);
        return if off.abs() <= tol { RayHit::Ambiguous } else { RayHit::Miss };
    }
    let inv = 1.0 / det;
    let s = sub(orig, tri[0]);
    let u = dot(s, pv) * inv;
    let q = cross(s, e1);
    let v = dot(dir, q) * inv;
    if u < -tol || v < -tol || u + v > 1.0 + tol {
        return RayHit::Miss;
    }
    let t = dot(e2, q) * inv;
    let edge = u <= tol || v <= tol || u + v >= 1.0 - tol;
    if t.abs() <= tol * scale.sqrt().max(1.0) {
        return RayHit::Ambiguous;
    }
    if t < 0.0 {
        return RayHit::Miss;
    }
    if edge {
        RayHit::Ambiguous
    } else {
        RayHit::Hit(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_membership() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert!(point_in_polygon([0.5, 0.5], &sq));
        assert!(!point_in_polygon([1.5, 0.5], &sq));
    }

    #[test]
    fn ray_hits_triangle_interior() {
        let tri = [[0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]];
        assert_eq!(ray_triangle([0.2, 0.2, 0.0], [0.0, 0.0, 1.0], tri, 1e-9), RayHit::Hit(1.0));
        assert_eq!(ray_triangle([0.2, 0.2, 2.0], [0.0, 0.0, 1.0], tri, 1e-9), RayHit::Miss);
        assert_eq!(ray_triangle([2.0, 2.0, 0.0], [0.0, 0.0, 1.0], tri, 1e-9), RayHit::Miss);
        assert_eq!(ray_triangle([0.5, 0.0, 0.0], [0.0, 0.0, 1.0], tri, 1e-9), RayHit::Ambiguous);
    }
}
