//! Geometric support shared by the 2D and 3D arrangement pipelines.

mod affine;
mod bbox;
mod frame;
mod interval;
mod kdtree;
mod loops;
pub mod predicates;
mod raycast;
mod triangulate;

pub use affine::AffineMap;
pub use bbox::BBox;
pub use frame::{plane_frame, PlaneFrame};
pub use interval::{build_index, IntervalTree, IntervalTreeSet};
pub use kdtree::{kd_nearest_within, Clustering, KdTree};
pub use loops::{directed_loops, newell_area, triangulate_loops, undirected_loops};
pub use raycast::TriangleSoup;
pub use triangulate::triangulate_face;

pub type Point2 = [f64; 2];
pub type Point3 = [f64; 3];

/// Tolerances used across the pipeline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Vertex identification radius.
    pub vertex: f64,
    /// Geometric predicate tolerance.
    pub predicate: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { vertex: 1e-6, predicate: 1e-9 }
    }
}

#[inline]
pub fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn add(a: Point3, b: Point3) -> Point3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn scale(a: Point3, s: f64) -> Point3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub fn dot(a: Point3, b: Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: Point3, b: Point3) -> Point3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

#[inline]
pub fn norm(a: Point3) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn dist(a: Point3, b: Point3) -> f64 {
    norm(sub(a, b))
}

pub fn normalize(a: Point3) -> Option<Point3> {
    let n = norm(a);
    (n > 0.0 && n.is_finite()).then(|| scale(a, 1.0 / n))
}

#[inline]
pub fn cross2(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

#[inline]
pub fn dist2(a: Point2, b: Point2) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Signed area of a closed polygon (positive when counterclockwise).
pub fn signed_area(loop_: &[Point2]) -> f64 {
    let n = loop_.len();
    (0..n)
        .map(|i| {
            let (a, b) = (loop_[i], loop_[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
        / 2.0
}

pub fn centroid3(points: &[Point3]) -> Point3 {
    let n = points.len().max(1) as f64;
    let s = points.iter().fold([0.0; 3], |acc, p| add(acc, *p));
    scale(s, 1.0 / n)
}
