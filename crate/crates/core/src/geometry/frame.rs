use super::{add, cross, dist, dot, norm, normalize, scale, sub, Point2, Point3};
use crate::error::{Error, Result};

/// Orthonormal frame mapping a face's supporting plane to `z = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneFrame {
    pub origin: Point3,
    pub u: Point3,
    pub v: Point3,
    pub normal: Point3,
}

impl PlaneFrame {
    /// Frame with the given unit normal; `u` is chosen from the normal alone.
    pub fn from_normal(origin: Point3, normal: Point3) -> Result<Self> {
        let n = normalize(normal).ok_or_else(|| Error::degenerate("zero normal"))?;
        let helper = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let u = normalize(cross(helper, n)).expect("helper not parallel to normal");
        let v = cross(n, u);
        Ok(PlaneFrame { origin, u, v, normal: n })
    }

    pub fn to_local(&self, p: Point3) -> Point3 {
        let d = sub(p, self.origin);
        [dot(d, self.u), dot(d, self.v), dot(d, self.normal)]
    }

    pub fn to_local2(&self, p: Point3) -> Point2 {
        let l = self.to_local(p);
        [l[0], l[1]]
    }

    pub fn to_world(&self, p: Point3) -> Point3 {
        add(self.origin, add(add(scale(self.u, p[0]), scale(self.v, p[1])), scale(self.normal, p[2])))
    }
}

/// Frame of the plane through the given (coplanar) vertices.
pub fn plane_frame(vertices: &[Point3]) -> Result<PlaneFrame> {
    if vertices.len() < 3 {
        return Err(Error::degenerate("a face needs at least three vertices"));
    }
    let p0 = vertices[0];
    let p1 = *vertices.iter().max_by(|a, b| dist(**a, p0).total_cmp(&dist(**b, p0))).expect("non-empty");
    let diameter = dist(p0, p1);
    if diameter <= 0.0 {
        return Err(Error::degenerate("all face vertices coincide"));
    }
    let axis = scale(sub(p1, p0), 1.0 / diameter);
    let (p2, h) = vertices
        .iter()
        .map(|&p| (p, norm(cross(sub(p, p0), axis))))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty");
    if h <= 1e-9 * diameter.max(1.0) {
        return Err(Error::degenerate("collinear face vertices"));
    }
    let normal = normalize(cross(sub(p1, p0), sub(p2, p0))).expect("checked non-collinear");
    let u = axis;
    let v = cross(normal, u);
    let frame = PlaneFrame { origin: p0, u, v, normal };
    let tol = 1e-6 * diameter;
    if let Some(bad) = vertices.iter().find(|&&p| frame.to_local(p)[2].abs() > tol) {
        return Err(Error::degenerate(format!(
            "non-planar face: vertex {bad:?} is {:e} off the plane",
            frame.to_local(*bad)[2]
        )));
    }
    Ok(frame)
}
