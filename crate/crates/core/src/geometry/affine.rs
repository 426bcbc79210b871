use super::Point3;
use crate::error::{Error, Result};

/// Homogeneous 4x4 affine map acting on column vectors. Planar models use
/// the same maps with `z = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap {
    pub m: [[f64; 4]; 4],
}

impl Default for AffineMap {
    fn default() -> Self {
        Self::identity()
    }
}

impl AffineMap {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        AffineMap { m }
    }

    pub fn translation(x: f64, y: f64, z: f64) -> Self {
        let mut a = Self::identity();
        a.m[0][3] = x;
        a.m[1][3] = y;
        a.m[2][3] = z;
        a
    }

    pub fn scaling(x: f64, y: f64, z: f64) -> Self {
        let mut a = Self::identity();
        a.m[0][0] = x;
        a.m[1][1] = y;
        a.m[2][2] = z;
        a
    }

    fn rot(axis: usize, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let (i, j) = ((axis + 1) % 3, (axis + 2) % 3);
        let mut a = Self::identity();
        a.m[i][i] = c;
        a.m[i][j] = -s;
        a.m[j][i] = s;
        a.m[j][j] = c;
        a
    }

    /// Rotation about x by `ax`, then about y by `ay`, then about z by `az`.
    pub fn rotation(ax: f64, ay: f64, az: f64) -> Self {
        Self::rot(2, az).then_after(&Self::rot(1, ay)).then_after(&Self::rot(0, ax))
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn then_after(&self, other: &AffineMap) -> AffineMap {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..4).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        AffineMap { m }
    }

    pub fn apply(&self, p: Point3) -> Point3 {
        std::array::from_fn(|i| {
            self.m[i][0] * p[0] + self.m[i][1] * p[1] + self.m[i][2] * p[2] + self.m[i][3]
        })
    }

    pub fn determinant(&self) -> f64 {
        let a = &self.m;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    /// Rejects maps whose last row is not `(0, 0, 0, 1)` or whose linear
    /// part is singular.
    pub fn validate(&self) -> Result<()> {
        if self.m[3] != [0.0, 0.0, 0.0, 1.0] {
            return Err(Error::invalid("affine map must have last row (0, 0, 0, 1)"));
        }
        if self.determinant().abs() < 1e-12 {
            return Err(Error::invalid("singular affine map"));
        }
        Ok(())
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        self.validate()?;
        let a = &self.m;
        let det = self.determinant();
        let mut inv = Self::identity();
        for i in 0..3 {
            for j in 0..3 {
                let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                inv.m[i][j] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / det;
            }
        }
        for i in 0..3 {
            inv.m[i][3] = -(0..3).map(|k| inv.m[i][k] * a[k][3]).sum::<f64>();
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Point3, b: Point3) -> bool {
        (0..3).all(|k| (a[k] - b[k]).abs() < 1e-12)
    }

    #[test]
    fn rotation_about_z() {
        let r = AffineMap::rotation(0.0, 0.0, std::f64::consts::FRAC_PI_2);
        assert!(close(r.apply([1.0, 0.0, 0.0]), [0.0, 1.0, 0.0]));
    }

    #[test]
    fn rotations_apply_x_first() {
        let h = std::f64::consts::FRAC_PI_2;
        // x-rotation takes y to z, then z-rotation leaves z alone
        let r = AffineMap::rotation(h, 0.0, h);
        assert!(close(r.apply([0.0, 1.0, 0.0]), [0.0, 0.0, 1.0]));
    }

    #[test]
    fn inverse_round_trip() {
        let a = AffineMap::translation(1.0, 2.0, 3.0)
            .then_after(&AffineMap::rotation(0.3, -0.7, 1.1))
            .then_after(&AffineMap::scaling(2.0, 1.0, 0.5));
        let inv = a.inverse().unwrap();
        let p = [0.3, -4.0, 2.5];
        assert!(close(inv.apply(a.apply(p)), p));
    }

    #[test]
    fn singular_rejected() {
        assert!(AffineMap::scaling(1.0, 0.0, 1.0).validate().is_err());
    }
}
