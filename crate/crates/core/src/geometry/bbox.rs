use super::Point3;

/// Axis-aligned containment box in up to three dimensions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BBox {
    pub min: Point3,
    pub max: Point3,
}

impl BBox {
    pub fn new(min: Point3, max: Point3) -> Self {
        debug_assert!((0..3).all(|k| min[k] <= max[k]), "inverted box");
        BBox { min, max }
    }

    pub fn empty() -> Self {
        BBox { min: [f64::INFINITY; 3], max: [f64::NEG_INFINITY; 3] }
    }

    pub fn from_points<'a>(points: impl IntoIterator<Item = &'a Point3>) -> Self {
        let mut b = BBox::empty();
        for p in points {
            b.include(*p);
        }
        b
    }

    pub fn is_empty(&self) -> bool {
        (0..3).any(|k| self.min[k] > self.max[k])
    }

    pub fn include(&mut self, p: Point3) {
        for k in 0..3 {
            self.min[k] = self.min[k].min(p[k]);
            self.max[k] = self.max[k].max(p[k]);
        }
    }

    pub fn union(&self, other: &BBox) -> BBox {
        let mut b = *self;
        b.include(other.min);
        b.include(other.max);
        b
    }

    pub fn expanded(&self, tol: f64) -> BBox {
        BBox {
            min: [self.min[0] - tol, self.min[1] - tol, self.min[2] - tol],
            max: [self.max[0] + tol, self.max[1] + tol, self.max[2] + tol],
        }
    }

    pub fn overlaps(&self, other: &BBox) -> bool {
        (0..3).all(|k| self.min[k] <= other.max[k] && other.min[k] <= self.max[k])
    }

    pub fn contains(&self, p: Point3) -> bool {
        (0..3).all(|k| self.min[k] <= p[k] && p[k] <= self.max[k])
    }

    pub fn diagonal(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        super::dist(self.min, self.max)
    }
}
