use super::predicates::{ray_triangle, RayHit};
use super::{add, build_index, dist, scale, BBox, IntervalTreeSet, Point3};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_CASTS: usize = 8;

/// Triangulated closed surface prepared for parity queries.
#[derive(Clone, Debug)]
pub struct TriangleSoup {
    pub tris: Vec<[Point3; 3]>,
    pub bbox: BBox,
    index: IntervalTreeSet,
}

impl TriangleSoup {
    pub fn new(tris: Vec<[Point3; 3]>) -> Self {
        let boxes: Vec<BBox> = tris.iter().map(|t| BBox::from_points(t.iter())).collect();
        let bbox = boxes.iter().fold(BBox::empty(), |acc, b| acc.union(b));
        TriangleSoup { index: build_index(&boxes), tris, bbox }
    }

    /// Parity of the crossings of a ray from `p` with the surface. Rays that
    /// graze an edge or start on the surface are re-cast in a new
    /// pseudo-random direction drawn from `seed`.
    pub fn contains(&self, p: Point3, seed: u64) -> Result<bool> {
        if self.tris.is_empty() || !self.bbox.contains(p) {
            return Ok(false);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let reach = self.bbox.diagonal() + dist(p, self.bbox.min) + 1.0;
        let tol = 1e-9;
        let mut hits = Vec::new();
        for _ in 0..MAX_CASTS {
            let dir = random_unit(&mut rng);
            let end = add(p, scale(dir, reach));
            let mut probe = BBox::empty();
            probe.include(p);
            probe.include(end);
            hits.clear();
            self.index.query(&probe).into_iter().for_each(|i| hits.push(i));
            let mut crossings = 0usize;
            let mut clean = true;
            for &i in &hits {
                match ray_triangle(p, dir, self.tris[i], tol) {
                    RayHit::Miss => {}
                    RayHit::Hit(_) => crossings += 1,
                    RayHit::Ambiguous => {
                        clean = false;
                        break;
                    }
                }
            }
            if clean {
                return Ok(crossings % 2 == 1);
            }
        }
        Err(Error::degenerate(format!(
            "ray classification of {p:?} stayed ambiguous after {MAX_CASTS} casts"
        )))
    }
}

fn random_unit(rng: &mut ChaCha8Rng) -> Point3 {
    loop {
        let v: Point3 = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = super::norm(v);
        if n > 0.1 && n <= 1.0 {
            return scale(v, 1.0 / n);
        }
    }
}
