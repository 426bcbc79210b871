use super::soup::{prepare_face, FacePrep, FaceSoup};
use crate::arrangement2d::{intersect_segments, regularize, PlanarArrangement};
use crate::error::{Error, Result};
use crate::geometry::predicates::{point_in_segments, point_segment_distance};
use crate::geometry::{build_index, BBox, IntervalTreeSet, Point2, Point3};
use crate::par::{self, Parallelism};
use crate::sparse::SparseSignedMatrix;

/// Fragments of one input face, mapped back to space.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalComplex {
    pub v: Vec<Point3>,
    /// Edges by vertices, `-1` at the tail and `+1` at the head.
    pub delta0: SparseSignedMatrix,
    /// Faces by edges, counterclockwise in the source face's frame.
    pub delta1: SparseSignedMatrix,
}

impl LocalComplex {
    pub fn is_exact(&self) -> bool {
        self.delta1.mul(&self.delta0).map(|m| m.nnz() == 0).unwrap_or(false)
    }
}

/// Face soup with per-face frames and the box index used to find the
/// faces that may cut a given one.
#[derive(Clone, Debug)]
pub struct FragmentContext<'a> {
    pub soup: &'a FaceSoup,
    pub eps: f64,
    preps: Vec<FacePrep>,
    index: IntervalTreeSet,
}

impl<'a> FragmentContext<'a> {
    pub fn new(soup: &'a FaceSoup, eps: f64, par: Parallelism) -> Result<Self> {
        let preps = par::try_map_range(soup.nfaces(), par, |f| prepare_face(soup, f))?;
        let boxes: Vec<BBox> = preps.iter().map(|p| p.bbox).collect();
        Ok(FragmentContext { soup, eps, index: build_index(&boxes), preps })
    }

    /// Faces whose boxes meet the box of `sigma`, other than `sigma`.
    pub fn candidates(&self, sigma: usize) -> Vec<usize> {
        self.index
            .query(&self.preps[sigma].bbox.expanded(self.eps))
            .into_iter()
            .filter(|&g| g != sigma)
            .collect()
    }

    /// Cuts face `sigma` by every candidate face and returns its fragments.
    pub fn fragment_face(&self, sigma: usize) -> Result<LocalComplex> {
        let prep = &self.preps[sigma];
        let mut segs = prep.segments.clone();
        for g in self.candidates(sigma) {
            segs.extend(self.cut_segments(sigma, g));
        }
        let graph = intersect_segments(&segs, self.eps);
        let own = &prep.segments;
        let eps = self.eps;
        let on_or_in = |p: Point2| {
            point_in_segments(p, own) || own.iter().any(|&(a, b)| point_segment_distance(p, a, b) <= eps)
        };
        let kept = graph.restrict_edges(|e| {
            let [a, b] = graph.ev[e];
            on_or_in(mid(graph.v[a], graph.v[b]))
        });
        let arr = PlanarArrangement::from_graph(regularize(&kept))
            .map_err(|e| Error::degenerate(format!("face {}: {e}", sigma + 1)))?;

        let mut faces = Vec::new();
        for f in 0..arr.d2.ncols() {
            let p = arr.interior_point(f).ok_or_else(|| {
                Error::degenerate(format!("face {}: fragment {} has no interior", sigma + 1, f + 1))
            })?;
            if point_in_segments(p, own) {
                faces.push(f);
            }
        }
        if faces.is_empty() {
            return Err(Error::degenerate(format!("face {} has no area", sigma + 1)));
        }

        // compact to the edges and vertices the kept fragments use
        let mut edge_id = vec![usize::MAX; arr.ev.len()];
        let mut vert_id = vec![usize::MAX; arr.v.len()];
        let (mut v, mut ev) = (Vec::new(), Vec::new());
        let mut face_rows = Vec::new();
        for (row, &f) in faces.iter().enumerate() {
            for (e, s) in arr.d2.column(f) {
                if edge_id[e] == usize::MAX {
                    let ends = arr.ev[e].map(|x| {
                        if vert_id[x] == usize::MAX {
                            vert_id[x] = v.len();
                            let q = arr.v[x];
                            v.push(prep.frame.to_world([q[0], q[1], 0.0]));
                        }
                        vert_id[x]
                    });
                    edge_id[e] = ev.len();
                    ev.push(ends);
                }
                face_rows.push((row, edge_id[e], i32::from(s)));
            }
        }
        let delta0 = SparseSignedMatrix::from_triplets(
            ev.len(),
            v.len(),
            ev.iter().enumerate().flat_map(|(e, &[a, b])| [(e, a, -1), (e, b, 1)]),
        )?;
        let delta1 = SparseSignedMatrix::from_triplets(faces.len(), ev.len(), face_rows)?;
        Ok(LocalComplex { v, delta0, delta1 })
    }

    /// Segments of `g` lying in the plane of `sigma`, in `sigma`'s frame.
    fn cut_segments(&self, sigma: usize, g: usize) -> Vec<(Point2, Point2)> {
        let soup = self.soup;
        let frame = &self.preps[sigma].frame;
        let eps = self.eps;
        let z = |p: Point3| frame.to_local(p)[2];
        let gv = soup.face_vertices(g);
        if gv.iter().all(|&i| z(soup.v[i]).abs() <= eps) {
            return soup.fe[g]
                .iter()
                .map(|&e| {
                    let [a, b] = soup.ev[e];
                    (frame.to_local2(soup.v[a]), frame.to_local2(soup.v[b]))
                })
                .collect();
        }

        let mut pts: Vec<Point2> = Vec::new();
        for &e in &soup.fe[g] {
            let [a, b] = soup.ev[e];
            let (pa, pb) = (soup.v[a], soup.v[b]);
            let (za, zb) = (z(pa), z(pb));
            if za.abs() <= eps {
                pts.push(frame.to_local2(pa));
            }
            if zb.abs() <= eps {
                pts.push(frame.to_local2(pb));
            }
            if (za > eps && zb < -eps) || (za < -eps && zb > eps) {
                let t = za / (za - zb);
                let p = std::array::from_fn(|k| pa[k] + t * (pb[k] - pa[k]));
                pts.push(frame.to_local2(p));
            }
        }
        if pts.len() < 2 {
            return Vec::new();
        }
        let far = pts
            .iter()
            .copied()
            .max_by(|a, b| crate::geometry::dist2(*a, pts[0]).total_cmp(&crate::geometry::dist2(*b, pts[0])))
            .expect("non-empty");
        let dir = [far[0] - pts[0][0], far[1] - pts[0][1]];
        if dir[0].hypot(dir[1]) <= eps {
            return Vec::new();
        }
        let key = |p: &Point2| p[0] * dir[0] + p[1] * dir[1];
        pts.sort_by(|a, b| key(a).total_cmp(&key(b)));
        pts.dedup_by(|b, a| crate::geometry::dist2(*a, *b) <= eps);

        let gprep = &self.preps[g];
        let inside_g = |p: Point2| {
            let w = frame.to_world([p[0], p[1], 0.0]);
            let q = gprep.frame.to_local2(w);
            point_in_segments(q, &gprep.segments)
                || gprep.segments.iter().any(|&(a, b)| point_segment_distance(q, a, b) <= eps)
        };
        pts.windows(2).filter(|w| inside_g(mid(w[0], w[1]))).map(|w| (w[0], w[1])).collect()
    }
}

fn mid(a: Point2, b: Point2) -> Point2 {
    [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0]
}
