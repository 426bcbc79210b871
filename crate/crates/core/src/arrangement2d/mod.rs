//! Regularized planar arrangements of segment soups.

mod graph;
mod tgw;

pub use graph::{intersect_segments, regularize, PlanarGraph};
pub(crate) use tgw::edge_endpoints;
pub use tgw::{cycle_vertices, face_cycles, tgw2d, Dart};

use crate::error::Result;
use crate::geometry::predicates::point_in_polygon;
use crate::geometry::{signed_area, Point2};
use crate::sparse::{signed_boundary1, SparseSignedMatrix};

/// Planar 2-complex with the outer face of every connected component
/// separated from the bounded faces.
#[derive(Clone, Debug)]
pub struct PlanarArrangement {
    pub v: Vec<Point2>,
    pub ev: Vec<[usize; 2]>,
    pub d1: SparseSignedMatrix,
    /// Every face cycle, outer ones included.
    pub d2_plus: SparseSignedMatrix,
    /// Bounded faces only. A face enclosing another component also carries
    /// that component's outer cycle as a hole.
    pub d2: SparseSignedMatrix,
    pub cycles: Vec<Vec<Dart>>,
    /// For every bounded face: its own cycle followed by its hole cycles.
    pub face_loops: Vec<Vec<usize>>,
    /// One outer cycle per connected component.
    pub outer_cycles: Vec<usize>,
    pub vertex_component: Vec<usize>,
    pub ncomponents: usize,
}

impl PlanarArrangement {
    /// Builds the arrangement of an already regularized graph.
    pub fn from_graph(graph: PlanarGraph) -> Result<Self> {
        let PlanarGraph { v, ev } = graph;
        let d1 = signed_boundary1(&ev, v.len())?;
        let cycles = face_cycles(&ev, &v)?;
        let d2_plus = tgw::cycles_matrix(ev.len(), &cycles);

        let (vertex_component, ncomponents) = components(v.len(), &ev);
        let loops: Vec<Vec<Point2>> =
            cycles.iter().map(|c| cycle_vertices(&ev, c).iter().map(|&x| v[x]).collect()).collect();
        let areas: Vec<f64> = loops.iter().map(|l| signed_area(l)).collect();
        let cycle_component: Vec<usize> = cycles.iter().map(|c| vertex_component[ev[c[0].edge][0]]).collect();

        let mut outer_of = vec![usize::MAX; ncomponents];
        for (c, &comp) in cycle_component.iter().enumerate() {
            if outer_of[comp] == usize::MAX || areas[c] < areas[outer_of[comp]] {
                outer_of[comp] = c;
            }
        }
        let bounded: Vec<usize> = (0..cycles.len()).filter(|c| !outer_of.contains(c)).collect();
        let mut face_loops: Vec<Vec<usize>> = bounded.iter().map(|&c| vec![c]).collect();

        for (comp, &outer) in outer_of.iter().enumerate() {
            let probe = loops[outer][0];
            let host = bounded
                .iter()
                .enumerate()
                .filter(|&(_, &c)| cycle_component[c] != comp && point_in_polygon(probe, &loops[c]))
                .min_by(|a, b| areas[*a.1].total_cmp(&areas[*b.1]));
            if let Some((f, _)) = host {
                face_loops[f].push(outer);
            }
        }

        let triplets = face_loops.iter().enumerate().flat_map(|(f, ls)| {
            let d2_plus = &d2_plus;
            ls.iter().flat_map(move |&c| d2_plus.column(c).map(move |(e, s)| (e, f, i32::from(s))))
        });
        let d2 = SparseSignedMatrix::from_triplets(ev.len(), face_loops.len(), triplets)?;

        Ok(PlanarArrangement {
            v,
            ev,
            d1,
            d2_plus,
            d2,
            cycles,
            face_loops,
            outer_cycles: outer_of,
            vertex_component,
            ncomponents,
        })
    }

    /// Vertex loop of a cycle of `d2_plus`.
    pub fn cycle_loop(&self, c: usize) -> Vec<usize> {
        cycle_vertices(&self.ev, &self.cycles[c])
    }

    pub fn cycle_area(&self, c: usize) -> f64 {
        let l: Vec<Point2> = self.cycle_loop(c).iter().map(|&x| self.v[x]).collect();
        signed_area(&l)
    }

    /// `V - E + F` per component, counting the component's outer face.
    pub fn component_euler(&self) -> Vec<i64> {
        let mut chi = vec![0i64; self.ncomponents];
        for &c in &self.vertex_component {
            chi[c] += 1;
        }
        for &[a, _] in &self.ev {
            chi[self.vertex_component[a]] -= 1;
        }
        for cycle in &self.cycles {
            chi[self.vertex_component[self.ev[cycle[0].edge][0]]] += 1;
        }
        chi
    }

    /// A point strictly inside bounded face `f`.
    pub fn interior_point(&self, f: usize) -> Option<Point2> {
        let loops: Vec<Vec<Point2>> = self.face_loops[f]
            .iter()
            .map(|&c| self.cycle_loop(c).iter().map(|&x| self.v[x]).collect())
            .collect();
        let tris = crate::geometry::triangulate_face(&loops[0], &loops[1..]).ok()?;
        let pts: Vec<Point2> = loops.concat();
        let t = tris.iter().max_by(|a, b| tri_area(&pts, a).abs().total_cmp(&tri_area(&pts, b).abs()))?;
        Some([
            (pts[t[0]][0] + pts[t[1]][0] + pts[t[2]][0]) / 3.0,
            (pts[t[0]][1] + pts[t[1]][1] + pts[t[2]][1]) / 3.0,
        ])
    }
}

fn tri_area(p: &[Point2], t: &[usize; 3]) -> f64 {
    crate::geometry::cross2(p[t[0]], p[t[1]], p[t[2]]) / 2.0
}

fn components(nv: usize, ev: &[[usize; 2]]) -> (Vec<usize>, usize) {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &[a, b] in ev {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut label = vec![usize::MAX; nv];
    let mut out = vec![0; nv];
    let mut n = 0;
    for x in 0..nv {
        let r = find(&mut parent, x);
        if label[r] == usize::MAX {
            label[r] = n;
            n += 1;
        }
        out[x] = label[r];
    }
    (out, n)
}

/// Intersects, regularizes and wraps a segment soup.
pub fn planar_arrangement(segments: &[(Point2, Point2)], eps: f64) -> Result<PlanarArrangement> {
    PlanarArrangement::from_graph(regularize(&intersect_segments(segments, eps)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<(Point2, Point2)> {
        let p = [[x0, y0], [x1, y0], [x1, y1], [x0, y1]];
        (0..4).map(|i| (p[i], p[(i + 1) % 4])).collect()
    }

    #[test]
    fn unit_square_euler() {
        let a = planar_arrangement(&rect(0.0, 0.0, 1.0, 1.0), 1e-9).unwrap();
        assert_eq!(a.component_euler(), vec![2]);
        assert_eq!(a.d2.ncols(), 1);
        assert!(a.cycle_area(a.outer_cycles[0]) < 0.0);
    }

    #[test]
    fn two_disjoint_triangles() {
        let t = |dx: f64| {
            let p = [[dx, 0.0], [dx + 1.0, 0.0], [dx, 1.0]];
            (0..3).map(move |i| (p[i], p[(i + 1) % 3])).collect::<Vec<_>>()
        };
        let segs: Vec<_> = t(0.0).into_iter().chain(t(5.0)).collect();
        let a = planar_arrangement(&segs, 1e-9).unwrap();
        assert_eq!(a.component_euler(), vec![2, 2]);
        assert_eq!(a.d2.ncols(), 2);
    }

    #[test]
    fn nested_square_becomes_hole() {
        let segs: Vec<_> = rect(0.0, 0.0, 3.0, 3.0).into_iter().chain(rect(1.0, 1.0, 2.0, 2.0)).collect();
        let a = planar_arrangement(&segs, 1e-9).unwrap();
        assert_eq!(a.d2.ncols(), 2);
        let annulus = (0..2).find(|&f| a.face_loops[f].len() == 2).expect("face with hole");
        assert_eq!(a.d2.column_nnz(annulus), 8);
        assert_eq!(a.d1.mul(&a.d2).unwrap().nnz(), 0);
    }

    #[test]
    fn overlapping_rectangles() {
        let segs: Vec<_> = rect(0.0, 0.0, 2.0, 2.0).into_iter().chain(rect(1.0, 1.0, 3.0, 3.0)).collect();
        let a = planar_arrangement(&segs, 1e-9).unwrap();
        assert_eq!((a.v.len(), a.ev.len(), a.d2.ncols()), (10, 12, 3));
        assert_eq!(a.component_euler(), vec![2]);
        assert!(a.d2_plus.row_sums().iter().all(|&s| s == 0));
    }
}
