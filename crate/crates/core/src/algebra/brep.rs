use std::collections::HashMap;

use crate::arrangement3d::{signed_face_loops, SpaceArrangement};
use crate::error::{Error, Result};
use crate::geometry::{
    newell_area, norm, normalize, triangulate_loops, undirected_loops, Point3, TriangleSoup,
};
use crate::model::LarModel;
use crate::sparse::apply_boundary;

/// One face of a boundary representation: loops as indices into the mesh
/// vertices, outer loop first.
#[derive(Clone, Debug, PartialEq)]
pub struct BrepFace {
    pub face: usize,
    pub sign: i8,
    pub loops: Vec<Vec<usize>>,
}

/// Oriented triangle mesh with the polygonal faces it came from.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Mesh {
    pub v: Vec<Point3>,
    pub tris: Vec<[usize; 3]>,
    pub faces: Vec<BrepFace>,
}

impl Mesh {
    /// Every directed edge is matched by exactly one reversed edge.
    pub fn is_closed(&self) -> bool {
        let mut count: HashMap<(usize, usize), i32> = HashMap::new();
        for t in &self.tris {
            for i in 0..3 {
                *count.entry((t[i], t[(i + 1) % 3])).or_default() += 1;
            }
        }
        count.iter().all(|(&(a, b), &n)| n == 1 && count.get(&(b, a)) == Some(&1))
    }

    /// `V - E + F` of the triangulated surface.
    pub fn euler(&self) -> i64 {
        let mut edges: Vec<(usize, usize)> = self
            .tris
            .iter()
            .flat_map(|t| (0..3).map(move |i| (t[i].min(t[(i + 1) % 3]), t[i].max(t[(i + 1) % 3]))))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        self.v.len() as i64 - edges.len() as i64 + self.tris.len() as i64
    }

    pub fn soup(&self) -> TriangleSoup {
        TriangleSoup::new(self.tris.iter().map(|t| t.map(|i| self.v[i])).collect())
    }

    /// Signed enclosed volume; positive for outward normals.
    pub fn volume(&self) -> f64 {
        self.tris
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| self.v[i]);
                crate::geometry::dot(a, crate::geometry::cross(b, c))
            })
            .sum::<f64>()
            / 6.0
    }
}

fn check_cycle(chain: &[i32], arr: &SpaceArrangement) -> Result<()> {
    if chain.len() != arr.d2.ncols() {
        return Err(Error::dim(format!("face chain of length {} for {} faces", chain.len(), arr.d2.ncols())));
    }
    let residual = apply_boundary(&arr.d2, chain)?;
    if let Some((e, &r)) = residual.iter().enumerate().find(|(_, &r)| r != 0) {
        let [a, b] = arr.ev[e];
        return Err(Error::topology(format!(
            "face chain is not a cycle: edge {} ({} {:?} - {} {:?}) has boundary {r}",
            e + 1,
            a + 1,
            arr.v[a],
            b + 1,
            arr.v[b]
        )));
    }
    Ok(())
}

/// Oriented faces and triangles of a 2-cycle.
pub fn brep_extract(chain: &[i32], arr: &SpaceArrangement) -> Result<Mesh> {
    check_cycle(chain, arr)?;
    let mut mesh = Mesh::default();
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut id = |x: usize, v: &mut Vec<Point3>| {
        *ids.entry(x).or_insert_with(|| {
            v.push(arr.v[x]);
            v.len() - 1
        })
    };
    for (f, &c) in chain.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign: i8 = if c > 0 { 1 } else { -1 };
        let mut loops = signed_face_loops(&arr.d2, &arr.ev, f, sign)?;
        let area = |l: &Vec<usize>| norm(newell_area(&arr.v, std::slice::from_ref(l)));
        loops.sort_by(|a, b| area(b).total_cmp(&area(a)));
        for t in &arr.face_tris[f] {
            let t = if sign > 0 { *t } else { [t[0], t[2], t[1]] };
            let t = t.map(|x| id(x, &mut mesh.v));
            mesh.tris.push(t);
        }
        let loops = loops.into_iter().map(|l| l.into_iter().map(|x| id(x, &mut mesh.v)).collect()).collect();
        mesh.faces.push(BrepFace { face: f, sign, loops });
    }
    Ok(mesh)
}

/// `(vertices, edges, faces)` of a 2-cycle: faces are its non-zeros, edges
/// the positively signed edge instances of those faces, vertices the
/// distinct endpoints of those edges.
pub fn boundary_counts(chain: &[i32], arr: &SpaceArrangement) -> Result<(usize, usize, usize)> {
    check_cycle(chain, arr)?;
    let mut faces = 0;
    let mut edges = 0;
    let mut verts: Vec<usize> = Vec::new();
    for (f, &c) in chain.iter().enumerate() {
        if c == 0 {
            continue;
        }
        faces += 1;
        for (e, s) in arr.d2.column(f) {
            if c.signum() * i32::from(s) > 0 {
                edges += 1;
                verts.extend(arr.ev[e]);
            }
        }
    }
    verts.sort_unstable();
    verts.dedup();
    Ok((verts.len(), edges, faces))
}

/// Triangulated boundary of an input solid, for membership tests.
pub fn model_soup(model: &LarModel) -> Result<TriangleSoup> {
    let fe = model.face_edges()?;
    let mut tris = Vec::new();
    for (f, edges) in fe.iter().enumerate() {
        let pairs: Vec<[usize; 2]> = edges.iter().map(|&e| model.ev[e]).collect();
        let loops = undirected_loops(&pairs).map_err(|e| Error::invalid(format!("face {}: {e}", f + 1)))?;
        let n = normalize(newell_area(&model.v, &loops))
            .ok_or_else(|| Error::degenerate(format!("face {} has zero area", f + 1)))?;
        for t in triangulate_loops(&model.v, &loops, n)? {
            tris.push(t.map(|i| model.v[i]));
        }
    }
    Ok(TriangleSoup::new(tris))
}
