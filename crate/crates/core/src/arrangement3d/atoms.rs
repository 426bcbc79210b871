use super::boundaries::tri_area;
use super::SpaceArrangement;
use crate::error::{Error, Result};
use crate::geometry::{add, centroid3, normalize, scale, BBox, Point3, TriangleSoup};

const WITNESS_RETRIES: usize = 5;

/// A bounded 3-cell: one column of `d3`.
#[derive(Clone, Debug)]
pub struct Atom {
    pub index: usize,
    pub column: Vec<(usize, i8)>,
    pub bbox: BBox,
    /// A point inside the cell, checked by ray parity against its boundary.
    pub witness: Point3,
}

pub(crate) fn build_atom(arr: &SpaceArrangement, k: usize, seed: u64) -> Result<Atom> {
    let column: Vec<(usize, i8)> = arr.cells.d3.column(k).collect();
    let tris: Vec<[Point3; 3]> = column.iter().flat_map(|&(f, _)| arr.face_triangles(f)).collect();
    let soup = TriangleSoup::new(tris);
    let bbox = soup.bbox;
    let tau0 = 1e-4 * bbox.diagonal();

    // try faces of the cell's own shell, largest first
    let own = arr.cells.cell_shells[k][0];
    let mut faces: Vec<(usize, i8)> = arr.d3_plus.column(own).collect();
    let area = |f: usize| crate::geometry::norm(arr.face_areas[f]);
    faces.sort_by(|a, b| area(b.0).total_cmp(&area(a.0)).then(a.0.cmp(&b.0)));
    for &(f, s) in &faces {
        let Some(n) = normalize(arr.face_areas[f]) else { continue };
        let inward = scale(n, -f64::from(s));
        let Some(t) = arr.face_triangles(f).into_iter().max_by(|a, b| tri_area(a).total_cmp(&tri_area(b)))
        else {
            continue;
        };
        let c = centroid3(&t);
        let mut tau = tau0;
        for _ in 0..=WITNESS_RETRIES {
            let p = add(c, scale(inward, tau));
            if soup.contains(p, seed)? {
                return Ok(Atom { index: k, column, bbox, witness: p });
            }
            tau /= 10.0;
        }
    }
    Err(Error::degenerate(format!("atom {} has no interior witness", k + 1)))
}
