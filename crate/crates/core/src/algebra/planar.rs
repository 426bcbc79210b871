use super::BitChain;
use crate::arrangement2d::{regularize, PlanarArrangement, PlanarGraph};
use crate::error::{Error, Result};
use crate::geometry::predicates::point_in_segments;
use crate::geometry::Point2;
use crate::model::LarModel;
use crate::sparse::apply_boundary;

/// A 2D Boolean result: the arrangement of the selected faces' edges and
/// which of its bounded faces belong to the result.
#[derive(Clone, Debug)]
pub struct PlanarResult {
    pub complex: PlanarArrangement,
    pub selected: BitChain,
}

/// The boundary of the selected bounded faces, rewrapped as an arrangement
/// of its own. Edges shared by two selected faces cancel. Faces of the new
/// complex outside the selection (holes) are left unselected.
pub fn planar_result(arr: &PlanarArrangement, chain: &BitChain) -> Result<PlanarResult> {
    if chain.len() != arr.d2.ncols() {
        return Err(Error::dim(format!("chain of length {} for {} faces", chain.len(), arr.d2.ncols())));
    }
    let b = apply_boundary(&arr.d2, &chain.to_i32())?;
    let graph = PlanarGraph { v: arr.v.clone(), ev: arr.ev.clone() }.restrict_edges(|e| b[e] != 0);
    let complex = PlanarArrangement::from_graph(regularize(&graph))?;
    let region: Vec<(Point2, Point2)> = (0..arr.ev.len())
        .filter(|&e| b[e] != 0)
        .map(|e| (arr.v[arr.ev[e][0]], arr.v[arr.ev[e][1]]))
        .collect();
    let mut selected = BitChain::zeros(complex.face_loops.len());
    for f in 0..complex.face_loops.len() {
        let p = complex
            .interior_point(f)
            .ok_or_else(|| Error::degenerate(format!("result face {} has no interior point", f + 1)))?;
        selected.set(f, point_in_segments(p, &region));
    }
    Ok(PlanarResult { complex, selected })
}

/// Planar model whose faces list the vertices of every bounded face,
/// holes included.
pub fn planar_model(arr: &PlanarArrangement) -> Result<LarModel> {
    let fv = (0..arr.face_loops.len())
        .map(|f| {
            let mut vs: Vec<usize> = arr.face_loops[f].iter().flat_map(|&c| arr.cycle_loop(c)).collect();
            let mut seen = vec![false; arr.v.len()];
            vs.retain(|&x| !std::mem::replace(&mut seen[x], true));
            vs
        })
        .collect();
    LarModel::new(2, arr.v.iter().map(|p| [p[0], p[1], 0.0]).collect(), arr.ev.clone(), Some(fv))
}
