use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::sparse::SparseSignedMatrix;

/// A directed traversal of an edge; `forward` follows the edge's own
/// orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

/// Endpoints `(tail, head)` of every column of a signed `d1`.
pub(crate) fn edge_endpoints(d1: &SparseSignedMatrix) -> Result<Vec<[usize; 2]>> {
    (0..d1.ncols())
        .map(|e| {
            let (rows, vals) = d1.column_slices(e);
            match (rows, vals) {
                ([a, b], [-1, 1]) => Ok([*a, *b]),
                ([a, b], [1, -1]) => Ok([*b, *a]),
                _ => Err(Error::invalid(format!("column {} of d1 is not a signed edge", e + 1))),
            }
        })
        .collect()
}

/// Face cycles of a regularized planar graph as dart sequences, each face
/// kept on the left. Seeds are taken in dart order, so output is
/// deterministic.
pub fn face_cycles(ev: &[[usize; 2]], v: &[Point2]) -> Result<Vec<Vec<Dart>>> {
    // incident (edge, leaving direction) per vertex, counterclockwise
    let mut corolla: Vec<Vec<(f64, usize)>> = vec![Vec::new(); v.len()];
    for (e, &[a, b]) in ev.iter().enumerate() {
        let ang = |from: Point2, to: Point2| (to[1] - from[1]).atan2(to[0] - from[0]);
        corolla[a].push((ang(v[a], v[b]), e));
        corolla[b].push((ang(v[b], v[a]), e));
    }
    for (x, petals) in corolla.iter_mut().enumerate() {
        if petals.len() == 1 {
            return Err(Error::topology(format!("dangling edge {} at vertex {}", petals[0].1 + 1, x + 1)));
        }
        petals.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));
    }
    let slot = |x: usize, e: usize| corolla[x].iter().position(|p| p.1 == e).expect("incident");

    let mut marks = vec![[false; 2]; ev.len()];
    let mut cycles = Vec::new();
    for seed in 0..2 * ev.len() {
        let (e0, fwd0) = (seed / 2, seed % 2 == 0);
        if marks[e0][usize::from(!fwd0)] {
            continue;
        }
        let mut cycle = Vec::new();
        let (mut e, mut fwd) = (e0, fwd0);
        loop {
            if marks[e][usize::from(!fwd)] {
                return Err(Error::topology(format!("edge {} traversed twice", e + 1)));
            }
            marks[e][usize::from(!fwd)] = true;
            cycle.push(Dart { edge: e, forward: fwd });
            let head = if fwd { ev[e][1] } else { ev[e][0] };
            // clockwise-next petal after the reversed incoming edge
            let petals = &corolla[head];
            let k = slot(head, e);
            let next = petals[(k + petals.len() - 1) % petals.len()].1;
            fwd = ev[next][0] == head;
            e = next;
            if (e, fwd) == (e0, fwd0) {
                break;
            }
        }
        // an edge seen twice in one cycle is walked on both sides
        let mut seen = std::collections::HashSet::new();
        if let Some(d) = cycle.iter().find(|d| !seen.insert(d.edge)) {
            return Err(Error::topology(format!("edge {} is a bridge of the planar graph", d.edge + 1)));
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

pub(crate) fn cycles_matrix(nedges: usize, cycles: &[Vec<Dart>]) -> SparseSignedMatrix {
    let triplets = cycles
        .iter()
        .enumerate()
        .flat_map(|(c, cycle)| cycle.iter().map(move |d| (d.edge, c, if d.forward { 1 } else { -1 })));
    SparseSignedMatrix::from_triplets(nedges, cycles.len(), triplets).expect("valid cycles")
}

/// Topological gift wrapping in the plane: the signed 1-cycles of all faces
/// of the subdivision, one column per face including each component's
/// outer face.
pub fn tgw2d(d1: &SparseSignedMatrix, v: &[Point2]) -> Result<SparseSignedMatrix> {
    if d1.nrows() != v.len() {
        return Err(Error::dim(format!("d1 has {} rows for {} vertices", d1.nrows(), v.len())));
    }
    let ev = edge_endpoints(d1)?;
    let cycles = face_cycles(&ev, v)?;
    Ok(cycles_matrix(ev.len(), &cycles))
}

/// Vertex loop traced by a dart cycle.
pub fn cycle_vertices(ev: &[[usize; 2]], cycle: &[Dart]) -> Vec<usize> {
    cycle.iter().map(|d| if d.forward { ev[d.edge][0] } else { ev[d.edge][1] }).collect()
}
