use std::collections::VecDeque;

use crate::arrangement2d::edge_endpoints;
use crate::error::{Error, Result};
use crate::geometry::{cross, directed_loops, dot, newell_area, normalize, scale, sub, Point3};
use crate::sparse::SparseSignedMatrix;

/// Signed boundary loops of face `f` as vertex sequences.
pub(crate) fn face_loops(
    d2: &SparseSignedMatrix,
    ev: &[[usize; 2]],
    f: usize,
    sign: i8,
) -> Result<Vec<Vec<usize>>> {
    let directed: Vec<[usize; 2]> = d2
        .column(f)
        .map(|(e, s)| {
            let [a, b] = ev[e];
            if s * sign > 0 {
                [a, b]
            } else {
                [b, a]
            }
        })
        .collect();
    directed_loops(&directed).map_err(|e| Error::topology(format!("face {}: {e}", f + 1)))
}

/// Area vectors of all faces, oriented by their `d2` columns.
pub(crate) fn face_areas(d2: &SparseSignedMatrix, ev: &[[usize; 2]], v: &[Point3]) -> Result<Vec<Point3>> {
    (0..d2.ncols()).map(|f| Ok(newell_area(v, &face_loops(d2, ev, f, 1)?))).collect()
}

/// Topological gift wrapping in space. Every face is used twice, once per
/// side; each output column is a closed shell with normals pointing out of
/// the cell it bounds.
pub fn tgw3d(d1: &SparseSignedMatrix, d2: &SparseSignedMatrix, v: &[Point3]) -> Result<SparseSignedMatrix> {
    if d1.ncols() != d2.nrows() || d1.nrows() != v.len() {
        return Err(Error::dim("d1, d2 and vertices do not chain"));
    }
    let ev = edge_endpoints(d1)?;
    let normals: Vec<Point3> = face_areas(d2, &ev, v)?
        .into_iter()
        .enumerate()
        .map(|(f, a)| normalize(a).ok_or_else(|| Error::degenerate(format!("face {} has zero area", f + 1))))
        .collect::<Result<_>>()?;

    // faces around every edge, counterclockwise about the edge direction
    let d2t = d2.transpose();
    let mut corolla: Vec<Vec<(usize, i8)>> = Vec::with_capacity(ev.len());
    for (e, &[a, b]) in ev.iter().enumerate() {
        let petals: Vec<(usize, i8)> = d2t.column(e).collect();
        if petals.len() == 1 {
            return Err(Error::topology(format!(
                "surface is not watertight: edge {} bounds a single face",
                e + 1
            )));
        }
        let d = normalize(sub(v[b], v[a]))
            .ok_or_else(|| Error::degenerate(format!("edge {} has zero length", e + 1)))?;
        let helper = if d[0].abs() < 0.6 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let r1 = normalize(cross(d, helper)).expect("helper not parallel");
        let r2 = cross(d, r1);
        let mut sorted: Vec<(f64, usize, i8)> = petals
            .iter()
            .map(|&(f, s)| {
                let u = cross(normals[f], scale(d, f64::from(s)));
                (dot(u, r2).atan2(dot(u, r1)), f, s)
            })
            .collect();
        sorted.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        corolla.push(sorted.into_iter().map(|(_, f, s)| (f, s)).collect());
    }

    let nf = d2.ncols();
    let node = |f: usize, s: i8| 2 * f + usize::from(s < 0);
    let mut shell_of = vec![usize::MAX; 2 * nf];
    let mut nshells = 0;
    let mut queue = VecDeque::new();
    for seed in 0..nf {
        for s in [1i8, -1] {
            if shell_of[node(seed, s)] != usize::MAX {
                continue;
            }
            shell_of[node(seed, s)] = nshells;
            queue.push_back((seed, s));
            while let Some((f, s)) = queue.pop_front() {
                for (e, sfe) in d2.column(f) {
                    let petals = &corolla[e];
                    let k = petals.iter().position(|p| p.0 == f).expect("incident face");
                    let m = petals.len();
                    let (g, sge, forward) = if s == -sfe {
                        let p = petals[(k + 1) % m];
                        (p.0, p.1, true)
                    } else {
                        let p = petals[(k + m - 1) % m];
                        (p.0, p.1, false)
                    };
                    let sg = if forward { sge } else { -sge };
                    if shell_of[node(g, sg)] == usize::MAX {
                        shell_of[node(g, sg)] = nshells;
                        queue.push_back((g, sg));
                    }
                }
            }
            nshells += 1;
        }
    }
    for f in 0..nf {
        if shell_of[node(f, 1)] == shell_of[node(f, -1)] {
            return Err(Error::topology(format!("both sides of face {} fall in one shell", f + 1)));
        }
    }
    SparseSignedMatrix::from_triplets(
        nf,
        nshells,
        (0..nf).flat_map(|f| [(f, shell_of[node(f, 1)], 1), (f, shell_of[node(f, -1)], -1)]),
    )
}
