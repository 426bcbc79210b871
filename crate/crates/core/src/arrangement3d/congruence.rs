use std::collections::{BTreeMap, HashMap};

use super::fragment::LocalComplex;
use crate::error::{Error, Result};
use crate::geometry::{kd_nearest_within, Point3};
use crate::sparse::{check_exactness, Exactness, SparseSignedMatrix};

/// Block-diagonal collection of local complexes.
#[derive(Clone, Debug)]
pub struct AccumulatorPair {
    pub w: Vec<Point3>,
    pub delta0: SparseSignedMatrix,
    pub delta1: SparseSignedMatrix,
    /// First vertex of every block in `w`.
    pub vertex_offsets: Vec<usize>,
}

pub fn accumulate(locals: &[LocalComplex]) -> AccumulatorPair {
    let mut w = Vec::new();
    let mut vertex_offsets = Vec::with_capacity(locals.len());
    for lc in locals {
        vertex_offsets.push(w.len());
        w.extend_from_slice(&lc.v);
    }
    let d0: Vec<SparseSignedMatrix> = locals.iter().map(|l| l.delta0.clone()).collect();
    let d1: Vec<SparseSignedMatrix> = locals.iter().map(|l| l.delta1.clone()).collect();
    AccumulatorPair {
        w,
        delta0: SparseSignedMatrix::block_diag(&d0),
        delta1: SparseSignedMatrix::block_diag(&d1),
        vertex_offsets,
    }
}

/// Global cellular complex given by coboundary matrices.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub v: Vec<Point3>,
    pub ev: Vec<[usize; 2]>,
    /// Edges by vertices.
    pub delta0: SparseSignedMatrix,
    /// Faces by edges.
    pub delta1: SparseSignedMatrix,
}

/// Merges `eps`-near vertices into class centroids, then identifies edges
/// with the same endpoints and faces with the same edges. Edges that
/// collapse to a point are dropped, and so are faces left without edges.
pub fn chain_congruence(acc: &AccumulatorPair, eps: f64) -> Result<QuotientComplex> {
    if acc.w.is_empty() {
        return Ok(QuotientComplex {
            v: Vec::new(),
            ev: Vec::new(),
            delta0: SparseSignedMatrix::zeros(0, 0),
            delta1: SparseSignedMatrix::zeros(0, 0),
        });
    }
    let classes = kd_nearest_within(&acc.w, eps);

    // edges: columns of the transpose are the accumulated edges
    let d0t = acc.delta0.transpose();
    let mut edge_key: HashMap<(usize, usize), usize> = HashMap::new();
    let mut ev: Vec<[usize; 2]> = Vec::new();
    let mut edge_map: Vec<Option<(usize, i32)>> = Vec::with_capacity(d0t.ncols());
    let mut collapsed = 0usize;
    for e in 0..d0t.ncols() {
        let (mut tail, mut head) = (usize::MAX, usize::MAX);
        for (x, s) in d0t.column(e) {
            if s < 0 {
                tail = classes.labels[x];
            } else {
                head = classes.labels[x];
            }
        }
        if tail == usize::MAX || head == usize::MAX {
            return Err(Error::invalid(format!("accumulated edge {} is not a 1-cell", e + 1)));
        }
        if tail == head {
            collapsed += 1;
            edge_map.push(None);
            continue;
        }
        let id = *edge_key.entry((tail.min(head), tail.max(head))).or_insert_with(|| {
            ev.push([tail, head]);
            ev.len() - 1
        });
        let sign = if ev[id] == [tail, head] { 1 } else { -1 };
        edge_map.push(Some((id, sign)));
    }
    if collapsed > 0 {
        log::warn!("{collapsed} edges collapsed to a point and were dropped");
    }

    let d1t = acc.delta1.transpose();
    let mut face_key: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut faces: Vec<Vec<(usize, i32)>> = Vec::new();
    let mut dropped = 0usize;
    for f in 0..d1t.ncols() {
        let mut col: BTreeMap<usize, i32> = BTreeMap::new();
        for (e, s) in d1t.column(f) {
            if let Some((id, sign)) = edge_map[e] {
                *col.entry(id).or_insert(0) += i32::from(s) * sign;
            }
        }
        let col: Vec<(usize, i32)> = col.into_iter().filter(|&(_, s)| s != 0).collect();
        if col.is_empty() {
            dropped += 1;
            continue;
        }
        let key: Vec<usize> = col.iter().map(|&(e, _)| e).collect();
        if let Some(&existing) = face_key.get(&key) {
            let same = faces[existing].iter().zip(&col).all(|(a, b)| a.1 == b.1 || a.1 == -b.1);
            if !same {
                log::warn!("congruent faces differ in edge multiplicities");
            }
            continue;
        }
        face_key.insert(key, faces.len());
        faces.push(col);
    }
    if dropped > 0 {
        log::warn!("{dropped} faces collapsed and were dropped");
    }

    // drop edges and vertices no face uses any more
    let mut edge_used = vec![false; ev.len()];
    for col in &faces {
        for &(e, _) in col {
            edge_used[e] = true;
        }
    }
    let mut vert_new = vec![usize::MAX; classes.len()];
    let mut edge_new = vec![usize::MAX; ev.len()];
    let (mut v, mut new_ev) = (Vec::new(), Vec::new());
    for (e, &[a, b]) in ev.iter().enumerate() {
        if !edge_used[e] {
            continue;
        }
        let ends = [a, b].map(|x| {
            if vert_new[x] == usize::MAX {
                vert_new[x] = v.len();
                v.push(classes.centroids[x]);
            }
            vert_new[x]
        });
        edge_new[e] = new_ev.len();
        new_ev.push(ends);
    }

    let delta0 = SparseSignedMatrix::from_triplets(
        new_ev.len(),
        v.len(),
        new_ev.iter().enumerate().flat_map(|(e, &[a, b])| [(e, a, -1), (e, b, 1)]),
    )?;
    let delta1 = SparseSignedMatrix::from_triplets(
        faces.len(),
        new_ev.len(),
        faces
            .iter()
            .enumerate()
            .flat_map(|(f, col)| col.iter().map(move |&(e, s)| (f, e, s)))
            .map(|(f, e, s)| (f, edge_new[e], s)),
    )?;
    if let Exactness::Violated { row, col, value } = check_exactness(&delta1, &delta0)? {
        return Err(Error::topology(format!(
            "quotient complex is not exact: face {} has boundary {} at vertex {}",
            row + 1,
            value,
            col + 1
        )));
    }
    Ok(QuotientComplex { v, ev: new_ev, delta0, delta1 })
}
