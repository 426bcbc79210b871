use super::{add, cross, scale, sub, PlaneFrame, Point2, Point3};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Closes directed `(tail, head)` edges into vertex loops.
pub fn directed_loops(edges: &[[usize; 2]]) -> Result<Vec<Vec<usize>>> {
    let mut out_of: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &[a, _]) in edges.iter().enumerate() {
        out_of.entry(a).or_default().push(i);
    }
    let mut used = vec![false; edges.len()];
    let mut loops = Vec::new();
    for start in 0..edges.len() {
        if used[start] {
            continue;
        }
        let origin = edges[start][0];
        let mut lp = Vec::new();
        let mut e = start;
        loop {
            used[e] = true;
            lp.push(edges[e][0]);
            let head = edges[e][1];
            if head == origin {
                break;
            }
            e = *out_of
                .get(&head)
                .and_then(|c| c.iter().find(|&&x| !used[x]))
                .ok_or_else(|| Error::topology(format!("open chain at vertex {}", head + 1)))?;
        }
        loops.push(lp);
    }
    Ok(loops)
}

/// Closes unoriented edges into vertex loops; every vertex must have even
/// degree.
pub fn undirected_loops(edges: &[[usize; 2]]) -> Result<Vec<Vec<usize>>> {
    let mut inc: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &[a, b]) in edges.iter().enumerate() {
        inc.entry(a).or_default().push(i);
        inc.entry(b).or_default().push(i);
    }
    let mut used = vec![false; edges.len()];
    let mut loops = Vec::new();
    for start in 0..edges.len() {
        if used[start] {
            continue;
        }
        let origin = edges[start][0];
        let mut lp = vec![origin];
        let mut e = start;
        let mut at = edges[start][1];
        used[e] = true;
        while at != origin {
            lp.push(at);
            e = *inc[&at]
                .iter()
                .find(|&&x| !used[x])
                .ok_or_else(|| Error::topology(format!("open chain at vertex {}", at + 1)))?;
            used[e] = true;
            at = if edges[e][0] == at { edges[e][1] } else { edges[e][0] };
        }
        loops.push(lp);
    }
    Ok(loops)
}

/// Area vector of oriented planar loops; its length is the enclosed area.
pub fn newell_area(v: &[Point3], loops: &[Vec<usize>]) -> Point3 {
    let all: Vec<Point3> = loops.iter().flatten().map(|&i| v[i]).collect();
    let c = super::centroid3(&all);
    let mut n = [0.0; 3];
    for lp in loops {
        for i in 0..lp.len() {
            let (p, q) = (v[lp[i]], v[lp[(i + 1) % lp.len()]]);
            n = add(n, cross(sub(p, c), sub(q, c)));
        }
    }
    scale(n, 0.5)
}

/// Triangulates planar loops seen from the side `normal` points to. The
/// loop with the largest area is the outer boundary; the others are holes.
/// Triangles are counterclockwise around `normal` when the outer loop is.
pub fn triangulate_loops(v: &[Point3], loops: &[Vec<usize>], normal: Point3) -> Result<Vec<[usize; 3]>> {
    if loops.is_empty() {
        return Ok(Vec::new());
    }
    let frame = PlaneFrame::from_normal(v[loops[0][0]], normal)?;
    let flat: Vec<Vec<Point2>> =
        loops.iter().map(|l| l.iter().map(|&i| frame.to_local2(v[i])).collect()).collect();
    let outer = (0..flat.len())
        .max_by(|&a, &b| super::signed_area(&flat[a]).abs().total_cmp(&super::signed_area(&flat[b]).abs()))
        .expect("non-empty");
    let order: Vec<usize> = std::iter::once(outer).chain((0..flat.len()).filter(|&i| i != outer)).collect();
    let holes: Vec<Vec<Point2>> = order[1..].iter().map(|&i| flat[i].clone()).collect();
    let ids: Vec<usize> = order.iter().flat_map(|&i| loops[i].iter().copied()).collect();
    let tris = super::triangulate_face(&flat[outer], &holes)?;
    Ok(tris.iter().map(|t| [ids[t[0]], ids[t[1]], ids[t[2]]]).collect())
}
