use super::{cross2, signed_area, Point2};
use crate::error::{Error, Result};

/// Ear-clipping triangulation of a polygon with holes. Vertex indices refer
/// to the concatenation of `outer` followed by every hole in order. Holes
/// are joined to the outer loop by bridge diagonals before clipping. The
/// triangles share the orientation of `outer`.
pub fn triangulate_face(outer: &[Point2], holes: &[Vec<Point2>]) -> Result<Vec<[usize; 3]>> {
    if outer.len() < 3 {
        return Err(Error::degenerate("outer loop needs at least three vertices"));
    }
    let mut pts: Vec<Point2> = outer.to_vec();
    let mut loops: Vec<Vec<usize>> = vec![(0..outer.len()).collect()];
    for h in holes {
        if h.len() < 3 {
            return Err(Error::degenerate("hole loop needs at least three vertices"));
        }
        let start = pts.len();
        pts.extend_from_slice(h);
        loops.push((start..pts.len()).collect());
    }

    let diag = {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in &pts {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        super::dist2(lo, hi)
    };
    let area_tol = 1e-14 * diag * diag;
    let outer_area = signed_area(outer);
    if outer_area.abs() <= area_tol {
        return Err(Error::degenerate("outer loop has zero area"));
    }
    check_simple(&pts, &loops, diag)?;

    let flip = outer_area < 0.0;
    if flip {
        loops[0].reverse();
    }
    for l in loops.iter_mut().skip(1) {
        let a = signed_area(&l.iter().map(|&i| pts[i]).collect::<Vec<_>>());
        if a > 0.0 {
            l.reverse();
        }
    }

    let mut ring = loops[0].clone();
    let mut hole_order: Vec<Vec<usize>> = loops[1..].to_vec();
    let rightmost = |l: &[usize]| -> usize {
        (0..l.len())
            .max_by(|&a, &b| {
                pts[l[a]][0].total_cmp(&pts[l[b]][0]).then(pts[l[b]][1].total_cmp(&pts[l[a]][1]))
            })
            .expect("non-empty loop")
    };
    hole_order.sort_by(|a, b| pts[b[rightmost(b)]][0].total_cmp(&pts[a[rightmost(a)]][0]));
    for hole in hole_order {
        let mi = rightmost(&hole);
        let m = hole[mi];
        let pi = bridge_target(&pts, &ring, pts[m])
            .ok_or_else(|| Error::degenerate("hole is not inside the outer loop"))?;
        let p = ring[pi];
        let mut spliced = Vec::with_capacity(ring.len() + hole.len() + 2);
        spliced.extend_from_slice(&ring[..=pi]);
        spliced.extend((0..=hole.len()).map(|k| hole[(mi + k) % hole.len()]));
        spliced.push(p);
        spliced.extend_from_slice(&ring[pi + 1..]);
        ring = spliced;
    }

    let mut tris = ear_clip(&pts, ring, area_tol);
    if flip {
        for t in &mut tris {
            t.swap(1, 2);
        }
    }
    Ok(tris)
}

fn proper_cross(a: Point2, b: Point2, c: Point2, d: Point2, tol: f64) -> bool {
    let d1 = cross2(a, b, c);
    let d2 = cross2(a, b, d);
    let d3 = cross2(c, d, a);
    let d4 = cross2(c, d, b);
    ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol))
        && ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol))
}

fn check_simple(pts: &[Point2], loops: &[Vec<usize>], diag: f64) -> Result<()> {
    let tol = 1e-12 * diag * diag;
    let edges: Vec<(usize, usize)> =
        loops.iter().flat_map(|l| (0..l.len()).map(move |i| (l[i], l[(i + 1) % l.len()]))).collect();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if proper_cross(pts[a], pts[b], pts[c], pts[d], tol) {
                return Err(Error::degenerate(format!(
                    "self-intersecting loop: edges ({}, {}) and ({}, {}) cross",
                    a + 1,
                    b + 1,
                    c + 1,
                    d + 1
                )));
            }
        }
    }
    Ok(())
}

/// Position in `ring` of a vertex visible from the hole vertex `m`.
fn bridge_target(pts: &[Point2], ring: &[usize], m: Point2) -> Option<usize> {
    let n = ring.len();
    let mut best: Option<(f64, usize)> = None;
    for i in 0..n {
        let (a, b) = (pts[ring[i]], pts[ring[(i + 1) % n]]);
        if (a[1] <= m[1] && m[1] <= b[1]) || (b[1] <= m[1] && m[1] <= a[1]) {
            let x = if a[1] == b[1] {
                a[0].max(b[0])
            } else {
                a[0] + (m[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0])
            };
            if x >= m[0] && best.is_none_or(|(bx, _)| x < bx) {
                let pick = if a[0] >= b[0] { i } else { (i + 1) % n };
                best = Some((x, pick));
            }
        }
    }
    let (ix, mut pick) = best?;
    let p = pts[ring[pick]];
    if p[1] != m[1] || p[0] != ix {
        // a vertex inside triangle (m, i, p) may hide p; take the one with
        // the smallest angle to the ray
        let i_pt = [ix, m[1]];
        let (tri_a, tri_b) = if p[1] < m[1] { (p, i_pt) } else { (i_pt, p) };
        let mut best_key = (f64::INFINITY, f64::INFINITY);
        for (k, &v) in ring.iter().enumerate() {
            let q = pts[v];
            if q[0] < m[0] {
                continue;
            }
            if in_triangle(m, tri_a, tri_b, q) {
                let key = ((q[1] - m[1]).abs().atan2(q[0] - m[0]), super::dist2(q, m));
                if key < best_key {
                    best_key = key;
                    pick = k;
                }
            }
        }
    }
    // a vertex repeated by earlier bridges: choose the copy whose wedge holds m
    let target = pts[ring[pick]];
    let copies: Vec<usize> = (0..n).filter(|&k| pts[ring[k]] == target).collect();
    if copies.len() > 1 {
        for &k in &copies {
            let prev = pts[ring[(k + n - 1) % n]];
            let next = pts[ring[(k + 1) % n]];
            if in_wedge(prev, target, next, m) {
                return Some(k);
            }
        }
    }
    Some(pick)
}

// wedge at `b` swept counterclockwise from direction b->c to b->a
fn in_wedge(a: Point2, b: Point2, c: Point2, p: Point2) -> bool {
    if cross2(a, b, c) >= 0.0 {
        cross2(b, c, p) >= 0.0 && cross2(b, p, a) >= 0.0
    } else {
        !(cross2(b, a, p) > 0.0 && cross2(b, p, c) > 0.0)
    }
}

fn in_triangle(a: Point2, b: Point2, c: Point2, p: Point2) -> bool {
    let (d1, d2, d3) = (cross2(a, b, p), cross2(b, c, p), cross2(c, a, p));
    let neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
    let pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
    !(neg && pos)
}

fn ear_clip(pts: &[Point2], mut ring: Vec<usize>, area_tol: f64) -> Vec<[usize; 3]> {
    let mut tris = Vec::with_capacity(ring.len().saturating_sub(2));
    'outer: while ring.len() > 3 {
        let n = ring.len();
        for i in 0..n {
            let (a, b, c) = (ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]);
            let (pa, pb, pc) = (pts[a], pts[b], pts[c]);
            if cross2(pa, pb, pc) <= area_tol {
                continue;
            }
            let blocked = ring.iter().any(|&v| {
                let q = pts[v];
                q != pa && q != pb && q != pc && in_triangle(pa, pb, pc, q)
            });
            if !blocked {
                tris.push([a, b, c]);
                ring.remove(i);
                continue 'outer;
            }
        }
        // no clean ear: drop zero-area spikes left by bridges, else force
        // the most convex vertex
        if let Some(i) = (0..n).find(|&i| {
            let (pa, pb, pc) = (pts[ring[(i + n - 1) % n]], pts[ring[i]], pts[ring[(i + 1) % n]]);
            cross2(pa, pb, pc).abs() <= area_tol
                && ((pa[0] - pb[0]) * (pc[0] - pb[0]) + (pa[1] - pb[1]) * (pc[1] - pb[1])) > 0.0
        }) {
            ring.remove(i);
            continue;
        }
        let best = (0..n)
            .map(|i| (i, cross2(pts[ring[(i + n - 1) % n]], pts[ring[i]], pts[ring[(i + 1) % n]])))
            .max_by(|x, y| x.1.total_cmp(&y.1));
        match best {
            Some((i, c)) if c > area_tol => {
                log::warn!("triangulation forced a blocked ear; output may overlap");
                tris.push([ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]]);
                ring.remove(i);
            }
            _ => break,
        }
    }
    if ring.len() == 3 && cross2(pts[ring[0]], pts[ring[1]], pts[ring[2]]) > area_tol {
        tris.push([ring[0], ring[1], ring[2]]);
    }
    tris
}

#[cfg(test)]
mod tests {
    use super::*;

    fn area(pts: &[Point2], tris: &[[usize; 3]]) -> f64 {
        tris.iter().map(|t| cross2(pts[t[0]], pts[t[1]], pts[t[2]]) / 2.0).sum()
    }

    fn concat(outer: &[Point2], holes: &[Vec<Point2>]) -> Vec<Point2> {
        let mut v = outer.to_vec();
        for h in holes {
            v.extend_from_slice(h);
        }
        v
    }

    fn sq(x0: f64, y0: f64, s: f64) -> Vec<Point2> {
        vec![[x0, y0], [x0 + s, y0], [x0 + s, y0 + s], [x0, y0 + s]]
    }

    #[test]
    fn convex_quad() {
        let q = sq(0.0, 0.0, 1.0);
        let t = triangulate_face(&q, &[]).unwrap();
        assert_eq!(t.len(), 2);
        assert!((area(&q, &t) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_triangle() {
        let tri = vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let t = triangulate_face(&tri, &[]).unwrap();
        assert_eq!(t.len(), 1);
        assert!((area(&tri, &t) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn square_with_square_hole() {
        let outer = sq(0.0, 0.0, 3.0);
        let holes = vec![sq(1.0, 1.0, 1.0)];
        let t = triangulate_face(&outer, &holes).unwrap();
        assert_eq!(t.len(), 8);
        assert!((area(&concat(&outer, &holes), &t) - 8.0).abs() < 1e-9);
    }

    #[test]
    fn clockwise_outer_keeps_orientation() {
        let mut outer = sq(0.0, 0.0, 2.0);
        outer.reverse();
        let t = triangulate_face(&outer, &[]).unwrap();
        assert!((area(&outer, &t) + 4.0).abs() < 1e-12);
    }

    #[test]
    fn two_holes_and_collinear_points() {
        let outer = vec![[0.0, 0.0], [2.0, 0.0], [4.0, 0.0], [6.0, 0.0], [6.0, 3.0], [3.0, 3.0], [0.0, 3.0]];
        let holes = vec![sq(1.0, 1.0, 1.0), sq(4.0, 1.0, 1.0)];
        let t = triangulate_face(&outer, &holes).unwrap();
        assert!((area(&concat(&outer, &holes), &t) - 16.0).abs() < 1e-9);
        assert!(t.iter().all(|tr| {
            let p = concat(&outer, &holes);
            cross2(p[tr[0]], p[tr[1]], p[tr[2]]) > 0.0
        }));
    }

    #[test]
    fn self_intersection_rejected() {
        let bow = vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]];
        assert!(triangulate_face(&bow, &[]).is_err());
    }
}
