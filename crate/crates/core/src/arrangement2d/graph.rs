use crate::geometry::{build_index, kd_nearest_within, BBox, Point2};

/// Embedded planar graph: straight edges meeting only at shared endpoints.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PlanarGraph {
    pub v: Vec<Point2>,
    pub ev: Vec<[usize; 2]>,
}

impl PlanarGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.v.len()];
        for &[a, b] in &self.ev {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Keeps the listed edges and drops vertices no kept edge uses.
    pub fn restrict_edges(&self, keep: impl Fn(usize) -> bool) -> PlanarGraph {
        let mut remap = vec![usize::MAX; self.v.len()];
        let mut out = PlanarGraph::default();
        for (e, &[a, b]) in self.ev.iter().enumerate() {
            if !keep(e) {
                continue;
            }
            let mut id = |x: usize, out: &mut PlanarGraph| {
                if remap[x] == usize::MAX {
                    remap[x] = out.v.len();
                    out.v.push(self.v[x]);
                }
                remap[x]
            };
            let (na, nb) = (id(a, &mut out), id(b, &mut out));
            out.ev.push([na, nb]);
        }
        out
    }
}

fn seg_box(a: Point2, b: Point2, tol: f64) -> BBox {
    BBox::new([a[0].min(b[0]), a[1].min(b[1]), 0.0], [a[0].max(b[0]), a[1].max(b[1]), 0.0]).expanded(tol)
}

/// Splits a segment soup at all pairwise intersections. Points closer than
/// `eps` are identified, collinear overlaps are split at every endpoint
/// projection, and duplicate edges are removed.
pub fn intersect_segments(segments: &[(Point2, Point2)], eps: f64) -> PlanarGraph {
    let segs: Vec<(Point2, Point2)> =
        segments.iter().copied().filter(|&(a, b)| crate::geometry::dist2(a, b) > eps).collect();
    let boxes: Vec<BBox> = segs.iter().map(|&(a, b)| seg_box(a, b, eps)).collect();
    let index = build_index(&boxes);

    let mut params: Vec<Vec<f64>> = vec![vec![0.0, 1.0]; segs.len()];
    for i in 0..segs.len() {
        for j in index.query(&boxes[i]) {
            if j <= i {
                continue;
            }
            let (ti, tj) = segment_params(segs[i], segs[j], eps);
            params[i].extend(ti);
            params[j].extend(tj);
        }
    }

    let mut points: Vec<[f64; 3]> = Vec::new();
    let mut chains: Vec<Vec<usize>> = Vec::with_capacity(segs.len());
    for (k, &(a, b)) in segs.iter().enumerate() {
        let ts = &mut params[k];
        ts.sort_by(f64::total_cmp);
        let mut ids = Vec::with_capacity(ts.len());
        for &t in ts.iter() {
            ids.push(points.len());
            points.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), 0.0]);
        }
        chains.push(ids);
    }
    if points.is_empty() {
        return PlanarGraph::default();
    }
    let clusters = kd_nearest_within(&points, eps);

    let mut ev: Vec<[usize; 2]> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for chain in &chains {
        let labels: Vec<usize> = chain.iter().map(|&p| clusters.labels[p]).collect();
        for w in labels.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a != b && seen.insert((a.min(b), a.max(b))) {
                ev.push([a, b]);
            }
        }
    }
    PlanarGraph { v: clusters.centroids.iter().map(|c| [c[0], c[1]]).collect(), ev }
}

/// Parameters along each of two segments where the other one meets it.
fn segment_params(s: (Point2, Point2), r: (Point2, Point2), eps: f64) -> (Vec<f64>, Vec<f64>) {
    let (a, b) = s;
    let (c, d) = r;
    let u = [b[0] - a[0], b[1] - a[1]];
    let w = [d[0] - c[0], d[1] - c[1]];
    let (lu, lw) = (u[0].hypot(u[1]), w[0].hypot(w[1]));
    let denom = u[0] * w[1] - u[1] * w[0];
    let ac = [c[0] - a[0], c[1] - a[1]];
    let proj = |p: Point2, o: Point2, dir: [f64; 2], len: f64| {
        ((p[0] - o[0]) * dir[0] + (p[1] - o[1]) * dir[1]) / (len * len)
    };
    let near =
        |p: Point2, o: Point2, q: Point2| crate::geometry::predicates::point_segment_distance(p, o, q) <= eps;

    if denom.abs() <= 1e-12 * lu * lw {
        // parallel: only collinear overlaps matter
        let off = (ac[0] * u[1] - ac[1] * u[0]).abs() / lu;
        if off > eps {
            return (vec![], vec![]);
        }
        let mut ts = vec![];
        let mut us = vec![];
        for p in [c, d] {
            if near(p, a, b) {
                ts.push(proj(p, a, u, lu).clamp(0.0, 1.0));
            }
        }
        for p in [a, b] {
            if near(p, c, d) {
                us.push(proj(p, c, w, lw).clamp(0.0, 1.0));
            }
        }
        return (ts, us);
    }

    let t = (ac[0] * w[1] - ac[1] * w[0]) / denom;
    let v = (ac[0] * u[1] - ac[1] * u[0]) / denom;
    let (tt, tv) = (eps / lu, eps / lw);
    if t < -tt || t > 1.0 + tt || v < -tv || v > 1.0 + tv {
        // still record endpoints lying on the other segment within eps
        let mut ts = vec![];
        let mut us = vec![];
        for p in [c, d] {
            if near(p, a, b) {
                ts.push(proj(p, a, u, lu).clamp(0.0, 1.0));
            }
        }
        for p in [a, b] {
            if near(p, c, d) {
                us.push(proj(p, c, w, lw).clamp(0.0, 1.0));
            }
        }
        return (ts, us);
    }
    (vec![t.clamp(0.0, 1.0)], vec![v.clamp(0.0, 1.0)])
}

/// Removes every edge that lies on no cycle (bridges, including all
/// dangling trees) and the vertices left without edges.
pub fn regularize(graph: &PlanarGraph) -> PlanarGraph {
    let bridges = find_bridges(graph.v.len(), &graph.ev);
    graph.restrict_edges(|e| !bridges[e])
}

fn find_bridges(nv: usize, ev: &[[usize; 2]]) -> Vec<bool> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (e, &[a, b]) in ev.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    let mut is_bridge = vec![false; ev.len()];
    let mut disc = vec![usize::MAX; nv];
    let mut low = vec![0; nv];
    let mut time = 0;
    for root in 0..nv {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, edge used to enter, next adjacency slot)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (x, in_edge, ref mut slot)) = stack.last_mut() {
            if *slot < adj[x].len() {
                let (y, e) = adj[x][*slot];
                *slot += 1;
                if e == in_edge {
                    continue;
                }
                if disc[y] == usize::MAX {
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    stack.push((y, e, 0));
                } else {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[x]);
                    if low[x] > disc[p] {
                        is_bridge[in_edge] = true;
                    }
                }
            }
        }
    }
    is_bridge
}
