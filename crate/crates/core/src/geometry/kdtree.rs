use super::{dist, Point3};

/// Balanced kd-tree over 3D points supporting radius queries.
#[derive(Clone, Debug)]
pub struct KdTree {
    points: Vec<Point3>,
    // permutation of point ids; the subtree of a node is a contiguous range
    order: Vec<usize>,
}

impl KdTree {
    pub fn new(points: &[Point3]) -> Self {
        let mut order: Vec<usize> = (0..points.len()).collect();
        build(points, &mut order, 0);
        KdTree { points: points.to_vec(), order }
    }

    /// Ids of points within `radius` of `q` (inclusive), sorted.
    pub fn within(&self, q: Point3, radius: f64) -> Vec<usize> {
        let mut out = Vec::new();
        self.search(&self.order, 0, q, radius, &mut out);
        out.sort_unstable();
        out
    }

    fn search(&self, slice: &[usize], depth: usize, q: Point3, r: f64, out: &mut Vec<usize>) {
        if slice.is_empty() {
            return;
        }
        let axis = depth % 3;
        let mid = slice.len() / 2;
        let id = slice[mid];
        let p = self.points[id];
        if dist(p, q) <= r {
            out.push(id);
        }
        let delta = q[axis] - p[axis];
        if delta - r <= 0.0 {
            self.search(&slice[..mid], depth + 1, q, r, out);
        }
        if delta + r >= 0.0 {
            self.search(&slice[mid + 1..], depth + 1, q, r, out);
        }
    }
}

fn build(points: &[Point3], slice: &mut [usize], depth: usize) {
    if slice.len() <= 1 {
        return;
    }
    let axis = depth % 3;
    let mid = slice.len() / 2;
    slice.select_nth_unstable_by(mid, |&a, &b| points[a][axis].total_cmp(&points[b][axis]).then(a.cmp(&b)));
    let (left, right) = slice.split_at_mut(mid);
    build(points, left, depth + 1);
    build(points, &mut right[1..], depth + 1);
}

/// Vertex classes of the nearness relation and their centroids.
#[derive(Clone, Debug, PartialEq)]
pub struct Clustering {
    /// Class of every input point. Classes are numbered by first occurrence.
    pub labels: Vec<usize>,
    pub centroids: Vec<Point3>,
}

impl Clustering {
    pub fn len(&self) -> usize {
        self.centroids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centroids.is_empty()
    }

    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut m = vec![Vec::new(); self.centroids.len()];
        for (i, &l) in self.labels.iter().enumerate() {
            m[l].push(i);
        }
        m
    }
}

/// Partitions points into classes of `eps`-near points: two points are near
/// when their distance is at most `2 * eps`, and classes are closed under
/// chaining. Classes wider than `2 * eps` are kept and logged.
pub fn kd_nearest_within(points: &[Point3], eps: f64) -> Clustering {
    assert!(eps > 0.0, "clustering radius must be positive");
    let tree = KdTree::new(points);
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, &p) in points.iter().enumerate() {
        for j in tree.within(p, 2.0 * eps) {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut labels = vec![usize::MAX; points.len()];
    let mut root_label = vec![usize::MAX; points.len()];
    let mut sums: Vec<(Point3, usize)> = Vec::new();
    for i in 0..points.len() {
        let r = find(&mut parent, i);
        if root_label[r] == usize::MAX {
            root_label[r] = sums.len();
            sums.push(([0.0; 3], 0));
        }
        let l = root_label[r];
        labels[i] = l;
        let (s, n) = &mut sums[l];
        *s = super::add(*s, points[i]);
        *n += 1;
    }
    let centroids: Vec<Point3> = sums.iter().map(|&(s, n)| super::scale(s, 1.0 / n as f64)).collect();

    if log::log_enabled!(log::Level::Warn) {
        for (l, &c) in centroids.iter().enumerate() {
            let wide = labels
                .iter()
                .enumerate()
                .filter(|&(_, &x)| x == l)
                .any(|(i, _)| dist(points[i], c) > 2.0 * eps);
            if wide {
                log::warn!("vertex class {} is wider than 2*eps = {:e}", l + 1, 2.0 * eps);
            }
        }
    }
    Clustering { labels, centroids }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tiny_offset_merges() {
        let c = kd_nearest_within(&[[0.0; 3], [1e-9, 0.0, 0.0]], 1e-6);
        assert_eq!(c.len(), 1);
        assert_eq!(c.labels, vec![0, 0]);
    }

    #[test]
    fn unit_distance_separates() {
        let c = kd_nearest_within(&[[0.0; 3], [1.0, 0.0, 0.0]], 1e-6);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn jittered_sites_recover_ground_truth() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sites: Vec<Point3> = (0..10).map(|_| std::array::from_fn(|_| rng.gen_range(-5.0..5.0))).collect();
        let mut points = Vec::new();
        let mut truth = Vec::new();
        for _ in 0..50 {
            for (s, site) in sites.iter().enumerate() {
                let p: Point3 = std::array::from_fn(|k| site[k] + rng.gen_range(-1e-8..1e-8));
                points.push(p);
                truth.push(s);
            }
        }
        let c = kd_nearest_within(&points, 1e-6);
        assert_eq!(c.len(), 10);
        for (i, &t) in truth.iter().enumerate() {
            assert_eq!(c.labels[i], c.labels[t], "point {i} misassigned");
            assert!(dist(c.centroids[c.labels[i]], sites[t]) < 1e-7);
        }
    }

    #[test]
    fn radius_query_matches_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<Point3> = (0..300).map(|_| std::array::from_fn(|_| rng.gen_range(0.0..1.0))).collect();
        let tree = KdTree::new(&pts);
        for q in pts.iter().take(30) {
            let brute: Vec<usize> = (0..pts.len()).filter(|&i| dist(pts[i], *q) <= 0.2).collect();
            assert_eq!(tree.within(*q, 0.2), brute);
        }
    }
}
