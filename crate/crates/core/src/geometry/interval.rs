use super::BBox;

/// Static centered interval tree over closed intervals.
#[derive(Clone, Debug, Default)]
pub struct IntervalTree {
    nodes: Vec<Node>,
    root: Option<usize>,
}

#[derive(Clone, Debug)]
struct Node {
    center: f64,
    // intervals straddling `center`, sorted by ascending low end
    by_lo: Vec<(f64, f64, usize)>,
    // same intervals, sorted by descending high end
    by_hi: Vec<(f64, f64, usize)>,
    left: Option<usize>,
    right: Option<usize>,
}

impl IntervalTree {
    pub fn new(intervals: &[(f64, f64, usize)]) -> Self {
        let mut tree = IntervalTree::default();
        tree.root = tree.build(intervals.to_vec());
        tree
    }

    fn build(&mut self, items: Vec<(f64, f64, usize)>) -> Option<usize> {
        if items.is_empty() {
            return None;
        }
        let mut ends: Vec<f64> = items.iter().flat_map(|&(lo, hi, _)| [lo, hi]).collect();
        ends.sort_by(f64::total_cmp);
        let center = ends[ends.len() / 2];

        let (mut here, mut left, mut right) = (Vec::new(), Vec::new(), Vec::new());
        for it in items {
            if it.1 < center {
                left.push(it);
            } else if it.0 > center {
                right.push(it);
            } else {
                here.push(it);
            }
        }
        let mut by_lo = here.clone();
        by_lo.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
        let mut by_hi = here;
        by_hi.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.2.cmp(&b.2)));

        let id = self.nodes.len();
        self.nodes.push(Node { center, by_lo, by_hi, left: None, right: None });
        let l = self.build(left);
        let r = self.build(right);
        self.nodes[id].left = l;
        self.nodes[id].right = r;
        Some(id)
    }

    /// Ids of intervals overlapping `[lo, hi]`, in unspecified order.
    pub fn query(&self, lo: f64, hi: f64, out: &mut Vec<usize>) {
        let mut stack: Vec<usize> = self.root.into_iter().collect();
        while let Some(n) = stack.pop() {
            let node = &self.nodes[n];
            if hi < node.center {
                out.extend(node.by_lo.iter().take_while(|it| it.0 <= hi).map(|it| it.2));
                stack.extend(node.left);
            } else if lo > node.center {
                out.extend(node.by_hi.iter().take_while(|it| it.1 >= lo).map(|it| it.2));
                stack.extend(node.right);
            } else {
                out.extend(node.by_lo.iter().map(|it| it.2));
                stack.extend(node.left);
                stack.extend(node.right);
            }
        }
    }
}

/// One interval tree per coordinate axis over a set of boxes.
#[derive(Clone, Debug, Default)]
pub struct IntervalTreeSet {
    trees: Vec<IntervalTree>,
    len: usize,
}

impl IntervalTreeSet {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Sorted ids of the boxes overlapping `query` on every axis.
    pub fn query(&self, query: &BBox) -> Vec<usize> {
        let mut result: Option<Vec<usize>> = None;
        for (axis, tree) in self.trees.iter().enumerate() {
            let mut hits = Vec::new();
            tree.query(query.min[axis], query.max[axis], &mut hits);
            hits.sort_unstable();
            result = Some(match result {
                None => hits,
                Some(prev) => intersect_sorted(&prev, &hits),
            });
            if result.as_ref().is_some_and(|r| r.is_empty()) {
                break;
            }
        }
        result.unwrap_or_default()
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Builds the per-axis interval trees; box `i` is reported as id `i`.
pub fn build_index(boxes: &[BBox]) -> IntervalTreeSet {
    let trees = (0..3)
        .map(|axis| {
            let ivs: Vec<(f64, f64, usize)> =
                boxes.iter().enumerate().map(|(i, b)| (b.min[axis], b.max[axis], i)).collect();
            IntervalTree::new(&ivs)
        })
        .collect();
    IntervalTreeSet { trees, len: boxes.len() }
}
