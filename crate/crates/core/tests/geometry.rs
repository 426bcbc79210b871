use chaincsg::geometry::{build_index, dist, kd_nearest_within, AffineMap, BBox};
use proptest::prelude::*;

fn boxes() -> impl Strategy<Value = Vec<BBox>> {
    prop::collection::vec((prop::array::uniform3(-10.0f64..10.0), prop::array::uniform3(0.0f64..4.0)), 1..40)
        .prop_map(|v| {
            v.into_iter()
                .map(|(lo, ext)| BBox::new(lo, [lo[0] + ext[0], lo[1] + ext[1], lo[2] + ext[2]]))
                .collect()
        })
}

proptest! {
    #[test]
    fn interval_index_matches_brute_force(bs in boxes(), q in 0usize..40) {
        let q = bs[q % bs.len()];
        let idx = build_index(&bs);
        let want: Vec<usize> = (0..bs.len())
            .filter(|&i| (0..3).all(|a| bs[i].min[a] <= q.max[a] && q.min[a] <= bs[i].max[a]))
            .collect();
        prop_assert_eq!(idx.query(&q), want);
    }

    #[test]
    fn clusters_close_under_nearness(
        pts in prop::collection::vec(prop::array::uniform3(0.0f64..1.0), 1..60),
        eps in 0.001f64..0.1,
    ) {
        let c = kd_nearest_within(&pts, eps);
        prop_assert_eq!(c.labels.len(), pts.len());
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                if dist(pts[i], pts[j]) <= 2.0 * eps {
                    prop_assert_eq!(c.labels[i], c.labels[j]);
                }
            }
        }
        // every class is connected by near pairs
        for m in c.members() {
            let mut reached = vec![m[0]];
            let mut k = 0;
            while k < reached.len() {
                let p = reached[k];
                for &q in &m {
                    if !reached.contains(&q) && dist(pts[p], pts[q]) <= 2.0 * eps {
                        reached.push(q);
                    }
                }
                k += 1;
            }
            prop_assert_eq!(reached.len(), m.len());
        }
    }

    #[test]
    fn affine_inverse_round_trips(
        t in prop::array::uniform3(-5.0f64..5.0),
        r in prop::array::uniform3(-3.0f64..3.0),
        s in prop::array::uniform3(0.2f64..3.0),
        p in prop::array::uniform3(-5.0f64..5.0),
    ) {
        let m = AffineMap::translation(t[0], t[1], t[2])
            .then_after(&AffineMap::rotation(r[0], r[1], r[2]))
            .then_after(&AffineMap::scaling(s[0], s[1], s[2]));
        let back = m.inverse().unwrap().apply(m.apply(p));
        prop_assert!(dist(back, p) < 1e-9);
    }
}

#[test]
fn distant_points_stay_apart() {
    let c = kd_nearest_within(&[[0.0; 3], [1.0, 0.0, 0.0], [1.0 + 1e-8, 0.0, 0.0]], 1e-6);
    assert_eq!(c.len(), 2);
    assert_eq!(c.labels, vec![0, 1, 1]);
}
