use chaincsg::sparse::{
    characteristic_matrix, check_exactness, euler_characteristic, signed_boundary1, unsigned_boundary2,
    Exactness,
};
use chaincsg::SparseSignedMatrix;
use proptest::prelude::*;

fn one_based(cells: &[&[usize]]) -> Vec<Vec<usize>> {
    cells.iter().map(|c| c.iter().map(|&x| x - 1).collect()).collect()
}

fn data1() -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let ev = one_based(&[
        &[1, 2],
        &[2, 3],
        &[4, 5],
        &[5, 6],
        &[7, 8],
        &[8, 9],
        &[10, 11],
        &[11, 12],
        &[1, 10],
        &[4, 7],
        &[6, 9],
        &[3, 12],
        &[2, 5],
        &[8, 11],
    ]);
    let fv = one_based(&[&[1, 2, 4, 5, 7, 8, 10, 11], &[2, 3, 5, 6, 8, 9, 11, 12], &[4, 5, 6, 7, 8, 9]]);
    (ev, fv)
}

// dense oracle: an edge bounds a face when both its vertices are on it
fn dense_ef(ev: &[Vec<usize>], fv: &[Vec<usize>]) -> Vec<Vec<i32>> {
    ev.iter().map(|e| fv.iter().map(|f| e.iter().all(|v| f.contains(v)) as i32).collect()).collect()
}

#[test]
fn data1_characteristic_matrices() {
    let (ev, fv) = data1();
    let k1 = characteristic_matrix(&ev).unwrap();
    let k2 = characteristic_matrix(&fv).unwrap();
    assert_eq!(k1.shape(), (14, 12));
    assert_eq!(k2.transpose().shape(), (12, 3));
    for (r, e) in ev.iter().enumerate() {
        for c in 0..12 {
            assert_eq!(k1.get(r, c), e.contains(&c) as i8);
        }
    }
    assert_eq!(k1.nnz(), 28);
    assert_eq!(k2.nnz(), 22);
}

#[test]
fn data1_boundary_chains() {
    let (ev, fv) = data1();
    let ef = unsigned_boundary2(&characteristic_matrix(&ev).unwrap(), &characteristic_matrix(&fv).unwrap())
        .unwrap();
    let oracle = dense_ef(&ev, &fv);
    let dense: Vec<Vec<i32>> = ef.to_dense().iter().map(|r| r.iter().map(|&x| x as i32).collect()).collect();
    assert_eq!(dense, oracle);

    let odd = |c: [i32; 3]| -> Vec<usize> {
        let b = ef.mul_vec(&c).unwrap();
        (0..b.len()).filter(|&i| b[i] % 2 != 0).map(|i| i + 1).collect()
    };
    assert_eq!(odd([1, 1, 1]), vec![1, 2, 7, 8, 9, 12]);
    assert_eq!(odd([1, 1, 0]), (1..=12).collect::<Vec<_>>());
}

#[test]
fn exactness_of_a_square() {
    let ev = [[0, 1], [1, 2], [2, 3], [0, 3]];
    let d1 = signed_boundary1(&ev, 4).unwrap();
    let d2 = SparseSignedMatrix::from_triplets(4, 1, [(0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 0, -1)]).unwrap();
    assert_eq!(check_exactness(&d1, &d2).unwrap(), Exactness::Exact);
    let bad = SparseSignedMatrix::from_triplets(4, 1, [(0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 0, 1)]).unwrap();
    assert!(matches!(check_exactness(&d1, &bad).unwrap(), Exactness::Violated { .. }));
    assert_eq!(euler_characteristic(&[4, 4, 1]), 1);
}

#[test]
fn empty_cell_is_rejected() {
    assert!(characteristic_matrix(&[vec![0, 1], vec![]]).is_err());
    assert!(characteristic_matrix(&[vec![0, 0]]).is_err());
}

fn matrix() -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, i32)>)> {
    (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
        (Just(r), Just(c), prop::collection::vec((0..r, 0..c, prop::sample::select(vec![-1i32, 1])), 0..20))
    })
}

fn dedup(t: Vec<(usize, usize, i32)>) -> Vec<(usize, usize, i32)> {
    let mut seen = std::collections::HashSet::new();
    t.into_iter().filter(|&(r, c, _)| seen.insert((r, c))).collect()
}

proptest! {
    #[test]
    fn transpose_is_an_involution((r, c, t) in matrix()) {
        let m = SparseSignedMatrix::from_triplets(r, c, dedup(t)).unwrap();
        prop_assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn product_matches_dense((r, c, t) in matrix(), v in prop::collection::vec(-3i32..4, 8)) {
        let m = SparseSignedMatrix::from_triplets(r, c, dedup(t)).unwrap();
        let d = m.to_dense();
        let got = m.mul_vec(&v[..c]).unwrap();
        let want: Vec<i32> = d.iter().map(|row| (0..c).map(|j| row[j] as i32 * v[j]).sum()).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn boundary_of_a_polygon_is_a_cycle(n in 3usize..12) {
        let ev: Vec<[usize; 2]> = (0..n).map(|i| { let j = (i + 1) % n; [i.min(j), i.max(j)] }).collect();
        let d1 = signed_boundary1(&ev, n).unwrap();
        // orient each edge along the loop
        let col: Vec<(usize, usize, i32)> = (0..n).map(|i| (i, 0, if ev[i][0] == i { 1 } else { -1 })).collect();
        let d2 = SparseSignedMatrix::from_triplets(n, 1, col).unwrap();
        prop_assert!(check_exactness(&d1, &d2).unwrap().is_exact());
    }
}
