//! Sparse signed integer matrices and the chain arithmetic built on them.
//!
//! Storage is compressed sparse column with `i8` values. Every product is
//! accumulated in `i32` and narrowed afterwards, so an overflow is reported
//! instead of wrapping.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::par::{self, Parallelism};

#[derive(Clone, PartialEq, Eq)]
pub struct SparseSignedMatrix {
    nrows: usize,
    ncols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    vals: Vec<i8>,
}

impl fmt::Debug for SparseSignedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseSignedMatrix({}x{}, nnz={})", self.nrows, self.ncols, self.nnz())
    }
}

impl SparseSignedMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseSignedMatrix {
            nrows,
            ncols,
            col_ptr: vec![0; ncols + 1],
            row_idx: Vec::new(),
            vals: Vec::new(),
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Duplicate positions
    /// are summed and zero sums are dropped.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i32)>,
    {
        let mut cols: Vec<BTreeMap<usize, i32>> = vec![BTreeMap::new(); ncols];
        for (r, c, v) in triplets {
            if r >= nrows || c >= ncols {
                return Err(Error::dim(format!("entry ({r}, {c}) outside a {nrows}x{ncols} matrix")));
            }
            *cols[c].entry(r).or_insert(0) += v;
        }
        Self::from_column_maps(nrows, cols.into_iter().map(|m| m.into_iter().collect()))
    }

    /// Builds a matrix from per-column `(row, value)` lists whose rows are
    /// strictly increasing.
    pub(crate) fn from_columns<I>(nrows: usize, columns: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<(usize, i32)>>,
    {
        Self::from_column_maps(nrows, columns)
    }

    fn from_column_maps<I>(nrows: usize, columns: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<(usize, i32)>>,
    {
        let mut col_ptr = vec![0];
        let mut row_idx = Vec::new();
        let mut vals = Vec::new();
        for col in columns {
            let mut last = None;
            for (r, v) in col {
                if v == 0 {
                    continue;
                }
                if r >= nrows {
                    return Err(Error::dim(format!("row {r} outside {nrows} rows")));
                }
                if last.is_some_and(|l| l >= r) {
                    return Err(Error::invalid("column rows not strictly increasing"));
                }
                last = Some(r);
                row_idx.push(r);
                vals.push(narrow(v)?);
            }
            col_ptr.push(row_idx.len());
        }
        Ok(SparseSignedMatrix { nrows, ncols: col_ptr.len() - 1, col_ptr, row_idx, vals })
    }

    /// Column-wise concatenation of blocks with equal row counts.
    pub fn hcat(blocks: &[SparseSignedMatrix]) -> Result<Self> {
        let nrows = blocks.first().map_or(0, |b| b.nrows);
        if blocks.iter().any(|b| b.nrows != nrows) {
            return Err(Error::dim("hcat blocks differ in row count"));
        }
        Self::from_columns(nrows, blocks.iter().flat_map(|b| (0..b.ncols).map(move |c| b.column_i32(c))))
    }

    /// Block-diagonal placement of the given matrices.
    pub fn block_diag(blocks: &[SparseSignedMatrix]) -> Self {
        let nrows = blocks.iter().map(|b| b.nrows).sum();
        let mut columns = Vec::new();
        let mut offset = 0;
        for b in blocks {
            for c in 0..b.ncols {
                columns.push(b.column(c).map(|(r, v)| (r + offset, v as i32)).collect());
            }
            offset += b.nrows;
        }
        Self::from_columns(nrows, columns).expect("block_diag of valid blocks")
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        let (rows, vals) = self.column_slices(col);
        rows.binary_search(&row).map_or(0, |k| vals[k])
    }

    pub fn column_slices(&self, col: usize) -> (&[usize], &[i8]) {
        let (a, b) = (self.col_ptr[col], self.col_ptr[col + 1]);
        (&self.row_idx[a..b], &self.vals[a..b])
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, i8)> + '_ {
        let (rows, vals) = self.column_slices(col);
        rows.iter().copied().zip(vals.iter().copied())
    }

    fn column_i32(&self, col: usize) -> Vec<(usize, i32)> {
        self.column(col).map(|(r, v)| (r, v as i32)).collect()
    }

    pub fn column_nnz(&self, col: usize) -> usize {
        self.col_ptr[col + 1] - self.col_ptr[col]
    }

    /// Column-major `(row, col, value)` triplets.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i8)> + '_ {
        (0..self.ncols).flat_map(move |c| self.column(c).map(move |(r, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, i32)>> = vec![Vec::new(); self.nrows];
        for (r, c, v) in self.triplets() {
            rows[r].push((c, v as i32));
        }
        Self::from_columns(self.ncols, rows).expect("transpose of a valid matrix")
    }

    pub fn to_dense(&self) -> Vec<Vec<i8>> {
        let mut out = vec![vec![0i8; self.ncols]; self.nrows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v;
        }
        out
    }

    /// Keeps the selected columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_columns(self.nrows, cols.iter().map(|&c| self.column_i32(c)))
            .expect("selection of valid columns")
    }

    /// Maps every stored value; zero results are dropped.
    pub fn map_values(&self, f: impl Fn(i8) -> i8) -> Self {
        Self::from_columns(
            self.nrows,
            (0..self.ncols).map(|c| self.column(c).map(|(r, v)| (r, f(v) as i32)).collect()),
        )
        .expect("value map keeps indices")
    }

    /// Row sums as `i32`.
    pub fn row_sums(&self) -> Vec<i32> {
        let mut sums = vec![0; self.nrows];
        for (r, _, v) in self.triplets() {
            sums[r] += v as i32;
        }
        sums
    }

    /// Number of stored entries per row.
    pub fn row_nnz(&self) -> Vec<usize> {
        let mut counts = vec![0; self.nrows];
        for &r in &self.row_idx {
            counts[r] += 1;
        }
        counts
    }

    fn product_columns(&self, other: &Self, par: Parallelism) -> Result<Vec<Vec<(usize, i32)>>> {
        if self.ncols != other.nrows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(par::map_range(other.ncols, par, |j| {
            let mut acc: BTreeMap<usize, i32> = BTreeMap::new();
            for (k, b) in other.column(j) {
                for (i, a) in self.column(k) {
                    *acc.entry(i).or_insert(0) += a as i32 * b as i32;
                }
            }
            acc.into_iter().filter(|&(_, v)| v != 0).collect()
        }))
    }

    /// Integer matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, Parallelism::Auto)
    }

    pub fn mul_with(&self, other: &Self, par: Parallelism) -> Result<Self> {
        let cols = self.product_columns(other, par)?;
        Self::from_columns(self.nrows, cols)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[i32]) -> Result<Vec<i32>> {
        if v.len() != self.ncols {
            return Err(Error::dim(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.ncols
            )));
        }
        let mut out = vec![0i32; self.nrows];
        for (c, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (r, a) in self.column(c) {
                out[r] += a as i32 * x;
            }
        }
        Ok(out)
    }
}

fn narrow(v: i32) -> Result<i8> {
    i8::try_from(v).map_err(|_| Error::invalid(format!("value {v} does not fit in i8")))
}

/// Binary matrix with one row per cell and a 1 in every column that is a
/// vertex of that cell.
pub fn characteristic_matrix(cells: &[Vec<usize>]) -> Result<SparseSignedMatrix> {
    let ncols = cells.iter().flatten().max().map_or(0, |&m| m + 1);
    characteristic_matrix_with_cols(cells, ncols)
}

/// Same as [`characteristic_matrix`] with an explicit vertex count, so that
/// matrices of different cell sets share a column space.
pub fn characteristic_matrix_with_cols(cells: &[Vec<usize>], ncols: usize) -> Result<SparseSignedMatrix> {
    let mut triplets = Vec::new();
    for (k, cell) in cells.iter().enumerate() {
        if cell.is_empty() {
            return Err(Error::invalid(format!("cell {} is empty", k + 1)));
        }
        let mut sorted = cell.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("cell {} repeats a vertex", k + 1)));
        }
        triplets.extend(cell.iter().map(|&v| (k, v, 1)));
    }
    SparseSignedMatrix::from_triplets(cells.len(), ncols, triplets)
}

/// Unsigned edge/face incidence: `(K1 * K2^t)` keeps the entries equal to 2,
/// the number of vertices of an edge.
pub fn unsigned_boundary2(k1: &SparseSignedMatrix, k2: &SparseSignedMatrix) -> Result<SparseSignedMatrix> {
    if k1.ncols() != k2.ncols() {
        return Err(Error::dim(format!(
            "edge matrix has {} vertex columns, face matrix has {}",
            k1.ncols(),
            k2.ncols()
        )));
    }
    let counts = k1.product_columns(&k2.transpose(), Parallelism::Auto)?;
    SparseSignedMatrix::from_columns(
        k1.nrows(),
        counts.into_iter().map(|col| col.into_iter().map(|(r, v)| (r, (v == 2) as i32)).collect()),
    )
}

/// Applies a boundary operator to a signed chain.
pub fn apply_boundary(d: &SparseSignedMatrix, chain: &[i32]) -> Result<Vec<i32>> {
    d.mul_vec(chain)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    /// One non-zero entry of the product, as `(row, col, value)`.
    Violated {
        row: usize,
        col: usize,
        value: i32,
    },
}

impl Exactness {
    pub fn is_exact(self) -> bool {
        self == Exactness::Exact
    }
}

/// Checks `dp * dp1 == 0`.
pub fn check_exactness(dp: &SparseSignedMatrix, dp1: &SparseSignedMatrix) -> Result<Exactness> {
    let cols = dp.product_columns(dp1, Parallelism::Auto)?;
    for (c, col) in cols.into_iter().enumerate() {
        if let Some(&(r, v)) = col.first() {
            return Ok(Exactness::Violated { row: r, col: c, value: v });
        }
    }
    Ok(Exactness::Exact)
}

/// Alternating sum of per-dimension cell counts.
pub fn euler_characteristic(counts: &[usize]) -> i64 {
    counts.iter().enumerate().map(|(p, &n)| if p % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
}

/// Signed boundary operator of 1-cells: column `(a, b)` is `-1` at `a`,
/// `+1` at `b`.
pub fn signed_boundary1(edges: &[[usize; 2]], nverts: usize) -> Result<SparseSignedMatrix> {
    SparseSignedMatrix::from_columns(
        nverts,
        edges.iter().map(|&[a, b]| if a < b { vec![(a, -1), (b, 1)] } else { vec![(b, 1), (a, -1)] }),
    )
}

/// A 3D chain complex: coordinates plus the three boundary operators.
#[derive(Clone, Debug)]
pub struct ChainComplex3 {
    pub v: Vec<[f64; 3]>,
    pub d1: SparseSignedMatrix,
    pub d2: SparseSignedMatrix,
    pub d3: SparseSignedMatrix,
}

impl ChainComplex3 {
    pub fn new(
        v: Vec<[f64; 3]>,
        d1: SparseSignedMatrix,
        d2: SparseSignedMatrix,
        d3: SparseSignedMatrix,
    ) -> Result<Self> {
        if d1.nrows() != v.len() || d2.nrows() != d1.ncols() || d3.nrows() != d2.ncols() {
            return Err(Error::dim(format!(
                "incompatible operator shapes: V={}, d1={:?}, d2={:?}, d3={:?}",
                v.len(),
                d1.shape(),
                d2.shape(),
                d3.shape()
            )));
        }
        Ok(ChainComplex3 { v, d1, d2, d3 })
    }

    /// Cell counts `(V, E, F, C)`.
    pub fn counts(&self) -> [usize; 4] {
        [self.v.len(), self.d1.ncols(), self.d2.ncols(), self.d3.ncols()]
    }

    /// Both exactness conditions `d1*d2 = 0` and `d2*d3 = 0`.
    pub fn exactness(&self) -> Result<(Exactness, Exactness)> {
        Ok((check_exactness(&self.d1, &self.d2)?, check_exactness(&self.d2, &self.d3)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m =
            SparseSignedMatrix::from_triplets(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 2), (1, 1, 1)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), 3);
        assert_eq!(m.get(0, 0), 0);
    }

    #[test]
    fn out_of_range_entry_rejected() {
        assert!(matches!(SparseSignedMatrix::from_triplets(1, 1, [(1, 0, 1)]), Err(Error::Dimension(_))));
        assert!(SparseSignedMatrix::from_triplets(1, 1, [(0, 0, 200)]).is_err());
    }

    #[test]
    fn single_cell_characteristic() {
        let k = characteristic_matrix(&[vec![0, 1]]).unwrap();
        assert_eq!(k.to_dense(), vec![vec![1, 1]]);
    }

    #[test]
    fn empty_cell_list_gives_empty_matrix() {
        let k = characteristic_matrix(&[]).unwrap();
        assert_eq!(k.shape(), (0, 0));
    }

    #[test]
    fn duplicate_vertex_is_rejected() {
        assert!(matches!(characteristic_matrix(&[vec![0, 1, 0]]), Err(Error::Validation(_))));
    }

    #[test]
    fn triangle_edges_all_on_its_face() {
        let k1 = characteristic_matrix(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let k2 = characteristic_matrix(&[vec![0, 1, 2]]).unwrap();
        let ef = unsigned_boundary2(&k1, &k2).unwrap();
        assert_eq!(ef.to_dense(), vec![vec![1], vec![1], vec![1]]);
    }

    #[test]
    fn column_space_mismatch() {
        let k1 = characteristic_matrix(&[vec![0, 1]]).unwrap();
        let k2 = characteristic_matrix(&[vec![0, 1, 2]]).unwrap();
        assert!(matches!(unsigned_boundary2(&k1, &k2), Err(Error::Dimension(_))));
    }

    #[test]
    fn zero_chain_maps_to_zero() {
        let d = signed_boundary1(&[[0, 1], [1, 2]], 3).unwrap();
        assert_eq!(apply_boundary(&d, &[0, 0]).unwrap(), vec![0, 0, 0]);
        assert!(apply_boundary(&d, &[0]).is_err());
    }

    #[test]
    fn empty_matrices_are_exact() {
        let a = SparseSignedMatrix::zeros(0, 0);
        assert!(check_exactness(&a, &a).unwrap().is_exact());
    }

    #[test]
    fn exactness_dimension_mismatch() {
        let a = SparseSignedMatrix::zeros(2, 3);
        let b = SparseSignedMatrix::zeros(2, 3);
        assert!(check_exactness(&a, &b).is_err());
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic(&[38, 57, 21]), 2);
        assert_eq!(euler_characteristic(&[2208, 5968, 5360, 1600]), 0);
        assert_eq!(euler_characteristic(&[1, 0]), 1);
    }

    #[test]
    fn block_diag_and_hcat() {
        let a = SparseSignedMatrix::from_triplets(1, 1, [(0, 0, 1)]).unwrap();
        let b = SparseSignedMatrix::from_triplets(2, 1, [(1, 0, -1)]).unwrap();
        let d = SparseSignedMatrix::block_diag(&[a.clone(), b]);
        assert_eq!(d.to_dense(), vec![vec![1, 0], vec![0, 0], vec![0, -1]]);
        let h = SparseSignedMatrix::hcat(&[a.clone(), a]).unwrap();
        assert_eq!(h.to_dense(), vec![vec![1, 1]]);
    }

    #[test]
    fn sequential_and_parallel_products_agree() {
        let a = SparseSignedMatrix::from_triplets(
            3,
            4,
            [(0, 0, 1), (1, 1, -1), (2, 3, 1), (0, 2, 1), (2, 0, -1)],
        )
        .unwrap();
        let b = a.transpose();
        assert_eq!(
            a.mul_with(&b, Parallelism::Auto).unwrap(),
            a.mul_with(&b, Parallelism::Sequential).unwrap()
        );
    }
}
