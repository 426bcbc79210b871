use super::BitChain;
use crate::arrangement2d::PlanarArrangement;
use crate::arrangement3d::Atom;
use crate::error::{Error, Result};
use crate::geometry::predicates::point_in_segments;
use crate::geometry::{Point2, Point3, TriangleSoup};
use crate::par::{self, Parallelism};

/// Above this many atoms the matrix keeps only the true entries.
pub const DENSE_LIMIT: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Storage {
    /// One bit column per solid, over bounded atoms.
    Dense(Vec<BitChain>),
    /// Sorted bounded-atom indices per solid.
    Sparse(Vec<Vec<u32>>),
}

/// Atom-by-solid membership. Row 0 is the outer cell and rows `1..` the
/// bounded atoms in `d3` column order; column 0 is the outer cell and
/// columns `1..` the input solids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolMatrix {
    natoms: usize,
    storage: Storage,
}

impl BoolMatrix {
    /// Builds the matrix from per-atom rows of solid memberships.
    pub fn from_rows(rows: &[Vec<bool>], nsolids: usize) -> Result<Self> {
        if let Some((k, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != nsolids) {
            return Err(Error::dim(format!(
                "atom {} has {} memberships, expected {nsolids}",
                k + 1,
                r.len()
            )));
        }
        let natoms = rows.len();
        let storage = if natoms <= DENSE_LIMIT {
            Storage::Dense(
                (0..nsolids)
                    .map(|j| BitChain::from_indices(natoms, (0..natoms).filter(|&k| rows[k][j])))
                    .collect(),
            )
        } else {
            Storage::Sparse(
                (0..nsolids)
                    .map(|j| (0..natoms).filter(|&k| rows[k][j]).map(|k| k as u32).collect())
                    .collect(),
            )
        };
        Ok(BoolMatrix { natoms, storage })
    }

    pub fn natoms(&self) -> usize {
        self.natoms
    }

    pub fn nsolids(&self) -> usize {
        match &self.storage {
            Storage::Dense(c) => c.len(),
            Storage::Sparse(c) => c.len(),
        }
    }

    /// `(1 + atoms, 1 + solids)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.natoms + 1, self.nsolids() + 1)
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        match (row, col) {
            (0, 0) => true,
            (0, _) | (_, 0) => false,
            _ => match &self.storage {
                Storage::Dense(c) => c[col - 1].get(row - 1),
                Storage::Sparse(c) => c[col - 1].binary_search(&((row - 1) as u32)).is_ok(),
            },
        }
    }

    pub fn row(&self, row: usize) -> Vec<bool> {
        (0..self.shape().1).map(|c| self.get(row, c)).collect()
    }

    /// The solid `j` (0-based) as a chain over bounded atoms.
    pub fn solid(&self, j: usize) -> BitChain {
        match &self.storage {
            Storage::Dense(c) => c[j].clone(),
            Storage::Sparse(c) => BitChain::from_indices(self.natoms, c[j].iter().map(|&k| k as usize)),
        }
    }
}

/// Ray-parity membership of `p` in a closed solid.
pub fn smc_point_in_solid(p: Point3, solid: &TriangleSoup, seed: u64) -> Result<bool> {
    solid.contains(p, seed)
}

/// Classifies the witness of every atom against every solid.
pub fn classify_atoms(
    atoms: &[Atom],
    solids: &[TriangleSoup],
    seed: u64,
    par: Parallelism,
) -> Result<BoolMatrix> {
    let rows = par::try_map(atoms, par, |k, atom| {
        solids
            .iter()
            .map(|s| smc_point_in_solid(atom.witness, s, seed))
            .collect::<Result<Vec<bool>>>()
            .map_err(|e| Error::degenerate(format!("classifying atom {}: {e}", k + 1)))
    })?;
    BoolMatrix::from_rows(&rows, solids.len())
}

/// Classifies the bounded faces of a planar arrangement against solids
/// given by their boundary segments.
pub fn classify_faces(arr: &PlanarArrangement, solids: &[Vec<(Point2, Point2)>]) -> Result<BoolMatrix> {
    let rows = (0..arr.face_loops.len())
        .map(|f| {
            let p = arr
                .interior_point(f)
                .ok_or_else(|| Error::degenerate(format!("face {} has no interior point", f + 1)))?;
            Ok(solids.iter().map(|s| point_in_segments(p, s)).collect())
        })
        .collect::<Result<Vec<Vec<bool>>>>()?;
    BoolMatrix::from_rows(&rows, solids.len())
}
