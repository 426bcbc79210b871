//! Space arrangement of polyhedral solids: per-face fragmentation, chain
//! complex congruence, gift wrapping in space and cell extraction.

mod atoms;
mod boundaries;
mod congruence;
mod fragment;
mod soup;
mod tgw;

pub use atoms::Atom;
pub use boundaries::{cycles_to_boundaries, CellBoundaries};
pub use congruence::{accumulate, chain_congruence, AccumulatorPair, QuotientComplex};
pub use fragment::{FragmentContext, LocalComplex};
pub use soup::FaceSoup;
pub(crate) use tgw::face_loops as signed_face_loops;
pub use tgw::tgw3d;

use crate::error::Result;
use crate::geometry::{normalize, triangulate_loops, Point3};
use crate::model::LarModel;
use crate::par::{self, Parallelism};
use crate::sparse::{check_exactness, signed_boundary1, ChainComplex3, Exactness, SparseSignedMatrix};

#[derive(Clone, Copy, Debug)]
pub struct ArrangeOptions {
    pub eps: f64,
    pub parallelism: Parallelism,
}

impl Default for ArrangeOptions {
    fn default() -> Self {
        ArrangeOptions { eps: 1e-6, parallelism: Parallelism::Auto }
    }
}

/// The evaluated arrangement: geometry plus boundary operators, the shell
/// cycles and the bounded cells (atoms).
#[derive(Clone, Debug)]
pub struct SpaceArrangement {
    pub v: Vec<Point3>,
    pub ev: Vec<[usize; 2]>,
    pub d1: SparseSignedMatrix,
    pub d2: SparseSignedMatrix,
    /// Every shell cycle, exterior shells included.
    pub d3_plus: SparseSignedMatrix,
    pub cells: CellBoundaries,
    /// Area vector of every face, oriented as its `d2` column.
    pub face_areas: Vec<Point3>,
    /// Triangles of every face, counterclockwise about its area vector.
    pub face_tris: Vec<Vec<[usize; 3]>>,
}

impl SpaceArrangement {
    pub fn d3(&self) -> &SparseSignedMatrix {
        &self.cells.d3
    }

    pub fn natoms(&self) -> usize {
        self.cells.d3.ncols()
    }

    /// `(V, E, F, C)` with `C` the bounded cells.
    pub fn counts(&self) -> [usize; 4] {
        [self.v.len(), self.ev.len(), self.d2.ncols(), self.natoms()]
    }

    pub fn complex(&self) -> ChainComplex3 {
        ChainComplex3 {
            v: self.v.clone(),
            d1: self.d1.clone(),
            d2: self.d2.clone(),
            d3: self.cells.d3.clone(),
        }
    }

    pub fn face_triangles(&self, f: usize) -> Vec<[Point3; 3]> {
        self.face_tris[f].iter().map(|t| t.map(|i| self.v[i])).collect()
    }

    /// Bounded cells with validated interior witness points.
    pub fn atoms(&self, seed: u64, par: Parallelism) -> Result<Vec<Atom>> {
        par::try_map_range(self.natoms(), par, |k| atoms::build_atom(self, k, seed))
    }

    /// Every cell, the unbounded one included, is bounded by a single
    /// shell, every face by a single loop, and every shell is a sphere.
    pub fn all_cells_contractible(&self) -> bool {
        let faces_simple = (0..self.d2.ncols())
            .all(|f| tgw::face_loops(&self.d2, &self.ev, f, 1).is_ok_and(|l| l.len() == 1));
        let cells_simple =
            self.cells.cell_shells.iter().all(|s| s.len() == 1) && self.cells.omega_shells.len() == 1;
        faces_simple && cells_simple && (0..self.d3_plus.ncols()).all(|c| self.shell_euler(c) == 2)
    }

    /// Euler characteristic of the surface formed by one shell.
    pub fn shell_euler(&self, c: usize) -> i64 {
        let faces: Vec<usize> = self.d3_plus.column(c).map(|(f, _)| f).collect();
        let mut edges: Vec<usize> = faces.iter().flat_map(|&f| self.d2.column(f).map(|(e, _)| e)).collect();
        edges.sort_unstable();
        edges.dedup();
        let mut verts: Vec<usize> = edges.iter().flat_map(|&e| self.ev[e]).collect();
        verts.sort_unstable();
        verts.dedup();
        verts.len() as i64 - edges.len() as i64 + faces.len() as i64
    }

    /// Rebuilds an arrangement from stored topology, recomputing the face
    /// geometry.
    pub fn from_topology(
        v: Vec<Point3>,
        ev: Vec<[usize; 2]>,
        d2: SparseSignedMatrix,
        d3_plus: SparseSignedMatrix,
        cells: CellBoundaries,
        par: Parallelism,
    ) -> Result<Self> {
        let d1 = signed_boundary1(&ev, v.len())?;
        if d2.nrows() != ev.len() || d3_plus.nrows() != d2.ncols() || cells.d3.nrows() != d2.ncols() {
            return Err(crate::error::Error::dim("stored operators do not chain"));
        }
        let (face_areas, face_tris) = face_geometry(&d2, &ev, &v, par)?;
        Ok(SpaceArrangement { v, ev, d1, d2, d3_plus, cells, face_areas, face_tris })
    }

    /// `V - E + F - C`, counting the unbounded cell once.
    pub fn euler_with_outer(&self) -> i64 {
        let [v, e, f, c] = self.counts();
        v as i64 - e as i64 + f as i64 - (c as i64 + 1)
    }
}

/// Face cycles of a quotient complex in the `d2` orientation, with area
/// vectors and triangulations.
fn face_geometry(
    d2: &SparseSignedMatrix,
    ev: &[[usize; 2]],
    v: &[Point3],
    par: Parallelism,
) -> Result<(Vec<Point3>, Vec<Vec<[usize; 3]>>)> {
    let areas = tgw::face_areas(d2, ev, v)?;
    let tris = par::try_map_range(d2.ncols(), par, |f| {
        let loops = tgw::face_loops(d2, ev, f, 1)?;
        let n = normalize(areas[f]).unwrap_or([0.0, 0.0, 1.0]);
        triangulate_loops(v, &loops, n)
    })?;
    Ok((areas, tris))
}

/// Full arrangement of a face soup.
pub fn arrange_soup(soup: &FaceSoup, opts: &ArrangeOptions) -> Result<SpaceArrangement> {
    let par = opts.parallelism;
    let ctx = FragmentContext::new(soup, opts.eps, par)?;
    let locals = par::try_map_range(soup.nfaces(), par, |f| ctx.fragment_face(f))?;
    let acc = accumulate(&locals);
    let q = chain_congruence(&acc, opts.eps)?;
    let d1 = q.delta0.transpose();
    let d2 = q.delta1.transpose();
    let d3_plus = tgw3d(&d1, &d2, &q.v)?;
    if let Exactness::Violated { row, col, value } = check_exactness(&d2, &d3_plus)? {
        return Err(crate::error::Error::topology(format!(
            "shell {} has boundary {} on edge {}",
            col + 1,
            value,
            row + 1
        )));
    }
    let (face_areas, face_tris) = face_geometry(&d2, &q.ev, &q.v, par)?;
    let anchors: Vec<Point3> = (0..d2.ncols())
        .map(|f| {
            let e = d2.column(f).next().expect("face has edges").0;
            q.v[q.ev[e][0]]
        })
        .collect();
    let tris3: Vec<Vec<[Point3; 3]>> =
        face_tris.iter().map(|ts| ts.iter().map(|t| t.map(|i| q.v[i])).collect()).collect();
    let cells = cycles_to_boundaries(&d3_plus, &d2, &face_areas, &anchors, &tris3, opts.eps)?;
    Ok(SpaceArrangement { v: q.v, ev: q.ev, d1, d2, d3_plus, cells, face_areas, face_tris })
}

/// Arrangement of placed solids.
pub fn arrange_models(models: &[LarModel], opts: &ArrangeOptions) -> Result<SpaceArrangement> {
    arrange_soup(&FaceSoup::from_models(models)?, opts)
}
