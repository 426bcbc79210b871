use crate::error::{Error, Result};
use crate::geometry::{dot, BBox, Point3, TriangleSoup};
use crate::sparse::SparseSignedMatrix;

/// Bounded 3-cells recovered from the shell cycles.
#[derive(Clone, Debug)]
pub struct CellBoundaries {
    /// Faces by bounded cells; a cell with cavities carries its inner
    /// shells too.
    pub d3: SparseSignedMatrix,
    /// Shells (columns of `d3_plus`) making up every bounded cell; the
    /// first one is the cell's own outer shell.
    pub cell_shells: Vec<Vec<usize>>,
    /// The exterior shell of every connected component.
    pub outer_shells: Vec<usize>,
    /// Exterior shells not enclosed by any cell: the boundary of the
    /// unbounded cell.
    pub omega_shells: Vec<usize>,
    pub shell_component: Vec<usize>,
    pub ncomponents: usize,
}

/// Signed volume enclosed by a shell whose faces have the given area
/// vectors and anchor points.
fn shell_volume(d3p: &SparseSignedMatrix, c: usize, areas: &[Point3], anchors: &[Point3]) -> f64 {
    d3p.column(c).map(|(f, s)| f64::from(s) * dot(areas[f], anchors[f])).sum::<f64>() / 3.0
}

/// Removes the exterior shell of every component and attaches components
/// nested inside a bounded cell to that cell as cavities.
///
/// `areas` and `anchors` give every face's area vector and one point on it;
/// `face_tris` its triangles in space.
pub fn cycles_to_boundaries(
    d3_plus: &SparseSignedMatrix,
    d2: &SparseSignedMatrix,
    areas: &[Point3],
    anchors: &[Point3],
    face_tris: &[Vec<[Point3; 3]>],
    eps: f64,
) -> Result<CellBoundaries> {
    let nf = d2.ncols();
    let nshells = d3_plus.ncols();

    // faces sharing an edge belong to one component
    let mut parent: Vec<usize> = (0..nf).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let d2t = d2.transpose();
    for e in 0..d2t.ncols() {
        let fs: Vec<usize> = d2t.column(e).map(|(f, _)| f).collect();
        for w in fs.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comp_label = vec![usize::MAX; nf];
    let mut ncomponents = 0;
    let mut face_component = vec![0; nf];
    for f in 0..nf {
        let r = find(&mut parent, f);
        if comp_label[r] == usize::MAX {
            comp_label[r] = ncomponents;
            ncomponents += 1;
        }
        face_component[f] = comp_label[r];
    }
    let shell_component: Vec<usize> = (0..nshells)
        .map(|c| {
            let f = d3_plus.column(c).next().map(|(f, _)| f).unwrap_or(0);
            face_component[f]
        })
        .collect();

    let shell_box = |c: usize| {
        let mut b = BBox::empty();
        for (f, _) in d3_plus.column(c) {
            for t in &face_tris[f] {
                for p in t {
                    b.include(*p);
                }
            }
        }
        b
    };
    let boxes: Vec<BBox> = (0..nshells).map(shell_box).collect();
    let volumes: Vec<f64> = (0..nshells).map(|c| shell_volume(d3_plus, c, areas, anchors)).collect();

    let mut outer_of = vec![usize::MAX; ncomponents];
    for (comp, outer) in outer_of.iter_mut().enumerate() {
        let mut cands: Vec<usize> = (0..nshells).filter(|&c| shell_component[c] == comp).collect();
        let comp_box = cands.iter().fold(BBox::empty(), |acc, &c| acc.union(&boxes[c]));
        cands.sort_by(|&a, &b| d3_plus.column_nnz(b).cmp(&d3_plus.column_nnz(a)).then(a.cmp(&b)));
        let extreme = |c: usize| {
            (0..3).all(|k| {
                (boxes[c].min[k] - comp_box.min[k]).abs() <= eps
                    && (boxes[c].max[k] - comp_box.max[k]).abs() <= eps
            })
        };
        let pick = cands
            .iter()
            .position(|&c| extreme(c) && volumes[c] < 0.0)
            .ok_or_else(|| Error::topology(format!("component {} has no exterior shell", comp + 1)))?;
        if pick > 0 {
            log::debug!("component {}: exterior shell is candidate {}", comp + 1, pick + 1);
        }
        *outer = cands[pick];
    }

    let cells: Vec<usize> = (0..nshells).filter(|c| !outer_of.contains(c)).collect();
    let mut cell_shells: Vec<Vec<usize>> = cells.iter().map(|&c| vec![c]).collect();
    let mut omega_shells = Vec::new();
    if ncomponents > 1 {
        let soups: Vec<TriangleSoup> = cells
            .iter()
            .map(|&c| TriangleSoup::new(d3_plus.column(c).flat_map(|(f, _)| face_tris[f].clone()).collect()))
            .collect();
        for (comp, &outer) in outer_of.iter().enumerate() {
            let probe = probe_point(d3_plus, outer, face_tris)?;
            let mut host: Option<usize> = None;
            for (k, &c) in cells.iter().enumerate() {
                if shell_component[c] == comp || !boxes[c].contains(probe) {
                    continue;
                }
                if soups[k].contains(probe, 0x5eed ^ k as u64)?
                    && host.is_none_or(|h| volumes[c] < volumes[cells[h]])
                {
                    host = Some(k);
                }
            }
            match host {
                Some(k) => cell_shells[k].push(outer),
                None => omega_shells.push(outer),
            }
        }
    } else {
        omega_shells = outer_of.clone();
    }

    let d3 = SparseSignedMatrix::from_triplets(
        nf,
        cells.len(),
        cell_shells.iter().enumerate().flat_map(|(k, shells)| {
            shells.iter().flat_map(move |&c| d3_plus.column(c).map(move |(f, s)| (f, k, i32::from(s))))
        }),
    )?;
    Ok(CellBoundaries { d3, cell_shells, outer_shells: outer_of, omega_shells, shell_component, ncomponents })
}

fn probe_point(d3p: &SparseSignedMatrix, c: usize, face_tris: &[Vec<[Point3; 3]>]) -> Result<Point3> {
    d3p.column(c)
        .flat_map(|(f, _)| face_tris[f].iter())
        .max_by(|a, b| tri_area(a).total_cmp(&tri_area(b)))
        .map(|t| crate::geometry::centroid3(t))
        .ok_or_else(|| Error::topology("empty shell"))
}

pub(crate) fn tri_area(t: &[Point3; 3]) -> f64 {
    use crate::geometry::{cross, norm, sub};
    norm(cross(sub(t[1], t[0]), sub(t[2], t[0]))) / 2.0
}
