use crate::error::{Error, Result};
use crate::geometry::{plane_frame, BBox, PlaneFrame, Point2, Point3};
use crate::model::LarModel;

/// Input 2-cells of all placed solids, each given by its boundary edges.
#[derive(Clone, Debug, Default)]
pub struct FaceSoup {
    pub v: Vec<Point3>,
    pub ev: Vec<[usize; 2]>,
    pub fe: Vec<Vec<usize>>,
    /// Index of the input solid each face came from.
    pub face_solid: Vec<usize>,
}

impl FaceSoup {
    pub fn from_models(models: &[LarModel]) -> Result<Self> {
        let mut soup = FaceSoup::default();
        for (s, m) in models.iter().enumerate() {
            if m.fv.is_none() {
                return Err(Error::invalid(format!("solid {} has no faces", s + 1)));
            }
            let (voff, eoff) = (soup.v.len(), soup.ev.len());
            soup.v.extend_from_slice(&m.v);
            soup.ev.extend(m.ev.iter().map(|&[a, b]| [a + voff, b + voff]));
            for edges in m.face_edges()? {
                soup.fe.push(edges.iter().map(|&e| e + eoff).collect());
                soup.face_solid.push(s);
            }
        }
        Ok(soup)
    }

    pub fn nfaces(&self) -> usize {
        self.fe.len()
    }

    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        let mut vs: Vec<usize> = self.fe[f].iter().flat_map(|&e| self.ev[e]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// Per-face data reused by every fragmentation call.
#[derive(Clone, Debug)]
pub(crate) struct FacePrep {
    pub frame: PlaneFrame,
    pub bbox: BBox,
    /// Boundary segments in the face's own frame.
    pub segments: Vec<(Point2, Point2)>,
}

pub(crate) fn prepare_face(soup: &FaceSoup, f: usize) -> Result<FacePrep> {
    let verts = soup.face_vertices(f);
    let pts: Vec<Point3> = verts.iter().map(|&i| soup.v[i]).collect();
    let frame = plane_frame(&pts).map_err(|e| match e {
        Error::Degenerate(m) => Error::degenerate(format!("face {}: {m}", f + 1)),
        other => other,
    })?;
    let segments = soup.fe[f]
        .iter()
        .map(|&e| {
            let [a, b] = soup.ev[e];
            (frame.to_local2(soup.v[a]), frame.to_local2(soup.v[b]))
        })
        .collect();
    Ok(FacePrep { frame, bbox: BBox::from_points(pts.iter()), segments })
}
