//! Cellular models in the linear algebraic representation and their plain
//! text format.
//!
//! ```text
//! LAR 2 4
//! 0 0
//! 1 0
//! 1 1
//! 0 1
//! EV
//! 1 2
//! 2 3
//! 3 4
//! 4 1
//! FV
//! 1 2 3 4
//! ```
//!
//! The header gives the embedding dimension and the vertex count, followed by
//! one vertex per line. `EV` and `FV` list cells by 1-based vertex indices,
//! one cell per line. `#` starts a comment.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::sparse::{characteristic_matrix_with_cols, unsigned_boundary2, SparseSignedMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct LarModel {
    /// Embedding dimension, 2 or 3. Planar models keep `z = 0`.
    pub dim: usize,
    pub v: Vec<Point3>,
    pub ev: Vec<[usize; 2]>,
    pub fv: Option<Vec<Vec<usize>>>,
}

impl LarModel {
    pub fn new(dim: usize, v: Vec<Point3>, ev: Vec<[usize; 2]>, fv: Option<Vec<Vec<usize>>>) -> Result<Self> {
        let model = LarModel { dim, v, ev, fv };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim != 2 && self.dim != 3 {
            return Err(Error::invalid(format!("unsupported dimension {}", self.dim)));
        }
        let n = self.v.len();
        for (k, &[a, b]) in self.ev.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::invalid(format!("edge {} references a missing vertex", k + 1)));
            }
            if a == b {
                return Err(Error::invalid(format!("edge {} is a loop", k + 1)));
            }
        }
        if let Some(fv) = &self.fv {
            for (k, face) in fv.iter().enumerate() {
                if face.iter().any(|&i| i >= n) {
                    return Err(Error::invalid(format!("face {} references a missing vertex", k + 1)));
                }
                let mut s = face.clone();
                s.sort_unstable();
                s.dedup();
                if s.len() < 3 || s.len() != face.len() {
                    return Err(Error::invalid(format!("face {} needs at least 3 distinct vertices", k + 1)));
                }
            }
        }
        if self.v.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::invalid("non-finite coordinate"));
        }
        Ok(())
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        self.fv.as_deref().unwrap_or(&[])
    }

    /// Unsigned edge-by-face incidence, edges on rows.
    pub fn edge_face_incidence(&self) -> Result<SparseSignedMatrix> {
        let n = self.v.len();
        let ev: Vec<Vec<usize>> = self.ev.iter().map(|e| e.to_vec()).collect();
        let k1 = characteristic_matrix_with_cols(&ev, n)?;
        let k2 = characteristic_matrix_with_cols(self.faces(), n)?;
        unsigned_boundary2(&k1, &k2)
    }

    /// Boundary edges of every face, as edge indices.
    pub fn face_edges(&self) -> Result<Vec<Vec<usize>>> {
        let ef = self.edge_face_incidence()?;
        Ok((0..ef.ncols()).map(|f| ef.column(f).map(|(e, _)| e).collect()).collect())
    }

    pub fn transformed(&self, map: &crate::geometry::AffineMap) -> LarModel {
        LarModel {
            dim: self.dim,
            v: self.v.iter().map(|p| map.apply(*p)).collect(),
            ev: self.ev.clone(),
            fv: self.fv.clone(),
        }
    }

    pub fn to_lar_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "LAR {} {}", self.dim, self.v.len());
        for p in &self.v {
            let coords: Vec<String> = p[..self.dim].iter().map(|c| format!("{c:?}")).collect();
            let _ = writeln!(s, "{}", coords.join(" "));
        }
        if !self.ev.is_empty() {
            let _ = writeln!(s, "EV");
            for [a, b] in &self.ev {
                let _ = writeln!(s, "{} {}", a + 1, b + 1);
            }
        }
        if let Some(fv) = &self.fv {
            let _ = writeln!(s, "FV");
            for face in fv {
                let idx: Vec<String> = face.iter().map(|i| (i + 1).to_string()).collect();
                let _ = writeln!(s, "{}", idx.join(" "));
            }
        }
        s
    }

    pub fn parse_lar(text: &str) -> Result<LarModel> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let bad = |line: usize, msg: &str| Error::format(format!("LAR line {line}"), msg);

        let (hl, header) = lines.next().ok_or_else(|| Error::format("LAR", "empty input"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "LAR" {
            return Err(bad(hl, "expected header `LAR d n`"));
        }
        let dim: usize = parts[1].parse().map_err(|_| bad(hl, "bad dimension"))?;
        let n: usize = parts[2].parse().map_err(|_| bad(hl, "bad vertex count"))?;
        if dim != 2 && dim != 3 {
            return Err(bad(hl, "dimension must be 2 or 3"));
        }
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, line) = lines.next().ok_or_else(|| bad(hl, "missing vertex lines"))?;
            let coords: Vec<f64> = line
                .split_whitespace()
                .map(|t| t.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(ln, "bad coordinate"))?;
            if coords.len() != dim {
                return Err(bad(ln, "wrong number of coordinates"));
            }
            let mut p = [0.0; 3];
            p[..dim].copy_from_slice(&coords);
            v.push(p);
        }
        let mut ev = Vec::new();
        let mut fv: Option<Vec<Vec<usize>>> = None;
        let mut section = "";
        for (ln, line) in lines {
            match line {
                "EV" | "FV" => {
                    section = if line == "EV" { "EV" } else { "FV" };
                    if section == "FV" {
                        fv.get_or_insert_with(Vec::new);
                    }
                    continue;
                }
                _ => {}
            }
            let idx: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(ln, "bad index"))?;
            if idx.contains(&0) {
                return Err(bad(ln, "indices are 1-based"));
            }
            let idx: Vec<usize> = idx.into_iter().map(|i| i - 1).collect();
            match section {
                "EV" => {
                    if idx.len() != 2 {
                        return Err(bad(ln, "an edge needs exactly two vertices"));
                    }
                    ev.push([idx[0], idx[1]]);
                }
                "FV" => fv.as_mut().expect("section opened").push(idx),
                _ => return Err(bad(ln, "cell list outside an EV/FV section")),
            }
        }
        LarModel::new(dim, v, ev, fv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> LarModel {
        LarModel::new(
            2,
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]],
            vec![[0, 1], [1, 2], [2, 3], [3, 0]],
            Some(vec![vec![0, 1, 2, 3]]),
        )
        .unwrap()
    }

    #[test]
    fn lar_round_trip() {
        let m = square();
        let back = LarModel::parse_lar(&m.to_lar_string()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn fv_optional() {
        let text = "LAR 2 3\n0 0\n1 0\n0 1\nEV\n1 2\n2 3\n3 1\n";
        let m = LarModel::parse_lar(text).unwrap();
        assert!(m.fv.is_none());
        assert_eq!(m.ev.len(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(LarModel::parse_lar("LAR 4 1\n0 0 0 0\n").is_err());
        assert!(LarModel::parse_lar("LAR 2 2\n0 0\n1 0\nEV\n1 3\n").is_err());
        assert!(LarModel::parse_lar("LAR 2 2\n0 0\n1 0\nEV\n0 1\n").is_err());
        assert!(LarModel::parse_lar("LAR 2 3\n0 0\n1 0\n0 1\nFV\n1 2\n").is_err());
    }

    #[test]
    fn face_edges_of_square() {
        assert_eq!(square().face_edges().unwrap(), vec![vec![0, 1, 2, 3]]);
    }
}
