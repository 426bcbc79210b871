//! Wavefront OBJ, SVG shape import and the `.lar3` arrangement container.

use std::fmt::Write as _;

use super::primitives::from_loops;
use crate::algebra::{BoolMatrix, Mesh};
use crate::arrangement3d::{CellBoundaries, SpaceArrangement};
use crate::error::{Error, Result};
use crate::geometry::{Point2, Point3};
use crate::model::LarModel;
use crate::par::Parallelism;
use crate::sparse::SparseSignedMatrix;

/// `v x y z` lines, then 1-based `f i j k` triangles.
pub fn export_obj(mesh: &Mesh) -> String {
    let mut s = String::new();
    for p in &mesh.v {
        let _ = writeln!(s, "v {:?} {:?} {:?}", p[0], p[1], p[2]);
    }
    for t in &mesh.tris {
        let _ = writeln!(s, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
    }
    s
}

/// Vertices and polygonal faces of an OBJ file.
fn read_obj(text: &str) -> Result<(Vec<Point3>, Vec<Vec<usize>>)> {
    let mut v = Vec::new();
    let mut faces = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let bad = |msg: &str| Error::format(format!("OBJ line {}", ln + 1), msg);
        let line = line.split('#').next().unwrap_or("");
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                let c: Vec<f64> = it
                    .map(str::parse)
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad("bad coordinate"))?;
                if c.len() < 3 {
                    return Err(bad("a vertex needs three coordinates"));
                }
                v.push([c[0], c[1], c[2]]);
            }
            Some("f") => {
                let face = it
                    .map(|tok| {
                        let i: i64 = tok
                            .split('/')
                            .next()
                            .and_then(|x| x.parse().ok())
                            .ok_or_else(|| bad("bad face index"))?;
                        let i = if i < 0 { v.len() as i64 + i } else { i - 1 };
                        if i < 0 || i as usize >= v.len() {
                            return Err(bad("face index out of range"));
                        }
                        Ok(i as usize)
                    })
                    .collect::<Result<Vec<usize>>>()?;
                if face.len() < 3 {
                    return Err(bad("a face needs three vertices"));
                }
                faces.push(face);
            }
            _ => {}
        }
    }
    Ok((v, faces))
}

/// Reads an OBJ mesh, fan-triangulating polygons.
pub fn import_obj(text: &str) -> Result<Mesh> {
    let (v, faces) = read_obj(text)?;
    let tris = faces.iter().flat_map(|f| (1..f.len() - 1).map(move |i| [f[0], f[i], f[i + 1]])).collect();
    Ok(Mesh { v, tris, faces: Vec::new() })
}

/// Reads an OBJ file as a solid whose faces are its polygons.
pub fn import_obj_model(text: &str) -> Result<LarModel> {
    let (v, faces) = read_obj(text)?;
    from_loops(v, faces)
}

/// One SVG element flattened to segments.
#[derive(Clone, Debug, PartialEq)]
pub struct SvgShape {
    pub id: Option<String>,
    pub segments: Vec<(Point2, Point2)>,
}

fn svg_numbers(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::format("SVG", format!("bad number list `{s}`"));
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_whitespace() || b[i] == b',' {
            i += 1;
            continue;
        }
        let start = i;
        if b[i] == b'+' || b[i] == b'-' {
            i += 1;
        }
        let mut dot = false;
        while i < b.len() && (b[i].is_ascii_digit() || (b[i] == b'.' && !dot)) {
            dot |= b[i] == b'.';
            i += 1;
        }
        if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
            i += 1;
            if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
                i += 1;
            }
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
        }
        out.push(s[start..i].parse::<f64>().map_err(|_| bad())?);
    }
    Ok(out)
}

fn polyline(points: &[f64], closed: bool) -> Result<Vec<(Point2, Point2)>> {
    if !points.len().is_multiple_of(2) {
        return Err(Error::format("SVG", "odd number of point coordinates"));
    }
    let p: Vec<Point2> = points.chunks(2).map(|c| [c[0], c[1]]).collect();
    let mut segs: Vec<(Point2, Point2)> = p.windows(2).map(|w| (w[0], w[1])).collect();
    if closed && p.len() > 2 {
        segs.push((p[p.len() - 1], p[0]));
    }
    Ok(segs)
}

/// Path data with `M L H V Z` commands, absolute and relative.
fn path_segments(d: &str) -> Result<Vec<(Point2, Point2)>> {
    let mut segs = Vec::new();
    let (mut cur, mut start) = ([0.0, 0.0], [0.0, 0.0]);
    let mut rest = d.trim_start();
    while let Some(c) = rest.chars().next() {
        let end = rest[1..]
            .find(|ch: char| ch.is_ascii_alphabetic() && ch != 'e' && ch != 'E')
            .map_or(rest.len(), |k| k + 1);
        let args = svg_numbers(&rest[1..end])?;
        rest = rest[end..].trim_start();
        let rel = c.is_ascii_lowercase();
        let off = |p: Point2, cur: Point2| if rel { [cur[0] + p[0], cur[1] + p[1]] } else { p };
        match c.to_ascii_uppercase() {
            'M' | 'L' => {
                if args.len() % 2 != 0 || args.is_empty() {
                    return Err(Error::format("SVG path", format!("`{c}` needs coordinate pairs")));
                }
                for (k, xy) in args.chunks(2).enumerate() {
                    let p = off([xy[0], xy[1]], cur);
                    if c.eq_ignore_ascii_case(&'M') && k == 0 {
                        start = p;
                    } else {
                        segs.push((cur, p));
                    }
                    cur = p;
                }
            }
            'H' | 'V' => {
                let axis = usize::from(c.eq_ignore_ascii_case(&'V'));
                for &x in &args {
                    let mut p = cur;
                    p[axis] = if rel { cur[axis] + x } else { x };
                    segs.push((cur, p));
                    cur = p;
                }
            }
            'Z' => {
                if cur != start {
                    segs.push((cur, start));
                }
                cur = start;
            }
            _ => {
                return Err(Error::format("SVG path", format!("unsupported command `{c}`")));
            }
        }
    }
    Ok(segs)
}

/// Flattens `rect`, `polygon`, `polyline`, `line` and `path` elements.
pub fn import_svg(text: &str) -> Result<Vec<SvgShape>> {
    let doc = roxmltree::Document::parse(text).map_err(|e| Error::format("SVG", e.to_string()))?;
    let mut shapes = Vec::new();
    for node in doc.descendants().filter(|n| n.is_element()) {
        let num = |a: &str| -> Result<f64> {
            node.attribute(a).map_or(Ok(0.0), |s| {
                let s = s.trim().trim_end_matches("px");
                s.parse().map_err(|_| Error::format("SVG", format!("bad `{a}` value `{s}`")))
            })
        };
        let segments = match node.tag_name().name() {
            "rect" => {
                let (x, y, w, h) = (num("x")?, num("y")?, num("width")?, num("height")?);
                if w <= 0.0 || h <= 0.0 {
                    return Err(Error::format("SVG", "rect with non-positive size"));
                }
                polyline(&[x, y, x + w, y, x + w, y + h, x, y + h], true)?
            }
            "polygon" => polyline(&svg_numbers(node.attribute("points").unwrap_or(""))?, true)?,
            "polyline" => polyline(&svg_numbers(node.attribute("points").unwrap_or(""))?, false)?,
            "line" => vec![([num("x1")?, num("y1")?], [num("x2")?, num("y2")?])],
            "path" => path_segments(node.attribute("d").unwrap_or(""))?,
            _ => continue,
        };
        shapes.push(SvgShape { id: node.attribute("id").map(str::to_string), segments });
    }
    Ok(shapes)
}

/// An arrangement with the classification of its atoms against named
/// solids.
#[derive(Clone, Debug)]
pub struct Lar3 {
    pub arrangement: SpaceArrangement,
    pub names: Vec<String>,
    pub witnesses: Vec<Point3>,
    pub matrix: BoolMatrix,
}

/// Text container: vertices, edges (which fix `d1`), signed `d2` and
/// shell triplets, the cell structure and the classified atoms. Indices
/// are 1-based.
pub fn write_lar3(c: &Lar3) -> String {
    let arr = &c.arrangement;
    let cells = &arr.cells;
    let mut s = String::from("LAR3 1\n");
    let _ = writeln!(s, "V {}", arr.v.len());
    for p in &arr.v {
        let _ = writeln!(s, "{:?} {:?} {:?}", p[0], p[1], p[2]);
    }
    let _ = writeln!(s, "EV {}", arr.ev.len());
    for [a, b] in &arr.ev {
        let _ = writeln!(s, "{} {}", a + 1, b + 1);
    }
    let triplets = |s: &mut String, tag: &str, m: &SparseSignedMatrix| {
        let _ = writeln!(s, "{tag} {} {}", m.ncols(), m.nnz());
        for (r, c, x) in m.triplets() {
            let _ = writeln!(s, "{} {} {x}", r + 1, c + 1);
        }
    };
    triplets(&mut s, "D2", &arr.d2);
    triplets(&mut s, "D3PLUS", &arr.d3_plus);
    let list = |xs: &[usize]| {
        std::iter::once(xs.len().to_string())
            .chain(xs.iter().map(|x| (x + 1).to_string()))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(s, "CELLS {}", cells.cell_shells.len());
    for shells in &cells.cell_shells {
        let _ = writeln!(s, "{}", list(shells));
    }
    let _ = writeln!(s, "OUTER {}", list(&cells.outer_shells));
    let _ = writeln!(s, "OMEGA {}", list(&cells.omega_shells));
    let _ = writeln!(s, "COMPONENTS {} {}", cells.ncomponents, list(&cells.shell_component));
    let _ = writeln!(s, "SOLIDS {}", c.names.len());
    for n in &c.names {
        let _ = writeln!(s, "{n}");
    }
    let _ = writeln!(s, "ATOMS {}", c.witnesses.len());
    for (k, w) in c.witnesses.iter().enumerate() {
        let bits: String =
            (1..=c.names.len()).map(|j| if c.matrix.get(k + 1, j) { '1' } else { '0' }).collect();
        let bits = if bits.is_empty() { "-".to_string() } else { bits };
        let _ = writeln!(s, "{:?} {:?} {:?} {bits}", w[0], w[1], w[2]);
    }
    s
}

struct Tokens<'a> {
    it: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> =
            Box::new(text.lines().enumerate().flat_map(|(i, l)| {
                l.split('#').next().unwrap_or("").split_whitespace().map(move |t| (i + 1, t))
            }));
        Tokens { it: it.peekable() }
    }

    fn next(&mut self) -> Result<(usize, &'a str)> {
        self.it.next().ok_or_else(|| Error::format("LAR3", "unexpected end of input"))
    }

    fn keyword(&mut self, k: &str) -> Result<()> {
        let (ln, t) = self.next()?;
        if t != k {
            return Err(Error::format(format!("LAR3 line {ln}"), format!("expected `{k}`, found `{t}`")));
        }
        Ok(())
    }

    fn parse<T: std::str::FromStr>(&mut self) -> Result<T> {
        let (ln, t) = self.next()?;
        t.parse().map_err(|_| Error::format(format!("LAR3 line {ln}"), format!("bad value `{t}`")))
    }

    fn index(&mut self, bound: usize) -> Result<usize> {
        let (ln, t) = self.next()?;
        match t.parse::<usize>() {
            Ok(i) if i >= 1 && i <= bound => Ok(i - 1),
            _ => Err(Error::format(format!("LAR3 line {ln}"), format!("index `{t}` out of range"))),
        }
    }

    fn list(&mut self, bound: usize) -> Result<Vec<usize>> {
        let n: usize = self.parse()?;
        (0..n).map(|_| self.index(bound)).collect()
    }

    fn matrix(&mut self, tag: &str, nrows: usize) -> Result<SparseSignedMatrix> {
        self.keyword(tag)?;
        let ncols: usize = self.parse()?;
        let nnz: usize = self.parse()?;
        let mut t = Vec::with_capacity(nnz);
        for _ in 0..nnz {
            t.push((self.index(nrows)?, self.index(ncols)?, self.parse::<i32>()?));
        }
        SparseSignedMatrix::from_triplets(nrows, ncols, t)
    }
}

pub fn read_lar3(text: &str, par: Parallelism) -> Result<Lar3> {
    let mut t = Tokens::new(text);
    t.keyword("LAR3")?;
    t.keyword("1")?;
    t.keyword("V")?;
    let nv: usize = t.parse()?;
    let v = (0..nv).map(|_| Ok([t.parse()?, t.parse()?, t.parse()?])).collect::<Result<Vec<Point3>>>()?;
    t.keyword("EV")?;
    let ne: usize = t.parse()?;
    let ev = (0..ne).map(|_| Ok([t.index(nv)?, t.index(nv)?])).collect::<Result<Vec<[usize; 2]>>>()?;
    let d2 = t.matrix("D2", ne)?;
    let d3_plus = t.matrix("D3PLUS", d2.ncols())?;
    let nshells = d3_plus.ncols();
    t.keyword("CELLS")?;
    let ncells: usize = t.parse()?;
    let cell_shells = (0..ncells).map(|_| t.list(nshells)).collect::<Result<Vec<_>>>()?;
    t.keyword("OUTER")?;
    let outer_shells = t.list(nshells)?;
    t.keyword("OMEGA")?;
    let omega_shells = t.list(nshells)?;
    t.keyword("COMPONENTS")?;
    let ncomponents: usize = t.parse()?;
    let shell_component = t.list(ncomponents)?;
    if shell_component.len() != nshells {
        return Err(Error::format("LAR3", "one component per shell expected"));
    }
    let d3 = SparseSignedMatrix::from_triplets(
        d2.ncols(),
        ncells,
        cell_shells.iter().enumerate().flat_map(|(k, shells)| {
            let d3_plus = &d3_plus;
            shells.iter().flat_map(move |&c| d3_plus.column(c).map(move |(f, s)| (f, k, i32::from(s))))
        }),
    )?;
    let cells = CellBoundaries { d3, cell_shells, outer_shells, omega_shells, shell_component, ncomponents };
    let arrangement = SpaceArrangement::from_topology(v, ev, d2, d3_plus, cells, par)?;

    t.keyword("SOLIDS")?;
    let m: usize = t.parse()?;
    let names = (0..m).map(|_| Ok(t.next()?.1.to_string())).collect::<Result<Vec<_>>>()?;
    t.keyword("ATOMS")?;
    let k: usize = t.parse()?;
    if k != arrangement.natoms() {
        return Err(Error::format("LAR3", format!("{k} atoms listed for {} cells", arrangement.natoms())));
    }
    let mut witnesses = Vec::with_capacity(k);
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        witnesses.push([t.parse()?, t.parse()?, t.parse()?]);
        let (ln, bits) = t.next()?;
        let row: Vec<bool> = if bits == "-" { Vec::new() } else { bits.chars().map(|c| c == '1').collect() };
        if row.len() != m || (bits != "-" && !bits.chars().all(|c| c == '0' || c == '1')) {
            return Err(Error::format(format!("LAR3 line {ln}"), "bad classification bits"));
        }
        rows.push(row);
    }
    if let Ok((ln, tok)) = t.next() {
        return Err(Error::format(format!("LAR3 line {ln}"), format!("trailing token `{tok}`")));
    }
    let matrix = BoolMatrix::from_rows(&rows, m)?;
    Ok(Lar3 { arrangement, names, witnesses, matrix })
}
