//! End-to-end evaluation: assembly, arrangement, classification, formula,
//! boundary.

use std::path::Path;

use serde::Serialize;

use super::assembly::{evaluate_assembly, parse_assembly, Assembly};
use super::expr::{parse_program, CsgExpr};
use super::io::{Lar3, SvgShape};
use crate::algebra::{
    bind, boundary_counts, brep_extract, classify_atoms, classify_faces, model_soup, planar_result,
    BoolMatrix, Mesh, PlanarResult, SolidChain,
};
use crate::arrangement2d::{planar_arrangement, PlanarArrangement};
use crate::arrangement3d::{arrange_models, ArrangeOptions};
use crate::error::{Error, Result};
use crate::par::{self, Parallelism};
use crate::sparse::check_exactness;

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub eps: f64,
    pub seed: u64,
    pub parallelism: Parallelism,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { eps: 1e-6, seed: 0, parallelism: Parallelism::Auto }
    }
}

fn stage<T>(name: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Stage { .. } => e,
        e => Error::Stage { stage: name, source: Box::new(e) },
    })
}

/// Places the models, arranges them and classifies every atom.
pub fn arrange_assembly(a: &Assembly, opts: &PipelineOptions) -> Result<Lar3> {
    let placed = stage("assembly", evaluate_assembly(a))?;
    if placed.is_empty() {
        return stage("assembly", Err(Error::invalid("assembly has no models")));
    }
    let (names, models): (Vec<String>, Vec<_>) = placed.into_iter().unzip();
    let aopts = ArrangeOptions { eps: opts.eps, parallelism: opts.parallelism };
    let arr = stage("arrangement", arrange_models(&models, &aopts))?;
    let atoms = stage("atoms", arr.atoms(opts.seed, opts.parallelism))?;
    let soups = stage("classification", par::try_map(&models, opts.parallelism, |_, m| model_soup(m)))?;
    let matrix = stage("classification", classify_atoms(&atoms, &soups, opts.seed, opts.parallelism))?;
    Ok(Lar3 { arrangement: arr, names, witnesses: atoms.iter().map(|a| a.witness).collect(), matrix })
}

/// Invariants of an arranged and classified complex.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub cells: usize,
    pub shells: usize,
    pub components: usize,
    pub d1_d2_exact: bool,
    pub d2_d3_exact: bool,
    pub shells_are_cycles: bool,
    /// Every face lies in exactly two shells with opposite signs.
    pub faces_used_twice: bool,
    pub all_contractible: bool,
    /// `V - E + F - C` with the outer cell counted.
    pub euler_with_outer: i64,
    /// Every bounded atom lies in some input solid.
    pub atoms_covered: bool,
}

impl CheckReport {
    /// All invariants hold; the Euler identity only counts for
    /// contractible cells.
    pub fn ok(&self) -> bool {
        self.d1_d2_exact
            && self.d2_d3_exact
            && self.shells_are_cycles
            && self.faces_used_twice
            && self.atoms_covered
            && (!self.all_contractible || self.euler_with_outer == 0)
    }
}

pub fn check_complex(c: &Lar3) -> Result<CheckReport> {
    let arr = &c.arrangement;
    let [vertices, edges, faces, cells] = arr.counts();
    let exact = |a, b| check_exactness(a, b).map(|x| x.is_exact());
    let t = arr.d3_plus.transpose();
    let faces_used_twice = (0..t.ncols()).all(|f| {
        let v: Vec<i8> = t.column(f).map(|x| x.1).collect();
        v.len() == 2 && v[0] + v[1] == 0
    });
    let all_contractible = arr.all_cells_contractible();
    let euler_with_outer = arr.euler_with_outer();
    if !all_contractible {
        log::warn!("cells are not all contractible; V - E + F - C = {euler_with_outer} is not checked");
    }
    Ok(CheckReport {
        vertices,
        edges,
        faces,
        cells,
        shells: arr.d3_plus.ncols(),
        components: arr.cells.ncomponents,
        d1_d2_exact: exact(&arr.d1, &arr.d2)?,
        d2_d3_exact: exact(&arr.d2, arr.d3())?,
        shells_are_cycles: exact(&arr.d2, &arr.d3_plus)?,
        faces_used_twice,
        all_contractible,
        euler_with_outer,
        atoms_covered: (1..=c.matrix.natoms()).all(|r| c.matrix.row(r).contains(&true)),
    })
}

/// Outcome of one formula.
#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub expression: String,
    pub atoms: usize,
    pub selected: Vec<usize>,
    pub boundary_faces: usize,
    /// `(vertices, edges, faces)` of the boundary.
    pub boundary_counts: [usize; 3],
    pub euler: i64,
    pub boundary_is_cycle: bool,
    pub triangles: usize,
    pub closed_mesh: bool,
}

/// Evaluates a formula over a classified complex and extracts its boundary.
pub fn evaluate_expression(c: &Lar3, expr: &CsgExpr, par: Parallelism) -> Result<(EvalReport, Mesh)> {
    let arr = &c.arrangement;
    let cols = stage("evaluation", bind(&c.matrix, &c.names))?;
    let chain = stage("evaluation", SolidChain::evaluate(expr, &cols, par))?;
    let b = stage("boundary", chain.boundary(arr.d3()))?;
    let boundary_is_cycle = crate::sparse::apply_boundary(&arr.d2, &b)?.iter().all(|&x| x == 0);
    let (v, e, f) = stage("boundary", boundary_counts(&b, arr))?;
    let mesh = stage("brep", brep_extract(&b, arr))?;
    let report = EvalReport {
        expression: expr.to_string(),
        atoms: chain.atoms.len(),
        selected: chain.atoms.ones_iter().map(|k| k + 1).collect(),
        boundary_faces: f,
        boundary_counts: [v, e, f],
        euler: v as i64 - e as i64 + f as i64,
        boundary_is_cycle,
        triangles: mesh.tris.len(),
        closed_mesh: mesh.is_closed(),
    };
    Ok((report, mesh))
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub solids: Vec<String>,
    pub complex: CheckReport,
    pub result: EvalReport,
}

/// Assembly text and formula to boundary mesh.
pub fn run_pipeline(
    assembly: &str,
    base: Option<&Path>,
    expr: &str,
    opts: &PipelineOptions,
) -> Result<(PipelineReport, Mesh)> {
    let expr = stage("expression", parse_program(expr))?;
    let a = stage("assembly", parse_assembly(assembly, base))?;
    let c = arrange_assembly(&a, opts)?;
    let complex = check_complex(&c)?;
    let (result, mesh) = evaluate_expression(&c, &expr, opts.parallelism)?;
    Ok((PipelineReport { solids: c.names.clone(), complex, result }, mesh))
}

/// A planar arrangement of named shapes with its face classification.
#[derive(Clone, Debug)]
pub struct Planar {
    pub arrangement: PlanarArrangement,
    pub names: Vec<String>,
    pub matrix: BoolMatrix,
}

fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|x| x.is_ascii_alphabetic() || x == '_')
        && c.all(|x| x.is_ascii_alphanumeric() || x == '_')
}

pub fn arrange_shapes(shapes: &[SvgShape], eps: f64) -> Result<Planar> {
    let names: Vec<String> = shapes
        .iter()
        .enumerate()
        .map(|(k, s)| match &s.id {
            Some(id) if is_identifier(id) => id.clone(),
            _ => format!("X{}", k + 1),
        })
        .collect();
    let segs: Vec<_> = shapes.iter().flat_map(|s| s.segments.iter().copied()).collect();
    let arrangement = stage("arrangement", planar_arrangement(&segs, eps))?;
    let solids: Vec<_> = shapes.iter().map(|s| s.segments.clone()).collect();
    let matrix = stage("classification", classify_faces(&arrangement, &solids))?;
    Ok(Planar { arrangement, names, matrix })
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanarReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
    /// `V - E + F` per component, outer face counted.
    pub component_euler: Vec<i64>,
    pub selected: Option<Vec<usize>>,
}

impl PlanarReport {
    pub fn new(arr: &PlanarArrangement, selected: Option<Vec<usize>>) -> Self {
        PlanarReport {
            vertices: arr.v.len(),
            edges: arr.ev.len(),
            faces: arr.face_loops.len(),
            components: arr.ncomponents,
            component_euler: arr.component_euler(),
            selected,
        }
    }
}

/// Evaluates a formula over planar shapes.
pub fn evaluate_planar(p: &Planar, expr: &CsgExpr) -> Result<PlanarResult> {
    let cols = stage("evaluation", bind(&p.matrix, &p.names))?;
    let chain = stage("evaluation", SolidChain::evaluate(expr, &cols, Parallelism::Sequential))?;
    if chain.outer {
        return stage("evaluation", Err(Error::UnboundedResult));
    }
    stage("result", planar_result(&p.arrangement, &chain.atoms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cube_pipeline() {
        let (r, mesh) = run_pipeline("(cuboid 1 1 1)", None, "X1", &PipelineOptions::default()).unwrap();
        assert!(r.complex.ok());
        assert_eq!(r.result.boundary_counts, [8, 12, 6]);
        assert_eq!(r.result.euler, 2);
        assert_eq!(mesh.tris.len(), 12);
        assert!(mesh.is_closed());
    }

    #[test]
    fn disjoint_cubes_union() {
        let (r, _) = run_pipeline(
            "(cuboid 1 1 1) (t 3 0 0) (cuboid 1 1 1)",
            None,
            "(+ X1 X2)",
            &PipelineOptions::default(),
        )
        .unwrap();
        assert_eq!(r.result.boundary_counts, [16, 24, 12]);
        assert_eq!(r.result.euler, 4);
    }

    #[test]
    fn stage_names_errors() {
        let e = run_pipeline("(cuboid 1 1 1)", None, "", &PipelineOptions::default()).unwrap_err();
        assert!(e.to_string().starts_with("expression:"));
        assert_eq!(e.exit_code(), 2);
        let e = run_pipeline("(cuboid 1 1 1)", None, "(! X1)", &PipelineOptions::default()).unwrap_err();
        assert!(matches!(e, Error::Stage { stage: "boundary", .. }));
    }
}
