//! Front end: primitives, expression parsing, assembly and file formats.

pub mod assembly;
pub mod expr;
pub mod io;
pub mod pipeline;
pub mod primitives;

pub use assembly::{evaluate_assembly, parse_assembly, Assembly};
pub use expr::{parse_csg, parse_program, CsgExpr};
pub use io::{export_obj, import_obj, import_obj_model, import_svg, read_lar3, write_lar3, Lar3, SvgShape};
pub use pipeline::{
    arrange_assembly, arrange_shapes, check_complex, evaluate_expression, evaluate_planar, run_pipeline,
    CheckReport, EvalReport, PipelineOptions, PipelineReport, Planar, PlanarReport,
};
pub use primitives::{cuboid_grid, cylinder, sphere};
