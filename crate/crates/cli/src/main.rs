use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chaincsg::algebra::planar_model;
use chaincsg::frontend::{
    arrange_assembly, arrange_shapes, check_complex, evaluate_expression, evaluate_planar, export_obj,
    import_svg, parse_assembly, parse_program, read_lar3, write_lar3, Lar3, PipelineOptions, PlanarReport,
};
use chaincsg::{Error, Parallelism, Result};

#[derive(Parser)]
#[command(name = "chaincsg", version, about = "Variadic Boolean evaluation of polyhedral solids")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Distance below which points are identified.
    #[arg(long, global = true, default_value_t = 1e-6)]
    epsilon: f64,

    /// Seed for ray directions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker thread cap; 1 runs sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Assembly file.
    #[arg(long = "in")]
    input: Option<PathBuf>,

    /// Arranged complex written by `arrange3d`.
    #[arg(long)]
    complex: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Arrange the shapes of an SVG file, optionally evaluating a formula.
    Arrange2d {
        #[arg(long)]
        svg: PathBuf,
        #[arg(long)]
        expr: Option<String>,
        /// LAR output of the arrangement or the result.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Arrange and classify the solids of an assembly.
    Arrange3d {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a formula and export its boundary.
    Eval {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        expr: String,
        /// OBJ output of the boundary.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump atoms and their classification.
    Atoms {
        #[command(flatten)]
        source: Source,
    },
    /// Run the invariant suite on a complex.
    Check {
        #[command(flatten)]
        source: Source,
    },
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Format { context: path.display().to_string(), message: e.to_string() }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_error(path, e))
}

fn load(source: &Source, opts: &PipelineOptions) -> Result<Lar3> {
    match (&source.input, &source.complex) {
        (Some(p), _) => {
            let a = parse_assembly(&read(p)?, p.parent())?;
            arrange_assembly(&a, opts)
        }
        (_, Some(p)) => read_lar3(&read(p)?, opts.parallelism),
        _ => unreachable!("clap requires one source"),
    }
}

fn text_lines(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_lines(x, &key, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                text_lines(x, &format!("{prefix}[{}]", i + 1), out);
            }
        }
        _ => out.push_str(&format!("{prefix}: {v}\n")),
    }
}

fn emit(format: ReportFormat, report: &impl serde::Serialize) {
    let v = serde_json::to_value(report).expect("reports serialize");
    let mut out = String::new();
    match format {
        ReportFormat::Json => {
            out = serde_json::to_string_pretty(&v).expect("json");
            out.push('\n');
        }
        ReportFormat::Text => text_lines(&v, "", &mut out),
    }
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn run(cli: Cli) -> Result<i32> {
    let parallelism = match cli.threads {
        Some(1) => Parallelism::Sequential,
        Some(n) => {
            chaincsg::par::set_threads(n)?;
            Parallelism::Auto
        }
        None => Parallelism::Auto,
    };
    let opts = PipelineOptions { eps: cli.epsilon, seed: cli.seed, parallelism };
    match &cli.command {
        Command::Arrange2d { svg, expr, out } => {
            let shapes = import_svg(&read(svg)?)?;
            let planar = arrange_shapes(&shapes, opts.eps)?;
            let (arr, selected) = match expr {
                Some(e) => {
                    let r = evaluate_planar(&planar, &parse_program(e)?)?;
                    let sel = r.selected.ones_iter().map(|f| f + 1).collect();
                    (r.complex, Some(sel))
                }
                None => (planar.arrangement, None),
            };
            if let Some(out) = out {
                write(out, &planar_model(&arr)?.to_lar_string())?;
            }
            let report = PlanarReport::new(&arr, selected);
            let ok = report.component_euler.iter().all(|&x| x == 2);
            emit(cli.report, &report);
            Ok(if ok { 0 } else { 3 })
        }
        Command::Arrange3d { input, out } => {
            let a = parse_assembly(&read(input)?, input.parent())?;
            let c = arrange_assembly(&a, &opts)?;
            if let Some(out) = out {
                write(out, &write_lar3(&c))?;
            }
            emit(cli.report, &check_complex(&c)?);
            Ok(0)
        }
        Command::Eval { source, expr, out } => {
            let e = parse_program(expr)?;
            let c = load(source, &opts)?;
            let (report, mesh) = evaluate_expression(&c, &e, opts.parallelism)?;
            if let Some(out) = out {
                write(out, &export_obj(&mesh))?;
            }
            emit(cli.report, &report);
            Ok(0)
        }
        Command::Atoms { source } => {
            let c = load(source, &opts)?;
            let rows: Vec<Value> = c
                .witnesses
                .iter()
                .enumerate()
                .map(|(k, w)| {
                    let inside: Vec<&str> = (0..c.names.len())
                        .filter(|&j| c.matrix.get(k + 1, j + 1))
                        .map(|j| c.names[j].as_str())
                        .collect();
                    json!({
                        "atom": k + 1,
                        "faces": c.arrangement.d3().column_nnz(k),
                        "witness": w,
                        "inside": inside,
                    })
                })
                .collect();
            emit(cli.report, &json!({ "solids": c.names, "atoms": rows }));
            Ok(0)
        }
        Command::Check { source } => {
            let c = load(source, &opts)?;
            let report = check_complex(&c)?;
            let ok = report.ok();
            emit(cli.report, &report);
            Ok(if ok { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
