//! Command-line front end.
//!
//! Exit codes: 0 success with a clean certificate, 2 unsupported input,
//! embedder failure or certificate violations, 1 usage or I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::certify::{certify_embedding, CertificateReport};
use crate::generate::{generate, GenKind};
use crate::graph::{as_path, caterpillar_decompose, GraphClass, Layer, LayeredInstance, MappingMode};
use crate::io::{self, IoError, ResultDocument};
use crate::mapped::{
    self, embed_path_caterpillar, embed_two_caterpillars, embed_two_paths, path_from_digits, GridShape,
    PointAssignment, SimultaneousEmbedding, COVERING_FIVE_PATHS,
};
use crate::svg::{default_styles, render_svg};
use crate::unmapped::{self, parabola_pointset, simul_embed_outerplanars, simul_embed_planar_outerplanar};

#[derive(Debug, Parser)]
#[command(name = "simembed", version, about = "Simultaneous geometric embeddings on integer grids")]
pub struct Cli {
    /// Seed for generators and sampled searches.
    #[arg(long, global = true, env = "SIMEMBED_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Embed an instance and certify the result.
    Embed(EmbedArgs),
    /// Re-check a result document.
    Certify(CertifyArgs),
    /// Draw a result document as SVG.
    Render(RenderArgs),
    /// Write a random instance.
    Gen(GenArgs),
    /// Pair coverage of five 5-vertex paths and a search for a crossing-free placement.
    Fivepaths(FivePathsArgs),
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Instance JSON; stdin when absent.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Result JSON; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Grid bound to certify, as WxH; defaults to the bound of the method used.
    #[arg(long, value_parser = parse_bounds)]
    pub bounds: Option<(i64, i64)>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_parser = parse_bounds)]
    pub bounds: Option<(i64, i64)>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// One kind per layer, e.g. `--kind path --kind caterpillar`.
    #[arg(long = "kind", value_enum, required = true)]
    pub kinds: Vec<GenKind>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_mapping, default_value = "given")]
    pub mapping: MappingMode,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FivePathsArgs {
    /// Grid side length, or WxH.
    #[arg(long, value_parser = parse_grid)]
    pub grid: GridShape,
    /// Comma-separated digit strings; defaults to the covering family.
    #[arg(long, value_delimiter = ',')]
    pub paths: Option<Vec<String>>,
    /// Sample this many random point subsets instead of searching exhaustively.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_bounds(s: &str) -> Result<(i64, i64), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let w = w.trim().parse().map_err(|e| format!("bad width: {e}"))?;
    let h = h.trim().parse().map_err(|e| format!("bad height: {e}"))?;
    Ok((w, h))
}

fn parse_grid(s: &str) -> Result<GridShape, String> {
    if let Ok(g) = s.trim().parse::<usize>() {
        return Ok(GridShape::square(g));
    }
    let (w, h) = parse_bounds(s)?;
    if w < 0 || h < 0 {
        return Err("grid dimensions must be non-negative".into());
    }
    Ok(GridShape { width: w as usize, height: h as usize })
}

fn parse_mapping(s: &str) -> Result<MappingMode, String> {
    match s {
        "given" => Ok(MappingMode::Given),
        "free" => Ok(MappingMode::Free),
        _ => Err(format!("expected given or free, got {s:?}")),
    }
}

/// Failures mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Unsupported(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub const SUPPORTED: &str = "supported combinations: given mapping with two layers of class path/caterpillar \
(path+path, path+caterpillar, caterpillar+caterpillar); free mapping with any number of \
path/caterpillar/outerplanar layers, or one planar layer plus one path/caterpillar/outerplanar layer";

/// Runs the CLI on process arguments.
pub fn run() -> i32 {
    run_with(std::env::args_os())
}

pub fn run_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            1
        }
        Err(Failure::Unsupported(m)) => {
            eprintln!("error: {m}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Embed(a) => cmd_embed(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Render(a) => cmd_render(a),
        Command::Gen(a) => cmd_gen(a, cli.seed),
        Command::Fivepaths(a) => cmd_fivepaths(a, cli.seed),
    }
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>, Failure> {
    match path {
        Some(p) => fs::read(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

/// Embedding plus the grid bound its method guarantees.
pub struct Solved {
    pub embedding: SimultaneousEmbedding,
    pub bound: (i64, i64),
}

fn class_is_outerplanar_like(c: GraphClass) -> bool {
    matches!(c, GraphClass::Path | GraphClass::Caterpillar | GraphClass::Outerplanar)
}

/// Picks the method for the instance's layer classes and mapping mode.
pub fn solve(inst: &LayeredInstance) -> Result<Solved, Failure> {
    let n = inst.n;
    let classes: Vec<GraphClass> = inst.layers.iter().map(|l| l.class).collect();
    let fail = |e: crate::error::EmbedError| Failure::Unsupported(format!("embedding failed: {e}"));
    let graph_fail = |e: crate::graph::GraphError| Failure::Usage(e.to_string());
    let ni = n as i64;

    let mut solved = match (inst.mapping, classes.as_slice()) {
        (MappingMode::Given, [GraphClass::Path, GraphClass::Path]) => {
            let p1 = as_path(&inst.layers[0], n).map_err(graph_fail)?;
            let p2 = as_path(&inst.layers[1], n).map_err(graph_fail)?;
            Solved {
                embedding: embed_two_paths(&p1, &p2).map_err(fail)?,
                bound: (ni, ni),
            }
        }
        (MappingMode::Given, [a, b])
            if matches!((a, b), (GraphClass::Path, GraphClass::Caterpillar) | (GraphClass::Caterpillar, GraphClass::Path)) =>
        {
            let (pi, ci) = if *a == GraphClass::Path { (0, 1) } else { (1, 0) };
            let p = as_path(&inst.layers[pi], n).map_err(graph_fail)?;
            let c = caterpillar_decompose(&inst.layers[ci], n).map_err(graph_fail)?;
            let (embedding, _) = embed_path_caterpillar(&p, &c).map_err(fail)?;
            Solved {
                embedding,
                bound: (2 * ni - c.leg_count() as i64, ni),
            }
        }
        (MappingMode::Given, [GraphClass::Caterpillar, GraphClass::Caterpillar]) => {
            let c1 = caterpillar_decompose(&inst.layers[0], n).map_err(graph_fail)?;
            let c2 = caterpillar_decompose(&inst.layers[1], n).map_err(graph_fail)?;
            Solved {
                embedding: embed_two_caterpillars(&c1, &c2).map_err(fail)?,
                bound: (ni * mapped::cell_width(n), ni * mapped::cell_height(n)),
            }
        }
        (MappingMode::Given, [GraphClass::Planar, GraphClass::Planar]) => {
            return Err(Failure::Unsupported(format!(
                "two planar layers with a given mapping cannot always be embedded simultaneously; {SUPPORTED}"
            )))
        }
        (MappingMode::Free, cs) if !cs.is_empty() && cs.iter().all(|&c| class_is_outerplanar_like(c)) => {
            let p = parabola_pointset(n).p as i64;
            Solved {
                embedding: simul_embed_outerplanars(&inst.layers, n).map_err(fail)?,
                bound: (p, p),
            }
        }
        (MappingMode::Free, [a, b])
            if (*a == GraphClass::Planar && class_is_outerplanar_like(*b))
                || (*b == GraphClass::Planar && class_is_outerplanar_like(*a)) =>
        {
            let swapped = *b == GraphClass::Planar;
            let (g1, g2): (&Layer, &Layer) = if swapped {
                (&inst.layers[1], &inst.layers[0])
            } else {
                (&inst.layers[0], &inst.layers[1])
            };
            let mut e = simul_embed_planar_outerplanar(g1, g2, n).map_err(fail)?;
            if swapped {
                let mut maps = e.assignment.take().expect("free-mode result has an assignment").maps;
                maps.swap(0, 1);
                e.assignment = Some(PointAssignment { maps });
            }
            Solved {
                embedding: e,
                bound: planar_general_position_bound(n),
            }
        }
        (mode, cs) => {
            let mode = match mode {
                MappingMode::Given => "given",
                MappingMode::Free => "free",
            };
            let names: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
            return Err(Failure::Unsupported(format!(
                "unsupported class combination [{}] with {mode} mapping; {SUPPORTED}",
                names.join(", ")
            )));
        }
    };
    solved.embedding.layers = inst.layers.iter().map(|l| l.edges.clone()).collect();
    Ok(solved)
}

/// Point counts per axis guaranteed by the general-position planar drawing.
pub fn planar_general_position_bound(n: usize) -> (i64, i64) {
    if n < 3 {
        return (2, 1);
    }
    let (ni, s) = (n as i64, unmapped::safety_factor(n));
    (
        (s * (2 * ni - 4) + 1) * mapped::cell_width(n),
        (s * (ni - 2) + 1) * mapped::cell_height(n),
    )
}

fn certify_or_fail(e: &SimultaneousEmbedding, inst: &LayeredInstance, bounds: (i64, i64)) -> Result<CertificateReport, Failure> {
    certify_embedding(e, inst, Some(bounds)).map_err(|err| Failure::Usage(err.to_string()))
}

fn cmd_embed(a: EmbedArgs) -> Result<i32, Failure> {
    let inst = io::parse_instance(&read_input(a.input.as_deref())?)?;
    let solved = solve(&inst)?;
    let bounds = a.bounds.unwrap_or(solved.bound);
    let report = certify_or_fail(&solved.embedding, &inst, bounds)?;
    let doc = ResultDocument::new(&solved.embedding, &inst, report.clone());
    write_output(a.out.as_deref(), &io::serialize_result(&doc))?;
    if let Some(svg) = &a.svg {
        let text = render_svg(&solved.embedding, &inst.vertex_labels, &default_styles(inst.layers.len()));
        write_output(Some(svg), &text)?;
    }
    Ok(exit_for(&report))
}

fn exit_for(report: &CertificateReport) -> i32 {
    if report.ok {
        0
    } else {
        eprintln!("certificate reports {} violation(s)", report.violations.len());
        2
    }
}

fn cmd_certify(a: CertifyArgs) -> Result<i32, Failure> {
    let doc = io::parse_result(&read_input(a.input.as_deref())?)?;
    let inst = doc.instance.clone().into_instance()?;
    let e = doc.embedding();
    let report = certify_embedding(&e, &inst, a.bounds).map_err(|err| Failure::Usage(err.to_string()))?;
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    write_output(a.out.as_deref(), &text)?;
    Ok(exit_for(&report))
}

fn cmd_render(a: RenderArgs) -> Result<i32, Failure> {
    let doc = io::parse_result(&read_input(a.input.as_deref())?)?;
    let labels = doc.instance.labels.clone().unwrap_or_default();
    let e = doc.embedding();
    write_output(a.svg.as_deref(), &render_svg(&e, &labels, &default_styles(e.layers.len())))?;
    Ok(0)
}

fn cmd_gen(a: GenArgs, seed: u64) -> Result<i32, Failure> {
    let layers = a
        .kinds
        .iter()
        .enumerate()
        .map(|(i, &k)| generate(k, a.n, seed.wrapping_add(i as u64)))
        .collect::<Result<Vec<Layer>, _>>()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let inst = LayeredInstance::new(a.n, a.mapping, layers);
    write_output(a.out.as_deref(), &io::serialize_instance(&inst))?;
    Ok(0)
}

fn cmd_fivepaths(a: FivePathsArgs, seed: u64) -> Result<i32, Failure> {
    let labels: Vec<String> = match a.paths {
        Some(p) => p,
        None => COVERING_FIVE_PATHS.iter().map(|s| s.to_string()).collect(),
    };
    let paths = labels
        .iter()
        .map(|s| path_from_digits(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let coverage = mapped::five_path_pair_coverage(&paths).map_err(|e| Failure::Usage(e.to_string()))?;
    let check = match a.samples {
        Some(s) => mapped::sampled_five_point_check(a.grid, &paths, s, seed),
        None => mapped::exhaustive_five_point_check(a.grid, &paths),
    }
    .map_err(|e| Failure::Unsupported(e.to_string()))?;

    let per_path: Vec<serde_json::Value> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            serde_json::json!({
                "path": l,
                "pairs": coverage.covered_by_path(i).iter().map(|p| p.label()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let summary = match &check.verdict {
        mapped::FivePointVerdict::NoCounterexample { .. } => "no counterexample",
        mapped::FivePointVerdict::Counterexample { .. } => "counterexample found",
        mapped::FivePointVerdict::Vacuous => "vacuous: no five points in general position",
    };
    let report = serde_json::json!({
        "grid": [a.grid.width, a.grid.height],
        "coverage": {
            "covered": coverage.pairs.len() - coverage.uncovered().len(),
            "total": coverage.pairs.len(),
            "uncovered": coverage.uncovered().iter().map(|p| p.label()).collect::<Vec<_>>(),
            "per_path": per_path,
        },
        "check": check,
        "summary": summary,
    });
    write_output(a.out.as_deref(), &serde_json::to_string_pretty(&report).expect("json values serialize"))?;
    eprintln!("{summary}");
    Ok(0)
}
