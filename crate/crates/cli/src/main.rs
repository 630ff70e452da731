//! Command-line front end: computes tropicalizations of parameterized
//! surfaces as weighted graphs and fans, realizes boundary complexes, pushes
//! fans forward along monomial maps and checks balancing.

mod input;

use clap::{Args, Parser, Subcommand};
use input::InputDocument;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tropsurf::complex::{
    pushforward_fan, realize_weighted_complex, BoundaryComplexInput, MatrixDto, WeightedFan,
};
use tropsurf::generic::{build_generic_graph, certify_generic, GenericOptions};
use tropsurf::graph::{
    check_balanced, graph_to_dot, graph_to_json, graph_to_svg, make_fan2d, merge_realized,
    suppress_bivalent, TropicalGraph,
};
use tropsurf::arith::seeded_rng;
use tropsurf::resolution::{
    build_nongeneric_graph, resolve_arrangement, ProjArrangement, ResolutionOptions,
};

const DEFAULT_SEED: u64 = 20120; // fixed constant for reproducible runs

#[derive(Parser)]
#[command(name = "tropsurf", version, about = "Tropicalization of parameterized surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonGraphArgs {
    /// input document (JSON)
    #[arg(long, short)]
    input: PathBuf,
    /// degree of the parameterizing map; overrides the document value
    #[arg(long)]
    delta: Option<u64>,
    /// seed for every internal random choice
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// merge vertices with equal realization points
    #[arg(long)]
    merge: bool,
    /// suppress straight bivalent vertices (implies --merge)
    #[arg(long)]
    suppress_bivalent: bool,
    /// retain zero-weight (dashed) edges in the output
    #[arg(long)]
    keep_zero_edges: bool,
    /// write the abstract graph in DOT format
    #[arg(long)]
    dot: Option<PathBuf>,
    /// write a 2D projection in SVG format
    #[arg(long)]
    svg: Option<PathBuf>,
    /// write the weighted fan spanned by the graph (JSON)
    #[arg(long)]
    fan: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Certify genericity and build the graph from Newton polygons and the
    /// refined normal fan
    Generic {
        #[command(flatten)]
        common: CommonGraphArgs,
        /// use mixed volumes for curve-curve weights (requires acceptance)
        #[arg(long)]
        mixed_volume: bool,
        /// build even when the certificate rejects (recorded in metadata)
        #[arg(long)]
        force: bool,
        /// count preimages of a random target and warn on mismatch with delta
        #[arg(long)]
        verify_delta: bool,
    },
    /// Compactify in the projective plane, resolve excess boundary points by
    /// blow-ups and build the graph
    Nongeneric {
        #[command(flatten)]
        common: CommonGraphArgs,
        /// maximum number of blow-up steps
        #[arg(long, default_value_t = 64)]
        max_blowups: usize,
        /// write the resolution diagram (JSON)
        #[arg(long)]
        diagram: Option<PathBuf>,
    },
    /// Run the genericity certificate only
    Check {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Realize a weighted boundary complex as a weighted fan
    Complex {
        /// boundary complex document (JSON)
        #[arg(long, short)]
        input: PathBuf,
    },
    /// Push a weighted fan forward along a monomial map
    Pushforward {
        /// weighted fan (JSON)
        #[arg(long)]
        fan: PathBuf,
        /// monomial-map matrix (JSON)
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 1)]
        delta: u64,
    },
    /// Check the balancing condition of a 2-dimensional weighted fan
    Balance {
        /// weighted fan (JSON)
        #[arg(long)]
        fan: PathBuf,
    },
    /// Run the embedded regression suite over the worked examples
    Fixtures,
}

#[derive(Serialize)]
struct ErrorReport {
    error: String,
}

#[derive(Serialize)]
struct CertificateReport {
    accepted: bool,
    violations: Vec<ViolationReport>,
}

#[derive(Serialize)]
struct ViolationReport {
    kind: String,
    witness: String,
}

#[derive(Serialize)]
struct BalanceReportDto {
    balanced: bool,
    failures: Vec<BalanceFailureDto>,
}

#[derive(Serialize)]
struct BalanceFailureDto {
    ray: Vec<i64>,
    deficit: Vec<i64>,
}

#[derive(Serialize)]
struct DiagramDto {
    coordinates: usize,
    degrees: Vec<u32>,
    blowups: Vec<StepDto>,
    pullback_infinity: Vec<i64>,
    pullback_curves: Vec<Vec<i64>>,
    intersection_table: Vec<TableEntryDto>,
}

#[derive(Serialize)]
struct StepDto {
    center: String,
    chart: usize,
    multiplicities: Vec<(String, u32)>,
    forced: bool,
}

#[derive(Serialize)]
struct TableEntryDto {
    divisors: [String; 2],
    number: i64,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    let report = ErrorReport { error: msg.to_string() };
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    ExitCode::from(1)
}

fn read(path: &Path) -> Result<Vec<u8>, String> {
    std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), String> {
    std::fs::write(path, bytes).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn certificate_report(cert: &tropsurf::generic::GenericityCertificate) -> CertificateReport {
    CertificateReport {
        accepted: cert.accepted(),
        violations: cert
            .violations
            .iter()
            .map(|v| ViolationReport {
                kind: v.kind.as_str().to_string(),
                witness: v.witness.clone(),
            })
            .collect(),
    }
}

fn postprocess(g: &TropicalGraph, common: &CommonGraphArgs) -> TropicalGraph {
    let mut out = if common.suppress_bivalent {
        suppress_bivalent(g)
    } else if common.merge {
        merge_realized(g)
    } else {
        g.clone()
    };
    if !common.keep_zero_edges {
        out.edges.retain(|e| !e.zero);
    }
    out
}

fn emit_graph(g: &TropicalGraph, common: &CommonGraphArgs) -> Result<(), String> {
    let g = postprocess(g, common);
    println!("{}", graph_to_json(&g).map_err(|e| e.to_string())?);
    if let Some(p) = &common.dot {
        write_file(p, graph_to_dot(&g).as_bytes())?;
    }
    if let Some(p) = &common.svg {
        write_file(p, graph_to_svg(&g, common.seed).as_bytes())?;
    }
    if let Some(p) = &common.fan {
        let fan = make_fan2d(&g).map_err(|e| e.to_string())?;
        write_file(p, fan.to_json().map_err(|e| e.to_string())?.as_bytes())?;
    }
    Ok(())
}

fn load_input(path: &Path, delta: Option<u64>) -> Result<(InputDocument, tropsurf::generic::GenericInput), String> {
    let bytes = read(path)?;
    let mut doc = InputDocument::parse(&bytes)?;
    if let Some(d) = delta {
        doc.delta = d;
    }
    let input = doc.to_generic_input()?;
    Ok((doc, input))
}

fn run_generic(
    mut common: CommonGraphArgs,
    mixed_volume: bool,
    force: bool,
    verify_delta: bool,
) -> ExitCode {
    let (doc, input) = match load_input(&common.input, common.delta) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    common.suppress_bivalent |= doc.options.suppress_bivalent;
    common.keep_zero_edges |= doc.options.keep_zero_edges;
    let opts = GenericOptions {
        force,
        use_mixed_volume: mixed_volume || doc.options.mixed_volume,
        verify_delta,
        seed: common.seed,
    };
    let mut rng = seeded_rng(common.seed);
    match build_generic_graph(&input, &opts, &mut rng) {
        Ok((g, _)) => match emit_graph(&g, &common) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
        Err(tropsurf::Error::CertificateRejected(_)) => {
            // re-run the certificate for the machine-readable report
            let mut rng = seeded_rng(common.seed);
            match certify_generic(&input, &mut rng) {
                Ok(cert) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&certificate_report(&cert)).unwrap()
                    );
                    ExitCode::from(1)
                }
                Err(e) => fail(e),
            }
        }
        Err(e) => fail(e),
    }
}

fn run_nongeneric(
    mut common: CommonGraphArgs,
    max_blowups: usize,
    diagram_path: Option<PathBuf>,
) -> ExitCode {
    let (doc, input) = match load_input(&common.input, common.delta) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    common.suppress_bivalent |= doc.options.suppress_bivalent;
    common.keep_zero_edges |= doc.options.keep_zero_edges;
    let arr = match ProjArrangement::from_input(&input) {
        Ok(a) => a,
        Err(e) => return fail(e),
    };
    let opts = ResolutionOptions { max_steps: max_blowups };
    let (model, diagram) = match resolve_arrangement(&arr, &opts) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let delta = common.delta.unwrap_or(doc.delta);
    let g = match build_nongeneric_graph(&model, delta, common.seed) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    if let Some(p) = &diagram_path {
        let dto = DiagramDto {
            coordinates: diagram.n,
            degrees: diagram.degrees.clone(),
            blowups: diagram
                .steps
                .iter()
                .map(|s| StepDto {
                    center: s.center.to_string(),
                    chart: s.chart,
                    multiplicities: s
                        .mults
                        .iter()
                        .map(|(&d, &m)| (model.divisor_label(d), m))
                        .collect(),
                    forced: s.forced,
                })
                .collect(),
            pullback_infinity: diagram
                .b_infinity
                .iter()
                .map(|v| tropsurf::arith::int_to_i64(v).unwrap_or(i64::MAX))
                .collect(),
            pullback_curves: diagram
                .b_curves
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| tropsurf::arith::int_to_i64(v).unwrap_or(i64::MAX))
                        .collect()
                })
                .collect(),
            intersection_table: diagram
                .intersection_table
                .iter()
                .map(|(&(a, b), v)| TableEntryDto {
                    divisors: [model.divisor_label(a), model.divisor_label(b)],
                    number: tropsurf::arith::int_to_i64(v).unwrap_or(i64::MAX),
                })
                .collect(),
        };
        if let Err(e) = write_file(p, serde_json::to_string_pretty(&dto).unwrap().as_bytes()) {
            return fail(e);
        }
    }
    match emit_graph(&g, &common) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn run_check(input_path: &Path, seed: u64) -> ExitCode {
    let (_, input) = match load_input(input_path, None) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let mut rng = seeded_rng(seed);
    match certify_generic(&input, &mut rng) {
        Ok(cert) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&certificate_report(&cert)).unwrap()
            );
            if cert.accepted() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(e),
    }
}

fn run_complex(input_path: &Path) -> ExitCode {
    let bytes = match read(input_path) {
        Ok(b) => b,
        Err(e) => return fail(e),
    };
    let doc: BoundaryComplexInput = match serde_json::from_slice(&bytes) {
        Ok(d) => d,
        Err(e) => return fail(format!("malformed boundary complex: {e}")),
    };
    match realize_weighted_complex(&doc) {
        Ok(fan) => {
            println!("{}", fan.to_json().unwrap());
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn run_pushforward(fan_path: &Path, matrix_path: &Path, delta: u64) -> ExitCode {
    let fan = match read(fan_path)
        .and_then(|b| String::from_utf8(b).map_err(|e| e.to_string()))
        .and_then(|s| WeightedFan::from_json(&s).map_err(|e| e.to_string()))
    {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let matrix: MatrixDto = match read(matrix_path)
        .and_then(|b| serde_json::from_slice(&b).map_err(|e| e.to_string()))
    {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let a = match matrix.to_matrix() {
        Ok(a) => a,
        Err(e) => return fail(e),
    };
    match pushforward_fan(&fan, &a, delta) {
        Ok(out) => {
            println!("{}", out.to_json().unwrap());
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn run_balance(fan_path: &Path) -> ExitCode {
    let fan = match read(fan_path)
        .and_then(|b| String::from_utf8(b).map_err(|e| e.to_string()))
        .and_then(|s| WeightedFan::from_json(&s).map_err(|e| e.to_string()))
    {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    match check_balanced(&fan) {
        Ok(report) => {
            let dto = BalanceReportDto {
                balanced: report.balanced,
                failures: report
                    .failures
                    .iter()
                    .map(|f| BalanceFailureDto {
                        ray: f.ray.0.iter().map(|x| tropsurf::arith::int_to_i64(x).unwrap()).collect(),
                        deficit: f
                            .deficit
                            .0
                            .iter()
                            .map(|x| tropsurf::arith::int_to_i64(x).unwrap())
                            .collect(),
                    })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&dto).unwrap());
            if report.balanced {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(e),
    }
}

fn run_fixtures() -> ExitCode {
    let results = tropsurf::fixtures::run_all();
    let mut ok = true;
    for r in &results {
        println!(
            "criterion {:2}: {} - {}{}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            if r.detail.is_empty() { String::new() } else { format!(" ({})", r.detail) }
        );
        ok &= r.passed;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Generic { common, mixed_volume, force, verify_delta } => {
            run_generic(common, mixed_volume, force, verify_delta)
        }
        Command::Nongeneric { common, max_blowups, diagram } => {
            run_nongeneric(common, max_blowups, diagram)
        }
        Command::Check { input, seed } => run_check(&input, seed),
        Command::Complex { input } => run_complex(&input),
        Command::Pushforward { fan, matrix, delta } => run_pushforward(&fan, &matrix, delta),
        Command::Balance { fan } => run_balance(&fan),
        Command::Fixtures => run_fixtures(),
    }
}
