use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use springer_cup::components::{
    build_flag, distinctness_failures, incidence_graph, type_c_component_count, verify_component,
    ComponentError, ComponentReport, IncidenceGraph, ParamAssignment,
};
use springer_cup::diagram::{
    enumerate_type_a, enumerate_type_d, format_diagram, parse_diagram, render, CupDiagram,
    DiagramError, Kind, Parity, PartitionError, RenderFormat,
};
use springer_cup::springer::{check_membership, Flag, SpringerError};
use springer_cup::Scalar;

#[derive(Parser, Debug)]
#[command(name = "springer-cup", version, about = "Cup diagrams and two-row Springer fiber components")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for parallel sweeps; output order does not depend on it.
    #[arg(long, global = true, env = "SPRINGER_CUP_JOBS")]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the cup diagrams of a Jordan type.
    Enumerate {
        #[command(flatten)]
        fiber: Fiber,
        /// Type D only: keep diagrams with an even or odd number of markers.
        #[arg(long)]
        parity: Option<ParityArg>,
        /// Also write one SVG per diagram into this directory.
        #[arg(long)]
        svg_dir: Option<PathBuf>,
    },
    /// Build the flag of a component at given parameters.
    Build {
        #[arg(long)]
        diagram: String,
        /// Comma-separated points of P^1, e.g. "1:2,0:1,1/2:-3".
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Test a flag (JSON file, "-" for stdin) against the relations of a diagram.
    Check {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        flag: PathBuf,
    },
    /// Sample components and check builder output, membership and injectivity.
    Verify {
        #[command(flatten)]
        fiber: OptFiber,
        /// A single diagram instead of a whole fiber.
        #[arg(long, conflicts_with_all = ["kind", "n", "k"])]
        diagram: Option<String>,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Also check that every pair of components is told apart.
        #[arg(long)]
        distinct: bool,
    },
    /// Exact incidence graph of the P^1 components of a fiber.
    Incidence {
        #[command(flatten)]
        fiber: Fiber,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Draw a diagram.
    Render {
        #[arg(long)]
        diagram: String,
        #[arg(long, value_enum, default_value_t = DrawFormat::Ascii)]
        format: DrawFormat,
    },
    /// Number of components (cup diagrams) of a Jordan type.
    Count {
        #[command(flatten)]
        fiber: Fiber,
        #[arg(long)]
        parity: Option<ParityArg>,
    },
}

#[derive(Args, Debug)]
struct Fiber {
    #[arg(long = "type", value_enum, ignore_case = true)]
    kind: TypeArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Args, Debug)]
struct OptFiber {
    #[arg(long = "type", value_enum, ignore_case = true)]
    kind: Option<TypeArg>,
    #[arg(long)]
    n: Option<usize>,
    /// Omit to sweep every admissible k.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TypeArg {
    #[value(name = "A")]
    A,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DrawFormat {
    Ascii,
    Svg,
}

/// An error with a stable machine-readable code.
#[derive(Debug)]
struct Failure {
    code: &'static str,
    message: String,
    usage: bool,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: "usage", message: message.into(), usage: true }
    }

    fn domain(code: &'static str, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), usage: false }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        let code = match &e {
            DiagramError::Invalid(_) => "invalid_diagram",
            DiagramError::Partition(_) => "bad_partition",
            DiagramError::Parse { .. } => "parse_diagram",
            _ => "diagram",
        };
        Failure::domain(code, e.to_string())
    }
}

impl From<PartitionError> for Failure {
    fn from(e: PartitionError) -> Self {
        Failure::domain("bad_partition", e.to_string())
    }
}

impl From<SpringerError> for Failure {
    fn from(e: SpringerError) -> Self {
        let code = match &e {
            SpringerError::NotAFlag { .. } => "not_a_flag",
            SpringerError::ShapeMismatch { .. } => "shape_mismatch",
            SpringerError::Json(_) => "bad_flag_json",
            SpringerError::Diagram(d) => return Failure::from(d.clone()),
            SpringerError::Linalg(_) => "linalg",
        };
        Failure::domain(code, e.to_string())
    }
}

impl From<ComponentError> for Failure {
    fn from(e: ComponentError) -> Self {
        let code = match &e {
            ComponentError::ParamCount { .. } => "param_count",
            ComponentError::ZeroParam | ComponentError::ParseParam(_) => "bad_params",
            ComponentError::DegenerateFiber { .. } => "degenerate_parameter",
            ComponentError::NotP1 { .. } => "not_p1",
            ComponentError::DifferentFibers => "different_fibers",
            ComponentError::NotTypeC { .. } => "bad_partition",
            ComponentError::Diagram(d) => return Failure::from(d.clone()),
            ComponentError::Springer(s) => return Failure::from(s.clone()),
            _ => "component",
        };
        Failure::domain(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::domain("io", e.to_string())
    }
}

/// What a subcommand produced: JSON, plus a text rendering for `--pretty`
/// or for formats that are not JSON.
struct Output {
    json: Option<Value>,
    text: Option<String>,
}

impl Output {
    fn json(v: Value, pretty: String) -> Self {
        Output { json: Some(v), text: Some(pretty) }
    }

    fn text(s: String) -> Self {
        Output { json: None, text: Some(s) }
    }
}

fn parse_d(text: &str) -> Result<CupDiagram, Failure> {
    let d = parse_diagram(text)?;
    d.validate().map_err(DiagramError::from)?;
    Ok(d)
}

fn diagrams_of(kind: TypeArg, n: usize, k: usize, parity: Option<ParityArg>) -> Result<Vec<CupDiagram>, Failure> {
    match kind {
        TypeArg::A => {
            if parity.is_some() {
                return Err(Failure::usage("--parity applies to types C and D only"));
            }
            Ok(enumerate_type_a(n, k)?)
        }
        TypeArg::D => Ok(enumerate_type_d(n, k, parity.map(Parity::from))?),
        TypeArg::C => {
            if parity.is_some() {
                return Err(Failure::usage("--parity applies to types C and D only"));
            }
            // components of C_{n,k} are indexed by the even diagrams of D_{n+2,k+1}
            type_c_component_count(n, k)?;
            Ok(enumerate_type_d(n + 2, k + 1, Some(Parity::Even))?)
        }
    }
}

fn diagram_json(d: &CupDiagram) -> Value {
    let mut v = d.to_json();
    v["text"] = json!(format_diagram(d));
    if d.kind == Kind::D {
        v["parity"] = json!(d.parity().to_string());
    }
    v
}

fn enumerate(fiber: &Fiber, parity: Option<ParityArg>, svg_dir: Option<&Path>) -> Result<Output, Failure> {
    let ds = diagrams_of(fiber.kind, fiber.n, fiber.k, parity)?;
    if let Some(dir) = svg_dir {
        fs::create_dir_all(dir)?;
        for (i, d) in ds.iter().enumerate() {
            fs::write(dir.join(format!("diagram-{i:04}.svg")), render(d, RenderFormat::Svg))?;
        }
    }
    Ok(Output::json(Value::Array(ds.iter().map(diagram_json).collect()), diagram_table(&ds)))
}

fn diagram_table(ds: &[CupDiagram]) -> String {
    let mut t = format!("{} diagrams\n", ds.len());
    for d in ds {
        let _ = writeln!(t, "  {d}");
    }
    t
}

fn build(diagram: &str, params: &str) -> Result<Output, Failure> {
    let d = parse_d(diagram)?;
    let ps: ParamAssignment<Scalar> = params.parse()?;
    let flag = build_flag(&d, &ps)?;
    let mut t = format!("{d} at [{ps}]\n");
    for i in 1..flag.ambient() {
        let rows: Vec<String> = flag.get(i).basis().iter().map(|r| format!("({})", join(r))).collect();
        let _ = writeln!(t, "  F_{i} = <{}>", rows.join(", "));
    }
    let v = json!({ "diagram": format_diagram(&d), "params": ps.to_string(), "flag": flag.to_json() });
    Ok(Output::json(v, t))
}

fn join(r: &[Scalar]) -> String {
    r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn check(diagram: &str, flag_path: &Path) -> Result<Output, Failure> {
    let d = parse_d(diagram)?;
    let raw = if flag_path == Path::new("-") {
        io::read_to_string(io::stdin())?
    } else {
        fs::read_to_string(flag_path)?
    };
    let v: Value = serde_json::from_str(&raw).map_err(|e| Failure::domain("bad_flag_json", e.to_string()))?;
    // accept either a bare flag or the output of `build`
    let flag: Flag<Scalar> = Flag::from_json(v.get("flag").unwrap_or(&v))?;
    let report = check_membership(&flag, &d)?;
    let t = match report.first_failure() {
        None => format!("{d}: member\n"),
        Some(f) => format!("{d}: not a member ({} fails at vertex {})\n", f.rule, f.vertex),
    };
    let mut v = serde_json::to_value(&report).expect("report serializes");
    v["diagram"] = json!(format_diagram(&d));
    v["passed"] = json!(report.passed());
    Ok(Output::json(v, t))
}

fn verify(
    fiber: &OptFiber,
    diagram: Option<&str>,
    samples: usize,
    seed: u64,
    distinct: bool,
) -> Result<Output, Failure> {
    let groups: Vec<Vec<CupDiagram>> = match (diagram, fiber.kind, fiber.n) {
        (Some(text), _, _) => vec![vec![parse_d(text)?]],
        (None, Some(TypeArg::C), _) => {
            return Err(Failure::usage("verify works on type A and D diagrams; use the type D fiber of a type C reduction"))
        }
        (None, Some(kind), Some(n)) => {
            let ks: Vec<usize> = match fiber.k {
                Some(k) => vec![k],
                None => (1..=n / 2).collect(),
            };
            let mut groups = Vec::new();
            for k in ks {
                match diagrams_of(kind, n, k, None) {
                    Ok(ds) => groups.push(ds),
                    // sweeping k skips the inadmissible Jordan types
                    Err(_) if fiber.k.is_none() => {}
                    Err(e) => return Err(e),
                }
            }
            groups
        }
        _ => return Err(Failure::usage("give either --diagram or --type and --n")),
    };
    let mut reports: Vec<ComponentReport> = Vec::new();
    let mut undistinguished = Vec::new();
    for ds in &groups {
        for (i, d) in ds.iter().enumerate() {
            reports.push(verify_component(d, samples, seed.wrapping_add(i as u64)));
        }
        if distinct {
            for (i, j) in distinctness_failures(ds, samples.clamp(1, 3), seed)? {
                undistinguished.push(json!([format_diagram(&ds[i]), format_diagram(&ds[j])]));
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let mut t = String::new();
    for r in &reports {
        let _ = writeln!(
            t,
            "{:<40} {:>3} samples {:>3} failures  injective: {}",
            r.diagram,
            r.samples,
            r.failures.len(),
            if r.injectivity { "yes" } else { "no" }
        );
    }
    let _ = writeln!(t, "{} components, {} failed", reports.len(), failed);
    if distinct {
        let _ = writeln!(t, "{} undistinguished pairs", undistinguished.len());
    }
    let mut v = json!({
        "seed": seed,
        "samples": samples,
        "components": reports.len(),
        "failed": failed,
        "reports": reports,
    });
    if distinct {
        v["undistinguished"] = Value::Array(undistinguished);
    }
    Ok(Output::json(v, t))
}

fn incidence(fiber: &Fiber, format: GraphFormat) -> Result<Output, Failure> {
    if fiber.kind == TypeArg::C {
        return Err(Failure::usage("incidence works on type A and D fibers"));
    }
    let ds: Vec<CupDiagram> =
        diagrams_of(fiber.kind, fiber.n, fiber.k, None)?.into_iter().filter(|d| d.cups.len() == 1).collect();
    let g: IncidenceGraph<Scalar> = incidence_graph(&ds)?;
    Ok(match format {
        GraphFormat::Dot => Output::text(g.to_dot()),
        GraphFormat::Json => {
            let mut t = format!("{} nodes, {} edges, {} connected components\n", ds.len(), g.edges.len(), g.components().len());
            for (i, d) in ds.iter().enumerate() {
                let _ = writeln!(t, "  {i}: {d}");
            }
            for (a, b, l) in &g.edges {
                let _ = writeln!(t, "  {a} -- {b}  {}", l.to_json());
            }
            Output::json(g.to_json(), t)
        }
    })
}

fn count(fiber: &Fiber, parity: Option<ParityArg>) -> Result<Output, Failure> {
    let c = match fiber.kind {
        TypeArg::C if parity.is_none() => type_c_component_count(fiber.n, fiber.k)?,
        _ => diagrams_of(fiber.kind, fiber.n, fiber.k, parity)?.len(),
    };
    Ok(Output::json(json!(c), format!("{c}\n")))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Enumerate { fiber, parity, svg_dir } => enumerate(fiber, *parity, svg_dir.as_deref()),
        Command::Build { diagram, params } => build(diagram, params),
        Command::Check { diagram, flag } => check(diagram, flag),
        Command::Verify { fiber, diagram, samples, seed, distinct } => {
            verify(fiber, diagram.as_deref(), *samples, *seed, *distinct)
        }
        Command::Incidence { fiber, format } => incidence(fiber, *format),
        Command::Render { diagram, format } => {
            let f = match format {
                DrawFormat::Ascii => RenderFormat::Ascii,
                DrawFormat::Svg => RenderFormat::Svg,
            };
            Ok(Output::text(render(&parse_d(diagram)?, f)))
        }
        Command::Count { fiber, parity } => count(fiber, *parity),
    }
}

fn emit(cli: &Cli, out: Output) -> Result<(), Failure> {
    let body = match (&out.json, cli.pretty) {
        (Some(v), false) => format!("{}\n", serde_json::to_string_pretty(v).expect("json")),
        _ => out.text.unwrap_or_default(),
    };
    match &cli.output {
        Some(p) => fs::write(p, body)?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn fail(f: Failure) -> ExitCode {
    eprintln!("{}", json!({ "code": f.code, "message": f.message }));
    ExitCode::from(if f.usage { 2 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            return fail(Failure::usage(msg.trim().to_string()));
        }
    };
    if cli.jobs == Some(0) {
        return fail(Failure::usage("--jobs must be at least 1"));
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => return fail(Failure::domain("threads", e.to_string())),
    };
    match pool.install(|| run(&cli)).and_then(|out| emit(&cli, out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(f),
    }
}
