//! Command-line front end: build polar-space and design graphs, construct
//! switching sets, apply switching, and certify the results.
//!
//! Exit codes: 0 success, 1 a certify expectation failed, 2 invalid
//! specification or arguments, 3 no valid configuration exists (reported
//! after exhaustive search), 4 switching-set validation failed.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use srgswitch::certify::{self, Certificate, CospectralPolicy};
use srgswitch::designs;
use srgswitch::geometry::{FormKind, PointFilter, PolarSpace, Sign};
use srgswitch::graph::Graph;
use srgswitch::graph6;
use srgswitch::polar_graphs::{self, BuiltGraph};
use srgswitch::switching::{
    self, QuotientTarget, SwitchingRecord, SwitchingSetPair,
};

const EXIT_EXPECTATION: u8 = 1;
const EXIT_BAD_SPEC: u8 = 2;
const EXIT_NO_CONFIGURATION: u8 = 3;
const EXIT_INVALID_SET: u8 = 4;

/// Vertex counts above this need --allow-large.
const LARGE_VERTEX_GATE: usize = 5000;

#[derive(Parser)]
#[command(
    name = "srgswitch",
    about = "Build, switch, and certify strongly regular graphs from polar spaces and designs",
    after_help = "Thread count for spectral checks honors SRGSWITCH_THREADS when set."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and write it as graph6 plus a vertex-label sidecar.
    Build(BuildArgs),
    /// Construct a switching set for a built graph, written as JSON.
    Switchset(SwitchsetArgs),
    /// Validate and apply a switching set to a graph6 file.
    Switch(SwitchArgs),
    /// Run certificate checks between two graphs against expectations.
    Certify(CertifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceKind {
    /// symplectic Sp(n, q)
    Sp,
    /// parabolic quadric O(n, q), n odd
    O,
    /// hyperbolic quadric O+(n, q)
    #[value(name = "o+")]
    OPlus,
    /// elliptic quadric O-(n, q)
    #[value(name = "o-")]
    OMinus,
    /// hermitian U(n, sqrt(q)); q is the ambient field order
    U,
}

impl SpaceKind {
    fn form(self) -> FormKind {
        match self {
            SpaceKind::Sp => FormKind::Symplectic,
            SpaceKind::O => FormKind::Parabolic,
            SpaceKind::OPlus => FormKind::Hyperbolic,
            SpaceKind::OMinus => FormKind::Elliptic,
            SpaceKind::U => FormKind::Hermitian,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Collinearity,
    Polarity,
    Block,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Plus,
    Minus,
}

impl ClassArg {
    fn sign(self) -> Sign {
        match self {
            ClassArg::Plus => Sign::Plus,
            ClassArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DesignKind {
    Grassmann,
    Ag,
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Polar space family (mutually exclusive with --design).
    #[arg(long, value_enum)]
    space: Option<SpaceKind>,
    /// Design family (mutually exclusive with --space).
    #[arg(long, value_enum)]
    design: Option<DesignKind>,
    /// Ambient dimension (spaces) or vector-space dimension (designs).
    #[arg(long)]
    n: Option<usize>,
    /// Field order.
    #[arg(long)]
    q: Option<u64>,
    /// Square class for quadric polarity graphs.
    #[arg(long, value_enum, default_value = "plus")]
    class: ClassArg,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Which graph to build on the source.
    #[arg(long, value_enum)]
    graph: GraphKind,
    /// Output graph6 path.
    #[arg(short = 'o', long)]
    out: PathBuf,
    /// Vertex-label sidecar path (default: `<out>.labels`).
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Also write the design in its text format (block builds only).
    #[arg(long)]
    design_out: Option<PathBuf>,
    /// Also write a plain-text adjacency listing (debugging aid).
    #[arg(long)]
    adjacency: Option<PathBuf>,
    /// Permit builds above the large-graph gate.
    #[arg(long)]
    allow_large: bool,
    /// Write a run manifest here.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetKind {
    Collinearity,
    Tangent,
    Design,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuotientArg {
    /// U(2, sqrt(q)) quotient (hermitian spaces).
    U2,
    Hyperbolic,
    Elliptic,
    /// Elliptic when q = 3 mod 4, hyperbolic when q = 1 mod 4, u2 for
    /// hermitian spaces.
    Auto,
    Any,
}

#[derive(Args)]
struct SwitchsetArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Which graph the set indexes into (must match the build).
    #[arg(long, value_enum)]
    graph: GraphKind,
    /// Switching-set construction.
    #[arg(long, value_enum)]
    kind: SetKind,
    /// Isotropic subspace dimension for collinearity sets (default: rank).
    #[arg(long)]
    m: Option<usize>,
    /// Quotient target for tangent sets.
    #[arg(long, value_enum, default_value = "auto")]
    quotient: QuotientArg,
    /// Subdesign subspace dimension for design sets.
    #[arg(long, default_value_t = 3)]
    s: usize,
    /// Swap points for design sets (default: first two subdesign points).
    #[arg(long)]
    p1: Option<usize>,
    /// Second swap point.
    #[arg(long)]
    p2: Option<usize>,
    /// graph6 file to bind the record to by digest.
    #[arg(long)]
    bind: Option<PathBuf>,
    /// Output record path.
    #[arg(short = 'o', long)]
    out: PathBuf,
    /// Recorded in the manifest; the search itself is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    allow_large: bool,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Wqh,
    Gm,
}

#[derive(Args)]
struct SwitchArgs {
    /// Input graph6 path.
    #[arg(long)]
    graph: PathBuf,
    /// Switching-set record path.
    #[arg(long)]
    set: PathBuf,
    /// wqh swaps full sides; gm complements half-adjacencies against the
    /// single cell C1 ∪ C2.
    #[arg(long, value_enum, default_value = "wqh")]
    method: MethodArg,
    /// Output graph6 path.
    #[arg(short = 'o', long)]
    out: PathBuf,
    /// Validation transcript path (default: `<out>.transcript.json`).
    #[arg(long)]
    transcript: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    /// First graph6 file.
    #[arg(long)]
    a: PathBuf,
    /// Second graph6 file.
    #[arg(long)]
    b: PathBuf,
    /// Comma-separated checks: srg, cospectral, triangles, cliques,
    /// fourcliques, iso.
    #[arg(long)]
    checks: String,
    /// Comma-separated expected verdicts (pass/fail), aligned with
    /// --checks; defaults to all pass.
    #[arg(long)]
    expect: Option<String>,
    /// Floor for the maximal-clique-size check.
    #[arg(long, default_value_t = 1)]
    clique_floor: usize,
    /// Random primes for the cospectrality check.
    #[arg(long, default_value_t = 5)]
    primes: usize,
    /// Seed for prime sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Permit graphs above the large-graph gate.
    #[arg(long)]
    allow_large: bool,
    /// Run the characteristic-polynomial route regardless of size.
    #[arg(long)]
    force_charpoly: bool,
    /// Report path (default: stdout only).
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }

    fn bad_spec(message: impl Into<String>) -> Failure {
        Failure::new(EXIT_BAD_SPEC, message)
    }
}

type RunResult = Result<(), Failure>;

/// One file the run read or wrote, with its content digest.
#[derive(Serialize, Deserialize)]
struct ManifestFile {
    path: String,
    sha256: String,
}

/// Reproducibility record: identical manifests (minus wall clock) mean
/// byte-identical outputs.
#[derive(Serialize, Deserialize)]
struct RunManifest {
    schema_version: u32,
    tool_version: String,
    command_line: Vec<String>,
    seeds: BTreeMap<String, u64>,
    inputs: Vec<ManifestFile>,
    outputs: Vec<ManifestFile>,
    wall_clock_unix: u64,
}

struct ManifestBuilder {
    seeds: BTreeMap<String, u64>,
    inputs: Vec<ManifestFile>,
    outputs: Vec<ManifestFile>,
}

impl ManifestBuilder {
    fn new() -> ManifestBuilder {
        ManifestBuilder { seeds: BTreeMap::new(), inputs: Vec::new(), outputs: Vec::new() }
    }

    fn seed(&mut self, name: &str, value: u64) {
        self.seeds.insert(name.to_string(), value);
    }

    fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.push(ManifestFile {
            path: path.display().to_string(),
            sha256: certify::sha256_hex(bytes),
        });
    }

    fn output(&mut self, path: &Path, bytes: &[u8]) {
        self.outputs.push(ManifestFile {
            path: path.display().to_string(),
            sha256: certify::sha256_hex(bytes),
        });
    }

    fn write(self, to: Option<&Path>) -> RunResult {
        let Some(to) = to else { return Ok(()) };
        let manifest = RunManifest {
            schema_version: 1,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command_line: std::env::args().collect(),
            seeds: self.seeds,
            inputs: self.inputs,
            outputs: self.outputs,
            wall_clock_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        write_file(to, text.as_bytes())
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> RunResult {
    std::fs::write(path, bytes)
        .map_err(|e| Failure::bad_spec(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path)
        .map_err(|e| Failure::bad_spec(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<(Graph, Vec<u8>), Failure> {
    let bytes = read_file(path)?;
    let graph = graph6::decode(&bytes)
        .map_err(|e| Failure::bad_spec(format!("{}: {e}", path.display())))?;
    Ok((graph, bytes))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Switchset(args) => cmd_switchset(args),
        Command::Switch(args) => cmd_switch(args),
        Command::Certify(args) => cmd_certify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn space_from(source: &SourceArgs) -> Result<PolarSpace, Failure> {
    let kind = source.space.ok_or_else(|| Failure::bad_spec("--space is required here"))?;
    let n = source.n.ok_or_else(|| Failure::bad_spec("--n is required"))?;
    let q = source.q.ok_or_else(|| Failure::bad_spec("--q is required"))?;
    PolarSpace::standard(kind.form(), n, q).map_err(|e| Failure::bad_spec(e.to_string()))
}

fn point_filter_for(space: &PolarSpace, class: ClassArg) -> PointFilter {
    if space.kind().is_quadratic() {
        PointFilter::Class(class.sign())
    } else {
        PointFilter::Nonisotropic
    }
}

/// Builds the requested graph on a polar space, gating on the vertex count
/// before the quadratic adjacency work.
fn build_space_graph(
    source: &SourceArgs,
    graph: GraphKind,
    allow_large: bool,
) -> Result<BuiltGraph, Failure> {
    let space = space_from(source)?;
    let filter = match graph {
        GraphKind::Collinearity => PointFilter::Isotropic,
        GraphKind::Polarity => point_filter_for(&space, source.class),
        GraphKind::Block => {
            return Err(Failure::bad_spec("--graph block needs --design, not --space"))
        }
    };
    let count = space
        .enumerate_points(filter)
        .map_err(|e| Failure::bad_spec(e.to_string()))?
        .len();
    gate_large(count, allow_large)?;
    let built = match graph {
        GraphKind::Collinearity => polar_graphs::collinearity_graph(&space),
        _ => polar_graphs::polarity_graph(&space, filter),
    };
    built.map_err(|e| Failure::bad_spec(e.to_string()))
}

fn build_design(source: &SourceArgs) -> Result<designs::Design, Failure> {
    match source.design {
        Some(DesignKind::Grassmann) => {
            let n = source.n.ok_or_else(|| Failure::bad_spec("--n is required"))?;
            let q = source.q.ok_or_else(|| Failure::bad_spec("--q is required"))?;
            designs::grassmann_design(n, q)
                .map(|(d, _)| d)
                .map_err(|e| Failure::bad_spec(e.to_string()))
        }
        Some(DesignKind::Ag) => {
            if source.n.unwrap_or(3) != 3 || source.q.unwrap_or(3) != 3 {
                return Err(Failure::bad_spec("the affine design is fixed at --n 3 --q 3"));
            }
            Ok(designs::ag_design())
        }
        None => Err(Failure::bad_spec("--design is required here")),
    }
}

fn gate_large(n: usize, allow_large: bool) -> RunResult {
    if n > LARGE_VERTEX_GATE && !allow_large {
        return Err(Failure::bad_spec(format!(
            "graph has {n} vertices; pass --allow-large to proceed"
        )));
    }
    Ok(())
}

fn cmd_build(args: BuildArgs) -> RunResult {
    let mut manifest = ManifestBuilder::new();
    let (graph, design_text) = match (args.source.space, args.source.design) {
        (Some(_), None) => {
            let built = build_space_graph(&args.source, args.graph, args.allow_large)?;
            (built.graph, None)
        }
        (None, Some(_)) => {
            if args.graph != GraphKind::Block {
                return Err(Failure::bad_spec("designs build --graph block"));
            }
            let design = build_design(&args.source)?;
            gate_large(design.blocks.len(), args.allow_large)?;
            let graph = designs::block_graph(&design)
                .map_err(|e| Failure::bad_spec(e.to_string()))?;
            (graph, Some(designs::to_text(&design)))
        }
        _ => return Err(Failure::bad_spec("pass exactly one of --space or --design")),
    };

    let g6 = graph6::encode(&graph).map_err(|e| Failure::bad_spec(e.to_string()))?;
    write_file(&args.out, &g6)?;
    manifest.output(&args.out, &g6);

    let labels_path = args
        .labels
        .unwrap_or_else(|| PathBuf::from(format!("{}.labels", args.out.display())));
    let mut labels_text = String::new();
    for label in graph.labels().unwrap_or(&[]) {
        let _ = writeln!(labels_text, "{label}");
    }
    write_file(&labels_path, labels_text.as_bytes())?;
    manifest.output(&labels_path, labels_text.as_bytes());

    if let Some(design_path) = args.design_out {
        let text = design_text
            .ok_or_else(|| Failure::bad_spec("--design-out applies to design builds"))?;
        write_file(&design_path, text.as_bytes())?;
        manifest.output(&design_path, text.as_bytes());
    }
    if let Some(adjacency_path) = args.adjacency {
        let text = graph.to_adjacency_text();
        write_file(&adjacency_path, text.as_bytes())?;
        manifest.output(&adjacency_path, text.as_bytes());
    }
    println!("built graph: {} vertices -> {}", graph.n(), args.out.display());
    manifest.write(args.manifest.as_deref())
}

fn quotient_target(space: &PolarSpace, arg: QuotientArg) -> Result<QuotientTarget, Failure> {
    let q = space.field().order() as u64;
    Ok(match arg {
        QuotientArg::U2 => QuotientTarget::HermitianNondeg,
        QuotientArg::Hyperbolic => QuotientTarget::Hyperbolic,
        QuotientArg::Elliptic => QuotientTarget::Elliptic,
        QuotientArg::Any => QuotientTarget::Any,
        QuotientArg::Auto => {
            if space.kind() == FormKind::Hermitian {
                QuotientTarget::HermitianNondeg
            } else if q % 4 == 3 {
                QuotientTarget::Elliptic
            } else {
                QuotientTarget::Hyperbolic
            }
        }
    })
}

fn cmd_switchset(args: SwitchsetArgs) -> RunResult {
    let mut manifest = ManifestBuilder::new();
    manifest.seed("search", args.seed);
    let (record, n) = match args.kind {
        SetKind::Collinearity => {
            if args.graph != GraphKind::Collinearity {
                return Err(Failure::bad_spec("collinearity sets index collinearity graphs"));
            }
            let space = space_from(&args.source)?;
            let built = build_space_graph(&args.source, args.graph, args.allow_large)?;
            let m = args.m.unwrap_or_else(|| space.rank());
            let found = switching::find_collinearity_configuration(&space, m)
                .map_err(|e| Failure::bad_spec(e.to_string()))?;
            let Some((p_space, l1, l2)) = found else {
                return Err(Failure::new(
                    EXIT_NO_CONFIGURATION,
                    format!("no isotropic {m}-space with two hyperplanes exists (exhaustive)"),
                ));
            };
            let pair = switching::collinearity_switch_set(&space, &built, &p_space, &l1, &l2)
                .map_err(|e| Failure::bad_spec(e.to_string()))?;
            let witness = vec![
                ("P".to_string(), p_space.label()),
                ("L1".to_string(), l1.label()),
                ("L2".to_string(), l2.label()),
            ];
            (SwitchingRecord::new("collinearity", &pair, witness), built.n())
        }
        SetKind::Tangent => {
            if args.graph != GraphKind::Polarity {
                return Err(Failure::bad_spec("tangent sets index polarity graphs"));
            }
            let space = space_from(&args.source)?;
            let built = build_space_graph(&args.source, args.graph, args.allow_large)?;
            let target = quotient_target(&space, args.quotient)?;
            let class = space.kind().is_quadratic().then(|| args.source.class.sign());
            let found = switching::find_tangent_configuration(&space, target, class)
                .map_err(|e| Failure::bad_spec(e.to_string()))?;
            let Some(config) = found else {
                return Err(Failure::new(
                    EXIT_NO_CONFIGURATION,
                    "no tangent configuration with the requested quotient exists (exhaustive)",
                ));
            };
            let pair =
                switching::tangent_line_switch_set(&space, &built, &config.p, &config.l1, &config.l2)
                    .map_err(|e| Failure::bad_spec(e.to_string()))?;
            let witness = vec![
                ("p".to_string(), config.p.label()),
                ("L1".to_string(), config.l1.label()),
                ("L2".to_string(), config.l2.label()),
            ];
            (SwitchingRecord::new("tangent", &pair, witness), built.n())
        }
        SetKind::Design => {
            let (design, points) = match args.source.design {
                Some(DesignKind::Grassmann) => {
                    let n = args.source.n.ok_or_else(|| Failure::bad_spec("--n is required"))?;
                    let q = args.source.q.ok_or_else(|| Failure::bad_spec("--q is required"))?;
                    designs::grassmann_design(n, q).map_err(|e| Failure::bad_spec(e.to_string()))?
                }
                _ => return Err(Failure::bad_spec("design sets need --design grassmann")),
            };
            let q = args.source.q.unwrap();
            let n = args.source.n.unwrap();
            let f = srgswitch::field::FieldTables::of_order(q)
                .map_err(|e| Failure::bad_spec(e.to_string()))?;
            let s = designs::first_subspace(&f, n, args.s);
            let emb = designs::subdesign_from_subspace(&design, &points, &f, &s)
                .map_err(|e| Failure::bad_spec(e.to_string()))?;
            let p1 = args.p1.unwrap_or(emb.point_set[0]);
            let p2 = args.p2.unwrap_or(emb.point_set[1]);
            let pair = switching::design_switch_set(&design, &emb, p1, p2)
                .map_err(|e| Failure::bad_spec(e.to_string()))?;
            let witness = vec![
                ("s".to_string(), s.label()),
                ("p1".to_string(), design.point_labels[p1].clone()),
                ("p2".to_string(), design.point_labels[p2].clone()),
            ];
            (SwitchingRecord::new("design", &pair, witness), design.blocks.len())
        }
    };

    let mut record = record;
    if let Some(bind) = &args.bind {
        let bytes = read_file(bind)?;
        manifest.input(bind, &bytes);
        record.graph_sha256 = Some(certify::sha256_hex(&bytes));
    }
    let text = serde_json::to_string_pretty(&record).expect("record serializes");
    write_file(&args.out, text.as_bytes())?;
    manifest.output(&args.out, text.as_bytes());
    println!(
        "switching set: |C1| = |C2| = {} of {} vertices -> {}",
        record.c1.len(),
        n,
        args.out.display()
    );
    manifest.write(args.manifest.as_deref())
}

#[derive(Serialize)]
struct Transcript {
    method: String,
    valid: bool,
    summary: Option<switching::WqhSummary>,
    violation: Option<String>,
}

fn cmd_switch(args: SwitchArgs) -> RunResult {
    let mut manifest = ManifestBuilder::new();
    let (graph, graph_bytes) = read_graph(&args.graph)?;
    manifest.input(&args.graph, &graph_bytes);
    let record_bytes = read_file(&args.set)?;
    manifest.input(&args.set, &record_bytes);
    let record: SwitchingRecord = serde_json::from_slice(&record_bytes)
        .map_err(|e| Failure::bad_spec(format!("{}: {e}", args.set.display())))?;
    if let Some(expected) = &record.graph_sha256 {
        let actual = certify::sha256_hex(&graph_bytes);
        if *expected != actual {
            return Err(Failure::bad_spec(
                "the switching record is bound to a different graph (digest mismatch)",
            ));
        }
    }
    let pair: SwitchingSetPair = record
        .pair(graph.n())
        .map_err(|e| Failure::new(EXIT_INVALID_SET, e.to_string()))?;

    let transcript_path = args
        .transcript
        .unwrap_or_else(|| PathBuf::from(format!("{}.transcript.json", args.out.display())));

    let (switched, transcript) = match args.method {
        MethodArg::Wqh => match switching::validate_wqh(&graph, &pair) {
            Ok(summary) => {
                let switched = switching::apply_wqh(&graph, &pair)
                    .map_err(|e| Failure::new(EXIT_INVALID_SET, e.to_string()))?;
                (
                    Some(switched),
                    Transcript {
                        method: "wqh".into(),
                        valid: true,
                        summary: Some(summary),
                        violation: None,
                    },
                )
            }
            Err(violation) => (
                None,
                Transcript {
                    method: "wqh".into(),
                    valid: false,
                    summary: None,
                    violation: Some(violation.to_string()),
                },
            ),
        },
        MethodArg::Gm => {
            let mut cell = pair.c1().to_vec();
            cell.extend_from_slice(pair.c2());
            let partition = switching::GmPartition::new(vec![cell], graph.n())
                .map_err(|e| Failure::new(EXIT_INVALID_SET, e.to_string()))?;
            match switching::apply_gm(&graph, &partition) {
                Ok(switched) => (
                    Some(switched),
                    Transcript {
                        method: "gm".into(),
                        valid: true,
                        summary: None,
                        violation: None,
                    },
                ),
                Err(e) => (
                    None,
                    Transcript {
                        method: "gm".into(),
                        valid: false,
                        summary: None,
                        violation: Some(e.to_string()),
                    },
                ),
            }
        }
    };

    let transcript_text = serde_json::to_string_pretty(&transcript).expect("transcript serializes");
    write_file(&transcript_path, transcript_text.as_bytes())?;
    manifest.output(&transcript_path, transcript_text.as_bytes());

    match switched {
        Some(switched) => {
            let g6 = graph6::encode(&switched).map_err(|e| Failure::bad_spec(e.to_string()))?;
            write_file(&args.out, &g6)?;
            manifest.output(&args.out, &g6);
            println!("switched graph -> {}", args.out.display());
            manifest.write(args.manifest.as_deref())
        }
        None => {
            manifest.write(args.manifest.as_deref())?;
            Err(Failure::new(
                EXIT_INVALID_SET,
                format!(
                    "switching validation failed: {}",
                    transcript.violation.unwrap_or_default()
                ),
            ))
        }
    }
}

#[derive(Serialize)]
struct ReportEntry {
    check: String,
    expected: String,
    verdict: String,
    matched: bool,
    certificate: Certificate,
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    a: String,
    b: String,
    ok: bool,
    checks: Vec<ReportEntry>,
}

fn cmd_certify(args: CertifyArgs) -> RunResult {
    let mut manifest = ManifestBuilder::new();
    manifest.seed("primes", args.seed);
    let (a, a_bytes) = read_graph(&args.a)?;
    let (b, b_bytes) = read_graph(&args.b)?;
    manifest.input(&args.a, &a_bytes);
    manifest.input(&args.b, &b_bytes);
    gate_large(a.n().max(b.n()), args.allow_large)?;

    let checks: Vec<&str> = args.checks.split(',').map(str::trim).collect();
    let expectations: Vec<String> = match &args.expect {
        Some(e) => e.split(',').map(|s| s.trim().to_lowercase()).collect(),
        None => vec!["pass".to_string(); checks.len()],
    };
    if expectations.len() != checks.len() {
        return Err(Failure::bad_spec("--expect must align with --checks"));
    }
    for e in &expectations {
        if e != "pass" && e != "fail" {
            return Err(Failure::bad_spec(format!("bad expectation {e:?}")));
        }
    }

    let policy = CospectralPolicy {
        prime_count: args.primes,
        seed: args.seed,
        force_charpoly: args.force_charpoly,
        ..Default::default()
    };
    let mut entries = Vec::new();
    let mut all_matched = true;
    for (check, expected) in checks.iter().zip(&expectations) {
        let certificate = match *check {
            "srg" => certify::certify_same_srg(&a, &b),
            "cospectral" => certify::certify_cospectral(&a, &b, policy),
            "triangles" => certify::certify_non_isomorphic_by_triangles(&a, &b),
            "cliques" => certify::certify_non_isomorphic_by_cliques(&a, &b, args.clique_floor),
            "fourcliques" => certify::certify_non_isomorphic_by_four_cliques(&a, &b),
            "iso" => certify::exhaustive_isomorphism(&a, &b)
                .map_err(|e| Failure::bad_spec(e.to_string()))?,
            other => return Err(Failure::bad_spec(format!("unknown check {other:?}"))),
        };
        let verdict = if certificate.verdict.passed() { "pass" } else { "fail" };
        let matched = verdict == expected;
        all_matched &= matched;
        println!("{check}: {verdict} (expected {expected})");
        entries.push(ReportEntry {
            check: check.to_string(),
            expected: expected.clone(),
            verdict: verdict.to_string(),
            matched,
            certificate,
        });
    }

    let report = Report {
        schema_version: 1,
        a: certify::sha256_hex(&a_bytes),
        b: certify::sha256_hex(&b_bytes),
        ok: all_matched,
        checks: entries,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(path) = &args.report {
        write_file(path, text.as_bytes())?;
        manifest.output(path, text.as_bytes());
    }
    manifest.write(args.manifest.as_deref())?;
    if all_matched {
        Ok(())
    } else {
        Err(Failure::new(EXIT_EXPECTATION, "one or more checks missed their expectation"))
    }
}
