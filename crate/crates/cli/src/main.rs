use std::collections::BTreeMap;
use std::fs;
use std::hash::{BuildHasher, RandomState};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypermatch::chain::{analyze, build_transition_matrix};
use hypermatch::counting::{count_exact, enumerate_matchings, estimate_count, EstimateConfig, Sampler, SamplingMode};
use hypermatch::generators::{self, GeneratorSpec, GraphSource};
use hypermatch::paths::congestion_report;
use hypermatch::rng::stream_rng;
use hypermatch::{io, Error, Execution, Hypergraph};

const TOOL: &str = "hypermatch";
const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Matchings of 3-comb-free uniform hypergraphs: checking, generation, exact and
/// approximate counting, sampling, chain analysis and canonical-path verification.
///
/// Exit codes: 0 success, 2 unreadable or invalid input, 3 violated precondition
/// (for example a 3-comb), 4 resource guard hit, 70 internal invariant failure.
#[derive(Parser, Debug)]
#[command(name = TOOL, version, about, long_about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test a hypergraph for 3-combs and report a witness if one exists.
    Check(CheckArgs),
    /// Generate a hypergraph from a named family.
    Generate(GenerateArgs),
    /// Count all matchings exactly.
    CountExact(CountArgs),
    /// Estimate the number of matchings with the sampling ladder.
    Estimate(EstimateArgs),
    /// Draw matchings by running the chain from the empty matching.
    Sample(SampleArgs),
    /// Exact analysis of the chain: conductance, spectral gap, TV curve.
    Analyze(AnalyzeArgs),
    /// Exhaustive canonical-path congestion and injectivity report.
    VerifyPaths(VerifyArgs),
    /// Turn a graph into a k-graph by padding every edge with fresh vertices.
    Reduce(ReduceArgs),
}

#[derive(Args, Debug)]
struct Io {
    /// Input hypergraph (JSON or line format).
    #[arg(long, short)]
    input: PathBuf,
    /// Output file; standard output if omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    io: Io,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    OverlapCycle,
    TightCycle,
    EnrichedCycle,
    Random,
    Triangle,
    Subdivided,
    Blowup,
    Hex,
    Heilmann,
    Reduce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Json,
    Lines,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Vertex count (cycles, random).
    #[arg(long)]
    n: Option<usize>,
    /// Uniformity.
    #[arg(long)]
    k: Option<usize>,
    /// Overlap of consecutive edges (overlap-cycle).
    #[arg(long)]
    ell: Option<usize>,
    /// Edge probability (random, triangle without --input).
    #[arg(long)]
    p: Option<f64>,
    /// Seed for random families; generated and echoed if omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Lattice patch rows (hex, heilmann).
    #[arg(long)]
    rows: Option<usize>,
    /// Lattice patch columns (hex, heilmann).
    #[arg(long)]
    cols: Option<usize>,
    /// Part sizes, comma separated (blowup).
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Per-edge multiplicities, comma separated; one value applies to every edge
    /// (subdivided).
    #[arg(long, value_delimiter = ',')]
    nu: Vec<usize>,
    /// Source hypergraph (subdivided, reduce, triangle).
    #[arg(long, short)]
    input: Option<PathBuf>,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: GraphFormat,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    io: Io,
    /// Also list every matching; fails beyond --state-cap matchings.
    #[arg(long)]
    list: bool,
    #[arg(long, default_value_t = 100_000)]
    state_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Fixed chain length from --burn-in.
    Empirical,
    /// The proven mixing-time bound.
    Theoretical,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value_t = 0.2)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, value_enum, default_value = "empirical")]
    mode: Mode,
    /// Chain steps per sample in empirical mode.
    #[arg(long)]
    burn_in: Option<u64>,
    /// Master seed; generated and echoed if omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Run every work item on the calling thread.
    #[arg(long)]
    sequential: bool,
    /// Include wall time in the result (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    io: Io,
    /// Total-variation target; selects the proven run length.
    #[arg(long, conflicts_with = "burn_in")]
    epsilon: Option<f64>,
    /// Fixed chain length per sample.
    #[arg(long)]
    burn_in: Option<u64>,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Report frequencies of distinct matchings instead of the draws.
    #[arg(long)]
    summary: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    #[arg(long, default_value_t = 1000)]
    t_max: usize,
    #[arg(long, default_value_t = 2000)]
    state_cap: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
    /// Write the exact transition matrix dump instead of the analysis.
    #[arg(long)]
    dump: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value_t = 500)]
    state_cap: usize,
    /// Random cuts checked against the congestion cut bound.
    #[arg(long, default_value_t = 1000)]
    cut_samples: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    sequential: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: GraphFormat,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_)
            | Error::InvalidUniformity(_)
            | Error::WrongEdgeSize { .. }
            | Error::VertexOutOfRange { .. }
            | Error::DuplicateEdge { .. }
            | Error::DuplicateVertexInEdge { .. } => 2,
            Error::NotCombFree(_)
            | Error::NotAMatching
            | Error::DegreeViolation { .. }
            | Error::BadParameters(_)
            | Error::IndexOutOfRange { .. }
            | Error::EmptyEdgeSet => 3,
            Error::StateSpaceTooLarge { .. } | Error::CapExceeded { .. } => 4,
            Error::TransitionNotOnPath | Error::ZeroRatio { .. } | Error::EnvelopeViolation { .. } => 70,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

fn read_graph(path: &Path) -> Result<Hypergraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?;
    io::parse_hypergraph(&text).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn write_out(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| fail(2, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn seed_or_fresh(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| RandomState::new().hash_one(Instant::now()))
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn document(command: &str, params: Value, result: Value) -> String {
    let doc = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "params": params,
        "result": result,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("json values serialize");
    text.push('\n');
    text
}

fn csv_with_header(command: &str, params: &Value, body: &str) -> String {
    let meta = json!({"tool": TOOL, "version": VERSION, "command": command, "params": params});
    format!("# {meta}\n{body}")
}

fn render_graph(h: &Hypergraph, format: GraphFormat, meta: &Value) -> String {
    match format {
        GraphFormat::Json => io::to_json_with_meta(h, meta),
        GraphFormat::Lines => io::to_lines_with_meta(h, meta),
    }
}

fn check(args: CheckArgs) -> Outcome {
    let h = read_graph(&args.io.input)?;
    let comb = h.find_three_comb();
    let result = json!({
        "comb-free": comb.is_none(),
        "witness": comb.map(|c| json!({"teeth": c.teeth, "spine": c.spine})),
        "n": h.n(),
        "k": h.k(),
        "edges": h.num_edges(),
        "max_intersection_degree": h.intersection_graph().max_degree(),
    });
    let params = json!({"input": args.io.input});
    write_out(args.io.output.as_deref(), &document("check", params, result))
}

fn need<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    value.ok_or_else(|| fail(3, format!("family {family} needs --{flag}")))
}

fn generate(args: GenerateArgs) -> Outcome {
    let name = args.family.to_possible_value().unwrap().get_name().to_string();
    let fam = name.as_str();
    let input = args.input.as_deref().map(read_graph).transpose()?;
    let mut seed_used = None;
    let spec = match args.family {
        Family::OverlapCycle => GeneratorSpec::OverlapCycle {
            n: need(args.n, "n", fam)?,
            k: need(args.k, "k", fam)?,
            ell: need(args.ell, "ell", fam)?,
        },
        Family::TightCycle => GeneratorSpec::TightCycle {
            n: need(args.n, "n", fam)?,
            k: need(args.k, "k", fam)?,
        },
        Family::EnrichedCycle => GeneratorSpec::EnrichedCycle {
            n: need(args.n, "n", fam)?,
            k: need(args.k, "k", fam)?,
        },
        Family::Random => {
            let seed = seed_or_fresh(args.seed);
            seed_used = Some(seed);
            GeneratorSpec::Random {
                n: need(args.n, "n", fam)?,
                k: need(args.k, "k", fam)?,
                p: need(args.p, "p", fam)?,
                seed,
            }
        }
        Family::Triangle => {
            let graph = if input.is_some() {
                GraphSource::Input
            } else {
                let seed = seed_or_fresh(args.seed);
                seed_used = Some(seed);
                GraphSource::Random {
                    n: need(args.n, "n", fam)?,
                    p: need(args.p, "p", fam)?,
                    seed,
                }
            };
            GeneratorSpec::Triangle { graph }
        }
        Family::Subdivided => GeneratorSpec::Subdivided {
            nu: if args.nu.is_empty() { vec![1] } else { args.nu.clone() },
        },
        Family::Blowup => GeneratorSpec::Blowup {
            sizes: args.sizes.clone(),
            k: need(args.k, "k", fam)?,
        },
        Family::Hex => GeneratorSpec::Hex {
            rows: need(args.rows, "rows", fam)?,
            cols: need(args.cols, "cols", fam)?,
        },
        Family::Heilmann => GeneratorSpec::Heilmann {
            rows: need(args.rows, "rows", fam)?,
            cols: need(args.cols, "cols", fam)?,
        },
        Family::Reduce => GeneratorSpec::Reduce {
            k: need(args.k, "k", fam)?,
        },
    };
    let h = spec.build(input.as_ref())?;
    let mut params = serde_json::to_value(&spec).expect("generator parameters serialize");
    if let Some(path) = &args.input {
        params["input"] = json!(path);
    }
    if let Some(seed) = seed_used {
        params["seed"] = json!(seed);
    }
    let meta = json!({"tool": TOOL, "version": VERSION, "command": "generate", "params": params});
    write_out(args.output.as_deref(), &render_graph(&h, args.format, &meta))
}

fn count(args: CountArgs) -> Outcome {
    let h = read_graph(&args.io.input)?;
    let total = count_exact(&h);
    let mut result = json!({"count": total.to_string()});
    if args.list {
        let all = enumerate_matchings(&h, args.state_cap)?;
        result["matchings"] = json!(all);
    }
    let params = json!({"input": args.io.input, "list": args.list, "state_cap": args.state_cap});
    write_out(args.io.output.as_deref(), &document("count-exact", params, result))
}

fn estimate(args: EstimateArgs) -> Outcome {
    let h = read_graph(&args.io.input)?;
    let mode = match args.mode {
        Mode::Theoretical => SamplingMode::TheoreticalBound,
        Mode::Empirical => SamplingMode::EmpiricalBurnIn(
            args.burn_in
                .ok_or_else(|| fail(3, "empirical mode needs --burn-in"))?,
        ),
    };
    let seed = seed_or_fresh(args.seed);
    let mut config = EstimateConfig::new(args.epsilon, args.delta, mode, seed);
    config.execution = execution(args.sequential);
    let started = Instant::now();
    let r = estimate_count(&h, &config)?;
    let mut result = serde_json::to_value(&r).expect("result serializes");
    if args.timing {
        result["wall_time_seconds"] = json!(started.elapsed().as_secs_f64());
    }
    let params = json!({
        "input": args.io.input,
        "epsilon": args.epsilon,
        "delta": args.delta,
        "mode": mode,
        "seed": seed,
        "execution": config.execution,
    });
    write_out(args.io.output.as_deref(), &document("estimate", params, result))
}

fn sample(args: SampleArgs) -> Outcome {
    let h = read_graph(&args.io.input)?;
    let seed = seed_or_fresh(args.seed);
    let mut sampler = match (args.epsilon, args.burn_in) {
        (Some(eps), None) => Sampler::new(&h, eps, SamplingMode::TheoreticalBound)?,
        (None, Some(t)) => Sampler::with_steps(&h, t),
        _ => return Err(fail(3, "give exactly one of --epsilon or --burn-in")),
    };
    let draws: Vec<_> = (0..args.count)
        .map(|i| sampler.sample(&mut stream_rng(seed, i as u64)))
        .collect();
    let result = if args.summary {
        let mut freq: BTreeMap<_, usize> = BTreeMap::new();
        for d in &draws {
            *freq.entry(d.clone()).or_default() += 1;
        }
        let rows: Vec<Value> = freq
            .into_iter()
            .map(|(m, c)| json!({"matching": m, "count": c}))
            .collect();
        json!({"draws": args.count, "steps_per_sample": sampler.steps(), "frequencies": rows})
    } else {
        json!({"steps_per_sample": sampler.steps(), "samples": draws})
    };
    let params = json!({
        "input": args.io.input,
        "epsilon": args.epsilon,
        "burn_in": args.burn_in,
        "count": args.count,
        "seed": seed,
        "summary": args.summary,
    });
    write_out(args.io.output.as_deref(), &document("sample", params, result))
}

fn analyze_cmd(args: AnalyzeArgs) -> Outcome {
    let h = read_graph(&args.io.input)?;
    let t = build_transition_matrix(&h, args.state_cap)?;
    let params = json!({
        "input": args.io.input,
        "epsilon": args.epsilon,
        "t_max": args.t_max,
        "state_cap": args.state_cap,
    });
    if args.dump {
        return write_out(args.io.output.as_deref(), &t.dump());
    }
    let a = analyze(&t, args.epsilon, args.t_max)?;
    let text = match args.format {
        ReportFormat::Csv => csv_with_header("analyze", &params, &a.to_csv()),
        ReportFormat::Json => {
            let result = json!({
                "states": a.states,
                "conductance": a.conductance.map(|(p, q)| format!("{p}/{q}")),
                "spectral_gap": a.spectral_gap,
                "t_mix_exact": a.t_mix_exact,
                "exact_tv": a.exact_tv,
                "tv_curve": a.tv_curve,
            });
            document("analyze", params, result)
        }
    };
    write_out(args.io.output.as_deref(), &text)
}

fn verify(args: VerifyArgs) -> Outcome {
    let h = read_graph(&args.io.input)?;
    let seed = seed_or_fresh(args.seed);
    let r = congestion_report(&h, args.state_cap, args.cut_samples, seed, execution(args.sequential))?;
    let params = json!({
        "input": args.io.input,
        "state_cap": args.state_cap,
        "cut_samples": args.cut_samples,
        "seed": seed,
    });
    let text = match args.format {
        ReportFormat::Csv => csv_with_header("verify-paths", &params, &r.to_csv()),
        ReportFormat::Json => {
            let mut result = serde_json::to_value(&r).expect("report serializes");
            result["all_ok"] = json!(r.all_ok());
            document("verify-paths", params, result)
        }
    };
    write_out(args.io.output.as_deref(), &text)?;
    if r.all_ok() {
        Ok(())
    } else {
        Err(fail(70, "canonical-path verification found violations"))
    }
}

fn reduce(args: ReduceArgs) -> Outcome {
    let g = read_graph(&args.io.input)?;
    let h = generators::reduce_graph_to_kgraph(&g, args.k)?;
    let meta = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": "reduce",
        "params": {"input": args.io.input, "k": args.k},
    });
    write_out(args.io.output.as_deref(), &render_graph(&h, args.format, &meta))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check(a) => check(a),
        Command::Generate(a) => generate(a),
        Command::CountExact(a) => count(a),
        Command::Estimate(a) => estimate(a),
        Command::Sample(a) => sample(a),
        Command::Analyze(a) => analyze_cmd(a),
        Command::VerifyPaths(a) => verify(a),
        Command::Reduce(a) => reduce(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
