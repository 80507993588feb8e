//! The `flatrank` command line: argument parsing, subcommand drivers and
//! report emission. `main.rs` only forwards the process arguments to
//! [`main_from`].
//!
//! Exit codes: 0 when every checked hypothesis and bound holds, 1 when a
//! hypothesis fails or a bound is violated, 2 on usage, parse or I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use flatrank::field::FieldDescriptor;
use flatrank::formats::{
    parse_badbox, parse_configuration, parse_hypergraph, parse_set_family, parse_set_pair_system, parse_tensor,
    parse_tuple_family, to_json_pretty, BadboxDocument, FormatError, TensorDocument, TensorMeta,
};
use flatrank::fw::{
    badbox_k, config_violation, find_odd_clique, fw_flattening_bound, fw_size_bound, fw_tensor, sample_badbox_family,
    Configuration, Distinctness, FwError,
};
use flatrank::rainbow::{bollobas_verify, certify_no_rainbow_bound, rainbow_field, RainbowError};
use flatrank::rng::Rng;
use flatrank::search::{exhaustive_min_mfrank, random_cross_oddtown_search, random_semidiagonal_sweep, SearchError};
use flatrank::setfam::{cross_oddtown_bound, oddtown_rank1_certificate, oddtown_tensor, reconstruct};
use flatrank::tensor::{Tensor, TensorError};
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest sample count accepted by `experiment random-semidiagonal`.
pub const MAX_SAMPLES: u64 = 10_000_000;
/// Largest round budget accepted by `experiment oddtown-search`.
pub const MAX_BUDGET: u64 = 1_000_000;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "flatrank", version, about = "Flattening ranks of semi-diagonal tensors and their applications")]
pub struct Cli {
    /// Write the JSON output here (atomically) instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write a one-row CSV summary of the results.
    #[arg(long, global = true, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    /// Print the elapsed wall-clock time to stderr.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Flattening ranks of a tensor file.
    Rank(RankArgs),
    /// Write a tensor document for a known construction.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a hypothesis and the bound chain on an input file.
    #[command(subcommand)]
    Verify(Verify),
    /// Run a search or sampling experiment.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Debug, Args)]
pub struct RankArgs {
    pub file: PathBuf,
    /// Rank of one flattening (0-based axis).
    #[arg(long, group = "which")]
    pub axis: Option<usize>,
    /// Maximum over all axes.
    #[arg(long, group = "which")]
    pub max: bool,
    /// Sum over all axes.
    #[arg(long, group = "which")]
    pub sum: bool,
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Block-partition tensor with every flattening rank `ceil(a/(d-1))`.
    Partition {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "2", value_parser = parse_field)]
        field: FieldDescriptor,
    },
    /// Tensor whose `axis`-flattening has rank 1.
    AxisConstant {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        axis: usize,
        #[arg(long, default_value = "2", value_parser = parse_field)]
        field: FieldDescriptor,
    },
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Cross-d-wise Oddtown family (tuple-family file).
    Oddtown { file: PathBuf },
    /// (C,L)-satisfying family (set-family file) against a configuration file.
    Fw {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
    },
    /// Colored hypergraph without a rainbow matching of size t.
    Rainbow {
        file: PathBuf,
        /// Work over GF(2^k); defaults to the smallest k >= 8 with 2^k > N.
        #[arg(long)]
        field_degree: Option<u32>,
    },
    /// Set-pair system.
    Bollobas { file: PathBuf },
    /// Product-set family free of bad boxes.
    Badbox {
        file: PathBuf,
        /// Clique size to exclude; defaults to the file's `k`, then to
        /// `floor(2^(t+1) / (t-1))`.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Every semi-diagonal tensor on `[a]^d` over GF(2) with unit diagonal.
    Exhaustive {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        d: usize,
    },
    /// Uniform random semi-diagonal tensors.
    RandomSemidiagonal {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value = "2", value_parser = parse_field)]
        field: FieldDescriptor,
        #[arg(long)]
        seed: u64,
    },
    /// Random bad-box-free product-set family.
    BadboxSample {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Random greedy growth of cross-Oddtown families.
    OddtownSearch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        budget: u64,
        #[arg(long)]
        seed: u64,
    },
}

/// `p` for a prime field, `2^k` for a binary field.
pub fn parse_field(text: &str) -> Result<FieldDescriptor, String> {
    let field = match text.split_once('^') {
        Some(("2", k)) => FieldDescriptor::binary(k.parse().map_err(|_| format!("bad exponent in {text:?}"))?),
        Some(_) => return Err(format!("only powers of 2 are supported, got {text:?}")),
        None => FieldDescriptor::prime(text.parse().map_err(|_| format!("bad field {text:?}"))?),
    };
    field.map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Fw(#[from] FwError),
    #[error(transparent)]
    Rainbow(#[from] RainbowError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    /// SHA-256 over the command name, its parameters and the input files.
    pub inputs_digest: String,
    pub results: Value,
    pub seed: Option<u64>,
    pub tool_version: String,
}

/// What a command produced and the exit code it maps to.
#[derive(Clone, Debug)]
pub struct Output {
    pub document: Value,
    pub exit: u8,
}

struct Inputs {
    command: String,
    params: Value,
    files: Vec<Vec<u8>>,
}

impl Inputs {
    fn new(command: &str, params: Value) -> Self {
        Inputs { command: command.into(), params, files: Vec::new() }
    }

    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        let text = String::from_utf8(bytes.clone()).map_err(|e| CliError::Io {
            path: path.into(),
            source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
        })?;
        self.files.push(bytes);
        Ok(text)
    }

    fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.command.as_bytes());
        h.update([0]);
        h.update(self.params.to_string().as_bytes());
        for file in &self.files {
            h.update((file.len() as u64).to_le_bytes());
            h.update(file);
        }
        hex::encode(h.finalize())
    }

    fn report(self, results: impl Serialize, seed: Option<u64>, holds: bool) -> Output {
        let report = Report {
            inputs_digest: self.digest(),
            command: self.command,
            results: serde_json::to_value(results).expect("results serialize"),
            seed,
            tool_version: TOOL_VERSION.into(),
        };
        Output {
            document: serde_json::to_value(report).expect("report serializes"),
            exit: if holds { EXIT_OK } else { EXIT_FAILED },
        }
    }
}

fn parsed<T>(path: &Path, result: Result<T, FormatError>) -> Result<T, CliError> {
    result.map_err(|source| CliError::Parse { path: path.into(), source })
}

fn rank(args: &RankArgs) -> Result<Output, CliError> {
    let mut inputs = Inputs::new("rank", json!({ "axis": args.axis, "max": args.max, "sum": args.sum }));
    let text = inputs.read(&args.file)?;
    let tensor = parsed(&args.file, parse_tensor(&text))?;
    let mut results = Map::new();
    results.insert("dims".into(), json!(tensor.dims()));
    results.insert("field".into(), json!(tensor.field()));
    if let Some(axis) = args.axis {
        results.insert("axis".into(), json!(axis));
        results.insert("rank".into(), json!(tensor.flattening_rank(axis)?));
    } else {
        let ranks = tensor.flattening_ranks();
        if args.max || !args.sum {
            results.insert("mfrank".into(), json!(ranks.iter().max()));
        }
        if args.sum || !args.max {
            results.insert("sum".into(), json!(ranks.iter().sum::<usize>()));
        }
        results.insert("flattening_ranks".into(), json!(ranks));
    }
    Ok(inputs.report(results, None, true))
}

fn construct(kind: &Construct) -> Result<Output, CliError> {
    let (tensor, meta) = match *kind {
        Construct::Partition { a, d, field } => (
            Tensor::partition_construction(a, d, field)?,
            TensorMeta { construction: "partition".into(), params: params(json!({ "a": a, "d": d })) },
        ),
        Construct::AxisConstant { a, d, axis, field } => (
            Tensor::axis_constant_construction(a, d, axis, field)?,
            TensorMeta {
                construction: "axis-constant".into(),
                params: params(json!({ "a": a, "d": d, "axis": axis })),
            },
        ),
    };
    Ok(Output {
        document: serde_json::to_value(TensorDocument::dense(&tensor, Some(meta))).expect("document serializes"),
        exit: EXIT_OK,
    })
}

fn params(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(map) => map,
        _ => unreachable!("parameters are objects"),
    }
}

fn verify(kind: &Verify) -> Result<Output, CliError> {
    match kind {
        Verify::Oddtown { file } => {
            let mut inputs = Inputs::new("verify oddtown", json!({}));
            let text = inputs.read(file)?;
            let family = parsed(file, parse_tuple_family(&text))?;
            let (n, d, m) = (family.n(), family.d(), family.len());
            if d < 2 {
                return Err(CliError::Usage(format!("{}: tuples need at least 2 slots, got {d}", file.display())));
            }
            let bound = cross_oddtown_bound(n, d);
            let violation = family.oddtown_violation();
            let mut results = json!({
                "n": n, "d": d, "size": m,
                "hypothesis": violation.is_none(),
                "violation": violation,
                "upper_bound": bound,
            });
            let mut holds = violation.is_none() && m <= bound;
            if violation.is_none() && m > 0 {
                let tensor = oddtown_tensor(&family)?;
                let terms = oddtown_rank1_certificate(&family);
                let reconstructs = reconstruct(&terms, m, d, FieldDescriptor::gf2())? == tensor;
                let semi_diagonal = tensor.is_semi_diagonal()?;
                let ranks = tensor.flattening_ranks();
                let mfrank = ranks.iter().copied().max().unwrap_or(0);
                let lower = m.div_ceil(d - 1);
                holds &= semi_diagonal && reconstructs && lower <= mfrank && mfrank <= terms.len() && terms.len() <= n;
                let extra = json!({
                    "semi_diagonal": semi_diagonal,
                    "flattening_ranks": ranks,
                    "mfrank": mfrank,
                    "mfrank_lower_bound": lower,
                    "certificate_terms": terms.len(),
                    "certificate_reconstructs": reconstructs,
                });
                merge(&mut results, extra);
            }
            results["holds"] = json!(holds);
            Ok(inputs.report(results, None, holds))
        }
        Verify::Fw { file, config } => {
            let mut inputs = Inputs::new("verify fw", json!({}));
            let text = inputs.read(file)?;
            let family = parsed(file, parse_set_family(&text))?;
            let text = inputs.read(config)?;
            let cfg = parsed(config, parse_configuration(&text))?;
            let n = family.n();
            let violation = config_violation(&family, &cfg, Distinctness::Sets);
            let size_bound = fw_size_bound(&cfg, n);
            let mut results = json!({
                "n": n, "k": cfg.k(), "p": cfg.p(), "size": family.len(),
                "max_degree": cfg.max_degree(),
                "hypothesis": violation.is_none(),
                "violation": violation,
                "size_bound": size_bound,
            });
            let mut holds = violation.is_none() && family.len() as u64 <= size_bound;
            if violation.is_none() && !family.is_empty() {
                let tensor = fw_tensor(&family, &cfg)?;
                let semi_diagonal = tensor.is_semi_diagonal()?;
                let ranks = tensor.flattening_ranks();
                let caps = (0..cfg.k()).map(|j| fw_flattening_bound(&cfg, n, j)).collect::<Result<Vec<_>, _>>()?;
                holds &= semi_diagonal && ranks.iter().zip(&caps).all(|(&r, &c)| r as u64 <= c);
                merge(
                    &mut results,
                    json!({ "semi_diagonal": semi_diagonal, "flattening_ranks": ranks, "flattening_bounds": caps }),
                );
            }
            results["holds"] = json!(holds);
            Ok(inputs.report(results, None, holds))
        }
        Verify::Rainbow { file, field_degree } => {
            let mut inputs = Inputs::new("verify rainbow", json!({ "field_degree": field_degree }));
            let text = inputs.read(file)?;
            let h = parsed(file, parse_hypergraph(&text))?;
            let field = match field_degree {
                Some(k) => FieldDescriptor::binary(*k).map_err(|e| CliError::Usage(e.to_string()))?,
                None => rainbow_field(h.vertices()).map_err(|e| CliError::Usage(e.to_string()))?,
            };
            match certify_no_rainbow_bound(&h, field) {
                Ok(certificate) => {
                    let holds = certificate.holds;
                    let mut results = serde_json::to_value(certificate).expect("certificate serializes");
                    merge(&mut results, json!({ "hypothesis": true }));
                    Ok(inputs.report(results, None, holds))
                }
                Err(RainbowError::RainbowMatchingExists { matching }) => {
                    let matching: Vec<Value> =
                        matching.iter().map(|&(c, e)| json!({ "color": c, "edge": e })).collect();
                    Ok(inputs.report(json!({ "hypothesis": false, "rainbow_matching": matching }), None, false))
                }
                Err(e) => Err(e.into()),
            }
        }
        Verify::Bollobas { file } => {
            let mut inputs = Inputs::new("verify bollobas", json!({}));
            let text = inputs.read(file)?;
            let system = parsed(file, parse_set_pair_system(&text))?;
            let report = bollobas_verify(&system)?;
            let holds = report.hypotheses_hold && report.within_bound && report.semi_diagonal != Some(false);
            Ok(inputs.report(report, None, holds))
        }
        Verify::Badbox { file, k } => {
            let mut inputs = Inputs::new("verify badbox", json!({ "k": k }));
            let text = inputs.read(file)?;
            let (family, file_k) = parsed(file, parse_badbox(&text))?;
            let k = match k.or(file_k) {
                Some(k) => k,
                None => badbox_k(family.t())?,
            };
            if k < 2 {
                return Err(CliError::Usage(format!("k must be at least 2, got {k}")));
            }
            let clique = find_odd_clique(&family, k);
            let sets = family.to_set_family()?;
            let cfg = Configuration::complete_graph(k, 2, vec![0])?;
            let satisfying = config_violation(&sets, &cfg, Distinctness::Positions).is_none();
            let holds = clique.is_none() && satisfying;
            let results = json!({
                "t": family.t(), "s": family.s(), "size": family.len(), "k": k,
                "bad_box_free": clique.is_none(),
                "odd_clique": clique,
                "config_satisfying": satisfying,
                "holds": holds,
            });
            Ok(inputs.report(results, None, holds))
        }
    }
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        t.extend(e);
    }
}

fn experiment(kind: &Experiment) -> Result<Output, CliError> {
    match *kind {
        Experiment::Exhaustive { a, d } => {
            let inputs = Inputs::new("experiment exhaustive", json!({ "a": a, "d": d }));
            let report = exhaustive_min_mfrank(a, d)?;
            let holds = report.violations == 0;
            Ok(inputs.report(report, None, holds))
        }
        Experiment::RandomSemidiagonal { a, d, samples, field, seed } => {
            if samples > MAX_SAMPLES {
                return Err(CliError::Usage(format!("--samples {samples} exceeds the cap of {MAX_SAMPLES}")));
            }
            let inputs = Inputs::new(
                "experiment random-semidiagonal",
                json!({ "a": a, "d": d, "samples": samples, "field": field }),
            );
            let report = random_semidiagonal_sweep(a, d, field, samples, seed)?;
            let holds = report.violations == 0;
            Ok(inputs.report(report, Some(seed), holds))
        }
        Experiment::BadboxSample { t, s, seed } => {
            let inputs = Inputs::new("experiment badbox-sample", json!({ "t": t, "s": s }));
            match sample_badbox_family(t, s, seed) {
                Ok(sample) => {
                    let doc = BadboxDocument::from_sample(&sample);
                    let results = json!({ "verified": true, "size": sample.family.len(), "family": doc });
                    Ok(inputs.report(results, Some(seed), true))
                }
                Err(FwError::BudgetExhausted { attempts, size, k }) => {
                    let results = json!({ "verified": false, "attempts": attempts, "size": size, "k": k });
                    Ok(inputs.report(results, Some(seed), false))
                }
                Err(e) => Err(e.into()),
            }
        }
        Experiment::OddtownSearch { n, d, budget, seed } => {
            if budget > MAX_BUDGET {
                return Err(CliError::Usage(format!("--budget {budget} exceeds the cap of {MAX_BUDGET}")));
            }
            let inputs = Inputs::new("experiment oddtown-search", json!({ "n": n, "d": d, "budget": budget }));
            let report = random_cross_oddtown_search(n, d, budget, &mut Rng::new(seed))?;
            let holds = !report.exceeded;
            Ok(inputs.report(report, Some(seed), holds))
        }
    }
}

/// Runs a parsed command without touching stdout or the output files.
pub fn execute(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Rank(args) => rank(args),
        Command::Construct(kind) => construct(kind),
        Command::Verify(kind) => verify(kind),
        Command::Experiment(kind) => experiment(kind),
    }
}

/// Writes `contents` to a temporary file next to `path`, then renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Top-level scalar fields of the results (or of the document itself when
/// it is not a report) as a header row and a value row.
pub fn csv_summary(document: &Value) -> Result<String, CliError> {
    let results = document.get("results").unwrap_or(document);
    let mut header = Vec::new();
    let mut row = Vec::new();
    if let Value::Object(map) = results {
        for (key, value) in map {
            let cell = match value {
                Value::Null => String::new(),
                Value::Bool(b) => b.to_string(),
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                _ => continue,
            };
            header.push(key.clone());
            row.push(cell);
        }
    }
    let seed = document.get("seed").and_then(Value::as_u64);
    if let Some(seed) = seed.filter(|_| !header.iter().any(|h| h == "seed")) {
        header.push("seed".into());
        row.push(seed.to_string());
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(&header)?;
    writer.write_record(&row)?;
    let bytes = writer.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("FLATRANK_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("FLATRANK_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    configure_threads()?;
    let start = Instant::now();
    let output = execute(&cli.command)?;
    let text = to_json_pretty(&output.document);
    match &cli.out {
        Some(path) => {
            write_atomic(path, text.as_bytes()).map_err(|source| CliError::Io { path: path.clone(), source })?
        }
        None => print!("{text}"),
    }
    if let Some(path) = &cli.csv {
        let summary = csv_summary(&output.document)?;
        write_atomic(path, summary.as_bytes()).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    if cli.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    Ok(output.exit)
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn main_from<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("flatrank: {e}");
            EXIT_USAGE
        }
    }
}
