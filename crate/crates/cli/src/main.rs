mod demo;
mod inline;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use frameorbit::frame::matrix_to_json;
use frameorbit::orbit::{ordering_search, represent, SearchMode};
use frameorbit::structured::{
    block_harmonic_frame, dyadic_band_frame, exponential_frame, exponential_generator, gabor_system,
    harmonic_frame, union_onb_frame, BandSpec, GaborOrdering, GaborParams, UnionOrder,
};
use frameorbit::{ComplexMatrix, Error, Frame, Tolerance};

#[derive(Parser)]
#[command(name = "frameorbit", version, about = "Frame diagnostics and operator-orbit representability")]
struct Cli {
    /// Zero tolerance used by every test (default 1e-9).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Frame bounds, excess and structural flags.
    Analyze { input: PathBuf },
    /// Canonical dual frame.
    Dual { input: PathBuf },
    /// Canonical tight (Parseval) frame.
    Tight { input: PathBuf },
    /// Decide whether the frame, in its given order, is an operator orbit.
    Represent { input: PathBuf },
    /// Search for orderings that make the frame an orbit.
    Search(SearchArgs),
    /// Build a structured frame.
    Make(MakeArgs),
    /// Run a named scenario and report PASS/FAIL per assertion.
    Demo {
        name: demo::DemoName,
        /// Also write the report as JSON to this path.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: Mode,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    /// Required in random mode.
    #[arg(long)]
    seed: Option<u64>,
    /// Maximum number of passing orderings to list.
    #[arg(long, default_value_t = 10)]
    limit: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Gabor,
    Harmonic,
    Exponential,
    BlockHarmonic,
    Dyadic,
    UnionOnb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Interleaved,
    Concatenated,
}

#[derive(Args)]
struct MakeArgs {
    kind: Kind,
    #[arg(long)]
    d: Option<usize>,
    /// Number of vectors (harmonic).
    #[arg(long = "M", visible_alias = "m")]
    m: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    /// Redundancy (exponential, block-harmonic).
    #[arg(long = "N", visible_alias = "n")]
    n: Option<usize>,
    /// Number of blocks (block-harmonic).
    #[arg(long = "K", visible_alias = "k")]
    k: Option<usize>,
    /// Window entries, `re` or `re:im`, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Gabor ordering: `raster` or a permutation `3,0,1,...`.
    #[arg(long)]
    ordering: Option<String>,
    /// Gabor parameters as a JSON file (instead of --d/--a/--b/--window).
    #[arg(long)]
    params: Option<PathBuf>,
    /// Bands such as `0,1:2;2:2`.
    #[arg(long)]
    bands: Option<String>,
    /// Named bases, comma separated: identity, dft.
    #[arg(long)]
    bases: Option<String>,
    #[arg(long, value_enum, default_value = "interleaved")]
    order: Order,
    /// Emit `{"frame": ..., "generator": ...}`.
    #[arg(long)]
    with_generator: bool,
}

enum Failure {
    Core(Error),
    Usage(String),
    /// A demo ran but some assertion failed; the report is already printed.
    Demo,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_user_error() { 1 } else { 2 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Demo) => ExitCode::from(2),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let tol = match cli.tol {
        Some(t) => Some(Tolerance::new(t)?),
        None => None,
    };
    let out = cli.output.as_deref();
    match cli.command {
        Command::Analyze { input } => {
            let f = load(&input, tol)?;
            emit(out, &pretty(&serde_json::to_value(f.diagnostics()?).expect("plain struct")))
        }
        Command::Dual { input } => emit(out, &load(&input, tol)?.canonical_dual()?.to_json()),
        Command::Tight { input } => emit(out, &load(&input, tol)?.canonical_tight()?.to_json()),
        Command::Represent { input } => emit(out, &pretty(&represent(&load(&input, tol)?)?.to_json())),
        Command::Search(args) => {
            let f = load(&args.input, tol)?;
            let mode = match args.mode {
                Mode::Exhaustive => SearchMode::Exhaustive,
                Mode::Random => SearchMode::Random {
                    samples: args.samples,
                    seed: args
                        .seed
                        .ok_or_else(|| Failure::Usage("--seed is required with --mode random".into()))?,
                },
            };
            let r = ordering_search(&f, mode, args.limit)?;
            emit(out, &pretty(&serde_json::to_value(r).expect("plain struct")))
        }
        Command::Make(args) => emit(out, &make(&args, tol)?),
        Command::Demo { name, sidecar } => {
            let report = demo::run(name);
            emit(out, &report.text())?;
            if let Some(path) = sidecar {
                write_file(&path, &pretty(&report.to_json()))?;
            }
            if report.all_pass() {
                Ok(())
            } else {
                Err(Failure::Demo)
            }
        }
    }
}

fn load(path: &Path, tol: Option<Tolerance>) -> CliResult<Frame> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    let frame = Frame::from_json(&text)?;
    Ok(match tol {
        Some(t) => frame.with_tolerance(t)?,
        None => frame,
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, format!("{text}\n")).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{}", text.trim_end_matches('\n'))
                .map_err(|e| Failure::Usage(format!("writing output: {e}")))
        }
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str, kind: &str) -> CliResult<T> {
    value.ok_or_else(|| Failure::Usage(format!("make {kind}: missing --{flag}")))
}

fn make(args: &MakeArgs, tol: Option<Tolerance>) -> CliResult<String> {
    let check_tol = tol.unwrap_or_default();
    let (frame, generator): (Frame, Option<ComplexMatrix>) = match args.kind {
        Kind::Harmonic => {
            let d = need(args.d, "d", "harmonic")?;
            let m = need(args.m, "M", "harmonic")?;
            let f = harmonic_frame(d, m)?;
            let diag: Vec<_> = (0..d).map(|k| frameorbit::linalg::root_of_unity(k as i64, m)).collect();
            (f, Some(ComplexMatrix::from_diagonal(&diag)))
        }
        Kind::Gabor => (gabor_system(&gabor_params(args)?)?, None),
        Kind::Exponential => {
            let window = args
                .window
                .as_deref()
                .ok_or_else(|| Failure::Usage("make exponential: missing --window".into()))?;
            let g = inline::parse_vector(window).map_err(Failure::Usage)?;
            let n = need(args.n, "N", "exponential")?;
            let f = exponential_frame(&g, n, &check_tol)?;
            (f, Some(exponential_generator(g.len(), n)))
        }
        Kind::BlockHarmonic => {
            let (f, t) = block_harmonic_frame(
                need(args.d, "d", "block-harmonic")?,
                need(args.k, "K", "block-harmonic")?,
                need(args.n, "N", "block-harmonic")?,
            )?;
            (f, Some(t))
        }
        Kind::Dyadic => {
            let d = need(args.d, "d", "dyadic")?;
            let bands: BandSpec = args
                .bands
                .as_deref()
                .ok_or_else(|| Failure::Usage("make dyadic: missing --bands".into()))?
                .parse()?;
            (dyadic_band_frame(&bands, d)?, None)
        }
        Kind::UnionOnb => {
            let d = need(args.d, "d", "union-onb")?;
            let names = args
                .bases
                .as_deref()
                .ok_or_else(|| Failure::Usage("make union-onb: missing --bases".into()))?;
            let bases = inline::parse_bases(names, d).map_err(Failure::Usage)?;
            let order = match args.order {
                Order::Interleaved => UnionOrder::Interleaved,
                Order::Concatenated => UnionOrder::Concatenated,
            };
            (union_onb_frame(&bases, order, &check_tol)?, None)
        }
    };
    let frame = match tol {
        Some(t) => frame.with_tolerance(t)?,
        None => frame,
    };
    if !args.with_generator {
        return Ok(frame.to_json());
    }
    let generator = generator.ok_or_else(|| {
        Failure::Usage("--with-generator is available for harmonic, exponential and block-harmonic".into())
    })?;
    let doc = json!({
        "frame": serde_json::to_value(frame.to_doc()).expect("plain struct"),
        "generator": matrix_to_json(&generator),
    });
    Ok(serde_json::to_string(&doc).expect("values serialize"))
}

fn gabor_params(args: &MakeArgs) -> CliResult<GaborParams> {
    if let Some(path) = &args.params {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        return Ok(GaborParams::from_json(&text)?);
    }
    let d = need(args.d, "d", "gabor")?;
    let window = match args.window.as_deref() {
        Some(w) => inline::parse_vector(w).map_err(Failure::Usage)?,
        None => return Err(Failure::Usage("make gabor: missing --window (or --params)".into())),
    };
    let mut p = GaborParams::new(d, need(args.a, "a", "gabor")?, need(args.b, "b", "gabor")?, window);
    if let Some(o) = args.ordering.as_deref() {
        if let Some(perm) = inline::parse_ordering(o).map_err(Failure::Usage)? {
            p.ordering = GaborOrdering::Custom(perm);
        }
    }
    p.validate()?;
    Ok(p)
}
