//! Command-line front end: smooth a rhythm, trace an orbit, verify the
//! structural claims exhaustively, enumerate state spaces, or render a
//! marked rhythm as an SVG circle graph.
//!
//! Every command is deterministic; repeated runs produce byte-identical
//! standard output. Timing goes to standard error only. Exit codes:
//! 0 success, 1 validation or parse error, 2 verification failure,
//! 3 budget or step cap exceeded.

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write as _};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rhythm_reform::dynamics;
use rhythm_reform::enumerate;
use rhythm_reform::measure;
use rhythm_reform::oracle::{self, VerifyOptions};
use rhythm_reform::render::{circle_graph_svg, CircleGraphStyle};
use rhythm_reform::text;
use rhythm_reform::{Error, MarkedRhythm};

#[derive(Parser)]
#[command(
    name = "rhythm-reform",
    version,
    about = "Smooth cyclic rhythms by local averaging, inspect their orbits, \
             verify the underlying invariants exhaustively, and draw circle graphs."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate the reformation step until the rhythm becomes smooth.
    Smooth(SmoothArgs),
    /// Trace one orbit until the first repeated state.
    Orbit(OrbitArgs),
    /// Sweep every state of a space and check all structural claims.
    Verify(VerifyArgs),
    /// Stream (or count) the states of a space.
    Enumerate(EnumerateArgs),
    /// Draw a marked rhythm as an SVG circle graph.
    Render(RenderArgs),
}

/// Output flavor shared by all subcommands.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Fixed-layout text for reading.
    Human,
    /// One JSON object per line for diffing and scripting.
    JsonLines,
}

/// Which step map drives `orbit`.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemKind {
    /// Reformation on marked rhythms (`k=.. a=..` states).
    Ref,
    /// Deformation on marked gap vectors (`k=.. d=..` states).
    Def,
}

/// Which space `enumerate` walks.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceKind {
    /// Gap vectors: positive gaps summing to the beat count.
    Compositions,
    /// Rhythms: onset tuples in cyclic order, all anchors.
    Rhythms,
    /// Rhythms together with a marker.
    MarkedRhythms,
    /// Gap vectors together with a marker.
    MarkedDifferences,
}

/// Predicate applied by `enumerate`.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterKind {
    /// No filtering.
    All,
    /// Gaps within one unit of each other (width at most 1).
    Smooth,
    /// Width at most 1 and, on marked spaces, the marker on a maximal gap.
    QuasiSmooth,
    /// Exactly the states on cycles, found by brute force (marked spaces only).
    Periodic,
}

#[derive(Args)]
struct SmoothArgs {
    /// Rhythm, e.g. `N=8 n=3 a=0,1,2` (quotes optional).
    #[arg(required = true, num_args = 1.., value_name = "STATE")]
    state: Vec<String>,
    /// Marker the smoothing walk starts from.
    #[arg(long, default_value_t = 0)]
    marker: u32,
    /// Also print every intermediate state with its measure.
    #[arg(long)]
    trace: bool,
    /// Abort with exit code 3 after this many steps.
    #[arg(long)]
    max_steps: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct OrbitArgs {
    /// Marked state: `N=8 n=3 k=0 a=0,1,2` (ref) or `N=8 n=3 k=0 d=6,1,1` (def).
    #[arg(required = true, num_args = 1.., value_name = "STATE")]
    state: Vec<String>,
    /// Step map to iterate.
    #[arg(long, value_enum, default_value_t = SystemKind::Ref)]
    system: SystemKind,
    /// Abort with exit code 3 if the orbit visits more than this many states.
    #[arg(long)]
    max_steps: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Space parameters, e.g. `N=8 n=3`.
    #[arg(required = true, num_args = 1.., value_name = "PARAMS")]
    params: Vec<String>,
    /// Check a single claim instead of the full registry.
    #[arg(long)]
    claim: Option<String>,
    /// Largest marked-rhythm space to accept, in states.
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Space parameters, e.g. `N=8 n=3`.
    #[arg(required = true, num_args = 1.., value_name = "PARAMS")]
    params: Vec<String>,
    /// Which space to walk.
    #[arg(long, value_enum)]
    space: SpaceKind,
    /// Print only the number of matching states.
    #[arg(long)]
    count: bool,
    /// Keep only states satisfying this predicate.
    #[arg(long, value_enum, default_value_t = FilterKind::All)]
    filter: FilterKind,
    /// Largest space to accept, in states.
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct RenderArgs {
    /// Marked rhythm, e.g. `N=8 n=3 k=0 a=0,1,2`.
    #[arg(required = true, num_args = 1.., value_name = "STATE")]
    state: Vec<String>,
    /// Write the SVG here instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Canvas width and height in pixels.
    #[arg(long, default_value_t = CircleGraphStyle::default().canvas)]
    canvas: f64,
    /// Radius of the beat wheel.
    #[arg(long, default_value_t = CircleGraphStyle::default().radius)]
    radius: f64,
    /// Radius of each onset disk.
    #[arg(long, default_value_t = CircleGraphStyle::default().node_radius)]
    node_radius: f64,
    /// Radius of the ring around the marked onset.
    #[arg(long, default_value_t = CircleGraphStyle::default().ring_radius)]
    ring_radius: f64,
    /// Font size of the beat labels.
    #[arg(long, default_value_t = CircleGraphStyle::default().font_size)]
    font_size: f64,
}

/// Library and i/o failures, folded into one type so `?` works everywhere.
enum CliError {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lib(e) => e.fmt(f),
            Self::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            Self::Lib(Error::BudgetExceeded { .. } | Error::CapExceeded { .. }) => ExitCode::from(3),
            _ => ExitCode::from(1),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Reserve exit code 2 for verification failures: usage errors
            // exit 1, while --help and --version remain successes.
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Smooth(args) => cmd_smooth(args),
        Command::Orbit(args) => cmd_orbit(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Render(args) => cmd_render(args),
    };
    match result {
        Ok(code) => code,
        // A closed pipe downstream (e.g. `| head`) is not a failure.
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Serialize)]
struct TraceRecord {
    step: u64,
    mu: String,
    state: String,
}

#[derive(Serialize)]
struct SmoothOutput {
    steps: u64,
    rhythm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceRecord>>,
}

fn cmd_smooth(args: SmoothArgs) -> Result<ExitCode, CliError> {
    let rhythm = text::parse_rhythm(&args.state.join(" "))?;
    let cap = match args.max_steps {
        Some(steps) => steps,
        None => dynamics::default_cap(rhythm.params())?,
    };
    let (steps, smooth) = dynamics::smooth_rhythm_from(args.marker, &rhythm, cap)?;

    let trace = if args.trace {
        let mut records = Vec::with_capacity(steps as usize + 1);
        let mut current = MarkedRhythm::new(args.marker, rhythm)?;
        for step in 0..=steps {
            records.push(TraceRecord {
                step,
                mu: measure::mu_marked_rhythm(&current)?.to_string(),
                state: current.to_string(),
            });
            if step < steps {
                current = dynamics::ref_step(&current);
            }
        }
        Some(records)
    } else {
        None
    };

    let output = SmoothOutput {
        steps,
        rhythm: smooth.to_string(),
        trace,
    };
    let mut out = stdout_writer();
    match args.format {
        Format::Human => {
            if let Some(records) = &output.trace {
                for r in records {
                    writeln!(out, "trace step={} mu={} state={}", r.step, r.mu, r.state)?;
                }
            }
            writeln!(out, "steps={} rhythm={}", output.steps, output.rhythm)?;
        }
        Format::JsonLines => writeln!(out, "{}", to_json(&output))?,
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct OrbitRecord {
    step: usize,
    mu: String,
    smooth: bool,
    max_marked: bool,
    content: String,
    state: String,
}

#[derive(Serialize)]
struct OrbitSummary {
    transient: usize,
    period: usize,
    smooth_index: Option<usize>,
}

fn cmd_orbit(args: OrbitArgs) -> Result<ExitCode, CliError> {
    let line = args.state.join(" ");
    let (records, transient, period) = match args.system {
        SystemKind::Ref => {
            let start = text::parse_marked_rhythm(&line)?;
            let cap = match args.max_steps {
                Some(steps) => steps,
                None => dynamics::default_cap(start.params())?,
            };
            let report = dynamics::ref_orbit(&start, cap)?;
            let records: Vec<OrbitRecord> = report
                .states
                .iter()
                .zip(&report.measure_trace)
                .enumerate()
                .map(|(step, (state, mu))| {
                    let gaps = state.difference();
                    OrbitRecord {
                        step,
                        mu: mu.to_string(),
                        smooth: measure::is_smooth(state.rhythm()),
                        max_marked: measure::is_max_marked(&gaps),
                        content: measure::marked_content(&gaps).to_string(),
                        state: state.to_string(),
                    }
                })
                .collect();
            (records, report.transient_length, report.period)
        }
        SystemKind::Def => {
            let start = text::parse_marked_difference(&line)?;
            let cap = match args.max_steps {
                Some(steps) => steps,
                None => dynamics::default_cap(start.params())?,
            };
            let report = dynamics::def_orbit(&start, cap)?;
            let records: Vec<OrbitRecord> = report
                .states
                .iter()
                .zip(&report.measure_trace)
                .enumerate()
                .map(|(step, (state, mu))| OrbitRecord {
                    step,
                    mu: mu.to_string(),
                    smooth: measure::marked_width(state) <= 1,
                    max_marked: measure::is_max_marked(state),
                    content: measure::marked_content(state).to_string(),
                    state: state.to_string(),
                })
                .collect();
            (records, report.transient_length, report.period)
        }
    };

    let summary = OrbitSummary {
        transient,
        period,
        smooth_index: records.iter().position(|r| r.smooth),
    };
    let mut out = stdout_writer();
    match args.format {
        Format::Human => {
            for r in &records {
                writeln!(
                    out,
                    "step={} mu={} smooth={} max_marked={} content={} state={}",
                    r.step, r.mu, r.smooth, r.max_marked, r.content, r.state
                )?;
            }
            let smooth_index = summary
                .smooth_index
                .map_or_else(|| "none".to_string(), |i| i.to_string());
            writeln!(
                out,
                "transient={} period={} smooth_index={}",
                summary.transient, summary.period, smooth_index
            )?;
        }
        Format::JsonLines => {
            for r in &records {
                writeln!(out, "{}", to_json(r))?;
            }
            writeln!(out, "{}", to_json(&summary))?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyHeader {
    beats: u32,
    onsets: u32,
    marked_rhythm_states: u64,
    marked_difference_states: u64,
    rhythm_states: u64,
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    observed_def_periods: &'a [u64],
    max_smoothing_steps: Option<u64>,
    all_passed: bool,
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let params = text::parse_space_params(&args.params.join(" "))?;
    let options = VerifyOptions {
        budget: args.budget.unwrap_or(oracle::DEFAULT_BUDGET),
        claim: args.claim,
    };
    let report = match oracle::verify_all(params, &options) {
        Ok(report) => report,
        Err(Error::BudgetExceeded { size, budget }) => {
            let skipped = match &options.claim {
                Some(id) => vec![id.as_str()],
                None => oracle::claim_ids(),
            };
            eprintln!(
                "budget exceeded: N={} n={} has {size} marked rhythms, over the limit of {budget}",
                params.beats(),
                params.onsets()
            );
            eprintln!("skipped claims: {}", skipped.join(", "));
            eprintln!("re-run with a larger --budget to verify anyway");
            return Ok(ExitCode::from(3));
        }
        Err(e) => return Err(e.into()),
    };

    for claim in &report.claims {
        eprintln!(
            "timing: {} swept {} states in {:?}",
            claim.id, claim.states_checked, claim.elapsed
        );
    }

    let mut out = stdout_writer();
    match args.format {
        Format::Human => {
            writeln!(out, "params: N={} n={}", report.beats, report.onsets)?;
            writeln!(
                out,
                "spaces: marked_rhythms={} marked_differences={} rhythms={}",
                report.marked_rhythm_states, report.marked_difference_states, report.rhythm_states
            )?;
            for claim in &report.claims {
                writeln!(
                    out,
                    "{:<9} checked={:<8} {}",
                    claim.id,
                    claim.states_checked,
                    if claim.passed { "pass" } else { "FAIL" }
                )?;
                if !claim.passed {
                    writeln!(out, "  statement: {}", claim.statement)?;
                    for cex in &claim.counterexamples {
                        writeln!(
                            out,
                            "  counterexample: state={} | lhs={} | rhs={}",
                            cex.state, cex.lhs, cex.rhs
                        )?;
                    }
                    writeln!(out, "  counterexamples total: {}", claim.counterexample_total)?;
                }
            }
            let periods: Vec<String> = report
                .observed_def_periods
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(out, "observed def periods: {}", periods.join(","))?;
            if let Some(max) = report.max_smoothing_steps {
                writeln!(out, "max smoothing steps: {max}")?;
            }
            writeln!(out, "all passed: {}", report.all_passed)?;
        }
        Format::JsonLines => {
            writeln!(
                out,
                "{}",
                to_json(&VerifyHeader {
                    beats: report.beats,
                    onsets: report.onsets,
                    marked_rhythm_states: report.marked_rhythm_states,
                    marked_difference_states: report.marked_difference_states,
                    rhythm_states: report.rhythm_states,
                })
            )?;
            for claim in &report.claims {
                writeln!(out, "{}", to_json(claim))?;
            }
            writeln!(
                out,
                "{}",
                to_json(&VerifySummary {
                    observed_def_periods: &report.observed_def_periods,
                    max_smoothing_steps: report.max_smoothing_steps,
                    all_passed: report.all_passed,
                })
            )?;
        }
    }
    out.flush()?;
    Ok(if report.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

#[derive(Serialize)]
struct StateRecord {
    state: String,
}

#[derive(Serialize)]
struct CountRecord {
    count: u64,
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<ExitCode, CliError> {
    let params = text::parse_space_params(&args.params.join(" "))?;
    let budget = args.budget.unwrap_or(oracle::DEFAULT_BUDGET);
    let size = match args.space {
        SpaceKind::Compositions => enumerate::composition_count(params)?,
        SpaceKind::Rhythms => enumerate::rhythm_count(params)?,
        SpaceKind::MarkedRhythms => enumerate::marked_rhythm_count(params)?,
        SpaceKind::MarkedDifferences => enumerate::marked_difference_count(params)?,
    };
    enumerate::ensure_budget(size, budget)?;

    let filter = args.filter;
    if filter == FilterKind::Periodic
        && matches!(args.space, SpaceKind::Compositions | SpaceKind::Rhythms)
    {
        return Err(Error::Parse(
            "the periodic filter needs a marked space (marked-rhythms or marked-differences)"
                .to_string(),
        )
        .into());
    }

    let lines: Box<dyn Iterator<Item = String>> = match args.space {
        SpaceKind::Compositions => Box::new(
            enumerate::compositions(params)
                .filter(move |d| match filter {
                    FilterKind::All => true,
                    // Without a marker, quasi-smooth degenerates to width <= 1.
                    FilterKind::Smooth | FilterKind::QuasiSmooth => measure::width(d) <= 1,
                    FilterKind::Periodic => unreachable!("rejected above"),
                })
                .map(|d| d.to_string()),
        ),
        SpaceKind::Rhythms => Box::new(
            enumerate::rhythms(params)
                .filter(move |a| match filter {
                    FilterKind::All => true,
                    FilterKind::Smooth => measure::is_smooth(a),
                    FilterKind::QuasiSmooth => measure::is_quasi_smooth_rhythm(a),
                    FilterKind::Periodic => unreachable!("rejected above"),
                })
                .map(|a| a.to_string()),
        ),
        SpaceKind::MarkedRhythms => match filter {
            FilterKind::Periodic => Box::new(
                oracle::periodic_marked_rhythms(params)?
                    .into_iter()
                    .map(|a| a.to_string()),
            ),
            _ => Box::new(
                enumerate::marked_rhythms(params)
                    .filter(move |a| match filter {
                        FilterKind::All => true,
                        FilterKind::Smooth => measure::is_smooth(a.rhythm()),
                        FilterKind::QuasiSmooth => measure::is_quasi_smooth_rhythm_marked(a),
                        FilterKind::Periodic => unreachable!("handled above"),
                    })
                    .map(|a| a.to_string()),
            ),
        },
        SpaceKind::MarkedDifferences => match filter {
            FilterKind::Periodic => Box::new(
                oracle::periodic_marked_differences(params)?
                    .into_iter()
                    .map(|d| d.to_string()),
            ),
            _ => Box::new(
                enumerate::marked_differences(params)
                    .filter(move |d| match filter {
                        FilterKind::All => true,
                        FilterKind::Smooth => measure::marked_width(d) <= 1,
                        FilterKind::QuasiSmooth => measure::is_quasi_smooth_marked(d),
                        FilterKind::Periodic => unreachable!("handled above"),
                    })
                    .map(|d| d.to_string()),
            ),
        },
    };

    let mut out = stdout_writer();
    if args.count {
        let count = lines.count() as u64;
        match args.format {
            Format::Human => writeln!(out, "count={count}")?,
            Format::JsonLines => writeln!(out, "{}", to_json(&CountRecord { count }))?,
        }
    } else {
        for state in lines {
            match args.format {
                Format::Human => writeln!(out, "{state}")?,
                Format::JsonLines => writeln!(out, "{}", to_json(&StateRecord { state }))?,
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_render(args: RenderArgs) -> Result<ExitCode, CliError> {
    let state = text::parse_marked_rhythm(&args.state.join(" "))?;
    let style = CircleGraphStyle {
        canvas: args.canvas,
        radius: args.radius,
        node_radius: args.node_radius,
        ring_radius: args.ring_radius,
        font_size: args.font_size,
        ..CircleGraphStyle::default()
    };
    let svg = circle_graph_svg(&state, &style)?;
    match &args.out {
        Some(path) => fs::write(path, svg)?,
        None => {
            let mut out = stdout_writer();
            out.write_all(svg.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Buffered stdout. All commands write through this so that i/o failures
/// (including closed pipes) surface as [`CliError::Io`] instead of panics.
fn stdout_writer() -> BufWriter<io::StdoutLock<'static>> {
    BufWriter::new(io::stdout().lock())
}

/// All output structs serialize infallibly: strings and integers only.
fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}
