//! `chordwork`: every computation and check of the workspace behind one
//! batch command line with machine-readable reports.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (failures are
//! itemised in the report), 2 for invalid input or an exceeded cap.

mod algebra;
mod graphs;
mod lie;
mod periods;
pub mod report;

use std::fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exact_linalg::Exec;
use serde::Serialize;
use serde_json::json;

pub use report::{Format, Report};

pub const WORKERS_ENV: &str = "CHORDWORK_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "chordwork", version, about = "Chord diagrams, dihedral Hochschild cohomology, grt and periods")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = WORKERS_ENV, value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: Option<u16>,
    /// Largest monomial space (chord subsets of one degree) a command may build.
    #[arg(long, global = true, default_value_t = moduli_cohomology::DEFAULT_MONOMIAL_CAP,
          value_parser = positive)]
    pub max_monomials: usize,
    /// Weight cap for the ribbon braid models.
    #[arg(long, global = true, default_value_t = lie_engines::DEFAULT_RB_MAX_WEIGHT, value_parser = positive)]
    pub rb_max_weight: usize,
    /// No progress messages on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// List chord diagrams of one arity.
    Enum(EnumArgs),
    /// Cohomology dimensions by enumeration and by exact rank.
    Dims(DimsArgs),
    /// Gravity normal form of a form given as JSON.
    Nf(NfArgs),
    /// The corner-cutting complex.
    #[command(subcommand)]
    Hochschild(HochCmd),
    /// Weight-graded solutions of the pentagon and symmetry equations.
    #[command(subcommand)]
    Grt(GrtCmd),
    /// Ribbon braid maps.
    #[command(subcommand)]
    Braids(BraidCmd),
    /// Degree-zero dimensions against Lyndon words in {2,3}.
    Conjecture(ConjectureArgs),
    /// Graph operad checks.
    #[command(subcommand)]
    Bvgraphs(BvCmd),
    /// Period integrals over associahedron cells.
    #[command(subcommand)]
    Periods(PeriodCmd),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterArg {
    All,
    Gravity,
    Prime,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceArg {
    Open,
    Dihedral,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineArg {
    Arnold,
    Relations,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleArg {
    Dihedral,
    Open,
    Graded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationArg {
    Pentagon,
    Sym2,
    Sym3,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Mc,
    Stratified,
}

#[derive(Args, Debug, Serialize)]
pub struct EnumArgs {
    #[arg(long)]
    pub n: usize,
    /// All degrees when omitted.
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = FilterArg::Gravity)]
    pub filter: FilterArg,
}

#[derive(Args, Debug, Serialize)]
pub struct DimsArgs {
    #[arg(long, value_enum, default_value_t = SpaceArg::Open)]
    pub space: SpaceArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = EngineArg::Arnold)]
    pub engine: EngineArg,
}

#[derive(Args, Debug, Serialize)]
pub struct NfArgs {
    /// `{"arity":n,"degree":d,"terms":[{"coeff":"p/q","chords":[[i,j],...]}]}`,
    /// or `@path` to read it from a file.
    #[arg(long)]
    pub form: String,
}

/// An inclusive range given either as `--n` or as `--min-n`/`--max-n`.
#[derive(Args, Debug, Serialize, Clone, Copy)]
pub struct ArityRange {
    #[arg(long, conflicts_with_all = ["min_n", "max_n"])]
    pub n: Option<usize>,
    #[arg(long)]
    pub min_n: Option<usize>,
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Args, Debug, Serialize, Clone, Copy)]
pub struct WeightRange {
    #[arg(long, conflicts_with_all = ["min_weight", "max_weight"])]
    pub weight: Option<usize>,
    #[arg(long)]
    pub min_weight: Option<usize>,
    #[arg(long)]
    pub max_weight: Option<usize>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HochCmd {
    /// d∘d = 0 on every basis element up to an arity.
    Verify {
        #[arg(long, value_enum, default_value_t = ModuleArg::Dihedral)]
        module: ModuleArg,
        #[arg(long, default_value_t = 7)]
        max_arity: usize,
    },
    /// Degree-zero cohomology, compared with the extra class plus grt.
    H0 {
        #[arg(long, value_enum, default_value_t = ModuleArg::Dihedral)]
        module: ModuleArg,
        #[command(flatten)]
        range: ArityRange,
        /// Allow arity 8 and above.
        #[arg(long)]
        slow: bool,
    },
    /// The corner-cutting map onto the top prime classes.
    Onto {
        #[command(flatten)]
        range: ArityRange,
        #[arg(long)]
        slow: bool,
    },
    /// Pulled-back classes are cut to themselves by the first face only.
    Triviality {
        #[command(flatten)]
        range: ArityRange,
        #[arg(long)]
        slow: bool,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrtCmd {
    Solve {
        #[command(flatten)]
        range: WeightRange,
        /// Defaults to all three equations.
        #[arg(long, value_enum, value_delimiter = ',')]
        equations: Vec<EquationArg>,
    },
    /// Evaluate the defects of a Lie series in x, y such as `[x,[x,y]]`.
    Check {
        #[arg(long)]
        psi: String,
        #[arg(long, default_value_t = 7)]
        weight: usize,
        #[arg(long, value_enum, value_delimiter = ',')]
        equations: Vec<EquationArg>,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BraidCmd {
    /// π∘γ = id on generators and iterated brackets.
    Roundtrip {
        #[command(flatten)]
        range: ArityRange,
        #[arg(long, default_value_t = 3)]
        weight: usize,
    },
    /// π∘∂_i − ∂_i∘π on every ribbon braid generator.
    Discrepancy {
        #[command(flatten)]
        range: ArityRange,
    },
}

#[derive(Args, Debug, Serialize)]
pub struct ConjectureArgs {
    #[arg(long, default_value_t = 5, value_parser = positive)]
    pub max_weight: usize,
    #[arg(long)]
    pub slow: bool,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BvCmd {
    /// Displayed identities, the Maurer-Cartan equation and d∘d = 0.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_white: usize,
        #[arg(long, default_value_t = 3)]
        max_black: usize,
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
    },
}

#[derive(Args, Debug, Serialize, Clone)]
pub struct SamplingArgs {
    /// Arity; inferred from --diagram when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    /// `{"arity":n,"chords":[[i,j],...]}`; all prime diagrams when omitted.
    #[arg(long)]
    pub diagram: Option<String>,
    #[arg(long, default_value_t = 400_000, value_parser = positive)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Stratified)]
    pub method: MethodArg,
    /// Stop early once the standard error is below this.
    #[arg(long)]
    pub target_error: Option<f64>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PeriodCmd {
    Integrate(SamplingArgs),
    Stokes(SamplingArgs),
}

/// Invalid input or an exceeded cap; exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub(crate) fn input<E: fmt::Display>(e: E) -> InputError {
    InputError(e.to_string())
}

/// Shared state of one run.
pub(crate) struct Ctx {
    pub exec: Exec,
    pub max_monomials: usize,
    pub rb_max_weight: usize,
    pub quiet: bool,
}

impl Ctx {
    pub fn progress(&self, msg: impl fmt::Display) {
        if !self.quiet {
            eprintln!("chordwork: {msg}");
        }
    }
}

impl ArityRange {
    pub fn resolve(&self, default: (usize, usize)) -> Result<(usize, usize), InputError> {
        let (lo, hi) = match self.n {
            Some(n) => (n, n),
            None => (self.min_n.unwrap_or(default.0), self.max_n.unwrap_or(default.1)),
        };
        if lo > hi {
            return Err(InputError(format!("empty arity range {lo}..={hi}")));
        }
        Ok((lo, hi))
    }
}

impl WeightRange {
    pub fn resolve(&self, default: (usize, usize)) -> Result<(usize, usize), InputError> {
        let (lo, hi) = match self.weight {
            Some(w) => (w, w),
            None => (self.min_weight.unwrap_or(default.0), self.max_weight.unwrap_or(default.1)),
        };
        if lo == 0 || lo > hi {
            return Err(InputError(format!("empty weight range {lo}..={hi}")));
        }
        Ok((lo, hi))
    }
}

/// What a run produced. `stdout` is the rendered report (or help text).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Enum(_) => "enum",
        Command::Dims(_) => "dims",
        Command::Nf(_) => "nf",
        Command::Hochschild(HochCmd::Verify { .. }) => "hochschild verify",
        Command::Hochschild(HochCmd::H0 { .. }) => "hochschild h0",
        Command::Hochschild(HochCmd::Onto { .. }) => "hochschild onto",
        Command::Hochschild(HochCmd::Triviality { .. }) => "hochschild triviality",
        Command::Grt(GrtCmd::Solve { .. }) => "grt solve",
        Command::Grt(GrtCmd::Check { .. }) => "grt check",
        Command::Braids(BraidCmd::Roundtrip { .. }) => "braids roundtrip",
        Command::Braids(BraidCmd::Discrepancy { .. }) => "braids discrepancy",
        Command::Conjecture(_) => "conjecture",
        Command::Bvgraphs(BvCmd::Verify { .. }) => "bvgraphs verify",
        Command::Periods(PeriodCmd::Integrate(_)) => "periods integrate",
        Command::Periods(PeriodCmd::Stokes(_)) => "periods stokes",
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let workers = cli.workers.map(usize::from).unwrap_or_else(default_workers);
    let ctx = Ctx {
        exec: if workers == 1 { Exec::Sequential } else { Exec::default() },
        max_monomials: cli.max_monomials,
        rb_max_weight: cli.rb_max_weight,
        quiet: cli.quiet,
    };
    let result = with_pool(workers, || dispatch(cli, &ctx));
    match result {
        Ok(report) => Outcome {
            code: report.exit_code(),
            stdout: report.render(cli.format),
            stderr: report.failures.iter().map(|f| format!("FAIL {f}\n")).collect(),
        },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

#[cfg(feature = "parallel")]
fn with_pool<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_pool<R: Send>(_workers: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

fn dispatch(cli: &Cli, ctx: &Ctx) -> Result<Report, InputError> {
    let name = command_name(&cli.command);
    // the worker count is deliberately left out so reports are comparable
    let config = json!({
        "command": name,
        "args": &cli.command,
        "format": cli.format,
        "max_monomials": cli.max_monomials,
        "rb_max_weight": cli.rb_max_weight,
    });
    ctx.progress(format_args!("{name}"));
    match &cli.command {
        Command::Enum(a) => algebra::enumerate(a, ctx, config),
        Command::Dims(a) => algebra::dims(a, ctx, config),
        Command::Nf(a) => algebra::normal_form(a, ctx, config),
        Command::Hochschild(c) => algebra::hochschild(c, ctx, config),
        Command::Conjecture(a) => algebra::conjecture(a, ctx, config),
        Command::Grt(c) => lie::grt(c, ctx, config),
        Command::Braids(c) => lie::braids(c, ctx, config),
        Command::Bvgraphs(c) => graphs::bvgraphs(c, ctx, config),
        Command::Periods(c) => periods::periods(c, ctx, config),
    }
}
