//! Command-line front end: evaluate interval functions, compute and
//! classify their derivatives, and reproduce the canonical examples.
//!
//! Exit codes: 0 success (a NOT_EXISTS verdict is an answer, not a
//! failure), 2 usage or parse errors, 3 domain or evaluation errors,
//! 4 failed internal assertions (demo claims, verify mismatches).

mod demos;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use markov_deriv::{
    brute_quotient_scan, classify, derivative_report, one_sided_all, one_sided_markov_derivative,
    parse_function_def, parse_scalar, scan_to_csv, to_json_string, DerivativeReport, EngineError,
    EvalError, IntervalFunction, LadderConfig, QuadNum, Scalar, Side,
};

const EXIT_USAGE: u8 = 2;
const EXIT_EVAL: u8 = 3;
const EXIT_ASSERT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "markov-deriv",
    version,
    about = "Derivatives of interval-valued functions F(t) = [f(t), g(t)]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate F(t) at a point
    Eval {
        /// Function definition file (f = ..., g = ..., omega = (lo, hi))
        file: PathBuf,
        /// Sample point, e.g. `1/2` or `1/4*sqrt2`
        t: String,
    },
    /// Compute the interval derivative at a point
    Diff {
        file: PathBuf,
        /// Base point, interior to the domain
        x: String,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        #[command(flatten)]
        opts: EngineOpts,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
        /// Cross-check the result against the brute-force scan
        #[arg(long)]
        verify: bool,
        /// Write the brute-force scan as CSV to this path
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Classify how differentiability arises at a point
    Classify {
        file: PathBuf,
        x: String,
        #[command(flatten)]
        opts: EngineOpts,
        #[arg(long)]
        json: bool,
    },
    /// Run a scripted reproduction of a canonical example
    Demo {
        #[arg(value_enum)]
        name: DemoName,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Exact arithmetic over Q(sqrt 2)
    Exact,
    /// f64 arithmetic
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    /// Four-case exact computation of the Dirichlet-pair quotient
    Lemma1,
    /// One-sided min/max formula
    Theorem2,
    /// Crossed-slope condition on [-|t|, |t|]
    Dpm,
    /// Divergence at a jump discontinuity
    Lemcont,
}

#[derive(Args)]
struct EngineOpts {
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Ladder depth (rungs per ladder); defaults to 12 exact / 40 float
    #[arg(long)]
    depth: Option<usize>,
    /// Absolute convergence tolerance (default 1e-9)
    #[arg(long)]
    tol: Option<f64>,
}

pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn assertion(message: impl Into<String>) -> Self {
        Failure { code: EXIT_ASSERT, message: message.into() }
    }
}

fn engine_failure(e: EngineError) -> Failure {
    let code = match &e {
        EngineError::Config(_) => EXIT_USAGE,
        _ => EXIT_EVAL,
    };
    Failure { code, message: e.to_string() }
}

fn eval_failure(e: EvalError) -> Failure {
    Failure { code: EXIT_EVAL, message: e.to_string() }
}

fn load_function(path: &PathBuf) -> Result<IntervalFunction, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_function_def(&text).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}:{e}", path.display()),
    })
}

fn load_point(text: &str) -> Result<QuadNum, Failure> {
    parse_scalar(text).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("invalid scalar `{text}`: {e}"),
    })
}

fn make_config<S: Scalar>(
    fun: &IntervalFunction,
    x: &S,
    opts: &EngineOpts,
) -> Result<LadderConfig<S>, Failure> {
    let mut cfg = LadderConfig::for_function(fun, x).map_err(engine_failure)?;
    if let Some(depth) = opts.depth {
        cfg.depth = depth;
    }
    if let Some(tol) = opts.tol {
        cfg.tol_abs = tol;
    }
    cfg.validate().map_err(engine_failure)?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eval { file, t } => {
            let fun = load_function(&file)?;
            let t = load_point(&t)?;
            let value = fun.eval_interval(&t).map_err(eval_failure)?;
            let float = value.map(|s| s.to_f64());
            println!("F({t}) = {value} ≈ {float}");
            Ok(())
        }
        Command::Diff { file, x, side, opts, json, verify, csv } => {
            let fun = load_function(&file)?;
            let x = load_point(&x)?;
            match opts.mode {
                Mode::Exact => run_diff::<QuadNum>(&fun, &x, side, &opts, json, verify, csv),
                Mode::Float => {
                    run_diff::<f64>(&fun, &x.to_f64(), side, &opts, json, verify, csv)
                }
            }
        }
        Command::Classify { file, x, opts, json } => {
            let fun = load_function(&file)?;
            let x = load_point(&x)?;
            match opts.mode {
                Mode::Exact => run_classify::<QuadNum>(&fun, &x, &opts, json),
                Mode::Float => run_classify::<f64>(&fun, &x.to_f64(), &opts, json),
            }
        }
        Command::Demo { name } => demos::run(name),
    }
}

fn run_diff<S: Scalar>(
    fun: &IntervalFunction,
    x: &S,
    side: SideArg,
    opts: &EngineOpts,
    json: bool,
    verify: bool,
    csv: Option<PathBuf>,
) -> Result<(), Failure> {
    let cfg = make_config(fun, x, opts)?;
    let report = match side {
        SideArg::Both => derivative_report(fun, x, &cfg).map_err(engine_failure)?,
        SideArg::Left | SideArg::Right => {
            let s = if side == SideArg::Left { Side::Left } else { Side::Right };
            let result = one_sided_markov_derivative(fun, x, s, &cfg).map_err(engine_failure)?;
            let one_sided = one_sided_all(fun, x, &cfg).map_err(engine_failure)?;
            DerivativeReport { result, one_sided }
        }
    };

    if json {
        print!("{}", to_json_string(&report));
    } else {
        print!("{}", output::render_derivative(&report));
    }

    if verify || csv.is_some() {
        let rows = brute_quotient_scan(fun, x, 16).map_err(engine_failure)?;
        if let Some(path) = csv {
            fs::write(&path, scan_to_csv(&rows)).map_err(|e| Failure {
                code: EXIT_EVAL,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
        }
        if verify {
            if let Some(value) = &report.result.value {
                let slack = 10.0 * (cfg.tol_abs + cfg.tol_rel);
                for group in rows.chunks(16) {
                    let (t, deepest) = group.last().expect("nonempty scan group");
                    if deepest.dist_f64(value) > slack {
                        return Err(Failure::assertion(format!(
                            "oracle scan disagrees at t = {t}: scan {deepest}, engine {value}"
                        )));
                    }
                }
                eprintln!("verify: brute-force scan agrees with the engine ({} points)", rows.len());
            } else {
                eprintln!("verify: no derivative value to cross-check (verdict {})", report.result.verdict);
            }
        }
    }
    Ok(())
}

fn run_classify<S: Scalar>(
    fun: &IntervalFunction,
    x: &S,
    opts: &EngineOpts,
    json: bool,
) -> Result<(), Failure> {
    let cfg = make_config(fun, x, opts)?;
    let report = classify(fun, x, &cfg).map_err(engine_failure)?;
    if json {
        print!("{}", to_json_string(&report));
    } else {
        print!("{}", output::render_classification(&report));
    }
    Ok(())
}
