mod methods;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hankel_mb::acceptance::{run_acceptance, AcceptanceOptions};
use hankel_mb::asymptotics::{hankel0_odd_series, willis_j0_series, willis_j1_series, DerivativeTable};
use hankel_mb::mellin_barnes::growth_policy;
use hankel_mb::{Example, Params};

use methods::{evaluate, CliError, Method, Tolerances};
use report::{compare, params_map, write_csv};

#[derive(Parser)]
#[command(name = "hankel-mb", version, about = "Order-zero Hankel transforms via Mellin-Barnes contours")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one transform value
    Transform {
        #[command(flatten)]
        example: ExampleArgs,
        #[arg(long)]
        q: f64,
        #[arg(long, value_enum, default_value_t = Method::Contour)]
        method: Method,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run every applicable method over a q grid (JSON by default)
    Compare(CompareArgs),
    /// Same as compare, CSV by default
    Sweep(CompareArgs),
    /// Willis-type asymptotic series from a table of derivatives at zero
    Asymptotic {
        /// One derivative per line; line k holds f^(k)(0)
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        q: f64,
        #[arg(long, value_enum, default_value_t = Series::J0)]
        series: Series,
        #[arg(long, default_value_t = 6)]
        terms: usize,
        #[arg(long)]
        json: bool,
    },
    /// Fit the growth of the coefficient along vertical lines
    CheckGrowth {
        #[command(flatten)]
        example: ExampleArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run the acceptance grid
    Selftest {
        #[arg(long)]
        json: bool,
        /// Multiplies every acceptance tolerance
        #[arg(long, default_value_t = 1.0, hide = true)]
        tolerance_scale: f64,
    },
}

#[derive(Args)]
struct ExampleArgs {
    #[arg(long)]
    example: String,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
}

impl ExampleArgs {
    fn resolve(&self) -> Result<(Example, Params<f64>), CliError> {
        let e: Example = self.example.parse()?;
        let p = Params { a: self.a, c: self.c, n: self.n };
        p.check(e)?;
        Ok((e, p))
    }
}

#[derive(Args)]
struct TolArgs {
    /// Tolerance for both the contour and the oracle
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Terms allowed in the a6 series
    #[arg(long, default_value_t = 400)]
    terms: usize,
}

impl TolArgs {
    fn get(&self) -> Tolerances {
        Tolerances { contour: self.tol, oracle: self.tol, terms: self.terms }
    }
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    example: ExampleArgs,
    /// Comma-separated q values
    #[arg(long, default_value = "")]
    q_grid: String,
    /// Single q, appended to the grid
    #[arg(long)]
    q: Option<f64>,
    #[command(flatten)]
    tol: TolArgs,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    /// Include wall-clock timings (not deterministic)
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Series {
    J0,
    J1,
    Odd,
}

fn print_json<S: Serialize>(v: &S) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(v).map_err(|e| CliError::Numeric(e.to_string()))?;
    println!("{s}");
    Ok(())
}

#[derive(Serialize)]
struct TransformOut<'a> {
    example: &'a str,
    params: std::collections::BTreeMap<&'static str, f64>,
    q: f64,
    method: Method,
    value: f64,
    error: f64,
    warnings: &'a [String],
}

fn cmd_transform(ex: &ExampleArgs, q: f64, method: Method, tol: &TolArgs, json: bool) -> Result<(), CliError> {
    let (e, p) = ex.resolve()?;
    let r = evaluate(e, &p, q, method, &tol.get())?;
    if json {
        print_json(&TransformOut {
            example: e.label(),
            params: params_map(&p),
            q,
            method,
            value: r.value,
            error: r.error,
            warnings: &r.warnings,
        })?;
    } else {
        println!("{:.10} +- {:.3e}  ({e}, {method}, q={q})", r.value, r.error);
        for w in &r.warnings {
            println!("warning: {w}");
        }
    }
    Ok(())
}

fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("--q-grid: not a number: {t}"))))
        .collect()
}

fn cmd_compare(args: &CompareArgs, csv_default: bool) -> Result<(), CliError> {
    let (e, p) = args.example.resolve()?;
    let mut grid = parse_grid(&args.q_grid)?;
    grid.extend(args.q);
    let report = compare(e, &p, &grid, &args.tol.get(), args.timings);
    let as_csv = args.csv || (csv_default && !args.json);
    if as_csv {
        let out = io::stdout().lock();
        write_csv(&report, out).map_err(|err| CliError::Numeric(err.to_string()))?;
        if let Some(t) = &report.timings_ms {
            for (m, ms) in t {
                eprintln!("{m}: {ms:.1} ms");
            }
        }
    } else {
        print_json(&report)?;
    }
    Ok(())
}

fn read_table(path: &PathBuf) -> Result<DerivativeTable<f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let v: f64 = t.parse().map_err(|_| CliError::Usage(format!("{}:{}: not a number: {t}", path.display(), i + 1)))?;
        values.push(v);
    }
    Ok(DerivativeTable::new(values, path.display().to_string())?)
}

fn cmd_asymptotic(file: &PathBuf, q: f64, series: Series, terms: usize, json: bool) -> Result<(), CliError> {
    let table = read_table(file)?;
    let r = match series {
        Series::J0 => willis_j0_series(&table, q, terms),
        Series::J1 => willis_j1_series(&table, q, terms),
        Series::Odd => hankel0_odd_series(&table, q, terms),
    }?;
    if json {
        print_json(&r)?;
    } else {
        println!("{:.10} +- {:.3e}  (truncated after term {})", r.value, r.error_bound, r.truncation_index);
    }
    Ok(())
}

#[derive(Serialize)]
struct GrowthOut<'a> {
    example: &'a str,
    a_est: f64,
    p_est: f64,
    c_est: f64,
    w_rate: f64,
    residual: f64,
    admissible: bool,
    outcome: &'static str,
    warnings: Vec<String>,
}

fn cmd_check_growth(ex: &ExampleArgs, json: bool) -> Result<(), CliError> {
    let (e, p) = ex.resolve()?;
    let coef = e.coefficient(&p)?;
    let g = coef.growth()?;
    let (outcome, warnings, failure) = match growth_policy(&coef) {
        Ok((_, w)) if g.admissible => ("admissible", w, None),
        Ok((_, w)) => ("boundary, accepted with warnings", w, None),
        Err(err) => ("rejected", Vec::new(), Some(CliError::from(err))),
    };
    let out = GrowthOut {
        example: e.label(),
        a_est: g.a_est,
        p_est: g.p_est,
        c_est: g.c_est,
        // avoid printing -0
        w_rate: g.w_rate + 0.0,
        residual: g.residual,
        admissible: g.admissible,
        outcome,
        warnings,
    };
    if json {
        print_json(&out)?;
    } else {
        println!("example     {}", out.example);
        println!("kind        {}", e.kind().name());
        println!("a_est       {:.6}  (pi/2 = {:.6})", out.a_est, std::f64::consts::FRAC_PI_2);
        println!("p_est       {:.6}", out.p_est);
        println!("c_est       {:.6}", out.c_est);
        println!("rate        {:.6}", out.w_rate);
        println!("residual    {:.3e}", out.residual);
        println!("admissible  {}", out.admissible);
        println!("outcome     {}", out.outcome);
        for w in &out.warnings {
            println!("warning: {w}");
        }
    }
    match failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn cmd_selftest(json: bool, tolerance_scale: f64) -> Result<(), CliError> {
    let report = run_acceptance(&AcceptanceOptions { tolerance_scale });
    if json {
        print_json(&report)?;
    } else {
        let mut out = io::stdout().lock();
        for c in &report.criteria {
            let _ = writeln!(out, "{}", c.line());
        }
        let _ = writeln!(out, "total {:.0} ms", report.elapsed_ms);
    }
    if report.passed {
        Ok(())
    } else {
        let list: Vec<String> = report.failing().iter().map(|i| i.to_string()).collect();
        Err(CliError::Numeric(format!("failing criteria: {}", list.join(", "))))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Transform { example, q, method, tol, json } => cmd_transform(example, *q, *method, tol, *json),
        Command::Compare(args) => cmd_compare(args, false),
        Command::Sweep(args) => cmd_compare(args, true),
        Command::Asymptotic { file, q, series, terms, json } => cmd_asymptotic(file, *q, *series, *terms, *json),
        Command::CheckGrowth { example, json } => cmd_check_growth(example, *json),
        Command::Selftest { json, tolerance_scale } => cmd_selftest(*json, *tolerance_scale),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
