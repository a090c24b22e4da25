//! `lefschetz`: run verification suites on models and pencils.
//!
//! Exit status: 0 when every identity passes, 1 on any failed identity,
//! 2 on input errors (unparsable files, failed validation, bad arguments).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use lefschetz::chern::{ChernData, TruncatedSeries};
use lefschetz::io::{load_model, load_pencil, model_to_json, pencil_to_json};
use lefschetz::linalg::parse_q;
use lefschetz::suite::{emit_operator, parse_d_range, parse_suites, run, Input, Params, RunError, Selection, SUITES};

#[derive(Parser, Debug)]
#[command(name = "lefschetz", version, about = "Exact verification of Lefschetz operator identities")]
struct Args {
    /// Suites to run (comma separated, or `all`).
    #[arg(long, value_delimiter = ',', default_value = "all")]
    suite: Vec<String>,
    /// Model file, or `builtin:<name>`.
    #[arg(long, conflicts_with = "pencil")]
    model: Option<PathBuf>,
    /// Pencil file, or `builtin:<name>`.
    #[arg(long)]
    pencil: Option<PathBuf>,
    /// Pencil multiplier override.
    #[arg(long)]
    m: Option<i64>,
    /// Upper summation bound of the induction identity.
    #[arg(long)]
    j_max: Option<usize>,
    /// Largest power in the polarization power formulas.
    #[arg(long)]
    r_max: Option<usize>,
    /// Range of d for the Chern suite, `a..b` inclusive.
    #[arg(long)]
    d_range: Option<String>,
    /// Total Chern class coefficients c_0..c_n in powers of H.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    chern: Option<Vec<String>>,
    /// Degree of X (the value of the top power of H).
    #[arg(long)]
    deg_x: Option<String>,
    /// Betti numbers b_0..b_2n of X for the Chern suite.
    #[arg(long, value_delimiter = ',')]
    betti: Option<Vec<i64>>,
    /// Number of sampled test operators.
    #[arg(long)]
    samples: Option<usize>,
    /// Report output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the blocks of a named operator instead of running suites.
    #[arg(long)]
    emit: Option<String>,
    /// Print the input in file format instead of running suites.
    #[arg(long)]
    export: bool,
}

enum Outcome {
    Passed,
    Failed,
}

fn chern_data(args: &Args) -> Result<Option<ChernData>> {
    let Some(coeffs) = &args.chern else {
        if args.deg_x.is_some() {
            bail!("--deg-x needs --chern");
        }
        return Ok(None);
    };
    let parsed: Vec<_> = coeffs
        .iter()
        .map(|s| parse_q(s.trim()).with_context(|| format!("--chern: `{s}` is not a rational")))
        .collect::<Result<_>>()?;
    if parsed.is_empty() || parsed[0] != parse_q("1").expect("literal") {
        bail!("--chern must start with the constant term 1");
    }
    let deg = args.deg_x.as_deref().context("--chern needs --deg-x")?;
    let deg_x = parse_q(deg).with_context(|| format!("--deg-x: `{deg}` is not a rational"))?;
    let n = parsed.len() - 1;
    let betti = match &args.betti {
        Some(b) if b.len() == 2 * n + 1 => b.clone(),
        Some(b) => bail!("--betti needs {} values, got {}", 2 * n + 1, b.len()),
        None => Vec::new(),
    };
    Ok(Some(ChernData { chern: TruncatedSeries::new(parsed, n), deg_x, betti }))
}

fn input(args: &Args) -> Result<Option<Input>> {
    Ok(match (&args.model, &args.pencil) {
        (Some(m), None) => Some(Input::Model(load_model(m)?)),
        (None, Some(p)) => Some(Input::Pencil(load_pencil(p)?)),
        (None, None) => None,
        (Some(_), Some(_)) => bail!("--model and --pencil are exclusive"),
    })
}

fn write_output(args: &Args, text: &str) -> Result<()> {
    match &args.out {
        Some(path) => std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn execute(args: &Args) -> Result<Outcome> {
    let suites = parse_suites(&args.suite)?;
    let chern = chern_data(args)?;
    let params = Params {
        m: args.m,
        j_max: args.j_max,
        r_max: args.r_max,
        d_range: args.d_range.as_deref().map(parse_d_range).transpose()?,
        samples: args.samples,
        chern: chern.clone(),
    };
    let input = input(args)?;

    if args.export {
        let text = match input.context("--export needs --model or --pencil")? {
            Input::Model(m) => model_to_json(&m),
            Input::Pencil(p) => pencil_to_json(&p),
        };
        write_output(args, &text)?;
        return Ok(Outcome::Passed);
    }
    if let Some(name) = &args.emit {
        let input = input.context("--emit needs --model or --pencil")?;
        write_output(args, &emit_operator(&input, name, &params)?)?;
        return Ok(Outcome::Passed);
    }

    let input = match input {
        Some(i) => i,
        None => {
            // A bare Chern run needs no model.
            let data = chern.context("give --model or --pencil (or --chern with --deg-x)")?;
            if suites != ["chern"] {
                bail!("without a model only the chern suite can run");
            }
            let (a, b) = params.d_range.unwrap_or((1, 3));
            let report = lefschetz::chern::chern_suite(&data, a..=b);
            write_output(args, &report.to_json())?;
            return Ok(if report.all_passed() { Outcome::Passed } else { Outcome::Failed });
        }
    };
    let report = match run(&Selection { suites, input, params }) {
        Ok(r) => r,
        Err(RunError::Validation(v)) => {
            for f in v.failures() {
                eprintln!("validation failed: {}", f.name);
                if let Some(w) = &f.witness {
                    eprintln!("  at {}: {} vs {}", w.location, w.lhs, w.rhs);
                }
            }
            write_output(args, &v.to_json())?;
            bail!("input failed validation");
        }
        Err(e) => return Err(e.into()),
    };
    write_output(args, &report.to_json())?;
    for f in report.failures() {
        eprintln!("FAIL {}", f.name);
        if let Some(w) = &f.witness {
            eprintln!("  at {}: {} vs {}", w.location, w.lhs, w.rhs);
        }
    }
    Ok(if report.all_passed() { Outcome::Passed } else { Outcome::Failed })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<RunError>().is_some_and(|r| matches!(r, RunError::UnknownSuite(_))) {
                eprintln!("known suites: all, {}", SUITES.join(", "));
            }
            ExitCode::from(2)
        }
    }
}
