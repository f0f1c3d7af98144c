//! Command-line front end: one verb per verification, problem files or
//! named fixtures in, dimension tables out.
//!
//! Exit codes: 0 all assertions pass, 1 a mathematical assertion failed,
//! 2 malformed input or usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use parhom::cli::{
    canonical_problem, fixture_problem, parse_field, parse_problem, render, report_json, run,
    BoundsSpec, ProblemSpec,
};

#[derive(Parser)]
#[command(
    name = "parhom",
    about = "Exact Hochschild and partial group (co)homology of epsilon-strongly graded algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify that the grading is epsilon-strong; print local units and witnesses
    CheckEpsilon(Common),
    /// Hochschild homology dims of S with bimodule coefficients
    Hh(Common),
    /// Hochschild cohomology: corner isomorphism, E_2 page, collapse case
    Hcoh(Common),
    /// Partial group homology of G with coefficients B and H0(A, M)
    ParHomology(Common),
    /// The E^2 page H_p^par(G, H_q(A, M)) with the corner check
    E2(Common),
    /// The full spectral sequence from the double complex, with window honesty
    Ss(Common),
    /// Conjugacy-class splitting of the Hochschild complex and of E^2
    Split(Common),
    /// Globalization: H_p^par(G, X) vs H_p(G, Lambda(X))
    Globalize(Common),
    /// Centralizer reduction of the main theorem, per conjugacy class
    MainTheorem(Common),
    /// Every check above on one input
    All(Common),
    /// Write the canonical problem file of a named fixture to stdout
    Emit(EmitArgs),
}

#[derive(Args)]
struct Common {
    /// Problem file (JSON); mutually exclusive with --fixture
    #[arg(long, conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// Built-in fixture: pcp2, tri2, kz2, kz3, ks3
    #[arg(long)]
    fixture: Option<String>,
    /// Ground field for --fixture: Q or GF:p
    #[arg(long, default_value = "Q")]
    field: String,
    /// Bounds p,q,n (homological windows)
    #[arg(long, value_parser = parse_bounds)]
    bounds: Option<BoundsSpec>,
    /// Also write the machine-readable report here
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct EmitArgs {
    /// Fixture name
    #[arg(long)]
    fixture: String,
    /// Ground field: Q or GF:p
    #[arg(long, default_value = "Q")]
    field: String,
    /// Command to record in the emitted problem file
    #[arg(long, default_value = "all")]
    command: String,
    #[arg(long, value_parser = parse_bounds)]
    bounds: Option<BoundsSpec>,
}

fn parse_bounds(s: &str) -> Result<BoundsSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 || parts.iter().any(|p| p.trim().parse::<usize>().is_err()) {
        return Err(format!("bad bounds {s:?}, expected p,q,n"));
    }
    Ok(BoundsSpec {
        p: parts[0].trim().into(),
        q: parts[1].trim().into(),
        n: parts[2].trim().into(),
    })
}

fn load(common: &Common, verb: &str) -> Result<ProblemSpec, String> {
    let mut spec = match (&common.input, &common.fixture) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let spec = parse_problem(&text)?;
            if spec.command != verb {
                return Err(format!(
                    "problem file requests {:?} but the subcommand is {verb:?}",
                    spec.command
                ));
            }
            spec
        }
        (None, Some(name)) => {
            let field = parse_field(&common.field)?;
            fixture_problem(name, field, verb, common.bounds.clone().unwrap_or_default())
                .ok_or_else(|| format!("unknown fixture {name:?}"))?
        }
        _ => return Err("exactly one of --input or --fixture is required".into()),
    };
    if let Some(b) = &common.bounds {
        spec.bounds = b.clone();
    }
    Ok(spec)
}

fn execute(common: &Common, verb: &str) -> Result<ExitCode, String> {
    let spec = load(common, verb)?;
    let report = run(&spec)?;
    print!("{}", render(&report));
    if let Some(path) = &common.json {
        std::fs::write(path, report_json(&report))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::CheckEpsilon(c) => execute(c, "check-epsilon"),
        Command::Hh(c) => execute(c, "hh"),
        Command::Hcoh(c) => execute(c, "hcoh"),
        Command::ParHomology(c) => execute(c, "par-homology"),
        Command::E2(c) => execute(c, "e2"),
        Command::Ss(c) => execute(c, "ss"),
        Command::Split(c) => execute(c, "split"),
        Command::Globalize(c) => execute(c, "globalize"),
        Command::MainTheorem(c) => execute(c, "main-theorem"),
        Command::All(c) => execute(c, "all"),
        Command::Emit(args) => (|| {
            let field = parse_field(&args.field)?;
            let spec = fixture_problem(
                &args.fixture,
                field,
                &args.command,
                args.bounds.clone().unwrap_or_default(),
            )
            .ok_or_else(|| format!("unknown fixture {:?}", args.fixture))?;
            print!("{}", canonical_problem(&spec));
            Ok(ExitCode::SUCCESS)
        })(),
    };
    match result {
        Ok(code) => code,
        Err(diag) => {
            eprintln!("error: {diag}");
            ExitCode::from(2)
        }
    }
}
