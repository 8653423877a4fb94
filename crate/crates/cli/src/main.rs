//! `abelian-ideals`: run a named verification suite or emit a named object.
//!
//! Progress goes to standard error; standard output receives only the path
//! of the written report.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use abelian_ideals::exactnum::{parse_rational, Rational};
use abelian_ideals::report::{emit, run_suite, EmitObject, Format, Suite, SuiteConfig};
use abelian_ideals::Error;
use clap::Parser;

const EXIT_PARAMETER: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;
const EXIT_PRECISION: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "abelian-ideals", version, about = "Verify equations of abelian surfaces, elliptic normal curves and their degenerations")]
struct Cli {
    /// complex, ideal, betti, scroll, secant-exact, abelian-exact, theta-rank,
    /// theta-secant, klein, or emit
    command: String,
    /// For `emit`: ideal, complex or matrix
    object: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    /// Rational scroll parameter; repeat or separate with commas
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Vec<String>,
    #[arg(long)]
    k_max: Option<u32>,
    #[arg(long, env = "ABELIAN_IDEALS_SEED", default_value_t = 0)]
    seed: u64,
    /// Theta series truncation tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Relative singular value threshold for numeric rank
    #[arg(long)]
    rank_tol: Option<f64>,
    /// Sample count for the theta suites
    #[arg(long)]
    samples: Option<usize>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value = "json")]
    format: String,
    /// Report path (default: `<command>.<format>` in the current directory)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    /// Rank case: elliptic-even, elliptic-odd, surface-even, surface-odd
    #[arg(long)]
    case: Option<String>,
    /// Matrix kind for `emit matrix`: even, odd, r, t
    #[arg(long)]
    kind: Option<String>,
    /// Dimension of the cyclic polytope
    #[arg(long)]
    dim: Option<u32>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Precision(_) => EXIT_PRECISION,
        Error::Verification(_) => EXIT_VERIFICATION,
        _ => EXIT_PARAMETER,
    }
}

fn config(cli: &Cli) -> Result<SuiteConfig, Error> {
    let lambdas = cli.lambda.iter().map(|s| parse_rational(s.trim())).collect::<Result<Vec<Rational>, Error>>()?;
    let defaults = SuiteConfig::default();
    Ok(SuiteConfig {
        n: cli.n,
        d: cli.d,
        lambdas,
        k_max: cli.k_max,
        seed: cli.seed,
        tol: cli.tol.unwrap_or(defaults.tol),
        rank_tol: cli.rank_tol.unwrap_or(defaults.rank_tol),
        samples: cli.samples,
        family: cli.family.clone(),
        case: cli.case.clone(),
        kind: cli.kind.clone(),
        dim: cli.dim,
    })
}

/// Writes the artifact; returns its path and whether every claim held.
fn execute(cli: &Cli) -> Result<(PathBuf, bool), Error> {
    let format = Format::parse(&cli.format)?;
    let cfg = config(cli)?;
    let start = Instant::now();
    let (name, body, verified) = if cli.command == "emit" {
        let object = EmitObject::parse(cli.object.as_deref().unwrap_or(""))?;
        eprintln!("emitting {}", object.name());
        (object.name().to_string(), emit(object, &cfg, format)?, true)
    } else {
        if cli.object.is_some() {
            return Err(Error::Parameter(format!("unexpected argument after suite {:?}", cli.command)));
        }
        let suite = Suite::parse(&cli.command)?;
        eprintln!("running suite {suite}");
        let report = run_suite(suite, &cfg)?;
        for c in &report.claims {
            eprintln!("  [{}] {}", if c.status == abelian_ideals::report::Status::Verified { "ok" } else { "FAILED" }, c.claim);
        }
        (suite.name().to_string(), report.render(format), report.verified())
    };
    let path = cli.out.clone().unwrap_or_else(|| PathBuf::from(format!("{name}.{}", format.extension())));
    std::fs::write(&path, body).map_err(|e| Error::Parameter(format!("cannot write {}: {e}", path.display())))?;
    eprintln!("finished in {:.2?}", start.elapsed());
    Ok((path, verified))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(EXIT_PARAMETER);
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().expect("thread pool is configured once");
    }
    match execute(&cli) {
        Ok((path, verified)) => {
            println!("{}", path.display());
            if verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(EXIT_VERIFICATION)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_partition_errors() {
        assert_eq!(exit_code(&Error::Precision("x".into())), EXIT_PRECISION);
        assert_eq!(exit_code(&Error::Verification("x".into())), EXIT_VERIFICATION);
        assert_eq!(exit_code(&Error::Parameter("x".into())), EXIT_PARAMETER);
        assert_eq!(exit_code(&Error::Size("x".into())), EXIT_PARAMETER);
    }
}
