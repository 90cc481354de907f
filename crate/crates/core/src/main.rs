use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use jetframe::io::{self, AnyJet};
use jetframe::jet::{compose2, compose3, inverse2, inverse3};
use jetframe::projective::{lift3, lift_jet, schwarzian_poly};
use jetframe::report::{render_json, render_text};
use jetframe::scalar::{format_rational, parse_rational};
use jetframe::verify::{self, Options};
use jetframe::{Error, Result};

/// Exact jet calculus on second order frames: identity checks and jet arithmetic.
#[derive(Parser)]
#[command(name = "jetframe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite; exits 0 iff every check passes.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random draws per randomized check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Report wall time per suite (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Jet arithmetic on JSON read from standard input.
    Jet {
        #[command(subcommand)]
        action: JetAction,
    },
    /// Schwarzian derivative of a polynomial at a point.
    Schwarzian {
        /// Comma-separated coefficients in increasing degree, e.g. `0,1,-1/2`.
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        point: String,
    },
}

#[derive(Subcommand)]
enum JetAction {
    /// `f . g` for a JSON array `[f, g]` of jets of the same order.
    Compose,
    /// Inverse of a single jet.
    Invert,
    /// Projective lift: `{"x","e","e2"}` in, `{"x","e","e2","e3"}` out; a
    /// one-dimensional 2-jet in, its 3-jet out.
    Lift3,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Jet,
    Lie,
    Cartan,
    Projective,
    Brs,
    All,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn read_stdin() -> Result<Value> {
    let mut text = String::new();
    std::io::stdin().read_to_string(&mut text).map_err(|e| Error::Parse(e.to_string()))?;
    io::parse(&text)
}

fn jet(action: JetAction) -> Result<String> {
    let input = read_stdin()?;
    let out = match action {
        JetAction::Compose => {
            let pair = input.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                Error::Malformed("compose expects a JSON array of two jets".into())
            })?;
            match (io::jet_from(&pair[0])?, io::jet_from(&pair[1])?) {
                (AnyJet::Order2(f), AnyJet::Order2(g)) => io::jet2_to(&compose2(&f, &g)?),
                (AnyJet::Order3(f), AnyJet::Order3(g)) => io::jet3_to(&compose3(&f, &g)?),
                _ => return Err(Error::Malformed("jets of different orders".into())),
            }
        }
        JetAction::Invert => match io::jet_from(&input)? {
            AnyJet::Order2(f) => io::jet2_to(&inverse2(&f)?),
            AnyJet::Order3(f) => io::jet3_to(&inverse3(&f)?),
        },
        JetAction::Lift3 => {
            if input.get("dim").is_some() {
                match io::jet_from(&input)? {
                    AnyJet::Order2(f) => io::jet3_to(&lift_jet(&f)?),
                    AnyJet::Order3(_) => return Err(Error::Malformed("lift3 expects a 2-jet".into())),
                }
            } else {
                io::frame3_to(&lift3(&io::frame2_from(&input)?)?)
            }
        }
    };
    Ok(io::render(&out))
}

fn schwarzian(coeffs: &str, point: &str) -> Result<String> {
    let coeffs = coeffs.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
    let point = parse_rational(point)?;
    Ok(format!("{}\n", format_rational(&schwarzian_poly(&coeffs, &point)?)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { suite, format, seed, samples, timings } => {
            let opts = Options { seed, samples, timings };
            let reports = match suite {
                Suite::All => verify::run_all(&opts),
                one => {
                    let name = verify::SUITES[one as usize];
                    verify::run(name, &opts).map(|r| vec![r])
                }
            };
            match reports {
                Ok(reports) => {
                    let text = if format == Format::Json { render_json(&reports) } else { render_text(&reports) };
                    print!("{text}");
                    let ok = reports.iter().all(|r| r.passed());
                    return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
                }
                Err(e) => Err(e),
            }
        }
        Command::Jet { action } => jet(action).map(|s| print!("{s}")),
        Command::Schwarzian { coeffs, point } => schwarzian(&coeffs, &point).map(|s| print!("{s}")),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
