//! Command-line front end for `helpzc`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input or unmet
//! precondition, 3 search budget exhausted.

pub mod check;
pub mod render;
pub mod theorem;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use helpzc::cyclotomic::trace_root;
use helpzc::help::tpa_set;
use helpzc::psl2::{char_table, decompose_chi, CharRestriction, CyclicFrame, GroupContext};
use helpzc::solver::{solve, Family, SolverConfig};
use helpzc::BigInt;

pub use render::Format;

#[derive(Debug, Parser)]
#[command(
    name = "helpzc",
    version,
    about = "HeLP method for PSL(2,q) in exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate all partial-augmentation distributions passing the HeLP constraints.
    Vpa {
        #[command(flatten)]
        frame: FrameArgs,
        #[command(flatten)]
        chars: CharArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the trivial partial augmentations.
    Tpa {
        #[command(flatten)]
        frame: FrameArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reproduce the classification for elements of order 2t.
    VerifyMain {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: u64,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check distributions stored as JSON against all conditions.
    Check {
        /// JSON file: one distribution, an array, or an object with `solutions`.
        file: PathBuf,
        /// Character family for the multiplicity condition.
        #[arg(long, default_value = "paper,brauer-p")]
        chars: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Show character values on a cyclic frame.
    Chars {
        #[arg(long)]
        q: u64,
        /// Frame order.
        #[arg(long, alias = "n")]
        m: u64,
        /// Brauer character χ_R with `R` given as `r0.r1…` or `r0,r1,…`.
        #[arg(long, value_name = "R")]
        chi: Option<String>,
        /// Decompose χ_R into trivial, φ_h and ψ_h parts.
        #[arg(long, value_name = "R")]
        decompose: Option<String>,
        /// Any character token, e.g. `phi:2` or `chi:2.0`.
        #[arg(long = "char", value_name = "TOKEN")]
        token: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Trace of ζ_m^k down to the rationals.
    Trace {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: Option<i64>,
    },
}

#[derive(Debug, Args)]
pub struct FrameArgs {
    #[arg(long)]
    pub q: u64,
    /// Order of the cyclic frame.
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct CharArgs {
    /// Comma-separated presets (`paper`, `brauer-p`, `brauer-p:D`) and character tokens.
    #[arg(long, default_value = "paper")]
    pub chars: String,
    /// JSON array of tokens; overrides `--chars`.
    #[arg(long)]
    pub chars_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Abort after this many search nodes.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, env = "HELPZC_WORKERS")]
    pub workers: Option<usize>,
    /// Fail instead of adding Brauer characters when the family is too small.
    #[arg(long)]
    pub no_augment: bool,
}

impl SolverArgs {
    pub fn config(&self) -> SolverConfig {
        SolverConfig {
            budget: self.budget,
            workers: self.workers,
            augment: !self.no_augment,
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Core(helpzc::Error),
    Io(String),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(e) => write!(f, "{e}"),
        }
    }
}

impl From<helpzc::Error> for CliError {
    fn from(e: helpzc::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(helpzc::Error::Incomplete { .. }) => 3,
            _ => 2,
        }
    }
}

/// Rendered output of a command and whether its verdict is positive.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
    pub out: Option<PathBuf>,
}

impl Outcome {
    fn new(text: String, ok: bool, output: &OutputArgs) -> Self {
        Outcome {
            text,
            ok,
            out: output.out.clone(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

fn frame(q: u64, m: u64) -> Result<CyclicFrame, CliError> {
    Ok(CyclicFrame::new(GroupContext::new(q)?, m)?)
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn family(args: &CharArgs, frame: &CyclicFrame) -> Result<Family, CliError> {
    match &args.chars_file {
        None => Ok(Family::parse(&args.chars, frame)?),
        Some(path) => {
            let tokens: Vec<String> = serde_json::from_str(&read(path)?).map_err(|e| {
                CliError::Usage(format!(
                    "{}: expected a JSON array of tokens: {e}",
                    path.display()
                ))
            })?;
            Ok(Family::from_tokens(&tokens, frame)?)
        }
    }
}

fn parse_r(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(['.', ','])
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad entry `{x}` in R = `{s}`")))
        })
        .collect()
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Vpa {
            frame: fa,
            chars,
            solver,
            output,
        } => {
            let f = frame(fa.q, fa.n)?;
            let fam = family(chars, &f)?;
            let report = solve(&f, &fam, &solver.config())?;
            let format = output.format.unwrap_or(Format::Json);
            let text = render::enumeration(&report, &f, &tpa_set(&f), format);
            Ok(Outcome::new(text, true, output))
        }
        Command::Tpa { frame: fa, output } => {
            let f = frame(fa.q, fa.n)?;
            let format = output.format.unwrap_or(Format::Json);
            Ok(Outcome::new(
                render::distributions(&f, &tpa_set(&f), format),
                true,
                output,
            ))
        }
        Command::VerifyMain {
            q,
            t,
            solver,
            output,
        } => {
            let report = theorem::verify_main(*q, *t, &solver.config())?;
            let format = output.format.unwrap_or(Format::Text);
            Ok(Outcome::new(
                render::main_report(&report, format),
                report.verified(),
                output,
            ))
        }
        Command::Check {
            file,
            chars,
            output,
        } => {
            let dists = check::parse_input(&read(file)?)?;
            let outcomes = dists
                .iter()
                .map(|pa| check::check_one(pa, chars))
                .collect::<helpzc::Result<Vec<_>>>()?;
            let ok = outcomes.iter().all(check::CheckOutcome::passed);
            let format = output.format.unwrap_or(Format::Text);
            Ok(Outcome::new(
                render::check(&outcomes, chars, format),
                ok,
                output,
            ))
        }
        Command::Chars {
            q,
            m,
            chi,
            decompose,
            token,
            output,
        } => {
            let f = frame(*q, *m)?;
            let format = output.format.unwrap_or(Format::Text);
            let mut text = String::new();
            if let Some(r) = decompose {
                let d = decompose_chi(&parse_r(r)?, &f)?;
                text.push_str(&format!("{d}\n"));
            }
            let mut shown = Vec::new();
            if let Some(r) = chi {
                shown.push(CharRestriction::BrauerChi(parse_r(r)?));
            }
            if let Some(tok) = token {
                shown.push(CharRestriction::parse(tok)?);
            }
            if shown.is_empty() && decompose.is_none() {
                shown = Family::brauer(&f).characters;
            }
            for c in &shown {
                c.validate(&f)?;
                let table = char_table::<BigInt>(&f, c)?;
                text.push_str(&render::char_table(&c.to_string(), &table, &f, format));
            }
            Ok(Outcome::new(text, true, output))
        }
        Command::Trace { m, k } => {
            if *m == 0 {
                return Err(CliError::Usage("m must be positive".into()));
            }
            let text = match k {
                Some(k) => format!("{}\n", trace_root(*m, *k)),
                None => {
                    let mut s = String::from("k\ttrace\n");
                    for k in 0..*m as i64 {
                        s.push_str(&format!("{k}\t{}\n", trace_root(*m, k)));
                    }
                    s
                }
            };
            Ok(Outcome {
                text,
                ok: true,
                out: None,
            })
        }
    }
}

/// Runs the command, writes its output and maps the result to an exit code.
pub fn main_with(cli: &Cli) -> ExitCode {
    match run(cli) {
        Ok(outcome) => {
            match &outcome.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &outcome.text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", outcome.text),
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
