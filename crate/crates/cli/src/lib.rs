//! Command-line front end. [`dispatch`] does all the work so that tests can
//! drive it without spawning a process.

mod dot;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use gradedpi_core::{ElementaryGrading, Error as CoreError, GradingTuple, GroupDescriptor};
use serde_json::Value;

/// Usage errors, including arguments that parse but make no sense.
pub const EXIT_USAGE: i32 = 2;
/// A property requested under `--strict` does not hold.
pub const EXIT_STRICT: i32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "gradedpi",
    version,
    about = "Graded monomial identities of elementary gradings on M_n(F)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Support, components, canonical form and degeneracy verdicts of a grading.
    Analyze {
        #[command(flatten)]
        grading: GradingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide whether a monomial with the given degrees is an identity.
    Check {
        #[command(flatten)]
        grading: GradingArgs,
        /// Comma-separated degrees of the variables.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Exit 1 unless the word is an identity.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimal non-trivial monomial identities up to a length bound.
    Enumerate {
        #[command(flatten)]
        grading: GradingArgs,
        /// Longest word searched [default: size of the tuple].
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: Option<u64>,
        /// Exit 1 unless the grading is almost non-degenerate.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify almost non-degenerate integer gradings of M_n with entries up to a bound.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Largest entry [default: 2n + 2].
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bound: Option<u64>,
        /// Exit 1 when some survivor matches no known family.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Bounded good-sequence test for an integer tuple.
    Goodseq {
        /// Only `Z` is accepted.
        #[arg(long, default_value = "Z")]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        tuple: String,
        /// Longest violation searched [default: 2n].
        #[arg(long = "L", value_parser = clap::value_parser!(u64).range(2..))]
        max_len: Option<u64>,
        /// Exit 1 when a violation is found.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Remove repeated entries and report the canonical form.
    Reduce {
        #[command(flatten)]
        grading: GradingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct GradingArgs {
    /// Group, e.g. `Z`, `Z_5`, `Z^2 x Z_3`.
    #[arg(long, default_value = "Z")]
    group: String,
    /// Comma-separated entries, e.g. `0,2,3,5` or `(0,0),(1,2)`.
    #[arg(long, allow_hyphen_values = true)]
    tuple: String,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long)]
    pretty: bool,
    /// Also write the labeled digraph of the grading as DOT.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

struct Usage(String);

impl Usage {
    fn arg(flag: &str, value: &str, err: CoreError) -> Self {
        Usage(format!("error: invalid value '{value}' for '--{flag}': {err}"))
    }
}

impl GradingArgs {
    fn build(&self) -> Result<ElementaryGrading, Usage> {
        let desc: GroupDescriptor = self.group.parse().map_err(|e| Usage::arg("group", &self.group, e))?;
        let entries = desc
            .parse_elements(&self.tuple)
            .map_err(|e| Usage::arg("tuple", &self.tuple, e))?;
        let tuple = GradingTuple::new(desc, entries).map_err(|e| Usage::arg("tuple", &self.tuple, e))?;
        Ok(ElementaryGrading::new(tuple))
    }
}

fn render(value: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    } else {
        serde_json::to_string(value).expect("JSON values serialize")
    };
    s.push('\n');
    s
}

fn write_dot(path: &Option<PathBuf>, grading: &ElementaryGrading) -> Result<(), Usage> {
    if let Some(path) = path {
        std::fs::write(path, dot::grading_digraph(grading))
            .map_err(|e| Usage(format!("error: cannot write '--dot' file '{}': {e}", path.display())))?;
    }
    Ok(())
}

fn strict_code(strict: bool, holds: bool) -> i32 {
    if strict && !holds {
        EXIT_STRICT
    } else {
        0
    }
}

fn run(command: Command) -> Result<(i32, String), Usage> {
    match command {
        Command::Analyze { grading, output } => {
            let g = grading.build()?;
            write_dot(&output.dot, &g)?;
            Ok((0, render(&report::analyze(&g), output.pretty)))
        }
        Command::Check {
            grading,
            word,
            strict,
            output,
        } => {
            let g = grading.build()?;
            let w =
                gradedpi_core::DegreeWord::parse(g.descriptor(), &word).map_err(|e| Usage::arg("word", &word, e))?;
            let r = gradedpi_core::classify_word(&g, &w).map_err(|e| Usage::arg("word", &word, e))?;
            write_dot(&output.dot, &g)?;
            Ok((
                strict_code(strict, r.is_identity),
                render(&report::check(&g, &r), output.pretty),
            ))
        }
        Command::Enumerate {
            grading,
            max_len,
            strict,
            output,
        } => {
            let g = grading.build()?;
            let max_len = max_len.map_or(g.size(), |k| k as usize);
            let set = gradedpi_core::enumerate_minimal_identities(&g, max_len)
                .map_err(|e| Usage::arg("max-len", &max_len.to_string(), e))?;
            let verdict = gradedpi_core::is_almost_nondegenerate(&g);
            write_dot(&output.dot, &g)?;
            Ok((
                strict_code(strict, verdict.almost_nondegenerate),
                render(&report::enumerate(&g, &set, &verdict), output.pretty),
            ))
        }
        Command::Classify {
            n,
            bound,
            strict,
            pretty,
        } => {
            let n_usize = n as usize;
            let bound = bound.map_or(2 * n as i64 + 2, |b| b as i64);
            let result =
                gradedpi_core::classify_almost_nondeg(n_usize, bound, Default::default()).map_err(|e| match e {
                    CoreError::UnsupportedSize(_) => Usage::arg("n", &n.to_string(), e),
                    e => Usage::arg("bound", &bound.to_string(), e),
                })?;
            Ok((
                strict_code(strict, result.unmatched().is_empty()),
                render(&report::classify(&result), pretty),
            ))
        }
        Command::Goodseq {
            group,
            tuple,
            max_len,
            strict,
            pretty,
        } => {
            let desc: GroupDescriptor = group.parse().map_err(|e| Usage::arg("group", &group, e))?;
            if desc != GroupDescriptor::integers() {
                return Err(Usage(format!(
                    "error: invalid value '{group}' for '--group': good sequences are integer tuples, use Z"
                )));
            }
            let entries: Vec<i64> = desc
                .parse_elements(&tuple)
                .map_err(|e| Usage::arg("tuple", &tuple, e))?
                .iter()
                .map(|e| e.coords()[0])
                .collect();
            let max_len = max_len.map_or(2 * entries.len(), |k| k as usize);
            let verdict = gradedpi_core::is_good_sequence(&entries, max_len).map_err(|e| match e {
                CoreError::InvalidBound(_) => Usage::arg("L", &max_len.to_string(), e),
                e => Usage::arg("tuple", &tuple, e),
            })?;
            Ok((
                strict_code(strict, verdict.good_up_to_len),
                render(&report::goodseq(&verdict), pretty),
            ))
        }
        Command::Reduce { grading, output } => {
            let g = grading.build()?;
            write_dot(&output.dot, &g)?;
            Ok((0, render(&report::reduce(&g), output.pretty)))
        }
    }
}

/// Runs one invocation. `argv` includes the program name.
///
/// Returns the exit code and the text to print: the JSON document on codes
/// 0 and 1, an error or help message otherwise.
pub fn dispatch<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            return (code, e.render().to_string());
        }
    };
    match run(cli.command) {
        Ok(out) => out,
        Err(Usage(msg)) => (EXIT_USAGE, msg + "\n"),
    }
}
