//! The `bpd` command line: enumeration, Schubert polynomials, the Monk bijection and
//! the verification harness.
//!
//! Exit codes: 0 success, 1 verification or identity failure, 2 usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use bpd::decorated::{phi_tilde_backward, phi_tilde_forward, DecResolved, DecoratedBpd, DecoratedInput, Label};
use bpd::grid::enumerate_bpds;
use bpd::monk::{phi_backward, phi_forward, OutcomeTag, Resolved, TraceStep};
use bpd::schubert::{schubert_bpd, schubert_dd};
use bpd::text::{parse, render, render_decorated, Parsed};
use bpd::verify::{verify, VerifyOptions, DEFAULT_SEED};
use bpd::{Diagram, Permutation};
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bpd", version, about = "Bumpless pipe dreams and Monk's rule")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the BPDs of a permutation in canonical order.
    Enumerate {
        /// One-line notation, space or comma separated.
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        /// Print only the number of diagrams.
        #[arg(long)]
        count: bool,
        /// Write one file per diagram into this directory.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Print the Schubert polynomial of a permutation.
    Schubert {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        /// Double Schubert polynomial in x and -y.
        #[arg(long)]
        double: bool,
        #[arg(long, value_enum, default_value_t = Method::Bpd)]
        method: Method,
    },
    /// Apply, invert or verify the Monk bijection.
    Monk {
        #[command(subcommand)]
        action: MonkAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Sum over bumpless pipe dreams.
    Bpd,
    /// Divided differences from the longest element.
    Dd,
    /// Both, failing if they differ.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LabelArg {
    X,
    Y,
}

impl From<LabelArg> for Label {
    fn from(l: LabelArg) -> Label {
        match l {
            LabelArg::X => Label::X,
            LabelArg::Y => Label::NegY,
        }
    }
}

#[derive(Debug, Subcommand)]
enum MonkAction {
    /// Map a diagram forward.
    Apply {
        #[arg(long, required = true, num_args = 1..)]
        pi: Vec<String>,
        #[arg(long)]
        alpha: usize,
        /// Diagram file; a decorated file without --label is a cover-down input.
        file: PathBuf,
        /// Label of the inserted blank, for decorated inputs in BPD(π).
        #[arg(long, value_enum)]
        label: Option<LabelArg>,
        /// Print one line per primitive step before the result.
        #[arg(long)]
        trace: bool,
    },
    /// Map a diagram backward.
    Invert {
        #[arg(long, required = true, num_args = 1..)]
        pi: Vec<String>,
        #[arg(long)]
        alpha: usize,
        file: PathBuf,
        #[arg(long)]
        trace: bool,
    },
    /// Check Monk's rule and the bijections over S_n.
    Verify {
        #[arg(long)]
        n: usize,
        /// Also check the double-polynomial identity and the decorated bijection.
        #[arg(long)]
        double: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Check this many random permutations instead of all of S_n.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// A failed command: exit code and message for standard error.
#[derive(Debug)]
struct Fail(i32, String);

fn usage(msg: impl std::fmt::Display) -> Fail {
    Fail(EXIT_USAGE, msg.to_string())
}

type Out<'a> = &'a mut dyn Write;

/// Run the command line `args` (program name first), writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Enumerate { perm, count, out: dir } => enumerate(out, &perm, count, dir.as_deref()),
        Command::Schubert { perm, double, method } => schubert(out, &perm, double, method),
        Command::Monk { action } => monk(out, err, action),
    };
    match result {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn parse_perm(words: &[String]) -> Result<Permutation, Fail> {
    words.join(" ").parse().map_err(|e| usage(format!("bad permutation: {e}")))
}

fn io(e: std::io::Error) -> Fail {
    usage(e)
}

fn enumerate(out: Out, perm: &[String], count: bool, dir: Option<&Path>) -> Result<i32, Fail> {
    let pi = parse_perm(perm)?;
    let all = enumerate_bpds(&pi);
    if count {
        writeln!(out, "{}", all.len()).map_err(io)?;
        return Ok(EXIT_OK);
    }
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(io)?;
            for (i, d) in all.iter().enumerate() {
                let path = dir.join(format!("{:04}.bpd", i + 1));
                fs::write(&path, render(d.grid())).map_err(io)?;
                writeln!(out, "{}", path.display()).map_err(io)?;
            }
        }
        None => {
            for (i, d) in all.iter().enumerate() {
                if i > 0 {
                    writeln!(out).map_err(io)?;
                }
                write!(out, "{}", render(d.grid())).map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn schubert(out: Out, perm: &[String], double: bool, method: Method) -> Result<i32, Fail> {
    let pi = parse_perm(perm)?;
    let dd = || schubert_dd(&pi, double).map_err(|e| Fail(EXIT_FAILURE, e.to_string()));
    match method {
        Method::Bpd => writeln!(out, "{}", schubert_bpd(&pi, double).to_canonical_string()).map_err(io)?,
        Method::Dd => writeln!(out, "{}", dd()?.to_canonical_string()).map_err(io)?,
        Method::Both => {
            let (a, b) = (schubert_bpd(&pi, double), dd()?);
            writeln!(out, "{}", a.to_canonical_string()).map_err(io)?;
            writeln!(out, "{}", b.to_canonical_string()).map_err(io)?;
            if a != b {
                return Err(Fail(EXIT_FAILURE, "methods disagree".into()));
            }
        }
    }
    Ok(EXIT_OK)
}

fn read_diagram(path: &Path) -> Result<Parsed, Fail> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_trace(out: Out, trace: &[TraceStep]) -> Result<(), Fail> {
    for t in trace {
        writeln!(out, "{}", t.step).map_err(io)?;
    }
    Ok(())
}

fn tag_line(tag: OutcomeTag, captured: Option<Label>) -> String {
    match (tag, captured) {
        (OutcomeTag::CoverUp(l), _) => format!("cover-up {l}"),
        (OutcomeTag::CoverDown(k), _) => format!("cover-down {k}"),
        (OutcomeTag::Shrunk, Some(v)) => format!("shrunk {v}"),
        (OutcomeTag::Shrunk, None) => "shrunk".to_string(),
    }
}

fn monk(out: Out, err: Out, action: MonkAction) -> Result<i32, Fail> {
    match action {
        MonkAction::Apply { pi, alpha, file, label, trace } => {
            let pi = parse_perm(&pi)?;
            match (read_diagram(&file)?, label) {
                (Parsed::Plain(d), None) => {
                    let d = d.into_bpd().map_err(usage)?;
                    let r: Resolved = phi_forward(&pi, alpha, &d).map_err(usage)?;
                    if trace {
                        write_trace(out, &r.trace)?;
                    }
                    write!(out, "{}", render(r.outcome.diagram.grid())).map_err(io)?;
                }
                (parsed, label) => {
                    let dec = decorated_input(parsed, label)?;
                    let r: DecResolved = phi_tilde_forward(&pi, alpha, &dec).map_err(usage)?;
                    if trace {
                        write_trace(out, &r.trace)?;
                    }
                    write!(out, "{}", render_decorated(&r.diagram)).map_err(io)?;
                }
            }
        }
        MonkAction::Invert { pi, alpha, file, trace } => {
            let pi = parse_perm(&pi)?;
            match read_diagram(&file)? {
                Parsed::Plain(d) => {
                    let d = d.into_bpd().map_err(usage)?;
                    let r = phi_backward(&pi, alpha, &d).map_err(usage)?;
                    if trace {
                        write_trace(out, &r.trace)?;
                    }
                    writeln!(out, "{}", tag_line(r.outcome.tag, None)).map_err(io)?;
                    write!(out, "{}", render(r.outcome.diagram.grid())).map_err(io)?;
                }
                Parsed::Decorated(d) => {
                    let r = phi_tilde_backward(&pi, alpha, &d).map_err(usage)?;
                    if trace {
                        write_trace(out, &r.trace)?;
                    }
                    writeln!(out, "{}", tag_line(r.tag, r.captured)).map_err(io)?;
                    write!(out, "{}", render_decorated(&r.diagram)).map_err(io)?;
                }
            }
        }
        MonkAction::Verify { n, double, jobs, sample, seed } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            if jobs == 0 {
                return Err(usage("--jobs must be at least 1"));
            }
            let report = verify(&VerifyOptions { n, double, jobs, sample, seed });
            writeln!(out, "{report}").map_err(io)?;
            let _ = writeln!(err, "wall time: {:.3}s", report.wall_time.as_secs_f64());
            return Ok(if report.ok() { EXIT_OK } else { EXIT_FAILURE });
        }
    }
    Ok(EXIT_OK)
}

/// A decorated forward input. With `--label` the file holds a BPD of π (a plain file
/// is accepted only if it has no blanks to label); without it, a decorated cover-down.
fn decorated_input(parsed: Parsed, label: Option<LabelArg>) -> Result<DecoratedInput, Fail> {
    let dec = match parsed {
        Parsed::Decorated(d) => d,
        Parsed::Plain(Diagram::Bpd(d)) if d.blanks().is_empty() => DecoratedBpd::uniform(d, Label::X),
        Parsed::Plain(Diagram::Bpd(_)) => {
            return Err(usage("--label needs a decorated diagram (x/y on every blank)"));
        }
        Parsed::Plain(Diagram::Almost(a)) => {
            return Err(usage(format!("expected a bumpless pipe dream, found a bump at {:?}", a.bump_pos())))
        }
    };
    Ok(match label {
        Some(l) => DecoratedInput::Labeled(l.into(), dec),
        None => DecoratedInput::Bare(dec),
    })
}
