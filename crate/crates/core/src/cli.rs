//! Command-line front end.
//!
//! Exit codes: 0 CONVEX, 1 NONCONVEX, 2 UNKNOWN, 3 no construction covers
//! the code, 4 a built or supplied realization failed verification, 5 bad
//! input (unparsable code, bad flags, unmet precondition).

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::atlas::{atlas, AtlasOptions};
use crate::code::{parse_code, NeuralCode};
use crate::decider::{decide_with, DecideOptions, Status};
use crate::error::Error;
use crate::realize::{build_realization, export, verify_realization};
use crate::report::analyze_with;
use crate::topology::{classify_small_complex, nerve};
use crate::wheels::DEFAULT_BUDGET;

pub const EXIT_NOT_COVERED: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_INPUT: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "convex-codes", version, about = "Convexity of combinatorial neural codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CodeArg {
    /// Code text such as "134,1357,13" or "{1,3,12},{2}"; "-" reads stdin.
    code: String,
    /// Sprocket search budget (condition evaluations).
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the verdict and its certificates.
    Decide {
        #[command(flatten)]
        input: CodeArg,
        /// Emit the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print everything computed about a code.
    Analyze {
        #[command(flatten)]
        input: CodeArg,
        #[arg(long)]
        json: bool,
    },
    /// Build and verify a convex realization.
    Realize {
        #[command(flatten)]
        input: CodeArg,
        #[arg(long, value_enum, default_value = "json")]
        out: Format,
        /// Also write an SVG drawing to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a realization document against a code.
    Verify {
        #[command(flatten)]
        input: CodeArg,
        /// Realization JSON file; "-" reads stdin.
        #[arg(long)]
        realization: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Nerve of the maximal codewords and its class.
    Nerve {
        #[command(flatten)]
        input: CodeArg,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate small facet systems and decide their codes.
    Atlas {
        #[arg(long)]
        neurons: u32,
        #[arg(long)]
        facets: usize,
        /// Only the minimal code of each facet system.
        #[arg(long)]
        minimal_only: bool,
        /// Lift the default size caps.
        #[arg(long = "unsafe")]
        allow_large: bool,
        #[arg(long, value_enum, default_value = "csv")]
        out: Format,
        /// Prepend a commented header naming the tool and arguments.
        #[arg(long)]
        meta: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

fn status_exit(s: Status) -> i32 {
    match s {
        Status::Convex => 0,
        Status::NonConvex => 1,
        Status::Unknown => 2,
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    stdin: &'a mut dyn Read,
}

/// Runs the CLI with explicit streams and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, stdin: &mut dyn Read) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let mut io = Io { out, err, stdin };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn read_code(io: &mut Io, text: &str) -> Result<NeuralCode, Error> {
    if text == "-" {
        let mut s = String::new();
        io.stdin.read_to_string(&mut s).map_err(|e| Error::Document(e.to_string()))?;
        parse_code(s.trim())
    } else {
        parse_code(text)
    }
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn dispatch(cmd: Command, io: &mut Io) -> Result<i32, Error> {
    let w = |e: std::io::Error| Error::Document(e.to_string());
    match cmd {
        Command::Decide { input, json } => {
            let code = read_code(io, &input.code)?;
            let opts = DecideOptions { budget: input.budget };
            if json {
                let r = analyze_with(&code, opts, true);
                io.out.write_all(json_line(&r.to_json()).as_bytes()).map_err(w)?;
                return Ok(status_exit(r.verdict));
            }
            let d = decide_with(&code, opts);
            writeln!(io.out, "{}", d.status).map_err(w)?;
            for c in &d.certificates {
                writeln!(io.out, "  {c}").map_err(w)?;
            }
            Ok(status_exit(d.status))
        }
        Command::Analyze { input, json } => {
            let code = read_code(io, &input.code)?;
            let r = analyze_with(&code, DecideOptions { budget: input.budget }, true);
            let text = if json { json_line(&r.to_json()) } else { r.to_text() };
            io.out.write_all(text.as_bytes()).map_err(w)?;
            Ok(status_exit(r.verdict))
        }
        Command::Realize { input, out, svg } => {
            let code = read_code(io, &input.code)?;
            if out == Format::Csv {
                return Err(Error::Precondition("realize writes json or svg".to_string()));
            }
            let built = match build_realization(&code) {
                Ok(b) => b,
                Err(Error::InvalidRealization(msg)) => {
                    writeln!(io.err, "internal error: {msg}").map_err(w)?;
                    return Ok(EXIT_VERIFICATION);
                }
                Err(e) => return Err(e),
            };
            let Some((r, tag)) = built else {
                let d = decide_with(&code, DecideOptions { budget: input.budget });
                writeln!(io.err, "{}: no construction covers this code", d.status).map_err(w)?;
                for c in &d.certificates {
                    writeln!(io.err, "  {c}").map_err(w)?;
                }
                return Ok(EXIT_NOT_COVERED);
            };
            // build_realization already verified; this is the check on what gets written
            let v = verify_realization(&r, &code);
            if !v.ok {
                writeln!(io.err, "internal error: realization failed verification: {v:?}").map_err(w)?;
                return Ok(EXIT_VERIFICATION);
            }
            if let Some(path) = svg {
                std::fs::write(&path, export::to_svg(&r)).map_err(w)?;
            }
            match out {
                Format::Svg => io.out.write_all(export::to_svg(&r).as_bytes()).map_err(w)?,
                _ => {
                    let mut doc = export::to_json(&r);
                    doc["construction"] = serde_json::Value::String(tag.to_string());
                    io.out.write_all(json_line(&doc).as_bytes()).map_err(w)?;
                }
            }
            Ok(0)
        }
        Command::Verify { input, realization, json } => {
            let code = read_code(io, &input.code)?;
            let text = if realization.as_os_str() == "-" {
                let mut s = String::new();
                io.stdin.read_to_string(&mut s).map_err(w)?;
                s
            } else {
                std::fs::read_to_string(&realization).map_err(w)?
            };
            let doc: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Error::Document(format!("realization: {e}")))?;
            let r = export::from_json(&doc)?;
            let v = verify_realization(&r, &code);
            if json {
                let doc = serde_json::to_value(&v).expect("verification serializes");
                io.out.write_all(json_line(&doc).as_bytes()).map_err(w)?;
            } else {
                writeln!(io.out, "{}", if v.ok { "VERIFIED" } else { "MISMATCH" }).map_err(w)?;
                let list = |ws: &[crate::Codeword]| ws.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
                if !v.missing.is_empty() {
                    writeln!(io.out, "  missing: {}", list(&v.missing)).map_err(w)?;
                }
                if !v.extra.is_empty() {
                    writeln!(io.out, "  extra: {}", list(&v.extra)).map_err(w)?;
                }
                if let Some(reason) = &v.reason {
                    writeln!(io.out, "  invalid: {reason}").map_err(w)?;
                }
            }
            Ok(if v.ok { 0 } else { EXIT_VERIFICATION })
        }
        Command::Nerve { input, json } => {
            let code = read_code(io, &input.code)?;
            let facets = code.facets();
            let n = nerve(&facets)?;
            let classified = if (1..=4).contains(&facets.len()) { classify_small_complex(&n).ok() } else { None };
            if json {
                let doc = serde_json::json!({
                    "facets": facets,
                    "nerve": n.facets(),
                    "class": classified.as_ref().map(|c| c.class),
                    "relabeling": classified.as_ref().map(|c| c.relabeling.clone()),
                    "contractible": classified.as_ref().map(|c| c.contractible),
                });
                io.out.write_all(json_line(&doc).as_bytes()).map_err(w)?;
            } else {
                for (i, f) in facets.iter().enumerate() {
                    writeln!(io.out, "F{} = {f}", i + 1).map_err(w)?;
                }
                writeln!(io.out, "nerve: {n}").map_err(w)?;
                if let Some(c) = classified {
                    let pairs: Vec<String> =
                        c.relabeling.iter().map(|(i, r)| format!("F{i}->{r}")).collect();
                    writeln!(io.out, "class: {} ({})", c.class, pairs.join(" ")).map_err(w)?;
                    writeln!(io.out, "contractible: {}", c.contractible).map_err(w)?;
                }
            }
            Ok(0)
        }
        Command::Atlas { neurons, facets, minimal_only, allow_large, out, meta, budget } => {
            let a = atlas(&AtlasOptions { neurons, facets, minimal_only, allow_large, budget })?;
            if meta {
                writeln!(
                    io.out,
                    "# convex-codes {} atlas --neurons {neurons} --facets {facets}{}",
                    env!("CARGO_PKG_VERSION"),
                    if minimal_only { " --minimal-only" } else { "" }
                )
                .map_err(w)?;
            }
            match out {
                Format::Csv => io.out.write_all(a.to_csv()?.as_bytes()).map_err(w)?,
                Format::Json => {
                    let doc = serde_json::to_value(&a.rows).expect("rows serialize");
                    io.out.write_all(json_line(&doc).as_bytes()).map_err(w)?;
                }
                Format::Svg => return Err(Error::Precondition("atlas writes csv or json".to_string())),
            }
            io.err.write_all(a.summary_text().as_bytes()).map_err(w)?;
            Ok(0)
        }
    }
}
