//! The `suspsplit` command-line front end.
//!
//! Five subcommands over the library pipeline:
//!
//! * `decompose` reads a JSON input document and prints the suspension's
//!   wedge decomposition, one candidate per line (or as JSON with `--json`).
//! * `normalize` reads an attaching-mode document and prints the vector,
//!   the moves taken, the normal form, and its cofiber.
//! * `tables` looks up a stored homotopy group `pi_m(X)`.
//! * `verify` runs the consistency sweeps and prints one line per check.
//! * `enumerate` streams enumerated input documents as JSON, one per line.
//!
//! Exit codes: 0 success; 1 a verification sweep reported failing cases;
//! 2 malformed input (unreadable file, invalid JSON, unknown keys, wrong
//! schema version, unusable flag syntax; `clap` uses the same code for bad
//! argv) or an output stream that failed mid-write; 3 domain error
//! (well-formed input outside the classified range, or inconsistent with
//! itself).
//!
//! Output is deterministic: wedges print sorted, sweeps enumerate in a
//! fixed order, and no timestamps or randomness enter the text.

use std::fmt;
use std::io::{Read as _, Write as _};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::catalog::{parse_space_term, SpaceTerm};
use crate::decomposer::{attach_vector, decompose, Decomposition, InputDocument};
use crate::normalizer::{AttachingVector, Move, RuleId};
use crate::oracle::{enumeration_cap, for_each_input, verify_all, EnumerationBounds, VerifyOptions};
use crate::pi_tables::pi;
use crate::Error;

/// The schema version this binary reads and writes.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "suspsplit",
    version,
    about = "Exact wedge decompositions of suspended Poincare duality complexes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose the suspension described by a JSON input document.
    Decompose {
        /// Input document path, or "-" for stdin.
        #[arg(short, long, default_value = "-")]
        file: String,
        /// Cross-check: fail unless the document's n equals this value.
        #[arg(long)]
        n: Option<u32>,
        /// Emit the result as structured JSON instead of wedge text.
        #[arg(long)]
        json: bool,
        /// Localize the result away from 2 (always on for n >= 3).
        #[arg(long)]
        localize: bool,
    },
    /// Normalize an attaching-mode document and print the moves taken.
    Normalize {
        /// Input document path, or "-" for stdin.
        #[arg(short, long, default_value = "-")]
        file: String,
    },
    /// Look up a stored homotopy group pi_m(X).
    Tables {
        /// The degree m of the homotopy group.
        #[arg(long)]
        pi: u32,
        /// The space X, e.g. "S^3", "P^4(Z/2)", "C^5_eta", "C^5_2".
        #[arg(long)]
        space: String,
    },
    /// Run the consistency sweeps and report one line per check.
    Verify {
        /// Enumeration bounds "l,d,t2,r" (default: the full acceptance
        /// bounds 3,3,2,3).
        #[arg(long)]
        bounds: Option<String>,
        /// Orbit-search depth for the rewrite-rule audits.
        #[arg(long, default_value_t = 1)]
        depth: u32,
    },
    /// Stream enumerated input documents as JSON, one per line.
    Enumerate {
        /// Enumeration bounds "l,d,t2,r".
        #[arg(long, default_value = "1,1,1,2")]
        bounds: String,
        /// Restrict to a single n (default: all of 2..=5).
        #[arg(long)]
        n: Option<u32>,
    },
}

/// What went wrong, bucketed by exit code.
#[derive(Debug)]
enum Failure {
    /// The input never became a valid document (I/O trouble, invalid
    /// JSON, unknown keys, wrong schema version, unusable flag syntax),
    /// or the output stream failed mid-write.
    Schema(String),
    /// The document parsed, but the library rejected its content.
    Domain(Error),
    /// Checks ran to completion and some reported failing cases.
    Verification { failed: usize },
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification { .. } => 1,
            Failure::Schema(_) => 2,
            Failure::Domain(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Schema(msg) => write!(f, "{msg}"),
            Failure::Domain(e) => write!(f, "{e}"),
            Failure::Verification { failed } => {
                write!(f, "{failed} verification check(s) failed")
            }
        }
    }
}

/// Parse argv, dispatch, and turn failures into exit codes.
#[must_use]
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Decompose {
            file,
            n,
            json,
            localize,
        } => cmd_decompose(file, *n, *json, *localize),
        Cmd::Normalize { file } => cmd_normalize(file),
        Cmd::Tables { pi, space } => cmd_tables(*pi, space),
        Cmd::Verify { bounds, depth } => cmd_verify(bounds.as_deref(), *depth),
        Cmd::Enumerate { bounds, n } => cmd_enumerate(bounds, *n),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

/// Write one line to stdout without panicking when the stream fails:
/// a reader such as `head` may close the pipe at any point, and that
/// must surface as an exit code, not a backtrace.
fn out_line(out: &mut impl std::io::Write, text: impl fmt::Display) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::Schema(format!("writing output: {e}")))
}

fn read_document(path: &str) -> Result<InputDocument, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Schema(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Schema(format!("reading {path}: {e}")))?
    };
    let doc: InputDocument = serde_json::from_str(&text)
        .map_err(|e| Failure::Schema(format!("parsing input document: {e}")))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(Failure::Schema(format!(
            "unsupported schema version {}, expected {SCHEMA_VERSION}",
            doc.schema
        )));
    }
    Ok(doc)
}

/// JSON shape of `decompose --json` output.
#[derive(Serialize)]
struct DecompositionOut<'a> {
    schema: u32,
    localized: bool,
    c1: usize,
    c2: usize,
    chosen: &'a [usize],
    candidates: Vec<CandidateOut<'a>>,
}

#[derive(Serialize)]
struct CandidateOut<'a> {
    text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
    wedge: &'a [SpaceTerm],
}

fn decomposition_lines(dec: &Decomposition) -> Vec<String> {
    let rel = if dec.localized { "~(1/2)" } else { "~" };
    dec.candidates
        .iter()
        .map(|c| match &c.note {
            Some(note) => format!("SigmaM {rel} {} [{note}]", c.wedge),
            None => format!("SigmaM {rel} {}", c.wedge),
        })
        .collect()
}

fn cmd_decompose(file: &str, n: Option<u32>, json: bool, localize: bool) -> Result<(), Failure> {
    let mut doc = read_document(file)?;
    if let Some(k) = n {
        if k != doc.n {
            return Err(Failure::Domain(Error::ShapeMismatch {
                what: format!("--n {k} does not match n = {} in the document", doc.n),
            }));
        }
    }
    doc.localize = doc.localize || localize;
    let dec = decompose(&doc).map_err(Failure::Domain)?;
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    if json {
        let out = DecompositionOut {
            schema: SCHEMA_VERSION,
            localized: dec.localized,
            c1: dec.c1,
            c2: dec.c2,
            chosen: &dec.chosen,
            candidates: dec
                .candidates
                .iter()
                .zip(decomposition_lines(&dec))
                .map(|(c, text)| CandidateOut {
                    text,
                    note: c.note.as_deref(),
                    wedge: c.wedge.terms(),
                })
                .collect(),
        };
        let text = serde_json::to_string_pretty(&out).expect("decomposition serializes");
        out_line(&mut w, text)?;
    } else {
        for line in decomposition_lines(&dec) {
            out_line(&mut w, line)?;
        }
    }
    Ok(())
}

/// A move as a human-readable line, e.g.
/// `TetaAbsorbsTeta: teta_1@0 kills teta_2@1`.  The slot layout is fixed
/// under moves, so generator names can be read off the starting vector.
fn render_move(v: &AttachingVector, mv: &Move) -> String {
    let gen_at = |(si, ci): (usize, usize)| format!("{}@{si}", v.slots()[si].coeffs[ci].gen);
    if mv.rule == RuleId::UnitNormalize {
        format!("{}: {} set to a unit", mv.rule, gen_at(mv.victim))
    } else {
        format!(
            "{}: {} kills {}",
            mv.rule,
            gen_at(mv.pivot),
            gen_at(mv.victim)
        )
    }
}

fn cmd_normalize(file: &str) -> Result<(), Failure> {
    let doc = read_document(file)?;
    let (vector, _bystanders) = attach_vector(&doc).map_err(Failure::Domain)?;
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    out_line(&mut w, format_args!("vector: {vector}"))?;
    let (nf, trace) = vector.normalize().map_err(Failure::Domain)?;
    for mv in &trace {
        out_line(&mut w, format_args!("move: {}", render_move(&vector, mv)))?;
    }
    out_line(&mut w, format_args!("normal form: {nf}"))?;
    let cofiber = nf.cofiber().map_err(Failure::Domain)?;
    out_line(&mut w, format_args!("cofiber: {cofiber}"))
}

fn cmd_tables(m: u32, space: &str) -> Result<(), Failure> {
    let term = parse_space_term(space).map_err(Failure::Domain)?;
    let group = pi(m, &term).map_err(Failure::Domain)?;
    out_line(&mut std::io::stdout().lock(), group)
}

fn parse_bounds(spec: &str) -> Result<(u32, u32, u32, u32), Failure> {
    let bad = || {
        Failure::Schema(format!(
            "--bounds takes four comma-separated integers \"l,d,t2,r\", got {spec:?}"
        ))
    };
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 4 {
        return Err(bad());
    }
    let mut vals = [0u32; 4];
    for (v, p) in vals.iter_mut().zip(&parts) {
        *v = p.trim().parse().map_err(|_| bad())?;
    }
    Ok((vals[0], vals[1], vals[2], vals[3]))
}

fn cmd_verify(bounds: Option<&str>, depth: u32) -> Result<(), Failure> {
    let mut opts = VerifyOptions::default();
    if let Some(spec) = bounds {
        let (l, d, t2, r) = parse_bounds(spec)?;
        opts.bounds = EnumerationBounds::new(l, d, t2, r, 2, 5);
    }
    opts.depth = depth;
    let reports = verify_all(&opts).map_err(Failure::Domain)?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    for report in &reports {
        out_line(&mut w, report)?;
    }
    if failed > 0 {
        return Err(Failure::Verification { failed });
    }
    Ok(())
}

fn cmd_enumerate(bounds: &str, n: Option<u32>) -> Result<(), Failure> {
    let (l, d, t2, r) = parse_bounds(bounds)?;
    let (n_min, n_max) = match n {
        Some(k) => (k, k),
        None => (2, 5),
    };
    let b = EnumerationBounds::new(l, d, t2, r, n_min, n_max);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut io_err: Option<std::io::Error> = None;
    let res = for_each_input(&b, enumeration_cap(), |doc| {
        let line = serde_json::to_string(&doc).expect("enumerated documents serialize");
        if let Err(e) = writeln!(out, "{line}") {
            io_err = Some(e);
            // Any error stops the walk; the payload is discarded below.
            return Err(Error::ShapeMismatch {
                what: "output stream closed".into(),
            });
        }
        Ok(())
    });
    if let Some(e) = io_err {
        return Err(Failure::Schema(format!("writing output: {e}")));
    }
    res.map_err(Failure::Domain)
}
