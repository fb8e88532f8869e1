//! The `algconn` command-line front end.
//!
//! Every command prints one JSON document on stdout; diagnostics go to
//! stderr. Exit codes: 0 success, 1 fuzz disagreement, 2 usage or schema
//! error, 3 domain validation error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::decision::decide_connection;
use crate::fuzz::run_fuzz;
use crate::jets::{
    construct_connection, jet1_transition, jet_sequence_splits, jet_v_transition,
    obstruction_cocycle, ConcreteAnchor,
};
use crate::p1::{birkhoff_split, cohomology_dims, global_sections, P1Bundle};
use crate::schema::{parse_algebroid, parse_anchor, parse_formal_bundle, parse_p1_bundle, InputError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "algconn", version, about = "Lie algebroid connections on vector bundles over curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide existence from slope data for a formal algebroid and bundle.
    Decide {
        #[arg(long)]
        algebroid: PathBuf,
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Birkhoff–Grothendieck splitting of a bundle on the projective line.
    Split {
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Cohomology dimensions and a basis of global sections.
    Cohomology {
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Obstruction cocycle and, when it vanishes, a verified connection.
    Connect {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        anchor: PathBuf,
    },
    /// Splitting types of the first jet bundle and its anchored variant.
    Jets {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        anchor: Option<PathBuf>,
    },
    /// Cross-check the decision against the genus-0 engine on random cases.
    Fuzz {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

fn invalid(msg: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INVALID,
        msg: msg.to_string(),
    }
}

fn from_input(e: InputError) -> Failure {
    match e {
        InputError::Schema(msg) => usage(msg),
        InputError::Invalid(msg) => invalid(msg),
    }
}

fn read_text(path: &Path, what: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {what} file {}: {e}", path.display())))
}

fn load_bundle(path: &Path) -> Result<P1Bundle, Failure> {
    parse_p1_bundle(&read_text(path, "bundle")?).map_err(from_input)
}

fn load_anchor(path: &Path) -> Result<ConcreteAnchor, Failure> {
    parse_anchor(&read_text(path, "anchor")?).map_err(from_input)
}

fn cmd_decide(algebroid: &Path, bundle: &Path) -> Result<(Value, i32), Failure> {
    let desc = parse_algebroid(&read_text(algebroid, "algebroid")?).map_err(from_input)?;
    let e = parse_formal_bundle(&read_text(bundle, "bundle")?).map_err(from_input)?;
    let decision = decide_connection(&desc, &e).map_err(invalid)?;
    Ok((json!(decision), EXIT_OK))
}

fn cmd_split(bundle: &Path) -> Result<(Value, i32), Failure> {
    let e = load_bundle(bundle)?;
    let split = birkhoff_split(&e).map_err(invalid)?;
    if !split.verify(e.transition()) {
        return Err(Failure {
            code: EXIT_INVALID,
            msg: "internal error: splitting failed re-verification".into(),
        });
    }
    Ok((json!(split), EXIT_OK))
}

fn cmd_cohomology(bundle: &Path) -> Result<(Value, i32), Failure> {
    let e = load_bundle(bundle)?;
    let ty = birkhoff_split(&e).map_err(invalid)?.splitting_type;
    let dims = cohomology_dims(&e).map_err(invalid)?;
    let sections = global_sections(&e).map_err(invalid)?;
    Ok((
        json!({
            "rank": e.rank(),
            "degree": e.degree(),
            "type": ty,
            "h0": dims.h0,
            "h1": dims.h1,
            "sections": sections,
        }),
        EXIT_OK,
    ))
}

fn cmd_connect(bundle: &Path, anchor: &Path) -> Result<(Value, i32), Failure> {
    let e = load_bundle(bundle)?;
    let anchor = load_anchor(anchor)?;
    if e.rank() == 0 {
        return Err(usage("empty bundle"));
    }
    let cocycle = obstruction_cocycle(&e, &anchor);
    // construct_connection only returns certificates that passed verification
    let cert = construct_connection(&e, &anchor).map_err(invalid)?;
    let mut out = json!({
        "exists": cert.is_some(),
        "cocycle": cocycle.overlap_matrix,
    });
    if let Some(cert) = cert {
        out["cert"] = json!(cert);
    }
    Ok((out, EXIT_OK))
}

fn jet_summary(b: &P1Bundle) -> Result<Value, Failure> {
    let split = birkhoff_split(b).map_err(invalid)?;
    Ok(json!({
        "rank": b.rank(),
        "degree": b.degree(),
        "type": split.splitting_type,
        "transition": b.transition(),
    }))
}

fn cmd_jets(bundle: &Path, anchor: Option<&Path>) -> Result<(Value, i32), Failure> {
    let e = load_bundle(bundle)?;
    let mut out = json!({
        "bundle_type": birkhoff_split(&e).map_err(invalid)?.splitting_type,
        "jet1": jet_summary(&jet1_transition(&e))?,
    });
    if let Some(path) = anchor {
        let anchor = load_anchor(path)?;
        let mut jv = jet_summary(&jet_v_transition(&e, &anchor))?;
        jv["splits"] = json!(jet_sequence_splits(&e, &anchor).map_err(invalid)?);
        out["jet_v"] = jv;
    }
    Ok((out, EXIT_OK))
}

fn cmd_fuzz(count: u64, seed: u64, err: &mut dyn Write) -> Result<(Value, i32), Failure> {
    let report = run_fuzz(count, seed);
    let code = if report.mismatches == 0 {
        EXIT_OK
    } else {
        let _ = writeln!(err, "fuzz: {} of {} cases disagree", report.mismatches, report.cases);
        EXIT_MISMATCH
    };
    Ok((json!(report), code))
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Decide { algebroid, bundle } => cmd_decide(algebroid, bundle),
        Command::Split { bundle } => cmd_split(bundle),
        Command::Cohomology { bundle } => cmd_cohomology(bundle),
        Command::Connect { bundle, anchor } => cmd_connect(bundle, anchor),
        Command::Jets { bundle, anchor } => cmd_jets(bundle, anchor.as_deref()),
        Command::Fuzz { count, seed } => cmd_fuzz(*count, *seed, err),
    };
    match result {
        Ok((doc, code)) => {
            let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
            let _ = writeln!(out, "{text}");
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}
