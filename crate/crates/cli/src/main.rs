use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use num_bigint::BigInt;
use serde_json::{json, Value};

use divkummer_cli::{execute, merge, render, Flags, COMMANDS, EXIT_INPUT};

/// Division modules, J-hulls and Kummer bounds from JSON documents.
#[derive(Parser)]
#[command(name = "divkummer", version)]
struct Args {
    /// One of: snf, info, divide, torsion, jmap, essential, baer, pure, pushout,
    /// saturate, pullback, pushforward, maps, hull, maxext, normal, autseq,
    /// duality, h1, subring-index, div-index, kummer-bound, ses-check, verify.
    command: String,
    /// Ideal filter: 0, 1, p^inf, inf or (a,b,...). Overrides the document.
    #[arg(long)]
    filter: Option<String>,
    /// Truncation level.
    #[arg(long)]
    level: Option<BigInt>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Input documents, merged key by key.
    inputs: Vec<PathBuf>,
}

fn load(paths: &[PathBuf]) -> Result<Value, String> {
    let mut docs = Vec::new();
    for p in paths {
        let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", p.display()))?;
        docs.push((p.display().to_string(), v));
    }
    merge(&docs).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = std::env::var("DIVKUMMER_MAX_ENUM").ok().and_then(|v| v.parse().ok()) {
        divkummer::exactalg::set_enumeration_limit(n);
    }
    let flags = Flags { filter: args.filter.clone(), level: args.level.clone() };
    let (report, code) = if !COMMANDS.contains(&args.command.as_str()) {
        let r = json!({
            "command": args.command,
            "error": {"kind": "UnknownCommand", "message": format!("unknown command `{}`", args.command)},
            "exit_code": EXIT_INPUT,
        });
        (r, EXIT_INPUT)
    } else {
        match load(&args.inputs) {
            Ok(input) => execute(&args.command, &flags, &input),
            Err(msg) => {
                let r = json!({
                    "command": args.command,
                    "error": {"kind": "InputError", "message": msg},
                    "exit_code": EXIT_INPUT,
                });
                (r, EXIT_INPUT)
            }
        }
    };
    let text = render(&report);
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code as u8)
}
