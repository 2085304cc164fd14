//! Browser bindings. Every entry point takes plain strings and returns a JSON
//! string, so the page never has to handle a thrown exception.

use num_bigint::BigInt;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use divkummer::exactalg::{snf, FgModule, IntMatrix};
use divkummer::hulls::jhull;
use divkummer::modfilter::IdealFilter;
use divkummer_cli::doc::{s_matrix, s_vec};
use divkummer_cli::Flags;

fn failure(message: impl ToString) -> String {
    json!({"error": message.to_string()}).to_string()
}

fn parse_ints(text: &str) -> Result<Vec<BigInt>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigInt>().map_err(|_| format!("not an integer: {t}")))
        .collect()
}

/// Rows separated by `;` or newlines, entries by spaces or commas.
fn parse_matrix(text: &str) -> Result<IntMatrix, String> {
    let rows: Vec<Vec<BigInt>> = text
        .split([';', '\n'])
        .filter(|r| !r.trim().is_empty())
        .map(parse_ints)
        .collect::<Result<_, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 {
        return Err("empty matrix".into());
    }
    IntMatrix::from_rows(cols, rows).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn smith_form(text: &str) -> String {
    match parse_matrix(text) {
        Ok(m) => {
            let s = snf(&m);
            json!({"diagonal": s_vec(&s.diagonal()), "u": s_matrix(&s.u), "v": s_matrix(&s.v)}).to_string()
        }
        Err(e) => failure(e),
    }
}

/// The J-hull of `Z^rank ⊕ Z/c_1 ⊕ ... ⊕ Z/c_k`.
#[wasm_bindgen]
pub fn divisible_hull(factors: &str, rank: u32, filter: &str) -> String {
    let run = || -> Result<Value, String> {
        let cs = parse_ints(factors)?;
        let j: IdealFilter = filter.parse().map_err(|e: divkummer::Error| e.to_string())?;
        let m = FgModule::abelian(&cs, rank as usize).map_err(|e| e.to_string())?;
        let h = jhull(&j, &m).map_err(|e| e.to_string())?;
        Ok(json!({
            "module": format!("{m:?}"),
            "hull": h.to_string(),
            "localized_rank": h.localized_rank(),
            "prufer_count": h.prufer_count(),
        }))
    };
    run().map_or_else(failure, |v| v.to_string())
}

/// Runs any command-line command on a JSON document and returns its report.
#[wasm_bindgen]
pub fn run_command(command: &str, document: &str, filter: &str, level: &str) -> String {
    let input: Value = match serde_json::from_str(document) {
        Ok(v) => v,
        Err(e) => return failure(format!("invalid JSON: {e}")),
    };
    let level = match level.trim() {
        "" => None,
        l => match l.parse() {
            Ok(l) => Some(l),
            Err(_) => return failure(format!("bad level {l}")),
        },
    };
    let filter = Some(filter.trim()).filter(|f| !f.is_empty()).map(String::from);
    let (report, _) = divkummer_cli::execute(command, &Flags { filter, level }, &input);
    report.to_string()
}
