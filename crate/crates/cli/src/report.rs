//! Reports: command echo, input digest, result or error, warnings.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::commands::{self, Flags};
use crate::doc::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Hex SHA-256 of the compact JSON of `{command, flags, input}`. Object keys
/// are sorted, so equal inputs give equal digests.
pub fn digest(command: &str, flags: &Flags, input: &Value) -> String {
    let canonical = json!({"command": command, "flags": flags.to_json(), "input": input});
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

pub fn error_kind(e: &CliError) -> String {
    match e {
        CliError::Schema { .. } => "SchemaError".into(),
        CliError::Math(m) => {
            let d = format!("{m:?}");
            d.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
        }
    }
}

pub fn exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Math(m) if m.is_refusal() => EXIT_REFUSAL,
        _ => EXIT_INPUT,
    }
}

/// Merges several input documents; a key present in two of them is an error.
pub fn merge(docs: &[(String, Value)]) -> Result<Value, CliError> {
    let mut out = Map::new();
    for (name, d) in docs {
        let Value::Object(m) = d else {
            return Err(CliError::Schema { path: "$".into(), message: format!("{name}: top level must be an object") });
        };
        for (k, v) in m {
            if out.insert(k.clone(), v.clone()).is_some() {
                return Err(CliError::Schema {
                    path: format!("$.{k}"),
                    message: format!("{name}: key already given by an earlier input"),
                });
            }
        }
    }
    Ok(Value::Object(out))
}

/// Runs one command and returns the report with its exit code.
pub fn execute(command: &str, flags: &Flags, input: &Value) -> (Value, i32) {
    let mut report = json!({
        "command": command,
        "flags": flags.to_json(),
        "digest": digest(command, flags, input),
    });
    let code = match commands::run(command, input, flags) {
        Ok(o) => {
            let failed = command == "verify" && o.result["failed"].as_u64().unwrap_or(0) > 0;
            report["result"] = o.result;
            report["warnings"] = json!(o.warnings);
            if failed {
                EXIT_REFUSAL
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            report["error"] = json!({"kind": error_kind(&e), "message": e.to_string()});
            report["warnings"] = json!([]);
            code
        }
    };
    report["exit_code"] = json!(code);
    (report, code)
}

pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("serializable");
    s.push('\n');
    s
}
