//! The example corpus: manifest entries, expectation checks and print/parse
//! round trips.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde_json::Value;

use crate::commands::Flags;
use crate::doc::*;
use crate::report::{execute, render};

pub struct Entry {
    pub file: String,
    pub command: String,
    pub flags: Flags,
    pub expect_exit: i32,
    /// JSON pointer into the report, and the value expected there.
    pub expect: Vec<(String, Value)>,
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(corpus_dir().join(name)).expect("corpus file");
    serde_json::from_str(&text).expect("corpus JSON")
}

pub fn manifest() -> Vec<Entry> {
    let v = load("manifest.json");
    v.as_array()
        .expect("manifest is a list")
        .iter()
        .map(|e| {
            let flags = Flags {
                filter: e["flags"]["filter"].as_str().map(String::from),
                level: e["flags"]["level"].as_str().map(|l| l.parse::<BigInt>().expect("level")),
            };
            let expect = e["expect"]
                .as_object()
                .map(|o| o.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
                .unwrap_or_default();
            Entry {
                file: e["file"].as_str().expect("file").to_string(),
                command: e["command"].as_str().expect("command").to_string(),
                flags,
                expect_exit: e["expect_exit"].as_i64().expect("exit") as i32,
                expect,
            }
        })
        .collect()
}

/// Runs one entry twice; returns the mismatches (empty when it behaves).
pub fn check(entry: &Entry) -> Vec<String> {
    let input = load(&entry.file);
    let (report, code) = execute(&entry.command, &entry.flags, &input);
    let mut problems = Vec::new();
    if code != entry.expect_exit {
        problems.push(format!("exit {code}, expected {}", entry.expect_exit));
    }
    for (ptr, want) in &entry.expect {
        match report.pointer(ptr) {
            Some(got) if got == want => {}
            got => problems.push(format!("{ptr} = {got:?}, expected {want}")),
        }
    }
    let (again, _) = execute(&entry.command, &entry.flags, &input);
    if render(&report) != render(&again) {
        problems.push("report differs between runs".into());
    }
    problems
}

/// Parses every object the document describes, prints it, parses the print
/// and compares. Returns how many objects were checked.
pub fn round_trip(doc: &Value) -> CliResult<usize> {
    let mismatch = |what: &str| schema("$", format!("{what} does not survive print/parse"));
    let mut n = 0;
    if let Some(m) = opt_field(doc, "matrix") {
        let a = matrix(m, "$.matrix", None)?;
        if matrix(&s_matrix(&a), "$", Some(a.cols()))? != a {
            return Err(mismatch("matrix"));
        }
        n += 1;
    }
    let r = ring(doc)?;
    if print_ring(&r) != print_ring(&ring(&serde_json::json!({"ring": print_ring(&r)}))?) {
        return Err(mismatch("ring"));
    }
    if let Some(m) = opt_field(doc, "module") {
        let p = module(m, "$.module", &r)?;
        if module(&print_module(&p.module), "$", &r)?.module != p.module {
            return Err(mismatch("module"));
        }
        n += 1;
    }
    let Some(tv) = opt_field(doc, "target") else { return Ok(n) };
    let t = target(tv, "$.target", &r)?;
    if target(&print_target(&t), "$", &r)? != t {
        return Err(mismatch("target"));
    }
    n += 1;
    let j = filter(doc, None)?;
    if opt_field(doc, "module").is_some() {
        let p = top_pointed(doc, &r, &j, &t)?;
        if pointed(&print_pointed(&p.pointed), "$", &r, &j, &t)?.pointed != p.pointed {
            return Err(mismatch("pointed module"));
        }
        n += 1;
    }
    for key in ["extension", "other"] {
        if let Some(e) = opt_field(doc, key) {
            let x = extension(e, key, &r, &j, &t)?;
            let y = extension(&print_extension(&x.ext), "$", &r, &j, &t)?;
            let same = x.ext.base() == y.ext.base()
                && x.ext.total() == y.ext.total()
                && x.ext.inc().matrix() == y.ext.inc().matrix();
            if !same {
                return Err(mismatch("extension"));
            }
            n += 1;
        }
    }
    Ok(n)
}
