#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

pub fn kgprof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgprof"))
        .args(args)
        .current_dir(root())
        .env_remove("KGPROF_OUT")
        .output()
        .expect("spawn kgprof")
}

pub fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "kgprof failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

pub fn read_json(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))).unwrap()
}

const SCHEMA_BASE: &str = "https://kgprof.example/schemas/";

/// Compiles a schema from `schemas/`, with every sibling registered for `$ref`.
pub fn schema(name: &str) -> JSONSchema {
    let dir = root().join("schemas");
    let mut options = JSONSchema::options();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let file = path.file_name().unwrap().to_string_lossy().into_owned();
        options.with_document(format!("{SCHEMA_BASE}{file}"), read_json(&path));
    }
    let main = read_json(&dir.join(name));
    options.compile(&main).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn assert_valid(schema_name: &str, value: &Value) {
    let s = schema(schema_name);
    if let Err(errors) = s.validate(value) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{schema_name}: {}", msgs.join("; "));
    };
}

/// Every file below `dir` with its contents, keyed by relative path.
pub fn snapshot_dir(dir: &Path) -> Vec<(String, Vec<u8>)> {
    fn walk(base: &Path, dir: &Path, out: &mut Vec<(String, Vec<u8>)>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(base, &path, out);
            } else {
                let rel = path.strip_prefix(base).unwrap().to_string_lossy().into_owned();
                out.push((rel, std::fs::read(&path).unwrap()));
            }
        }
    }
    let mut out = Vec::new();
    walk(dir, dir, &mut out);
    out.sort();
    out
}
