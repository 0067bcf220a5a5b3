//! Helpers for driving the compiled binary from integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

use serde::{Deserialize, Serialize};

pub const BIN: &str = env!("CARGO_BIN_EXE_graphgen");

/// Test-side mirror of the emitted JSON schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub edges: Vec<(usize, usize)>,
    pub legs: BTreeMap<usize, Vec<String>>,
    pub coefficient: String,
    pub symmetry_factor: u64,
    pub canonical_key: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub classes: Vec<ClassEntry>,
}

/// Runs the binary in `dir` with a scrubbed cache environment, so tests
/// never bleed into each other or into the developer's working tree.
pub fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("GRAPHGEN_CACHE_DIR")
        .output()
        .expect("binary spawns")
}

pub fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

pub fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal exits")
}
