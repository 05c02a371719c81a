#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).display().to_string()
}

/// Runs the binary from the crate root, returning stdout, stderr and the
/// exit code.
pub fn run(args: &[&str]) -> (Vec<u8>, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_clonealg"))
        .current_dir(root())
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, String::from_utf8_lossy(&out.stderr).into_owned(), out.status.code().unwrap_or(-1))
}

/// A worked example with its golden output file and expected exit code.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

impl Case {
    pub fn golden(&self) -> PathBuf {
        root().join("tests/golden").join(format!("{}.out", self.name))
    }
}

pub const CASES: &[Case] = &[
    Case { name: "clone_meet_1", args: &["clone", "fixtures/meet.alg", "--arity", "1"], code: 0 },
    Case { name: "clone_meet_2", args: &["clone", "fixtures/meet.alg", "--arity", "2"], code: 0 },
    Case { name: "clone_meet_3", args: &["clone", "fixtures/meet.alg", "--arity", "3"], code: 0 },
    Case { name: "clone_z2plus_1", args: &["clone", "fixtures/z2plus.alg", "--arity", "1"], code: 0 },
    Case { name: "clone_meet_3_json", args: &["clone", "fixtures/meet.alg", "--arity", "3", "--json"], code: 0 },
    Case { name: "hsp_z4_z2", args: &["hsp", "--from", "fixtures/z4.alg", "--to", "fixtures/z2.alg"], code: 0 },
    Case { name: "hsp_z4_z2_json", args: &["hsp", "--from", "fixtures/z4.alg", "--to", "fixtures/z2.alg", "--json"], code: 0 },
    Case { name: "hsp_z2_z4", args: &["hsp", "--from", "fixtures/z2.alg", "--to", "fixtures/z4.alg"], code: 1 },
    Case { name: "hsp_z2_z4_json", args: &["hsp", "--from", "fixtures/z2.alg", "--to", "fixtures/z4.alg", "--json"], code: 1 },
    Case {
        name: "hspfin_z2_klein",
        args: &["hsp-fin", "--from", "fixtures/z2.alg", "--to", "fixtures/klein.alg", "--gens", "1,2", "--n-bound", "3"],
        code: 0,
    },
    Case {
        name: "hspfin_z2_klein_json",
        args: &["hsp-fin", "--from", "fixtures/z2.alg", "--to", "fixtures/klein.alg", "--gens", "1,2", "--n-bound", "3", "--json"],
        code: 0,
    },
];
