#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// Runs the binary from the data directory with no config file in reach.
pub fn groupeq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupeq"))
        .args(args)
        .current_dir(data_dir())
        .env_remove("GROUPEQ_CONFIG")
        .output()
        .expect("spawn groupeq")
}

pub struct Scenario {
    pub args: &'static [&'static str],
    pub exit: i32,
}

const fn sc(args: &'static [&'static str], exit: i32) -> Scenario {
    Scenario { args, exit }
}

/// Commands with their expected exit status, run from the data directory.
pub const SCENARIOS: &[Scenario] = &[
    sc(&["analyze-system", "systems/example0.sys"], 0),
    sc(&["analyze-system", "systems/square_c5.sys", "--prime", "5"], 0),
    sc(&["--format", "structured", "analyze-system", "systems/example0.sys"], 0),
    sc(&["analyze-system", "systems/wreath_c2c2.sys"], 0),
    sc(&["group", "groups/s3.grp"], 0),
    sc(&["group", "groups/affine7.grp"], 0),
    sc(&["--format", "structured", "group", "groups/q8.grp"], 0),
    sc(&["classify", "groups/s3.grp"], 0),
    sc(&["classify", "groups/a4.grp"], 0),
    sc(&["classify", "groups/s4.grp"], 0),
    sc(&["classify", "groups/affine7.grp"], 0),
    sc(&["classify", "catalog/g021_01.grp"], 0),
    sc(
        &["audit-catalog", "catalog", "--orders", "12,18,20,24,28,30,36,40,42"],
        0,
    ),
    sc(
        &[
            "--seed",
            "7",
            "audit-catalog",
            "catalog",
            "--orders",
            "8,9,16",
            "--pk-trials",
            "10",
        ],
        0,
    ),
    sc(
        &[
            "wreath-transform",
            "systems/wreath_c2c2.sys",
            "--base",
            "groups/c2.grp",
            "--top",
            "groups/c2.grp",
            "--prime",
            "2",
        ],
        0,
    ),
    sc(&["certify-rows", "algebra/rows_c4.alg"], 0),
    sc(&["certify-rows", "algebra/dependent_c2.alg"], 0),
    sc(&["certify-rows", "algebra/laurent.alg"], 0),
    sc(&["certify-rows", "algebra/integral.alg"], 0),
    sc(&["counterexample", "--p", "2", "--q", "3"], 0),
    sc(&["counterexample", "--p", "3", "--q", "2", "--brute-force"], 0),
    sc(&["counterexample", "--p", "2", "--q", "5", "--symbolic"], 0),
    sc(
        &[
            "--format",
            "structured",
            "counterexample",
            "--p",
            "3",
            "--q",
            "5",
            "--symbolic",
        ],
        0,
    ),
    sc(&["counterexample", "--p", "2", "--q", "3", "--force-zero-s"], 1),
    sc(&["counterexample", "--p", "2", "--q", "5"], 2),
    sc(&["counterexample", "--p", "2", "--q", "2"], 2),
    sc(&["solve", "systems/example0.sys"], 0),
    sc(&["solve", "systems/square_c5.sys", "--reverse-check"], 0),
    sc(&["solve", "systems/example0.sys", "--group", "groups/s4.grp"], 0),
    sc(&["solve", "missing.sys", "--group", "groups/s3.grp"], 2),
    sc(&["solve", "systems/example0.sys", "--group", "missing.grp"], 2),
    sc(&["enumerate", "8"], 0),
    sc(&["enumerate", "12"], 0),
    sc(&["enumerate", "13"], 2),
    sc(&["frobnicate"], 2),
    sc(&["--jobs", "0", "group", "groups/s3.grp"], 2),
    sc(&["--brute-cap", "10", "solve", "systems/example0.sys"], 2),
    sc(&["--help"], 0),
];
