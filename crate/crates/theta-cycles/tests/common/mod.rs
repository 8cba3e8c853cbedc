//! Shared oracles and binary-driving helpers for the integration suites.

#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use theta_cycles::parabolic::LevelPattern;
use theta_cycles::root_system::{noncompact_weights, pairing, Half, Signature};

/// Path of the compiled CLI binary.
pub fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_theta-cycles")
}

/// Run the CLI with the given arguments, capturing everything.
pub fn run_cli(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .env_remove("THETA_CYCLE_BUDGET")
        .output()
        .expect("binary runs")
}

pub fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

pub fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

pub fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

pub fn read_json(path: &Path) -> theta_cycles::cli::VerifyJson {
    let raw = std::fs::read_to_string(path).expect("json file exists");
    serde_json::from_str(&raw).expect("report parses")
}

/// Independent R+/R- oracle: count noncompact weights pairing strictly
/// positively against a representative of the pattern, straight from the
/// root data.
pub fn brute_force_r_from_roots(pattern: &LevelPattern) -> (u64, u64) {
    let lambda = pattern.representative();
    let sig = lambda.signature();
    let plus = noncompact_weights(sig, Half::Plus)
        .into_iter()
        .filter(|&alpha| pairing(lambda.coords(), alpha).unwrap() > 0)
        .count() as u64;
    let minus = noncompact_weights(sig, Half::Minus)
        .into_iter()
        .filter(|&alpha| pairing(lambda.coords(), alpha).unwrap() > 0)
        .count() as u64;
    (plus, minus)
}

/// Independent Gaussian-binomial oracle: sizes of partitions fitting in a
/// `rows x cols` box, counted by brute-force enumeration.
pub fn partitions_in_box(rows: u32, cols: u32) -> Vec<u64> {
    fn recurse(rows_left: u32, max_part: u32, cells: usize, counts: &mut [u64]) {
        counts[cells] += 1;
        if rows_left == 0 {
            return;
        }
        for part in 1..=max_part {
            recurse(rows_left - 1, part, cells + part as usize, counts);
        }
    }
    let mut counts = vec![0u64; (rows * cols) as usize + 1];
    recurse(rows, cols, 0, &mut counts);
    counts
}

/// Every signature with `p + q <= max_rank`.
pub fn signatures_up_to(max_rank: u32) -> Vec<Signature> {
    let mut out = Vec::new();
    for p in 1..max_rank {
        for q in 1..max_rank {
            if p + q <= max_rank {
                out.push(Signature::new(p, q).unwrap());
            }
        }
    }
    out
}
