#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Runs the `nodal` binary with the golden directory as working directory.
pub fn nodal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nodal")).args(args).current_dir(golden_dir()).output().expect("spawn nodal")
}

pub struct GoldenCase {
    pub args: &'static [&'static str],
    pub golden: &'static str,
    pub code: i32,
}

/// Documented invocations whose stdout is frozen byte for byte.
pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase { args: &["spectrum", "p3.txt"], golden: "spectrum_p3.csv", code: 0 },
    GoldenCase { args: &["--solver", "householder-ql", "spectrum", "p4.txt"], golden: "spectrum_p4_ql.csv", code: 0 },
    GoldenCase { args: &["analyze", "p4.txt", "--k", "2", "--mode", "exact"], golden: "analyze_p4_k2.json", code: 0 },
    GoldenCase { args: &["analyze", "p4.txt", "--k", "3", "--mode", "heuristic", "--corollary"], golden: "analyze_p4_k3_heuristic.json", code: 0 },
    GoldenCase { args: &["expander-check", "p4.txt", "--eigvec", "2", "--c", "0.5"], golden: "expander_check_p4_eigvec.json", code: 0 },
    GoldenCase { args: &["expander-check", "p4.txt", "--weights", "p4_uniform.txt", "--c", "0.6"], golden: "expander_check_p4_weights.json", code: 0 },
    GoldenCase { args: &["partition", "p4.txt", "--k", "2", "--c", "0.9", "--weights", "p4_uniform.txt"], golden: "partition_p4_weights.json", code: 0 },
    GoldenCase { args: &["partition", "p4.txt", "--k", "2", "--c", "3", "--eigvec", "2"], golden: "partition_p4_eigvec.json", code: 0 },
    GoldenCase { args: &["verify-proof", "p4.txt", "--k", "2", "--pos", "p4_pos.txt", "--neg", "p4_neg.txt"], golden: "verify_proof_p4.json", code: 0 },
    GoldenCase { args: &["gen", "path", "2"], golden: "gen_path_2.txt", code: 0 },
    GoldenCase { args: &["gen", "random_regular", "10", "3", "--seed", "1"], golden: "gen_random_regular_10_3_seed1.txt", code: 0 },
    GoldenCase { args: &["demo-counterexample", "--n-block", "10", "--d", "3", "--seed", "7"], golden: "demo_counterexample_seed7.json", code: 0 },
    GoldenCase { args: &["batch-verify", "--max-n", "5", "--seed", "3"], golden: "batch_verify_5.txt", code: 0 },
];

/// Runs one golden case. With `UPDATE_GOLDEN` set the golden file is rewritten.
pub fn check_golden(case: &GoldenCase) -> Result<(), String> {
    let out = nodal(case.args);
    let path = golden_dir().join(case.golden);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &out.stdout).map_err(|e| e.to_string())?;
    }
    let code = out.status.code().unwrap_or(-1);
    if code != case.code {
        return Err(format!("{:?}: exit {code}, expected {}; stderr: {}", case.args, case.code, String::from_utf8_lossy(&out.stderr)));
    }
    let expected = fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if out.stdout != expected {
        return Err(format!("{:?}: output differs from {}", case.args, case.golden));
    }
    Ok(())
}
