//! End-to-end behavior of the `so3split` binary: exit-code contract,
//! deterministic emissions, document round-trips, invariant-violation
//! reporting, and schema stability of the CSV headers.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn so3split(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_so3split"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> Vec<u8> {
    let out = so3split(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal termination")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap_or_else(|err| panic!("cannot read {}: {err}", path.display()))
}

#[test]
fn success_paths_exit_zero() {
    for args in [
        &["generators", "--l", "2"][..],
        &["generators", "--two-l", "3", "--format", "csv"],
        &["character", "--l", "2", "--theta", "0.5", "--format", "json"],
        &["symmetry", "--l", "1", "--field-gauss", "5000", "--format", "json"],
        &["evolve", "--rate", "1", "--t-end", "0.1", "--dt", "0.05", "--theta0", "1"],
        &["zeeman", "--n-max", "2", "--field-gauss", "100", "--format", "csv"],
    ] {
        let out = so3split(args);
        assert_eq!(exit_code(&out), 0, "args {args:?}, stderr: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(exit_code(&so3split(&["--help"])), 0);
    assert_eq!(exit_code(&so3split(&["--version"])), 0);
}

#[test]
fn usage_errors_exit_two_with_one_line_diagnostics() {
    for args in [
        &["generators", "--bogus-flag"][..],
        &["frobnicate"],
        &["character", "--l", "1"], // --theta missing
        &["zeeman", "--n", "2", "--n-max", "3", "--field-gauss", "1"],
        &["symmetry", "--hamiltonian", "x.json"], // --rep missing
        &["generators"],                          // no spin label at all
        &["evolve", "--rate", "1", "--t-end", "1", "--dt", "0.1"], // no --theta0
        &["evolve", "--picture", "heisenberg", "--rate", "1", "--t-end", "1", "--dt", "0.1", "--theta0", "1"],
    ] {
        let out = so3split(args);
        assert_eq!(exit_code(&out), 2, "args {args:?}");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert_eq!(stderr.trim_end().lines().count(), 1, "diagnostic not one line: {stderr:?}");
        assert!(out.stdout.is_empty(), "usage errors must not emit data");
    }
}

#[test]
fn domain_errors_exit_one_with_the_module_message() {
    // invalid numeric flag value
    let out = so3split(&["generators", "--l", "abc"]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("rejected input"));

    // spin label not on the half-integer lattice
    let out = so3split(&["generators", "--l", "0.3"]);
    assert_eq!(exit_code(&out), 1);

    // Cartesian carrier only exists at l = 1
    let out = so3split(&["generators", "--l", "2", "--basis", "cartesian"]);
    assert_eq!(exit_code(&out), 1);

    // orbital Zeeman coupling rejects half-integer l
    let out = so3split(&["symmetry", "--l", "0.5", "--field-gauss", "100"]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("integer l"));

    // step-control violation reported with the product
    let out = so3split(&["evolve", "--rate", "100", "--t-end", "1", "--dt", "0.1", "--theta0", "1"]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("step-control violation"));

    // missing input file
    let out = so3split(&["decompose", "--input", "/nonexistent/f.json"]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
}

#[test]
fn emissions_are_deterministic_across_runs() {
    let golden = golden_dir();
    let tensor = golden.join("tensor_1x1.json");
    let tensor = tensor.to_str().unwrap();
    for args in [
        &["generators", "--l", "1", "--basis", "cartesian", "--format", "json"][..],
        &["generators", "--l", "3", "--format", "csv"],
        &["decompose", "--input", tensor, "--method", "both", "--format", "json"],
        &["zeeman", "--n", "2", "--field-gauss", "10000", "--format", "csv"],
        &["evolve", "--rate", "0.2", "--t-end", "1", "--dt", "0.25", "--theta0", "0.9", "--format", "csv"],
        &["symmetry", "--l", "2", "--field-gauss", "300", "--format", "json"],
    ] {
        let first = stdout_of(args);
        let second = stdout_of(args);
        assert_eq!(first, second, "non-deterministic emission for {args:?}");
    }
}

#[test]
fn recorded_invocations_match_their_golden_files() {
    let golden = golden_dir();
    let tensor_path = golden.join("tensor_1x1.json");
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (
            vec!["generators", "--l", "1", "--basis", "cartesian", "--format", "json"],
            "generators_l1_cartesian.json",
        ),
        (
            vec!["generators", "--l", "1", "--tensor", "1", "--format", "json"],
            "tensor_1x1.json",
        ),
        (
            vec![
                "decompose",
                "--input",
                tensor_path.to_str().unwrap(),
                "--method",
                "both",
                "--format",
                "json",
            ],
            "decompose_tensor_1x1.json",
        ),
        (
            vec!["zeeman", "--n", "2", "--field-gauss", "10000", "--format", "csv"],
            "zeeman_n2_b1e4.csv",
        ),
    ];
    for (args, golden_name) in cases {
        let expected = read(&golden.join(golden_name));
        let got = stdout_of(&args);
        assert_eq!(
            got,
            expected,
            "golden mismatch for {golden_name}; regenerate only if the contract changed"
        );
    }
}

#[test]
fn representation_documents_round_trip_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("rep.json");
    let second = dir.path().join("rep_reloaded.json");
    let out = so3split(&[
        "generators", "--l", "3", "--format", "json", "--output", first.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let out = so3split(&[
        "generators", "--input", first.to_str().unwrap(), "--format", "json", "--output",
        second.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(read(&first), read(&second));
}

#[test]
fn tampered_hermiticity_is_rejected_with_the_residual() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tampered.json");
    let text = String::from_utf8(read(&golden_dir().join("tensor_1x1.json"))).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entry = &mut doc["lx"]["entries"][1][0];
    *entry = serde_json::json!(entry.as_f64().unwrap() + 1e-3);
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();

    let out = so3split(&["decompose", "--input", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("not Hermitian"), "got: {stderr}");
    assert!(stderr.contains("1.000e-3"), "residual missing from: {stderr}");
}

#[test]
fn tensor_helper_pipeline_decomposes_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tensor.json");
    let out = so3split(&[
        "generators", "--l", "1.5", "--tensor", "0.5", "--format", "json", "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    // 3/2 ⊗ 1/2 = 2 ⊕ 1
    let got = stdout_of(&[
        "decompose", "--input", path.to_str().unwrap(), "--method", "both", "--format", "json",
    ]);
    let decomp: serde_json::Value = serde_json::from_slice(&got).unwrap();
    assert_eq!(
        decomp,
        serde_json::json!({
            "blocks": [{"two_l": 4, "mult": 1}, {"two_l": 2, "mult": 1}],
            "total_dim": 8
        })
    );
}

#[test]
fn output_flag_writes_exactly_the_stdout_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.csv");
    let streamed = stdout_of(&["zeeman", "--n", "3", "--field-gauss", "2500", "--format", "csv"]);
    let out = so3split(&[
        "zeeman", "--n", "3", "--field-gauss", "2500", "--format", "csv", "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(read(&path), streamed);
}

#[test]
fn csv_headers_are_stable() {
    let golden = golden_dir();
    let tensor = golden.join("tensor_1x1.json");
    let first_line = |bytes: Vec<u8>| -> String {
        String::from_utf8(bytes).unwrap().lines().next().unwrap().to_string()
    };
    assert_eq!(
        first_line(stdout_of(&["generators", "--l", "1", "--format", "csv"])),
        "op,entry_row,entry_col,re,im"
    );
    assert_eq!(
        first_line(stdout_of(&["character", "--l", "1", "--theta", "1", "--format", "csv"])),
        "theta,re,im"
    );
    assert_eq!(
        first_line(stdout_of(&[
            "decompose", "--input", tensor.to_str().unwrap(), "--format", "csv"
        ])),
        "two_l,l,mult"
    );
    assert_eq!(
        first_line(stdout_of(&[
            "symmetry", "--l", "1", "--field-gauss", "100", "--format", "csv"
        ])),
        "generator,residual,survives,group"
    );
    assert_eq!(
        first_line(stdout_of(&[
            "evolve", "--rate", "1", "--t-end", "0.2", "--dt", "0.1", "--theta0", "1", "--format", "csv"
        ])),
        "t,theta,phi,flag"
    );
    assert_eq!(
        first_line(stdout_of(&[
            "evolve", "--picture", "heisenberg", "--rate", "1", "--t-end", "0.2", "--dt", "0.1",
            "--format", "csv"
        ])),
        "t,op,entry_row,entry_col,re,im"
    );
    assert_eq!(
        first_line(stdout_of(&["zeeman", "--n", "1", "--field-gauss", "1", "--format", "csv"])),
        "n,l,m,field_gauss,energy_ev,spacing_ev"
    );
}

#[test]
fn state_trajectory_covers_the_grid_with_a_final_partial_step() {
    let text = String::from_utf8(stdout_of(&[
        "evolve", "--rate", "0.1", "--t-end", "1", "--dt", "0.3", "--theta0", "1", "--format", "csv",
    ]))
    .unwrap();
    let times: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(times, vec!["0", "0.3", "0.6", "0.8999999999999999", "1"]);
}

#[test]
fn symmetry_json_schema_is_stable() {
    let got = stdout_of(&["symmetry", "--l", "1", "--field-gauss", "10000", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&got).unwrap();
    assert_eq!(doc["surviving"], serde_json::json!(["Lz", "I"]));
    assert_eq!(doc["group"], "U(1) x {E,I}");
    assert_eq!(doc["residuals"]["Lz"], 0.0);
    assert!(doc["residuals"]["Lx"].as_f64().unwrap() > 0.0);
}

#[test]
fn spin_label_flags_are_equivalent() {
    let by_l = stdout_of(&["generators", "--l", "1.5", "--format", "json"]);
    let by_two_l = stdout_of(&["generators", "--two-l", "3", "--format", "json"]);
    assert_eq!(by_l, by_two_l);
}

#[test]
fn character_reads_a_decomposition_file() {
    let dir = tempfile::tempdir().unwrap();
    let tensor = golden_dir().join("tensor_1x1.json");
    let decomp_path = dir.path().join("decomp.json");
    let out = so3split(&[
        "decompose", "--input", tensor.to_str().unwrap(), "--format", "json", "--output",
        decomp_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    // χ(0) of the decomposition is its total dimension
    let got = stdout_of(&[
        "character", "--decomp", decomp_path.to_str().unwrap(), "--theta", "0", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&got).unwrap();
    assert_eq!(doc["character"][0], 9.0);
    assert_eq!(doc["character"][1], 0.0);
}

#[test]
fn zeeman_level_filter_and_sweep_ordering() {
    let filtered = String::from_utf8(stdout_of(&[
        "zeeman", "--n", "3", "--l", "1", "--field-gauss", "100", "--format", "csv",
    ]))
    .unwrap();
    let rows: Vec<&str> = filtered.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.starts_with("3,1,")));

    let sweep = String::from_utf8(stdout_of(&[
        "zeeman", "--n-max", "3", "--field-gauss", "100", "--format", "csv",
    ]))
    .unwrap();
    let keys: Vec<(u32, u32, i64)> = sweep
        .lines()
        .skip(1)
        .map(|row| {
            let mut parts = row.split(',');
            (
                parts.next().unwrap().parse().unwrap(),
                parts.next().unwrap().parse().unwrap(),
                parts.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    // 1 + 4 + 9 sublevels, in ascending (n, l, m) order
    assert_eq!(keys.len(), 14);
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
