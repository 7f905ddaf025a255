use std::process::Command;

fn ttrack() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ttrack"))
}

#[test]
fn verify_corpus_i_accepted() {
    let out = ttrack()
        .args(["verify", "--corpus", "I"])
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "stdout: {stdout}");
    assert!(stdout.contains("verdict:            Accepted"), "{stdout}");
}

#[test]
fn verify_corpus_xx_notes_power() {
    let out = ttrack()
        .args(["verify", "--corpus", "XX"])
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.contains("power 2"), "{stdout}");
    assert!(stdout.contains("Accepted"), "{stdout}");
}

#[test]
fn verify_bad_file_reports_parse_error() {
    let dir = std::env::temp_dir().join("ttrack-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.txt");
    std::fs::write(&path, "a -> aA\n").unwrap();
    let out = ttrack()
        .args(["verify", path.to_str().unwrap(), "--target", "I"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 1"), "{stderr}");
}

#[test]
fn verify_wrong_target_exits_2() {
    let out = ttrack()
        .args(["verify", "--corpus", "I", "--target", "XXI"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_counts_and_dot_output() {
    let out = ttrack().args(["catalog", "--n", "5"]).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("21 connected simplicial graphs"), "{stdout}");

    let out = ttrack().args(["catalog", "--n", "2"]).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("1 connected simplicial graphs"), "{stdout}");

    let dir = std::env::temp_dir().join("ttrack-cli-dot");
    let _ = std::fs::remove_dir_all(&dir);
    let out = ttrack()
        .args(["catalog", "--n", "4", "--dot", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let count = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(count, 6);
}

#[test]
fn diagram_test_reports_unachieved_for_graph_v() {
    let out = ttrack()
        .args(["diagram", "V", "--test"])
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.contains("unachieved"), "{stdout}");
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let run = || {
        let out = ttrack()
            .args(["verify", "--corpus", "IV", "--json"])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn search_graph_xxi_emits_verified_candidate() {
    let out = ttrack()
        .args(["search", "XXI", "--strategy", "ib", "--budget", "20", "--json"])
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}");
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let cands = doc["candidates"].as_array().unwrap();
    assert!(!cands.is_empty());
    assert!(cands.iter().any(|c| c["verdict"] == "Accepted"), "{stdout}");
}
