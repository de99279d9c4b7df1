//! End-to-end tests of the fonema binary: exit-code contract, file
//! outputs, and reproducibility.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn fonema(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fonema"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn transcribe_empty_corpus_reports_zero_counts() {
    let tmp = TempDir::new().unwrap();
    let corpus = write(tmp.path(), "empty.txt", "");
    let out_dir = tmp.path().join("out");
    let out = fonema(&["transcribe", "--corpus", &corpus, "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("words=0 tokens=0 expanded=0"));
    assert_eq!(fs::read_to_string(out_dir.join("empty.arp")).unwrap(), "");
}

#[test]
fn transcribe_demo_corpus_hits_the_phoneme_per_word_range() {
    let tmp = TempDir::new().unwrap();
    let out_dir = tmp.path().join("out");
    let out = fonema(&[
        "transcribe",
        "--corpus",
        "data/corpora/promessi_sposi.txt",
        "data/corpora/pinocchio.txt",
        "--budget",
        "all",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("transcribe_summary.json")).unwrap())
            .unwrap();
    let mut words = 0.0;
    let mut expanded = 0.0;
    for entry in summary.as_array().unwrap() {
        words += entry["words"].as_f64().unwrap();
        expanded += entry["expanded_phonemes"].as_f64().unwrap();
    }
    // 1,250 words should land near 6,000 expanded phonemes (±15%).
    let per_1250 = expanded / words * 1250.0;
    assert!(
        (5100.0..=6900.0).contains(&per_1250),
        "1250 words -> {per_1250:.0} expanded units"
    );
}

#[test]
fn budget_six_thousand_is_the_default() {
    let tmp = TempDir::new().unwrap();
    let out_dir = tmp.path().join("out");
    let out = fonema(&[
        "transcribe",
        "--corpus",
        "data/corpora/promessi_sposi.txt",
        "data/corpora/pinocchio.txt",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("transcribe_summary.json")).unwrap())
            .unwrap();
    for entry in summary.as_array().unwrap() {
        assert!(entry["expanded_phonemes"].as_u64().unwrap() <= 6000);
    }
}

#[test]
fn missing_corpus_is_an_input_error() {
    let out = fonema(&["transcribe", "--corpus", "/nonexistent/file.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("input error"));
}

#[test]
fn unknown_word_under_error_policy_is_a_data_error_with_span() {
    let tmp = TempDir::new().unwrap();
    let corpus = write(tmp.path(), "strange.txt", "casa splendida");
    let lexicon = write(tmp.path(), "small.tsv", "casa\tK AA S AA\n");
    let out = fonema(&[
        "transcribe",
        "--corpus",
        &corpus,
        "--lexicon",
        &lexicon,
        "--unknown-word",
        "error",
        "--out",
        tmp.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("splendida"), "stderr: {stderr}");
    assert!(stderr.contains("5..14"), "span missing: {stderr}");
}

#[test]
fn malformed_lexicon_is_an_input_error() {
    let tmp = TempDir::new().unwrap();
    let corpus = write(tmp.path(), "c.txt", "casa");
    let lexicon = write(tmp.path(), "bad.tsv", "casa\tQQ ZZ\n");
    let out = fonema(&["transcribe", "--corpus", &corpus, "--lexicon", &lexicon]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_wire_stream_single_token() {
    let tmp = TempDir::new().unwrap();
    let stream = write(tmp.path(), "one.arp", "AA\n");
    let out_dir = tmp.path().join("out");
    let out = fonema(&[
        "analyze",
        "--transcription",
        &stream,
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = fs::read_to_string(out_dir.join("frequency_expanded.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("AA,100.00"));
}

#[test]
fn analyze_geminate_stream_uses_expanded_counting() {
    let tmp = TempDir::new().unwrap();
    let stream = write(tmp.path(), "two.arp", "TT AA\n");
    let out_dir = tmp.path().join("out");
    let out = fonema(&[
        "analyze",
        "--transcription",
        &stream,
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = fs::read_to_string(out_dir.join("frequency_expanded.csv")).unwrap();
    assert!(csv.contains("T,66.67"), "csv:\n{csv}");
    assert!(csv.contains("AA,33.33"));
}

#[test]
fn analyze_four_corpora_adds_an_average_column() {
    let tmp = TempDir::new().unwrap();
    let mut args = vec!["analyze".to_string()];
    args.push("--corpus".to_string());
    for (i, text) in ["casa bella", "pane e vino", "il gatto dorme", "anno nuovo"]
        .iter()
        .enumerate()
    {
        args.push(write(tmp.path(), &format!("c{i}.txt"), text));
    }
    let out_dir = tmp.path().join("out");
    args.extend(["--out".to_string(), out_dir.to_string_lossy().into_owned()]);
    let arg_refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
    let out = fonema(&arg_refs);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(out_dir.join("frequency_expanded.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "phoneme,c0,c1,c2,c3,average");
    assert!(out_dir.join("gemination_average.csv").exists());
    assert!(out_dir.join("class.csv").exists());
    assert!(out_dir.join("manner.csv").exists());
}

#[test]
fn analyze_empty_transcription_is_a_data_error() {
    let tmp = TempDir::new().unwrap();
    let corpus = write(tmp.path(), "only_digits.txt", "12345 67");
    let out = fonema(&["analyze", "--corpus", &corpus]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn converge_rejects_a_corpus_shorter_than_two_increments() {
    let tmp = TempDir::new().unwrap();
    let corpus = write(tmp.path(), "short.txt", "casa bella");
    let out = fonema(&["converge", "--corpus", &corpus, "--increment", "250"]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("need at least 500"), "stderr: {stderr}");
}

#[test]
fn converge_demo_corpus_writes_plot_data_and_fits() {
    let tmp = TempDir::new().unwrap();
    let out_dir = tmp.path().join("out");
    let out = fonema(&[
        "converge",
        "--corpus",
        "data/corpora/pinocchio.txt",
        "--budget",
        "all",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let fits: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("fits.json")).unwrap()).unwrap();
    let fit = &fits[0]["fit"];
    assert!(fit["b"].as_f64().unwrap() < 0.0);
    assert!(fit["r2"].as_f64().unwrap() > 0.5);
    // Stability entries exist for both default thresholds and scopes.
    assert_eq!(fits[0]["stability"].as_array().unwrap().len(), 4);
    let deltas = fs::read_to_string(out_dir.join("converge_pinocchio_deltas.csv")).unwrap();
    assert!(deltas.starts_with("x,category,delta\n"));
    let avg = fs::read_to_string(out_dir.join("converge_pinocchio_average.csv")).unwrap();
    assert!(avg.starts_with("x,average_delta,fitted_value\n"));
}

#[test]
fn compare_embedded_reproduces_published_correlations() {
    let tmp = TempDir::new().unwrap();
    let out_dir = tmp.path().join("out");
    let out = fonema(&["compare", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let corr: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("correlations.json")).unwrap())
            .unwrap();
    assert_eq!(corr["labels"], serde_json::json!(["current", "zipf", "busa"]));
    let current_zipf = corr["matrix"][0][1].as_f64().unwrap();
    assert!((current_zipf - 0.993).abs() <= 0.005);
    // No deviation beyond the documented tolerances.
    let deviations: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("deviations.json")).unwrap())
            .unwrap();
    assert!(deviations
        .as_array()
        .unwrap()
        .iter()
        .all(|d| !d["beyond_tolerance"].as_bool().unwrap()));
    // Table-shaped comparison CSV.
    let csv = fs::read_to_string(out_dir.join("comparison.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "phoneme,current,zipf,busa");
    assert!(csv.contains("AA,11.36,10.72,"));
}

#[test]
fn compare_dataset_with_itself_correlates_perfectly() {
    let tmp = TempDir::new().unwrap();
    let out_dir = tmp.path().join("out");
    let out = fonema(&[
        "compare",
        "--dataset",
        "zipf",
        "zipf",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let corr: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("correlations.json")).unwrap())
            .unwrap();
    assert_eq!(corr["matrix"][1][2].as_f64().unwrap(), 1.0);
}

#[test]
fn compare_rejects_unparseable_dataset_files() {
    let tmp = TempDir::new().unwrap();
    let bad = write(tmp.path(), "bad.tsv", "NOTALABEL\t1.0\n");
    let out = fonema(&["compare", "--dataset", &bad]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runs_are_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let corpus = write(tmp.path(), "c.txt", "quel ramo del lago di como che volge a mezzogiorno");
    let out_a = tmp.path().join("a");
    let out_b = tmp.path().join("b");
    for dir in [&out_a, &out_b] {
        let out = fonema(&[
            "analyze",
            "--corpus",
            &corpus,
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    for name in ["frequency_expanded.csv", "gemination_c.csv", "class.csv", "manner.csv", "analysis.json"] {
        let a = fs::read(out_a.join(name)).unwrap();
        let b = fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
}

#[test]
fn inventory_lists_thirty_phonemes_in_both_formats() {
    let csv = fonema(&["inventory"]);
    assert!(csv.status.success());
    let text = String::from_utf8_lossy(&csv.stdout);
    assert_eq!(text.lines().count(), 31);
    assert!(text.contains("GN,ɲ,Consonant,Nasal,true,GNGN,true"));

    let json = fonema(&["inventory", "--format", "json"]);
    let doc: serde_json::Value =
        serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 30);
}

#[test]
fn voiced_escape_hatch_changes_intervocalic_s() {
    let tmp = TempDir::new().unwrap();
    let corpus = write(tmp.path(), "c.txt", "casa");
    let out_dir = tmp.path().join("out");
    let out = fonema(&[
        "transcribe",
        "--corpus",
        &corpus,
        "--intervocalic-s",
        "voiced",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(out_dir.join("c.arp")).unwrap(), "K AA Z AA\n");
}
