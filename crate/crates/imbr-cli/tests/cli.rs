//! End-to-end CLI behavior: exit codes, the ERROR line contract, file
//! contents, and a full pipeline run.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn imbr(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_imbr"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) {
    fs::write(dir.join(name), content).unwrap();
}

fn error_line(out: &Output) -> String {
    let stderr = String::from_utf8_lossy(&out.stderr);
    stderr
        .lines()
        .find(|l| l.starts_with("ERROR "))
        .unwrap_or_else(|| panic!("no ERROR line in {stderr:?}"))
        .to_string()
}

const CORPUS: &str = concat!(
    "{\"text\":\"Vendedor de autos urgente\",\"label\":\"Sales\"}\n",
    "{\"text\":\"vendedor de autos, ¡URGENTE!\",\"label\":\"Sales\"}\n",
    "{\"text\":\"Analista contable\",\"label\":\"Admin\"}\n",
    "{\"text\":\"Asistente contable\",\"label\":\"Admin\"}\n",
    "{\"text\":\"Minero de datos\",\"label\":\"Tech\"}\n",
);

#[test]
fn prep_dedupes_and_writes_stats() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "corpus.jsonl", CORPUS);

    let out = imbr(
        dir,
        &[
            "prep", "--input", "corpus.jsonl", "--output", "clean.jsonl", "--stats", "stats.json",
        ],
    );
    assert!(out.status.success());

    let stats: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("stats.json")).unwrap()).unwrap();
    assert_eq!(stats["format"], "imbr-stats/1");
    assert_eq!(stats["removed_duplicates"], 1);
    assert_eq!(stats["total"], 4);
    let classes = stats["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 3);
    let percent_sum: f64 = classes.iter().map(|c| c["percent"].as_f64().unwrap()).sum();
    assert!((percent_sum - 100.0).abs() < 1e-9);

    let kept = fs::read_to_string(dir.join("clean.jsonl")).unwrap();
    assert_eq!(kept.lines().count(), 4);
}

#[test]
fn prep_reports_malformed_line_number() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let mut corpus = String::new();
    for i in 0..6 {
        corpus.push_str(&format!("{{\"text\":\"doc {i}\",\"label\":\"A\"}}\n"));
    }
    corpus.push_str("{\"text\":\"no label here\"}\n");
    write(dir, "corpus.jsonl", &corpus);

    let out = imbr(
        dir,
        &["prep", "--input", "corpus.jsonl", "--output", "o.jsonl", "--stats", "s.json"],
    );
    assert_eq!(out.status.code(), Some(2));
    let line = error_line(&out);
    assert!(line.starts_with("ERROR 2 "), "{line}");
    assert!(line.contains("line 7"), "message must cite line 7: {line}");
}

#[test]
fn vectorize_bow_shapes_and_vocab() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(
        dir,
        "corpus.jsonl",
        "{\"text\":\"uno dos dos\",\"label\":\"A\"}\n{\"text\":\"dos tres\",\"label\":\"B\"}\n{\"text\":\"uno\",\"label\":\"A\"}\n",
    );
    let out = imbr(
        dir,
        &[
            "vectorize", "--input", "corpus.jsonl", "--output", "m.csv", "--mode", "bow",
            "--vocab", "vocab.json", "--no-stopwords",
        ],
    );
    assert!(out.status.success());

    let csv = fs::read_to_string(dir.join("m.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "label,f0,f1,f2");
    assert_eq!(lines.count(), 3);

    let vocab: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("vocab.json")).unwrap()).unwrap();
    assert_eq!(vocab["format"], "imbr-vocab/1");
    assert_eq!(vocab["tokens"].as_array().unwrap().len(), 3);
    assert_eq!(vocab["labels"][0], "A");
}

#[test]
fn vectorize_embed_zero_row_for_oov() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(
        dir,
        "corpus.jsonl",
        "{\"text\":\"hola mundo\",\"label\":\"A\"}\n{\"text\":\"ajeno\",\"label\":\"B\"}\n",
    );
    write(dir, "vecs.txt", "2 2\nhola 1 0\nmundo 0 1\n");
    let out = imbr(
        dir,
        &[
            "vectorize", "--input", "corpus.jsonl", "--output", "m.csv", "--mode", "embed",
            "--embeddings", "vecs.txt", "--no-stopwords",
        ],
    );
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.join("m.csv")).unwrap();
    let last = csv.lines().last().unwrap();
    let values: Vec<f64> = last.split(',').skip(1).map(|v| v.parse().unwrap()).collect();
    assert_eq!(values, vec![0.0, 0.0]);
}

#[test]
fn vectorize_bad_embedding_header_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "corpus.jsonl", "{\"text\":\"hola\",\"label\":\"A\"}\n");
    write(dir, "vecs.txt", "not a header\nhola 1 0\n");
    let out = imbr(
        dir,
        &[
            "vectorize", "--input", "corpus.jsonl", "--output", "m.csv", "--mode", "embed",
            "--embeddings", "vecs.txt",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(error_line(&out).contains("line 1"));
}

fn two_class_matrix(dir: &Path, name: &str, majority: usize, minority: usize) {
    let mut csv = String::from("label,f0,f1\n");
    for i in 0..majority {
        csv.push_str(&format!("0,{}.0,0.0\n", i % 7));
    }
    for i in 0..minority {
        csv.push_str(&format!("1,{}.0,9.0\n", i % 5));
    }
    write(dir, name, &csv);
}

#[test]
fn resample_auto_smote_balances_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    two_class_matrix(dir, "m.csv", 100, 10);
    let out = imbr(
        dir,
        &[
            "resample", "--input", "m.csv", "--output", "out.csv", "--provenance", "p.jsonl",
            "--algorithm", "smote", "--seed", "3",
        ],
    );
    assert!(out.status.success());
    let rows = fs::read_to_string(dir.join("out.csv")).unwrap().lines().count() - 1;
    assert_eq!(rows, 200, "output must hold 200 rows");
    let prov_lines = fs::read_to_string(dir.join("p.jsonl")).unwrap().lines().count();
    assert_eq!(prov_lines, 90);
}

#[test]
fn resample_balanced_adasyn_passes_through_with_warning() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    two_class_matrix(dir, "m.csv", 20, 20);
    let out = imbr(
        dir,
        &["resample", "--input", "m.csv", "--output", "out.csv", "--algorithm", "adasyn"],
    );
    assert!(out.status.success());
    let input = fs::read_to_string(dir.join("m.csv")).unwrap();
    let output = fs::read_to_string(dir.join("out.csv")).unwrap();
    let data_in: Vec<&str> = input.lines().skip(1).collect();
    let data_out: Vec<&str> = output.lines().skip(1).collect();
    assert_eq!(data_in.len(), data_out.len(), "balanced input must pass through");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("no synthetic rows"), "warning expected: {stderr}");
}

#[test]
fn resample_invalid_truncation_exits_2_before_reading() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    // no input file on disk: validation must fail first
    let out = imbr(
        dir,
        &[
            "resample", "--input", "missing.csv", "--output", "out.csv",
            "--algorithm", "gsmote", "--gsmote-truncation", "2",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(error_line(&out).contains("gsmote_truncation"));
}

#[test]
fn resample_class_too_small_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "m.csv", "label,f0\n0,1.0\n0,2.0\n0,3.0\n1,9.0\n");
    let out = imbr(
        dir,
        &["resample", "--input", "m.csv", "--output", "out.csv", "--algorithm", "smote"],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(error_line(&out).starts_with("ERROR 3 "));
}

#[test]
fn train_writes_model_json() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    two_class_matrix(dir, "m.csv", 12, 12);
    let out = imbr(
        dir,
        &["train", "--input", "m.csv", "--model", "model.json", "--classifier", "nb"],
    );
    assert!(out.status.success());
    let model: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("model.json")).unwrap()).unwrap();
    assert_eq!(model["format"], "imbr-model/1");
    assert_eq!(model["kind"], "nb");
}

#[test]
fn cv_report_and_table_format() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    two_class_matrix(dir, "m.csv", 30, 15);
    let out = imbr(
        dir,
        &[
            "cv", "--input", "m.csv", "--report", "report.json", "--table", "table.txt",
            "--classifier", "softmax", "--epochs", "2", "--seed", "5",
        ],
    );
    assert!(out.status.success());

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["format"], "imbr-report/1");
    assert_eq!(report["k"], 5);
    assert_eq!(report["folds"].as_array().unwrap().len(), 5);
    for key in ["accuracy", "macro_precision", "macro_recall", "macro_f1"] {
        let v = report["mean"][key].as_f64().unwrap();
        assert!((0.0..=1.0).contains(&v), "{key} out of range");
    }

    let table = fs::read_to_string(dir.join("table.txt")).unwrap();
    let header = table.lines().next().unwrap();
    let columns: Vec<&str> = header.split_whitespace().collect();
    assert_eq!(
        &columns[columns.len() - 4..],
        &["Accuracy", "Precision", "Recall", "F1"]
    );
    assert!(table.lines().nth(1).unwrap().starts_with("Original dataset"));
}

#[test]
fn cv_folds_beyond_rows_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "m.csv", "label,f0\n0,1.0\n1,2.0\n0,3.0\n");
    let out = imbr(
        dir,
        &["cv", "--input", "m.csv", "--report", "r.json", "--table", "t.txt", "--folds", "5"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn synth_spec_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(
        dir,
        "spec.json",
        r#"{"dimension":2,"seed":4,"classes":[
            {"center":[0.0,0.0],"std_dev":1.0,"count":8},
            {"center":[5.0,5.0],"std_dev":0.5,"count":3}]}"#,
    );
    let out = imbr(dir, &["synth", "--spec", "spec.json", "--output", "m.csv"]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.join("m.csv")).unwrap();
    assert_eq!(csv.lines().count() - 1, 11);
    let labels: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(labels.iter().filter(|&&l| l == "0").count(), 8);
    assert_eq!(labels.iter().filter(|&&l| l == "1").count(), 3);
}

#[test]
fn synth_bad_spec_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "spec.json", r#"{"dimension":0,"seed":4,"classes":[]}"#);
    let out = imbr(dir, &["synth", "--spec", "spec.json", "--output", "m.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_renders_blocks_with_mixed_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    two_class_matrix(dir, "m.csv", 30, 15);
    let out = imbr(
        dir,
        &[
            "cv", "--input", "m.csv", "--report", "plain.json", "--table", "unused.txt",
            "--classifier", "softmax", "--epochs", "2", "--seed", "5",
        ],
    );
    assert!(out.status.success());

    write(
        dir,
        "blocks.json",
        r#"{"format":"imbr-table/1","blocks":[{"title":"Softmax regression","rows":[
            {"label":"Original dataset","report":"plain.json"},
            {"label":"Geometric-SMOTE","accuracy":0.64,"precision":0.54,"recall":0.56,"f1":0.54}
        ]}]}"#,
    );
    let out = imbr(
        dir,
        &["report", "--input", "blocks.json", "--output", "table.txt", "--csv", "table.csv"],
    );
    assert!(out.status.success());
    let table = fs::read_to_string(dir.join("table.txt")).unwrap();
    let gsmote = table.lines().find(|l| l.starts_with("Geometric-SMOTE")).unwrap();
    let values = gsmote
        .trim_start_matches("Geometric-SMOTE")
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ");
    assert_eq!(values, "0.64 0.54 0.56 0.54");
    let csv = fs::read_to_string(dir.join("table.csv")).unwrap();
    assert!(csv.starts_with("classifier,dataset,accuracy,precision,recall,f1\n"));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    two_class_matrix(dir, "m.csv", 30, 10);
    write(
        dir,
        "config.json",
        r#"{"seed":11,"resample":{"algorithm":"smote","k":2}}"#,
    );
    // config supplies the algorithm; flag overrides k
    let out = imbr(
        dir,
        &[
            "resample", "--config", "config.json", "--input", "m.csv", "--output", "a.csv",
            "--provenance", "pa.jsonl",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = fs::read_to_string(dir.join("a.csv")).unwrap().lines().count() - 1;
    assert_eq!(rows, 60);

    // unknown config keys are usage errors
    write(dir, "bad.json", r#"{"resample":{"algoritm":"smote"}}"#);
    let out = imbr(
        dir,
        &["resample", "--config", "bad.json", "--input", "m.csv", "--output", "b.csv"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cv_on_the_jobs_profile_writes_schema_valid_report() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    assert!(imbr(
        dir,
        &[
            "synth", "--profile", "jobs", "--total", "5757", "--dim", "20", "--seed", "7",
            "--output", "bench.csv",
        ],
    )
    .status
    .success());
    let out = imbr(
        dir,
        &[
            "cv", "--input", "bench.csv", "--report", "report.json", "--table", "table.txt",
            "--classifier", "softmax", "--epochs", "2", "--folds", "5", "--seed", "7",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["format"], "imbr-report/1");
    assert_eq!(report["k"], 5);
    assert_eq!(report["folds"].as_array().unwrap().len(), 5);
    assert_eq!(report["pooled"]["per_class"].as_array().unwrap().len(), 23);

    let table = fs::read_to_string(dir.join("table.txt")).unwrap();
    let header: Vec<&str> = table.lines().next().unwrap().split_whitespace().collect();
    assert_eq!(
        &header[header.len() - 4..],
        &["Accuracy", "Precision", "Recall", "F1"]
    );
}

#[test]
fn synth_csv_rereads_identically() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(
        dir,
        "spec.json",
        r#"{"dimension":2,"seed":21,"classes":[
            {"center":[1.0,-1.0],"std_dev":0.8,"count":10},
            {"center":[4.0,4.0],"std_dev":1.2,"count":5}]}"#,
    );
    assert!(imbr(dir, &["synth", "--spec", "spec.json", "--output", "m.csv"]).status.success());

    // re-reading the CSV yields the generated matrix bit for bit
    let spec: imbr::synth::BlobSpec =
        serde_json::from_str(&fs::read_to_string(dir.join("spec.json")).unwrap()).unwrap();
    let generated = imbr::synth::make_blobs(&spec).unwrap();
    let reread = imbr::matrix::FeatureMatrix::read_csv(std::io::BufReader::new(
        fs::File::open(dir.join("m.csv")).unwrap(),
    ))
    .unwrap();
    assert_eq!(reread, generated);
}

#[test]
fn stopword_env_var_sets_the_default_list() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "corpus.jsonl", "{\"text\":\"foo bar baz\",\"label\":\"A\"}\n{\"text\":\"bar baz qux\",\"label\":\"B\"}\n");
    write(dir, "my_stopwords.txt", "bar\n# comment\nbaz\n");

    let out = Command::new(env!("CARGO_BIN_EXE_imbr"))
        .current_dir(dir)
        .env("IMBR_STOPWORDS", dir.join("my_stopwords.txt"))
        .args(["vectorize", "--input", "corpus.jsonl", "--output", "m.csv", "--mode", "bow"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let vocab: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("m.vocab.json")).unwrap()).unwrap();
    let tokens: Vec<&str> = vocab["tokens"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t.as_str().unwrap())
        .collect();
    assert_eq!(tokens, vec!["foo", "qux"], "bar/baz removed via env stopwords");
}

#[test]
fn help_exits_zero_and_lists_subcommands() {
    let tmp = tempfile::tempdir().unwrap();
    let out = imbr(tmp.path(), &["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for sub in ["prep", "vectorize", "resample", "train", "cv", "synth", "report"] {
        assert!(text.contains(sub), "--help must mention {sub}");
    }
}

#[test]
fn full_pipeline_smoke() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    // build a small imbalanced corpus: 24 sales-ish, 8 tech-ish
    let mut corpus = String::new();
    for i in 0..24 {
        corpus.push_str(&format!(
            "{{\"text\":\"venta tienda cliente promoción turno {i}\",\"label\":\"Sales\"}}\n"
        ));
    }
    for i in 0..8 {
        corpus.push_str(&format!(
            "{{\"text\":\"software datos código servidor nube {i}\",\"label\":\"Tech\"}}\n"
        ));
    }
    write(dir, "corpus.jsonl", &corpus);

    assert!(imbr(dir, &["prep", "--input", "corpus.jsonl", "--output", "clean.jsonl", "--stats", "stats.json"]).status.success());
    assert!(imbr(dir, &["vectorize", "--input", "clean.jsonl", "--output", "m.csv", "--mode", "bow", "--drop-digits"]).status.success());
    assert!(imbr(
        dir,
        &[
            "cv", "--input", "m.csv", "--report", "r.json", "--table", "t.txt",
            "--classifier", "nb", "--resample", "smote", "--folds", "4", "--seed", "2",
        ],
    )
    .status
    .success());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("r.json")).unwrap()).unwrap();
    // two well-told-apart vocabularies: NB should do well
    assert!(report["mean"]["accuracy"].as_f64().unwrap() > 0.9);
}
