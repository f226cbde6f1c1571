use std::path::Path;
use std::process::{Command, Output, Stdio};
use std::time::Duration;

use listpl::metrics::Split;
use listpl::train::MetricsLog;

fn listpl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_listpl")).args(args).output().unwrap()
}

fn synth(dir: &Path, extra: &[&str]) {
    let mut args = vec!["synth", "--out-dir", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = listpl(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn train_args<'a>(dir: &'a str, out: &'a str) -> Vec<String> {
    [
        "train", "--train", &format!("{dir}/train.txt"), "--vali", &format!("{dir}/vali.txt"),
        "--test", &format!("{dir}/test.txt"), "--out", out, "--features", "5",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn run(args: &[String]) -> Output {
    listpl(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn train_writes_metrics_and_checkpoint() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    synth(&data, &["--train-queries", "10", "--vali-queries", "5", "--test-queries", "5"]);
    let metrics = tmp.path().join("run.csv");
    let mut args = train_args(data.to_str().unwrap(), metrics.to_str().unwrap());
    args.extend(["--epochs", "3", "--loss", "listmle"].map(String::from));
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let text = std::fs::read_to_string(&metrics).unwrap();
    assert_eq!(text.lines().next().unwrap(), "epoch,split,ndcg_at_k,mean_loss");
    let log = MetricsLog::read_csv(&metrics).unwrap();
    assert_eq!(log.records().len(), 9);
    assert!(log.get(3, Split::Test).is_some());
    assert!(tmp.path().join("run.model.json").is_file());
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    synth(tmp.path(), &["--train-queries", "4", "--vali-queries", "2", "--test-queries", "2"]);
    let out = format!("{dir}/m.csv");

    assert_eq!(listpl(&["train", "--bogus"]).status.code(), Some(1));
    let mut bad_loss = train_args(dir, &out);
    bad_loss.extend(["--loss", "lambdarank"].map(String::from));
    assert_eq!(run(&bad_loss).status.code(), Some(1));
    let mut zero_epochs = train_args(dir, &out);
    zero_epochs.extend(["--epochs", "0"].map(String::from));
    assert_eq!(run(&zero_epochs).status.code(), Some(1));

    std::fs::write(tmp.path().join("broken.txt"), "2 qid:1 1:0.5\nnot a record\n").unwrap();
    let mut broken = train_args(dir, &out);
    broken[2] = format!("{dir}/broken.txt");
    let output = run(&broken);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("line 2"));

    let mut missing = train_args(dir, &out);
    missing[2] = format!("{dir}/absent.txt");
    assert_eq!(run(&missing).status.code(), Some(2));

    let mut diverge = train_args(dir, &out);
    diverge.extend(["--epochs", "50", "--lr", "1e300"].map(String::from));
    assert_eq!(run(&diverge).status.code(), Some(3));

    assert_eq!(listpl(&["--help"]).status.code(), Some(0));
}

#[test]
fn crossval_report_has_one_row_per_pair_and_rule() {
    let tmp = tempfile::tempdir().unwrap();
    let folds = tmp.path().join("folds");
    synth(&folds, &["--folds", "3", "--train-queries", "8", "--vali-queries", "4", "--test-queries", "4"]);
    let report = tmp.path().join("report.csv");
    let out = listpl(&[
        "crossval", "--folds", folds.to_str().unwrap(), "--fold-count", "3", "--losses", "listnet,listmle,listpl",
        "--out", report.to_str().unwrap(), "--epochs", "4", "--features", "5",
        "--metrics-dir", tmp.path().join("metrics").to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let mut reader = csv::Reader::from_path(&report).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["loss_a", "loss_b", "selection", "fold_scores_a", "fold_scores_b", "p_value"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    for selection in ["final_epoch", "best_validation"] {
        assert_eq!(rows.iter().filter(|r| &r[2] == selection).count(), 3);
    }
    for row in &rows {
        assert_eq!(row[3].split(';').count(), 3);
        let p: f64 = row[5].parse().unwrap();
        assert!((0.0..=1.0).contains(&p));
    }
    assert_eq!(std::fs::read_dir(tmp.path().join("metrics")).unwrap().count(), 9);
}

#[test]
fn killed_run_leaves_a_parseable_prefix() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    synth(&data, &["--train-queries", "200", "--docs", "30"]);
    let metrics = tmp.path().join("run.csv");
    let mut args = train_args(data.to_str().unwrap(), metrics.to_str().unwrap());
    args.extend(["--epochs", "100000"].map(String::from));
    let mut child = Command::new(env!("CARGO_BIN_EXE_listpl"))
        .args(&args)
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let mut epochs = 0;
    for _ in 0..600 {
        std::thread::sleep(Duration::from_millis(50));
        epochs = std::fs::read_to_string(&metrics).map(|t| t.lines().count().saturating_sub(1) / 3).unwrap_or(0);
        if epochs >= 3 {
            break;
        }
    }
    child.kill().unwrap();
    child.wait().unwrap();
    assert!(epochs >= 3, "run produced no epochs before the deadline");

    let log = MetricsLog::read_csv(&metrics).unwrap();
    let last = log.last_epoch().unwrap();
    assert!(last >= 3);
    for epoch in 1..=last {
        for split in Split::ALL {
            assert!(log.get(epoch, split).is_some(), "missing {split} at epoch {epoch}");
        }
    }
}
