use std::process::{Command, Output};

use gavsa_bench::{run, to_csv, ExperimentConfig, ExperimentKind, Model, CSV_HEADER};

fn bench(args: &[&str], seed_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gavsa-bench"));
    cmd.args(args).env_remove("GAVSA_SEED");
    if let Some(seed) = seed_env {
        cmd.env("GAVSA_SEED", seed);
    }
    cmd.output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn seeds(csv: &str) -> Vec<String> {
    csv.lines().skip(1).map(|l| l.split(',').nth(8).unwrap().to_string()).collect()
}

const SMALL: [&str; 6] = ["--n-min", "6", "--n-max", "7", "--trials", "20"];

#[test]
fn recognize_writes_csv_to_stdout() {
    let csv = stdout(&bench(&[&["recognize"], &SMALL[..]].concat(), None));
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("recognize,ga,PSmith#name,plate,rhs,inner,6,20,2024,"));
}

#[test]
fn unknown_question_fails() {
    let out = bench(&["recognize", "--question", "Nobody#name", "--trials", "5"], None);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown question"));
}

#[test]
fn baseline_with_matrix_measure_fails() {
    let out = bench(&["recognize", "--models", "hrr", "--measure", "hamming", "--trials", "5"], None);
    assert!(!out.status.success());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let args = [&["cancel", "--out", path.to_str().unwrap()], &SMALL[..]].concat();
    let out = bench(&args, None);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 2 * 2);
}

#[test]
fn seed_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, "# small run\nseed = 11\ntrials = 20\nn-min = 6\nn-max = 6\n").unwrap();
    let cfg = path.to_str().unwrap();

    let from_file = stdout(&bench(&["recognize", "--config", cfg], None));
    assert_eq!(seeds(&from_file), ["11"]);
    let from_env = stdout(&bench(&["recognize", "--config", cfg], Some("12")));
    assert_eq!(seeds(&from_env), ["12"]);
    let from_flag = stdout(&bench(&["recognize", "--config", cfg, "--seed", "13"], Some("12")));
    assert_eq!(seeds(&from_flag), ["13"]);

    let default = stdout(&bench(&[&["recognize"], &SMALL[..]].concat(), None));
    assert!(seeds(&default).iter().all(|s| s == "2024"));
}

#[test]
fn bad_config_key_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "colour = blue\n").unwrap();
    let out = bench(&["recognize", "--config", path.to_str().unwrap()], None);
    assert!(!out.status.success());
}

#[test]
fn hamming_support_is_selectable() {
    let args = [
        &["recognize", "--construction", "ao-odd", "--measure", "hamming-support"],
        &SMALL[..],
    ]
    .concat();
    let csv = stdout(&bench(&args, None));
    assert!(csv.lines().nth(1).unwrap().contains(",ao-odd,rhs,hamming-support,6,"));
}

#[test]
fn estimate_needs_no_trials() {
    let csv = stdout(&bench(&["estimate", "--n-min", "10", "--n-max", "10"], None));
    assert!(csv.contains("estimate,estimate,simple(L_noise=3),ao,-,inner,10,0,2024,1.6153"));
}

#[test]
fn output_independent_of_thread_count() {
    let mut cfg = ExperimentConfig::new(ExperimentKind::Compare);
    cfg.questions = vec!["PSmith#name".into(), "(5a)#see_obj".into()];
    cfg.n_min = 6;
    cfg.n_max = 9;
    cfg.trials = 30;
    cfg.models = vec![Model::Ga, Model::Hrr, Model::Bsc];
    let csvs: Vec<_> = [1, 3]
        .into_iter()
        .map(|t| {
            cfg.threads = Some(t);
            to_csv(&run(&cfg).unwrap())
        })
        .collect();
    assert_eq!(csvs[0], csvs[1]);

    cfg.seed += 1;
    assert_ne!(to_csv(&run(&cfg).unwrap()), csvs[0]);
}
