use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "qcgldpc", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcgldpc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn rank_of_example_matrix() {
    let o = run(&["rank", "--matrix", &data("ex1.pmx"), "--N", "45"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 132);
    assert_eq!(v["dimension"], 93);
}

#[test]
fn export_alist_has_expanded_size() {
    let o = run(&["export", "--spec", &data("c1.json"), "--format", "alist"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("476 272"));
}

#[test]
fn export_then_reimport_is_identical() {
    let o = run(&["export", "--spec", "c2", "--format", "json"]);
    let back = qcgldpc::gldpc::GldpcSpec::from_json(&stdout(&o)).unwrap();
    assert_eq!(back, qcgldpc::corpus::spec("c2").unwrap());
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().count() >= 10);
    assert!(!text.contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["rank", "--N", "45"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1() {
    assert_eq!(
        run(&["rank", "--matrix", "/nonexistent.pmx", "--N", "4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["gldpc", "--spec", "no_such_spec"]).status.code(),
        Some(1)
    );
    let o = run(&["encode", "--spec", "appb", "--message", "1;x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mismatch"));
}

#[test]
fn seeded_commands_are_deterministic() {
    let sim = [
        "simulate",
        "--spec",
        "c1",
        "--snr=-2,-1",
        "--max-trials",
        "40",
        "--seed",
        "7",
        "--threads",
        "1",
    ];
    let a = run(&sim);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&run(&sim)));
    let csv = stdout(&a);
    assert_eq!(
        csv.lines().next(),
        Some("snr_db,trials,bit_errors,block_errors,ber,bler")
    );
    assert_eq!(csv.lines().count(), 3);

    let enc = ["encode", "--spec", "c1", "--seed", "3"];
    let e = stdout(&run(&enc));
    assert_eq!(e, stdout(&run(&enc)));
    let v: serde_json::Value = serde_json::from_str(&e).unwrap();
    assert_eq!(v["zero_syndrome"], true);
}

#[test]
fn gldpc_and_girth_reports() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["gldpc", "--spec", "ex4"]))).unwrap();
    assert_eq!(
        (v["length"].as_u64(), v["dimension"].as_u64()),
        (Some(474), Some(158))
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&[
        "girth",
        "--matrix",
        &data("ar4ja.pmx"),
        "--N",
        "4",
    ])))
    .unwrap();
    assert!(v["girth"].as_u64().is_some());
}

#[test]
fn construct_with_and_without_parity_columns() {
    let m = data("ar4ja.pmx");
    for extra in [&["--parity", "1,2,3"][..], &[][..]] {
        let mut args = vec!["construct", "--matrix", &m, "--N", "4"];
        args.extend_from_slice(extra);
        let v: serde_json::Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
        assert_eq!(v["rank"], 8);
        assert_eq!(v["complete"], true);
    }
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("qcgldpc-cli-{}.json", std::process::id()));
    let o = run(&[
        "rank",
        "--matrix",
        &data("ex1.pmx"),
        "--N",
        "44",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(
        (v["rank"].as_u64(), v["dimension"].as_u64()),
        (Some(126), Some(94))
    );
    let _ = std::fs::remove_file(path);
}
