use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nanoword"));
    c.env_remove("NANOWORD_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn base(dir: &TempDir, family: &str, index: &str, cusps: Option<&str>) -> PathBuf {
    let mut args = vec!["base", "--family", family, "--index", index];
    if let Some(k) = cusps {
        args.extend(["--cusps", k]);
    }
    let o = run(&args);
    assert!(o.status.success());
    write(dir, &format!("{family}{index}.w"), &stdout(&o))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compute_ci2_on_k0_as_json() {
    let dir = TempDir::new().unwrap();
    let k0 = base(&dir, "K", "0", None);
    let o = run(&["compute", "CI2", s(&k0), "--format", "json"]);
    assert!(o.status.success());
    let got: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want: Value =
        serde_json::from_str(r#"{"const":{"1":"0"},"coeffs":{"s":{"1":"1"},"t":{"1":"1/2"}}}"#)
            .unwrap();
    assert_eq!(got, want);
}

#[test]
fn compute_arnold_and_specialized_presets() {
    let dir = TempDir::new().unwrap();
    let k3 = base(&dir, "K", "3", None);
    assert_eq!(stdout(&run(&["compute", "J+", s(&k3)])).trim(), "-4");
    let l = base(&dir, "L", "-2", None);
    let o = run(&["compute", "LI2", s(&l), "--params", "s=1/2,t=1,u=1,v=1"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = run(&["arnold", s(&l)]);
    assert_eq!(stdout(&o).trim(), "-2\t-4\t1");
}

#[test]
fn several_files_give_one_row_each() {
    let dir = TempDir::new().unwrap();
    let a = base(&dir, "K", "2", None);
    let b = base(&dir, "K", "4", None);
    let o = run(&["compute", "St", s(&a), s(&b)]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].ends_with("\t1") && rows[1].ends_with("\t3"));
}

#[test]
fn input_errors_exit_with_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.w", "class closed\nindex 0\nword A:+ B:x A\n");
    let o = run(&["compute", "CI2", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.w:3:"), "{err}");
    let k0 = base(&dir, "K", "0", None);
    assert_eq!(run(&["compute", "CI9", s(&k0)]).status.code(), Some(2));
    assert_eq!(
        run(&["compute", "CI2", s(&k0), "--params", "w=1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["compute", "LI2", s(&k0)]).status.code(), Some(2));
}

#[test]
fn genus_plain_and_json() {
    let dir = TempDir::new().unwrap();
    let w = write(&dir, "abab.w", "class closed\nindex 0\nword A:+ B:+ A B\n");
    assert_eq!(stdout(&run(&["genus", s(&w)])).trim(), "1");
    let j: Value = serde_json::from_str(&stdout(&run(&["genus", s(&w), "--json"]))).unwrap();
    assert_eq!(j["genus"], 1);
    assert_eq!(j["planar"], false);
    assert_eq!(j["faces"], 2);
}

#[test]
fn expand_class_counts() {
    assert_eq!(stdout(&run(&["expand-class", "XYXYZZ"])).lines().count(), 6);
    assert_eq!(stdout(&run(&["expand-class", "XXYYZZ"])).lines().count(), 2);
    let o = run(&[
        "expand-class",
        "X.X.YY",
        "--flavor",
        "marked",
        "--format",
        "json",
    ]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j[0]["pattern"], "X.X.YY");
    assert_eq!(j[0]["sign"], 1);
}

#[test]
fn moves_list_and_apply() {
    let dir = TempDir::new().unwrap();
    let w = write(&dir, "w.w", "class long\nword A:+ B:- A B\n");
    let listed = stdout(&run(&[
        "moves",
        "list",
        s(&w),
        "--kind",
        "II+",
        "--dir",
        "-",
    ]));
    assert_eq!(listed.lines().count(), 1);
    let o = run(&[
        "moves",
        "apply",
        s(&w),
        "--kind",
        "II+",
        "--dir",
        "-",
        "--site",
        "0",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "class long\nword");
    let o = run(&[
        "moves",
        "apply",
        s(&w),
        "--kind",
        "II+",
        "--dir",
        "-",
        "--site",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fuzz_passes_and_is_reproducible() {
    let args = [
        "fuzz", "--family", "L", "--index", "0", "--steps", "200", "--trials", "100", "--check",
        "deltas", "--seed", "9",
    ];
    let a = run(&args);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, run(&args).stdout);
    let env = bin().args(args).env("NANOWORD_SEED", "9").output().unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn fuzz_violation_exits_with_1_and_a_counterexample() {
    let o = run(&[
        "fuzz", "--family", "L", "--index", "0", "--steps", "100", "--trials", "20", "--check",
        "degree3", "--form", "printed",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(
        text.contains("--- before") && text.contains("--- after"),
        "{text}"
    );
}

#[test]
fn table_rows() {
    let o = run(&["table", "--family", "K", "--from", "0", "--to", "4"]);
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').collect())
        .collect();
    let triples: Vec<[&str; 3]> = rows.iter().map(|r| [r[4], r[5], r[6]]).collect();
    assert_eq!(
        triples,
        [
            ["0", "-1", "0"],
            ["0", "0", "0"],
            ["-2", "-3", "1"],
            ["-4", "-6", "2"],
            ["-6", "-9", "3"]
        ]
    );
    let o = run(&["table", "--family", "L", "--from", "-3", "--to", "3"]);
    let jp: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(4).unwrap().to_string())
        .collect();
    assert_eq!(jp, ["-3", "-2", "-1", "0", "-1", "-2", "-3"]);
    let o = run(&["table", "--family", "K", "--from", "1", "--to", "0"]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn tsv_and_json_agree() {
    let dir = TempDir::new().unwrap();
    let a = base(&dir, "L", "2", None);
    let tsv = stdout(&run(&["arnold", s(&a)]));
    let j: Value =
        serde_json::from_str(&stdout(&run(&["arnold", s(&a), "--format", "json"]))).unwrap();
    let fields: Vec<&str> = tsv.trim().split('\t').collect();
    assert_eq!(
        fields,
        [
            j["J+"].as_str().unwrap(),
            j["J-"].as_str().unwrap(),
            j["St"].as_str().unwrap()
        ]
    );
}
