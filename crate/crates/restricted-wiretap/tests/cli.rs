//! End-to-end runs of the `wiretap` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn wiretap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wiretap"))
        .args(args)
        .env_remove("WIRETAP_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wiretap-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn rate_prints_both_directions() {
    let o = wiretap(&["rate", "--eta", "0.6", "--kappa", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("dr=3.90689059561"), "{s}");
    assert!(s.contains("rr=3.38538127008"), "{s}");

    let o = wiretap(&["rate", "--eta", "0.6", "--kappa", "0.5", "--mu", "2", "--beta", "0.95"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ccq="));
}

#[test]
fn bound_and_bb84() {
    let o = wiretap(&["bound", "--eta", "0.6", "--kappa", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("er_ub=4\n"));

    let o = wiretap(&["bb84", "--kappa", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("unrestricted=") && s.contains("restricted=") && s.contains("mu="), "{s}");
}

#[test]
fn exit_codes() {
    assert_eq!(wiretap(&[]).status.code(), Some(1));
    assert_eq!(wiretap(&["rate"]).status.code(), Some(1));
    assert_eq!(wiretap(&["rate", "--eta", "abc"]).status.code(), Some(1));
    assert_eq!(wiretap(&["rate", "--eta", "1.5"]).status.code(), Some(1));
    assert_eq!(wiretap(&["sweep", "no-such-preset"]).status.code(), Some(1));
    assert_eq!(wiretap(&["verify", "--criterion", "12"]).status.code(), Some(1));
    assert_eq!(wiretap(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_is_reproducible() {
    let dir = scratch("repro");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    for path in [&a, &b] {
        let o = wiretap(&["sweep", "fig3a", "--no-timestamp", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.lines().any(|l| l == "kappa,dr_raw,dr,rr_raw,rr,error"));

    let o = wiretap(&["sweep", "fig3a", "--out", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let stamped = std::fs::read_to_string(&a).unwrap();
    assert!(stamped.starts_with("# generated"));
    assert_eq!(stamped.lines().skip(1).collect::<Vec<_>>(), text.lines().collect::<Vec<_>>());
}

#[test]
fn sweep_spec_file_overrides_and_env_dir() {
    let dir = scratch("spec");
    let spec = dir.join("mine.spec");
    std::fs::write(&spec, "name=mine\ntarget=dr,plob\neta=0.5\nkappa=list:0.2,0.4\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_wiretap"))
        .args(["sweep", spec.to_str().unwrap(), "--eta", "lin:0.3:0.6:4", "--plot", "--no-timestamp"])
        .env("WIRETAP_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.join("mine.csv")).unwrap();
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 1 + 2 * 4);
    assert!(dir.join("mine.gp").exists());

    let o = wiretap(&["sweep", "--preset", "fig8", "--print-spec"]);
    assert!(stdout(&o).contains("eta=0.7"));
    let o = wiretap(&["sweep", "--list"]);
    assert_eq!(stdout(&o).lines().count(), 16);
}

#[test]
fn sweep_rows_with_errors_still_succeed() {
    let o = wiretap(&["sweep", "fig3a", "--no-timestamp", "--mu", "inf", "--kappa", "list:0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = scratch("err");
    let spec = dir.join("bad.spec");
    std::fs::write(&spec, "target=ccq\neta=0.5\nmu=inf\n").unwrap();
    let o = wiretap(&["sweep", spec.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ccq: "));
}

#[test]
fn verify_single_criterion() {
    let o = wiretap(&["verify", "--criterion", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS [4]"));
}
