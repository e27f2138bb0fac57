use std::fs;
use std::process::{Command, Output};

use secant_core::cli::{AnalyzeReport, FlattenReport, VerifyReport};
use secant_core::delpezzo::DelPezzoReport;

fn secant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_secant")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_unbalanced_rows() {
    let out = secant(&["analyze", "-p", "P(1)xP(1)xP(5)", "-s", "2..4", "--format", "json"]);
    let report: AnalyzeReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.schema, 1);
    let rows: Vec<_> = report
        .rows
        .iter()
        .map(|r| (r.s, r.oracle_dim.unwrap(), r.defect.unwrap(), r.thm24_case))
        .collect();
    assert_eq!(rows, vec![(2, 15, 0, Some(2)), (3, 20, 3, Some(3)), (4, 23, 0, Some(4))]);
    // the printed P1 x Pm x Pn defect disagrees at s = 3
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_quadric_veronese_product() {
    let out = secant(&["analyze", "-p", "P(2,2)xP(2,2)", "-s", "7..8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: AnalyzeReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.rows[0].oracle_dim, Some(32));
    assert_eq!(report.rows[0].defect, Some(2));
    assert_eq!(report.rows[1].oracle_dim, Some(34));
    assert!(report.rows[1].flags.contains(&"hypersurface".to_string()));
}

#[test]
fn analyze_single_line() {
    let out = secant(&["analyze", "-p", "P(1)", "-s", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "s,ambient,expected,oracle,defect,case,predicted,closed_form,printed,flags");
    assert!(lines.next().unwrap().starts_with("1,1,1,1,0,"));
}

#[test]
fn outputs_are_byte_identical() {
    for args in [
        &["analyze", "-p", "P(1)xP(2)xP(3)", "-s", "1..6", "--seed", "4", "--format", "json"][..],
        &["delpezzo", "--format", "text"][..],
        &["flatten", "-p", "P(1)x5", "--format", "csv"][..],
    ] {
        assert_eq!(secant(args).stdout, secant(args).stdout);
    }
}

#[test]
fn flatten_census_and_matrices() {
    let text = stdout(&secant(&["flatten", "-p", "P(1)x5"]));
    assert!(text.contains("census 5 of 2x16, 10 of 4x8"), "{text}");

    let out = secant(&["flatten", "-p", "P(1)xP(1)xP(3)", "--split", "1,1,0", "--format", "json"]);
    let report: FlattenReport = serde_json::from_slice(&out.stdout).unwrap();
    let m = report.matrix.unwrap();
    assert_eq!((m.rows, m.cols), (4, 4));
    assert_eq!(m.entries[1][2], "y[1,0;0,1;0,0,1,0]");

    let text = stdout(&secant(&["flatten", "-p", "P(2,3)", "--split", "1"]));
    let last = text.lines().last().unwrap();
    assert_eq!(
        last.split_whitespace().collect::<Vec<_>>(),
        ["[0,0,1]", "y[2,0,1]", "y[1,1,1]", "y[1,0,2]", "y[0,2,1]", "y[0,1,2]", "y[0,0,3]"]
    );
}

#[test]
fn equations_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.eq");
    let p = path.to_str().unwrap();
    let out = secant(&["equations", "-p", "P(1)xP(1)xP(4)", "--split", "1,1,0", "-s", "2", "-o", p]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("# count: 40\n# total: 40\n# truncated: false\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 40);

    let out = secant(&["verify", "--equations", p, "--format", "json"]);
    let report: VerifyReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.vanishes, Some(true));
    assert_eq!(report.equations, Some(40));

    let out = secant(&["verify", "--equations", p, "-s", "3", "--format", "json"]);
    let report: VerifyReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.vanishes, Some(false));
}

#[test]
fn equations_cap_truncates() {
    let out = secant(&["equations", "-p", "P(1)xP(1)xP(4)", "--split", "1,1,0", "-s", "2", "--cap", "5"]);
    let text = stdout(&out);
    assert!(text.contains("# count: 5\n# total: 40\n# truncated: true\n"));
}

#[test]
fn pairing_determinants_are_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut body = String::new();
    for split in ["1,0,1,0", "1,0,0,1"] {
        let out = secant(&["equations", "-p", "P(1)x4", "--split", split, "-s", "3"]);
        body.extend(stdout(&out).lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")));
    }
    let path = dir.path().join("pairs.eq");
    fs::write(&path, format!("# profile: P(1)x4\n# s: 3\n{body}")).unwrap();
    let out = secant(&["verify", "--equations", path.to_str().unwrap(), "--format", "json"]);
    let report: VerifyReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((report.vanishes, report.independent), (Some(true), Some(2)));
}

#[test]
fn verify_by_split_and_coordinate() {
    let out = secant(&["verify", "-p", "P(1,2)xP(1,2)", "--split", "1,1", "-s", "3", "--format", "json"]);
    let report: VerifyReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((report.rank_bound_holds, report.max_rank), (Some(true), Some(3)));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.eq");
    fs::write(&path, "# profile: P(1)xP(1)\ny[1,0;1,0]\n").unwrap();
    let out = secant(&["verify", "--equations", path.to_str().unwrap(), "-s", "1", "--format", "json"]);
    let report: VerifyReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.vanishes, Some(false));
}

#[test]
fn degree_examples() {
    for (args, want) in [(["2", "5", "2"], "15"), (["3", "7", "3"], "56"), (["1", "1", "1"], "2")] {
        let out = secant(&["degree", args[0], args[1], args[2]]);
        assert_eq!(stdout(&out).trim(), want);
    }
}

#[test]
fn delpezzo_json_round_trips() {
    let out = secant(&["delpezzo", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: DelPezzoReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.schema, 1);
    assert_eq!(report.surfaces.len(), 5);
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again.as_bytes(), &out.stdout[..]);
}

#[test]
fn errors_exit_one() {
    for args in [
        &["analyze", "-p", "P(1"][..],
        &["flatten", "-p", "P(1)xP(1)", "--split", "3,0"][..],
        &["verify", "--equations", "/nonexistent/file.eq", "-s", "1"][..],
        &["analyze", "-p", "P(1)", "--format", "yaml"][..],
    ] {
        let out = secant(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.eq");
    fs::write(&path, "# profile: P(1)xP(1)\ny[1,0;1,0] + 2*z\n").unwrap();
    let out = secant(&["verify", "--equations", path.to_str().unwrap(), "-s", "1"]);
    assert_eq!(out.status.code(), Some(1));
}
