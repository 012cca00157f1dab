use std::process::{Command, Output};

use osp_yangian::{k_op, permutation_op, GradedMatrix, Rational, SuperSpace};
use osp_yangian_cli::formats::{to_pretty, MatrixJson, ModeSeriesJson, ReportJson, SpaceJson};
use osp_yangian_cli::runner::{run, Selection, Suite};

fn yangian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yangian")).args(args).output().expect("run yangian")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn passing_selection_exits_zero() {
    let o = yangian(&["verify", "--M", "1", "--N", "2", "--theta0", "+1", "--suites", "ybe,rtt,center", "--sites", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.matches("PASS").count(), 3);
    assert!(out.contains("3 cell(s), 0 failed"));
}

#[test]
fn odd_n_is_a_usage_error() {
    let o = yangian(&["verify", "--M", "3", "--N", "1", "--suites", "ybe"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("N must be even"));
    assert!(stderr(&o).contains("--N"));
}

#[test]
fn kappa_override_fails_yang_baxter() {
    let o = yangian(&["verify", "--M", "3", "--N", "0", "--theta0", "+1", "--suites", "ybe", "--kappa-override", "3/2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL"));
    assert!(out.contains("KAPPA OVERRIDDEN"));
    assert!(out.contains("witness"));
}

#[test]
fn bad_parameters_name_their_field() {
    let cases: [(&[&str], &str); 6] = [
        (&["verify", "--M", "3", "--N", "0", "--suites", "nope"], "--suites"),
        (&["verify", "--M", "3", "--N", "0", "--theta0", "2"], "--theta0"),
        (&["verify", "--M", "3,1", "--N", "0"], "--N"),
        (&["verify", "--M", "3", "--N", "0", "--suites", "modes", "--nmax", "3"], "--nmax"),
        (&["verify", "--M", "3", "--N", "0", "--suites", "rtt", "--inhomogeneities", "0,1"], "--inhomogeneities"),
        (&["verify", "--M", "3", "--N", "0", "--kappa-override", "x"], "--kappa-override"),
    ];
    for (args, field) in cases {
        let o = yangian(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(field), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn json_reports_carry_the_schema() {
    let o = yangian(&["verify", "--M", "0", "--N", "2", "--theta0", "-1", "--suites", "ybe,order1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<ReportJson> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0].suite, "ybe");
    assert_eq!(reports[0].spec, SpaceJson { m: 0, n: 2, theta0: -1 });
    assert_eq!(reports[0].kappa, "2");
    assert!(reports[0].representation.is_none());
    assert_eq!(reports[1].representation.as_ref().unwrap().inhomogeneities, ["0"]);
    assert!(reports.iter().all(|r| r.pass && r.results.iter().all(|x| x.pass && x.witness.is_none())));
    assert!(!stdout(&o).contains("time"));
}

#[test]
fn out_dir_gets_one_file_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let o = yangian(&[
        "verify", "--M", "3,0", "--N", "0,2", "--theta0", "1,-1", "--suites", "pk,rsrs-S", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut names: Vec<String> =
        std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["M0-N2-m1_pk.json", "M0-N2-m1_rsrs-S.json", "M3-N0-p1_pk.json", "M3-N0-p1_rsrs-S.json"]);
}

#[test]
fn cells_are_ordered_by_spec_then_suite() {
    let specs = vec![SuperSpace::new(3, 0, 1).unwrap(), SuperSpace::new(0, 2, -1).unwrap()];
    let cells = run(&Selection::new(specs, vec![Suite::Unitarity, Suite::Pk]).with_jobs(3)).unwrap();
    let order: Vec<(usize, &str)> = cells.iter().map(|c| (c.report.space.m(), c.suite.name())).collect();
    assert_eq!(order, [(0, "pk"), (0, "unitarity"), (3, "pk"), (3, "unitarity")]);
}

#[test]
fn thread_count_does_not_change_reports() {
    let specs = vec![SuperSpace::new(1, 2, 1).unwrap(), SuperSpace::new(3, 0, 1).unwrap()];
    let sel = Selection::new(specs, Suite::ALL.to_vec());
    let one: Vec<ReportJson> = run(&sel.clone().with_jobs(1)).unwrap().iter().map(|c| c.json()).collect();
    let four: Vec<ReportJson> = run(&sel.with_jobs(4)).unwrap().iter().map(|c| c.json()).collect();
    assert_eq!(to_pretty(&one), to_pretty(&four));
}

fn export(args: &[&str]) -> String {
    let mut all = vec!["export"];
    all.extend_from_slice(args);
    let o = yangian(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    stdout(&o)
}

#[test]
fn exported_p_and_k_for_sp2() {
    let s = SuperSpace::new(0, 2, -1).unwrap();
    let p: MatrixJson = serde_json::from_str(&export(&["--M", "0", "--N", "2", "--theta0", "-1", "--which", "P"])).unwrap();
    assert_eq!(p.factors, 2);
    assert_eq!(p.entries.len(), 4);
    assert_eq!(p.to_matrix().unwrap(), permutation_op(s));
    let k: MatrixJson = serde_json::from_str(&export(&["--M", "0", "--N", "2", "--theta0", "-1", "--which", "K"])).unwrap();
    let want: Vec<(Vec<usize>, Vec<usize>, String)> = vec![
        (vec![1, 2], vec![1, 2], "1".into()),
        (vec![1, 2], vec![2, 1], "-1".into()),
        (vec![2, 1], vec![1, 2], "-1".into()),
        (vec![2, 1], vec![2, 1], "1".into()),
    ];
    assert_eq!(k.entries, want);
    assert_eq!(k.to_matrix().unwrap(), k_op(s));
}

#[test]
fn exported_r_at_two_for_so3() {
    let r: MatrixJson = serde_json::from_str(&export(&["--M", "3", "--N", "0", "--which", "R", "--u0", "2"])).unwrap();
    let values: Vec<Rational> = r.entries.iter().map(|e| e.2.parse().unwrap()).collect();
    assert!(values.contains(&Rational::new(3, 2)));
    assert!(values.contains(&Rational::new(-2, 5)));
    let dens: std::collections::BTreeSet<String> =
        values.iter().filter(|v| !v.is_integer()).map(|v| v.denom().to_string()).collect();
    assert!(dens.iter().all(|d| ["2", "5", "10"].contains(&d.as_str())), "{dens:?}");
}

#[test]
fn exports_of_representation_objects() {
    for which in ["T", "S", "B"] {
        let m: MatrixJson = serde_json::from_str(&export(&[
            "--M", "1", "--N", "2", "--which", which, "--u0", "5/3", "--inhomogeneities", "0,1/3",
        ]))
        .unwrap();
        assert_eq!(m.factors, 3, "{which}");
        let back: GradedMatrix = m.to_matrix().unwrap();
        assert!(back.nnz() > 0);
    }
    let modes: ModeSeriesJson =
        serde_json::from_str(&export(&["--M", "0", "--N", "2", "--theta0", "-1", "--which", "modes", "--nmax", "3"])).unwrap();
    assert_eq!(modes.n_max, 3);
    assert_eq!(modes.modes.iter().map(|m| m.n).collect::<Vec<_>>(), [0, 1, 2, 3]);
    assert_eq!(modes.representation.sites, 1);
}

#[test]
fn export_errors() {
    let o = yangian(&["export", "--M", "3", "--N", "0", "--which", "R", "--u0", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--u0"));
    let o = yangian(&["export", "--M", "3", "--N", "0", "--which", "R"]);
    assert_eq!(o.status.code(), Some(2));
    let o = yangian(&["export", "--M", "3", "--N", "0", "--which", "Q"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let o = yangian(&["export", "--M", "2", "--N", "2", "--which", "P", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let m: MatrixJson = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(m.spec, SpaceJson { m: 2, n: 2, theta0: 1 });
}

#[test]
fn space_json_round_trip() {
    let s = SuperSpace::new(3, 2, -1).unwrap();
    let text = serde_json::to_string(&SpaceJson::from(s)).unwrap();
    assert_eq!(text, r#"{"M":3,"N":2,"theta0":-1}"#);
    let back: SpaceJson = serde_json::from_str(&text).unwrap();
    assert_eq!(SuperSpace::try_from(back).unwrap(), s);
    let odd: SpaceJson = serde_json::from_str(r#"{"M":1,"N":3,"theta0":1}"#).unwrap();
    assert!(SuperSpace::try_from(odd).is_err());
}
