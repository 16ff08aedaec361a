use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scherk-costa")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn every_subcommand_documents_units_and_region() {
    for sub in ["solve", "sweep", "mesh", "family", "period-gap"] {
        let o = run(&[sub, "--help"]);
        assert_eq!(code(&o), 0, "{sub}");
        let h = stdout(&o);
        assert!(h.contains("radians"), "{sub}");
        assert!(h.contains("sin(rho) in [-0.01, 0)") && h.contains("lambda >= 1") && h.contains("r0"), "{sub}");
        assert!(h.contains("--threads"), "{sub}");
    }
    for sub in ["costa", "verify"] {
        let o = run(&[sub, "--help"]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains("--threads"));
    }
    assert!(stdout(&run(&["costa", "--help"])).contains("mu0"));
    assert!(stdout(&run(&["verify", "--help"])).contains("lemma83"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["solve"])), 2);
    assert_eq!(code(&run(&["solve", "--rho", "0.3"])), 2);
    assert_eq!(code(&run(&["solve", "--rho", "abc"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&run(&["mesh", "--rho", "-0.005", "--out", "x.stl"])), 2);
    assert_eq!(code(&run(&["family", "--s", "1.5", "--mu", "1", "--out", "x.obj"])), 2);
    let bad_env = Command::new(env!("CARGO_BIN_EXE_scherk-costa"))
        .args(["solve", "--rho", "-0.005"])
        .env("SCHERK_COSTA_QUAD_REL_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(code(&bad_env), 2);
}

#[test]
fn solve_prints_a_loadable_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let o = run(&["--threads", "1", "solve", "--rho", "-0.005", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = scherk_costa::solver::SolvedSurface::load(&path).unwrap();
    assert!((s.params.lambda - 102.15584830933979).abs() < 1e-6);

    let mesh = dir.path().join("m.ply");
    let o = run(&["mesh", "--solved-file", path.to_str().unwrap(), "--out", mesh.to_str().unwrap(), "--cells", "24", "--cells-per-hole", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("m.ply.json")).unwrap()).unwrap();
    assert_eq!(side["rho"], -0.005);
    assert!(side["period"][1].as_f64().unwrap() > 0.0);
}

#[test]
fn sweep_writes_the_csv_header() {
    let o = run(&["sweep", "--rho", "-0.005", "--lambda", "1,2", "--r-min", "0.05", "--r-max", "0.15", "--steps", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "lambda,r,cap_r,c1,c2,c3,c3_tilde,c1_lo,c1_hi,c3t_lo,c3t_hi,flags");
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn period_gap_reports_json() {
    let rho = (-0.05f64).asin().to_string();
    let o = run(&["period-gap", "--rho", &rho, "--lambda", "1.3", "--r", "0.2", "--c", "4.062126450543475"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["gap"].as_f64().unwrap() - 1.039999211589669659).abs() < 1e-10);
    assert_eq!(v["in_supported_region"], false);
}

#[test]
fn verify_exit_code_follows_the_suite() {
    assert_eq!(code(&run(&["verify", "--suite", "lemma83"])), 0);
    // the end-box check of the bounds suite does not hold everywhere
    assert_eq!(code(&run(&["verify", "--suite", "bounds"])), 1);
}

#[test]
fn costa_and_family_write_meshes() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.obj");
    let o = run(&["costa", "--out", c.to_str().unwrap(), "--cells", "32"]);
    assert_eq!(code(&o), 0);
    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("c.obj.json")).unwrap()).unwrap();
    assert_eq!(side["surface"], "costa");
    let f = dir.path().join("f.obj");
    let o = run(&["family", "--s", "0.9", "--mu", "0.5", "--out", f.to_str().unwrap(), "--cells", "24", "--cells-per-hole", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("f.obj.json")).unwrap()).unwrap();
    assert_eq!(side["gauss_regions"]["near_branch"]["violations"], 0);
}
