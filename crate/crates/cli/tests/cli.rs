use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", rel].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cellsheaf"));
    cmd.args(args).env_remove("FIELD");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compact_cohomology_of_open_interval() {
    let o = run(&["cohomology", "--compact", &corpus("cohomology/open_interval.txt")], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H^0_c = 0\nH^1_c = 1\n");
}

#[test]
fn ordinary_cohomology_of_open_interval() {
    let o = run(&["cohomology", &corpus("cohomology/open_interval.txt")], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H^0 = 1\nH^1 = 0\n");
}

#[test]
fn mobile_sensor_barcode() {
    let o = run(&["barcode", &corpus("barcodes/mobile_sensor.txt")], &[]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("bars = 3\n"));
    assert!(out.contains("[x, w] kind=cc mult=1"));
}

#[test]
fn broken_sign_fails_validation() {
    let o = run(&["validate", &corpus("validation/sign_broken_square.txt")], &[]);
    assert_eq!(o.status.code(), Some(1));
    let all = format!("{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    assert!(all.contains("v0 < s"), "{all}");
}

#[test]
fn computing_on_invalid_input_exits_1() {
    let o = run(&["cohomology", &corpus("validation/sign_broken_square.txt")], &[]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_document_exits_2() {
    let o = run(&["validate", &corpus("errors/bad_sign.txt")], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6"));
}

#[test]
fn missing_file_and_bad_field_exit_2() {
    assert_eq!(run(&["validate", "/nonexistent/x.txt"], &[]).status.code(), Some(2));
    let f = corpus("cohomology/open_interval.txt");
    assert_eq!(run(&["--field", "F4", "cohomology", &f], &[]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", &f], &[("FIELD", "Z")]).status.code(), Some(2));
}

#[test]
fn valid_documents_validate() {
    for f in ["cech/triangle_nerve.txt", "functors/to_circle.txt", "netcode/nc_one.txt", "sensing/red_circle.txt"] {
        let o = run(&["validate", &corpus(f)], &[]);
        assert_eq!(o.status.code(), Some(0), "{f}");
        assert!(stdout(&o).starts_with("ok"));
    }
}

#[test]
fn field_flag_beats_env_beats_document() {
    // over F2 the twisted circle looks constant
    let f = corpus("duality/circle_twisted.txt");
    let q = stdout(&run(&["cohomology", &f], &[]));
    let f2_env = stdout(&run(&["cohomology", &f], &[("FIELD", "F2")]));
    let flag = stdout(&run(&["--field", "Q", "cohomology", &f], &[("FIELD", "F2")]));
    assert_eq!(q, "H^0 = 0\nH^1 = 0\n");
    assert_eq!(f2_env, "H^0 = 1\nH^1 = 1\n");
    assert_eq!(flag, q);
}

#[test]
fn output_is_deterministic() {
    let args = ["push", "--functor", "shriek", "--map", &corpus("functors/to_circle.txt")];
    let mut a = args.to_vec();
    let s = corpus("functors/broken_circle_sheaf.txt");
    a.push(&s);
    let first = stdout(&run(&a, &[]));
    for _ in 0..3 {
        assert_eq!(stdout(&run(&a, &[])), first);
    }
    assert!(first.contains("map x b rows=[[0, 0]]"));
}

#[test]
fn cech_of_two_sets() {
    let o = run(&["cech", &corpus("cech/two_set_cover.txt")], &[]);
    assert_eq!(stdout(&o), "H_0 = 1\nH_1 = 2\n");
}

#[test]
fn netcode_check_passes_on_nc_one() {
    let o = run(&["netcode", "check", &corpus("netcode/nc_one.txt")], &[]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sheaf_homology_of_two_wires() {
    let o = run(&["derived", "--functor", "sheaf-homology", &corpus("netcode/two_decoding_wires.txt")], &[]);
    assert_eq!(stdout(&o), "L_0p_+ = 0\nL_1p_+ = 8\n");
}

#[test]
fn equivalence_matches_compact_cohomology() {
    let o = run(&["equivalence", &corpus("cohomology/open_interval.txt")], &[]);
    let out = stdout(&o);
    assert!(out.contains("H^1_c(F) = 1  H_-1(P(F)) = 1"), "{out}");
}

#[test]
fn wrong_document_kind_exits_1() {
    let o = run(&["barcode", &corpus("functors/to_point.txt")], &[]);
    assert_eq!(o.status.code(), Some(1));
}
