use std::path::Path;

use tribrot::io::ppm_bytes;
use tribrot::raster::{scan2d, Plane};
use tribrot::Window2D;
use tribrot_cli::run_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tribrot").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn slice_of_perplex_axes_equals_perplexbrot() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "a.vox"), path(dir.path(), "b.vox"));
    let common = ["--power", "3", "--res", "20", "--max-iter", "300"];
    let mut slice = vec!["slice", "--axes", "1,j1,j2", "--out", &a];
    slice.extend(common);
    let mut perplex = vec!["perplexbrot", "--out", &b];
    perplex.extend(common);
    assert_eq!(run(&slice).0, 0);
    assert_eq!(run(&perplex).0, 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn multibrot_output_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "m.ppm");
    let args = [
        "multibrot", "--power", "5", "--window", "-1.5,1.5,-1.25,1.0", "--res", "40",
        "--max-iter", "250", "--out", &out, "--threads", "3",
    ];
    assert_eq!(run(&args).0, 0);
    let w = Window2D::new((-1.5, 1.5), (-1.25, 1.0), 40, 40).unwrap();
    let r = scan2d(Plane::MultibrotComplex, 5, &w, 250).unwrap();
    assert_eq!(std::fs::read(&out).unwrap(), ppm_bytes(&r));
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<String> = ["1", "5"]
        .iter()
        .map(|t| {
            let out = path(dir.path(), &format!("h{t}.ppm"));
            let args = ["hyperbrot", "--res", "48", "--max-iter", "300", "--out", &out, "--threads", t];
            assert_eq!(run(&args).0, 0);
            out
        })
        .collect();
    assert_eq!(std::fs::read(&files[0]).unwrap(), std::fs::read(&files[1]).unwrap());
}

#[test]
fn perplexbrot_writes_octahedron_obj() {
    let dir = tempfile::tempdir().unwrap();
    let (vox, obj) = (path(dir.path(), "p.vox"), path(dir.path(), "p.obj"));
    let args = ["perplexbrot", "--res", "8", "--max-iter", "50", "--out", &vox, "--obj", &obj];
    assert_eq!(run(&args).0, 0);
    let text = std::fs::read_to_string(&obj).unwrap();
    assert!(text.starts_with("v 0.384900179 0.000000000 0.000000000\n"));
    assert!(std::fs::read(&vox).unwrap().starts_with(b"TRIVOX1 8 8 8 -1 1 -1 1 -1 1\n"));

    let even = ["perplexbrot", "--power", "4", "--res", "8", "--out", &vox, "--obj", &obj];
    assert_eq!(run(&even).0, 1);
}

#[test]
fn roots_prints_csv() {
    let (code, out, err) = run(&["roots", "--power", "3", "--c", "-0.2"]);
    assert_eq!(code, 0);
    assert!(err.contains("three-simple"));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "value,multiplicity,bracket_lo,bracket_hi");
    assert_eq!(lines.len(), 4);
    assert_eq!(run(&["roots", "--power", "4", "--c", "0.1"]).0, 1);
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "report.csv");
    let (code, _, err) = run(&["verify", "--suite", "algebra", "--out", &out]);
    assert_eq!(code, 0, "{err}");
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("suite,check,expected,observed,tolerance,pass\n"));
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn flag_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "x.vox");
    let cases: Vec<Vec<&str>> = vec![
        vec!["slice", "--axes", "1,j1,k9", "--out", &out],
        vec!["slice", "--axes", "1,j1,j1", "--out", &out],
        vec!["slice", "--axes", "1,j1", "--out", &out],
        vec!["multibrot", "--window", "-1,1,1", "--out", &out],
        vec!["multibrot", "--window", "1,-1,-1,1", "--out", &out],
        vec!["multibrot", "--res", "0", "--out", &out],
        vec!["hyperbrot", "--power", "1", "--out", &out],
        vec!["hyperbrot", "--threads", "0", "--out", &out],
        vec!["multibrot"],
        vec!["verify", "--suite", "everything"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let (code, _, err) = run(&args);
        assert_eq!(code, 1, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    assert!(!Path::new(&out).exists());
}

#[test]
fn unwritable_output_exits_one_with_path() {
    let (code, _, err) = run(&["hyperbrot", "--res", "4", "--out", "/nonexistent-dir/h.ppm"]);
    assert_eq!(code, 1);
    assert!(err.contains("/nonexistent-dir/h.ppm"));
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("perplexbrot"));
    assert_eq!(run(&["--version"]).0, 0);
}
