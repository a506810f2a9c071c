use std::ops::ControlFlow;
use std::path::Path;
use std::process::{Command, Output};

use griesmer_core::constructions::{hexacode, ovoid, unital};
use griesmer_core::gcode::{read_gcode, write_gcode};
use griesmer_core::report::analyze;
use griesmer_core::{FqMatrix, LinearCode};

fn griesmer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_griesmer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_write_read_analyze_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (vec!["hexacode"], hexacode().unwrap()),
        (vec!["ovoid", "3"], ovoid(3).unwrap()),
        (vec!["unital", "2"], unital(2).unwrap()),
    ];
    for (i, (args, code)) in cases.into_iter().enumerate() {
        let file = dir.path().join(format!("c{i}.gcode"));
        let mut full = vec!["construct"];
        full.extend(&args);
        full.extend(["-o", path_str(&file)]);
        assert!(griesmer(&full).status.success());
        let out = griesmer(&["analyze", path_str(&file)]);
        assert_eq!(out.status.code(), Some(0));
        let in_memory = analyze(&code, "memory").unwrap().render();
        assert_eq!(stdout(&out), in_memory, "{args:?}");
    }
}

#[test]
fn analyze_hexacode_reports_distance_and_divisor() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.gcode");
    griesmer(&["construct", "hexacode", "-o", path_str(&file)]);
    let text = stdout(&griesmer(&["analyze", path_str(&file)]));
    assert!(text.contains("d = 4\n"));
    assert!(text.contains("divisor = 2\n"));
    let json: serde_json::Value =
        serde_json::from_slice(&griesmer(&["analyze", path_str(&file), "--json"]).stdout).unwrap();
    assert_eq!(json["weight_distribution"]["4"], 45);
}

#[test]
fn usage_and_format_errors_exit_two() {
    assert_eq!(griesmer(&["analyze", "missing.gcode"]).status.code(), Some(2));
    assert_eq!(griesmer(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(griesmer(&["construct", "simplex", "2"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gcode");
    std::fs::write(&bad, "GCODE 1\nfield p=2 f=1 mod=1,1\ncode k=1 n=2\n1 x\n").unwrap();
    let out = griesmer(&["analyze", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
}

#[test]
fn verify_corpus_passes_and_json_keeps_key_order() {
    let out = griesmer(&["verify", "--corpus", "--theorems", "t1.5"]);
    assert_eq!(out.status.code(), Some(0));

    let out = griesmer(&["verify", "--corpus", "--theorems", "t1.6,conj1", "--json", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let keys = [
        "\"theorem\"",
        "\"kind\"",
        "\"code\"",
        "\"claimed_divisor\"",
        "\"observed_divisor\"",
        "\"status\"",
        "\"witness\"",
    ];
    let first = text.split("},").next().unwrap();
    let positions: Vec<usize> = keys.iter().map(|k| first.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    let verdicts: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    assert!(verdicts.iter().all(|v| v["status"] != "fail"));
}

#[test]
fn basis_verify_flags_a_bad_first_row() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.gcode");
    // Hexacode re-based so that a weight-6 word comes first.
    let h = hexacode().unwrap();
    let mut six = None;
    h.for_each_codeword(|_, w| {
        if w.iter().all(|&v| v != 0) {
            six = Some(w.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .unwrap();
    let six = six.unwrap();
    let keep = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .find_map(|(i, j)| {
            let rows = vec![six.clone(), h.gen().row(i).to_vec(), h.gen().row(j).to_vec()];
            let m = FqMatrix::from_rows(&rows).unwrap();
            (m.rank(h.field()) == 3).then_some(m)
        })
        .unwrap();
    let rebased = LinearCode::new(h.field().clone(), keep).unwrap();
    std::fs::write(&file, write_gcode(&rebased)).unwrap();
    assert!(read_gcode(&file).unwrap().is_griesmer().unwrap());
    let out = griesmer(&["basis", "--verify", path_str(&file)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("prefix-1"));

    let rebased = dir.path().join("b.gcode");
    let out = griesmer(&["basis", path_str(&file), "-o", path_str(&rebased)]);
    assert_eq!(out.status.code(), Some(0));
    let out = griesmer(&["basis", "--verify", path_str(&rebased)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn geometry_spectrum_format() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.gcode");
    griesmer(&["construct", "simplex", "2", "3", "-o", path_str(&file)]);
    let text = stdout(&griesmer(&["geometry", "spectrum", path_str(&file)]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    for (i, l) in lines[..7].iter().enumerate() {
        assert_eq!(*l, format!("{i} 3"));
    }
    assert_eq!(lines[7], "gamma=1 endpoints=7");
}

#[test]
fn derive_outputs_griesmer_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.gcode");
    griesmer(&["construct", "hexacode", "-o", path_str(&file)]);
    let res = dir.path().join("r.gcode");
    assert!(griesmer(&["derive", "residual", path_str(&file), "-o", path_str(&res)])
        .status
        .success());
    let r = read_gcode(&res).unwrap();
    assert_eq!((r.n(), r.k(), r.min_distance().unwrap()), (2, 2, 1));
    let sh = dir.path().join("s.gcode");
    assert!(griesmer(&["derive", "shortened", path_str(&file), "-o", path_str(&sh)])
        .status
        .success());
    let s = read_gcode(&sh).unwrap();
    assert_eq!((s.n(), s.k(), s.min_distance().unwrap()), (5, 2, 4));
}

#[test]
fn ward_and_padic_commands() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.gcode");
    griesmer(&["construct", "hexacode", "-o", path_str(&file)]);
    let text = stdout(&griesmer(&["ward", path_str(&file), "--max-e", "3"]));
    assert!(text.starts_with("exponent = 1 "));
    let text = stdout(&griesmer(&[
        "ward",
        path_str(&file),
        "--max-e",
        "2",
        "--mode",
        "bounded",
        "--max-len",
        "3",
    ]));
    assert!(text.starts_with("exponent = 1 "));

    assert_eq!(stdout(&griesmer(&["padic", "kummer", "4", "2", "2"])), "1\n");
    assert_eq!(
        stdout(&griesmer(&["padic", "csum", "2", "1", "--field", "2,2"])),
        "86\n"
    );
    assert_eq!(
        stdout(&griesmer(&["padic", "teich", "2", "--field", "3,1", "--prec", "2"])),
        "8\n"
    );
}

#[test]
fn search_smoke_and_constraints() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let out = griesmer(&[
        "search",
        "--p",
        "2",
        "--f",
        "2",
        "--k",
        "3",
        "--d",
        "4",
        "--strategy",
        "exhaustive",
        "--budget",
        "1000000",
        "--no-recipe",
        "--out",
        path_str(&out_dir),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let found = read_gcode(out_dir.join("found-000.gcode")).unwrap();
    assert!(found.is_griesmer().unwrap());
    assert_eq!((found.n(), found.k(), found.min_distance().unwrap()), (6, 3, 4));

    let out = griesmer(&["search", "--p", "7", "--f", "1", "--k", "4", "--d", "49"]);
    assert_eq!(out.status.code(), Some(2));

    let out = griesmer(&[
        "search", "--p", "2", "--f", "3", "--k", "4", "--d", "16", "--budget", "0", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["examined"], 0);
    assert_eq!(report["codes"].as_array().unwrap().len(), 0);
}
