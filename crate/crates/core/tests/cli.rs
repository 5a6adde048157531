use std::process::Command as Process;

use germcat::cli::{gallery, parse_workspace, run, Command, Document, Flags, Record, Status};

fn germcat(args: &[&str], stdin_file: Option<&str>) -> (i32, String, String) {
    let mut cmd = Process::new(env!("CARGO_BIN_EXE_germcat"));
    cmd.args(args);
    let dir;
    if let Some(text) = stdin_file {
        dir = std::env::temp_dir().join(format!("germcat-cli-{}-{}", std::process::id(), args.join("_").replace(['/', ':'], "")));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("input.doc");
        std::fs::write(&path, text).unwrap();
        cmd.arg(&path);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn every_gallery_document_passes_its_report() {
    let flags = Flags::default();
    for entry in gallery() {
        let (name, text) = (&entry.name, entry.text);
        assert!(!entry.provenance.is_empty(), "{name} lacks a provenance line");
        let (_, w) = parse_workspace(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let records = run(Command::Report, name, &w, &flags).unwrap();
        assert!(!records.is_empty(), "{name}");
        let failed: Vec<&Record> = records.iter().filter(|r| r.status == Status::Fail).collect();
        assert!(failed.is_empty(), "{name}: {failed:?}");
    }
    let names: Vec<&str> = gallery().iter().map(|e| e.name).collect();
    assert!(names.len() >= 8);
    for required in ["finset2", "sierpinski-arrow", "product-frechet-shadow"] {
        assert!(names.contains(&required));
    }
}

#[test]
fn documents_round_trip_through_display() {
    let flags = Flags::default();
    for entry in gallery() {
        let (name, text) = (&entry.name, entry.text);
        let (doc, w) = parse_workspace(text).unwrap();
        let printed = doc.to_string();
        let (again, w2) = parse_workspace(&printed).unwrap();
        assert_eq!(doc, again, "{name}");
        assert_eq!(printed, again.to_string(), "{name}");
        assert_eq!(run(Command::Report, name, &w, &flags).unwrap(), run(Command::Report, name, &w2, &flags).unwrap(), "{name}");
    }
}

#[test]
fn parse_errors_carry_positions() {
    let cases = [
        ("[category c]\nbuiltin = finset(2)\n  nonsense\n", (3, 3)),
        ("[category c]\nbuiltin = finset(9)\n", (2, 11)),
        ("[filter f]\ncategory = missing\nprincipal = 1\n", (2, 12)),
        ("[category c]\nbuiltin = finset(2)\n[filter f]\ncategory = c\nprincipal = 7\n", (5, 13)),
        ("[category c]\nbuiltin = finset(2)\ncolour = blue\n", (3, 10)),
    ];
    for (text, (line, column)) in cases {
        let e = parse_workspace(text).unwrap_err();
        assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}");
        let e2 = text.parse::<Document>().and_then(|d| germcat::cli::Workspace::resolve(&d)).unwrap_err();
        assert_eq!(e, e2);
    }
}

#[test]
fn exit_codes() {
    let (code, out, _) = germcat(&["validate", "--gallery", "finset2"], None);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("0 failed"));

    let bad_filter = "[category c]\nbuiltin = finset(2)\n[filter low]\ncategory = c\nmembers = 0\n";
    let (code, out, _) = germcat(&["validate"], Some(bad_filter));
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("[fail]"));

    let (code, _, err) = germcat(&["validate"], Some("[category c]\nbuiltin = finset(2)\noops\n"));
    assert_eq!(code, 2);
    assert!(err.contains(":3:1:"), "{err}");
    let (code, _, _) = germcat(&["frobnicate", "--gallery", "finset2"], None);
    assert_eq!(code, 2);

    let (code, _, _) = germcat(&["sset-demo", "--gallery", "dn", "--window", "500"], None);
    assert_eq!(code, 3);
    let too_far = "[dn far]\nfamily = family tail=sphere(id)\nexpect = diverges\nwindow = 100\n";
    let (code, _, err) = germcat(&["sset-demo"], Some(too_far));
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("exceeds"), "{err}");
}

#[test]
fn records_are_json_lines_with_witnesses_on_failure() {
    let bad_filter = "[category c]\nbuiltin = finset(2)\n[filter low]\ncategory = c\nmembers = 0\n";
    let (code, out, _) = germcat(&["report", "--format", "records"], Some(bad_filter));
    assert_eq!(code, 1);
    let records: Vec<Record> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(records.iter().all(|r| r.schema_version == 1 && r.millis.is_none() && !r.anchor.is_empty()));
    let failed: Vec<&Record> = records.iter().filter(|r| r.status == Status::Fail).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|r| !r.witnesses.is_empty()));

    let (_, timed, _) = germcat(&["validate", "--gallery", "finset2", "--format", "records", "--timing"], None);
    assert!(timed.lines().all(|l| serde_json::from_str::<Record>(l).unwrap().millis.is_some()));
}

#[test]
fn filter_flag_overrides_documents() {
    let (code, out, _) = germcat(&["shapes-check", "--gallery", "interval-fragment", "--filter", "principal:(0,1)"], None);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("↑(0,1)"));
    let (code, _, err) = germcat(&["shapes-check", "--gallery", "interval-fragment", "--filter", "principal:(7,7)"], None);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = germcat(&["quotient", "--gallery", "finset2", "--filter", "upward:1"], None);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic() {
    let a = germcat(&["report", "--gallery", "all", "--format", "records", "--seed", "7"], None);
    let b = germcat(&["report", "--gallery", "all", "--format", "records", "--seed", "7"], None);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn documented_invocations() {
    let gallery_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/gallery");
    let (code, out, _) = germcat(&["validate", &format!("{gallery_dir}/finset2.doc")], None);
    assert_eq!(code, 0, "{out}");

    let (code, out, err) = germcat(&["shapes-check", &format!("{gallery_dir}/interval-fragment.doc"), "--filter", "principal:(1,empty)"], None);
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.contains("[pass] shapes-check quotient fragment: ↑(1,0)"), "{out}");
    assert!(out.contains("[pass] shapes-check interval fragment"), "{out}");

    let (code, out, _) = germcat(&["sset-demo", &format!("{gallery_dir}/dn.doc"), "--window", "50"], None);
    assert_eq!(code, 0, "{out}");
    let expected: Vec<String> = (0..=50).map(|n| (n / 2).to_string()).collect();
    assert!(out.contains(&format!("d = [{}]", expected.join(", "))), "{out}");

    let (code, out, _) = germcat(&["gallery"], None);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), gallery().len());
    assert!(out.lines().all(|l| l.split_whitespace().count() > 1));
}
