use std::path::{Path, PathBuf};
use std::process::Command;

use relext::cli::{cache_key, emit, exit_code, parse_machine, run, Format, JobSpec, Kind};
use relext::error::Error;
use relext::verify::Finding;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn relext(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_relext")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn group_job_over_f2() {
    let p = data("z2_f2.json");
    let (code, out, _) = relext(&["group", p.to_str().unwrap(), "--max-degree", "4", "--format", "machine"]);
    assert_eq!(code, 0);
    assert_eq!(parse_machine(&out).unwrap().dims, vec![1, 1, 1, 1, 1]);
}

#[test]
fn malformed_cayley_table_exits_with_one() {
    let p = data("bad_cayley.json");
    let (code, _, err) = relext(&["group", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("associativity violated at ("), "{err}");
}

#[test]
fn verify_job_on_cyclic_three() {
    let p = data("z3_regular.json");
    let (code, out, _) = relext(&["verify", p.to_str().unwrap(), "--max-degree", "2", "--format", "machine"]);
    assert_eq!(code, 0);
    let t = parse_machine(&out).unwrap();
    assert!(!t.findings.is_empty() && t.all_passed());
}

#[test]
fn insufficient_truncation_exits_with_two() {
    let p = data("z2_f2.json");
    let (code, _, err) = relext(&["group", p.to_str().unwrap(), "--max-degree", "4", "--truncation", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("truncation insufficient"));
}

#[test]
fn failed_identity_check_exits_with_three() {
    let mut t = run(&JobSpec::new(Kind::Validate, data("sl2.json"), 1)).unwrap();
    assert_eq!(exit_code(&Ok(t.clone())), 0);
    t.findings.push(Finding { name: "x".into(), passed: false, detail: None });
    assert_eq!(exit_code(&Ok(t)), 3);
    assert_eq!(exit_code(&Err(Error::VerificationFailed("x".into()))), 3);
}

#[test]
fn machine_output_is_deterministic() {
    let p = data("sl2.json");
    let a = relext(&["eqext", p.to_str().unwrap(), "--max-degree", "3", "--format", "machine"]);
    let b = relext(&["eqext", p.to_str().unwrap(), "--max-degree", "3", "--format", "machine", "--threads", "1"]);
    assert_eq!(a, b);
    assert_eq!(parse_machine(&a.1).unwrap().dims, vec![1, 0, 0, 0]);
}

#[test]
fn scalar_flag_overrides_the_file() {
    let p = data("z2_f2.json");
    let (code, out, _) = relext(&["group", p.to_str().unwrap(), "--scalar", "Q", "--max-degree", "3", "--format", "machine"]);
    assert_eq!(code, 0);
    let t = parse_machine(&out).unwrap();
    assert_eq!((t.scalar.as_str(), t.dims), ("Q", vec![1, 0, 0, 0]));
}

#[test]
fn cache_is_transparent_and_detects_poisoning() {
    let dir = tempfile::tempdir().unwrap();
    let mut spec = JobSpec::new(Kind::Group, data("z2_f2.json"), 3);
    spec.cache_dir = Some(dir.path().to_path_buf());
    let first = run(&spec).unwrap();
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = run(&spec).unwrap();
    assert_eq!(first, second);

    let bytes = std::fs::read(&spec.input).unwrap();
    let key = cache_key(&spec, &bytes);
    let mut deeper = spec.clone();
    deeper.truncation = Some(5);
    assert_ne!(key, cache_key(&deeper, &bytes));

    let path = dir.path().join(format!("{key}.result"));
    let poisoned = std::fs::read_to_string(&path).unwrap().replace("dim.1=1", "dim.1=7");
    std::fs::write(&path, poisoned).unwrap();
    assert_eq!(run(&spec).unwrap(), first);
    // The recomputed entry replaced the poisoned one.
    assert!(std::fs::read_to_string(&path).unwrap().contains("dim.1=1"));
}

#[test]
fn table_format_lists_zero_rows() {
    let t = run(&JobSpec::new(Kind::Lie, data("sl2.json"), 3)).unwrap();
    let s = emit(&t, Format::Table);
    assert_eq!(s.lines().filter(|l| l.split_whitespace().nth(1) == Some("0")).count(), 2);
}

#[test]
fn every_subcommand_runs() {
    for (kind, file, deg) in [
        (Kind::Groupoid, "gauge3_sign.json", 2),
        (Kind::Mc, "abelian1.json", 4),
        (Kind::Lr, "euler_dual_numbers.json", 2),
        (Kind::LrEquivariant, "euler_dual_numbers.json", 2),
        (Kind::Validate, "euler_dual_numbers.json", 0),
        (Kind::Validate, "gauge3_sign.json", 0),
    ] {
        let t = run(&JobSpec::new(kind, data(file), deg)).unwrap();
        assert!(t.all_passed(), "{kind:?}");
    }
    let t = run(&JobSpec::new(Kind::Mc, data("abelian1.json"), 4)).unwrap();
    assert_eq!(t.dims, vec![1, 0, 1, 0, 1]);
}
