use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;
use torelli::format::{format_relations, parse_relations, parse_witnesses};
use torelli::presentation::{relations_comm, relations_conj, relations_h, relations_sanity};

const JOB: &str = "\
# genus 2 examples
genus = 2
boundary = 1
word.id = 1
word.t = Ta1
word.sep = [Ta1 Tb1]^6
word.bp = Ta2 Ta2 [Ta1 Tb1 Td1]^-4
word.nontorelli = Ta1 Tb1
";

fn torelli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torelli")).args(args).output().expect("binary runs")
}

fn job(dir: &TempDir, text: &str) -> PathBuf {
    let p = dir.path().join("job.txt");
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no key {key} in\n{out}"))
}

#[test]
fn symp_identity_and_transvection() {
    let dir = TempDir::new().unwrap();
    let p = job(&dir, JOB);
    let o = torelli(&["symp", p.to_str().unwrap(), "id"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "row.0"), "1 0 0 0");
    assert_eq!(value(&out, "row.3"), "0 0 0 1");
    assert_eq!(value(&out, "torelli"), "true");
    let out = stdout(&torelli(&["symp", p.to_str().unwrap(), "t"]));
    // T_α₁ sends b₁ to b₁ - a₁: column 1 is (-1, 1, 0, 0).
    assert_eq!(value(&out, "row.0"), "1 -1 0 0");
    assert_eq!(value(&out, "torelli"), "false");
}

#[test]
fn parse_errors_exit_two_with_position() {
    let dir = TempDir::new().unwrap();
    let p = job(&dir, "genus = 2\nword.x = Ta1 Tq1\n");
    let o = torelli(&["symp", p.to_str().unwrap(), "x"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2, column 14"), "{err}");
    let o = torelli(&["symp", p.to_str().unwrap(), "missing"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tau_values() {
    let dir = TempDir::new().unwrap();
    let p = job(&dir, JOB);
    let p = p.to_str().unwrap();
    let out = stdout(&torelli(&["tau", p, "sep"]));
    assert_eq!(value(&out, "tau.coords"), "0 0 0 0");
    let out = stdout(&torelli(&["tau", p, "bp"]));
    assert_eq!(value(&out, "tau"), "a1^b1^a2");
    let o = torelli(&["tau", p, "nontorelli"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("Torelli"));
    let out = stdout(&torelli(&["tau", p, "bp", "--boundary", "0"]));
    assert_eq!(value(&out, "boundary"), "0");
}

#[test]
fn tau_matches_witness_file() {
    let text = include_str!("../../core/data/witnesses_g3.txt");
    let (genus, witnesses) = parse_witnesses(text).unwrap();
    let (sym, word) = &witnesses[5];
    let dir = TempDir::new().unwrap();
    let p = job(&dir, &format!("genus = {genus}\nword.w = {word}\n"));
    let out = stdout(&torelli(&["tau", p.to_str().unwrap(), "w"]));
    assert_eq!(value(&out, "tau.coords"), torelli::LatticeVector::unit(20, sym.index())
        .coords()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" "));
}

#[test]
fn verify_suites() {
    for suite in ["lemmas", "lantern"] {
        let o = torelli(&["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let out = stdout(&o);
        let lines: Vec<&str> = out.lines().filter(|l| !l.starts_with("summary")).collect();
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(lines, sorted);
    }
    let o = torelli(&["verify", "--suite", "relations", "--genus", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(value(&out, "presentation.comm.g3").contains("190 relations"));
    assert!(value(&out, "presentation.h.g3").contains("6 relations"));
    assert!(value(&out, "presentation.conj.g3").contains("160 relations"));
    assert_eq!(torelli(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(torelli(&["verify", "lantern", "--genus", "2"]).status.code(), Some(2));
}

#[test]
fn bad_witness_file_fails_verification() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("w.txt");
    // The witness for J(a1,b1,a2) replaced by a separating twist, whose τ is 0.
    let text = include_str!("../../core/data/witnesses_g3.txt")
        .lines()
        .map(|l| if l.starts_with("witness.J(a1,b1,a2)") { "witness.J(a1,b1,a2) = [Ta1 Tb1]^6".to_string() } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n");
    std::fs::write(&p, text).unwrap();
    let o = torelli(&["verify", "relations", "--genus", "3", "--witnesses", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn relation_dump_round_trips() {
    let o = torelli(&["relations", "--genus", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let (genus, parsed) = parse_relations(&out).unwrap();
    assert_eq!(genus, 3);
    let mut expected = relations_comm(3);
    expected.extend(relations_h(3).unwrap());
    expected.extend(relations_conj(3, None).unwrap());
    expected.extend(relations_sanity(3).unwrap());
    assert_eq!(parsed, expected);
    assert_eq!(format_relations(3, &parsed), out);
}

#[test]
fn witness_search_output_parses() {
    let o = torelli(&["witnesses", "--genus", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let (genus, w) = parse_witnesses(&stdout(&o)).unwrap();
    assert_eq!((genus, w.len()), (2, 4));
}
