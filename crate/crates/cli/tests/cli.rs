use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qhomfly::oracle::{homfly, plat_diagram, ENGINE_CONVENTION, ENGINE_STYLE};
use qhomfly::qcomb::unknot_colored;
use qhomfly::skein::natural_start;
use qhomfly::{QScalar, Substitution, TwoBridgeLink, ENGINE_VERSION};
use serde_json::Value;
use tempfile::TempDir;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhomfly"))
        .args(args)
        .env("QH_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn value_of(record: &Value) -> QScalar {
    serde_json::from_value(record["value"].clone()).unwrap()
}

#[test]
fn trefoil_fundamental_matches_homfly_oracle() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["eval", "--cf", "3", "--color", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let link = TwoBridgeLink::from_fraction(3, 1).unwrap();
    let d = plat_diagram(&link.cf, natural_start(&link), ENGINE_STYLE);
    let expected = homfly(&d, ENGINE_CONVENTION).canonicalize().unwrap();
    assert_eq!(stdout(&out).trim(), expected.to_string());
}

#[test]
fn color_zero_is_one() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["eval", "--fraction", "7/2", "--color", "0"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn hopf_link_two_color_record_is_frozen() {
    let dir = TempDir::new().unwrap();
    let args = ["eval", "--cf", "2", "--color", "2", "--specialize", "i=3", "--format", "json"];
    let out = run(dir.path(), &args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let fixture = fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/hopf_i3_j2.json")).unwrap();
    assert_eq!(stdout(&out), fixture);

    let record: Value = serde_json::from_str(&fixture).unwrap();
    assert_eq!(record["components"], 2);
    assert_eq!(record["specialization"], "i=3");
    let v = value_of(&record);
    assert!(!v.involves_s());
    // For sl_3 the third exterior power is trivial, so the Hopf link reduces
    // to the unknot in the second exterior power.
    let at3 = Substitution::a_to_q_pow(3);
    assert_eq!(
        v.substitute(&at3).unwrap().canonicalize().unwrap(),
        unknot_colored(2).substitute(&at3).unwrap().canonicalize().unwrap()
    );
    // For sl_2 the third exterior power vanishes.
    assert!(v.substitute(&Substitution::a_to_q_pow(2)).unwrap().is_zero());
}

#[test]
fn cache_hit_is_byte_identical_and_keyed_by_engine_version() {
    let dir = TempDir::new().unwrap();
    let args = ["eval", "--cf", "2,2", "--color", "3", "--format", "json"];
    let fresh = run(dir.path(), &args);
    assert_eq!(code(&fresh), 0);
    let entries: Vec<_> = fs::read_dir(dir.path().join(format!("v{ENGINE_VERSION}")))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert_eq!(entries.len(), 1);
    assert!(entries[0].starts_with("cf2-2_j3_") && entries[0].ends_with("_canonical.json"), "{entries:?}");
    let cached = run(dir.path(), &args);
    assert_eq!(stdout(&cached), stdout(&fresh));

    let no_cache = Command::new(env!("CARGO_BIN_EXE_qhomfly"))
        .args(["--no-cache"])
        .args(args)
        .env("QH_CACHE", dir.path().join("elsewhere"))
        .output()
        .unwrap();
    assert_eq!(stdout(&no_cache), stdout(&fresh));
    assert!(!dir.path().join("elsewhere").exists());
}

#[test]
fn cache_is_consulted_and_corrupt_entries_are_recomputed() {
    let dir = TempDir::new().unwrap();
    let args = ["eval", "--cf", "3", "--color", "2", "--format", "json"];
    let fresh = stdout(&run(dir.path(), &args));
    let entry = dir.path().join(format!("v{ENGINE_VERSION}")).join("cf3_j2_up_canonical.json");

    let planted = fresh.trim().replace("\"color\":2", "\"color\":2,\"planted\":true");
    let planted = planted.replacen("\"fraction\":\"3/1\"", "\"fraction\":\"planted\"", 1);
    fs::write(&entry, &planted).unwrap();
    assert_eq!(stdout(&run(dir.path(), &args)).trim(), planted);

    fs::write(&entry, "not json").unwrap();
    assert_eq!(stdout(&run(dir.path(), &args)), fresh);
    assert_eq!(fs::read_to_string(&entry).unwrap(), fresh.trim());
}

#[test]
fn unknot_sequence_is_all_ones() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["sequence", "--cf", "1", "--max-color", "5"]);
    assert_eq!(code(&out), 0);
    let records: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(records.len(), 6);
    for (j, r) in records.iter().enumerate() {
        assert_eq!(r["color"], j);
        assert_eq!(value_of(r), QScalar::one());
    }
}

#[test]
fn trefoil_sequence_grows_and_reruns_identically() {
    let dir = TempDir::new().unwrap();
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    for path in [&first, &second] {
        let out = run(dir.path(), &["sequence", "--cf", "3", "--max-color", "20", "--out", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    let text = fs::read_to_string(&first).unwrap();
    assert_eq!(text, fs::read_to_string(&second).unwrap());
    let records: Vec<Value> = serde_json::from_str(&text).unwrap();
    assert_eq!(records.len(), 21);
    let sizes: Vec<usize> = records.iter().map(|r| value_of(r).num_terms()).collect();
    assert!(sizes.windows(2).all(|w| w[0] < w[1]), "{sizes:?}");
    assert!(records.iter().all(|r| !value_of(r).involves_s()));
}

#[test]
fn link_sequence_keeps_s() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["sequence", "--cf", "2", "--max-color", "2"]);
    let records: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(value_of(&records[2]).involves_s());
}

fn write_sequence(dir: &Path, cf: &str, max: u32) -> String {
    let path = dir.join(format!("seq_{cf}_{max}.json"));
    let out = run(dir, &["sequence", "--cf", cf, "--max-color", &max.to_string(), "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    path.to_str().unwrap().to_string()
}

#[test]
fn unknot_recurrence_is_l_minus_one() {
    let dir = TempDir::new().unwrap();
    let seq = write_sequence(dir.path(), "1", 12);
    let out = run(dir.path(), &["recurrence", "--in", &seq, "--max-order", "4", "--max-mdeg", "8", "--validate", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("operator: L - 1\n"), "{text}");
    assert!(text.contains("validation: pass"), "{text}");

    let json = run(
        dir.path(),
        &["recurrence", "--in", &seq, "--max-order", "4", "--max-mdeg", "8", "--validate", "3", "--format", "json"],
    );
    let v: Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["operator"]["order"], 1);
    assert_eq!(v["operator"]["mdeg"], 0);
    assert_eq!(v["validation"]["passed"], true);
}

#[test]
fn canonical_trefoil_has_no_small_recurrence() {
    let dir = TempDir::new().unwrap();
    let seq = write_sequence(dir.path(), "3", 25);
    let out = run(dir.path(), &["recurrence", "--in", &seq, "--max-order", "4", "--max-mdeg", "8", "--validate", "5"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "none found\n");
}

#[test]
fn short_window_exits_five_naming_the_length() {
    let dir = TempDir::new().unwrap();
    let seq = write_sequence(dir.path(), "1", 3);
    let out = run(dir.path(), &["recurrence", "--in", &seq, "--max-order", "4", "--max-mdeg", "8", "--validate", "2"]);
    assert_eq!(code(&out), 5);
    assert!(stderr(&out).contains("need 6 terms"), "{}", stderr(&out));
}

#[test]
fn corpus_checks_pass() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["corpus", "--max-crossings", "4", "--checks", "nested-sum"]);
    assert_eq!(code(&out), 0);
    let summary: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["links"], 15);
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["checks"][0]["check"], "nested-sum");

    let out = run(dir.path(), &["corpus", "--max-crossings", "8", "--checks", "homfly,jones"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(dir.path(), &["corpus", "--max-crossings", "5"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let summary: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["checks"].as_array().unwrap().len(), 6);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let cases: [(&[&str], i32); 9] = [
        (&["corpus", "--max-crossings", "0"], 2),
        (&["corpus", "--max-crossings", "3", "--checks", "bogus"], 2),
        (&["eval", "--cf", "3,x", "--color", "1"], 2),
        (&["eval", "--fraction", "4/2", "--color", "1"], 2),
        (&["eval", "--cf", "3", "--color", "1", "--specialize", "i=2"], 2),
        (&["eval", "--cf", "2", "--color", "2", "--specialize", "i=1"], 2),
        (&["eval", "--cf", "2", "--fraction", "2/1", "--color", "1"], 2),
        (&["eval", "--cf", "3", "--color", "1", "--start", "op"], 3),
        (&["eval", "--cf", "3", "--color", "5", "--max-terms", "10"], 4),
    ];
    for (args, want) in cases {
        let out = run(dir.path(), args);
        assert_eq!(code(&out), want, "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn text_format_sorts_terms_and_writes_denominators() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["eval", "--cf", "2", "--color", "1", "--normalize", "raw"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains('s'), "{text}");
    let out = run(dir.path(), &["eval", "--cf", "2", "--color", "1", "--specialize", "i=1"]);
    let text = stdout(&out);
    assert!(text.trim_end().ends_with("/ [1]^2"), "{text}");
}
