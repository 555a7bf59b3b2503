//! End-to-end tests driving the `fsp` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use fsp_core::fixture::FIXTURE_NT;
use fsp_core::{labeled_edge_count, parse_ntriples_str, EdgeConvention, Term};

fn fsp(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsp"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

/// The machine-readable record is the last stdout line.
fn json_record(output: &Output) -> Value {
    let text = stdout(output);
    let line = text.lines().last().expect("stdout not empty");
    serde_json::from_str(line).expect("last line is JSON")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn write_fixture(dir: &Path) -> PathBuf {
    let path = dir.join("fig.nt");
    fs::write(&path, FIXTURE_NT).unwrap();
    path
}

fn sorted_lines(path: &Path) -> Vec<String> {
    let mut lines: Vec<String> = fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(str::to_owned)
        .collect();
    lines.sort();
    lines.dedup();
    lines
}

#[test]
fn detect_greedy_reports_the_shared_subset() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let out = fsp(
        &["detect", "--input", "fig.nt", "--class", "urn:ex:C"],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("objective value: 8"));
    let record = json_record(&out);
    assert_eq!(record["objective_value"], 8);
    assert_eq!(
        record["chosen"],
        serde_json::json!(["urn:ex:p1", "urn:ex:p2", "urn:ex:p3"])
    );
    assert_eq!(record["iterations"], 5);
}

#[test]
fn detect_exhaustive_reports_the_factorized_count() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let out = fsp(
        &[
            "detect",
            "--input",
            "fig.nt",
            "--class",
            "urn:ex:C",
            "--algorithm",
            "efsp",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 0);
    let record = json_record(&out);
    assert_eq!(record["factorized_edges"], 11);
    assert_eq!(record["iterations"], 11);
    assert_eq!(
        record["chosen"],
        serde_json::json!(["urn:ex:p1", "urn:ex:p2", "urn:ex:p3"])
    );
}

#[test]
fn detect_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("empty.nt"), "").unwrap();
    fs::write(dir.path().join("broken.nt"), "<urn:a> <urn:p> <urn:b\n").unwrap();
    // A class whose single property cannot support detection.
    fs::write(
        dir.path().join("narrow.nt"),
        "<urn:a> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:C> .\n\
         <urn:a> <urn:p> <urn:x> .\n",
    )
    .unwrap();

    let empty = fsp(
        &["detect", "--input", "empty.nt", "--class", "urn:ex:C"],
        dir.path(),
    );
    assert_eq!(exit_code(&empty), 2);

    let broken = fsp(
        &["detect", "--input", "broken.nt", "--class", "urn:ex:C"],
        dir.path(),
    );
    assert_eq!(exit_code(&broken), 2);
    assert!(String::from_utf8_lossy(&broken.stderr).contains("line 1"));

    let missing = fsp(
        &["detect", "--input", "missing.nt", "--class", "urn:ex:C"],
        dir.path(),
    );
    assert_eq!(exit_code(&missing), 5);

    let narrow = fsp(
        &["detect", "--input", "narrow.nt", "--class", "urn:C"],
        dir.path(),
    );
    assert_eq!(exit_code(&narrow), 4);

    let bad_class = fsp(
        &["detect", "--input", "narrow.nt", "--class", "no-scheme"],
        dir.path(),
    );
    assert_eq!(exit_code(&bad_class), 2);
}

#[test]
fn detect_accepts_an_explicit_property_list() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let out = fsp(
        &[
            "detect",
            "--input",
            "fig.nt",
            "--class",
            "urn:ex:C",
            "--properties",
            "urn:ex:p1,urn:ex:p2,urn:ex:p4",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 0);
    let record = json_record(&out);
    assert_eq!(
        record["properties"],
        serde_json::json!(["urn:ex:p1", "urn:ex:p2", "urn:ex:p4"])
    );
    // Over this restricted set the shared pair {p1,p2} wins.
    assert_eq!(
        record["chosen"],
        serde_json::json!(["urn:ex:p1", "urn:ex:p2"])
    );
}

#[test]
fn factorize_reports_unwritable_output_as_io_failure() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let out = fsp(
        &[
            "factorize",
            "--input",
            "fig.nt",
            "--output",
            "no-such-dir/fact.nt",
            "--class",
            "urn:ex:C",
            "--properties",
            "urn:ex:p1,urn:ex:p2",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 5);
}

#[test]
fn strict_mode_rejects_incomplete_entities() {
    let dir = tempfile::tempdir().unwrap();
    let mut content = FIXTURE_NT.to_owned();
    // c5 is typed but has no property edges.
    content
        .push_str("<urn:ex:c5> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:ex:C> .\n");
    fs::write(dir.path().join("gap.nt"), &content).unwrap();

    let relaxed = fsp(
        &["detect", "--input", "gap.nt", "--class", "urn:ex:C"],
        dir.path(),
    );
    assert_eq!(exit_code(&relaxed), 0);

    let strict = fsp(
        &[
            "detect", "--input", "gap.nt", "--class", "urn:ex:C", "--strict",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&strict), 3);
    assert!(String::from_utf8_lossy(&strict.stderr).contains("urn:ex:c5"));
}

#[test]
fn factorize_writes_files_and_savings_match_a_recount() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let out = fsp(
        &[
            "factorize",
            "--input",
            "fig.nt",
            "--output",
            "fact.nt",
            "--mapping",
            "map.nt",
            "--class",
            "urn:ex:C",
            "--properties",
            "urn:ex:p1,urn:ex:p2,urn:ex:p3",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 0);
    let record = json_record(&out);
    assert_eq!(record["edges_before"], 20);
    assert_eq!(record["edges_after"], 12);
    assert_eq!(record["percent_savings"], 40.0);
    assert_eq!(record["surrogates"], 1);

    // Recount the report from the serialized files.
    let original =
        parse_ntriples_str(&fs::read_to_string(dir.path().join("fig.nt")).unwrap()).unwrap();
    let factorized =
        parse_ntriples_str(&fs::read_to_string(dir.path().join("fact.nt")).unwrap()).unwrap();
    let class = Term::iri_unchecked("urn:ex:C");
    let s = original.class_properties(&class);
    let before = labeled_edge_count(&original, &class, &s, EdgeConvention::WithTypeEdges);
    let after = labeled_edge_count(&factorized, &class, &s, EdgeConvention::WithTypeEdges);
    assert_eq!(before, 20);
    assert_eq!(after, 12);
    let recount = 100.0 * (before as f64 - after as f64) / before as f64;
    assert_eq!(record["percent_savings"].as_f64().unwrap(), recount);

    // The mapping is itself an N-Triples document of linking edges.
    let mapping = sorted_lines(&dir.path().join("map.nt"));
    assert_eq!(mapping.len(), 4);
    assert!(mapping.iter().all(|l| l.contains("<urn:fsp:instanceOf>")));
}

#[test]
fn factorize_prints_signed_overhead() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let out = fsp(
        &[
            "factorize",
            "--input",
            "fig.nt",
            "--output",
            "f4.nt",
            "--class",
            "urn:ex:C",
            "--properties",
            "urn:ex:p4",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("savings: -10.0%"));
    let record = json_record(&out);
    assert!(record["percent_savings"].as_f64().unwrap() < 0.0);
}

#[test]
fn factorize_without_matches_is_identity_with_zero_savings() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    // No entity has the requested property, so nothing is mapped.
    let out = fsp(
        &[
            "factorize",
            "--input",
            "fig.nt",
            "--output",
            "same.nt",
            "--class",
            "urn:ex:C",
            "--properties",
            "urn:ex:p9",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 0);
    let record = json_record(&out);
    assert_eq!(record["percent_savings"], 0.0);
    assert_eq!(record["mapped_entities"], 0);
    assert_eq!(
        sorted_lines(&dir.path().join("same.nt")),
        sorted_lines(&dir.path().join("fig.nt"))
    );
}

#[test]
fn factorize_warns_for_absent_class() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let out = fsp(
        &[
            "factorize",
            "--input",
            "fig.nt",
            "--output",
            "same.nt",
            "--class",
            "urn:ex:Nothing",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no instances"));
    assert_eq!(
        sorted_lines(&dir.path().join("same.nt")),
        sorted_lines(&dir.path().join("fig.nt"))
    );
}

#[test]
fn expand_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let fact = fsp(
        &[
            "factorize",
            "--input",
            "fig.nt",
            "--output",
            "fact.nt",
            "--mapping",
            "map.nt",
            "--class",
            "urn:ex:C",
            "--properties",
            "urn:ex:p1,urn:ex:p2,urn:ex:p3",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&fact), 0);

    let expanded = fsp(
        &[
            "expand",
            "--input",
            "fact.nt",
            "--mapping",
            "map.nt",
            "--output",
            "back.nt",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&expanded), 0);
    assert_eq!(
        sorted_lines(&dir.path().join("back.nt")),
        sorted_lines(&dir.path().join("fig.nt"))
    );
}

#[test]
fn expand_of_plain_graph_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let out = fsp(
        &["expand", "--input", "fig.nt", "--output", "out.nt"],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        sorted_lines(&dir.path().join("out.nt")),
        sorted_lines(&dir.path().join("fig.nt"))
    );
}

#[test]
fn expand_rejects_a_corrupted_mapping() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let fact = fsp(
        &[
            "factorize",
            "--input",
            "fig.nt",
            "--output",
            "fact.nt",
            "--mapping",
            "map.nt",
            "--class",
            "urn:ex:C",
            "--properties",
            "urn:ex:p1,urn:ex:p2,urn:ex:p3",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&fact), 0);

    // Point c1 at a second surrogate.
    let map_path = dir.path().join("map.nt");
    let mut mapping = fs::read_to_string(&map_path).unwrap();
    mapping.push_str("<urn:ex:c1> <urn:fsp:instanceOf> <urn:fsp:0000000000000000> .\n");
    fs::write(&map_path, mapping).unwrap();

    let out = fsp(
        &[
            "expand",
            "--input",
            "fact.nt",
            "--mapping",
            "map.nt",
            "--output",
            "bad.nt",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 6);
}

#[test]
fn stats_reports_instances_and_histograms() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let out = fsp(&["stats", "--input", "fig.nt"], dir.path());
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("instances: 4"));
    assert!(text.contains("urn:ex:p1: urn:ex:e1 100.0%"));
    assert!(text.contains("urn:ex:e4 50.0%"));

    let broken = fsp(&["stats", "--input", "missing.nt"], dir.path());
    assert_eq!(exit_code(&broken), 5);
}

#[test]
fn stats_on_generated_extremes() {
    let dir = tempfile::tempdir().unwrap();
    for (name, skew) in [("one.nt", "1.0"), ("zero.nt", "0.0")] {
        let out = fsp(
            &[
                "generate",
                "--output",
                name,
                "--num-entities",
                "40",
                "--num-properties",
                "3",
                "--repetition-skew",
                skew,
                "--value-cardinality",
                "40",
                "--seed",
                "5",
            ],
            dir.path(),
        );
        assert_eq!(exit_code(&out), 0);
    }

    // Full sharing: each property has one object at 100%.
    let one = fsp(&["stats", "--input", "one.nt"], dir.path());
    let record = json_record(&one);
    for histogram in record["classes"][0]["histograms"].as_array().unwrap() {
        let tops = histogram["top_objects"].as_array().unwrap();
        assert_eq!(tops.len(), 1);
        assert_eq!(tops[0]["percent"], 100.0);
    }

    // No sharing: every listed object holds an equal share.
    let zero = fsp(&["stats", "--input", "zero.nt"], dir.path());
    let record = json_record(&zero);
    for histogram in record["classes"][0]["histograms"].as_array().unwrap() {
        for top in histogram["top_objects"].as_array().unwrap() {
            assert_eq!(top["percent"].as_f64().unwrap(), 100.0 / 40.0);
        }
    }
}

#[test]
fn generate_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let args = |name: &str, seed: &str| {
        vec![
            "generate".to_owned(),
            "--output".to_owned(),
            name.to_owned(),
            "--num-entities".to_owned(),
            "60".to_owned(),
            "--num-properties".to_owned(),
            "4".to_owned(),
            "--repetition-skew".to_owned(),
            "0.5".to_owned(),
            "--value-cardinality".to_owned(),
            "60".to_owned(),
            "--seed".to_owned(),
            seed.to_owned(),
        ]
    };
    for (name, seed) in [("a.nt", "9"), ("b.nt", "9"), ("c.nt", "10")] {
        let argv = args(name, seed);
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        assert_eq!(exit_code(&fsp(&argv, dir.path())), 0);
    }
    let a = fs::read(dir.path().join("a.nt")).unwrap();
    let b = fs::read(dir.path().join("b.nt")).unwrap();
    let c = fs::read(dir.path().join("c.nt")).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn generate_rejects_invalid_specs() {
    let dir = tempfile::tempdir().unwrap();
    let out = fsp(
        &[
            "generate",
            "--output",
            "bad.nt",
            "--num-entities",
            "0",
            "--num-properties",
            "3",
            "--repetition-skew",
            "0.5",
            "--value-cardinality",
            "10",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 2);

    let skew = fsp(
        &[
            "generate",
            "--output",
            "bad.nt",
            "--num-entities",
            "10",
            "--num-properties",
            "3",
            "--repetition-skew",
            "1.5",
            "--value-cardinality",
            "10",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&skew), 2);
}

#[test]
fn exhaustive_refuses_huge_property_sets() {
    let dir = tempfile::tempdir().unwrap();
    let gen = fsp(
        &[
            "generate",
            "--output",
            "wide.nt",
            "--num-entities",
            "4",
            "--num-properties",
            "21",
            "--repetition-skew",
            "0.5",
            "--value-cardinality",
            "4",
            "--seed",
            "2",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&gen), 0);
    let out = fsp(
        &[
            "detect",
            "--input",
            "wide.nt",
            "--class",
            "urn:gen:Measurement",
            "--algorithm",
            "efsp",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn generated_pipeline_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let gen = fsp(
        &[
            "generate",
            "--output",
            "data.nt",
            "--num-entities",
            "200",
            "--num-properties",
            "5",
            "--repetition-skew",
            "0.7",
            "--value-cardinality",
            "200",
            "--seed",
            "11",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&gen), 0);

    let detect = fsp(
        &[
            "detect",
            "--input",
            "data.nt",
            "--class",
            "urn:gen:Measurement",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&detect), 0);
    let chosen: Vec<String> = json_record(&detect)["chosen"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_owned())
        .collect();

    let fact = fsp(
        &[
            "factorize",
            "--input",
            "data.nt",
            "--output",
            "fact.nt",
            "--mapping",
            "map.nt",
            "--class",
            "urn:gen:Measurement",
            "--properties",
            &chosen.join(","),
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&fact), 0);
    let record = json_record(&fact);
    assert!(record["percent_savings"].as_f64().unwrap() > 0.0);

    let expand = fsp(
        &[
            "expand",
            "--input",
            "fact.nt",
            "--mapping",
            "map.nt",
            "--output",
            "back.nt",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&expand), 0);
    assert_eq!(
        sorted_lines(&dir.path().join("back.nt")),
        sorted_lines(&dir.path().join("data.nt"))
    );
}
