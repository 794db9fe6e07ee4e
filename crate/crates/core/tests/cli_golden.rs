mod common;

use common::{golden_dir, golden_mismatches, OracleComplex, GOLDEN_CASES};
use prelieder::io::read_document;

#[test]
fn reports_match_the_frozen_files() {
    let bad = golden_mismatches();
    assert!(bad.is_empty(), "outputs differ from tests/golden for {bad:?} (rerun with PRELIEDER_BLESS=1 after review)");
}

#[test]
fn every_golden_file_has_a_case() {
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        let stem = name.trim_end_matches(".txt");
        assert!(GOLDEN_CASES.iter().any(|(n, _)| *n == stem), "stray golden file {name}");
    }
}

#[test]
fn frozen_outputs_do_not_mention_local_paths() {
    for (name, _) in GOLDEN_CASES {
        let text = std::fs::read_to_string(golden_dir().join(format!("{name}.txt"))).unwrap();
        assert!(!text.contains(env!("CARGO_MANIFEST_DIR")), "{name}");
    }
}

/// Rows `complex n dim z b h` of a cohomology table.
fn table(text: &str) -> Vec<[usize; 5]> {
    text.lines()
        .filter_map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f.len() == 6 && f[1].parse::<usize>().is_ok())
                .then(|| [1, 2, 3, 4, 5].map(|i| f[i].parse().unwrap()))
        })
        .collect()
}

#[test]
fn frozen_cohomology_tables_agree_with_the_rank_oracle() {
    let pair = read_document(&common::corpus("pair.json")).unwrap().to_pair().unwrap();
    let reg3 = read_document(&common::corpus("regular3.json")).unwrap().to_pair().unwrap();
    let cases = [
        ("cohomology_pair", OracleComplex::Pair(&pair)),
        ("cohomology_prelie", OracleComplex::Prelie(&pair)),
        ("cohomology_partial", OracleComplex::Partial(&pair)),
        ("cohomology_regular", OracleComplex::Regular(&reg3)),
    ];
    for (name, oracle) in cases {
        let text = std::fs::read_to_string(golden_dir().join(format!("{name}.txt"))).unwrap();
        let rows = table(&text);
        assert!(!rows.is_empty(), "{name}: no table");
        for [n, dim, z, b, h] in rows {
            assert_eq!((dim, z, b, h), oracle.cohomology(n), "{name} n = {n}");
        }
    }
}

fn schema(name: &str) -> serde_json::Value {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

// Not a validator, just a drift guard: every key a report uses is declared.
#[test]
fn published_schemas_cover_the_frozen_reports() {
    let report = schema("report.schema.json");
    let props = report["properties"].as_object().unwrap();
    let commands = props["command"]["enum"].as_array().unwrap();
    for (name, _) in GOLDEN_CASES.iter().filter(|(n, _)| n.ends_with("_json")) {
        let text = std::fs::read_to_string(golden_dir().join(format!("{name}.txt"))).unwrap();
        let body = text.split_once('\n').unwrap().1;
        let value: serde_json::Value = serde_json::from_str(body).unwrap();
        for key in value.as_object().unwrap().keys() {
            assert!(props.contains_key(key), "{name}: key {key} missing from report.schema.json");
        }
        assert!(commands.contains(&value["command"]), "{name}: command not in schema");
    }
    let document = schema("document.schema.json");
    for entry in std::fs::read_dir(common::corpus("")).unwrap() {
        let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
        let kind = value["kind"].as_str().unwrap();
        assert!(document["$defs"].get(kind).is_some(), "document kind {kind} missing from document.schema.json");
    }
}
