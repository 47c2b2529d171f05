use std::path::PathBuf;

use lfsm::families::snow2;
use lfsm::fixtures::*;
use lfsm::io::{convert, parse_document, parse_lfsm, parse_rlfsm, Document, SourceFormat};
use lfsm::{FactorTable, F2Vec};

fn read(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

#[test]
fn classic_registers() {
    let one = F2Vec::from_hex("0x01", 8).unwrap();
    assert_eq!(parse_lfsm(&read("l0.json")).unwrap(), t0().with_state(one.clone()).unwrap());
    assert_eq!(parse_lfsm(&read("l1.json")).unwrap(), t1().with_state(one.clone()).unwrap());
    assert_eq!(parse_lfsm(&read("l2.json")).unwrap(), t2().with_state(one).unwrap());
}

#[test]
fn large_register_files() {
    let ring = ring128_spec().build().unwrap();
    assert_eq!(parse_lfsm(&read("ring128.json")).unwrap(), ring);
    let (doc, src) = parse_document(&read("ring128.txt")).unwrap();
    assert_eq!(doc, Document::Lfsm(ring));
    assert_eq!(src, SourceFormat::Ring(ring128_spec()));
    assert_eq!(parse_lfsm(&read("snow2.json")).unwrap(), snow2());
    let word = word512_spec().build().unwrap();
    assert_eq!(parse_lfsm(&read("word512.json")).unwrap(), word);
    assert_eq!(parse_lfsm(&read("word512.word.json")).unwrap(), word);
    assert_eq!(parse_lfsm(&read("word40.word.json")).unwrap(), word40_spec().build().unwrap());
}

#[test]
fn rational_machines() {
    assert_eq!(parse_rlfsm(&read("rational-l1.json")).unwrap(), l1());
    assert_eq!(parse_rlfsm(&read("rational-l2.json")).unwrap(), l2());
    assert_eq!(parse_rlfsm(&read("three-vane.json")).unwrap(), three_vane());
    assert_eq!(parse_rlfsm(&read("filtered12.json")).unwrap(), filtered_rlfsm());
    let (_, src) = parse_document(&read("windmill-e0.json")).unwrap();
    assert_eq!(src, SourceFormat::Windmill(windmill_e0()));
}

#[test]
fn every_fixture_converts_idempotently() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for entry in std::fs::read_dir(dir).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        if name.starts_with("factors") {
            continue;
        }
        let once = convert(&read(&name)).unwrap();
        assert_eq!(convert(&once).unwrap(), once, "{name}");
    }
}

#[test]
fn factor_file_covers_degree_512() {
    let t = FactorTable::from_json(&read("factors_512.json")).unwrap();
    assert_eq!(t.get(512).unwrap().len(), 13);
}
