//! File formats.
//!
//! - Automaton JSON: `{"kind":"lfsm","n","k","l","A","B","C","state"}` with
//!   sparse `[row, col]` coordinates and a hex state (bit `i` is cell `i`).
//! - RLFSM JSON: `{"kind":"rlfsm","n","entries":[{"row","col","num","den"}],
//!   "state":{"m","c"}}`, optional `"C"` extraction.
//! - Windmill shorthand: `{"kind":"windmill","alpha","beta","shifts"}`.
//! - Word JSON: `{"kind":"word","n","k","blocks":[{"row","col","op"}]}`,
//!   skeleton blocks included.
//! - Ring text: `n=8; (3,7) (7,2)`.
//!
//! Canonical output is compact JSON, coordinates sorted row-major, fractions
//! reduced, zero entries dropped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{RingSpec, WordBlock, WordBlockSpec};
use crate::gf2::{Gf2Poly, RationalSeries};
use crate::lfsm::Lfsm;
use crate::matrix::{BitMatrix, F2Vec};
use crate::rational::{build_windmill, RationalMatrix, Rlfsm, WindmillSpec};

#[derive(Serialize, Deserialize)]
struct AutomatonJson {
    n: usize,
    k: usize,
    l: usize,
    #[serde(rename = "A")]
    a: Vec<[usize; 2]>,
    #[serde(rename = "B", default)]
    b: Vec<[usize; 2]>,
    #[serde(rename = "C", default)]
    c: Vec<[usize; 2]>,
    #[serde(default = "zero_hex")]
    state: String,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    row: usize,
    col: usize,
    num: Gf2Poly,
    #[serde(default = "one_poly")]
    den: Gf2Poly,
}

#[derive(Serialize, Deserialize)]
struct RationalStateJson {
    m: String,
    c: Vec<Gf2Poly>,
}

#[derive(Serialize, Deserialize)]
struct RlfsmJson {
    n: usize,
    entries: Vec<EntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    state: Option<RationalStateJson>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    c: Option<ExtractionJson>,
}

#[derive(Serialize, Deserialize)]
struct ExtractionJson {
    l: usize,
    coords: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    n: usize,
    k: usize,
    blocks: Vec<WordBlock>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum DocJson {
    Lfsm(AutomatonJson),
    Rlfsm(RlfsmJson),
    Windmill(WindmillSpec),
    Word(WordJson),
}

fn zero_hex() -> String {
    "0x0".into()
}

fn one_poly() -> Gf2Poly {
    Gf2Poly::one()
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Lfsm(Lfsm),
    Rlfsm(Rlfsm),
}

/// The format a [`Document`] was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceFormat {
    Automaton,
    Ring(RingSpec),
    Word(WordBlockSpec),
    Rlfsm,
    Windmill(WindmillSpec),
}

fn coords_matrix(rows: usize, cols: usize, coords: &[[usize; 2]], name: &str) -> Result<BitMatrix> {
    let pairs: Vec<(usize, usize)> = coords.iter().map(|&[i, j]| (i, j)).collect();
    BitMatrix::from_coords(rows, cols, &pairs).map_err(|e| Error::Format(format!("matrix {name}: {e}")))
}

fn matrix_coords(m: &BitMatrix) -> Vec<[usize; 2]> {
    m.coords().into_iter().map(|(i, j)| [i, j]).collect()
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Format(format!("line {} column {}: {e}", e.line(), e.column()))
}

/// Reads any supported format.
pub fn parse_document(text: &str) -> Result<(Document, SourceFormat)> {
    if !text.trim_start().starts_with('{') {
        let spec: RingSpec = text.parse()?;
        return Ok((Document::Lfsm(spec.build()?), SourceFormat::Ring(spec)));
    }
    match serde_json::from_str::<DocJson>(text).map_err(json_error)? {
        DocJson::Lfsm(j) => Ok((Document::Lfsm(lfsm_from_json(j)?), SourceFormat::Automaton)),
        DocJson::Rlfsm(j) => Ok((Document::Rlfsm(rlfsm_from_json(j)?), SourceFormat::Rlfsm)),
        DocJson::Windmill(w) => {
            let spec = WindmillSpec::new(w.alpha, w.beta, w.shifts)?;
            Ok((Document::Rlfsm(build_windmill(&spec)), SourceFormat::Windmill(spec)))
        }
        DocJson::Word(w) => {
            let spec = WordBlockSpec::new(w.n, w.k, w.blocks)?;
            Ok((Document::Lfsm(spec.build()?), SourceFormat::Word(spec)))
        }
    }
}

fn lfsm_from_json(j: AutomatonJson) -> Result<Lfsm> {
    let a = coords_matrix(j.n, j.n, &j.a, "A")?;
    let b = coords_matrix(j.n, j.k, &j.b, "B")?;
    let c = coords_matrix(j.l, j.n, &j.c, "C")?;
    let state = F2Vec::from_hex(&j.state, j.n)?;
    Lfsm::new(a, b, c, state)
}

fn rlfsm_from_json(j: RlfsmJson) -> Result<Rlfsm> {
    let entries = j
        .entries
        .into_iter()
        .map(|e| Ok((e.row, e.col, RationalSeries::new(e.num, e.den)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut r = Rlfsm::new(RationalMatrix::from_entries(j.n, &entries)?);
    if let Some(c) = j.c {
        r = r.with_extraction(coords_matrix(c.l, j.n, &c.coords, "C")?)?;
    }
    if let Some(s) = j.state {
        r = r.with_state(F2Vec::from_hex(&s.m, j.n)?, s.c)?;
    }
    Ok(r)
}

/// Parses a binary automaton; rational inputs are rejected.
pub fn parse_lfsm(text: &str) -> Result<Lfsm> {
    match parse_document(text)?.0 {
        Document::Lfsm(l) => Ok(l),
        Document::Rlfsm(_) => Err(Error::Format("expected a binary automaton, found a rational one".into())),
    }
}

pub fn parse_rlfsm(text: &str) -> Result<Rlfsm> {
    match parse_document(text)?.0 {
        Document::Rlfsm(r) => Ok(r),
        Document::Lfsm(_) => Err(Error::Format("expected a rational automaton, found a binary one".into())),
    }
}

fn lfsm_json(l: &Lfsm) -> DocJson {
    DocJson::Lfsm(AutomatonJson {
        n: l.n(),
        k: l.inputs(),
        l: l.outputs(),
        a: matrix_coords(l.transition()),
        b: matrix_coords(l.input_matrix()),
        c: matrix_coords(l.extraction()),
        state: l.state().to_hex(),
    })
}

fn rlfsm_json(r: &Rlfsm) -> DocJson {
    let entries = r
        .matrix()
        .nonzero()
        .into_iter()
        .map(|(row, col, e)| EntryJson { row, col, num: e.num().clone(), den: e.den().clone() })
        .collect();
    let zero = r.bits().is_zero() && r.carries().iter().all(Gf2Poly::is_zero);
    DocJson::Rlfsm(RlfsmJson {
        n: r.n(),
        entries,
        state: (!zero).then(|| RationalStateJson { m: r.bits().to_hex(), c: r.carries().to_vec() }),
        c: r.extraction().map(|c| ExtractionJson { l: c.rows(), coords: matrix_coords(c) }),
    })
}

fn render(doc: &DocJson, pretty: bool) -> String {
    let s = if pretty { serde_json::to_string_pretty(doc) } else { serde_json::to_string(doc) };
    s.expect("documents serialize")
}

pub fn lfsm_to_json(l: &Lfsm, pretty: bool) -> String {
    render(&lfsm_json(l), pretty)
}

pub fn rlfsm_to_json(r: &Rlfsm, pretty: bool) -> String {
    render(&rlfsm_json(r), pretty)
}

pub fn word_to_json(spec: &WordBlockSpec, pretty: bool) -> String {
    render(&DocJson::Word(WordJson { n: spec.n, k: spec.k, blocks: spec.blocks.clone() }), pretty)
}

pub fn document_to_json(doc: &Document, pretty: bool) -> String {
    match doc {
        Document::Lfsm(l) => lfsm_to_json(l, pretty),
        Document::Rlfsm(r) => rlfsm_to_json(r, pretty),
    }
}

/// Canonical form of any supported input; idempotent.
pub fn convert(text: &str) -> Result<String> {
    Ok(document_to_json(&parse_document(text)?.0, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ring_text_becomes_sparse_automaton() {
        let text = fixtures::ring128_spec().to_string();
        let out = convert(&text).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["A"].as_array().unwrap().len(), 192);
        assert_eq!(v["kind"], "lfsm");
        assert_eq!(convert(&out).unwrap(), out);
    }

    #[test]
    fn windmill_becomes_four_entries() {
        let text = r#"{"kind":"windmill","alpha":"x^5+x^3+x^2+1","beta":"1","shifts":[1,0,0,0]}"#;
        let out = convert(text).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["entries"].as_array().unwrap().len(), 4);
        assert_eq!(v["entries"][0]["num"], "x^6+x^4+x^3+x");
        assert_eq!(convert(&out).unwrap(), out);
    }

    #[test]
    fn automaton_round_trip_keeps_everything() {
        let l = fixtures::t2().with_state(F2Vec::from_hex("0x81", 8).unwrap()).unwrap();
        let text = lfsm_to_json(&l, true);
        assert_eq!(parse_lfsm(&text).unwrap(), l);
    }

    #[test]
    fn rlfsm_state_and_extraction_survive() {
        let mut c = BitMatrix::zeros(1, 2);
        c.set(0, 1, true);
        let r = fixtures::l1()
            .with_extraction(c)
            .unwrap()
            .with_state(F2Vec::from_hex("0x1", 2).unwrap(), vec!["x".parse().unwrap(), Gf2Poly::zero()])
            .unwrap();
        assert_eq!(parse_rlfsm(&rlfsm_to_json(&r, false)).unwrap(), r);
    }

    #[test]
    fn word_json_matches_builder() {
        let spec = fixtures::word40_spec();
        assert_eq!(parse_lfsm(&word_to_json(&spec, false)).unwrap(), spec.build().unwrap());
    }

    #[test]
    fn malformed_input_reports_a_position() {
        let err = parse_document("{\"kind\":\"lfsm\",\n \"n\": 4,, }").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_document("n=8; (3,7) (7").unwrap_err();
        assert!(err.to_string().contains("offset"), "{err}");
    }
}
