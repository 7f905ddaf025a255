//! The bundled corpus of rank-3 representatives, keyed by numeral, and the
//! numeral table pinning catalog graphs to those numerals.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::Error;
use crate::exec::{map_vec, ExecMode};
use crate::maps::GraphMap;
use crate::whitehead::{enumerate_catalog, whitehead_graphs, SimpleGraph};

const CORPUS_TEXT: &str = include_str!("../resources/corpus.txt");

/// Numerals of the three graphs with no representative in the corpus.
pub const UNACHIEVED: [&str; 3] = ["II", "V", "VII"];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub map: GraphMap,
    pub map_text: String,
    pub name: Option<String>,
    pub note: Option<String>,
    /// Power of the stored map giving the representative (2 for the entry
    /// whose periodic directions are not fixed, 1 otherwise).
    pub power: usize,
}

fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, Error> {
    let mut entries = Vec::new();
    let mut current: Option<(String, Vec<String>, Option<String>, Option<String>, usize)> = None;
    let flush = |cur: &mut Option<(String, Vec<String>, Option<String>, Option<String>, usize)>,
                     entries: &mut Vec<CorpusEntry>|
     -> Result<(), Error> {
        if let Some((label, lines, name, note, power)) = cur.take() {
            let map_text = lines.join("\n");
            let map = GraphMap::parse(&map_text)?;
            entries.push(CorpusEntry {
                label,
                map,
                map_text,
                name,
                note,
                power,
            });
        }
        Ok(())
    };
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(label) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            flush(&mut current, &mut entries)?;
            current = Some((label.to_string(), Vec::new(), None, None, 1));
        } else if let Some((_, lines, name, note, power)) = current.as_mut() {
            if let Some(v) = line.strip_prefix("name:") {
                *name = Some(v.trim().to_string());
            } else if let Some(v) = line.strip_prefix("note:") {
                *note = Some(v.trim().to_string());
            } else if let Some(v) = line.strip_prefix("power:") {
                *power = v.trim().parse().map_err(|_| Error::Parse {
                    line: 1,
                    column: 1,
                    message: "bad power".into(),
                })?;
            } else {
                lines.push(line.to_string());
            }
        }
    }
    flush(&mut current, &mut entries)?;
    Ok(entries)
}

/// The eighteen bundled representatives in corpus order.
pub fn corpus() -> &'static [CorpusEntry] {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(|| parse_corpus(CORPUS_TEXT).expect("bundled corpus parses"))
}

pub fn entry(label: &str) -> Result<&'static CorpusEntry, Error> {
    corpus()
        .iter()
        .find(|e| e.label == label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

/// The catalog of 21 graphs with numerals pinned by the corpus: each
/// representative's stable Whitehead graph (of its rotationless power)
/// determines the catalog graph carrying its numeral. The three catalog
/// graphs left unmatched carry the unachieved numerals in canonical order.
#[derive(Debug)]
pub struct NumeralTable {
    pub catalog: Vec<SimpleGraph>,
    /// numeral → catalog index
    pub by_numeral: BTreeMap<String, usize>,
    /// catalog index → numeral
    pub numerals: Vec<String>,
    /// Corpus labels whose pinned numeral differs from their stored label
    /// (the disputed entry).
    pub relabeled: Vec<(String, String)>,
}

impl NumeralTable {
    pub fn numeral_of(&self, catalog_index: usize) -> &str {
        &self.numerals[catalog_index]
    }

    pub fn graph_of(&self, numeral: &str) -> Result<&SimpleGraph, Error> {
        let idx = self
            .by_numeral
            .get(numeral)
            .ok_or_else(|| Error::UnknownLabel(numeral.to_string()))?;
        Ok(&self.catalog[*idx])
    }

    pub fn is_unachieved(&self, numeral: &str) -> bool {
        UNACHIEVED.contains(&numeral)
    }

    /// The catalog index a corpus entry's ideal Whitehead graph matches.
    pub fn match_of(&self, iw: &SimpleGraph) -> Option<usize> {
        self.catalog.iter().position(|g| g.is_isomorphic(iw))
    }
}

fn build_numeral_table(mode: ExecMode) -> NumeralTable {
    let catalog = enumerate_catalog(5);
    let entries = corpus();
    let matches: Vec<(String, usize)> = map_vec(mode, entries, |e| {
        let rep = e.map.power(e.power).expect("corpus maps are self-maps");
        let wh = whitehead_graphs(&rep).expect("corpus maps are train tracks");
        let idx = catalog
            .iter()
            .position(|g| g.is_isomorphic(&wh.sw))
            .expect("corpus stable Whitehead graphs are connected 5-vertex graphs");
        (e.label.clone(), idx)
    });
    let mut numerals: Vec<Option<String>> = vec![None; catalog.len()];
    let mut relabeled = Vec::new();
    // Entries with undisputed labels pin their numeral directly; the
    // disputed entry takes the one achievable numeral left over.
    let mut disputed: Vec<(String, usize)> = Vec::new();
    for (label, idx) in matches {
        if UNACHIEVED.contains(&label.as_str()) {
            disputed.push((label, idx));
        } else {
            assert!(numerals[idx].is_none(), "two corpus entries pin {idx}");
            numerals[idx] = Some(label);
        }
    }
    let all: [&str; 21] = [
        "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII", "XIII",
        "XIV", "XV", "XVI", "XVII", "XVIII", "XIX", "XX", "XXI",
    ];
    let mut unused: Vec<&str> = all
        .iter()
        .filter(|n| !numerals.iter().flatten().any(|x| x == *n))
        .copied()
        .collect();
    for (label, idx) in disputed {
        let pick = unused
            .iter()
            .position(|n| !UNACHIEVED.contains(n))
            .expect("an achievable numeral remains for the disputed entry");
        let numeral = unused.remove(pick).to_string();
        relabeled.push((label, numeral.clone()));
        assert!(numerals[idx].is_none(), "disputed entry collides at {idx}");
        numerals[idx] = Some(numeral);
    }
    // Whatever catalog graphs remain take the unachieved numerals in
    // canonical order.
    let mut rest = unused.into_iter();
    let numerals: Vec<String> = numerals
        .into_iter()
        .map(|n| n.unwrap_or_else(|| rest.next().expect("numeral pool").to_string()))
        .collect();
    let by_numeral = numerals
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect();
    NumeralTable {
        catalog,
        by_numeral,
        numerals,
        relabeled,
    }
}

/// The numeral table, computed once.
pub fn numeral_table() -> &'static NumeralTable {
    static TABLE: OnceLock<NumeralTable> = OnceLock::new();
    TABLE.get_or_init(|| build_numeral_table(ExecMode::default()))
}

/// Verifies every bundled representative against its pinned catalog graph.
pub fn verify_corpus(mode: ExecMode) -> Vec<(String, crate::verifier::VerificationReport)> {
    let table = numeral_table();
    let entries = corpus();
    map_vec(mode, entries, |e| {
        let rep = e.map.power(e.power).expect("corpus maps are self-maps");
        let wh = whitehead_graphs(&rep).expect("corpus maps are train tracks");
        let idx = table.match_of(&wh.sw).expect("corpus graphs are in the catalog");
        let report = crate::verifier::verify_representative(&e.map, &table.catalog[idx], None)
            .expect("verification pipeline runs");
        (e.label.clone(), report)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::TransitionMatrix;
    use crate::nielsen::is_automorphism;

    #[test]
    fn corpus_parses_and_round_trips() {
        let entries = corpus();
        assert_eq!(entries.len(), 18);
        for e in entries {
            assert_eq!(e.map.to_string().trim_end(), e.map_text);
            assert_eq!(e.map.rank(), 3);
        }
        assert_eq!(entry("XX").unwrap().power, 2);
        assert!(entry("II").unwrap().note.is_some());
        assert!(entry("III").is_err());
    }

    #[test]
    fn corpus_maps_are_train_track_pf_automorphisms() {
        for e in corpus() {
            assert!(e.map.is_train_track().unwrap(), "{} not train track", e.label);
            let m = TransitionMatrix::from_map(&e.map).unwrap();
            assert!(m.is_perron_frobenius(), "{} not PF", e.label);
            assert!(is_automorphism(&e.map).unwrap(), "{} not an automorphism", e.label);
            let p = e.map.periodic_directions().unwrap();
            assert_eq!(p.count(), 5, "{} periodic direction count", e.label);
            assert_eq!(p.lcm_of_periods(), e.power, "{} rotationless power", e.label);
        }
    }

    #[test]
    fn numeral_table_pins_all_21() {
        let table = numeral_table();
        assert_eq!(table.catalog.len(), 21);
        let mut sorted = table.numerals.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 21);
        // The disputed entry lands on numeral III.
        assert_eq!(table.relabeled, vec![("II".to_string(), "III".to_string())]);
        // Unachieved numerals mark exactly the three unmatched graphs.
        for n in UNACHIEVED {
            assert!(table.by_numeral.contains_key(n));
        }
    }
}
