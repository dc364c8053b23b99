//! Shared corpus builders for the integration suites.
//!
//! The "planted" corpus is constructed so that every similarity in play is a
//! small rational with a wide safety margin:
//!
//! * `d1` mentions the acronym `MT` with two candidates. Against the plain
//!   abstract the decoy (`Magnetic tape`) wins 6/20 = 0.30 to 5/20 = 0.25 —
//!   a 0.05 gap, below the 0.06 gate but above 0.04. A same-author paper
//!   `r1` shares ten words with `d1` (relevance 10/√360 ≈ 0.53 > 0.4) and
//!   leans heavily toward `Machine translation`, so the interpolated score
//!   flips the decision to the correct page whenever the metapath context is
//!   consulted.
//! * `d2` mentions `grid` with two candidates. The correct page
//!   (`Grid computing`) wins the direct ranking 4/√200 ≈ 0.283 to
//!   3/√200 ≈ 0.212 — a ≈0.0707 gap, above the 0.06 gate but below 0.08.
//!   The abstract contains the decoy's consecutive triple
//!   `voltage pylon substation`, so the n-gram overlap route prefers the
//!   decoy (6 shared n-grams to 4): raising the gate past the gap flips
//!   `d2` to the wrong page.
//!
//! Sweeping the gate over {0.02, 0.04, 0.06, 0.08} therefore scores
//! {0.5, 0.5, 1.0, 0.5}: exactly one winning value, at 0.06.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub const D1_TEXT: &str = "the ribbon of the spool and the oxide in the archive with the backup on the cartridge for the translation by the bilingual from the syntax about the vocabulary over the fluency under the MT through the thimble into the lantern during the pebble between the drawer and the saddle of the kettle in the marble on the tunnel";

pub const R1_TEXT: &str = "the translation of the bilingual and the syntax in the vocabulary with the fluency on the thimble for the lantern by the pebble from the drawer about the saddle over the decoder under the alignment through the phrase into the grammar during the lexicon between the parser and the segment of the token";

pub const D2_TEXT: &str = "the grid of the parallel and the voltage pylon substation in the cluster with the scheduler on the node for the beacon by the jetty";

pub const MT_DECOY_SUMMARY: &str = "ribbon spool oxide archive backup cartridge reel ferrite helical scanner density rewind cassette vault polyester coating drive track loop motor";

pub const MT_CORRECT_SUMMARY: &str = "translation bilingual syntax vocabulary fluency decoder alignment phrase grammar lexicon parser segment token evaluation neural encoder attention beam search inference";

pub const GRID_DECOY_SUMMARY: &str = "transformer voltage pylon substation frequency turbine outage megawatt relay capacitor insulator conductor switchyard breaker feeder busbar inverter rectifier dynamo alternator";

pub const GRID_CORRECT_SUMMARY: &str = "middleware parallel batch cluster queue scheduler workload node virtualization throughput allocation resource job tenant fabric broker daemon overlay gateway quorum";

fn entity_line(
    title: &str,
    summary: &str,
    redirects: &[&str],
    dab_entries: &[&str],
    is_dab_page: bool,
) -> String {
    serde_json::json!({
        "title": title,
        "summary": summary,
        "redirects": redirects,
        "dab_entries": dab_entries,
        "is_dab_page": is_dab_page,
    })
    .to_string()
}

/// Knowledge-base snapshot JSONL for the planted corpus. `Machine
/// translation` is reachable from the surface `MT` only through the
/// disambiguation page's entries.
pub fn planted_kb_jsonl() -> String {
    [
        entity_line(
            "MT",
            "",
            &[],
            &["Magnetic tape", "Machine translation"],
            true,
        ),
        entity_line("Magnetic tape", MT_DECOY_SUMMARY, &[], &[], false),
        entity_line("Machine translation", MT_CORRECT_SUMMARY, &[], &[], false),
        entity_line("Electrical grid", GRID_DECOY_SUMMARY, &["grid"], &[], false),
        entity_line("Grid computing", GRID_CORRECT_SUMMARY, &["grid"], &[], false),
    ]
    .join("\n")
        + "\n"
}

/// Paper corpus JSONL: the two target documents plus the same-author context
/// paper `r1`.
pub fn planted_papers_jsonl() -> String {
    [
        serde_json::json!({"id": "d1", "abstract": D1_TEXT, "authors": ["carter"], "year": 2013})
            .to_string(),
        serde_json::json!({"id": "r1", "abstract": R1_TEXT, "authors": ["carter"], "year": 2011})
            .to_string(),
        serde_json::json!({"id": "d2", "abstract": D2_TEXT, "authors": [], "year": null})
            .to_string(),
    ]
    .join("\n")
        + "\n"
}

pub fn planted_edges_tsv() -> String {
    "r1\tcites\td1\n".to_string()
}

/// Wikify input: the two target documents.
pub fn planted_input_jsonl() -> String {
    [
        serde_json::json!({"id": "d1", "abstract": D1_TEXT}).to_string(),
        serde_json::json!({"id": "d2", "abstract": D2_TEXT}).to_string(),
    ]
    .join("\n")
        + "\n"
}

pub fn planted_gold_jsonl() -> String {
    [
        serde_json::json!({
            "doc_id": "d1",
            "mentions": [{"surface": "MT", "link": "Machine translation"}]
        })
        .to_string(),
        serde_json::json!({
            "doc_id": "d2",
            "mentions": [{"surface": "grid", "link": "Grid computing"}]
        })
        .to_string(),
    ]
    .join("\n")
        + "\n"
}

/// Writes the planted corpus into `dir` and returns the file paths as
/// (kb, papers, edges, input, gold).
pub fn write_planted_corpus(dir: &Path) -> (PathBuf, PathBuf, PathBuf, PathBuf, PathBuf) {
    let kb = dir.join("kb.jsonl");
    let papers = dir.join("papers.jsonl");
    let edges = dir.join("edges.tsv");
    let input = dir.join("input.jsonl");
    let gold = dir.join("gold.jsonl");
    fs::write(&kb, planted_kb_jsonl()).unwrap();
    fs::write(&papers, planted_papers_jsonl()).unwrap();
    fs::write(&edges, planted_edges_tsv()).unwrap();
    fs::write(&input, planted_input_jsonl()).unwrap();
    fs::write(&gold, planted_gold_jsonl()).unwrap();
    (kb, papers, edges, input, gold)
}

/// Runs the built `scholarlink` binary with a clean, deterministic
/// environment (no `SOURCE_DATE_EPOCH`, so manifests omit timestamps).
pub fn scholarlink_cmd() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_scholarlink"));
    cmd.env_remove("SOURCE_DATE_EPOCH");
    cmd
}

/// Builds a planted-corpus index bundle under `dir/index`, panicking on any
/// build failure, and returns the bundle directory.
pub fn build_planted_index(dir: &Path) -> PathBuf {
    let (kb, papers, edges, input, gold) = write_planted_corpus(dir);
    let _ = (input, gold);
    let index = dir.join("index");
    let output = scholarlink_cmd()
        .arg("build")
        .args([&kb, &papers, &edges, &index])
        .output()
        .expect("binary runs");
    assert!(
        output.status.success(),
        "build failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    index
}

/// A synthetic 100-document corpus for determinism checks: every document
/// mentions both `MT` and `grid`, shares authors and years across a pool,
/// and cites earlier documents, so linking exercises every route.
pub fn determinism_corpus() -> (String, String, String) {
    const POOL: [&str; 30] = [
        "ribbon", "spool", "oxide", "translation", "bilingual", "syntax", "vocabulary",
        "fluency", "voltage", "pylon", "substation", "parallel", "cluster", "scheduler",
        "node", "decoder", "alignment", "phrase", "grammar", "lexicon", "parser", "segment",
        "token", "beacon", "jetty", "thimble", "lantern", "pebble", "drawer", "saddle",
    ];
    let mut papers = String::new();
    let mut edges = String::new();
    let mut input = String::new();
    for i in 0..100usize {
        let w = |j: usize| POOL[(i * 7 + j * 3) % POOL.len()];
        let abstract_text = format!(
            "the {} of the {} and the MT in the {} with the grid on the {} for the {} by the {}. \
             The {} of the {} in the {} under the {}.",
            w(1),
            w(2),
            w(3),
            w(4),
            w(5),
            w(6),
            w(7),
            w(8),
            w(9),
            w(10)
        );
        let id = format!("doc{i:03}");
        let authors = [format!("a{}", i % 7), format!("a{}", (i + 3) % 7)];
        let year = 2000 + (i % 20) as i32;
        papers.push_str(
            &serde_json::json!({
                "id": id,
                "abstract": abstract_text,
                "authors": authors,
                "year": year,
            })
            .to_string(),
        );
        papers.push('\n');
        input.push_str(&serde_json::json!({"id": id, "abstract": abstract_text}).to_string());
        input.push('\n');
        if i >= 1 {
            edges.push_str(&format!("doc{i:03}\tcites\tdoc{:03}\n", i - 1));
        }
        if i >= 4 {
            edges.push_str(&format!("doc{i:03}\tcites\tdoc{:03}\n", i / 2));
        }
    }
    (papers, edges, input)
}
