//! Brute-force reference implementations shared by the integration tests.
//!
//! Everything here trades efficiency for obviousness: linear scans instead
//! of indexes, direct set algebra instead of adjacency maps, and explicit
//! arithmetic instead of the library's vector types. The tests assert that
//! the optimized library agrees with these on randomized inputs.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use scholarlink::{normalize_surface, Entity, MetapathSpec, PaperRecord, TextAnalyzer};

/// Candidate titles for a surface by scanning every entity: a matching
/// entity contributes itself (unless it is a pure disambiguation page)
/// followed by its disambiguation entries, deduplicated in first-seen order.
pub fn bf_candidate_titles(entities: &[Entity], surface: &str) -> Vec<String> {
    let key = normalize_surface(surface);
    if key.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<String> = Vec::new();
    let mut push = |title: &str| {
        if !out.iter().any(|t| t == title) {
            out.push(title.to_string());
        }
    };
    for entity in entities {
        let matches = normalize_surface(&entity.title) == key
            || entity.redirects.iter().any(|r| normalize_surface(r) == key);
        if !matches {
            continue;
        }
        if !entity.is_dab_page {
            push(&entity.title);
        }
        for target in &entity.dab_entries {
            push(target);
        }
    }
    out
}

/// Related papers computed straight from the raw records and edge list,
/// without any adjacency structure.
pub fn bf_related(
    records: &[PaperRecord],
    edges: &[(String, String)],
    target_id: &str,
    spec: &MetapathSpec,
) -> BTreeSet<String> {
    let target = records
        .iter()
        .find(|r| r.id == target_id)
        .expect("target exists");
    let author_leg = |window: Option<u32>| -> BTreeSet<String> {
        if window.is_some() && target.year.is_none() {
            return BTreeSet::new();
        }
        records
            .iter()
            .filter(|r| r.id != target_id)
            .filter(|r| r.authors.iter().any(|a| target.authors.contains(a)))
            .filter(|r| match window {
                None => true,
                Some(w) => match (r.year, target.year) {
                    (Some(y), Some(ty)) => ty - w as i32 <= y && y <= ty,
                    _ => false,
                },
            })
            .map(|r| r.id.clone())
            .collect()
    };
    let reference: BTreeSet<String> = edges
        .iter()
        .filter(|(src, dst)| src == target_id && dst != target_id)
        .map(|(_, dst)| dst.clone())
        .collect();
    let citation: BTreeSet<String> = edges
        .iter()
        .filter(|(src, dst)| dst == target_id && src != target_id)
        .map(|(src, _)| src.clone())
        .collect();
    match spec {
        MetapathSpec::Author => author_leg(None),
        MetapathSpec::Reference => reference,
        MetapathSpec::Citation => citation,
        MetapathSpec::Cra => {
            let mut s = author_leg(None);
            s.extend(reference);
            s.extend(citation);
            s
        }
        MetapathSpec::YearRestrictedCra { back_window_years } => {
            let mut s = author_leg(Some(*back_window_years));
            s.extend(reference);
            s.extend(citation);
            s
        }
    }
}

/// Term weights computed by hand: lowercase alphanumeric runs, stopwords
/// dropped, raw occurrence counts.
pub fn bf_term_weights(text: &str, analyzer: &TextAnalyzer) -> BTreeMap<String, f64> {
    let mut weights = BTreeMap::new();
    for token in bf_tokens(text) {
        if !analyzer.stopwords.contains(&token) {
            *weights.entry(token).or_insert(0.0) += 1.0;
        }
    }
    weights
}

/// Lowercased alphanumeric runs of the text, in order.
pub fn bf_tokens(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            current.extend(ch.to_lowercase());
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

/// Cosine over hand-built weight maps, summing in sorted key order of `a`
/// (the same order the library uses, so agreement is exact).
pub fn bf_cosine(a: &BTreeMap<String, f64>, b: &BTreeMap<String, f64>) -> f64 {
    let dot: f64 = a
        .iter()
        .map(|(k, w)| w * b.get(k).copied().unwrap_or(0.0))
        .sum();
    let norm = |m: &BTreeMap<String, f64>| m.values().map(|w| w * w).sum::<f64>().sqrt();
    let na = norm(a);
    let nb = norm(b);
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

/// Distinct word n-grams of the text for n in `1..=max_n`.
pub fn bf_ngram_set(text: &str, max_n: usize) -> BTreeSet<String> {
    let tokens = bf_tokens(text);
    let mut grams = BTreeSet::new();
    for n in 1..=max_n {
        for window in tokens.windows(n) {
            grams.insert(window.join(" "));
        }
    }
    grams
}

/// The number of n-gram occurrences (with multiplicity) a token sequence of
/// length `t` yields for sizes `1..=max_n`.
pub fn expected_ngram_count(t: usize, max_n: usize) -> usize {
    (1..=max_n).map(|n| t.saturating_sub(n - 1)).sum()
}
