//! Evaluation against gold annotations: mention precision/recall/F1, link
//! precision over the correctly-extracted mentions, pooled full-system
//! recall, citation-zone breakdowns, and annotator-agreement aggregation.

use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use percent_encoding::percent_decode_str;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linker::LinkDecision;

/// One gold mention: the surface annotators marked and, when they also chose
/// a page, the link target (either a bare title or a full URL).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldMention {
    pub surface: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link: Option<String>,
}

/// Gold annotations for one document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldAnnotation {
    pub doc_id: String,
    pub mentions: Vec<GoldMention>,
}

/// Errors raised while loading evaluation inputs.
#[derive(Debug, Error)]
pub enum EvalError {
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        source: serde_json::Error,
    },
    #[error("duplicate gold annotation for document `{0}`")]
    DuplicateDoc(String),
    #[error("judgment set is empty")]
    EmptyJudgments,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn read_jsonl<T: for<'de> Deserialize<'de>>(reader: impl Read) -> Result<Vec<T>, EvalError> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line).map_err(|source| EvalError::Parse {
                line: i + 1,
                source,
            })?,
        );
    }
    Ok(out)
}

/// Reads gold annotations, one JSON object per line. Duplicate document ids
/// are rejected.
pub fn read_gold_jsonl(reader: impl Read) -> Result<Vec<GoldAnnotation>, EvalError> {
    let gold: Vec<GoldAnnotation> = read_jsonl(reader)?;
    let mut seen = std::collections::HashSet::new();
    for g in &gold {
        if !seen.insert(g.doc_id.clone()) {
            return Err(EvalError::DuplicateDoc(g.doc_id.clone()));
        }
    }
    Ok(gold)
}

/// Convenience wrapper over [`read_gold_jsonl`] for a file path.
pub fn load_gold(path: impl AsRef<Path>) -> Result<Vec<GoldAnnotation>, EvalError> {
    read_gold_jsonl(File::open(path)?)
}

/// A single annotator verdict on one produced mention/link pair.
///
/// `KL` approves both the mention and its link, `K` approves the mention but
/// not the link, `X` rejects the mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    KL,
    K,
    X,
}

/// All verdicts cast on one produced mention, across annotators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Judgment {
    pub doc_id: String,
    pub surface: String,
    pub verdicts: Vec<Verdict>,
}

/// One verdict as stored on disk: a single annotator's call on one mention.
#[derive(Debug, Deserialize)]
struct JudgmentRow {
    doc_id: String,
    #[allow(dead_code)]
    annotator: String,
    mention: String,
    verdict: Verdict,
}

/// Reads per-annotator verdict rows, one JSON object per line, and groups
/// them by `(doc_id, mention)`. Groups keep the order in which each pair
/// first appears; within a group, verdicts keep file order.
pub fn read_judgments_jsonl(reader: impl Read) -> Result<Vec<Judgment>, EvalError> {
    let rows: Vec<JudgmentRow> = read_jsonl(reader)?;
    let mut order: Vec<(String, String)> = Vec::new();
    let mut groups: HashMap<(String, String), Vec<Verdict>> = HashMap::new();
    for row in rows {
        let key = (row.doc_id, row.mention);
        match groups.get_mut(&key) {
            Some(verdicts) => verdicts.push(row.verdict),
            None => {
                groups.insert(key.clone(), vec![row.verdict]);
                order.push(key);
            }
        }
    }
    Ok(order
        .into_iter()
        .map(|key| {
            let verdicts = groups.remove(&key).expect("group exists for ordered key");
            Judgment {
                doc_id: key.0,
                surface: key.1,
                verdicts,
            }
        })
        .collect())
}

fn fold(s: &str) -> String {
    s.to_lowercase()
}

/// Reduces a gold link (title or URL) and a produced title to a comparable
/// form: keep the last path segment of a URL (or the part after `/wiki/`),
/// percent-decode it, turn underscores into spaces, collapse whitespace, and
/// case-fold.
pub fn normalize_link_target(raw: &str) -> String {
    let mut s = raw.trim();
    if let Some(idx) = s.find("/wiki/") {
        s = &s[idx + "/wiki/".len()..];
    } else if s.contains("://") {
        s = s.rsplit('/').next().unwrap_or(s);
    }
    let decoded = percent_decode_str(s).decode_utf8_lossy();
    decoded
        .replace('_', " ")
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Mention-level precision, recall, and F1 for one corpus.
///
/// Matching is case-folded exact surface equality, and each gold mention can
/// satisfy at most one produced mention. Precision and recall are averaged
/// over documents; F1 is the harmonic mean of those two averages. Documents
/// missing from one side count as zero for the side they are missing from
/// (no produced mentions, or no gold mentions).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MentionPrf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// True when some document had no produced mentions (its precision was
    /// taken as zero).
    pub undefined_precision: bool,
    /// True when some document had no gold mentions (its recall was taken as
    /// zero).
    pub undefined_recall: bool,
}

/// Greedy one-to-one matching between produced and gold surfaces under
/// case-folding; returns the number of matched pairs.
fn match_surfaces(produced: &[String], gold: &[String]) -> usize {
    let mut remaining: BTreeMap<String, usize> = BTreeMap::new();
    for g in gold {
        *remaining.entry(fold(g)).or_insert(0) += 1;
    }
    let mut matched = 0;
    for p in produced {
        if let Some(count) = remaining.get_mut(&fold(p)) {
            if *count > 0 {
                *count -= 1;
                matched += 1;
            }
        }
    }
    matched
}

/// Per-document artifacts of one evaluation run, keyed by document id.
struct DocOutcome<'a> {
    produced: &'a [LinkDecision],
    gold: &'a [GoldMention],
}

fn pair_documents<'a>(
    produced: &'a BTreeMap<String, Vec<LinkDecision>>,
    gold: &'a [GoldAnnotation],
) -> BTreeMap<&'a str, DocOutcome<'a>> {
    static EMPTY_DECISIONS: &[LinkDecision] = &[];
    static EMPTY_GOLD: &[GoldMention] = &[];
    let mut docs: BTreeMap<&str, DocOutcome> = BTreeMap::new();
    for (id, decisions) in produced {
        docs.insert(
            id,
            DocOutcome {
                produced: decisions,
                gold: EMPTY_GOLD,
            },
        );
    }
    for g in gold {
        docs.entry(&g.doc_id)
            .or_insert(DocOutcome {
                produced: EMPTY_DECISIONS,
                gold: EMPTY_GOLD,
            })
            .gold = &g.mentions;
    }
    docs
}

/// Computes mention precision/recall/F1 over all documents.
pub fn mention_prf(
    produced: &BTreeMap<String, Vec<LinkDecision>>,
    gold: &[GoldAnnotation],
) -> MentionPrf {
    let docs = pair_documents(produced, gold);
    let mut precisions = Vec::new();
    let mut recalls = Vec::new();
    let mut undefined_precision = false;
    let mut undefined_recall = false;
    for outcome in docs.values() {
        let produced_surfaces: Vec<String> = outcome
            .produced
            .iter()
            .map(|d| d.mention.surface.clone())
            .collect();
        let gold_surfaces: Vec<String> =
            outcome.gold.iter().map(|g| g.surface.clone()).collect();
        let matched = match_surfaces(&produced_surfaces, &gold_surfaces);
        if produced_surfaces.is_empty() {
            undefined_precision = true;
            precisions.push(0.0);
        } else {
            precisions.push(matched as f64 / produced_surfaces.len() as f64);
        }
        if gold_surfaces.is_empty() {
            undefined_recall = true;
            recalls.push(0.0);
        } else {
            recalls.push(matched as f64 / gold_surfaces.len() as f64);
        }
    }
    let mean = |v: &[f64]| {
        if v.is_empty() {
            0.0
        } else {
            v.iter().sum::<f64>() / v.len() as f64
        }
    };
    let precision = mean(&precisions);
    let recall = mean(&recalls);
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    MentionPrf {
        precision,
        recall,
        f1,
        undefined_precision,
        undefined_recall,
    }
}

/// Link precision over the true-positive mentions only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkPrecision {
    pub precision: f64,
    /// Correctly-extracted mentions whose produced link matched the gold
    /// link.
    pub correct: usize,
    /// Correctly-extracted mentions that carried a gold link (the
    /// denominator).
    pub total: usize,
    /// True when no correctly-extracted mention carried a gold link, making
    /// the ratio undefined (reported as zero).
    pub undefined: bool,
}

/// For every produced mention whose surface matches an unconsumed gold
/// mention (case-folded), compares the produced entity title against the
/// gold link under URL/title normalization. Gold mentions without links and
/// produced decisions without entities count as incorrect but stay in the
/// denominator only when the gold side carries a link.
pub fn link_precision(
    produced: &BTreeMap<String, Vec<LinkDecision>>,
    gold: &[GoldAnnotation],
) -> LinkPrecision {
    let docs = pair_documents(produced, gold);
    let mut correct = 0;
    let mut total = 0;
    for outcome in docs.values() {
        // Consume gold mentions first-come so a surface annotated twice can
        // satisfy two produced mentions but no more.
        let mut pool: BTreeMap<String, Vec<&GoldMention>> = BTreeMap::new();
        for g in outcome.gold {
            pool.entry(fold(&g.surface)).or_default().push(g);
        }
        for decision in outcome.produced {
            let key = fold(&decision.mention.surface);
            let Some(bucket) = pool.get_mut(&key) else {
                continue;
            };
            if bucket.is_empty() {
                continue;
            }
            let gold_mention = bucket.remove(0);
            let Some(gold_link) = &gold_mention.link else {
                continue;
            };
            total += 1;
            if let Some(title) = &decision.entity_title {
                if normalize_link_target(title) == normalize_link_target(gold_link) {
                    correct += 1;
                }
            }
        }
    }
    let undefined = total == 0;
    LinkPrecision {
        precision: if undefined {
            0.0
        } else {
            correct as f64 / total as f64
        },
        correct,
        total,
        undefined,
    }
}

/// End-to-end recall: the fraction of all gold (surface, link) pairs that
/// the system both extracted and linked correctly, pooled over the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FullSystemRecall {
    pub recall: f64,
    pub correct: usize,
    pub total: usize,
}

pub fn full_system_recall(
    produced: &BTreeMap<String, Vec<LinkDecision>>,
    gold: &[GoldAnnotation],
) -> FullSystemRecall {
    let docs = pair_documents(produced, gold);
    let mut correct = 0;
    let mut total = 0;
    for outcome in docs.values() {
        total += outcome.gold.iter().filter(|g| g.link.is_some()).count();
        let mut pool: BTreeMap<String, Vec<&GoldMention>> = BTreeMap::new();
        for g in outcome.gold {
            pool.entry(fold(&g.surface)).or_default().push(g);
        }
        for decision in outcome.produced {
            let key = fold(&decision.mention.surface);
            let Some(bucket) = pool.get_mut(&key) else {
                continue;
            };
            if bucket.is_empty() {
                continue;
            }
            let gold_mention = bucket.remove(0);
            let (Some(gold_link), Some(title)) = (&gold_mention.link, &decision.entity_title)
            else {
                continue;
            };
            if normalize_link_target(title) == normalize_link_target(gold_link) {
                correct += 1;
            }
        }
    }
    FullSystemRecall {
        recall: if total == 0 {
            0.0
        } else {
            correct as f64 / total as f64
        },
        correct,
        total,
    }
}

/// Citation-volume zone of a document, by incoming-citation count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Zone {
    /// Fewer than 5 incoming citations.
    Low,
    /// 5 to 9 incoming citations.
    Medium,
    /// 10 or more incoming citations.
    High,
}

impl Zone {
    pub fn from_citations(in_citations: usize) -> Self {
        if in_citations < 5 {
            Zone::Low
        } else if in_citations < 10 {
            Zone::Medium
        } else {
            Zone::High
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Zone::Low => "low",
            Zone::Medium => "medium",
            Zone::High => "high",
        }
    }
}

/// Metrics for one citation zone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoneReport {
    pub zone: Zone,
    pub doc_count: usize,
    pub mention: MentionPrf,
    pub link: LinkPrecision,
    pub full_system: FullSystemRecall,
}

/// Splits documents into citation zones (using `in_citations` per document;
/// documents absent from the map count zero citations) and evaluates each
/// zone independently. Zones with no documents are omitted.
pub fn zone_breakdown(
    produced: &BTreeMap<String, Vec<LinkDecision>>,
    gold: &[GoldAnnotation],
    in_citations: &BTreeMap<String, usize>,
) -> Vec<ZoneReport> {
    let docs = pair_documents(produced, gold);
    let mut zones: BTreeMap<Zone, (BTreeMap<String, Vec<LinkDecision>>, Vec<GoldAnnotation>)> =
        BTreeMap::new();
    for (id, outcome) in &docs {
        let zone = Zone::from_citations(in_citations.get(*id).copied().unwrap_or(0));
        let (zone_produced, zone_gold) = zones.entry(zone).or_default();
        zone_produced.insert(id.to_string(), outcome.produced.to_vec());
        if !outcome.gold.is_empty() {
            zone_gold.push(GoldAnnotation {
                doc_id: id.to_string(),
                mentions: outcome.gold.to_vec(),
            });
        }
    }
    zones
        .into_iter()
        .map(|(zone, (zone_produced, zone_gold))| ZoneReport {
            zone,
            doc_count: zone_produced.len(),
            mention: mention_prf(&zone_produced, &zone_gold),
            link: link_precision(&zone_produced, &zone_gold),
            full_system: full_system_recall(&zone_produced, &zone_gold),
        })
        .collect()
}

/// Three views of annotator approval for one report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    /// Fraction of mentions approved by a strict majority of their
    /// annotators, pooled over every judged mention.
    pub majority: f64,
    /// Mean over documents of the per-document mean approval fraction.
    pub macro_avg: f64,
    /// Mean approval fraction pooled over every verdict-set.
    pub micro: f64,
}

/// Annotator agreement: mention quality counts `KL` and `K` as approval;
/// link quality counts only `KL`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnotatorAggregate {
    pub mention: AggregateReport,
    pub link: AggregateReport,
}

fn aggregate(judgments: &[Judgment], approves: impl Fn(Verdict) -> bool) -> AggregateReport {
    let mut majority_hits = 0usize;
    let mut fractions_by_doc: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    let mut all_fractions = Vec::new();
    for j in judgments {
        let total = j.verdicts.len();
        if total == 0 {
            continue;
        }
        let approvals = j.verdicts.iter().filter(|v| approves(**v)).count();
        let fraction = approvals as f64 / total as f64;
        if approvals * 2 > total {
            majority_hits += 1;
        }
        fractions_by_doc
            .entry(j.doc_id.as_str())
            .or_default()
            .push(fraction);
        all_fractions.push(fraction);
    }
    let mean = |v: &[f64]| {
        if v.is_empty() {
            0.0
        } else {
            v.iter().sum::<f64>() / v.len() as f64
        }
    };
    let doc_means: Vec<f64> = fractions_by_doc.values().map(|v| mean(v)).collect();
    AggregateReport {
        majority: if all_fractions.is_empty() {
            0.0
        } else {
            majority_hits as f64 / all_fractions.len() as f64
        },
        macro_avg: mean(&doc_means),
        micro: mean(&all_fractions),
    }
}

/// Aggregates annotator verdicts into mention-quality and link-quality
/// reports. An empty judgment set is rejected: there is nothing to measure,
/// and reporting zeros would read as unanimous disapproval.
pub fn annotator_aggregate(judgments: &[Judgment]) -> Result<AnnotatorAggregate, EvalError> {
    if judgments.is_empty() {
        return Err(EvalError::EmptyJudgments);
    }
    Ok(AnnotatorAggregate {
        mention: aggregate(judgments, |v| matches!(v, Verdict::KL | Verdict::K)),
        link: aggregate(judgments, |v| matches!(v, Verdict::KL)),
    })
}

/// The complete evaluation report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub doc_count: usize,
    pub mention: MentionPrf,
    pub link: LinkPrecision,
    pub full_system: FullSystemRecall,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zones: Vec<ZoneReport>,
}

/// Evaluates system output against gold annotations. When `in_citations` is
/// given, the report also carries per-zone breakdowns.
pub fn evaluate(
    produced: &BTreeMap<String, Vec<LinkDecision>>,
    gold: &[GoldAnnotation],
    in_citations: Option<&BTreeMap<String, usize>>,
) -> EvalReport {
    let docs = pair_documents(produced, gold);
    EvalReport {
        doc_count: docs.len(),
        mention: mention_prf(produced, gold),
        link: link_precision(produced, gold),
        full_system: full_system_recall(produced, gold),
        zones: in_citations
            .map(|c| zone_breakdown(produced, gold, c))
            .unwrap_or_default(),
    }
}
