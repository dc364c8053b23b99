//! Entity linking: cosine-confidence ranking, the ambiguity gate, metapath
//! context expansion, and the two disambiguation scorers (n-gram overlap for
//! ordinary mentions, interpolated cosine for acronyms).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, MetapathSpec, ScholarlyGraph};
use crate::kb::{Entity, KnowledgeBase};
use crate::mention::{Mention, MentionError, MentionExtractor, MentionQuota};
use crate::text::{cosine, normalize_scientific, IdfModel, TermVector, TextAnalyzer};

/// One input document: an identifier (matching a graph paper id when the
/// document is part of the network) and its abstract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
}

/// How a link decision was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkRoute {
    /// The surface resolved to no knowledge-base page.
    NoCandidate,
    /// Exactly one candidate existed; it wins by default.
    SingleCandidate,
    /// The confidence gap cleared the threshold; the cosine winner is kept.
    DirectCosine,
    /// Ambiguous non-acronym: highest n-gram overlap with the enhanced
    /// context wins.
    MetapathNgram,
    /// Ambiguous acronym: highest interpolated plain/enhanced cosine wins.
    AcronymInterpolated,
}

/// The linking outcome for one mention. `confidence_top` and
/// `confidence_gap` always describe the direct cosine ranking (top score and
/// top-minus-second; with fewer than two candidates the gap is the top score
/// itself), whatever route finally decided the entity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkDecision {
    pub mention: Mention,
    pub entity_title: Option<String>,
    pub route: LinkRoute,
    pub confidence_top: f64,
    pub confidence_gap: f64,
    pub context_papers_used: Vec<String>,
}

/// Tunable engine parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Ambiguity gate: gaps at or above this go straight to the cosine winner.
    pub th_cs: f64,
    /// Related abstracts must exceed this cosine against the target to join
    /// the enhanced context.
    pub th_relevance: f64,
    /// Weight of the plain-abstract cosine in the acronym interpolation.
    pub alpha: f64,
    /// Which metapath neighborhood feeds context expansion.
    pub metapath: MetapathSpec,
    /// Sentence-count quota table for mention extraction.
    pub quota: MentionQuota,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            th_cs: 0.06,
            th_relevance: 0.4,
            alpha: 0.6,
            metapath: MetapathSpec::YearRestrictedCra {
                back_window_years: 5,
            },
            quota: MentionQuota::default(),
        }
    }
}

/// Configuration errors reported by [`EngineConfig::validate`].
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{name} must lie in [0, 1], got {value}")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("back_window_years must be at least 1")]
    ZeroWindow,
    #[error(transparent)]
    Quota(#[from] MentionError),
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, value) in [
            ("th_cs", self.th_cs),
            ("th_relevance", self.th_relevance),
            ("alpha", self.alpha),
        ] {
            if !(0.0..=1.0).contains(&value) || value.is_nan() {
                return Err(ConfigError::OutOfRange { name, value });
            }
        }
        if let MetapathSpec::YearRestrictedCra { back_window_years } = self.metapath {
            if back_window_years == 0 {
                return Err(ConfigError::ZeroWindow);
            }
        }
        self.quota.validate()?;
        Ok(())
    }
}

/// Errors raised while wikifying a document.
#[derive(Debug, Error)]
pub enum LinkerError {
    #[error(transparent)]
    Mention(#[from] MentionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The enhanced context produced by metapath expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedContext {
    /// Target abstract followed by every admitted related abstract.
    pub text: String,
    /// Ids of the papers whose abstracts were appended, in appended order
    /// (descending relevance, ties by id).
    pub papers_used: Vec<String>,
}

/// Scores every candidate by cosine between the abstract vector and the
/// candidate's summary vector, sorted descending; equal scores keep
/// candidate order.
pub fn rank_by_confidence<'e>(
    abstract_vec: &TermVector,
    candidates: &[&'e Entity],
    analyzer: &TextAnalyzer,
) -> Vec<(&'e Entity, f64)> {
    let mut ranked: Vec<(&Entity, f64)> = candidates
        .iter()
        .map(|e| (*e, cosine(abstract_vec, &analyzer.term_vector(&e.summary))))
        .collect();
    ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("cosine scores are finite"));
    ranked
}

/// Builds the enhanced context for a target paper: related papers are found
/// over the metapath, abstract-less ones are skipped, and the rest join the
/// context when their cosine against the target vector strictly exceeds
/// `th_relevance`, ordered by descending relevance then paper id.
pub fn expand_context(
    graph: &ScholarlyGraph,
    target_id: &str,
    target_text: &str,
    target_vec: &TermVector,
    spec: &MetapathSpec,
    th_relevance: f64,
    analyzer: &TextAnalyzer,
) -> Result<ExpandedContext, GraphError> {
    let related = graph.related_papers(target_id, spec)?;
    let mut admitted: Vec<(f64, &str, &str)> = Vec::new();
    for id in &related {
        let paper = graph.paper(id).expect("related papers exist in the graph");
        if paper.abstract_text.trim().is_empty() {
            continue;
        }
        let relevance = cosine(target_vec, &analyzer.term_vector(&paper.abstract_text));
        if relevance > th_relevance {
            admitted.push((relevance, id.as_str(), paper.abstract_text.as_str()));
        }
    }
    admitted.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .expect("relevance scores are finite")
            .then(a.1.cmp(b.1))
    });
    let mut text = target_text.to_string();
    for (_, _, abstract_text) in &admitted {
        text.push(' ');
        text.push_str(abstract_text);
    }
    Ok(ExpandedContext {
        text,
        papers_used: admitted.into_iter().map(|(_, id, _)| id.to_string()).collect(),
    })
}

/// Counts distinct n-grams (n ≤ 3) shared between the enhanced context and
/// the entity's summary. Unigrams that are stopwords never count.
pub fn ngram_overlap_score(enhanced_text: &str, entity: &Entity, analyzer: &TextAnalyzer) -> usize {
    let context: BTreeSet<String> = analyzer.ngrams(enhanced_text, 3).into_iter().collect();
    let summary: BTreeSet<String> = analyzer.ngrams(&entity.summary, 3).into_iter().collect();
    context
        .intersection(&summary)
        .filter(|gram| gram.contains(' ') || !analyzer.stopwords.contains(gram))
        .count()
}

/// Interpolated acronym score: α·cos(abstract, summary) +
/// (1 − α)·cos(enhanced, summary).
pub fn score_acronym(
    abstract_vec: &TermVector,
    enhanced_vec: &TermVector,
    entity: &Entity,
    alpha: f64,
    analyzer: &TextAnalyzer,
) -> f64 {
    let summary_vec = analyzer.term_vector(&entity.summary);
    alpha * cosine(abstract_vec, &summary_vec)
        + (1.0 - alpha) * cosine(enhanced_vec, &summary_vec)
}

/// Ties everything together for one corpus: knowledge base, graph, idf
/// statistics, analyzer resources, and configuration.
#[derive(Debug, Clone)]
pub struct Linker<'a> {
    pub kb: &'a KnowledgeBase,
    pub graph: &'a ScholarlyGraph,
    pub idf: &'a IdfModel,
    pub analyzer: &'a TextAnalyzer,
    pub config: EngineConfig,
}

impl<'a> Linker<'a> {
    pub fn new(
        kb: &'a KnowledgeBase,
        graph: &'a ScholarlyGraph,
        idf: &'a IdfModel,
        analyzer: &'a TextAnalyzer,
        config: EngineConfig,
    ) -> Self {
        Self {
            kb,
            graph,
            idf,
            analyzer,
            config,
        }
    }

    /// Links one mention against the document it came from. `doc_text` must
    /// be the citation-stripped text the mention's span refers to.
    ///
    /// Candidates are ranked by cosine confidence; a gap at or above `th_cs`
    /// (including an exact tie with the threshold) keeps the top candidate.
    /// Otherwise the context is enhanced over the configured metapath — a
    /// document absent from the graph degrades to the bare abstract — and
    /// the winner is the candidate with the highest n-gram overlap (ordinary
    /// mentions; ties broken by cosine confidence then candidate order) or
    /// the highest interpolated cosine (acronyms; ties keep candidate order).
    pub fn link_mention(&self, mention: &Mention, doc_id: &str, doc_text: &str) -> LinkDecision {
        let doc_vec = self.analyzer.term_vector(doc_text);
        self.link_with_vec(mention, doc_id, doc_text, &doc_vec)
    }

    fn link_with_vec(
        &self,
        mention: &Mention,
        doc_id: &str,
        doc_text: &str,
        doc_vec: &TermVector,
    ) -> LinkDecision {
        let candidates = self.kb.lookup_candidates(&mention.surface);
        let decision = |entity: Option<&Entity>,
                        route: LinkRoute,
                        top: f64,
                        gap: f64,
                        papers: Vec<String>| LinkDecision {
            mention: mention.clone(),
            entity_title: entity.map(|e| e.title.clone()),
            route,
            confidence_top: top,
            confidence_gap: gap,
            context_papers_used: papers,
        };

        match candidates.as_slice() {
            [] => decision(None, LinkRoute::NoCandidate, 0.0, 0.0, Vec::new()),
            [only] => {
                let score = cosine(doc_vec, &self.analyzer.term_vector(&only.summary));
                decision(Some(only), LinkRoute::SingleCandidate, score, score, Vec::new())
            }
            _ => {
                let ranked = rank_by_confidence(doc_vec, &candidates, self.analyzer);
                let top = ranked[0].1;
                let gap = top - ranked[1].1;
                if gap >= self.config.th_cs {
                    return decision(
                        Some(ranked[0].0),
                        LinkRoute::DirectCosine,
                        top,
                        gap,
                        Vec::new(),
                    );
                }
                let context = if self.graph.contains(doc_id) {
                    expand_context(
                        self.graph,
                        doc_id,
                        doc_text,
                        doc_vec,
                        &self.config.metapath,
                        self.config.th_relevance,
                        self.analyzer,
                    )
                    .expect("graph containment was checked")
                } else {
                    ExpandedContext {
                        text: doc_text.to_string(),
                        papers_used: Vec::new(),
                    }
                };
                if mention.is_acronym {
                    let enhanced_vec = self.analyzer.term_vector(&context.text);
                    let mut best = 0;
                    let mut best_score = f64::NEG_INFINITY;
                    for (i, candidate) in candidates.iter().enumerate() {
                        let score = score_acronym(
                            doc_vec,
                            &enhanced_vec,
                            candidate,
                            self.config.alpha,
                            self.analyzer,
                        );
                        if score > best_score {
                            best = i;
                            best_score = score;
                        }
                    }
                    decision(
                        Some(candidates[best]),
                        LinkRoute::AcronymInterpolated,
                        top,
                        gap,
                        context.papers_used,
                    )
                } else {
                    let confidence: Vec<f64> = candidates
                        .iter()
                        .map(|c| {
                            ranked
                                .iter()
                                .find(|(e, _)| std::ptr::eq(*e, *c))
                                .expect("every candidate was ranked")
                                .1
                        })
                        .collect();
                    let overlaps: Vec<usize> = candidates
                        .iter()
                        .map(|c| ngram_overlap_score(&context.text, c, self.analyzer))
                        .collect();
                    let mut best = 0;
                    for i in 1..candidates.len() {
                        let better = overlaps[i] > overlaps[best]
                            || (overlaps[i] == overlaps[best]
                                && confidence[i] > confidence[best]);
                        if better {
                            best = i;
                        }
                    }
                    decision(
                        Some(candidates[best]),
                        LinkRoute::MetapathNgram,
                        top,
                        gap,
                        context.papers_used,
                    )
                }
            }
        }
    }

    /// Runs the full pipeline for one document: extraction, then one link
    /// decision per mention, in mention rank order. An abstract with no
    /// valid fragments yields an empty list.
    pub fn wikify_document(&self, doc: &Document) -> Result<Vec<LinkDecision>, LinkerError> {
        let text = normalize_scientific(&doc.text);
        let extractor = MentionExtractor::new(self.analyzer, self.config.quota.clone());
        let mentions = extractor.extract(&doc.text, self.kb, self.idf)?;
        let doc_vec = self.analyzer.term_vector(&text);
        Ok(mentions
            .iter()
            .map(|m| self.link_with_vec(m, &doc.id, &text, &doc_vec))
            .collect())
    }
}
