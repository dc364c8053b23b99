//! Mention extraction: maximal noun/adjective runs are split into fragments
//! of at most three tokens, filtered against the knowledge base, scored by
//! tf-idf, and truncated to a sentence-count quota.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kb::KnowledgeBase;
use crate::text::{
    count_sentences, normalize_scientific, IdfModel, PosTag, TextAnalyzer, TextError, TokenSeq,
};

/// Longest fragment the greedy splitter emits.
pub const MAX_FRAGMENT_TOKENS: usize = 3;

/// Errors raised during mention extraction.
#[derive(Debug, Error)]
pub enum MentionError {
    #[error("abstract is empty")]
    EmptyAbstract,
    #[error("quota table is not monotone non-decreasing")]
    NonMonotoneQuota,
    #[error("quota table contains a zero quota")]
    ZeroQuota,
    #[error(transparent)]
    Text(#[from] TextError),
}

/// One extracted mention. `start`/`end` are byte offsets into the
/// citation-stripped abstract, and `surface` is exactly that slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mention {
    pub surface: String,
    pub start: usize,
    pub end: usize,
    pub tfidf_score: f64,
    pub is_acronym: bool,
    pub token_len: usize,
}

/// One step of the sentence-count quota table: abstracts with at most
/// `max_sentences` sentences keep at most `quota` mentions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotaStep {
    pub max_sentences: usize,
    pub quota: usize,
}

/// Step function from sentence count to mention quota. The default table
/// keeps 4 mentions for up to 2 sentences, 8 for up to 4, and 12 beyond.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MentionQuota {
    pub steps: Vec<QuotaStep>,
    pub fallback: usize,
}

impl Default for MentionQuota {
    fn default() -> Self {
        Self {
            steps: vec![
                QuotaStep { max_sentences: 2, quota: 4 },
                QuotaStep { max_sentences: 4, quota: 8 },
            ],
            fallback: 12,
        }
    }
}

impl MentionQuota {
    /// The quota for an abstract with the given sentence count: the first
    /// step whose bound covers it, else the fallback.
    pub fn quota_for(&self, sentence_count: usize) -> usize {
        self.steps
            .iter()
            .find(|s| sentence_count <= s.max_sentences)
            .map(|s| s.quota)
            .unwrap_or(self.fallback)
    }

    /// Steps must be ordered by sentence bound with non-decreasing, non-zero
    /// quotas ending at the fallback.
    pub fn validate(&self) -> Result<(), MentionError> {
        let mut prev_bound = 0;
        let mut prev_quota = 0;
        for step in &self.steps {
            if step.quota == 0 {
                return Err(MentionError::ZeroQuota);
            }
            if step.max_sentences <= prev_bound && prev_bound != 0 || step.quota < prev_quota {
                return Err(MentionError::NonMonotoneQuota);
            }
            prev_bound = step.max_sentences;
            prev_quota = step.quota;
        }
        if self.fallback == 0 {
            return Err(MentionError::ZeroQuota);
        }
        if self.fallback < prev_quota {
            return Err(MentionError::NonMonotoneQuota);
        }
        Ok(())
    }
}

/// A candidate fragment: a contiguous run of tokens, addressed both by token
/// range and byte span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fragment {
    pub start: usize,
    pub end: usize,
    pub token_start: usize,
    pub token_len: usize,
}

/// Splits every maximal NOUN/ADJ run into fragments greedily from the left:
/// three tokens while possible, then the remainder (a run of 4 yields 3 + 1,
/// a run of 7 yields 3 + 3 + 1). Runs never cross a sentence boundary, and
/// fragments never overlap.
pub fn candidate_fragments(tokens: &TokenSeq) -> Vec<Fragment> {
    let mut fragments = Vec::new();
    let mut run_start: Option<usize> = None;
    let eligible: Vec<bool> = tokens
        .tokens
        .iter()
        .map(|t| matches!(t.tag, PosTag::Noun | PosTag::Adj))
        .collect();
    for i in 0..=tokens.len() {
        let in_run = i < tokens.len() && eligible[i];
        let new_sentence = i < tokens.len() && tokens.tokens[i].sentence_initial;
        if let Some(s) = run_start {
            if !in_run || new_sentence {
                let mut pos = s;
                while pos < i {
                    let len = (i - pos).min(MAX_FRAGMENT_TOKENS);
                    fragments.push(Fragment {
                        start: tokens.tokens[pos].start,
                        end: tokens.tokens[pos + len - 1].end,
                        token_start: pos,
                        token_len: len,
                    });
                    pos += len;
                }
                run_start = None;
            }
        }
        if run_start.is_none() && in_run {
            run_start = Some(i);
        }
    }
    fragments
}

/// True for single-token surfaces of 2–6 characters that start with an
/// uppercase letter and continue with uppercase letters or digits — `WSD`
/// and `W3C` qualify, `Wi` and `signal` do not.
pub fn is_acronym(surface: &str) -> bool {
    let chars: Vec<char> = surface.chars().collect();
    if chars.len() < 2 || chars.len() > 6 {
        return false;
    }
    let mut iter = chars.iter();
    let first = iter.next().expect("length checked");
    if !first.is_alphabetic() || !first.is_uppercase() {
        return false;
    }
    iter.all(|c| (c.is_alphabetic() && c.is_uppercase()) || c.is_ascii_digit())
}

/// Counts non-overlapping occurrences of `needle` in `haystack`, scanning
/// left to right.
fn count_occurrences(haystack: &[String], needle: &[String]) -> usize {
    if needle.is_empty() || haystack.len() < needle.len() {
        return 0;
    }
    let mut count = 0;
    let mut i = 0;
    while i + needle.len() <= haystack.len() {
        if haystack[i..i + needle.len()] == *needle {
            count += 1;
            i += needle.len();
        } else {
            i += 1;
        }
    }
    count
}

/// Runs the extraction pipeline for one abstract.
#[derive(Debug, Clone)]
pub struct MentionExtractor<'a> {
    analyzer: &'a TextAnalyzer,
    quota: MentionQuota,
}

impl<'a> MentionExtractor<'a> {
    pub fn new(analyzer: &'a TextAnalyzer, quota: MentionQuota) -> Self {
        Self { analyzer, quota }
    }

    /// Extracts ranked mentions: citation-strip, tag, fragment, keep
    /// fragments the knowledge base recognizes, score by (non-overlapping
    /// term frequency) × (phrase idf), collapse duplicate surfaces onto
    /// their first span, sort by score (ties: longer fragment, then earlier
    /// span), and truncate to the sentence-count quota.
    pub fn extract(
        &self,
        abstract_text: &str,
        kb: &KnowledgeBase,
        idf: &IdfModel,
    ) -> Result<Vec<Mention>, MentionError> {
        if abstract_text.trim().is_empty() {
            return Err(MentionError::EmptyAbstract);
        }
        let text = normalize_scientific(abstract_text);
        if text.trim().is_empty() {
            return Err(MentionError::EmptyAbstract);
        }
        let sentence_count = count_sentences(&text)?;
        let quota = self.quota.quota_for(sentence_count);
        let tokens = self.analyzer.tag_tokens(&text);
        let folded: Vec<String> = tokens
            .tokens
            .iter()
            .map(|t| t.text.to_lowercase())
            .collect();

        let mut mentions: Vec<Mention> = Vec::new();
        let mut seen_phrases = std::collections::HashSet::new();
        for fragment in candidate_fragments(&tokens) {
            let surface = &text[fragment.start..fragment.end];
            if !kb.has_concept(surface) {
                continue;
            }
            let phrase_tokens = &folded[fragment.token_start..fragment.token_start + fragment.token_len];
            let phrase = phrase_tokens.join(" ");
            if !seen_phrases.insert(phrase.clone()) {
                continue; // Duplicate surface: the earlier span wins.
            }
            let tf = count_occurrences(&folded, phrase_tokens);
            let score = tf as f64 * idf.idf(&phrase);
            mentions.push(Mention {
                surface: surface.to_string(),
                start: fragment.start,
                end: fragment.end,
                tfidf_score: score,
                is_acronym: is_acronym(surface),
                token_len: fragment.token_len,
            });
        }
        mentions.sort_by(|a, b| {
            b.tfidf_score
                .partial_cmp(&a.tfidf_score)
                .expect("tf-idf scores are finite")
                .then(b.token_len.cmp(&a.token_len))
                .then(a.start.cmp(&b.start))
        });
        mentions.truncate(quota);
        Ok(mentions)
    }
}
