//! Text-analysis building blocks shared by the whole pipeline: inline-citation
//! stripping, sentence counting, part-of-speech tagging, n-gram generation,
//! sparse term vectors, and inverse-document-frequency statistics.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::io::BufRead;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors produced by the text-analysis routines.
#[derive(Debug, Error)]
pub enum TextError {
    /// Input text was empty (or whitespace-only) where content is required.
    #[error("input text is empty")]
    EmptyText,
    /// A resource file (stopword list or tagger lexicon) had a malformed line.
    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },
    /// Reading a resource file failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One author-year citation item, e.g. `Blei et al., 2003` or `Griffiths, 2004`.
const CITATION_ITEM: &str = r"[A-Z][a-z]+(?:[-'][A-Za-z]+)*(?:\s+et\s+al\.?)?,\s*\d{4}";

static CITATION_SEQ: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(&format!(
        r"{CITATION_ITEM}(?:\s*[;,]\s*(?:{CITATION_ITEM}))*"
    ))
    .expect("citation-sequence pattern compiles")
});

static PAREN_CITATION: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(&format!(
        r"\(\s*{CITATION_ITEM}(?:\s*[;,]\s*(?:{CITATION_ITEM}))*\s*\)"
    ))
    .expect("parenthesized-citation pattern compiles")
});

static DOUBLE_SPACE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"  +").expect("double-space pattern compiles"));

/// Removes inline citation patterns — parenthesized or bare sequences of
/// `Name (et al.)?, year` items separated by `;`/`,` — and collapses the
/// double spaces the removal leaves behind. All other text is preserved
/// byte-for-byte. Removal runs to a fixed point, so the function is
/// idempotent even when stripping one pattern exposes another.
pub fn normalize_scientific(text: &str) -> String {
    let mut current = text.to_string();
    for _ in 0..16 {
        let pass = PAREN_CITATION.replace_all(&current, "");
        let pass = CITATION_SEQ.replace_all(&pass, "");
        let pass = DOUBLE_SPACE.replace_all(&pass, " ").into_owned();
        if pass == current {
            break;
        }
        current = pass;
    }
    current
}

/// True for tokens that should not end a sentence even when followed by a
/// terminator: single letters (initials such as `A.`) and the `al` of `et al.`.
fn is_abbreviation_token(token: &str) -> bool {
    let mut chars = token.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => c.is_alphabetic(),
        _ => token.eq_ignore_ascii_case("al"),
    }
}

/// Byte offsets at which sentences start: the first non-whitespace character,
/// then the first character after every internal boundary (a `.`/`!`/`?` run
/// followed by whitespace and an uppercase letter, with the abbreviation
/// guard applied to the token before the terminator).
fn sentence_starts(text: &str) -> Vec<usize> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut starts = Vec::new();
    if let Some(&(i, _)) = chars.iter().find(|(_, c)| !c.is_whitespace()) {
        starts.push(i);
    }
    let mut k = 0;
    while k < chars.len() {
        if !matches!(chars[k].1, '.' | '!' | '?') {
            k += 1;
            continue;
        }
        let mut j = k;
        while j > 0 && chars[j - 1].1.is_alphanumeric() {
            j -= 1;
        }
        let preceding: String = chars[j..k].iter().map(|&(_, c)| c).collect();
        // Skip the rest of the terminator run plus any closing quotes/brackets.
        let mut m = k + 1;
        while m < chars.len() && matches!(chars[m].1, '.' | '!' | '?' | ')' | '"' | '\'') {
            m += 1;
        }
        let mut w = m;
        while w < chars.len() && chars[w].1.is_whitespace() {
            w += 1;
        }
        let followed_by_upper = w > m && w < chars.len() && chars[w].1.is_uppercase();
        if followed_by_upper && !is_abbreviation_token(&preceding) {
            starts.push(chars[w].0);
        }
        k = m;
    }
    starts
}

/// Counts sentences as internal boundaries + 1. Boundaries are `.`, `!`, `?`
/// followed by whitespace and an uppercase letter; a terminator at end of
/// text closes the final sentence without adding a count. Single-letter
/// tokens and `et al.` do not end sentences.
pub fn count_sentences(text: &str) -> Result<usize, TextError> {
    if text.trim().is_empty() {
        return Err(TextError::EmptyText);
    }
    Ok(sentence_starts(text).len())
}

/// Byte spans of maximal alphanumeric runs, in order of appearance.
pub(crate) fn token_spans(text: &str) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        if c.is_alphanumeric() {
            if start.is_none() {
                start = Some(i);
            }
        } else if let Some(s) = start.take() {
            spans.push((s, i));
        }
    }
    if let Some(s) = start {
        spans.push((s, text.len()));
    }
    spans
}

/// Part-of-speech classes the fragment generator cares about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Adj,
    Other,
}

/// A tagged token with its byte span in the analyzed text.
#[derive(Debug, Clone)]
pub struct Token {
    pub text: String,
    pub start: usize,
    pub end: usize,
    pub tag: PosTag,
    pub sentence_initial: bool,
}

/// The tagged token sequence of one text.
#[derive(Debug, Clone, Default)]
pub struct TokenSeq {
    pub tokens: Vec<Token>,
}

impl TokenSeq {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Word → tag table consulted before the suffix fallback rules. Keys are
/// case-folded.
#[derive(Debug, Clone)]
pub struct Lexicon {
    tags: HashMap<String, PosTag>,
}

const BUNDLED_LEXICON: &str = include_str!("../data/lexicon.tsv");
const BUNDLED_STOPWORDS: &str = include_str!("../data/stopwords.txt");

impl Lexicon {
    /// Parses `word<TAB>tag` lines; blank lines and `#` comments are skipped.
    pub fn from_tsv(reader: impl BufRead) -> Result<Self, TextError> {
        let mut tags = HashMap::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split('\t');
            let (word, tag) = match (parts.next(), parts.next(), parts.next()) {
                (Some(w), Some(t), None) if !w.is_empty() => (w, t),
                _ => {
                    return Err(TextError::MalformedLine {
                        line: i + 1,
                        message: "expected `word<TAB>tag`".into(),
                    })
                }
            };
            let tag = match tag {
                "NOUN" => PosTag::Noun,
                "ADJ" => PosTag::Adj,
                "OTHER" => PosTag::Other,
                other => {
                    return Err(TextError::MalformedLine {
                        line: i + 1,
                        message: format!("unknown tag `{other}`"),
                    })
                }
            };
            tags.insert(word.to_lowercase(), tag);
        }
        Ok(Self { tags })
    }

    pub fn get(&self, folded_word: &str) -> Option<PosTag> {
        self.tags.get(folded_word).copied()
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }
}

impl Default for Lexicon {
    fn default() -> Self {
        Self::from_tsv(BUNDLED_LEXICON.as_bytes()).expect("bundled lexicon is valid")
    }
}

/// Stopword list used for term vectors and n-gram overlap filtering. Words
/// are stored case-folded.
#[derive(Debug, Clone)]
pub struct StopwordList {
    words: HashSet<String>,
}

impl StopwordList {
    /// Parses a one-word-per-line file; blank lines and `#` comments are skipped.
    pub fn from_reader(reader: impl BufRead) -> Result<Self, TextError> {
        let mut words = HashSet::new();
        for line in reader.lines() {
            let line = line?;
            let word = line.trim();
            if word.is_empty() || word.starts_with('#') {
                continue;
            }
            words.insert(word.to_lowercase());
        }
        Ok(Self { words })
    }

    /// An empty list (useful when every token should count).
    pub fn empty() -> Self {
        Self {
            words: HashSet::new(),
        }
    }

    pub fn from_words<I: IntoIterator<Item = S>, S: AsRef<str>>(words: I) -> Self {
        Self {
            words: words
                .into_iter()
                .map(|w| w.as_ref().to_lowercase())
                .collect(),
        }
    }

    pub fn contains(&self, folded_word: &str) -> bool {
        self.words.contains(folded_word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl Default for StopwordList {
    fn default() -> Self {
        Self::from_reader(BUNDLED_STOPWORDS.as_bytes()).expect("bundled stopword list is valid")
    }
}

const NOUN_SUFFIXES: [&str; 4] = ["tion", "ment", "ness", "ing"];
const ADJ_SUFFIXES: [&str; 4] = ["al", "ive", "ous", "able"];

/// Minimum stem length (in characters) for a suffix rule to fire, so that
/// short words like `the` or `ring` are not forced into a class.
const MIN_STEM_CHARS: usize = 2;

fn suffix_tag(folded_word: &str) -> Option<PosTag> {
    let chars = folded_word.chars().count();
    let fires = |sfx: &str| folded_word.ends_with(sfx) && chars >= sfx.chars().count() + MIN_STEM_CHARS;
    if NOUN_SUFFIXES.iter().any(|s| fires(s)) {
        return Some(PosTag::Noun);
    }
    if ADJ_SUFFIXES.iter().any(|s| fires(s)) {
        return Some(PosTag::Adj);
    }
    None
}

/// Shared analysis context bundling the tagger lexicon and stopword list.
#[derive(Debug, Clone, Default)]
pub struct TextAnalyzer {
    pub lexicon: Lexicon,
    pub stopwords: StopwordList,
}

impl TextAnalyzer {
    pub fn new(lexicon: Lexicon, stopwords: StopwordList) -> Self {
        Self { lexicon, stopwords }
    }

    /// Tags every token: lexicon lookup first, then the suffix rules
    /// (-tion/-ment/-ness/-ing → NOUN, -al/-ive/-ous/-able → ADJ), then
    /// capitalized-mid-sentence → NOUN, else OTHER.
    pub fn tag_tokens(&self, text: &str) -> TokenSeq {
        let starts: HashSet<usize> = sentence_starts(text).into_iter().collect();
        let tokens = token_spans(text)
            .into_iter()
            .map(|(start, end)| {
                let word = &text[start..end];
                let folded = word.to_lowercase();
                let sentence_initial = starts.contains(&start);
                let tag = self
                    .lexicon
                    .get(&folded)
                    .or_else(|| suffix_tag(&folded))
                    .unwrap_or_else(|| {
                        let capitalized = word.chars().next().is_some_and(|c| c.is_uppercase());
                        if capitalized && !sentence_initial {
                            PosTag::Noun
                        } else {
                            PosTag::Other
                        }
                    });
                Token {
                    text: word.to_string(),
                    start,
                    end,
                    tag,
                    sentence_initial,
                }
            })
            .collect();
        TokenSeq { tokens }
    }

    /// Case-folded token texts, stopwords included.
    pub fn fold_tokens(&self, text: &str) -> Vec<String> {
        token_spans(text)
            .into_iter()
            .map(|(s, e)| text[s..e].to_lowercase())
            .collect()
    }

    /// The multiset of token n-grams for n = 1..=max_n, each joined with a
    /// single space, ordered by n and then position. For `t` tokens the
    /// result holds Σ max(0, t − n + 1) entries.
    pub fn ngrams(&self, text: &str, max_n: usize) -> Vec<String> {
        let tokens = self.fold_tokens(text);
        let mut out = Vec::new();
        for n in 1..=max_n {
            if tokens.len() < n {
                break;
            }
            for window in tokens.windows(n) {
                out.push(window.join(" "));
            }
        }
        out
    }

    /// Raw term-frequency vector over case-folded tokens, stopwords removed.
    pub fn term_vector(&self, text: &str) -> TermVector {
        let mut weights = BTreeMap::new();
        for token in self.fold_tokens(text) {
            if !self.stopwords.contains(&token) {
                *weights.entry(token).or_insert(0.0) += 1.0;
            }
        }
        TermVector { weights }
    }
}

/// Sparse bag-of-words vector with raw term-frequency weights. Terms are kept
/// in a sorted map so that dot products and serialization are reproducible.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TermVector {
    weights: BTreeMap<String, f64>,
}

impl TermVector {
    /// Builds a vector from explicit weights; zero-weight entries are dropped.
    pub fn from_weights(weights: BTreeMap<String, f64>) -> Self {
        Self {
            weights: weights.into_iter().filter(|(_, w)| *w != 0.0).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn get(&self, term: &str) -> f64 {
        self.weights.get(term).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.weights.iter().map(|(t, w)| (t.as_str(), *w))
    }

    pub fn norm(&self) -> f64 {
        self.weights.values().map(|w| w * w).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &TermVector) -> f64 {
        self.weights
            .iter()
            .map(|(term, w)| w * other.get(term))
            .sum()
    }
}

/// Cosine similarity of two term vectors; 0.0 when either is empty or has
/// zero norm.
pub fn cosine(u: &TermVector, v: &TermVector) -> f64 {
    if u.is_empty() || v.is_empty() {
        return 0.0;
    }
    let (nu, nv) = (u.norm(), v.norm());
    if nu == 0.0 || nv == 0.0 {
        return 0.0;
    }
    u.dot(v) / (nu * nv)
}

/// Corpus-level phrase document frequencies with logarithmic idf weighting.
/// Phrases are case-folded token sequences (joined with single spaces) up to
/// `max_phrase_tokens` long; each document contributes once per distinct
/// phrase it contains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdfModel {
    doc_count: usize,
    max_phrase_tokens: usize,
    doc_freq: BTreeMap<String, usize>,
}

impl IdfModel {
    pub const DEFAULT_MAX_PHRASE_TOKENS: usize = 3;

    /// Builds the model from a document corpus. Each document is
    /// citation-stripped before tokenization so that frequencies match what
    /// the extraction pipeline sees.
    pub fn build<I, S>(docs: I, max_phrase_tokens: usize, analyzer: &TextAnalyzer) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut doc_freq: BTreeMap<String, usize> = BTreeMap::new();
        let mut doc_count = 0;
        for doc in docs {
            doc_count += 1;
            let text = normalize_scientific(doc.as_ref());
            let distinct: BTreeSet<String> =
                analyzer.ngrams(&text, max_phrase_tokens).into_iter().collect();
            for phrase in distinct {
                *doc_freq.entry(phrase).or_insert(0) += 1;
            }
        }
        Self {
            doc_count,
            max_phrase_tokens,
            doc_freq,
        }
    }

    pub fn doc_count(&self) -> usize {
        self.doc_count
    }

    pub fn max_phrase_tokens(&self) -> usize {
        self.max_phrase_tokens
    }

    /// Document frequency of a phrase, if the corpus contained it.
    pub fn doc_freq(&self, phrase: &str) -> Option<usize> {
        self.doc_freq.get(phrase).copied()
    }

    /// ln(doc_count / df). Phrases the corpus never saw fall back to df = 1,
    /// so idf is always finite and non-negative. An empty corpus yields 0.
    pub fn idf(&self, phrase: &str) -> f64 {
        if self.doc_count == 0 {
            return 0.0;
        }
        let df = self.doc_freq.get(phrase).copied().unwrap_or(1);
        ((self.doc_count as f64) / (df as f64)).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analyzer() -> TextAnalyzer {
        TextAnalyzer::default()
    }

    #[test]
    fn strips_parenthesized_citation_sequences() {
        let input = "LDA (Blei et al., 2003; Griffiths, 2004) is popular";
        assert_eq!(normalize_scientific(input), "LDA is popular");
    }

    #[test]
    fn leaves_plain_text_unchanged() {
        let input = "Latent topic models capture word co-occurrence.";
        assert_eq!(normalize_scientific(input), input);
    }

    #[test]
    fn keeps_bare_years_without_name_patterns() {
        let input = "In 2003 we built X";
        assert_eq!(normalize_scientific(input), input);
    }

    #[test]
    fn strips_bare_citation_items() {
        let input = "as proposed by Blei et al., 2003 for topic models";
        assert_eq!(normalize_scientific(input), "as proposed by for topic models");
    }

    #[test]
    fn counts_multi_terminator_text() {
        assert_eq!(count_sentences("Hmm. Ok? Yes!").unwrap(), 3);
    }

    #[test]
    fn single_letter_tokens_do_not_end_sentences() {
        assert_eq!(count_sentences("A. B. ran. It worked.").unwrap(), 2);
    }

    #[test]
    fn text_without_terminators_is_one_sentence() {
        assert_eq!(count_sentences("One sentence").unwrap(), 1);
    }

    #[test]
    fn empty_text_is_an_error() {
        assert!(matches!(count_sentences(""), Err(TextError::EmptyText)));
        assert!(matches!(count_sentences("   "), Err(TextError::EmptyText)));
    }

    #[test]
    fn et_al_does_not_end_a_sentence() {
        assert_eq!(count_sentences("Seen in Smith et al. Results differ.").unwrap(), 1);
    }

    #[test]
    fn tags_known_nouns() {
        let seq = analyzer().tag_tokens("grid computing");
        let tags: Vec<PosTag> = seq.tokens.iter().map(|t| t.tag).collect();
        assert_eq!(tags, vec![PosTag::Noun, PosTag::Noun]);
    }

    #[test]
    fn tags_empty_text_as_empty_sequence() {
        assert!(analyzer().tag_tokens("").is_empty());
    }

    #[test]
    fn tags_stopwords_as_other() {
        let seq = analyzer().tag_tokens("the");
        assert_eq!(seq.tokens[0].tag, PosTag::Other);
    }

    #[test]
    fn suffix_rules_classify_unknown_words() {
        let seq = analyzer().tag_tokens("we studied summarization and variational tricks");
        let by_word: HashMap<&str, PosTag> = seq
            .tokens
            .iter()
            .map(|t| (t.text.as_str(), t.tag))
            .collect();
        assert_eq!(by_word["summarization"], PosTag::Noun);
        assert_eq!(by_word["variational"], PosTag::Adj);
        assert_eq!(by_word["tricks"], PosTag::Other);
    }

    #[test]
    fn capitalized_mid_sentence_is_noun_but_sentence_initial_is_not() {
        let seq = analyzer().tag_tokens("Zorblat uses the Kalman filter. Kalman agreed.");
        let tokens: Vec<(&str, PosTag, bool)> = seq
            .tokens
            .iter()
            .map(|t| (t.text.as_str(), t.tag, t.sentence_initial))
            .collect();
        // "Zorblat" starts the first sentence: capitalization does not apply.
        assert_eq!(tokens[0], ("Zorblat", PosTag::Other, true));
        // Mid-sentence "Kalman" is unknown but capitalized.
        assert_eq!(tokens[3], ("Kalman", PosTag::Noun, false));
        // The second "Kalman" opens a sentence.
        assert_eq!(tokens[5], ("Kalman", PosTag::Other, true));
    }

    #[test]
    fn token_spans_recover_source_slices() {
        let text = "tf-idf weighting, or BM25.";
        let spans = token_spans(text);
        let words: Vec<&str> = spans.iter().map(|&(s, e)| &text[s..e]).collect();
        assert_eq!(words, vec!["tf", "idf", "weighting", "or", "BM25"]);
    }

    #[test]
    fn ngram_multiset_matches_window_law() {
        let grams = analyzer().ngrams("a b c", 2);
        assert_eq!(grams, vec!["a", "b", "c", "a b", "b c"]);
        assert!(analyzer().ngrams("", 3).is_empty());
        // 5 tokens, max_n = 3 → 5 + 4 + 3 = 12 n-grams.
        assert_eq!(analyzer().ngrams("v w x y z", 3).len(), 12);
    }

    #[test]
    fn ngrams_with_short_text_stop_at_token_count() {
        assert_eq!(analyzer().ngrams("solo", 3), vec!["solo"]);
    }

    #[test]
    fn term_vector_counts_and_removes_stopwords() {
        let v = analyzer().term_vector("the model and the data");
        assert_eq!(v.get("model"), 1.0);
        assert_eq!(v.get("data"), 1.0);
        assert_eq!(v.get("the"), 0.0);
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn term_vector_repeats_accumulate() {
        let v = analyzer().term_vector("model model model");
        assert_eq!(v.get("model"), 3.0);
    }

    #[test]
    fn cosine_of_identical_vectors_is_one() {
        let v = analyzer().term_vector("alpha beta gamma delta");
        assert!((cosine(&v, &v) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cosine_of_disjoint_vectors_is_zero() {
        let u = analyzer().term_vector("alpha beta");
        let v = analyzer().term_vector("gamma delta");
        assert_eq!(cosine(&u, &v), 0.0);
    }

    #[test]
    fn cosine_handles_empty_vectors() {
        let u = analyzer().term_vector("alpha");
        assert_eq!(cosine(&u, &TermVector::default()), 0.0);
        assert_eq!(cosine(&TermVector::default(), &TermVector::default()), 0.0);
    }

    #[test]
    fn cosine_partial_overlap_matches_hand_value() {
        // u = {a:1, b:1}, v = {a:1} → 1/√2.
        let mut u = BTreeMap::new();
        u.insert("a".to_string(), 1.0);
        u.insert("b".to_string(), 1.0);
        let mut v = BTreeMap::new();
        v.insert("a".to_string(), 1.0);
        let got = cosine(&TermVector::from_weights(u), &TermVector::from_weights(v));
        assert!((got - 1.0 / 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn idf_matches_log_ratios() {
        let analyzer = analyzer();
        let mut docs = vec!["quantum mechanics".to_string()];
        for _ in 0..99 {
            docs.push("ordinary text".to_string());
        }
        let model = IdfModel::build(docs.iter().map(String::as_str), 3, &analyzer);
        assert_eq!(model.doc_count(), 100);
        assert!((model.idf("quantum") - 100.0_f64.ln()).abs() < 1e-12);
        // A term in every document is uninformative.
        let every = IdfModel::build(["same text", "same text"], 3, &analyzer);
        assert_eq!(every.idf("same"), 0.0);
    }

    #[test]
    fn unseen_phrases_fall_back_to_df_one() {
        let analyzer = analyzer();
        let docs: Vec<String> = (0..10).map(|i| format!("doc number {i}")).collect();
        let model = IdfModel::build(docs.iter().map(String::as_str), 3, &analyzer);
        assert!((model.idf("unseen") - 10.0_f64.ln()).abs() < 1e-12);
        assert_eq!(model.doc_freq("unseen"), None);
    }

    #[test]
    fn phrase_doc_freq_counts_documents_not_occurrences() {
        let analyzer = analyzer();
        let model = IdfModel::build(
            ["machine translation and machine translation", "machine translation"],
            3,
            &analyzer,
        );
        assert_eq!(model.doc_freq("machine translation"), Some(2));
    }

    #[test]
    fn lexicon_rejects_malformed_lines() {
        let err = Lexicon::from_tsv("word only\n".as_bytes()).unwrap_err();
        assert!(matches!(err, TextError::MalformedLine { line: 1, .. }));
        let err = Lexicon::from_tsv("word\tVERB\n".as_bytes()).unwrap_err();
        assert!(matches!(err, TextError::MalformedLine { line: 1, .. }));
    }

    #[test]
    fn stopword_list_parses_and_folds() {
        let list = StopwordList::from_reader("The\nand\n\n# comment\n".as_bytes()).unwrap();
        assert!(list.contains("the"));
        assert!(list.contains("and"));
        assert_eq!(list.len(), 2);
    }
}
