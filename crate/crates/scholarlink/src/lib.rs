//! Offline wikification of scientific abstracts.
//!
//! The pipeline has two phases. Mention extraction strips inline citations,
//! tags tokens, builds noun/adjective fragments, keeps the ones that name a
//! knowledge-base concept, and ranks them by tf-idf under a sentence-count
//! quota. Entity linking ranks each mention's candidate pages by cosine
//! confidence against the abstract; when the top two candidates are too close,
//! the abstract is enhanced with related abstracts reached over metapaths in a
//! scholarly graph (shared authors, references, citations) and the winner is
//! chosen by n-gram overlap — or, for acronyms, by a linear interpolation of
//! plain and enhanced cosine scores.

pub mod eval;
pub mod graph;
pub mod kb;
pub mod linker;
pub mod mention;
pub mod text;

pub use graph::{DegreeSummary, GraphError, MetapathSpec, PaperRecord, ScholarlyGraph};
pub use kb::{normalize_surface, Entity, KbError, KnowledgeBase};
pub use linker::{
    Document, EngineConfig, LinkDecision, LinkRoute, Linker, LinkerError,
};
pub use mention::{is_acronym, Mention, MentionError, MentionExtractor, MentionQuota};
pub use text::{cosine, normalize_scientific, IdfModel, TermVector, TextAnalyzer};
