//! Offline knowledge-base snapshot: entity records keyed by title, a
//! normalized surface index over titles and redirects, and candidate lookup
//! with disambiguation-page expansion.

use std::collections::{HashMap, HashSet};
use std::io::BufRead;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One concept page from the snapshot. A `is_dab_page` entity is a pure
/// navigation page: its `dab_entries` list the concept pages it points to.
/// A regular page may also carry `dab_entries` when a disambiguation page is
/// associated with its surface; lookup then offers both the page itself and
/// every listed entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    pub title: String,
    #[serde(default)]
    pub summary: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub redirects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dab_entries: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub is_dab_page: bool,
}

impl Entity {
    /// A plain concept page with no redirects or disambiguation wiring.
    pub fn page(title: impl Into<String>, summary: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            summary: summary.into(),
            redirects: Vec::new(),
            dab_entries: Vec::new(),
            is_dab_page: false,
        }
    }
}

/// Errors raised while building or loading a knowledge base.
#[derive(Debug, Error)]
pub enum KbError {
    #[error("duplicate entity title `{0}`")]
    DuplicateTitle(String),
    #[error("entity record with an empty title")]
    EmptyTitle,
    #[error("entity `{page}` lists unknown disambiguation target `{target}`")]
    UnknownDabTarget { page: String, target: String },
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Canonical surface form: Unicode case-fold, collapse internal whitespace to
/// single spaces, strip surrounding punctuation. Both index construction and
/// lookup use this, so any two surfaces that normalize alike will meet.
pub fn normalize_surface(surface: &str) -> String {
    let folded = surface.to_lowercase();
    let collapsed = folded.split_whitespace().collect::<Vec<_>>().join(" ");
    collapsed
        .trim_matches(|c: char| c.is_ascii_punctuation())
        .trim()
        .to_string()
}

/// The loaded snapshot: entities in file order plus a normalized surface
/// index. Candidate lists preserve snapshot insertion order, so lookup
/// results are stable across runs.
#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    entities: Vec<Entity>,
    by_title: HashMap<String, usize>,
    surface_index: HashMap<String, Vec<usize>>,
}

impl KnowledgeBase {
    /// Builds the base from entity records in stream order. Titles must be
    /// unique and non-empty, and every disambiguation entry must name a title
    /// present somewhere in the stream (forward references are fine).
    pub fn from_entities<I>(records: I) -> Result<Self, KbError>
    where
        I: IntoIterator<Item = Entity>,
    {
        let mut entities = Vec::new();
        let mut by_title = HashMap::new();
        let mut surface_index: HashMap<String, Vec<usize>> = HashMap::new();
        for entity in records {
            if entity.title.is_empty() {
                return Err(KbError::EmptyTitle);
            }
            let idx = entities.len();
            if by_title.insert(entity.title.clone(), idx).is_some() {
                return Err(KbError::DuplicateTitle(entity.title));
            }
            let mut keys_seen = HashSet::new();
            for surface in std::iter::once(&entity.title).chain(&entity.redirects) {
                let key = normalize_surface(surface);
                if key.is_empty() || !keys_seen.insert(key.clone()) {
                    continue;
                }
                let bucket = surface_index.entry(key).or_default();
                if !bucket.contains(&idx) {
                    bucket.push(idx);
                }
            }
            entities.push(entity);
        }
        for entity in &entities {
            for target in &entity.dab_entries {
                if !by_title.contains_key(target) {
                    return Err(KbError::UnknownDabTarget {
                        page: entity.title.clone(),
                        target: target.clone(),
                    });
                }
            }
        }
        Ok(Self {
            entities,
            by_title,
            surface_index,
        })
    }

    /// Reads a JSON Lines snapshot (one entity object per line; blank lines
    /// skipped) and builds the base.
    pub fn from_jsonl(reader: impl BufRead) -> Result<Self, KbError> {
        let mut records = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let entity: Entity =
                serde_json::from_str(&line).map_err(|source| KbError::Parse {
                    line: i + 1,
                    source,
                })?;
            records.push(entity);
        }
        Self::from_entities(records)
    }

    pub fn len(&self) -> usize {
        self.entities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }

    pub fn get(&self, title: &str) -> Option<&Entity> {
        self.by_title.get(title).map(|&i| &self.entities[i])
    }

    /// Entities in snapshot order.
    pub fn iter(&self) -> impl Iterator<Item = &Entity> {
        self.entities.iter()
    }

    /// All candidate concept pages for a surface form. Every entity whose
    /// normalized title or redirect matches contributes itself (unless it is
    /// a pure disambiguation page) followed by its listed disambiguation
    /// entries, deduplicated in first-seen order.
    pub fn lookup_candidates(&self, surface: &str) -> Vec<&Entity> {
        let key = normalize_surface(surface);
        if key.is_empty() {
            return Vec::new();
        }
        let mut indices = Vec::new();
        let mut seen = HashSet::new();
        for &idx in self.surface_index.get(&key).into_iter().flatten() {
            let entity = &self.entities[idx];
            if !entity.is_dab_page && seen.insert(idx) {
                indices.push(idx);
            }
            for target in &entity.dab_entries {
                let target_idx = self.by_title[target.as_str()];
                if seen.insert(target_idx) {
                    indices.push(target_idx);
                }
            }
        }
        indices.into_iter().map(|idx| &self.entities[idx]).collect()
    }

    /// True when the surface resolves to at least one candidate page.
    pub fn has_concept(&self, surface: &str) -> bool {
        !self.lookup_candidates(surface).is_empty()
    }
}
