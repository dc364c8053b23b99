//! On-disk index bundle: three length-prefixed binary artifacts in one directory.
//!
//! Each artifact carries a magic header, a format version byte, a section name,
//! and a length-prefixed JSON payload.  The payload encoding is fully
//! deterministic (struct fields in declaration order, sorted maps), so building
//! the same inputs twice yields byte-identical files.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use scholarlink::graph::{PaperRecord, ScholarlyGraph};
use scholarlink::kb::{Entity, KnowledgeBase};
use scholarlink::text::IdfModel;
use serde::{Deserialize, Serialize};

pub const MAGIC: &[u8; 4] = b"SLIX";
pub const FORMAT_VERSION: u8 = 1;

pub const KB_FILE: &str = "kb.bin";
pub const GRAPH_FILE: &str = "graph.bin";
pub const IDF_FILE: &str = "idf.bin";

#[derive(Debug, thiserror::Error)]
pub enum BundleError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path} is not an index artifact (bad magic bytes)")]
    BadMagic { path: PathBuf },
    #[error("{path} uses unsupported format version {found} (this build reads version {expected})")]
    UnsupportedVersion {
        path: PathBuf,
        found: u8,
        expected: u8,
    },
    #[error("{path} holds section `{found}` but `{expected}` was expected")]
    WrongSection {
        path: PathBuf,
        expected: String,
        found: String,
    },
    #[error("{path} is truncated or corrupt")]
    Truncated { path: PathBuf },
    #[error("{path} payload is not valid for section `{section}`: {detail}")]
    Payload {
        path: PathBuf,
        section: String,
        detail: String,
    },
}

/// Serializable mirror of a citation graph: papers in insertion order plus the
/// sorted edge list.  Rebuilding from it reproduces the graph exactly.
#[derive(Debug, Serialize, Deserialize)]
struct GraphSnapshot {
    papers: Vec<PaperRecord>,
    edges: Vec<(String, String)>,
}

/// A loaded index: everything the wikify and evaluate commands need.
pub struct Index {
    pub kb: KnowledgeBase,
    pub graph: ScholarlyGraph,
    pub idf: IdfModel,
}

fn write_artifact(path: &Path, section: &str, payload: &[u8]) -> Result<(), BundleError> {
    let mut buf = Vec::with_capacity(payload.len() + section.len() + 32);
    buf.extend_from_slice(MAGIC);
    buf.push(FORMAT_VERSION);
    let name = section.as_bytes();
    buf.extend_from_slice(&(name.len() as u16).to_le_bytes());
    buf.extend_from_slice(name);
    buf.extend_from_slice(&(payload.len() as u64).to_le_bytes());
    buf.extend_from_slice(payload);
    let mut file = fs::File::create(path).map_err(|source| BundleError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    file.write_all(&buf).map_err(|source| BundleError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_artifact(path: &Path, section: &str) -> Result<Vec<u8>, BundleError> {
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|source| BundleError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    let truncated = || BundleError::Truncated {
        path: path.to_path_buf(),
    };
    if bytes.len() < MAGIC.len() + 1 {
        return Err(truncated());
    }
    if &bytes[..4] != MAGIC {
        return Err(BundleError::BadMagic {
            path: path.to_path_buf(),
        });
    }
    let version = bytes[4];
    if version != FORMAT_VERSION {
        return Err(BundleError::UnsupportedVersion {
            path: path.to_path_buf(),
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    let mut offset = 5usize;
    let take = |offset: &mut usize, n: usize| -> Result<std::ops::Range<usize>, BundleError> {
        let start = *offset;
        let end = start.checked_add(n).ok_or_else(truncated)?;
        if end > bytes.len() {
            return Err(truncated());
        }
        *offset = end;
        Ok(start..end)
    };
    let name_len = u16::from_le_bytes(bytes[take(&mut offset, 2)?].try_into().unwrap()) as usize;
    let name_range = take(&mut offset, name_len)?;
    let found = String::from_utf8_lossy(&bytes[name_range]).into_owned();
    if found != section {
        return Err(BundleError::WrongSection {
            path: path.to_path_buf(),
            expected: section.to_string(),
            found,
        });
    }
    let payload_len =
        u64::from_le_bytes(bytes[take(&mut offset, 8)?].try_into().unwrap()) as usize;
    let payload_range = take(&mut offset, payload_len)?;
    if offset != bytes.len() {
        return Err(truncated());
    }
    Ok(bytes[payload_range].to_vec())
}

/// Writes the three index artifacts into `dir`, creating it if needed.
pub fn save_index(
    dir: &Path,
    kb: &KnowledgeBase,
    graph: &ScholarlyGraph,
    idf: &IdfModel,
) -> Result<(), BundleError> {
    fs::create_dir_all(dir).map_err(|source| BundleError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let entities: Vec<&Entity> = kb.iter().collect();
    let kb_payload = serde_json::to_vec(&entities).expect("entity serialization is infallible");
    write_artifact(&dir.join(KB_FILE), "kb", &kb_payload)?;

    let papers: Vec<&PaperRecord> = graph
        .paper_ids()
        .map(|id| graph.paper(id).expect("listed paper exists"))
        .collect();
    let snapshot_payload = serde_json::to_vec(&serde_json::json!({
        "papers": papers,
        "edges": graph.edges(),
    }))
    .expect("graph serialization is infallible");
    write_artifact(&dir.join(GRAPH_FILE), "graph", &snapshot_payload)?;

    let idf_payload = serde_json::to_vec(idf).expect("idf serialization is infallible");
    write_artifact(&dir.join(IDF_FILE), "idf", &idf_payload)
}

/// Loads the three index artifacts from `dir`.
pub fn load_index(dir: &Path) -> Result<Index, BundleError> {
    let payload_err = |path: &Path, section: &str, detail: String| BundleError::Payload {
        path: path.to_path_buf(),
        section: section.to_string(),
        detail,
    };

    let kb_path = dir.join(KB_FILE);
    let kb_payload = read_artifact(&kb_path, "kb")?;
    let entities: Vec<Entity> = serde_json::from_slice(&kb_payload)
        .map_err(|e| payload_err(&kb_path, "kb", e.to_string()))?;
    let kb = KnowledgeBase::from_entities(entities)
        .map_err(|e| payload_err(&kb_path, "kb", e.to_string()))?;

    let graph_path = dir.join(GRAPH_FILE);
    let graph_payload = read_artifact(&graph_path, "graph")?;
    let snapshot: GraphSnapshot = serde_json::from_slice(&graph_payload)
        .map_err(|e| payload_err(&graph_path, "graph", e.to_string()))?;
    let graph = ScholarlyGraph::from_records(snapshot.papers, snapshot.edges)
        .map_err(|e| payload_err(&graph_path, "graph", e.to_string()))?;

    let idf_path = dir.join(IDF_FILE);
    let idf_payload = read_artifact(&idf_path, "idf")?;
    let idf: IdfModel = serde_json::from_slice(&idf_payload)
        .map_err(|e| payload_err(&idf_path, "idf", e.to_string()))?;

    Ok(Index { kb, graph, idf })
}
