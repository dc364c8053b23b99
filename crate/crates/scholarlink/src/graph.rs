//! Heterogeneous scholarly graph over papers, authors, and years, with
//! metapath-based retrieval of related papers.
//!
//! Metapaths are fixed label sequences starting and ending at paper nodes:
//! Author reaches papers sharing at least one author, Reference reaches the
//! papers the target cites, Citation reaches the papers citing the target,
//! CRA is their union, and YearRestrictedCRA additionally filters the Author
//! leg to an inclusive backward window ending at the target's year.

use std::collections::{BTreeSet, HashMap};
use std::io::BufRead;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One paper node. Dangling citation endpoints are materialized as records
/// with an empty abstract, no authors, and no year.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub id: String,
    #[serde(rename = "abstract", default)]
    pub abstract_text: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub authors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub year: Option<i32>,
}

impl PaperRecord {
    fn placeholder(id: &str) -> Self {
        Self {
            id: id.to_string(),
            abstract_text: String::new(),
            authors: Vec::new(),
            year: None,
        }
    }
}

/// Errors raised while loading or querying the graph.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("papers line {line}: {message}")]
    MalformedPaper { line: usize, message: String },
    #[error("edges line {line}: {message}")]
    MalformedEdge { line: usize, message: String },
    #[error("edges line {line}: unknown relation `{relation}`")]
    UnknownRelation { line: usize, relation: String },
    #[error("duplicate paper id `{0}`")]
    DuplicatePaper(String),
    #[error("unknown paper id `{0}`")]
    UnknownPaper(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Which metapath neighborhood to retrieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MetapathSpec {
    /// Papers sharing at least one author with the target.
    Author,
    /// Papers the target cites.
    Reference,
    /// Papers citing the target.
    Citation,
    /// Union of Citation, Reference, and Author.
    Cra,
    /// CRA with the Author leg restricted to papers whose year falls in the
    /// inclusive window `year(target) − back_window_years ..= year(target)`.
    /// Papers with unknown year are excluded from the Author leg, and a
    /// target with unknown year yields an empty Author leg. The Citation and
    /// Reference legs are never year-filtered.
    YearRestrictedCra { back_window_years: u32 },
}

impl MetapathSpec {
    /// Flag-style name used by the command line and the run manifest.
    pub fn name(&self) -> &'static str {
        match self {
            MetapathSpec::Author => "author",
            MetapathSpec::Reference => "reference",
            MetapathSpec::Citation => "citation",
            MetapathSpec::Cra => "cra",
            MetapathSpec::YearRestrictedCra { .. } => "year-restricted-cra",
        }
    }
}

/// Aggregate degree statistics. Citation graphs are sparse and asymmetric,
/// so each mean is taken over the papers that participate in that direction:
/// `mean_out_citations` averages over papers with at least one outgoing
/// citation, `mean_in_citations` over papers with at least one incoming.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeSummary {
    pub paper_count: usize,
    pub edge_count: usize,
    pub mean_out_citations: f64,
    pub mean_in_citations: f64,
}

/// The loaded graph: papers in insertion order plus author and citation
/// adjacency. All neighbor sets are sorted, so every traversal is
/// reproducible.
#[derive(Debug, Clone, Default)]
pub struct ScholarlyGraph {
    papers: HashMap<String, PaperRecord>,
    order: Vec<String>,
    author_papers: HashMap<String, BTreeSet<String>>,
    cites: HashMap<String, BTreeSet<String>>,
    cited_by: HashMap<String, BTreeSet<String>>,
}

/// Parses a JSON Lines paper stream (blank lines skipped).
pub fn read_papers_jsonl(reader: impl BufRead) -> Result<Vec<PaperRecord>, GraphError> {
    let mut records = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: PaperRecord =
            serde_json::from_str(&line).map_err(|e| GraphError::MalformedPaper {
                line: i + 1,
                message: e.to_string(),
            })?;
        if record.id.is_empty() {
            return Err(GraphError::MalformedPaper {
                line: i + 1,
                message: "paper id is empty".into(),
            });
        }
        records.push(record);
    }
    Ok(records)
}

/// Parses a `src<TAB>relation<TAB>dst` edge stream. The only relation is
/// `cites`; anything else is an error naming the line.
pub fn read_edges_tsv(reader: impl BufRead) -> Result<Vec<(String, String)>, GraphError> {
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [src, relation, dst] = fields.as_slice() else {
            return Err(GraphError::MalformedEdge {
                line: i + 1,
                message: format!("expected 3 tab-separated fields, got {}", fields.len()),
            });
        };
        if relation != &"cites" {
            return Err(GraphError::UnknownRelation {
                line: i + 1,
                relation: relation.to_string(),
            });
        }
        if src.is_empty() || dst.is_empty() {
            return Err(GraphError::MalformedEdge {
                line: i + 1,
                message: "empty endpoint id".into(),
            });
        }
        edges.push((src.to_string(), dst.to_string()));
    }
    Ok(edges)
}

impl ScholarlyGraph {
    /// Builds the graph from parsed records and citation edges. Edge
    /// endpoints absent from the records are materialized as abstract-less
    /// placeholder papers; duplicate edges collapse to one.
    pub fn from_records(
        records: Vec<PaperRecord>,
        edges: Vec<(String, String)>,
    ) -> Result<Self, GraphError> {
        let mut graph = ScholarlyGraph::default();
        for record in records {
            if graph.papers.contains_key(&record.id) {
                return Err(GraphError::DuplicatePaper(record.id));
            }
            graph.order.push(record.id.clone());
            for author in &record.authors {
                graph
                    .author_papers
                    .entry(author.clone())
                    .or_default()
                    .insert(record.id.clone());
            }
            graph.papers.insert(record.id.clone(), record);
        }
        for (src, dst) in edges {
            for endpoint in [&src, &dst] {
                if !graph.papers.contains_key(endpoint.as_str()) {
                    graph.order.push(endpoint.clone());
                    graph
                        .papers
                        .insert(endpoint.clone(), PaperRecord::placeholder(endpoint));
                }
            }
            graph.cites.entry(src.clone()).or_default().insert(dst.clone());
            graph.cited_by.entry(dst).or_default().insert(src);
        }
        Ok(graph)
    }

    /// Reads and assembles the graph from its two external streams.
    pub fn load(papers: impl BufRead, edges: impl BufRead) -> Result<Self, GraphError> {
        Self::from_records(read_papers_jsonl(papers)?, read_edges_tsv(edges)?)
    }

    pub fn paper_count(&self) -> usize {
        self.order.len()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.papers.contains_key(id)
    }

    pub fn paper(&self, id: &str) -> Option<&PaperRecord> {
        self.papers.get(id)
    }

    /// Paper ids in insertion order (file order, then materialized endpoints).
    pub fn paper_ids(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(String::as_str)
    }

    /// Papers the given paper cites, sorted by id.
    pub fn cites_of(&self, id: &str) -> impl Iterator<Item = &str> {
        self.cites.get(id).into_iter().flatten().map(String::as_str)
    }

    /// Papers citing the given paper, sorted by id.
    pub fn cited_by_of(&self, id: &str) -> impl Iterator<Item = &str> {
        self.cited_by
            .get(id)
            .into_iter()
            .flatten()
            .map(String::as_str)
    }

    /// Number of incoming citations.
    pub fn in_citations(&self, id: &str) -> usize {
        self.cited_by.get(id).map_or(0, BTreeSet::len)
    }

    /// All `(src, dst)` citation edges, sorted.
    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .cites
            .iter()
            .flat_map(|(src, dsts)| dsts.iter().map(|d| (src.clone(), d.clone())))
            .collect();
        out.sort();
        out
    }

    pub fn degree_summary(&self) -> DegreeSummary {
        let edge_count: usize = self.cites.values().map(BTreeSet::len).sum();
        let citing = self.cites.values().filter(|s| !s.is_empty()).count();
        let cited = self.cited_by.values().filter(|s| !s.is_empty()).count();
        let mean = |total: usize, n: usize| if n == 0 { 0.0 } else { total as f64 / n as f64 };
        DegreeSummary {
            paper_count: self.order.len(),
            edge_count,
            mean_out_citations: mean(edge_count, citing),
            mean_in_citations: mean(edge_count, cited),
        }
    }

    fn author_component(&self, target: &PaperRecord) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for author in &target.authors {
            if let Some(papers) = self.author_papers.get(author) {
                out.extend(papers.iter().cloned());
            }
        }
        out.remove(&target.id);
        out
    }

    /// Papers reachable from the target over the requested metapath. The
    /// target itself is never included.
    pub fn related_papers(
        &self,
        target_id: &str,
        spec: &MetapathSpec,
    ) -> Result<BTreeSet<String>, GraphError> {
        let target = self
            .papers
            .get(target_id)
            .ok_or_else(|| GraphError::UnknownPaper(target_id.to_string()))?;
        let reference = || {
            let mut s = self.cites.get(target_id).cloned().unwrap_or_default();
            s.remove(target_id);
            s
        };
        let citation = || {
            let mut s = self.cited_by.get(target_id).cloned().unwrap_or_default();
            s.remove(target_id);
            s
        };
        let result = match spec {
            MetapathSpec::Author => self.author_component(target),
            MetapathSpec::Reference => reference(),
            MetapathSpec::Citation => citation(),
            MetapathSpec::Cra => {
                let mut s = self.author_component(target);
                s.extend(reference());
                s.extend(citation());
                s
            }
            MetapathSpec::YearRestrictedCra { back_window_years } => {
                let mut s: BTreeSet<String> = match target.year {
                    Some(target_year) => {
                        let low = target_year - *back_window_years as i32;
                        self.author_component(target)
                            .into_iter()
                            .filter(|id| {
                                self.papers[id]
                                    .year
                                    .is_some_and(|y| low <= y && y <= target_year)
                            })
                            .collect()
                    }
                    None => BTreeSet::new(),
                };
                s.extend(reference());
                s.extend(citation());
                s
            }
        };
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper(id: &str, authors: &[&str], year: Option<i32>) -> PaperRecord {
        PaperRecord {
            id: id.to_string(),
            abstract_text: format!("abstract of {id}"),
            authors: authors.iter().map(|s| s.to_string()).collect(),
            year,
        }
    }

    fn edge(src: &str, dst: &str) -> (String, String) {
        (src.to_string(), dst.to_string())
    }

    #[test]
    fn citation_star_reaches_all_citing_papers() {
        let records = (0..5)
            .map(|i| paper(&format!("P{i}"), &[], None))
            .collect();
        let edges = (1..5).map(|i| edge(&format!("P{i}"), "P0")).collect();
        let g = ScholarlyGraph::from_records(records, edges).unwrap();
        let related = g.related_papers("P0", &MetapathSpec::Citation).unwrap();
        let want: BTreeSet<String> = (1..5).map(|i| format!("P{i}")).collect();
        assert_eq!(related, want);
        assert!(g.related_papers("P0", &MetapathSpec::Reference).unwrap().is_empty());
    }

    #[test]
    fn year_window_filters_the_author_leg() {
        let records = vec![
            paper("P0", &["a1"], Some(2013)),
            paper("P4", &["a1"], Some(1990)),
            paper("P5", &["a1"], Some(2012)),
        ];
        let g = ScholarlyGraph::from_records(records, vec![]).unwrap();
        let related = g
            .related_papers("P0", &MetapathSpec::YearRestrictedCra { back_window_years: 5 })
            .unwrap();
        assert_eq!(related, BTreeSet::from(["P5".to_string()]));
        // The unrestricted author leg sees both.
        let author = g.related_papers("P0", &MetapathSpec::Author).unwrap();
        assert_eq!(author.len(), 2);
    }

    #[test]
    fn unknown_year_papers_leave_the_author_leg() {
        let records = vec![
            paper("P0", &["a1"], Some(2013)),
            paper("P1", &["a1"], None),
        ];
        let g = ScholarlyGraph::from_records(records, vec![]).unwrap();
        let yr = g
            .related_papers("P0", &MetapathSpec::YearRestrictedCra { back_window_years: 5 })
            .unwrap();
        assert!(yr.is_empty());
    }

    #[test]
    fn target_without_year_has_empty_restricted_author_leg() {
        let records = vec![
            paper("P0", &["a1"], None),
            paper("P1", &["a1"], Some(2010)),
        ];
        let g = ScholarlyGraph::from_records(records, vec![edge("P0", "P1")]).unwrap();
        let yr = g
            .related_papers("P0", &MetapathSpec::YearRestrictedCra { back_window_years: 5 })
            .unwrap();
        // Only the Reference leg survives.
        assert_eq!(yr, BTreeSet::from(["P1".to_string()]));
    }

    #[test]
    fn isolated_paper_has_empty_cra() {
        let g = ScholarlyGraph::from_records(vec![paper("P0", &[], Some(2000))], vec![]).unwrap();
        assert!(g.related_papers("P0", &MetapathSpec::Cra).unwrap().is_empty());
    }

    #[test]
    fn unknown_target_is_an_error() {
        let g = ScholarlyGraph::default();
        assert!(matches!(
            g.related_papers("nope", &MetapathSpec::Cra),
            Err(GraphError::UnknownPaper(id)) if id == "nope"
        ));
    }

    #[test]
    fn cited_by_is_the_transpose_of_cites() {
        let records = (0..4).map(|i| paper(&format!("P{i}"), &[], None)).collect();
        let edges = vec![edge("P0", "P1"), edge("P0", "P2"), edge("P3", "P1")];
        let g = ScholarlyGraph::from_records(records, edges).unwrap();
        for src in g.paper_ids() {
            for dst in g.cites_of(src) {
                assert!(g.cited_by_of(dst).any(|s| s == src));
            }
        }
        assert_eq!(g.in_citations("P1"), 2);
    }

    #[test]
    fn dangling_endpoints_become_placeholder_papers() {
        let g = ScholarlyGraph::from_records(
            vec![paper("P0", &["a"], Some(2001))],
            vec![edge("P0", "GHOST")],
        )
        .unwrap();
        let ghost = g.paper("GHOST").unwrap();
        assert_eq!(ghost.abstract_text, "");
        assert!(ghost.authors.is_empty());
        assert!(ghost.year.is_none());
        assert_eq!(g.paper_count(), 2);
    }

    #[test]
    fn degree_summary_uses_direction_specific_denominators() {
        // 8 sources each cite all 6 targets: every (S, T) pair once → 48
        // edges; out-mean = 6 over the 8 citing papers, in-mean = 8 over the
        // 6 cited papers.
        let records: Vec<PaperRecord> = (0..8)
            .map(|i| paper(&format!("S{i}"), &[], None))
            .chain((0..6).map(|i| paper(&format!("T{i}"), &[], None)))
            .collect();
        let mut edges = Vec::new();
        for s in 0..8 {
            for t in 0..6 {
                edges.push(edge(&format!("S{s}"), &format!("T{t}")));
            }
        }
        let g = ScholarlyGraph::from_records(records, edges).unwrap();
        let summary = g.degree_summary();
        assert_eq!(summary.edge_count, 48);
        assert_eq!(summary.mean_out_citations, 6.0);
        assert_eq!(summary.mean_in_citations, 8.0);
    }

    #[test]
    fn malformed_lines_report_their_numbers() {
        let papers = "{\"id\":\"P0\",\"abstract\":\"a\"}\n{bad\n";
        let err = read_papers_jsonl(papers.as_bytes()).unwrap_err();
        assert!(matches!(err, GraphError::MalformedPaper { line: 2, .. }));

        let edges = "P0\tcites\tP1\nP0\tonly-two\n";
        let err = read_edges_tsv(edges.as_bytes()).unwrap_err();
        assert!(matches!(err, GraphError::MalformedEdge { line: 2, .. }));

        let edges = "P0\treferences\tP1\n";
        let err = read_edges_tsv(edges.as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            GraphError::UnknownRelation { line: 1, relation } if relation == "references"
        ));
    }

    #[test]
    fn duplicate_papers_are_rejected() {
        let err = ScholarlyGraph::from_records(
            vec![paper("P0", &[], None), paper("P0", &[], None)],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::DuplicatePaper(id) if id == "P0"));
    }

    #[test]
    fn cra_is_the_union_of_its_legs() {
        let records = vec![
            paper("P0", &["a1", "a2"], Some(2010)),
            paper("P1", &["a1"], Some(2005)),
            paper("P2", &[], None),
            paper("P3", &["a2"], Some(2009)),
        ];
        let edges = vec![edge("P0", "P2"), edge("P3", "P0")];
        let g = ScholarlyGraph::from_records(records, edges).unwrap();
        let mut want = g.related_papers("P0", &MetapathSpec::Author).unwrap();
        want.extend(g.related_papers("P0", &MetapathSpec::Reference).unwrap());
        want.extend(g.related_papers("P0", &MetapathSpec::Citation).unwrap());
        assert_eq!(g.related_papers("P0", &MetapathSpec::Cra).unwrap(), want);
    }
}
