//! Command implementations behind the argument parser. Every operation
//! returns either a serializable result or a [`CliError`] that maps onto the
//! process exit codes: usage errors exit 1, data errors exit 2.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use rayon::prelude::*;
use scholarlink::eval::{
    self, AnnotatorAggregate, EvalReport, GoldAnnotation, Judgment,
};
use scholarlink::graph::{read_edges_tsv, read_papers_jsonl, ScholarlyGraph};
use scholarlink::kb::KnowledgeBase;
use scholarlink::linker::{Document, EngineConfig, LinkDecision, Linker};
use scholarlink::text::{normalize_scientific, IdfModel, Lexicon, StopwordList, TextAnalyzer};
use serde::{Deserialize, Serialize};

use crate::bundle::{self, Index};
use crate::manifest::RunManifest;

/// Errors surfaced to the user, split by exit code: `Usage` exits 1, `Data`
/// exits 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.message())
    }
}

impl std::error::Error for CliError {}

impl From<bundle::BundleError> for CliError {
    fn from(err: bundle::BundleError) -> Self {
        CliError::Data(err.to_string())
    }
}

/// The analyzer used by every command: bundled lexicon and stopword list.
pub fn default_analyzer() -> TextAnalyzer {
    TextAnalyzer::new(Lexicon::default(), StopwordList::default())
}

fn open_data(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::Data(format!("cannot open {}: {e}", path.display())))
}

fn data_err(path: &Path, err: impl std::fmt::Display) -> CliError {
    CliError::Data(format!("{}: {err}", path.display()))
}

// ---------------------------------------------------------------------------
// build

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BuildSummary {
    pub entity_count: usize,
    pub paper_count: usize,
    pub edge_count: usize,
    pub idf_doc_count: usize,
}

/// Reads the knowledge-base snapshot, paper corpus, and citation edges, fits
/// the document-frequency model on the paper abstracts, and writes the index
/// bundle into `out_dir`.
pub fn cmd_build(
    kb_path: &Path,
    papers_path: &Path,
    edges_path: &Path,
    out_dir: &Path,
) -> Result<BuildSummary, CliError> {
    let kb =
        KnowledgeBase::from_jsonl(open_data(kb_path)?).map_err(|e| data_err(kb_path, e))?;
    let papers =
        read_papers_jsonl(open_data(papers_path)?).map_err(|e| data_err(papers_path, e))?;
    let edges =
        read_edges_tsv(open_data(edges_path)?).map_err(|e| data_err(edges_path, e))?;

    let analyzer = default_analyzer();
    let idf = IdfModel::build(
        papers.iter().map(|p| p.abstract_text.as_str()),
        IdfModel::DEFAULT_MAX_PHRASE_TOKENS,
        &analyzer,
    );
    let graph = ScholarlyGraph::from_records(papers, edges)
        .map_err(|e| data_err(papers_path, e))?;

    bundle::save_index(out_dir, &kb, &graph, &idf)?;
    Ok(BuildSummary {
        entity_count: kb.len(),
        paper_count: graph.paper_ids().count(),
        edge_count: graph.edges().len(),
        idf_doc_count: idf.doc_count(),
    })
}

// ---------------------------------------------------------------------------
// wikify

#[derive(Debug, Deserialize)]
struct InputRecord {
    id: String,
    #[serde(rename = "abstract")]
    text: String,
}

/// Reads the abstracts input: one JSON object `{"id", "abstract"}` per line.
pub fn read_abstracts(path: &Path) -> Result<Vec<Document>, CliError> {
    use std::io::BufRead;
    let reader = open_data(path)?;
    let mut docs = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| data_err(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: InputRecord = serde_json::from_str(&line)
            .map_err(|e| data_err(path, format!("line {}: {e}", i + 1)))?;
        if record.id.is_empty() {
            return Err(data_err(path, format!("line {}: document id is empty", i + 1)));
        }
        if record.text.trim().is_empty() {
            return Err(data_err(
                path,
                format!("line {}: document `{}` has an empty abstract", i + 1, record.id),
            ));
        }
        if !seen.insert(record.id.clone()) {
            return Err(data_err(
                path,
                format!("line {}: duplicate document id `{}`", i + 1, record.id),
            ));
        }
        docs.push(Document {
            id: record.id,
            text: record.text,
        });
    }
    Ok(docs)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DocOutput {
    pub id: String,
    /// The citation-stripped abstract; mention offsets index into it.
    pub text: String,
    pub decisions: Vec<LinkDecision>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WikifyOutput {
    pub manifest: RunManifest,
    pub documents: Vec<DocOutput>,
}

/// Wikifies every document, optionally across parallel workers. Output order
/// always matches input order. Returns the documents plus one warning per
/// document that is absent from the citation graph (linked without metapath
/// context).
pub fn wikify_documents(
    index: &Index,
    analyzer: &TextAnalyzer,
    config: &EngineConfig,
    docs: &[Document],
    workers: usize,
) -> Result<(Vec<DocOutput>, Vec<String>), CliError> {
    config
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let warnings: Vec<String> = docs
        .iter()
        .filter(|d| !index.graph.contains(&d.id))
        .map(|d| {
            format!(
                "document `{}` is not in the citation graph; linking it without metapath context",
                d.id
            )
        })
        .collect();

    let linker = Linker::new(&index.kb, &index.graph, &index.idf, analyzer, config.clone());
    let run = || -> Result<Vec<DocOutput>, CliError> {
        docs.par_iter()
            .map(|doc| {
                let decisions = linker
                    .wikify_document(doc)
                    .map_err(|e| CliError::Data(format!("document `{}`: {e}", doc.id)))?;
                Ok(DocOutput {
                    id: doc.id.clone(),
                    text: normalize_scientific(&doc.text),
                    decisions,
                })
            })
            .collect()
    };
    let documents = if workers == 0 {
        run()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| CliError::Data(format!("cannot start worker pool: {e}")))?;
        pool.install(run)?
    };
    Ok((documents, warnings))
}

/// The full wikify command: load index, read input, link, assemble manifest.
pub fn cmd_wikify(
    index_dir: &Path,
    input_path: &Path,
    config: &EngineConfig,
    workers: usize,
) -> Result<(WikifyOutput, Vec<String>), CliError> {
    let index = bundle::load_index(index_dir)?;
    let docs = read_abstracts(input_path)?;
    let analyzer = default_analyzer();
    let (documents, warnings) = wikify_documents(&index, &analyzer, config, &docs, workers)?;
    let mut manifest = RunManifest::new("wikify", config.clone());
    for (label, file) in [
        ("kb", bundle::KB_FILE),
        ("graph", bundle::GRAPH_FILE),
        ("idf", bundle::IDF_FILE),
    ] {
        manifest
            .record_input(label, &index_dir.join(file))
            .map_err(|e| data_err(&index_dir.join(file), e))?;
    }
    manifest
        .record_input("abstracts", input_path)
        .map_err(|e| data_err(input_path, e))?;
    Ok((WikifyOutput { manifest, documents }, warnings))
}

/// Serializes a wikify result as pretty JSON with a trailing newline.
pub fn wikify_to_json(output: &WikifyOutput) -> String {
    let mut s = serde_json::to_string_pretty(output).expect("output serialization is infallible");
    s.push('\n');
    s
}

/// Renders a wikify result as a standalone HTML page.
pub fn wikify_to_html(output: &WikifyOutput, link_base: Option<&str>) -> String {
    let docs: Vec<(String, String, Vec<LinkDecision>)> = output
        .documents
        .iter()
        .map(|d| (d.id.clone(), d.text.clone(), d.decisions.clone()))
        .collect();
    crate::html::render_page(&docs, link_base)
}

// ---------------------------------------------------------------------------
// evaluate

#[derive(Debug, Serialize, Deserialize)]
pub struct EvalOutput {
    pub manifest: RunManifest,
    pub report: EvalReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotators: Option<AnnotatorAggregate>,
}

fn load_decisions(path: &Path) -> Result<WikifyOutput, CliError> {
    let reader = open_data(path)?;
    serde_json::from_reader(reader).map_err(|e| data_err(path, e))
}

fn produced_map(output: &WikifyOutput) -> BTreeMap<String, Vec<LinkDecision>> {
    output
        .documents
        .iter()
        .map(|d| (d.id.clone(), d.decisions.clone()))
        .collect()
}

/// Checks that every gold-annotated document exists in the produced
/// decisions; reports every missing id at once.
fn check_alignment(
    produced: &BTreeMap<String, Vec<LinkDecision>>,
    gold: &[GoldAnnotation],
) -> Result<(), CliError> {
    let missing: Vec<&str> = gold
        .iter()
        .map(|g| g.doc_id.as_str())
        .filter(|id| !produced.contains_key(*id))
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(CliError::Data(format!(
            "gold annotations reference documents absent from the decisions: {}",
            missing.join(", ")
        )))
    }
}

pub fn cmd_evaluate(
    index_dir: &Path,
    decisions_path: &Path,
    gold_path: &Path,
    judgments_path: Option<&Path>,
) -> Result<EvalOutput, CliError> {
    let index = bundle::load_index(index_dir)?;
    let decisions = load_decisions(decisions_path)?;
    let gold = eval::read_gold_jsonl(open_data(gold_path)?).map_err(|e| data_err(gold_path, e))?;
    let produced = produced_map(&decisions);
    check_alignment(&produced, &gold)?;

    let in_citations: BTreeMap<String, usize> = produced
        .keys()
        .map(|id| (id.clone(), index.graph.in_citations(id)))
        .collect();
    let report = eval::evaluate(&produced, &gold, Some(&in_citations));

    let annotators = match judgments_path {
        Some(path) => {
            let judgments: Vec<Judgment> = eval::read_judgments_jsonl(open_data(path)?)
                .map_err(|e| data_err(path, e))?;
            Some(eval::annotator_aggregate(&judgments).map_err(|e| data_err(path, e))?)
        }
        None => None,
    };

    let mut manifest = RunManifest::new("evaluate", decisions.manifest.config.clone());
    for (label, file) in [
        ("kb", bundle::KB_FILE),
        ("graph", bundle::GRAPH_FILE),
        ("idf", bundle::IDF_FILE),
    ] {
        manifest
            .record_input(label, &index_dir.join(file))
            .map_err(|e| data_err(&index_dir.join(file), e))?;
    }
    manifest
        .record_input("decisions", decisions_path)
        .map_err(|e| data_err(decisions_path, e))?;
    manifest
        .record_input("gold", gold_path)
        .map_err(|e| data_err(gold_path, e))?;
    if let Some(path) = judgments_path {
        manifest
            .record_input("judgments", path)
            .map_err(|e| data_err(path, e))?;
    }

    Ok(EvalOutput {
        manifest,
        report,
        annotators,
    })
}

/// Serializes an evaluation result as pretty JSON with a trailing newline.
pub fn eval_to_json(output: &EvalOutput) -> String {
    let mut s = serde_json::to_string_pretty(output).expect("output serialization is infallible");
    s.push('\n');
    s
}

/// Renders the human-readable summary table.
pub fn eval_to_table(output: &EvalOutput) -> String {
    let r = &output.report;
    let mut out = String::new();
    let row = |out: &mut String, name: &str, value: String| {
        out.push_str(&format!("{name:<26} {value}\n"));
    };
    out.push_str("metric                     value\n");
    out.push_str("-------------------------- ---------\n");
    row(&mut out, "documents", r.doc_count.to_string());
    row(&mut out, "mention precision", format!("{:.4}", r.mention.precision));
    row(&mut out, "mention recall", format!("{:.4}", r.mention.recall));
    row(&mut out, "mention f1", format!("{:.4}", r.mention.f1));
    row(
        &mut out,
        "link precision",
        format!("{:.4} ({}/{})", r.link.precision, r.link.correct, r.link.total),
    );
    row(
        &mut out,
        "full-system recall",
        format!(
            "{:.4} ({}/{})",
            r.full_system.recall, r.full_system.correct, r.full_system.total
        ),
    );
    if !r.zones.is_empty() {
        out.push_str("\nzone       docs  mention-p  mention-r  link-p   recall\n");
        out.push_str("---------- ----- ---------- ---------- -------- --------\n");
        for z in &r.zones {
            out.push_str(&format!(
                "{:<10} {:<5} {:<10.4} {:<10.4} {:<8.4} {:<8.4}\n",
                z.zone.name(),
                z.doc_count,
                z.mention.precision,
                z.mention.recall,
                z.link.precision,
                z.full_system.recall
            ));
        }
    }
    if let Some(a) = &output.annotators {
        out.push_str("\nannotators     majority  macro    micro\n");
        out.push_str("-------------- --------- -------- --------\n");
        out.push_str(&format!(
            "{:<14} {:<9.4} {:<8.4} {:<8.4}\n",
            "mention", a.mention.majority, a.mention.macro_avg, a.mention.micro
        ));
        out.push_str(&format!(
            "{:<14} {:<9.4} {:<8.4} {:<8.4}\n",
            "link", a.link.majority, a.link.macro_avg, a.link.micro
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    ThCs,
    ThRelevance,
    Alpha,
}

impl SweepParam {
    pub fn apply(&self, config: &mut EngineConfig, value: f64) {
        match self {
            SweepParam::ThCs => config.th_cs = value,
            SweepParam::ThRelevance => config.th_relevance = value,
            SweepParam::Alpha => config.alpha = value,
        }
    }
}

/// Runs one wikify+evaluate cycle per value, all other parameters at their
/// defaults, and returns CSV rows `value,link_precision,full_system_recall`.
pub fn cmd_sweep(
    index_dir: &Path,
    input_path: &Path,
    gold_path: &Path,
    param: SweepParam,
    values: &[f64],
) -> Result<String, CliError> {
    if values.is_empty() {
        return Err(CliError::Usage("--values requires at least one value".into()));
    }
    let index = bundle::load_index(index_dir)?;
    let docs = read_abstracts(input_path)?;
    let gold = eval::read_gold_jsonl(open_data(gold_path)?).map_err(|e| data_err(gold_path, e))?;
    let analyzer = default_analyzer();

    let mut csv = String::from("value,link_precision,full_system_recall\n");
    for &value in values {
        let mut config = EngineConfig::default();
        param.apply(&mut config, value);
        let (documents, _warnings) =
            wikify_documents(&index, &analyzer, &config, &docs, 0)?;
        let produced: BTreeMap<String, Vec<LinkDecision>> = documents
            .into_iter()
            .map(|d| (d.id, d.decisions))
            .collect();
        check_alignment(&produced, &gold)?;
        let link = eval::link_precision(&produced, &gold);
        let recall = eval::full_system_recall(&produced, &gold);
        csv.push_str(&format!("{value},{},{}\n", link.precision, recall.recall));
    }
    Ok(csv)
}
