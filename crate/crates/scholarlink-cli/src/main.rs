//! `scholarlink` — build indexes over a concept snapshot and a citation
//! corpus, annotate abstracts with linked concept mentions, score the output
//! against gold annotations, and sweep engine parameters.

mod bundle;
mod html;
mod manifest;
mod ops;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use scholarlink::linker::EngineConfig;
use scholarlink::graph::MetapathSpec;

use ops::{CliError, SweepParam};

#[derive(Parser)]
#[command(
    name = "scholarlink",
    version,
    about = "Concept linking for scientific abstracts",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetapathArg {
    /// Papers sharing an author with the target.
    Author,
    /// Papers the target cites.
    Reference,
    /// Papers citing the target.
    Citation,
    /// Union of author, reference, and citation.
    Cra,
    /// Cra with the author leg limited to a year window before the target.
    YearRestrictedCra,
}

impl MetapathArg {
    fn to_spec(self, window: u32) -> MetapathSpec {
        match self {
            MetapathArg::Author => MetapathSpec::Author,
            MetapathArg::Reference => MetapathSpec::Reference,
            MetapathArg::Citation => MetapathSpec::Citation,
            MetapathArg::Cra => MetapathSpec::Cra,
            MetapathArg::YearRestrictedCra => MetapathSpec::YearRestrictedCra {
                back_window_years: window,
            },
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WikifyFormat {
    Json,
    Html,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepParamArg {
    ThCs,
    ThRelevance,
    Alpha,
}

impl From<SweepParamArg> for SweepParam {
    fn from(arg: SweepParamArg) -> Self {
        match arg {
            SweepParamArg::ThCs => SweepParam::ThCs,
            SweepParamArg::ThRelevance => SweepParam::ThRelevance,
            SweepParamArg::Alpha => SweepParam::Alpha,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build an index bundle from a concept snapshot, a paper corpus, and a
    /// citation edge list.
    Build {
        /// Concept snapshot: one JSON entity per line.
        kb: PathBuf,
        /// Paper corpus: one JSON record {"id","abstract","authors","year"} per line.
        papers: PathBuf,
        /// Citation edges: `src<TAB>cites<TAB>dst` lines.
        edges: PathBuf,
        /// Output directory for the bundle.
        out: PathBuf,
    },
    /// Annotate abstracts with linked concept mentions.
    Wikify {
        /// Index bundle directory created by `build`.
        index: PathBuf,
        /// Abstracts to annotate: one JSON object {"id","abstract"} per line.
        input: PathBuf,
        /// Minimum confidence gap for accepting the direct cosine winner.
        #[arg(long, default_value_t = 0.06)]
        th_cs: f64,
        /// Minimum relevance for admitting a related abstract into context.
        #[arg(long, default_value_t = 0.4)]
        th_relevance: f64,
        /// Interpolation weight between plain and context cosine for acronyms.
        #[arg(long, default_value_t = 0.6)]
        alpha: f64,
        /// Metapath used to gather related papers.
        #[arg(long, value_enum, default_value_t = MetapathArg::YearRestrictedCra)]
        metapath: MetapathArg,
        /// Backward year window for the year-restricted author leg.
        #[arg(long, default_value_t = 5)]
        window: u32,
        /// Output format.
        #[arg(long, value_enum, default_value_t = WikifyFormat::Json)]
        format: WikifyFormat,
        /// URL prefix for mention anchors; local `#title` fragments when absent.
        #[arg(long)]
        link_base: Option<String>,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Score wikify output against gold annotations.
    Evaluate {
        /// Index bundle directory created by `build`.
        index: PathBuf,
        /// JSON produced by `wikify --format json`.
        decisions: PathBuf,
        /// Gold annotations: one JSON object {"doc_id","mentions"} per line.
        gold: PathBuf,
        /// Annotator verdicts: one JSON object {"doc_id","annotator","mention","verdict"} per line.
        #[arg(long)]
        judgments: Option<PathBuf>,
        /// Output format for stdout.
        #[arg(long, value_enum, default_value_t = EvalFormat::Table)]
        format: EvalFormat,
        /// Also write the JSON report here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Re-run wikify+evaluate across a grid of one parameter's values and
    /// emit CSV.
    Sweep {
        /// Index bundle directory created by `build`.
        index: PathBuf,
        /// Abstracts to annotate, as for `wikify`.
        input: PathBuf,
        /// Gold annotations, as for `evaluate`.
        gold: PathBuf,
        /// Parameter to vary; everything else stays at defaults.
        #[arg(long, value_enum)]
        param: SweepParamArg,
        /// Comma-separated values to try.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn write_out(path: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| CliError::Data(format!("cannot write to stdout: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build {
            kb,
            papers,
            edges,
            out,
        } => {
            let summary = ops::cmd_build(&kb, &papers, &edges, &out)?;
            println!(
                "built index in {}: {} entities, {} papers, {} citation edges, idf over {} documents",
                out.display(),
                summary.entity_count,
                summary.paper_count,
                summary.edge_count,
                summary.idf_doc_count
            );
            Ok(())
        }
        Command::Wikify {
            index,
            input,
            th_cs,
            th_relevance,
            alpha,
            metapath,
            window,
            format,
            link_base,
            workers,
            output,
        } => {
            let config = EngineConfig {
                th_cs,
                th_relevance,
                alpha,
                metapath: metapath.to_spec(window),
                ..EngineConfig::default()
            };
            config
                .validate()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let (result, warnings) = ops::cmd_wikify(&index, &input, &config, workers)?;
            for warning in &warnings {
                eprintln!("warning: {warning}");
            }
            let rendered = match format {
                WikifyFormat::Json => ops::wikify_to_json(&result),
                WikifyFormat::Html => ops::wikify_to_html(&result, link_base.as_deref()),
            };
            write_out(output.as_ref(), &rendered)
        }
        Command::Evaluate {
            index,
            decisions,
            gold,
            judgments,
            format,
            output,
        } => {
            let result = ops::cmd_evaluate(&index, &decisions, &gold, judgments.as_deref())?;
            let json = ops::eval_to_json(&result);
            match (&output, format) {
                (Some(path), _) => {
                    write_out(Some(path), &json)?;
                    print!("{}", ops::eval_to_table(&result));
                }
                (None, EvalFormat::Json) => print!("{json}"),
                (None, EvalFormat::Table) => print!("{}", ops::eval_to_table(&result)),
            }
            Ok(())
        }
        Command::Sweep {
            index,
            input,
            gold,
            param,
            values,
            output,
        } => {
            let csv = ops::cmd_sweep(&index, &input, &gold, param.into(), &values)?;
            write_out(output.as_ref(), &csv)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
