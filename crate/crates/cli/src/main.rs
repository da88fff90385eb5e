//! `centroid-sum`: centroid-based extractive multi-document summarization.

mod config;
mod ops;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use centroid_sum::summarize::{Preselection, Variant};
use centroid_sum::tuning::Objective;

use config::{parse_objective, parse_preselect, parse_variant, CliOverrides, FileConfig};
use ops::{parse_grid, GridKind};

#[derive(Parser)]
#[command(
    name = "centroid-sum",
    version,
    about = "Centroid-based extractive multi-document summarization",
    after_help = "Flag precedence: command line > CENTROID_SUM_STOPWORDS (stopword \
                  path only) > config file > built-in defaults (variant=global, \
                  preselect=none, n=1, r=0.6, v=0.1, limit=100, redundancy filter on)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Config file with key=value lines; keys mirror long flag names
    /// (variant, preselect, n, r, v, limit, redundancy-filter, stopwords,
    /// abbreviations, jobs, marker).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads for cluster-level parallelism (0 = all cores).
    /// Results are independent of this value.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Stopword list (one lowercase token per line, # comments). Default:
    /// the bundled list; the CENTROID_SUM_STOPWORDS env var also overrides.
    #[arg(long, global = true)]
    stopwords: Option<PathBuf>,

    /// Abbreviation list for sentence segmentation (one entry per line).
    /// Default: the bundled list.
    #[arg(long, global = true)]
    abbreviations: Option<PathBuf>,
}

#[derive(Args)]
struct ModelFlags {
    /// Selection variant: ranked (score once, de-queue) or global
    /// (greedy summary-level optimization) [default: global]
    #[arg(long, value_parser = parse_variant)]
    variant: Option<Variant>,

    /// Sentence preselection: none, n_first, n_best or new_tfidf
    /// [default: none]
    #[arg(long, value_parser = parse_preselect)]
    preselect: Option<Preselection>,

    /// Sentences kept per document by --preselect [default: 1]
    #[arg(long)]
    n: Option<usize>,

    /// Redundancy threshold in [0,1]; candidates with cosine similarity
    /// above it to a selected sentence are skipped [default: 0.6]
    #[arg(long)]
    r: Option<f64>,

    /// Centroid pruning ratio in [0,1]: fraction of the centroid's nonzero
    /// entries kept (highest weights) [default: 0.1]
    #[arg(long)]
    v: Option<f64>,

    /// Summary word limit [default: 100]
    #[arg(long)]
    limit: Option<usize>,

    /// Disable the anti-redundancy filter.
    #[arg(long)]
    no_redundancy_filter: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a cluster directory (with docs/) or a corpus root.
    Summarize {
        /// Cluster directory or corpus root (one subdirectory per cluster).
        input: PathBuf,

        /// Output directory: one <cluster_id>.txt per cluster plus
        /// manifest.json.
        #[arg(long, default_value = "summaries")]
        out: PathBuf,

        #[command(flatten)]
        model: ModelFlags,

        /// Also write <cluster_id>.positions.tsv with one
        /// doc_index<TAB>sent_index<TAB>step_score line per selected
        /// sentence.
        #[arg(long)]
        sidecar: bool,

        /// Also write <cluster_id>.centroid.tsv with the pruned centroid
        /// (term<TAB>weight, weight descending).
        #[arg(long)]
        dump_centroid: bool,
    },

    /// Score summaries against reference summaries (ROUGE-1/2/4 recall).
    Evaluate {
        /// Summary files: <dir>/*.txt for one model, or <dir>/<model>/*.txt
        /// for several. File stems are cluster ids.
        summaries: PathBuf,

        /// Corpus root (or single cluster directory) providing refs/.
        #[arg(long)]
        corpus: PathBuf,

        /// Truncate candidate and references to this many words [default:
        /// 100]
        #[arg(long)]
        limit: Option<usize>,

        /// Match surface tokens instead of Porter stems.
        #[arg(long)]
        no_stemming: bool,

        /// Also write one model<TAB>cluster<TAB>n<TAB>recall record per
        /// (model, cluster, n).
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Grid-search hyperparameters on a development corpus.
    Tune {
        /// Development corpus root (clusters with docs/ and refs/).
        corpus: PathBuf,

        /// rv: all 121 (r, v) pairs in {0.0,...,1.0}² with the ranked
        /// variant; n: N in {1,...,10} with the global variant (needs
        /// --method).
        #[arg(long, value_parser = parse_grid)]
        grid: GridKind,

        /// Preselection method sized by --grid n (n_first|n_best|new_tfidf).
        #[arg(long, value_parser = parse_preselect)]
        method: Option<Preselection>,

        /// Metric maximized: rouge1 or rouge2 [default: rouge1]
        #[arg(long, value_parser = parse_objective)]
        objective: Option<Objective>,

        /// Grid output file: one TSV row per parameter assignment with
        /// ROUGE-1/2/4 recall.
        #[arg(long, default_value = "grid.tsv")]
        out: PathBuf,

        #[command(flatten)]
        model: ModelFlags,
    },

    /// Build development clusters from an article dump by lead overlap.
    BuildDevClusters {
        /// Directory of article files (*.story or *.txt, highlights marked
        /// by the marker line).
        articles: PathBuf,

        /// Number of clusters to build.
        #[arg(long, default_value_t = 50)]
        clusters: usize,

        /// Documents per cluster (seed + highest-overlap neighbors).
        #[arg(long, default_value_t = 10)]
        size: usize,

        /// RNG seed for the seed-article permutation; same seed, same tree.
        #[arg(long, default_value_t = 13)]
        seed: u64,

        /// Word limit of the interleaved reference summary.
        #[arg(long, default_value_t = 100)]
        limit: usize,

        /// Highlight marker line in article files [default: @highlight]
        #[arg(long)]
        marker: Option<String>,

        /// Output corpus root.
        #[arg(long, default_value = "dev-clusters")]
        out: PathBuf,
    },
}

fn overrides(cli: &Cli, model: Option<&ModelFlags>, marker: Option<&str>) -> CliOverrides {
    CliOverrides {
        variant: model.and_then(|m| m.variant),
        preselect: model.and_then(|m| m.preselect),
        n: model.and_then(|m| m.n),
        r: model.and_then(|m| m.r),
        v: model.and_then(|m| m.v),
        limit: model.and_then(|m| m.limit),
        no_redundancy_filter: model.map_or(false, |m| m.no_redundancy_filter),
        stopwords: cli.stopwords.clone(),
        abbreviations: cli.abbreviations.clone(),
        jobs: cli.jobs,
        marker: marker.map(String::from),
    }
}

fn run(cli: Cli) -> Result<()> {
    let file = FileConfig::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Summarize {
            input,
            out,
            model,
            sidecar,
            dump_centroid,
        } => {
            let resolved = config::resolve(overrides(&cli, Some(model), None), &file)?;
            ops::run_summarize(
                &ops::SummarizeOpts {
                    input: input.clone(),
                    out: out.clone(),
                    sidecar: *sidecar,
                    dump_centroid: *dump_centroid,
                },
                &resolved,
            )
        }
        Command::Evaluate {
            summaries,
            corpus,
            limit,
            no_stemming,
            output,
        } => {
            let resolved = config::resolve(overrides(&cli, None, None), &file)?;
            ops::run_evaluate(
                &ops::EvaluateOpts {
                    summaries: summaries.clone(),
                    corpus: corpus.clone(),
                    truncate_words: limit.unwrap_or(100),
                    stemming: !no_stemming,
                    output: output.clone(),
                },
                &resolved,
            )
        }
        Command::Tune {
            corpus,
            grid,
            method,
            objective,
            out,
            model,
        } => {
            let resolved = config::resolve(overrides(&cli, Some(model), None), &file)?;
            let variant_explicit = model.variant.is_some() || file.get("variant").is_some();
            ops::run_tune(
                &ops::TuneOpts {
                    corpus: corpus.clone(),
                    grid: *grid,
                    method: *method,
                    objective: objective.unwrap_or(Objective::Rouge1),
                    out: out.clone(),
                    variant_explicit,
                },
                &resolved,
            )
        }
        Command::BuildDevClusters {
            articles,
            clusters,
            size,
            seed,
            limit,
            marker,
            out,
        } => {
            let resolved = config::resolve(overrides(&cli, None, marker.as_deref()), &file)?;
            ops::run_build_dev_clusters(
                &ops::BuildDevOpts {
                    articles: articles.clone(),
                    clusters: *clusters,
                    size: *size,
                    seed: *seed,
                    limit: *limit,
                    out: out.clone(),
                },
                &resolved,
            )
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
