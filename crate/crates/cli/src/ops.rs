//! Command implementations behind the thin clap layer in `main`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use centroid_sum::corpus::{
    build_dev_clusters, load_articles_dir, load_cluster_dir, load_corpus_root, Cluster,
};
use centroid_sum::rouge::{evaluate_corpus, percent, CorpusRougeReport, RougeConfig};
use centroid_sum::summarize::Preselection;
use centroid_sum::tuning::{
    evaluate_config, n_grid, prepare_clusters, rv_grid, GridEntry, GridResult, Objective,
    ParamPoint,
};
use centroid_sum::{SummarizerConfig, Variant};

use crate::config::{preselect_name, variant_name, Resolved};

/// Write `bytes` to `path` atomically (temp file + rename).
fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    let tmp = dir.join(format!(".{name}.tmp"));
    std::fs::write(&tmp, bytes).with_context(|| format!("cannot write {}", tmp.display()))?;
    std::fs::rename(&tmp, path)
        .with_context(|| format!("cannot move {} into place", path.display()))?;
    Ok(())
}

/// A cluster directory has docs/ directly; anything else is a corpus root.
fn load_input(input: &Path) -> Result<Vec<Cluster>> {
    if !input.is_dir() {
        bail!("input path {} is not a directory", input.display());
    }
    let clusters = if input.join("docs").is_dir() {
        vec![load_cluster_dir(input)?]
    } else {
        load_corpus_root(input)?
    };
    if clusters.is_empty() {
        bail!("no clusters found under {}", input.display());
    }
    Ok(clusters)
}

#[derive(Serialize)]
struct ManifestConfig {
    variant: &'static str,
    preselect: &'static str,
    n: usize,
    r: f64,
    v: f64,
    limit: usize,
    redundancy_filter: bool,
    stopwords: String,
    abbreviations: String,
    jobs: usize,
}

#[derive(Serialize)]
struct RunManifest {
    tool: &'static str,
    version: &'static str,
    command: String,
    input: String,
    output: String,
    config: ManifestConfig,
    /// Command-specific parameters (e.g. the dev-set builder's seed).
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    params: BTreeMap<&'static str, String>,
    clusters: Vec<String>,
    timings_ms: BTreeMap<&'static str, u128>,
}

fn manifest_config(resolved: &Resolved) -> ManifestConfig {
    let show = |p: &Option<PathBuf>| {
        p.as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "bundled".into())
    };
    ManifestConfig {
        variant: variant_name(resolved.variant),
        preselect: preselect_name(resolved.preselect),
        n: resolved.n,
        r: resolved.r,
        v: resolved.v,
        limit: resolved.limit,
        redundancy_filter: resolved.redundancy_filter,
        stopwords: show(&resolved.stopwords),
        abbreviations: show(&resolved.abbreviations),
        jobs: resolved.jobs,
    }
}

fn write_manifest(
    out_dir: &Path,
    resolved: &Resolved,
    command: &str,
    input: &Path,
    params: BTreeMap<&'static str, String>,
    clusters: Vec<String>,
    timings_ms: BTreeMap<&'static str, u128>,
) -> Result<()> {
    let manifest = RunManifest {
        tool: "centroid-sum",
        version: env!("CARGO_PKG_VERSION"),
        command: command.to_string(),
        input: input.display().to_string(),
        output: out_dir.display().to_string(),
        config: manifest_config(resolved),
        params,
        clusters,
        timings_ms,
    };
    let json = serde_json::to_string_pretty(&manifest)?;
    atomic_write(&out_dir.join("manifest.json"), format!("{json}\n").as_bytes())
}

pub struct SummarizeOpts {
    pub input: PathBuf,
    pub out: PathBuf,
    pub sidecar: bool,
    pub dump_centroid: bool,
}

pub fn run_summarize(opts: &SummarizeOpts, resolved: &Resolved) -> Result<()> {
    let t_start = Instant::now();
    let cfg = resolved.summarizer_config();
    cfg.validate().context("invalid summarizer configuration")?;
    let preproc = resolved.preprocessor()?;
    let clusters = load_input(&opts.input)?;
    let load_ms = t_start.elapsed().as_millis();

    let t_sum = Instant::now();
    let pool = resolved.thread_pool()?;
    let results = pool.install(|| {
        clusters
            .par_iter()
            .map(|c| {
                let (result, model) = c.summarize(&preproc, &cfg)?;
                Ok((c, result, model))
            })
            .collect::<centroid_sum::Result<Vec<_>>>()
    })?;
    let summarize_ms = t_sum.elapsed().as_millis();

    let t_write = Instant::now();
    std::fs::create_dir_all(&opts.out)
        .with_context(|| format!("cannot create output directory {}", opts.out.display()))?;
    for (cluster, result, model) in &results {
        let id = &cluster.cluster_id;
        atomic_write(
            &opts.out.join(format!("{id}.txt")),
            format!("{}\n", result.text(cfg.word_limit)).as_bytes(),
        )?;
        if opts.sidecar {
            let mut side = String::new();
            for (sel, score) in result.selected.iter().zip(&result.step_scores) {
                side.push_str(&format!("{}\t{}\t{}\n", sel.doc_index, sel.sent_index, score));
            }
            atomic_write(&opts.out.join(format!("{id}.positions.tsv")), side.as_bytes())?;
        }
        if opts.dump_centroid {
            atomic_write(
                &opts.out.join(format!("{id}.centroid.tsv")),
                model.dump_centroid(true).as_bytes(),
            )?;
        }
        log::info!(
            "{id}: {} sentences, {} words{}",
            result.selected.len(),
            result.total_words,
            if result.truncated_last { " (last truncated)" } else { "" }
        );
    }
    let write_ms = t_write.elapsed().as_millis();

    let mut timings = BTreeMap::new();
    timings.insert("load", load_ms);
    timings.insert("summarize", summarize_ms);
    timings.insert("write", write_ms);
    timings.insert("total", t_start.elapsed().as_millis());
    let ids = results.iter().map(|(c, _, _)| c.cluster_id.clone()).collect();
    write_manifest(&opts.out, resolved, "summarize", &opts.input, BTreeMap::new(), ids, timings)?;
    println!("summarized {} clusters -> {}", results.len(), opts.out.display());
    Ok(())
}

pub struct EvaluateOpts {
    pub summaries: PathBuf,
    pub corpus: PathBuf,
    pub truncate_words: usize,
    pub stemming: bool,
    pub output: Option<PathBuf>,
}

/// Candidate summaries, one set per model. `<dir>/*.txt` is a single model
/// named after the directory; otherwise each subdirectory is a model.
fn discover_models(dir: &Path) -> Result<Vec<(String, BTreeMap<String, String>)>> {
    if !dir.is_dir() {
        bail!("summaries path {} is not a directory", dir.display());
    }
    let read_summaries = |d: &Path| -> Result<BTreeMap<String, String>> {
        let mut map = BTreeMap::new();
        for entry in std::fs::read_dir(d).with_context(|| format!("cannot read {}", d.display()))? {
            let path = entry?.path();
            if path.is_file() && path.extension().map_or(false, |e| e == "txt") {
                let id = path.file_stem().unwrap().to_string_lossy().into_owned();
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("cannot read summary {}", path.display()))?;
                map.insert(id, text.trim_end().to_string());
            }
        }
        Ok(map)
    };

    let direct = read_summaries(dir)?;
    if !direct.is_empty() {
        let name = dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "model".into());
        return Ok(vec![(name, direct)]);
    }
    let mut models = Vec::new();
    let mut subdirs: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("cannot read {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_dir())
        .collect();
    subdirs.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    for sub in subdirs {
        let summaries = read_summaries(&sub)?;
        if summaries.is_empty() {
            continue;
        }
        let name = sub.file_name().unwrap().to_string_lossy().into_owned();
        models.push((name, summaries));
    }
    if models.is_empty() {
        bail!("no summary files under {}", dir.display());
    }
    Ok(models)
}

fn load_references(corpus: &Path) -> Result<BTreeMap<String, Vec<String>>> {
    let clusters = load_input(corpus)?;
    Ok(clusters
        .into_iter()
        .map(|c| (c.cluster_id, c.references))
        .collect())
}

pub fn run_evaluate(opts: &EvaluateOpts, resolved: &Resolved) -> Result<()> {
    let rouge_cfg = RougeConfig {
        truncate_words: opts.truncate_words,
        stemming: opts.stemming,
    };
    let models = discover_models(&opts.summaries)?;
    let references = load_references(&opts.corpus)?;

    let pool = resolved.thread_pool()?;
    let reports: Vec<(String, CorpusRougeReport)> = pool.install(|| {
        models
            .par_iter()
            .map(|(name, summaries)| {
                let report = evaluate_corpus(summaries, &references, &rouge_cfg)?;
                Ok((name.clone(), report))
            })
            .collect::<centroid_sum::Result<Vec<_>>>()
    })?;

    let width = reports
        .iter()
        .map(|(n, _)| n.len())
        .chain(std::iter::once("model".len()))
        .max()
        .unwrap()
        + 2;
    println!("{:<width$}{:>8}{:>8}{:>8}", "model", "R-1", "R-2", "R-4");
    for (name, report) in &reports {
        println!(
            "{:<width$}{:>8}{:>8}{:>8}",
            name,
            percent(report.rouge_1),
            percent(report.rouge_2),
            percent(report.rouge_4),
        );
    }

    if let Some(out) = &opts.output {
        let mut dump = String::from("model\tcluster\tn\trecall\n");
        for (name, report) in &reports {
            for (cluster_id, cluster_report) in &report.per_cluster {
                for (n, recall) in [
                    (1, cluster_report.rouge_1),
                    (2, cluster_report.rouge_2),
                    (4, cluster_report.rouge_4),
                ] {
                    dump.push_str(&format!("{name}\t{cluster_id}\t{n}\t{recall}\n"));
                }
            }
        }
        atomic_write(out, dump.as_bytes())?;
        log::info!("wrote per-cluster records -> {}", out.display());
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Rv,
    N,
}

pub fn parse_grid(s: &str) -> Result<GridKind, String> {
    match s {
        "rv" => Ok(GridKind::Rv),
        "n" => Ok(GridKind::N),
        _ => Err(format!("invalid grid '{s}' (rv|n)")),
    }
}

pub struct TuneOpts {
    pub corpus: PathBuf,
    pub grid: GridKind,
    pub method: Option<Preselection>,
    pub objective: Objective,
    pub out: PathBuf,
    /// True when the user explicitly picked a variant (flag or config file).
    pub variant_explicit: bool,
}

pub fn run_tune(opts: &TuneOpts, resolved: &Resolved) -> Result<()> {
    let clusters = load_input(&opts.corpus)?;
    let preproc = resolved.preprocessor()?;
    let rouge_cfg = RougeConfig {
        truncate_words: resolved.limit,
        stemming: true,
    };
    let mut base = resolved.summarizer_config();
    if !opts.variant_explicit {
        // Each grid has a natural variant; an explicit choice still wins
        // (and is validated below).
        base.variant = match opts.grid {
            GridKind::Rv => Variant::Ranked,
            GridKind::N => Variant::Global,
        };
    }
    base.validate().context("invalid summarizer configuration")?;

    let prepared = prepare_clusters(&clusters, &preproc)?;
    let pool = resolved.thread_pool()?;
    let entries: Vec<GridEntry> = match opts.grid {
        GridKind::Rv => {
            if base.variant != Variant::Ranked {
                bail!("--grid rv tunes the ranked variant (got --variant global)");
            }
            pool.install(|| {
                rv_grid()
                    .par_iter()
                    .map(|&(r, v)| {
                        let cfg = SummarizerConfig { r, v, ..base.clone() };
                        let report = evaluate_config(&prepared, &cfg, &rouge_cfg)?;
                        Ok(GridEntry {
                            params: ParamPoint::Rv { r, v },
                            report,
                        })
                    })
                    .collect::<centroid_sum::Result<Vec<_>>>()
            })?
        }
        GridKind::N => {
            if base.variant != Variant::Global {
                bail!("--grid n tunes the global variant (got --variant ranked)");
            }
            let Some(method) = opts.method else {
                bail!("--grid n requires --method (n_first|n_best|new_tfidf)");
            };
            if method == Preselection::None {
                bail!("--method none has no N to tune");
            }
            pool.install(|| {
                n_grid()
                    .par_iter()
                    .map(|&n| {
                        let cfg = SummarizerConfig {
                            preselection: method,
                            n,
                            ..base.clone()
                        };
                        let report = evaluate_config(&prepared, &cfg, &rouge_cfg)?;
                        Ok(GridEntry {
                            params: ParamPoint::N { n },
                            report,
                        })
                    })
                    .collect::<centroid_sum::Result<Vec<_>>>()
            })?
        }
    };
    let result = GridResult::from_entries(entries, opts.objective)?;

    let mut tsv = String::new();
    match opts.grid {
        GridKind::Rv => tsv.push_str("r\tv\trouge_1\trouge_2\trouge_4\n"),
        GridKind::N => tsv.push_str("n\trouge_1\trouge_2\trouge_4\n"),
    }
    for entry in &result.entries {
        match entry.params {
            ParamPoint::Rv { r, v } => tsv.push_str(&format!("{r:.1}\t{v:.1}\t")),
            ParamPoint::N { n } => tsv.push_str(&format!("{n}\t")),
        }
        tsv.push_str(&format!(
            "{}\t{}\t{}\n",
            entry.report.rouge_1, entry.report.rouge_2, entry.report.rouge_4
        ));
    }
    atomic_write(&opts.out, tsv.as_bytes())?;

    let best = result.best_entry();
    let objective = match opts.objective {
        Objective::Rouge1 => "rouge1",
        Objective::Rouge2 => "rouge2",
    };
    println!(
        "best ({objective}): {}\tR-1 {}\tR-2 {}\tR-4 {}",
        best.params,
        percent(best.report.rouge_1),
        percent(best.report.rouge_2),
        percent(best.report.rouge_4),
    );
    println!("grid -> {}", opts.out.display());
    Ok(())
}

pub struct BuildDevOpts {
    pub articles: PathBuf,
    pub clusters: usize,
    pub size: usize,
    pub seed: u64,
    pub limit: usize,
    pub out: PathBuf,
}

pub fn run_build_dev_clusters(opts: &BuildDevOpts, resolved: &Resolved) -> Result<()> {
    let t_start = Instant::now();
    let preproc = resolved.preprocessor()?;
    let articles = load_articles_dir(&opts.articles, &resolved.marker)
        .with_context(|| format!("cannot load articles from {}", opts.articles.display()))?;
    if articles.is_empty() {
        bail!("no article files under {}", opts.articles.display());
    }
    let load_ms = t_start.elapsed().as_millis();

    let t_build = Instant::now();
    let clusters = build_dev_clusters(
        &articles,
        opts.clusters,
        opts.size,
        opts.limit,
        opts.seed,
        &preproc,
    )?;
    let build_ms = t_build.elapsed().as_millis();

    let t_write = Instant::now();
    for cluster in &clusters {
        let dir = opts.out.join(&cluster.cluster_id);
        let docs = dir.join("docs");
        let refs = dir.join("refs");
        std::fs::create_dir_all(&docs)
            .with_context(|| format!("cannot create {}", docs.display()))?;
        std::fs::create_dir_all(&refs)
            .with_context(|| format!("cannot create {}", refs.display()))?;
        // Filename prefix pins doc_index on re-ingestion.
        for (i, doc) in cluster.documents.iter().enumerate() {
            atomic_write(
                &docs.join(format!("{i:03}_{}.txt", doc.doc_id)),
                format!("{}\n", doc.text).as_bytes(),
            )?;
        }
        for (i, reference) in cluster.references.iter().enumerate() {
            atomic_write(
                &refs.join(format!("ref{i}.txt")),
                format!("{reference}\n").as_bytes(),
            )?;
        }
    }
    let write_ms = t_write.elapsed().as_millis();

    let mut timings = BTreeMap::new();
    timings.insert("load", load_ms);
    timings.insert("build", build_ms);
    timings.insert("write", write_ms);
    timings.insert("total", t_start.elapsed().as_millis());
    let ids = clusters.iter().map(|c| c.cluster_id.clone()).collect();
    let params = BTreeMap::from([
        ("clusters", opts.clusters.to_string()),
        ("size", opts.size.to_string()),
        ("seed", opts.seed.to_string()),
        ("limit", opts.limit.to_string()),
        ("marker", resolved.marker.clone()),
    ]);
    write_manifest(&opts.out, resolved, "build-dev-clusters", &opts.articles, params, ids, timings)?;
    println!("built {} clusters -> {}", clusters.len(), opts.out.display());
    Ok(())
}
