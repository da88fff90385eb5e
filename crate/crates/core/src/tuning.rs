//! Grid-search tuning of the summarizer's hyperparameters.
//!
//! `tune_rv` sweeps the redundancy threshold r and the centroid pruning
//! ratio v over {0.0, 0.1, ..., 1.0} (121 combinations) with the ranked
//! variant; `tune_n` sweeps the preselection size N over {1, ..., 10} with
//! the global variant. Each grid point summarizes every cluster of the
//! development corpus and scores the result with ROUGE recall; the best
//! point is the argmax of the objective with ties going to the
//! lexicographically smallest parameter tuple.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::preprocess::{Preprocessor, SentenceRecord};
use crate::rouge::{evaluate_corpus, CorpusRougeReport, RougeConfig};
use crate::summarize::{summarize_sentences, Preselection, SummarizerConfig, Variant};
use crate::corpus::Cluster;

/// Metric maximized by the grid search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Rouge1,
    Rouge2,
}

impl Objective {
    pub fn score(&self, report: &CorpusRougeReport) -> f64 {
        match self {
            Objective::Rouge1 => report.rouge_1,
            Objective::Rouge2 => report.rouge_2,
        }
    }
}

/// One point of a parameter grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamPoint {
    Rv { r: f64, v: f64 },
    N { n: usize },
}

impl std::fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamPoint::Rv { r, v } => write!(f, "r={r:.1}\tv={v:.1}"),
            ParamPoint::N { n } => write!(f, "n={n}"),
        }
    }
}

/// A fully evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct GridEntry {
    pub params: ParamPoint,
    pub report: CorpusRougeReport,
}

/// Complete grid in evaluation (lexicographic) order plus the best pick.
#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub entries: Vec<GridEntry>,
    pub objective: Objective,
    /// Index into `entries` of the argmax of the objective (ties: first,
    /// i.e. lexicographically smallest parameter tuple).
    pub best: usize,
}

impl GridResult {
    /// Assemble a result from entries already in lexicographic parameter
    /// order, picking the best under the objective.
    pub fn from_entries(entries: Vec<GridEntry>, objective: Objective) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Config("empty parameter grid".into()));
        }
        let mut best = 0;
        for (i, e) in entries.iter().enumerate().skip(1) {
            if objective.score(&e.report) > objective.score(&entries[best].report) {
                best = i;
            }
        }
        Ok(GridResult {
            entries,
            objective,
            best,
        })
    }

    pub fn best_entry(&self) -> &GridEntry {
        &self.entries[self.best]
    }
}

/// A cluster segmented and tokenized once, reused across grid points.
#[derive(Debug, Clone)]
pub struct PreparedCluster {
    pub cluster_id: String,
    pub sentences: Vec<SentenceRecord>,
    pub num_docs: usize,
    pub references: Vec<String>,
}

/// Preprocess every cluster of the development corpus once.
pub fn prepare_clusters(
    dev_corpus: &[Cluster],
    preproc: &Preprocessor,
) -> Result<Vec<PreparedCluster>> {
    if dev_corpus.is_empty() {
        return Err(Error::Config("empty development corpus".into()));
    }
    dev_corpus
        .iter()
        .map(|c| {
            let sentences = c.sentences(preproc);
            if sentences.is_empty() {
                return Err(Error::EmptyCluster {
                    id: c.cluster_id.clone(),
                });
            }
            if c.references.is_empty() {
                return Err(Error::NoReferences {
                    id: c.cluster_id.clone(),
                });
            }
            Ok(PreparedCluster {
                cluster_id: c.cluster_id.clone(),
                sentences,
                num_docs: c.documents.len(),
                references: c.references.clone(),
            })
        })
        .collect()
}

/// Summarize every prepared cluster with `cfg` and score the corpus.
pub fn evaluate_config(
    prepared: &[PreparedCluster],
    cfg: &SummarizerConfig,
    rouge_cfg: &RougeConfig,
) -> Result<CorpusRougeReport> {
    let mut summaries = BTreeMap::new();
    let mut references = BTreeMap::new();
    for p in prepared {
        let (result, _) = summarize_sentences(&p.sentences, p.num_docs, cfg)?;
        summaries.insert(p.cluster_id.clone(), result.text(cfg.word_limit));
        references.insert(p.cluster_id.clone(), p.references.clone());
    }
    evaluate_corpus(&summaries, &references, rouge_cfg)
}

/// The 121-point (r, v) grid in lexicographic order.
pub fn rv_grid() -> Vec<(f64, f64)> {
    let mut grid = Vec::with_capacity(121);
    for i in 0..=10 {
        for j in 0..=10 {
            grid.push((i as f64 / 10.0, j as f64 / 10.0));
        }
    }
    grid
}

/// The N grid, 1 through 10.
pub fn n_grid() -> Vec<usize> {
    (1..=10).collect()
}

/// Grid search over (r, v) with the ranked variant.
pub fn tune_rv(
    dev_corpus: &[Cluster],
    cfg_base: &SummarizerConfig,
    preproc: &Preprocessor,
    rouge_cfg: &RougeConfig,
    objective: Objective,
) -> Result<GridResult> {
    if cfg_base.variant != Variant::Ranked {
        return Err(Error::Config(
            "tune_rv requires the ranked variant".into(),
        ));
    }
    let prepared = prepare_clusters(dev_corpus, preproc)?;
    let mut entries = Vec::with_capacity(121);
    for (r, v) in rv_grid() {
        let cfg = SummarizerConfig {
            r,
            v,
            ..cfg_base.clone()
        };
        let report = evaluate_config(&prepared, &cfg, rouge_cfg)?;
        entries.push(GridEntry {
            params: ParamPoint::Rv { r, v },
            report,
        });
    }
    GridResult::from_entries(entries, objective)
}

/// Grid search over N ∈ {1,…,10} for one preselection method with the
/// global variant; r and v stay fixed at `cfg_base`'s values.
pub fn tune_n(
    dev_corpus: &[Cluster],
    cfg_base: &SummarizerConfig,
    method: Preselection,
    preproc: &Preprocessor,
    rouge_cfg: &RougeConfig,
    objective: Objective,
) -> Result<GridResult> {
    if cfg_base.variant != Variant::Global {
        return Err(Error::Config("tune_n requires the global variant".into()));
    }
    if method == Preselection::None {
        return Err(Error::Config(
            "tune_n needs a preselection method to size".into(),
        ));
    }
    let prepared = prepare_clusters(dev_corpus, preproc)?;
    let mut entries = Vec::with_capacity(10);
    for n in n_grid() {
        let cfg = SummarizerConfig {
            preselection: method,
            n,
            ..cfg_base.clone()
        };
        let report = evaluate_config(&prepared, &cfg, rouge_cfg)?;
        entries.push(GridEntry {
            params: ParamPoint::N { n },
            report,
        });
    }
    GridResult::from_entries(entries, objective)
}
