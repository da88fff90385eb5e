//! Python bindings: summarize document clusters, score with ROUGE recall,
//! and reach the text-processing primitives from Python.

use std::path::Path;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use centroid_sum::corpus::{strip_duc_sgml as strip_sgml_impl, Cluster};
use centroid_sum::preprocess::{
    porter_stem as porter_impl, tokenize as tokenize_impl, AbbreviationList, StopwordList,
};
use centroid_sum::rouge::{evaluate_cluster, rouge_n_recall, RougeConfig};
use centroid_sum::summarize::{Preselection, Variant};
use centroid_sum::{Preprocessor, RawDocument, SummarizerConfig};

fn to_py_err(e: centroid_sum::Error) -> PyErr {
    match e {
        centroid_sum::Error::Io { .. } => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_variant(s: &str) -> PyResult<Variant> {
    match s {
        "ranked" => Ok(Variant::Ranked),
        "global" => Ok(Variant::Global),
        _ => Err(PyValueError::new_err(format!(
            "invalid variant '{s}' (ranked|global)"
        ))),
    }
}

fn parse_preselect(s: &str) -> PyResult<Preselection> {
    match s.replace('-', "_").as_str() {
        "none" => Ok(Preselection::None),
        "n_first" => Ok(Preselection::NFirst),
        "n_best" => Ok(Preselection::NBest),
        "new_tfidf" => Ok(Preselection::NewTfidf),
        _ => Err(PyValueError::new_err(format!(
            "invalid preselect value '{s}' (none|n_first|n_best|new_tfidf)"
        ))),
    }
}

fn build_preprocessor(
    stopwords: Option<&str>,
    abbreviations: Option<&str>,
) -> PyResult<Preprocessor> {
    let stopwords = match stopwords {
        Some(p) => StopwordList::from_path(Path::new(p)).map_err(to_py_err)?,
        None => StopwordList::default(),
    };
    let abbreviations = match abbreviations {
        Some(p) => AbbreviationList::from_path(Path::new(p)).map_err(to_py_err)?,
        None => AbbreviationList::default(),
    };
    Ok(Preprocessor::new(stopwords, abbreviations))
}

/// Result of summarizing one cluster.
#[pyclass(frozen)]
struct Summary {
    /// Summary text, final sentence truncated at the word limit if crossed.
    #[pyo3(get)]
    text: String,
    /// (doc_index, sent_index) of each selected sentence, in order.
    #[pyo3(get)]
    positions: Vec<(usize, usize)>,
    /// Cosine between the running summary vector and the pruned centroid
    /// after each selection.
    #[pyo3(get)]
    step_scores: Vec<f64>,
    /// Untruncated word count of the selected sentences.
    #[pyo3(get)]
    total_words: usize,
    /// Whether the last sentence crossed the word limit.
    #[pyo3(get)]
    truncated_last: bool,
}

#[pymethods]
impl Summary {
    fn __repr__(&self) -> String {
        format!(
            "Summary(sentences={}, total_words={}, truncated_last={})",
            self.positions.len(),
            self.total_words,
            self.truncated_last
        )
    }
}

/// Summarize a cluster of documents (one string per document).
#[pyfunction]
#[pyo3(signature = (documents, *, variant="global", preselect="none", n=1, r=0.6, v=0.1,
                    limit=100, redundancy_filter=true, stopwords=None, abbreviations=None))]
#[allow(clippy::too_many_arguments)]
fn summarize(
    documents: Vec<String>,
    variant: &str,
    preselect: &str,
    n: usize,
    r: f64,
    v: f64,
    limit: usize,
    redundancy_filter: bool,
    stopwords: Option<String>,
    abbreviations: Option<String>,
) -> PyResult<Summary> {
    let cfg = SummarizerConfig {
        variant: parse_variant(variant)?,
        preselection: parse_preselect(preselect)?,
        n,
        r,
        v,
        word_limit: limit,
        redundancy_filter,
    };
    cfg.validate().map_err(to_py_err)?;
    let preproc = build_preprocessor(stopwords.as_deref(), abbreviations.as_deref())?;
    let cluster = Cluster {
        cluster_id: "py".into(),
        documents: documents
            .iter()
            .enumerate()
            .map(|(i, text)| RawDocument::new(format!("doc{i}"), text))
            .collect(),
        references: Vec::new(),
    };
    let (result, _) = cluster.summarize(&preproc, &cfg).map_err(to_py_err)?;
    Ok(Summary {
        text: result.text(limit),
        positions: result.positions(),
        step_scores: result.step_scores.clone(),
        total_words: result.total_words,
        truncated_last: result.truncated_last,
    })
}

/// ROUGE-N recall of a candidate against reference summaries.
#[pyfunction]
#[pyo3(signature = (candidate, references, n, *, truncate_words=100, stemming=true))]
fn rouge_n(
    candidate: &str,
    references: Vec<String>,
    n: usize,
    truncate_words: usize,
    stemming: bool,
) -> PyResult<f64> {
    let cfg = RougeConfig {
        truncate_words,
        stemming,
    };
    rouge_n_recall(candidate, &references, n, &cfg)
        .map(|score| score.recall)
        .map_err(to_py_err)
}

/// ROUGE-1/2/4 recall as a dict.
#[pyfunction]
#[pyo3(signature = (candidate, references, *, truncate_words=100, stemming=true))]
fn rouge_scores(
    candidate: &str,
    references: Vec<String>,
    truncate_words: usize,
    stemming: bool,
) -> PyResult<std::collections::BTreeMap<String, f64>> {
    let cfg = RougeConfig {
        truncate_words,
        stemming,
    };
    let report = evaluate_cluster(candidate, &references, &cfg).map_err(to_py_err)?;
    Ok(std::collections::BTreeMap::from([
        ("rouge_1".to_string(), report.rouge_1),
        ("rouge_2".to_string(), report.rouge_2),
        ("rouge_4".to_string(), report.rouge_4),
    ]))
}

/// Lowercased alphanumeric tokens (apostrophes kept word-internal).
#[pyfunction]
fn tokenize(text: &str) -> Vec<String> {
    tokenize_impl(text)
}

/// Split text into sentences using the abbreviation-aware segmenter.
#[pyfunction]
#[pyo3(signature = (text, *, abbreviations=None))]
fn segment(text: &str, abbreviations: Option<String>) -> PyResult<Vec<String>> {
    let preproc = build_preprocessor(None, abbreviations.as_deref())?;
    Ok(preproc.segment_sentences(&RawDocument::new("doc", text)))
}

/// Porter-stem a single token.
#[pyfunction]
fn porter_stem(token: &str) -> String {
    porter_impl(token)
}

/// Drop SGML markup, keeping only `<TEXT>` block content.
#[pyfunction]
fn strip_duc_sgml(text: &str) -> String {
    strip_sgml_impl(text)
}

#[pymodule]
fn centroid_sum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Summary>()?;
    m.add_function(wrap_pyfunction!(summarize, m)?)?;
    m.add_function(wrap_pyfunction!(rouge_n, m)?)?;
    m.add_function(wrap_pyfunction!(rouge_scores, m)?)?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(segment, m)?)?;
    m.add_function(wrap_pyfunction!(porter_stem, m)?)?;
    m.add_function(wrap_pyfunction!(strip_duc_sgml, m)?)?;
    Ok(())
}
