//! Corpus ingestion and development-set construction.
//!
//! Clusters load from a fixed directory layout (`<id>/docs/*.txt` +
//! `<id>/refs/*.txt`). The development-set builder reproduces the
//! overlap-based construction: pick seed articles by a seeded permutation,
//! attach the articles with the highest first-3-sentence word overlap, and
//! interleave the member articles' highlight sentences into a single
//! word-limited reference summary.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::preprocess::{tokenize_with_spans, Preprocessor, RawDocument, SentenceRecord};
use crate::summarize::{summarize_sentences, SummarizerConfig, SummaryResult};
use crate::vector::CentroidModel;

/// One topic cluster: ordered documents (order defines `doc_index`) plus
/// zero or more reference summaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub cluster_id: String,
    pub documents: Vec<RawDocument>,
    pub references: Vec<String>,
}

impl Cluster {
    /// Segment and tokenize every document, in document order.
    pub fn sentences(&self, preproc: &Preprocessor) -> Vec<SentenceRecord> {
        preproc.process_documents(&self.documents)
    }

    /// Full summarization pipeline over this cluster.
    pub fn summarize(
        &self,
        preproc: &Preprocessor,
        cfg: &SummarizerConfig,
    ) -> Result<(SummaryResult, CentroidModel)> {
        let sentences = self.sentences(preproc);
        if sentences.is_empty() {
            return Err(Error::EmptyCluster {
                id: self.cluster_id.clone(),
            });
        }
        summarize_sentences(&sentences, self.documents.len(), cfg)
    }
}

/// Files of `dir` with extension `ext`, sorted by filename (bytewise).
fn sorted_files(dir: &Path, ext: &str) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if path.is_file() && path.extension().map_or(false, |e| e == ext) {
            files.push(path);
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

/// Load one cluster from `<path>/docs/*.txt` and `<path>/refs/*.txt`.
///
/// Documents are ordered by filename to fix `doc_index`; files that are
/// empty after whitespace normalization are dropped with a warning. The
/// refs directory is optional (a cluster used only for summarization needs
/// none), but an absent or empty docs directory is an error.
pub fn load_cluster_dir(path: &Path) -> Result<Cluster> {
    let cluster_id = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let docs_dir = path.join("docs");
    if !docs_dir.is_dir() {
        return Err(Error::BadClusterDir {
            path: path.to_path_buf(),
            reason: "missing docs directory".into(),
        });
    }
    let mut documents = Vec::new();
    for file in sorted_files(&docs_dir, "txt")? {
        let text = std::fs::read_to_string(&file).map_err(|e| Error::io(&file, e))?;
        let doc_id = file
            .file_stem()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let doc = RawDocument::new(doc_id, &text);
        if doc.is_empty() {
            log::warn!("skipping empty document file {}", file.display());
            continue;
        }
        documents.push(doc);
    }
    if documents.is_empty() {
        return Err(Error::EmptyCluster { id: cluster_id });
    }
    let mut references = Vec::new();
    let refs_dir = path.join("refs");
    if refs_dir.is_dir() {
        for file in sorted_files(&refs_dir, "txt")? {
            let text = std::fs::read_to_string(&file).map_err(|e| Error::io(&file, e))?;
            references.push(text);
        }
    }
    Ok(Cluster {
        cluster_id,
        documents,
        references,
    })
}

/// Load every cluster under a corpus root (one subdirectory per cluster),
/// sorted by cluster id.
pub fn load_corpus_root(path: &Path) -> Result<Vec<Cluster>> {
    let entries = std::fs::read_dir(path).map_err(|e| Error::io(path, e))?;
    let mut dirs: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(path, e))?;
        let p = entry.path();
        if p.is_dir() {
            dirs.push(p);
        }
    }
    dirs.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    dirs.iter().map(|d| load_cluster_dir(d)).collect()
}

/// Distinct content tokens of the first `k` sentences of a document.
pub fn first_k_token_set(
    doc: &RawDocument,
    k: usize,
    preproc: &Preprocessor,
) -> HashSet<String> {
    let mut set = HashSet::new();
    for sentence in preproc.segment_sentences(doc).iter().take(k) {
        let toks = crate::preprocess::tokenize(sentence);
        for t in preproc.remove_stopwords(&toks) {
            set.insert(t);
        }
    }
    set
}

/// Word overlap of two documents: the size of the intersection of their
/// first-`k`-sentence content-token sets (types, not tokens).
pub fn first_k_overlap(
    a: &RawDocument,
    b: &RawDocument,
    k: usize,
    preproc: &Preprocessor,
) -> usize {
    let sa = first_k_token_set(a, k, preproc);
    let sb = first_k_token_set(b, k, preproc);
    sa.intersection(&sb).count()
}

/// One source article for the development-set builder: body text plus its
/// human-written highlight sentences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Article {
    pub id: String,
    pub text: String,
    pub highlights: Vec<String>,
}

/// Split an article file into body text and highlight sentences. Everything
/// before the first marker line is body; each marker introduces one
/// highlight (whitespace-normalized, empty ones dropped). The marker
/// matches a whole trimmed line.
pub fn parse_article(raw: &str, marker: &str) -> (String, Vec<String>) {
    let mut body = String::new();
    let mut highlights: Vec<String> = Vec::new();
    let mut current: Option<String> = None;
    for line in raw.lines() {
        if line.trim() == marker {
            if let Some(h) = current.take() {
                highlights.push(h);
            }
            current = Some(String::new());
            continue;
        }
        match current.as_mut() {
            Some(h) => {
                h.push_str(line);
                h.push('\n');
            }
            None => {
                body.push_str(line);
                body.push('\n');
            }
        }
    }
    if let Some(h) = current.take() {
        highlights.push(h);
    }
    let normalize = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
    let highlights = highlights
        .iter()
        .map(|h| normalize(h))
        .filter(|h| !h.is_empty())
        .collect();
    (body.trim().to_string(), highlights)
}

/// Load a directory of article files (`*.story` or `*.txt`), sorted by id.
/// The article id is the file stem.
pub fn load_articles_dir(path: &Path, marker: &str) -> Result<Vec<Article>> {
    let entries = std::fs::read_dir(path).map_err(|e| Error::io(path, e))?;
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(path, e))?;
        let p = entry.path();
        if p.is_file()
            && p.extension()
                .map_or(false, |e| e == "story" || e == "txt")
        {
            files.push(p);
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    let mut articles = Vec::new();
    for file in files {
        let raw = std::fs::read_to_string(&file).map_err(|e| Error::io(&file, e))?;
        let id = file
            .file_stem()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let (text, highlights) = parse_article(&raw, marker);
        if text.split_whitespace().next().is_none() {
            log::warn!("skipping article {} with empty body", file.display());
            continue;
        }
        articles.push(Article {
            id,
            text,
            highlights,
        });
    }
    Ok(articles)
}

/// Interleave per-article summary sentences round-robin (article order,
/// each article's sentences in order) until appending a sentence would
/// reach or cross `word_limit`; that sentence is still appended and the
/// result is truncated to exactly `word_limit` tokens. Errors when no
/// article has any summary sentence.
pub fn interleave_references(
    per_article_summaries: &[Vec<String>],
    word_limit: usize,
) -> Result<String> {
    if per_article_summaries.iter().all(|s| s.is_empty()) {
        return Err(Error::Config("all article summaries are empty".into()));
    }
    if word_limit == 0 {
        return Err(Error::Config("word_limit must be >= 1".into()));
    }
    let mut parts: Vec<&str> = Vec::new();
    let mut words = 0usize;
    let mut cursor = vec![0usize; per_article_summaries.len()];
    let mut crossed = false;
    'outer: loop {
        let mut any = false;
        for (a, summary) in per_article_summaries.iter().enumerate() {
            if cursor[a] >= summary.len() {
                continue;
            }
            let sentence = &summary[cursor[a]];
            cursor[a] += 1;
            any = true;
            let w = crate::preprocess::tokenize(sentence).len();
            parts.push(sentence);
            words += w;
            if words >= word_limit {
                crossed = true;
                break 'outer;
            }
        }
        if !any {
            break;
        }
    }
    let text = parts.join(" ");
    if crossed && words > word_limit {
        let spans = tokenize_with_spans(&text);
        let end = spans[word_limit - 1].1.end;
        Ok(text[..end].to_string())
    } else {
        Ok(text)
    }
}

/// Build `num_clusters` development clusters from an article dump.
///
/// Seeds are the first `num_clusters` entries of a seeded pseudo-random
/// permutation of the articles (sorted by id first, so the permutation is a
/// pure function of the seed and the article set). Each seed attaches the
/// `cluster_size - 1` articles with the highest first-3-sentence overlap
/// (ties: lexicographic id). An article can seed at most one cluster but
/// may be attached to any number of clusters. Documents are ordered seed
/// first, then attachments by (overlap desc, id asc). The single reference
/// summary interleaves the members' highlights up to `word_limit` words.
pub fn build_dev_clusters(
    articles: &[Article],
    num_clusters: usize,
    cluster_size: usize,
    word_limit: usize,
    seed: u64,
    preproc: &Preprocessor,
) -> Result<Vec<Cluster>> {
    if cluster_size < 2 {
        return Err(Error::Config("cluster_size must be >= 2".into()));
    }
    if num_clusters == 0 {
        return Err(Error::Config("num_clusters must be >= 1".into()));
    }
    if articles.len() < num_clusters {
        return Err(Error::NotEnoughArticles {
            requested: num_clusters,
            available: articles.len(),
        });
    }
    let mut order: Vec<usize> = (0..articles.len()).collect();
    order.sort_by(|&a, &b| articles[a].id.cmp(&articles[b].id));
    let sorted = order.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    let seeds: Vec<usize> = order.into_iter().take(num_clusters).collect();

    // First-3-sentence content-token sets, computed once per article.
    let token_sets: Vec<HashSet<String>> = articles
        .iter()
        .map(|a| first_k_token_set(&RawDocument::new(a.id.clone(), &a.text), 3, preproc))
        .collect();

    let mut clusters = Vec::with_capacity(num_clusters);
    for (ci, &si) in seeds.iter().enumerate() {
        let seed_set = &token_sets[si];
        let mut scored: Vec<(usize, &str, usize)> = sorted
            .iter()
            .filter(|&&j| j != si)
            .map(|&j| {
                let overlap = seed_set.intersection(&token_sets[j]).count();
                (overlap, articles[j].id.as_str(), j)
            })
            .collect();
        scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(b.1)));
        scored.truncate(cluster_size - 1);
        let members: Vec<usize> = std::iter::once(si)
            .chain(scored.iter().map(|&(_, _, j)| j))
            .collect();
        let documents: Vec<RawDocument> = members
            .iter()
            .map(|&j| RawDocument::new(articles[j].id.clone(), &articles[j].text))
            .collect();
        let highlight_lists: Vec<Vec<String>> = members
            .iter()
            .map(|&j| articles[j].highlights.clone())
            .collect();
        let reference = interleave_references(&highlight_lists, word_limit)?;
        clusters.push(Cluster {
            cluster_id: format!("dev{ci:03}"),
            documents,
            references: vec![reference],
        });
    }
    Ok(clusters)
}

/// Strip SGML markup from a DUC-style document: keep only the content
/// between `<TEXT>` and `</TEXT>` (all such blocks), with any remaining
/// inline tags (`<P>`, ...) removed.
pub fn strip_duc_sgml(raw: &str) -> String {
    let mut out = String::new();
    let mut in_text = false;
    for line in raw.lines() {
        let trimmed = line.trim();
        let upper = trimmed.to_ascii_uppercase();
        if upper.starts_with("<TEXT") {
            in_text = true;
            continue;
        }
        if upper.starts_with("</TEXT") {
            in_text = false;
            continue;
        }
        if !in_text {
            continue;
        }
        // Drop inline tags, keep everything else verbatim.
        let mut rest = line;
        while let Some(open) = rest.find('<') {
            out.push_str(&rest[..open]);
            match rest[open..].find('>') {
                Some(close) => rest = &rest[open + close + 1..],
                None => {
                    rest = "";
                }
            }
        }
        out.push_str(rest);
        out.push('\n');
    }
    out.trim().to_string()
}
