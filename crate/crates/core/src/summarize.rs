//! Summary construction: centroid ranking with an anti-redundancy filter,
//! greedy summary-level selection, and per-document sentence preselection.
//!
//! Both variants share the same scoring fabric: TF-IDF sentence vectors
//! compared to the pruned cluster centroid by cosine. The ranked variant
//! de-queues sentences by their individual score; the global variant grows
//! the summary greedily, each step adding the candidate that maximizes the
//! cosine between the summary's sum vector and the centroid. All ranking
//! ties break deterministically by (lower doc_index, lower sent_index).

use crate::error::{Error, Result};
use crate::preprocess::SentenceRecord;
use crate::vector::{cosine, CentroidModel, SparseVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Ranked,
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preselection {
    None,
    NFirst,
    NBest,
    NewTfidf,
}

/// Knobs for one summarization run.
///
/// `r` is the maximum allowed pairwise cosine between selected sentences
/// when `redundancy_filter` is on; `v` the centroid pruning ratio; `n` the
/// per-document pool size for preselection strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct SummarizerConfig {
    pub variant: Variant,
    pub redundancy_filter: bool,
    pub r: f64,
    pub v: f64,
    pub preselection: Preselection,
    pub n: usize,
    pub word_limit: usize,
}

impl Default for SummarizerConfig {
    fn default() -> Self {
        SummarizerConfig {
            variant: Variant::Global,
            redundancy_filter: true,
            r: 0.6,
            v: 0.1,
            preselection: Preselection::None,
            n: 1,
            word_limit: 100,
        }
    }
}

impl SummarizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.r) {
            return Err(Error::Config(format!("r must be in [0,1], got {}", self.r)));
        }
        if !(0.0..=1.0).contains(&self.v) {
            return Err(Error::Config(format!("v must be in [0,1], got {}", self.v)));
        }
        if self.n < 1 {
            return Err(Error::Config("N must be >= 1".into()));
        }
        if self.word_limit < 1 {
            return Err(Error::Config("word_limit must be >= 1".into()));
        }
        Ok(())
    }
}

/// One finished summary, in selection order.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryResult {
    pub selected: Vec<SentenceRecord>,
    /// cosine(sum of selected vectors so far, pruned centroid) after each
    /// inclusion, for both variants.
    pub step_scores: Vec<f64>,
    /// Sum of word_count over all selected sentences (the final sentence is
    /// counted in full even when it crosses the limit).
    pub total_words: usize,
    /// True when the final sentence pushed total_words past the word limit.
    pub truncated_last: bool,
}

impl SummaryResult {
    pub fn empty() -> Self {
        SummaryResult {
            selected: Vec::new(),
            step_scores: Vec::new(),
            total_words: 0,
            truncated_last: false,
        }
    }

    /// (doc_index, sent_index) of each selected sentence, in order.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        self.selected
            .iter()
            .map(|s| (s.doc_index, s.sent_index))
            .collect()
    }

    /// Render the summary: sentences joined by single spaces, the final
    /// sentence cut after the token that reaches `word_limit` when the
    /// summary overshoots it.
    pub fn text(&self, word_limit: usize) -> String {
        let mut parts: Vec<String> = Vec::with_capacity(self.selected.len());
        for (i, s) in self.selected.iter().enumerate() {
            if self.truncated_last && i + 1 == self.selected.len() {
                let words_before: usize = self.selected[..i].iter().map(|x| x.word_count).sum();
                let allowed = word_limit.saturating_sub(words_before);
                parts.push(truncate_to_tokens(&s.raw_text, allowed));
            } else {
                parts.push(s.raw_text.clone());
            }
        }
        parts.join(" ")
    }
}

/// Cut `text` right after its `limit`-th token (byte-wise, preserving the
/// original surface form up to that point).
fn truncate_to_tokens(text: &str, limit: usize) -> String {
    if limit == 0 {
        return String::new();
    }
    let spans = crate::preprocess::tokenize_with_spans(text);
    match spans.get(limit - 1) {
        Some((_, range)) => text[..range.end].to_string(),
        None => text.to_string(),
    }
}

/// Keep sentences with sent_index < N, cluster order preserved.
pub fn preselect_n_first(sentences: &[SentenceRecord], n: usize) -> Vec<SentenceRecord> {
    sentences
        .iter()
        .filter(|s| s.sent_index < n)
        .cloned()
        .collect()
}

/// Per document, the N sentences most similar to the pruned centroid
/// (ties: lower sent_index); output in (doc_index, sent_index) order.
pub fn preselect_n_best(
    sentences: &[SentenceRecord],
    model: &CentroidModel,
    n: usize,
) -> Vec<SentenceRecord> {
    let scores: Vec<f64> = sentences
        .iter()
        .map(|s| cosine(&model.sentence_vector(s), &model.pruned_centroid))
        .collect();
    preselect_by_score(sentences, &scores, n)
}

/// Per document, the N sentences with the highest first-mention TF-IDF mass:
/// each sentence is scored by Σ tf(t,s)·idf(t) over the terms whose first
/// occurrence within the document falls in that sentence.
pub fn preselect_new_tfidf(
    sentences: &[SentenceRecord],
    model: &CentroidModel,
    n: usize,
) -> Vec<SentenceRecord> {
    use std::collections::HashSet;
    let mut seen_by_doc: std::collections::HashMap<usize, HashSet<usize>> =
        std::collections::HashMap::new();
    let mut scores = vec![0.0f64; sentences.len()];
    // Sentences arrive in (doc_index, sent_index) order; walk them in
    // document order so "first occurrence" is well defined.
    let mut order: Vec<usize> = (0..sentences.len()).collect();
    order.sort_by_key(|&i| (sentences[i].doc_index, sentences[i].sent_index));
    for idx in order {
        let s = &sentences[idx];
        let seen = seen_by_doc.entry(s.doc_index).or_default();
        let mut score = 0.0;
        for (term_id, weight) in model.sentence_vector(s).iter() {
            if !seen.contains(&term_id) {
                seen.insert(term_id);
                score += weight;
            }
        }
        scores[idx] = score;
    }
    preselect_by_score(sentences, &scores, n)
}

/// Shared per-document top-N selection: ties broken by lower sent_index,
/// output restored to (doc_index, sent_index) order.
fn preselect_by_score(
    sentences: &[SentenceRecord],
    scores: &[f64],
    n: usize,
) -> Vec<SentenceRecord> {
    let mut by_doc: std::collections::BTreeMap<usize, Vec<usize>> =
        std::collections::BTreeMap::new();
    for (i, s) in sentences.iter().enumerate() {
        by_doc.entry(s.doc_index).or_default().push(i);
    }
    let mut kept: Vec<usize> = Vec::new();
    for (_, mut idxs) in by_doc {
        idxs.sort_by(|&a, &b| {
            scores[b]
                .total_cmp(&scores[a])
                .then(sentences[a].sent_index.cmp(&sentences[b].sent_index))
        });
        idxs.truncate(n);
        kept.extend(idxs);
    }
    kept.sort_by_key(|&i| (sentences[i].doc_index, sentences[i].sent_index));
    kept.into_iter().map(|i| sentences[i].clone()).collect()
}

/// Apply the configured preselection strategy.
pub fn preselect(
    sentences: &[SentenceRecord],
    model: &CentroidModel,
    cfg: &SummarizerConfig,
) -> Vec<SentenceRecord> {
    match cfg.preselection {
        Preselection::None => sentences.to_vec(),
        Preselection::NFirst => preselect_n_first(sentences, cfg.n),
        Preselection::NBest => preselect_n_best(sentences, model, cfg.n),
        Preselection::NewTfidf => preselect_new_tfidf(sentences, model, cfg.n),
    }
}

struct Candidate {
    record: SentenceRecord,
    vector: SparseVector,
    /// cosine(vector, pruned centroid).
    centroid_score: f64,
}

fn candidates(records: &[SentenceRecord], model: &CentroidModel) -> Vec<Candidate> {
    records
        .iter()
        .map(|s| {
            let vector = model.sentence_vector(s);
            let centroid_score = cosine(&vector, &model.pruned_centroid);
            Candidate {
                record: s.clone(),
                vector,
                centroid_score,
            }
        })
        .collect()
}

/// Original centroid method: rank every candidate by its cosine to the
/// pruned centroid and de-queue. With the redundancy filter on, a candidate
/// whose cosine to ANY already-selected sentence exceeds `r` is skipped for
/// good. Selection stops once total words reach the limit or the queue is
/// exhausted.
pub fn summarize_ranked(
    records: &[SentenceRecord],
    model: &CentroidModel,
    cfg: &SummarizerConfig,
) -> SummaryResult {
    let mut queue = candidates(records, model);
    queue.sort_by(|a, b| {
        b.centroid_score
            .total_cmp(&a.centroid_score)
            .then(a.record.doc_index.cmp(&b.record.doc_index))
            .then(a.record.sent_index.cmp(&b.record.sent_index))
    });

    let mut result = SummaryResult::empty();
    let mut selected_vectors: Vec<SparseVector> = Vec::new();
    let mut summary_sum = SparseVector::empty();
    for cand in queue {
        if result.total_words >= cfg.word_limit {
            break;
        }
        if cfg.redundancy_filter
            && selected_vectors
                .iter()
                .any(|sel| cosine(sel, &cand.vector) > cfg.r)
        {
            continue;
        }
        summary_sum = summary_sum.add(&cand.vector);
        result.total_words += cand.record.word_count;
        result
            .step_scores
            .push(cosine(&summary_sum, &model.pruned_centroid));
        result.selected.push(cand.record);
        selected_vectors.push(cand.vector);
    }
    result.truncated_last = result.total_words > cfg.word_limit;
    result
}

/// Greedy summary-level selection: at each step add the candidate that
/// maximizes cosine(summary sum vector + candidate, pruned centroid).
///
/// Candidates with zero similarity to the centroid are only eligible once no
/// positive-scoring candidate remains. With the redundancy filter on,
/// candidates too close to a selected sentence are removed from the pool.
/// The summary sum vector is maintained incrementally, one add per step.
pub fn summarize_global(
    records: &[SentenceRecord],
    model: &CentroidModel,
    cfg: &SummarizerConfig,
) -> SummaryResult {
    // Pool stays in (doc_index, sent_index) order; first-wins strict argmax
    // then realizes the (lower doc_index, lower sent_index) tie-break.
    let mut pool = candidates(records, model);
    let mut result = SummaryResult::empty();
    let mut summary_sum = SparseVector::empty();

    while !pool.is_empty() && result.total_words < cfg.word_limit {
        let any_positive = pool.iter().any(|c| c.centroid_score > 0.0);
        let mut best: Option<(usize, f64)> = None;
        for (i, cand) in pool.iter().enumerate() {
            if any_positive && cand.centroid_score <= 0.0 {
                continue;
            }
            let score = cosine(&summary_sum.add(&cand.vector), &model.pruned_centroid);
            if best.map_or(true, |(_, s)| score > s) {
                best = Some((i, score));
            }
        }
        let (idx, score) = match best {
            Some(b) => b,
            None => break,
        };
        let chosen = pool.remove(idx);
        summary_sum = summary_sum.add(&chosen.vector);
        result.total_words += chosen.record.word_count;
        result.step_scores.push(score);
        if cfg.redundancy_filter {
            pool.retain(|c| cosine(&c.vector, &chosen.vector) <= cfg.r);
        }
        result.selected.push(chosen.record);
    }
    result.truncated_last = result.total_words > cfg.word_limit;
    result
}

/// Full pipeline over one cluster's sentences: build the centroid over ALL
/// sentences, preselect candidates, then run the configured variant.
/// Returns the summary together with the model it was scored against.
pub fn summarize_sentences(
    sentences: &[SentenceRecord],
    num_docs: usize,
    cfg: &SummarizerConfig,
) -> Result<(SummaryResult, CentroidModel)> {
    cfg.validate()?;
    let model = CentroidModel::build(sentences, num_docs, cfg.v)?;
    let pool = preselect(sentences, &model, cfg);
    let result = match cfg.variant {
        Variant::Ranked => summarize_ranked(&pool, &model, cfg),
        Variant::Global => summarize_global(&pool, &model, cfg),
    };
    Ok((result, model))
}
