//! ROUGE-N recall (N = 1, 2, 4): stemming on, stopwords retained, both
//! sides truncated to the first 100 tokens, arithmetic mean over multiple
//! reference summaries, and a fixed-order corpus mean over clusters.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::preprocess::{porter_stem, tokenize};

/// Evaluation settings. `truncate_words` bounds both candidate and
/// references; `stemming` applies the Porter stemmer to every token
/// (the defaults keep it on; stopwords are always retained).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RougeConfig {
    pub truncate_words: usize,
    pub stemming: bool,
}

impl Default for RougeConfig {
    fn default() -> Self {
        RougeConfig {
            truncate_words: 100,
            stemming: true,
        }
    }
}

/// Recall of one candidate against one reference set for a single n.
#[derive(Debug, Clone, PartialEq)]
pub struct RougeScore {
    pub n: usize,
    /// Arithmetic mean of `per_reference`.
    pub recall: f64,
    pub per_reference: Vec<f64>,
}

/// Recall triple for the reported n values, with a per-reference breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct RougeReport {
    pub rouge_1: f64,
    pub rouge_2: f64,
    pub rouge_4: f64,
    /// One `[R-1, R-2, R-4]` triple per reference summary, input order.
    pub per_reference: Vec<[f64; 3]>,
}

/// Corpus-level means over clusters, with the per-cluster reports retained
/// (sorted by cluster id — also the summation order of the means).
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusRougeReport {
    pub rouge_1: f64,
    pub rouge_2: f64,
    pub rouge_4: f64,
    pub per_cluster: Vec<(String, RougeReport)>,
}

fn prepare(text: &str, cfg: &RougeConfig) -> Vec<String> {
    let mut toks = tokenize(text);
    toks.truncate(cfg.truncate_words);
    if cfg.stemming {
        for t in &mut toks {
            *t = porter_stem(t);
        }
    }
    toks
}

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], u32> {
    let mut counts: HashMap<&[String], u32> = HashMap::new();
    if tokens.len() >= n {
        for w in tokens.windows(n) {
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    counts
}

/// Clipped n-gram recall of `candidate` against each reference, averaged
/// arithmetically. A reference with fewer than `n` tokens (after
/// truncation) contributes recall 0 and logs a warning; it is an error for
/// every reference to be empty, or for the reference list to be empty.
pub fn rouge_n_recall(
    candidate: &str,
    references: &[String],
    n: usize,
    cfg: &RougeConfig,
) -> Result<RougeScore> {
    if !(1..=4).contains(&n) {
        return Err(Error::Config(format!("rouge n must be in 1..=4, got {n}")));
    }
    if cfg.truncate_words == 0 {
        return Err(Error::Config("truncate_words must be >= 1".into()));
    }
    if references.is_empty() {
        return Err(Error::Config("no reference summaries".into()));
    }
    let ref_tokens: Vec<Vec<String>> = references.iter().map(|r| prepare(r, cfg)).collect();
    if ref_tokens.iter().all(|t| t.is_empty()) {
        return Err(Error::Config("all reference summaries are empty".into()));
    }
    let cand_tokens = prepare(candidate, cfg);
    let cand_counts = ngram_counts(&cand_tokens, n);

    let mut per_reference = Vec::with_capacity(references.len());
    for (i, toks) in ref_tokens.iter().enumerate() {
        if toks.len() < n {
            log::warn!(
                "reference {i} has {} tokens, fewer than n={n}; scoring it 0",
                toks.len()
            );
            per_reference.push(0.0);
            continue;
        }
        let ref_counts = ngram_counts(toks, n);
        let total: u32 = ref_counts.values().sum();
        let mut matched: u32 = 0;
        for (gram, &rc) in &ref_counts {
            let cc = cand_counts.get(gram).copied().unwrap_or(0);
            matched += rc.min(cc);
        }
        per_reference.push(matched as f64 / total as f64);
    }
    let recall = per_reference.iter().sum::<f64>() / per_reference.len() as f64;
    Ok(RougeScore {
        n,
        recall,
        per_reference,
    })
}

/// R-1/R-2/R-4 of one candidate against its reference set.
pub fn evaluate_cluster(
    candidate: &str,
    references: &[String],
    cfg: &RougeConfig,
) -> Result<RougeReport> {
    let r1 = rouge_n_recall(candidate, references, 1, cfg)?;
    let r2 = rouge_n_recall(candidate, references, 2, cfg)?;
    let r4 = rouge_n_recall(candidate, references, 4, cfg)?;
    let per_reference = (0..references.len())
        .map(|i| [r1.per_reference[i], r2.per_reference[i], r4.per_reference[i]])
        .collect();
    Ok(RougeReport {
        rouge_1: r1.recall,
        rouge_2: r2.recall,
        rouge_4: r4.recall,
        per_reference,
    })
}

/// Corpus score: the mean over clusters of the per-cluster aggregate,
/// clusters visited in sorted-id order so the summation order (and thus the
/// exact floating-point result) is independent of map iteration order.
pub fn evaluate_corpus(
    summaries: &BTreeMap<String, String>,
    references: &BTreeMap<String, Vec<String>>,
    cfg: &RougeConfig,
) -> Result<CorpusRougeReport> {
    if summaries.is_empty() {
        return Err(Error::Config("no summaries to evaluate".into()));
    }
    let mut per_cluster = Vec::with_capacity(summaries.len());
    let (mut s1, mut s2, mut s4) = (0.0f64, 0.0f64, 0.0f64);
    for (id, candidate) in summaries {
        let refs = references.get(id).ok_or_else(|| Error::NoReferences {
            id: id.clone(),
        })?;
        let report = evaluate_cluster(candidate, refs, cfg)?;
        s1 += report.rouge_1;
        s2 += report.rouge_2;
        s4 += report.rouge_4;
        per_cluster.push((id.clone(), report));
    }
    let k = per_cluster.len() as f64;
    Ok(CorpusRougeReport {
        rouge_1: s1 / k,
        rouge_2: s2 / k,
        rouge_4: s4 / k,
        per_cluster,
    })
}

/// Render a recall fraction as a percentage with two decimals ("37.91").
pub fn percent(recall: f64) -> String {
    format!("{:.2}", recall * 100.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn refs(texts: &[&str]) -> Vec<String> {
        texts.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn identical_text_scores_one() {
        let cfg = RougeConfig::default();
        let s = rouge_n_recall("the cat sat", &refs(&["the cat sat"]), 1, &cfg).unwrap();
        assert_eq!(s.recall, 1.0);
        let s = rouge_n_recall("the cat sat", &refs(&["the cat sat"]), 2, &cfg).unwrap();
        assert_eq!(s.recall, 1.0);
    }

    #[test]
    fn disjoint_text_scores_zero() {
        let cfg = RougeConfig::default();
        let s = rouge_n_recall("a b", &refs(&["c d"]), 1, &cfg).unwrap();
        assert_eq!(s.recall, 0.0);
    }

    #[test]
    fn two_reference_bigram_example() {
        // Candidate bigrams {ab, bc}.
        // ref1 "a b d" bigrams {ab, bd}: match {ab} -> 1/2.
        // ref2 "b c" bigrams {bc}: match {bc} -> 1/1.
        let cfg = RougeConfig::default();
        let s = rouge_n_recall("a b c", &refs(&["a b d", "b c"]), 2, &cfg).unwrap();
        assert_eq!(s.per_reference, vec![0.5, 1.0]);
        assert!((s.recall - 0.75).abs() < 1e-15);

        // ref2 "x y b c" bigrams {xy, yb, bc}: match {bc} -> 1/3.
        let s = rouge_n_recall("a b c", &refs(&["a b d", "x y b c"]), 2, &cfg).unwrap();
        assert_eq!(s.per_reference, vec![0.5, 1.0 / 3.0]);
        assert!((s.recall - (0.5 + 1.0 / 3.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn clipping_limits_repeated_grams() {
        let cfg = RougeConfig::default();
        // Candidate repeats "cat" 3x, reference has it twice: clipped to 2/3.
        let s = rouge_n_recall(
            "cat cat cat",
            &refs(&["cat dog cat"]),
            1,
            &cfg,
        )
        .unwrap();
        assert!((s.recall - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn truncation_applies_to_both_sides() {
        let cfg = RougeConfig {
            truncate_words: 2,
            stemming: false,
        };
        // Candidate's third token would match, but it is cut; reference's
        // third token is cut too, so denominator is the first two tokens.
        let s = rouge_n_recall("x y cat", &refs(&["p q cat"]), 1, &cfg).unwrap();
        assert_eq!(s.recall, 0.0);
        let s = rouge_n_recall("p x cat", &refs(&["p q cat"]), 1, &cfg).unwrap();
        assert_eq!(s.recall, 0.5);
    }

    #[test]
    fn stemming_unifies_inflections() {
        let on = RougeConfig::default();
        let off = RougeConfig {
            stemming: false,
            ..on
        };
        let s = rouge_n_recall("running", &refs(&["run"]), 1, &on).unwrap();
        assert_eq!(s.recall, 1.0);
        let s = rouge_n_recall("running", &refs(&["run"]), 1, &off).unwrap();
        assert_eq!(s.recall, 0.0);
    }

    #[test]
    fn short_reference_warns_and_scores_zero() {
        let cfg = RougeConfig::default();
        let s = rouge_n_recall("a b c d", &refs(&["a b", "a b c d"]), 4, &cfg).unwrap();
        assert_eq!(s.per_reference, vec![0.0, 1.0]);
        assert_eq!(s.recall, 0.5);
    }

    #[test]
    fn empty_references_are_an_error() {
        let cfg = RougeConfig::default();
        assert!(rouge_n_recall("a", &[], 1, &cfg).is_err());
        assert!(rouge_n_recall("a", &refs(&["", "..."]), 1, &cfg).is_err());
    }

    #[test]
    fn cluster_report_collects_all_three() {
        let cfg = RougeConfig::default();
        let rep = evaluate_cluster(
            "the cat sat on the mat",
            &refs(&["the cat sat on the mat", "a dog ran"]),
            &cfg,
        )
        .unwrap();
        assert_eq!(rep.per_reference.len(), 2);
        assert_eq!(rep.per_reference[0], [1.0, 1.0, 1.0]);
        assert_eq!(rep.per_reference[1][0], 0.0);
        assert!((rep.rouge_1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn corpus_mean_over_clusters() {
        let cfg = RougeConfig::default();
        let mut summaries = BTreeMap::new();
        let mut references = BTreeMap::new();
        // Cluster A recall 1.0; cluster B unigram recall 0.5.
        summaries.insert("a".to_string(), "x y".to_string());
        references.insert("a".to_string(), refs(&["x y"]));
        summaries.insert("b".to_string(), "p zz".to_string());
        references.insert("b".to_string(), refs(&["p q"]));
        let rep = evaluate_corpus(&summaries, &references, &cfg).unwrap();
        assert!((rep.rouge_1 - 0.75).abs() < 1e-15);
        assert_eq!(rep.per_cluster.len(), 2);
        assert_eq!(rep.per_cluster[0].0, "a");
    }

    #[test]
    fn corpus_missing_references_error_names_cluster() {
        let cfg = RougeConfig::default();
        let mut summaries = BTreeMap::new();
        summaries.insert("d404".to_string(), "x".to_string());
        let references = BTreeMap::new();
        let err = evaluate_corpus(&summaries, &references, &cfg).unwrap_err();
        assert!(err.to_string().contains("d404"), "err: {err}");
    }

    #[test]
    fn corpus_mean_matches_independent_recomputation() {
        let cfg = RougeConfig::default();
        let mut summaries = BTreeMap::new();
        let mut references = BTreeMap::new();
        let data = [
            ("c1", "the markets fell on tuesday", "markets fell sharply tuesday"),
            ("c2", "rain flooded the coastal towns", "storms and rain hit the coast"),
            ("c3", "the senate passed a budget", "lawmakers passed the budget bill"),
            ("c4", "a vaccine trial succeeded", "the new vaccine trial results"),
            ("c5", "talks collapsed over borders", "peace talks collapsed again"),
        ];
        for (id, cand, re) in data {
            summaries.insert(id.to_string(), cand.to_string());
            references.insert(id.to_string(), refs(&[re]));
        }
        let rep = evaluate_corpus(&summaries, &references, &cfg).unwrap();
        for n_idx in 0..3 {
            let n = [1usize, 2, 4][n_idx];
            let mut acc = 0.0;
            for (id, cand, _) in data {
                let s = rouge_n_recall(cand, references.get(id).unwrap(), n, &cfg).unwrap();
                acc += s.recall;
            }
            let expect = acc / 5.0;
            let got = [rep.rouge_1, rep.rouge_2, rep.rouge_4][n_idx];
            assert_eq!(got.to_bits(), expect.to_bits(), "n={n}");
        }
    }

    #[test]
    fn percent_formatting() {
        assert_eq!(percent(0.3791), "37.91");
        assert_eq!(percent(0.0953), "9.53");
        assert_eq!(percent(1.0), "100.00");
        assert_eq!(percent(0.015625), "1.56");
    }
}
