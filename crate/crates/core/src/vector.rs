//! Cluster vocabulary, TF-IDF sentence vectors, centroid construction with
//! top-feature pruning, and cosine similarity.
//!
//! Floating-point determinism matters here: ranking and selection compare
//! raw `f64` values, so every sum (dot products, norms, centroid
//! accumulation) runs in ascending `term_id` order and sentence vectors are
//! accumulated in cluster order. Two runs over the same cluster produce
//! bit-identical weights and similarities.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::preprocess::SentenceRecord;

/// Term interner for one cluster: term -> dense id plus per-term document
/// frequency. Ids are assigned in first-appearance order over the cluster's
/// content tokens, so they are deterministic for a given sentence order.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    term_to_id: HashMap<String, usize>,
    terms: Vec<String>,
    df: Vec<u32>,
    num_docs: usize,
}

impl Vocabulary {
    /// Build the vocabulary over every content token in the cluster.
    /// `num_docs` is the number of documents in the cluster (the IDF
    /// denominator base), which may exceed the number of distinct
    /// `doc_index` values present. Errors on an empty sentence set.
    pub fn build(sentences: &[SentenceRecord], num_docs: usize) -> Result<Self> {
        if sentences.is_empty() || num_docs == 0 {
            return Err(Error::Config("empty cluster".into()));
        }
        let mut vocab = Vocabulary {
            num_docs,
            ..Vocabulary::default()
        };
        // df counts distinct documents containing each term; track the last
        // doc counted per term to avoid double counting (sentences arrive
        // grouped by document).
        let mut last_doc: Vec<usize> = Vec::new();
        for s in sentences {
            for tok in &s.content_tokens {
                let id = match vocab.term_to_id.get(tok) {
                    Some(&id) => id,
                    None => {
                        let id = vocab.terms.len();
                        vocab.term_to_id.insert(tok.clone(), id);
                        vocab.terms.push(tok.clone());
                        vocab.df.push(0);
                        last_doc.push(usize::MAX);
                        id
                    }
                };
                if last_doc[id] != s.doc_index {
                    last_doc[id] = s.doc_index;
                    vocab.df[id] += 1;
                }
            }
        }
        Ok(vocab)
    }

    pub fn id(&self, term: &str) -> Option<usize> {
        self.term_to_id.get(term).copied()
    }

    pub fn term(&self, id: usize) -> &str {
        &self.terms[id]
    }

    pub fn df(&self, id: usize) -> u32 {
        self.df[id]
    }

    pub fn num_docs(&self) -> usize {
        self.num_docs
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// idf(t) = ln(num_docs / df(t)) + 1.
    pub fn idf(&self, id: usize) -> f64 {
        (self.num_docs as f64 / self.df[id] as f64).ln() + 1.0
    }
}

/// Sparse nonnegative vector: (term_id, weight) pairs with strictly
/// increasing ids and no explicit zeros.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVector {
    entries: Vec<(usize, f64)>,
}

impl SparseVector {
    pub fn empty() -> Self {
        SparseVector::default()
    }

    /// Build from pairs, asserting the invariants (sorted ids, no zeros,
    /// nonnegative finite weights).
    pub fn from_pairs(entries: Vec<(usize, f64)>) -> Self {
        for w in entries.windows(2) {
            assert!(w[0].0 < w[1].0, "term_ids must be strictly increasing");
        }
        for &(_, weight) in &entries {
            assert!(
                weight > 0.0 && weight.is_finite(),
                "weights must be positive and finite"
            );
        }
        SparseVector { entries }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, term_id: usize) -> f64 {
        match self.entries.binary_search_by_key(&term_id, |e| e.0) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0.0,
        }
    }

    /// Dot product, accumulated in ascending term_id order.
    pub fn dot(&self, other: &SparseVector) -> f64 {
        let mut acc = 0.0;
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (ta, wa) = self.entries[i];
            let (tb, wb) = other.entries[j];
            if ta == tb {
                acc += wa * wb;
                i += 1;
                j += 1;
            } else if ta < tb {
                i += 1;
            } else {
                j += 1;
            }
        }
        acc
    }

    /// Squared Euclidean norm, accumulated in ascending term_id order.
    pub fn norm_sq(&self) -> f64 {
        let mut acc = 0.0;
        for &(_, w) in &self.entries {
            acc += w * w;
        }
        acc
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Element-wise sum. Each output weight is `self[t] + other[t]` with
    /// absent entries contributing exactly 0.0, so repeated folding matches
    /// a dense per-term accumulation in the same fold order bit for bit.
    pub fn add(&self, other: &SparseVector) -> SparseVector {
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let next = match (self.entries.get(i), other.entries.get(j)) {
                (Some(&(ta, wa)), Some(&(tb, wb))) => {
                    if ta == tb {
                        i += 1;
                        j += 1;
                        (ta, wa + wb)
                    } else if ta < tb {
                        i += 1;
                        (ta, wa)
                    } else {
                        j += 1;
                        (tb, wb)
                    }
                }
                (Some(&(ta, wa)), None) => {
                    i += 1;
                    (ta, wa)
                }
                (None, Some(&(tb, wb))) => {
                    j += 1;
                    (tb, wb)
                }
                (None, None) => unreachable!(),
            };
            if next.1 != 0.0 {
                entries.push(next);
            }
        }
        SparseVector { entries }
    }
}

/// cosine(a,b) = a·b / (|a||b|); 0 when either norm is zero.
/// Nonnegative inputs keep the result in [0, 1].
pub fn cosine(a: &SparseVector, b: &SparseVector) -> f64 {
    let denom = a.norm() * b.norm();
    if denom == 0.0 {
        return 0.0;
    }
    a.dot(b) / denom
}

/// TF-IDF vectors, the cluster centroid and its pruned variant.
#[derive(Debug, Clone)]
pub struct CentroidModel {
    pub vocabulary: Vocabulary,
    /// idf by term_id, precomputed.
    pub idf: Vec<f64>,
    /// Sum of the vectors of every sentence in the cluster.
    pub raw_centroid: SparseVector,
    /// Top-weight entries of the raw centroid, ratio `v`.
    pub pruned_centroid: SparseVector,
    pub v: f64,
}

impl CentroidModel {
    /// Build vocabulary, IDF table and centroid over the full sentence set.
    ///
    /// The raw centroid always sums every sentence's vector — callers that
    /// preselect candidate sentences must still pass the full cluster here.
    pub fn build(sentences: &[SentenceRecord], num_docs: usize, v: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Config(format!(
                "centroid ratio v must be in [0,1], got {v}"
            )));
        }
        let vocabulary = Vocabulary::build(sentences, num_docs)?;
        let idf: Vec<f64> = (0..vocabulary.len()).map(|id| vocabulary.idf(id)).collect();
        let mut model = CentroidModel {
            vocabulary,
            idf,
            raw_centroid: SparseVector::empty(),
            pruned_centroid: SparseVector::empty(),
            v,
        };
        let mut raw = SparseVector::empty();
        for s in sentences {
            raw = raw.add(&model.sentence_vector(s));
        }
        model.pruned_centroid = prune_top_ratio(&raw, v);
        model.raw_centroid = raw;
        Ok(model)
    }

    /// TF-IDF vector of one sentence: weight(t) = count of t in
    /// content_tokens × idf(t). Out-of-vocabulary tokens are ignored;
    /// a sentence with no in-vocabulary content tokens maps to the zero
    /// vector.
    pub fn sentence_vector(&self, s: &SentenceRecord) -> SparseVector {
        let mut ids: Vec<usize> = s
            .content_tokens
            .iter()
            .filter_map(|t| self.vocabulary.id(t))
            .collect();
        ids.sort_unstable();
        // Aggregate integer counts first so the weight is a single
        // `tf * idf` product (summing idf per occurrence would round once
        // per token and drift off the exact multiple).
        let mut counts: Vec<(usize, u32)> = Vec::new();
        for id in ids {
            match counts.last_mut() {
                Some(last) if last.0 == id => last.1 += 1,
                _ => counts.push((id, 1)),
            }
        }
        let entries = counts
            .into_iter()
            .map(|(id, c)| (id, c as f64 * self.idf[id]))
            .collect();
        SparseVector { entries }
    }

    /// Render a centroid as `term<TAB>weight` lines, heaviest first
    /// (ties by lower term_id).
    pub fn dump_centroid(&self, pruned: bool) -> String {
        let vec = if pruned {
            &self.pruned_centroid
        } else {
            &self.raw_centroid
        };
        let mut entries: Vec<(usize, f64)> = vec.iter().collect();
        entries.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut out = String::new();
        for (id, w) in entries {
            out.push_str(self.vocabulary.term(id));
            out.push('\t');
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }
}

/// Keep the top `ceil(v·k)` of the `k` nonzero entries by weight (ties:
/// lower term_id). `v = 0` keeps exactly the single heaviest entry;
/// `v = 1` returns the vector unchanged.
pub fn prune_top_ratio(vec: &SparseVector, v: f64) -> SparseVector {
    let k = vec.nnz();
    if v >= 1.0 || k == 0 {
        return vec.clone();
    }
    // The epsilon guards against cases like 0.3 * 10 = 3.0000000000000004
    // rounding a whole-number product up an extra slot.
    let keep = if v == 0.0 {
        1
    } else {
        ((v * k as f64) - 1e-9).ceil().max(1.0) as usize
    };
    let keep = keep.min(k);
    let mut ranked: Vec<(usize, f64)> = vec.iter().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked.truncate(keep);
    ranked.sort_unstable_by_key(|&(id, _)| id);
    SparseVector { entries: ranked }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::{Preprocessor, RawDocument};

    fn records(docs: &[&str]) -> Vec<SentenceRecord> {
        let docs: Vec<RawDocument> = docs
            .iter()
            .enumerate()
            .map(|(i, t)| RawDocument::new(format!("d{i}"), t))
            .collect();
        Preprocessor::default().process_documents(&docs)
    }

    /// Hand-rolled sentence record with the given content tokens.
    fn rec(doc_index: usize, sent_index: usize, content: &[&str]) -> SentenceRecord {
        SentenceRecord {
            doc_index,
            sent_index,
            raw_text: content.join(" "),
            surface_tokens: content.iter().map(|s| s.to_string()).collect(),
            content_tokens: content.iter().map(|s| s.to_string()).collect(),
            word_count: content.len().max(1),
        }
    }

    #[test]
    fn df_counts_distinct_documents() {
        let sents = vec![rec(0, 0, &["cat"]), rec(1, 0, &["cat", "dog"])];
        let v = Vocabulary::build(&sents, 2).unwrap();
        assert_eq!(v.df(v.id("cat").unwrap()), 2);
        assert_eq!(v.df(v.id("dog").unwrap()), 1);
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn single_term_vocabulary() {
        let sents = vec![rec(0, 0, &["a"])];
        let v = Vocabulary::build(&sents, 1).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v.df(0), 1);
        assert_eq!(v.idf(0), 1.0); // ln(1/1)+1
    }

    #[test]
    fn empty_cluster_is_an_error() {
        assert!(Vocabulary::build(&[], 1).is_err());
        assert!(CentroidModel::build(&[], 1, 0.5).is_err());
    }

    #[test]
    fn df_matches_brute_force_membership() {
        // 10-doc synthetic cluster; df(t) must equal the number of documents
        // whose token set contains t, counted independently below.
        let docs: Vec<Vec<&str>> = vec![
            vec!["alpha", "beta", "gamma"],
            vec!["beta", "beta", "delta"],
            vec!["gamma"],
            vec!["alpha", "alpha"],
            vec!["epsilon", "beta"],
            vec!["zeta", "alpha", "gamma"],
            vec!["beta"],
            vec!["eta"],
            vec!["gamma", "eta"],
            vec!["alpha", "eta", "eta"],
        ];
        let mut sents = Vec::new();
        for (d, toks) in docs.iter().enumerate() {
            // Two sentences per doc to exercise cross-sentence dedup.
            let mid = toks.len() / 2;
            if mid > 0 {
                sents.push(rec(d, 0, &toks[..mid]));
                sents.push(rec(d, 1, &toks[mid..]));
            } else {
                sents.push(rec(d, 0, toks));
            }
        }
        let v = Vocabulary::build(&sents, docs.len()).unwrap();
        for term in ["alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta"] {
            let expected = docs
                .iter()
                .filter(|d| d.contains(&term))
                .count() as u32;
            assert_eq!(v.df(v.id(term).unwrap()), expected, "df({term})");
        }
    }

    #[test]
    fn tf_is_raw_count_times_idf() {
        let sents = vec![rec(0, 0, &["cat", "cat"])];
        let m = CentroidModel::build(&sents, 1, 1.0).unwrap();
        let vec = m.sentence_vector(&sents[0]);
        let id = m.vocabulary.id("cat").unwrap();
        assert_eq!(vec.get(id), 2.0); // tf=2, idf=ln(1/1)+1=1
    }

    #[test]
    fn all_stopword_sentence_is_zero_vector() {
        let sents = records(&["The cat sat. Of the and."]);
        // Second sentence is all stopwords -> dropped content, zero vector.
        let m = CentroidModel::build(&sents, 1, 1.0).unwrap();
        let zero = m.sentence_vector(&sents[1]);
        assert!(zero.is_zero());
    }

    #[test]
    fn weights_match_independent_tf_idf_table() {
        // 5 sentences across 3 docs; expected weights computed by hand:
        // df: news=2 docs, market=2, fell=1, rose=1, shares=3
        // idf = ln(3/df)+1.
        let sents = vec![
            rec(0, 0, &["news", "market", "fell"]),
            rec(0, 1, &["shares", "fell", "fell"]),
            rec(1, 0, &["news", "shares"]),
            rec(2, 0, &["market", "rose"]),
            rec(2, 1, &["shares", "shares"]),
        ];
        let m = CentroidModel::build(&sents, 3, 1.0).unwrap();
        let idf = |df: f64| (3.0 / df).ln() + 1.0;
        let id = |t: &str| m.vocabulary.id(t).unwrap();

        let v1 = m.sentence_vector(&sents[1]);
        assert_eq!(v1.get(id("shares")), 1.0 * idf(3.0));
        assert_eq!(v1.get(id("fell")), 2.0 * idf(1.0));
        assert_eq!(v1.get(id("news")), 0.0);

        let v4 = m.sentence_vector(&sents[4]);
        assert_eq!(v4.get(id("shares")), 2.0 * idf(3.0));

        // Raw centroid entry = sum of per-sentence weights in input order.
        let c = &m.raw_centroid;
        assert_eq!(
            c.get(id("fell")),
            1.0 * idf(1.0) + 2.0 * idf(1.0)
        );
        assert_eq!(
            c.get(id("shares")),
            1.0 * idf(3.0) + 1.0 * idf(3.0) + 2.0 * idf(3.0)
        );
    }

    #[test]
    fn cosine_examples() {
        let a = SparseVector::from_pairs(vec![(0, 1.0)]);
        let b = SparseVector::from_pairs(vec![(1, 1.0)]);
        assert_eq!(cosine(&a, &b), 0.0);

        let a = SparseVector::from_pairs(vec![(0, 3.0), (1, 4.0)]);
        assert!((cosine(&a, &a) - 1.0).abs() < 1e-15);

        let a = SparseVector::from_pairs(vec![(0, 1.0), (1, 1.0)]);
        let b = SparseVector::from_pairs(vec![(0, 1.0)]);
        assert!((cosine(&a, &b) - 0.70710678).abs() < 1e-8);
    }

    #[test]
    fn cosine_zero_norm_convention() {
        let z = SparseVector::empty();
        let a = SparseVector::from_pairs(vec![(0, 2.0)]);
        assert_eq!(cosine(&z, &a), 0.0);
        assert_eq!(cosine(&a, &z), 0.0);
        assert_eq!(cosine(&z, &z), 0.0);
    }

    #[test]
    fn add_merges_and_sums() {
        let a = SparseVector::from_pairs(vec![(0, 1.0), (2, 2.0)]);
        let b = SparseVector::from_pairs(vec![(1, 5.0), (2, 3.0)]);
        let c = a.add(&b);
        assert_eq!(c.get(0), 1.0);
        assert_eq!(c.get(1), 5.0);
        assert_eq!(c.get(2), 5.0);
        assert_eq!(c.nnz(), 3);
    }

    #[test]
    fn prune_trivial_cases() {
        let c = SparseVector::from_pairs(vec![(0, 1.0), (1, 2.0)]);
        assert_eq!(prune_top_ratio(&c, 1.0), c);
        let half = prune_top_ratio(&c, 0.5);
        assert_eq!(half.nnz(), 1);
        assert_eq!(half.get(1), 2.0);
        let zero = prune_top_ratio(&c, 0.0);
        assert_eq!(zero.nnz(), 1);
        assert_eq!(zero.get(1), 2.0);
    }

    #[test]
    fn prune_matches_full_sort_oracle() {
        // 20 entries with some duplicate weights; v=0.1 keeps ceil(2)=2.
        let entries: Vec<(usize, f64)> = (0..20)
            .map(|i| (i, ((i * 7) % 10 + 1) as f64))
            .collect();
        let c = SparseVector::from_pairs(entries.clone());
        let pruned = prune_top_ratio(&c, 0.1);

        let mut oracle = entries;
        oracle.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        oracle.truncate(2);
        oracle.sort_by_key(|e| e.0);
        let expect: Vec<(usize, f64)> = oracle;
        let got: Vec<(usize, f64)> = pruned.iter().collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn prune_whole_number_ratio_products() {
        // 0.3 * 10 must keep 3 entries, not 4, despite 0.3*10 > 3.0 in f64.
        let entries: Vec<(usize, f64)> = (0..10).map(|i| (i, (i + 1) as f64)).collect();
        let c = SparseVector::from_pairs(entries);
        assert_eq!(prune_top_ratio(&c, 0.3).nnz(), 3);
        assert_eq!(prune_top_ratio(&c, 0.7).nnz(), 7);
    }

    #[test]
    fn prune_tie_break_prefers_lower_term_id() {
        let c = SparseVector::from_pairs(vec![(3, 2.0), (5, 2.0), (9, 1.0)]);
        let pruned = prune_top_ratio(&c, 0.34); // keep ceil(1.02)=2... of 3
        let got: Vec<usize> = pruned.iter().map(|(id, _)| id).collect();
        assert_eq!(got, vec![3, 5]);
    }

    #[test]
    fn centroid_invariant_under_candidate_filtering() {
        // Building over all sentences then ignoring some candidates must not
        // change the centroid; the model is built once over everything.
        let sents = records(&[
            "Stocks fell sharply today. Traders sold banking shares.",
            "Markets slid again. Banking stocks led the decline.",
        ]);
        let m = CentroidModel::build(&sents, 2, 0.5).unwrap();
        let m2 = CentroidModel::build(&sents, 2, 0.5).unwrap();
        assert_eq!(m.raw_centroid, m2.raw_centroid);
        assert_eq!(m.pruned_centroid, m2.pruned_centroid);
    }

    #[test]
    fn dump_lists_heaviest_first() {
        let sents = vec![rec(0, 0, &["aa", "bb", "bb"])];
        let m = CentroidModel::build(&sents, 1, 1.0).unwrap();
        let dump = m.dump_centroid(false);
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines, vec!["bb\t2", "aa\t1"]);
    }
}
