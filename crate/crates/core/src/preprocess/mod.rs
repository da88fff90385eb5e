//! Sentence segmentation, tokenization, stopword removal and stemming.
//!
//! Everything here is deterministic and dependency-free: a rule-based
//! sentence splitter driven by a bundled abbreviation list, a
//! letters-and-digits tokenizer, a configurable stopword list, and a Porter
//! stemmer. Stemming is used only by the ROUGE evaluator; the vector model
//! works on unstemmed content tokens.

mod porter;

pub use porter::porter_stem;

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};

/// Bundled default stopword list (Glasgow IR English list, 318 entries).
pub const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords.txt");

/// Bundled abbreviation list used by the sentence segmenter.
pub const DEFAULT_ABBREVIATIONS: &str = include_str!("../../data/abbreviations.txt");

/// One input document: an identifier plus whitespace-normalized text.
///
/// Normalization collapses every run of whitespace (including newlines) to a
/// single space and trims the ends, so downstream invariants like "sentences
/// rejoined with single spaces reproduce the document" hold exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub doc_id: String,
    pub text: String,
}

impl RawDocument {
    pub fn new(doc_id: impl Into<String>, text: &str) -> Self {
        RawDocument {
            doc_id: doc_id.into(),
            text: text.split_whitespace().collect::<Vec<_>>().join(" "),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }
}

/// One sentence of one document, carrying its provenance indices.
///
/// `sent_index` is the sentence's position in the segmenter output for its
/// document, assigned before token-empty sentences are dropped, so the
/// indices reported in summaries always refer to segmenter positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceRecord {
    pub doc_index: usize,
    pub sent_index: usize,
    pub raw_text: String,
    /// All lowercased tokens, stopwords retained.
    pub surface_tokens: Vec<String>,
    /// Lowercased tokens with stopwords removed; feeds the vector model.
    pub content_tokens: Vec<String>,
    /// Number of surface tokens; the word-limit currency of summaries.
    pub word_count: usize,
}

/// Stopword membership test, loaded from a one-token-per-line file
/// (UTF-8, `#`-prefixed comment lines and blank lines ignored).
#[derive(Debug, Clone)]
pub struct StopwordList {
    words: HashSet<String>,
}

impl StopwordList {
    pub fn from_text(text: &str) -> Self {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.to_lowercase())
            .collect();
        StopwordList { words }
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::from_text(&text))
    }

    /// Empty list: keeps every token.
    pub fn empty() -> Self {
        StopwordList {
            words: HashSet::new(),
        }
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl Default for StopwordList {
    fn default() -> Self {
        Self::from_text(DEFAULT_STOPWORDS)
    }
}

/// Abbreviations that never end a sentence ("Dr.", "U.S.", "etc.").
/// Matching is case-sensitive and exact, one abbreviation per line
/// (blank lines and `#`-prefixed lines ignored).
#[derive(Debug, Clone)]
pub struct AbbreviationList {
    entries: HashSet<String>,
}

impl AbbreviationList {
    pub fn from_text(text: &str) -> Self {
        let entries = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect();
        AbbreviationList { entries }
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::from_text(&text))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains(word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Default for AbbreviationList {
    fn default() -> Self {
        Self::from_text(DEFAULT_ABBREVIATIONS)
    }
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Tokenize into lowercased tokens plus the byte span each token occupies in
/// the input. Tokens are maximal runs of letters/digits; an apostrophe is
/// kept only word-internally (alphanumeric on both sides). Everything else
/// is dropped.
pub fn tokenize_with_spans(sentence: &str) -> Vec<(String, std::ops::Range<usize>)> {
    let chars: Vec<(usize, char)> = sentence.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].1.is_alphanumeric() {
            i += 1;
            continue;
        }
        let start = chars[i].0;
        let mut end_idx = i;
        while end_idx + 1 < chars.len() {
            let next = chars[end_idx + 1].1;
            if next.is_alphanumeric() {
                end_idx += 1;
            } else if is_apostrophe(next)
                && end_idx + 2 < chars.len()
                && chars[end_idx + 2].1.is_alphanumeric()
            {
                end_idx += 2;
            } else {
                break;
            }
        }
        let end = chars[end_idx].0 + chars[end_idx].1.len_utf8();
        let token: String = sentence[start..end].chars().flat_map(char::to_lowercase).collect();
        out.push((token, start..end));
        i = end_idx + 1;
    }
    out
}

/// Tokenize into lowercased tokens (see [`tokenize_with_spans`]).
pub fn tokenize(sentence: &str) -> Vec<String> {
    tokenize_with_spans(sentence).into_iter().map(|(t, _)| t).collect()
}

fn is_open_quote(c: char) -> bool {
    matches!(c, '"' | '\'' | '\u{201C}' | '\u{2018}')
}

fn is_close_wrap(c: char) -> bool {
    matches!(c, '"' | '\'' | '\u{201D}' | '\u{2019}' | ')' | ']')
}

/// Sentence segmentation and record construction.
#[derive(Debug, Clone, Default)]
pub struct Preprocessor {
    pub stopwords: StopwordList,
    pub abbreviations: AbbreviationList,
}

impl Preprocessor {
    pub fn new(stopwords: StopwordList, abbreviations: AbbreviationList) -> Self {
        Preprocessor {
            stopwords,
            abbreviations,
        }
    }

    /// Split a document into sentences.
    ///
    /// A boundary is a `.`, `!` or `?` (plus any immediately following
    /// closing quotes/brackets) followed by whitespace and then an uppercase
    /// letter or opening quote. A `.` does not end a sentence when the word
    /// it terminates is on the abbreviation list. Sentences are returned
    /// trimmed and non-empty, in order, so joining them with single spaces
    /// reproduces the (whitespace-normalized) document text.
    pub fn segment_sentences(&self, doc: &RawDocument) -> Vec<String> {
        let text = &doc.text;
        if text.is_empty() {
            return Vec::new();
        }
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let n = chars.len();
        let mut sentences = Vec::new();
        let mut sent_start = 0usize; // byte offset

        let mut i = 0;
        while i < n {
            let c = chars[i].1;
            if c == '.' || c == '!' || c == '?' {
                // Swallow closing quotes/brackets right after the terminator.
                let mut j = i + 1;
                while j < n && is_close_wrap(chars[j].1) {
                    j += 1;
                }
                // Need whitespace, then uppercase or an opening quote.
                let mut k = j;
                while k < n && chars[k].1.is_whitespace() {
                    k += 1;
                }
                let gap = k > j;
                let next_ok = k < n && (chars[k].1.is_uppercase() || is_open_quote(chars[k].1));
                let mut boundary = gap && next_ok;
                if boundary && c == '.' {
                    // The word ending at this period: back to previous
                    // whitespace, with leading quotes/brackets stripped.
                    let mut w = i;
                    while w > 0 && !chars[w - 1].1.is_whitespace() {
                        w -= 1;
                    }
                    let mut word_start = chars[w].0;
                    let word_end = chars[i].0 + 1;
                    for &(b, wc) in &chars[w..=i] {
                        if is_open_quote(wc) || wc == '(' || wc == '[' {
                            word_start = b + wc.len_utf8();
                        } else {
                            break;
                        }
                    }
                    if self.abbreviations.contains(&text[word_start..word_end]) {
                        boundary = false;
                    }
                }
                if boundary {
                    let end = if j < n { chars[j].0 } else { text.len() };
                    let sent = text[sent_start..end].trim();
                    if !sent.is_empty() {
                        sentences.push(sent.to_string());
                    }
                    sent_start = if k < n { chars[k].0 } else { text.len() };
                    i = k;
                    continue;
                }
            }
            i += 1;
        }
        let tail = text[sent_start..].trim();
        if !tail.is_empty() {
            sentences.push(tail.to_string());
        }
        sentences
    }

    /// Remove stopwords, preserving order and duplicates of the rest.
    pub fn remove_stopwords(&self, tokens: &[String]) -> Vec<String> {
        tokens
            .iter()
            .filter(|t| !self.stopwords.contains(t))
            .cloned()
            .collect()
    }

    /// Segment and tokenize a set of documents into sentence records.
    ///
    /// `doc_index` is the document's position in the input slice;
    /// `sent_index` the sentence's position in its document's segmentation.
    /// Sentences with no tokens at all are dropped.
    pub fn process_documents(&self, docs: &[RawDocument]) -> Vec<SentenceRecord> {
        let mut records = Vec::new();
        for (doc_index, doc) in docs.iter().enumerate() {
            for (sent_index, raw_text) in self.segment_sentences(doc).into_iter().enumerate() {
                let surface_tokens = tokenize(&raw_text);
                if surface_tokens.is_empty() {
                    continue;
                }
                let content_tokens = self.remove_stopwords(&surface_tokens);
                let word_count = surface_tokens.len();
                records.push(SentenceRecord {
                    doc_index,
                    sent_index,
                    raw_text,
                    surface_tokens,
                    content_tokens,
                    word_count,
                });
            }
        }
        records
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp() -> Preprocessor {
        Preprocessor::default()
    }

    #[test]
    fn segments_simple_sentences() {
        let doc = RawDocument::new("d", "The cat sat. The dog ran! Did it? Yes.");
        assert_eq!(
            pp().segment_sentences(&doc),
            vec!["The cat sat.", "The dog ran!", "Did it?", "Yes."]
        );
    }

    #[test]
    fn two_terminal_periods_split() {
        let doc = RawDocument::new("d", "A. B.");
        assert_eq!(pp().segment_sentences(&doc), vec!["A.", "B."]);
    }

    #[test]
    fn empty_document_yields_no_sentences() {
        let doc = RawDocument::new("d", "");
        assert!(pp().segment_sentences(&doc).is_empty());
        let doc = RawDocument::new("d", "   \n\t ");
        assert!(pp().segment_sentences(&doc).is_empty());
    }

    #[test]
    fn abbreviation_does_not_split() {
        let doc = RawDocument::new("d", "Dr. Smith arrived. He left.");
        assert_eq!(
            pp().segment_sentences(&doc),
            vec!["Dr. Smith arrived.", "He left."]
        );
    }

    #[test]
    fn multi_period_abbreviation_does_not_split() {
        let doc = RawDocument::new("d", "The U.S. Senate met. It adjourned.");
        assert_eq!(
            pp().segment_sentences(&doc),
            vec!["The U.S. Senate met.", "It adjourned."]
        );
    }

    #[test]
    fn lowercase_continuation_does_not_split() {
        let doc = RawDocument::new("d", "It cost 3.5 million. and rising? Yes.");
        // "million. and" has no uppercase follower; "rising? Yes." splits.
        assert_eq!(
            pp().segment_sentences(&doc),
            vec!["It cost 3.5 million. and rising?", "Yes."]
        );
    }

    #[test]
    fn closing_quote_stays_with_sentence() {
        let doc = RawDocument::new("d", "\"We won.\" The crowd cheered.");
        assert_eq!(
            pp().segment_sentences(&doc),
            vec!["\"We won.\"", "The crowd cheered."]
        );
    }

    #[test]
    fn quote_opener_counts_as_sentence_start() {
        let doc = RawDocument::new("d", "He spoke. \"Quiet,\" she said.");
        assert_eq!(
            pp().segment_sentences(&doc),
            vec!["He spoke.", "\"Quiet,\" she said."]
        );
    }

    #[test]
    fn segmentation_rejoins_to_normalized_text() {
        let doc = RawDocument::new(
            "d",
            "Mr. Jones visited the U.S. Embassy.  He met Dr. Lee!\n\"Wonderful,\" he said. The end.",
        );
        let sents = pp().segment_sentences(&doc);
        assert_eq!(sents.join(" "), doc.text);
    }

    #[test]
    fn tokenize_basic() {
        assert_eq!(tokenize("The cat sat."), vec!["the", "cat", "sat"]);
    }

    #[test]
    fn tokenize_periods_and_apostrophes() {
        assert_eq!(
            tokenize("U.S. robot's arm"),
            vec!["u", "s", "robot's", "arm"]
        );
    }

    #[test]
    fn tokenize_empty_and_punctuation() {
        assert!(tokenize("").is_empty());
        assert!(tokenize("... !! ??").is_empty());
    }

    #[test]
    fn tokenize_keeps_digits_and_drops_edge_apostrophes() {
        assert_eq!(tokenize("1998's 'quoted' 42"), vec!["1998's", "quoted", "42"]);
        assert_eq!(tokenize("the dogs' bones"), vec!["the", "dogs", "bones"]);
    }

    #[test]
    fn tokenize_spans_point_at_source() {
        let s = "Mr. O'Neil, aged 40.";
        for (tok, span) in tokenize_with_spans(s) {
            let surface: String = s[span].chars().flat_map(char::to_lowercase).collect();
            assert_eq!(tok, surface);
        }
    }

    #[test]
    fn stopword_removal() {
        let p = pp();
        let toks: Vec<String> = ["the", "cat", "sat"].iter().map(|s| s.to_string()).collect();
        assert_eq!(p.remove_stopwords(&toks), vec!["cat", "sat"]);
        let all_stop: Vec<String> = ["of", "the", "and"].iter().map(|s| s.to_string()).collect();
        assert!(p.remove_stopwords(&all_stop).is_empty());
        assert!(p.remove_stopwords(&[]).is_empty());
    }

    #[test]
    fn stopword_list_parses_comments() {
        let l = StopwordList::from_text("# comment\nthe\n\nAnd\n");
        assert_eq!(l.len(), 2);
        assert!(l.contains("the"));
        assert!(l.contains("and"));
        assert!(!l.contains("# comment"));
    }

    #[test]
    fn records_carry_positions_and_counts() {
        let p = pp();
        let docs = vec![
            RawDocument::new("a", "The cat sat. It purred."),
            RawDocument::new("b", "Dogs bark."),
        ];
        let recs = p.process_documents(&docs);
        assert_eq!(recs.len(), 3);
        assert_eq!((recs[0].doc_index, recs[0].sent_index), (0, 0));
        assert_eq!((recs[1].doc_index, recs[1].sent_index), (0, 1));
        assert_eq!((recs[2].doc_index, recs[2].sent_index), (1, 0));
        assert_eq!(recs[0].word_count, 3);
        assert_eq!(recs[0].surface_tokens, vec!["the", "cat", "sat"]);
        assert_eq!(recs[0].content_tokens, vec!["cat", "sat"]);
    }

    #[test]
    fn content_tokens_are_a_sub_multiset_of_surface() {
        let p = pp();
        let docs = vec![RawDocument::new("a", "The the cat cat sat on the mat.")];
        let recs = p.process_documents(&docs);
        let r = &recs[0];
        let mut surface = r.surface_tokens.clone();
        for t in &r.content_tokens {
            let pos = surface.iter().position(|s| s == t).expect("token in surface");
            surface.remove(pos);
        }
    }
}
