//! Centroid-based extractive multi-document summarization.
//!
//! The toolkit summarizes a cluster of topically related documents by
//! representing sentences as TF-IDF bag-of-words vectors and comparing them
//! to the centroid (the sum of all sentence vectors) of the cluster:
//!
//! * the ranked variant scores each sentence by its cosine similarity to the
//!   centroid and de-queues the ranked list, optionally skipping sentences
//!   that are too similar to already selected ones;
//! * the global variant greedily grows a summary, at each step adding the
//!   sentence whose inclusion maximizes the cosine similarity between the
//!   summary's sum vector and the centroid;
//! * three preselection strategies (`n_first`, `n_best`, `new_tfidf`) shrink
//!   the candidate pool to N sentences per document before selection, while
//!   the centroid is always built over every sentence of the cluster.
//!
//! A ROUGE-N recall evaluator, a grid-search tuner and corpus ingestion
//! utilities round out the pipeline so whole-corpus experiments can be run
//! end to end.

pub mod corpus;
pub mod error;
pub mod preprocess;
pub mod rouge;
pub mod summarize;
pub mod tuning;
pub mod vector;

pub use corpus::{build_dev_clusters, load_cluster_dir, load_corpus_root, Article, Cluster};
pub use error::{Error, Result};
pub use preprocess::{Preprocessor, RawDocument, SentenceRecord};
pub use summarize::{Preselection, SummarizerConfig, SummaryResult, Variant};
pub use vector::{CentroidModel, SparseVector, Vocabulary};
