use std::path::PathBuf;

/// Errors produced while loading corpora or validating configuration.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cluster {id} has no documents")]
    EmptyCluster { id: String },

    #[error("cluster {id} has no reference summaries")]
    NoReferences { id: String },

    #[error("invalid cluster directory {path}: {reason}")]
    BadClusterDir { path: PathBuf, reason: String },

    #[error("invalid article file {path}: {reason}")]
    BadArticle { path: PathBuf, reason: String },

    #[error("not enough articles to build {requested} clusters: {available} usable seeds")]
    NotEnoughArticles { requested: usize, available: usize },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
