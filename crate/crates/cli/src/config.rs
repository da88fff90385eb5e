//! Flag/config-file/default resolution.
//!
//! Precedence, highest first: command-line flag, `CENTROID_SUM_STOPWORDS`
//! (stopword path only), config file, built-in default. The config file is
//! flat `key=value` text whose keys mirror the long flag names.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use centroid_sum::preprocess::{AbbreviationList, StopwordList};
use centroid_sum::summarize::{Preselection, Variant};
use centroid_sum::tuning::Objective;
use centroid_sum::Preprocessor;

pub const DEFAULT_MARKER: &str = "@highlight";

pub fn parse_variant(s: &str) -> Result<Variant, String> {
    match s {
        "ranked" => Ok(Variant::Ranked),
        "global" => Ok(Variant::Global),
        _ => Err(format!("invalid variant '{s}' (ranked|global)")),
    }
}

pub fn parse_preselect(s: &str) -> Result<Preselection, String> {
    match s.replace('-', "_").as_str() {
        "none" => Ok(Preselection::None),
        "n_first" => Ok(Preselection::NFirst),
        "n_best" => Ok(Preselection::NBest),
        "new_tfidf" => Ok(Preselection::NewTfidf),
        _ => Err(format!(
            "invalid preselect value '{s}' (none|n_first|n_best|new_tfidf)"
        )),
    }
}

pub fn parse_objective(s: &str) -> Result<Objective, String> {
    match s.replace('-', "_").as_str() {
        "rouge1" | "rouge_1" | "r1" => Ok(Objective::Rouge1),
        "rouge2" | "rouge_2" | "r2" => Ok(Objective::Rouge2),
        _ => Err(format!("invalid objective '{s}' (rouge1|rouge2)")),
    }
}

pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Ranked => "ranked",
        Variant::Global => "global",
    }
}

pub fn preselect_name(p: Preselection) -> &'static str {
    match p {
        Preselection::None => "none",
        Preselection::NFirst => "n_first",
        Preselection::NBest => "n_best",
        Preselection::NewTfidf => "new_tfidf",
    }
}

const KNOWN_KEYS: &[&str] = &[
    "variant",
    "preselect",
    "n",
    "r",
    "v",
    "limit",
    "redundancy-filter",
    "stopwords",
    "abbreviations",
    "jobs",
    "marker",
];

/// Parsed `key=value` config file.
#[derive(Debug, Default)]
pub struct FileConfig {
    map: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!(
                    "{}:{}: expected key=value, got '{line}'",
                    path.display(),
                    lineno + 1
                );
            };
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                bail!(
                    "{}:{}: unknown config key '{key}' (known: {})",
                    path.display(),
                    lineno + 1,
                    KNOWN_KEYS.join(", ")
                );
            }
            map.insert(key.to_string(), value.trim().to_string());
        }
        Ok(FileConfig { map })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|s| s.as_str())
    }

    fn parse<T, E>(&self, key: &str, f: impl Fn(&str) -> Result<T, E>) -> Result<Option<T>>
    where
        E: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => match f(raw) {
                Ok(v) => Ok(Some(v)),
                Err(e) => bail!("config key '{key}': {e}"),
            },
        }
    }
}

/// Everything a command needs after precedence resolution.
#[derive(Debug)]
pub struct Resolved {
    pub variant: Variant,
    pub preselect: Preselection,
    pub n: usize,
    pub r: f64,
    pub v: f64,
    pub limit: usize,
    pub redundancy_filter: bool,
    pub stopwords: Option<PathBuf>,
    pub abbreviations: Option<PathBuf>,
    pub jobs: usize,
    pub marker: String,
}

/// Command-line values that may override the config file. `None` means the
/// flag was not given.
#[derive(Debug, Default)]
pub struct CliOverrides {
    pub variant: Option<Variant>,
    pub preselect: Option<Preselection>,
    pub n: Option<usize>,
    pub r: Option<f64>,
    pub v: Option<f64>,
    pub limit: Option<usize>,
    pub no_redundancy_filter: bool,
    pub stopwords: Option<PathBuf>,
    pub abbreviations: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub marker: Option<String>,
}

pub fn resolve(cli: CliOverrides, file: &FileConfig) -> Result<Resolved> {
    let stopwords_env = std::env::var_os("CENTROID_SUM_STOPWORDS").map(PathBuf::from);
    Ok(Resolved {
        variant: cli
            .variant
            .or(file.parse("variant", parse_variant)?)
            .unwrap_or(Variant::Global),
        preselect: cli
            .preselect
            .or(file.parse("preselect", parse_preselect)?)
            .unwrap_or(Preselection::None),
        n: cli.n.or(file.parse("n", str::parse::<usize>)?).unwrap_or(1),
        r: cli.r.or(file.parse("r", str::parse::<f64>)?).unwrap_or(0.6),
        v: cli.v.or(file.parse("v", str::parse::<f64>)?).unwrap_or(0.1),
        limit: cli
            .limit
            .or(file.parse("limit", str::parse::<usize>)?)
            .unwrap_or(100),
        redundancy_filter: if cli.no_redundancy_filter {
            false
        } else {
            file.parse("redundancy-filter", str::parse::<bool>)?
                .unwrap_or(true)
        },
        stopwords: cli
            .stopwords
            .or(stopwords_env)
            .or(file.get("stopwords").map(PathBuf::from)),
        abbreviations: cli
            .abbreviations
            .or(file.get("abbreviations").map(PathBuf::from)),
        jobs: cli
            .jobs
            .or(file.parse("jobs", str::parse::<usize>)?)
            .unwrap_or(0),
        marker: cli
            .marker
            .or(file.get("marker").map(String::from))
            .unwrap_or_else(|| DEFAULT_MARKER.to_string()),
    })
}

impl Resolved {
    pub fn summarizer_config(&self) -> centroid_sum::SummarizerConfig {
        centroid_sum::SummarizerConfig {
            variant: self.variant,
            redundancy_filter: self.redundancy_filter,
            r: self.r,
            v: self.v,
            preselection: self.preselect,
            n: self.n,
            word_limit: self.limit,
        }
    }

    pub fn preprocessor(&self) -> Result<Preprocessor> {
        let stopwords = match &self.stopwords {
            Some(path) => StopwordList::from_path(path)
                .with_context(|| format!("cannot load stopword list {}", path.display()))?,
            None => StopwordList::default(),
        };
        let abbreviations = match &self.abbreviations {
            Some(path) => AbbreviationList::from_path(path)
                .with_context(|| format!("cannot load abbreviation list {}", path.display()))?,
            None => AbbreviationList::default(),
        };
        Ok(Preprocessor::new(stopwords, abbreviations))
    }

    /// Thread pool honoring `--jobs` (0 = one worker per core).
    pub fn thread_pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .context("cannot build worker pool")
    }
}
