use std::io;

use thiserror::Error;

/// Unified error type for corpus construction, scoring and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    /// A paper id occurred twice in the papers input. Metadata would be
    /// ambiguous, so this is a hard error rather than a rejected row.
    #[error("duplicate paper id '{0}' in papers input")]
    DuplicatePaperId(String),

    /// The operation needs at least one paper.
    #[error("corpus contains no papers")]
    EmptyGraph,

    /// A citation or affiliation names a paper that was never declared.
    /// Only reachable through the programmatic builder; file ingestion
    /// rejects such rows instead.
    #[error("unknown paper id '{0}'")]
    UnknownPaper(String),

    /// The dense oracle materializes an (N+1)^2 matrix and refuses to
    /// do so past a fixed size.
    #[error("graph too large for dense oracle: {num_papers} papers exceeds cap {cap}")]
    OracleTooLarge { num_papers: usize, cap: usize },

    /// Rank correlation requires both rankings to cover the same papers.
    #[error("rankings cover different paper sets")]
    MismatchedPaperSets,

    /// Rank correlation is undefined on fewer than two papers.
    #[error("rank correlation needs at least two papers")]
    TooFewPapers,

    /// Every judged pair was unresolvable, leaving nothing to score.
    #[error("no evaluable pairs")]
    NoEvaluablePairs,

    /// A judgement pair compares a paper against itself.
    #[error("judgement pair compares '{0}' to itself")]
    SelfJudgement(String),

    /// A grid axis has no candidate values.
    #[error("weight grid has an empty axis")]
    EmptyGrid,

    /// The cartesian product of the grid axes exceeds the cap.
    #[error("weight grid has {points} points, exceeding cap {cap}")]
    GridTooLarge { points: u128, cap: u128 },

    /// A configuration value is out of range.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A cache file is malformed or has an unsupported version.
    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
