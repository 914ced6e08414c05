//! Batch ranking engine for scholarly publication corpora.
//!
//! The library ingests a corpus given as three tab-separated files
//! (paper metadata, citation references, author/institution
//! affiliations), computes six per-paper score components, combines
//! them through a weighted sum into a single ranking, and evaluates
//! rankings against pairwise relevance judgements.
//!
//! The score components are:
//!
//! * a thresholded citation count divided by the number of authors,
//! * the publication year,
//! * a citation-graph PageRank with a dummy-paper augmentation
//!   (no dangling nodes, uniform escape mass),
//! * an author score aggregating per-author citation statistics,
//! * a venue score from sibling papers in the same venue,
//! * an institution score from sibling papers of the same institutions.
//!
//! Everything is deterministic: the same inputs produce byte-identical
//! outputs, independent of thread count.

pub mod cache;
pub mod combine;
pub mod corpus;
pub mod error;
pub mod evaluate;
pub mod graph;
pub mod ingest;
pub mod pagerank;
pub mod pipeline;
pub mod scores;

pub use cache::{read_cache, read_cache_file, write_cache, write_cache_file};
pub use combine::{
    combine, rank_correlation, rank_papers, Normalization, RankedEntry, RankedList, WeightVector,
};
pub use corpus::{BuildStats, Corpus, CorpusBuilder, CorpusSummary};
pub use error::{Error, Result};
pub use evaluate::{
    grid_search_weights, pairwise_agreement, pairwise_outcomes, AgreementReport, JudgementSet,
    PairOutcome, TiePolicy, WeightGrid,
};
pub use graph::{
    AffiliationTable, AffiliationTriple, AuthorId, CitationGraph, EdgeStats, InstitutionId,
    Interner, PaperId, PaperTable, ScoreVector, VenueId,
};
pub use ingest::{ingest_corpus, ingest_corpus_from_readers, FileReport, IngestReport};
pub use pagerank::{
    compute_pagerank, compute_pagerank_observed, explicit_dummy_oracle, PageRankConfig,
    PageRankResult, ReportBasis,
};
pub use pipeline::{
    compute_score_vectors, run_ranking, write_component_scores, ComponentMask, PipelineOutput,
};
pub use scores::{
    h_index, score_age, score_author, score_citations_decayed, score_citations_mean,
    score_institution, score_publication, score_venue, Aggregation, AuthorBase,
    MeanNormalization, Round, ScoringConfig, VenueVariant,
};
