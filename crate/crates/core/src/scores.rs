//! Per-paper score components.
//!
//! Every function here is a pure function of the corpus: no caches, no
//! interior mutability, and iteration always follows the sorted
//! adjacency order, so results are deterministic and the batch
//! pipeline can reproduce them bit for bit.
//!
//! Conventions for missing data: a score whose inputs are absent
//! (no authors, no year, no venue, no institutions) is 0, never NaN.

use crate::error::{Error, Result};
use crate::graph::{AffiliationTable, AuthorId, CitationGraph, PaperId, PaperTable};

/// Citation-count cap selection. The first round zeroed papers above
/// the threshold outright; the second clamps them to the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    One,
    Two,
}

/// How per-author values are folded into one author score per paper.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aggregation {
    Mean,
    Max,
    Total,
}

/// The per-author statistic underlying the author score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuthorBase {
    MeanCitationsPerPaper,
    TotalCitations,
    HIndex,
}

/// Venue score flavor: plain sibling citation total, or that total
/// divided by the number of siblings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VenueVariant {
    TotalCitations,
    MeanPerPaper,
}

/// Denominators for the normalized mean-citation scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanNormalization {
    PerYear,
    PerAuthor,
    PerYearAndAuthor,
}

/// Knobs shared by all scoring functions.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoringConfig {
    /// Citation-count cap for the publication score.
    pub threshold: u32,
    /// Exponential decay rate for time-weighted citations.
    pub alpha: f64,
    /// Reference year for decay and per-year means. `None` uses the
    /// largest year present in the corpus.
    pub current_year: Option<i32>,
    pub round: Round,
    pub author_aggregation: Aggregation,
    pub author_base: AuthorBase,
    pub venue_variant: VenueVariant,
}

impl Default for ScoringConfig {
    fn default() -> Self {
        Self {
            threshold: 5000,
            alpha: 0.1,
            current_year: None,
            round: Round::Two,
            author_aggregation: Aggregation::Mean,
            author_base: AuthorBase::MeanCitationsPerPaper,
            venue_variant: VenueVariant::TotalCitations,
        }
    }
}

impl ScoringConfig {
    pub fn validate(&self) -> Result<()> {
        if self.threshold == 0 {
            return Err(Error::InvalidConfig("threshold must be at least 1".into()));
        }
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha must be a positive finite number, got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    /// The year "now" resolves to. Falls back to 0 when the corpus has
    /// no years at all, in which case no score ever consults it.
    pub fn effective_current_year(&self, meta: &PaperTable) -> i32 {
        self.current_year.or_else(|| meta.max_year()).unwrap_or(0)
    }
}

fn citation_count_total(papers: &[PaperId], graph: &CitationGraph) -> u64 {
    papers
        .iter()
        .map(|&p| graph.citation_count(p) as u64)
        .sum()
}

/// Publication score: citation count capped at the threshold, divided
/// by the number of distinct authors. Papers without authors score 0.
/// Under [`Round::One`] the cap is a cutoff instead: anything above the
/// threshold scores 0.
pub fn score_publication(
    p: PaperId,
    graph: &CitationGraph,
    affiliations: &AffiliationTable,
    config: &ScoringConfig,
) -> f64 {
    let num_authors = affiliations.authors_of(p).len();
    if num_authors == 0 {
        return 0.0;
    }
    let citations = graph.citation_count(p);
    let capped = match config.round {
        Round::Two => citations.min(config.threshold),
        Round::One => {
            if citations <= config.threshold {
                citations
            } else {
                return 0.0;
            }
        }
    };
    capped as f64 / num_authors as f64
}

/// Age score: the publication year itself, so newer papers score
/// higher. Papers without a year score 0.
pub fn score_age(p: PaperId, meta: &PaperTable) -> f64 {
    meta.year(p).map_or(0.0, |y| y as f64)
}

/// Time-decayed citation count: each citing paper contributes
/// `exp(-alpha * max(current_year - citing_year, 0))`. Citers without
/// a year contribute 0; citers dated in the future contribute 1.
pub fn score_citations_decayed(
    p: PaperId,
    graph: &CitationGraph,
    meta: &PaperTable,
    config: &ScoringConfig,
) -> f64 {
    let now = config.effective_current_year(meta);
    let mut total = 0.0;
    for &citer in graph.cited_by(p) {
        if let Some(year) = meta.year(citer) {
            let age = (now - year).max(0) as f64;
            total += (-config.alpha * age).exp();
        }
    }
    total
}

/// Citation count divided by age in years, author count, or both.
/// A missing denominator (no year, no authors, or a paper dated after
/// the reference year) makes the score 0.
pub fn score_citations_mean(
    p: PaperId,
    graph: &CitationGraph,
    meta: &PaperTable,
    affiliations: &AffiliationTable,
    config: &ScoringConfig,
    mode: MeanNormalization,
) -> f64 {
    let citations = graph.citation_count(p) as f64;
    let years_spanned = || {
        let year = meta.year(p)?;
        let span = config.effective_current_year(meta) - year + 1;
        (span > 0).then_some(span as f64)
    };
    let num_authors = || {
        let n = affiliations.authors_of(p).len();
        (n > 0).then_some(n as f64)
    };
    let denominator = match mode {
        MeanNormalization::PerYear => years_spanned(),
        MeanNormalization::PerAuthor => num_authors(),
        MeanNormalization::PerYearAndAuthor => match (years_spanned(), num_authors()) {
            (Some(y), Some(a)) => Some(y * a),
            _ => None,
        },
    };
    denominator.map_or(0.0, |d| citations / d)
}

/// Largest `h` such that at least `h` of the counts are `>= h`.
pub fn h_index(citation_counts: &[u32]) -> u32 {
    let mut sorted = citation_counts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut h = 0u32;
    for (i, &count) in sorted.iter().enumerate() {
        if count as usize > i {
            h = (i + 1) as u32;
        } else {
            break;
        }
    }
    h
}

/// One author's base statistic over all their papers.
pub(crate) fn author_value(
    a: AuthorId,
    graph: &CitationGraph,
    affiliations: &AffiliationTable,
    base: AuthorBase,
) -> f64 {
    let papers = affiliations.papers_of_author(a);
    match base {
        AuthorBase::MeanCitationsPerPaper => {
            if papers.is_empty() {
                0.0
            } else {
                citation_count_total(papers, graph) as f64 / papers.len() as f64
            }
        }
        AuthorBase::TotalCitations => citation_count_total(papers, graph) as f64,
        AuthorBase::HIndex => {
            let counts: Vec<u32> = papers.iter().map(|&q| graph.citation_count(q)).collect();
            h_index(&counts) as f64
        }
    }
}

/// Folds per-author values (already in author-list order) into one
/// score. Shared by the per-paper function and the batch pipeline so
/// both produce bit-identical results.
pub(crate) fn fold_author_values(
    values: impl Iterator<Item = f64>,
    num_authors: usize,
    aggregation: Aggregation,
) -> f64 {
    match aggregation {
        Aggregation::Mean => values.sum::<f64>() / num_authors as f64,
        Aggregation::Total => values.sum(),
        Aggregation::Max => values.fold(0.0, f64::max),
    }
}

/// Author score: fold the per-author base statistic over the paper's
/// authors. The author's own paper set includes the paper being
/// scored. Papers without authors score 0.
pub fn score_author(
    p: PaperId,
    graph: &CitationGraph,
    affiliations: &AffiliationTable,
    config: &ScoringConfig,
) -> f64 {
    let authors = affiliations.authors_of(p);
    if authors.is_empty() {
        return 0.0;
    }
    let values = authors
        .iter()
        .map(|&a| author_value(a, graph, affiliations, config.author_base));
    fold_author_values(values, authors.len(), config.author_aggregation)
}

/// Venue score: total citations of the other papers in the same venue.
/// Papers without a venue score 0. [`VenueVariant::MeanPerPaper`]
/// divides by the number of other papers (0 if the paper is alone).
pub fn score_venue(
    p: PaperId,
    graph: &CitationGraph,
    meta: &PaperTable,
    config: &ScoringConfig,
) -> f64 {
    let Some(venue) = meta.venue(p) else {
        return 0.0;
    };
    let members = meta.papers_of_venue(venue);
    let total: u64 = members
        .iter()
        .filter(|&&x| x != p)
        .map(|&x| graph.citation_count(x) as u64)
        .sum();
    match config.venue_variant {
        VenueVariant::TotalCitations => total as f64,
        VenueVariant::MeanPerPaper => {
            let others = members.len() - 1;
            if others == 0 {
                0.0
            } else {
                total as f64 / others as f64
            }
        }
    }
}

/// Institution score: for each of the paper's institutions, total the
/// citations of the institution's other papers, then average over the
/// institutions. Papers without institutions score 0.
pub fn score_institution(
    p: PaperId,
    graph: &CitationGraph,
    affiliations: &AffiliationTable,
) -> f64 {
    let institutions = affiliations.institutions_of(p);
    if institutions.is_empty() {
        return 0.0;
    }
    let sum: f64 = institutions
        .iter()
        .map(|&i| {
            let total: u64 = affiliations
                .papers_of_institution(i)
                .iter()
                .filter(|&&x| x != p)
                .map(|&x| graph.citation_count(x) as u64)
                .sum();
            total as f64
        })
        .sum();
    sum / institutions.len() as f64
}
