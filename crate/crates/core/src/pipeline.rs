//! Batch scoring and end-to-end ranking.
//!
//! The per-paper functions in [`crate::scores`] are the semantic
//! reference; this module precomputes per-author, per-venue and
//! per-institution totals so a whole corpus is scored in one parallel
//! pass. Totals are integers, so the batch results equal the per-paper
//! functions bit for bit (a property the tests pin down).

use std::io::{self, Write};

use rayon::prelude::*;

use crate::combine::{combine, Normalization, RankedList, WeightVector};
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::graph::{InstitutionId, PaperId, ScoreVector, VenueId};
use crate::pagerank::{compute_pagerank, PageRankConfig, PageRankResult};
use crate::scores::{self, ScoringConfig, VenueVariant};

/// Which score components to compute. Disabled components are 0 for
/// every paper; disabling the pagerank component skips power iteration
/// entirely.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentMask {
    pub publication: bool,
    pub age: bool,
    pub pagerank: bool,
    pub author: bool,
    pub venue: bool,
    pub institution: bool,
}

impl Default for ComponentMask {
    fn default() -> Self {
        Self::ALL
    }
}

impl ComponentMask {
    pub const ALL: Self = Self {
        publication: true,
        age: true,
        pagerank: true,
        author: true,
        venue: true,
        institution: true,
    };

    pub const NONE: Self = Self {
        publication: false,
        age: false,
        pagerank: false,
        author: false,
        venue: false,
        institution: false,
    };

    /// Component order: publication, age, pagerank, author, venue,
    /// institution (same as [`ScoreVector::as_array`]).
    pub fn from_array(flags: [bool; 6]) -> Self {
        Self {
            publication: flags[0],
            age: flags[1],
            pagerank: flags[2],
            author: flags[3],
            venue: flags[4],
            institution: flags[5],
        }
    }

    pub fn as_array(&self) -> [bool; 6] {
        [
            self.publication,
            self.age,
            self.pagerank,
            self.author,
            self.venue,
            self.institution,
        ]
    }
}

/// Computes the six score components for every paper. Returns the
/// PageRank result alongside (when that component is enabled) since
/// callers usually want its convergence diagnostics.
pub fn compute_score_vectors(
    corpus: &Corpus,
    scoring: &ScoringConfig,
    pagerank: &PageRankConfig,
    mask: ComponentMask,
) -> Result<(Vec<ScoreVector>, Option<PageRankResult>)> {
    let n = corpus.num_papers();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    scoring.validate()?;
    pagerank.validate()?;

    let graph = corpus.graph();
    let meta = corpus.meta();
    let affiliations = corpus.affiliations();

    let pagerank_result = if mask.pagerank {
        Some(compute_pagerank(graph, pagerank)?)
    } else {
        None
    };

    let author_values: Vec<f64> = if mask.author {
        (0..affiliations.num_authors() as u32)
            .into_par_iter()
            .map(|a| {
                scores::author_value(
                    crate::graph::AuthorId(a),
                    graph,
                    affiliations,
                    scoring.author_base,
                )
            })
            .collect()
    } else {
        Vec::new()
    };

    let venue_totals: Vec<u64> = if mask.venue {
        (0..meta.num_venues() as u32)
            .into_par_iter()
            .map(|v| {
                meta.papers_of_venue(VenueId(v))
                    .iter()
                    .map(|&p| graph.citation_count(p) as u64)
                    .sum()
            })
            .collect()
    } else {
        Vec::new()
    };

    let institution_totals: Vec<u64> = if mask.institution {
        (0..affiliations.num_institutions() as u32)
            .into_par_iter()
            .map(|i| {
                affiliations
                    .papers_of_institution(InstitutionId(i))
                    .iter()
                    .map(|&p| graph.citation_count(p) as u64)
                    .sum()
            })
            .collect()
    } else {
        Vec::new()
    };

    let vectors: Vec<ScoreVector> = (0..n as u32)
        .into_par_iter()
        .map(|idx| {
            let p = PaperId(idx);
            let citations = graph.citation_count(p) as u64;

            let publication = if mask.publication {
                scores::score_publication(p, graph, affiliations, scoring)
            } else {
                0.0
            };
            let age = if mask.age { scores::score_age(p, meta) } else { 0.0 };
            let pagerank = pagerank_result
                .as_ref()
                .map_or(0.0, |r| r.scores[p.index()]);

            let author = if mask.author {
                let authors = affiliations.authors_of(p);
                if authors.is_empty() {
                    0.0
                } else {
                    scores::fold_author_values(
                        authors.iter().map(|a| author_values[a.index()]),
                        authors.len(),
                        scoring.author_aggregation,
                    )
                }
            } else {
                0.0
            };

            let venue = if mask.venue {
                match meta.venue(p) {
                    None => 0.0,
                    Some(v) => {
                        let total = venue_totals[v.index()] - citations;
                        match scoring.venue_variant {
                            VenueVariant::TotalCitations => total as f64,
                            VenueVariant::MeanPerPaper => {
                                let others = meta.papers_of_venue(v).len() - 1;
                                if others == 0 {
                                    0.0
                                } else {
                                    total as f64 / others as f64
                                }
                            }
                        }
                    }
                }
            } else {
                0.0
            };

            let institution = if mask.institution {
                let institutions = affiliations.institutions_of(p);
                if institutions.is_empty() {
                    0.0
                } else {
                    let sum: f64 = institutions
                        .iter()
                        .map(|i| (institution_totals[i.index()] - citations) as f64)
                        .sum();
                    sum / institutions.len() as f64
                }
            } else {
                0.0
            };

            ScoreVector {
                publication,
                age,
                pagerank,
                author,
                venue,
                institution,
            }
        })
        .collect();

    Ok((vectors, pagerank_result))
}

/// Everything one ranking run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub score_vectors: Vec<ScoreVector>,
    pub pagerank: Option<PageRankResult>,
    pub combined: Vec<f64>,
    pub ranking: RankedList,
}

/// Scores, combines and ranks the whole corpus.
pub fn run_ranking(
    corpus: &Corpus,
    scoring: &ScoringConfig,
    pagerank: &PageRankConfig,
    weights: &WeightVector,
    normalization: Normalization,
    mask: ComponentMask,
) -> Result<PipelineOutput> {
    let (score_vectors, pagerank_result) =
        compute_score_vectors(corpus, scoring, pagerank, mask)?;
    let combined = combine(&score_vectors, weights, normalization)?;
    let ranking = RankedList::from_scores(corpus.papers(), &combined);
    Ok(PipelineOutput {
        score_vectors,
        pagerank: pagerank_result,
        combined,
        ranking,
    })
}

/// Writes per-paper component scores in rank order:
/// `paper_id \t publication \t age \t pagerank \t author \t venue \t institution`.
pub fn write_component_scores<W: Write>(
    mut writer: W,
    corpus: &Corpus,
    ranking: &RankedList,
    score_vectors: &[ScoreVector],
) -> io::Result<()> {
    for entry in ranking.entries() {
        let p = corpus
            .paper_id(&entry.paper)
            .expect("ranking refers to a corpus paper");
        let sv = score_vectors[p.index()];
        writeln!(
            writer,
            "{}\t{:.16e}\t{:.16e}\t{:.16e}\t{:.16e}\t{:.16e}\t{:.16e}",
            entry.paper, sv.publication, sv.age, sv.pagerank, sv.author, sv.venue, sv.institution
        )?;
    }
    Ok(())
}
