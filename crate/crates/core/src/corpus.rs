//! Corpus aggregate and the programmatic builder.

use crate::error::{Error, Result};
use crate::graph::{
    AffiliationTable, AffiliationTriple, AuthorId, CitationGraph, EdgeStats, InstitutionId,
    Interner, PaperId, PaperTable, VenueId,
};

/// A fully assembled corpus: four interners plus the citation graph,
/// the paper metadata table and the affiliation table, all over dense
/// ids. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    papers: Interner,
    authors: Interner,
    venues: Interner,
    institutions: Interner,
    graph: CitationGraph,
    meta: PaperTable,
    affiliations: AffiliationTable,
}

impl Corpus {
    pub(crate) fn from_parts(
        papers: Interner,
        authors: Interner,
        venues: Interner,
        institutions: Interner,
        graph: CitationGraph,
        meta: PaperTable,
        affiliations: AffiliationTable,
    ) -> Self {
        assert_eq!(papers.len(), graph.num_papers());
        assert_eq!(papers.len(), meta.num_papers());
        assert_eq!(authors.len(), affiliations.num_authors());
        assert_eq!(venues.len(), meta.num_venues());
        assert_eq!(institutions.len(), affiliations.num_institutions());
        Self {
            papers,
            authors,
            venues,
            institutions,
            graph,
            meta,
            affiliations,
        }
    }

    pub fn num_papers(&self) -> usize {
        self.papers.len()
    }

    pub fn papers(&self) -> &Interner {
        &self.papers
    }

    pub fn authors(&self) -> &Interner {
        &self.authors
    }

    pub fn venues(&self) -> &Interner {
        &self.venues
    }

    pub fn institutions(&self) -> &Interner {
        &self.institutions
    }

    pub fn graph(&self) -> &CitationGraph {
        &self.graph
    }

    pub fn meta(&self) -> &PaperTable {
        &self.meta
    }

    pub fn affiliations(&self) -> &AffiliationTable {
        &self.affiliations
    }

    /// Dense id for a raw paper id, if the paper exists.
    pub fn paper_id(&self, raw: &str) -> Option<PaperId> {
        self.papers.get(raw).map(PaperId)
    }

    /// Raw string id for a dense paper id.
    pub fn paper_name(&self, p: PaperId) -> &str {
        self.papers.name(p.0)
    }

    pub fn summary(&self) -> CorpusSummary {
        let n = self.num_papers();
        let mut without_year = 0;
        let mut without_venue = 0;
        let mut without_authors = 0;
        for p in 0..n as u32 {
            let p = PaperId(p);
            if self.meta.year(p).is_none() {
                without_year += 1;
            }
            if self.meta.venue(p).is_none() {
                without_venue += 1;
            }
            if self.affiliations.authors_of(p).is_empty() {
                without_authors += 1;
            }
        }
        CorpusSummary {
            num_papers: n,
            num_edges: self.graph.num_edges(),
            num_authors: self.authors.len(),
            num_venues: self.venues.len(),
            num_institutions: self.institutions.len(),
            papers_without_year: without_year,
            papers_without_venue: without_venue,
            papers_without_authors: without_authors,
        }
    }
}

/// Headline counts for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusSummary {
    pub num_papers: usize,
    pub num_edges: usize,
    pub num_authors: usize,
    pub num_venues: usize,
    pub num_institutions: usize,
    pub papers_without_year: usize,
    pub papers_without_venue: usize,
    pub papers_without_authors: usize,
}

/// Entities silently merged or dropped while assembling a corpus.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub edges: EdgeStats,
    pub duplicate_triples_dropped: u64,
}

/// Incremental corpus construction from raw string ids. Papers must be
/// declared before citations or affiliations can reference them;
/// authors, venues and institutions are interned on first sight.
#[derive(Debug, Default)]
pub struct CorpusBuilder {
    papers: Interner,
    authors: Interner,
    venues: Interner,
    institutions: Interner,
    years: Vec<Option<i32>>,
    paper_venues: Vec<Option<VenueId>>,
    edges: Vec<(PaperId, PaperId)>,
    triples: Vec<AffiliationTriple>,
}

impl CorpusBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn has_paper(&self, raw: &str) -> bool {
        self.papers.get(raw).is_some()
    }

    pub fn num_papers(&self) -> usize {
        self.papers.len()
    }

    /// Declares a paper. Redeclaring an id is an error because its
    /// metadata would be ambiguous.
    pub fn add_paper(&mut self, raw: &str, year: Option<i32>, venue: Option<&str>) -> Result<PaperId> {
        if self.papers.get(raw).is_some() {
            return Err(Error::DuplicatePaperId(raw.to_owned()));
        }
        let id = PaperId(self.papers.intern(raw));
        self.years.push(year);
        self.paper_venues
            .push(venue.map(|v| VenueId(self.venues.intern(v))));
        Ok(id)
    }

    /// Records a citation edge. Both endpoints must be declared papers.
    pub fn add_citation(&mut self, citing: &str, cited: &str) -> Result<()> {
        let citing = self
            .papers
            .get(citing)
            .ok_or_else(|| Error::UnknownPaper(citing.to_owned()))?;
        let cited = self
            .papers
            .get(cited)
            .ok_or_else(|| Error::UnknownPaper(cited.to_owned()))?;
        self.edges.push((PaperId(citing), PaperId(cited)));
        Ok(())
    }

    /// Records an (paper, author, institution) affiliation. The paper
    /// must be declared; author and institution ids are interned here.
    pub fn add_affiliation(
        &mut self,
        paper: &str,
        author: &str,
        institution: Option<&str>,
    ) -> Result<()> {
        let paper = self
            .papers
            .get(paper)
            .ok_or_else(|| Error::UnknownPaper(paper.to_owned()))?;
        let author = AuthorId(self.authors.intern(author));
        let institution = institution.map(|i| InstitutionId(self.institutions.intern(i)));
        self.triples.push(AffiliationTriple {
            paper: PaperId(paper),
            author,
            institution,
        });
        Ok(())
    }

    pub fn build(self) -> (Corpus, BuildStats) {
        let num_papers = self.papers.len();
        let (graph, edge_stats) = CitationGraph::build(num_papers, self.edges);
        let meta = PaperTable::new(self.years, self.paper_venues, self.venues.len());
        let (affiliations, duplicate_triples) = AffiliationTable::build(
            num_papers,
            self.authors.len(),
            self.institutions.len(),
            self.triples,
        );
        let corpus = Corpus::from_parts(
            self.papers,
            self.authors,
            self.venues,
            self.institutions,
            graph,
            meta,
            affiliations,
        );
        (
            corpus,
            BuildStats {
                edges: edge_stats,
                duplicate_triples_dropped: duplicate_triples,
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_assembles_a_corpus() {
        let mut b = CorpusBuilder::new();
        b.add_paper("p1", Some(2014), Some("v1")).unwrap();
        b.add_paper("p2", None, Some("v1")).unwrap();
        b.add_paper("p3", Some(2016), None).unwrap();
        b.add_citation("p1", "p2").unwrap();
        b.add_citation("p3", "p2").unwrap();
        b.add_citation("p1", "p2").unwrap();
        b.add_affiliation("p1", "a1", Some("i1")).unwrap();
        b.add_affiliation("p1", "a2", None).unwrap();
        b.add_affiliation("p2", "a1", Some("i2")).unwrap();
        let (corpus, stats) = b.build();

        assert_eq!(corpus.num_papers(), 3);
        assert_eq!(corpus.graph().num_edges(), 2);
        assert_eq!(stats.edges.duplicates_dropped, 1);
        assert_eq!(stats.duplicate_triples_dropped, 0);

        let p2 = corpus.paper_id("p2").unwrap();
        assert_eq!(corpus.graph().citation_count(p2), 2);
        assert_eq!(
            corpus.affiliations().papers_of_author(AuthorId(0)).len(),
            2
        );

        let summary = corpus.summary();
        assert_eq!(summary.num_papers, 3);
        assert_eq!(summary.num_authors, 2);
        assert_eq!(summary.num_venues, 1);
        assert_eq!(summary.num_institutions, 2);
        assert_eq!(summary.papers_without_year, 1);
        assert_eq!(summary.papers_without_venue, 1);
        assert_eq!(summary.papers_without_authors, 1);
    }

    #[test]
    fn builder_rejects_duplicates_and_unknowns() {
        let mut b = CorpusBuilder::new();
        b.add_paper("p1", None, None).unwrap();
        assert!(matches!(
            b.add_paper("p1", Some(2000), None),
            Err(Error::DuplicatePaperId(_))
        ));
        assert!(matches!(
            b.add_citation("p1", "nope"),
            Err(Error::UnknownPaper(_))
        ));
        assert!(matches!(
            b.add_affiliation("nope", "a1", None),
            Err(Error::UnknownPaper(_))
        ));
    }
}
