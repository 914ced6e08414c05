//! In-memory corpus model: interned ids, CSR adjacency and the three
//! entity tables (citations, paper metadata, affiliations).
//!
//! All adjacency lists are sorted ascending and deduplicated, which
//! makes every traversal order deterministic. The citation graph keeps
//! both directions; the reverse graph is the exact transpose of the
//! forward graph.

use std::collections::HashMap;

macro_rules! id_newtype {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }
    };
}

id_newtype!(
    /// Dense paper index assigned by first appearance in the papers input.
    PaperId
);
id_newtype!(
    /// Dense author index assigned by first appearance in the affiliations input.
    AuthorId
);
id_newtype!(
    /// Dense venue index assigned by first appearance in the papers input.
    VenueId
);
id_newtype!(
    /// Dense institution index assigned by first appearance in the affiliations input.
    InstitutionId
);

/// Bidirectional map between raw string ids and dense `u32` indices.
/// Indices are assigned in first-seen order, starting at zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Interner {
    map: HashMap<String, u32>,
    names: Vec<String>,
}

impl Interner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the index for `name`, inserting it if unseen.
    pub fn intern(&mut self, name: &str) -> u32 {
        if let Some(&idx) = self.map.get(name) {
            return idx;
        }
        let idx = u32::try_from(self.names.len()).expect("more than u32::MAX distinct ids");
        self.map.insert(name.to_owned(), idx);
        self.names.push(name.to_owned());
        idx
    }

    pub fn get(&self, name: &str) -> Option<u32> {
        self.map.get(name).copied()
    }

    /// Raw string for a previously interned index. Panics on an index
    /// that was never handed out.
    pub fn name(&self, idx: u32) -> &str {
        &self.names[idx as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// All raw ids in index order.
    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Compressed sparse rows: one sorted, deduplicated target list per
/// source index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Adjacency<T> {
    offsets: Vec<usize>,
    targets: Vec<T>,
}

impl<T: Copy + Ord> Adjacency<T> {
    /// Builds from (source, target) pairs. Returns the structure and
    /// the number of exact duplicate pairs dropped.
    pub(crate) fn build(num_sources: usize, mut pairs: Vec<(u32, T)>) -> (Self, u64) {
        debug_assert!(pairs.iter().all(|&(s, _)| (s as usize) < num_sources));
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        let dropped = (before - pairs.len()) as u64;

        let mut offsets = vec![0usize; num_sources + 1];
        for &(s, _) in &pairs {
            offsets[s as usize + 1] += 1;
        }
        for i in 0..num_sources {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.into_iter().map(|(_, t)| t).collect();
        (Self { offsets, targets }, dropped)
    }

    #[inline]
    pub(crate) fn neighbors(&self, source: u32) -> &[T] {
        &self.targets[self.offsets[source as usize]..self.offsets[source as usize + 1]]
    }

    #[inline]
    pub(crate) fn degree(&self, source: u32) -> usize {
        self.offsets[source as usize + 1] - self.offsets[source as usize]
    }

    pub(crate) fn num_sources(&self) -> usize {
        self.offsets.len() - 1
    }

    pub(crate) fn num_targets(&self) -> usize {
        self.targets.len()
    }
}

/// Edges removed while building a [`CitationGraph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeStats {
    pub self_loops_dropped: u64,
    pub duplicates_dropped: u64,
}

/// Directed citation graph over dense paper ids, stored in both
/// directions. `cites(p)` are the papers `p` references; `cited_by(p)`
/// are the papers referencing `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationGraph {
    forward: Adjacency<PaperId>,
    reverse: Adjacency<PaperId>,
}

impl CitationGraph {
    /// Builds the graph from raw (citing, cited) edges. Self-loops and
    /// duplicate edges are dropped and counted.
    pub fn build(num_papers: usize, edges: Vec<(PaperId, PaperId)>) -> (Self, EdgeStats) {
        let mut stats = EdgeStats::default();
        let mut forward_pairs = Vec::with_capacity(edges.len());
        for (citing, cited) in edges {
            assert!(citing.index() < num_papers && cited.index() < num_papers);
            if citing == cited {
                stats.self_loops_dropped += 1;
            } else {
                forward_pairs.push((citing.0, cited));
            }
        }
        let (forward, duplicates) = Adjacency::build(num_papers, forward_pairs);
        stats.duplicates_dropped = duplicates;

        let mut reverse_pairs = Vec::with_capacity(forward.num_targets());
        for source in 0..num_papers as u32 {
            for &target in forward.neighbors(source) {
                reverse_pairs.push((target.0, PaperId(source)));
            }
        }
        let (reverse, dup_rev) = Adjacency::build(num_papers, reverse_pairs);
        debug_assert_eq!(dup_rev, 0, "transpose of a simple graph is simple");

        (Self { forward, reverse }, stats)
    }

    pub fn num_papers(&self) -> usize {
        self.forward.num_sources()
    }

    pub fn num_edges(&self) -> usize {
        self.forward.num_targets()
    }

    /// Papers referenced by `p`, ascending.
    #[inline]
    pub fn cites(&self, p: PaperId) -> &[PaperId] {
        self.forward.neighbors(p.0)
    }

    /// Papers citing `p`, ascending.
    #[inline]
    pub fn cited_by(&self, p: PaperId) -> &[PaperId] {
        self.reverse.neighbors(p.0)
    }

    #[inline]
    pub fn out_degree(&self, p: PaperId) -> usize {
        self.forward.degree(p.0)
    }

    /// Number of distinct papers citing `p`.
    #[inline]
    pub fn citation_count(&self, p: PaperId) -> u32 {
        self.reverse.degree(p.0) as u32
    }
}

/// Per-paper metadata (year, venue) plus the venue membership index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperTable {
    years: Vec<Option<i32>>,
    venues: Vec<Option<VenueId>>,
    venue_papers: Adjacency<PaperId>,
    max_year: Option<i32>,
}

impl PaperTable {
    pub fn new(years: Vec<Option<i32>>, venues: Vec<Option<VenueId>>, num_venues: usize) -> Self {
        assert_eq!(years.len(), venues.len());
        let pairs = venues
            .iter()
            .enumerate()
            .filter_map(|(p, v)| v.map(|v| (v.0, PaperId(p as u32))))
            .collect();
        let (venue_papers, dup) = Adjacency::build(num_venues, pairs);
        debug_assert_eq!(dup, 0, "one venue entry per paper");
        let max_year = years.iter().flatten().copied().max();
        Self {
            years,
            venues,
            venue_papers,
            max_year,
        }
    }

    pub fn num_papers(&self) -> usize {
        self.years.len()
    }

    #[inline]
    pub fn year(&self, p: PaperId) -> Option<i32> {
        self.years[p.index()]
    }

    #[inline]
    pub fn venue(&self, p: PaperId) -> Option<VenueId> {
        self.venues[p.index()]
    }

    /// Papers published at `v`, ascending. Every paper whose venue is
    /// `v` appears exactly once.
    pub fn papers_of_venue(&self, v: VenueId) -> &[PaperId] {
        self.venue_papers.neighbors(v.0)
    }

    pub fn num_venues(&self) -> usize {
        self.venue_papers.num_sources()
    }

    /// Largest year present in the corpus, if any paper has one.
    pub fn max_year(&self) -> Option<i32> {
        self.max_year
    }

    pub(crate) fn years(&self) -> &[Option<i32>] {
        &self.years
    }

    pub(crate) fn venues(&self) -> &[Option<VenueId>] {
        &self.venues
    }
}

/// One accepted affiliation row: the author wrote the paper, optionally
/// while at the institution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffiliationTriple {
    pub paper: PaperId,
    pub author: AuthorId,
    pub institution: Option<InstitutionId>,
}

/// Deduplicated affiliation triples with all four membership indices:
/// paper -> authors, author -> papers, paper -> institutions,
/// institution -> papers. The pairs of indices are exact inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffiliationTable {
    triples: Vec<AffiliationTriple>,
    paper_authors: Adjacency<AuthorId>,
    author_papers: Adjacency<PaperId>,
    paper_institutions: Adjacency<InstitutionId>,
    institution_papers: Adjacency<PaperId>,
}

impl AffiliationTable {
    /// Builds the table. Exact duplicate triples are dropped and
    /// counted; an author listed under two institutions still counts as
    /// one author of the paper.
    pub fn build(
        num_papers: usize,
        num_authors: usize,
        num_institutions: usize,
        mut triples: Vec<AffiliationTriple>,
    ) -> (Self, u64) {
        triples.sort_unstable();
        let before = triples.len();
        triples.dedup();
        let duplicates_dropped = (before - triples.len()) as u64;

        let author_pairs = triples.iter().map(|t| (t.paper.0, t.author)).collect();
        let (paper_authors, _) = Adjacency::build(num_papers, author_pairs);

        let paper_pairs = triples.iter().map(|t| (t.author.0, t.paper)).collect();
        let (author_papers, _) = Adjacency::build(num_authors, paper_pairs);

        let inst_pairs = triples
            .iter()
            .filter_map(|t| t.institution.map(|i| (t.paper.0, i)))
            .collect();
        let (paper_institutions, _) = Adjacency::build(num_papers, inst_pairs);

        let inst_paper_pairs = triples
            .iter()
            .filter_map(|t| t.institution.map(|i| (i.0, t.paper)))
            .collect();
        let (institution_papers, _) = Adjacency::build(num_institutions, inst_paper_pairs);

        (
            Self {
                triples,
                paper_authors,
                author_papers,
                paper_institutions,
                institution_papers,
            },
            duplicates_dropped,
        )
    }

    /// Distinct authors of `p`, ascending.
    #[inline]
    pub fn authors_of(&self, p: PaperId) -> &[AuthorId] {
        self.paper_authors.neighbors(p.0)
    }

    /// Distinct papers written by `a`, ascending.
    #[inline]
    pub fn papers_of_author(&self, a: AuthorId) -> &[PaperId] {
        self.author_papers.neighbors(a.0)
    }

    /// Distinct institutions affiliated with `p`, ascending.
    #[inline]
    pub fn institutions_of(&self, p: PaperId) -> &[InstitutionId] {
        self.paper_institutions.neighbors(p.0)
    }

    /// Distinct papers affiliated with `i`, ascending. This is the
    /// exact inverse of [`Self::institutions_of`].
    #[inline]
    pub fn papers_of_institution(&self, i: InstitutionId) -> &[PaperId] {
        self.institution_papers.neighbors(i.0)
    }

    pub fn num_authors(&self) -> usize {
        self.author_papers.num_sources()
    }

    pub fn num_institutions(&self) -> usize {
        self.institution_papers.num_sources()
    }

    /// Deduplicated triples, sorted by (paper, author, institution).
    pub fn triples(&self) -> &[AffiliationTriple] {
        &self.triples
    }
}

/// The six score components of one paper, in combination order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ScoreVector {
    pub publication: f64,
    pub age: f64,
    pub pagerank: f64,
    pub author: f64,
    pub venue: f64,
    pub institution: f64,
}

impl ScoreVector {
    pub const COMPONENTS: usize = 6;

    pub fn as_array(&self) -> [f64; 6] {
        [
            self.publication,
            self.age,
            self.pagerank,
            self.author,
            self.venue,
            self.institution,
        ]
    }

    pub fn from_array(values: [f64; 6]) -> Self {
        Self {
            publication: values[0],
            age: values[1],
            pagerank: values[2],
            author: values[3],
            venue: values[4],
            institution: values[5],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|v| v.is_finite())
    }
}
