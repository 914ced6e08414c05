//! Tab-separated corpus ingestion.
//!
//! Three files describe a corpus:
//!
//! * `papers.tsv`: `paper_id \t year \t venue`, one row per paper.
//!   Year and venue may be empty. Years must be integers in
//!   `[1000, 3000]`.
//! * `references.tsv`: `citing_paper_id \t cited_paper_id`.
//! * `affiliations.tsv`: `paper_id \t author_id \t institution_id`,
//!   institution may be empty.
//!
//! Malformed rows are rejected and counted, never silently skipped;
//! parsing always continues. The one exception is a duplicate paper
//! id, which makes the metadata ambiguous and aborts ingestion.

use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use crate::corpus::{Corpus, CorpusBuilder};
use crate::error::{Error, Result};

/// Accepted year range; values outside are treated as data entry errors.
pub const YEAR_MIN: i32 = 1000;
pub const YEAR_MAX: i32 = 3000;

/// How many rejected rows are kept verbatim for diagnostics.
pub const MAX_REJECT_SAMPLES: usize = 20;

/// Per-file ingestion counters. `rows_read == accepted + rejected`
/// always holds; the drop counters describe accepted rows whose content
/// was redundant (exact duplicates, self-citations).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FileReport {
    pub rows_read: u64,
    pub accepted: u64,
    pub rejected: u64,
    pub self_loops_dropped: u64,
    pub duplicates_dropped: u64,
    /// Up to [`MAX_REJECT_SAMPLES`] of (line number, reason).
    pub reject_samples: Vec<(u64, String)>,
}

impl FileReport {
    fn reject(&mut self, line: u64, reason: String) {
        self.rejected += 1;
        if self.reject_samples.len() < MAX_REJECT_SAMPLES {
            self.reject_samples.push((line, reason));
        }
    }
}

/// Counters for one full corpus ingestion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub papers: FileReport,
    pub references: FileReport,
    pub affiliations: FileReport,
}

impl fmt::Display for IngestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "papers: rows_read={} accepted={} rejected={}",
            self.papers.rows_read, self.papers.accepted, self.papers.rejected
        )?;
        write_samples(f, &self.papers)?;
        writeln!(
            f,
            "references: rows_read={} accepted={} rejected={} self_loops_dropped={} duplicate_edges_dropped={}",
            self.references.rows_read,
            self.references.accepted,
            self.references.rejected,
            self.references.self_loops_dropped,
            self.references.duplicates_dropped
        )?;
        write_samples(f, &self.references)?;
        writeln!(
            f,
            "affiliations: rows_read={} accepted={} rejected={} duplicate_triples_dropped={}",
            self.affiliations.rows_read,
            self.affiliations.accepted,
            self.affiliations.rejected,
            self.affiliations.duplicates_dropped
        )?;
        write_samples(f, &self.affiliations)
    }
}

fn write_samples(f: &mut fmt::Formatter<'_>, report: &FileReport) -> fmt::Result {
    for (line, reason) in &report.reject_samples {
        writeln!(f, "  rejected line {line}: {reason}")?;
    }
    Ok(())
}

/// Splits a row into exactly N tab-separated fields.
fn split_exact<const N: usize>(line: &str) -> Option<[&str; N]> {
    let mut fields = line.split('\t');
    let mut out = [""; N];
    for slot in &mut out {
        *slot = fields.next()?;
    }
    if fields.next().is_some() {
        return None;
    }
    Some(out)
}

fn parse_year(field: &str) -> std::result::Result<Option<i32>, String> {
    if field.is_empty() {
        return Ok(None);
    }
    let year: i32 = field
        .parse()
        .map_err(|_| format!("invalid year '{field}'"))?;
    if !(YEAR_MIN..=YEAR_MAX).contains(&year) {
        return Err(format!("year {year} outside [{YEAR_MIN}, {YEAR_MAX}]"));
    }
    Ok(Some(year))
}

/// Calls `row` for every line, stripping the trailing newline. Line
/// numbers start at 1.
fn for_each_line<R: BufRead>(
    mut reader: R,
    mut row: impl FnMut(u64, &str) -> Result<()>,
) -> Result<()> {
    let mut buf = String::new();
    let mut line = 0u64;
    loop {
        buf.clear();
        if reader.read_line(&mut buf)? == 0 {
            return Ok(());
        }
        line += 1;
        let text = buf.strip_suffix('\n').unwrap_or(&buf);
        let text = text.strip_suffix('\r').unwrap_or(text);
        row(line, text)?;
    }
}

/// Reads paper metadata rows into the builder. Duplicate paper ids are
/// a hard error; all other malformed rows are rejected and counted.
pub fn ingest_papers<R: BufRead>(
    reader: R,
    builder: &mut CorpusBuilder,
    report: &mut FileReport,
) -> Result<()> {
    for_each_line(reader, |line, text| {
        report.rows_read += 1;
        let Some([id, year, venue]) = split_exact::<3>(text) else {
            report.reject(line, "expected 3 tab-separated fields".into());
            return Ok(());
        };
        if id.is_empty() {
            report.reject(line, "empty paper id".into());
            return Ok(());
        }
        let year = match parse_year(year) {
            Ok(y) => y,
            Err(reason) => {
                report.reject(line, reason);
                return Ok(());
            }
        };
        let venue = (!venue.is_empty()).then_some(venue);
        builder.add_paper(id, year, venue)?;
        report.accepted += 1;
        Ok(())
    })
}

/// Reads citation rows. Rows naming unknown papers are rejected;
/// self-citations and duplicate edges are accepted but dropped from the
/// graph (counted at build time).
pub fn ingest_references<R: BufRead>(
    reader: R,
    builder: &mut CorpusBuilder,
    report: &mut FileReport,
) -> Result<()> {
    for_each_line(reader, |line, text| {
        report.rows_read += 1;
        let Some([citing, cited]) = split_exact::<2>(text) else {
            report.reject(line, "expected 2 tab-separated fields".into());
            return Ok(());
        };
        if citing.is_empty() || cited.is_empty() {
            report.reject(line, "empty paper id".into());
            return Ok(());
        }
        match builder.add_citation(citing, cited) {
            Ok(()) => {
                report.accepted += 1;
                Ok(())
            }
            Err(Error::UnknownPaper(id)) => {
                report.reject(line, format!("unknown paper id '{id}'"));
                Ok(())
            }
            Err(other) => Err(other),
        }
    })
}

/// Reads affiliation rows. Rows naming unknown papers are rejected;
/// duplicate triples are accepted but dropped (counted at build time).
pub fn ingest_affiliations<R: BufRead>(
    reader: R,
    builder: &mut CorpusBuilder,
    report: &mut FileReport,
) -> Result<()> {
    for_each_line(reader, |line, text| {
        report.rows_read += 1;
        let Some([paper, author, institution]) = split_exact::<3>(text) else {
            report.reject(line, "expected 3 tab-separated fields".into());
            return Ok(());
        };
        if paper.is_empty() {
            report.reject(line, "empty paper id".into());
            return Ok(());
        }
        if author.is_empty() {
            report.reject(line, "empty author id".into());
            return Ok(());
        }
        let institution = (!institution.is_empty()).then_some(institution);
        match builder.add_affiliation(paper, author, institution) {
            Ok(()) => {
                report.accepted += 1;
                Ok(())
            }
            Err(Error::UnknownPaper(id)) => {
                report.reject(line, format!("unknown paper id '{id}'"));
                Ok(())
            }
            Err(other) => Err(other),
        }
    })
}

fn open(path: &Path) -> Result<BufReader<File>> {
    match File::open(path) {
        Ok(file) => Ok(BufReader::new(file)),
        Err(err) => Err(Error::Io(io::Error::new(
            err.kind(),
            format!("{}: {err}", path.display()),
        ))),
    }
}

/// Ingests a corpus from the three files and reports what happened.
pub fn ingest_corpus(
    papers: &Path,
    references: &Path,
    affiliations: &Path,
) -> Result<(Corpus, IngestReport)> {
    ingest_corpus_from_readers(open(papers)?, open(references)?, open(affiliations)?)
}

/// In-memory variant of [`ingest_corpus`] for callers that already hold
/// the file contents.
pub fn ingest_corpus_from_readers<P: BufRead, R: BufRead, A: BufRead>(
    papers: P,
    references: R,
    affiliations: A,
) -> Result<(Corpus, IngestReport)> {
    let mut builder = CorpusBuilder::new();
    let mut report = IngestReport::default();
    ingest_papers(papers, &mut builder, &mut report.papers)?;
    ingest_references(references, &mut builder, &mut report.references)?;
    ingest_affiliations(affiliations, &mut builder, &mut report.affiliations)?;
    let (corpus, stats) = builder.build();
    report.references.self_loops_dropped = stats.edges.self_loops_dropped;
    report.references.duplicates_dropped = stats.edges.duplicates_dropped;
    report.affiliations.duplicates_dropped = stats.duplicate_triples_dropped;
    Ok((corpus, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn ingest(papers: &str, references: &str, affiliations: &str) -> (Corpus, IngestReport) {
        ingest_corpus_from_readers(
            Cursor::new(papers),
            Cursor::new(references),
            Cursor::new(affiliations),
        )
        .unwrap()
    }

    #[test]
    fn accepts_well_formed_rows_and_absent_fields() {
        let (corpus, report) = ingest(
            "p1\t2014\tv1\np2\t\t\n",
            "p1\tp2\n",
            "p1\ta1\ti1\np1\ta2\t\n",
        );
        assert_eq!(report.papers.accepted, 2);
        assert_eq!(report.papers.rejected, 0);
        let p1 = corpus.paper_id("p1").unwrap();
        let p2 = corpus.paper_id("p2").unwrap();
        assert_eq!(corpus.meta().year(p1), Some(2014));
        assert_eq!(corpus.meta().year(p2), None);
        assert_eq!(corpus.meta().venue(p2), None);
        assert_eq!(corpus.affiliations().authors_of(p1).len(), 2);
        assert_eq!(corpus.affiliations().institutions_of(p1).len(), 1);
    }

    #[test]
    fn rejects_malformed_rows_and_keeps_going() {
        let papers = "p1\t2014\tv1\n\
                      p2\tabcd\tv1\n\
                      p3\t500\tv1\n\
                      p4\n\
                      \t2000\tv1\n\
                      p5\t2001\t\n";
        let (corpus, report) = ingest(papers, "", "");
        assert_eq!(report.papers.rows_read, 6);
        assert_eq!(report.papers.accepted, 2);
        assert_eq!(report.papers.rejected, 4);
        assert_eq!(
            report.papers.rows_read,
            report.papers.accepted + report.papers.rejected
        );
        assert_eq!(corpus.num_papers(), 2);
        let reasons: Vec<&str> = report
            .papers
            .reject_samples
            .iter()
            .map(|(_, r)| r.as_str())
            .collect();
        assert_eq!(report.papers.reject_samples[0].0, 2);
        assert!(reasons[0].contains("invalid year 'abcd'"));
        assert!(reasons[1].contains("outside"));
        assert!(reasons[2].contains("3 tab-separated fields"));
        assert!(reasons[3].contains("empty paper id"));
    }

    #[test]
    fn rejects_unknown_papers_in_references_and_affiliations() {
        let (corpus, report) = ingest(
            "p1\t2014\t\np2\t2015\t\n",
            "p1\tp2\np1\tmissing\nmissing\tp2\np1\n",
            "p1\ta1\t\nmissing\ta1\t\np1\t\t\n",
        );
        assert_eq!(report.references.accepted, 1);
        assert_eq!(report.references.rejected, 3);
        assert_eq!(report.affiliations.accepted, 1);
        assert_eq!(report.affiliations.rejected, 2);
        assert_eq!(corpus.graph().num_edges(), 1);
        assert!(report
            .affiliations
            .reject_samples
            .iter()
            .any(|(_, r)| r.contains("empty author id")));
    }

    #[test]
    fn counts_dropped_edges_and_triples() {
        let (corpus, report) = ingest(
            "p1\t\t\np2\t\t\np3\t\t\n",
            "p1\tp2\np2\tp3\np1\tp2\np3\tp3\n",
            "p1\ta1\ti1\np1\ta1\ti1\n",
        );
        assert_eq!(corpus.graph().num_edges(), 2);
        assert_eq!(report.references.accepted, 4);
        assert_eq!(report.references.duplicates_dropped, 1);
        assert_eq!(report.references.self_loops_dropped, 1);
        assert_eq!(report.affiliations.duplicates_dropped, 1);
    }

    #[test]
    fn duplicate_paper_id_is_a_hard_error() {
        let result = ingest_corpus_from_readers(
            Cursor::new("p1\t2014\t\np1\t2015\t\n"),
            Cursor::new(""),
            Cursor::new(""),
        );
        assert!(matches!(result, Err(Error::DuplicatePaperId(id)) if id == "p1"));
    }

    #[test]
    fn reject_samples_are_capped() {
        let mut papers = String::new();
        for _ in 0..50 {
            papers.push_str("bad\n");
        }
        let (_, report) = ingest(&papers, "", "");
        assert_eq!(report.papers.rejected, 50);
        assert_eq!(report.papers.reject_samples.len(), MAX_REJECT_SAMPLES);
    }

    #[test]
    fn repeated_ingestion_is_identical_and_reference_order_is_irrelevant() {
        let papers = "p1\t2014\tv1\np2\t2015\tv2\np3\t\tv1\n";
        let refs_a = "p1\tp2\np3\tp1\np2\tp1\n";
        let refs_b = "p2\tp1\np1\tp2\np3\tp1\n";
        let affils = "p1\ta1\ti1\np2\ta2\t\n";
        let (c1, _) = ingest(papers, refs_a, affils);
        let (c2, _) = ingest(papers, refs_a, affils);
        let (c3, _) = ingest(papers, refs_b, affils);
        assert_eq!(c1, c2);
        assert_eq!(c1, c3);
    }

    #[test]
    fn affiliation_order_changes_only_internal_numbering() {
        let papers = "p1\t\t\np2\t\t\n";
        let affils_a = "p1\ta1\ti1\np1\ta2\ti2\np2\ta2\ti1\n";
        let affils_b = "p2\ta2\ti1\np1\ta2\ti2\np1\ta1\ti1\n";
        let (c1, _) = ingest(papers, "", affils_a);
        let (c2, _) = ingest(papers, "", affils_b);

        // Raw-id view must match exactly even though interner numbering
        // follows first-seen order.
        for corpus in [&c1, &c2] {
            assert_eq!(corpus.authors().len(), 2);
            assert_eq!(corpus.institutions().len(), 2);
        }
        for raw in ["p1", "p2"] {
            let view = |c: &Corpus| {
                let p = c.paper_id(raw).unwrap();
                let mut authors: Vec<String> = c
                    .affiliations()
                    .authors_of(p)
                    .iter()
                    .map(|a| c.authors().name(a.0).to_owned())
                    .collect();
                authors.sort();
                let mut insts: Vec<String> = c
                    .affiliations()
                    .institutions_of(p)
                    .iter()
                    .map(|i| c.institutions().name(i.0).to_owned())
                    .collect();
                insts.sort();
                (authors, insts)
            };
            assert_eq!(view(&c1), view(&c2));
        }
    }
}
