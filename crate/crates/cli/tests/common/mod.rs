//! Deterministic synthetic corpora for integration tests.
//!
//! The generator keeps its own ground-truth record of every row it
//! writes, so tests can verify pipeline output against raw data without
//! going through the library's own indices.

#![allow(dead_code)]

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy)]
pub struct CorpusSpec {
    pub seed: u64,
    pub num_papers: usize,
    pub num_reference_rows: usize,
    pub num_affiliation_rows: usize,
    pub num_authors: usize,
    pub num_venues: usize,
    pub num_institutions: usize,
    pub year_min: i32,
    pub year_max: i32,
    /// Percent of papers with no year, 0..=100.
    pub missing_year_percent: u32,
    pub missing_venue_percent: u32,
    pub missing_institution_percent: u32,
}

impl CorpusSpec {
    pub fn small(seed: u64) -> Self {
        Self {
            seed,
            num_papers: 60,
            num_reference_rows: 300,
            num_affiliation_rows: 150,
            num_authors: 25,
            num_venues: 8,
            num_institutions: 6,
            year_min: 1980,
            year_max: 2015,
            missing_year_percent: 10,
            missing_venue_percent: 15,
            missing_institution_percent: 20,
        }
    }
}

/// Ground truth retained from generation. References and affiliations
/// are in row order and may contain duplicate rows, exactly as written.
pub struct RawCorpus {
    pub papers: Vec<String>,
    pub years: Vec<Option<i32>>,
    pub venues: Vec<Option<usize>>,
    pub references: Vec<(usize, usize)>,
    pub affiliations: Vec<(usize, usize, Option<usize>)>,
}

pub struct CorpusFiles {
    pub papers: PathBuf,
    pub references: PathBuf,
    pub affiliations: PathBuf,
    pub raw: RawCorpus,
}

pub fn paper_name(i: usize) -> String {
    format!("p{i:06}")
}

pub fn author_name(i: usize) -> String {
    format!("a{i:04}")
}

pub fn venue_name(i: usize) -> String {
    format!("v{i:03}")
}

pub fn institution_name(i: usize) -> String {
    format!("i{i:03}")
}

pub fn generate(spec: &CorpusSpec) -> RawCorpus {
    assert!(spec.num_papers >= 2, "need at least two papers for edges");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let papers: Vec<String> = (0..spec.num_papers).map(paper_name).collect();
    let years: Vec<Option<i32>> = (0..spec.num_papers)
        .map(|_| {
            if rng.random_range(0..100) < spec.missing_year_percent {
                None
            } else {
                Some(rng.random_range(spec.year_min..=spec.year_max))
            }
        })
        .collect();
    let venues: Vec<Option<usize>> = (0..spec.num_papers)
        .map(|_| {
            if rng.random_range(0..100) < spec.missing_venue_percent {
                None
            } else {
                Some(rng.random_range(0..spec.num_venues))
            }
        })
        .collect();

    let mut references = Vec::with_capacity(spec.num_reference_rows);
    for _ in 0..spec.num_reference_rows {
        let citing = rng.random_range(0..spec.num_papers);
        let cited = loop {
            let c = rng.random_range(0..spec.num_papers);
            if c != citing {
                break c;
            }
        };
        references.push((citing, cited));
    }

    let mut affiliations = Vec::with_capacity(spec.num_affiliation_rows);
    for _ in 0..spec.num_affiliation_rows {
        let paper = rng.random_range(0..spec.num_papers);
        let author = rng.random_range(0..spec.num_authors);
        let institution = if rng.random_range(0..100) < spec.missing_institution_percent {
            None
        } else {
            Some(rng.random_range(0..spec.num_institutions))
        };
        affiliations.push((paper, author, institution));
    }

    RawCorpus {
        papers,
        years,
        venues,
        references,
        affiliations,
    }
}

pub fn paper_rows(raw: &RawCorpus) -> Vec<String> {
    raw.papers
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let year = raw.years[i].map_or(String::new(), |y| y.to_string());
            let venue = raw.venues[i].map_or(String::new(), venue_name);
            format!("{name}\t{year}\t{venue}")
        })
        .collect()
}

pub fn reference_rows(raw: &RawCorpus) -> Vec<String> {
    raw.references
        .iter()
        .map(|&(citing, cited)| format!("{}\t{}", raw.papers[citing], raw.papers[cited]))
        .collect()
}

pub fn affiliation_rows(raw: &RawCorpus) -> Vec<String> {
    raw.affiliations
        .iter()
        .map(|&(paper, author, institution)| {
            let inst = institution.map_or(String::new(), institution_name);
            format!("{}\t{}\t{}", raw.papers[paper], author_name(author), inst)
        })
        .collect()
}

pub fn write_rows(path: &Path, rows: &[String]) {
    let mut w = BufWriter::new(File::create(path).expect("create corpus file"));
    for row in rows {
        writeln!(w, "{row}").expect("write corpus row");
    }
    w.flush().expect("flush corpus file");
}

/// Writes papers.tsv / references.tsv / affiliations.tsv under `dir`.
pub fn write_corpus(spec: &CorpusSpec, dir: &Path) -> CorpusFiles {
    let raw = generate(spec);
    let papers = dir.join("papers.tsv");
    let references = dir.join("references.tsv");
    let affiliations = dir.join("affiliations.tsv");
    write_rows(&papers, &paper_rows(&raw));
    write_rows(&references, &reference_rows(&raw));
    write_rows(&affiliations, &affiliation_rows(&raw));
    CorpusFiles {
        papers,
        references,
        affiliations,
        raw,
    }
}

/// Distinct-citer counts per paper computed from the raw row list
/// alone: duplicates collapse, self rows would be ignored (the
/// generator never emits them).
pub fn raw_citation_counts(raw: &RawCorpus) -> Vec<u32> {
    let mut pairs: Vec<(usize, usize)> = raw
        .references
        .iter()
        .copied()
        .filter(|&(a, b)| a != b)
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let mut counts = vec![0u32; raw.papers.len()];
    for (_, cited) in pairs {
        counts[cited] += 1;
    }
    counts
}

/// How many malformed rows to plant per file.
#[derive(Clone, Copy)]
pub struct Corruption {
    pub papers: usize,
    pub references: usize,
    pub affiliations: usize,
}

/// Interleaves `bad` rows evenly through `good` rows.
fn interleave(good: Vec<String>, bad: Vec<String>) -> Vec<String> {
    if bad.is_empty() {
        return good;
    }
    let stride = good.len() / bad.len() + 1;
    let mut out = Vec::with_capacity(good.len() + bad.len());
    let mut bad_iter = bad.into_iter();
    for (i, row) in good.into_iter().enumerate() {
        out.push(row);
        if (i + 1) % stride == 0 {
            if let Some(b) = bad_iter.next() {
                out.push(b);
            }
        }
    }
    out.extend(bad_iter);
    out
}

/// Writes a corpus with exactly the requested number of malformed rows
/// per file. Every planted row is guaranteed to be rejected by ingest
/// (wrong arity, empty mandatory field, unparseable or out-of-range
/// year, or a reference to a paper that does not exist).
pub fn write_corrupted_corpus(spec: &CorpusSpec, corruption: Corruption, dir: &Path) -> CorpusFiles {
    let raw = generate(spec);

    let bad_papers: Vec<String> = (0..corruption.papers)
        .map(|i| match i % 5 {
            0 => "row_without_any_tabs".to_string(),
            1 => format!("badyear{i:04}\tnot_a_year\tv000"),
            2 => "\t2001\tv000".to_string(),
            3 => format!("extrafield{i:04}\t2001\tv000\tsurplus"),
            _ => format!("ancient{i:04}\t999\tv000"),
        })
        .collect();
    let bad_references: Vec<String> = (0..corruption.references)
        .map(|i| match i % 4 {
            0 => "single_field_row".to_string(),
            1 => format!("{}\t", paper_name(0)),
            2 => format!("ghost_src{i:04}\tghost_dst{i:04}"),
            _ => format!("{}\tghost{i:04}", paper_name(0)),
        })
        .collect();
    let bad_affiliations: Vec<String> = (0..corruption.affiliations)
        .map(|i| match i % 4 {
            0 => "single_field_row".to_string(),
            1 => format!("ghost{i:04}\ta0000\ti000"),
            2 => format!("{}\t\ti000", paper_name(0)),
            _ => format!("{}\ta0000\ti000\tsurplus", paper_name(0)),
        })
        .collect();

    let papers = dir.join("papers.tsv");
    let references = dir.join("references.tsv");
    let affiliations = dir.join("affiliations.tsv");
    write_rows(&papers, &interleave(paper_rows(&raw), bad_papers));
    write_rows(&references, &interleave(reference_rows(&raw), bad_references));
    write_rows(
        &affiliations,
        &interleave(affiliation_rows(&raw), bad_affiliations),
    );
    CorpusFiles {
        papers,
        references,
        affiliations,
        raw,
    }
}
