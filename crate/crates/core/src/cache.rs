//! Versioned binary corpus cache, so repeated ranking runs skip TSV
//! parsing.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic          4 bytes  "SRNK"
//! version        u32      currently 1
//! papers         interner
//! authors        interner
//! venues         interner
//! institutions   interner
//! years          num_papers x i32   (i32::MIN = absent)
//! paper venues   num_papers x u32   (u32::MAX = absent)
//! edges          u64 count, then count x (u32 citing, u32 cited)
//! triples        u64 count, then count x (u32 paper, u32 author,
//!                u32 institution with u32::MAX = absent)
//! ```
//!
//! An interner is a u32 name count followed by each name as a u32 byte
//! length plus UTF-8 bytes, in index order. Edges come from the
//! deduplicated forward adjacency in sorted order; reverse adjacency
//! and all membership indices are rebuilt on load, so a loaded corpus
//! is structurally identical to the one that was written. Trailing
//! bytes after the last section are an error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::graph::{
    AffiliationTable, AffiliationTriple, AuthorId, CitationGraph, InstitutionId, Interner,
    PaperId, PaperTable, VenueId,
};

pub const CACHE_MAGIC: [u8; 4] = *b"SRNK";
pub const CACHE_VERSION: u32 = 1;

const YEAR_ABSENT: i32 = i32::MIN;
const INDEX_ABSENT: u32 = u32::MAX;
/// Sanity bound on serialized string lengths; raw ids are short.
const MAX_NAME_BYTES: u32 = 1 << 20;

fn bad(reason: impl Into<String>) -> Error {
    Error::Cache(reason.into())
}

fn write_u32<W: Write>(w: &mut W, value: u32) -> io::Result<()> {
    w.write_all(&value.to_le_bytes())
}

fn write_u64<W: Write>(w: &mut W, value: u64) -> io::Result<()> {
    w.write_all(&value.to_le_bytes())
}

fn write_i32<W: Write>(w: &mut W, value: i32) -> io::Result<()> {
    w.write_all(&value.to_le_bytes())
}

fn read_exact<R: Read, const N: usize>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)
        .map_err(|_| bad("unexpected end of cache"))?;
    Ok(buf)
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    Ok(u32::from_le_bytes(read_exact::<R, 4>(r)?))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    Ok(u64::from_le_bytes(read_exact::<R, 8>(r)?))
}

fn read_i32<R: Read>(r: &mut R) -> Result<i32> {
    Ok(i32::from_le_bytes(read_exact::<R, 4>(r)?))
}

fn write_interner<W: Write>(w: &mut W, interner: &Interner) -> io::Result<()> {
    write_u32(w, interner.len() as u32)?;
    for name in interner.names() {
        write_u32(w, name.len() as u32)?;
        w.write_all(name.as_bytes())?;
    }
    Ok(())
}

fn read_interner<R: Read>(r: &mut R) -> Result<Interner> {
    let count = read_u32(r)?;
    let mut interner = Interner::new();
    let mut buf = Vec::new();
    for i in 0..count {
        let len = read_u32(r)?;
        if len > MAX_NAME_BYTES {
            return Err(bad(format!("implausible string length {len}")));
        }
        buf.resize(len as usize, 0);
        r.read_exact(&mut buf)
            .map_err(|_| bad("unexpected end of cache"))?;
        let name =
            std::str::from_utf8(&buf).map_err(|_| bad("string is not valid UTF-8"))?;
        if interner.intern(name) != i {
            return Err(bad(format!("duplicate interned name '{name}'")));
        }
    }
    Ok(interner)
}

/// Serializes a corpus. The caller provides any writer; file callers
/// should wrap in a [`BufWriter`] (as [`write_cache_file`] does).
pub fn write_cache<W: Write>(corpus: &Corpus, mut writer: W) -> Result<()> {
    let w = &mut writer;
    w.write_all(&CACHE_MAGIC)?;
    write_u32(w, CACHE_VERSION)?;

    write_interner(w, corpus.papers())?;
    write_interner(w, corpus.authors())?;
    write_interner(w, corpus.venues())?;
    write_interner(w, corpus.institutions())?;

    for year in corpus.meta().years() {
        write_i32(w, year.unwrap_or(YEAR_ABSENT))?;
    }
    for venue in corpus.meta().venues() {
        write_u32(w, venue.map_or(INDEX_ABSENT, |v| v.0))?;
    }

    let graph = corpus.graph();
    write_u64(w, graph.num_edges() as u64)?;
    for p in 0..graph.num_papers() as u32 {
        for &cited in graph.cites(PaperId(p)) {
            write_u32(w, p)?;
            write_u32(w, cited.0)?;
        }
    }

    let triples = corpus.affiliations().triples();
    write_u64(w, triples.len() as u64)?;
    for triple in triples {
        write_u32(w, triple.paper.0)?;
        write_u32(w, triple.author.0)?;
        write_u32(w, triple.institution.map_or(INDEX_ABSENT, |i| i.0))?;
    }
    writer.flush()?;
    Ok(())
}

/// Deserializes a corpus written by [`write_cache`].
pub fn read_cache<R: Read>(mut reader: R) -> Result<Corpus> {
    let r = &mut reader;
    let magic: [u8; 4] = read_exact(r)?;
    if magic != CACHE_MAGIC {
        return Err(bad("not a corpus cache (bad magic)"));
    }
    let version = read_u32(r)?;
    if version != CACHE_VERSION {
        return Err(bad(format!(
            "unsupported cache version {version} (expected {CACHE_VERSION})"
        )));
    }

    let papers = read_interner(r)?;
    let authors = read_interner(r)?;
    let venues = read_interner(r)?;
    let institutions = read_interner(r)?;
    let num_papers = papers.len();

    let mut years = Vec::with_capacity(num_papers);
    for _ in 0..num_papers {
        let year = read_i32(r)?;
        years.push((year != YEAR_ABSENT).then_some(year));
    }
    let mut paper_venues = Vec::with_capacity(num_papers);
    for _ in 0..num_papers {
        let venue = read_u32(r)?;
        if venue != INDEX_ABSENT && venue as usize >= venues.len() {
            return Err(bad(format!("venue index {venue} out of range")));
        }
        paper_venues.push((venue != INDEX_ABSENT).then_some(VenueId(venue)));
    }

    let num_edges = read_u64(r)?;
    let mut edges = Vec::with_capacity(num_edges.min(1 << 24) as usize);
    for _ in 0..num_edges {
        let citing = read_u32(r)?;
        let cited = read_u32(r)?;
        if citing as usize >= num_papers || cited as usize >= num_papers {
            return Err(bad("edge endpoint out of range"));
        }
        edges.push((PaperId(citing), PaperId(cited)));
    }

    let num_triples = read_u64(r)?;
    let mut triples = Vec::with_capacity(num_triples.min(1 << 24) as usize);
    for _ in 0..num_triples {
        let paper = read_u32(r)?;
        let author = read_u32(r)?;
        let institution = read_u32(r)?;
        if paper as usize >= num_papers
            || author as usize >= authors.len()
            || (institution != INDEX_ABSENT && institution as usize >= institutions.len())
        {
            return Err(bad("affiliation index out of range"));
        }
        triples.push(AffiliationTriple {
            paper: PaperId(paper),
            author: AuthorId(author),
            institution: (institution != INDEX_ABSENT).then_some(InstitutionId(institution)),
        });
    }

    let mut trailer = [0u8; 1];
    if reader.read(&mut trailer)? != 0 {
        return Err(bad("trailing bytes after corpus payload"));
    }

    let (graph, _) = CitationGraph::build(num_papers, edges);
    let meta = PaperTable::new(years, paper_venues, venues.len());
    let (affiliations, _) =
        AffiliationTable::build(num_papers, authors.len(), institutions.len(), triples);
    Ok(Corpus::from_parts(
        papers,
        authors,
        venues,
        institutions,
        graph,
        meta,
        affiliations,
    ))
}

pub fn write_cache_file(corpus: &Corpus, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|err| {
        Error::Io(io::Error::new(err.kind(), format!("{}: {err}", path.display())))
    })?;
    write_cache(corpus, BufWriter::new(file))
}

pub fn read_cache_file(path: &Path) -> Result<Corpus> {
    let file = File::open(path).map_err(|err| {
        Error::Io(io::Error::new(err.kind(), format!("{}: {err}", path.display())))
    })?;
    read_cache(BufReader::new(file))
}
