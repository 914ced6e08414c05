//! Golden tests against the bundled 1k-paper synthetic corpus.
//!
//! The corpus under data/synthetic-1k is generated deterministically by
//! `regenerate_bundled_corpus` (run it with `--ignored` after changing
//! the generator). The expected outputs were produced by the pipeline
//! once and are locked byte-for-byte.

mod common;

use std::fs;
use std::path::PathBuf;
use std::process::Command;

use common::{paper_name, raw_citation_counts, CorpusSpec};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

const CORPUS_SEED: u64 = 1009;
const JUDGEMENT_SEED: u64 = 1013;
const NUM_JUDGEMENTS: usize = 200;

fn bundled_spec() -> CorpusSpec {
    CorpusSpec {
        seed: CORPUS_SEED,
        num_papers: 1000,
        num_reference_rows: 5000,
        num_affiliation_rows: 2500,
        num_authors: 300,
        num_venues: 20,
        num_institutions: 30,
        year_min: 1950,
        year_max: 2015,
        missing_year_percent: 5,
        missing_venue_percent: 10,
        missing_institution_percent: 15,
    }
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/synthetic-1k")
}

/// Judged pairs derive from the generator's own citation counts: the
/// paper with more distinct citers is "better". Pairs with equal
/// counts are skipped, so a citation-count ordering satisfies every
/// pair by construction.
fn judgement_rows(raw: &common::RawCorpus) -> Vec<String> {
    let counts = raw_citation_counts(raw);
    let mut rng = ChaCha8Rng::seed_from_u64(JUDGEMENT_SEED);
    let mut rows = Vec::with_capacity(NUM_JUDGEMENTS);
    while rows.len() < NUM_JUDGEMENTS {
        let a = rng.random_range(0..raw.papers.len());
        let b = rng.random_range(0..raw.papers.len());
        if counts[a] == counts[b] {
            continue;
        }
        let (better, worse) = if counts[a] > counts[b] { (a, b) } else { (b, a) };
        rows.push(format!("{}\t{}", paper_name(better), paper_name(worse)));
    }
    rows
}

/// Rewrites data/synthetic-1k inputs. Run manually:
/// cargo test -p scholar-rank-cli --test golden -- --ignored regenerate
#[test]
#[ignore]
fn regenerate_bundled_corpus() {
    let dir = data_dir();
    fs::create_dir_all(&dir).unwrap();
    let raw = common::generate(&bundled_spec());
    common::write_rows(&dir.join("papers.tsv"), &common::paper_rows(&raw));
    common::write_rows(&dir.join("references.tsv"), &common::reference_rows(&raw));
    common::write_rows(&dir.join("affiliations.tsv"), &common::affiliation_rows(&raw));
    common::write_rows(&dir.join("judgements.tsv"), &judgement_rows(&raw));
}

#[test]
fn bundled_corpus_matches_generator() {
    let dir = data_dir();
    let raw = common::generate(&bundled_spec());
    let expect = |name: &str, rows: &[String]| {
        let on_disk = fs::read_to_string(dir.join(name)).unwrap();
        let generated: String = rows.iter().map(|r| format!("{r}\n")).collect();
        assert_eq!(on_disk, generated, "{name} drifted from the generator");
    };
    expect("papers.tsv", &common::paper_rows(&raw));
    expect("references.tsv", &common::reference_rows(&raw));
    expect("affiliations.tsv", &common::affiliation_rows(&raw));
    expect("judgements.tsv", &judgement_rows(&raw));
}

#[test]
fn bundled_corpus_rank_matches_golden() {
    let dir = data_dir();
    let tmp = tempfile::tempdir().unwrap();
    let out_path = tmp.path().join("ranking.tsv");
    let output = Command::new(env!("CARGO_BIN_EXE_scholar-rank"))
        .args([
            "rank",
            "--papers",
            dir.join("papers.tsv").to_str().unwrap(),
            "--references",
            dir.join("references.tsv").to_str().unwrap(),
            "--affiliations",
            dir.join("affiliations.tsv").to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
            "--emit-components",
        ])
        .output()
        .expect("spawn scholar-rank");
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );

    let golden_ranking = fs::read(dir.join("expected_ranking.tsv")).unwrap();
    let golden_components = fs::read(dir.join("expected_ranking.components.tsv")).unwrap();
    assert_eq!(fs::read(&out_path).unwrap(), golden_ranking);
    assert_eq!(
        fs::read(out_path.with_extension("components.tsv")).unwrap(),
        golden_components
    );
}

#[test]
fn bundled_judgements_agreement_is_frozen() {
    let dir = data_dir();
    let output = Command::new(env!("CARGO_BIN_EXE_scholar-rank"))
        .args([
            "evaluate",
            dir.join("expected_ranking.tsv").to_str().unwrap(),
            dir.join("judgements.tsv").to_str().unwrap(),
        ])
        .output()
        .expect("spawn scholar-rank");
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("agreement: 0.635000"), "{stdout}");
    assert!(stdout.contains("resolvable: 200"), "{stdout}");
    assert!(stdout.contains("satisfied: 127"), "{stdout}");
    assert!(stdout.contains("unresolvable: 0"), "{stdout}");
}
