//! Python bindings for the scholar-rank engine.
//!
//! Exposes corpus loading (from the three TSV files or the binary
//! cache), the scoring pipeline, ranking, and the evaluation helpers.
//! Build as an importable module with
//! `cargo build -p scholar-rank-py --release --features extension-module`.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;

use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use scholar_rank as core;

fn to_py_err(err: core::Error) -> PyErr {
    match err {
        core::Error::Io(e) => PyRuntimeError::new_err(e.to_string()),
        core::Error::UnknownPaper(id) => PyKeyError::new_err(format!("unknown paper id '{id}'")),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn scoring_config(
    threshold: u32,
    alpha: f64,
    current_year: Option<i32>,
    round: u8,
) -> PyResult<core::ScoringConfig> {
    let round = match round {
        1 => core::Round::One,
        2 => core::Round::Two,
        other => {
            return Err(PyValueError::new_err(format!(
                "round must be 1 or 2, got {other}"
            )))
        }
    };
    let config = core::ScoringConfig {
        threshold,
        alpha,
        current_year,
        round,
        ..core::ScoringConfig::default()
    };
    config.validate().map_err(to_py_err)?;
    Ok(config)
}

fn pagerank_config(damping: f64, tolerance: f64, max_iterations: u32) -> PyResult<core::PageRankConfig> {
    let config = core::PageRankConfig {
        damping,
        tolerance,
        max_iterations,
        ..core::PageRankConfig::default()
    };
    config.validate().map_err(to_py_err)?;
    Ok(config)
}

fn weight_vector(weights: Option<[f64; 6]>) -> core::WeightVector {
    weights.map_or_else(core::WeightVector::default, core::WeightVector::from_array)
}

fn normalization(name: &str) -> PyResult<core::Normalization> {
    match name {
        "none" => Ok(core::Normalization::None),
        "minmax" => Ok(core::Normalization::MinMax),
        other => Err(PyValueError::new_err(format!(
            "normalization must be 'none' or 'minmax', got '{other}'"
        ))),
    }
}

fn tie_policy(name: &str) -> PyResult<core::TiePolicy> {
    match name {
        "zero" => Ok(core::TiePolicy::CountZero),
        "half" => Ok(core::TiePolicy::CountHalf),
        other => Err(PyValueError::new_err(format!(
            "tie_policy must be 'zero' or 'half', got '{other}'"
        ))),
    }
}

fn ranked_list(ranking: Vec<(String, f64)>) -> PyResult<core::RankedList> {
    core::RankedList::from_rows(ranking).map_err(to_py_err)
}

fn judgement_set(pairs: Vec<(String, String)>) -> PyResult<core::JudgementSet> {
    core::JudgementSet::new(pairs).map_err(to_py_err)
}

/// An immutable scholarly corpus: papers, citations and affiliations.
#[pyclass(module = "scholar_rank_py")]
struct Corpus {
    inner: core::Corpus,
    report: Option<core::IngestReport>,
}

#[pymethods]
impl Corpus {
    /// Ingests the three TSV files.
    #[staticmethod]
    fn load(papers: PathBuf, references: PathBuf, affiliations: PathBuf) -> PyResult<Self> {
        let (inner, report) =
            core::ingest_corpus(&papers, &references, &affiliations).map_err(to_py_err)?;
        Ok(Self {
            inner,
            report: Some(report),
        })
    }

    /// Loads a binary corpus cache written by `save_cache` or the CLI.
    #[staticmethod]
    fn load_cache(path: PathBuf) -> PyResult<Self> {
        let file = File::open(&path).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        let inner = core::read_cache(BufReader::new(file)).map_err(to_py_err)?;
        Ok(Self {
            inner,
            report: None,
        })
    }

    fn save_cache(&self, path: PathBuf) -> PyResult<()> {
        let file = File::create(&path).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        core::write_cache(&self.inner, BufWriter::new(file)).map_err(to_py_err)
    }

    #[getter]
    fn num_papers(&self) -> usize {
        self.inner.num_papers()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.inner.graph().num_edges()
    }

    #[getter]
    fn num_authors(&self) -> usize {
        self.inner.authors().len()
    }

    #[getter]
    fn num_venues(&self) -> usize {
        self.inner.venues().len()
    }

    #[getter]
    fn num_institutions(&self) -> usize {
        self.inner.institutions().len()
    }

    /// Ingestion counters as text, or None for cache-loaded corpora.
    fn ingest_report(&self) -> Option<String> {
        self.report.as_ref().map(|r| r.to_string())
    }

    /// All raw paper ids in internal order.
    fn paper_ids(&self) -> Vec<String> {
        self.inner.papers().names().to_vec()
    }

    /// Number of distinct papers citing this paper.
    fn citation_count(&self, paper: &str) -> PyResult<u32> {
        let p = self
            .inner
            .paper_id(paper)
            .ok_or_else(|| PyKeyError::new_err(format!("unknown paper id '{paper}'")))?;
        Ok(self.inner.graph().citation_count(p))
    }

    /// Six score components per paper, keyed by raw paper id. Order of
    /// each tuple: publication, age, pagerank, author, venue,
    /// institution.
    #[pyo3(signature = (threshold=5000, alpha=0.1, current_year=None, round=2,
                        damping=0.85, pr_tolerance=1e-9, pr_max_iters=200))]
    #[allow(clippy::too_many_arguments)]
    fn score_vectors(
        &self,
        threshold: u32,
        alpha: f64,
        current_year: Option<i32>,
        round: u8,
        damping: f64,
        pr_tolerance: f64,
        pr_max_iters: u32,
    ) -> PyResult<Vec<(String, (f64, f64, f64, f64, f64, f64))>> {
        let scoring = scoring_config(threshold, alpha, current_year, round)?;
        let pagerank = pagerank_config(damping, pr_tolerance, pr_max_iters)?;
        let (vectors, _) = core::compute_score_vectors(
            &self.inner,
            &scoring,
            &pagerank,
            core::ComponentMask::ALL,
        )
        .map_err(to_py_err)?;
        Ok(self
            .inner
            .papers()
            .names()
            .iter()
            .zip(&vectors)
            .map(|(name, sv)| {
                let [a, b, c, d, e, f] = sv.as_array();
                (name.clone(), (a, b, c, d, e, f))
            })
            .collect())
    }

    /// Full pipeline: score, combine, rank. Returns (paper_id, score)
    /// rows in rank order.
    #[pyo3(signature = (weights=None, normalization="none", threshold=5000, alpha=0.1,
                        current_year=None, round=2, damping=0.85, pr_tolerance=1e-9,
                        pr_max_iters=200))]
    #[allow(clippy::too_many_arguments)]
    fn rank(
        &self,
        weights: Option<[f64; 6]>,
        normalization: &str,
        threshold: u32,
        alpha: f64,
        current_year: Option<i32>,
        round: u8,
        damping: f64,
        pr_tolerance: f64,
        pr_max_iters: u32,
    ) -> PyResult<Vec<(String, f64)>> {
        let scoring = scoring_config(threshold, alpha, current_year, round)?;
        let pagerank = pagerank_config(damping, pr_tolerance, pr_max_iters)?;
        let output = core::run_ranking(
            &self.inner,
            &scoring,
            &pagerank,
            &weight_vector(weights),
            self::normalization(normalization)?,
            core::ComponentMask::ALL,
        )
        .map_err(to_py_err)?;
        Ok(output
            .ranking
            .entries()
            .iter()
            .map(|e| (e.paper.clone(), e.score))
            .collect())
    }

    fn __repr__(&self) -> String {
        let s = self.inner.summary();
        format!(
            "Corpus(papers={}, edges={}, authors={}, venues={}, institutions={})",
            s.num_papers, s.num_edges, s.num_authors, s.num_venues, s.num_institutions
        )
    }
}

/// Largest h such that at least h of the counts are >= h.
#[pyfunction]
fn h_index(citation_counts: Vec<u32>) -> u32 {
    core::h_index(&citation_counts)
}

/// Fraction of judged (better, worse) pairs a ranking satisfies.
/// `ranking` is (paper_id, score) rows in non-increasing score order.
/// Returns (agreement, resolvable, unresolvable).
#[pyfunction]
#[pyo3(signature = (ranking, judgements, tie_policy="zero"))]
fn pairwise_agreement(
    ranking: Vec<(String, f64)>,
    judgements: Vec<(String, String)>,
    tie_policy: &str,
) -> PyResult<(f64, u64, u64)> {
    let ranking = ranked_list(ranking)?;
    let judgements = judgement_set(judgements)?;
    let report = core::pairwise_agreement(&ranking, &judgements, self::tie_policy(tie_policy)?)
        .map_err(to_py_err)?;
    Ok((report.agreement, report.resolvable, report.unresolvable))
}

/// Spearman correlation between two rankings of the same paper set.
#[pyfunction]
fn rank_correlation(a: Vec<(String, f64)>, b: Vec<(String, f64)>) -> PyResult<f64> {
    let a = ranked_list(a)?;
    let b = ranked_list(b)?;
    core::rank_correlation(&a, &b).map_err(to_py_err)
}

/// Exhaustive weight search maximizing pairwise agreement.
/// `score_vectors` is (paper_id, 6-tuple) rows; `grid` is six lists of
/// candidate weights. Returns (best_weights, agreement).
#[pyfunction]
#[pyo3(signature = (score_vectors, judgements, grid, tie_policy="zero"))]
fn grid_search_weights(
    score_vectors: Vec<(String, (f64, f64, f64, f64, f64, f64))>,
    judgements: Vec<(String, String)>,
    grid: [Vec<f64>; 6],
    tie_policy: &str,
) -> PyResult<([f64; 6], f64)> {
    let mut papers = core::Interner::new();
    let mut vectors = Vec::with_capacity(score_vectors.len());
    for (name, (a, b, c, d, e, f)) in &score_vectors {
        if papers.intern(name) as usize != vectors.len() {
            return Err(PyValueError::new_err(format!(
                "duplicate paper id '{name}' in score vectors"
            )));
        }
        vectors.push(core::ScoreVector::from_array([*a, *b, *c, *d, *e, *f]));
    }
    let [publication, age, pagerank, author, venue, institution] = grid;
    let grid = core::WeightGrid {
        publication,
        age,
        pagerank,
        author,
        venue,
        institution,
    };
    let judgements = judgement_set(judgements)?;
    let (weights, agreement) = core::grid_search_weights(
        &papers,
        &vectors,
        &judgements,
        &grid,
        self::tie_policy(tie_policy)?,
    )
    .map_err(to_py_err)?;
    Ok((weights.as_array(), agreement))
}

#[pymodule]
fn scholar_rank_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Corpus>()?;
    m.add_function(wrap_pyfunction!(h_index, m)?)?;
    m.add_function(wrap_pyfunction!(pairwise_agreement, m)?)?;
    m.add_function(wrap_pyfunction!(rank_correlation, m)?)?;
    m.add_function(wrap_pyfunction!(grid_search_weights, m)?)?;
    m.add("DEFAULT_WEIGHTS", core::WeightVector::default().as_array())?;
    Ok(())
}
