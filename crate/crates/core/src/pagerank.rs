//! Citation PageRank with a dummy-paper augmentation.
//!
//! The augmented graph adds one dummy node D to the N real papers:
//! every real paper gains an out-edge to D and an in-edge from D, so no
//! node dangles and the chain is irreducible without any dangling-mass
//! bookkeeping. The implementation never materializes those 2N edges:
//! each real node's out-degree is simply incremented by one, and D's
//! rank arrives as a uniform additive term `x(D) / N`.
//!
//! Per-node contributions are accumulated in sorted order, which makes
//! every score a pure function of the contribution multiset. That is
//! what turns the mathematical relabeling invariance into a bitwise
//! one: permuting paper ids permutes scores exactly, not just
//! approximately.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{CitationGraph, PaperId};

/// Largest graph the dense oracle will materialize.
pub const ORACLE_MAX_PAPERS: usize = 2000;

/// What the reported per-paper scores sum to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportBasis {
    /// Raw probabilities over the N+1 augmented nodes; the real papers
    /// and `dummy_mass` together sum to 1.
    IncludeDummy,
    /// Real papers rescaled to sum to 1, hiding the dummy's share.
    RenormalizeRealOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageRankConfig {
    /// Damping factor, strictly between 0 and 1.
    pub damping: f64,
    /// L1 change per iteration below which iteration stops.
    pub tolerance: f64,
    pub max_iterations: u32,
    pub report_basis: ReportBasis,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tolerance: 1e-9,
            max_iterations: 200,
            report_basis: ReportBasis::RenormalizeRealOnly,
        }
    }
}

impl PageRankConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.damping.is_finite() && 0.0 < self.damping && self.damping < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "damping must lie strictly between 0 and 1, got {}",
                self.damping
            )));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be a positive finite number, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageRankResult {
    /// Per-paper scores on the configured basis.
    pub scores: Vec<f64>,
    pub iterations_run: u32,
    pub converged: bool,
    /// The dummy node's raw share of the stationary distribution.
    pub dummy_mass: f64,
}

/// Sums a multiset of values independently of their original order.
fn multiset_sum(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    values.iter().sum()
}

fn report(mut real: Vec<f64>, dummy: f64, basis: ReportBasis) -> (Vec<f64>, f64) {
    if basis == ReportBasis::RenormalizeRealOnly {
        let mut copy = real.clone();
        let total = multiset_sum(&mut copy);
        for score in &mut real {
            *score /= total;
        }
    }
    (real, dummy)
}

/// PageRank over the dummy-augmented citation graph. See the module
/// docs for the construction. Parallel over papers; results are
/// bit-identical regardless of thread count.
pub fn compute_pagerank(graph: &CitationGraph, config: &PageRankConfig) -> Result<PageRankResult> {
    compute_pagerank_observed(graph, config, |_, _, _| {})
}

/// [`compute_pagerank`] with a per-iteration callback receiving
/// `(iteration, raw real scores, raw dummy score)`, used by tests to
/// watch mass conservation.
pub fn compute_pagerank_observed(
    graph: &CitationGraph,
    config: &PageRankConfig,
    mut observer: impl FnMut(u32, &[f64], f64),
) -> Result<PageRankResult> {
    let n = graph.num_papers();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    config.validate()?;

    // Augmented out-degree: every real paper also cites the dummy.
    let aug_out_degree: Vec<f64> = (0..n as u32)
        .map(|p| graph.out_degree(PaperId(p)) as f64 + 1.0)
        .collect();

    let teleport = (1.0 - config.damping) / (n as f64 + 1.0);
    let mut scores = vec![1.0 / (n as f64 + 1.0); n];
    let mut dummy = 1.0 / (n as f64 + 1.0);
    let mut contributions = vec![0.0f64; n];
    let mut new_scores: Vec<f64> = Vec::with_capacity(n);
    let mut scratch = vec![0.0f64; n];

    let mut iterations_run = 0;
    let mut converged = false;
    for iteration in 1..=config.max_iterations {
        contributions
            .par_iter_mut()
            .enumerate()
            .for_each(|(q, c)| *c = scores[q] / aug_out_degree[q]);
        let dummy_share = dummy / n as f64;

        (0..n)
            .into_par_iter()
            .map_init(Vec::new, |buf: &mut Vec<f64>, p| {
                buf.clear();
                buf.extend(
                    graph
                        .cited_by(PaperId(p as u32))
                        .iter()
                        .map(|&q| contributions[q.index()]),
                );
                teleport + config.damping * (multiset_sum(buf) + dummy_share)
            })
            .collect_into_vec(&mut new_scores);

        scratch.copy_from_slice(&contributions);
        let new_dummy = teleport + config.damping * multiset_sum(&mut scratch);

        for (slot, (&new, &old)) in scratch.iter_mut().zip(new_scores.iter().zip(&scores)) {
            *slot = (new - old).abs();
        }
        let delta = multiset_sum(&mut scratch) + (new_dummy - dummy).abs();

        std::mem::swap(&mut scores, &mut new_scores);
        dummy = new_dummy;
        iterations_run = iteration;
        observer(iteration, &scores, dummy);
        if delta < config.tolerance {
            converged = true;
            break;
        }
    }

    let (scores, dummy_mass) = report(scores, dummy, config.report_basis);
    Ok(PageRankResult {
        scores,
        iterations_run,
        converged,
        dummy_mass,
    })
}

/// Reference implementation: materializes the full (N+1) x (N+1)
/// augmented transition matrix and runs dense power iteration. Only
/// for validating [`compute_pagerank`] in tests; refuses graphs larger
/// than [`ORACLE_MAX_PAPERS`].
pub fn explicit_dummy_oracle(
    graph: &CitationGraph,
    config: &PageRankConfig,
) -> Result<PageRankResult> {
    let n = graph.num_papers();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > ORACLE_MAX_PAPERS {
        return Err(Error::OracleTooLarge {
            num_papers: n,
            cap: ORACLE_MAX_PAPERS,
        });
    }
    config.validate()?;

    let size = n + 1;
    // Row-stochastic: matrix[row * size + col] is the probability of
    // stepping from row to col. Row n is the dummy.
    let mut matrix = vec![0.0f64; size * size];
    for q in 0..n {
        let p = PaperId(q as u32);
        let share = 1.0 / (graph.out_degree(p) as f64 + 1.0);
        for &cited in graph.cites(p) {
            matrix[q * size + cited.index()] = share;
        }
        matrix[q * size + n] = share;
    }
    for p in 0..n {
        matrix[n * size + p] = 1.0 / n as f64;
    }

    let teleport = (1.0 - config.damping) / size as f64;
    let mut x = vec![1.0 / size as f64; size];
    let mut next = vec![0.0f64; size];
    let mut terms: Vec<f64> = Vec::with_capacity(size);
    let mut diffs = vec![0.0f64; size];

    let mut iterations_run = 0;
    let mut converged = false;
    for iteration in 1..=config.max_iterations {
        for col in 0..size {
            terms.clear();
            for row in 0..size {
                let term = x[row] * matrix[row * size + col];
                if term != 0.0 {
                    terms.push(term);
                }
            }
            next[col] = teleport + config.damping * multiset_sum(&mut terms);
        }
        for (slot, (&new, &old)) in diffs.iter_mut().zip(next.iter().zip(&x)) {
            *slot = (new - old).abs();
        }
        let delta = multiset_sum(&mut diffs);
        std::mem::swap(&mut x, &mut next);
        iterations_run = iteration;
        if delta < config.tolerance {
            converged = true;
            break;
        }
    }

    let dummy = x[n];
    x.truncate(n);
    let scores = match config.report_basis {
        ReportBasis::IncludeDummy => x,
        ReportBasis::RenormalizeRealOnly => {
            let mut copy = x.clone();
            let total = multiset_sum(&mut copy);
            x.iter().map(|s| s / total).collect()
        }
    };
    Ok(PageRankResult {
        scores,
        iterations_run,
        converged,
        dummy_mass: dummy,
    })
}
