//! Evaluation against pairwise human judgements, and exhaustive weight
//! search maximizing agreement.

use std::collections::HashMap;
use std::io::BufRead;

use crate::combine::{RankedList, WeightVector};
use crate::error::{Error, Result};
use crate::graph::{Interner, ScoreVector};
use crate::ingest::FileReport;

/// How a pair with equal combined scores counts toward agreement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TiePolicy {
    /// A tie satisfies nothing.
    CountZero,
    /// A tie is worth half a satisfied pair.
    CountHalf,
}

/// Pairwise relevance judgements: each pair asserts the first paper
/// should outrank the second. Duplicate pairs are kept; each occurrence
/// counts on its own.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JudgementSet {
    pairs: Vec<(String, String)>,
}

impl JudgementSet {
    /// Builds from (better, worse) pairs. A pair comparing a paper to
    /// itself is contradictory and rejected.
    pub fn new(pairs: Vec<(String, String)>) -> Result<Self> {
        for (better, worse) in &pairs {
            if better == worse {
                return Err(Error::SelfJudgement(better.clone()));
            }
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The opposite claims: every (better, worse) becomes (worse, better).
    pub fn reversed(&self) -> Self {
        Self {
            pairs: self
                .pairs
                .iter()
                .map(|(b, w)| (w.clone(), b.clone()))
                .collect(),
        }
    }

    /// Parses `better \t worse` rows. Malformed rows (wrong arity,
    /// empty ids, self-pairs) are rejected and counted, like corpus
    /// ingestion.
    pub fn read_tsv<R: BufRead>(reader: R) -> Result<(Self, FileReport)> {
        let mut report = FileReport::default();
        let mut pairs = Vec::new();
        let mut line_no = 0u64;
        for line in reader.lines() {
            let line = line?;
            line_no += 1;
            report.rows_read += 1;
            let mut fields = line.split('\t');
            let (Some(better), Some(worse), None) =
                (fields.next(), fields.next(), fields.next())
            else {
                report.rejected += 1;
                if report.reject_samples.len() < crate::ingest::MAX_REJECT_SAMPLES {
                    report
                        .reject_samples
                        .push((line_no, "expected 2 tab-separated fields".into()));
                }
                continue;
            };
            let reason = if better.is_empty() || worse.is_empty() {
                Some("empty paper id".to_owned())
            } else if better == worse {
                Some(format!("pair compares '{better}' to itself"))
            } else {
                None
            };
            if let Some(reason) = reason {
                report.rejected += 1;
                if report.reject_samples.len() < crate::ingest::MAX_REJECT_SAMPLES {
                    report.reject_samples.push((line_no, reason));
                }
                continue;
            }
            report.accepted += 1;
            pairs.push((better.to_owned(), worse.to_owned()));
        }
        Ok((Self { pairs }, report))
    }
}

/// Outcome of one judged pair against a ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairOutcome {
    /// The better paper scored strictly higher.
    Satisfied,
    /// Both papers scored the same.
    Tied,
    /// The worse paper scored strictly higher.
    Violated,
    /// At least one paper is missing from the ranking.
    Unresolvable,
}

impl PairOutcome {
    pub fn label(self) -> &'static str {
        match self {
            PairOutcome::Satisfied => "satisfied",
            PairOutcome::Tied => "tied",
            PairOutcome::Violated => "violated",
            PairOutcome::Unresolvable => "unresolvable",
        }
    }
}

/// Agreement of a ranking with a judgement set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgreementReport {
    /// Fraction in [0, 1] of resolvable pairs satisfied (ties counted
    /// per the policy).
    pub agreement: f64,
    pub resolvable: u64,
    pub unresolvable: u64,
    pub satisfied: u64,
    pub tied: u64,
    pub violated: u64,
}

/// Per-pair outcomes, aligned with `judgements.pairs()`.
pub fn pairwise_outcomes(ranking: &RankedList, judgements: &JudgementSet) -> Vec<PairOutcome> {
    let scores: HashMap<&str, f64> = ranking
        .entries()
        .iter()
        .map(|e| (e.paper.as_str(), e.score))
        .collect();
    judgements
        .pairs()
        .iter()
        .map(|(better, worse)| {
            match (scores.get(better.as_str()), scores.get(worse.as_str())) {
                (Some(b), Some(w)) => {
                    if b > w {
                        PairOutcome::Satisfied
                    } else if b == w {
                        PairOutcome::Tied
                    } else {
                        PairOutcome::Violated
                    }
                }
                _ => PairOutcome::Unresolvable,
            }
        })
        .collect()
}

fn report_from_outcomes(outcomes: &[PairOutcome], tie_policy: TiePolicy) -> Result<AgreementReport> {
    let mut satisfied = 0u64;
    let mut tied = 0u64;
    let mut violated = 0u64;
    let mut unresolvable = 0u64;
    for outcome in outcomes {
        match outcome {
            PairOutcome::Satisfied => satisfied += 1,
            PairOutcome::Tied => tied += 1,
            PairOutcome::Violated => violated += 1,
            PairOutcome::Unresolvable => unresolvable += 1,
        }
    }
    let resolvable = satisfied + tied + violated;
    if resolvable == 0 {
        return Err(Error::NoEvaluablePairs);
    }
    // Count in half-units so the comparison arithmetic stays integral.
    let half_units = 2 * satisfied
        + match tie_policy {
            TiePolicy::CountZero => 0,
            TiePolicy::CountHalf => tied,
        };
    Ok(AgreementReport {
        agreement: half_units as f64 / (2 * resolvable) as f64,
        resolvable,
        unresolvable,
        satisfied,
        tied,
        violated,
    })
}

/// Fraction of resolvable judged pairs the ranking gets right. Pairs
/// naming papers absent from the ranking are excluded and counted as
/// unresolvable; if nothing is resolvable that is an error.
pub fn pairwise_agreement(
    ranking: &RankedList,
    judgements: &JudgementSet,
    tie_policy: TiePolicy,
) -> Result<AgreementReport> {
    report_from_outcomes(&pairwise_outcomes(ranking, judgements), tie_policy)
}

/// Candidate values per weight component for [`grid_search_weights`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeightGrid {
    pub publication: Vec<f64>,
    pub age: Vec<f64>,
    pub pagerank: Vec<f64>,
    pub author: Vec<f64>,
    pub venue: Vec<f64>,
    pub institution: Vec<f64>,
}

/// Refuse cartesian products beyond this many grid points.
pub const GRID_MAX_POINTS: u128 = 1_000_000;

impl WeightGrid {
    pub fn axes(&self) -> [&[f64]; 6] {
        [
            &self.publication,
            &self.age,
            &self.pagerank,
            &self.author,
            &self.venue,
            &self.institution,
        ]
    }

    pub fn num_points(&self) -> u128 {
        self.axes().iter().map(|axis| axis.len() as u128).product()
    }

    pub fn validate(&self) -> Result<()> {
        for axis in self.axes() {
            if axis.is_empty() {
                return Err(Error::EmptyGrid);
            }
            if axis.iter().any(|w| !w.is_finite()) {
                return Err(Error::InvalidConfig("grid weights must be finite".into()));
            }
        }
        let points = self.num_points();
        if points > GRID_MAX_POINTS {
            return Err(Error::GridTooLarge {
                points,
                cap: GRID_MAX_POINTS,
            });
        }
        Ok(())
    }
}

/// Exhaustively evaluates every weight vector in the grid's cartesian
/// product and returns the one with the highest agreement; among ties,
/// the lexicographically smallest vector. Combined scores use the same
/// arithmetic as [`crate::combine::combine`], so the winner's agreement
/// is exactly what a full rank-and-evaluate run would report.
pub fn grid_search_weights(
    papers: &Interner,
    score_vectors: &[ScoreVector],
    judgements: &JudgementSet,
    grid: &WeightGrid,
    tie_policy: TiePolicy,
) -> Result<(WeightVector, f64)> {
    grid.validate()?;
    assert_eq!(papers.len(), score_vectors.len());

    // Resolve judged pairs to score vectors once.
    let mut resolved: Vec<(ScoreVector, ScoreVector)> = Vec::new();
    for (better, worse) in judgements.pairs() {
        if let (Some(b), Some(w)) = (papers.get(better), papers.get(worse)) {
            resolved.push((score_vectors[b as usize], score_vectors[w as usize]));
        }
    }
    if resolved.is_empty() {
        return Err(Error::NoEvaluablePairs);
    }
    let resolvable = resolved.len() as u64;

    // Ascending axes iterated in lexicographic order: the first point
    // reaching the maximum is the lexicographically smallest winner.
    // Dedup also merges -0.0 into 0.0; the two act identically as
    // weights.
    let axes: [Vec<f64>; 6] = grid.axes().map(|axis| {
        let mut axis = axis.to_vec();
        axis.sort_unstable_by(f64::total_cmp);
        axis.dedup();
        axis
    });

    let mut best: Option<(u64, WeightVector)> = None;
    let mut indices = [0usize; 6];
    loop {
        let weights = WeightVector::from_array(std::array::from_fn(|i| axes[i][indices[i]]));
        let mut satisfied = 0u64;
        let mut tied = 0u64;
        for (better, worse) in &resolved {
            let b = weights.dot(better);
            let w = weights.dot(worse);
            if b > w {
                satisfied += 1;
            } else if b == w {
                tied += 1;
            }
        }
        let half_units = 2 * satisfied
            + match tie_policy {
                TiePolicy::CountZero => 0,
                TiePolicy::CountHalf => tied,
            };
        if best.as_ref().is_none_or(|(best_units, _)| half_units > *best_units) {
            best = Some((half_units, weights));
        }

        // Advance the last axis fastest.
        let mut axis = 6;
        loop {
            if axis == 0 {
                let (half_units, weights) = best.unwrap();
                let agreement = half_units as f64 / (2 * resolvable) as f64;
                return Ok((weights, agreement));
            }
            axis -= 1;
            indices[axis] += 1;
            if indices[axis] < axes[axis].len() {
                break;
            }
            indices[axis] = 0;
        }
    }
}
